use std::io;
use std::process::ExitCode;

use gapsets::cli::{self, THREADS_ENV};

fn main() -> ExitCode {
    if let Some(threads) = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    let code = cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
