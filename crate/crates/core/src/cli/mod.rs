//! Command-line front end.

pub mod oeis;
pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::enumerate::{self, FamilyFilter};
use crate::families::{self, PairChoice};
use crate::gapset::{parse_list, GapSet, SymmetryClass};
use crate::verify::{self, Verifier};
use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Env var selecting the worker thread count.
pub const THREADS_ENV: &str = "GAPSETS_THREADS";

#[derive(Debug, Parser)]
#[command(name = "gapsets", version, about = "Enumerate and verify gapsets of numerical semigroups")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the gapsets of one genus, optionally filtered.
    Enumerate(EnumerateArgs),
    /// Count pure κ-sparse gapsets for every genus up to a bound.
    Table {
        #[arg(long)]
        max_genus: u32,
    },
    /// The counts s_n = #G_2n(3n+1) with their ratio columns.
    SequenceS {
        #[arg(long)]
        max_n: u32,
    },
    /// Build the symmetric or pseudo-symmetric family members for n.
    Families(FamiliesArgs),
    /// Apply σ (or its inverse) to one gapset or a whole family.
    Sigma(SigmaArgs),
    /// Run registered checks.
    Verify(VerifyArgs),
    /// Recompute an OEIS prefix and compare with the embedded terms.
    Oeis {
        #[arg(long)]
        id: String,
        #[arg(long)]
        terms: u32,
    },
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub genus: u32,
    /// Maximum consecutive difference.
    #[arg(long)]
    pub kappa: Option<u32>,
    /// Sparsity exactly κ (the default).
    #[arg(long, conflicts_with = "at_most", requires = "kappa")]
    pub pure: bool,
    /// Sparsity at most κ.
    #[arg(long, requires = "kappa")]
    pub at_most: bool,
    #[arg(long, conflicts_with = "max_depth")]
    pub depth: Option<u32>,
    #[arg(long)]
    pub max_depth: Option<u32>,
    /// symmetric, pseudo or neither.
    #[arg(long)]
    pub symmetry: Option<SymmetryClass>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Symmetric,
    Pseudo,
}

#[derive(Debug, Args)]
pub struct FamiliesArgs {
    #[arg(long, value_enum)]
    pub kind: FamilyKind,
    #[arg(long)]
    pub n: u32,
    /// Every one of the 2^(n−1) pair choices.
    #[arg(long, conflicts_with = "choice")]
    pub all_choices: bool,
    /// One letter per pair: L takes the smaller element, U the larger.
    #[arg(long)]
    pub choice: Option<String>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("input").required(true).args(["apply", "genus"]))]
pub struct SigmaArgs {
    /// Comma-separated gapset.
    #[arg(long, allow_hyphen_values = true)]
    pub apply: Option<String>,
    /// Map every member of the family of this genus.
    #[arg(long, requires = "all")]
    pub genus: Option<u32>,
    #[arg(long, requires = "genus")]
    pub all: bool,
    #[arg(long)]
    pub inverse: bool,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("which").required(true).args(["check", "all"]))]
pub struct VerifyArgs {
    #[arg(long)]
    pub check: Option<String>,
    #[arg(long)]
    pub all: bool,
    /// Lower end of the parameter range for --check.
    #[arg(long, requires = "check")]
    pub from: Option<u32>,
    #[arg(long, default_value_t = 16)]
    pub max_genus: u32,
    #[arg(long, default_value_t = 5)]
    pub max_n: u32,
}

/// Failure inside a subcommand, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self {
            code: EXIT_FAILURE,
            message: format!("write failed: {e}"),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T, O, E>(args: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn execute<W: Write>(cli: &Cli, out: &mut W) -> Result<i32, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Enumerate(a) => {
            let mut filter = FamilyFilter::genus(a.genus);
            if let Some(k) = a.kappa {
                filter = filter.kappa(k);
                if a.at_most {
                    filter = filter.at_most();
                }
            }
            if let Some(q) = a.depth {
                filter = filter.depth_exactly(q);
            }
            if let Some(q) = a.max_depth {
                filter = filter.depth_at_most(q);
            }
            if let Some(c) = a.symmetry {
                filter = filter.symmetry(c);
            }
            let found = enumerate::enumerate_filtered(&filter).map_err(Failure::usage)?;
            output::write_gapsets(out, format, &found)?;
        }
        Command::Table { max_genus } => {
            let table = enumerate::count_table(*max_genus).map_err(Failure::usage)?;
            output::write_counts(out, format, &table)?;
        }
        Command::SequenceS { max_n } => {
            if *max_n == 0 {
                return Err(Failure::usage("--max-n must be at least 1"));
            }
            let terms = enumerate::sequence_s(*max_n).map_err(Failure::usage)?;
            output::write_sequence(out, format, &terms)?;
        }
        Command::Families(a) => {
            let build = match a.kind {
                FamilyKind::Symmetric => families::construct_symmetric,
                FamilyKind::Pseudo => families::construct_pseudo_symmetric,
            };
            let mut members = if a.all_choices {
                PairChoice::all(a.n)
                    .map_err(Failure::usage)?
                    .map(|c| build(a.n, &c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(Failure::usage)?
            } else {
                let choice = match &a.choice {
                    Some(s) => PairChoice::parse(a.n, s),
                    None => PairChoice::lower(a.n),
                }
                .map_err(Failure::usage)?;
                vec![build(a.n, &choice).map_err(Failure::usage)?]
            };
            members.sort();
            output::write_gapsets(out, format, &members)?;
        }
        Command::Sigma(a) => {
            let map = if a.inverse { families::sigma_inverse } else { families::sigma };
            if let Some(text) = &a.apply {
                let g = GapSet::new(parse_list(text).map_err(Failure::usage)?).map_err(Failure::usage)?;
                let image = map(&g).map_err(Failure::usage)?;
                output::write_gapsets(out, format, &[image])?;
            } else if let Some(genus) = a.genus {
                let pairs = sigma_all(genus, a.inverse)?;
                output::write_mapping(out, format, &pairs)?;
            }
        }
        Command::Verify(a) => return verify_command(a, format, out),
        Command::Oeis { id, terms } => {
            let reference =
                oeis::lookup(id).ok_or_else(|| Failure::usage(format!("no embedded prefix for {id}")))?;
            if *terms as usize > reference.terms.len() {
                return Err(Failure::usage(format!(
                    "only {} terms of {} are embedded",
                    reference.terms.len(),
                    reference.id
                )));
            }
            let computed = reference.compute(*terms).map_err(Failure::usage)?;
            let embedded = reference.terms[..*terms as usize].to_vec();
            let matched = computed == embedded;
            let rec = output::OeisRecord {
                id: reference.id.to_string(),
                terms: *terms,
                computed,
                embedded,
                status: if matched { "MATCH" } else { "MISMATCH" },
            };
            output::write_oeis(out, format, &rec)?;
            if !matched {
                return Ok(EXIT_FAILURE);
            }
        }
    }
    Ok(EXIT_OK)
}

/// Maps the whole domain of σ (genus 3n+1) or σ⁻¹ (genus 3n+2).
fn sigma_all(genus: u32, inverse: bool) -> Result<Vec<(GapSet, GapSet)>, Failure> {
    let (residue, shape) = if inverse { (2, "3n+2") } else { (1, "3n+1") };
    if genus < 3 + residue || genus % 3 != residue {
        return Err(Failure::usage(format!("genus {genus} is not of the form {shape} with n ≥ 1")));
    }
    let n = (genus - residue) / 3;
    let kappa = if inverse { 2 * n + 1 } else { 2 * n };
    let domain = enumerate::enumerate_filtered(&FamilyFilter::pure_sparse(genus, kappa)).map_err(Failure::usage)?;
    let mut pairs = Vec::new();
    for g in domain {
        let image = if inverse {
            if g.symmetry_class() == SymmetryClass::PseudoSymmetric {
                continue;
            }
            families::sigma_inverse(&g)
        } else {
            if g.depth() > 3 {
                continue;
            }
            families::sigma(&g)
        };
        pairs.push((g, image.map_err(Failure::usage)?));
    }
    Ok(pairs)
}

fn verify_command<W: Write>(a: &VerifyArgs, format: Format, out: &mut W) -> Result<i32, Failure> {
    let verifier = Verifier::default();
    if a.all {
        let summary = verifier.run_all(a.max_genus, a.max_n).map_err(Failure::usage)?;
        output::write_summary(out, format, &summary)?;
        return Ok(if summary.all_checks_pass() { EXIT_OK } else { EXIT_FAILURE });
    }
    let id = a.check.as_deref().expect("clap requires --check or --all");
    let spec = verify::lookup(id).ok_or_else(|| Failure::usage(format!("unknown check id {id:?}")))?;
    let range = verify::natural_range(spec, a.max_genus, a.max_n);
    let lo = a.from.unwrap_or(range.lo);
    let report = verifier.run_check(id, lo, range.hi).map_err(Failure::usage)?;
    output::write_reports(out, format, std::slice::from_ref(&report))?;
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}
