//! Record schemas and their text, CSV and JSON renderings.

use std::io::{self, Write};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::enumerate::{CountCell, CountTable, SequenceTerm};
use crate::gapset::{join, parse_list, GapSet, GapSetError, Invariants, SymmetryClass};
use crate::verify::{Summary, VerificationReport};

pub const GAPSET_HEADER: [&str; 7] = ["genus", "kappa", "depth", "multiplicity", "frobenius", "symmetry", "gaps"];
pub const COUNT_HEADER: [&str; 3] = ["genus", "kappa", "count"];
pub const SEQUENCE_HEADER: [&str; 4] = ["n", "s_n", "ratio_prev", "ratio_cumsum"];
pub const REPORT_HEADER: [&str; 8] =
    ["check_id", "kind", "scope", "lo", "hi", "instances_checked", "status", "counterexamples"];

/// Decimal places for the ratio columns.
const RATIO_PLACES: u32 = 4;

/// Counterexamples listed per check in text output.
const TEXT_COUNTEREXAMPLES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapsetRow {
    pub genus: u32,
    pub kappa: u32,
    pub depth: u32,
    pub multiplicity: u32,
    pub frobenius: u32,
    pub symmetry: SymmetryClass,
    pub gaps: Vec<u32>,
}

impl GapsetRow {
    pub fn of(g: &GapSet) -> Self {
        let inv = Invariants::of(g);
        Self {
            genus: inv.genus,
            kappa: inv.sparsity,
            depth: inv.depth,
            multiplicity: inv.multiplicity,
            frobenius: inv.frobenius,
            symmetry: inv.symmetry_class(),
            gaps: g.elements().to_vec(),
        }
    }

    fn csv_record(&self) -> [String; 7] {
        [
            self.genus.to_string(),
            self.kappa.to_string(),
            self.depth.to_string(),
            self.multiplicity.to_string(),
            self.frobenius.to_string(),
            self.symmetry.to_string(),
            join(&self.gaps),
        ]
    }
}

/// A gapset row as read back from CSV.
#[derive(Debug, Clone, Deserialize)]
pub struct CsvGapsetRow {
    pub genus: u32,
    pub kappa: u32,
    pub depth: u32,
    pub multiplicity: u32,
    pub frobenius: u32,
    pub symmetry: String,
    pub gaps: String,
}

#[derive(Debug, thiserror::Error)]
pub enum RowError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Gapset(#[from] GapSetError),
    #[error("column {column} is {found} but the gapset has {actual}")]
    Mismatch {
        column: &'static str,
        found: String,
        actual: String,
    },
}

impl CsvGapsetRow {
    /// Re-validates the gap list and checks every invariant column against it.
    pub fn to_gapset(&self) -> Result<GapSet, RowError> {
        let g = GapSet::new(parse_list(&self.gaps)?)?;
        let actual = GapsetRow::of(&g);
        let columns = [
            ("genus", self.genus, actual.genus),
            ("kappa", self.kappa, actual.kappa),
            ("depth", self.depth, actual.depth),
            ("multiplicity", self.multiplicity, actual.multiplicity),
            ("frobenius", self.frobenius, actual.frobenius),
        ];
        for (column, found, expected) in columns {
            if found != expected {
                return Err(RowError::Mismatch {
                    column,
                    found: found.to_string(),
                    actual: expected.to_string(),
                });
            }
        }
        if self.symmetry != actual.symmetry.as_str() {
            return Err(RowError::Mismatch {
                column: "symmetry",
                found: self.symmetry.clone(),
                actual: actual.symmetry.to_string(),
            });
        }
        Ok(g)
    }
}

/// Parses CSV produced by [`write_gapsets`] back into validated gapsets.
pub fn read_gapsets(data: &[u8]) -> Result<Vec<GapSet>, RowError> {
    csv::Reader::from_reader(data)
        .deserialize::<CsvGapsetRow>()
        .map(|row| row?.to_gapset())
        .collect()
}

fn csv_writer<W: Write>(out: W, header: &[&str]) -> io::Result<csv::Writer<W>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    Ok(w)
}

fn json_line<W: Write, T: Serialize + ?Sized>(out: &mut W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

pub fn write_gapsets<W: Write>(out: &mut W, format: Format, gapsets: &[GapSet]) -> io::Result<()> {
    let rows: Vec<GapsetRow> = gapsets.iter().map(GapsetRow::of).collect();
    match format {
        Format::Csv => {
            let mut w = csv_writer(out, &GAPSET_HEADER)?;
            for row in &rows {
                w.write_record(row.csv_record())?;
            }
            w.flush()
        }
        Format::Json => json_line(out, &rows),
        Format::Text => {
            for (g, row) in gapsets.iter().zip(&rows) {
                writeln!(out, "{}", text_row(g, row))?;
            }
            Ok(())
        }
    }
}

fn text_row(g: &GapSet, row: &GapsetRow) -> String {
    format!(
        "{g}  g={} κ={} q={} m={} F={} {}",
        row.genus, row.kappa, row.depth, row.multiplicity, row.frobenius, row.symmetry
    )
}

/// Source/image pairs; CSV and JSON carry the image rows only.
pub fn write_mapping<W: Write>(out: &mut W, format: Format, pairs: &[(GapSet, GapSet)]) -> io::Result<()> {
    match format {
        Format::Text => {
            for (src, img) in pairs {
                writeln!(out, "{src} ↦ {}", text_row(img, &GapsetRow::of(img)))?;
            }
            Ok(())
        }
        _ => {
            let images: Vec<GapSet> = pairs.iter().map(|(_, img)| img.clone()).collect();
            write_gapsets(out, format, &images)
        }
    }
}

pub fn write_counts<W: Write>(out: &mut W, format: Format, table: &CountTable) -> io::Result<()> {
    let cells: Vec<CountCell> = table.nonzero_cells().collect();
    match format {
        Format::Csv => {
            let mut w = csv_writer(out, &COUNT_HEADER)?;
            for c in &cells {
                w.write_record([c.genus.to_string(), c.kappa.to_string(), c.count.to_string()])?;
            }
            w.flush()
        }
        Format::Json => json_line(out, &cells),
        Format::Text => write_grid(out, table),
    }
}

fn write_grid<W: Write>(out: &mut W, table: &CountTable) -> io::Result<()> {
    let max = table.max_genus();
    let width = (0..=max)
        .map(|g| table.total(g).to_string().len())
        .max()
        .unwrap_or(1)
        .max(3);
    write!(out, "{:>3} |", "g\\κ")?;
    for k in 0..=max {
        write!(out, " {k:>width$}")?;
    }
    writeln!(out, " | {:>width$}", "n_g")?;
    for g in 0..=max {
        write!(out, "{g:>3} |")?;
        for k in 0..=max {
            match table.cell(g, k) {
                0 => write!(out, " {:>width$}", "")?,
                c => write!(out, " {c:>width$}")?,
            }
        }
        writeln!(out, " | {:>width$}", table.total(g))?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SequenceRecord {
    n: u32,
    s_n: u64,
    ratio_prev: Option<String>,
    ratio_cumsum: String,
}

pub fn write_sequence<W: Write>(out: &mut W, format: Format, terms: &[SequenceTerm]) -> io::Result<()> {
    let records: Vec<SequenceRecord> = terms
        .iter()
        .map(|t| SequenceRecord {
            n: t.n,
            s_n: t.s_n,
            ratio_prev: t.ratio_prev.map(|r| r.to_fixed(RATIO_PLACES)),
            ratio_cumsum: t.ratio_cumsum.to_fixed(RATIO_PLACES),
        })
        .collect();
    match format {
        Format::Csv => {
            let mut w = csv_writer(out, &SEQUENCE_HEADER)?;
            for r in &records {
                w.write_record([
                    r.n.to_string(),
                    r.s_n.to_string(),
                    r.ratio_prev.clone().unwrap_or_default(),
                    r.ratio_cumsum.clone(),
                ])?;
            }
            w.flush()
        }
        Format::Json => {
            // Ratios go out as JSON numbers, rounded like the other formats.
            let values: Vec<serde_json::Value> = records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "s_n": r.s_n,
                        "ratio_prev": r.ratio_prev.as_deref().map(decimal),
                        "ratio_cumsum": decimal(&r.ratio_cumsum),
                    })
                })
                .collect();
            json_line(out, &values)
        }
        Format::Text => {
            writeln!(out, "{:>3} {:>10} {:>10} {:>12}", "n", "s_n", "ratio_prev", "ratio_cumsum")?;
            for r in &records {
                writeln!(
                    out,
                    "{:>3} {:>10} {:>10} {:>12}",
                    r.n,
                    r.s_n,
                    r.ratio_prev.as_deref().unwrap_or("-"),
                    r.ratio_cumsum
                )?;
            }
            Ok(())
        }
    }
}

fn decimal(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("fixed-point decimals are valid JSON numbers")
}

fn report_record(r: &VerificationReport) -> [String; 8] {
    [
        r.check_id.clone(),
        serde_json::to_value(r.kind).unwrap().as_str().unwrap().to_string(),
        serde_json::to_value(r.range.scope).unwrap().as_str().unwrap().to_string(),
        r.range.lo.to_string(),
        r.range.hi.to_string(),
        r.instances_checked.to_string(),
        r.status.to_string(),
        r.counterexamples.len().to_string(),
    ]
}

fn write_report_text<W: Write>(out: &mut W, r: &VerificationReport, label: &str) -> io::Result<()> {
    writeln!(
        out,
        "[{label}] {:<14} {:<16} {} instances",
        r.check_id,
        r.range.to_string(),
        r.instances_checked
    )?;
    for c in r.counterexamples.iter().take(TEXT_COUNTEREXAMPLES) {
        writeln!(out, "    {c}")?;
    }
    if r.counterexamples.len() > TEXT_COUNTEREXAMPLES {
        writeln!(out, "    … {} more", r.counterexamples.len() - TEXT_COUNTEREXAMPLES)?;
    }
    Ok(())
}

pub fn write_reports<W: Write>(out: &mut W, format: Format, reports: &[VerificationReport]) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv_writer(out, &REPORT_HEADER)?;
            for r in reports {
                w.write_record(report_record(r))?;
            }
            w.flush()
        }
        Format::Json => json_line(out, reports),
        Format::Text => {
            for r in reports {
                write_report_text(out, r, &r.status.to_string().to_uppercase())?;
            }
            Ok(())
        }
    }
}

pub fn write_summary<W: Write>(out: &mut W, format: Format, summary: &Summary) -> io::Result<()> {
    match format {
        Format::Csv => {
            let all: Vec<VerificationReport> = summary
                .checks
                .iter()
                .cloned()
                .chain(summary.probes.iter().map(|p| p.report.clone()))
                .collect();
            write_reports(out, format, &all)
        }
        Format::Json => json_line(out, summary),
        Format::Text => {
            write_reports(out, format, &summary.checks)?;
            for p in &summary.probes {
                let label = if p.as_documented { "PROBE OK" } else { "PROBE UNEXPECTED" };
                write_report_text(out, &p.report, label)?;
                writeln!(out, "    ({})", p.note)?;
            }
            let failed = summary.checks.iter().filter(|c| !c.passed()).count();
            writeln!(
                out,
                "{} checks, {failed} failed; {} probes, {} as documented",
                summary.checks.len(),
                summary.probes.len(),
                summary.probes.iter().filter(|p| p.as_documented).count()
            )
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OeisRecord {
    pub id: String,
    pub terms: u32,
    pub computed: Vec<u64>,
    pub embedded: Vec<u64>,
    pub status: &'static str,
}

pub fn write_oeis<W: Write>(out: &mut W, format: Format, rec: &OeisRecord) -> io::Result<()> {
    let list = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    match format {
        Format::Csv => {
            let mut w = csv_writer(out, &["id", "terms", "computed", "embedded", "status"])?;
            w.write_record([
                rec.id.clone(),
                rec.terms.to_string(),
                list(&rec.computed),
                list(&rec.embedded),
                rec.status.to_string(),
            ])?;
            w.flush()
        }
        Format::Json => json_line(out, rec),
        Format::Text => {
            writeln!(out, "{} computed: {}", rec.id, list(&rec.computed))?;
            writeln!(out, "{} embedded: {}", rec.id, list(&rec.embedded))?;
            writeln!(out, "{}", rec.status)
        }
    }
}
