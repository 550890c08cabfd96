//! Registry of machine-checkable claims about gapsets and the pure-sparse
//! families, each evaluated exhaustively over a parameter range.
//!
//! Claims are indexed by one of four scopes:
//!
//! * [`Scope::Genus`]: every nonempty gapset of genus `g`, for `g` in range;
//! * [`Scope::Multiplicity`]: every candidate set `[1, m−1] ∪ T` with
//!   `T ⊆ [m+1, 2m−1]`, for `m` in range;
//! * [`Scope::Family`]: the families `G_{2n}(3n+1)` and `G_{2n+1}(3n+2)`, for
//!   `n` in range;
//! * [`Scope::Fixture`]: a single named gapset.
//!
//! Probes run a claim outside its hypothesis and are expected to fail with a
//! documented list of counterexamples. They are reported separately from the
//! regular checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::enumerate::{EnumerateError, Enumerator};
use crate::families::{self, FamilyError};
use crate::gapset::{is_gapset, is_m_set, join, GapSet, SymmetryClass};

/// Deepest genus the verifier will enumerate.
pub const VERIFY_MAX_GENUS: u32 = 26;

/// Largest multiplicity for the subset-scanning claim (`2^{m−1}` candidates).
pub const VERIFY_MAX_MULTIPLICITY: u32 = 20;

/// Upper bound on `a` for the interval-avoidance claim.
const SHIFT_BOUND: u32 = 3;

/// The interval-avoidance claim is swept to this genus at most.
const INTERVAL_MAX_GENUS: u32 = 14;

/// Witness that depth 3 does not force pseudo-symmetry in `G_5(8)`.
pub const CONVERSE_FIXTURE: [u32; 8] = [1, 2, 3, 4, 6, 7, 8, 13];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("unknown check id {0:?}")]
    UnknownCheck(String),
    #[error("range {lo}..={hi} for {id} needs genus {genus}, above the ceiling {VERIFY_MAX_GENUS}")]
    RangeTooLarge { id: String, lo: u32, hi: u32, genus: u32 },
    #[error("multiplicity {0} exceeds the ceiling {VERIFY_MAX_MULTIPLICITY}")]
    MultiplicityTooLarge(u32),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    Genus,
    Multiplicity,
    Family,
    Fixture,
}

impl Scope {
    fn symbol(&self) -> &'static str {
        match self {
            Scope::Genus => "g",
            Scope::Multiplicity => "m",
            Scope::Family => "n",
            Scope::Fixture => "fixture",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    /// A proved result, verified exhaustively.
    Proved,
    /// A result stated without proof; the sweep is the only evidence.
    Empirical,
    /// A claim run outside its hypothesis; expected to fail.
    Probe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

/// Registry entry.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CheckSpec {
    pub id: &'static str,
    pub claim: &'static str,
    pub kind: CheckKind,
    pub scope: Scope,
    /// Smallest parameter at which the claim's hypothesis holds.
    pub min_param: u32,
}

const fn check(id: &'static str, scope: Scope, min_param: u32, claim: &'static str) -> CheckSpec {
    CheckSpec {
        id,
        claim,
        kind: CheckKind::Proved,
        scope,
        min_param,
    }
}

/// Every registered claim, in report order.
pub const REGISTRY: &[CheckSpec] = &[
    check("P2.1", Scope::Multiplicity, 1, "G ⊆ [1,2m−1] with [1,m−1] ⊆ G and m ∉ G is a gapset of multiplicity m and depth ≤ 2"),
    check("P2.2", Scope::Genus, 1, "2 ≤ m ≤ g+1 for every nonempty gapset"),
    check("P2.4", Scope::Genus, 1, "κ ≤ m for every pure κ-sparse gapset"),
    CheckSpec {
        kind: CheckKind::Empirical,
        ..check("P2.5", Scope::Genus, 1, "[a·m+ℓ_j+1, a·m+ℓ_{j+1}−1] ∩ G = ∅ for all a ≥ 0 and j ∈ [1,g−1]")
    },
    check("P2.6", Scope::Genus, 2, "ℓ_g ≤ ℓ_α + m for every pure κ-sparse gapset"),
    check("T2.7", Scope::Genus, 1, "G symmetric ⟺ PF(G) = {F}"),
    check("T2.8", Scope::Genus, 1, "G pseudo-symmetric ⟺ PF(G) = {F, F/2}, with F even"),
    check("P2.9", Scope::Genus, 2, "ℓ_α, ℓ_{α+1} lie in G_{q−2}×G_{q−2}, G_{q−1}×G_{q−1} or G_{q−2}×G_{q−1}"),
    check("T2.10", Scope::Genus, 1, "G_{q−1} ⊆ PF(G) and #G_{q−1} ≤ τ(G)"),
    check("L3.1", Scope::Family, 1, "G_{2n}(3n+1) has a hyperelliptic member iff n = 1; {1,3,5,7} ∈ G_2(4)"),
    check("P3.2", Scope::Family, 3, "every G ∈ G_{2n}(3n+1) has exactly one jump of size 2n (n > 2)"),
    check("P3.3", Scope::Family, 1, "symmetric G ∈ G_{2n}(3n+1) has m = 2n"),
    check("C3.4", Scope::Family, 1, "every G ∈ G_{2n}(3n+1) has q ≤ 4"),
    check("T3.5", Scope::Family, 1, "G ∈ G_{2n}(3n+1) is symmetric ⟺ q = 4"),
    check("P3.6", Scope::Family, 2, "[1,2n−1] ∪ {2n+1} ∪ [3n+1,4n−1] ∪ {4n+1,6n+1} ∈ G_{2n}(3n+1) with q = 4"),
    check("P3.7", Scope::Family, 1, "G ∈ G_{2n}(3n+1) with q ≤ 3 has ℓ_α ≤ 2m−1"),
    check("T3.8", Scope::Family, 1, "G_{2n}(3n+1) has no pseudo-symmetric member"),
    check("P3.9", Scope::Family, 1, "symmetric G ∈ G_{2n}(3n+1): G_3 = {ℓ_g}, G_2 = {ℓ_{g−1}}, α = g−1, ℓ_{g−1} = 2m+1, ℓ_g = 3m+1, #G_1 = n"),
    check("C3.10", Scope::Family, 1, "symmetric G ∈ G_{2n}(3n+1) has m+1 ∈ G"),
    check("T3.12", Scope::Family, 1, "the symmetric members of G_{2n}(3n+1) are exactly the 2^{n−1} constructed ones"),
    check("P4.1", Scope::Family, 2, "every G ∈ G_{2n+1}(3n+2) has exactly one jump of size 2n+1 (n ≥ 2)"),
    check("P4.2", Scope::Family, 1, "G ∈ G_{2n+1}(3n+2) with q ≤ 3 has ℓ_α ≤ 2m−1"),
    check("P4.4", Scope::Family, 1, "pseudo-symmetric G ∈ G_{2n+1}(3n+2) has m = 2n+1"),
    check("P4.5", Scope::Family, 1, "G_{2n+1}(3n+2) has no symmetric member"),
    check("C4.6", Scope::Family, 1, "every G ∈ G_{2n+1}(3n+2) has q ≤ 3, and q = 3 when pseudo-symmetric"),
    check("P4.7", Scope::Family, 1, "pseudo-symmetric G ∈ G_{2n+1}(3n+2): G_2 = {ℓ_g}, #G_1 = n+1, α = g−1, ℓ_{g−1} = 2m−1, ℓ_g = 3m−1"),
    check("T4.8", Scope::Family, 1, "the pseudo-symmetric members of G_{2n+1}(3n+2) are exactly the 2^{n−1} constructed ones"),
    check("T5.1", Scope::Family, 1, "σ is injective on G_{2n}(3n+1, q ≤ 3); σ(G) is a pure (2n+1)-sparse (m+1)-set of genus g+1 and depth q(G)"),
    check("P5.2", Scope::Family, 1, "σ maps G_{2n}(3n+1, 2) into G_{2n+1}(3n+2, 2)"),
    check("P5.3", Scope::Family, 1, "σ maps G_{2n}(3n+1, 3) into G_{2n+1}(3n+2, 3)"),
    check("P5.4", Scope::Family, 1, "every image σ(G) has ℓ_{g′} ≤ 2g′−3, so it is not pseudo-symmetric"),
    check("T5.5", Scope::Family, 1, "σ(G_{2n}(3n+1, q ≤ 3)) = G_{2n+1}(3n+2) ∖ pseudo-symmetric, with σ⁻¹ as two-sided inverse"),
    check("C5.6", Scope::Family, 1, "#G_{2n}(3n+1) = #G_{2n+1}(3n+2)"),
];

/// Converse of C4.6 evaluated on [`CONVERSE_FIXTURE`].
const CONVERSE_CHECK: CheckSpec = CheckSpec {
    id: "C4.6-converse",
    claim: "a pure (2n+1)-sparse gapset of genus 3n+2 and depth 3 is pseudo-symmetric",
    kind: CheckKind::Probe,
    scope: Scope::Fixture,
    min_param: 0,
};

/// A claim run deliberately outside its hypothesis.
#[derive(Debug, Clone, Serialize)]
pub struct ProbeSpec {
    pub id: &'static str,
    pub target: &'static str,
    pub lo: u32,
    pub hi: u32,
    /// The exact counterexample sets the probe must produce.
    pub documented: &'static [&'static [u32]],
    pub note: &'static str,
}

pub const PROBES: &[ProbeSpec] = &[
    ProbeSpec {
        id: "P3.2@n=1",
        target: "P3.2",
        lo: 1,
        hi: 1,
        documented: &[&[1, 3, 5, 7]],
        note: "below n > 2 the jump of size 2n need not be unique",
    },
    ProbeSpec {
        id: "C4.6-converse",
        target: "C4.6-converse",
        lo: 0,
        hi: 0,
        documented: &[&CONVERSE_FIXTURE],
        note: "depth 3 does not imply pseudo-symmetric",
    },
];

pub fn lookup(id: &str) -> Option<&'static CheckSpec> {
    REGISTRY
        .iter()
        .find(|c| c.id == id)
        .or((id == CONVERSE_CHECK.id).then_some(&CONVERSE_CHECK))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub set: Vec<u32>,
    pub detail: String,
}

impl Counterexample {
    fn new(set: &[u32], detail: impl Into<String>) -> Self {
        Self {
            set: set.to_vec(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}: {}", join(&self.set), self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ParamRange {
    pub scope: Scope,
    pub lo: u32,
    pub hi: u32,
}

impl ParamRange {
    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.scope {
            Scope::Fixture => f.write_str("fixture"),
            _ if self.is_empty() => write!(f, "{} ∈ ∅", self.scope.symbol()),
            _ => write!(f, "{} ∈ [{}, {}]", self.scope.symbol(), self.lo, self.hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub check_id: String,
    pub kind: CheckKind,
    pub range: ParamRange,
    pub instances_checked: u64,
    pub status: Status,
    pub counterexamples: Vec<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeOutcome {
    pub probe_id: String,
    pub note: String,
    pub report: VerificationReport,
    /// The probe failed with exactly the documented counterexample sets.
    pub as_documented: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: Vec<VerificationReport>,
    pub probes: Vec<ProbeOutcome>,
}

impl Summary {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(VerificationReport::passed)
    }

    pub fn probes_as_documented(&self) -> bool {
        self.probes.iter().all(|p| p.as_documented)
    }
}

/// The σ implementation under test, returning the raw image.
pub type SigmaFn = fn(&GapSet) -> Result<Vec<u32>, FamilyError>;

#[derive(Debug, Clone, Copy)]
pub struct Verifier {
    sigma: SigmaFn,
    enumerator: Enumerator,
}

impl Default for Verifier {
    fn default() -> Self {
        Self {
            sigma: families::sigma_image,
            enumerator: Enumerator::default(),
        }
    }
}

pub fn run_check(id: &str, lo: u32, hi: u32) -> Result<VerificationReport, VerifyError> {
    Verifier::default().run_check(id, lo, hi)
}

pub fn run_all(g_ceiling: u32, n_ceiling: u32) -> Result<Summary, VerifyError> {
    Verifier::default().run_all(g_ceiling, n_ceiling)
}

impl Verifier {
    /// Swaps in a different σ, e.g. to confirm the suite detects a broken map.
    pub fn with_sigma(sigma: SigmaFn) -> Self {
        Self {
            sigma,
            ..Self::default()
        }
    }

    pub fn run_check(&self, id: &str, lo: u32, hi: u32) -> Result<VerificationReport, VerifyError> {
        let spec = lookup(id).ok_or_else(|| VerifyError::UnknownCheck(id.to_string()))?;
        let range = ParamRange {
            scope: spec.scope,
            lo,
            hi,
        };
        let catalog = self.enumerator.up_to(required_genus(spec, range)?)?;
        Ok(self.evaluate(spec, range, &catalog))
    }

    /// Runs every registered check at its natural range and every probe.
    pub fn run_all(&self, g_ceiling: u32, n_ceiling: u32) -> Result<Summary, VerifyError> {
        let planned: Vec<(&CheckSpec, ParamRange)> = REGISTRY
            .iter()
            .map(|spec| (spec, natural_range(spec, g_ceiling, n_ceiling)))
            .collect();
        let probes: Vec<(&ProbeSpec, &CheckSpec, ParamRange)> = PROBES
            .iter()
            .map(|p| {
                let spec = lookup(p.target).expect("probe targets are registered");
                let range = ParamRange {
                    scope: spec.scope,
                    lo: p.lo,
                    hi: p.hi,
                };
                (p, spec, range)
            })
            .collect();
        let mut need = 0;
        for (spec, range) in planned
            .iter()
            .map(|(s, r)| (*s, *r))
            .chain(probes.iter().map(|(_, s, r)| (*s, *r)))
        {
            need = need.max(required_genus(spec, range)?);
        }
        let catalog = self.enumerator.up_to(need)?;

        let checks = planned
            .par_iter()
            .map(|(spec, range)| self.evaluate(spec, *range, &catalog))
            .collect();
        let probes = probes
            .par_iter()
            .map(|(probe, spec, range)| {
                let report = VerificationReport {
                    check_id: probe.id.to_string(),
                    kind: CheckKind::Probe,
                    ..self.evaluate(spec, *range, &catalog)
                };
                let found: Vec<&[u32]> = report.counterexamples.iter().map(|c| c.set.as_slice()).collect();
                ProbeOutcome {
                    probe_id: probe.id.to_string(),
                    note: probe.note.to_string(),
                    as_documented: report.status == Status::Fail && found == probe.documented,
                    report,
                }
            })
            .collect();
        Ok(Summary { checks, probes })
    }

    fn evaluate(&self, spec: &CheckSpec, range: ParamRange, catalog: &[Vec<GapSet>]) -> VerificationReport {
        let ctx = Context {
            catalog,
            sigma: self.sigma,
        };
        let mut tally = Tally::default();
        if spec.scope == Scope::Fixture {
            ctx.evaluate(spec.id, 0, &mut tally);
        } else {
            for p in range.lo..=range.hi {
                ctx.evaluate(spec.id, p, &mut tally);
            }
        }
        VerificationReport {
            check_id: spec.id.to_string(),
            kind: spec.kind,
            range,
            instances_checked: tally.instances,
            status: if tally.counterexamples.is_empty() {
                Status::Pass
            } else {
                Status::Fail
            },
            counterexamples: tally.counterexamples,
        }
    }
}

/// The range a check runs over under the given ceilings.
pub fn natural_range(spec: &CheckSpec, g_ceiling: u32, n_ceiling: u32) -> ParamRange {
    let hi = match spec.scope {
        Scope::Genus if spec.id == "P2.5" => g_ceiling.min(INTERVAL_MAX_GENUS),
        Scope::Genus | Scope::Multiplicity => g_ceiling,
        Scope::Family => n_ceiling,
        Scope::Fixture => 0,
    };
    ParamRange {
        scope: spec.scope,
        lo: spec.min_param,
        hi,
    }
}

fn required_genus(spec: &CheckSpec, range: ParamRange) -> Result<u32, VerifyError> {
    if range.is_empty() {
        return Ok(0);
    }
    let genus = match spec.scope {
        Scope::Genus => range.hi,
        Scope::Family => 3 * range.hi + 2,
        Scope::Fixture => CONVERSE_FIXTURE.len() as u32,
        Scope::Multiplicity => {
            if range.hi > VERIFY_MAX_MULTIPLICITY {
                return Err(VerifyError::MultiplicityTooLarge(range.hi));
            }
            0
        }
    };
    if genus > VERIFY_MAX_GENUS {
        return Err(VerifyError::RangeTooLarge {
            id: spec.id.to_string(),
            lo: range.lo,
            hi: range.hi,
            genus,
        });
    }
    Ok(genus)
}

#[derive(Default)]
struct Tally {
    instances: u64,
    counterexamples: Vec<Counterexample>,
}

impl Tally {
    /// Counts one instance; records a counterexample when `ok` is false.
    fn expect(&mut self, ok: bool, set: &[u32], detail: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.counterexamples.push(Counterexample::new(set, detail()));
        }
    }

    fn fail(&mut self, set: &[u32], detail: impl Into<String>) {
        self.counterexamples.push(Counterexample::new(set, detail));
    }
}

/// Index of the last jump of size `kappa`, 1-based.
fn alpha(g: &GapSet, kappa: u32) -> Option<usize> {
    g.jump_profile(kappa).ok().and_then(|j| j.alpha())
}

fn block_index(x: u32, m: u32) -> i64 {
    (x / m) as i64
}

struct Context<'a> {
    catalog: &'a [Vec<GapSet>],
    sigma: SigmaFn,
}

impl Context<'_> {
    fn genus(&self, g: u32) -> impl Iterator<Item = &GapSet> {
        self.catalog[g as usize].iter().filter(|s| !s.is_empty())
    }

    fn pure(&self, genus: u32, kappa: u32) -> Vec<&GapSet> {
        self.catalog[genus as usize]
            .iter()
            .filter(|s| s.sparsity() == kappa)
            .collect()
    }

    /// `G_{2n}(3n+1)`.
    fn even_family(&self, n: u32) -> Vec<&GapSet> {
        self.pure(3 * n + 1, 2 * n)
    }

    /// `G_{2n+1}(3n+2)`.
    fn odd_family(&self, n: u32) -> Vec<&GapSet> {
        self.pure(3 * n + 2, 2 * n + 1)
    }

    /// σ applied to every depth-≤3 member of `G_{2n}(3n+1)`, paired with its
    /// source.
    fn sigma_images(&self, n: u32) -> Vec<(&GapSet, Result<Vec<u32>, FamilyError>)> {
        self.even_family(n)
            .into_iter()
            .filter(|g| g.depth() <= 3)
            .map(|g| (g, (self.sigma)(g)))
            .collect()
    }

    fn evaluate(&self, id: &str, p: u32, t: &mut Tally) {
        match id {
            "P2.1" => self.multiplicity_two_layers(p, t),
            "P2.2" => {
                for g in self.genus(p) {
                    let m = g.multiplicity();
                    t.expect((2..=g.genus() as u32 + 1).contains(&m), g.elements(), || {
                        format!("m = {m} outside [2, {}]", g.genus() + 1)
                    });
                }
            }
            "P2.4" => {
                for g in self.genus(p) {
                    let (k, m) = (g.sparsity(), g.multiplicity());
                    t.expect(k <= m, g.elements(), || format!("κ = {k} > m = {m}"));
                }
            }
            "P2.5" => {
                for g in self.genus(p) {
                    let m = g.multiplicity();
                    let gaps = g.elements();
                    let hit = (0..=SHIFT_BOUND).find_map(|a| {
                        gaps.windows(2).find_map(|w| {
                            (a * m + w[0] + 1..a * m + w[1])
                                .find(|&x| g.contains(x))
                                .map(|x| format!("{x} ∈ [{}, {}] (a = {a})", a * m + w[0] + 1, a * m + w[1] - 1))
                        })
                    });
                    t.expect(hit.is_none(), gaps, || hit.unwrap_or_default());
                }
            }
            "P2.6" => {
                for g in self.genus(p) {
                    let m = g.multiplicity();
                    let a = alpha(g, g.sparsity()).expect("sparsity is realised");
                    let (top, ell_a) = (g.frobenius(), g.ell(a).unwrap());
                    t.expect(top <= ell_a + m, g.elements(), || {
                        format!("ℓ_g = {top} > ℓ_α + m = {}", ell_a + m)
                    });
                }
            }
            "T2.7" => {
                for g in self.genus(p) {
                    let pf = g.pseudo_frobenius().expect("nonempty");
                    let lhs = g.symmetry_class() == SymmetryClass::Symmetric;
                    let rhs = pf.members() == [g.frobenius()];
                    t.expect(lhs == rhs, g.elements(), || {
                        format!("symmetric = {lhs} but PF = {{{}}}", join(pf.members()))
                    });
                }
            }
            "T2.8" => {
                for g in self.genus(p) {
                    let pf = g.pseudo_frobenius().expect("nonempty");
                    let f = g.frobenius();
                    let lhs = g.symmetry_class() == SymmetryClass::PseudoSymmetric;
                    let rhs = f % 2 == 0 && pf.members() == [f / 2, f];
                    let parity_ok = !lhs || f % 2 == 0;
                    t.expect(lhs == rhs && parity_ok, g.elements(), || {
                        format!("pseudo-symmetric = {lhs} but PF = {{{}}}, F = {f}", join(pf.members()))
                    });
                }
            }
            "P2.9" => {
                for g in self.genus(p) {
                    let m = g.multiplicity();
                    let q = g.depth() as i64;
                    let a = alpha(g, g.sparsity()).expect("sparsity is realised");
                    let (lo, hi) = (g.ell(a).unwrap(), g.ell(a + 1).unwrap());
                    let pos = (block_index(lo, m), block_index(hi, m));
                    let ok = pos == (q - 2, q - 2) || pos == (q - 1, q - 1) || pos == (q - 2, q - 1);
                    t.expect(ok, g.elements(), || {
                        format!("ℓ_α = {lo} ∈ G_{}, ℓ_α+1 = {hi} ∈ G_{}, q = {q}", pos.0, pos.1)
                    });
                }
            }
            "T2.10" => {
                for g in self.genus(p) {
                    let pf = g.pseudo_frobenius().expect("nonempty");
                    let last = g.canonical_partition().expect("nonempty");
                    let last = last.last();
                    let ok = last.iter().all(|&x| pf.contains(x)) && last.len() <= pf.type_number();
                    t.expect(ok, g.elements(), || {
                        format!("G_(q−1) = {{{}}}, PF = {{{}}}", join(last), join(pf.members()))
                    });
                }
            }
            "L3.1" => {
                let family = self.even_family(p);
                let hyper = family.iter().find(|g| g.multiplicity() == 2);
                t.expect(hyper.is_some() == (p == 1), hyper.map_or(&[][..], |g| g.elements()), || {
                    format!("hyperelliptic member present = {} at n = {p}", hyper.is_some())
                });
                if p == 1 {
                    let found = family.iter().any(|g| g.elements() == [1, 3, 5, 7]);
                    t.expect(found, &[1, 3, 5, 7], || "missing from G_2(4)".into());
                }
            }
            "P3.2" => self.unique_jump(&self.even_family(p), 2 * p, t),
            "P4.1" => self.unique_jump(&self.odd_family(p), 2 * p + 1, t),
            "P3.3" => {
                for g in self.even_family(p).into_iter().filter(|g| is_symmetric(g)) {
                    t.expect(g.multiplicity() == 2 * p, g.elements(), || {
                        format!("m = {} ≠ 2n = {}", g.multiplicity(), 2 * p)
                    });
                }
            }
            "C3.4" => {
                for g in self.even_family(p) {
                    t.expect(g.depth() <= 4, g.elements(), || format!("q = {}", g.depth()));
                }
            }
            "T3.5" => {
                for g in self.even_family(p) {
                    t.expect(is_symmetric(g) == (g.depth() == 4), g.elements(), || {
                        format!("{} with q = {}", g.symmetry_class(), g.depth())
                    });
                }
            }
            "P3.6" => {
                let n = p;
                let witness: Vec<u32> = (1..2 * n)
                    .chain([2 * n + 1])
                    .chain(3 * n + 1..4 * n)
                    .chain([4 * n + 1, 6 * n + 1])
                    .collect();
                let member = self.even_family(n).iter().find(|g| g.elements() == witness.as_slice()).copied();
                t.expect(member.is_some_and(|g| g.depth() == 4), &witness, || match member {
                    None => "not a member of G_{2n}(3n+1)".into(),
                    Some(g) => format!("q = {}", g.depth()),
                });
            }
            "P3.7" => self.alpha_bound(&self.even_family(p), 2 * p, t),
            "P4.2" => self.alpha_bound(&self.odd_family(p), 2 * p + 1, t),
            "T3.8" => {
                for g in self.even_family(p) {
                    t.expect(!is_pseudo_symmetric(g), g.elements(), || "pseudo-symmetric".into());
                }
            }
            "P3.9" => {
                for g in self.even_family(p).into_iter().filter(|g| is_symmetric(g)) {
                    let problems = self.symmetric_shape(g, p);
                    t.expect(problems.is_empty(), g.elements(), || problems.join("; "));
                }
            }
            "C3.10" => {
                for g in self.even_family(p).into_iter().filter(|g| is_symmetric(g)) {
                    let m = g.multiplicity();
                    t.expect(g.contains(m + 1), g.elements(), || format!("m+1 = {} is a non-gap", m + 1));
                }
            }
            "T3.12" => {
                let enumerated: Vec<GapSet> =
                    self.even_family(p).into_iter().filter(|g| is_symmetric(g)).cloned().collect();
                self.compare_with_construction(p, enumerated, families::symmetric_family(p), t);
            }
            "P4.4" => {
                for g in self.odd_family(p).into_iter().filter(|g| is_pseudo_symmetric(g)) {
                    t.expect(g.multiplicity() == 2 * p + 1, g.elements(), || {
                        format!("m = {} ≠ 2n+1 = {}", g.multiplicity(), 2 * p + 1)
                    });
                }
            }
            "P4.5" => {
                for g in self.odd_family(p) {
                    t.expect(!is_symmetric(g), g.elements(), || "symmetric".into());
                }
            }
            "C4.6" => {
                for g in self.odd_family(p) {
                    let q = g.depth();
                    let ok = q <= 3 && (!is_pseudo_symmetric(g) || q == 3);
                    t.expect(ok, g.elements(), || format!("{} with q = {q}", g.symmetry_class()));
                }
            }
            "C4.6-converse" => {
                let g = GapSet::new(CONVERSE_FIXTURE).expect("fixture is a gapset");
                let in_family = g.genus() == 8 && g.sparsity() == 5;
                if !in_family {
                    t.fail(g.elements(), "fixture is not in G_5(8)");
                }
                let holds = g.depth() != 3 || is_pseudo_symmetric(&g);
                t.expect(holds, g.elements(), || {
                    format!("q = 3 but F = {} = 2g−3, not pseudo-symmetric", g.frobenius())
                });
            }
            "P4.7" => {
                for g in self.odd_family(p).into_iter().filter(|g| is_pseudo_symmetric(g)) {
                    let problems = self.pseudo_symmetric_shape(g, p);
                    t.expect(problems.is_empty(), g.elements(), || problems.join("; "));
                }
            }
            "T4.8" => {
                let enumerated: Vec<GapSet> = self
                    .odd_family(p)
                    .into_iter()
                    .filter(|g| is_pseudo_symmetric(g))
                    .cloned()
                    .collect();
                self.compare_with_construction(p, enumerated, families::pseudo_symmetric_family(p), t);
            }
            "T5.1" => {
                let mut seen: HashMap<Vec<u32>, &GapSet> = HashMap::new();
                for (g, image) in self.sigma_images(p) {
                    let image = match image {
                        Ok(v) => v,
                        Err(e) => {
                            t.expect(false, g.elements(), || format!("σ failed: {e}"));
                            continue;
                        }
                    };
                    let mut problems = Vec::new();
                    let m_next = g.multiplicity() + 1;
                    let mut sorted = image.clone();
                    sorted.sort_unstable();
                    sorted.dedup();
                    if sorted.len() != g.genus() + 1 {
                        problems.push(format!("image has {} elements", sorted.len()));
                    }
                    let widest = sorted.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0);
                    if widest != 2 * p + 1 {
                        problems.push(format!("image sparsity {widest}"));
                    }
                    if !is_m_set(&sorted, m_next).unwrap_or(false) {
                        problems.push(format!("image is not an {m_next}-set"));
                    } else {
                        let depth = sorted.last().map_or(0, |&x| x.div_ceil(m_next));
                        if depth != g.depth() {
                            problems.push(format!("image depth {depth} ≠ q(G) = {}", g.depth()));
                        }
                    }
                    if let Some(prev) = seen.insert(sorted.clone(), g) {
                        problems.push(format!("same image as {prev}"));
                    }
                    t.expect(problems.is_empty(), g.elements(), || {
                        format!("σ(G) = {{{}}}: {}", join(&sorted), problems.join("; "))
                    });
                }
            }
            "P5.2" | "P5.3" => {
                let q = if id == "P5.2" { 2 } else { 3 };
                for (g, image) in self.sigma_images(p).into_iter().filter(|(g, _)| g.depth() == q) {
                    let verdict = match image.map(GapSet::new) {
                        Err(e) => Err(format!("σ failed: {e}")),
                        Ok(Err(e)) => Err(format!("image is not a gapset: {e}")),
                        Ok(Ok(s)) => {
                            let ok = s.genus() as u32 == 3 * p + 2 && s.sparsity() == 2 * p + 1 && s.depth() == q;
                            if ok {
                                Ok(())
                            } else {
                                Err(format!(
                                    "σ(G) = {s} has genus {}, κ = {}, q = {}",
                                    s.genus(),
                                    s.sparsity(),
                                    s.depth()
                                ))
                            }
                        }
                    };
                    t.expect(verdict.is_ok(), g.elements(), || verdict.unwrap_err());
                }
            }
            "P5.4" => {
                let bound = 2 * (3 * p + 2) - 3;
                for (g, image) in self.sigma_images(p) {
                    let top = image.as_ref().ok().and_then(|v| v.iter().max().copied());
                    t.expect(top.is_some_and(|x| x <= bound), g.elements(), || match top {
                        Some(x) => format!("max image element {x} > 2g′−3 = {bound}"),
                        None => "σ failed".into(),
                    });
                }
            }
            "T5.5" => self.image_is_codomain(p, t),
            "C5.6" => {
                let (a, b) = (self.even_family(p).len(), self.odd_family(p).len());
                t.expect(a == b, &[], || format!("#G_2n(3n+1) = {a} but #G_2n+1(3n+2) = {b} at n = {p}"));
            }
            other => unreachable!("check {other} has no evaluator"),
        }
    }

    fn multiplicity_two_layers(&self, m: u32, t: &mut Tally) {
        let upper: Vec<u32> = (m + 1..2 * m).collect();
        for bits in 0u64..1 << upper.len() {
            let set: Vec<u32> = (1..m)
                .chain(upper.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, &x)| x))
                .collect();
            let verdict = if !is_gapset(&set) {
                Err("not a gapset".to_string())
            } else {
                let g = GapSet::new(set.iter().copied()).expect("checked");
                if g.multiplicity() != m || g.depth() > 2 {
                    Err(format!("m = {}, q = {}", g.multiplicity(), g.depth()))
                } else {
                    Ok(())
                }
            };
            t.expect(verdict.is_ok(), &set, || verdict.unwrap_err());
        }
    }

    fn unique_jump(&self, family: &[&GapSet], kappa: u32, t: &mut Tally) {
        for g in family {
            let jumps = g.jump_profile(kappa).map(|j| j.indices().to_vec()).unwrap_or_default();
            t.expect(jumps.len() == 1, g.elements(), || {
                format!("{} jumps of size {kappa} at indices {jumps:?}", jumps.len())
            });
        }
    }

    fn alpha_bound(&self, family: &[&GapSet], kappa: u32, t: &mut Tally) {
        for g in family.iter().filter(|g| g.depth() <= 3) {
            let m = g.multiplicity();
            let ell_a = alpha(g, kappa).and_then(|a| g.ell(a)).expect("κ is realised");
            t.expect(ell_a < 2 * m, g.elements(), || format!("ℓ_α = {ell_a} > 2m−1 = {}", 2 * m - 1));
        }
    }

    fn symmetric_shape(&self, g: &GapSet, n: u32) -> Vec<String> {
        let mut problems = Vec::new();
        let genus = g.genus();
        let m = g.multiplicity();
        let part = g.canonical_partition().expect("nonempty");
        let top = g.ell(genus).unwrap();
        let below = g.ell(genus - 1).unwrap();
        if part.depth() != 4 {
            problems.push(format!("{} blocks", part.depth()));
        } else {
            if part.block(3) != Some(&[top][..]) {
                problems.push("G_3 ≠ {ℓ_g}".into());
            }
            if part.block(2) != Some(&[below][..]) {
                problems.push("G_2 ≠ {ℓ_(g−1)}".into());
            }
            if part.block(1).map(<[u32]>::len) != Some(n as usize) {
                problems.push(format!("#G_1 ≠ {n}"));
            }
        }
        if alpha(g, 2 * n) != Some(genus - 1) {
            problems.push(format!("α = {:?} ≠ g−1", alpha(g, 2 * n)));
        }
        if below != 2 * m + 1 {
            problems.push(format!("ℓ_(g−1) = {below} ≠ 2m+1"));
        }
        if top != 3 * m + 1 {
            problems.push(format!("ℓ_g = {top} ≠ 3m+1"));
        }
        problems
    }

    fn pseudo_symmetric_shape(&self, g: &GapSet, n: u32) -> Vec<String> {
        let mut problems = Vec::new();
        let genus = g.genus();
        let m = g.multiplicity();
        let part = g.canonical_partition().expect("nonempty");
        let top = g.ell(genus).unwrap();
        let below = g.ell(genus - 1).unwrap();
        if part.depth() != 3 {
            problems.push(format!("{} blocks", part.depth()));
        } else {
            if part.block(2) != Some(&[top][..]) {
                problems.push("G_2 ≠ {ℓ_g}".into());
            }
            if part.block(1).map(<[u32]>::len) != Some(n as usize + 1) {
                problems.push(format!("#G_1 ≠ {}", n + 1));
            }
        }
        if alpha(g, 2 * n + 1) != Some(genus - 1) {
            problems.push(format!("α = {:?} ≠ g−1", alpha(g, 2 * n + 1)));
        }
        if below != 2 * m - 1 {
            problems.push(format!("ℓ_(g−1) = {below} ≠ 2m−1"));
        }
        if top != 3 * m - 1 {
            problems.push(format!("ℓ_g = {top} ≠ 3m−1"));
        }
        problems
    }

    fn compare_with_construction(
        &self,
        n: u32,
        enumerated: Vec<GapSet>,
        constructed: Result<Vec<GapSet>, FamilyError>,
        t: &mut Tally,
    ) {
        let constructed = match constructed {
            Ok(c) => c,
            Err(e) => {
                t.expect(false, &[], || format!("construction failed at n = {n}: {e}"));
                return;
            }
        };
        let expected_count = 1usize << (n - 1);
        let a: BTreeSet<&GapSet> = enumerated.iter().collect();
        let b: BTreeSet<&GapSet> = constructed.iter().collect();
        for g in a.difference(&b) {
            t.fail(g.elements(), "enumerated but not constructed");
        }
        for g in b.difference(&a) {
            t.fail(g.elements(), "constructed but not enumerated");
        }
        t.instances += a.len() as u64;
        t.expect(a.len() == expected_count && b.len() == expected_count, &[], || {
            format!(
                "n = {n}: {} enumerated, {} constructed, expected 2^(n−1) = {expected_count}",
                a.len(),
                b.len()
            )
        });
    }

    fn image_is_codomain(&self, n: u32, t: &mut Tally) {
        let codomain: BTreeSet<&GapSet> = self
            .odd_family(n)
            .into_iter()
            .filter(|g| !is_pseudo_symmetric(g))
            .collect();
        let mut image: BTreeSet<GapSet> = BTreeSet::new();
        for (g, result) in self.sigma_images(n) {
            t.instances += 1;
            let raw = match result {
                Ok(v) => v,
                Err(e) => {
                    t.fail(g.elements(), format!("σ failed: {e}"));
                    continue;
                }
            };
            match GapSet::new(raw.iter().copied()) {
                Ok(s) if codomain.contains(&s) => {
                    match families::sigma_inverse(&s) {
                        Ok(back) if &back == g => {}
                        Ok(back) => t.fail(g.elements(), format!("σ⁻¹(σ(G)) = {back}")),
                        Err(e) => t.fail(g.elements(), format!("σ⁻¹(σ(G)) failed: {e}")),
                    }
                    image.insert(s);
                }
                Ok(s) => t.fail(g.elements(), format!("σ(G) = {s} lies outside G_2n+1(3n+2) ∖ P")),
                Err(_) => t.fail(g.elements(), format!("σ(G) = {{{}}} is not a gapset", join(&raw))),
            }
        }
        for target in &codomain {
            t.instances += 1;
            if !image.contains(*target) {
                t.fail(target.elements(), "not in the image of σ");
            }
            match families::sigma_inverse(target) {
                Ok(pre) => match (self.sigma)(&pre) {
                    Ok(v) if v == target.elements() => {}
                    Ok(v) => t.fail(target.elements(), format!("σ(σ⁻¹(G′)) = {{{}}}", join(&v))),
                    Err(e) => t.fail(target.elements(), format!("σ(σ⁻¹(G′)) failed: {e}")),
                },
                Err(e) => t.fail(target.elements(), format!("σ⁻¹ failed: {e}")),
            }
        }
    }
}

fn is_symmetric(g: &GapSet) -> bool {
    g.symmetry_class() == SymmetryClass::Symmetric
}

fn is_pseudo_symmetric(g: &GapSet) -> bool {
    g.symmetry_class() == SymmetryClass::PseudoSymmetric
}

#[cfg(test)]
mod tests {
    use super::*;

    const IDS: [&str; 33] = [
        "P2.1", "P2.2", "P2.4", "P2.5", "P2.6", "T2.7", "T2.8", "P2.9", "T2.10", "L3.1", "P3.2", "P3.3",
        "C3.4", "T3.5", "P3.6", "P3.7", "T3.8", "P3.9", "C3.10", "T3.12", "P4.1", "P4.2", "P4.4", "P4.5",
        "C4.6", "P4.7", "T4.8", "T5.1", "P5.2", "P5.3", "P5.4", "T5.5", "C5.6",
    ];

    #[test]
    fn registry_covers_every_claim_once() {
        let ids: Vec<&str> = REGISTRY.iter().map(|c| c.id).collect();
        assert_eq!(ids, IDS);
        assert_eq!(lookup("P2.5").unwrap().kind, CheckKind::Empirical);
        assert!(PROBES.iter().all(|p| lookup(p.target).is_some()));
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert_eq!(run_check("X9.9", 1, 2), Err(VerifyError::UnknownCheck("X9.9".into())));
    }

    #[test]
    fn ranges_above_ceiling_are_rejected() {
        assert!(matches!(run_check("T3.5", 1, 9), Err(VerifyError::RangeTooLarge { .. })));
        assert!(matches!(run_check("P2.2", 1, 27), Err(VerifyError::RangeTooLarge { .. })));
        assert_eq!(run_check("P2.1", 1, 21), Err(VerifyError::MultiplicityTooLarge(21)));
    }

    #[test]
    fn symmetric_iff_depth_four() {
        let r = run_check("T3.5", 1, 6).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert!(r.instances_checked > 0);
    }

    #[test]
    fn unique_jump_fails_below_hypothesis() {
        let r = run_check("P3.2", 1, 1).unwrap();
        assert_eq!(r.status, Status::Fail);
        let sets: Vec<&[u32]> = r.counterexamples.iter().map(|c| c.set.as_slice()).collect();
        assert_eq!(sets, vec![&[1u32, 3, 5, 7][..]]);
    }

    #[test]
    fn counts_agree_across_families() {
        assert!(run_check("C5.6", 1, 6).unwrap().passed());
    }

    #[test]
    fn empty_range_passes_vacuously() {
        let r = run_check("P3.2", 3, 2).unwrap();
        assert_eq!((r.status, r.instances_checked), (Status::Pass, 0));
    }

    /// `{1} ∪ {ℓ_i + 1}`: drops the extra shift after the last jump.
    fn flat_sigma(g: &GapSet) -> Result<Vec<u32>, FamilyError> {
        families::sigma_domain(g)?;
        Ok(std::iter::once(1).chain(g.elements().iter().map(|x| x + 1)).collect())
    }

    #[test]
    fn broken_sigma_is_caught() {
        let v = Verifier::with_sigma(flat_sigma);
        let r = v.run_check("T5.5", 1, 3).unwrap();
        assert_eq!(r.status, Status::Fail);
        assert!(!r.counterexamples.is_empty());
        assert!(!v.run_check("T5.1", 1, 3).unwrap().passed());
        assert!(run_check("T5.5", 1, 3).unwrap().passed());
    }

    #[test]
    fn reports_are_reproducible() {
        assert_eq!(run_all(9, 2).unwrap(), run_all(9, 2).unwrap());
        assert_eq!(run_check("P3.2", 1, 3).unwrap(), run_check("P3.2", 1, 3).unwrap());
    }

    #[test]
    fn smoke_run() {
        let s = run_all(4, 1).unwrap();
        assert!(s.all_checks_pass(), "{:#?}", s.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
        assert!(s.probes_as_documented());
    }
}
