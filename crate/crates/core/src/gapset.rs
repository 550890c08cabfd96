//! Gapsets and the invariants attached to them.
//!
//! A gapset is a finite set `G` of positive integers such that whenever
//! `z ∈ G` and `z = x + y` with `x, y ≥ 1`, at least one of `x`, `y` lies in
//! `G`. Equivalently, `G` is the set of gaps of a numerical semigroup.
//!
//! [`GapSet`] stores its elements twice: as a 128-bit membership mask (bit `i`
//! set iff `i ∈ G`) for constant-time lookups, and as an ascending sequence
//! `ℓ_1 < … < ℓ_g`. Every constructor that accepts caller data checks the
//! gapset condition; sets that are only required to be `m`-sets live in
//! [`MSet`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

/// Largest element a [`GapSet`] can hold.
pub const MAX_ELEMENT: u32 = 127;

/// Largest genus a [`GapSet`] can hold (`G ⊆ [1, 2g−1]` must fit the mask).
pub const MAX_GENUS: u32 = (MAX_ELEMENT + 1) / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GapSetError {
    #[error("gapset elements must be positive integers")]
    NonPositive,
    #[error("element {0} exceeds the supported maximum {MAX_ELEMENT}")]
    TooLarge(u32),
    #[error("not a gapset: {z} = {x} + {y} with neither {x} nor {y} in the set")]
    NotClosed { z: u32, x: u32, y: u32 },
    #[error("no partition: the gapset is empty")]
    NoPartition,
    #[error("the empty gapset has no pseudo-Frobenius numbers")]
    Empty,
    #[error("no consecutive pairs: genus {0} is less than 2")]
    NoConsecutivePairs(usize),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("not a {m}-set: {reason}")]
    NotMSet { m: u32, reason: String },
    #[error("cannot parse gap list: {0}")]
    Parse(String),
}

/// Returns the first decomposition `z = x + y` (with `x ≤ y`) witnessing a
/// violation of the gapset condition, scanning `z` in ascending order.
fn first_violation(sorted: &[u32]) -> Option<(u32, u32, u32)> {
    let contains = |v: u32| sorted.binary_search(&v).is_ok();
    for &z in sorted {
        for x in 1..=z / 2 {
            if !contains(x) && !contains(z - x) {
                return Some((z, x, z - x));
            }
        }
    }
    None
}

/// Whether `set` (any finite collection of integers, in any order) satisfies
/// the gapset condition. Zero is not a positive integer, so a set containing
/// it is rejected.
pub fn is_gapset(set: &[u32]) -> bool {
    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.first() == Some(&0) {
        return false;
    }
    first_violation(&sorted).is_none()
}

/// Whether `set` contains `[1, m−1]` and avoids every positive multiple of `m`.
pub fn is_m_set(set: &[u32], m: u32) -> Result<bool, GapSetError> {
    if m == 0 {
        return Err(GapSetError::ZeroMultiplicity);
    }
    Ok(m_set_violation(set, m).is_none())
}

fn m_set_violation(set: &[u32], m: u32) -> Option<String> {
    if let Some(missing) = (1..m).find(|x| !set.contains(x)) {
        return Some(format!("{missing} is missing from [1, {}]", m - 1));
    }
    set.iter()
        .find(|&&x| x > 0 && x % m == 0)
        .map(|x| format!("{x} is a multiple of {m}"))
}

fn max_gap_difference(sorted: &[u32]) -> u32 {
    match sorted.len() {
        0 => 0,
        1 => 1,
        _ => sorted.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0),
    }
}

/// A finite set of positive integers satisfying the gapset condition.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GapSet {
    mask: u128,
    gaps: Vec<u32>,
}

impl GapSet {
    /// Builds a gapset from arbitrary integers. Duplicates are merged and
    /// order is irrelevant; the result must satisfy the gapset condition.
    pub fn new<I: IntoIterator<Item = u32>>(elements: I) -> Result<Self, GapSetError> {
        let mut gaps: Vec<u32> = elements.into_iter().collect();
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first() == Some(&0) {
            return Err(GapSetError::NonPositive);
        }
        if let Some(&top) = gaps.last() {
            if top > MAX_ELEMENT {
                return Err(GapSetError::TooLarge(top));
            }
        }
        if let Some((z, x, y)) = first_violation(&gaps) {
            return Err(GapSetError::NotClosed { z, x, y });
        }
        let mask = gaps.iter().fold(0u128, |acc, &x| acc | (1u128 << x));
        Ok(Self { mask, gaps })
    }

    pub fn empty() -> Self {
        Self {
            mask: 0,
            gaps: Vec::new(),
        }
    }

    /// Caller guarantees `mask` describes a gapset (bit 0 clear).
    pub(crate) fn from_mask_unchecked(mask: u128) -> Self {
        debug_assert_eq!(mask & 1, 0);
        let mut gaps = Vec::with_capacity(mask.count_ones() as usize);
        let mut rest = mask;
        while rest != 0 {
            gaps.push(rest.trailing_zeros());
            rest &= rest - 1;
        }
        Self { mask, gaps }
    }

    /// The ascending gap sequence `ℓ_1 < … < ℓ_g`.
    pub fn elements(&self) -> &[u32] {
        &self.gaps
    }

    pub fn mask(&self) -> u128 {
        self.mask
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        x <= MAX_ELEMENT && self.mask >> x & 1 == 1
    }

    /// `ℓ_i` with the usual 1-based indexing.
    pub fn ell(&self, i: usize) -> Option<u32> {
        i.checked_sub(1).and_then(|k| self.gaps.get(k).copied())
    }

    pub fn multiplicity(&self) -> u32 {
        (!self.mask >> 1).trailing_zeros() + 1
    }

    /// `min{s ≥ 1 : s + n ∉ G for all n ≥ 0}`; equals 1 for the empty set.
    pub fn conductor(&self) -> u32 {
        self.gaps.last().map_or(1, |&top| top + 1)
    }

    pub fn frobenius(&self) -> u32 {
        self.conductor() - 1
    }

    /// `⌈c/m⌉`.
    pub fn depth(&self) -> u32 {
        self.conductor().div_ceil(self.multiplicity())
    }

    /// Maximum difference between consecutive gaps; 0 for `∅` and 1 for a
    /// singleton.
    pub fn sparsity(&self) -> u32 {
        max_gap_difference(&self.gaps)
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::of(self)
    }

    /// Whether `x` is a non-gap, i.e. an element of the complement semigroup.
    pub fn is_non_gap(&self, x: u32) -> bool {
        !self.contains(x)
    }

    pub fn canonical_partition(&self) -> Result<CanonicalPartition, GapSetError> {
        CanonicalPartition::of(self)
    }

    pub fn pseudo_frobenius(&self) -> Result<PseudoFrobeniusSet, GapSetError> {
        PseudoFrobeniusSet::of(self)
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        SymmetryClass::from_genus_and_frobenius(self.genus() as u32, self.frobenius())
    }

    pub fn jump_profile(&self, kappa: u32) -> Result<JumpProfile, GapSetError> {
        JumpProfile::of(self, kappa)
    }

    /// Views the gapset as an `m`-set for its own multiplicity.
    pub fn as_m_set(&self) -> MSet {
        MSet {
            elements: self.gaps.clone(),
            m: self.multiplicity(),
        }
    }

    /// Comma-separated gap list without braces, e.g. `1,2,3,5`.
    pub fn to_list_string(&self) -> String {
        join(&self.gaps)
    }
}

pub(crate) fn join(values: &[u32]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&v.to_string());
    }
    out
}

/// Lexicographic order on gap sequences.
impl Ord for GapSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gaps.cmp(&other.gaps)
    }
}

impl PartialOrd for GapSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GapSet{self}")
    }
}

impl fmt::Display for GapSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", join(&self.gaps))
    }
}

/// Parses integer lists such as `1,2,3,5`, `{1, 2, 3, 5}` or the empty string.
pub fn parse_list(s: &str) -> Result<Vec<u32>, GapSetError> {
    let trimmed = s
        .trim()
        .trim_start_matches(['{', '['])
        .trim_end_matches(['}', ']'])
        .trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| GapSetError::Parse(format!("{:?}: {e}", t.trim())))
        })
        .collect()
}

impl FromStr for GapSet {
    type Err = GapSetError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        GapSet::new(parse_list(s)?)
    }
}

impl Serialize for GapSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.gaps.serialize(serializer)
    }
}

/// The bundle `(g, m, c, F, q, κ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    pub genus: u32,
    pub multiplicity: u32,
    pub conductor: u32,
    pub frobenius: u32,
    pub depth: u32,
    pub sparsity: u32,
}

impl Invariants {
    pub fn of(gapset: &GapSet) -> Self {
        Self {
            genus: gapset.genus() as u32,
            multiplicity: gapset.multiplicity(),
            conductor: gapset.conductor(),
            frobenius: gapset.frobenius(),
            depth: gapset.depth(),
            sparsity: gapset.sparsity(),
        }
    }

    pub fn symmetry_class(&self) -> SymmetryClass {
        SymmetryClass::from_genus_and_frobenius(self.genus, self.frobenius)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// `F = 2g − 1`.
    Symmetric,
    /// `F = 2g − 2`.
    PseudoSymmetric,
    Neither,
}

impl SymmetryClass {
    pub fn from_genus_and_frobenius(genus: u32, frobenius: u32) -> Self {
        if genus == 0 {
            Self::Neither
        } else if frobenius == 2 * genus - 1 {
            Self::Symmetric
        } else if frobenius == 2 * genus - 2 {
            Self::PseudoSymmetric
        } else {
            Self::Neither
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Symmetric => "symmetric",
            Self::PseudoSymmetric => "pseudo_symmetric",
            Self::Neither => "neither",
        }
    }
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymmetryClass {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "symmetric" => Ok(Self::Symmetric),
            "pseudo" | "pseudo_symmetric" => Ok(Self::PseudoSymmetric),
            "neither" => Ok(Self::Neither),
            other => Err(format!("unknown symmetry class {other:?}")),
        }
    }
}

/// Blocks `G_i = G ∩ (i·m, (i+1)·m)` for `i ∈ [0, q−1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalPartition {
    multiplicity: u32,
    blocks: Vec<Vec<u32>>,
}

impl CanonicalPartition {
    pub fn of(gapset: &GapSet) -> Result<Self, GapSetError> {
        if gapset.is_empty() {
            return Err(GapSetError::NoPartition);
        }
        let m = gapset.multiplicity();
        let mut blocks = vec![Vec::new(); gapset.depth() as usize];
        for &x in gapset.elements() {
            blocks[(x / m) as usize].push(x);
        }
        Ok(Self {
            multiplicity: m,
            blocks,
        })
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> Option<&[u32]> {
        self.blocks.get(i).map(Vec::as_slice)
    }

    /// The last block `G_{q−1}`.
    pub fn last(&self) -> &[u32] {
        self.blocks.last().map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block holding `x`.
    pub fn block_of(&self, x: u32) -> usize {
        (x / self.multiplicity) as usize
    }
}

/// `PF(G)`: gaps `x` with `x + s` a non-gap for every nonzero non-gap `s`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudoFrobeniusSet {
    members: Vec<u32>,
}

impl PseudoFrobeniusSet {
    pub fn of(gapset: &GapSet) -> Result<Self, GapSetError> {
        if gapset.is_empty() {
            return Err(GapSetError::Empty);
        }
        // Non-gaps above F only produce sums above F, which are non-gaps.
        let frobenius = gapset.frobenius();
        let non_gaps: Vec<u32> = (1..=frobenius).filter(|&s| gapset.is_non_gap(s)).collect();
        let members = gapset
            .elements()
            .iter()
            .copied()
            .filter(|&x| non_gaps.iter().all(|&s| !gapset.contains(x + s)))
            .collect();
        Ok(Self { members })
    }

    /// Members in ascending order.
    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    /// The type `τ(G)`.
    pub fn type_number(&self) -> usize {
        self.members.len()
    }
}

/// Positions of the consecutive differences equal to `κ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JumpProfile {
    kappa: u32,
    indices: Vec<usize>,
}

impl JumpProfile {
    pub fn of(gapset: &GapSet, kappa: u32) -> Result<Self, GapSetError> {
        let gaps = gapset.elements();
        if gaps.len() < 2 {
            return Err(GapSetError::NoConsecutivePairs(gaps.len()));
        }
        let indices = gaps
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] - w[0] == kappa)
            .map(|(i, _)| i + 1)
            .collect();
        Ok(Self { kappa, indices })
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// 1-based indices `i` with `ℓ_{i+1} − ℓ_i = κ`, ascending.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    /// `α`, the largest jump index.
    pub fn alpha(&self) -> Option<usize> {
        self.indices.last().copied()
    }

    pub fn is_unique(&self) -> bool {
        self.indices.len() == 1
    }
}

/// A set containing `[1, m−1]` and no positive multiple of `m`. Not required
/// to be a gapset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MSet {
    elements: Vec<u32>,
    m: u32,
}

impl MSet {
    pub fn new<I: IntoIterator<Item = u32>>(elements: I, m: u32) -> Result<Self, GapSetError> {
        if m == 0 {
            return Err(GapSetError::ZeroMultiplicity);
        }
        let mut elements: Vec<u32> = elements.into_iter().collect();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() == Some(&0) {
            return Err(GapSetError::NonPositive);
        }
        if let Some(reason) = m_set_violation(&elements, m) {
            return Err(GapSetError::NotMSet { m, reason });
        }
        Ok(Self { elements, m })
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `⌈max/m⌉`, or 0 for the empty set.
    pub fn depth(&self) -> u32 {
        self.elements.last().map_or(0, |&top| top.div_ceil(self.m))
    }

    pub fn sparsity(&self) -> u32 {
        max_gap_difference(&self.elements)
    }

    pub fn into_gapset(self) -> Result<GapSet, GapSetError> {
        GapSet::new(self.elements)
    }
}
