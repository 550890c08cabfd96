//! Exhaustive enumeration of gapsets by genus.
//!
//! Gapsets are generated by the semigroup tree: the root is `∅`, and the
//! children of `G` are `G ∪ {x}` for every minimal generator `x > F(G)` of the
//! complement semigroup. Every gapset of genus `g` appears exactly once at
//! depth `g`.
//!
//! Traversal is split at a configurable tree depth: nodes above the split are
//! walked serially, and the subtrees rooted at the split depth are walked in
//! parallel with rayon. Per-subtree accumulators are merged with an
//! associative reducer, and list-producing entry points sort their output so
//! results do not depend on the schedule.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gapset::{is_gapset, GapSet, Invariants, SymmetryClass};

/// Deepest genus the tree walker accepts. Children of a genus-`g` node are
/// searched up to `F + m ≤ 3g + 1`, which has to fit in the 128-bit mask.
pub const ENUMERATION_MAX_GENUS: u32 = 40;

/// Largest genus the subset-scanning oracle accepts.
pub const ORACLE_MAX_GENUS: u32 = 12;

pub const DEFAULT_SPLIT_DEPTH: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("oracle limit: brute force is limited to genus {ORACLE_MAX_GENUS}, got {0}")]
    OracleLimit(u32),
    #[error("genus {0} exceeds the enumeration ceiling {ENUMERATION_MAX_GENUS}")]
    GenusTooLarge(u32),
    #[error("invalid filter: {0}")]
    InvalidFilter(String),
}

fn check_genus(g: u32) -> Result<(), EnumerateError> {
    if g > ENUMERATION_MAX_GENUS {
        Err(EnumerateError::GenusTooLarge(g))
    } else {
        Ok(())
    }
}

/// A node of the semigroup tree: a gapset together with the data needed to
/// generate its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeNode {
    mask: u128,
    genus: u32,
    multiplicity: u32,
    /// 0 at the root.
    frobenius: u32,
}

impl TreeNode {
    pub const ROOT: TreeNode = TreeNode {
        mask: 0,
        genus: 0,
        multiplicity: 1,
        frobenius: 0,
    };

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn frobenius(&self) -> u32 {
        self.frobenius
    }

    pub fn depth(&self) -> u32 {
        (self.frobenius + 1).div_ceil(self.multiplicity)
    }

    pub fn sparsity(&self) -> u32 {
        match self.genus {
            0 => 0,
            1 => 1,
            _ => {
                let mut rest = self.mask;
                let mut prev = rest.trailing_zeros();
                rest &= rest - 1;
                let mut widest = 0;
                while rest != 0 {
                    let x = rest.trailing_zeros();
                    widest = widest.max(x - prev);
                    prev = x;
                    rest &= rest - 1;
                }
                widest
            }
        }
    }

    pub fn invariants(&self) -> Invariants {
        Invariants {
            genus: self.genus,
            multiplicity: self.multiplicity,
            conductor: self.frobenius + 1,
            frobenius: self.frobenius,
            depth: self.depth(),
            sparsity: self.sparsity(),
        }
    }

    pub fn to_gapset(&self) -> GapSet {
        GapSet::from_mask_unchecked(self.mask)
    }

    /// `x` is a sum of two nonzero non-gaps.
    fn is_decomposable(&self, x: u32) -> bool {
        let non_gaps = !self.mask;
        // Bit y of `mirrored` is bit (x − y) of `non_gaps`.
        let mirrored = non_gaps.reverse_bits() >> (127 - x);
        let window = ((1u128 << x) - 1) & !1;
        non_gaps & mirrored & window != 0
    }

    /// Children in increasing order of the added gap. Minimal generators never
    /// exceed `F + m`, so only `(F, F + m]` is scanned.
    pub fn for_each_child(&self, mut f: impl FnMut(TreeNode)) {
        let lo = self.frobenius + 1;
        let hi = self.frobenius + self.multiplicity;
        for x in lo..=hi {
            if self.is_decomposable(x) {
                continue;
            }
            let mask = self.mask | (1u128 << x);
            let multiplicity = if x == self.multiplicity {
                (!mask >> 1).trailing_zeros() + 1
            } else {
                self.multiplicity
            };
            f(TreeNode {
                mask,
                genus: self.genus + 1,
                multiplicity,
                frobenius: x,
            });
        }
    }

    pub fn children(&self) -> Vec<TreeNode> {
        let mut out = Vec::new();
        self.for_each_child(|c| out.push(c));
        out
    }
}

fn walk<A>(node: TreeNode, max_genus: u32, acc: &mut A, visit: &(impl Fn(&mut A, &TreeNode) + Sync)) {
    visit(acc, &node);
    if node.genus < max_genus {
        node.for_each_child(|child| walk(child, max_genus, acc, visit));
    }
}

/// Parallel driver for the semigroup tree.
#[derive(Debug, Clone, Copy)]
pub struct Enumerator {
    split_depth: u32,
}

impl Default for Enumerator {
    fn default() -> Self {
        Self {
            split_depth: DEFAULT_SPLIT_DEPTH,
        }
    }
}

impl Enumerator {
    /// Subtrees rooted at genus `split_depth` become independent tasks.
    pub fn with_split_depth(split_depth: u32) -> Self {
        Self { split_depth }
    }

    pub fn split_depth(&self) -> u32 {
        self.split_depth
    }

    /// Visits every node of genus at most `max_genus` exactly once, folding
    /// into per-task accumulators that are combined with `reduce`.
    pub fn fold<A, I, V, R>(&self, max_genus: u32, identity: I, visit: V, reduce: R) -> Result<A, EnumerateError>
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        V: Fn(&mut A, &TreeNode) + Sync + Send,
        R: Fn(A, A) -> A + Sync + Send,
    {
        check_genus(max_genus)?;
        let mut serial = identity();
        let mut frontier = Vec::new();
        let mut stack = vec![TreeNode::ROOT];
        while let Some(node) = stack.pop() {
            if node.genus == self.split_depth && node.genus < max_genus {
                frontier.push(node);
                continue;
            }
            visit(&mut serial, &node);
            if node.genus < max_genus {
                node.for_each_child(|c| stack.push(c));
            }
        }
        let parallel = frontier
            .into_par_iter()
            .map(|root| {
                let mut acc = identity();
                walk(root, max_genus, &mut acc, &visit);
                acc
            })
            .reduce(&identity, &reduce);
        Ok(reduce(serial, parallel))
    }

    /// `Γ(g)` in lexicographic order of gap sequences.
    pub fn genus(&self, g: u32) -> Result<Vec<GapSet>, EnumerateError> {
        self.filtered(&FamilyFilter::genus(g))
    }

    /// Members of `Γ(f.genus)` matching every constraint of `f`, sorted.
    pub fn filtered(&self, f: &FamilyFilter) -> Result<Vec<GapSet>, EnumerateError> {
        f.validate()?;
        let target = f.genus;
        let mut out = self.fold(
            target,
            Vec::new,
            |acc: &mut Vec<GapSet>, node| {
                if node.genus == target && f.matches(&node.invariants()) {
                    acc.push(node.to_gapset());
                }
            },
            |mut a, mut b| {
                a.append(&mut b);
                a
            },
        )?;
        out.sort_unstable();
        Ok(out)
    }

    pub fn count_filtered(&self, f: &FamilyFilter) -> Result<u64, EnumerateError> {
        f.validate()?;
        let target = f.genus;
        self.fold(
            target,
            || 0u64,
            |acc, node| {
                if node.genus == target && f.matches(&node.invariants()) {
                    *acc += 1;
                }
            },
            |a, b| a + b,
        )
    }

    /// All gapsets of genus `0..=max_genus`, indexed by genus, each list sorted.
    pub fn up_to(&self, max_genus: u32) -> Result<Vec<Vec<GapSet>>, EnumerateError> {
        let rows = max_genus as usize + 1;
        let mut catalog = self.fold(
            max_genus,
            || vec![Vec::new(); rows],
            |acc: &mut Vec<Vec<GapSet>>, node| acc[node.genus as usize].push(node.to_gapset()),
            |mut a, b| {
                for (dst, mut src) in a.iter_mut().zip(b) {
                    dst.append(&mut src);
                }
                a
            },
        )?;
        for row in &mut catalog {
            row.sort_unstable();
        }
        Ok(catalog)
    }

    pub fn count_table(&self, max_genus: u32) -> Result<CountTable, EnumerateError> {
        let width = max_genus as usize + 1;
        let cells = self.fold(
            max_genus,
            || vec![vec![0u64; width]; width],
            |acc: &mut Vec<Vec<u64>>, node| {
                acc[node.genus as usize][node.sparsity() as usize] += 1;
            },
            |mut a, b| {
                for (row_a, row_b) in a.iter_mut().zip(b) {
                    for (x, y) in row_a.iter_mut().zip(row_b) {
                        *x += y;
                    }
                }
                a
            },
        )?;
        Ok(CountTable { cells })
    }
}

/// `Γ(g)` in lexicographic order.
pub fn enumerate_genus(g: u32) -> Result<Vec<GapSet>, EnumerateError> {
    Enumerator::default().genus(g)
}

pub fn enumerate_filtered(f: &FamilyFilter) -> Result<Vec<GapSet>, EnumerateError> {
    Enumerator::default().filtered(f)
}

pub fn enumerate_up_to(max_genus: u32) -> Result<Vec<Vec<GapSet>>, EnumerateError> {
    Enumerator::default().up_to(max_genus)
}

pub fn count_table(max_genus: u32) -> Result<CountTable, EnumerateError> {
    Enumerator::default().count_table(max_genus)
}

/// Scans every `g`-subset of `[1, 2g−1]` and keeps the gapsets. Shares no
/// code with the tree walker.
pub fn brute_force_genus(g: u32) -> Result<Vec<GapSet>, EnumerateError> {
    if g > ORACLE_MAX_GENUS {
        return Err(EnumerateError::OracleLimit(g));
    }
    if g == 0 {
        return Ok(vec![GapSet::empty()]);
    }
    Ok((1..2 * g)
        .combinations(g as usize)
        .filter(|subset| is_gapset(subset))
        .map(|subset| GapSet::new(subset).expect("subset already checked"))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DepthConstraint {
    Exactly(u32),
    AtMost(u32),
}

impl DepthConstraint {
    pub fn admits(&self, depth: u32) -> bool {
        match *self {
            Self::Exactly(q) => depth == q,
            Self::AtMost(q) => depth <= q,
        }
    }
}

/// Selects a subfamily of `Γ(g)`: `G_κ(g)`, `G_κ(g, q)`, `G_κ(g, q ≤ 3)`,
/// symmetric members, and so on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyFilter {
    pub genus: u32,
    pub kappa: Option<u32>,
    /// `true`: maximum consecutive difference exactly `κ`; `false`: at most `κ`.
    pub pure: bool,
    pub depth: Option<DepthConstraint>,
    pub symmetry: Option<SymmetryClass>,
}

impl FamilyFilter {
    pub fn genus(genus: u32) -> Self {
        Self {
            genus,
            kappa: None,
            pure: true,
            depth: None,
            symmetry: None,
        }
    }

    /// `G_κ(g)`, the pure κ-sparse gapsets of genus `g`.
    pub fn pure_sparse(genus: u32, kappa: u32) -> Self {
        Self::genus(genus).kappa(kappa)
    }

    pub fn kappa(mut self, kappa: u32) -> Self {
        self.kappa = Some(kappa);
        self
    }

    /// Switches to "at most κ-sparse".
    pub fn at_most(mut self) -> Self {
        self.pure = false;
        self
    }

    pub fn depth_exactly(mut self, q: u32) -> Self {
        self.depth = Some(DepthConstraint::Exactly(q));
        self
    }

    pub fn depth_at_most(mut self, q: u32) -> Self {
        self.depth = Some(DepthConstraint::AtMost(q));
        self
    }

    pub fn symmetry(mut self, class: SymmetryClass) -> Self {
        self.symmetry = Some(class);
        self
    }

    pub fn validate(&self) -> Result<(), EnumerateError> {
        check_genus(self.genus)?;
        match self.depth {
            Some(DepthConstraint::Exactly(0)) | Some(DepthConstraint::AtMost(0)) => {
                Err(EnumerateError::InvalidFilter("depth bound must be at least 1".into()))
            }
            _ => Ok(()),
        }
    }

    pub fn matches(&self, inv: &Invariants) -> bool {
        inv.genus == self.genus
            && self.kappa.is_none_or(|k| {
                if self.pure {
                    inv.sparsity == k
                } else {
                    inv.sparsity <= k
                }
            })
            && self.depth.is_none_or(|d| d.admits(inv.depth))
            && self.symmetry.is_none_or(|s| inv.symmetry_class() == s)
    }

    pub fn matches_gapset(&self, g: &GapSet) -> bool {
        self.matches(&g.invariants())
    }
}

/// `#G_κ(g)` for every `g ≤ max_genus` and `κ ≤ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    cells: Vec<Vec<u64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountCell {
    pub genus: u32,
    pub kappa: u32,
    pub count: u64,
}

impl CountTable {
    pub fn max_genus(&self) -> u32 {
        self.cells.len() as u32 - 1
    }

    pub fn cell(&self, genus: u32, kappa: u32) -> u64 {
        self.cells
            .get(genus as usize)
            .and_then(|row| row.get(kappa as usize))
            .copied()
            .unwrap_or(0)
    }

    pub fn row(&self, genus: u32) -> &[u64] {
        &self.cells[genus as usize]
    }

    /// `n_g = #Γ(g)`.
    pub fn total(&self, genus: u32) -> u64 {
        self.row(genus).iter().sum()
    }

    /// Nonzero cells in (genus, κ) order.
    pub fn nonzero_cells(&self) -> impl Iterator<Item = CountCell> + '_ {
        self.cells.iter().enumerate().flat_map(|(g, row)| {
            row.iter().enumerate().filter(|(_, &c)| c > 0).map(move |(k, &count)| CountCell {
                genus: g as u32,
                kappa: k as u32,
                count,
            })
        })
    }
}

/// An exact non-negative rational, printed in fixed-point with round-half-even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Self { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn to_fixed(self, places: u32) -> String {
        let scale = 10u128.pow(places);
        let scaled = self.num as u128 * scale;
        let den = self.den as u128;
        let mut q = scaled / den;
        let twice_rem = 2 * (scaled % den);
        if twice_rem > den || (twice_rem == den && q % 2 == 1) {
            q += 1;
        }
        let int_part = q / scale;
        if places == 0 {
            return int_part.to_string();
        }
        format!("{int_part}.{:0width$}", q % scale, width = places as usize)
    }
}

impl Serialize for Ratio {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

/// One row of the `s_n = #G_{2n}(3n+1)` report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SequenceTerm {
    pub n: u32,
    pub s_n: u64,
    /// `s_n / s_{n−1}`, absent for `n = 1`.
    pub ratio_prev: Option<Ratio>,
    /// `(s_1 + … + s_n) / s_n`.
    pub ratio_cumsum: Ratio,
}

pub fn sequence_s(n_max: u32) -> Result<Vec<SequenceTerm>, EnumerateError> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let table = count_table(3 * n_max + 1)?;
    let mut terms = Vec::with_capacity(n_max as usize);
    let mut cumsum = 0u64;
    let mut prev: Option<u64> = None;
    for n in 1..=n_max {
        let s_n = table.cell(3 * n + 1, 2 * n);
        cumsum += s_n;
        terms.push(SequenceTerm {
            n,
            s_n,
            ratio_prev: prev.filter(|&p| p > 0).map(|p| Ratio::new(s_n, p)),
            ratio_cumsum: Ratio::new(cumsum, s_n.max(1)),
        });
        prev = Some(s_n);
    }
    Ok(terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gs(v: &[u32]) -> GapSet {
        GapSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn small_genera() {
        assert_eq!(enumerate_genus(0).unwrap(), vec![GapSet::empty()]);
        assert_eq!(enumerate_genus(1).unwrap(), vec![gs(&[1])]);
        assert_eq!(enumerate_genus(4).unwrap().len(), 7);
        assert_eq!(enumerate_genus(10).unwrap().len(), 204);
    }

    #[test]
    fn output_is_sorted_and_duplicate_free() {
        let all = enumerate_genus(9).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn filtered_examples() {
        let f = FamilyFilter::pure_sparse(4, 2);
        assert_eq!(
            enumerate_filtered(&f).unwrap(),
            vec![gs(&[1, 2, 3, 5]), gs(&[1, 2, 4, 5]), gs(&[1, 3, 5, 7])]
        );
        let f = FamilyFilter::pure_sparse(5, 3);
        assert_eq!(
            enumerate_filtered(&f).unwrap(),
            vec![gs(&[1, 2, 3, 4, 7]), gs(&[1, 2, 3, 6, 7]), gs(&[1, 2, 4, 5, 8])]
        );
        assert_eq!(enumerate_filtered(&FamilyFilter::pure_sparse(7, 4)).unwrap().len(), 8);
    }

    #[test]
    fn at_most_filter_accumulates_pure_counts() {
        let pure: usize = (0..=3)
            .map(|k| enumerate_filtered(&FamilyFilter::pure_sparse(8, k)).unwrap().len())
            .sum();
        let at_most = enumerate_filtered(&FamilyFilter::pure_sparse(8, 3).at_most()).unwrap();
        assert_eq!(at_most.len(), pure);
    }

    #[test]
    fn depth_and_symmetry_filters() {
        let f = FamilyFilter::pure_sparse(4, 2).depth_exactly(4);
        assert_eq!(enumerate_filtered(&f).unwrap(), vec![gs(&[1, 3, 5, 7])]);
        let f = FamilyFilter::pure_sparse(4, 2).depth_at_most(3);
        assert_eq!(enumerate_filtered(&f).unwrap().len(), 2);
        let f = FamilyFilter::pure_sparse(5, 3).symmetry(SymmetryClass::PseudoSymmetric);
        assert_eq!(enumerate_filtered(&f).unwrap(), vec![gs(&[1, 2, 4, 5, 8])]);
        assert!(enumerate_filtered(&FamilyFilter::genus(4).depth_at_most(0)).is_err());
    }

    #[test]
    fn split_depth_does_not_change_results() {
        let reference = Enumerator::with_split_depth(0).count_table(14).unwrap();
        for split in [1, 3, 7, 14, 20] {
            assert_eq!(Enumerator::with_split_depth(split).count_table(14).unwrap(), reference);
        }
        let a = Enumerator::with_split_depth(2).genus(12).unwrap();
        let b = Enumerator::with_split_depth(9).genus(12).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_genus(1).unwrap(), vec![gs(&[1])]);
        assert_eq!(brute_force_genus(3).unwrap().len(), 4);
        assert_eq!(brute_force_genus(13), Err(EnumerateError::OracleLimit(13)));
    }

    #[test]
    fn tree_matches_oracle_through_genus_9() {
        for g in 0..=9 {
            assert_eq!(enumerate_genus(g).unwrap(), brute_force_genus(g).unwrap(), "genus {g}");
        }
    }

    #[test]
    fn count_table_small_rows() {
        let t = count_table(2).unwrap();
        assert_eq!(t.cell(0, 0), 1);
        assert_eq!(t.row(1), &[0, 1, 0]);
        assert_eq!(t.row(2), &[0, 1, 1]);
        let t = count_table(13).unwrap();
        assert_eq!(t.cell(13, 8), 54);
        for g in 0..=13 {
            assert_eq!(t.total(g), enumerate_genus(g).unwrap().len() as u64);
        }
    }

    #[test]
    fn sequence_examples() {
        let s = sequence_s(1).unwrap();
        assert_eq!(s[0].s_n, 3);
        assert_eq!(s[0].ratio_prev, None);
        assert_eq!(s[0].ratio_cumsum.to_fixed(4), "1.0000");
        let s = sequence_s(4).unwrap();
        assert_eq!(s.iter().map(|t| t.s_n).collect::<Vec<_>>(), vec![3, 8, 22, 54]);
        assert_eq!(s[1].ratio_prev.unwrap(), Ratio::new(8, 3));
        assert_eq!(s[1].ratio_cumsum.to_fixed(4), "1.3750");
    }

    #[test]
    fn half_even_rounding() {
        assert_eq!(Ratio::new(8, 3).to_fixed(4), "2.6667");
        assert_eq!(Ratio::new(1, 8).to_fixed(2), "0.12");
        assert_eq!(Ratio::new(3, 8).to_fixed(2), "0.38");
        assert_eq!(Ratio::new(5, 2).to_fixed(0), "2");
        assert_eq!(Ratio::new(7, 2).to_fixed(0), "4");
        assert_eq!(Ratio::new(27, 11).to_fixed(4), "2.4545");
    }

    #[test]
    fn minimal_generator_test_matches_definition() {
        // Walk a few levels and compare against the textbook definition.
        let mut level = vec![TreeNode::ROOT];
        for _ in 0..8 {
            let mut next = Vec::new();
            for node in &level {
                let gaps = node.to_gapset();
                let non_gap = |v: u32| !gaps.contains(v);
                let expected: Vec<u32> = (node.frobenius() + 1..=node.frobenius() + node.multiplicity() + 5)
                    .filter(|&x| !(1..x).any(|y| non_gap(y) && non_gap(x - y)))
                    .collect();
                let got: Vec<u32> = node.children().iter().map(|c| c.frobenius()).collect();
                assert_eq!(got, expected, "{gaps}");
                next.extend(node.children());
            }
            level = next;
        }
    }
}
