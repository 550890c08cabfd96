//! Explicit constructions on the `(g, κ) = (3n+1, 2n)` and `(3n+2, 2n+1)`
//! families.
//!
//! * [`sigma`] sends a pure `2n`-sparse gapset of genus `3n+1` and depth at
//!   most 3 to a pure `(2n+1)`-sparse gapset of genus `3n+2` by prepending 1,
//!   shifting gaps up to the last jump by one and the rest by two.
//!   [`sigma_inverse`] undoes it on every non-pseudo-symmetric member of the
//!   target family.
//! * [`construct_symmetric`] and [`construct_pseudo_symmetric`] build the
//!   `2^{n−1}` symmetric (resp. pseudo-symmetric) members of those families
//!   from a [`PairChoice`].

use thiserror::Error;

use crate::gapset::{GapSet, GapSetError, SymmetryClass, MAX_GENUS};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parameter n must be at least 1, got {0}")]
    InvalidN(u32),
    #[error("family parameter n = {0} is too large for the gapset representation")]
    NTooLarge(u32),
    #[error("malformed choice: expected {expected} selections, got {got}")]
    MalformedChoice { expected: usize, got: usize },
    #[error("{gapset} is not in the family: {reason}")]
    NotInFamily { gapset: String, reason: String },
    #[error("{gapset} is outside the σ domain: {reason}")]
    OutsideSigmaDomain { gapset: String, reason: String },
    #[error("no preimage: {0} is pseudo-symmetric")]
    NoPreimage(String),
    #[error("constructed set is not a gapset: {0}")]
    NotGapset(#[from] GapSetError),
}

fn check_n(n: u32) -> Result<(), FamilyError> {
    if n == 0 {
        return Err(FamilyError::InvalidN(n));
    }
    if 3 * n + 2 > MAX_GENUS {
        return Err(FamilyError::NTooLarge(n));
    }
    Ok(())
}

/// One pick from each complementary pair `(x_i, ℓ_g − x_i)`; `true` takes the
/// smaller element. Pairs are ordered by increasing smaller element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairChoice {
    n: u32,
    selections: Vec<bool>,
}

impl PairChoice {
    pub fn new(n: u32, selections: Vec<bool>) -> Result<Self, FamilyError> {
        check_n(n)?;
        let expected = n as usize - 1;
        if selections.len() != expected {
            return Err(FamilyError::MalformedChoice {
                expected,
                got: selections.len(),
            });
        }
        Ok(Self { n, selections })
    }

    /// Every pair contributes its smaller element.
    pub fn lower(n: u32) -> Result<Self, FamilyError> {
        Self::new(n, vec![true; n.saturating_sub(1) as usize])
    }

    /// Parses a string of `L`/`U` (or `1`/`0`) flags, one per pair.
    pub fn parse(n: u32, flags: &str) -> Result<Self, FamilyError> {
        let selections = flags
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'L' | 'l' | '1' => Ok(true),
                'U' | 'u' | '0' => Ok(false),
                _ => Err(FamilyError::MalformedChoice {
                    expected: n.saturating_sub(1) as usize,
                    got: flags.len(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, selections)
    }

    /// All `2^{n−1}` choices for `n`.
    pub fn all(n: u32) -> Result<impl Iterator<Item = PairChoice>, FamilyError> {
        check_n(n)?;
        let pairs = n - 1;
        Ok((0u64..1 << pairs).map(move |bits| PairChoice {
            n,
            selections: (0..pairs).map(|i| bits >> i & 1 == 0).collect(),
        }))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn selections(&self) -> &[bool] {
        &self.selections
    }

    fn pick(&self, pairs: impl Iterator<Item = (u32, u32)>) -> Vec<u32> {
        pairs
            .zip(&self.selections)
            .map(|((lo, hi), &take_lower)| if take_lower { lo } else { hi })
            .collect()
    }

    fn expect_n(&self, n: u32) -> Result<(), FamilyError> {
        check_n(n)?;
        if self.n != n {
            return Err(FamilyError::MalformedChoice {
                expected: n as usize - 1,
                got: self.selections.len(),
            });
        }
        Ok(())
    }
}

/// Pairs summing to `6n+1` inside `[2n+2, 4n−1]`.
pub fn symmetric_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..n.saturating_sub(1)).map(move |i| (2 * n + 2 + i, 4 * n - 1 - i))
}

/// Pairs summing to `6n+2` inside `[2n+2, 4n] ∖ {3n+1}`.
pub fn pseudo_symmetric_pairs(n: u32) -> impl Iterator<Item = (u32, u32)> {
    (0..n.saturating_sub(1)).map(move |i| (2 * n + 2 + i, 4 * n - i))
}

/// `[1, m−1] ∪ {m+1} ∪ X ∪ {2m+1, 3m+1}` with `m = 2n`.
pub fn construct_symmetric(n: u32, choice: &PairChoice) -> Result<GapSet, FamilyError> {
    choice.expect_n(n)?;
    let m = 2 * n;
    let picked = choice.pick(symmetric_pairs(n));
    let elements = (1..m)
        .chain([m + 1])
        .chain(picked)
        .chain([2 * m + 1, 3 * m + 1]);
    Ok(GapSet::new(elements)?)
}

/// `[1, m−1] ∪ X ∪ {3n+1, 2m−1} ∪ {3m−1}` with `m = 2n+1`.
pub fn construct_pseudo_symmetric(n: u32, choice: &PairChoice) -> Result<GapSet, FamilyError> {
    choice.expect_n(n)?;
    let m = 2 * n + 1;
    let picked = choice.pick(pseudo_symmetric_pairs(n));
    let elements = (1..m)
        .chain(picked)
        .chain([3 * n + 1, 2 * m - 1, 3 * m - 1]);
    Ok(GapSet::new(elements)?)
}

/// The constructed symmetric family for `n`, sorted.
pub fn symmetric_family(n: u32) -> Result<Vec<GapSet>, FamilyError> {
    let mut out = PairChoice::all(n)?
        .map(|c| construct_symmetric(n, &c))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    Ok(out)
}

/// The constructed pseudo-symmetric family for `n`, sorted.
pub fn pseudo_symmetric_family(n: u32) -> Result<Vec<GapSet>, FamilyError> {
    let mut out = PairChoice::all(n)?
        .map(|c| construct_pseudo_symmetric(n, &c))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    Ok(out)
}

/// `n` with `g = 3n + offset`, if any.
fn family_index(genus: usize, offset: usize) -> Option<u32> {
    (genus >= 3 + offset && (genus - offset).is_multiple_of(3)).then(|| ((genus - offset) / 3) as u32)
}

/// The largest index `α` (1-based) with `ℓ_{α+1} − ℓ_α = κ`.
fn last_jump(g: &GapSet, kappa: u32) -> Option<usize> {
    g.jump_profile(kappa).ok().and_then(|j| j.alpha())
}

/// Checks `G ∈ G_{2n}(3n+1, q ≤ 3)` and returns `(n, α)`.
pub fn sigma_domain(g: &GapSet) -> Result<(u32, usize), FamilyError> {
    let not_in = |reason: String| FamilyError::NotInFamily {
        gapset: g.to_string(),
        reason,
    };
    let n = family_index(g.genus(), 1)
        .ok_or_else(|| not_in(format!("genus {} is not of the form 3n+1 with n ≥ 1", g.genus())))?;
    if g.sparsity() != 2 * n {
        return Err(not_in(format!("sparsity {} differs from 2n = {}", g.sparsity(), 2 * n)));
    }
    if g.depth() > 3 {
        return Err(FamilyError::OutsideSigmaDomain {
            gapset: g.to_string(),
            reason: format!("depth {} exceeds 3 ({})", g.depth(), g.symmetry_class()),
        });
    }
    let alpha = last_jump(g, 2 * n).expect("sparsity 2n is realised");
    Ok((n, alpha))
}

/// The raw image `{1} ∪ {ℓ_i + 1 : i ≤ α} ∪ {ℓ_i + 2 : i > α}`, without
/// checking that it is a gapset.
pub fn sigma_image(g: &GapSet) -> Result<Vec<u32>, FamilyError> {
    let (_, alpha) = sigma_domain(g)?;
    let shifted = g
        .elements()
        .iter()
        .enumerate()
        .map(|(k, &x)| if k < alpha { x + 1 } else { x + 2 });
    Ok(std::iter::once(1).chain(shifted).collect())
}

pub fn sigma(g: &GapSet) -> Result<GapSet, FamilyError> {
    Ok(GapSet::new(sigma_image(g)?)?)
}

/// Inverse of [`sigma`] on `G_{2n+1}(3n+2)` minus its pseudo-symmetric members.
pub fn sigma_inverse(g: &GapSet) -> Result<GapSet, FamilyError> {
    let not_in = |reason: String| FamilyError::NotInFamily {
        gapset: g.to_string(),
        reason,
    };
    let n = family_index(g.genus(), 2)
        .ok_or_else(|| not_in(format!("genus {} is not of the form 3n+2 with n ≥ 1", g.genus())))?;
    if g.sparsity() != 2 * n + 1 {
        return Err(not_in(format!(
            "sparsity {} differs from 2n+1 = {}",
            g.sparsity(),
            2 * n + 1
        )));
    }
    if g.symmetry_class() == SymmetryClass::PseudoSymmetric {
        return Err(FamilyError::NoPreimage(g.to_string()));
    }
    let alpha = last_jump(g, 2 * n + 1).expect("sparsity 2n+1 is realised");
    let preimage = g
        .elements()
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &x)| if k < alpha { x - 1 } else { x - 2 });
    Ok(GapSet::new(preimage)?)
}
