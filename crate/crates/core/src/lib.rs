//! Gapsets (gap sets of numerical semigroups): invariants, exhaustive
//! enumeration by genus, the pure-sparse family constructions, and a registry
//! of machine-checked claims about them.

pub mod cli;
pub mod enumerate;
pub mod families;
pub mod gapset;
pub mod verify;

pub use enumerate::{
    brute_force_genus, count_table, enumerate_filtered, enumerate_genus, sequence_s, CountTable,
    DepthConstraint, Enumerator, FamilyFilter,
};
pub use families::{
    construct_pseudo_symmetric, construct_symmetric, sigma, sigma_inverse, FamilyError, PairChoice,
};
pub use gapset::{
    is_gapset, is_m_set, CanonicalPartition, GapSet, GapSetError, Invariants, JumpProfile, MSet,
    PseudoFrobeniusSet, SymmetryClass,
};
pub use verify::{run_all, run_check, Summary, VerificationReport, Verifier};
