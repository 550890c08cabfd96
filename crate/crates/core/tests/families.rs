use std::sync::OnceLock;

use gapsets::families::{self, PairChoice};
use gapsets::{
    brute_force_genus, count_table, enumerate_filtered, enumerate_genus, FamilyFilter, GapSet, SymmetryClass,
};
use proptest::prelude::*;

/// `G_{2n}(3n+1)` for n = 1..=5, computed once.
fn even_families() -> &'static Vec<Vec<GapSet>> {
    static CACHE: OnceLock<Vec<Vec<GapSet>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (0..=5)
            .map(|n| match n {
                0 => Vec::new(),
                n => enumerate_filtered(&FamilyFilter::pure_sparse(3 * n + 1, 2 * n)).unwrap(),
            })
            .collect()
    })
}

fn choice(max_n: u32) -> impl Strategy<Value = PairChoice> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), (n - 1) as usize)
            .prop_map(move |picks| PairChoice::new(n, picks).unwrap())
    })
}

#[test]
fn tree_matches_brute_force() {
    for g in 0..=10 {
        assert_eq!(enumerate_genus(g).unwrap(), brute_force_genus(g).unwrap(), "genus {g}");
    }
}

#[test]
fn rows_sum_to_genus_counts() {
    let table = count_table(15).unwrap();
    for g in 0..=15 {
        assert_eq!(table.total(g), enumerate_genus(g).unwrap().len() as u64);
    }
}

#[test]
fn family_counts_agree() {
    for n in 1..=5u32 {
        let odd = enumerate_filtered(&FamilyFilter::pure_sparse(3 * n + 2, 2 * n + 1)).unwrap();
        assert_eq!(even_families()[n as usize].len(), odd.len(), "n = {n}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn constructed_symmetric_members_lie_in_the_family(c in choice(8)) {
        let n = c.n();
        let g = families::construct_symmetric(n, &c).unwrap();
        prop_assert_eq!(g.genus() as u32, 3 * n + 1);
        prop_assert_eq!(g.sparsity(), 2 * n);
        prop_assert_eq!(g.symmetry_class(), SymmetryClass::Symmetric);
        prop_assert_eq!(g.depth(), 4);
        prop_assert_eq!(g.multiplicity(), 2 * n);
    }

    #[test]
    fn constructed_pseudo_symmetric_members_lie_in_the_family(c in choice(8)) {
        let n = c.n();
        let g = families::construct_pseudo_symmetric(n, &c).unwrap();
        prop_assert_eq!(g.genus() as u32, 3 * n + 2);
        prop_assert_eq!(g.sparsity(), 2 * n + 1);
        prop_assert_eq!(g.symmetry_class(), SymmetryClass::PseudoSymmetric);
        prop_assert_eq!(g.depth(), 3);
        prop_assert!(families::sigma_inverse(&g).is_err());
    }

    #[test]
    fn distinct_choices_give_distinct_members(
        (n, a, b) in (2u32..=7).prop_flat_map(|n| {
            let picks = prop::collection::vec(any::<bool>(), (n - 1) as usize);
            (Just(n), picks.clone(), picks)
        })
    ) {
        let build = |p: Vec<bool>| families::construct_symmetric(n, &PairChoice::new(n, p).unwrap()).unwrap();
        prop_assert_eq!(a == b, build(a.clone()) == build(b.clone()));
    }

    #[test]
    fn sigma_round_trips(n in 1usize..=5, pick in any::<prop::sample::Index>()) {
        let family = &even_families()[n];
        let g = &family[pick.index(family.len())];
        match families::sigma(g) {
            Ok(image) => {
                prop_assert!(g.depth() <= 3);
                prop_assert_eq!(image.genus(), g.genus() + 1);
                prop_assert_eq!(image.multiplicity(), g.multiplicity() + 1);
                prop_assert_eq!(&families::sigma_inverse(&image).unwrap(), g);
            }
            Err(_) => prop_assert_eq!(g.depth(), 4),
        }
    }
}
