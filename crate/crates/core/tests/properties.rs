mod common;

use proptest::prelude::*;

use polar_core::betti::betti_table;
use polar_core::duality::alexander_dual;
use polar_core::hilbert::hilbert_numerator;
use polar_core::ideals::{MonomialIdeal, SplitMonomial, VarRef};
use polar_core::partitions::{dual_partition, ideal_to_partition, partition_to_ideal, sample_family, satisfies_criterion};

use common::{dual_by_search, koszul_graded_betti, numerator_by_subsets};

/// Variable `k` of a small pool spread over three bases.
fn pool_var(k: u32) -> VarRef {
    VarRef::new(k % 3 + 1, k / 3 + 1).unwrap()
}

fn ideal_from_masks(masks: &[u32], nvars: u32) -> MonomialIdeal {
    let gens = masks.iter().map(|&m| SplitMonomial::from_vars((0..nvars).filter(|k| m >> k & 1 == 1).map(pool_var)));
    MonomialIdeal::minimalize(gens).with_ambient((0..nvars).map(pool_var))
}

fn squarefree_ideal(nvars: u32, max_gens: usize) -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(1u32..(1 << nvars), 1..=max_gens).prop_map(move |m| ideal_from_masks(&m, nvars))
}

fn dense_ideal() -> impl Strategy<Value = MonomialIdeal> {
    prop::collection::vec(prop::collection::vec(0u32..3, 3), 1..5).prop_filter_map("nonunit", |rows| {
        let gens: Vec<SplitMonomial> = rows.iter().map(|e| SplitMonomial::from_exponents(e)).collect();
        let i = MonomialIdeal::minimalize(gens);
        (!i.is_unit()).then_some(i)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn numerator_matches_inclusion_exclusion(i in squarefree_ideal(8, 9)) {
        prop_assert_eq!(hilbert_numerator(&i).unwrap().coeffs().to_vec(), numerator_by_subsets(&i));
    }

    #[test]
    fn dense_numerator_matches_inclusion_exclusion(i in dense_ideal()) {
        prop_assert_eq!(hilbert_numerator(&i).unwrap().coeffs().to_vec(), numerator_by_subsets(&i));
    }

    #[test]
    fn dual_matches_search_and_is_involutive(i in squarefree_ideal(9, 6)) {
        let d = alexander_dual(&i).unwrap();
        prop_assert_eq!(d.generators().to_vec(), dual_by_search(&i));
        prop_assert_eq!(alexander_dual(&d).unwrap(), i);
    }

    #[test]
    fn betti_matches_koszul_oracle(i in squarefree_ideal(6, 5)) {
        let t = betti_table(&i).unwrap();
        prop_assert_eq!(t.graded_totals(), koszul_graded_betti(&i));
        prop_assert_eq!(t.euler_characteristic(), 1);
    }

    #[test]
    fn dense_betti_matches_koszul_oracle(i in dense_ideal()) {
        prop_assert_eq!(betti_table(&i).unwrap().graded_totals(), koszul_graded_betti(&i));
    }

    #[test]
    fn canonical_form_ignores_copy_order(i in squarefree_ideal(9, 6), shift in 0u32..3) {
        // rotate the copies of every base
        let rotated = i.rename(|v| VarRef::new(v.base, (v.copy - 1 + shift) % 3 + 1).unwrap());
        prop_assert_eq!(rotated.canonical_form(), i.canonical_form());
    }

    #[test]
    fn isomorphism_form_ignores_base_order(i in squarefree_ideal(9, 6), shift in 0u32..3) {
        let moved = i.rename(|v| VarRef::new((v.base - 1 + shift) % 3 + 1, v.copy).unwrap());
        prop_assert_eq!(moved.isomorphism_form(), i.isomorphism_form());
    }

    #[test]
    fn ideal_json_round_trip(i in squarefree_ideal(9, 6)) {
        prop_assert_eq!(MonomialIdeal::from_json(&i.to_json()).unwrap(), i);
    }

    #[test]
    fn partition_round_trips(seed in any::<u64>(), which in 0usize..3) {
        use rand::SeedableRng;
        let (n, d) = [(5, 2), (5, 3), (6, 3)][which];
        let p = sample_family(n, d, &mut rand_chacha::ChaCha8Rng::seed_from_u64(seed)).unwrap();
        prop_assert_eq!(ideal_to_partition(&partition_to_ideal(&p)).unwrap(), p.clone());
        let dp = dual_partition(&p);
        prop_assert_eq!(dual_partition(&dp), p.clone());
        prop_assert_eq!(satisfies_criterion(&p).ok, satisfies_criterion(&dp).ok);
        prop_assert_eq!(polar_core::PartitionFamily::from_json(&p.to_json()).unwrap(), p);
    }
}
