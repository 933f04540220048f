use std::collections::BTreeMap;

use obtower_core::lie::{
    colie_weights, dim_cusp_forms, dim_eisenstein, dim_modular_forms, generating_function_holds, hall_basis, ls_weight_report,
    magnus_graded, modular_h1, witt_rank, GradedSpace, HallSet,
};
use proptest::prelude::*;

#[test]
fn hall_counts_match_witt() {
    for d in 0..=4usize {
        let set = HallSet::new(&vec![0; d], 8);
        assert!(set.satisfies_hall_conditions());
        for n in 1..=8 {
            assert_eq!(set.count(n) as u128, witt_rank(d as u64, n), "d={d} n={n}");
        }
    }
    assert_eq!(witt_rank(2, 5), 6);
    assert_eq!(witt_rank(2, 6), 9);
    assert_eq!(witt_rank(3, 2), 3);
    assert_eq!(witt_rank(2, 3), 2);
    for n in 2..10 {
        assert_eq!(witt_rank(1, n), 0);
    }
}

#[test]
fn hall_elements_are_distinct_with_additive_weights() {
    let weights = [1, 3, -2];
    for n in 1..=6 {
        let basis = hall_basis(&weights, n);
        let mut seen = std::collections::BTreeSet::new();
        for e in &basis {
            assert_eq!(e.bracket.degree(), n);
            let leaf_sum: i64 = e.bracket.leaves().iter().map(|&i| weights[i]).sum();
            assert_eq!(e.weight, leaf_sum);
            assert!(seen.insert(e.bracket.to_string()));
        }
    }
}

/// Per-weight counts of Hall elements, used as an oracle for the necklace
/// formula.
fn hall_weights(gen_weights: &[i64], n: usize) -> GradedSpace {
    let mut g = GradedSpace::new();
    for w in HallSet::new(gen_weights, n).weights(n) {
        g.add(w, 1);
    }
    g
}

fn space_of(gen_weights: &[i64]) -> GradedSpace {
    let mut v = GradedSpace::new();
    for &w in gen_weights {
        v.add(w, 1);
    }
    v
}

#[test]
fn colie_examples() {
    let v = GradedSpace::from_pairs(&[(1, 2)]);
    assert_eq!(colie_weights(&v, 2).unwrap().dims, BTreeMap::from([(2, 1)]));
    let v = GradedSpace::from_pairs(&[(1, 1), (3, 1)]);
    assert_eq!(colie_weights(&v, 2).unwrap().dims, BTreeMap::from([(4, 1)]));
    let v = GradedSpace::from_pairs(&[(2, 2), (5, 1)]);
    for s in 1..=6 {
        assert!(colie_weights(&v, s).unwrap().min_weight().unwrap() >= 2 * s as i64);
    }
}

#[test]
fn generating_function_to_t8() {
    for v in [
        GradedSpace::from_pairs(&[(0, 2)]),
        GradedSpace::from_pairs(&[(1, 1), (2, 1), (5, 2)]),
        GradedSpace::from_pairs(&[(-3, 1), (4, 3)]),
        ls_weight_report(-1, 10, 1).unwrap().generators,
    ] {
        assert!(generating_function_holds(&v, 8).unwrap(), "{v:?}");
    }
}

#[test]
fn modular_weights() {
    let h = modular_h1(10);
    assert_eq!(h.dim(), 3);
    assert_eq!(h.weight_multiset(), vec![11, 11, 22]);
    for m in 0..=40 {
        let h = modular_h1(m);
        let expect = if m == 0 || m % 2 == 1 { 0 } else { dim_eisenstein(m + 2) + 2 * dim_cusp_forms(m + 2) };
        assert_eq!(h.dim(), expect, "m={m}");
    }
    // dim M_k against the generating function 1/((1 − q^4)(1 − q^6))
    let mut series = vec![0u128; 61];
    for a in 0..=15 {
        for b in 0..=10 {
            if 4 * a + 6 * b <= 60 {
                series[4 * a + 6 * b] += 1;
            }
        }
    }
    for (k, &c) in series.iter().enumerate() {
        assert_eq!(dim_modular_forms(k as i64), c);
    }
}

#[test]
fn ls_weights() {
    let r = ls_weight_report(-1, 10, 1).unwrap();
    assert_eq!(r.weights.dims, BTreeMap::from([(1, 22), (4, 3), (6, 5), (8, 7), (10, 9), (12, 11)]));
    assert!(r.e1_diag_zero);
    for m_max in 0..=20 {
        for s in 1..=5 {
            assert!(ls_weight_report(-1, m_max, s).unwrap().e1_diag_zero, "m_max={m_max} s={s}");
        }
    }
    // with an untwisted lattice the m = 2 generators sit in weight 6
    assert_eq!(ls_weight_report(0, 2, 2).unwrap().weights.dims, BTreeMap::from([(12, 3)]));
    assert_eq!(ls_weight_report(-1, 2, 2).unwrap().weights.dims, BTreeMap::from([(8, 3)]));
    // a strongly negative twist produces nonpositive weights
    assert!(!ls_weight_report(-3, 4, 1).unwrap().e1_diag_zero);
}

#[test]
fn magnus_pieces() {
    let f2 = GradedSpace::from_pairs(&[(0, 2)]);
    assert_eq!(magnus_graded(&f2, 2).unwrap().dim(), 1);
    assert_eq!(magnus_graded(&f2, 3).unwrap().dim(), 2);
    let f1 = GradedSpace::from_pairs(&[(0, 1)]);
    for s in 2..6 {
        assert_eq!(magnus_graded(&f1, s).unwrap().dim(), 0);
    }
    assert_eq!(magnus_graded(&GradedSpace::from_pairs(&[(0, 3)]), 2).unwrap().dim(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn necklace_matches_hall_per_weight(weights in proptest::collection::vec(-3i64..4, 1..4), n in 1usize..7) {
        let v = space_of(&weights);
        prop_assert_eq!(colie_weights(&v, n).unwrap().dims, hall_weights(&weights, n).dims);
    }

    #[test]
    fn total_dimension_is_witt(weights in proptest::collection::vec(-5i64..6, 1..5), n in 1usize..8) {
        let v = space_of(&weights);
        prop_assert_eq!(colie_weights(&v, n).unwrap().dim(), witt_rank(weights.len() as u64, n));
    }
}
