use obtower_core::group::{catalog, quotient, Subgroup};
use obtower_core::linalg::enumerate_mixed_radix;
use obtower_core::simplicial::samples::{random_abelian_simplicial_group, random_bisimplicial, random_wbar_pair, random_extension};
use obtower_core::simplicial::*;
use obtower_core::{Budget, Error};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z2_in_degree_one() -> FiniteChainComplex {
    FiniteChainComplex { factors: vec![vec![], vec![2]], differentials: vec![vec![vec![]]] }
}

/// `|{x ∈ Q : k x = 0}|` for the group with the given invariant factors.
fn torsion_count(invariants: &[i64], k: i64) -> u64 {
    invariants.iter().map(|&d| obtower_core::linalg::gcd(d, k) as u64).product()
}

/// The same count for `H_n(C)` by enumerating cycles and boundaries.
fn brute_torsion_count(c: &FiniteChainComplex, n: usize, k: i64) -> u64 {
    let Some(f) = c.factors.get(n) else { return 1 };
    let elements = enumerate_mixed_radix(f);
    let cycles: Vec<&Vec<i64>> = elements.iter().filter(|x| n == 0 || c.apply(n, x).iter().all(|&y| y == 0)).collect();
    let boundaries: std::collections::HashSet<Vec<i64>> = match c.factors.get(n + 1) {
        Some(up) => enumerate_mixed_radix(up).iter().map(|u| c.apply(n + 1, u)).collect(),
        None => [vec![0; f.len()]].into_iter().collect(),
    };
    let killed = cycles
        .iter()
        .filter(|x| {
            let kx: Vec<i64> = x.iter().zip(f).map(|(&v, &d)| (k * v).rem_euclid(d)).collect();
            boundaries.contains(&kx)
        })
        .count();
    (killed / boundaries.len()) as u64
}

fn order(invariants: &[i64]) -> i64 {
    invariants.iter().product()
}

#[test]
fn nerve_sizes_and_identities() {
    let trivial = TruncatedSimplicialGroup::constant(&catalog::trivial(), 3);
    let b = nerve(&trivial).unwrap();
    for p in 0..=3 {
        for q in 0..=3 {
            assert_eq!(b.size(p, q), 1);
        }
    }
    let a = dold_kan(&z2_in_degree_one(), 3, &Budget::default()).unwrap();
    let b = nerve(&a.truncate(2).unwrap()).unwrap();
    for q in 0..=2 {
        assert_eq!(b.size(2, q), a.level(q).order().pow(2));
    }
    let s3 = TruncatedSimplicialGroup::constant(&catalog::symmetric(3).unwrap(), 2);
    let b = nerve(&s3).unwrap();
    assert_eq!((b.size(0, 2), b.size(1, 0), b.size(2, 1)), (1, 6, 36));
}

#[test]
fn codiagonal_of_constant_bisimplicial_set() {
    let d = TruncatedSimplicialSet::discrete(3, 3);
    let x = external_product(&d, &TruncatedSimplicialSet::discrete(1, 3)).unwrap();
    let cod = x.codiagonal().unwrap();
    assert_eq!(cod.set, TruncatedSimplicialSet::discrete(3, 3));
}

#[test]
fn wbar_of_constant_groups_has_nerve_sizes() {
    for n in [1usize, 2, 3, 4] {
        let g = TruncatedSimplicialGroup::constant(&catalog::cyclic(n).unwrap(), 4);
        let w = wbar(&g).unwrap();
        let expect: Vec<usize> = (0..=4).map(|p| n.pow(p as u32)).collect();
        assert_eq!(w.set().sizes(), expect.as_slice());
        // the identities are checked on construction; round-trip the raw data too
        TruncatedSimplicialSet::from_data(w.set().to_data()).unwrap();
    }
}

#[test]
fn codiagonal_needs_enough_truncation() {
    let g = TruncatedSimplicialGroup::constant(&catalog::cyclic(2).unwrap(), 2);
    let b = nerve_within(&g, 2).unwrap();
    assert_eq!(b.codiagonal_to(3).unwrap_err(), Error::TruncationInsufficient { needed: 3, available: 2 });
    let w = wbar(&g).unwrap();
    assert!(matches!(w.set().homology(2), Err(Error::TruncationInsufficient { .. })));
}

#[test]
fn moore_homotopy_examples() {
    let z6 = catalog::cyclic(6).unwrap();
    let c = TruncatedSimplicialGroup::constant(&z6, 3);
    assert_eq!(moore_homotopy(&c).unwrap(), vec![vec![6], vec![], vec![]]);

    let budget = Budget::default();
    let a = dold_kan(&z2_in_degree_one(), 4, &budget).unwrap();
    assert_eq!(moore_homotopy(&a).unwrap(), vec![vec![], vec![2], vec![], vec![]]);
    let (w, _) = wbar_group(&a, &budget).unwrap();
    assert_eq!(moore_homotopy(&w).unwrap(), vec![vec![], vec![], vec![2], vec![]]);

    let s3 = TruncatedSimplicialGroup::constant(&catalog::symmetric(3).unwrap(), 2);
    assert_eq!(pi0(&s3).unwrap().order, 6);
    assert_eq!(moore_homotopy(&s3), Err(Error::NotAbelian));
}

#[test]
fn dold_kan_recovers_chain_homology() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let (c, a) = random_abelian_simplicial_group(&mut rng, 3, &budget).unwrap();
        let pi = moore_homotopy(&a).unwrap();
        for (n, inv) in pi.iter().enumerate() {
            assert_eq!(inv, &c.homology(n).unwrap(), "{c:?}");
            for k in 1..=12 {
                assert_eq!(torsion_count(inv, k), brute_torsion_count(&c, n, k), "{c:?} degree {n} k {k}");
            }
        }
    }
}

#[test]
fn wbar_shifts_homotopy() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let (c, a, w) = random_wbar_pair(&mut rng, 3, &budget).unwrap();
        let pa = moore_homotopy(&a).unwrap();
        let space = wbar(&a).unwrap();
        let pw = moore_homotopy(&w).unwrap();
        assert!(pw[0].is_empty());
        for i in 1..pw.len() {
            assert_eq!(pw[i], pa[i - 1], "{c:?}");
        }
        // the group structure lives on the codiagonal itself
        assert_eq!(w.underlying_set().unwrap(), *space.set());
        assert_eq!(order(&pw[1]) as usize, pi0(&a).unwrap().order);
    }
}

#[test]
fn diagonal_and_codiagonal_of_a_classifying_space() {
    let g = TruncatedSimplicialGroup::constant(&catalog::cyclic(2).unwrap(), 3);
    let r = diag_vs_codiag(&nerve(&g).unwrap()).unwrap();
    assert_eq!(r.safe_degree, 2);
    assert_eq!(r.diagonal[1], HomologyGroup { degree: 1, rank: 0, torsion: vec![2] });
    assert!(r.diagonal[2].is_zero());
    assert!(r.groups_equal && r.cone_acyclic && r.map_iso);
}

#[test]
fn random_bisimplicial_sets_agree() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let (label, x) = random_bisimplicial(&mut rng, 3, &budget).unwrap();
        let r = diag_vs_codiag(&x).unwrap();
        assert!(r.map_iso, "{label}: {:?} vs {:?}", r.diagonal, r.codiagonal);
    }
}

#[test]
fn fibration_examples() {
    let budget = Budget::default();
    // constant central extension Z/4 → Z/2
    let z4 = catalog::cyclic(4).unwrap();
    let q = quotient(&z4, &Subgroup::generated(&z4, &[2])).unwrap();
    let ext = SimplicialExtension::constant(&q.projection, 3).unwrap();
    let r = fibration_data(&ext, &budget).unwrap().report;
    assert!(r.central && r.pullback_identity && r.w_h1_iso);
    assert_eq!(r.wbar_h_homology[1].torsion, vec![2]);

    // split extension S3 = Z/2 ⋉ Z/3 → Z/2
    let s3 = catalog::symmetric(3).unwrap();
    let a3 = Subgroup::from_members(&s3, &s3.elements().filter(|&x| s3.element_order(x) != 2).collect::<Vec<_>>()).unwrap();
    assert_eq!(a3.order(), 3);
    let q = quotient(&s3, &a3).unwrap();
    let ext = SimplicialExtension::constant(&q.projection, 3).unwrap();
    let data = fibration_data(&ext, &budget).unwrap();
    let r = &data.report;
    assert!(!r.central && r.pullback_identity && r.w_pi0_bijective && r.w_h1_iso);
    assert_eq!(r.levels.iter().map(|l| l.pullback).collect::<Vec<_>>(), vec![1, 6, 36, 216]);
    assert!(data.y_prime.set.size(3) > r.levels[3].wbar_h);

    // trivial kernel: Y′ is W̄H
    let id = obtower_core::group::GroupHom::identity(&s3);
    let ext = SimplicialExtension::constant(&id, 3).unwrap();
    let data = fibration_data(&ext, &budget).unwrap();
    assert!(data.report.pullback_identity);
    assert!(data.w.is_bijective(&wbar(ext.base()).unwrap().set().clone()));
}

#[test]
fn nonabelian_kernel_is_rejected() {
    let s3 = catalog::symmetric(3).unwrap();
    let to_trivial = obtower_core::group::GroupHom::trivial(&s3, &catalog::trivial());
    assert_eq!(SimplicialExtension::constant(&to_trivial, 3).unwrap_err(), Error::NotAbelianKernel);
}

#[test]
fn random_extensions_satisfy_the_pullback_identity() {
    let budget = Budget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..12 {
        let (label, ext) = random_extension(&mut rng, 3, &budget).unwrap();
        let r = fibration_data(&ext, &budget).unwrap().report;
        assert!(r.pullback_identity && r.w_pi0_bijective && r.w_h1_iso, "{label}: {r:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn diagonal_map_is_simplicial(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, x) = random_bisimplicial(&mut rng, 3, &Budget::default()).unwrap();
        let cod = x.codiagonal().unwrap();
        let diag = x.diagonal().unwrap();
        let map = x.diagonal_to_codiagonal(&cod).unwrap();
        prop_assert!(map.check(&diag, &cod.set).is_ok());
        prop_assert_eq!(diag.components().1, cod.set.components().1);
    }
}
