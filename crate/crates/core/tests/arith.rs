use std::collections::BTreeSet;

use obtower_core::arith::{
    adelic_cohomology, compact_support, les_check, localize, reciprocity_obstruction, reciprocity_tower, LocalGlobalSystem,
    LocalLift, LocalizedModule, Place,
};
use obtower_core::cohomology::{cohomology, split_extension, torsor_action};
use obtower_core::corpus::local_global_corpus;
use obtower_core::group::{catalog, enumerate_homs, GModule, GroupHom, GroupRef, Subgroup};
use obtower_core::linalg::enumerate_mixed_radix;
use obtower_core::tower::{run_tower, tower_from_lcs, RunOptions, Tower, TowerStep};
use obtower_core::{Budget, Error};

fn place(label: &str, dec: GroupHom) -> Place {
    let inertia = Subgroup::trivial(dec.source());
    Place { label: label.into(), decomposition: dec, inertia }
}

fn diagonal_system() -> (LocalGlobalSystem, GModule) {
    let c2 = catalog::cyclic(2).unwrap();
    let sys = LocalGlobalSystem::new(
        c2.clone(),
        vec![place("p", GroupHom::identity(&c2)), place("q", GroupHom::identity(&c2))],
    )
    .unwrap();
    (sys, GModule::trivial(c2, vec![2]).unwrap())
}

#[test]
fn one_full_place_is_acyclic() {
    let b = Budget::default();
    for g in [catalog::cyclic(2).unwrap(), catalog::symmetric(3).unwrap(), catalog::klein4()] {
        let sys = LocalGlobalSystem::new(g.clone(), vec![place("v", GroupHom::identity(&g))]).unwrap();
        let m = GModule::trivial(g.clone(), vec![2]).unwrap();
        let loc = LocalizedModule::new(&sys, &m, &[]).unwrap();
        for n in 0..=3 {
            let h = cohomology(&m, n, &b).unwrap();
            let a = adelic_cohomology(&loc, n, &b).unwrap();
            assert_eq!(a.invariants(), h.invariants());
            let images = a.localization_images(&loc, &h).unwrap();
            for (j, img) in images.iter().enumerate() {
                let mut e = vec![0; img.len()];
                e[j] = 1;
                assert_eq!(img, &e);
            }
            assert_eq!(compact_support(&loc, n, &b).unwrap().order(), 1, "{} degree {n}", g.name());
        }
    }
}

#[test]
fn two_place_diagonal() {
    let b = Budget::default();
    let (sys, m) = diagonal_system();
    let loc = LocalizedModule::new(&sys, &m, &[]).unwrap();
    let h1 = cohomology(&m, 1, &b).unwrap();
    let a1 = adelic_cohomology(&loc, 1, &b).unwrap();
    assert_eq!(a1.invariants(), vec![2, 2]);
    assert_eq!(a1.localization_images(&loc, &h1).unwrap(), vec![vec![1, 1]]);
    let h2c = compact_support(&loc, 2, &b).unwrap();
    assert_eq!(h2c.invariants(), &[2]);
    assert!(!reciprocity_obstruction(&loc, &[vec![1], vec![0]], &b).unwrap().vanishes);
    assert!(!reciprocity_obstruction(&loc, &[vec![0], vec![1]], &b).unwrap().vanishes);
    assert!(reciprocity_obstruction(&loc, &[vec![1], vec![1]], &b).unwrap().vanishes);
    assert!(reciprocity_obstruction(&loc, &[vec![0], vec![0]], &b).unwrap().vanishes);
    let report = les_check(&loc, 3, &b).unwrap();
    assert!(report.exact, "{report:?}");
    let spot = report.spots.iter().find(|s| s.node == "H^2_c").unwrap();
    assert_eq!(spot.image_order, 2);
}

#[test]
fn trivial_place_and_empty_system() {
    let b = Budget::default();
    let c2 = catalog::cyclic(2).unwrap();
    let one = catalog::trivial();
    let m = GModule::trivial(c2.clone(), vec![2]).unwrap();
    let sys = LocalGlobalSystem::new(c2.clone(), vec![place("v", GroupHom::trivial(&one, &c2))]).unwrap();
    let loc = LocalizedModule::new(&sys, &m, &[]).unwrap();
    let orders: Vec<u128> = (0..=3).map(|n| compact_support(&loc, n, &b).unwrap().order()).collect();
    assert_eq!(orders, vec![1, 2, 2, 2]);

    let empty = LocalGlobalSystem::new(c2.clone(), vec![]).unwrap();
    let loc = LocalizedModule::new(&empty, &m, &[]).unwrap();
    for n in 0..=3 {
        let hc = compact_support(&loc, n, &b).unwrap();
        assert_eq!(hc.invariants(), cohomology(&m, n, &b).unwrap().invariants());
    }
}

#[test]
fn adding_a_trivial_place() {
    let b = Budget::default();
    let s3 = catalog::symmetric(3).unwrap();
    let sign = GModule::new(s3.clone(), vec![3], vec![vec![vec![2]], vec![vec![1]]])
        .or_else(|_| GModule::new(s3.clone(), vec![3], vec![vec![vec![1]], vec![vec![2]]]))
        .unwrap();
    let c2 = Subgroup::generated(&s3, &[s3.generators()[0]]);
    let base = LocalGlobalSystem::new(s3.clone(), vec![]).unwrap().with_subgroup_place("w", &c2).unwrap();
    let one = catalog::trivial();
    let mut places = base.places().to_vec();
    places.push(place("t", GroupHom::trivial(&one, &s3)));
    let bigger = LocalGlobalSystem::new(s3.clone(), places).unwrap();
    for m in [GModule::trivial(s3.clone(), vec![2]).unwrap(), sign] {
        let l0 = LocalizedModule::new(&base, &m, &[]).unwrap();
        let l1 = LocalizedModule::new(&bigger, &m, &[]).unwrap();
        for n in 1..=3 {
            assert_eq!(
                adelic_cohomology(&l0, n, &b).unwrap().order(),
                adelic_cohomology(&l1, n, &b).unwrap().order()
            );
        }
        for n in 2..=3 {
            assert_eq!(compact_support(&l0, n, &b).unwrap().order(), compact_support(&l1, n, &b).unwrap().order());
        }
        assert!(les_check(&l1, 3, &b).unwrap().exact);
    }
}

#[test]
fn unramified_convention() {
    let b = Budget::default();
    let c2 = catalog::cyclic(2).unwrap();
    let c4 = catalog::cyclic(4).unwrap();
    let onto = enumerate_homs(&c4, &c2, 100).unwrap().into_iter().find(|h| h.is_surjective()).unwrap();
    let inertia = onto.kernel();
    let sys = LocalGlobalSystem::new(c2.clone(), vec![Place { label: "v".into(), decomposition: onto, inertia }]).unwrap();
    let m = GModule::trivial(c2.clone(), vec![2]).unwrap();
    let loc = LocalizedModule::new(&sys, &m, &[]).unwrap();
    assert_eq!(loc.places[0].group.order(), 2);
    assert_eq!(adelic_cohomology(&loc, 1, &b).unwrap().invariants(), vec![2]);
    assert!(les_check(&loc, 3, &b).unwrap().exact);
    let ram = LocalizedModule::new(&sys, &m, &["v"]).unwrap();
    assert_eq!(ram.places[0].group.order(), 4);
    assert!(les_check(&ram, 3, &b).unwrap().exact);
}

#[test]
fn ramification_mismatch() {
    let c2 = catalog::cyclic(2).unwrap();
    let sign = GModule::new(c2.clone(), vec![3], vec![vec![vec![2]]]).unwrap();
    let sys = LocalGlobalSystem::new(
        c2.clone(),
        vec![Place { label: "v".into(), decomposition: GroupHom::identity(&c2), inertia: Subgroup::whole(&c2) }],
    )
    .unwrap();
    assert!(matches!(LocalizedModule::new(&sys, &sign, &[]), Err(Error::RamificationMismatch(_))));
    assert!(LocalizedModule::new(&sys, &sign, &["v"]).is_ok());
    // inertia acting trivially but not killed by the decomposition map
    let triv = GModule::trivial(c2.clone(), vec![2]).unwrap();
    assert!(matches!(LocalizedModule::new(&sys, &triv, &[]), Err(Error::RamificationMismatch(_))));
    assert!(LocalizedModule::new(&sys, &triv, &["x"]).is_err());
}

#[test]
fn sampled_systems_are_exact() {
    let b = Budget::default();
    for inst in local_global_corpus(11, 25, &b).unwrap() {
        let loc = inst.localized().unwrap();
        let report = les_check(&loc, inst.up_to.min(2), &b).unwrap();
        assert!(report.exact, "{}: {report:?}", inst.label);
    }
}

/// The image of localization in degree 1, by enumerating every global class.
fn localized_classes(loc: &LocalizedModule, b: &Budget) -> BTreeSet<Vec<i64>> {
    let h1 = cohomology(&loc.module, 1, b).unwrap();
    let a1 = adelic_cohomology(loc, 1, b).unwrap();
    h1.all_classes().iter().map(|c| a1.classify(&localize(loc, &h1.element(c))).unwrap()).collect()
}

#[test]
fn reciprocity_vanishes_exactly_on_global_classes() {
    let b = Budget::default();
    let mut checked = 0;
    for inst in local_global_corpus(5, 30, &b).unwrap() {
        let loc = inst.localized().unwrap();
        if loc.places.is_empty() {
            continue;
        }
        let a1 = adelic_cohomology(&loc, 1, &b).unwrap();
        let image = localized_classes(&loc, &b);
        for coords in enumerate_mixed_radix(&a1.invariants()) {
            let mut split = Vec::new();
            let mut off = 0;
            for (_, h) in a1.components() {
                let len = h.invariants().len();
                split.push(coords[off..off + len].to_vec());
                off += len;
            }
            let r = reciprocity_obstruction(&loc, &split, &b).unwrap();
            assert_eq!(r.vanishes, image.contains(&coords), "{}", inst.label);
            checked += 1;
        }
    }
    assert!(checked > 30);
}

fn split_tower(m: &GModule) -> Tower {
    let ext = split_extension(m).unwrap();
    let base = m.group().clone();
    let step = TowerStep::new(ext, GroupHom::identity(&base)).unwrap();
    Tower::new(base, vec![step]).unwrap()
}

#[test]
fn reciprocity_tower_matches_connecting_map() {
    let b = Budget::default();
    let (sys, m) = diagonal_system();
    let c2 = m.group().clone();
    let tower = split_tower(&m);
    let ext = tower.step(1).extension();
    let section = GroupHom::from_images(c2.clone(), ext.total().clone(), ext.section().to_vec()).unwrap();
    let h1 = cohomology(&m, 1, &b).unwrap();
    let loc = LocalizedModule::all_ramified(&sys, &m).unwrap();
    for (x, y) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
        let lam = |c: i64| torsor_action(ext, &section, &h1.element(&[c])).unwrap();
        let lifts = vec![
            LocalLift { place: "p".into(), level: 1, hom: lam(x) },
            LocalLift { place: "q".into(), level: 1, hom: lam(y) },
        ];
        let report = reciprocity_tower(&sys, &tower, &GroupHom::identity(&c2), 0, &lifts, &b).unwrap();
        let direct = reciprocity_obstruction(&loc, &[vec![x], vec![y]], &b).unwrap();
        assert_eq!(report.levels[0].class, direct.class);
        assert_eq!(report.complete, direct.vanishes);
    }
}

fn q8_tower() -> (GroupRef, Tower) {
    let q8 = catalog::quaternion8();
    let tower = tower_from_lcs(&q8, &Subgroup::whole(&q8), 2).unwrap();
    (q8, tower)
}

#[test]
fn single_full_place_reduces_to_run_tower() {
    let b = Budget::default();
    let (_, tower) = q8_tower();
    let v4 = tower.level(1).clone();
    let c4 = catalog::cyclic(4).unwrap();
    let psi = enumerate_homs(&c4, &v4, 1000).unwrap().into_iter().find(|h| !h.is_trivial()).unwrap();
    let opts = RunOptions { start_level: 1, ..RunOptions::default() };
    let plain = run_tower(&psi, &tower, opts, &b).unwrap();
    assert!(plain.complete);
    let top = GroupHom::from_generator_images(c4.clone(), tower.level(2).clone(), plain.levels[0].canonical_lift.as_ref().unwrap()).unwrap();
    let sys = LocalGlobalSystem::new(c4.clone(), vec![place("v", GroupHom::identity(&c4))]).unwrap();
    let lifts = vec![LocalLift { place: "v".into(), level: 2, hom: top }];
    let report = reciprocity_tower(&sys, &tower, &psi, 1, &lifts, &b).unwrap();
    assert!(report.complete);
    assert!(report.levels[0].h2c_invariants.is_empty());

    // ψ = id on V4 has no lift, so no local lift can exist at a full place
    let id = GroupHom::identity(&v4);
    let sys = LocalGlobalSystem::new(v4.clone(), vec![place("v", GroupHom::identity(&v4))]).unwrap();
    let lifts = vec![LocalLift { place: "v".into(), level: 1, hom: id.clone() }];
    let err = reciprocity_tower(&sys, &tower, &id, 1, &lifts, &b).unwrap_err();
    assert!(matches!(err, Error::Inadmissible(_)), "{err:?}");
}

#[test]
fn incompatible_local_data() {
    let b = Budget::default();
    let (sys, m) = diagonal_system();
    let c2 = m.group().clone();
    let tower = split_tower(&m);
    let trivial = GroupHom::trivial(&c2, tower.level(1));
    let lifts = vec![
        LocalLift { place: "p".into(), level: 1, hom: trivial.clone() },
        LocalLift { place: "q".into(), level: 1, hom: trivial },
    ];
    let err = reciprocity_tower(&sys, &tower, &GroupHom::identity(&c2), 0, &lifts, &b).unwrap_err();
    assert!(matches!(err, Error::IncompatibleLocalData(_)));
    let err = reciprocity_tower(&sys, &tower, &GroupHom::identity(&c2), 0, &[], &b).unwrap_err();
    assert!(matches!(err, Error::IncompatibleLocalData(_)));
}
