use obtower_core::cohomology::{cohomology, split_extension, Extension};
use obtower_core::group::{catalog, direct_product, enumerate_homs, semidirect_product, GModule, GroupHom, GroupRef, Subgroup};
use obtower_core::tower::{brute_force_lifts, e1_page, lift_classes, obstruction, run_tower, tower_from_lcs, E1Value, RunOptions, Tower, TowerStep};
use obtower_core::Budget;

fn q8_tower() -> Tower {
    let q8 = catalog::quaternion8();
    tower_from_lcs(&q8, &Subgroup::whole(&q8), 2).unwrap()
}

#[test]
fn quaternion_tower_shape() {
    let t = q8_tower();
    assert_eq!(t.base().order(), 1);
    assert_eq!(t.step(1).extension().kernel().factors(), &[2, 2]);
    assert_eq!(t.step(2).extension().kernel().factors(), &[2]);
    assert_eq!(t.level(2).order(), 8);
}

#[test]
fn dihedral_eighteen_tower_has_one_step() {
    let c2 = catalog::cyclic(2).unwrap();
    let m = GModule::new(c2.clone(), vec![9], vec![vec![vec![8]]]).unwrap();
    let semi = semidirect_product(&c2, &m).unwrap();
    let n = semi.projection.kernel();
    let t = tower_from_lcs(&semi.group, &n, 2).unwrap();
    assert_eq!(t.base().order(), 2);
    // [N]_2 = 1 for abelian N, so step 1 has kernel ℤ/9 and step 2 is trivial
    assert_eq!(t.step(1).extension().kernel().factors(), &[9]);
    assert!(!t.step(1).descended_module().is_trivial_action());
    assert_eq!(t.step(2).kernel_order(), 1);
    assert!(!t.warnings().is_empty());
}

#[test]
fn product_with_abelian_factor_stabilizes() {
    let s3 = catalog::symmetric(3).unwrap();
    let c4 = catalog::cyclic(4).unwrap();
    let p: GroupRef = direct_product(&s3, &c4).unwrap().into_ref();
    let a_part: Vec<usize> = p.generators()[2..].to_vec();
    let n = Subgroup::generated(&p, &a_part);
    let t = tower_from_lcs(&p, &n, 3).unwrap();
    assert_eq!(t.step(1).kernel_order(), 4);
    assert_eq!(t.step(2).kernel_order(), 1);
    assert_eq!(t.step(3).kernel_order(), 1);
}

fn hom_into(g: &GroupRef, target: &GroupRef, gens: &[usize]) -> GroupHom {
    GroupHom::from_generator_images(g.clone(), target.clone(), gens).unwrap()
}

#[test]
fn quaternion_lifting_examples() {
    let t = q8_tower();
    let b = Budget::default();
    let v4 = t.level(1).clone();
    // identity on V4 does not lift to Q8
    let id = GroupHom::identity(&v4);
    let obs = obstruction(&id, t.step(2), &b).unwrap();
    assert!(!obs.vanishes());
    assert!(brute_force_lifts(&id, t.step(2), 1_000_000).unwrap().is_empty());
    let opts = RunOptions { start_level: 1, verify_brute_force: true, ..Default::default() };
    let rep = run_tower(&id, &t, opts, &b).unwrap();
    assert_eq!(rep.blocked_at, Some(2));
    assert_eq!(rep.levels[0].verified, Some(true));

    // ℤ/4 onto one ℤ/2 factor lifts (to ⟨i⟩)
    let c4 = catalog::cyclic(4).unwrap();
    let psi = hom_into(&c4, &v4, &[v4.generators()[0]]);
    let obs = obstruction(&psi, t.step(2), &b).unwrap();
    assert!(obs.vanishes());
    let rep = run_tower(&psi, &t, opts, &b).unwrap();
    assert!(rep.complete);
    assert_eq!(rep.levels[0].verified, Some(true));
    let lift = rep.levels[0].canonical_lift.clone().unwrap();
    assert_eq!(t.level(2).element_order(lift[0]), 4);
}

#[test]
fn length_zero_tower() {
    let g = catalog::cyclic(3).unwrap();
    let t = Tower::new(g.clone(), vec![]).unwrap();
    let rep = run_tower(&GroupHom::identity(&g), &t, RunOptions::default(), &Budget::default()).unwrap();
    assert!(rep.levels.is_empty());
    assert!(rep.complete);
    assert_eq!(rep.initial, vec![1]);
}

fn split_step(base: &GroupRef, factors: &[i64]) -> TowerStep {
    let m = GModule::trivial(base.clone(), factors.to_vec()).unwrap();
    let ext = split_extension(&m).unwrap();
    TowerStep::new(ext, GroupHom::identity(base)).unwrap()
}

#[test]
fn lift_class_counts() {
    let b = Budget::default();
    let c2 = catalog::cyclic(2).unwrap();
    let step = split_step(&c2, &[2]);
    let triv = GroupHom::trivial(&c2, &c2);
    let lc = lift_classes(&triv, &step, &b).unwrap();
    assert_eq!(lc.classes.len(), 2);
    assert_eq!(brute_force_lifts(&triv, &step, 1000).unwrap().len(), 2);

    // central kernel with vanishing H¹: exactly one class
    let c3 = catalog::cyclic(3).unwrap();
    let step = split_step(&c3, &[2]);
    let lc = lift_classes(&GroupHom::identity(&c3), &step, &b).unwrap();
    assert_eq!(lc.classes.len(), 1);

    // trivial kernel: a single lift
    let c1 = catalog::trivial();
    let ext = Extension::from_surjection(GroupHom::identity(&c3)).unwrap();
    let step = TowerStep::new(ext, GroupHom::trivial(&c3, &c1)).unwrap();
    assert_eq!(brute_force_lifts(&GroupHom::identity(&c3), &step, 1000).unwrap().len(), 1);
}

#[test]
fn obstruction_is_section_independent() {
    let b = Budget::default();
    let q8 = catalog::quaternion8();
    let t = tower_from_lcs(&q8, &Subgroup::whole(&q8), 2).unwrap();
    let step = t.step(2);
    let v4 = t.level(1).clone();
    let ext = step.extension().clone();
    let base = obstruction(&GroupHom::identity(&v4), step, &b).unwrap().class;
    // every other section: pick the largest element of each fiber
    let section: Vec<usize> = v4.elements().map(|g| if g == 0 { 0 } else { *ext.fiber(g).last().unwrap() }).collect();
    let other = ext.with_section(section).unwrap();
    let step2 = TowerStep::new(other, step.action_quotient().clone()).unwrap();
    assert_eq!(obstruction(&GroupHom::identity(&v4), &step2, &b).unwrap().class, base);
}

#[test]
fn e1_page_entries() {
    let b = Budget::default();
    let t = q8_tower();
    let c2 = catalog::cyclic(2).unwrap();
    let psi0 = GroupHom::trivial(&c2, t.base());
    let page = e1_page(&t, &psi0, (2, 3), &b).unwrap();
    // entry (1,1) is H¹(G, A_1)
    let m1 = t.step(1).descended_module().pullback(&psi0).unwrap();
    let h = cohomology(&m1, 1, &b).unwrap();
    match &page.get(1, 1).unwrap().value {
        E1Value::Group { invariants, .. } => assert_eq!(invariants, h.invariants()),
        other => panic!("unexpected {other:?}"),
    }
    match &page.get(1, 3).unwrap().value {
        E1Value::ForcedZero => {}
        other => panic!("unexpected {other:?}"),
    }
    assert!(page.get(2, 0).is_none());
    match &page.get(2, 1).unwrap().value {
        E1Value::Group { invariants, .. } => assert_eq!(invariants, &[2]),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn all_homs_from_small_groups_obey_the_vanishing_criterion() {
    let b = Budget::default();
    let q8 = catalog::quaternion8();
    let t = tower_from_lcs(&q8, &Subgroup::whole(&q8), 2).unwrap();
    let v4 = t.level(1).clone();
    for g in [catalog::cyclic(2).unwrap(), catalog::cyclic(4).unwrap(), catalog::klein4(), catalog::dihedral(4).unwrap()] {
        for psi in enumerate_homs(&g, &v4, 1_000_000).unwrap() {
            let lc = lift_classes(&psi, t.step(2), &b).unwrap();
            let brute = brute_force_lifts(&psi, t.step(2), 1_000_000).unwrap();
            assert_eq!(lc.classes.is_empty(), brute.is_empty());
            if let Some(h1) = &lc.h1 {
                assert_eq!(brute.len() as u128, h1.cocycle_count());
            }
        }
    }
}
