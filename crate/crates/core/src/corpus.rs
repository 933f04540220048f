//! Seeded generators of small test problems.
//!
//! A lifting instance is an abelian extension `Π″ → Π′` together with a
//! homomorphism `ψ: G → Π′`. Extensions come from random 2-cocycles over a
//! catalog of small bases and modules, and from lower-central-series steps.
//! A system instance is a local-global system with a module.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{LocalGlobalSystem, LocalizedModule, Place};
use crate::budget::Budget;
use crate::cohomology::{cohomology, coboundary, extension_from_cocycle, Cochain, Extension};
use crate::error::Result;
use crate::group::{catalog, direct_product, enumerate_homs, GModule, GroupHom, GroupRef, Subgroup};
use crate::linalg::enumerate_mixed_radix;
use crate::tower::{brute_force_lifts, lift_classes, tower_from_lcs, TowerStep};

#[derive(Clone, Debug)]
pub struct LiftingInstance {
    pub label: String,
    pub step: TowerStep,
    pub psi: GroupHom,
}

/// Outcome of comparing the cohomological answer with exhaustive search.
#[derive(Clone, Debug, Serialize)]
pub struct LiftingCheck {
    pub label: String,
    pub source_order: usize,
    pub total_order: usize,
    pub obstruction_zero: bool,
    pub brute_force_lifts: usize,
    pub cocycle_count: u128,
    pub h1_order: u128,
    /// Classes from `H¹` agree with brute-force lifts modulo kernel conjugation.
    pub classes_match: bool,
}

impl LiftingCheck {
    /// The obstruction vanishes exactly when a lift exists.
    pub fn obstruction_agrees(&self) -> bool {
        self.obstruction_zero == (self.brute_force_lifts > 0)
    }

    /// Lifts, when present, are counted by `Z¹` and form one `H¹`-orbit.
    pub fn torsor_holds(&self) -> bool {
        self.brute_force_lifts == 0 || (self.brute_force_lifts as u128 == self.cocycle_count && self.classes_match)
    }
}

pub fn check_lifting(inst: &LiftingInstance, budget: &Budget) -> Result<LiftingCheck> {
    let ext = inst.step.extension();
    let lifts = brute_force_lifts(&inst.psi, &inst.step, budget.max_hom_search)?;
    let classes = lift_classes(&inst.psi, &inst.step, budget)?;
    let kernel_elems: Vec<usize> = ext.kernel().elements().iter().map(|a| ext.embed(a)).collect();
    let canonical = |f: &GroupHom| -> Vec<usize> {
        kernel_elems.iter().map(|&a| f.conjugated_by(a).images().to_vec()).min().expect("kernel is nonempty")
    };
    let brute: BTreeSet<Vec<usize>> = lifts.iter().map(canonical).collect();
    let from_h1: Vec<Vec<usize>> = classes.classes.iter().map(|c| c.canonical.images().to_vec()).collect();
    let distinct: BTreeSet<Vec<usize>> = from_h1.iter().cloned().collect();
    let (cocycle_count, h1_order) = match &classes.h1 {
        Some(h1) => (h1.cocycle_count(), h1.order()),
        None => {
            let h1 = cohomology(&classes.obstruction.module, 1, budget)?;
            (h1.cocycle_count(), h1.order())
        }
    };
    let classes_match = distinct.len() == from_h1.len() && distinct == brute;
    Ok(LiftingCheck {
        label: inst.label.clone(),
        source_order: inst.psi.source().order(),
        total_order: ext.total().order(),
        obstruction_zero: classes.obstruction.vanishes(),
        brute_force_lifts: lifts.len(),
        cocycle_count,
        h1_order,
        classes_match,
    })
}

fn product(a: &GroupRef, b: &GroupRef) -> GroupRef {
    direct_product(a, b).expect("catalog products are small").into_ref()
}

/// Source groups of order at most 16.
pub fn source_groups() -> Vec<GroupRef> {
    let c = |n| catalog::cyclic(n).expect("small cyclic group");
    let v4 = catalog::klein4();
    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        v4.clone(),
        c(6),
        catalog::symmetric(3).expect("S3"),
        c(8),
        product(&c(2), &c(4)),
        product(&v4, &c(2)),
        catalog::dihedral(4).expect("D8"),
        catalog::quaternion8(),
        catalog::alternating(4).expect("A4"),
        catalog::dihedral(6).expect("D12"),
        product(&c(4), &c(4)),
        product(&c(2), &catalog::quaternion8()),
        catalog::dihedral(8).expect("D16"),
        product(&v4, &v4),
    ]
}

fn base_groups() -> Vec<GroupRef> {
    let c = |n| catalog::cyclic(n).expect("small cyclic group");
    vec![
        c(1),
        c(2),
        c(3),
        c(4),
        catalog::klein4(),
        c(6),
        catalog::symmetric(3).expect("S3"),
        catalog::dihedral(4).expect("D8"),
        catalog::quaternion8(),
        product(&c(2), &c(4)),
    ]
}

const MODULE_SHAPES: &[&[i64]] = &[&[2], &[3], &[4], &[2, 2], &[5], &[6], &[8], &[2, 4], &[3, 3], &[2, 2, 2]];

/// Every automorphism of `⊕ ℤ/factors[i]`, as row-major matrices.
pub fn automorphisms(factors: &[i64]) -> Vec<Vec<Vec<i64>>> {
    let k = factors.len();
    let radices: Vec<i64> = (0..k * k).map(|idx| factors[idx / k]).collect();
    let elems = enumerate_mixed_radix(factors);
    let mut out = Vec::new();
    for flat in enumerate_mixed_radix(&radices) {
        let ok = (0..k * k).all(|idx| (flat[idx] * factors[idx % k]) % factors[idx / k] == 0);
        if !ok {
            continue;
        }
        let image: BTreeSet<Vec<i64>> = elems
            .iter()
            .map(|a| (0..k).map(|i| (0..k).map(|j| flat[i * k + j] * a[j]).sum::<i64>().rem_euclid(factors[i])).collect())
            .collect();
        if image.len() == elems.len() {
            out.push(flat.chunks(k).map(|r| r.to_vec()).collect());
        }
    }
    out
}

fn random_module(rng: &mut ChaCha8Rng, group: &GroupRef, factors: &[i64]) -> GModule {
    let autos = automorphisms(factors);
    if rng.gen_bool(0.7) {
        for _ in 0..40 {
            let mats: Vec<_> = group.generators().iter().map(|_| autos.choose(rng).expect("identity").clone()).collect();
            if let Ok(m) = GModule::new(group.clone(), factors.to_vec(), mats) {
                return m;
            }
        }
    }
    GModule::trivial(group.clone(), factors.to_vec()).expect("valid factors")
}

fn random_cocycle(rng: &mut ChaCha8Rng, module: &GModule, budget: &Budget) -> Result<Cochain> {
    let h2 = cohomology(module, 2, budget)?;
    let coords: Vec<i64> = h2.invariants().iter().map(|&d| rng.gen_range(0..d)).collect();
    let class = h2.element(&coords);
    let b = Cochain::from_fn(module, 1, |_| module.factors().iter().map(|&d| rng.gen_range(0..d)).collect());
    Ok(class.add(module, &coboundary(module, &b)?))
}

fn lcs_steps() -> Result<Vec<(String, TowerStep)>> {
    let mut out = Vec::new();
    let groups = [
        catalog::quaternion8(),
        catalog::dihedral(4)?,
        catalog::dihedral(8)?,
        catalog::dihedral(16)?,
        product(&catalog::quaternion8(), &catalog::cyclic(2)?),
    ];
    for pi in groups {
        let tower = tower_from_lcs(&pi, &Subgroup::whole(&pi), 3)?;
        for (k, step) in tower.steps().iter().enumerate() {
            if step.kernel_order() > 1 {
                out.push((format!("lcs({}) step {}", pi.name(), k + 1), step.clone()));
            }
        }
    }
    Ok(out)
}

/// `count` instances with `|Π″| ≤ 64` and `|G| ≤ 16`, reproducible from `seed`.
pub fn lifting_corpus(seed: u64, count: usize, budget: &Budget) -> Result<Vec<LiftingInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sources = source_groups();
    let bases = base_groups();
    let lcs = lcs_steps()?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (label, step) = if rng.gen_bool(0.15) {
            lcs.choose(&mut rng).expect("nonempty").clone()
        } else {
            let base = bases.choose(&mut rng).expect("nonempty").clone();
            let shapes: Vec<&[i64]> = MODULE_SHAPES
                .iter()
                .copied()
                .filter(|f| base.order() as i64 * f.iter().product::<i64>() <= 64)
                .collect();
            let factors = *shapes.choose(&mut rng).expect("some module fits");
            let module = random_module(&mut rng, &base, factors);
            let c = random_cocycle(&mut rng, &module, budget)?;
            let ext: Extension = extension_from_cocycle(&module, &c)?;
            let id = GroupHom::identity(&base);
            (format!("{}.{:?}", base.name(), factors), TowerStep::new(ext, id)?)
        };
        let g = sources.choose(&mut rng).expect("nonempty").clone();
        let homs = enumerate_homs(&g, step.base(), budget.max_hom_search)?;
        // favour nontrivial maps, which are the interesting ones
        let nontrivial: Vec<&GroupHom> = homs.iter().filter(|h| !h.is_trivial()).collect();
        let psi = if !nontrivial.is_empty() && rng.gen_bool(0.85) {
            (*nontrivial.choose(&mut rng).expect("nonempty")).clone()
        } else {
            homs.choose(&mut rng).expect("trivial hom exists").clone()
        };
        out.push(LiftingInstance { label: format!("{label} <- {}", g.name()), step, psi });
    }
    Ok(out)
}

/// A sampled local-global system with a module and its declared ramified
/// places, checked up to degree `up_to`.
#[derive(Clone, Debug)]
pub struct SystemInstance {
    pub label: String,
    pub system: LocalGlobalSystem,
    pub module: GModule,
    pub ramified: Vec<String>,
    pub up_to: usize,
}

impl SystemInstance {
    pub fn localized(&self) -> Result<LocalizedModule> {
        let r: Vec<&str> = self.ramified.iter().map(|s| s.as_str()).collect();
        LocalizedModule::new(&self.system, &self.module, &r)
    }
}

const SYSTEM_MODULES: &[&[i64]] = &[&[2], &[3], &[4], &[2, 2], &[5], &[6], &[7], &[8], &[2, 4], &[9], &[3, 3]];

fn normal_subgroups(g: &GroupRef, extra: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![Subgroup::trivial(g), Subgroup::whole(g), extra.clone()];
    for x in g.elements() {
        let s = Subgroup::generated(g, &[x]);
        if s.is_normal(g) && !out.contains(&s) {
            out.push(s);
        }
    }
    out.dedup();
    out
}

/// Systems with global order at most 16 and at most three places.
///
/// Global groups of order at most 10 are checked through degree 3; larger
/// ones through degree 2, where the degree-3 cochain spaces get too big.
pub fn local_global_corpus(seed: u64, count: usize, budget: &Budget) -> Result<Vec<SystemInstance>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = |n| catalog::cyclic(n).expect("small cyclic group");
    let small: Vec<GroupRef> = source_groups().into_iter().filter(|g| g.order() <= 8).collect();
    let large: Vec<GroupRef> = vec![
        product(&c(3), &c(3)),
        catalog::dihedral(5)?,
        c(12),
        catalog::alternating(4)?,
        catalog::dihedral(6)?,
        product(&c(4), &c(4)),
        catalog::dihedral(8)?,
    ];
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (global, up_to) = if rng.gen_bool(0.8) {
            (small.choose(&mut rng).expect("nonempty").clone(), 3)
        } else {
            let g = large.choose(&mut rng).expect("nonempty").clone();
            let up_to = if g.order() <= 10 { 3 } else { 2 };
            (g, up_to)
        };
        let factors = *SYSTEM_MODULES.choose(&mut rng).expect("nonempty");
        let module = random_module(&mut rng, &global, factors);
        let nplaces = rng.gen_range(0..=3usize);
        let mut places = Vec::new();
        let mut ramified = Vec::new();
        for v in 0..nplaces {
            let gv = small.choose(&mut rng).expect("nonempty").clone();
            let homs = enumerate_homs(&gv, &global, budget.max_hom_search)?;
            let dec = homs.choose(&mut rng).expect("trivial hom exists").clone();
            let ker = dec.kernel();
            let inertia = normal_subgroups(&gv, &ker).choose(&mut rng).expect("nonempty").clone();
            let label = format!("v{v}");
            let unramifiable = inertia.is_subgroup_of(&ker);
            if !unramifiable || rng.gen_bool(0.3) {
                ramified.push(label.clone());
            }
            places.push(Place { label, decomposition: dec, inertia });
        }
        let system = LocalGlobalSystem::new(global.clone(), places)?;
        let label = format!("{} {:?} places={nplaces}", global.name(), factors);
        out.push(SystemInstance { label, system, module, ramified, up_to });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&[2]).len(), 1);
        assert_eq!(automorphisms(&[5]).len(), 4);
        assert_eq!(automorphisms(&[2, 2]).len(), 6);
        assert_eq!(automorphisms(&[2, 4]).len(), 8);
        assert_eq!(automorphisms(&[3, 3]).len(), 48);
        assert_eq!(automorphisms(&[2, 2, 2]).len(), 168);
    }

    #[test]
    fn corpus_is_reproducible() {
        let b = Budget::default();
        let a = lifting_corpus(7, 12, &b).unwrap();
        let c = lifting_corpus(7, 12, &b).unwrap();
        for (x, y) in a.iter().zip(&c) {
            assert_eq!(x.label, y.label);
            assert_eq!(x.psi.images(), y.psi.images());
            assert!(x.step.total().order() <= 64);
            assert!(x.psi.source().order() <= 16);
        }
    }
}
