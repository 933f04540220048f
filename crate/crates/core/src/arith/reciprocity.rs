use serde::Serialize;

use crate::budget::Budget;
use crate::cohomology::{cohomology, Cochain};
use crate::error::{Error, Result};
use crate::group::{same_group, GroupHom};
use crate::tower::{lift_classes_for, obstruction_for, Tower};

use super::cocone::{adelic_cohomology, compact_support};
use super::system::{LocalGlobalSystem, LocalizedModule};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReciprocityClass {
    pub h2c_invariants: Vec<i64>,
    pub class: Vec<i64>,
    pub vanishes: bool,
}

/// The image of local classes `α_v ∈ H¹(G_v, A)` under the connecting map
/// `⊕_v H¹(G_v, A) → H²_c`. It vanishes exactly when `α` comes from a
/// global class.
pub fn reciprocity_obstruction(loc: &LocalizedModule, local_classes: &[Vec<i64>], budget: &Budget) -> Result<ReciprocityClass> {
    let h1 = adelic_cohomology(loc, 1, budget)?;
    if local_classes.len() != loc.places.len() {
        return Err(Error::Invalid("one local class per place is required".into()));
    }
    for ((label, h), c) in h1.components().iter().zip(local_classes) {
        if c.len() != h.invariants().len() {
            return Err(Error::Invalid(format!(
                "class at place {label:?} needs {} coordinates",
                h.invariants().len()
            )));
        }
    }
    let coords: Vec<i64> = local_classes.concat();
    let y = h1.element(&coords);
    let h2c = compact_support(loc, 2, budget)?;
    let class = h2c.classify(&Cochain::zero(&loc.module, 2), &y)?;
    let vanishes = class.iter().all(|&x| x == 0);
    Ok(ReciprocityClass { h2c_invariants: h2c.invariants().to_vec(), class, vanishes })
}

/// A local homomorphism `G_v → Π_level` at one place.
#[derive(Clone, Debug)]
pub struct LocalLift {
    pub place: String,
    pub level: usize,
    pub hom: GroupHom,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceObstruction {
    pub place: String,
    pub h2_invariants: Vec<i64>,
    pub class: Vec<i64>,
    /// The supplied lift stopped below this level and was extended by the
    /// least lift class.
    pub extended: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocityLevel {
    pub level: usize,
    pub kernel_factors: Vec<i64>,
    pub global_h2_invariants: Vec<i64>,
    pub global_obstruction: Vec<i64>,
    pub local: Vec<PlaceObstruction>,
    pub h2c_invariants: Vec<i64>,
    /// Class of the pair (global obstruction cocycle, local trivializations).
    pub class: Vec<i64>,
    pub class_zero: bool,
    /// Generator images of the chosen global lift, when the class vanishes.
    pub global_lift: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReciprocityTowerReport {
    pub start_level: usize,
    pub levels: Vec<ReciprocityLevel>,
    pub reached_level: usize,
    pub blocked_at: Option<usize>,
    pub complete: bool,
}

struct LocalState {
    level: usize,
    hom: GroupHom,
    decomposition: GroupHom,
}

/// Lifts a global homomorphism up the tower while keeping it compatible with
/// the given local lifts.
///
/// At each level the obstruction is the class in `H²_c` of the pair made of
/// the global obstruction cocycle and, at each place, the cochain comparing
/// the local lift with the global set-theoretic lift. When it vanishes, a
/// global lift is built from the trivializing pair and the local lifts are
/// conjugated by kernel elements so that they restrict strictly to it.
/// Every place is treated as ramified. Local lifts that stop below the top
/// of the tower are extended by their least lift class; a place where that
/// is impossible makes the input inadmissible.
pub fn reciprocity_tower(
    sys: &LocalGlobalSystem,
    tower: &Tower,
    psi: &GroupHom,
    start_level: usize,
    local_lifts: &[LocalLift],
    budget: &Budget,
) -> Result<ReciprocityTowerReport> {
    if start_level > tower.depth() || !same_group(psi.target(), tower.level(start_level)) || !same_group(psi.source(), sys.global()) {
        return Err(Error::TargetMismatch);
    }
    let mut locals = Vec::with_capacity(sys.places().len());
    for p in sys.places() {
        let lift = local_lifts
            .iter()
            .find(|l| l.place == p.label)
            .ok_or_else(|| Error::IncompatibleLocalData(format!("no local lift for place {:?}", p.label)))?;
        if lift.level < start_level || lift.level > tower.depth() {
            return Err(Error::IncompatibleLocalData(format!("local lift at {:?} has level {} outside the tower", p.label, lift.level)));
        }
        if !same_group(lift.hom.target(), tower.level(lift.level)) || !same_group(lift.hom.source(), p.decomposition.source()) {
            return Err(Error::IncompatibleLocalData(format!("local lift at {:?} has the wrong source or target", p.label)));
        }
        let down = lift.hom.then(&tower.projection(lift.level, start_level)?)?;
        let restricted = p.decomposition.then(psi)?;
        if down.images() != restricted.images() {
            return Err(Error::IncompatibleLocalData(format!(
                "local lift at {:?} does not cover the restriction of the global map",
                p.label
            )));
        }
        locals.push(LocalState { level: lift.level, hom: lift.hom.clone(), decomposition: p.decomposition.clone() });
    }

    let mut levels = Vec::new();
    let mut current = psi.clone();
    let mut blocked_at = None;
    for n in start_level + 1..=tower.depth() {
        let ext = tower.step(n).extension();
        let (module, c) = ext.obstruction_cocycle(&current)?;
        let h2 = cohomology(&module, 2, budget)?;
        let global_obstruction = h2.classify(&c)?;
        let loc = LocalizedModule::all_ramified(sys, &module)?;

        let mut local_reports = Vec::with_capacity(locals.len());
        let mut level_lifts = Vec::with_capacity(locals.len());
        for (state, p) in locals.iter_mut().zip(sys.places()) {
            let restricted = state.decomposition.then(&current)?;
            let obs = obstruction_for(&restricted, ext, budget)?;
            let mut extended = false;
            let at_n = if state.level >= n {
                state.hom.then(&tower.projection(state.level, n)?)?
            } else {
                let lc = lift_classes_for(&restricted, ext, budget)?;
                let least = lc.least().ok_or_else(|| {
                    Error::Inadmissible(format!("local obstruction at place {:?} is nonzero at level {n}", p.label))
                })?;
                extended = true;
                state.level = n;
                state.hom = least.canonical.clone();
                state.hom.clone()
            };
            local_reports.push(PlaceObstruction {
                place: p.label.clone(),
                h2_invariants: obs.h2.invariants().to_vec(),
                class: obs.class.clone(),
                extended,
            });
            level_lifts.push(at_n);
        }

        // b_v(g) = λ_v(g) · α̃(g)⁻¹ with α̃ = s∘ψ∘dec_v
        let total = ext.total();
        let b: Vec<Cochain> = loc
            .places
            .iter()
            .zip(&level_lifts)
            .map(|(p, lam)| {
                let restricted = p.map.then(&current)?;
                let mut bad = false;
                let cochain = Cochain::from_fn(&p.module, 1, |t| {
                    let g = t[0];
                    let s = ext.section()[restricted.apply(g)];
                    let x = total.mul(lam.apply(g), total.inv(s));
                    match ext.kernel_coords(x) {
                        Some(v) => v.to_vec(),
                        None => {
                            bad = true;
                            p.module.zero()
                        }
                    }
                });
                if bad {
                    return Err(Error::IncompatibleLocalData(format!("local lift at {:?} does not cover the global map", p.label)));
                }
                Ok(cochain)
            })
            .collect::<Result<_>>()?;
        let neg_c = c.neg(&module);
        let h2c = compact_support(&loc, 2, budget)?;
        let class = h2c.classify(&neg_c, &b)?;
        let class_zero = class.iter().all(|&x| x == 0);
        let mut report = ReciprocityLevel {
            level: n,
            kernel_factors: ext.kernel().factors().to_vec(),
            global_h2_invariants: h2.invariants().to_vec(),
            global_obstruction,
            local: local_reports,
            h2c_invariants: h2c.invariants().to_vec(),
            class,
            class_zero,
            global_lift: None,
        };
        if !class_zero {
            levels.push(report);
            blocked_at = Some(n);
            break;
        }
        let (u, w) = h2c
            .solve_coboundary(&neg_c, &b)
            .ok_or_else(|| Error::Arithmetic("vanishing class without a trivializing pair".into()))?;
        let images = ext.twisted_section(&current, &module, &u);
        let next = GroupHom::from_images(current.source().clone(), total.clone(), images)?;
        for ((state, lam), wv) in locals.iter_mut().zip(&level_lifts).zip(&w) {
            let target = state.decomposition.then(&next)?;
            let a = wv.values.clone();
            let candidates = [ext.embed(&ext.kernel().neg(&a)), ext.embed(&a)];
            let x = candidates
                .into_iter()
                .chain(ext.kernel().elements().iter().map(|e| ext.embed(e)))
                .find(|&x| lam.conjugated_by(x).images() == target.images())
                .ok_or_else(|| Error::Arithmetic("local lift is not conjugate to the global restriction".into()))?;
            if state.level == n {
                state.hom = lam.conjugated_by(x);
            } else {
                let proj = tower.projection(state.level, n)?;
                let y = tower
                    .level(state.level)
                    .elements()
                    .find(|&y| proj.apply(y) == x)
                    .expect("tower projections are surjective");
                state.hom = state.hom.conjugated_by(y);
            }
        }
        report.global_lift = Some(next.generator_images());
        levels.push(report);
        current = next;
    }
    let reached_level = blocked_at.map_or(tower.depth(), |n| n - 1);
    Ok(ReciprocityTowerReport { start_level, levels, reached_level, blocked_at, complete: blocked_at.is_none() })
}
