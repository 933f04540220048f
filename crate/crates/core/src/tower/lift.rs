use serde::Serialize;

use crate::budget::Budget;
use crate::cohomology::{cohomology, torsor_action, Cochain, CohomologyGroup, Extension};
use crate::error::{Error, Result};
use crate::group::{enumerate_homs_with, same_group, GModule, GroupHom};

use super::{Tower, TowerStep};

/// The obstruction to lifting `ψ` through one step.
#[derive(Clone, Debug)]
pub struct Obstruction {
    /// `ψ*A`.
    pub module: GModule,
    /// `c(g, h) = α̃(g) α̃(h) α̃(gh)⁻¹` for `α̃ = s∘ψ`.
    pub cocycle: Cochain,
    pub h2: CohomologyGroup,
    pub class: Vec<i64>,
}

impl Obstruction {
    pub fn vanishes(&self) -> bool {
        self.class.iter().all(|&x| x == 0)
    }
}

/// Obstruction class of `ψ: G → Π_{n−1}` in `H²(G, ψ*A_n)`.
pub fn obstruction(psi: &GroupHom, step: &TowerStep, budget: &Budget) -> Result<Obstruction> {
    obstruction_for(psi, step.extension(), budget)
}

pub(crate) fn obstruction_for(psi: &GroupHom, ext: &Extension, budget: &Budget) -> Result<Obstruction> {
    if !same_group(psi.target(), ext.base()) {
        return Err(Error::TargetMismatch);
    }
    let (module, cocycle) = ext.obstruction_cocycle(psi)?;
    let h2 = cohomology(&module, 2, budget)?;
    let class = h2.classify(&cocycle)?;
    Ok(Obstruction { module, cocycle, h2, class })
}

/// One class of lifts modulo conjugation by the kernel.
#[derive(Clone, Debug)]
pub struct LiftClass {
    /// Coordinates in `H¹(G, ψ*A)` relative to the base lift.
    pub h1_coords: Vec<i64>,
    /// Least member of the class (by image table).
    pub canonical: GroupHom,
}

#[derive(Clone, Debug)]
pub struct LiftClasses {
    pub obstruction: Obstruction,
    pub h1: Option<CohomologyGroup>,
    /// Sorted by canonical representative.
    pub classes: Vec<LiftClass>,
}

impl LiftClasses {
    pub fn least(&self) -> Option<&LiftClass> {
        self.classes.first()
    }
}

/// All lifts of `ψ` through the step, modulo conjugation by the kernel.
///
/// Empty exactly when the obstruction class is nonzero. Otherwise one lift
/// is built from a coboundary solution and twisted by every class of `H¹`.
pub fn lift_classes(psi: &GroupHom, step: &TowerStep, budget: &Budget) -> Result<LiftClasses> {
    lift_classes_for(psi, step.extension(), budget)
}

pub(crate) fn lift_classes_for(psi: &GroupHom, ext: &Extension, budget: &Budget) -> Result<LiftClasses> {
    let obs = obstruction_for(psi, ext, budget)?;
    if !obs.vanishes() {
        return Ok(LiftClasses { obstruction: obs, h1: None, classes: Vec::new() });
    }
    let module = &obs.module;
    let target = obs.cocycle.neg(module);
    let b = obs
        .h2
        .solve_coboundary(&target)
        .ok_or_else(|| Error::Arithmetic("vanishing class without a coboundary solution".into()))?;
    let images = ext.twisted_section(psi, module, &b);
    let base_lift = GroupHom::from_images(psi.source().clone(), ext.total().clone(), images)?;
    let h1 = cohomology(module, 1, budget)?;
    if h1.order() > budget.max_hom_search as u128 {
        return Err(Error::SearchBudgetExceeded(format!("{} lift classes", h1.order())));
    }
    let kernel_elems: Vec<usize> = ext.kernel().elements().iter().map(|a| ext.embed(a)).collect();
    let mut classes = Vec::new();
    for coords in h1.all_classes() {
        let z = h1.element(&coords);
        let lift = torsor_action(ext, &base_lift, &z)?;
        let canonical = kernel_elems
            .iter()
            .map(|&a| lift.conjugated_by(a))
            .min_by(|x, y| x.images().cmp(y.images()))
            .expect("kernel is nonempty");
        classes.push(LiftClass { h1_coords: coords, canonical });
    }
    classes.sort_by(|x, y| x.canonical.images().cmp(y.canonical.images()));
    Ok(LiftClasses { obstruction: obs, h1: Some(h1), classes })
}

/// Every homomorphism `G → Π_n` covering `ψ`, by exhaustive search.
pub fn brute_force_lifts(psi: &GroupHom, step: &TowerStep, max_search: u64) -> Result<Vec<GroupHom>> {
    brute_force_lifts_for(psi, step.extension(), max_search)
}

pub(crate) fn brute_force_lifts_for(psi: &GroupHom, ext: &Extension, max_search: u64) -> Result<Vec<GroupHom>> {
    if !same_group(psi.target(), ext.base()) {
        return Err(Error::TargetMismatch);
    }
    let g = psi.source();
    let total = ext.total();
    let candidates: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            ext.fiber(psi.apply(s))
                .into_iter()
                .filter(|&x| o % total.element_order(x) == 0)
                .collect()
        })
        .collect();
    enumerate_homs_with(g, total, &candidates, max_search)
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Level of the tower that the starting homomorphism maps to.
    pub start_level: usize,
    /// Cross-check every level against exhaustive lift enumeration.
    pub verify_brute_force: bool,
    /// Explore every lift class rather than only the least one.
    pub full_tree: bool,
    /// Maximum number of tree nodes explored per level.
    pub width_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { start_level: 0, verify_brute_force: false, full_tree: false, width_cap: 64 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub kernel_factors: Vec<i64>,
    pub h2_invariants: Vec<i64>,
    pub obstruction: Vec<i64>,
    pub obstruction_zero: bool,
    pub h1_invariants: Vec<i64>,
    pub lift_class_count: u128,
    pub cocycle_count: u128,
    /// Generator images of the least lift, when one exists.
    pub canonical_lift: Option<Vec<usize>>,
    pub brute_force_lift_count: Option<usize>,
    /// Whether the exhaustive search agreed with the cohomological answer.
    pub verified: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeNode {
    pub level: usize,
    /// Index of the parent node, `None` for the root.
    pub parent: Option<usize>,
    /// Class index chosen at each level on the way here.
    pub path: Vec<usize>,
    pub obstruction_zero: bool,
    pub lift_class_count: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftReport {
    pub start_level: usize,
    pub initial: Vec<usize>,
    pub levels: Vec<LevelReport>,
    pub reached_level: usize,
    pub blocked_at: Option<usize>,
    pub complete: bool,
    pub tree: Option<Vec<TreeNode>>,
    pub tree_truncated: bool,
}

/// Lifts `ψ: G → Π_start` level by level, following the least lift class.
pub fn run_tower(psi: &GroupHom, tower: &Tower, options: RunOptions, budget: &Budget) -> Result<LiftReport> {
    let start = options.start_level;
    if start > tower.depth() || !same_group(psi.target(), tower.level(start)) {
        return Err(Error::TargetMismatch);
    }
    let mut levels = Vec::new();
    let mut current = psi.clone();
    let mut blocked_at = None;
    for n in start + 1..=tower.depth() {
        let step = tower.step(n);
        let lc = lift_classes(&current, step, budget)?;
        let obs = &lc.obstruction;
        let h1 = lc.h1.as_ref();
        let cocycle_count = h1.map_or(0, |h| h.cocycle_count());
        let (brute, verified) = if options.verify_brute_force {
            let lifts = brute_force_lifts(&current, step, budget.max_hom_search)?;
            let ok = if obs.vanishes() {
                !lifts.is_empty() && lifts.len() as u128 == cocycle_count
            } else {
                lifts.is_empty()
            };
            (Some(lifts.len()), Some(ok))
        } else {
            (None, None)
        };
        levels.push(LevelReport {
            level: n,
            kernel_factors: step.extension().kernel().factors().to_vec(),
            h2_invariants: obs.h2.invariants().to_vec(),
            obstruction: obs.class.clone(),
            obstruction_zero: obs.vanishes(),
            h1_invariants: h1.map(|h| h.invariants().to_vec()).unwrap_or_default(),
            lift_class_count: lc.classes.len() as u128,
            cocycle_count,
            canonical_lift: lc.least().map(|c| c.canonical.generator_images()),
            brute_force_lift_count: brute,
            verified,
        });
        match lc.least() {
            Some(c) => current = c.canonical.clone(),
            None => {
                blocked_at = Some(n);
                break;
            }
        }
    }
    let reached_level = match blocked_at {
        Some(n) => n - 1,
        None => tower.depth(),
    };
    let (tree, tree_truncated) = if options.full_tree {
        let (t, cut) = explore_tree(psi, tower, start, options.width_cap, budget)?;
        (Some(t), cut)
    } else {
        (None, false)
    };
    Ok(LiftReport {
        start_level: start,
        initial: psi.generator_images(),
        levels,
        reached_level,
        blocked_at,
        complete: blocked_at.is_none(),
        tree,
        tree_truncated,
    })
}

fn explore_tree(psi: &GroupHom, tower: &Tower, start: usize, width_cap: usize, budget: &Budget) -> Result<(Vec<TreeNode>, bool)> {
    let mut nodes = Vec::new();
    let mut truncated = false;
    // frontier entries: (node index, homomorphism)
    let mut frontier: Vec<(Option<usize>, Vec<usize>, GroupHom)> = vec![(None, Vec::new(), psi.clone())];
    for n in start + 1..=tower.depth() {
        let mut next = Vec::new();
        for (parent, path, hom) in frontier {
            let lc = lift_classes(&hom, tower.step(n), budget)?;
            let idx = nodes.len();
            nodes.push(TreeNode {
                level: n,
                parent,
                path: path.clone(),
                obstruction_zero: lc.obstruction.vanishes(),
                lift_class_count: lc.classes.len() as u128,
            });
            for (k, c) in lc.classes.into_iter().enumerate() {
                if next.len() >= width_cap {
                    truncated = true;
                    break;
                }
                let mut p = path.clone();
                p.push(k);
                next.push((Some(idx), p, c.canonical));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok((nodes, truncated))
}
