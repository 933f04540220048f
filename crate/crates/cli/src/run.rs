use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use obtower_core::arith::{
    adelic_cohomology, compact_support, les_check, reciprocity_obstruction, subgroup_inclusion, LocalGlobalSystem, LocalizedModule,
    Place,
};
use obtower_core::cohomology::cohomology;
use obtower_core::group::{quotient, GroupHom, Subgroup};
use obtower_core::lie::{ls_weight_report, witt_rank, HallSet};
use obtower_core::simplicial::samples::{random_bisimplicial, random_extension, random_wbar_pair};
use obtower_core::simplicial::{diag_vs_codiag, fibration_data, moore_homotopy, FibrationReport, SimplicialExtension};
use obtower_core::tower::{e1_page, run_tower, tower_from_lcs, RunOptions};
use obtower_core::{Budget, Error, Result};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::schema::*;

/// Evaluates `f(0), …, f(n-1)` on at most `jobs` threads, keeping the
/// results in index order.
pub fn parallel_map<T, F>(n: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    let jobs = jobs.clamp(1, n.max(1));
    if jobs == 1 {
        return (0..n).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let value = f(i);
                slots.lock().expect("worker panicked")[i] = Some(value);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|v| v.expect("every index is evaluated")).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

pub fn execute(problem: &Problem, budget: &Budget, jobs: usize) -> Result<Value> {
    match problem {
        Problem::Tower(p) => tower(p, budget),
        Problem::Reciprocity(p) => reciprocity(p, budget),
        Problem::Cohomology(p) => group_cohomology(p, budget),
        Problem::Lie(p) => lie(p),
        Problem::SimplicialCheck(p) => simplicial(p, budget, jobs),
    }
}

fn tower(p: &TowerProblem, budget: &Budget) -> Result<Value> {
    let pi = p.pi.build()?;
    if pi.order() > budget.max_group_order {
        return Err(Error::SearchBudgetExceeded(format!("group of order {} exceeds the budget", pi.order())));
    }
    let n = match &p.normal {
        Some(gens) => normal_subgroup(&pi, gens, "normal subgroup")?,
        None => Subgroup::whole(&pi),
    };
    if p.start_level > p.depth {
        return Err(Error::Invalid(format!("start level {} is above the depth {}", p.start_level, p.depth)));
    }
    let tower = tower_from_lcs(&pi, &n, p.depth)?;
    let level = tower.level(p.start_level).clone();
    let psi = match (&p.psi0, &p.source) {
        (HomDesc::Identity, None) => GroupHom::identity(&level),
        (HomDesc::Identity, Some(_)) => return Err(Error::Invalid("an identity map takes no source group".into())),
        (HomDesc::Images(images), source) => {
            let source = match source {
                Some(s) => s.build()?,
                None => level.clone(),
            };
            element_list(&pi, images, "psi0 image")?;
            let q = tower.quotient_map(p.start_level).expect("towers built from a group keep their quotient maps");
            let projected: Vec<usize> = images.iter().map(|&x| q.apply(x)).collect();
            hom_from_images(&source, &level, &projected)?
        }
    };
    let options = RunOptions { start_level: p.start_level, verify_brute_force: p.verify, full_tree: p.full_tree, ..Default::default() };
    let report = run_tower(&psi, &tower, options, budget)?;
    let e1 = match p.e1_window {
        Some(window) => Some(e1_page(&tower, &psi.then(&tower.projection(p.start_level, 0)?)?, window, budget)?),
        None => None,
    };
    let kernels: Vec<Vec<i64>> = tower.steps().iter().map(|s| s.extension().kernel().factors().to_vec()).collect();
    Ok(json!({
        "pi_order": pi.order(),
        "normal_order": n.order(),
        "source_order": psi.source().order(),
        "level_orders": (0..=tower.depth()).map(|k| tower.level(k).order()).collect::<Vec<_>>(),
        "kernels": kernels,
        "warnings": tower.warnings(),
        "lift": to_value(&report),
        "e1_page": e1.map(|e| to_value(&e)),
    }))
}

fn reciprocity(p: &ReciprocityProblem, budget: &Budget) -> Result<Value> {
    let g = p.global.build()?;
    check_labels(&p.places, &p.ramified)?;
    let mut places = Vec::with_capacity(p.places.len());
    for d in &p.places {
        let sub = match &d.decomposition {
            Some(gens) => {
                element_list(&g, gens, "decomposition generator")?;
                Subgroup::generated(&g, gens)
            }
            None => Subgroup::whole(&g),
        };
        element_list(&g, &d.inertia, "inertia generator")?;
        let inertia_global = Subgroup::generated(&g, &d.inertia);
        if !inertia_global.is_subgroup_of(&sub) {
            return Err(Error::Invalid(format!("inertia at {:?} is not inside the decomposition group", d.label)));
        }
        let (h, incl) = subgroup_inclusion(&g, &sub)?;
        let members: Vec<usize> = h.elements().filter(|&x| inertia_global.contains(incl.apply(x))).collect();
        let inertia = Subgroup::from_members(&h, &members)?;
        places.push(Place { label: d.label.clone(), decomposition: incl, inertia });
    }
    let sys = LocalGlobalSystem::new(g.clone(), places)?;
    let module = p.module.build(&g)?;
    let ramified: Vec<&str> = p.ramified.iter().map(String::as_str).collect();
    let loc = LocalizedModule::new(&sys, &module, &ramified)?;
    let mut degrees = Vec::new();
    for n in 0..=p.up_to {
        let global = cohomology(&module, n, budget)?;
        let adelic = adelic_cohomology(&loc, n, budget)?;
        let hc = compact_support(&loc, n, budget)?;
        degrees.push(json!({
            "degree": n,
            "global": global.invariants(),
            "adelic": adelic.invariants(),
            "compact_support": hc.invariants(),
            "compact_support_order": hc.order(),
        }));
    }
    let les = les_check(&loc, p.up_to, budget)?;
    let mut classes = Vec::new();
    for local in &p.local_classes {
        let r = reciprocity_obstruction(&loc, local, budget)?;
        classes.push(json!({ "local": local, "class": r.class, "vanishes": r.vanishes }));
    }
    Ok(json!({
        "degrees": degrees,
        "les": to_value(&les),
        "reciprocity": classes,
    }))
}

fn group_cohomology(p: &CohomologyProblem, budget: &Budget) -> Result<Value> {
    let g = p.group.build()?;
    let module = p.module.build(&g)?;
    let mut out = Vec::new();
    for n in 0..=p.up_to {
        let h = cohomology(&module, n, budget)?;
        out.push(json!({
            "degree": n,
            "invariants": h.invariants(),
            "order": h.order(),
            "cocycles": h.cocycle_count(),
            "coboundaries": h.coboundary_count(),
        }));
    }
    Ok(json!({ "group_order": g.order(), "module_order": module.order(), "cohomology": out }))
}

fn lie(p: &LieProblem) -> Result<Value> {
    match p {
        LieProblem::Ls { m_max, s, lambda_weight } => {
            if *s == 0 {
                return Err(Error::Invalid("bracket length s must be positive".into()));
            }
            let r = ls_weight_report(*lambda_weight, *m_max, *s)?;
            Ok(json!({
                "mode": "ls",
                "lambda_weight": r.lambda_weight,
                "m_max": r.m_max,
                "s": r.s,
                "generators": r.generators.dims,
                "weights": r.weights.dims,
                "positive_weights": r.e1_diag_zero,
            }))
        }
        LieProblem::Hall { generator_weights, max_degree } => {
            let set = HallSet::new(generator_weights, *max_degree);
            let d = generator_weights.len() as u64;
            let rows: Vec<Value> = (1..=*max_degree)
                .map(|n| {
                    let mut weights: BTreeMap<i64, usize> = BTreeMap::new();
                    for w in set.weights(n) {
                        *weights.entry(w).or_default() += 1;
                    }
                    let hall = set.count(n);
                    let witt = witt_rank(d, n);
                    json!({ "degree": n, "hall": hall, "witt": witt, "agree": hall as u128 == witt, "weights": weights })
                })
                .collect();
            Ok(json!({ "mode": "hall", "generators": d, "degrees": rows, "hall_conditions": set.satisfies_hall_conditions() }))
        }
    }
}

/// A generator seeded independently for each case of a suite.
fn case_rng(seed: u64, suite: u64, case: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((suite << 32) | case as u64);
    rng
}

fn fibration_ok(r: &FibrationReport) -> bool {
    r.maps_simplicial && r.pullback_identity && r.w_pi0_bijective && r.w_h1_iso
}

fn fibration_summary(label: &str, r: &FibrationReport) -> Value {
    json!({
        "label": label,
        "kernel_orders": r.kernel_orders,
        "central": r.central,
        "pullback_sizes": r.levels.iter().map(|l| l.pullback).collect::<Vec<_>>(),
        "y_prime_sizes": r.levels.iter().map(|l| l.y_prime).collect::<Vec<_>>(),
        "pullback_identity": r.pullback_identity,
        "w_pi0_bijective": r.w_pi0_bijective,
        "w_h1_iso": r.w_h1_iso,
        "pass": fibration_ok(r),
    })
}

fn suite_summary(cases: Vec<Value>) -> Value {
    let passed = cases.iter().filter(|c| c["pass"] == json!(true)).count();
    json!({ "total": cases.len(), "passed": passed, "cases": cases })
}

fn simplicial(p: &SimplicialProblem, budget: &Budget, jobs: usize) -> Result<Value> {
    let top = p.truncation;
    if top < 2 || top > budget.max_truncation {
        return Err(Error::TruncationInsufficient { needed: top.max(2), available: budget.max_truncation.min(top) });
    }
    let mut explicit = Vec::new();
    for e in &p.explicit {
        let g = e.group.build()?;
        let a = normal_subgroup(&g, &e.kernel, "kernel generator")?;
        let q = quotient(&g, &a)?;
        let ext = SimplicialExtension::constant(&q.projection, top)?;
        let r = fibration_data(&ext, budget)?.report;
        explicit.push(fibration_summary(&format!("{}/A{}", g.name(), a.order()), &r));
    }

    let extensions = parallel_map(p.extensions, jobs, |i| -> Result<Value> {
        let (label, ext) = random_extension(&mut case_rng(p.seed, 0, i), top, budget)?;
        Ok(fibration_summary(&label, &fibration_data(&ext, budget)?.report))
    });
    let abelian = parallel_map(p.abelian_inputs, jobs, |i| -> Result<Value> {
        let (c, a, w) = random_wbar_pair(&mut case_rng(p.seed, 1, i), top, budget)?;
        let pa = moore_homotopy(&a)?;
        let pw = moore_homotopy(&w)?;
        let pass = pw[0].is_empty() && (1..pw.len()).all(|k| pw[k] == pa[k - 1]);
        Ok(json!({ "complex": c.factors, "pi_a": pa, "pi_wbar_a": pw, "pass": pass }))
    });
    let bisimplicial = parallel_map(p.bisimplicial, jobs, |i| -> Result<Value> {
        let (label, x) = random_bisimplicial(&mut case_rng(p.seed, 2, i), top, budget)?;
        let r = diag_vs_codiag(&x)?;
        let pass = r.groups_equal && r.map_iso;
        Ok(json!({ "label": label, "comparison": to_value(&r), "pass": pass }))
    });
    let collect = |v: Vec<Result<Value>>| v.into_iter().collect::<Result<Vec<_>>>().map(suite_summary);
    let explicit_pass = explicit.iter().all(|c| c["pass"] == json!(true));
    let suites = json!({
        "extensions": collect(extensions)?,
        "abelian_inputs": collect(abelian)?,
        "bisimplicial": collect(bisimplicial)?,
    });
    let all_pass = explicit_pass
        && ["extensions", "abelian_inputs", "bisimplicial"].iter().all(|k| suites[k]["passed"] == suites[k]["total"]);
    Ok(json!({ "truncation": top, "seed": p.seed, "explicit": explicit, "suites": suites, "all_pass": all_pass }))
}
