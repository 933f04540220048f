use serde::Serialize;

use crate::budget::Budget;
use crate::cohomology::{cohomology, Cochain};
use crate::error::Result;
use crate::linalg::generated_order;

use super::cocone::{adelic_cohomology, compact_support};
use super::system::LocalizedModule;

#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub invariants: Vec<i64>,
    pub order: u128,
}

/// Exactness at one node `X → Y → Z` of the sequence.
#[derive(Clone, Debug, Serialize)]
pub struct LesSpot {
    pub node: String,
    /// The composite `X → Z` vanishes.
    pub composite_zero: bool,
    pub image_order: u128,
    pub kernel_order: u128,
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LesReport {
    pub up_to: usize,
    pub nodes: Vec<LesNode>,
    pub spots: Vec<LesSpot>,
    pub exact: bool,
}

/// A node with the images of its generators in the next node.
struct Stage {
    node: LesNode,
    map: Vec<Vec<i64>>,
}

fn apply(images: &[Vec<i64>], x: &[i64], target: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; target.len()];
    for (img, &c) in images.iter().zip(x) {
        for ((o, &v), &d) in out.iter_mut().zip(img).zip(target) {
            *o = (*o + c * v).rem_euclid(d);
        }
    }
    out
}

/// Assembles `H^n_c → H^n(G) → ⊕_v H^n(G_v) → H^{n+1}_c` for `n ≤ up_to`
/// and checks exactness at every node up to `H^{up_to}(G)`.
pub fn les_check(loc: &LocalizedModule, up_to: usize, budget: &Budget) -> Result<LesReport> {
    let mut stages: Vec<Stage> = Vec::new();
    let mut next_c = compact_support(loc, 0, budget)?;
    for n in 0..=up_to {
        let hc = next_c;
        let hg = cohomology(&loc.module, n, budget)?;
        let ha = adelic_cohomology(loc, n, budget)?;
        let to_global = hc
            .basis()
            .iter()
            .map(|cls| hg.classify(&cls.global))
            .collect::<Result<Vec<_>>>()?;
        stages.push(Stage {
            node: LesNode { label: format!("H^{n}_c"), invariants: hc.invariants().to_vec(), order: hc.order() },
            map: to_global,
        });
        stages.push(Stage {
            node: LesNode { label: format!("H^{n}(G)"), invariants: hg.invariants().to_vec(), order: hg.order() },
            map: ha.localization_images(loc, &hg)?,
        });
        let inv = ha.invariants();
        let (map, following) = if n < up_to {
            let hc1 = compact_support(loc, n + 1, budget)?;
            let zero = Cochain::zero(&loc.module, n + 1);
            let images = (0..inv.len())
                .map(|j| {
                    let mut e = vec![0; inv.len()];
                    e[j] = 1;
                    hc1.classify(&zero, &ha.element(&e))
                })
                .collect::<Result<Vec<_>>>()?;
            (images, Some(hc1))
        } else {
            (Vec::new(), None)
        };
        stages.push(Stage { node: LesNode { label: format!("H^{n}(adelic)"), order: ha.order(), invariants: inv }, map });
        match following {
            Some(c) => next_c = c,
            None => break,
        }
    }

    let mut spots = Vec::new();
    for i in 0..stages.len() - 1 {
        let y = &stages[i];
        let z = &stages[i + 1];
        let (incoming, composite_zero) = if i == 0 {
            (Vec::new(), true)
        } else {
            let x = &stages[i - 1];
            let zero = x.map.iter().all(|img| apply(&y.map, img, &z.node.invariants).iter().all(|&v| v == 0));
            (x.map.clone(), zero)
        };
        let image_order = generated_order(&incoming, &y.node.invariants);
        let out_image = generated_order(&y.map, &z.node.invariants);
        let kernel_order = y.node.order / out_image;
        spots.push(LesSpot {
            node: y.node.label.clone(),
            composite_zero,
            image_order,
            kernel_order,
            exact: composite_zero && image_order == kernel_order,
        });
    }
    let exact = spots.iter().all(|s| s.exact);
    Ok(LesReport { up_to, nodes: stages.into_iter().map(|s| s.node).collect(), spots, exact })
}

/// Orders `|H^n_c|` for `n ≤ up_to`, a convenience for reports.
pub fn compact_support_orders(loc: &LocalizedModule, up_to: usize, budget: &Budget) -> Result<Vec<u128>> {
    (0..=up_to).map(|n| Ok(compact_support(loc, n, budget)?.order())).collect()
}

/// Labels of the places that may be left undeclared: those whose inertia
/// maps trivially to the global group.
pub fn unramified_places(sys: &super::LocalGlobalSystem) -> Vec<String> {
    sys.places()
        .iter()
        .filter(|p| p.inertia.members().iter().all(|&x| p.decomposition.apply(x) == 0))
        .map(|p| p.label.clone())
        .collect()
}
