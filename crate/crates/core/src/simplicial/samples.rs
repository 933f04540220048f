//! Seeded generators of small simplicial test objects.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::budget::Budget;
use crate::error::Result;
use crate::group::{catalog, direct_product, quotient, GroupRef, Subgroup};
use crate::linalg::gcd;

use super::bisimplicial::{bisimplicial_from_faces, external_product, TruncatedBisimplicialSet};
use super::fibration::SimplicialExtension;
use super::group::{dold_kan, nerve, wbar_group, FiniteChainComplex, TruncatedSimplicialGroup};
use super::set::TruncatedSimplicialSet;

const CYCLIC_CHOICES: [&[i64]; 5] = [&[], &[2], &[3], &[4], &[2, 2]];

/// A random well-defined differential `C_k → C_{k-1}`.
fn random_differential<R: Rng>(rng: &mut R, source: &[i64], target: &[i64]) -> Vec<Vec<i64>> {
    source
        .iter()
        .map(|&m| {
            target
                .iter()
                .map(|&t| {
                    let step = t / gcd(m, t);
                    step * rng.gen_range(0..t / step)
                })
                .collect()
        })
        .collect()
}

/// A chain complex in degrees `0..=max_degree` with small cyclic groups.
pub fn random_chain_complex<R: Rng>(rng: &mut R, max_degree: usize) -> FiniteChainComplex {
    let factors: Vec<Vec<i64>> = (0..=max_degree).map(|_| CYCLIC_CHOICES.choose(rng).expect("nonempty").to_vec()).collect();
    let mut c = FiniteChainComplex { factors: factors.clone(), differentials: Vec::new() };
    for k in 1..=max_degree {
        let mut d = Vec::new();
        for _ in 0..20 {
            d = random_differential(rng, &factors[k], &factors[k - 1]);
            c.differentials.push(d.clone());
            let ok = c.validate_prefix(k);
            c.differentials.pop();
            if ok {
                break;
            }
            d = vec![vec![0; factors[k - 1].len()]; factors[k].len()];
        }
        c.differentials.push(d);
    }
    c
}

impl FiniteChainComplex {
    /// Whether `d_{k-1} d_k = 0` for the differentials present so far.
    fn validate_prefix(&self, k: usize) -> bool {
        if k < 2 {
            return true;
        }
        (0..self.factors[k].len()).all(|j| {
            let mut e = vec![0; self.factors[k].len()];
            e[j] = 1;
            self.apply(k - 1, &self.apply(k, &e)).iter().all(|&x| x == 0)
        })
    }
}

/// A levelwise abelian simplicial group `Γ(C)` for a random complex in
/// degrees below `top`, retried until the levels fit the budget.
pub fn random_abelian_simplicial_group<R: Rng>(rng: &mut R, top: usize, budget: &Budget) -> Result<(FiniteChainComplex, TruncatedSimplicialGroup)> {
    loop {
        let c = random_chain_complex(rng, top.saturating_sub(1));
        match dold_kan(&c, top, budget) {
            Ok(a) => return Ok((c, a)),
            Err(e) if e.is_budget() => continue,
            Err(e) => return Err(e),
        }
    }
}

/// A random `Γ(C)` together with `W̄Γ(C)` as a simplicial group, retried
/// until both fit the budget.
pub fn random_wbar_pair<R: Rng>(
    rng: &mut R,
    top: usize,
    budget: &Budget,
) -> Result<(FiniteChainComplex, TruncatedSimplicialGroup, TruncatedSimplicialGroup)> {
    loop {
        let (c, a) = random_abelian_simplicial_group(rng, top, budget)?;
        match wbar_group(&a, budget) {
            Ok((w, _)) => return Ok((c, a, w)),
            Err(e) if e.is_budget() => continue,
            Err(e) => return Err(e),
        }
    }
}

/// The simplicial set of monotone vertex sequences spanning a face of the
/// downward closure of `maximal_faces` on `k` vertices.
pub fn ordered_complex(k: usize, maximal_faces: &[Vec<usize>], top: usize) -> Result<TruncatedSimplicialSet> {
    let faces: Vec<Vec<(usize, usize)>> = maximal_faces.iter().map(|f| f.iter().map(|&v| (v, 0)).collect()).collect();
    let x = bisimplicial_from_faces(k, 1, &faces, top)?;
    let sizes: Vec<usize> = (0..=top).map(|p| x.size(p, 0)).collect();
    let faces = (0..=top).map(|p| x.cell(p, 0).h_faces.clone()).collect();
    let degeneracies = (0..top).map(|p| x.cell(p, 0).h_degeneracies.clone()).collect();
    TruncatedSimplicialSet::from_parts(sizes, faces, degeneracies)
}

fn random_faces<R: Rng>(rng: &mut R, vertices: &[(usize, usize)]) -> Vec<Vec<(usize, usize)>> {
    let count = rng.gen_range(1..=3);
    (0..count)
        .map(|_| {
            let mut f: Vec<(usize, usize)> = vertices.iter().copied().filter(|_| rng.gen_bool(0.6)).collect();
            if f.is_empty() {
                f.push(*vertices.choose(rng).expect("nonempty"));
            }
            f
        })
        .collect()
}

/// A small random bisimplicial set: a face family on a vertex grid, an
/// external product of ordered complexes, or the nerve of a small constant
/// or Dold-Kan group.
pub fn random_bisimplicial<R: Rng>(rng: &mut R, bound: usize, budget: &Budget) -> Result<(String, TruncatedBisimplicialSet)> {
    match rng.gen_range(0..4) {
        0 | 1 => {
            let a = rng.gen_range(1..=3);
            let b = rng.gen_range(1..=2);
            let grid: Vec<(usize, usize)> = (0..a).flat_map(|u| (0..b).map(move |w| (u, w))).collect();
            let faces = random_faces(rng, &grid);
            Ok((format!("faces {a}x{b} {faces:?}"), bisimplicial_from_faces(a, b, &faces, bound)?))
        }
        2 => {
            let side = |rng: &mut R| -> Result<(String, TruncatedSimplicialSet)> {
                let k = rng.gen_range(1..=3);
                let grid: Vec<(usize, usize)> = (0..k).map(|v| (v, 0)).collect();
                let faces: Vec<Vec<usize>> = random_faces(rng, &grid).into_iter().map(|f| f.into_iter().map(|(v, _)| v).collect()).collect();
                Ok((format!("{faces:?}"), ordered_complex(k, &faces, bound)?))
            };
            let (ls, s) = side(rng)?;
            let (lt, t) = side(rng)?;
            Ok((format!("product {ls} x {lt}"), external_product(&s, &t)?))
        }
        _ => {
            if rng.gen_bool(0.5) {
                let n = *[2usize, 3].choose(rng).expect("nonempty");
                let g = TruncatedSimplicialGroup::constant(&catalog::cyclic(n)?, bound);
                Ok((format!("nerve of constant Z/{n}"), nerve(&g)?))
            } else {
                let c = FiniteChainComplex { factors: vec![vec![], vec![2]], differentials: vec![vec![vec![]]] };
                let g = dold_kan(&c, bound, budget)?.truncate(bound.min(2))?;
                Ok(("nerve of Dold-Kan Z/2[1]".into(), nerve(&g)?))
            }
        }
    }
}

/// Finite groups with a normal abelian subgroup, limited by `|G|·|A|`.
pub fn extension_pool(max_product: usize) -> Result<Vec<(String, GroupRef, Subgroup)>> {
    let groups: Vec<(String, GroupRef)> = vec![
        ("C2".into(), catalog::cyclic(2)?),
        ("C3".into(), catalog::cyclic(3)?),
        ("C4".into(), catalog::cyclic(4)?),
        ("V4".into(), catalog::klein4()),
        ("C6".into(), catalog::cyclic(6)?),
        ("S3".into(), catalog::symmetric(3)?),
        ("C8".into(), catalog::cyclic(8)?),
        ("C2xC4".into(), direct_product(&catalog::cyclic(2)?, &catalog::cyclic(4)?)?.into_ref()),
        ("D8".into(), catalog::dihedral(4)?),
        ("Q8".into(), catalog::quaternion8()),
        ("C9".into(), catalog::cyclic(9)?),
        ("C3xC3".into(), direct_product(&catalog::cyclic(3)?, &catalog::cyclic(3)?)?.into_ref()),
        ("D10".into(), catalog::dihedral(5)?),
        ("C12".into(), catalog::cyclic(12)?),
    ];
    let mut out = Vec::new();
    for (name, g) in groups {
        let mut seen: Vec<Vec<usize>> = Vec::new();
        for a in g.elements() {
            for b in g.elements().filter(|&b| b >= a) {
                let s = Subgroup::generated(&g, &[a, b]);
                if seen.iter().any(|m| m.as_slice() == s.members()) {
                    continue;
                }
                seen.push(s.members().to_vec());
                if s.is_normal(&g) && s.is_abelian(&g) && g.order() * s.order() <= max_product {
                    out.push((format!("{name}/A{}", s.order()), g.clone(), s));
                }
            }
        }
    }
    Ok(out)
}

/// A random abelian extension of simplicial groups: a constant extension,
/// possibly multiplied by a small Dold-Kan group on either side.
pub fn random_extension<R: Rng>(rng: &mut R, top: usize, budget: &Budget) -> Result<(String, SimplicialExtension)> {
    let small = extension_pool(16)?;
    let large = extension_pool(36)?;
    let twist = rng.gen_range(0..4);
    let pool = if twist == 0 { &large } else { &small };
    let (name, g, a) = pool.choose(rng).expect("nonempty pool").clone();
    let q = quotient(&g, &a)?;
    let ext = SimplicialExtension::constant(&q.projection, top)?;
    let d = || -> Result<TruncatedSimplicialGroup> {
        let c = FiniteChainComplex { factors: vec![vec![], vec![2]], differentials: vec![vec![vec![]]] };
        dold_kan(&c, top, budget)
    };
    Ok(match twist {
        1 => (format!("{name} x DK"), ext.times(&d()?, budget)?),
        2 if a.order() <= 2 && g.order() <= 4 => (format!("{name} kernel x DK"), ext.with_kernel_factor(&d()?, budget)?),
        _ => (name, ext),
    })
}
