use std::collections::HashMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, GroupRef, Subgroup};

use super::bisimplicial::{codiagonal_map, BisimplicialMap, Codiagonal, TruncatedBisimplicialSet};
use super::group::{wbar, ClassifyingSpace, SimplicialGroupHom, SimplicialProduct, TruncatedSimplicialGroup};
use super::set::{mapping_cone_homology, HomologyGroup, SimplicialMap, TruncatedSimplicialSet};

/// A levelwise surjection `G → H` of simplicial groups with abelian kernel.
#[derive(Clone, Debug)]
pub struct SimplicialExtension {
    total: TruncatedSimplicialGroup,
    base: TruncatedSimplicialGroup,
    projection: SimplicialGroupHom,
    kernels: Vec<Subgroup>,
    /// A preimage of every element of `H_n`.
    sections: Vec<Vec<usize>>,
}

impl SimplicialExtension {
    pub fn new(total: TruncatedSimplicialGroup, base: TruncatedSimplicialGroup, projection: SimplicialGroupHom) -> Result<Self> {
        projection.check(&total, &base)?;
        let mut kernels = Vec::new();
        let mut sections = Vec::new();
        for (n, p) in projection.levels.iter().enumerate() {
            if !p.is_surjective() {
                return Err(Error::Invalid(format!("projection is not surjective at level {n}")));
            }
            let k = p.kernel();
            if !k.is_abelian(total.level(n)) {
                return Err(Error::NotAbelianKernel);
            }
            let mut section = vec![usize::MAX; base.level(n).order()];
            for x in total.level(n).elements() {
                let h = p.apply(x);
                if section[h] == usize::MAX {
                    section[h] = x;
                }
            }
            kernels.push(k);
            sections.push(section);
        }
        Ok(SimplicialExtension { total, base, projection, kernels, sections })
    }

    /// A constant extension from a surjection of finite groups.
    pub fn constant(projection: &GroupHom, top: usize) -> Result<Self> {
        let g = TruncatedSimplicialGroup::constant(projection.source(), top);
        let h = TruncatedSimplicialGroup::constant(projection.target(), top);
        SimplicialExtension::new(g, h, SimplicialGroupHom { levels: vec![projection.clone(); top + 1] })
    }

    /// `G × D → H × D`, the identity on the new factor.
    pub fn times(&self, d: &TruncatedSimplicialGroup, budget: &Budget) -> Result<Self> {
        let g = SimplicialProduct::new(&self.total, d, budget)?;
        let h = SimplicialProduct::new(&self.base, d, budget)?;
        let p = g.map_to(&h, &self.projection, &SimplicialGroupHom::identity(d))?;
        SimplicialExtension::new(g.group, h.group, p)
    }

    /// `G × D → H`, which adds `D` to the kernel.
    pub fn with_kernel_factor(&self, d: &TruncatedSimplicialGroup, budget: &Budget) -> Result<Self> {
        let g = SimplicialProduct::new(&self.total, d, budget)?;
        let levels = (0..=self.total.top())
            .map(|n| {
                let images = g.pairs[n].iter().map(|&(x, _)| self.projection.levels[n].apply(x)).collect();
                GroupHom::from_images(g.group.level(n).clone(), self.base.level(n).clone(), images)
            })
            .collect::<Result<Vec<_>>>()?;
        SimplicialExtension::new(g.group, self.base.clone(), SimplicialGroupHom { levels })
    }

    pub fn total(&self) -> &TruncatedSimplicialGroup {
        &self.total
    }

    pub fn base(&self) -> &TruncatedSimplicialGroup {
        &self.base
    }

    pub fn kernel(&self, n: usize) -> &Subgroup {
        &self.kernels[n]
    }

    pub fn top(&self) -> usize {
        self.total.top()
    }

    pub fn is_central(&self) -> bool {
        self.kernels.iter().enumerate().all(|(n, k)| {
            let g = self.total.level(n);
            k.members().iter().all(|&a| g.elements().all(|x| g.mul(a, x) == g.mul(x, a)))
        })
    }
}

/// A levelwise semidirect product on pairs, with its structure maps.
struct PairGroup {
    group: TruncatedSimplicialGroup,
    pairs: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
}

/// `(x, a)(y, b) = (xy, s(y)⁻¹ a s(y) b)` with `a, b` in the kernel inside
/// `G` and `s(y)` any preimage in `G` of the first coordinate. With `s` the
/// identity this is `G ⋉ A`; with a section of `G → H` it is `H ⋉ A`.
fn pair_group(
    ext: &SimplicialExtension,
    first: &TruncatedSimplicialGroup,
    lift: &dyn Fn(usize, usize) -> usize,
    top: usize,
    budget: &Budget,
) -> Result<PairGroup> {
    let mut levels: Vec<GroupRef> = Vec::new();
    let mut pairs = Vec::new();
    for n in 0..=top {
        let g = ext.total.level(n);
        let f = first.level(n);
        let mut gens: Vec<(usize, usize)> = f.generators().iter().map(|&x| (x, 0)).collect();
        gens.extend(ext.kernels[n].generators().iter().map(|&a| (0, a)));
        let mul = |x: &(usize, usize), y: &(usize, usize)| {
            let s = lift(n, y.0);
            (f.mul(x.0, y.0), g.mul(g.mul(g.inv(s), g.mul(x.1, s)), y.1))
        };
        let (grp, p) = FiniteGroup::from_closure(format!("{}|xA{n}", f.name()), (0usize, 0usize), &gens, mul, budget.max_group_order)?;
        levels.push(grp.into_ref());
        pairs.push(p);
    }
    let index: Vec<HashMap<(usize, usize), usize>> = pairs.iter().map(|p| p.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
    let op = |n: usize, m: usize, on_first: &GroupHom, on_kernel: &GroupHom| {
        let images = pairs[n].iter().map(|&(x, a)| index[m][&(on_first.apply(x), on_kernel.apply(a))]).collect();
        GroupHom::from_images(levels[n].clone(), levels[m].clone(), images)
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push((0..=n).map(|i| op(n, n - 1, first.face(n, i), ext.total.face(n, i))).collect::<Result<Vec<_>>>()?);
    }
    let degeneracies = (0..top)
        .map(|n| (0..=n).map(|i| op(n, n + 1, first.degeneracy(n, i), ext.total.degeneracy(n, i))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let group = TruncatedSimplicialGroup::new(levels, faces, degeneracies)?;
    Ok(PairGroup { group, pairs, index })
}

impl PairGroup {
    fn hom_to(&self, target: &GroupRef, n: usize, f: impl Fn(usize, usize) -> usize) -> Result<GroupHom> {
        let images = self.pairs[n].iter().map(|&(x, a)| f(x, a)).collect();
        GroupHom::from_images(self.group.level(n).clone(), target.clone(), images)
    }
}

/// An internal groupoid in simplicial sets: objects, morphisms, source,
/// target, identities and composition (first `m`, then `m'`).
struct Groupoid<'a> {
    objects: &'a TruncatedSimplicialSet,
    morphisms: &'a TruncatedSimplicialSet,
    source: &'a SimplicialMap,
    target: &'a SimplicialMap,
    unit: &'a SimplicialMap,
    compose: &'a dyn Fn(usize, usize, usize) -> usize,
}

/// The nerve of a groupoid at every level, on the bidegrees `p + n ≤ top`:
/// `(p, n)` holds composable strings `m_1, …, m_p` in level `n`, with
/// objects at `p = 0`.
fn groupoid_nerve(gd: &Groupoid, top: usize) -> Result<(TruncatedBisimplicialSet, Vec<Vec<HashMap<Vec<usize>, usize>>>)> {
    let outgoing: Vec<Vec<Vec<usize>>> = (0..top)
        .map(|n| {
            let mut out = vec![Vec::new(); gd.objects.size(n)];
            for m in 0..gd.morphisms.size(n) {
                out[gd.source.levels[n][m]].push(m);
            }
            out
        })
        .collect();
    let (set, elems) = TruncatedBisimplicialSet::build(
        top,
        top,
        |p, n| {
            if p == 0 {
                return (0..gd.objects.size(n)).map(|o| vec![o]).collect();
            }
            let mut strings: Vec<Vec<usize>> = (0..gd.morphisms.size(n)).map(|m| vec![m]).collect();
            for _ in 1..p {
                strings = strings
                    .into_iter()
                    .flat_map(|s| {
                        let end = gd.target.levels[n][*s.last().expect("nonempty string")];
                        outgoing[n][end].iter().map(move |&m| {
                            let mut t = s.clone();
                            t.push(m);
                            t
                        })
                    })
                    .collect();
            }
            strings
        },
        |p, n, i, s: &Vec<usize>| {
            if p == 1 {
                let m = s[0];
                return vec![if i == 0 { gd.target.levels[n][m] } else { gd.source.levels[n][m] }];
            }
            let mut t = s.clone();
            if i == 0 {
                t.remove(0);
            } else if i == p {
                t.pop();
            } else {
                t[i - 1] = (gd.compose)(n, s[i - 1], s[i]);
                t.remove(i);
            }
            t
        },
        |p, n, j, s| {
            let level = if p == 0 { gd.objects } else { gd.morphisms };
            s.iter().map(|&x| level.face(n, j, x)).collect()
        },
        |p, n, i, s| {
            if p == 0 {
                return vec![gd.unit.levels[n][s[0]]];
            }
            let object = if i == 0 { gd.source.levels[n][s[0]] } else { gd.target.levels[n][s[i - 1]] };
            let mut t = s.clone();
            t.insert(i, gd.unit.levels[n][object]);
            t
        },
        |p, n, j, s| {
            let level = if p == 0 { gd.objects } else { gd.morphisms };
            s.iter().map(|&x| level.degeneracy(n, j, x)).collect()
        },
    )?;
    let index = elems
        .into_iter()
        .map(|row| row.into_iter().map(|cell| cell.into_iter().enumerate().map(|(i, x)| (x, i)).collect()).collect())
        .collect();
    Ok((set, index))
}

fn cell_map(
    source: &[Vec<HashMap<Vec<usize>, usize>>],
    target: &[Vec<HashMap<Vec<usize>, usize>>],
    top: usize,
    f: impl Fn(usize, usize, &[usize]) -> Vec<usize>,
) -> Result<BisimplicialMap> {
    let mut cells = vec![vec![Vec::new(); top + 1]; top + 1];
    for p in 0..=top {
        for n in 0..=top - p {
            let mut map = vec![0; source[p][n].len()];
            for (s, &i) in &source[p][n] {
                map[i] = *target[p][n].get(&f(p, n, s)).ok_or_else(|| Error::Arithmetic("cell map leaves its target".into()))?;
            }
            cells[p][n] = map;
        }
    }
    Ok(BisimplicialMap { cells })
}

fn identity_map(set: &TruncatedSimplicialSet) -> SimplicialMap {
    SimplicialMap { levels: (0..=set.top()).map(|n| (0..set.size(n)).collect()).collect() }
}

/// One level of the pullback comparison.
#[derive(Clone, Debug, Serialize)]
pub struct PullbackLevel {
    pub level: usize,
    pub y_prime: usize,
    pub classifying_target: usize,
    pub wbar_h: usize,
    pub wbar_g: usize,
    pub pullback: usize,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FibrationReport {
    pub truncation: usize,
    pub kernel_orders: Vec<usize>,
    pub central: bool,
    pub levels: Vec<PullbackLevel>,
    /// `w`, `f`, the zero section and `W̄G → Y′` commute with all operators.
    pub maps_simplicial: bool,
    pub pullback_identity: bool,
    pub w_pi0_bijective: bool,
    pub y_prime_homology: Vec<HomologyGroup>,
    pub wbar_h_homology: Vec<HomologyGroup>,
    /// `w` induces an isomorphism on `H_0` and `H_1`.
    pub w_h1_iso: bool,
}

/// `Y′`, its maps to `W̄H` and `W̄[H ⋉ W̄A]`, and the verification report.
#[derive(Clone, Debug)]
pub struct FibrationData {
    pub y_prime: Codiagonal,
    pub w: SimplicialMap,
    pub f: SimplicialMap,
    pub classifying_target: Codiagonal,
    pub report: FibrationReport,
}

/// Builds `Y′ = W̄[W̄(G ⋉ A) ⇉ W̄G]` for the action groupoid of `A` on `G`,
/// the weak equivalence `w: Y′ → W̄H` and the map `f: Y′ → W̄[H ⋉ W̄A]`,
/// and checks elementwise that the pullback of `f` along the zero section
/// `W̄H → W̄[H ⋉ W̄A]` is `W̄G`.
pub fn fibration_data(ext: &SimplicialExtension, budget: &Budget) -> Result<FibrationData> {
    let top = ext.top();
    if top < 2 {
        return Err(Error::TruncationInsufficient { needed: 2, available: top });
    }
    if top > budget.max_truncation {
        return Err(Error::SearchBudgetExceeded(format!("truncation {top} exceeds {}", budget.max_truncation)));
    }
    let low = top - 1;
    let g = &ext.total;
    let h = &ext.base;
    let ga = pair_group(ext, g, &|_, y| y, low, budget)?;
    let ha = pair_group(ext, h, &|n, y| ext.sections[n][y], low, budget)?;

    let wg = wbar(g)?;
    let wh = wbar(h)?;
    let wga = wbar(&ga.group)?;
    let wha = wbar(&ha.group)?;

    let levels = |f: &dyn Fn(usize) -> Result<GroupHom>| (0..=low).map(f).collect::<Result<Vec<_>>>();
    let ga_source = levels(&|n| ga.hom_to(g.level(n), n, |x, _| x))?;
    let ga_target = levels(&|n| ga.hom_to(g.level(n), n, |x, a| g.level(n).mul(x, a)))?;
    let g_unit = levels(&|n| {
        let images = g.level(n).elements().map(|x| ga.index[n][&(x, 0)]).collect();
        GroupHom::from_images(g.level(n).clone(), ga.group.level(n).clone(), images)
    })?;
    let to_ha = levels(&|n| ga.hom_to(ha.group.level(n), n, |x, a| ha.index[n][&(ext.projection.levels[n].apply(x), a)]))?;
    let ha_base = levels(&|n| ha.hom_to(h.level(n), n, |x, _| x))?;
    let h_unit = levels(&|n| {
        let images = h.level(n).elements().map(|x| ha.index[n][&(x, 0)]).collect();
        GroupHom::from_images(h.level(n).clone(), ha.group.level(n).clone(), images)
    })?;

    let s_map = wga.map_to(&wg, &ga_source)?;
    let t_map = wga.map_to(&wg, &ga_target)?;
    let unit_g = wg.map_to(&wga, &g_unit)?;
    let q_map = wga.map_to(&wha, &to_ha)?;
    let base_map = wha.map_to(&wh, &ha_base)?;
    let unit_h = wh.map_to(&wha, &h_unit)?;
    let pi_map = wg.map_to(&wh, &ext.projection.levels)?;

    let compose_pairs = |space: &ClassifyingSpace, group: &PairGroup, n: usize, m: usize, m2: usize| -> usize {
        let e1 = space.entries(n, m);
        let e2 = space.entries(n, m2);
        let e: Vec<Vec<usize>> = e1
            .iter()
            .zip(&e2)
            .enumerate()
            .map(|(i, (u, v))| {
                let q = n - i;
                let kernel = ext.total.level(q);
                u.iter()
                    .zip(v)
                    .map(|(&x, &y)| {
                        let (g1, a1) = group.pairs[q][x];
                        let (_, a2) = group.pairs[q][y];
                        group.index[q][&(g1, kernel.mul(a1, a2))]
                    })
                    .collect()
            })
            .collect();
        space.find(n, &e).expect("composite of composable morphisms")
    };
    let compose_g = |n: usize, m: usize, m2: usize| compose_pairs(&wga, &ga, n, m, m2);
    let compose_h = |n: usize, m: usize, m2: usize| compose_pairs(&wha, &ha, n, m, m2);
    let compose_trivial = |_: usize, m: usize, _: usize| m;

    let action = Groupoid { objects: wg.set(), morphisms: wga.set(), source: &s_map, target: &t_map, unit: &unit_g, compose: &compose_g };
    let bundle = Groupoid { objects: wh.set(), morphisms: wha.set(), source: &base_map, target: &base_map, unit: &unit_h, compose: &compose_h };
    let id_g = identity_map(wg.set());
    let id_h = identity_map(wh.set());
    let discrete_g = Groupoid { objects: wg.set(), morphisms: wg.set(), source: &id_g, target: &id_g, unit: &id_g, compose: &compose_trivial };
    let discrete_h = Groupoid { objects: wh.set(), morphisms: wh.set(), source: &id_h, target: &id_h, unit: &id_h, compose: &compose_trivial };

    let (z, z_index) = groupoid_nerve(&action, top)?;
    let (z2, z2_index) = groupoid_nerve(&bundle, top)?;
    let (dg, dg_index) = groupoid_nerve(&discrete_g, top)?;
    let (dh, dh_index) = groupoid_nerve(&discrete_h, top)?;

    let y_prime = z.codiagonal()?;
    let target = z2.codiagonal()?;
    let ndg = dg.codiagonal()?;
    let ndh = dh.codiagonal()?;

    let to_bundle = cell_map(&z_index, &z2_index, top, |p, n, s| {
        if p == 0 {
            vec![pi_map.levels[n][s[0]]]
        } else {
            s.iter().map(|&m| q_map.levels[n][m]).collect()
        }
    })?;
    let zero_section = cell_map(&dh_index, &z2_index, top, |p, n, s| if p == 0 { s.to_vec() } else { vec![unit_h.levels[n][s[0]]; p] })?;
    let identities = cell_map(&dg_index, &z_index, top, |p, n, s| if p == 0 { s.to_vec() } else { vec![unit_g.levels[n][s[0]]; p] })?;
    let to_discrete = cell_map(&z_index, &dh_index, top, |p, n, s| {
        let object = if p == 0 { s[0] } else { s_map.levels[n][s[0]] };
        vec![pi_map.levels[n][object]; p.max(1)]
    })?;

    // ∇ of a discrete groupoid on Y is Y, via the first entry of each tuple
    let flatten = |cod: &Codiagonal| SimplicialMap { levels: cod.tuples.iter().map(|l| l.iter().map(|t| t[0]).collect()).collect() };
    let invert = |m: &SimplicialMap, sizes: &[usize]| -> Result<SimplicialMap> {
        let levels = m
            .levels
            .iter()
            .zip(sizes)
            .map(|(l, &s)| {
                let mut inv = vec![usize::MAX; s];
                for (x, &y) in l.iter().enumerate() {
                    inv[y] = x;
                }
                if l.len() != s || inv.contains(&usize::MAX) {
                    return Err(Error::Arithmetic("discrete codiagonal is not the original set".into()));
                }
                Ok(inv)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { levels })
    };
    let from_wg = invert(&flatten(&ndg), wg.set().sizes())?;
    let from_wh = invert(&flatten(&ndh), wh.set().sizes())?;

    let f = codiagonal_map(&y_prime, &target, &to_bundle)?;
    let zeta = from_wh.then(&codiagonal_map(&ndh, &target, &zero_section)?);
    let e = from_wg.then(&codiagonal_map(&ndg, &y_prime, &identities)?);
    let w = codiagonal_map(&y_prime, &ndh, &to_discrete)?.then(&flatten(&ndh));

    let maps_simplicial = f.check(&y_prime.set, &target.set).is_ok()
        && zeta.check(wh.set(), &target.set).is_ok()
        && e.check(wg.set(), &y_prime.set).is_ok()
        && w.check(&y_prime.set, wh.set()).is_ok()
        && pi_map.check(wg.set(), wh.set()).is_ok();

    let mut pullback_levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut zeta_inv: HashMap<usize, usize> = HashMap::new();
        let mut zeta_injective = true;
        for (z, &t) in zeta.levels[n].iter().enumerate() {
            zeta_injective &= zeta_inv.insert(t, z).is_none();
        }
        let pullback: Vec<(usize, usize)> =
            (0..y_prime.set.size(n)).filter_map(|y| zeta_inv.get(&f.levels[n][y]).map(|&z| (y, z))).collect();
        let mut hit = vec![false; y_prime.set.size(n)];
        let mut phi_ok = zeta_injective;
        for x in 0..wg.set().size(n) {
            let y = e.levels[n][x];
            phi_ok &= f.levels[n][y] == zeta.levels[n][pi_map.levels[n][x]];
            phi_ok &= !std::mem::replace(&mut hit[y], true);
        }
        let matches = phi_ok && pullback.len() == wg.set().size(n) && pullback.iter().all(|&(y, _)| hit[y]);
        pullback_levels.push(PullbackLevel {
            level: n,
            y_prime: y_prime.set.size(n),
            classifying_target: target.set.size(n),
            wbar_h: wh.set().size(n),
            wbar_g: wg.set().size(n),
            pullback: pullback.len(),
            matches,
        });
    }
    let pullback_identity = maps_simplicial && pullback_levels.iter().all(|l| l.matches);

    let (y_labels, y_count) = y_prime.set.components();
    let (h_labels, h_count) = wh.set().components();
    let mut component_image = vec![usize::MAX; y_count];
    let mut well_defined = true;
    for (v, &c) in y_labels.iter().enumerate() {
        let image = h_labels[w.levels[0][v]];
        well_defined &= std::mem::replace(&mut component_image[c], image) == usize::MAX || component_image[c] == image;
    }
    let mut sorted = component_image.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let w_pi0_bijective = well_defined && y_count == h_count && sorted.len() == h_count;

    let y_prime_homology = y_prime.set.homology(1)?;
    let wbar_h_homology = wh.set().homology(1)?;
    let cone = mapping_cone_homology(&w, &y_prime.set, wh.set(), 1)?;
    let w_h1_iso = cone.iter().all(|c| c.is_zero())
        && y_prime_homology.iter().zip(&wbar_h_homology).all(|(a, b)| (a.rank, &a.torsion) == (b.rank, &b.torsion));

    let report = FibrationReport {
        truncation: top,
        kernel_orders: ext.kernels.iter().map(|k| k.order()).collect(),
        central: ext.is_central(),
        levels: pullback_levels,
        maps_simplicial,
        pullback_identity,
        w_pi0_bijective,
        y_prime_homology,
        wbar_h_homology,
        w_h1_iso,
    };
    Ok(FibrationData { y_prime, w, f, classifying_target: target, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, quotient};

    #[test]
    fn central_extension_of_cyclic_groups() {
        let z4 = catalog::cyclic(4).unwrap();
        let two = Subgroup::generated(&z4, &[2]);
        let q = quotient(&z4, &two).unwrap();
        let ext = SimplicialExtension::constant(&q.projection, 3).unwrap();
        assert!(ext.is_central());
        let data = fibration_data(&ext, &Budget::default()).unwrap();
        let r = &data.report;
        assert!(r.maps_simplicial);
        assert!(r.pullback_identity, "{:?}", r.levels);
        assert!(r.w_pi0_bijective && r.w_h1_iso);
        assert_eq!(r.levels.iter().map(|l| l.pullback).collect::<Vec<_>>(), vec![1, 4, 16, 64]);
    }
}
