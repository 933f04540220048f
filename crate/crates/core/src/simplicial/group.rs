use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{quotient, same_group, AbelianDecomposition, FiniteGroup, GroupHom, GroupRef, Subgroup};
use crate::linalg::{lcm, Subquotient};

use super::bisimplicial::{Codiagonal, TruncatedBisimplicialSet};
use super::set::{SimplicialMap, TruncatedSimplicialSet, LEVEL_LIMIT};

/// Levels `G_0, …, G_N` of a simplicial group with homomorphisms as faces
/// and degeneracies.
#[derive(Clone, Debug)]
pub struct TruncatedSimplicialGroup {
    levels: Vec<GroupRef>,
    faces: Vec<Vec<GroupHom>>,
    degeneracies: Vec<Vec<GroupHom>>,
}

/// Levelwise homomorphisms between truncated simplicial groups.
#[derive(Clone, Debug)]
pub struct SimplicialGroupHom {
    pub levels: Vec<GroupHom>,
}

impl TruncatedSimplicialGroup {
    /// `faces[0]` is empty; `faces[n]` holds `∂_0, …, ∂_n`, and
    /// `degeneracies[n]` holds `σ_0, …, σ_n` on level `n < N`.
    pub fn new(levels: Vec<GroupRef>, faces: Vec<Vec<GroupHom>>, degeneracies: Vec<Vec<GroupHom>>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("a simplicial group needs level 0".into()));
        }
        let top = levels.len() - 1;
        let shape = || Error::Invalid("simplicial group operators have the wrong shape".into());
        if faces.len() != top + 1 || !faces[0].is_empty() || degeneracies.len() != top {
            return Err(shape());
        }
        for n in 1..=top {
            if faces[n].len() != n + 1
                || faces[n].iter().any(|f| !same_group(f.source(), &levels[n]) || !same_group(f.target(), &levels[n - 1]))
            {
                return Err(shape());
            }
        }
        for n in 0..top {
            if degeneracies[n].len() != n + 1
                || degeneracies[n].iter().any(|s| !same_group(s.source(), &levels[n]) || !same_group(s.target(), &levels[n + 1]))
            {
                return Err(shape());
            }
        }
        let g = TruncatedSimplicialGroup { levels, faces, degeneracies };
        g.underlying_set()?;
        Ok(g)
    }

    pub fn constant(g: &GroupRef, top: usize) -> Self {
        let id = GroupHom::identity(g);
        TruncatedSimplicialGroup {
            levels: vec![g.clone(); top + 1],
            faces: (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect(),
            degeneracies: (0..top).map(|n| vec![id.clone(); n + 1]).collect(),
        }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &GroupRef {
        &self.levels[n]
    }

    pub fn face(&self, n: usize, i: usize) -> &GroupHom {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &GroupHom {
        &self.degeneracies[n][i]
    }

    pub fn orders(&self) -> Vec<usize> {
        self.levels.iter().map(|g| g.order()).collect()
    }

    pub fn is_levelwise_abelian(&self) -> bool {
        self.levels.iter().all(|g| g.is_abelian())
    }

    pub fn truncate(&self, top: usize) -> Result<Self> {
        if top > self.top() {
            return Err(Error::TruncationInsufficient { needed: top, available: self.top() });
        }
        Ok(TruncatedSimplicialGroup {
            levels: self.levels[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degeneracies: self.degeneracies[..top].to_vec(),
        })
    }

    /// The underlying simplicial set, with the identities checked.
    pub fn underlying_set(&self) -> Result<TruncatedSimplicialSet> {
        TruncatedSimplicialSet::from_parts(
            self.levels.iter().map(|g| g.order()).collect(),
            self.faces.iter().map(|fs| fs.iter().map(|f| f.images().to_vec()).collect()).collect(),
            self.degeneracies.iter().map(|ss| ss.iter().map(|s| s.images().to_vec()).collect()).collect(),
        )
    }
}

impl SimplicialGroupHom {
    pub fn identity(g: &TruncatedSimplicialGroup) -> Self {
        SimplicialGroupHom { levels: g.levels.iter().map(GroupHom::identity).collect() }
    }

    /// Checks sources, targets and commutation with the simplicial operators.
    pub fn check(&self, source: &TruncatedSimplicialGroup, target: &TruncatedSimplicialGroup) -> Result<()> {
        if self.levels.len() != source.top() + 1 || source.top() != target.top() {
            return Err(Error::Invalid("levelwise map has the wrong number of levels".into()));
        }
        for (n, f) in self.levels.iter().enumerate() {
            if !same_group(f.source(), source.level(n)) || !same_group(f.target(), target.level(n)) {
                return Err(Error::Invalid(format!("levelwise map has the wrong groups at level {n}")));
            }
        }
        let map = SimplicialMap { levels: self.levels.iter().map(|f| f.images().to_vec()).collect() };
        map.check(&source.underlying_set()?, &target.underlying_set()?)
    }
}

/// Builds a group from a multiplication on `0..n` with `0`
/// the identity, choosing generators greedily.
pub(crate) fn group_from_mul(name: String, n: usize, mul: impl Fn(usize, usize) -> usize, max_order: usize) -> Result<GroupRef> {
    if n > max_order {
        return Err(Error::SearchBudgetExceeded(format!("group order {n} exceeds {max_order}")));
    }
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = mul(a, b) as u32;
        }
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0usize];
    let mut gens = Vec::new();
    for x in 0..n {
        if inside[x] {
            continue;
        }
        gens.push(x);
        let mut head = 0;
        while head < members.len() {
            let y = members[head];
            head += 1;
            for &g in &gens {
                let z = table[y * n + g] as usize;
                if !inside[z] {
                    inside[z] = true;
                    members.push(z);
                }
            }
        }
    }
    Ok(FiniteGroup::from_flat_checked(name, n, table, gens)?.into_ref())
}

/// `A × B` on pairs, with the pair behind every element.
pub(crate) fn product_group(a: &GroupRef, b: &GroupRef, max_order: usize) -> Result<(GroupRef, Vec<(usize, usize)>)> {
    let mut gens: Vec<(usize, usize)> = a.generators().iter().map(|&x| (x, 0)).collect();
    gens.extend(b.generators().iter().map(|&y| (0, y)));
    let (g, pairs) = FiniteGroup::from_closure(
        format!("{}x{}", a.name(), b.name()),
        (0usize, 0usize),
        &gens,
        |x, y| (a.mul(x.0, y.0), b.mul(x.1, y.1)),
        max_order,
    )?;
    Ok((g.into_ref(), pairs))
}

/// A levelwise product with the pair behind every element.
#[derive(Clone, Debug)]
pub struct SimplicialProduct {
    pub group: TruncatedSimplicialGroup,
    pub pairs: Vec<Vec<(usize, usize)>>,
    pub index: Vec<HashMap<(usize, usize), usize>>,
}

impl SimplicialProduct {
    pub fn new(a: &TruncatedSimplicialGroup, b: &TruncatedSimplicialGroup, budget: &Budget) -> Result<Self> {
        if a.top() != b.top() {
            return Err(Error::Invalid("factors have different truncations".into()));
        }
        let mut levels = Vec::new();
        let mut pairs = Vec::new();
        for n in 0..=a.top() {
            let (g, p) = product_group(a.level(n), b.level(n), budget.max_group_order)?;
            levels.push(g);
            pairs.push(p);
        }
        let index: Vec<HashMap<(usize, usize), usize>> =
            pairs.iter().map(|p| p.iter().enumerate().map(|(i, &x)| (x, i)).collect()).collect();
        let lift = |n: usize, m: usize, f: &GroupHom, g: &GroupHom| {
            let images = pairs[n].iter().map(|&(x, y)| index[m][&(f.apply(x), g.apply(y))]).collect();
            GroupHom::from_images(levels[n].clone(), levels[m].clone(), images)
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=a.top() {
            faces.push((0..=n).map(|i| lift(n, n - 1, a.face(n, i), b.face(n, i))).collect::<Result<Vec<_>>>()?);
        }
        let degeneracies = (0..a.top())
            .map(|n| (0..=n).map(|i| lift(n, n + 1, a.degeneracy(n, i), b.degeneracy(n, i))).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let group = TruncatedSimplicialGroup::new(levels, faces, degeneracies)?;
        Ok(SimplicialProduct { group, pairs, index })
    }

    /// `f × g` levelwise, into another product.
    pub fn map_to(&self, target: &SimplicialProduct, f: &SimplicialGroupHom, g: &SimplicialGroupHom) -> Result<SimplicialGroupHom> {
        let levels = (0..=self.group.top())
            .map(|n| {
                let images = self.pairs[n].iter().map(|&(x, y)| target.index[n][&(f.levels[n].apply(x), g.levels[n].apply(y))]).collect();
                GroupHom::from_images(self.group.level(n).clone(), target.group.level(n).clone(), images)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialGroupHom { levels })
    }
}

/// A bounded chain complex `C_K → … → C_0` of finite abelian groups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteChainComplex {
    /// Cyclic factors of each `C_k`.
    pub factors: Vec<Vec<i64>>,
    /// `differentials[k-1][j]` is the image in `C_{k-1}` of the `j`-th
    /// generator of `C_k`.
    pub differentials: Vec<Vec<Vec<i64>>>,
}

impl FiniteChainComplex {
    pub fn validate(&self) -> Result<()> {
        if self.differentials.len() + 1 != self.factors.len().max(1) {
            return Err(Error::Invalid("one differential per positive degree is required".into()));
        }
        if self.factors.iter().flatten().any(|&d| d < 2) {
            return Err(Error::Invalid("cyclic factors must be at least 2".into()));
        }
        for (k, d) in self.differentials.iter().enumerate().map(|(k, d)| (k + 1, d)) {
            if d.len() != self.factors[k].len() || d.iter().any(|v| v.len() != self.factors[k - 1].len()) {
                return Err(Error::Invalid(format!("differential d_{k} has the wrong shape")));
            }
            for (v, &m) in d.iter().zip(&self.factors[k]) {
                if v.iter().zip(&self.factors[k - 1]).any(|(&x, &t)| (x * m).rem_euclid(t) != 0) {
                    return Err(Error::Invalid(format!("differential d_{k} is not well defined")));
                }
            }
        }
        for k in 2..self.factors.len() {
            for j in 0..self.factors[k].len() {
                let mut e = vec![0; self.factors[k].len()];
                e[j] = 1;
                if self.apply(k - 1, &self.apply(k, &e)).iter().any(|&x| x != 0) {
                    return Err(Error::Invalid(format!("d_{} d_{k} is not zero", k - 1)));
                }
            }
        }
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.factors.len().saturating_sub(1)
    }

    /// `d_k x` for `x ∈ C_k`.
    pub fn apply(&self, k: usize, x: &[i64]) -> Vec<i64> {
        let target = &self.factors[k - 1];
        let mut out = vec![0i64; target.len()];
        for (v, &c) in self.differentials[k - 1].iter().zip(x) {
            for ((o, &y), &t) in out.iter_mut().zip(v).zip(target) {
                *o = (*o + c * y).rem_euclid(t);
            }
        }
        out
    }

    /// Invariant factors of `H_k = ker d_k / im d_{k+1}`.
    pub fn homology(&self, k: usize) -> Result<Vec<i64>> {
        let Some(fk) = self.factors.get(k) else { return Ok(Vec::new()) };
        if fk.is_empty() {
            return Ok(Vec::new());
        }
        let e = fk.iter().fold(1, |acc, &d| lcm(acc, d));
        let scale = |v: &[i64]| -> Vec<i64> { v.iter().zip(fk).map(|(&x, &d)| x.rem_euclid(d) * (e / d)).collect() };
        let elements = crate::linalg::enumerate_mixed_radix(fk);
        let cycles: Vec<Vec<i64>> = elements
            .iter()
            .filter(|x| k == 0 || self.apply(k, x).iter().all(|&y| y == 0))
            .map(|x| scale(x))
            .collect();
        let boundaries: Vec<Vec<i64>> = match self.factors.get(k + 1) {
            Some(up) => (0..up.len())
                .map(|j| {
                    let mut u = vec![0; up.len()];
                    u[j] = 1;
                    scale(&self.apply(k + 1, &u))
                })
                .collect(),
            None => Vec::new(),
        };
        Ok(Subquotient::new(cycles, boundaries, fk.len(), e)?.invariants().to_vec())
    }
}

/// Monotone surjections `[n] ↠ [k]` as value arrays.
fn surjections(n: usize, k: usize) -> Vec<Vec<usize>> {
    super::bisimplicial::monotone_sequences(n + 1, k + 1)
        .into_iter()
        .filter(|s| s[0] == 0 && s[n] == k && s.windows(2).all(|w| w[1] - w[0] <= 1))
        .collect()
}

/// The simplicial abelian group `Γ(C)` with `Γ(C)_n = ⊕_{[n] ↠ [k]} C_k`.
///
/// For `θ: [m] → [n]` the summand of `σ: [n] ↠ [k]` goes to the summand of
/// `τ` where `σθ = ιτ` is the epi-mono factorization: identically when `ι`
/// is the identity, by `d_k` when `ι` misses only the vertex `0`, and to
/// zero otherwise. Its Moore complex is `C` with differential `∂_0`.
pub fn dold_kan(complex: &FiniteChainComplex, top: usize, budget: &Budget) -> Result<TruncatedSimplicialGroup> {
    complex.validate()?;
    let kmax = complex.max_degree();
    let summands: Vec<Vec<(Vec<usize>, usize)>> = (0..=top)
        .map(|n| (0..=n.min(kmax)).flat_map(|k| surjections(n, k).into_iter().map(move |s| (s, k))).collect())
        .collect();
    let positions: Vec<HashMap<(Vec<usize>, usize), usize>> =
        summands.iter().map(|ss| ss.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let layouts: Vec<(Vec<usize>, Vec<i64>)> = summands
        .iter()
        .map(|ss| {
            let mut offsets = Vec::with_capacity(ss.len());
            let mut factors = Vec::new();
            for (_, k) in ss {
                offsets.push(factors.len());
                factors.extend_from_slice(&complex.factors[*k]);
            }
            (offsets, factors)
        })
        .collect();
    let mut levels = Vec::with_capacity(top + 1);
    let mut coords: Vec<Vec<Vec<i64>>> = Vec::with_capacity(top + 1);
    let mut index: Vec<HashMap<Vec<i64>, usize>> = Vec::with_capacity(top + 1);
    for (n, (_, factors)) in layouts.iter().enumerate() {
        let size = factors.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d as usize)).unwrap_or(usize::MAX);
        if size > budget.max_group_order {
            return Err(Error::SearchBudgetExceeded(format!("level {n} of the Dold-Kan construction has order {size}")));
        }
        let gens: Vec<Vec<i64>> = (0..factors.len())
            .map(|j| {
                let mut e = vec![0; factors.len()];
                e[j] = 1;
                e
            })
            .collect();
        let add = |a: &Vec<i64>, b: &Vec<i64>| a.iter().zip(b).zip(factors).map(|((x, y), &d)| (x + y).rem_euclid(d)).collect::<Vec<i64>>();
        let (g, elems) = FiniteGroup::from_closure(format!("DK{n}"), vec![0; factors.len()], &gens, add, budget.max_group_order)?;
        index.push(elems.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect());
        coords.push(elems);
        levels.push(g.into_ref());
    }
    let operator = |n: usize, m: usize, theta: &[usize]| -> Result<GroupHom> {
        let (off_n, _) = &layouts[n];
        let (off_m, fac_m) = &layouts[m];
        let images = coords[n]
            .iter()
            .map(|x| {
                let mut out = vec![0i64; fac_m.len()];
                for (s, (sigma, k)) in summands[n].iter().enumerate() {
                    let part = &x[off_n[s]..off_n[s] + complex.factors[*k].len()];
                    if part.iter().all(|&v| v == 0) {
                        continue;
                    }
                    let comp: Vec<usize> = theta.iter().map(|&t| sigma[t]).collect();
                    let mut image = comp.clone();
                    image.dedup();
                    let tau: Vec<usize> = comp.iter().map(|v| image.binary_search(v).expect("value in image")).collect();
                    let (value, degree) = if image.len() == k + 1 {
                        (part.to_vec(), *k)
                    } else if image.len() == *k && image[0] == 1 {
                        (complex.apply(*k, part), k - 1)
                    } else {
                        continue;
                    };
                    let t = positions[m][&(tau, degree)];
                    let start = off_m[t];
                    for (j, v) in value.iter().enumerate() {
                        out[start + j] = (out[start + j] + v).rem_euclid(fac_m[start + j]);
                    }
                }
                index[m][&out]
            })
            .collect();
        GroupHom::from_images(levels[n].clone(), levels[m].clone(), images)
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let fs = (0..=n)
            .map(|i| {
                let theta: Vec<usize> = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
                operator(n, n - 1, &theta)
            })
            .collect::<Result<Vec<_>>>()?;
        faces.push(fs);
    }
    let degeneracies = (0..top)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let theta: Vec<usize> = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
                    operator(n, n + 1, &theta)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    TruncatedSimplicialGroup::new(levels, faces, degeneracies)
}

fn power(base: usize, exp: usize) -> Result<usize> {
    base.checked_pow(exp as u32)
        .filter(|&s| s <= LEVEL_LIMIT)
        .ok_or_else(|| Error::SearchBudgetExceeded(format!("{base}^{exp} simplices in one bidegree")))
}

fn decode(mut idx: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = idx % base;
            idx /= base;
            d
        })
        .collect()
}

fn encode(digits: &[usize], base: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * base + d)
}

/// The nerve on the full square `(p, q) ≤ (N, N)`.
pub fn nerve(g: &TruncatedSimplicialGroup) -> Result<TruncatedBisimplicialSet> {
    nerve_within(g, 2 * g.top())
}

/// `(BG)_{p,q} = (G_q)^p` on the bidegrees with `p + q ≤ max_total`.
/// Horizontally it is the nerve of each `G_q`: `∂_0` drops the first entry,
/// `∂_p` the last, inner faces multiply neighbours, and `σ_i` inserts the
/// identity. Vertical operators act entrywise. The tuple with entries
/// `g_1, …, g_p` has index `Σ g_j |G_q|^{j-1}`.
pub fn nerve_within(g: &TruncatedSimplicialGroup, max_total: usize) -> Result<TruncatedBisimplicialSet> {
    let bound = g.top();
    for p in 0..=bound {
        for q in 0..=bound {
            if p + q <= max_total {
                power(g.level(q).order(), p)?;
            }
        }
    }
    let (set, _) = TruncatedBisimplicialSet::build(
        bound,
        max_total,
        |p, q| {
            let k = g.level(q).order();
            (0..k.pow(p as u32)).collect::<Vec<usize>>()
        },
        |p, q, i, &x| {
            let k = g.level(q).order();
            let mut t = decode(x, k, p);
            if i == 0 {
                t.remove(0);
            } else if i == p {
                t.pop();
            } else {
                let m = g.level(q).mul(t[i - 1], t[i]);
                t[i - 1] = m;
                t.remove(i);
            }
            encode(&t, k)
        },
        |p, q, j, &x| {
            let t = decode(x, g.level(q).order(), p);
            let f = g.face(q, j);
            encode(&t.iter().map(|&y| f.apply(y)).collect::<Vec<_>>(), g.level(q - 1).order())
        },
        |p, q, i, &x| {
            let k = g.level(q).order();
            let mut t = decode(x, k, p);
            t.insert(i, 0);
            encode(&t, k)
        },
        |p, q, j, &x| {
            let t = decode(x, g.level(q).order(), p);
            let s = g.degeneracy(q, j);
            encode(&t.iter().map(|&y| s.apply(y)).collect::<Vec<_>>(), g.level(q + 1).order())
        },
    )?;
    Ok(set)
}

/// `W̄G = ∇BG` together with the group elements behind its simplices.
#[derive(Clone, Debug)]
pub struct ClassifyingSpace {
    pub group: TruncatedSimplicialGroup,
    pub codiagonal: Codiagonal,
}

impl ClassifyingSpace {
    pub fn set(&self) -> &TruncatedSimplicialSet {
        &self.codiagonal.set
    }

    /// Entries of a simplex of level `n`: position `i` lists `i` elements of
    /// `G_{n-i}`.
    pub fn entries(&self, n: usize, x: usize) -> Vec<Vec<usize>> {
        self.codiagonal.tuples[n][x]
            .iter()
            .enumerate()
            .map(|(i, &c)| decode(c, self.group.level(n - i).order(), i))
            .collect()
    }

    pub fn find(&self, n: usize, entries: &[Vec<usize>]) -> Option<usize> {
        let tuple: Vec<usize> = entries.iter().enumerate().map(|(i, e)| encode(e, self.group.level(n - i).order())).collect();
        self.codiagonal.find(n, &tuple)
    }

    /// The simplicial map induced by levelwise homomorphisms; the target may
    /// be truncated lower than the source.
    pub fn map_to(&self, target: &ClassifyingSpace, homs: &[GroupHom]) -> Result<SimplicialMap> {
        let top = self.set().top().min(target.set().top());
        let levels = (0..=top)
            .map(|n| {
                (0..self.set().size(n))
                    .map(|x| {
                        let image: Vec<Vec<usize>> = self
                            .entries(n, x)
                            .iter()
                            .enumerate()
                            .map(|(i, e)| e.iter().map(|&y| homs[n - i].apply(y)).collect())
                            .collect();
                        target.find(n, &image).ok_or_else(|| Error::Arithmetic("induced map leaves the classifying space".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SimplicialMap { levels })
    }
}

/// `W̄G := ∇BG`, built from the bidegrees `p + q ≤ N`.
pub fn wbar(g: &TruncatedSimplicialGroup) -> Result<ClassifyingSpace> {
    let top = g.top();
    let b = nerve_within(g, top)?;
    let codiagonal = b.codiagonal_to(top)?;
    Ok(ClassifyingSpace { group: g.clone(), codiagonal })
}

/// `W̄A` for levelwise abelian `A`, as a simplicial abelian group under
/// entrywise multiplication.
pub fn wbar_group(a: &TruncatedSimplicialGroup, budget: &Budget) -> Result<(TruncatedSimplicialGroup, ClassifyingSpace)> {
    if !a.is_levelwise_abelian() {
        return Err(Error::NotAbelian);
    }
    let w = wbar(a)?;
    let top = a.top();
    let mut levels = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let size = w.set().size(n);
        if size > budget.max_group_order {
            return Err(Error::SearchBudgetExceeded(format!("level {n} of the classifying space has {size} simplices")));
        }
        let entries: Vec<Vec<Vec<usize>>> = (0..size).map(|x| w.entries(n, x)).collect();
        let product = |x: usize, y: usize| {
            let e: Vec<Vec<usize>> = entries[x]
                .iter()
                .zip(&entries[y])
                .enumerate()
                .map(|(i, (u, v))| u.iter().zip(v).map(|(&s, &t)| a.level(n - i).mul(s, t)).collect())
                .collect();
            w.find(n, &e).expect("the codiagonal of an abelian nerve is closed under products")
        };
        let identity = w.find(n, &(0..=n).map(|i| vec![0; i]).collect::<Vec<_>>()).expect("identity simplex");
        if identity != 0 {
            return Err(Error::Arithmetic("identity simplex is not listed first".into()));
        }
        levels.push(group_from_mul(format!("WA{n}"), size, product, budget.max_group_order)?);
    }
    let set = w.set();
    let hom = |n: usize, m: usize, images: &[usize]| GroupHom::from_images(levels[n].clone(), levels[m].clone(), images.to_vec());
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        faces.push((0..=n).map(|i| hom(n, n - 1, set.face_map(n, i))).collect::<Result<Vec<_>>>()?);
    }
    let degeneracies = (0..top)
        .map(|n| (0..=n).map(|i| hom(n, n + 1, set.degeneracy_map(n, i))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((TruncatedSimplicialGroup::new(levels, faces, degeneracies)?, w))
}

/// Members of the Moore normalization `N_n = ∩_{i>0} ker ∂_i`.
fn normalized(g: &TruncatedSimplicialGroup, n: usize) -> Vec<usize> {
    g.level(n).elements().filter(|&x| (1..=n).all(|i| g.face(n, i).apply(x) == 0)).collect()
}

/// Moore cycles `N_n ∩ ker ∂_0` and boundaries `∂_0 N_{n+1}` in degree `n`.
fn moore_pieces(g: &TruncatedSimplicialGroup, n: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if n + 1 > g.top() {
        return Err(Error::TruncationInsufficient { needed: n + 1, available: g.top() });
    }
    let cycles: Vec<usize> = normalized(g, n).into_iter().filter(|&x| n == 0 || g.face(n, 0).apply(x) == 0).collect();
    let mut boundaries: Vec<usize> = normalized(g, n + 1).into_iter().map(|y| g.face(n + 1, 0).apply(y)).collect();
    boundaries.sort_unstable();
    boundaries.dedup();
    Ok((cycles, boundaries))
}

/// `|π_n| = |Z_n| / |B_n|` for `n < N`, valid for any simplicial group.
pub fn moore_orders(g: &TruncatedSimplicialGroup) -> Result<Vec<usize>> {
    (0..g.top())
        .map(|n| {
            let (z, b) = moore_pieces(g, n)?;
            Ok(z.len() / b.len())
        })
        .collect()
}

/// Invariant factors of `π_n` for `n < N`, from the normalized chain
/// complex of a levelwise abelian simplicial group.
pub fn moore_homotopy(g: &TruncatedSimplicialGroup) -> Result<Vec<Vec<i64>>> {
    if !g.is_levelwise_abelian() {
        return Err(Error::NotAbelian);
    }
    let mut out = Vec::with_capacity(g.top());
    for n in 0..g.top() {
        let (cycles, boundaries) = moore_pieces(g, n)?;
        let level = g.level(n);
        let dec = AbelianDecomposition::new(level, &Subgroup::whole(level))?;
        let factors = dec.factors();
        if factors.is_empty() {
            out.push(Vec::new());
            continue;
        }
        let e = factors.iter().fold(1, |acc, &d| lcm(acc, d));
        let scale = |x: usize| -> Vec<i64> {
            dec.coordinates(x).expect("element of the level").iter().zip(factors).map(|(&c, &d)| c * (e / d)).collect()
        };
        let q = Subquotient::new(cycles.iter().map(|&x| scale(x)).collect(), boundaries.iter().map(|&x| scale(x)).collect(), factors.len(), e)?;
        out.push(q.invariants().to_vec());
    }
    Ok(out)
}

/// `π_0` of a simplicial group, abelian or not: the coequalizer of `∂_0, ∂_1`,
/// which is `G_0 / ∂_0(ker ∂_1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pi0 {
    pub order: usize,
    /// Invariant factors when the quotient is abelian.
    pub invariants: Option<Vec<i64>>,
}

pub fn pi0(g: &TruncatedSimplicialGroup) -> Result<Pi0> {
    let (_, boundaries) = moore_pieces(g, 0)?;
    let level = g.level(0);
    let n = Subgroup::from_members(level, &boundaries)?;
    let q = quotient(level, &n)?;
    let invariants = if q.group.is_abelian() {
        Some(AbelianDecomposition::new(&q.group, &Subgroup::whole(&q.group))?.factors().to_vec())
    } else {
        None
    };
    Ok(Pi0 { order: q.group.order(), invariants })
}
