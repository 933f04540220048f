use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};

use super::set::{check_identities, index_of, lookup_all, SimplicialMap, TruncatedSimplicialSet};

/// One bidegree `(p, q)` of a bisimplicial set. Horizontal operators change
/// `p`, vertical ones change `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub size: usize,
    pub h_faces: Vec<Vec<usize>>,
    pub v_faces: Vec<Vec<usize>>,
    pub h_degeneracies: Vec<Vec<usize>>,
    pub v_degeneracies: Vec<Vec<usize>>,
}

/// The bidegrees `(p, q)` with `p, q ≤ N` and `p + q ≤ max_total` of a
/// bisimplicial set. The full square has `max_total = 2N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedBisimplicialSet {
    bound: usize,
    max_total: usize,
    cells: Vec<Vec<Option<Cell>>>,
}

/// A map of bisimplicial sets given cell by cell.
#[derive(Clone, Debug)]
pub struct BisimplicialMap {
    pub cells: Vec<Vec<Vec<usize>>>,
}

/// `∇X` with the tuple `(x_0, …, x_p)` behind every simplex.
#[derive(Clone, Debug)]
pub struct Codiagonal {
    pub set: TruncatedSimplicialSet,
    pub tuples: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Codiagonal {
    pub fn find(&self, n: usize, tuple: &[usize]) -> Option<usize> {
        self.index[n].get(tuple).copied()
    }
}

impl TruncatedBisimplicialSet {
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn has(&self, p: usize, q: usize) -> bool {
        p <= self.bound && q <= self.bound && p + q <= self.max_total
    }

    pub fn cell(&self, p: usize, q: usize) -> &Cell {
        self.cells[p][q].as_ref().expect("bidegree inside the truncation")
    }

    pub fn size(&self, p: usize, q: usize) -> usize {
        self.cell(p, q).size
    }

    /// Builds every cell from explicit element lists and operators on
    /// elements, then checks the bisimplicial identities.
    pub fn build<T, E, HF, VF, HD, VD>(
        bound: usize,
        max_total: usize,
        elements: E,
        h_face: HF,
        v_face: VF,
        h_degeneracy: HD,
        v_degeneracy: VD,
    ) -> Result<(Self, Vec<Vec<Vec<T>>>)>
    where
        T: Clone + Eq + Hash,
        E: Fn(usize, usize) -> Vec<T>,
        HF: Fn(usize, usize, usize, &T) -> T,
        VF: Fn(usize, usize, usize, &T) -> T,
        HD: Fn(usize, usize, usize, &T) -> T,
        VD: Fn(usize, usize, usize, &T) -> T,
    {
        let has = |p: usize, q: usize| p <= bound && q <= bound && p + q <= max_total;
        let mut elems: Vec<Vec<Vec<T>>> = vec![vec![Vec::new(); bound + 1]; bound + 1];
        let mut index: Vec<Vec<HashMap<T, usize>>> = vec![vec![HashMap::new(); bound + 1]; bound + 1];
        for p in 0..=bound {
            for q in 0..=bound {
                if has(p, q) {
                    elems[p][q] = elements(p, q);
                    index[p][q] = index_of(&elems[p][q])?;
                }
            }
        }
        let mut cells: Vec<Vec<Option<Cell>>> = vec![vec![None; bound + 1]; bound + 1];
        for p in 0..=bound {
            for q in 0..=bound {
                if !has(p, q) {
                    continue;
                }
                let xs = &elems[p][q];
                let maps = |range: usize, tgt: &HashMap<T, usize>, op: &dyn Fn(usize, &T) -> T, what: &str| {
                    (0..range).map(|i| lookup_all(tgt, xs.iter().map(|x| op(i, x)), what)).collect::<Result<Vec<_>>>()
                };
                let h_faces = if p > 0 { maps(p + 1, &index[p - 1][q], &|i, x| h_face(p, q, i, x), "a horizontal face")? } else { Vec::new() };
                let v_faces = if q > 0 { maps(q + 1, &index[p][q - 1], &|i, x| v_face(p, q, i, x), "a vertical face")? } else { Vec::new() };
                let h_degeneracies = if has(p + 1, q) {
                    maps(p + 1, &index[p + 1][q], &|i, x| h_degeneracy(p, q, i, x), "a horizontal degeneracy")?
                } else {
                    Vec::new()
                };
                let v_degeneracies = if has(p, q + 1) {
                    maps(q + 1, &index[p][q + 1], &|i, x| v_degeneracy(p, q, i, x), "a vertical degeneracy")?
                } else {
                    Vec::new()
                };
                cells[p][q] = Some(Cell { size: xs.len(), h_faces, v_faces, h_degeneracies, v_degeneracies });
            }
        }
        let set = TruncatedBisimplicialSet { bound, max_total, cells };
        set.check()?;
        Ok((set, elems))
    }

    /// Simplicial identities along every row and column, and commutation of
    /// horizontal with vertical operators.
    pub fn check(&self) -> Result<()> {
        for q in 0..=self.bound {
            let ps: Vec<usize> = (0..=self.bound).take_while(|&p| self.has(p, q)).collect();
            if ps.is_empty() {
                continue;
            }
            let sizes: Vec<usize> = ps.iter().map(|&p| self.size(p, q)).collect();
            let faces: Vec<Vec<Vec<usize>>> = ps.iter().map(|&p| self.cell(p, q).h_faces.clone()).collect();
            let degens: Vec<Vec<Vec<usize>>> = ps[..ps.len() - 1].iter().map(|&p| self.cell(p, q).h_degeneracies.clone()).collect();
            check_identities(&sizes, &faces, &degens)?;
        }
        for p in 0..=self.bound {
            let qs: Vec<usize> = (0..=self.bound).take_while(|&q| self.has(p, q)).collect();
            if qs.is_empty() {
                continue;
            }
            let sizes: Vec<usize> = qs.iter().map(|&q| self.size(p, q)).collect();
            let faces: Vec<Vec<Vec<usize>>> = qs.iter().map(|&q| self.cell(p, q).v_faces.clone()).collect();
            let degens: Vec<Vec<Vec<usize>>> = qs[..qs.len() - 1].iter().map(|&q| self.cell(p, q).v_degeneracies.clone()).collect();
            check_identities(&sizes, &faces, &degens)?;
        }
        let fail = |p: usize, q: usize| Err(Error::Invalid(format!("horizontal and vertical operators do not commute at ({p},{q})")));
        for p in 0..=self.bound {
            for q in 0..=self.bound {
                if !self.has(p, q) {
                    continue;
                }
                let c = self.cell(p, q);
                for x in 0..c.size {
                    for (i, hf) in c.h_faces.iter().enumerate() {
                        for (j, vf) in c.v_faces.iter().enumerate() {
                            if self.cell(p - 1, q).v_faces[j][hf[x]] != self.cell(p, q - 1).h_faces[i][vf[x]] {
                                return fail(p, q);
                            }
                        }
                        for (j, vd) in c.v_degeneracies.iter().enumerate() {
                            if self.cell(p - 1, q).v_degeneracies[j][hf[x]] != self.cell(p, q + 1).h_faces[i][vd[x]] {
                                return fail(p, q);
                            }
                        }
                    }
                    for (i, hd) in c.h_degeneracies.iter().enumerate() {
                        for (j, vf) in c.v_faces.iter().enumerate() {
                            if self.cell(p + 1, q).v_faces[j][hd[x]] != self.cell(p, q - 1).h_degeneracies[i][vf[x]] {
                                return fail(p, q);
                            }
                        }
                        if self.has(p + 1, q + 1) {
                            for (j, vd) in c.v_degeneracies.iter().enumerate() {
                                if self.cell(p + 1, q).v_degeneracies[j][hd[x]] != self.cell(p, q + 1).h_degeneracies[i][vd[x]] {
                                    return fail(p, q);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Highest level of `∇X` that the truncation determines.
    pub fn codiagonal_top(&self) -> usize {
        self.bound.min(self.max_total)
    }

    /// Highest level of `diag X` inside the truncation.
    pub fn diagonal_top(&self) -> usize {
        self.bound.min(self.max_total / 2)
    }

    pub fn codiagonal(&self) -> Result<Codiagonal> {
        self.codiagonal_to(self.codiagonal_top())
    }

    /// `∇_p X = {(x_0, …, x_p) : x_i ∈ X_{i,p-i}, ∂ᵛ_0 x_i = ∂ʰ_{i+1} x_{i+1}}`
    /// with
    /// `∂_i x = (∂ᵛ_i x_0, …, ∂ᵛ_1 x_{i-1}, ∂ʰ_i x_{i+1}, …, ∂ʰ_i x_p)` and
    /// `σ_i x = (σᵛ_i x_0, …, σᵛ_0 x_i, σʰ_i x_i, …, σʰ_i x_p)`.
    pub fn codiagonal_to(&self, top: usize) -> Result<Codiagonal> {
        if top > self.codiagonal_top() {
            return Err(Error::TruncationInsufficient { needed: top, available: self.codiagonal_top() });
        }
        let mut tuples: Vec<Vec<Vec<usize>>> = Vec::with_capacity(top + 1);
        for p in 0..=top {
            // preimages of the last horizontal face X_{i+1,p-i-1} → X_{i,p-i-1}
            let pre: Vec<Vec<Vec<usize>>> = (0..p)
                .map(|i| {
                    let c = self.cell(i + 1, p - i - 1);
                    let mut out = vec![Vec::new(); self.size(i, p - i - 1)];
                    for (y, &t) in c.h_faces[i + 1].iter().enumerate() {
                        out[t].push(y);
                    }
                    out
                })
                .collect();
            let mut level = Vec::new();
            let mut stack: Vec<Vec<usize>> = (0..self.size(0, p)).map(|x| vec![x]).collect();
            while let Some(t) = stack.pop() {
                let i = t.len() - 1;
                if i == p {
                    level.push(t);
                    if level.len() > super::set::LEVEL_LIMIT {
                        return Err(Error::SearchBudgetExceeded(format!("codiagonal level {p} is too large")));
                    }
                    continue;
                }
                let below = self.cell(i, p - i).v_faces[0][t[i]];
                for &y in pre[i][below].iter().rev() {
                    let mut u = t.clone();
                    u.push(y);
                    stack.push(u);
                }
            }
            level.sort();
            tuples.push(level);
        }
        let index: Vec<HashMap<Vec<usize>, usize>> = tuples.iter().map(|l| index_of(l)).collect::<Result<_>>()?;
        let look = |n: usize, t: Vec<usize>| {
            index[n].get(&t).copied().ok_or_else(|| Error::Arithmetic("codiagonal operator left the codiagonal".into()))
        };
        let mut faces = vec![Vec::new()];
        for p in 1..=top {
            let mut maps = Vec::with_capacity(p + 1);
            for i in 0..=p {
                let map = tuples[p]
                    .iter()
                    .map(|x| {
                        let t: Vec<usize> = (0..p)
                            .map(|j| {
                                if j < i {
                                    self.cell(j, p - j).v_faces[i - j][x[j]]
                                } else {
                                    self.cell(j + 1, p - j - 1).h_faces[i][x[j + 1]]
                                }
                            })
                            .collect();
                        look(p - 1, t)
                    })
                    .collect::<Result<Vec<_>>>()?;
                maps.push(map);
            }
            faces.push(maps);
        }
        let mut degeneracies = Vec::with_capacity(top);
        for p in 0..top {
            let mut maps = Vec::with_capacity(p + 1);
            for i in 0..=p {
                let map = tuples[p]
                    .iter()
                    .map(|x| {
                        let t: Vec<usize> = (0..=p + 1)
                            .map(|j| {
                                if j <= i {
                                    self.cell(j, p - j).v_degeneracies[i - j][x[j]]
                                } else {
                                    self.cell(j - 1, p + 1 - j).h_degeneracies[i][x[j - 1]]
                                }
                            })
                            .collect();
                        look(p + 1, t)
                    })
                    .collect::<Result<Vec<_>>>()?;
                maps.push(map);
            }
            degeneracies.push(maps);
        }
        let sizes = tuples.iter().map(|l| l.len()).collect();
        let set = TruncatedSimplicialSet::from_parts(sizes, faces, degeneracies)?;
        Ok(Codiagonal { set, tuples, index })
    }

    /// `(diag X)_n = X_{n,n}` with `∂_i = ∂ʰ_i ∂ᵛ_i` and `σ_i = σʰ_i σᵛ_i`.
    pub fn diagonal(&self) -> Result<TruncatedSimplicialSet> {
        let top = self.diagonal_top();
        let sizes: Vec<usize> = (0..=top).map(|n| self.size(n, n)).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let c = self.cell(n, n);
            faces.push((0..=n).map(|i| c.v_faces[i].iter().map(|&y| self.cell(n, n - 1).h_faces[i][y]).collect()).collect());
        }
        let degeneracies = (0..top)
            .map(|n| {
                let c = self.cell(n, n);
                (0..=n).map(|i| c.v_degeneracies[i].iter().map(|&y| self.cell(n, n + 1).h_degeneracies[i][y]).collect()).collect()
            })
            .collect();
        TruncatedSimplicialSet::from_parts(sizes, faces, degeneracies)
    }

    /// The natural map `diag X → ∇X`, sending `x ∈ X_{n,n}` to the tuple with
    /// `x_i` obtained by keeping horizontal vertices `0..=i` and vertical
    /// vertices `i..=n`.
    pub fn diagonal_to_codiagonal(&self, cod: &Codiagonal) -> Result<SimplicialMap> {
        let top = self.diagonal_top().min(cod.set.top());
        let mut levels = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let map = (0..self.size(n, n))
                .map(|x| {
                    let t: Vec<usize> = (0..=n)
                        .map(|i| {
                            let mut y = x;
                            for k in 0..i {
                                y = self.cell(n, n - k).v_faces[0][y];
                            }
                            for m in (i + 1..=n).rev() {
                                y = self.cell(m, n - i).h_faces[m][y];
                            }
                            y
                        })
                        .collect();
                    cod.find(n, &t).ok_or_else(|| Error::Arithmetic("diagonal simplex has no codiagonal image".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            levels.push(map);
        }
        Ok(SimplicialMap { levels })
    }
}

/// The map `∇X → ∇Y` induced by a cellwise map.
pub fn codiagonal_map(source: &Codiagonal, target: &Codiagonal, map: &BisimplicialMap) -> Result<SimplicialMap> {
    let top = source.set.top().min(target.set.top());
    let levels = (0..=top)
        .map(|p| {
            source.tuples[p]
                .iter()
                .map(|t| {
                    let image: Vec<usize> = t.iter().enumerate().map(|(i, &x)| map.cells[i][p - i][x]).collect();
                    target.find(p, &image).ok_or_else(|| Error::Arithmetic("cell map does not preserve the codiagonal".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap { levels })
}

/// External product `(S ⊠ T)_{p,q} = S_p × T_q`.
pub fn external_product(s: &TruncatedSimplicialSet, t: &TruncatedSimplicialSet) -> Result<TruncatedBisimplicialSet> {
    let bound = s.top().min(t.top());
    let (set, _) = TruncatedBisimplicialSet::build(
        bound,
        2 * bound,
        |p, q| (0..s.size(p)).flat_map(|a| (0..t.size(q)).map(move |b| (a, b))).collect(),
        |p, _, i, &(a, b)| (s.face(p, i, a), b),
        |_, q, j, &(a, b)| (a, t.face(q, j, b)),
        |p, _, i, &(a, b)| (s.degeneracy(p, i, a), b),
        |_, q, j, &(a, b)| (a, t.degeneracy(q, j, b)),
    )?;
    Ok(set)
}

/// The bisimplicial set of pairs of monotone vertex sequences
/// `(u_0 ≤ … ≤ u_p, w_0 ≤ … ≤ w_q)` whose vertex pairs `{(u_i, w_j)}` span a
/// face of the given downward-closed family on `[0,a) × [0,b)`.
pub fn bisimplicial_from_faces(a: usize, b: usize, maximal_faces: &[Vec<(usize, usize)>], bound: usize) -> Result<TruncatedBisimplicialSet> {
    if maximal_faces.iter().flatten().any(|&(u, w)| u >= a || w >= b) {
        return Err(Error::Invalid("face vertex outside the vertex grid".into()));
    }
    let spans = |u: &[usize], w: &[usize]| {
        maximal_faces.iter().any(|f| u.iter().all(|&x| w.iter().all(|&y| f.contains(&(x, y)))))
    };
    let seqs = |len: usize, k: usize| monotone_sequences(len, k);
    let (set, _) = TruncatedBisimplicialSet::build(
        bound,
        2 * bound,
        |p, q| {
            let us = seqs(p + 1, a);
            let ws = seqs(q + 1, b);
            us.iter().flat_map(|u| ws.iter().filter(|w| spans(u, w)).map(move |w| (u.clone(), w.clone()))).collect()
        },
        |_, _, i, (u, w): &(Vec<usize>, Vec<usize>)| (remove_at(u, i), w.clone()),
        |_, _, j, (u, w)| (u.clone(), remove_at(w, j)),
        |_, _, i, (u, w)| (repeat_at(u, i), w.clone()),
        |_, _, j, (u, w)| (u.clone(), repeat_at(w, j)),
    )?;
    Ok(set)
}

pub(crate) fn monotone_sequences(len: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|s| {
                let lo = s.last().copied().unwrap_or(0);
                (lo..k).map(move |v| {
                    let mut t = s.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

pub(crate) fn remove_at(s: &[usize], i: usize) -> Vec<usize> {
    let mut t = s.to_vec();
    t.remove(i);
    t
}

pub(crate) fn repeat_at(s: &[usize], i: usize) -> Vec<usize> {
    let mut t = s.to_vec();
    t.insert(i, s[i]);
    t
}
