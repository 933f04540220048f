//! Adelic and compactly supported cohomology of a localized module.
//!
//! The compactly supported complex in degree `n` is
//! `C^n(G, M) ⊕ ⊕_v C^{n−1}(G_v, M)` with differential
//! `D(x, y) = (dx, loc x − dy)`, so that
//! `… → H^n_c → H^n(G) → ⊕_v H^n(G_v) → H^{n+1}_c → …` is exact.

use serde::Serialize;

use crate::budget::Budget;
use crate::cohomology::{cell_count, cell_index, cell_tuple, check_degree, cohomology, differential_columns, Cochain, CohomologyData, CohomologyGroup, DegreeProblem, SparseColumn};
use crate::error::{Error, Result};
use crate::group::GModule;

use super::system::{LocalData, LocalizedModule};

/// `⊕_v H^n` over the places, one component per place in order.
#[derive(Clone, Debug)]
pub struct AdelicCohomology {
    degree: usize,
    components: Vec<(String, CohomologyGroup)>,
}

pub fn adelic_cohomology(loc: &LocalizedModule, n: usize, budget: &Budget) -> Result<AdelicCohomology> {
    let components = loc
        .places
        .iter()
        .map(|p| Ok((p.label.clone(), cohomology(&p.module, n, budget)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(AdelicCohomology { degree: n, components })
}

impl AdelicCohomology {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[(String, CohomologyGroup)] {
        &self.components
    }

    /// Invariants of the components, concatenated in place order.
    pub fn invariants(&self) -> Vec<i64> {
        self.components.iter().flat_map(|(_, h)| h.invariants().iter().copied()).collect()
    }

    pub fn order(&self) -> u128 {
        self.components.iter().map(|(_, h)| h.order()).product()
    }

    pub fn classify(&self, local: &[Cochain]) -> Result<Vec<i64>> {
        if local.len() != self.components.len() {
            return Err(Error::Invalid("one cochain per place is required".into()));
        }
        let mut out = Vec::new();
        for ((_, h), c) in self.components.iter().zip(local) {
            out.extend(h.classify(c)?);
        }
        Ok(out)
    }

    /// Per-place cocycles representing concatenated coordinates.
    pub fn element(&self, coords: &[i64]) -> Vec<Cochain> {
        let mut offset = 0;
        self.components
            .iter()
            .map(|(_, h)| {
                let len = h.invariants().len();
                let c = h.element(&coords[offset..offset + len]);
                offset += len;
                c
            })
            .collect()
    }

    /// Images of the generators of `H^n(G, M)` under localization.
    pub fn localization_images(&self, loc: &LocalizedModule, global: &CohomologyGroup) -> Result<Vec<Vec<i64>>> {
        global
            .representatives()
            .iter()
            .map(|c| self.classify(&localize(loc, c)))
            .collect()
    }
}

/// Restricts a global cochain to every place.
pub fn localize(loc: &LocalizedModule, x: &Cochain) -> Vec<Cochain> {
    loc.places
        .iter()
        .map(|p| {
            Cochain::from_fn(&p.module, x.degree, |t| {
                let image: Vec<usize> = t.iter().map(|&g| p.map.apply(g)).collect();
                x.value(&loc.module, &image)
            })
        })
        .collect()
}

/// `H^n_c` with coordinates and representatives.
#[derive(Clone, Debug)]
pub struct CompactSupport {
    degree: usize,
    data: CohomologyData,
    global_len: usize,
    local_lens: Vec<usize>,
    /// Local block sizes of the previous degree.
    prev_lens: Vec<usize>,
    factors: Vec<i64>,
}

/// A class of `H^n_c` with a representing pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompactSupportClass {
    pub degree: usize,
    pub coords: Vec<i64>,
    /// Global `n`-cochain.
    pub global: Cochain,
    /// One `(n−1)`-cochain per place; empty in degree 0.
    pub local: Vec<Cochain>,
}

/// Images of the basis of `C^n(G, M)` in `C^n` of one place.
fn localization_columns(global: &GModule, local: &LocalData, n: usize) -> Vec<SparseColumn> {
    let k = global.rank();
    let go = global.group().order();
    let lo = local.group.order();
    let mut cols: Vec<SparseColumn> = vec![Vec::new(); cell_count(go, n) * k];
    for t in 0..cell_count(lo, n) {
        let tuple = cell_tuple(lo, n, t);
        let image: Vec<usize> = tuple.iter().map(|&g| local.map.apply(g)).collect();
        if let Some(c) = cell_index(go, &image) {
            for j in 0..k {
                cols[c * k + j].push((t * k + j, 1));
            }
        }
    }
    cols
}

fn negate(cols: Vec<SparseColumn>) -> Vec<SparseColumn> {
    cols.into_iter().map(|c| c.into_iter().map(|(r, v)| (r, -v)).collect()).collect()
}

fn shift(col: &SparseColumn, offset: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
    col.iter().map(move |&(r, v)| (r + offset, v))
}

fn moduli_of(module: &GModule, cells: usize) -> Vec<i64> {
    let k = module.rank();
    (0..cells * k).map(|i| module.factors()[i % k]).collect()
}

fn cocone_problem(loc: &LocalizedModule, n: usize) -> DegreeProblem {
    let m = &loc.module;
    let k = m.rank();
    let go = m.group().order();
    let gens = m.group().generators().to_vec();

    // layout of cocone^n: global block, then C^{n−1}(G_v) blocks
    let mut moduli = moduli_of(m, cell_count(go, n));
    let mut local_offsets = Vec::new();
    for p in &loc.places {
        local_offsets.push(moduli.len());
        if n >= 1 {
            moduli.extend(moduli_of(&p.module, cell_count(p.group.order(), n - 1)));
        }
    }

    // incoming: D on cocone^{n−1}
    let mut incoming: Vec<SparseColumn> = Vec::new();
    if n >= 1 {
        let dg = differential_columns(m, n - 1, None);
        let locs: Vec<Vec<SparseColumn>> = loc.places.iter().map(|p| localization_columns(m, p, n - 1)).collect();
        for (j, col) in dg.iter().enumerate() {
            let mut c: SparseColumn = col.clone();
            for (v, l) in locs.iter().enumerate() {
                c.extend(shift(&l[j], local_offsets[v]));
            }
            incoming.push(c);
        }
        if n >= 2 {
            for (v, p) in loc.places.iter().enumerate() {
                for col in negate(differential_columns(&p.module, n - 2, None)) {
                    incoming.push(shift(&col, local_offsets[v]).collect());
                }
            }
        }
    }
    debug_assert!(incoming.iter().flatten().all(|&(r, _)| r < moduli.len()));

    // outgoing: D on cocone^n, global rows restricted to generator-first tuples
    let trick_rows = gens.len() * cell_count(go, n) * k;
    let mut outgoing_moduli: Vec<i64> = (0..trick_rows).map(|i| m.factors()[i % k]).collect();
    let mut out_offsets = Vec::new();
    for p in &loc.places {
        out_offsets.push(outgoing_moduli.len());
        outgoing_moduli.extend(moduli_of(&p.module, cell_count(p.group.order(), n)));
    }
    let mut outgoing: Vec<SparseColumn> = Vec::new();
    let dg = differential_columns(m, n, Some(&gens));
    let locs: Vec<Vec<SparseColumn>> = loc.places.iter().map(|p| localization_columns(m, p, n)).collect();
    for (j, col) in dg.iter().enumerate() {
        let mut c: SparseColumn = col.clone();
        for (v, l) in locs.iter().enumerate() {
            c.extend(shift(&l[j], out_offsets[v]));
        }
        outgoing.push(c);
    }
    if n >= 1 {
        for (v, p) in loc.places.iter().enumerate() {
            for col in negate(differential_columns(&p.module, n - 1, None)) {
                outgoing.push(shift(&col, out_offsets[v]).collect());
            }
        }
    }
    debug_assert_eq!(outgoing.len(), moduli.len());
    DegreeProblem { moduli, incoming, outgoing, outgoing_moduli }
}

pub fn compact_support(loc: &LocalizedModule, n: usize, budget: &Budget) -> Result<CompactSupport> {
    check_degree(&loc.module, n, budget)?;
    for p in &loc.places {
        check_degree(&p.module, n, budget)?;
    }
    let data = cocone_problem(loc, n).solve(budget)?;
    let k = loc.module.rank();
    let global_len = cell_count(loc.module.group().order(), n) * k;
    let local_lens = loc
        .places
        .iter()
        .map(|p| if n == 0 { 0 } else { cell_count(p.group.order(), n - 1) * k })
        .collect();
    let prev_lens = loc
        .places
        .iter()
        .map(|p| if n < 2 { 0 } else { cell_count(p.group.order(), n - 2) * k })
        .collect();
    let factors = loc.module.factors().to_vec();
    Ok(CompactSupport { degree: n, data, global_len, local_lens, prev_lens, factors })
}

impl CompactSupport {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn invariants(&self) -> &[i64] {
        self.data.invariants()
    }

    pub fn order(&self) -> u128 {
        self.data.order()
    }

    fn flatten(&self, global: &Cochain, local: &[Cochain]) -> Result<Vec<i64>> {
        if global.values.len() != self.global_len || local.len() != self.local_lens.len() {
            return Err(Error::Invalid("cochain pair has the wrong shape".into()));
        }
        let mut v = global.values.clone();
        for (c, &len) in local.iter().zip(&self.local_lens) {
            if c.values.len() != len {
                return Err(Error::Invalid("local cochain has the wrong shape".into()));
            }
            v.extend(&c.values);
        }
        Ok(v)
    }

    fn split(&self, v: Vec<i64>, coords: Vec<i64>) -> CompactSupportClass {
        let global = Cochain { degree: self.degree, values: v[..self.global_len].to_vec() };
        let mut offset = self.global_len;
        let local = if self.degree == 0 {
            Vec::new()
        } else {
            self.local_lens
                .iter()
                .map(|&len| {
                    let c = Cochain { degree: self.degree - 1, values: v[offset..offset + len].to_vec() };
                    offset += len;
                    c
                })
                .collect()
        };
        CompactSupportClass { degree: self.degree, coords, global, local }
    }

    /// Coordinates of the class of a cocycle pair.
    pub fn classify(&self, global: &Cochain, local: &[Cochain]) -> Result<Vec<i64>> {
        let local = if self.degree == 0 { &[][..] } else { local };
        let v = if self.degree == 0 {
            if global.values.len() != self.global_len {
                return Err(Error::Invalid("cochain pair has the wrong shape".into()));
            }
            global.values.clone()
        } else {
            self.flatten(global, local)?
        };
        self.data.coordinates(&v).ok_or(Error::NotACocycle)
    }

    pub fn element(&self, coords: &[i64]) -> CompactSupportClass {
        self.split(self.data.element(coords), coords.to_vec())
    }

    pub fn basis(&self) -> Vec<CompactSupportClass> {
        (0..self.invariants().len())
            .map(|j| {
                let mut e = vec![0; self.invariants().len()];
                e[j] = 1;
                self.element(&e)
            })
            .collect()
    }

    /// A pair `(u, w)` of degree `n − 1` with `D(u, w)` equal to the given
    /// pair, or `None` when the pair is not a coboundary.
    pub fn solve_coboundary(&self, global: &Cochain, local: &[Cochain]) -> Option<(Cochain, Vec<Cochain>)> {
        if self.degree == 0 {
            return None;
        }
        let v = self.flatten(global, local).ok()?;
        let k = self.factors.len().max(1);
        let x: Vec<i64> = self
            .data
            .solve_coboundary(&v)?
            .iter()
            .enumerate()
            .map(|(i, &a)| a.rem_euclid(self.factors[i % k]))
            .collect();
        let glen = x.len() - self.prev_lens.iter().sum::<usize>();
        let u = Cochain { degree: self.degree - 1, values: x[..glen].to_vec() };
        let mut offset = glen;
        let w = self
            .prev_lens
            .iter()
            .map(|&len| {
                let c = Cochain { degree: self.degree.saturating_sub(2), values: x[offset..offset + len].to_vec() };
                offset += len;
                c
            })
            .collect();
        Some((u, w))
    }
}
