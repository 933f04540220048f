//! The normalized bar complex `C^n(G, A) = Map((G∖1)^n, A)`.
//!
//! A cochain of degree `n` stores one value per tuple of non-identity
//! elements; tuple `(g_1, …, g_n)` has index `Σ (g_k − 1)(|G| − 1)^{n−k}`
//! and its value occupies entries `index·k .. index·k + k` for a module of
//! rank `k`. The differential is
//! `(df)(g_1, …, g_{n+1}) = g_1·f(g_2, …) + Σ_i (−1)^i f(…, g_i g_{i+1}, …) + (−1)^{n+1} f(g_1, …, g_n)`.

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GModule};

use super::complex::{DegreeProblem, SparseColumn};

/// A normalized cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cochain {
    pub degree: usize,
    /// Dense values over the canonical tuple order, `rank` entries per tuple.
    pub values: Vec<i64>,
}

/// Number of normalized cells of degree `n`.
pub fn cell_count(group_order: usize, n: usize) -> usize {
    (group_order - 1).pow(n as u32)
}

/// Index of a tuple, or `None` if some entry is the identity.
pub fn cell_index(group_order: usize, tuple: &[usize]) -> Option<usize> {
    let base = group_order - 1;
    let mut idx = 0usize;
    for &g in tuple {
        if g == 0 {
            return None;
        }
        idx = idx * base + (g - 1);
    }
    Some(idx)
}

pub fn cell_tuple(group_order: usize, n: usize, mut idx: usize) -> Vec<usize> {
    let base = group_order - 1;
    let mut t = vec![0usize; n];
    for k in (0..n).rev() {
        t[k] = idx % base + 1;
        idx /= base;
    }
    t
}

impl Cochain {
    pub fn zero(module: &GModule, degree: usize) -> Self {
        let n = module.group().order();
        Cochain { degree, values: vec![0; cell_count(n, degree) * module.rank()] }
    }

    /// Builds a cochain from a function on tuples (only non-identity tuples
    /// are queried).
    pub fn from_fn(module: &GModule, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<i64>) -> Self {
        let n = module.group().order();
        let k = module.rank();
        let cells = cell_count(n, degree);
        let mut values = vec![0; cells * k];
        for c in 0..cells {
            let t = cell_tuple(n, degree, c);
            let v = module.reduce(&f(&t));
            values[c * k..(c + 1) * k].copy_from_slice(&v);
        }
        Cochain { degree, values }
    }

    /// Value at a tuple; zero when an entry is the identity.
    pub fn value(&self, module: &GModule, tuple: &[usize]) -> Vec<i64> {
        let k = module.rank();
        match cell_index(module.group().order(), tuple) {
            Some(c) => self.values[c * k..(c + 1) * k].to_vec(),
            None => vec![0; k],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, module: &GModule, other: &Cochain) -> Cochain {
        let k = module.rank().max(1);
        let f = module.factors();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| (a + b).rem_euclid(f[i % k]))
            .collect();
        Cochain { degree: self.degree, values }
    }

    pub fn neg(&self, module: &GModule) -> Cochain {
        let k = module.rank().max(1);
        let f = module.factors();
        let values = self.values.iter().enumerate().map(|(i, a)| (-a).rem_euclid(f[i % k])).collect();
        Cochain { degree: self.degree, values }
    }

    fn check_shape(&self, module: &GModule) -> Result<()> {
        let expect = cell_count(module.group().order(), self.degree) * module.rank();
        if self.values.len() != expect {
            return Err(Error::Invalid(format!(
                "cochain of degree {} has {} values, expected {expect}",
                self.degree,
                self.values.len()
            )));
        }
        Ok(())
    }
}

/// The coboundary `df`, computed directly from the formula.
pub fn coboundary(module: &GModule, f: &Cochain) -> Result<Cochain> {
    f.check_shape(module)?;
    let g = module.group();
    let n = f.degree;
    Ok(Cochain::from_fn(module, n + 1, |t| {
        let mut acc = module.act_left(t[0], &f.value(module, &t[1..]));
        for i in 1..=n {
            let mut merged = Vec::with_capacity(n);
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(g.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            let v = f.value(module, &merged);
            acc = if i % 2 == 0 { module.add(&acc, &v) } else { module.sub(&acc, &v) };
        }
        let last = f.value(module, &t[..n]);
        if (n + 1) % 2 == 0 {
            module.add(&acc, &last)
        } else {
            module.sub(&acc, &last)
        }
    }))
}

pub fn is_cocycle(module: &GModule, f: &Cochain) -> Result<bool> {
    Ok(coboundary(module, f)?.is_zero())
}

/// Normalized: every tuple containing the identity maps to zero. Cochains
/// in this representation are normalized by construction; this checks a
/// full (unnormalized) table given over all `|G|^n` tuples.
pub fn normalize_full_table(module: &GModule, degree: usize, full: &[Vec<i64>]) -> Result<Cochain> {
    let n = module.group().order();
    if full.len() != n.pow(degree as u32) {
        return Err(Error::Invalid("full cochain table has the wrong length".into()));
    }
    let mut out = Cochain::zero(module, degree);
    let k = module.rank();
    for (idx, v) in full.iter().enumerate() {
        let mut t = vec![0usize; degree];
        let mut r = idx;
        for slot in t.iter_mut().rev() {
            *slot = r % n;
            r /= n;
        }
        let v = module.reduce(v);
        match cell_index(n, &t) {
            Some(c) => out.values[c * k..(c + 1) * k].copy_from_slice(&v),
            None if v.iter().any(|&x| x != 0) => return Err(Error::NotACocycle),
            None => {}
        }
    }
    Ok(out)
}

/// Images of basis vectors of `C^n` under `d_n`, as sparse columns over the
/// rows of `C^{n+1}`. When `first_in` is given, only rows whose first tuple
/// entry lies in that list are produced, re-indexed by the position of the
/// first entry in the list.
pub(crate) fn differential_columns(module: &GModule, n: usize, first_in: Option<&[usize]>) -> Vec<SparseColumn> {
    let g: &FiniteGroup = module.group();
    let order = g.order();
    let base = order - 1;
    let k = module.rank();
    let rest_cells = base.pow(n as u32);
    let first_pos: Vec<Option<usize>> = match first_in {
        Some(list) => (0..order).map(|x| list.iter().position(|&y| y == x)).collect(),
        None => (0..order).map(|x| x.checked_sub(1)).collect(),
    };
    let row_of = |tuple: &[usize]| -> Option<usize> {
        let p = first_pos[tuple[0]]?;
        let rest = cell_index(order, &tuple[1..])?;
        Some(p * rest_cells + rest)
    };
    let left: Vec<Vec<i64>> = (0..order).map(|x| module.matrix(g.inv(x)).to_vec()).collect();
    let cells = base.pow(n as u32);
    let mut cols = Vec::with_capacity(cells * k);
    let mut tuple = vec![0usize; n + 1];
    for c in 0..cells {
        let ct = cell_tuple(order, n, c);
        for j in 0..k {
            let mut col: SparseColumn = Vec::new();
            // g_1 · f(c)
            for h in 1..order {
                tuple[0] = h;
                tuple[1..].copy_from_slice(&ct);
                if let Some(row) = row_of(&tuple) {
                    for i in 0..k {
                        let coef = left[h][i * k + j];
                        if coef != 0 {
                            col.push((row * k + i, coef));
                        }
                    }
                }
            }
            // (−1)^i f(…, g_i g_{i+1}, …) with the merged entry equal to ct[i-1]
            for i in 1..=n {
                let target = ct[i - 1];
                let sign = if i % 2 == 0 { 1 } else { -1 };
                for h in 1..order {
                    let h2 = g.mul(g.inv(h), target);
                    if h2 == 0 {
                        continue;
                    }
                    tuple[..i - 1].copy_from_slice(&ct[..i - 1]);
                    tuple[i - 1] = h;
                    tuple[i] = h2;
                    tuple[i + 1..].copy_from_slice(&ct[i..]);
                    if let Some(row) = row_of(&tuple) {
                        col.push((row * k + j, sign));
                    }
                }
            }
            // (−1)^{n+1} f(g_1, …, g_n)
            let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
            for h in 1..order {
                tuple[..n].copy_from_slice(&ct);
                tuple[n] = h;
                if let Some(row) = row_of(&tuple) {
                    col.push((row * k + j, sign));
                }
            }
            cols.push(col);
        }
    }
    cols
}

/// Cost check shared by the bar-complex entry points.
pub(crate) fn check_degree(module: &GModule, n: usize, budget: &Budget) -> Result<()> {
    if n > budget.max_degree {
        return Err(Error::DegreeTooLarge { degree: n, limit: budget.max_degree });
    }
    if module.group().order() > budget.max_group_order {
        return Err(Error::SearchBudgetExceeded(format!(
            "group order {} exceeds {}",
            module.group().order(),
            budget.max_group_order
        )));
    }
    Ok(())
}

/// The degree-`n` problem for `H^n(G, A)`, using only rows whose first entry
/// is a generator for the cocycle test.
pub(crate) fn degree_problem(module: &GModule, n: usize) -> DegreeProblem {
    let g = module.group();
    let k = module.rank();
    let factors = module.factors();
    let cells = cell_count(g.order(), n);
    let moduli: Vec<i64> = (0..cells * k).map(|i| factors[i % k]).collect();
    let incoming = if n == 0 { Vec::new() } else { differential_columns(module, n - 1, None) };
    let gens = g.generators().to_vec();
    let outgoing = differential_columns(module, n, Some(&gens));
    let out_rows = gens.len() * cell_count(g.order(), n) * k;
    let outgoing_moduli = (0..out_rows).map(|i| factors[i % k]).collect();
    DegreeProblem { moduli, incoming, outgoing, outgoing_moduli }
}

/// Full differentials `d_0, …, d_{max_degree}` as dense matrices (rows
/// indexed by the target), for inspection and identity checks.
#[derive(Clone, Debug)]
pub struct BarComplex {
    /// `ranks[n]` = number of module-valued cells in degree `n`.
    pub ranks: Vec<usize>,
    pub differentials: Vec<Vec<Vec<i64>>>,
}

pub fn bar_complex(module: &GModule, max_degree: usize, budget: &Budget) -> Result<BarComplex> {
    check_degree(module, max_degree, budget)?;
    let g = module.group();
    let k = module.rank();
    let mut ranks = Vec::new();
    let mut differentials = Vec::new();
    for n in 0..=max_degree {
        ranks.push(cell_count(g.order(), n));
        let rows = cell_count(g.order(), n + 1) * k;
        let cols = differential_columns(module, n, None);
        if (rows as u64) * (cols.len() as u64) > budget.max_linear_work / 1000 {
            return Err(Error::SearchBudgetExceeded("dense bar complex too large".into()));
        }
        let mut dense = vec![vec![0i64; cols.len()]; rows];
        for (j, col) in cols.iter().enumerate() {
            for &(r, c) in col {
                let f = module.factors()[r % k];
                dense[r][j] = (dense[r][j] + c).rem_euclid(f);
            }
        }
        differentials.push(dense);
    }
    Ok(BarComplex { ranks, differentials })
}
