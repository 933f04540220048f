use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::modular::smith_rowspace;

use super::{FiniteGroup, Subgroup};

/// An explicit isomorphism between an abelian subgroup and `⊕ ℤ/d_j`
/// (invariant factors `d_1 | d_2 | …`, all greater than one).
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    factors: Vec<i64>,
    basis: Vec<usize>,
    coords: HashMap<usize, Vec<i64>>,
    elements: HashMap<Vec<i64>, usize>,
}

impl AbelianDecomposition {
    pub fn new(g: &FiniteGroup, sub: &Subgroup) -> Result<Self> {
        if !sub.is_abelian(g) {
            return Err(Error::NotAbelian);
        }
        // polycyclic normal form: every element is Π x_i^{e_i} with 0 <= e_i < m_i
        let mut gens: Vec<usize> = Vec::new();
        let mut rel_index: Vec<i64> = Vec::new();
        let mut relations: Vec<Vec<i64>> = Vec::new();
        let mut normal: HashMap<usize, Vec<i64>> = HashMap::from([(0usize, Vec::new())]);
        for &x in sub.members() {
            if normal.contains_key(&x) {
                continue;
            }
            let mut m = 1i64;
            let mut p = x;
            while !normal.contains_key(&p) {
                p = g.mul(p, x);
                m += 1;
            }
            let mut rel = normal[&p].clone();
            for v in rel.iter_mut() {
                *v = -*v;
            }
            rel.push(m);
            relations.push(rel);
            gens.push(x);
            rel_index.push(m);
            let old: Vec<(usize, Vec<i64>)> = normal.drain().collect();
            for (y, v) in old {
                let mut z = y;
                for t in 0..m {
                    let mut w = v.clone();
                    w.push(t);
                    normal.insert(z, w);
                    z = g.mul(z, x);
                }
            }
        }
        let r = gens.len();
        for rel in relations.iter_mut() {
            rel.resize(r, 0);
        }
        let order = sub.order() as i64;
        let smith = smith_rowspace(relations, r, order.max(1));
        let mut factors = Vec::new();
        let mut cols = Vec::new();
        let mut basis = Vec::new();
        for (j, &d) in smith.diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            factors.push(d);
            cols.push(j);
            let mut e = 0usize;
            for (i, &gi) in gens.iter().enumerate() {
                e = g.mul(e, g.pow(gi, smith.q_inv[j][i]));
            }
            basis.push(e);
        }
        let mut coords = HashMap::new();
        let mut elements = HashMap::new();
        for (&y, v) in &normal {
            let c: Vec<i64> = cols
                .iter()
                .zip(&factors)
                .map(|(&j, &d)| {
                    let s: i64 = v.iter().enumerate().map(|(i, &e)| e * smith.q[i][j]).sum();
                    s.rem_euclid(d)
                })
                .collect();
            elements.insert(c.clone(), y);
            coords.insert(y, c);
        }
        if elements.len() != sub.order() {
            return Err(Error::Arithmetic("abelian decomposition is not bijective".into()));
        }
        Ok(AbelianDecomposition { factors, basis, coords, elements })
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// Group elements corresponding to the standard basis vectors.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    pub fn coordinates(&self, x: usize) -> Option<&[i64]> {
        self.coords.get(&x).map(|v| v.as_slice())
    }

    pub fn element(&self, coords: &[i64]) -> usize {
        let key: Vec<i64> = coords.iter().zip(&self.factors).map(|(c, &d)| c.rem_euclid(d)).collect();
        self.elements[&key]
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn klein_and_cyclic() {
        let v = catalog::klein4();
        let d = AbelianDecomposition::new(&v, &Subgroup::whole(&v)).unwrap();
        assert_eq!(d.factors(), &[2, 2]);
        let c = catalog::cyclic(12).unwrap();
        let d = AbelianDecomposition::new(&c, &Subgroup::whole(&c)).unwrap();
        assert_eq!(d.factors(), &[12]);
        for x in c.elements() {
            for y in c.elements() {
                let s: Vec<i64> = d.coordinates(x).unwrap().iter().zip(d.coordinates(y).unwrap()).map(|(a, b)| a + b).collect();
                assert_eq!(d.element(&s), c.mul(x, y));
            }
        }
    }

    #[test]
    fn product_of_coprime_cyclics() {
        let c2 = catalog::cyclic(2).unwrap();
        let c6 = catalog::cyclic(6).unwrap();
        let g = crate::group::direct_product(&c2, &c6).unwrap();
        let d = AbelianDecomposition::new(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(d.factors(), &[2, 6]);
    }
}
