//! Finite abelian subquotients `S / T` of `(ℤ/N)^m` with explicit coordinates.

use super::modular::{smith_rowspace, Howell};
use crate::error::{Error, Result};

/// The quotient of a submodule `S ⊆ (ℤ/N)^m` by a submodule `T ⊆ S`,
/// identified with `⊕ ℤ/invariants[j]`.
///
/// Elements of `S` are written in the Howell basis of `S`; the relation
/// lattice of that basis plus the coordinates of `T` is put in Smith form, and
/// the resulting column transform gives the coordinates.
#[derive(Clone, Debug)]
pub struct Subquotient {
    modulus: i64,
    ambient: usize,
    numerator: Howell,
    invariants: Vec<i64>,
    /// For each invariant factor, the matching column of the Smith transform.
    columns: Vec<Vec<i64>>,
    /// For each invariant factor, a preimage in Howell coefficients.
    generators: Vec<Vec<i64>>,
}

impl Subquotient {
    pub fn new(
        numerator: Vec<Vec<i64>>,
        denominator: Vec<Vec<i64>>,
        ambient: usize,
        modulus: i64,
    ) -> Result<Self> {
        let num = Howell::new(numerator, ambient, modulus);
        Self::from_howell(num, denominator)
    }

    pub fn from_howell(num: Howell, denominator: Vec<Vec<i64>>) -> Result<Self> {
        let modulus = num.modulus();
        let ambient = num.ncols();
        let r = num.len();
        let mut relations: Vec<Vec<i64>> = Vec::with_capacity(r + denominator.len());
        for (k, (row, &c)) in num.rows().iter().zip(num.pivots()).enumerate() {
            let ann = modulus / row[c];
            if ann == modulus {
                continue;
            }
            let scaled: Vec<i64> = row.iter().map(|x| (x * ann).rem_euclid(modulus)).collect();
            let mut rel = num
                .coefficients(&scaled)
                .ok_or_else(|| Error::Arithmetic("Howell basis lost its annihilator".into()))?;
            for x in rel.iter_mut() {
                *x = (-*x).rem_euclid(modulus);
            }
            rel[k] = (rel[k] + ann).rem_euclid(modulus);
            relations.push(rel);
        }
        for t in &denominator {
            let coeffs = num.coefficients(t).ok_or_else(|| {
                Error::Arithmetic("denominator is not contained in the numerator".into())
            })?;
            relations.push(coeffs);
        }
        let smith = smith_rowspace(relations, r, modulus);
        let mut invariants = Vec::new();
        let mut columns = Vec::new();
        let mut generators = Vec::new();
        for (j, &d) in smith.diag.iter().enumerate() {
            if d == 1 {
                continue;
            }
            invariants.push(d);
            columns.push(smith.q.iter().map(|row| row[j]).collect());
            generators.push(smith.q_inv[j].clone());
        }
        Ok(Subquotient { modulus, ambient, numerator: num, invariants, columns, generators })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Invariant factors, each greater than one, in divisibility order.
    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    pub fn order(&self) -> u128 {
        self.invariants.iter().map(|&d| d as u128).product()
    }

    /// Number of elements of the numerator `S`.
    pub fn numerator_order(&self) -> u128 {
        self.numerator.order()
    }

    pub fn numerator(&self) -> &Howell {
        &self.numerator
    }

    /// Coordinates of the class of `v`, or `None` when `v ∉ S`.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let x = self.numerator.coefficients(v)?;
        Some(
            self.columns
                .iter()
                .zip(&self.invariants)
                .map(|(col, &d)| {
                    let s: i64 = x
                        .iter()
                        .zip(col)
                        .fold(0i64, |acc, (a, b)| (acc + a * b).rem_euclid(self.modulus));
                    s.rem_euclid(d)
                })
                .collect(),
        )
    }

    /// A vector of `S` representing the given coordinates.
    pub fn element(&self, coords: &[i64]) -> Vec<i64> {
        let r = self.numerator.len();
        let mut x = vec![0i64; r];
        for (gen, &c) in self.generators.iter().zip(coords) {
            if c == 0 {
                continue;
            }
            for (xi, gi) in x.iter_mut().zip(gen) {
                *xi = (*xi + c * gi).rem_euclid(self.modulus);
            }
        }
        self.numerator.combine(&x)
    }

    pub fn representative(&self, j: usize) -> Vec<i64> {
        let mut e = vec![0i64; self.invariants.len()];
        e[j] = 1;
        self.element(&e)
    }

    /// Enumerates all coordinate vectors in mixed-radix order.
    pub fn all_coordinates(&self) -> Vec<Vec<i64>> {
        enumerate_mixed_radix(&self.invariants)
    }
}

/// All vectors `x` with `0 <= x[j] < radices[j]`, last coordinate fastest.
pub fn enumerate_mixed_radix(radices: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &d in radices {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for v in &out {
            for x in 0..d {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Order of the subgroup of `⊕ ℤ/invariants[j]` generated by `gens`.
pub fn generated_order(gens: &[Vec<i64>], invariants: &[i64]) -> u128 {
    if invariants.is_empty() {
        return 1;
    }
    let e = invariants.iter().fold(1i64, |acc, &d| super::modular::lcm(acc, d));
    let scaled = gens.iter().map(|g| {
        g.iter()
            .zip(invariants)
            .map(|(x, &d)| (x.rem_euclid(d)) * (e / d))
            .collect::<Vec<i64>>()
    });
    Howell::new(scaled, invariants.len(), e).order()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quotient_of_z4_squared() {
        let sq = Subquotient::new(vec![vec![1, 0], vec![0, 1]], vec![vec![2, 2]], 2, 4).unwrap();
        assert_eq!(sq.invariants(), &[2, 4]);
        assert_eq!(sq.order(), 8);
        assert_eq!(sq.coordinates(&[2, 2]).unwrap(), vec![0, 0]);
        for j in 0..2 {
            let r = sq.representative(j);
            let c = sq.coordinates(&r).unwrap();
            let mut e = vec![0; 2];
            e[j] = 1;
            assert_eq!(c, e);
        }
    }

    #[test]
    fn proper_numerator() {
        // S = <(2,0),(0,3)> in (ℤ/6)^2 ≅ ℤ/3 ⊕ ℤ/2, T = <(0,3)>
        let sq = Subquotient::new(vec![vec![2, 0], vec![0, 3]], vec![vec![0, 3]], 2, 6).unwrap();
        assert_eq!(sq.order(), 3);
        assert!(sq.coordinates(&[1, 0]).is_none());
        assert_eq!(sq.coordinates(&[0, 3]).unwrap(), vec![0]);
    }

    #[test]
    fn coordinates_are_additive() {
        let gens = vec![vec![3, 6, 1], vec![0, 4, 2], vec![6, 0, 9]];
        let sq = Subquotient::new(gens.clone(), vec![vec![0, 8, 4]], 3, 12).unwrap();
        let invs = sq.invariants().to_vec();
        for a in &gens {
            for b in &gens {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| (x + y) % 12).collect();
                let ca = sq.coordinates(a).unwrap();
                let cb = sq.coordinates(b).unwrap();
                let cs = sq.coordinates(&s).unwrap();
                for j in 0..invs.len() {
                    assert_eq!((ca[j] + cb[j]) % invs[j], cs[j]);
                }
            }
        }
    }
}
