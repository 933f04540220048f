use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::hall::{divisors, mu};

/// A finite-dimensional space graded by integer weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    /// Weight to dimension; zero dimensions are never stored.
    pub dims: BTreeMap<i64, u128>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<i64, String>,
}

impl GradedSpace {
    pub fn new() -> Self {
        GradedSpace::default()
    }

    pub fn from_pairs(pairs: &[(i64, u128)]) -> Self {
        let mut s = GradedSpace::new();
        for &(w, d) in pairs {
            s.add(w, d);
        }
        s
    }

    pub fn add(&mut self, weight: i64, dim: u128) {
        if dim > 0 {
            *self.dims.entry(weight).or_insert(0) += dim;
        }
    }

    pub fn dim(&self) -> u128 {
        self.dims.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn min_weight(&self) -> Option<i64> {
        self.dims.keys().next().copied()
    }

    /// One weight per basis vector, ascending.
    pub fn weight_multiset(&self) -> Vec<i64> {
        self.dims.iter().flat_map(|(&w, &d)| std::iter::repeat_n(w, d as usize)).collect()
    }

    /// Tensor product with a pure space of weight `shift` and dimension
    /// `multiplicity`.
    pub fn twisted(&self, shift: i64, multiplicity: u128) -> GradedSpace {
        let mut out = GradedSpace::new();
        for (&w, &d) in &self.dims {
            out.add(w + shift, d * multiplicity);
        }
        out
    }

    pub fn extend(&mut self, other: &GradedSpace) {
        for (&w, &d) in &other.dims {
            self.add(w, d);
        }
    }
}

/// Laurent polynomial in `q` with integer coefficients.
type Laurent = BTreeMap<i64, i128>;

fn overflow() -> Error {
    Error::Arithmetic("graded dimension overflowed".into())
}

fn mul(a: &Laurent, b: &Laurent) -> Result<Laurent> {
    let mut out = Laurent::new();
    for (&i, &x) in a {
        for (&j, &y) in b {
            let e = out.entry(i + j).or_insert(0);
            *e = e.checked_add(x.checked_mul(y).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
    }
    out.retain(|_, v| *v != 0);
    Ok(out)
}

fn laurent_of(v: &GradedSpace, stretch: i64) -> Laurent {
    v.dims.iter().map(|(&w, &d)| (w * stretch, d as i128)).collect()
}

fn power(p: &Laurent, k: usize) -> Result<Laurent> {
    let mut out: Laurent = [(0, 1)].into_iter().collect();
    for _ in 0..k {
        out = mul(&out, p)?;
    }
    Ok(out)
}

/// Weights of the bracket-length-`s` part of the free Lie algebra on `V`:
/// `L_s(q) = (1/s) Σ_{e | s} μ(e) V(q^e)^{s/e}`.
pub fn colie_weights(v: &GradedSpace, s: usize) -> Result<GradedSpace> {
    if s == 0 {
        return Err(Error::Invalid("bracket length must be at least 1".into()));
    }
    let mut acc = Laurent::new();
    for e in divisors(s) {
        let m = mu(e);
        if m == 0 {
            continue;
        }
        let term = power(&laurent_of(v, e as i64), s / e)?;
        for (w, c) in term {
            let slot = acc.entry(w).or_insert(0);
            *slot = slot.checked_add(m.checked_mul(c).ok_or_else(overflow)?).ok_or_else(overflow)?;
        }
    }
    let mut out = GradedSpace::new();
    for (w, c) in acc {
        if c % s as i128 != 0 || c < 0 {
            return Err(Error::Arithmetic(format!("non-integral Lie dimension at weight {w}")));
        }
        out.add(w, (c / s as i128) as u128);
    }
    Ok(out)
}

/// The graded pieces `[K]_s/[K]_{s+1}` of a free pro-nilpotent group with
/// abelianization `ab`, which are free-Lie pieces of `ab`.
pub fn magnus_graded(ab: &GradedSpace, s: usize) -> Result<GradedSpace> {
    colie_weights(ab, s)
}

/// Checks `∏_{n, w} (1 − t^n q^w)^{−rank(n, w)} = 1/(1 − V(q) t)` as formal
/// power series in `t` up to `t^{t_max}`, with `rank(n, w)` the weight-`w`
/// dimension of `L_n(V)`.
pub fn generating_function_holds(v: &GradedSpace, t_max: usize) -> Result<bool> {
    let one: Laurent = [(0, 1)].into_iter().collect();
    // lhs[k] is the coefficient of t^k
    let mut lhs: Vec<Laurent> = vec![Laurent::new(); t_max + 1];
    lhs[0] = one.clone();
    for n in 1..=t_max {
        let lie = colie_weights(v, n)?;
        for (&w, &r) in &lie.dims {
            // (1 − x)^{−r} = Σ_k C(r + k − 1, k) x^k with x = t^n q^w
            let r = r as i128;
            let mut factor: Vec<(usize, i64, i128)> = vec![(0, 0, 1)];
            let mut binom: i128 = 1;
            for k in 1..=t_max / n {
                binom = binom
                    .checked_mul(r + k as i128 - 1)
                    .ok_or_else(overflow)?
                    / k as i128;
                factor.push((n * k, w * k as i64, binom));
            }
            let mut next = vec![Laurent::new(); t_max + 1];
            for (a, coeffs) in lhs.iter().enumerate() {
                for &(tdeg, qdeg, c) in &factor {
                    if a + tdeg > t_max {
                        continue;
                    }
                    for (&e, &x) in coeffs {
                        let slot = next[a + tdeg].entry(e + qdeg).or_insert(0);
                        *slot = slot.checked_add(x.checked_mul(c).ok_or_else(overflow)?).ok_or_else(overflow)?;
                    }
                }
            }
            lhs = next;
        }
    }
    let base = laurent_of(v, 1);
    for (k, coeffs) in lhs.iter_mut().enumerate() {
        coeffs.retain(|_, x| *x != 0);
        if *coeffs != power(&base, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_bracket() {
        let v = GradedSpace::from_pairs(&[(1, 1), (3, 1)]);
        assert_eq!(colie_weights(&v, 2).unwrap(), GradedSpace::from_pairs(&[(4, 1)]));
        let v = GradedSpace::from_pairs(&[(1, 2)]);
        assert_eq!(colie_weights(&v, 2).unwrap(), GradedSpace::from_pairs(&[(2, 1)]));
    }

    #[test]
    fn identity_on_small_space() {
        let v = GradedSpace::from_pairs(&[(-1, 1), (0, 2), (2, 1)]);
        assert!(generating_function_holds(&v, 8).unwrap());
    }
}
