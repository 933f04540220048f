use crate::error::{Error, Result};
use crate::linalg::enumerate_mixed_radix;

use super::{GroupHom, GroupRef};

/// A finite abelian group `⊕ ℤ/d_i` with a right action of a finite group.
///
/// The action of `g` is the integer matrix `M_g` acting on column vectors,
/// so `a·g = M_g a` and `M_{gh} = M_h M_g`. Entries in row `i` are reduced
/// mod `d_i`; well-definedness requires `M_ij d_j ≡ 0 (mod d_i)`. The left
/// action used by cochains is `g·a = a·g⁻¹`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: GroupRef,
    factors: Vec<i64>,
    /// Row-major `k × k` matrices, one per group element.
    action: Vec<Vec<i64>>,
}

impl GModule {
    /// Builds a module from matrices for the group's generators (in the
    /// order of `group.generators()`), verifying the action.
    pub fn new(group: GroupRef, factors: Vec<i64>, generator_matrices: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        let k = factors.len();
        check_factors(&factors)?;
        if generator_matrices.len() != group.generators().len() {
            return Err(Error::InvalidModule(format!(
                "expected {} generator matrices, got {}",
                group.generators().len(),
                generator_matrices.len()
            )));
        }
        let mut flat = Vec::with_capacity(generator_matrices.len());
        for m in &generator_matrices {
            if m.len() != k || m.iter().any(|r| r.len() != k) {
                return Err(Error::InvalidModule("action matrix has the wrong shape".into()));
            }
            let mut f: Vec<i64> = m.iter().flatten().copied().collect();
            reduce_matrix(&mut f, &factors);
            check_well_defined(&f, &factors)?;
            flat.push(f);
        }
        let id = identity_matrix(&factors);
        let action = group.extend_along_tree(id, &flat, |mp, mg| mat_mul(mg, mp, &factors));
        let module = GModule { group, factors, action };
        module.check_action()?;
        Ok(module)
    }

    /// Builds a module from one matrix per element, verifying the action.
    pub fn from_element_matrices(group: GroupRef, factors: Vec<i64>, mut action: Vec<Vec<i64>>) -> Result<Self> {
        check_factors(&factors)?;
        let k = factors.len();
        if action.len() != group.order() || action.iter().any(|m| m.len() != k * k) {
            return Err(Error::InvalidModule("action table has the wrong shape".into()));
        }
        for m in action.iter_mut() {
            reduce_matrix(m, &factors);
            check_well_defined(m, &factors)?;
        }
        let module = GModule { group, factors, action };
        if module.action[0] != identity_matrix(&module.factors) {
            return Err(Error::InvalidModule("identity does not act trivially".into()));
        }
        module.check_action()?;
        Ok(module)
    }

    pub fn trivial(group: GroupRef, factors: Vec<i64>) -> Result<Self> {
        check_factors(&factors)?;
        let id = identity_matrix(&factors);
        let action = vec![id; group.order()];
        Ok(GModule { group, factors, action })
    }

    fn check_action(&self) -> Result<()> {
        let g = &self.group;
        for &s in g.generators() {
            for x in g.elements() {
                let expect = mat_mul(&self.action[s], &self.action[x], &self.factors);
                if self.action[g.mul(x, s)] != expect {
                    return Err(Error::InvalidModule("matrices do not define a right action".into()));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u128 {
        self.factors.iter().map(|&d| d as u128).product()
    }

    /// Exponent of the carrier (1 for the zero module).
    pub fn exponent(&self) -> i64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn matrix(&self, g: usize) -> &[i64] {
        &self.action[g]
    }

    /// `a·g`.
    pub fn act_right(&self, a: &[i64], g: usize) -> Vec<i64> {
        apply(&self.action[g], a, &self.factors)
    }

    /// `g·a = a·g⁻¹`.
    pub fn act_left(&self, g: usize, a: &[i64]) -> Vec<i64> {
        apply(&self.action[self.group.inv(g)], a, &self.factors)
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.factors.len()]
    }

    pub fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), &d)| (x + y).rem_euclid(d)).collect()
    }

    pub fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        a.iter().zip(b).zip(&self.factors).map(|((x, y), &d)| (x - y).rem_euclid(d)).collect()
    }

    pub fn neg(&self, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.factors).map(|(x, &d)| (-x).rem_euclid(d)).collect()
    }

    pub fn reduce(&self, a: &[i64]) -> Vec<i64> {
        a.iter().zip(&self.factors).map(|(x, &d)| x.rem_euclid(d)).collect()
    }

    /// All elements in mixed-radix order.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        enumerate_mixed_radix(&self.factors)
    }

    /// Mixed-radix index of an element (last coordinate fastest).
    pub fn index_of(&self, a: &[i64]) -> usize {
        a.iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (x, &d)| acc * d as usize + x.rem_euclid(d) as usize)
    }

    pub fn element_at(&self, mut idx: usize) -> Vec<i64> {
        let mut out = vec![0; self.factors.len()];
        for (slot, &d) in out.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        out
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = identity_matrix(&self.factors);
        self.action.iter().all(|m| *m == id)
    }

    /// Whether every element of `elems` acts as the identity.
    pub fn acts_trivially_on(&self, elems: &[usize]) -> bool {
        let id = identity_matrix(&self.factors);
        elems.iter().all(|&x| self.action[x] == id)
    }

    /// The module over `hom.source()` with `h` acting as `hom(h)`.
    pub fn pullback(&self, hom: &GroupHom) -> Result<GModule> {
        if !super::hom::same_group(hom.target(), &self.group) {
            return Err(Error::TargetMismatch);
        }
        Ok(GModule {
            group: hom.source().clone(),
            factors: self.factors.clone(),
            action: hom.images().iter().map(|&y| self.action[y].clone()).collect(),
        })
    }

    /// Same carrier and action, with the group handle replaced by an equal
    /// group (used when the same group was constructed twice).
    pub fn rebase(&self, group: GroupRef) -> Result<GModule> {
        if *group != *self.group {
            return Err(Error::TargetMismatch);
        }
        Ok(GModule { group, factors: self.factors.clone(), action: self.action.clone() })
    }

    /// Matrices of the generators, as nested rows (for serialization).
    pub fn generator_matrices(&self) -> Vec<Vec<Vec<i64>>> {
        let k = self.rank();
        self.group
            .generators()
            .iter()
            .map(|&g| self.action[g].chunks(k.max(1)).take(k).map(|r| r.to_vec()).collect())
            .collect()
    }
}

fn check_factors(factors: &[i64]) -> Result<()> {
    if factors.iter().any(|&d| d < 2) {
        return Err(Error::InvalidModule("invariant factors must be at least 2".into()));
    }
    if factors.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(Error::InvalidModule("invariant factors must form a divisibility chain".into()));
    }
    Ok(())
}

fn reduce_matrix(m: &mut [i64], factors: &[i64]) {
    let k = factors.len();
    for i in 0..k {
        for j in 0..k {
            m[i * k + j] = m[i * k + j].rem_euclid(factors[i]);
        }
    }
}

fn check_well_defined(m: &[i64], factors: &[i64]) -> Result<()> {
    let k = factors.len();
    for i in 0..k {
        for j in 0..k {
            if (m[i * k + j] * factors[j]) % factors[i] != 0 {
                return Err(Error::InvalidModule(format!(
                    "action entry ({i}, {j}) is not well defined modulo the invariant factors"
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn identity_matrix(factors: &[i64]) -> Vec<i64> {
    let k = factors.len();
    let mut m = vec![0; k * k];
    for i in 0..k {
        m[i * k + i] = 1 % factors[i];
    }
    m
}

/// `a * b` with row `i` reduced mod `factors[i]`.
pub(crate) fn mat_mul(a: &[i64], b: &[i64], factors: &[i64]) -> Vec<i64> {
    let k = factors.len();
    let mut out = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            let mut s = 0i64;
            for t in 0..k {
                s += a[i * k + t] * b[t * k + j];
            }
            out[i * k + j] = s.rem_euclid(factors[i]);
        }
    }
    out
}

pub(crate) fn apply(m: &[i64], a: &[i64], factors: &[i64]) -> Vec<i64> {
    let k = factors.len();
    (0..k)
        .map(|i| {
            let s: i64 = (0..k).map(|j| m[i * k + j] * a[j]).sum();
            s.rem_euclid(factors[i])
        })
        .collect()
}
