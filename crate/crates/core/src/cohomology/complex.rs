//! Cohomology of one degree of a cochain complex of finite abelian groups.
//!
//! Each cochain group is a product of cyclic groups `ℤ/μ_i`, stored in
//! "lift" coordinates (integers reduced mod `μ_i`). With `E` the lcm of all
//! moduli involved, the scaling `σ(x)_i = x_i · E/μ_i` embeds the cochain
//! group in `(ℤ/E)^m`, where cocycles and coboundaries become honest
//! submodules and [`Subquotient`] produces the quotient.

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::linalg::modular::{kernel, lcm, SpanSolver};
use crate::linalg::Subquotient;

/// Sparse column: `(row, coefficient)` pairs.
pub type SparseColumn = Vec<(usize, i64)>;

/// Data for computing `H^n = ker d_n / im d_{n-1}`.
///
/// `incoming[j]` is the image of the `j`-th basis vector of `C^{n-1}` in
/// `C^n`; `outgoing[j]` is the image of the `j`-th basis vector of `C^n`,
/// restricted to a set of rows of `C^{n+1}` that detects cocycles.
#[derive(Clone, Debug)]
pub struct DegreeProblem {
    pub moduli: Vec<i64>,
    pub incoming: Vec<SparseColumn>,
    pub outgoing: Vec<SparseColumn>,
    pub outgoing_moduli: Vec<i64>,
}

/// `H^n` with coordinates, representatives and a coboundary solver.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    moduli: Vec<i64>,
    modulus: i64,
    quotient: Subquotient,
    boundary_images: Vec<Vec<i64>>,
    incoming_moduli_len: usize,
}

impl DegreeProblem {
    /// Rough count of modular row operations needed.
    pub fn work_estimate(&self) -> u64 {
        let m = self.moduli.len() as u64;
        let r = self.outgoing_moduli.len() as u64;
        let p = self.incoming.len() as u64;
        m.saturating_mul(m).saturating_mul(r + m) + p.saturating_mul(p).saturating_mul(m + p)
    }

    pub fn solve(&self, budget: &Budget) -> Result<CohomologyData> {
        let work = self.work_estimate();
        if work > budget.max_linear_work {
            return Err(Error::SearchBudgetExceeded(format!(
                "cohomology needs about {work} row operations, budget is {}",
                budget.max_linear_work
            )));
        }
        let m = self.moduli.len();
        let modulus = self
            .moduli
            .iter()
            .chain(&self.outgoing_moduli)
            .fold(1i64, |acc, &d| lcm(acc, d));
        let sigma = |i: usize, x: i64| (x.rem_euclid(self.moduli[i]) * (modulus / self.moduli[i])).rem_euclid(modulus);

        // lifts x with d x ≡ 0: scale each row r by E/μ'_r so the test is mod E
        let r = self.outgoing_moduli.len();
        let images: Vec<Vec<i64>> = self
            .outgoing
            .iter()
            .map(|col| {
                let mut v = vec![0i64; r];
                for &(row, c) in col {
                    let mu = self.outgoing_moduli[row];
                    v[row] = (v[row] + c.rem_euclid(mu) * (modulus / mu)).rem_euclid(modulus);
                }
                v
            })
            .collect();
        let z_lifts = kernel(&images, r, modulus);
        let z_sigma: Vec<Vec<i64>> = z_lifts
            .iter()
            .map(|x| x.iter().enumerate().map(|(i, &v)| sigma(i, v)).collect())
            .collect();
        // a lift-coordinate kernel always contains the multiples μ_i e_i; the
        // σ-image drops them, so the numerator is exactly σ(Z)
        let boundary_images: Vec<Vec<i64>> = self
            .incoming
            .iter()
            .map(|col| {
                let mut v = vec![0i64; m];
                for &(row, c) in col {
                    v[row] = (v[row] + sigma(row, c)).rem_euclid(modulus);
                }
                v
            })
            .collect();
        let quotient = Subquotient::new(z_sigma, boundary_images.clone(), m, modulus)?;
        Ok(CohomologyData {
            moduli: self.moduli.clone(),
            modulus,
            quotient,
            boundary_images,
            incoming_moduli_len: self.incoming.len(),
        })
    }
}

impl CohomologyData {
    pub fn invariants(&self) -> &[i64] {
        self.quotient.invariants()
    }

    pub fn order(&self) -> u128 {
        self.quotient.order()
    }

    /// Number of cocycles.
    pub fn cocycle_count(&self) -> u128 {
        self.quotient.numerator_order()
    }

    pub fn moduli(&self) -> &[i64] {
        &self.moduli
    }

    fn to_sigma(&self, x: &[i64]) -> Vec<i64> {
        x.iter()
            .zip(&self.moduli)
            .map(|(&v, &mu)| (v.rem_euclid(mu) * (self.modulus / mu)).rem_euclid(self.modulus))
            .collect()
    }

    fn from_sigma(&self, s: &[i64]) -> Vec<i64> {
        s.iter().zip(&self.moduli).map(|(&v, &mu)| v / (self.modulus / mu)).collect()
    }

    /// Coordinates of a cochain's class; `None` if it is not a cocycle.
    pub fn coordinates(&self, x: &[i64]) -> Option<Vec<i64>> {
        if x.len() != self.moduli.len() {
            return None;
        }
        self.quotient.coordinates(&self.to_sigma(x))
    }

    /// A cocycle with the given coordinates.
    pub fn element(&self, coords: &[i64]) -> Vec<i64> {
        self.from_sigma(&self.quotient.element(coords))
    }

    pub fn representative(&self, j: usize) -> Vec<i64> {
        self.from_sigma(&self.quotient.representative(j))
    }

    pub fn all_coordinates(&self) -> Vec<Vec<i64>> {
        self.quotient.all_coordinates()
    }

    /// A cochain `b` of the previous degree with `d b = y`, or `None` when `y`
    /// is not a coboundary.
    pub fn solve_coboundary(&self, y: &[i64]) -> Option<Vec<i64>> {
        if self.incoming_moduli_len == 0 {
            return y.iter().all(|&v| v == 0).then(Vec::new);
        }
        let solver = SpanSolver::new(&self.boundary_images, self.moduli.len(), self.modulus);
        solver.solve(&self.to_sigma(y))
    }
}
