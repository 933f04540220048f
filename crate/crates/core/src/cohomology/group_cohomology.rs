use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{GModule, GroupHom};

use super::bar::{check_degree, degree_problem, Cochain};
use super::complex::CohomologyData;

/// `H^n(G, A)` with invariant factors, representative cocycles and a
/// classification map from cocycles to coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    degree: usize,
    module: GModule,
    data: CohomologyData,
}

/// Computes `H^n(G, A)` from the normalized bar complex.
pub fn cohomology(module: &GModule, n: usize, budget: &Budget) -> Result<CohomologyGroup> {
    check_degree(module, n, budget)?;
    let problem = degree_problem(module, n);
    let data = problem.solve(budget)?;
    Ok(CohomologyGroup { degree: n, module: module.clone(), data })
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    /// Invariant factors `d_1 | d_2 | …`; empty for the zero group.
    pub fn invariants(&self) -> &[i64] {
        self.data.invariants()
    }

    pub fn order(&self) -> u128 {
        self.data.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.data.order() == 1
    }

    /// `|Z^n|`.
    pub fn cocycle_count(&self) -> u128 {
        self.data.cocycle_count()
    }

    /// `|B^n|`.
    pub fn coboundary_count(&self) -> u128 {
        self.data.cocycle_count() / self.data.order()
    }

    /// Coordinates of the class of a cocycle.
    pub fn classify(&self, c: &Cochain) -> Result<Vec<i64>> {
        if c.degree != self.degree {
            return Err(Error::Invalid(format!("expected a degree-{} cochain", self.degree)));
        }
        self.data.coordinates(&c.values).ok_or(Error::NotACocycle)
    }

    pub fn representative(&self, j: usize) -> Cochain {
        Cochain { degree: self.degree, values: self.data.representative(j) }
    }

    pub fn representatives(&self) -> Vec<Cochain> {
        (0..self.invariants().len()).map(|j| self.representative(j)).collect()
    }

    /// A cocycle whose class has the given coordinates.
    pub fn element(&self, coords: &[i64]) -> Cochain {
        Cochain { degree: self.degree, values: self.data.element(coords) }
    }

    /// Every coordinate vector, in mixed-radix order.
    pub fn all_classes(&self) -> Vec<Vec<i64>> {
        self.data.all_coordinates()
    }

    pub fn is_zero_class(coords: &[i64]) -> bool {
        coords.iter().all(|&x| x == 0)
    }

    /// A cochain `b` of degree `n − 1` with `db = c`, or `None` when `c` is
    /// not a coboundary.
    pub fn solve_coboundary(&self, c: &Cochain) -> Option<Cochain> {
        let x = self.data.solve_coboundary(&c.values)?;
        let k = self.module.rank().max(1);
        let f = self.module.factors();
        let values = x.iter().enumerate().map(|(i, v)| v.rem_euclid(f[i % k])).collect();
        Some(Cochain { degree: self.degree - 1, values })
    }

    pub fn data(&self) -> &CohomologyData {
        &self.data
    }
}

/// The cochain `c ∘ (ψ × … × ψ)` over the source of `ψ`, valued in `ψ*A`.
pub fn pullback_cochain(psi: &GroupHom, module: &GModule, c: &Cochain) -> Result<(GModule, Cochain)> {
    let pulled = module.pullback(psi)?;
    let out = Cochain::from_fn(&pulled, c.degree, |t| {
        let image: Vec<usize> = t.iter().map(|&x| psi.apply(x)).collect();
        c.value(module, &image)
    });
    Ok((pulled, out))
}

/// Pulls back a class of `H^n(Π′, A)` along `ψ: G → Π′`, returning
/// `H^n(G, ψ*A)` and the coordinates of the pulled-back class.
pub fn pullback_class(psi: &GroupHom, source: &CohomologyGroup, coords: &[i64], budget: &Budget) -> Result<(CohomologyGroup, Vec<i64>)> {
    let c = source.element(coords);
    let (pulled, pc) = pullback_cochain(psi, source.module(), &c)?;
    let target = cohomology(&pulled, source.degree(), budget)?;
    let cls = target.classify(&pc)?;
    Ok((target, cls))
}
