//! Level-one modular-form dimensions and the weights of `H¹(SL₂(ℤ), V_m)`.

use serde::Serialize;

use crate::error::Result;

use super::graded::{colie_weights, GradedSpace};

/// `dim M_k = #{(a, b) ≥ 0 : 4a + 6b = k}`.
pub fn dim_modular_forms(k: i64) -> u128 {
    if k < 0 {
        return 0;
    }
    (0..=k / 6).filter(|b| (k - 6 * b) % 4 == 0).count() as u128
}

/// `dim S_k = max(dim M_k − 1, 0)` for even `k ≥ 4`, zero otherwise.
pub fn dim_cusp_forms(k: i64) -> u128 {
    if k < 4 || k % 2 != 0 {
        return 0;
    }
    dim_modular_forms(k).saturating_sub(1)
}

pub fn dim_eisenstein(k: i64) -> u128 {
    dim_modular_forms(k) - dim_cusp_forms(k)
}

/// Weights of `H¹(SL₂(ℤ), V_m)(−m)`: weight `m + 1` with dimension
/// `2 dim S_{m+2}` and weight `2m + 2` with dimension `dim E_{m+2}`.
/// Zero for odd `m` and for `m = 0`.
pub fn modular_h1(m: i64) -> GradedSpace {
    let mut out = GradedSpace::new();
    if m <= 0 || m % 2 != 0 {
        return out;
    }
    let k = m + 2;
    let cusp = 2 * dim_cusp_forms(k);
    let eis = dim_eisenstein(k);
    if cusp > 0 {
        out.add(m + 1, cusp);
        out.labels.insert(m + 1, "cusp".into());
    }
    if eis > 0 {
        out.add(2 * m + 2, eis);
        out.labels.insert(2 * m + 2, "Eisenstein".into());
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LsWeightReport {
    pub lambda_weight: i64,
    /// Truncation: only `m ≤ m_max` contributes generators.
    pub m_max: i64,
    pub s: usize,
    pub generators: GradedSpace,
    pub weights: GradedSpace,
    /// Every weight of `L_s` is strictly positive.
    pub e1_diag_zero: bool,
}

/// Generators `⊕_{m ≤ m_max} H¹(SL₂(ℤ), V_m)(−m) ⊗ S^m Λ`, with `S^m Λ` of
/// dimension `m + 1` and pure weight `m·lambda_weight`, and their free-Lie
/// piece of bracket length `s`.
pub fn ls_weight_report(lambda_weight: i64, m_max: i64, s: usize) -> Result<LsWeightReport> {
    let mut generators = GradedSpace::new();
    for m in 0..=m_max {
        let h1 = modular_h1(m);
        generators.extend(&h1.twisted(m * lambda_weight, (m + 1) as u128));
    }
    let weights = colie_weights(&generators, s)?;
    let e1_diag_zero = weights.min_weight().is_none_or(|w| w > 0);
    Ok(LsWeightReport { lambda_weight, m_max, s, generators, weights, e1_diag_zero })
}
