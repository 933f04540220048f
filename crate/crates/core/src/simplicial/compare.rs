use serde::Serialize;

use crate::error::{Error, Result};

use super::bisimplicial::TruncatedBisimplicialSet;
use super::set::{mapping_cone_homology, HomologyGroup};

#[derive(Clone, Debug, Serialize)]
pub struct DiagonalComparison {
    /// Highest degree whose homology the truncation determines.
    pub safe_degree: usize,
    pub diagonal: Vec<HomologyGroup>,
    pub codiagonal: Vec<HomologyGroup>,
    pub groups_equal: bool,
    /// The mapping cone of `diag X → ∇X` is acyclic through the safe degree.
    pub cone_acyclic: bool,
    /// The natural map is an isomorphism on homology through the safe degree.
    pub map_iso: bool,
}

/// Integral homology of `diag X` and `∇X` in the degrees `k` with
/// `k + 1 ≤ N`, and whether the natural map between them is an isomorphism.
///
/// An acyclic cone through degree `k` gives isomorphisms below `k` and a
/// surjection in degree `k`; a surjection between isomorphic finitely
/// generated abelian groups is an isomorphism.
pub fn diag_vs_codiag(x: &TruncatedBisimplicialSet) -> Result<DiagonalComparison> {
    let top = x.diagonal_top().min(x.codiagonal_top());
    if top == 0 {
        return Err(Error::TruncationInsufficient { needed: 1, available: 0 });
    }
    let safe_degree = top - 1;
    let diag = x.diagonal()?.truncate(top)?;
    let cod = x.codiagonal_to(top)?;
    let map = x.diagonal_to_codiagonal(&cod)?;
    map.check(&diag, &cod.set)?;
    let diagonal = diag.homology(safe_degree)?;
    let codiagonal = cod.set.homology(safe_degree)?;
    let groups_equal = diagonal == codiagonal;
    let cone_acyclic = mapping_cone_homology(&map, &diag, &cod.set, safe_degree)?.iter().all(|h| h.is_zero());
    Ok(DiagonalComparison { safe_degree, diagonal, codiagonal, groups_equal, cone_acyclic, map_iso: groups_equal && cone_acyclic })
}
