use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::integer::integral_homology;

/// Largest number of simplices a single level may hold.
pub const LEVEL_LIMIT: usize = 400_000;

/// Levels `X_0, …, X_N` of a simplicial set, elements numbered from zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSimplicialSet {
    sizes: Vec<usize>,
    /// `faces[n][i][x] = ∂_i x` for `x ∈ X_n`; `faces[0]` is empty.
    faces: Vec<Vec<Vec<usize>>>,
    /// `degeneracies[n][i][x] = σ_i x` for `x ∈ X_n` and `n < N`.
    degeneracies: Vec<Vec<Vec<usize>>>,
}

/// Raw JSON form of a truncated simplicial set.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplicialSetData {
    pub sizes: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<i64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

fn identity_failure(what: &str, n: usize) -> Error {
    Error::Invalid(format!("simplicial identity {what} fails at level {n}"))
}

/// Checks the simplicial identities for every composable pair within the
/// truncation.
pub(crate) fn check_identities(sizes: &[usize], faces: &[Vec<Vec<usize>>], degens: &[Vec<Vec<usize>>]) -> Result<()> {
    let top = sizes.len() - 1;
    for n in 2..=top {
        for j in 1..=n {
            for i in 0..j {
                let ok = (0..sizes[n]).all(|x| faces[n - 1][i][faces[n][j][x]] == faces[n - 1][j - 1][faces[n][i][x]]);
                if !ok {
                    return Err(identity_failure("d_i d_j = d_{j-1} d_i", n));
                }
            }
        }
    }
    for n in 0..top {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let ok = (0..sizes[n]).all(|x| {
                    let y = faces[n + 1][i][degens[n][j][x]];
                    let expect = if i < j {
                        degens[n - 1][j - 1][faces[n][i][x]]
                    } else if i == j || i == j + 1 {
                        x
                    } else {
                        degens[n - 1][j][faces[n][i - 1][x]]
                    };
                    y == expect
                });
                if !ok {
                    return Err(identity_failure("d_i s_j", n));
                }
            }
        }
    }
    for n in 0..top.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let ok = (0..sizes[n]).all(|x| degens[n + 1][i][degens[n][j][x]] == degens[n + 1][j + 1][degens[n][i][x]]);
                if !ok {
                    return Err(identity_failure("s_i s_j = s_{j+1} s_i", n));
                }
            }
        }
    }
    Ok(())
}

/// Looks up every element of `images` in `index`.
pub(crate) fn lookup_all<T: Eq + Hash>(index: &HashMap<T, usize>, images: impl Iterator<Item = T>, what: &str) -> Result<Vec<usize>> {
    images
        .map(|y| index.get(&y).copied().ok_or_else(|| Error::Invalid(format!("{what} leaves the given levels"))))
        .collect()
}

pub(crate) fn index_of<T: Clone + Eq + Hash>(elements: &[T]) -> Result<HashMap<T, usize>> {
    if elements.len() > LEVEL_LIMIT {
        return Err(Error::SearchBudgetExceeded(format!("a level has more than {LEVEL_LIMIT} simplices")));
    }
    let index: HashMap<T, usize> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    if index.len() != elements.len() {
        return Err(Error::Invalid("repeated simplex in a level".into()));
    }
    Ok(index)
}

impl TruncatedSimplicialSet {
    pub fn from_parts(sizes: Vec<usize>, faces: Vec<Vec<Vec<usize>>>, degeneracies: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::Invalid("a simplicial set needs level 0".into()));
        }
        let top = sizes.len() - 1;
        let shape = |what: &str| Err(Error::Invalid(format!("{what} have the wrong shape")));
        if faces.len() != top + 1 || !faces[0].is_empty() || degeneracies.len() != top {
            return shape("face or degeneracy lists");
        }
        for n in 1..=top {
            if faces[n].len() != n + 1 || faces[n].iter().any(|f| f.len() != sizes[n] || f.iter().any(|&y| y >= sizes[n - 1])) {
                return shape("face maps");
            }
        }
        for n in 0..top {
            if degeneracies[n].len() != n + 1
                || degeneracies[n].iter().any(|s| s.len() != sizes[n] || s.iter().any(|&y| y >= sizes[n + 1]))
            {
                return shape("degeneracy maps");
            }
        }
        check_identities(&sizes, &faces, &degeneracies)?;
        Ok(TruncatedSimplicialSet { sizes, faces, degeneracies })
    }

    pub fn from_data(data: SimplicialSetData) -> Result<Self> {
        Self::from_parts(data.sizes, data.faces, data.degeneracies)
    }

    pub fn to_data(&self) -> SimplicialSetData {
        SimplicialSetData { sizes: self.sizes.clone(), faces: self.faces.clone(), degeneracies: self.degeneracies.clone() }
    }

    /// Builds levels `0..=top` from explicit element lists and operators on
    /// elements. Every face and degeneracy must land in the listed elements.
    pub fn build<T, E, F, D>(top: usize, elements: E, face: F, degeneracy: D) -> Result<(Self, Vec<Vec<T>>)>
    where
        T: Clone + Eq + Hash,
        E: Fn(usize) -> Vec<T>,
        F: Fn(usize, usize, &T) -> T,
        D: Fn(usize, usize, &T) -> T,
    {
        let levels: Vec<Vec<T>> = (0..=top).map(&elements).collect();
        let index: Vec<HashMap<T, usize>> = levels.iter().map(|l| index_of(l)).collect::<Result<_>>()?;
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let maps = (0..=n)
                .map(|i| lookup_all(&index[n - 1], levels[n].iter().map(|x| face(n, i, x)), "a face"))
                .collect::<Result<Vec<_>>>()?;
            faces.push(maps);
        }
        let mut degeneracies = Vec::with_capacity(top);
        for n in 0..top {
            let maps = (0..=n)
                .map(|i| lookup_all(&index[n + 1], levels[n].iter().map(|x| degeneracy(n, i, x)), "a degeneracy"))
                .collect::<Result<Vec<_>>>()?;
            degeneracies.push(maps);
        }
        let sizes = levels.iter().map(|l| l.len()).collect();
        let set = Self::from_parts(sizes, faces, degeneracies)?;
        Ok((set, levels))
    }

    /// The constant simplicial set on `k` points.
    pub fn discrete(k: usize, top: usize) -> Self {
        let faces = (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![(0..k).collect(); n + 1] }).collect();
        let degeneracies = (0..top).map(|n| vec![(0..k).collect(); n + 1]).collect();
        TruncatedSimplicialSet { sizes: vec![k; top + 1], faces, degeneracies }
    }

    pub fn top(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn size(&self, n: usize) -> usize {
        self.sizes[n]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.faces[n][i][x]
    }

    pub fn degeneracy(&self, n: usize, i: usize, x: usize) -> usize {
        self.degeneracies[n][i][x]
    }

    pub(crate) fn face_map(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    pub(crate) fn degeneracy_map(&self, n: usize, i: usize) -> &[usize] {
        &self.degeneracies[n][i]
    }

    /// Keeps levels `0..=top`.
    pub fn truncate(&self, top: usize) -> Result<Self> {
        if top > self.top() {
            return Err(Error::TruncationInsufficient { needed: top, available: self.top() });
        }
        Ok(TruncatedSimplicialSet {
            sizes: self.sizes[..=top].to_vec(),
            faces: self.faces[..=top].to_vec(),
            degeneracies: self.degeneracies[..top].to_vec(),
        })
    }

    /// Marks the simplices of level `n` that are not degenerate.
    pub fn nondegenerate(&self, n: usize) -> Vec<bool> {
        let mut flags = vec![true; self.sizes[n]];
        if n > 0 {
            for s in &self.degeneracies[n - 1] {
                for &y in s {
                    flags[y] = false;
                }
            }
        }
        flags
    }

    /// Connected components: a label per vertex and the number of classes.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let mut parent: Vec<usize> = (0..self.sizes[0]).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        if self.top() >= 1 {
            for e in 0..self.sizes[1] {
                let a = find(&mut parent, self.faces[1][0][e]);
                let b = find(&mut parent, self.faces[1][1][e]);
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut label = vec![usize::MAX; self.sizes[0]];
        let mut roots: HashMap<usize, usize> = HashMap::new();
        for v in 0..self.sizes[0] {
            let r = find(&mut parent, v);
            let next = roots.len();
            label[v] = *roots.entry(r).or_insert(next);
        }
        (label, roots.len())
    }

    /// Normalized chains up to degree `top`.
    pub fn chains(&self, top: usize) -> NormalizedChains {
        let basis: Vec<Vec<usize>> = (0..=top)
            .map(|n| self.nondegenerate(n).iter().enumerate().filter(|(_, &b)| b).map(|(x, _)| x).collect())
            .collect();
        let position = basis
            .iter()
            .zip(&self.sizes)
            .map(|(b, &s)| {
                let mut pos = vec![None; s];
                for (k, &x) in b.iter().enumerate() {
                    pos[x] = Some(k);
                }
                pos
            })
            .collect();
        NormalizedChains { basis, position }
    }

    /// Boundary `C_n → C_{n-1}` of the normalized chain complex, one row per
    /// basis element of `C_{n-1}`.
    pub(crate) fn boundary_rows(&self, chains: &NormalizedChains, n: usize) -> Vec<Vec<i64>> {
        let mut rows = vec![vec![0i64; chains.basis[n].len()]; chains.basis[n - 1].len()];
        for (col, &x) in chains.basis[n].iter().enumerate() {
            for i in 0..=n {
                if let Some(r) = chains.position[n - 1][self.faces[n][i][x]] {
                    rows[r][col] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        rows
    }

    /// Integral homology in degrees `0..=top`; degree `k` needs level `k+1`.
    pub fn homology(&self, top: usize) -> Result<Vec<HomologyGroup>> {
        if top + 1 > self.top() {
            return Err(Error::TruncationInsufficient { needed: top + 1, available: self.top() });
        }
        let chains = self.chains(top + 1);
        let dims: Vec<usize> = chains.basis.iter().map(|b| b.len()).collect();
        let boundaries: Vec<Vec<Vec<i64>>> = (1..=top + 1).map(|n| self.boundary_rows(&chains, n)).collect();
        homology_groups(&dims, &boundaries)
    }
}

pub(crate) fn homology_groups(dims: &[usize], boundaries: &[Vec<Vec<i64>>]) -> Result<Vec<HomologyGroup>> {
    Ok(integral_homology(dims, boundaries)?
        .into_iter()
        .enumerate()
        .map(|(degree, (rank, torsion))| HomologyGroup { degree, rank, torsion: torsion.into_iter().map(|t| t as i64).collect() })
        .collect())
}

/// Nondegenerate simplices per degree and their positions.
#[derive(Clone, Debug)]
pub struct NormalizedChains {
    pub basis: Vec<Vec<usize>>,
    pub position: Vec<Vec<Option<usize>>>,
}

/// A map of truncated simplicial sets, level by level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// Checks commutation with every face and degeneracy.
    pub fn check(&self, source: &TruncatedSimplicialSet, target: &TruncatedSimplicialSet) -> Result<()> {
        let top = self.levels.len().checked_sub(1).ok_or_else(|| Error::Invalid("empty simplicial map".into()))?;
        if top > source.top() || top > target.top() {
            return Err(Error::TruncationInsufficient { needed: top, available: source.top().min(target.top()) });
        }
        for (n, level) in self.levels.iter().enumerate() {
            if level.len() != source.size(n) || level.iter().any(|&y| y >= target.size(n)) {
                return Err(Error::Invalid(format!("map has the wrong shape at level {n}")));
            }
        }
        for n in 1..=top {
            for i in 0..=n {
                if (0..source.size(n)).any(|x| self.levels[n - 1][source.face(n, i, x)] != target.face(n, i, self.levels[n][x])) {
                    return Err(Error::Invalid(format!("map does not commute with d_{i} at level {n}")));
                }
            }
        }
        for n in 0..top {
            for i in 0..=n {
                if (0..source.size(n))
                    .any(|x| self.levels[n + 1][source.degeneracy(n, i, x)] != target.degeneracy(n, i, self.levels[n][x]))
                {
                    return Err(Error::Invalid(format!("map does not commute with s_{i} at level {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, next: &SimplicialMap) -> SimplicialMap {
        let levels = self.levels.iter().zip(&next.levels).map(|(f, g)| f.iter().map(|&x| g[x]).collect()).collect();
        SimplicialMap { levels }
    }

    pub fn is_bijective(&self, target: &TruncatedSimplicialSet) -> bool {
        self.levels.iter().enumerate().all(|(n, level)| {
            let mut seen = vec![false; target.size(n)];
            level.len() == target.size(n) && level.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }
}

/// Homology of the mapping cone of `f: X → Y` in degrees `0..=top`. It
/// vanishes through degree `k` exactly when `f` induces isomorphisms on
/// homology below `k` and a surjection in degree `k`.
pub fn mapping_cone_homology(
    f: &SimplicialMap,
    source: &TruncatedSimplicialSet,
    target: &TruncatedSimplicialSet,
    top: usize,
) -> Result<Vec<HomologyGroup>> {
    let available = source.top().min(target.top()).min(f.levels.len().saturating_sub(1));
    if top + 1 > available {
        return Err(Error::TruncationInsufficient { needed: top + 1, available });
    }
    let cx = source.chains(top + 1);
    let cy = target.chains(top + 1);
    // cone_n = C_{n-1}(X) ⊕ C_n(Y), d(a, b) = (-∂a, f a + ∂b)
    let xdim = |n: usize| if n == 0 { 0 } else { cx.basis[n - 1].len() };
    let dims: Vec<usize> = (0..=top + 1).map(|n| xdim(n) + cy.basis[n].len()).collect();
    let mut boundaries = Vec::with_capacity(top + 1);
    for n in 1..=top + 1 {
        let mut rows = vec![vec![0i64; dims[n]]; dims[n - 1]];
        let shift_rows = xdim(n - 1);
        let shift_cols = xdim(n);
        if n >= 2 {
            let dx = source.boundary_rows(&cx, n - 1);
            for (r, row) in dx.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    rows[r][c] = -v;
                }
            }
        }
        for (c, &a) in cx.basis[n - 1].iter().enumerate() {
            if let Some(r) = cy.position[n - 1][f.levels[n - 1][a]] {
                rows[shift_rows + r][c] += 1;
            }
        }
        let dy = target.boundary_rows(&cy, n);
        for (r, row) in dy.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                rows[shift_rows + r][shift_cols + c] = v;
            }
        }
        boundaries.push(rows);
    }
    homology_groups(&dims, &boundaries)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The standard simplex `Δ^k` as monotone vertex sequences.
    fn simplex(k: usize, top: usize) -> TruncatedSimplicialSet {
        let seqs = |n: usize| {
            let mut out: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..=n {
                out = out
                    .into_iter()
                    .flat_map(|s| {
                        let lo = s.last().copied().unwrap_or(0);
                        (lo..=k).map(move |v| {
                            let mut t = s.clone();
                            t.push(v);
                            t
                        })
                    })
                    .collect();
            }
            out
        };
        let face = |_: usize, i: usize, s: &Vec<usize>| {
            let mut t = s.clone();
            t.remove(i);
            t
        };
        let degen = |_: usize, i: usize, s: &Vec<usize>| {
            let mut t = s.clone();
            t.insert(i, s[i]);
            t
        };
        TruncatedSimplicialSet::build(top, seqs, face, degen).unwrap().0
    }

    #[test]
    fn simplex_is_acyclic() {
        let d = simplex(2, 3);
        assert_eq!(d.size(0), 3);
        assert_eq!(d.size(1), 6);
        let h = d.homology(2).unwrap();
        assert_eq!(h[0], HomologyGroup { degree: 0, rank: 1, torsion: vec![] });
        assert!(h[1].is_zero() && h[2].is_zero());
        assert_eq!(d.components().1, 1);
    }

    #[test]
    fn broken_identity_is_rejected() {
        let d = simplex(1, 2);
        let mut data = d.to_data();
        data.faces[1][0].swap(0, 1);
        assert!(TruncatedSimplicialSet::from_data(data).is_err());
    }

    #[test]
    fn identity_map_has_acyclic_cone() {
        let d = simplex(2, 3);
        let id = SimplicialMap { levels: (0..=3).map(|n| (0..d.size(n)).collect()).collect() };
        id.check(&d, &d).unwrap();
        assert!(mapping_cone_homology(&id, &d, &d, 2).unwrap().iter().all(|h| h.is_zero()));
    }
}
