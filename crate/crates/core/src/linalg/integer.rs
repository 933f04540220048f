//! Smith diagonal over ℤ, used for integral homology of free chain complexes.

use crate::error::{Error, Result};

/// Nonzero Smith invariants `d_1 | d_2 | ...` of an integer matrix.
///
/// Pivoting takes the smallest nonzero absolute value, ties broken row-major,
/// so the elimination sequence is reproducible.
pub fn smith_diagonal(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<i128>> {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let nrows = m.len();
    let mut out = Vec::new();
    let overflow = || Error::Arithmetic("integer Smith form overflowed i128".into());
    for t in 0..nrows.min(ncols) {
        loop {
            let mut best: Option<(i128, usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                        best = Some((x.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return Ok(out);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                let b = m[i][t];
                if b == 0 {
                    continue;
                }
                let q = b.div_euclid(p);
                for c in t..ncols {
                    let v = m[t][c].checked_mul(q).ok_or_else(overflow)?;
                    m[i][c] = m[i][c].checked_sub(v).ok_or_else(overflow)?;
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..ncols {
                let b = m[t][j];
                if b == 0 {
                    continue;
                }
                let q = b.div_euclid(p);
                for row in m.iter_mut().skip(t) {
                    let v = row[t].checked_mul(q).ok_or_else(overflow)?;
                    row[j] = row[j].checked_sub(v).ok_or_else(overflow)?;
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            if let Some(i) = (t + 1..nrows).find(|&i| m[i][t + 1..].iter().any(|&x| x % p != 0)) {
                for c in t..ncols {
                    m[t][c] = m[t][c].checked_add(m[i][c]).ok_or_else(overflow)?;
                }
                continue;
            }
            out.push(p.abs());
            break;
        }
    }
    Ok(out)
}

/// Integral homology of a free chain complex given by boundary matrices.
///
/// `boundaries[k]` maps `C_{k+1} -> C_k` (rows indexed by `C_k`). Returns, for
/// each degree `k < dims.len() - 1`, the pair `(free rank, torsion invariants)`.
pub fn integral_homology(dims: &[usize], boundaries: &[Vec<Vec<i64>>]) -> Result<Vec<(usize, Vec<i128>)>> {
    let mut smith = Vec::with_capacity(boundaries.len());
    for (k, b) in boundaries.iter().enumerate() {
        smith.push(smith_diagonal(b, dims[k + 1])?);
    }
    let mut out = Vec::new();
    for k in 0..boundaries.len() {
        let rank_out = if k == 0 { 0 } else { smith[k - 1].len() };
        let rank_in = smith[k].len();
        let free = dims[k] - rank_out - rank_in;
        let torsion: Vec<i128> = smith[k].iter().copied().filter(|&d| d != 1).collect();
        out.push((free, torsion));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_of_small_matrix() {
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_diagonal(&m, 3).unwrap(), vec![2, 6, 12]);
    }

    #[test]
    fn homology_of_circle() {
        // one vertex, one edge with both ends at the vertex: d = 0
        let h = integral_homology(&[1, 1, 0], &[vec![vec![0]], vec![vec![]]]).unwrap();
        assert_eq!(h[0], (1, vec![]));
        assert_eq!(h[1], (1, vec![]));
    }
}
