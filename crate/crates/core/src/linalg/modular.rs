//! Echelon and Smith forms over the principal ideal ring ℤ/N.
//!
//! Every finite abelian group handled by the crate is a subquotient of some
//! `(ℤ/N)^m`, so these two routines carry all the kernel, image and
//! invariant-factor computations.

/// Extended gcd on integers: `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn xgcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    xgcd(a, b).0
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b)) * b
    }
}

/// For nonzero `a` mod `n`, returns `(g, u)` with `g = gcd(a, n)`, `u` a unit
/// mod `n` and `a*u ≡ g (mod n)`.
pub fn unit_normalizer(a: i64, n: i64) -> (i64, i64) {
    let a = a.rem_euclid(n);
    if a == 0 {
        return (n, 1);
    }
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    let (_, inv, _) = xgcd(a1, n1);
    let u0 = inv.rem_euclid(n1.max(1));
    let mut u = u0;
    while gcd(u, n) != 1 {
        u += n1;
    }
    (g, u.rem_euclid(n))
}

#[inline]
fn axpy(dst: &mut [i64], coef: i64, src: &[i64], n: i64) {
    if coef == 0 {
        return;
    }
    for (d, s) in dst.iter_mut().zip(src) {
        if *s != 0 {
            *d = (*d + coef * s).rem_euclid(n);
        }
    }
}

/// Howell form of a submodule of `(ℤ/N)^ncols`.
///
/// Rows are in echelon form with pivot entries dividing `N`, entries above a
/// pivot reduced into `[0, pivot)`, and the Howell property: for every `k`,
/// the rows vanishing on the first `k` columns span every element of the
/// module that vanishes there. Membership and canonical coordinates follow.
#[derive(Clone, Debug)]
pub struct Howell {
    modulus: i64,
    ncols: usize,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl Howell {
    pub fn new<I>(gens: I, ncols: usize, modulus: i64) -> Self
    where
        I: IntoIterator<Item = Vec<i64>>,
    {
        let n = modulus;
        let mut rows: Vec<Vec<i64>> = gens
            .into_iter()
            .map(|mut g| {
                debug_assert_eq!(g.len(), ncols);
                for x in g.iter_mut() {
                    *x = x.rem_euclid(n);
                }
                g
            })
            .filter(|g| g.iter().any(|&x| x != 0))
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        if n == 1 {
            return Howell { modulus: n, ncols, rows: Vec::new(), pivots };
        }
        for c in 0..ncols {
            if r >= rows.len() {
                break;
            }
            let Some(first) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, first);
            for i in r + 1..rows.len() {
                let b = rows[i][c];
                if b == 0 {
                    continue;
                }
                let a = rows[r][c];
                if b % a == 0 {
                    let q = b / a;
                    let (head, tail) = rows.split_at_mut(i);
                    axpy(&mut tail[0][c..], -q, &head[r][c..], n);
                    continue;
                }
                let (g, s, t) = xgcd(a, b);
                let (u, v) = (-b / g, a / g);
                let (head, tail) = rows.split_at_mut(i);
                let top = &mut head[r];
                let bot = &mut tail[0];
                for k in c..ncols {
                    let (x, y) = (top[k], bot[k]);
                    if x == 0 && y == 0 {
                        continue;
                    }
                    top[k] = (s * x + t * y).rem_euclid(n);
                    bot[k] = (u * x + v * y).rem_euclid(n);
                }
            }
            let (g, unit) = unit_normalizer(rows[r][c], n);
            if unit != 1 {
                for x in rows[r][c..].iter_mut() {
                    *x = (*x * unit).rem_euclid(n);
                }
            }
            debug_assert_eq!(rows[r][c], g);
            for i in 0..r {
                let q = rows[i][c].div_euclid(g);
                if q != 0 {
                    let (head, tail) = rows.split_at_mut(r);
                    axpy(&mut head[i][c..], -q, &tail[0][c..], n);
                }
            }
            let scale = n / g;
            if scale != 1 {
                let ann: Vec<i64> = rows[r].iter().map(|x| (x * scale).rem_euclid(n)).collect();
                if ann.iter().any(|&x| x != 0) {
                    rows.push(ann);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        Howell { modulus: n, ncols, rows, pivots }
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Number of elements of the module.
    pub fn order(&self) -> u128 {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &c)| (self.modulus / row[c]) as u128)
            .product()
    }

    /// Canonical coefficients of `v` against the rows, or `None` if `v` is
    /// not in the module. Coefficient `k` lies in `[0, N / pivot_k)`.
    pub fn coefficients(&self, v: &[i64]) -> Option<Vec<i64>> {
        let n = self.modulus;
        let mut w: Vec<i64> = v.iter().map(|x| x.rem_euclid(n)).collect();
        let mut coeffs = vec![0i64; self.rows.len()];
        let mut k = 0usize;
        for c in 0..self.ncols {
            if w[c] == 0 {
                continue;
            }
            while k < self.pivots.len() && self.pivots[k] < c {
                k += 1;
            }
            if k >= self.pivots.len() || self.pivots[k] != c {
                return None;
            }
            let p = self.rows[k][c];
            if w[c] % p != 0 {
                return None;
            }
            let q = w[c] / p;
            coeffs[k] = q;
            axpy(&mut w, -q, &self.rows[k], n);
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.coefficients(v).is_some()
    }

    pub fn combine(&self, coeffs: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ncols];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            axpy(&mut out, c, row, self.modulus);
        }
        out
    }
}

/// Generators of `{x ∈ (ℤ/N)^m : Σ_j x_j · images[j] = 0}` where `images[j]`
/// is the image of the j-th basis vector (each of length `target_len`).
pub fn kernel(images: &[Vec<i64>], target_len: usize, modulus: i64) -> Vec<Vec<i64>> {
    let m = images.len();
    if modulus == 1 {
        return Vec::new();
    }
    let rows = images.iter().enumerate().map(|(j, img)| {
        let mut row = Vec::with_capacity(target_len + m);
        row.extend(img.iter().map(|x| x.rem_euclid(modulus)));
        row.extend((0..m).map(|k| i64::from(k == j)));
        row
    });
    let h = Howell::new(rows, target_len + m, modulus);
    h.rows
        .iter()
        .filter(|row| row[..target_len].iter().all(|&x| x == 0))
        .map(|row| row[target_len..].to_vec())
        .collect()
}

/// Solves `Σ_j x_j · images[j] = y` over ℤ/N for `y` in the span.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    target_len: usize,
    howell: Howell,
}

impl SpanSolver {
    pub fn new(images: &[Vec<i64>], target_len: usize, modulus: i64) -> Self {
        let m = images.len();
        let rows = images.iter().enumerate().map(|(j, img)| {
            let mut row = Vec::with_capacity(target_len + m);
            row.extend(img.iter().map(|x| x.rem_euclid(modulus)));
            row.extend((0..m).map(|k| i64::from(k == j)));
            row
        });
        SpanSolver { target_len, howell: Howell::new(rows, target_len + m, modulus) }
    }

    /// Some `x` with `Σ x_j images[j] = y`, or `None` if `y` is not in the span.
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let n = self.howell.modulus;
        let t = self.target_len;
        let width = self.howell.ncols;
        let mut w = vec![0i64; width];
        for (wi, yi) in w.iter_mut().zip(y) {
            *wi = yi.rem_euclid(n);
        }
        if n == 1 {
            return Some(vec![0; width - t]);
        }
        let mut k = 0usize;
        for c in 0..t {
            if w[c] == 0 {
                continue;
            }
            while k < self.howell.pivots.len() && self.howell.pivots[k] < c {
                k += 1;
            }
            if k >= self.howell.pivots.len() || self.howell.pivots[k] != c {
                return None;
            }
            let p = self.howell.rows[k][c];
            if w[c] % p != 0 {
                return None;
            }
            let q = w[c] / p;
            axpy(&mut w[c..], -q, &self.howell.rows[k][c..], n);
        }
        Some(w[t..].iter().map(|x| (-x).rem_euclid(n)).collect())
    }
}

/// Smith form of a row space, with the column transform tracked.
///
/// For `M` with rows in `(ℤ/N)^ncols`, finds `Q` invertible with
/// `rowspace(M)·Q = ⊕ diag[j]·ℤ/N`, so the cokernel `(ℤ/N)^ncols / rowspace(M)`
/// is `⊕ ℤ/diag[j]` in the coordinates `y = x·Q`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    /// One entry per column, each a divisor of `N` (`N` itself for a free
    /// ℤ/N summand), non-decreasing under divisibility.
    pub diag: Vec<i64>,
    pub q: Vec<Vec<i64>>,
    pub q_inv: Vec<Vec<i64>>,
}

pub fn smith_rowspace(mut m: Vec<Vec<i64>>, ncols: usize, modulus: i64) -> SmithForm {
    let n = modulus;
    let mut q: Vec<Vec<i64>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut q_inv = q.clone();
    for row in m.iter_mut() {
        for x in row.iter_mut() {
            *x = x.rem_euclid(n);
        }
    }
    m.retain(|row| row.iter().any(|&x| x != 0));
    let nrows = m.len();
    let bound = nrows.min(ncols);
    let mut diag = vec![n; ncols];
    if n == 1 {
        return SmithForm { diag: vec![1; ncols], q, q_inv };
    }

    let col_combine = |m: &mut Vec<Vec<i64>>,
                       q: &mut Vec<Vec<i64>>,
                       q_inv: &mut Vec<Vec<i64>>,
                       t: usize,
                       j: usize,
                       k: [i64; 4]| {
        // [col_t, col_j] <- [col_t, col_j] * [[k0, k1], [k2, k3]]
        let [k0, k1, k2, k3] = k;
        for row in m.iter_mut() {
            let (x, y) = (row[t], row[j]);
            if x == 0 && y == 0 {
                continue;
            }
            row[t] = (k0 * x + k2 * y).rem_euclid(n);
            row[j] = (k1 * x + k3 * y).rem_euclid(n);
        }
        for row in q.iter_mut() {
            let (x, y) = (row[t], row[j]);
            row[t] = (k0 * x + k2 * y).rem_euclid(n);
            row[j] = (k1 * x + k3 * y).rem_euclid(n);
        }
        // inverse of a determinant-one 2x2 acts on rows t, j of Q^{-1}
        let (rt, rj) = (q_inv[t].clone(), q_inv[j].clone());
        for c in 0..ncols {
            q_inv[t][c] = (k3 * rt[c] - k1 * rj[c]).rem_euclid(n);
            q_inv[j][c] = (-k2 * rt[c] + k0 * rj[c]).rem_euclid(n);
        }
    };

    for t in 0..bound {
        // pivot: smallest ideal generator, then row-major
        let mut best: Option<(i64, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let g = gcd(x, n);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap(t, pi);
        if pj != t {
            // signed swap keeps determinant one
            col_combine(&mut m, &mut q, &mut q_inv, t, pj, [0, 1, -1, 0]);
        }
        loop {
            let (g, unit) = unit_normalizer(m[t][t], n);
            if unit != 1 {
                for x in m[t].iter_mut() {
                    *x = (*x * unit).rem_euclid(n);
                }
            }
            let g = if m[t][t] == 0 { n } else { g };
            let mut dirty = false;
            for i in t + 1..m.len() {
                let b = m[i][t];
                if b == 0 {
                    continue;
                }
                if b % g == 0 {
                    let coef = b / g;
                    let (head, tail) = m.split_at_mut(i);
                    axpy(&mut tail[0], -coef, &head[t], n);
                } else {
                    let a = m[t][t];
                    let (gg, s, x) = xgcd(a, b);
                    let (u, v) = (-b / gg, a / gg);
                    let (head, tail) = m.split_at_mut(i);
                    let top = &mut head[t];
                    let bot = &mut tail[0];
                    for c in t..ncols {
                        let (p, r) = (top[c], bot[c]);
                        top[c] = (s * p + x * r).rem_euclid(n);
                        bot[c] = (u * p + v * r).rem_euclid(n);
                    }
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            for j in t + 1..ncols {
                let b = m[t][j];
                if b == 0 {
                    continue;
                }
                if b % g == 0 {
                    let coef = b / g;
                    col_combine(&mut m, &mut q, &mut q_inv, t, j, [1, -coef, 0, 1]);
                } else {
                    let a = m[t][t];
                    let (gg, s, x) = xgcd(a, b);
                    let (u, v) = (-b / gg, a / gg);
                    col_combine(&mut m, &mut q, &mut q_inv, t, j, [s, u, x, v]);
                    dirty = true;
                    break;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..m.len()).find(|&i| m[i][t + 1..].iter().any(|&x| x % g != 0));
            if let Some(i) = bad {
                let (head, tail) = m.split_at_mut(i);
                axpy(&mut head[t], 1, &tail[0], n);
                continue;
            }
            break;
        }
        diag[t] = if m[t][t] == 0 { n } else { gcd(m[t][t], n) };
    }
    SmithForm { diag, q, q_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_span(gens: &[Vec<i64>], ncols: usize, n: i64) -> std::collections::BTreeSet<Vec<i64>> {
        let mut span = std::collections::BTreeSet::new();
        span.insert(vec![0; ncols]);
        loop {
            let mut grew = false;
            let current: Vec<_> = span.iter().cloned().collect();
            for v in &current {
                for g in gens {
                    let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b).rem_euclid(n)).collect();
                    grew |= span.insert(w);
                }
            }
            if !grew {
                return span;
            }
        }
    }

    #[test]
    fn unit_normalizer_hits_gcd() {
        for n in 2..40 {
            for a in 1..n {
                let (g, u) = unit_normalizer(a, n);
                assert_eq!(gcd(u, n), 1);
                assert_eq!((a * u).rem_euclid(n), g);
            }
        }
    }

    #[test]
    fn howell_order_matches_enumeration() {
        let n = 12;
        let gens = vec![vec![2, 3, 0], vec![4, 0, 6], vec![0, 9, 3]];
        let h = Howell::new(gens.clone(), 3, n);
        let span = brute_span(&gens, 3, n);
        assert_eq!(h.order(), span.len() as u128);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = vec![a, b, c];
                    assert_eq!(h.contains(&v), span.contains(&v), "{v:?}");
                }
            }
        }
    }

    #[test]
    fn kernel_of_multiplication_by_two_mod_four() {
        // x -> 2x on ℤ/4 has kernel {0, 2}
        let k = kernel(&[vec![2]], 1, 4);
        let h = Howell::new(k, 1, 4);
        assert_eq!(h.order(), 2);
        assert!(h.contains(&[2]));
    }

    #[test]
    fn span_solver_recovers_combination() {
        let images = vec![vec![2, 0, 4], vec![0, 3, 3], vec![1, 1, 1]];
        let solver = SpanSolver::new(&images, 3, 6);
        let y = vec![(2 * 2 + 1) % 6, (3 + 1) % 6, (2 * 4 + 3 + 1) % 6];
        let x = solver.solve(&y).unwrap();
        for c in 0..3 {
            let s: i64 = (0..3).map(|j| x[j] * images[j][c]).sum();
            assert_eq!(s.rem_euclid(6), y[c]);
        }
        let lone = SpanSolver::new(&[vec![2]], 1, 4);
        assert!(lone.solve(&[1]).is_none());
    }

    #[test]
    fn smith_cokernel_of_z4_relations() {
        // (ℤ/4)^2 / <(2, 2)>  ≅ ℤ/2 ⊕ ℤ/4
        let s = smith_rowspace(vec![vec![2, 2]], 2, 4);
        let mut d = s.diag.clone();
        d.sort();
        assert_eq!(d, vec![2, 4]);
    }
}
