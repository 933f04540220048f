//! Named groups. All are built by closure from generators, so element order
//! follows word length in the listed generators.

use crate::error::{Error, Result};

use super::{FiniteGroup, GroupRef};

const CATALOG_LIMIT: usize = 100_000;

pub fn cyclic(n: usize) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::InvalidGroup("cyclic group of order 0".into()));
    }
    let gens: Vec<usize> = if n == 1 { vec![] } else { vec![1] };
    let (g, _) = FiniteGroup::from_closure(format!("C{n}"), 0usize, &gens, |a, b| (a + b) % n, CATALOG_LIMIT)?;
    Ok(g.into_ref())
}

pub fn trivial() -> GroupRef {
    cyclic(1).expect("trivial group")
}

/// Dihedral group of order `2n` (symmetries of an `n`-gon).
pub fn dihedral(n: usize) -> Result<GroupRef> {
    if n == 0 {
        return Err(Error::InvalidGroup("dihedral group needs n >= 1".into()));
    }
    // (r, f) is rot^r ref^f
    let mul = move |a: &(usize, u8), b: &(usize, u8)| {
        let r = if a.1 == 0 { (a.0 + b.0) % n } else { (a.0 + n - b.0) % n };
        (r, a.1 ^ b.1)
    };
    let gens = if n == 1 { vec![(0, 1)] } else { vec![(1 % n, 0u8), (0, 1)] };
    let (g, _) = FiniteGroup::from_closure(format!("D{}", 2 * n), (0usize, 0u8), &gens, mul, CATALOG_LIMIT)?;
    Ok(g.into_ref())
}

fn compose(p: &Vec<u8>, q: &Vec<u8>) -> Vec<u8> {
    // apply p first, then q
    p.iter().map(|&i| q[i as usize]).collect()
}

fn perm_group(name: String, degree: usize, gens: Vec<Vec<u8>>) -> Result<GroupRef> {
    let id: Vec<u8> = (0..degree as u8).collect();
    let gens: Vec<Vec<u8>> = gens.into_iter().filter(|g| *g != id).collect();
    let (g, _) = FiniteGroup::from_closure(name, id, &gens, compose, CATALOG_LIMIT)?;
    Ok(g.into_ref())
}

fn cycle(degree: usize, points: &[usize]) -> Vec<u8> {
    let mut p: Vec<u8> = (0..degree as u8).collect();
    for (k, &a) in points.iter().enumerate() {
        p[a] = points[(k + 1) % points.len()] as u8;
    }
    p
}

/// Symmetric group on `n <= 5` points.
pub fn symmetric(n: usize) -> Result<GroupRef> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidGroup("symmetric groups are available for 1 <= n <= 5".into()));
    }
    let gens = if n == 1 {
        vec![]
    } else {
        vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())]
    };
    perm_group(format!("S{n}"), n, gens)
}

/// Alternating group on `n <= 5` points.
pub fn alternating(n: usize) -> Result<GroupRef> {
    if n == 0 || n > 5 {
        return Err(Error::InvalidGroup("alternating groups are available for 1 <= n <= 5".into()));
    }
    let gens = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
    perm_group(format!("A{n}"), n, gens)
}

/// Quaternion group `{±1, ±i, ±j, ±k}` generated by `i` and `j`.
pub fn quaternion8() -> GroupRef {
    // (sign, unit) with unit 0=1, 1=i, 2=j, 3=k
    fn unit_mul(a: u8, b: u8) -> (bool, u8) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 1) => (true, 3),
            (2, 3) => (false, 1),
            (3, 2) => (true, 1),
            (3, 1) => (false, 2),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let mul = |a: &(bool, u8), b: &(bool, u8)| {
        let (s, u) = unit_mul(a.1, b.1);
        (a.0 ^ b.0 ^ s, u)
    };
    let (g, _) = FiniteGroup::from_closure("Q8", (false, 0u8), &[(false, 1u8), (false, 2u8)], mul, 8)
        .expect("quaternion group");
    g.into_ref()
}

pub fn klein4() -> GroupRef {
    let c2 = cyclic(2).expect("C2");
    super::direct_product(&c2, &c2).expect("V4").with_name("V4").into_ref()
}

/// Parses names such as `C6`, `D8`, `S3`, `A4`, `Q8`, `V4`, `1`.
///
/// `D<m>` is the dihedral group of order `m`.
pub fn by_name(name: &str) -> Result<GroupRef> {
    let bad = || Error::InvalidGroup(format!("unknown catalog group `{name}`"));
    let name = name.trim();
    match name {
        "1" | "trivial" => return Ok(trivial()),
        "Q8" => return Ok(quaternion8()),
        "V4" | "K4" => return Ok(klein4()),
        _ => {}
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "C" | "Z" => cyclic(n),
        "D" if n % 2 == 0 => dihedral(n / 2),
        "S" => symmetric(n),
        "A" => alternating(n),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_orders() {
        assert_eq!(cyclic(7).unwrap().order(), 7);
        assert_eq!(dihedral(4).unwrap().order(), 8);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(quaternion8().order(), 8);
        assert_eq!(klein4().order(), 4);
        assert_eq!(by_name("D6").unwrap().order(), 6);
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion8();
        let involutions = q.elements().filter(|&x| q.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
        assert!(!q.is_abelian());
    }
}
