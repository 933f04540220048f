use std::fmt;

use serde::Serialize;

/// A bracket monomial over indexed generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Bracket {
    Gen(usize),
    Pair(Box<Bracket>, Box<Bracket>),
}

impl Bracket {
    pub fn degree(&self) -> usize {
        match self {
            Bracket::Gen(_) => 1,
            Bracket::Pair(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        match self {
            Bracket::Gen(i) => vec![*i],
            Bracket::Pair(a, b) => {
                let mut v = a.leaves();
                v.extend(b.leaves());
                v
            }
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bracket::Gen(i) => write!(f, "x{}", i + 1),
            Bracket::Pair(a, b) => write!(f, "[{a},{b}]"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HallElement {
    pub bracket: Bracket,
    pub degree: usize,
    pub weight: i64,
}

#[derive(Clone, Copy, Debug)]
struct Node {
    /// `(left, right)` positions for brackets, `None` for generators.
    children: Option<(usize, usize)>,
    degree: usize,
    weight: i64,
    generator: usize,
}

/// Basic commutators up to a fixed degree, in Hall order.
///
/// Generators come first in input order; later elements are ordered by
/// degree, then by creation. `[u, v]` is basic when `u > v` and, if
/// `u = [u', u'']`, also `u'' ≤ v`.
#[derive(Clone, Debug)]
pub struct HallSet {
    nodes: Vec<Node>,
    /// `by_degree[n]` lists the positions of degree-`n` elements.
    by_degree: Vec<Vec<usize>>,
}

impl HallSet {
    pub fn new(generator_weights: &[i64], max_degree: usize) -> Self {
        let mut nodes: Vec<Node> = generator_weights
            .iter()
            .enumerate()
            .map(|(i, &w)| Node { children: None, degree: 1, weight: w, generator: i })
            .collect();
        let mut by_degree = vec![Vec::new(), (0..nodes.len()).collect::<Vec<_>>()];
        for n in 2..=max_degree {
            let mut level = Vec::new();
            for du in 1..n {
                let dv = n - du;
                for &u in &by_degree[du] {
                    for &v in &by_degree[dv] {
                        if u <= v {
                            continue;
                        }
                        if let Some((_, u2)) = nodes[u].children {
                            if u2 > v {
                                continue;
                            }
                        }
                        level.push((u, v));
                    }
                }
            }
            let mut positions = Vec::with_capacity(level.len());
            for (u, v) in level {
                positions.push(nodes.len());
                nodes.push(Node { children: Some((u, v)), degree: n, weight: nodes[u].weight + nodes[v].weight, generator: 0 });
            }
            by_degree.push(positions);
        }
        HallSet { nodes, by_degree }
    }

    fn bracket(&self, i: usize) -> Bracket {
        match self.nodes[i].children {
            None => Bracket::Gen(self.nodes[i].generator),
            Some((u, v)) => Bracket::Pair(Box::new(self.bracket(u)), Box::new(self.bracket(v))),
        }
    }

    pub fn count(&self, n: usize) -> usize {
        self.by_degree.get(n).map_or(0, |v| v.len())
    }

    /// Elements of degree `n`.
    pub fn degree(&self, n: usize) -> Vec<HallElement> {
        self.by_degree.get(n).map_or_else(Vec::new, |v| {
            v.iter()
                .map(|&i| HallElement { bracket: self.bracket(i), degree: n, weight: self.nodes[i].weight })
                .collect()
        })
    }

    /// Weights of the degree-`n` elements, without building trees.
    pub fn weights(&self, n: usize) -> Vec<i64> {
        self.by_degree.get(n).map_or_else(Vec::new, |v| v.iter().map(|&i| self.nodes[i].weight).collect())
    }

    /// Checks the basic-commutator conditions on every stored bracket.
    pub fn satisfies_hall_conditions(&self) -> bool {
        self.nodes.iter().enumerate().all(|(t, node)| match node.children {
            None => true,
            Some((u, v)) => {
                let right_ok = match self.nodes[u].children {
                    None => true,
                    Some((_, u2)) => u2 <= v,
                };
                u > v && t > u && right_ok && node.degree == self.nodes[u].degree + self.nodes[v].degree
            }
        })
    }
}

/// The Hall basis of bracket length `n` on generators with the given weights.
pub fn hall_basis(generator_weights: &[i64], n: usize) -> Vec<HallElement> {
    HallSet::new(generator_weights, n).degree(n)
}

fn mobius(mut n: u64) -> i128 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|e| n % e == 0).collect()
}

pub(crate) fn mu(n: usize) -> i128 {
    mobius(n as u64)
}

/// `(1/n) Σ_{e | n} μ(e) d^{n/e}`, the rank of the degree-`n` part of the
/// free Lie algebra on `d` generators.
pub fn witt_rank(d: u64, n: usize) -> u128 {
    assert!(n >= 1, "degree must be positive");
    let total: i128 = divisors(n)
        .into_iter()
        .map(|e| mu(e) * (d as i128).pow((n / e) as u32))
        .sum();
    (total / n as i128) as u128
}
