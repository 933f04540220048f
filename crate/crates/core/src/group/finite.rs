use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..order()`, with `0` the identity. A spanning
/// tree of the Cayley graph over the generators is kept so that maps defined
/// on generators can be extended to the whole group.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    n: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    generators: Vec<usize>,
    orders: Vec<usize>,
    /// Elements in breadth-first order from the identity.
    tree_order: Vec<usize>,
    /// `tree[x] = (p, k)` with `x = p * generators[k]`; unused for the identity.
    tree: Vec<(usize, usize)>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Builds a group from an explicit table. Checks the group axioms and that
    /// `generators` generate.
    pub fn from_table(name: impl Into<String>, table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty multiplication table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidGroup("multiplication table is not square".into()));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::InvalidGroup("table entry out of range".into()));
        }
        if generators.iter().any(|&g| g >= n) {
            return Err(Error::InvalidGroup("generator index out of range".into()));
        }
        for (x, row) in table.iter().enumerate() {
            if row[0] != x || table[0][x] != x {
                return Err(Error::InvalidGroup("index 0 is not a two-sided identity".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        Self::from_flat(name.into(), n, flat, generators)
    }

    pub(crate) fn from_flat_checked(name: String, n: usize, table: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        Self::from_flat(name, n, table, generators)
    }

    fn from_flat(name: String, n: usize, table: Vec<u32>, generators: Vec<usize>) -> Result<Self> {
        let mut inverses = vec![u32::MAX; n];
        for a in 0..n {
            if let Some(b) = (0..n).find(|&b| table[a * n + b] == 0) {
                if table[b * n + a] != 0 {
                    return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
                }
                inverses[a] = b as u32;
            } else {
                return Err(Error::InvalidGroup(format!("element {a} has no inverse")));
            }
        }
        let mut generators_dedup = Vec::new();
        for g in generators {
            if g != 0 && !generators_dedup.contains(&g) {
                generators_dedup.push(g);
            }
        }
        let generators = generators_dedup;
        let mut tree = vec![(0usize, 0usize); n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut tree_order = vec![0usize];
        let mut head = 0;
        while head < tree_order.len() {
            let x = tree_order[head];
            head += 1;
            for (k, &g) in generators.iter().enumerate() {
                let y = table[x * n + g] as usize;
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = (x, k);
                    tree_order.push(y);
                }
            }
        }
        if tree_order.len() != n {
            return Err(Error::InvalidGroup(format!(
                "generators span {} of {} elements",
                tree_order.len(),
                n
            )));
        }
        let mut orders = vec![1usize; n];
        for (a, slot) in orders.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * n + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        Ok(FiniteGroup { name, n, table, inverses, generators, orders, tree_order, tree })
    }

    /// Closes `gens` under `mul`, listing elements breadth-first by word
    /// length (generator order breaks ties). Returns the group and the
    /// element list. `mul` must be a group law on the closure.
    pub fn from_closure<T, F>(name: impl Into<String>, identity: T, gens: &[T], mul: F, max_order: usize) -> Result<(Self, Vec<T>)>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::new();
        index.insert(identity, 0);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elements.len() >= max_order {
                        return Err(Error::SearchBudgetExceeded(format!("group order exceeds {max_order}")));
                    }
                    index.insert(y.clone(), elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let c = mul(a, b);
                let k = *index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidGroup("multiplication is not closed on the generated set".into()))?;
                table[i * n + j] = k as u32;
            }
        }
        let gen_idx: Vec<usize> = gens.iter().map(|g| index[g]).collect();
        let group = Self::from_flat(name.into(), n, table, gen_idx)?;
        Ok((group, elements))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let m = self.orders[a] as i64;
        let e = k.rem_euclid(m);
        let mut x = 0;
        for _ in 0..e {
            x = self.mul(x, a);
        }
        x
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[a, b] = a b a⁻¹ b⁻¹`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn tree_order(&self) -> &[usize] {
        &self.tree_order
    }

    /// `(p, k)` with `x = p * generators[k]`, for `x` not the identity.
    pub fn tree_parent(&self, x: usize) -> (usize, usize) {
        self.tree[x]
    }

    /// The table as nested rows (for serialization).
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.n)
            .map(|a| (0..self.n).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// Extends a map on generators to a map on all elements along the
    /// spanning tree, assuming it is a homomorphism into `mul`.
    pub(crate) fn extend_along_tree<T: Clone>(&self, identity: T, gen_values: &[T], mul: impl Fn(&T, &T) -> T) -> Vec<T> {
        let mut out = vec![identity; self.n];
        for &x in self.tree_order.iter().skip(1) {
            let (p, k) = self.tree[x];
            out[x] = mul(&out[p], &gen_values[k]);
        }
        out
    }

    pub fn into_ref(self) -> GroupRef {
        Arc::new(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation_rejects_nonassociative() {
        // a Latin square with identity that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table("x", t, vec![1, 2]).is_err());
    }

    #[test]
    fn closure_orders_by_word_length() {
        let (g, elems) = FiniteGroup::from_closure("c6", 0u8, &[1u8], |a, b| (a + b) % 6, 100).unwrap();
        assert_eq!(elems, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.inv(1), 5);
        assert_eq!(g.pow(1, -1), 5);
    }
}
