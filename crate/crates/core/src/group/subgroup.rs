use crate::error::{Error, Result};

use super::FiniteGroup;

/// A subgroup, stored as the sorted list of its members in the parent's
/// indexing. The parent group is passed explicitly to every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    members: Vec<usize>,
    mask: Vec<bool>,
    generators: Vec<usize>,
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut mask = vec![false; g.order()];
        mask[0] = true;
        let mut list = vec![0usize];
        let mut kept = Vec::new();
        for &s in gens {
            if mask[s] {
                continue;
            }
            kept.push(s);
            // extend the closure by the new generator
            let mut head = 0;
            while head < list.len() {
                let x = list[head];
                head += 1;
                for &t in &kept {
                    let y = g.mul(x, t);
                    if !mask[y] {
                        mask[y] = true;
                        list.push(y);
                    }
                }
            }
        }
        list.sort_unstable();
        Subgroup { members: list, mask, generators: kept }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            members: g.elements().collect(),
            mask: vec![true; g.order()],
            generators: g.generators().to_vec(),
        }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::generated(g, &[])
    }

    /// Validates that `members` form a subgroup.
    pub fn from_members(g: &FiniteGroup, members: &[usize]) -> Result<Self> {
        if members.iter().any(|&x| x >= g.order()) {
            return Err(Error::Invalid("subgroup member out of range".into()));
        }
        let s = Self::generated(g, members);
        if s.order() != {
            let mut m = members.to_vec();
            m.sort_unstable();
            m.dedup();
            if !m.contains(&0) {
                m.push(0);
            }
            m.len()
        } {
            return Err(Error::Invalid("member list is not closed under multiplication".into()));
        }
        Ok(s)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// A generating set (the elements that enlarged the closure).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// Normal in `g`: stable under conjugation by the generators of `g`.
    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.generators()
            .iter()
            .all(|&s| self.generators.iter().all(|&x| self.contains(g.conj(s, x))))
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.generators
            .iter()
            .all(|&a| self.generators.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
    }
}

/// The subgroup generated by all `[h, k] = h k h⁻¹ k⁻¹` with `h ∈ H`, `k ∈ K`.
pub fn commutator_subgroup(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Subgroup {
    let mut seen = vec![false; g.order()];
    let mut comms = Vec::new();
    for &a in h.members() {
        for &b in k.members() {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    Subgroup::generated(g, &comms)
}

/// `[N]_1 = N`, `[N]_{k+1} = [N, [N]_k]`, returning the first `depth` terms.
pub fn lower_central_series(g: &FiniteGroup, n: &Subgroup, depth: usize) -> Result<Vec<Subgroup>> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let mut out = Vec::with_capacity(depth);
    if depth == 0 {
        return Ok(out);
    }
    out.push(n.clone());
    while out.len() < depth {
        let next = commutator_subgroup(g, n, out.last().expect("nonempty"));
        out.push(next);
    }
    Ok(out)
}
