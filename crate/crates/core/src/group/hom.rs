use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::{GroupRef, Subgroup};

/// A homomorphism between finite groups, stored as the full image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: GroupRef,
    target: GroupRef,
    images: Vec<usize>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        same_group(&self.source, &other.source) && same_group(&self.target, &other.target) && self.images == other.images
    }
}

impl Eq for GroupHom {}

pub(crate) fn same_group(a: &GroupRef, b: &GroupRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GroupHom {
    /// Validates the full table.
    pub fn from_images(source: GroupRef, target: GroupRef, images: Vec<usize>) -> Result<Self> {
        if images.len() != source.order() || images.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidHom("image table has the wrong shape".into()));
        }
        let hom = GroupHom { source, target, images };
        if !hom.check_on_generators() {
            return Err(Error::InvalidHom("map does not respect multiplication".into()));
        }
        Ok(hom)
    }

    /// Extends generator images along the source's spanning tree and checks
    /// the result.
    pub fn from_generator_images(source: GroupRef, target: GroupRef, gen_images: &[usize]) -> Result<Self> {
        if gen_images.len() != source.generators().len() {
            return Err(Error::InvalidHom(format!(
                "expected {} generator images, got {}",
                source.generators().len(),
                gen_images.len()
            )));
        }
        if gen_images.iter().any(|&y| y >= target.order()) {
            return Err(Error::InvalidHom("generator image out of range".into()));
        }
        let images = source.extend_along_tree(0usize, gen_images, |a, b| target.mul(*a, *b));
        let hom = GroupHom { source, target, images };
        if !hom.check_on_generators() {
            return Err(Error::InvalidHom("generator images do not define a homomorphism".into()));
        }
        Ok(hom)
    }

    /// Builds without validation; callers guarantee the homomorphism property.
    pub(crate) fn new_unchecked(source: GroupRef, target: GroupRef, images: Vec<usize>) -> Self {
        debug_assert_eq!(images.len(), source.order());
        GroupHom { source, target, images }
    }

    /// `f(x g) = f(x) f(g)` for all `x` and generators `g`, plus `f(1) = 1`.
    fn check_on_generators(&self) -> bool {
        let (s, t) = (&self.source, &self.target);
        self.images[0] == 0
            && s.generators().iter().all(|&g| {
                let fg = self.images[g];
                s.elements().all(|x| self.images[s.mul(x, g)] == t.mul(self.images[x], fg))
            })
    }

    pub fn identity(g: &GroupRef) -> Self {
        GroupHom { source: g.clone(), target: g.clone(), images: g.elements().collect() }
    }

    pub fn trivial(source: &GroupRef, target: &GroupRef) -> Self {
        GroupHom { source: source.clone(), target: target.clone(), images: vec![0; source.order()] }
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn generator_images(&self) -> Vec<usize> {
        self.source.generators().iter().map(|&g| self.images[g]).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if !same_group(&self.target, &next.source) {
            return Err(Error::InvalidHom("composition of mismatched homomorphisms".into()));
        }
        Ok(GroupHom {
            source: self.source.clone(),
            target: next.target.clone(),
            images: self.images.iter().map(|&y| next.images[y]).collect(),
        })
    }

    /// `x ↦ b f(x) b⁻¹`.
    pub fn conjugated_by(&self, b: usize) -> GroupHom {
        let t = &self.target;
        GroupHom {
            source: self.source.clone(),
            target: t.clone(),
            images: self.images.iter().map(|&y| t.conj(b, y)).collect(),
        }
    }

    pub fn kernel(&self) -> Subgroup {
        let members: Vec<usize> = self.source.elements().filter(|&x| self.images[x] == 0).collect();
        Subgroup::generated(&self.source, &members)
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::generated(&self.target, &self.generator_images())
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_trivial()
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&y| y == 0)
    }
}

/// All homomorphisms `G → H`, ordered lexicographically by generator images.
///
/// `max_search` bounds the number of generator assignments examined.
pub fn enumerate_homs(g: &GroupRef, h: &GroupRef, max_search: u64) -> Result<Vec<GroupHom>> {
    let candidates: Vec<Vec<usize>> = g
        .generators()
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&y| o % h.element_order(y) == 0).collect()
        })
        .collect();
    enumerate_homs_with(g, h, &candidates, max_search)
}

/// Homomorphisms whose `k`-th generator image lies in `candidates[k]`
/// (each list sorted ascending).
pub fn enumerate_homs_with(g: &GroupRef, h: &GroupRef, candidates: &[Vec<usize>], max_search: u64) -> Result<Vec<GroupHom>> {
    let space = candidates
        .iter()
        .try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64))
        .unwrap_or(u64::MAX);
    if space > max_search {
        return Err(Error::SearchBudgetExceeded(format!(
            "homomorphism search space {space} exceeds {max_search}"
        )));
    }
    let ngen = candidates.len();
    let mut out = Vec::new();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(out);
    }
    let mut pos = vec![0usize; ngen];
    let mut images = vec![0usize; g.order()];
    let gens = g.generators();
    loop {
        // extend along the tree and test
        for &x in g.tree_order().iter().skip(1) {
            let (p, k) = g.tree_parent(x);
            images[x] = h.mul(images[p], candidates[k][pos[k]]);
        }
        let ok = gens.iter().enumerate().all(|(k, &s)| {
            let fs = candidates[k][pos[k]];
            g.elements().all(|x| images[g.mul(x, s)] == h.mul(images[x], fs))
        });
        if ok {
            out.push(GroupHom::new_unchecked(g.clone(), h.clone(), images.clone()));
        }
        // odometer, last generator fastest
        let mut k = ngen;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            pos[k] += 1;
            if pos[k] < candidates[k].len() {
                break;
            }
            pos[k] = 0;
        }
    }
}

/// One orbit of homomorphisms under post-conjugation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClass {
    /// Index (into the input list) of the least member.
    pub representative: usize,
    pub members: Vec<usize>,
}

/// Partitions `homs` into orbits under conjugation by elements of `by`.
pub fn homs_mod_conjugacy(homs: &[GroupHom], by: &Subgroup) -> Result<Vec<HomClass>> {
    let Some(first) = homs.first() else {
        return Ok(Vec::new());
    };
    let target = first.target().clone();
    if homs.iter().any(|f| !same_group(f.target(), &target) || !same_group(f.source(), first.source())) {
        return Err(Error::MixedTargets);
    }
    let index: HashMap<&[usize], usize> = homs.iter().enumerate().map(|(i, f)| (f.images(), i)).collect();
    let mut parent: Vec<usize> = (0..homs.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nxt = p[y];
            p[y] = r;
            y = nxt;
        }
        r
    }
    for (i, f) in homs.iter().enumerate() {
        for &b in by.generators() {
            let conj: Vec<usize> = f.images().iter().map(|&y| target.conj(b, y)).collect();
            if let Some(&j) = index.get(conj.as_slice()) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
                    parent[hi] = lo;
                }
            }
        }
    }
    let mut classes: Vec<HomClass> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..homs.len() {
        let r = find(&mut parent, i);
        match slot.get(&r) {
            Some(&c) => classes[c].members.push(i),
            None => {
                slot.insert(r, classes.len());
                classes.push(HomClass { representative: i, members: vec![i] });
            }
        }
    }
    Ok(classes)
}

/// Whether two small groups are isomorphic, by searching for a bijective
/// homomorphism.
pub fn are_isomorphic(a: &GroupRef, b: &GroupRef, max_search: u64) -> Result<bool> {
    if a.order() != b.order() {
        return Ok(false);
    }
    let homs = enumerate_homs(a, b, max_search)?;
    Ok(homs.iter().any(|f| f.is_injective()))
}
