use crate::error::{Error, Result};

use super::{FiniteGroup, GModule, GroupHom, GroupRef, Subgroup};

const PRODUCT_LIMIT: usize = 1 << 20;

/// `G × H` on pairs of indices, generated by `(g, 1)` and `(1, h)`.
pub fn direct_product(g: &GroupRef, h: &GroupRef) -> Result<FiniteGroup> {
    let mut gens: Vec<(usize, usize)> = g.generators().iter().map(|&a| (a, 0)).collect();
    gens.extend(h.generators().iter().map(|&b| (0, b)));
    let (p, _) = FiniteGroup::from_closure(
        format!("{}x{}", g.name(), h.name()),
        (0usize, 0usize),
        &gens,
        |x, y| (g.mul(x.0, y.0), h.mul(x.1, y.1)),
        PRODUCT_LIMIT,
    )?;
    Ok(p)
}

/// A quotient group together with its projection.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupRef,
    pub projection: GroupHom,
    /// Least element of each coset, indexed by quotient element.
    pub representatives: Vec<usize>,
}

/// `G/N`, with cosets ordered by their least element.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<Quotient> {
    if !n.is_normal(g) {
        return Err(Error::NotNormal);
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for &m in n.members() {
            coset_of[g.mul(x, m)] = c;
        }
    }
    let q = reps.len();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| coset_of[g.mul(a, b)]).collect())
        .collect();
    let gens: Vec<usize> = g.generators().iter().map(|&s| coset_of[s]).collect();
    let name = if n.is_trivial() { g.name().to_string() } else { format!("{}/N{}", g.name(), n.order()) };
    let group = build_unchecked(name, q, table, gens)?.into_ref();
    let projection = GroupHom::new_unchecked(g.clone(), group.clone(), coset_of);
    Ok(Quotient { group, projection, representatives: reps })
}

/// Group from a table known to satisfy the axioms (skips the cubic
/// associativity check).
fn build_unchecked(name: String, n: usize, table: Vec<Vec<usize>>, gens: Vec<usize>) -> Result<FiniteGroup> {
    let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
    FiniteGroup::from_flat_checked(name, n, flat, gens)
}

/// A split extension `G ⋉ A` with its structure maps.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    pub projection: GroupHom,
    /// The splitting `g ↦ (g, 0)`.
    pub section: GroupHom,
    /// Group element of `(1, a)` for each module element `a` (mixed-radix order).
    pub kernel_elements: Vec<usize>,
    /// Pair `(g, a)` of each group element.
    pub pairs: Vec<(usize, Vec<i64>)>,
}

/// `G ⋉ A` with `(g, a)(h, b) = (gh, a·h + b)` for the right action of `A`.
pub fn semidirect_product(g: &GroupRef, a: &GModule) -> Result<SemidirectProduct> {
    if !super::hom::same_group(a.group(), g) {
        return Err(Error::TargetMismatch);
    }
    let k = a.rank();
    let mut gens: Vec<(usize, Vec<i64>)> = g.generators().iter().map(|&s| (s, a.zero())).collect();
    for j in 0..k {
        let mut e = a.zero();
        e[j] = 1;
        gens.push((0, e));
    }
    let mul = |x: &(usize, Vec<i64>), y: &(usize, Vec<i64>)| {
        let ah = a.act_right(&x.1, y.0);
        (g.mul(x.0, y.0), a.add(&ah, &y.1))
    };
    let (p, pairs) = FiniteGroup::from_closure(format!("{}|x{:?}", g.name(), a.factors()), (0usize, a.zero()), &gens, mul, PRODUCT_LIMIT)?;
    let group = p.into_ref();
    let index: std::collections::HashMap<&(usize, Vec<i64>), usize> = pairs.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let projection = GroupHom::new_unchecked(group.clone(), g.clone(), pairs.iter().map(|x| x.0).collect());
    let section_images: Vec<usize> = g.elements().map(|x| index[&(x, a.zero())]).collect();
    let section = GroupHom::new_unchecked(g.clone(), group.clone(), section_images);
    let kernel_elements = a.elements().into_iter().map(|v| index[&(0usize, v)]).collect();
    Ok(SemidirectProduct { group, projection, section, kernel_elements, pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::catalog;

    #[test]
    fn quotient_of_quaternion_by_center() {
        let q8 = catalog::quaternion8();
        let z = Subgroup::generated(&q8, &[q8.generators()[0]]);
        let z2 = Subgroup::generated(&q8, &[q8.mul(q8.generators()[0], q8.generators()[0])]);
        assert_eq!(z.order(), 4);
        let q = quotient(&q8, &z2).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!(q.group.is_abelian());
        assert!(q.projection.is_surjective());
        assert_eq!(q.projection.kernel().members(), z2.members());
    }
}
