use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::group::{same_group, AbelianDecomposition, FiniteGroup, GModule, GroupHom, GroupRef};

use super::bar::{is_cocycle, Cochain};
use super::group_cohomology::{cohomology, CohomologyGroup};

/// An extension `1 → A → Π″ → Π′ → 1` with abelian kernel, a chosen
/// set-theoretic section `s` with `s(1) = 1`, and the kernel written as a
/// `Π′`-module via `a·g = s(g)⁻¹ a s(g)`.
#[derive(Clone, Debug)]
pub struct Extension {
    projection: GroupHom,
    kernel: GModule,
    /// Total-group element of each module element (mixed-radix order).
    embedding: Vec<usize>,
    /// Module coordinates of each total-group element lying in the kernel.
    coords: Vec<Option<Vec<i64>>>,
    section: Vec<usize>,
}

impl Extension {
    /// Reads off the kernel, its module structure and the least-element
    /// section from a surjection.
    pub fn from_surjection(projection: GroupHom) -> Result<Self> {
        if !projection.is_surjective() {
            return Err(Error::InvalidHom("extension projection is not surjective".into()));
        }
        let total = projection.source().clone();
        let base = projection.target().clone();
        let ker = projection.kernel();
        if !ker.is_abelian(&total) {
            return Err(Error::NotAbelianKernel);
        }
        let dec = AbelianDecomposition::new(&total, &ker)?;
        let section = least_section(&projection);
        let factors = dec.factors().to_vec();
        let k = factors.len();
        let mut action = Vec::with_capacity(base.order());
        for g in base.elements() {
            let s = section[g];
            let mut m = vec![0i64; k * k];
            for (j, &b) in dec.basis().iter().enumerate() {
                let img = total.mul(total.mul(total.inv(s), b), s);
                let c = dec.coordinates(img).ok_or(Error::NotAbelianKernel)?;
                for i in 0..k {
                    m[i * k + j] = c[i];
                }
            }
            action.push(m);
        }
        let kernel = GModule::from_element_matrices(base, factors, action)?;
        let embedding: Vec<usize> = kernel.elements().iter().map(|a| dec.element(a)).collect();
        let mut coords = vec![None; total.order()];
        for (idx, &x) in embedding.iter().enumerate() {
            coords[x] = Some(kernel.element_at(idx));
        }
        Ok(Extension { projection, kernel, embedding, coords, section })
    }

    /// Assembles an extension from explicit data, checking every axiom.
    pub fn from_parts(projection: GroupHom, kernel: GModule, embedding: Vec<usize>, section: Vec<usize>) -> Result<Self> {
        let total = projection.source().clone();
        if !same_group(kernel.group(), projection.target()) {
            return Err(Error::TargetMismatch);
        }
        if embedding.len() as u128 != kernel.order() {
            return Err(Error::Invalid("embedding has the wrong length".into()));
        }
        let ker = projection.kernel();
        if ker.order() != embedding.len() || embedding.iter().any(|&x| !ker.contains(x)) {
            return Err(Error::Invalid("embedding is not onto the kernel".into()));
        }
        let mut coords = vec![None; total.order()];
        for (idx, &x) in embedding.iter().enumerate() {
            if coords[x].is_some() {
                return Err(Error::Invalid("embedding is not injective".into()));
            }
            coords[x] = Some(kernel.element_at(idx));
        }
        let ext = Extension { projection, kernel, embedding, coords, section: vec![0] };
        for (idx, a) in ext.kernel.elements().iter().enumerate() {
            for j in 0..ext.kernel.rank() {
                let mut e = ext.kernel.zero();
                e[j] = 1;
                let sum = ext.kernel.add(a, &e);
                if total.mul(ext.embedding[idx], ext.embed(&e)) != ext.embed(&sum) {
                    return Err(Error::Invalid("embedding is not a homomorphism".into()));
                }
            }
        }
        ext.with_section(section)
    }

    /// Replaces the section, checking `p∘s = id`, `s(1) = 1` and that
    /// conjugation by the section reproduces the module action.
    pub fn with_section(mut self, section: Vec<usize>) -> Result<Self> {
        let base = self.base().clone();
        let total = self.total().clone();
        if section.len() != base.order() || section.iter().any(|&x| x >= total.order()) {
            return Err(Error::Invalid("section has the wrong shape".into()));
        }
        if section[0] != 0 {
            return Err(Error::Invalid("section must send 1 to 1".into()));
        }
        if base.elements().any(|g| self.projection.apply(section[g]) != g) {
            return Err(Error::Invalid("section does not split the projection".into()));
        }
        self.section = section;
        for g in base.elements() {
            let s = self.section[g];
            for j in 0..self.kernel.rank() {
                let mut e = self.kernel.zero();
                e[j] = 1;
                let conj = total.mul(total.mul(total.inv(s), self.embed(&e)), s);
                if conj != self.embed(&self.kernel.act_right(&e, g)) {
                    return Err(Error::Invalid("conjugation does not match the kernel action".into()));
                }
            }
        }
        Ok(self)
    }

    pub fn total(&self) -> &GroupRef {
        self.projection.source()
    }

    pub fn base(&self) -> &GroupRef {
        self.projection.target()
    }

    pub fn projection(&self) -> &GroupHom {
        &self.projection
    }

    pub fn kernel(&self) -> &GModule {
        &self.kernel
    }

    pub fn section(&self) -> &[usize] {
        &self.section
    }

    pub fn embed(&self, a: &[i64]) -> usize {
        self.embedding[self.kernel.index_of(a)]
    }

    pub fn kernel_coords(&self, x: usize) -> Option<&[i64]> {
        self.coords[x].as_deref()
    }

    /// Elements of the total group over `g`, ascending.
    pub fn fiber(&self, g: usize) -> Vec<usize> {
        self.total().elements().filter(|&x| self.projection.apply(x) == g).collect()
    }

    /// The factor set `c(g, h) = s(g) s(h) s(gh)⁻¹` of the stored section.
    pub fn factor_set(&self) -> Cochain {
        let base = self.base().clone();
        let set_map = self.section.clone();
        self.factor_set_of(&base, &set_map, &self.kernel)
    }

    /// The 2-cocycle measuring the failure of `α̃ = s∘ψ` to be a homomorphism,
    /// valued in `ψ*A`.
    pub fn obstruction_cocycle(&self, psi: &GroupHom) -> Result<(GModule, Cochain)> {
        if !same_group(psi.target(), self.base()) {
            return Err(Error::TargetMismatch);
        }
        let pulled = self.kernel.pullback(psi)?;
        let alpha: Vec<usize> = psi.images().iter().map(|&y| self.section[y]).collect();
        let c = self.factor_set_of(psi.source(), &alpha, &pulled);
        Ok((pulled, c))
    }

    fn factor_set_of(&self, g: &FiniteGroup, alpha: &[usize], module: &GModule) -> Cochain {
        let total = self.total();
        Cochain::from_fn(module, 2, |t| {
            let (x, y) = (t[0], t[1]);
            let prod = total.mul(total.mul(alpha[x], alpha[y]), total.inv(alpha[g.mul(x, y)]));
            self.coords[prod].clone().expect("factor set lies in the kernel")
        })
    }

    /// The map `g ↦ ι(b(g))·s(ψ(g))` for a 1-cochain `b` valued in `ψ*A`.
    pub fn twisted_section(&self, psi: &GroupHom, module: &GModule, b: &Cochain) -> Vec<usize> {
        let total = self.total();
        psi.source()
            .elements()
            .map(|g| total.mul(self.embed(&b.value(module, &[g])), self.section[psi.apply(g)]))
            .collect()
    }
}

fn least_section(p: &GroupHom) -> Vec<usize> {
    let mut s = vec![usize::MAX; p.target().order()];
    for x in p.source().elements() {
        let g = p.apply(x);
        if s[g] == usize::MAX {
            s[g] = x;
        }
    }
    s
}

/// The class of the extension's factor set in `H²(Π′, A)`.
pub fn extension_class(ext: &Extension, budget: &Budget) -> Result<(CohomologyGroup, Vec<i64>)> {
    let h2 = cohomology(ext.kernel(), 2, budget)?;
    let cls = h2.classify(&ext.factor_set())?;
    Ok((h2, cls))
}

/// The group of pairs `(a, g)` with `(a, g)(b, h) = (a + g·b + c(g, h), gh)`,
/// whose factor set for `s(g) = (0, g)` is `c`.
pub fn extension_from_cocycle(module: &GModule, c: &Cochain) -> Result<Extension> {
    if c.degree != 2 || !is_cocycle(module, c)? {
        return Err(Error::NotACocycle);
    }
    let g = module.group().clone();
    let mut gens: Vec<(Vec<i64>, usize)> = g.generators().iter().map(|&s| (module.zero(), s)).collect();
    for j in 0..module.rank() {
        let mut e = module.zero();
        e[j] = 1;
        gens.push((e, 0));
    }
    let mul = |x: &(Vec<i64>, usize), y: &(Vec<i64>, usize)| {
        let gb = module.act_left(x.1, &y.0);
        let cv = c.value(module, &[x.1, y.1]);
        (module.add(&module.add(&x.0, &gb), &cv), g.mul(x.1, y.1))
    };
    let (total, pairs) = FiniteGroup::from_closure(format!("{}.{:?}", g.name(), module.factors()), (module.zero(), 0usize), &gens, mul, 1 << 20)?;
    let total = total.into_ref();
    let index: HashMap<&(Vec<i64>, usize), usize> = pairs.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let projection = GroupHom::from_images(total.clone(), g.clone(), pairs.iter().map(|p| p.1).collect())?;
    let embedding: Vec<usize> = module.elements().into_iter().map(|a| index[&(a, 0usize)]).collect();
    let section: Vec<usize> = g.elements().map(|x| index[&(module.zero(), x)]).collect();
    Extension::from_parts(projection, module.clone(), embedding, section)
}

/// The split extension `Π′ ⋉ A` with its homomorphic section.
pub fn split_extension(module: &GModule) -> Result<Extension> {
    extension_from_cocycle(module, &Cochain::zero(module, 2))
}

/// Twists a lift by a 1-cocycle: `g ↦ ι(z(g))·lift(g)`.
///
/// `lift` must cover `ψ = p∘lift`, and `z` must be a cocycle for `ψ*A`.
pub fn torsor_action(ext: &Extension, lift: &GroupHom, z: &Cochain) -> Result<GroupHom> {
    if !same_group(lift.target(), ext.total()) {
        return Err(Error::TargetMismatch);
    }
    let psi = lift.then(ext.projection())?;
    let module = ext.kernel().pullback(&psi)?;
    if z.degree != 1 || !is_cocycle(&module, z)? {
        return Err(Error::NotACocycle);
    }
    let total = ext.total();
    let images: Vec<usize> = lift
        .source()
        .elements()
        .map(|g| total.mul(ext.embed(&z.value(&module, &[g])), lift.apply(g)))
        .collect();
    GroupHom::from_images(lift.source().clone(), total.clone(), images)
}
