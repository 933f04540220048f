use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{quotient, same_group, GModule, GroupHom, GroupRef, Subgroup};

/// A place: a decomposition group mapping to the global group, and an
/// inertia subgroup normal in it.
#[derive(Clone, Debug)]
pub struct Place {
    pub label: String,
    pub decomposition: GroupHom,
    pub inertia: Subgroup,
}

/// A finite stand-in for a global Galois group with finitely many places.
#[derive(Clone, Debug)]
pub struct LocalGlobalSystem {
    global: GroupRef,
    places: Vec<Place>,
}

impl LocalGlobalSystem {
    pub fn new(global: GroupRef, places: Vec<Place>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &places {
            if !seen.insert(p.label.as_str()) {
                return Err(Error::Invalid(format!("duplicate place label {:?}", p.label)));
            }
            if !same_group(p.decomposition.target(), &global) {
                return Err(Error::TargetMismatch);
            }
            let gv = p.decomposition.source();
            if p.inertia.members().iter().any(|&x| x >= gv.order()) || !p.inertia.is_normal(gv) {
                return Err(Error::NotNormal);
            }
        }
        Ok(LocalGlobalSystem { global, places })
    }

    pub fn global(&self) -> &GroupRef {
        &self.global
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    /// Adds a place whose decomposition group is the inclusion of `sub`,
    /// with trivial inertia.
    pub fn with_subgroup_place(mut self, label: &str, sub: &Subgroup) -> Result<Self> {
        let (h, incl) = subgroup_inclusion(&self.global, sub)?;
        let inertia = Subgroup::trivial(&h);
        self.places.push(Place { label: label.to_string(), decomposition: incl, inertia });
        LocalGlobalSystem::new(self.global, self.places)
    }
}

/// A subgroup as a group of its own, with the inclusion map.
pub fn subgroup_inclusion(g: &GroupRef, sub: &Subgroup) -> Result<(GroupRef, GroupHom)> {
    let members = sub.members().to_vec();
    let index = |x: usize| members.binary_search(&x).expect("closed under multiplication");
    let table: Vec<Vec<usize>> = members.iter().map(|&a| members.iter().map(|&b| index(g.mul(a, b))).collect()).collect();
    let gens: Vec<usize> = sub.generators().iter().map(|&x| index(x)).collect();
    let h = crate::group::FiniteGroup::from_table(format!("{}<{}>", g.name(), members.len()), table, gens)?.into_ref();
    let incl = GroupHom::from_images(h.clone(), g.clone(), members)?;
    Ok((h, incl))
}

/// Local data at one place for a fixed global module: the group whose
/// cohomology is used there, its map to the global group, and the pulled
/// back module.
#[derive(Clone, Debug)]
pub struct LocalData {
    pub label: String,
    pub ramified: bool,
    /// `G_v` at ramified places, `G_v/I_v` otherwise.
    pub group: GroupRef,
    pub map: GroupHom,
    pub module: GModule,
}

/// A global module together with its localizations at every place.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    pub module: GModule,
    pub places: Vec<LocalData>,
}

impl LocalizedModule {
    /// Applies the unramified convention: an undeclared place must have
    /// inertia acting trivially, and its inertia must map trivially to the
    /// global group so that localization factors through `G_v/I_v`.
    pub fn new(sys: &LocalGlobalSystem, module: &GModule, ramified: &[&str]) -> Result<Self> {
        if !same_group(module.group(), sys.global()) {
            return Err(Error::TargetMismatch);
        }
        for r in ramified {
            if !sys.places().iter().any(|p| p.label == *r) {
                return Err(Error::Invalid(format!("unknown ramified place {r:?}")));
            }
        }
        let mut places = Vec::with_capacity(sys.places().len());
        for p in sys.places() {
            let is_ramified = ramified.contains(&p.label.as_str());
            let (group, map) = if is_ramified {
                (p.decomposition.source().clone(), p.decomposition.clone())
            } else {
                let local = module.pullback(&p.decomposition)?;
                if !local.acts_trivially_on(p.inertia.members()) {
                    return Err(Error::RamificationMismatch(format!(
                        "inertia acts nontrivially at undeclared place {:?}",
                        p.label
                    )));
                }
                if p.inertia.members().iter().any(|&x| p.decomposition.apply(x) != 0) {
                    return Err(Error::RamificationMismatch(format!(
                        "inertia at undeclared place {:?} maps nontrivially to the global group",
                        p.label
                    )));
                }
                let q = quotient(p.decomposition.source(), &p.inertia)?;
                let images = q.representatives.iter().map(|&r| p.decomposition.apply(r)).collect();
                (q.group.clone(), GroupHom::from_images(q.group, sys.global().clone(), images)?)
            };
            let local_module = module.pullback(&map)?;
            places.push(LocalData { label: p.label.clone(), ramified: is_ramified, group, map, module: local_module });
        }
        Ok(LocalizedModule { module: module.clone(), places })
    }

    /// Treats every place as ramified.
    pub fn all_ramified(sys: &LocalGlobalSystem, module: &GModule) -> Result<Self> {
        let labels: Vec<&str> = sys.places().iter().map(|p| p.label.as_str()).collect();
        Self::new(sys, module, &labels)
    }
}
