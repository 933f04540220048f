use crate::cohomology::Extension;
use crate::error::{Error, Result};
use crate::group::{lower_central_series, quotient, same_group, GModule, GroupHom, GroupRef, Subgroup};

/// One abelian extension `Π_n → Π_{n−1}` of a tower, with the quotient of
/// `Π_{n−1}` through which conjugation on the kernel factors.
#[derive(Clone, Debug)]
pub struct TowerStep {
    extension: Extension,
    action_quotient: GroupHom,
    descended: GModule,
}

impl TowerStep {
    /// Checks that the kernel action factors through `action_quotient` and
    /// records the descended module.
    pub fn new(extension: Extension, action_quotient: GroupHom) -> Result<Self> {
        if !same_group(action_quotient.source(), extension.base()) {
            return Err(Error::TargetMismatch);
        }
        if !action_quotient.is_surjective() {
            return Err(Error::InvalidHom("action quotient is not surjective".into()));
        }
        let q = action_quotient.target().clone();
        let module = extension.kernel();
        let mut chosen: Vec<Option<usize>> = vec![None; q.order()];
        for x in extension.base().elements() {
            let y = action_quotient.apply(x);
            match chosen[y] {
                None => chosen[y] = Some(x),
                Some(x0) if module.matrix(x0) != module.matrix(x) => {
                    return Err(Error::Invalid("kernel action does not factor through the action quotient".into()));
                }
                Some(_) => {}
            }
        }
        let action = chosen
            .iter()
            .map(|x| module.matrix(x.expect("surjective")).to_vec())
            .collect();
        let descended = GModule::from_element_matrices(q, module.factors().to_vec(), action)?;
        Ok(TowerStep { extension, action_quotient, descended })
    }

    pub fn extension(&self) -> &Extension {
        &self.extension
    }

    pub fn action_quotient(&self) -> &GroupHom {
        &self.action_quotient
    }

    /// The kernel as a module over the action quotient.
    pub fn descended_module(&self) -> &GModule {
        &self.descended
    }

    pub fn total(&self) -> &GroupRef {
        self.extension.total()
    }

    pub fn base(&self) -> &GroupRef {
        self.extension.base()
    }

    pub fn kernel_order(&self) -> u128 {
        self.extension.kernel().order()
    }
}

/// `Π_0 ← Π_1 ← …`, each arrow an abelian extension.
#[derive(Clone, Debug)]
pub struct Tower {
    base: GroupRef,
    steps: Vec<TowerStep>,
    warnings: Vec<String>,
    /// Quotient maps from the group the tower was built from, when known.
    from_source: Vec<GroupHom>,
}

impl Tower {
    pub fn new(base: GroupRef, steps: Vec<TowerStep>) -> Result<Self> {
        let mut current = base.clone();
        for (i, s) in steps.iter().enumerate() {
            if !same_group(s.base(), &current) {
                return Err(Error::Invalid(format!("tower step {} does not start where step {} ends", i + 1, i)));
            }
            current = s.total().clone();
        }
        Ok(Tower { base, steps, warnings: Vec::new(), from_source: Vec::new() })
    }

    pub fn base(&self) -> &GroupRef {
        &self.base
    }

    pub fn steps(&self) -> &[TowerStep] {
        &self.steps
    }

    /// Number of steps.
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// `Π_n`.
    pub fn level(&self, n: usize) -> &GroupRef {
        if n == 0 {
            &self.base
        } else {
            self.steps[n - 1].total()
        }
    }

    /// The step `Π_n → Π_{n−1}` (for `n >= 1`).
    pub fn step(&self, n: usize) -> &TowerStep {
        &self.steps[n - 1]
    }

    /// Diagnostics such as stabilization of the series.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// The quotient map `Π → Π_n` for a tower built by [`tower_from_lcs`].
    pub fn quotient_map(&self, n: usize) -> Option<&GroupHom> {
        self.from_source.get(n)
    }

    /// Composite projection `Π_from → Π_to`.
    pub fn projection(&self, from: usize, to: usize) -> Result<GroupHom> {
        if to > from || from > self.depth() {
            return Err(Error::Invalid(format!("no projection from level {from} to level {to}")));
        }
        let mut p = GroupHom::identity(self.level(from));
        for n in (to + 1..=from).rev() {
            p = p.then(self.step(n).extension().projection())?;
        }
        Ok(p)
    }
}

/// The tower `Π/[N]_{n+1} → Π/[N]_n` of the lower central series of a normal
/// subgroup `N`, starting at `Π_0 = Π/N`. Every kernel is a `Π_0`-module.
pub fn tower_from_lcs(pi: &GroupRef, n: &Subgroup, depth: usize) -> Result<Tower> {
    let series = lower_central_series(pi, n, depth + 1)?;
    let quotients = series.iter().map(|s| quotient(pi, s)).collect::<Result<Vec<_>>>()?;
    let base = quotients[0].group.clone();
    let mut steps = Vec::with_capacity(depth);
    let mut warnings = Vec::new();
    for k in 1..=depth {
        let (upper, lower) = (&quotients[k], &quotients[k - 1]);
        let images = upper.representatives.iter().map(|&r| lower.projection.apply(r)).collect();
        let projection = GroupHom::from_images(upper.group.clone(), lower.group.clone(), images)?;
        let extension = Extension::from_surjection(projection)?;
        let act = lower.representatives.iter().map(|&r| quotients[0].projection.apply(r)).collect();
        let action_quotient = GroupHom::from_images(lower.group.clone(), base.clone(), act)?;
        steps.push(TowerStep::new(extension, action_quotient)?);
        if series[k] == series[k - 1] {
            warnings.push(format!("series stabilized: [N]_{} = [N]_{}; step {k} is trivial", k, k + 1));
        }
    }
    let mut tower = Tower::new(base, steps)?;
    tower.warnings = warnings;
    tower.from_source = quotients.into_iter().take(depth + 1).map(|q| q.projection).collect();
    Ok(tower)
}
