//! Problem files read by the command-line tool.
//!
//! Every file is a JSON object with `"schema": 1` and a `"kind"` field that
//! selects one of the problem types below. Groups are given either by a
//! catalog name, an explicit multiplication table, a direct product or a
//! semidirect product with a module. Group elements are referred to by their
//! index in the group's element list.

use std::collections::BTreeSet;

use obtower_core::group::{catalog, direct_product, semidirect_product, FiniteGroup, GModule, GroupHom, GroupRef, Subgroup};
use obtower_core::{Error, Result};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupDesc {
    /// `C6`, `D8`, `S3`, `A4`, `Q8`, `V4`, `1`.
    Catalog(String),
    Table(TableDesc),
    Product(Box<GroupDesc>, Box<GroupDesc>),
    Semidirect(Box<SemidirectDesc>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDesc {
    #[serde(default = "default_table_name")]
    pub name: String,
    /// `table[a][b]` is the product `a·b`; element 0 must be the identity.
    pub table: Vec<Vec<usize>>,
    /// Defaults to a greedy generating set.
    #[serde(default)]
    pub generators: Option<Vec<usize>>,
}

fn default_table_name() -> String {
    "G".into()
}

/// `A ⋊ G` with `A` the module, projecting onto `G`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemidirectDesc {
    pub base: GroupDesc,
    pub module: ModuleDesc,
}

/// A finite abelian group `⊕ ℤ/f_i` with a right action given by one
/// integer matrix per generator of the group. No matrices means the
/// trivial action.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDesc {
    pub factors: Vec<i64>,
    #[serde(default)]
    pub action: Option<Vec<Vec<Vec<i64>>>>,
}

impl GroupDesc {
    pub fn build(&self) -> Result<GroupRef> {
        match self {
            GroupDesc::Catalog(name) => catalog::by_name(name),
            GroupDesc::Table(t) => {
                let generators = match &t.generators {
                    Some(g) => g.clone(),
                    None => {
                        let all = FiniteGroup::from_table(&t.name, t.table.clone(), (1..t.table.len()).collect())?;
                        greedy_generators(&all)
                    }
                };
                Ok(FiniteGroup::from_table(&t.name, t.table.clone(), generators)?.into_ref())
            }
            GroupDesc::Product(a, b) => Ok(direct_product(&a.build()?, &b.build()?)?.into_ref()),
            GroupDesc::Semidirect(s) => {
                let base = s.base.build()?;
                let module = s.module.build(&base)?;
                Ok(semidirect_product(&base, &module)?.group)
            }
        }
    }
}

fn greedy_generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for x in g.elements() {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated(g, &gens);
        }
    }
    gens
}

impl ModuleDesc {
    pub fn build(&self, group: &GroupRef) -> Result<GModule> {
        match &self.action {
            None => GModule::trivial(group.clone(), self.factors.clone()),
            Some(m) => GModule::new(group.clone(), self.factors.clone(), m.clone()),
        }
    }
}

pub fn element_list(g: &GroupRef, elements: &[usize], what: &str) -> Result<()> {
    match elements.iter().find(|&&x| x >= g.order()) {
        Some(x) => Err(Error::Invalid(format!("{what}: element {x} is outside a group of order {}", g.order()))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub schema: u32,
    #[serde(flatten)]
    pub problem: Problem,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Problem {
    Tower(TowerProblem),
    Reciprocity(ReciprocityProblem),
    Cohomology(CohomologyProblem),
    Lie(LieProblem),
    SimplicialCheck(SimplicialProblem),
}

impl Problem {
    pub fn kind(&self) -> &'static str {
        match self {
            Problem::Tower(_) => "tower",
            Problem::Reciprocity(_) => "reciprocity",
            Problem::Cohomology(_) => "cohomology",
            Problem::Lie(_) => "lie",
            Problem::SimplicialCheck(_) => "simplicial-check",
        }
    }
}

/// The lower-central-series tower of `N ⊴ Π` and a homomorphism to one of
/// its levels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerProblem {
    pub pi: GroupDesc,
    /// Generators of the normal subgroup `N`, as elements of `Π`; the whole
    /// group when absent.
    #[serde(default)]
    pub normal: Option<Vec<usize>>,
    pub depth: usize,
    #[serde(default)]
    pub start_level: usize,
    /// Source group of `ψ₀`; the start level itself when absent.
    #[serde(default)]
    pub source: Option<GroupDesc>,
    pub psi0: HomDesc,
    /// Window `(s_max, t_max)` of the first-page table, if wanted.
    #[serde(default)]
    pub e1_window: Option<(usize, usize)>,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub full_tree: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomDesc {
    /// The identity of the start level; requires no `source`.
    Identity,
    /// Images of the source generators, given as elements of `Π` and
    /// projected to the start level.
    Images(Vec<usize>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlaceDesc {
    pub label: String,
    /// Generators of the decomposition group as a subgroup of the global
    /// group; the whole group when absent.
    #[serde(default)]
    pub decomposition: Option<Vec<usize>>,
    /// Generators of the inertia subgroup, as global elements.
    #[serde(default)]
    pub inertia: Vec<usize>,
}

/// Compactly supported cohomology of a module over a finite local-global
/// system, with the exact-sequence check and optional reciprocity classes.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReciprocityProblem {
    pub global: GroupDesc,
    pub places: Vec<PlaceDesc>,
    pub module: ModuleDesc,
    #[serde(default)]
    pub ramified: Vec<String>,
    #[serde(default = "default_up_to")]
    pub up_to: usize,
    /// Degree-one local classes, one coordinate vector per place, whose
    /// reciprocity class is wanted.
    #[serde(default)]
    pub local_classes: Vec<Vec<Vec<i64>>>,
}

fn default_up_to() -> usize {
    2
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologyProblem {
    pub group: GroupDesc,
    pub module: ModuleDesc,
    #[serde(default = "default_up_to")]
    pub up_to: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum LieProblem {
    /// Weights of the bracket-length-`s` piece generated by the twisted
    /// modular cohomology up to `m_max`.
    Ls {
        m_max: i64,
        s: usize,
        #[serde(default = "default_lambda")]
        lambda_weight: i64,
    },
    /// Hall basis counts against the Witt formula.
    Hall { generator_weights: Vec<i64>, max_degree: usize },
}

fn default_lambda() -> i64 {
    -1
}

/// Seeded simplicial suites at a truncation level, plus optional explicit
/// extensions `A ⊴ G`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialProblem {
    #[serde(default = "default_truncation")]
    pub truncation: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub extensions: usize,
    #[serde(default)]
    pub abelian_inputs: usize,
    #[serde(default)]
    pub bisimplicial: usize,
    #[serde(default)]
    pub explicit: Vec<ExplicitExtension>,
}

fn default_truncation() -> usize {
    3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitExtension {
    pub group: GroupDesc,
    /// Generators of the normal abelian kernel.
    pub kernel: Vec<usize>,
}

pub fn normal_subgroup(g: &GroupRef, gens: &[usize], what: &str) -> Result<Subgroup> {
    element_list(g, gens, what)?;
    let s = Subgroup::generated(g, gens);
    if !s.is_normal(g) {
        return Err(Error::NotNormal);
    }
    Ok(s)
}

/// The generator images of `psi` as a homomorphism from `source`.
pub fn hom_from_images(source: &GroupRef, target: &GroupRef, images: &[usize]) -> Result<GroupHom> {
    element_list(target, images, "homomorphism image")?;
    GroupHom::from_generator_images(source.clone(), target.clone(), images)
}

/// Checks that labels are unique and every ramified label names a place.
pub fn check_labels(places: &[PlaceDesc], ramified: &[String]) -> Result<()> {
    let labels: BTreeSet<&str> = places.iter().map(|p| p.label.as_str()).collect();
    if labels.len() != places.len() {
        return Err(Error::Invalid("duplicate place labels".into()));
    }
    match ramified.iter().find(|r| !labels.contains(r.as_str())) {
        Some(r) => Err(Error::Invalid(format!("ramified place {r:?} is not declared"))),
        None => Ok(()),
    }
}
