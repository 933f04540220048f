use std::collections::BTreeMap;

use serde::Serialize;

use crate::budget::Budget;
use crate::cohomology::{cohomology, CohomologyGroup};
use crate::error::{Error, Result};
use crate::group::{same_group, GroupHom};

use super::Tower;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum E1Value {
    Group { invariants: Vec<i64>, order: u128 },
    /// Negative cohomological degree.
    ForcedZero,
    Uncomputed { reason: String },
}

#[derive(Clone, Debug, Serialize)]
pub struct E1Entry {
    pub s: usize,
    pub t: usize,
    pub degree: i64,
    pub value: E1Value,
    #[serde(skip)]
    pub group: Option<CohomologyGroup>,
}

/// The table `E_1^{s,t} = H^{1+s−t}(G, A_s)` over a window.
#[derive(Clone, Debug, Serialize)]
pub struct E1Page {
    pub s_max: usize,
    pub t_max: usize,
    #[serde(serialize_with = "serialize_entries")]
    pub entries: BTreeMap<(usize, usize), E1Entry>,
}

fn serialize_entries<S: serde::Serializer>(m: &BTreeMap<(usize, usize), E1Entry>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.values())
}

impl E1Page {
    pub fn get(&self, s: usize, t: usize) -> Option<&E1Entry> {
        self.entries.get(&(s, t))
    }
}

/// Computes the first page for `ψ_0: G → Π_0`; `A_s` is pulled back along `ψ_0`
/// from its descended `Π_0`-module structure. Entries with `s` beyond the
/// tower depth are omitted.
pub fn e1_page(tower: &Tower, psi0: &GroupHom, window: (usize, usize), budget: &Budget) -> Result<E1Page> {
    let (s_max, t_max) = window;
    if !same_group(psi0.target(), tower.base()) {
        return Err(Error::TargetMismatch);
    }
    let mut entries = BTreeMap::new();
    for s in 1..=s_max.min(tower.depth()) {
        let step = tower.step(s);
        let quotient = step.action_quotient().target();
        if !same_group(quotient, tower.base()) {
            return Err(Error::Invalid(format!("step {s} does not act through the tower base")));
        }
        let module = step.descended_module().pullback(psi0)?;
        for t in s.saturating_sub(1)..=t_max {
            let degree = 1 + s as i64 - t as i64;
            let (value, group) = if degree < 0 {
                (E1Value::ForcedZero, None)
            } else {
                match cohomology(&module, degree as usize, budget) {
                    Ok(h) => (
                        E1Value::Group { invariants: h.invariants().to_vec(), order: h.order() },
                        Some(h),
                    ),
                    Err(e) if e.is_budget() => (E1Value::Uncomputed { reason: e.to_string() }, None),
                    Err(e) => return Err(e),
                }
            };
            entries.insert((s, t), E1Entry { s, t, degree, value, group });
        }
    }
    Ok(E1Page { s_max, t_max, entries })
}
