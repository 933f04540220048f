use serde::{Deserialize, Serialize};

/// Size limits shared by every computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Budget {
    pub max_group_order: usize,
    /// Bound on the number of generator assignments a homomorphism search may try.
    pub max_hom_search: u64,
    pub max_degree: usize,
    pub max_truncation: usize,
    /// Rough bound on modular row operations for one cohomology computation.
    pub max_linear_work: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_group_order: 512,
            max_hom_search: 10_000_000,
            max_degree: 3,
            max_truncation: 6,
            max_linear_work: 20_000_000_000,
        }
    }
}

impl Budget {
    /// A profile for quick interactive runs.
    pub fn small() -> Self {
        Budget {
            max_group_order: 128,
            max_hom_search: 1_000_000,
            max_degree: 3,
            max_truncation: 4,
            max_linear_work: 2_000_000_000,
        }
    }

    pub fn large() -> Self {
        Budget {
            max_group_order: 512,
            max_hom_search: 100_000_000,
            max_degree: 4,
            max_truncation: 6,
            max_linear_work: 200_000_000_000,
        }
    }

    pub fn profile(name: &str) -> Option<Self> {
        match name {
            "default" => Some(Budget::default()),
            "small" => Some(Budget::small()),
            "large" => Some(Budget::large()),
            _ => None,
        }
    }
}
