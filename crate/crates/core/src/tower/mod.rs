//! Towers of abelian extensions and level-by-level lifting.

mod e1;
mod lift;
mod structure;

pub use e1::{e1_page, E1Entry, E1Page, E1Value};
pub(crate) use lift::{lift_classes_for, obstruction_for};
pub use lift::{brute_force_lifts, lift_classes, obstruction, run_tower, LevelReport, LiftClass, LiftClasses, LiftReport, Obstruction, RunOptions, TreeNode};
pub use structure::{tower_from_lcs, Tower, TowerStep};
