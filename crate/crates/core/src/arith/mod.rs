//! Toy local-global systems: adelic and compactly supported cohomology, the
//! localization long exact sequence, and reciprocity obstructions.

mod cocone;
mod les;
mod reciprocity;
mod system;

pub use cocone::{adelic_cohomology, compact_support, localize, AdelicCohomology, CompactSupport, CompactSupportClass};
pub use les::{compact_support_orders, les_check, unramified_places, LesNode, LesReport, LesSpot};
pub use reciprocity::{reciprocity_obstruction, reciprocity_tower, LocalLift, PlaceObstruction, ReciprocityClass, ReciprocityLevel, ReciprocityTowerReport};
pub use system::{subgroup_inclusion, LocalData, LocalGlobalSystem, LocalizedModule, Place};
