//! Hierarchical six-tile substitution complex with pastings.
//!
//! [`build`] produces the complex of a given level. The [`path`] module holds
//! the flip calculus on paths, [`geodesy`] the metric layer, and [`verify`]
//! an executable suite of structural, metric and reduction checks.

pub mod builder;
pub mod error;
pub mod geodesy;
pub mod io;
pub mod model;
pub mod par;
pub mod pasting;
pub mod path;
pub mod subdivision;
pub mod verify;

pub use builder::{build, build_with};
pub use error::{Error, Result};
pub use model::{Complex, EdgeId, PlaneId, RuleTable, TileId, VertexId, VertexKind};
pub use par::Exec;
