//! Closed linear relations between finite-dimensional complex Hilbert spaces.

pub mod blockcalc;
pub mod boundary;
pub mod cli;
pub mod error;
pub mod extension;
pub mod linalg;
pub mod oracle;
pub mod relation;
pub mod subspace;
pub mod tolerance;

pub use boundary::{BoundaryTriplet, TripletKind, WeylValue};
pub use error::{Error, Result};
pub use linalg::{C64, CMat, CVec};
pub use relation::{LinearRelation, RelationParts, SymmetryReport};
pub use subspace::{Comparison, Inclusion, Subspace};
pub use tolerance::ToleranceConfig;
