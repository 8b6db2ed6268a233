//! Exact dynamics of integral isometries of hyperbolic lattices.
//!
//! Everything is computed in exact integer, rational or real-algebraic
//! arithmetic. Floating point only appears in human-readable output.

pub mod error;
pub mod field;
pub mod fixtures;
pub mod group;
pub mod interval;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod report;

pub use error::{Error, Result};
pub use field::{FieldElement, NumberField};
pub use group::{
    EqualPowers, FibrationClass, GroupSpec, NullVerdict, PhiImage, PhiReport, RayReport, Word,
};
pub use interval::RatInterval;
pub use io::{Document, LoadError, LoadErrorKind, Loaded};
pub use isometry::{Isometry, IsometryClass, PerronData, Polarization};
pub use lattice::{ConePosition, Lattice, RayVector};
pub use linalg::{IntMatrix, IntVector, RatMatrix, RatVector};
pub use poly::{AlgebraicNumber, IntPoly, RatPoly, SpectralKind};
pub use report::{GroupBounds, GroupCommand, ReportDocument};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
