//! Exact computations around the obstruction to realizing p-groups acting freely on products
//! of spheres: graded cohomology rings, characteristic classes, spectral sequences, the
//! Adams resolution for the relevant modules, and a symbolic check of an explicit construction.

pub mod exact;
pub mod finite_groups;
pub mod char_class;
pub mod construction;
pub mod em_space;
pub mod group_rings;
pub mod report;
pub mod spectral;
pub mod steenrod;
pub mod suites;

pub use exact::{AbGroup, CycScalar, FpMatrix, IntMatrix, MPoly};

/// Library version, stamped into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Arbitrary precision rationals.
pub type Rational = num_rational::BigRational;
/// Multivariate polynomials with rational coefficients.
pub type RatPoly = MPoly<Rational>;
