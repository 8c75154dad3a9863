//! Exact arithmetic: F_p and integer linear algebra, abelian groups, cyclotomics, polynomials.

pub mod abgroup;
pub mod cyclotomic;
pub mod fp;
pub mod int;
pub mod mpoly;

pub use abgroup::AbGroup;
pub use cyclotomic::{cyclotomic_eval, CycScalar, CyclotomicError};
pub use fp::{FpError, FpMatrix, FpVector, Subspace};
pub use int::{
    integer_kernel, lattice_basis, lattice_coordinates, lattice_quotient, smith_decomposition,
    smith_normal_form, solve_integer, IntMatrix, SmithDecomposition,
};
pub use mpoly::{Coeff, MPoly};
