//! Brute-force finite group computations: the extraspecial group, its cyclic-subgroup
//! census with Oliver's formula, and GL₂(p) acting on binary forms.

pub mod extraspecial;
pub mod gl2;

use thiserror::Error;

pub use extraspecial::{cyclic_subgroup_census, oliver_order, Element, ExtraspecialGroup, OliverReport, SubgroupRecord};
pub use gl2::{gl2_elements, gl2_order, gl2_submodule_span, span_under, GL2Module, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0} is not an odd prime")]
    BadPrime(u32),
    #[error("census product {0} is not a perfect square")]
    NonSquareProduct(String),
}
