//! Odd-primary Steenrod algebra, Thom-module actions, minimal resolutions and Ext charts.

pub mod algebra;
pub mod module;
pub mod resolution;

use thiserror::Error;

pub use algebra::{binom_mod, parse_word, AdmissibleMonomial, SteenrodAlgebra, SteenrodElement, ReductionOrder, Tok};
pub use module::{sphere, thom_module, total_wu_class, ModuleMap, ModuleWithAction, ThomKind};
pub use resolution::{
    free_basis, lift_chain_map, minimal_resolution, permanent_cycle_check, ChainMapSlice, ChartEntry, ExtChart,
    FreeElement, PermanentCycleVerdict, Resolution, ResolveOptions,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("{0} is not an odd prime")]
    BadPrime(u32),
    #[error("malformed word: {0}")]
    Malformed(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("Adem relation {word} fails on basis element {index} in degree {degree}")]
    AdemViolated { word: String, degree: u32, index: usize },
    #[error("resolution requested through degree {requested} but the module is only valid through {valid}")]
    WindowExhausted { requested: u32, valid: u32 },
    #[error("not exact at filtration {filtration}, internal degree {degree}")]
    NotExact { filtration: usize, degree: u32 },
    #[error("chain map cannot be lifted at filtration {filtration}, internal degree {degree}")]
    LiftObstructed { filtration: usize, degree: u32 },
}

/// Ext chart of a computed resolution.
pub fn ext_chart(res: &Resolution) -> ExtChart {
    res.chart()
}
