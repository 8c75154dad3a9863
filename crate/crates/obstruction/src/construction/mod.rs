//! Symbolic verification of an explicit free action of the order-27 circle extension on a
//! pushout of sphere products: representations, gluing matrices, equivariance, freeness.

pub mod freeness;
pub mod mat3;
pub mod numeric;
pub mod reps;
pub mod sym;

use serde::Serialize;
use thiserror::Error;

use crate::report::CheckRecord;
use crate::Rational;

pub use freeness::{verify_disjointness, verify_freeness, DisjointnessVerdict, FreenessReport};
pub use mat3::Mat3;
pub use numeric::{numeric_cross_check, NumericReport};
pub use reps::{build_z, rep_matrix, verify_alpha_equivariance, verify_p_conjugation, BlockForm, Gen, GroupWord, Rep};
pub use sym::{Conjugate, ScaledScalar, SymScalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("cannot parse group word {0:?}")]
    BadWord(String),
    #[error("no diagonal base-point transport for m = {m}, k = {k}")]
    NoBasePoint { m: u32, k: u32 },
    #[error("eigenvector with irrational coordinate moduli")]
    IrrationalModulus,
    #[error("epsilon {0} outside (0, 1)")]
    EpsilonOutOfRange(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionReport {
    pub eps: String,
    pub checks: Vec<CheckRecord>,
    pub freeness: FreenessReport,
    pub disjointness: DisjointnessVerdict,
    pub numeric: NumericReport,
}

/// Runs every symbolic check, the freeness analysis, the disjointness chain at `eps` and
/// the numeric cross-check on `points` seeded samples.
pub fn run(eps: &Rational, points: usize, seed: u64) -> Result<ConstructionReport, ConstructionError> {
    let mut checks = reps::verify_relations();
    checks.extend(verify_p_conjugation());
    for m in 1..=2 {
        checks.extend(reps::su3_check(m, &build_z(m)));
        let gram = reps::block_gram(reps::standard_form(m));
        let q = reps::eps_q();
        let off: Vec<String> = [(0, 0, &q), (1, 1, &q)]
            .iter()
            .filter(|(r, c, want)| gram[*r][*c] != **want)
            .map(|(r, c, _)| format!("({},{}): {}", r + 1, c + 1, gram[*r][*c]))
            .chain([(0, 1), (1, 0)].iter().filter(|(r, c)| !num_traits::Zero::is_zero(&gram[*r][*c])).map(|(r, c)| format!("({},{}): {}", r + 1, c + 1, gram[*r][*c])))
            .collect();
        checks.push(CheckRecord::new(
            format!("Z{m} block Gram matrix"),
            "gluing matrix in SU(3)",
            "ε(1-ε) I",
            if off.is_empty() { "ε(1-ε) I" } else { "other" },
            off,
        ));
        for g in [Gen::A, Gen::B, Gen::Z] {
            checks.push(verify_alpha_equivariance(g, m)?);
        }
    }
    checks.extend(reps::recorded_discrepancies()?);
    let freeness = verify_freeness(eps)?;
    checks.extend(freeness.checks.iter().cloned());
    let disjointness = verify_disjointness(eps)?;
    checks.push(freeness::disjointness_check(eps)?);
    let eps_f = num_traits::ToPrimitive::to_f64(eps).unwrap_or(f64::NAN);
    let numeric = numeric_cross_check(eps_f, points, seed);
    for (name, v) in &numeric.max_residual {
        checks.push(CheckRecord::new(
            format!("numeric: {name}"),
            "floating-point cross-check",
            format!("<= {:e}", numeric.tolerance),
            if *v <= numeric.tolerance { format!("<= {:e}", numeric.tolerance) } else { format!("{v:e}") },
            Vec::new(),
        ));
    }
    Ok(ConstructionReport {
        eps: eps.to_string(),
        checks,
        freeness,
        disjointness,
        numeric,
    })
}
