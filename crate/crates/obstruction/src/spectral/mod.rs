//! Transgression-driven Serre spectral sequences over a bidegree window.

pub mod base;
pub mod engine;
pub mod fibration;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::em_space::{EMTable, EmError};
use crate::exact::{AbGroup, FpMatrix};
use crate::group_rings::{MapError, RingError};

pub use base::{Base, BaseClass, Twist};
pub use engine::{describe, Bidegree, Cell, DiffMatrix, Page, PageGroup, SpectralRun, Window};
pub use fibration::{DiffValue, E2Gen, Fibration, FibrationId, Transgression, TransgressionSpec};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("missing table: {what}")]
    MissingTable { what: String },
    #[error("page {page} has not been computed")]
    NotComputed { page: u32 },
    #[error("E_{page} at {position:?} is not determined by the available data")]
    NotDetermined { page: u32, position: Bidegree },
    #[error("{position:?} lies outside the computed region")]
    OutsideWindow { position: Bidegree },
    #[error("inconsistent data on page {page} at {position:?}: {detail}")]
    Inconsistent {
        page: u32,
        position: Bidegree,
        detail: String,
    },
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Em(#[from] EmError),
}

/// Window covering total degree 4p−2 in fibre rows up to 4p−2.
pub fn default_window(p: u32) -> Window {
    Window::new(4 * p - 2, 4 * p - 2)
}

/// Associated graded pieces of H^{4p−3} and the filtration facts read off E_∞.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrationReport {
    pub p: u32,
    /// E_∞^{2p−2,2p−1}, which equals F^{2p−2}H^{4p−3} since the pieces below vanish.
    pub filtration_piece: PageGroup,
    /// E_∞^{4p−3,0}.
    pub bottom_row: AbGroup,
    /// Columns n < 2p−2 on the line of total degree 4p−3 carry no p-torsion.
    pub quotient_p_torsion_free: bool,
    /// Fibre rows strictly between 0 and 2p−1 contribute nothing.
    pub low_rows_vanish: bool,
}

pub fn filtration_report(run: &SpectralRun) -> Result<FiltrationReport, SpectralError> {
    let p = run.p;
    let total = 4 * p - 3;
    let piece = run.infinity_at((2 * p - 2, 2 * p - 1))?;
    let bottom = run.infinity_at((total, 0))?.group;
    let mut low = true;
    for m in 1..=2 * p - 2 {
        low &= run.infinity_at((total - m, m))?.group.is_trivial();
    }
    let mut free = true;
    for n in 0..2 * p - 2 {
        let g = run.infinity_at((n, total - n))?.group;
        free &= g.p_torsion_rank(u64::from(p)) == 0;
    }
    Ok(FiltrationReport {
        p,
        filtration_piece: piece,
        bottom_row: bottom,
        quotient_p_torsion_free: free,
        low_rows_vanish: low,
    })
}

/// Sum of p-torsion ranks of E_∞ along a line of total degree; every piece must be known.
pub fn p_torsion_at_total_degree(run: &SpectralRun, total: u32) -> Result<usize, SpectralError> {
    let p = u64::from(run.p);
    let mut rank = 0;
    for m in 0..=total.min(run.window.m_max) {
        rank += run.infinity_at((total - m, m))?.group.p_torsion_rank(p);
    }
    Ok(rank)
}

/// Homology-side d^{2p}: E_{4p−3,0} → E_{2p−3,2p−1}, as the mod-p transpose of the torsion
/// part of the cohomology d_{2p}: E^{2p−2,2p−1} → E^{4p−2,0}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyDualReport {
    pub p: u32,
    pub source: AbGroup,
    pub target: AbGroup,
    pub image_rank: usize,
    pub survivor: AbGroup,
}

pub fn homology_dual_run(run: &SpectralRun) -> Result<HomologyDualReport, SpectralError> {
    let p = run.p;
    let s = (2 * p - 2, 2 * p - 1);
    let t = (4 * p - 2, 0);
    let gens = |pos: Bidegree| -> Result<Vec<E2Gen>, SpectralError> {
        run.gens
            .get(&pos)
            .cloned()
            .flatten()
            .ok_or(SpectralError::MissingTable {
                what: format!("E2 at {pos:?}"),
            })
    };
    let (gs, gt) = (gens(s)?, gens(t)?);
    let torsion = |g: &[E2Gen]| -> Result<Vec<usize>, SpectralError> {
        let idx: Vec<usize> = (0..g.len()).filter(|&i| g[i].order != 0).collect();
        if idx.iter().any(|&i| g[i].order != u64::from(p)) {
            return Err(SpectralError::MissingTable {
                what: "torsion that is not elementary abelian".into(),
            });
        }
        Ok(idx)
    };
    let (ts, tt) = (torsion(&gs)?, torsion(&gt)?);
    let d = match run.differentials.get(&(2 * p, s)) {
        Some(DiffMatrix::Known(d)) => d.clone(),
        Some(DiffMatrix::Zero) | None => crate::exact::IntMatrix::zero(gt.len(), gs.len()),
        Some(DiffMatrix::Unknown) => {
            return Err(SpectralError::NotDetermined {
                page: 2 * p,
                position: s,
            })
        }
    };
    let pb = BigInt::from(p);
    let mut triplets = Vec::new();
    for (j, &cj) in ts.iter().enumerate() {
        // torsion maps into torsion: free coordinates of the image must vanish
        for (i, g) in gt.iter().enumerate() {
            if g.order == 0 && !(d.get(i, cj) % &pb).is_zero() {
                return Err(SpectralError::Inconsistent {
                    page: 2 * p,
                    position: s,
                    detail: "torsion class hits a free class".into(),
                });
            }
        }
        for (i, &ri) in tt.iter().enumerate() {
            let x = (d.get(ri, cj) % &pb).to_i64().unwrap_or(0);
            if x != 0 {
                triplets.push((i, j, x));
            }
        }
    }
    let coh = FpMatrix::from_triplets(p, tt.len(), ts.len(), triplets).map_err(|e| {
        SpectralError::MissingTable {
            what: e.to_string(),
        }
    })?;
    let hom = coh.transpose();
    let rank = hom.rank();
    let pp = u64::from(p);
    let elem = |k: usize, name: &str| AbGroup::new((1..=k).map(|i| (format!("{name}{i}"), pp)));
    Ok(HomologyDualReport {
        p,
        source: elem(tt.len(), "a"),
        target: elem(ts.len(), "b"),
        image_rank: rank,
        survivor: elem(tt.len() - rank, "c"),
    })
}

/// H_n(BG; Z) by universal coefficients from the base ring: Free(H^n) ⊕ Tors(H^{n+1}).
pub fn homology_row_zero(fib: &Fibration, n: u32) -> Result<AbGroup, SpectralError> {
    let ring = fib.base_ring().ok_or(SpectralError::MissingTable {
        what: "integral base ring".into(),
    })?;
    let mut s: Vec<(String, u64)> = Vec::new();
    for m in ring.ring_basis(n)? {
        if ring.order(&m) == Some(0) {
            s.push((format!("h({m})"), 0));
        }
    }
    for m in ring.ring_basis(n + 1)? {
        match ring.order(&m) {
            Some(0) | None => {}
            Some(o) => s.push((format!("h({m})"), o)),
        }
    }
    Ok(AbGroup::new(s))
}

/// One degree of the ×p rederivation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedDegree {
    pub degree: u32,
    pub derived_dim: usize,
    pub table_dim: usize,
    /// The fibre column dies: E_∞^{0,degree} = 0.
    pub column_dies: bool,
}

/// Rederives dim H^i(K; F_p) for 1 ≤ i ≤ `max_degree` from the K_p table and the
/// transgressions alone. Degree i uses a fibre table truncated below i: the total space is
/// K again, so dim H^i(K) is the sum of E_∞^{n, i−n} over n ≥ 1, which only involves
/// fibre rows below i.
pub fn derive_times_p(p: u32, max_degree: u32) -> Result<Vec<DerivedDegree>, SpectralError> {
    let full = crate::em_space::k_table(crate::em_space::Space::K, p, crate::group_rings::Coefficients::ModP)?;
    let full_run = SpectralRun::run(&Fibration::times_p(p)?, Window::new(max_degree + 1, max_degree))?;
    let mut out = Vec::new();
    for i in 1..=max_degree {
        let mut truncated: EMTable = full.clone();
        let keep: BTreeMap<u32, _> = truncated
            .entries
            .iter()
            .filter(|(d, _)| **d < i)
            .map(|(d, e)| (*d, e.clone()))
            .collect();
        truncated.entries = keep;
        truncated.top = i - 1;
        // rows ≥ i are unknown to this step; positions there report as undetermined
        let fib = Fibration::times_p_with_fiber(p, truncated)?;
        let run = SpectralRun::run(&fib, Window::new(i + 1, i))?;
        let mut dim = 0;
        for n in 1..=i {
            let g = run.infinity_at((n, i - n))?;
            dim += g.group.tensor_rank(u64::from(p));
        }
        let column = full_run.infinity_at((0, i))?.group.is_trivial();
        out.push(DerivedDegree {
            degree: i,
            derived_dim: dim,
            table_dim: full.dim(i)?,
            column_dies: column,
        });
    }
    Ok(out)
}
