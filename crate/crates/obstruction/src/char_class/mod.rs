//! Chern, Pontrjagin and Wu classes of sums of line bundles over the subgroup rings.

pub mod multiplicative;

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::group_rings::{Coefficients, Gen, GradedElement, Monomial, RingError, RingKind, TruncatedRing};

pub use multiplicative::{multiplicative_sequence, to_elementary, top_coefficient};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CharError {
    #[error("no decomposition tabled for {0:?} over this ring")]
    UnknownRepresentation(Rep),
    #[error("cap {cap} is below the degree {needed} needed")]
    CapTooSmall { cap: u32, needed: u32 },
    #[error("multiplicative sequence has a non-integral coefficient")]
    NonIntegral,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Representations whose restrictions to H̃ₜ are modelled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rep {
    /// The p-dimensional irreducible representation.
    Psi,
    /// The one-dimensional representation pulled back along the first coordinate.
    PhiZero,
    /// The one-dimensional representation pulled back along the second coordinate.
    PhiP,
    /// The one-dimensional summand of Ψ on which the circle acts by weight one.
    PhiPrime,
    /// Ψ plus p copies of each of the two one-dimensional blocks.
    PsiHat,
    Trivial,
}

/// Direct sum of line bundles recorded by first Chern classes.
#[derive(Debug, Clone, PartialEq)]
pub struct LineBundleSum {
    pub lines: Vec<GradedElement>,
}

impl LineBundleSum {
    pub fn concat(&self, other: &LineBundleSum) -> LineBundleSum {
        let mut lines = self.lines.clone();
        lines.extend(other.lines.iter().cloned());
        LineBundleSum { lines }
    }
}

/// Total class c_0 + c_1 + … split by degree; c_k sits in degree 2k.
#[derive(Debug, Clone, PartialEq)]
pub struct ChernVector {
    pub classes: Vec<GradedElement>,
}

impl ChernVector {
    pub fn from_total(ring: &TruncatedRing, total: &GradedElement) -> Self {
        let classes = (0..=ring.cap() / 2)
            .map(|k| ring.homogeneous(total, 2 * k))
            .collect();
        ChernVector { classes }
    }

    pub fn total(&self, ring: &TruncatedRing) -> GradedElement {
        self.classes
            .iter()
            .fold(ring.zero(), |acc, c| ring.add(&acc, c))
    }

    pub fn get(&self, k: usize) -> Option<&GradedElement> {
        self.classes.get(k)
    }
}

fn line(ring: &TruncatedRing, tau: i64, v: i64) -> Result<GradedElement, RingError> {
    let (tg, vg) = match ring.id().coeffs {
        Coefficients::Integral => (Gen::TauPrime, Gen::VPrime),
        Coefficients::ModP => (Gen::TauBar, Gen::V),
    };
    ring.element([(tau, &Monomial::gen(tg)), (v, &Monomial::gen(vg))])
}

/// Restriction of a representation to H̃ₜ as a sum of lines, in the integral or mod-p ring.
pub fn decompose_restriction(
    rep: Rep,
    ring: &TruncatedRing,
    t: u32,
) -> Result<LineBundleSum, CharError> {
    let p = ring.prime();
    if ring.id().kind != RingKind::BHt || t > p {
        return Err(CharError::UnknownRepresentation(rep));
    }
    let ti = i64::from(t);
    // the two one-dimensional blocks restrict like α and β
    let res_alpha = if t < p { 1 } else { 0 };
    let res_beta = if t < p { ti } else { 1 };
    let lines = match rep {
        Rep::Psi => (0..i64::from(p))
            .map(|k| line(ring, 1, k))
            .collect::<Result<_, _>>()?,
        Rep::PhiPrime => vec![line(ring, 1, 0)?],
        Rep::PhiZero => vec![line(ring, 0, res_alpha)?],
        Rep::PhiP => vec![line(ring, 0, res_beta)?],
        Rep::Trivial => Vec::new(),
        Rep::PsiHat => {
            let mut v = decompose_restriction(Rep::Psi, ring, t)?.lines;
            for _ in 0..p {
                v.push(line(ring, 0, res_alpha)?);
            }
            for _ in 0..p {
                v.push(line(ring, 0, res_beta)?);
            }
            v
        }
    };
    Ok(LineBundleSum { lines })
}

/// ∏(1 + c₁ᵢ) truncated at the ring cap.
pub fn chern_total(ring: &TruncatedRing, s: &LineBundleSum) -> Result<ChernVector, CharError> {
    let mut acc = ring.one();
    for l in &s.lines {
        let factor = ring.add(&ring.one(), l);
        acc = ring.multiply(&acc, &factor)?;
    }
    Ok(ChernVector::from_total(ring, &acc))
}

/// Formal inverse of a total class with c₀ = 1, through degree `cap`.
pub fn stable_inverse(
    ring: &TruncatedRing,
    c: &ChernVector,
    cap: u32,
) -> Result<ChernVector, CharError> {
    if cap > ring.cap() {
        return Err(CharError::CapTooSmall {
            cap: ring.cap(),
            needed: cap,
        });
    }
    let total = c.total(ring);
    // 1/(1 + y) = Σ (-y)^k with y of positive degree
    let y = ring.sub(&total, &ring.one());
    let neg_y = ring.scale(&y, -1);
    let mut inv = ring.one();
    let mut power = ring.one();
    for _ in 0..cap {
        power = ring.multiply(&power, &neg_y)?;
        if power.is_zero() {
            break;
        }
        inv = ring.add(&inv, &power);
    }
    let mut out = ChernVector::from_total(ring, &inv);
    for (k, cls) in out.classes.iter_mut().enumerate() {
        if 2 * k as u32 > cap {
            *cls = ring.zero();
        }
    }
    Ok(out)
}

/// p_k = (−1)^k Σ_{i+j=2k} (−1)^i c_i c_j for k = 0..=r.
pub fn pontrjagin_classes(
    ring: &TruncatedRing,
    c: &ChernVector,
    r: usize,
) -> Result<Vec<GradedElement>, CharError> {
    let needed = 4 * r as u32;
    if ring.cap() < needed || c.classes.len() <= 2 * r {
        return Err(CharError::CapTooSmall {
            cap: ring.cap(),
            needed,
        });
    }
    let mut out = Vec::with_capacity(r + 1);
    for k in 0..=r {
        let mut acc = ring.zero();
        for i in 0..=2 * k {
            let prod = ring.multiply(&c.classes[i], &c.classes[2 * k - i])?;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            acc = ring.add(&acc, &ring.scale(&prod, sign));
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        out.push(ring.scale(&acc, sign));
    }
    Ok(out)
}

/// Evaluates a polynomial in p_1..p_n (integral coefficients) on ring classes.
pub fn evaluate_sequence(
    ring: &TruncatedRing,
    k: &crate::RatPoly,
    classes: &[GradedElement],
) -> Result<GradedElement, CharError> {
    let mut acc = ring.zero();
    for (e, c) in k.terms() {
        if !c.is_integer() {
            return Err(CharError::NonIntegral);
        }
        let c = c.to_integer().to_i64().ok_or(CharError::NonIntegral)?;
        let mut term = ring.one();
        for (i, &pw) in e.iter().enumerate() {
            for _ in 0..pw {
                term = ring.multiply(&term, &classes[i + 1])?;
            }
        }
        acc = ring.add(&acc, &ring.scale(&term, c));
    }
    Ok(acc)
}

/// The Wu class q₁ = K_r(p₁,…,p_r) for the series 1 + t^r, r = (p−1)/2, in the mod-p ring.
pub fn wu_q1(ring: &TruncatedRing, pontrjagin: &[GradedElement]) -> Result<GradedElement, CharError> {
    let p = ring.prime() as usize;
    let r = (p - 1) / 2;
    if pontrjagin.len() <= r {
        return Err(CharError::CapTooSmall {
            cap: ring.cap(),
            needed: 4 * r as u32,
        });
    }
    let mut f = vec![0i64; r + 1];
    f[0] = 1;
    f[r] = 1;
    let k = multiplicative_sequence(&f, r);
    evaluate_sequence(ring, &k, pontrjagin)
}

/// The shortcut used when p_1 = … = p_{r−1} = 0: q₁ = (−1)^{r+1} r · p_r.
pub fn wu_q1_shortcut(ring: &TruncatedRing, pontrjagin: &[GradedElement]) -> GradedElement {
    let r = (ring.prime() as usize - 1) / 2;
    let sign = if r % 2 == 1 { 1 } else { -1 };
    ring.scale(&pontrjagin[r], sign * r as i64)
}
