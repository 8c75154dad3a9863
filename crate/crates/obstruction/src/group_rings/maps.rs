//! Restriction, transfer, mod-p reduction and Bockstein between the ring models.

use std::collections::BTreeMap;

use thiserror::Error;

use super::monomial::{Gen, Monomial};
use super::ring::{Coefficients, GradedElement, RingError, RingId, RingKind, Terms, TruncatedRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("restriction of {0} is not tabled")]
    UnknownRestriction(Monomial),
    #[error("transfer of {0} is not tabled")]
    UnknownTransfer(Monomial),
    #[error("Bockstein image of {0} is not tabled")]
    UnknownBocksteinImage(Monomial),
    #[error("element lives in {found}, map expects {expected}")]
    WrongSource { expected: RingId, found: RingId },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A ring homomorphism given on generators; `None` marks an unknown image.
#[derive(Debug, Clone)]
pub struct RingMap {
    pub source: RingId,
    pub target: RingId,
    images: BTreeMap<Gen, Option<Terms>>,
}

impl RingMap {
    pub fn image_of(&self, g: Gen) -> Option<Option<&Terms>> {
        self.images.get(&g).map(Option::as_ref)
    }

    pub fn apply(&self, x: &GradedElement, target: &TruncatedRing) -> Result<GradedElement, MapError> {
        if x.ring() != self.source {
            return Err(MapError::WrongSource {
                expected: self.source,
                found: x.ring(),
            });
        }
        let mut acc = target.zero();
        for (m, c) in x.terms() {
            let img = self.apply_monomial(m, target)?;
            acc = target.add(&acc, &target.scale(&img, *c));
        }
        Ok(acc)
    }

    fn apply_monomial(&self, m: &Monomial, target: &TruncatedRing) -> Result<GradedElement, MapError> {
        let d = m.degree(self.source.p);
        if d > target.cap() {
            return Err(RingError::DegreeAboveCap {
                degree: d,
                cap: target.cap(),
            }
            .into());
        }
        let mut acc = target.one();
        for &(g, e) in m.factors() {
            let img = match self.images.get(&g) {
                Some(Some(t)) => target.from_terms(t.clone()),
                _ => return Err(MapError::UnknownRestriction(m.clone())),
            };
            for _ in 0..e {
                acc = target.multiply(&acc, &img)?;
            }
        }
        Ok(acc)
    }
}

fn mono(f: &[(Gen, u32)]) -> Monomial {
    Monomial::from_factors(f.iter().copied())
}

fn terms(t: &[(i64, &[(Gen, u32)])]) -> Terms {
    let mut out = Terms::new();
    for (c, f) in t {
        *out.entry(mono(f)).or_insert(0) += c;
    }
    out
}

/// Restriction from G̃ₚ to H̃ₜ, integrally or mod p.
pub fn restriction_g_to_h(p: u32, t: u32, coeffs: Coefficients) -> RingMap {
    let ti = i64::from(t);
    let mut images = BTreeMap::new();
    let generic = t < p;
    match coeffs {
        Coefficients::Integral => {
            let v = Gen::VPrime;
            images.insert(Gen::Alpha, Some(if generic { terms(&[(1, &[(v, 1)])]) } else { Terms::new() }));
            images.insert(Gen::Beta, Some(if generic { terms(&[(ti, &[(v, 1)])]) } else { terms(&[(1, &[(v, 1)])]) }));
            images.insert(
                Gen::Zeta,
                Some(terms(&[
                    (1, &[(Gen::TauPrime, p)]),
                    (-1, &[(Gen::TauPrime, 1), (v, p - 1)]),
                ])),
            );
            for k in 1..p {
                images.insert(Gen::Chi(k), None);
            }
        }
        Coefficients::ModP => {
            let v = Gen::V;
            let u = Gen::U;
            images.insert(Gen::X, Some(if generic { terms(&[(1, &[(v, 1)])]) } else { Terms::new() }));
            images.insert(Gen::XPrime, Some(if generic { terms(&[(ti, &[(v, 1)])]) } else { terms(&[(1, &[(v, 1)])]) }));
            images.insert(Gen::Y, Some(if generic { terms(&[(1, &[(u, 1)])]) } else { Terms::new() }));
            images.insert(Gen::YPrime, Some(if generic { terms(&[(ti, &[(u, 1)])]) } else { terms(&[(1, &[(u, 1)])]) }));
            images.insert(
                Gen::Z,
                Some(terms(&[
                    (1, &[(Gen::TauBar, p)]),
                    (-1, &[(Gen::TauBar, 1), (v, p - 1)]),
                ])),
            );
            for k in 1..p {
                images.insert(Gen::C(k), None);
            }
        }
    }
    RingMap {
        source: RingId::new(RingKind::BGt, p, coeffs),
        target: RingId::new(RingKind::BHt, p, coeffs),
        images,
    }
}

/// Restriction from H̃ₜ to the circle.
pub fn restriction_h_to_s(p: u32) -> RingMap {
    let mut images = BTreeMap::new();
    images.insert(Gen::TauPrime, Some(terms(&[(1, &[(Gen::Tau, 1)])])));
    images.insert(Gen::VPrime, Some(Terms::new()));
    RingMap {
        source: RingId::new(RingKind::BHt, p, Coefficients::Integral),
        target: RingId::new(RingKind::BS1, p, Coefficients::Integral),
        images,
    }
}

/// Restriction from G̃ₚ to the circle.
pub fn restriction_g_to_s(p: u32) -> RingMap {
    let mut images = BTreeMap::new();
    images.insert(Gen::Alpha, Some(Terms::new()));
    images.insert(Gen::Beta, Some(Terms::new()));
    images.insert(Gen::Zeta, Some(terms(&[(1, &[(Gen::Tau, p)])])));
    for k in 1..p {
        images.insert(Gen::Chi(k), None);
    }
    RingMap {
        source: RingId::new(RingKind::BGt, p, Coefficients::Integral),
        target: RingId::new(RingKind::BS1, p, Coefficients::Integral),
        images,
    }
}

/// Mod-p reduction π_* on generators.
pub fn reduction(kind: RingKind, p: u32) -> RingMap {
    let pairs: Vec<(Gen, Gen)> = match kind {
        RingKind::BGt => {
            let mut v = vec![(Gen::Alpha, Gen::X), (Gen::Beta, Gen::XPrime), (Gen::Zeta, Gen::Z)];
            v.extend((1..p).map(|k| (Gen::Chi(k), Gen::C(k))));
            v
        }
        RingKind::BHt => vec![(Gen::TauPrime, Gen::TauBar), (Gen::VPrime, Gen::V)],
        RingKind::BS1 => vec![(Gen::Tau, Gen::TauBar)],
        RingKind::BDt => vec![(Gen::VPrime, Gen::V)],
    };
    RingMap {
        source: RingId::new(kind, p, Coefficients::Integral),
        target: RingId::new(kind, p, Coefficients::ModP),
        images: pairs
            .into_iter()
            .map(|(a, b)| (a, Some(terms(&[(1, &[(b, 1)])]))))
            .collect(),
    }
}

fn lift_gen(g: Gen) -> Option<Gen> {
    Some(match g {
        Gen::X => Gen::Alpha,
        Gen::XPrime => Gen::Beta,
        Gen::C(k) => Gen::Chi(k),
        Gen::Z => Gen::Zeta,
        Gen::TauBar => Gen::TauPrime,
        Gen::V => Gen::VPrime,
        _ => return None,
    })
}

/// Integral Bockstein δ_p of a mod-p class: δ(π(a)·g) = a·δ(g) for the odd generators
/// g ∈ {y, y', u} with δy = α, δy' = β, δu = v'; reductions of integral classes map to 0.
pub fn bockstein(x: &GradedElement, integral: &TruncatedRing) -> Result<GradedElement, MapError> {
    let mut acc = integral.zero();
    for (m, c) in x.terms() {
        let odd: Vec<(Gen, u32)> = m.factors().iter().copied().filter(|(g, _)| g.is_odd()).collect();
        let img = match odd.as_slice() {
            [] => continue,
            [(g, 1)] => {
                let delta = match g {
                    Gen::Y => Gen::Alpha,
                    Gen::YPrime => Gen::Beta,
                    Gen::U => Gen::VPrime,
                    _ => unreachable!("odd generators are y, y', u"),
                };
                let mut lifted = Monomial::gen(delta);
                for &(h, e) in m.factors() {
                    if h.is_odd() {
                        continue;
                    }
                    let l = lift_gen(h).ok_or_else(|| MapError::UnknownBocksteinImage(m.clone()))?;
                    lifted = lifted.concat(&Monomial::from_factors([(l, e)]));
                }
                // normal form through the product table
                let mut e = integral.one();
                for &(h, k) in lifted.factors() {
                    let g = integral.monomial(&Monomial::gen(h));
                    for _ in 0..k {
                        e = integral.multiply(&e, &g)?;
                    }
                }
                e
            }
            _ => return Err(MapError::UnknownBocksteinImage(m.clone())),
        };
        acc = integral.add(&acc, &integral.scale(&img, *c));
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Covering {
    /// B H̃ₜ → B G̃ₚ, index p.
    HtoG { t: u32 },
    /// B S¹ → B H̃ₜ, index p.
    StoH { t: u32 },
    /// B S¹ → B G̃ₚ, index p².
    StoG,
}

impl Covering {
    pub fn index(&self, p: u32) -> i64 {
        match self {
            Covering::HtoG { .. } | Covering::StoH { .. } => i64::from(p),
            Covering::StoG => i64::from(p * p),
        }
    }
}

/// Tabled transfer values on source monomials.
#[derive(Debug, Clone)]
pub struct TransferTable {
    pub covering: Covering,
    pub source: RingId,
    pub target: RingId,
    entries: BTreeMap<Monomial, Terms>,
}

impl TransferTable {
    pub fn sources(&self) -> impl Iterator<Item = &Monomial> {
        self.entries.keys()
    }

    pub fn apply(&self, x: &GradedElement, target: &TruncatedRing) -> Result<GradedElement, MapError> {
        if x.ring() != self.source {
            return Err(MapError::WrongSource {
                expected: self.source,
                found: x.ring(),
            });
        }
        let mut acc = target.zero();
        for (m, c) in x.terms() {
            let t = self
                .entries
                .get(m)
                .ok_or_else(|| MapError::UnknownTransfer(m.clone()))?;
            acc = target.add(&acc, &target.scale(&target.from_terms(t.clone()), *c));
        }
        Ok(acc)
    }

    pub fn is_tabled(&self, x: &GradedElement) -> bool {
        x.terms().keys().all(|m| self.entries.contains_key(m))
    }
}

/// Integral transfer tables.
pub fn transfer_table(covering: Covering, p: u32) -> TransferTable {
    let pi = i64::from(p);
    let mut entries = BTreeMap::new();
    let z = Coefficients::Integral;
    let (source, target) = match covering {
        Covering::HtoG { .. } => {
            entries.insert(Monomial::one(), terms(&[(pi, &[])]));
            entries.insert(
                mono(&[(Gen::TauPrime, p - 1)]),
                terms(&[(1, &[(Gen::Chi(p - 1), 1)]), (-1, &[(Gen::Alpha, p - 1)])]),
            );
            // tr(Res(α)^k) = α^k·p = 0
            for k in 1..=2 * p {
                entries.insert(mono(&[(Gen::VPrime, k)]), Terms::new());
            }
            (RingKind::BHt, RingKind::BGt)
        }
        Covering::StoH { .. } => {
            entries.insert(Monomial::one(), terms(&[(pi, &[])]));
            entries.insert(mono(&[(Gen::Tau, p - 1)]), terms(&[(pi, &[(Gen::TauPrime, p - 1)])]));
            (RingKind::BS1, RingKind::BHt)
        }
        Covering::StoG => {
            entries.insert(Monomial::one(), terms(&[(pi * pi, &[])]));
            entries.insert(mono(&[(Gen::Tau, p - 1)]), terms(&[(pi, &[(Gen::Chi(p - 1), 1)])]));
            (RingKind::BS1, RingKind::BGt)
        }
    };
    TransferTable {
        covering,
        source: RingId::new(source, p, z),
        target: RingId::new(target, p, z),
        entries,
    }
}

/// Mod-p transfer for the covering by H̃ₚ (t = p), where y' restricts to u.
pub fn transfer_table_mod_p(p: u32) -> TransferTable {
    let mut entries = BTreeMap::new();
    entries.insert(Monomial::one(), Terms::new());
    entries.insert(
        mono(&[(Gen::TauBar, p - 1)]),
        terms(&[(1, &[(Gen::C(p - 1), 1)]), (1, &[(Gen::X, p - 1)])]),
    );
    entries.insert(
        mono(&[(Gen::TauBar, p - 1), (Gen::U, 1)]),
        terms(&[
            (-1, &[(Gen::XPrime, p - 1), (Gen::YPrime, 1)]),
            (1, &[(Gen::X, p - 2), (Gen::XPrime, 1), (Gen::Y, 1)]),
        ]),
    );
    TransferTable {
        covering: Covering::HtoG { t: p },
        source: RingId::new(RingKind::BHt, p, Coefficients::ModP),
        target: RingId::new(RingKind::BGt, p, Coefficients::ModP),
        entries,
    }
}

/// One evaluated instance of tr(Res(a)·b) = a·tr(b).
#[derive(Debug, Clone)]
pub struct ProjectionInstance {
    pub a: Monomial,
    pub b: Monomial,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// Evaluates the projection formula for every basis monomial `a` of the base ring (up to
/// `max_degree`) against every tabled transfer source `b`, wherever both sides are defined.
pub fn projection_formula_instances(
    table: &TransferTable,
    res: &RingMap,
    base: &TruncatedRing,
    cover: &TruncatedRing,
    max_degree: u32,
) -> Vec<ProjectionInstance> {
    let mut out = Vec::new();
    for d in 0..=max_degree.min(base.cap()) {
        for a in base.ring_basis(d).unwrap_or_default() {
            let ae = base.monomial(&a);
            let Ok(ra) = res.apply(&ae, cover) else { continue };
            for b in table.sources() {
                let be = cover.monomial(b);
                let Ok(prod) = cover.multiply(&ra, &be) else { continue };
                let Ok(lhs) = table.apply(&prod, base) else { continue };
                let Ok(trb) = table.apply(&be, base) else { continue };
                let Ok(rhs) = base.multiply(&ae, &trb) else { continue };
                out.push(ProjectionInstance {
                    a: a.clone(),
                    b: b.clone(),
                    lhs: base.display(&lhs),
                    rhs: base.display(&rhs),
                    holds: lhs == rhs,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TotalSpace {
    G,
    H,
    S,
}

/// A Γ-class recorded through its E∞ representative z₂ ⊗ base in the top row.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaClass {
    pub space: TotalSpace,
    pub base: GradedElement,
}

impl GammaClass {
    pub fn new(space: TotalSpace, rings: &RingFamily) -> GammaClass {
        let p = rings.p;
        let base = match space {
            TotalSpace::G => {
                let r = &rings.g;
                r.scale(&r.monomial(&mono(&[(Gen::Chi(p - 1), 1)])), i64::from(p))
            }
            TotalSpace::H => {
                let r = &rings.h;
                r.scale(&r.monomial(&mono(&[(Gen::TauPrime, p - 1)])), i64::from(p))
            }
            TotalSpace::S => rings.s.monomial(&mono(&[(Gen::Tau, p - 1)])),
        };
        GammaClass { space, base }
    }

    /// Transfer along a covering; the fiber class pulls back, so the base part transfers.
    pub fn transfer(&self, table: &TransferTable, rings: &RingFamily) -> Result<GammaClass, MapError> {
        let (space, target) = match table.covering {
            Covering::HtoG { .. } | Covering::StoG => (TotalSpace::G, &rings.g),
            Covering::StoH { .. } => (TotalSpace::H, &rings.h),
        };
        Ok(GammaClass {
            space,
            base: table.apply(&self.base, target)?,
        })
    }
}

/// Pullback multiples π^*(Γ_target) = k·Γ_source, as tabled facts.
pub fn gamma_pullback_multiple(covering: Covering, p: u32) -> i64 {
    covering.index(p)
}

/// Integral rings for one prime.
#[derive(Debug, Clone)]
pub struct RingFamily {
    pub p: u32,
    pub g: TruncatedRing,
    pub h: TruncatedRing,
    pub s: TruncatedRing,
}

impl RingFamily {
    pub fn new(p: u32) -> Self {
        use super::builders::build_ring;
        RingFamily {
            p,
            g: build_ring(RingKind::BGt, p, Coefficients::Integral),
            h: build_ring(RingKind::BHt, p, Coefficients::Integral),
            s: build_ring(RingKind::BS1, p, Coefficients::Integral),
        }
    }
}
