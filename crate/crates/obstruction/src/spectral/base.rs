//! Base cohomology for the spectral sequences: a ring model or an Eilenberg–MacLane table.

use crate::em_space::{normalize, Class, EMTable};
use crate::group_rings::{Coefficients, GradedElement, Monomial, TruncatedRing};

use super::SpectralError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseClass {
    Ring(Monomial),
    Em(Class),
}

impl BaseClass {
    pub fn unit_ring() -> Self {
        BaseClass::Ring(Monomial::one())
    }

    pub fn is_unit(&self) -> bool {
        match self {
            BaseClass::Ring(m) => m.is_one(),
            BaseClass::Em(c) => *c == Class::Unit,
        }
    }

    pub fn degree(&self, p: u32) -> u32 {
        match self {
            BaseClass::Ring(m) => m.degree(p),
            BaseClass::Em(c) => c.degree(p),
        }
    }

    pub fn label(&self) -> String {
        match self {
            BaseClass::Ring(m) => m.to_string(),
            BaseClass::Em(c) => c.pretty(),
        }
    }
}

/// Cohomology of the base: integral ring (with optional mod-p companion for Z/p fibre
/// summands) or a mod-p Eilenberg–MacLane table.
#[derive(Debug, Clone)]
pub enum Base {
    Ring {
        integral: TruncatedRing,
        mod_p: Option<TruncatedRing>,
    },
    Em(EMTable),
}

/// Which coefficient system a product is taken in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Twist {
    /// Coefficients in a free summand of the fibre.
    Free,
    /// Coefficients in a Z/p summand of the fibre.
    ModP,
}

impl Base {
    pub fn prime(&self) -> u32 {
        match self {
            Base::Ring { integral, .. } => integral.prime(),
            Base::Em(t) => t.p,
        }
    }

    pub fn coefficients(&self) -> Coefficients {
        match self {
            Base::Ring { integral, .. } => integral.id().coeffs,
            Base::Em(t) => t.coeffs,
        }
    }

    fn ring(&self, twist: Twist) -> Option<&TruncatedRing> {
        match (self, twist) {
            (Base::Ring { integral, .. }, Twist::Free) => Some(integral),
            (Base::Ring { mod_p, .. }, Twist::ModP) => mod_p.as_ref(),
            (Base::Em(_), _) => None,
        }
    }

    /// Basis with additive orders in degree `n`; `None` when the tables do not reach it.
    pub fn basis(&self, n: u32, twist: Twist) -> Option<Vec<(BaseClass, u64)>> {
        let p = u64::from(self.prime());
        if let Base::Em(t) = self {
            let e = t.entry(n).ok()?;
            let orders = e.group.orders();
            // Z/p-summand coefficients over an F_p base change nothing
            return Some(
                e.basis
                    .iter()
                    .zip(orders)
                    .map(|(c, o)| (BaseClass::Em(c.clone()), num_traits::ToPrimitive::to_u64(o).unwrap_or(p)))
                    .collect(),
            );
        }
        if n == 0 && twist == Twist::ModP {
            return Some(vec![(BaseClass::unit_ring(), p)]);
        }
        let ring = self.ring(twist)?;
        let mons = ring.ring_basis(n).ok()?;
        Some(
            mons.into_iter()
                .map(|m| {
                    let o = ring.order(&m).unwrap_or(0);
                    let o = if twist == Twist::ModP { p } else { o };
                    (BaseClass::Ring(m), o)
                })
                .collect(),
        )
    }

    /// Product of a basis class with a combination, taken as one ring element so that
    /// element-level table entries apply.
    pub fn multiply_combination(
        &self,
        a: &BaseClass,
        combo: &[(i64, BaseClass)],
        twist: Twist,
    ) -> Result<Vec<(i64, BaseClass)>, SpectralError> {
        if let (Base::Ring { .. }, BaseClass::Ring(x)) = (self, a) {
            let ring = self.ring(twist).ok_or(SpectralError::MissingTable {
                what: "mod-p base ring".into(),
            })?;
            let mut terms = crate::group_rings::Terms::new();
            for (c, b) in combo {
                let BaseClass::Ring(m) = b else {
                    return Err(SpectralError::MissingTable {
                        what: "product of classes from different bases".into(),
                    });
                };
                if a.degree(ring.prime()) + m.degree(ring.prime()) > ring.cap() {
                    return Err(SpectralError::MissingTable {
                        what: format!("{} above degree {}", ring.id(), ring.cap()),
                    });
                }
                *terms.entry(m.clone()).or_insert(0) += c;
            }
            let prod = ring.multiply(&ring.monomial(x), &ring.from_terms(terms))?;
            return Ok(prod
                .terms()
                .iter()
                .map(|(m, c)| (*c, BaseClass::Ring(m.clone())))
                .collect());
        }
        let mut out: Vec<(i64, BaseClass)> = Vec::new();
        for (c, b) in combo {
            for (d, prod) in self.multiply(a, b, twist)? {
                match out.iter_mut().find(|(_, x)| *x == prod) {
                    Some(e) => e.0 += c * d,
                    None => out.push((c * d, prod)),
                }
            }
        }
        Ok(out)
    }

    /// Product of two basis classes as a combination of basis classes.
    pub fn multiply(
        &self,
        a: &BaseClass,
        b: &BaseClass,
        twist: Twist,
    ) -> Result<Vec<(i64, BaseClass)>, SpectralError> {
        let p = self.prime();
        let degree = a.degree(p) + b.degree(p);
        match (self, a, b) {
            (Base::Ring { .. }, BaseClass::Ring(x), BaseClass::Ring(y)) => {
                let ring = self.ring(twist).ok_or(SpectralError::MissingTable {
                    what: format!("mod-p base ring in degree {degree}"),
                })?;
                if degree > ring.cap() {
                    return Err(SpectralError::MissingTable {
                        what: format!("{} above degree {}", ring.id(), ring.cap()),
                    });
                }
                let prod: GradedElement = ring.multiply(&ring.monomial(x), &ring.monomial(y))?;
                Ok(prod
                    .terms()
                    .iter()
                    .map(|(m, c)| (*c, BaseClass::Ring(m.clone())))
                    .collect())
            }
            (Base::Em(t), BaseClass::Em(x), BaseClass::Em(y)) => {
                let combo = normalize(&Class::cup(x.clone(), y.clone()), p);
                if combo.is_empty() {
                    return Ok(Vec::new());
                }
                let e = t.entry(degree).map_err(|_| SpectralError::MissingTable {
                    what: format!("{:?} table in degree {degree}", t.space),
                })?;
                combo
                    .into_iter()
                    .map(|(c, cls)| {
                        if e.basis.contains(&cls) {
                            Ok((i64::from(c), BaseClass::Em(cls)))
                        } else {
                            Err(SpectralError::MissingTable {
                                what: format!("product {} in degree {degree}", cls.pretty()),
                            })
                        }
                    })
                    .collect()
            }
            _ => Err(SpectralError::MissingTable {
                what: "product of classes from different bases".into(),
            }),
        }
    }
}
