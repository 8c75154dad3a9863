//! Fibrations K → total → base with transgression data, and their E₂ terms.

use serde::Serialize;

use crate::em_space::{k_table, normalize, Class, EMTable, Space};
use crate::group_rings::{
    build_ring, restriction_g_to_h, restriction_g_to_s, Coefficients, Gen, Monomial, RingKind,
    Terms, TruncatedRing,
};

use super::base::{Base, BaseClass, Twist};
use super::SpectralError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FibrationId {
    /// K → B_G → BG̃ₚ.
    G,
    /// K → B_H → BH̃ₜ.
    H { t: u32 },
    /// K → B_S → BS¹.
    S,
    /// K → K → K_p, the first map multiplication by p.
    TimesP,
}

/// What a fibre class does under the differentials.
#[derive(Debug, Clone, PartialEq)]
pub enum Transgression {
    /// Transgresses on `page` to a combination of (base class, fibre class) pairs.
    At {
        page: u32,
        image: Vec<(i64, BaseClass, Class)>,
    },
    /// Not determined by the available data.
    Unknown,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransgressionSpec {
    pub entries: Vec<(Class, Transgression)>,
}

impl TransgressionSpec {
    /// Rule for a fibre basis class: the unit never supports a differential, cup products of
    /// two classes transgressing on the same page follow the Leibniz rule.
    pub fn rule(&self, f: &Class, p: u32) -> Transgression {
        if *f == Class::Unit {
            return Transgression::At {
                page: u32::MAX,
                image: Vec::new(),
            };
        }
        if let Some((_, t)) = self.entries.iter().find(|(c, _)| c == f) {
            return t.clone();
        }
        if let Class::Cup(a, b) = f {
            if let (
                Transgression::At { page: ra, image: ia },
                Transgression::At { page: rb, image: ib },
            ) = (self.rule(a, p), self.rule(b, p))
            {
                if ra == rb && ra != u32::MAX {
                    // d(ab) = d(a)·b + (−1)^{|a|} a·d(b); base images commute past a with sign
                    let mut image = Vec::new();
                    for (c, base, fib) in ia {
                        if fib == Class::Unit {
                            image.push((c, base, (**b).clone()));
                        } else {
                            return Transgression::Unknown;
                        }
                    }
                    let da = a.degree(p);
                    for (c, base, fib) in ib {
                        if fib != Class::Unit {
                            return Transgression::Unknown;
                        }
                        let swap = (da * base.degree(p)) % 2 == 1;
                        let sign = if (da % 2 == 1) ^ swap { -1 } else { 1 };
                        image.push((sign * c, base, (**a).clone()));
                    }
                    return Transgression::At { page: ra, image };
                }
            }
        }
        Transgression::Unknown
    }
}

/// One E₂ generator: base class times fibre class, with its additive order (0 = infinite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E2Gen {
    pub base: BaseClass,
    pub fiber: Class,
    pub order: u64,
    /// Order of the fibre summand the coefficients come from.
    pub fiber_order: u64,
}

impl E2Gen {
    pub fn label(&self) -> String {
        match (self.fiber == Class::Unit, self.base.is_unit()) {
            (true, _) => self.base.label(),
            (false, true) => self.fiber.pretty(),
            (false, false) => format!("{}·{}", self.fiber.pretty(), self.base.label()),
        }
    }

    pub fn twist(&self) -> Twist {
        if self.fiber_order == 0 {
            Twist::Free
        } else {
            Twist::ModP
        }
    }
}

#[derive(Debug, Clone)]
pub struct Fibration {
    pub id: FibrationId,
    pub p: u32,
    pub base: Base,
    pub fiber: EMTable,
    pub spec: TransgressionSpec,
}

fn ring_terms(t: &Terms) -> Vec<(i64, BaseClass, Class)> {
    t.iter()
        .map(|(m, c)| (*c, BaseClass::Ring(m.clone()), Class::Unit))
        .collect()
}

fn integral_spec(p: u32, theta1: &Terms, theta2: &Terms) -> TransgressionSpec {
    let page = 2 * p;
    let mut entries = vec![
        (
            Class::Z(1),
            Transgression::At {
                page,
                image: ring_terms(theta1),
            },
        ),
        (
            Class::Z(2),
            Transgression::At {
                page,
                image: ring_terms(theta2),
            },
        ),
    ];
    // the p-torsion classes in fibre degree 4p−2 carry no recorded differential
    for j in 1..=2 {
        entries.push((
            Class::delta(Class::p1(Class::ZBar(j))),
            Transgression::Unknown,
        ));
    }
    TransgressionSpec { entries }
}

impl Fibration {
    /// Fibration over BG̃ₚ with k-invariant components ζ and α^p − α^{p−1}β + β^p.
    pub fn g(p: u32) -> Result<Self, SpectralError> {
        let integral = build_ring(RingKind::BGt, p, Coefficients::Integral);
        let mod_p = build_ring(RingKind::BGt, p, Coefficients::ModP);
        let theta1: Terms = [(Monomial::gen(Gen::Zeta), 1)].into();
        let theta2 = integral.alias("k2").expect("k2 alias").terms().clone();
        Ok(Fibration {
            id: FibrationId::G,
            p,
            spec: integral_spec(p, &theta1, &theta2),
            base: Base::Ring {
                integral,
                mod_p: Some(mod_p),
            },
            fiber: k_table(Space::K, p, Coefficients::Integral)?,
        })
    }

    /// Pulled back to H̃ₜ: the transgressions are the restrictions of those over G̃ₚ.
    pub fn h(p: u32, t: u32) -> Result<Self, SpectralError> {
        let g = build_ring(RingKind::BGt, p, Coefficients::Integral);
        let integral = build_ring(RingKind::BHt, p, Coefficients::Integral);
        let res = restriction_g_to_h(p, t, Coefficients::Integral);
        let theta1 = res.apply(&g.monomial(&Monomial::gen(Gen::Zeta)), &integral)?;
        let theta2 = res.apply(&g.alias("k2").expect("k2 alias"), &integral)?;
        Ok(Fibration {
            id: FibrationId::H { t },
            p,
            spec: integral_spec(p, theta1.terms(), theta2.terms()),
            base: Base::Ring {
                integral,
                mod_p: Some(build_ring(RingKind::BHt, p, Coefficients::ModP)),
            },
            fiber: k_table(Space::K, p, Coefficients::Integral)?,
        })
    }

    /// Pulled back to the circle.
    pub fn s(p: u32) -> Result<Self, SpectralError> {
        let g = build_ring(RingKind::BGt, p, Coefficients::Integral);
        let integral = build_ring(RingKind::BS1, p, Coefficients::Integral);
        let res = restriction_g_to_s(p);
        let theta1 = res.apply(&g.monomial(&Monomial::gen(Gen::Zeta)), &integral)?;
        let theta2 = res.apply(&g.alias("k2").expect("k2 alias"), &integral)?;
        Ok(Fibration {
            id: FibrationId::S,
            p,
            spec: integral_spec(p, theta1.terms(), theta2.terms()),
            base: Base::Ring {
                integral,
                mod_p: Some(build_ring(RingKind::BS1, p, Coefficients::ModP)),
            },
            fiber: k_table(Space::K, p, Coefficients::Integral)?,
        })
    }

    /// Mod-p sequence of K →×p→ K → K_p, with transgressions commuting with β and P¹.
    pub fn times_p(p: u32) -> Result<Self, SpectralError> {
        Self::times_p_with_fiber(p, k_table(Space::K, p, Coefficients::ModP)?)
    }

    /// Same sequence over an arbitrary (possibly truncated) fibre table.
    pub fn times_p_with_fiber(p: u32, fiber: EMTable) -> Result<Self, SpectralError> {
        let base = k_table(Space::Kp, p, Coefficients::ModP)?;
        let iota = Class::Iota;
        let zb = Class::ZBar;
        let mut entries = Vec::new();
        for j in 1..=2u8 {
            let em = |c: Class| vec![(1, BaseClass::Em(c), Class::Unit)];
            entries.push((
                zb(j),
                Transgression::At {
                    page: 2 * p,
                    image: em(Class::beta(iota(j))),
                },
            ));
            entries.push((
                Class::p1(zb(j)),
                Transgression::At {
                    page: 4 * p - 2,
                    image: em(Class::p1(Class::beta(iota(j)))),
                },
            ));
            entries.push((
                Class::beta(Class::p1(zb(j))),
                Transgression::At {
                    page: 4 * p - 1,
                    image: em(Class::beta(Class::p1(Class::beta(iota(j))))),
                },
            ));
        }
        Ok(Fibration {
            id: FibrationId::TimesP,
            p,
            base: Base::Em(base),
            fiber,
            spec: TransgressionSpec { entries },
        })
    }

    pub fn coefficients(&self) -> Coefficients {
        self.fiber.coeffs
    }

    /// E₂ generators at (n, m); `Ok(None)` when the tables do not determine the group.
    pub fn e2_generators(&self, n: u32, m: u32) -> Result<Option<Vec<E2Gen>>, SpectralError> {
        let Ok(entry) = self.fiber.entry(m) else {
            return Ok(None);
        };
        let mut gens = Vec::new();
        for (f, o) in entry.basis.iter().zip(entry.group.orders()) {
            let fo = num_traits::ToPrimitive::to_u64(o).unwrap_or(0);
            let twist = if fo == 0 { Twist::Free } else { Twist::ModP };
            let Some(basis) = self.base.basis(n, twist) else {
                return Ok(None);
            };
            for (b, bo) in basis {
                gens.push(E2Gen {
                    base: b,
                    fiber: f.clone(),
                    order: if fo == 0 { bo } else { u64::from(self.p) },
                    fiber_order: fo,
                });
            }
        }
        Ok(Some(gens))
    }

    /// d_r of one E₂ generator as a combination of E₂ generators at the target, or `None` if
    /// the rule for its fibre class is unknown on this page.
    pub fn differential_of(
        &self,
        r: u32,
        g: &E2Gen,
        target: &[E2Gen],
    ) -> Result<DiffValue, SpectralError> {
        match self.spec.rule(&g.fiber, self.p) {
            Transgression::At { page, .. } if page == u32::MAX || r < page => Ok(DiffValue::Zero),
            Transgression::At { page, image } if page == r => {
                let mut v = vec![0i64; target.len()];
                let sign = if g.base.degree(self.p) % 2 == 1 { -1 } else { 1 };
                let mut fibres: Vec<Class> = image.iter().map(|(_, _, f)| f.clone()).collect();
                fibres.dedup();
                for f in fibres {
                    let combo: Vec<(i64, BaseClass)> = image
                        .iter()
                        .filter(|(_, _, x)| *x == f)
                        .map(|(c, b, _)| (*c, b.clone()))
                        .collect();
                    let twist = match self.fiber_order(&f) {
                        Some(0) => Twist::Free,
                        _ => Twist::ModP,
                    };
                    for (d, prod) in self.base.multiply_combination(&g.base, &combo, twist)? {
                        let idx = target
                            .iter()
                            .position(|t| t.base == prod && t.fiber == f)
                            .ok_or_else(|| SpectralError::MissingTable {
                                what: format!("E2 generator {}·{}", f.pretty(), prod.label()),
                            })?;
                        v[idx] += sign * d;
                    }
                }
                Ok(DiffValue::Known(v))
            }
            // after its transgression page, or unknown: only forced vanishing is usable
            _ => Ok(DiffValue::Unknown),
        }
    }

    fn fiber_order(&self, f: &Class) -> Option<u64> {
        let e = self.fiber.entry(f.degree(self.p)).ok()?;
        let i = e.basis.iter().position(|c| c == f)?;
        num_traits::ToPrimitive::to_u64(&e.group.orders()[i])
    }

    /// Normal form helper used by reports: a fibre class as a combination of table classes.
    pub fn fiber_normal_form(&self, c: &Class) -> Vec<(u32, Class)> {
        normalize(c, self.p)
    }

    pub fn base_ring(&self) -> Option<&TruncatedRing> {
        match &self.base {
            Base::Ring { integral, .. } => Some(integral),
            Base::Em(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DiffValue {
    Zero,
    Known(Vec<i64>),
    Unknown,
}
