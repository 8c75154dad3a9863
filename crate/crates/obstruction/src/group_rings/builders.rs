//! Curated ring models. Each builder lists a monomial basis per degree and a normal-form
//! map on formal monomials; the product table is generated from those and nothing else.

use std::collections::BTreeMap;

use super::monomial::{Gen, Monomial};
use super::ring::{Coefficients, RingId, RingKind, Terms, TruncatedRing};

type Basis = BTreeMap<u32, Vec<(Monomial, u64)>>;

/// Default degree cap, one above the largest degree any computation touches.
pub fn default_cap(p: u32) -> u32 {
    4 * p
}

pub fn build_ring(kind: RingKind, p: u32, coeffs: Coefficients) -> TruncatedRing {
    let id = RingId::new(kind, p, coeffs);
    match (kind, coeffs) {
        (RingKind::BGt, Coefficients::Integral) => bgt_integral(id),
        (RingKind::BGt, Coefficients::ModP) => bgt_mod_p(id),
        (RingKind::BHt, Coefficients::Integral) => polynomial(id, &[Gen::TauPrime], &[Gen::VPrime], None),
        (RingKind::BHt, Coefficients::ModP) => {
            polynomial(id, &[Gen::TauBar], &[Gen::V], Some(Gen::U))
        }
        (RingKind::BS1, Coefficients::Integral) => polynomial(id, &[Gen::Tau], &[], None),
        (RingKind::BS1, Coefficients::ModP) => polynomial(id, &[Gen::TauBar], &[], None),
        (RingKind::BDt, Coefficients::Integral) => polynomial(id, &[], &[Gen::VPrime], None),
        (RingKind::BDt, Coefficients::ModP) => polynomial(id, &[], &[Gen::V], Some(Gen::U)),
    }
}

/// Tabulates every basis pair whose normal form is known and lands in the basis.
fn assemble(
    id: RingId,
    cap: u32,
    basis: Basis,
    normalize: impl Fn(&Monomial) -> Option<Terms>,
) -> TruncatedRing {
    let p = id.p;
    let all: Vec<&Monomial> = basis
        .values()
        .flatten()
        .map(|(m, _)| m)
        .filter(|m| !m.is_one())
        .collect();
    let in_basis = |m: &Monomial| {
        basis
            .get(&m.degree(p))
            .is_some_and(|v| v.iter().any(|(b, _)| b == m))
    };
    let mut products = BTreeMap::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i..] {
            let (a, b) = if a <= b { (*a, *b) } else { (*b, *a) };
            if a.degree(p) + b.degree(p) > cap {
                continue;
            }
            if let Some(t) = normalize(&a.concat(b)) {
                if t.keys().all(in_basis) {
                    products.insert((a.clone(), b.clone()), t);
                }
            }
        }
    }
    TruncatedRing {
        id,
        cap,
        basis,
        products,
        aliases: Vec::new(),
        alias_products: Vec::new(),
    }
    .canonicalize()
}

fn single(m: Monomial) -> Option<Terms> {
    Some(Terms::from([(m, 1)]))
}

/// Pure monomials in two degree-2 classes under the relation a·b^p = a^p·b.
fn pure_normal(mut a: u32, mut b: u32, p: u32) -> (u32, u32) {
    while a >= 1 && b >= p {
        a += p - 1;
        b -= p - 1;
    }
    (a, b)
}

fn pure_basis(k: u32, p: u32, g1: Gen, g2: Gen) -> Vec<Monomial> {
    (0..=k)
        .rev()
        .map(|a| (a, k - a))
        .filter(|&(a, b)| b < p || a == 0)
        .map(|(a, b)| Monomial::from_factors([(g1, a), (g2, b)]))
        .collect()
}

fn bgt_integral(id: RingId) -> TruncatedRing {
    let p = id.p;
    let cap = default_cap(p);
    let mut basis = Basis::new();
    for k in 0..=cap / 2 {
        let mut v: Vec<(Monomial, u64)> = pure_basis(k, p, Gen::Alpha, Gen::Beta)
            .into_iter()
            .map(|m| {
                let o = if m.is_one() { 0 } else { p as u64 };
                (m, o)
            })
            .collect();
        if (1..p).contains(&k) {
            v.push((Monomial::gen(Gen::Chi(k)), 0));
        }
        if k >= p {
            let lower = basis.get(&(2 * (k - p))).cloned().unwrap_or_default();
            for (m, o) in lower {
                v.push((m.concat(&Monomial::gen(Gen::Zeta)), o));
            }
        }
        basis.insert(2 * k, v);
    }
    let normalize = move |m: &Monomial| -> Option<Terms> {
        let e = m.exponent(Gen::Zeta);
        let rest = m.with_exponent(Gen::Zeta, 0);
        let chis: Vec<_> = rest
            .factors()
            .iter()
            .filter(|(g, _)| matches!(g, Gen::Chi(_)))
            .collect();
        if !chis.is_empty() {
            // χ-classes multiply only with ζ-powers in the curated model
            return if rest.factors().len() == 1 && rest.factors()[0].1 == 1 {
                single(m.clone())
            } else {
                None
            };
        }
        let (a, b) = pure_normal(rest.exponent(Gen::Alpha), rest.exponent(Gen::Beta), p);
        single(Monomial::from_factors([
            (Gen::Alpha, a),
            (Gen::Beta, b),
            (Gen::Zeta, e),
        ]))
    };
    let mut ring = assemble(id, cap, basis, normalize);
    let alpha = |k| Monomial::from_factors([(Gen::Alpha, k)]);
    let ab = |a, b| Monomial::from_factors([(Gen::Alpha, a), (Gen::Beta, b)]);
    let beta = |k| Monomial::from_factors([(Gen::Beta, k)]);
    // the degree-2p part of the k-invariant
    let k2: Terms = [(alpha(p), 1), (ab(p - 1, 1), -1), (beta(p), 1)].into();
    let k2_chi: Terms = [(alpha(2 * p - 1), 1), (ab(2 * p - 2, 1), 1), (beta(2 * p - 1), 1)].into();
    ring.aliases.push(("k2".into(), k2));
    ring.alias_products
        .push(("k2".into(), Monomial::gen(Gen::Chi(p - 1)), k2_chi));
    ring.canonicalize()
}

/// Mod-p model, curated through degree 2p; beyond that the two rewriting rules interact.
fn bgt_mod_p(id: RingId) -> TruncatedRing {
    let p = id.p;
    let cap = 2 * p;
    let pp = p as u64;
    let mut basis = Basis::new();
    for n in 0..=cap {
        let k = n / 2;
        let mut v: Vec<(Monomial, u64)> = Vec::new();
        if n % 2 == 0 {
            v.extend(pure_basis(k, p, Gen::X, Gen::XPrime).into_iter().map(|m| (m, pp)));
            if (1..p).contains(&k) {
                v.push((Monomial::gen(Gen::C(k)), pp));
            }
        } else {
            v.extend(
                pure_basis(k, p, Gen::X, Gen::XPrime)
                    .into_iter()
                    .map(|m| (m.concat(&Monomial::gen(Gen::Y)), pp)),
            );
            v.push((
                Monomial::from_factors([(Gen::XPrime, k), (Gen::YPrime, 1)]),
                pp,
            ));
        }
        if n >= 2 * p {
            let lower = basis.get(&(n - 2 * p)).cloned().unwrap_or_default();
            for (m, o) in lower {
                v.push((m.concat(&Monomial::gen(Gen::Z)), o));
            }
        }
        basis.insert(n, v);
    }
    let normalize = move |m: &Monomial| -> Option<Terms> {
        let e = m.exponent(Gen::Z);
        let rest = m.with_exponent(Gen::Z, 0);
        let zeta = Monomial::from_factors([(Gen::Z, e)]);
        let (ey, eyp) = (rest.exponent(Gen::Y), rest.exponent(Gen::YPrime));
        if ey >= 2 || eyp >= 2 {
            return Some(Terms::new());
        }
        if ey == 1 && eyp == 1 {
            return None;
        }
        let cs: Vec<(Gen, u32)> = rest
            .factors()
            .iter()
            .copied()
            .filter(|(g, _)| matches!(g, Gen::C(_)))
            .collect();
        if !cs.is_empty() {
            let c_top = Monomial::gen(Gen::C(p - 1));
            if rest.factors().len() == 1 && rest.factors()[0].1 == 1 {
                return single(m.clone());
            }
            if rest == c_top.concat(&Monomial::gen(Gen::YPrime)) {
                let t = Monomial::from_factors([(Gen::XPrime, p - 1), (Gen::YPrime, 1)]);
                return Some(Terms::from([(t.concat(&zeta), -1)]));
            }
            return None;
        }
        let (mut a, mut b) = (rest.exponent(Gen::X), rest.exponent(Gen::XPrime));
        let (mut y, mut yp) = (ey, eyp);
        if yp == 1 && a >= 1 {
            // x·y' = x'·y
            a -= 1;
            b += 1;
            yp = 0;
            y = 1;
        }
        let (a, b) = pure_normal(a, b, p);
        single(
            Monomial::from_factors([
                (Gen::X, a),
                (Gen::XPrime, b),
                (Gen::Y, y),
                (Gen::YPrime, yp),
            ])
            .concat(&zeta),
        )
    };
    assemble(id, cap, basis, normalize)
}

/// Polynomial rings on degree-2 classes `free` (infinite order) and `torsion` (order p),
/// optionally tensored with an exterior class `odd` of degree 1.
fn polynomial(id: RingId, free: &[Gen], torsion: &[Gen], odd: Option<Gen>) -> TruncatedRing {
    let p = id.p;
    let cap = default_cap(p);
    let gens: Vec<Gen> = free.iter().chain(torsion).copied().collect();
    let modp = id.coeffs == Coefficients::ModP;
    let mut basis = Basis::new();
    for n in 0..=cap {
        let mut v = Vec::new();
        for e in 0..=u32::from(odd.is_some()) {
            if n < e || (n - e) % 2 == 1 {
                continue;
            }
            for exps in compositions((n - e) / 2, gens.len()) {
                let mut m = Monomial::from_factors(gens.iter().copied().zip(exps.iter().copied()));
                if let (Some(u), 1) = (odd, e) {
                    m = m.concat(&Monomial::gen(u));
                }
                let tors = torsion.iter().any(|g| m.exponent(*g) > 0);
                let o = if modp || tors { p as u64 } else { 0 };
                v.push((m, o));
            }
        }
        basis.insert(n, v);
    }
    let normalize = move |m: &Monomial| -> Option<Terms> {
        if odd.is_some_and(|u| m.exponent(u) >= 2) {
            return Some(Terms::new());
        }
        single(m.clone())
    };
    assemble(id, cap, basis, normalize)
}

/// All exponent vectors of length `parts` summing to `total`, first coordinate descending.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
