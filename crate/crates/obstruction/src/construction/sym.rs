//! Polynomials over Q(ζ₉) in the boundary coordinates, kept in normal form under
//! z·z̄ → 1, z₁·z̄₁ → 1−ε, z₃·z̄₃ → ε − z₂·z̄₂.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::CycScalar;
use crate::MPoly;

pub const Z1: usize = 0;
pub const Z1B: usize = 1;
pub const Z2: usize = 2;
pub const Z2B: usize = 3;
pub const Z3: usize = 4;
pub const Z3B: usize = 5;
pub const ZC: usize = 6;
pub const ZCB: usize = 7;
pub const EPS: usize = 8;
pub const NVARS: usize = 9;

pub const VAR_NAMES: [&str; NVARS] = ["z1", "z̄1", "z2", "z̄2", "z3", "z̄3", "z", "z̄", "ε"];

/// Complex conjugation on values and on the variables.
pub trait Conjugate {
    fn conj(&self) -> Self;
}

impl Conjugate for CycScalar {
    fn conj(&self) -> Self {
        CycScalar::conj(self)
    }
}

impl Conjugate for Complex64 {
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
}

/// The three rewrite rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    /// z·z̄ → 1
    Circle,
    /// z₁·z̄₁ → 1−ε
    First,
    /// z₃·z̄₃ → ε − z₂·z̄₂
    Third,
}

impl Rule {
    pub const ALL: [Rule; 3] = [Rule::Circle, Rule::First, Rule::Third];

    fn pair(self) -> (usize, usize) {
        match self {
            Rule::Circle => (ZC, ZCB),
            Rule::First => (Z1, Z1B),
            Rule::Third => (Z3, Z3B),
        }
    }

    fn replacement(self) -> MPoly<CycScalar> {
        let one = MPoly::one();
        let eps = MPoly::var(EPS);
        match self {
            Rule::Circle => one,
            Rule::First => &one - &eps,
            Rule::Third => &eps - &(&MPoly::var(Z2) * &MPoly::var(Z2B)),
        }
    }
}

fn exp(e: &[u32], i: usize) -> u32 {
    e.get(i).copied().unwrap_or(0)
}

/// Applies `rule` once to the `which`-th (cyclically) monomial it matches; None when no
/// monomial matches.
pub fn apply_rule_once(p: &MPoly<CycScalar>, rule: Rule, which: usize) -> Option<MPoly<CycScalar>> {
    let (x, y) = rule.pair();
    let hits: Vec<&Vec<u32>> = p.terms().map(|(e, _)| e).filter(|e| exp(e, x) > 0 && exp(e, y) > 0).collect();
    if hits.is_empty() {
        return None;
    }
    let target = hits[which % hits.len()].clone();
    let mut out = MPoly::zero();
    for (e, c) in p.terms() {
        if *e == target {
            let mut f = e.clone();
            f.resize(NVARS, 0);
            f[x] -= 1;
            f[y] -= 1;
            out = &out + &(&MPoly::monomial(f, c.clone()) * &rule.replacement());
        } else {
            out.add_term(e.clone(), c.clone());
        }
    }
    Some(out)
}

/// Normal form: every rule applied exhaustively, in one pass per monomial since no
/// replacement creates a left-hand side.
pub fn normalize(p: &MPoly<CycScalar>) -> MPoly<CycScalar> {
    let mut out = MPoly::zero();
    for (e, c) in p.terms() {
        let mut f = e.clone();
        f.resize(NVARS, 0);
        let mut t = MPoly::one();
        for rule in Rule::ALL {
            let (x, y) = rule.pair();
            let m = f[x].min(f[y]);
            f[x] -= m;
            f[y] -= m;
            if m > 0 {
                t = &t * &rule.replacement().pow(m);
            }
        }
        out = &out + &(&MPoly::monomial(f, c.clone()) * &t);
    }
    out
}

/// A normal-form polynomial; structural equality is equality modulo the rules.
#[derive(Debug, Clone, PartialEq)]
pub struct SymScalar(MPoly<CycScalar>);

impl SymScalar {
    pub fn new(p: MPoly<CycScalar>) -> Self {
        SymScalar(normalize(&p))
    }

    pub fn var(i: usize) -> Self {
        SymScalar(MPoly::var(i))
    }

    pub fn constant(c: CycScalar) -> Self {
        SymScalar(MPoly::constant(c))
    }

    pub fn xi_pow(k: i64) -> Self {
        Self::constant(CycScalar::xi_pow(k))
    }

    pub fn int(k: i64) -> Self {
        Self::constant(CycScalar::from_int(k))
    }

    pub fn poly(&self) -> &MPoly<CycScalar> {
        &self.0
    }

    /// Substitutes zⱼ ↦ dⱼ·zⱼ (and z̄ⱼ ↦ d̄ⱼ·z̄ⱼ) for the three coordinates.
    pub fn scale_coordinates(&self, d: &[SymScalar; 3]) -> Self {
        let mut images: Vec<MPoly<CycScalar>> = (0..NVARS).map(MPoly::var).collect();
        for (j, v) in [Z1, Z2, Z3].into_iter().enumerate() {
            images[v] = &d[j].0 * &MPoly::var(v);
            images[v + 1] = &d[j].conj().0 * &MPoly::var(v + 1);
        }
        SymScalar::new(self.0.substitute(&images))
    }

    /// Value at a point given by the unbarred coordinates, z and ε.
    pub fn eval(&self, z1: Complex64, z2: Complex64, z3: Complex64, z: Complex64, eps: f64) -> Complex64 {
        let vals = [z1, z1.conj(), z2, z2.conj(), z3, z3.conj(), z, z.conj(), Complex64::new(eps, 0.0)];
        self.0
            .terms()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(cyc_to_complex(c), |acc, (i, &k)| acc * vals[i].powu(k))
            })
            .sum()
    }
}

pub fn cyc_to_complex(c: &CycScalar) -> Complex64 {
    let n = c.conductor() as f64;
    c.coefficients()
        .iter()
        .enumerate()
        .map(|(k, a)| Complex64::from_polar(a.to_f64().unwrap_or(f64::NAN), 2.0 * std::f64::consts::PI * k as f64 / n))
        .sum()
}

impl Conjugate for SymScalar {
    fn conj(&self) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in self.0.terms() {
            let mut f = e.clone();
            f.resize(NVARS, 0);
            for v in [Z1, Z2, Z3, ZC] {
                f.swap(v, v + 1);
            }
            out.add_term(f, c.conj());
        }
        // the rules are symmetric under the swap, so the result is already normal
        SymScalar(out)
    }
}

impl fmt::Display for SymScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.display_with(&VAR_NAMES))
    }
}

impl Add for SymScalar {
    type Output = SymScalar;
    fn add(self, o: SymScalar) -> SymScalar {
        SymScalar(&self.0 + &o.0)
    }
}

impl Sub for SymScalar {
    type Output = SymScalar;
    fn sub(self, o: SymScalar) -> SymScalar {
        SymScalar(&self.0 - &o.0)
    }
}

impl Mul for SymScalar {
    type Output = SymScalar;
    fn mul(self, o: SymScalar) -> SymScalar {
        SymScalar::new(&self.0 * &o.0)
    }
}

impl Neg for SymScalar {
    type Output = SymScalar;
    fn neg(self) -> SymScalar {
        SymScalar(-&self.0)
    }
}

impl Zero for SymScalar {
    fn zero() -> Self {
        SymScalar(MPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for SymScalar {
    fn one() -> Self {
        SymScalar(MPoly::one())
    }
}

/// Σ cₑ·sᵉ with s = (ε(1−ε))^{−1/2}, one coefficient per parity of e. Since s²·ε(1−ε) = 1
/// a lower exponent of the same parity is lifted by multiplying with powers of ε(1−ε).
#[derive(Debug, Clone)]
pub struct ScaledScalar {
    parts: [Option<(u32, SymScalar)>; 2],
}

fn q() -> SymScalar {
    let eps = SymScalar::var(EPS);
    eps.clone() * (SymScalar::one() - eps)
}

impl ScaledScalar {
    pub fn new(exponent: u32, c: SymScalar) -> Self {
        let mut parts = [None, None];
        if !c.is_zero() {
            parts[(exponent % 2) as usize] = Some((exponent, c));
        }
        ScaledScalar { parts }
    }

    pub fn plain(c: SymScalar) -> Self {
        Self::new(0, c)
    }

    /// (exponent, coefficient) pairs of the nonzero parts.
    pub fn parts(&self) -> impl Iterator<Item = &(u32, SymScalar)> {
        self.parts.iter().flatten()
    }

    fn add_part(&mut self, e: u32, c: SymScalar) {
        let slot = &mut self.parts[(e % 2) as usize];
        let merged = match slot.take() {
            None => (e, c),
            Some((f, d)) => {
                let top = e.max(f);
                let lift = |x: u32, v: SymScalar| v * q().pow_u((top - x) / 2);
                (top, lift(e, c) + lift(f, d))
            }
        };
        if !merged.1.is_zero() {
            *slot = Some(merged);
        }
    }

    pub fn eval(&self, z1: Complex64, z2: Complex64, z3: Complex64, z: Complex64, eps: f64) -> Complex64 {
        let s = 1.0 / (eps * (1.0 - eps)).sqrt();
        self.parts().map(|(e, c)| c.eval(z1, z2, z3, z, eps) * s.powi(*e as i32)).sum()
    }
}

/// Exact quotient by ε(1−ε), if it exists. Treats the polynomial as one in ε with
/// coefficients in the other variables and divides by ε, then synthetically by 1 − ε.
pub fn div_q(c: &SymScalar) -> Option<SymScalar> {
    use std::collections::BTreeMap;
    let mut by_eps: BTreeMap<u32, MPoly<CycScalar>> = BTreeMap::new();
    for (e, a) in c.0.terms() {
        let mut rest = e.clone();
        rest.resize(NVARS, 0);
        let k = std::mem::replace(&mut rest[EPS], 0);
        by_eps.entry(k).or_insert_with(MPoly::zero).add_term(rest, a.clone());
    }
    if by_eps.is_empty() {
        return Some(SymScalar::zero());
    }
    if by_eps.contains_key(&0) {
        return None;
    }
    let top = *by_eps.keys().next_back()? - 1;
    let coeff = |k: u32| by_eps.get(&(k + 1)).cloned().unwrap_or_else(MPoly::zero);
    let mut d: Vec<MPoly<CycScalar>> = Vec::new();
    for k in 0..top {
        let prev = d.last().cloned().unwrap_or_else(MPoly::zero);
        d.push(&coeff(k) + &prev);
    }
    let last = d.last().cloned().unwrap_or_else(MPoly::zero);
    if !(&coeff(top) + &last).is_zero() {
        return None;
    }
    let mut out = MPoly::zero();
    for (k, dk) in d.iter().enumerate() {
        let mut e = vec![0; NVARS];
        e[EPS] = k as u32;
        out = &out + &(dk * &MPoly::monomial(e, CycScalar::one()));
    }
    Some(SymScalar(out))
}

impl SymScalar {
    pub fn pow_u(&self, n: u32) -> SymScalar {
        (0..n).fold(SymScalar::one(), |acc, _| acc * self.clone())
    }
}

impl ScaledScalar {
    /// Same value with each exponent lowered as far as exact division by ε(1−ε) allows.
    pub fn simplified(&self) -> ScaledScalar {
        let mut out = ScaledScalar::zero();
        for (e, c) in self.parts() {
            let (mut e, mut c) = (*e, c.clone());
            while e >= 2 {
                match div_q(&c) {
                    Some(d) => {
                        e -= 2;
                        c = d;
                    }
                    None => break,
                }
            }
            out.parts[(e % 2) as usize] = Some((e, c));
        }
        out
    }
}

impl fmt::Display for ScaledScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .simplified()
            .parts()
            .map(|(e, c)| match e {
                0 => c.to_string(),
                1 if c.is_one() => "s".to_string(),
                1 => format!("s*({c})"),
                _ => format!("s^{e}*({c})"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl PartialEq for ScaledScalar {
    fn eq(&self, o: &Self) -> bool {
        (self.clone() - o.clone()).is_zero()
    }
}

impl Add for ScaledScalar {
    type Output = ScaledScalar;
    fn add(mut self, o: ScaledScalar) -> ScaledScalar {
        for (e, c) in o.parts.into_iter().flatten() {
            self.add_part(e, c);
        }
        self
    }
}

impl Neg for ScaledScalar {
    type Output = ScaledScalar;
    fn neg(self) -> ScaledScalar {
        ScaledScalar {
            parts: self.parts.map(|p| p.map(|(e, c)| (e, -c))),
        }
    }
}

impl Sub for ScaledScalar {
    type Output = ScaledScalar;
    fn sub(self, o: ScaledScalar) -> ScaledScalar {
        self + (-o)
    }
}

impl Mul for ScaledScalar {
    type Output = ScaledScalar;
    fn mul(self, o: ScaledScalar) -> ScaledScalar {
        let mut out = ScaledScalar::zero();
        for (e, c) in self.parts() {
            for (f, d) in o.parts() {
                out.add_part(e + f, c.clone() * d.clone());
            }
        }
        out
    }
}

impl Zero for ScaledScalar {
    fn zero() -> Self {
        ScaledScalar { parts: [None, None] }
    }
    fn is_zero(&self) -> bool {
        self.parts.iter().all(Option::is_none)
    }
}

impl One for ScaledScalar {
    fn one() -> Self {
        Self::plain(SymScalar::one())
    }
}

impl Conjugate for ScaledScalar {
    fn conj(&self) -> Self {
        ScaledScalar {
            parts: self.parts.clone().map(|p| p.map(|(e, c)| (e, c.conj()))),
        }
    }
}

impl From<SymScalar> for ScaledScalar {
    fn from(c: SymScalar) -> Self {
        Self::plain(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_reduce() {
        let v = |i| SymScalar::var(i);
        let n = v(Z2) * v(Z2B) + v(Z3) * v(Z3B);
        assert_eq!(n, v(EPS));
        assert_eq!(v(ZC) * v(ZCB), SymScalar::one());
        assert_eq!(v(Z1) * v(Z1B) + v(EPS), SymScalar::one());
    }

    #[test]
    fn scale_factor_squares_away() {
        let s = ScaledScalar::new(1, SymScalar::one());
        let s2q = s.clone() * s * ScaledScalar::plain(q());
        assert_eq!(s2q, ScaledScalar::one());
        // s and 1 have different parity and never cancel
        assert!(!(ScaledScalar::new(1, SymScalar::one()) - ScaledScalar::one()).is_zero());
    }
}
