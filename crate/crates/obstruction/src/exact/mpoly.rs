//! Sparse multivariate polynomials over any commutative coefficient ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Coefficient ring requirements.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Add<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + Add<Output = T>
        + Mul<Output = T>
{
}

/// Exponent vector with trailing zeros trimmed.
pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn add_exps(a: &[u32], b: &[u32]) -> Exponents {
    let n = a.len().max(b.len());
    let v = (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MPoly<C> {
    terms: BTreeMap<Exponents, C>,
}

impl<C: Coeff> MPoly<C> {
    pub fn constant(c: C) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Self::monomial(e, C::one())
    }

    pub fn monomial(exps: Exponents, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(exps), c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> C {
        self.terms
            .get(&trim(exps.to_vec()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Exponents, c: C) {
        if c.is_zero() {
            return;
        }
        let e = trim(exps);
        let new = match self.terms.remove(&e) {
            Some(old) => old + c,
            None => c,
        };
        if !new.is_zero() {
            self.terms.insert(e, new);
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = MPoly::zero();
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Terms whose weighted degree equals `d`.
    pub fn homogeneous_part(&self, weights: &[u32], d: u32) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if weighted(e, weights) == d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    /// Drops every term of weighted degree above `d`.
    pub fn truncate(&self, weights: &[u32], d: u32) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            if weighted(e, weights) <= d {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MPoly<D> {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Substitutes a polynomial for every variable.
    pub fn substitute(&self, images: &[MPoly<C>]) -> Self {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = &t * &images[i].pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    pub fn display_with(&self, names: &[&str]) -> String
    where
        C: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let n = names.get(i).copied().unwrap_or("?");
                    if k == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{k}")
                    }
                })
                .collect();
            let cs = c.to_string();
            let s = if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono.join("*")
            } else if cs.contains(' ') {
                format!("({cs})*{}", mono.join("*"))
            } else {
                format!("{cs}*{}", mono.join("*"))
            };
            parts.push(s);
        }
        parts.join(" + ")
    }
}

fn weighted(e: &[u32], w: &[u32]) -> u32 {
    e.iter()
        .enumerate()
        .map(|(i, k)| k * w.get(i).copied().unwrap_or(1))
        .sum()
}

impl<C: Coeff> Zero for MPoly<C> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<C: Coeff> One for MPoly<C> {
    fn one() -> Self {
        MPoly::constant(C::one())
    }
}

impl<C: Coeff> Add for &MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, o: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Coeff> Sub for &MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, o: &MPoly<C>) -> MPoly<C> {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl<C: Coeff> Mul for &MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, o: &MPoly<C>) -> MPoly<C> {
        let mut out = MPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(add_exps(e1, e2), c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coeff> Neg for &MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> MPoly<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coeff> Add for MPoly<C> {
    type Output = MPoly<C>;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}
impl<C: Coeff> Sub for MPoly<C> {
    type Output = MPoly<C>;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}
impl<C: Coeff> Mul for MPoly<C> {
    type Output = MPoly<C>;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}
impl<C: Coeff> Neg for MPoly<C> {
    type Output = MPoly<C>;
    fn neg(self) -> Self {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    type P = MPoly<BigRational>;

    #[test]
    fn binomial_square() {
        let x = P::var(0);
        let y = P::var(1);
        let s = (&x + &y).pow(2);
        let two = BigRational::from_integer(BigInt::from(2));
        assert_eq!(s.coeff(&[1, 1]), two);
        assert_eq!(s.num_terms(), 3);
        assert_eq!(s.total_degree(), Some(2));
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = P::var(2);
        assert!((&x - &x).is_zero());
    }

    #[test]
    fn substitution() {
        let x = P::var(0);
        let y = P::var(1);
        let f = &x * &y;
        let g = f.substitute(&[&y + &P::one(), y.clone()]);
        assert_eq!(g, &y.pow(2) + &y);
    }
}
