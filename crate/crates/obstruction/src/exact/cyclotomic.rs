//! Exact arithmetic in the cyclotomic fields Q(ζ₃) ⊂ Q(ζ₉).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("conductor {0} is not supported (only 3 and 9)")]
    UnsupportedConductor(u32),
}

/// Element of Q(ζₙ), n ∈ {3, 9}, in the power basis 1, ζ, …, ζ^{φ(n)-1}.
///
/// Values are kept at the smallest conductor that contains them, so structural
/// equality is field equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    n: u32,
    c: Vec<BigRational>,
}

fn degree(n: u32) -> usize {
    if n == 3 {
        2
    } else {
        6
    }
}

fn check(n: u32) -> Result<(), CyclotomicError> {
    if n == 3 || n == 9 {
        Ok(())
    } else {
        Err(CyclotomicError::UnsupportedConductor(n))
    }
}

/// Reduces a coefficient list of any length modulo the n-th cyclotomic polynomial.
fn reduce_poly(n: u32, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let d = degree(n);
    // Φ₃ = x² + x + 1, Φ₉ = x⁶ + x³ + 1: x^d = -x^{d/2} - 1
    let half = d / 2;
    for k in (d..v.len()).rev() {
        let a = std::mem::replace(&mut v[k], BigRational::zero());
        if a.is_zero() {
            continue;
        }
        v[k - half] -= &a;
        v[k - d] -= &a;
    }
    v.resize(d, BigRational::zero());
    v
}

impl CycScalar {
    pub fn zero_in(n: u32) -> Result<Self, CyclotomicError> {
        check(n)?;
        Ok(CycScalar {
            n,
            c: vec![BigRational::zero(); degree(n)],
        }
        .canonical())
    }

    pub fn from_rational(r: BigRational) -> Self {
        let mut c = vec![BigRational::zero(); 2];
        c[0] = r;
        CycScalar { n: 3, c }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// ζₙ^k.
    pub fn zeta(n: u32, k: i64) -> Result<Self, CyclotomicError> {
        check(n)?;
        let k = k.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); n as usize];
        v[k] = BigRational::one();
        Ok(CycScalar {
            n,
            c: reduce_poly(n, v),
        }
        .canonical())
    }

    /// The primitive cube root of unity ξ = ζ₃.
    pub fn xi() -> Self {
        Self::zeta(3, 1).expect("conductor 3")
    }

    /// ξ^k.
    pub fn xi_pow(k: i64) -> Self {
        Self::zeta(3, k).expect("conductor 3")
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.c
    }

    fn lifted(&self, n: u32) -> Vec<BigRational> {
        if self.n == n {
            return self.c.clone();
        }
        // only 3 -> 9: ζ₃ = ζ₉³
        let mut v = vec![BigRational::zero(); 6];
        v[0] = self.c[0].clone();
        v[3] = self.c[1].clone();
        v
    }

    fn canonical(mut self) -> Self {
        if self.n == 9 && [1, 2, 4, 5].iter().all(|&i| self.c[i].is_zero()) {
            self.c = vec![self.c[0].clone(), self.c[3].clone()];
            self.n = 3;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1..].iter().all(Zero::is_zero)
    }

    pub fn conj(&self) -> Self {
        let n = self.n;
        let mut v = vec![BigRational::zero(); n as usize];
        for (k, a) in self.c.iter().enumerate() {
            let j = (n as usize - k) % n as usize;
            v[j] += a;
        }
        CycScalar {
            n,
            c: reduce_poly(n, v),
        }
        .canonical()
    }

    /// Multiplicative inverse, solving the linear system of multiplication by `self`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.n;
        let d = degree(n);
        // column k = self * ζ^k
        let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for k in 0..d {
            let mut v = vec![BigRational::zero(); d + k];
            for (i, x) in self.c.iter().enumerate() {
                v[i + k] += x;
            }
            let col = reduce_poly(n, v);
            for r in 0..d {
                a[r][k] = col[r].clone();
            }
        }
        a[0][d] = BigRational::one();
        // Gauss-Jordan over Q
        for col in 0..d {
            let piv = (col..d).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, piv);
            let inv = a[col][col].recip();
            for x in a[col].iter_mut() {
                *x *= &inv;
            }
            let prow = a[col].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == col || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        Some(
            CycScalar {
                n,
                c: a.into_iter().map(|r| r[d].clone()).collect(),
            }
            .canonical(),
        )
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = CycScalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Some(acc)
    }

    fn binary(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let n = self.n.max(other.n);
        let a = self.lifted(n);
        let b = other.lifted(n);
        CycScalar {
            n,
            c: a.iter().zip(&b).map(|(x, y)| f(x, y)).collect(),
        }
        .canonical()
    }
}

/// Reduces `Σ coef · ζₙ^exp` to normal form.
pub fn cyclotomic_eval(
    n: u32,
    terms: &[(BigRational, i64)],
) -> Result<CycScalar, CyclotomicError> {
    let mut acc = CycScalar::zero_in(n)?;
    for (coef, e) in terms {
        let t = &CycScalar::zeta(n, *e)? * &CycScalar::from_rational(coef.clone());
        acc = &acc + &t;
    }
    Ok(acc)
}

impl Add for &CycScalar {
    type Output = CycScalar;
    fn add(self, o: &CycScalar) -> CycScalar {
        self.binary(o, |x, y| x + y)
    }
}
impl Sub for &CycScalar {
    type Output = CycScalar;
    fn sub(self, o: &CycScalar) -> CycScalar {
        self.binary(o, |x, y| x - y)
    }
}
impl Mul for &CycScalar {
    type Output = CycScalar;
    fn mul(self, o: &CycScalar) -> CycScalar {
        let n = self.n.max(o.n);
        let a = self.lifted(n);
        let b = o.lifted(n);
        let mut v = vec![BigRational::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    v[i + j] += x * y;
                }
            }
        }
        CycScalar {
            n,
            c: reduce_poly(n, v),
        }
        .canonical()
    }
}
impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            n: self.n,
            c: self.c.iter().map(|x| -x).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycScalar {
            type Output = CycScalar;
            fn $m(self, o: CycScalar) -> CycScalar {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Zero for CycScalar {
    fn zero() -> Self {
        CycScalar::from_int(0)
    }
    fn is_zero(&self) -> bool {
        CycScalar::is_zero(self)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        CycScalar::from_int(1)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = if self.n == 3 { "ξ" } else { "ζ₉" };
        let mut parts = Vec::new();
        for (k, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => sym.to_string(),
                _ => format!("{sym}^{k}"),
            };
            let s = if mono.is_empty() {
                a.to_string()
            } else if a.is_one() {
                mono
            } else if (-a).is_one() {
                format!("-{mono}")
            } else {
                format!("{a}{mono}")
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let mut out = parts[0].clone();
        for p in &parts[1..] {
            if let Some(rest) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        write!(f, "{out}")
    }
}

impl CycScalar {
    /// Whether the rational part is negative and the rest vanish (used by displays).
    pub fn is_negative_rational(&self) -> bool {
        self.is_rational() && self.c[0].is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }

    #[test]
    fn cyclotomic_relation() {
        let x = cyclotomic_eval(3, &[(q(1), 2), (q(1), 1), (q(1), 0)]).unwrap();
        assert!(x.is_zero());
    }

    #[test]
    fn embedding_of_cube_root() {
        let z9 = CycScalar::zeta(9, 1).unwrap();
        let cube = &(&z9 * &z9) * &z9;
        assert_eq!(cube, CycScalar::xi());
        assert_eq!(cube.conductor(), 3);
    }

    #[test]
    fn norm_of_one_plus_xi() {
        let a = &CycScalar::one() + &CycScalar::xi();
        assert_eq!(&a * &a.conj(), CycScalar::one());
    }

    #[test]
    fn inverse_and_conjugation() {
        let z = CycScalar::zeta(9, 2).unwrap();
        let a = &(&z + &CycScalar::from_int(3)) - &CycScalar::zeta(9, 5).unwrap();
        assert_eq!(&a * &a.inv().unwrap(), CycScalar::one());
        assert_eq!(a.conj().conj(), a);
        assert_eq!(z.conj(), CycScalar::zeta(9, 7).unwrap());
    }

    #[test]
    fn bad_conductor() {
        assert_eq!(
            CycScalar::zeta(5, 1),
            Err(CyclotomicError::UnsupportedConductor(5))
        );
    }
}
