//! Multiplicative sequences via symmetric reduction to elementary symmetric functions.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::mpoly::Exponents;
use crate::{RatPoly, Rational};

fn rat(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

/// Elementary symmetric polynomial e_k in `n` variables.
pub fn elementary(k: usize, n: usize) -> RatPoly {
    let mut out = RatPoly::zero();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let e: Exponents = (0..n).map(|i| (mask >> i) & 1).collect();
        out.add_term(e, Rational::one());
    }
    out
}

/// Rewrites a symmetric polynomial in x_1..x_n as a polynomial in e_1..e_n
/// (variable i of the result is e_{i+1}). Returns `None` if the input is not symmetric.
pub fn to_elementary(f: &RatPoly, n: usize) -> Option<RatPoly> {
    let es: Vec<RatPoly> = (1..=n).map(|k| elementary(k, n)).collect();
    let mut rest = f.clone();
    let mut out = RatPoly::zero();
    while let Some((lead, c)) = rest.terms().last().map(|(e, c)| (e.clone(), c.clone())) {
        let mut a = lead.clone();
        a.resize(n, 0);
        if a.windows(2).any(|w| w[0] < w[1]) {
            return None;
        }
        // e_1^{a1-a2} e_2^{a2-a3} ... e_n^{an}
        let powers: Vec<u32> = (0..n)
            .map(|i| a[i] - a.get(i + 1).copied().unwrap_or(0))
            .collect();
        let mut prod = RatPoly::constant(c.clone());
        for (i, &k) in powers.iter().enumerate() {
            prod = &prod * &es[i].pow(k);
        }
        rest = &rest - &prod;
        out.add_term(powers, c);
    }
    Some(out)
}

/// The degree-`n` polynomial K_n of the multiplicative sequence of the power series with
/// coefficients `f` (f[0] = 1), as a polynomial in the elementary classes p_1..p_n.
pub fn multiplicative_sequence(f: &[i64], n: usize) -> RatPoly {
    let series = |x: usize| -> RatPoly {
        let mut s = RatPoly::zero();
        for (k, &c) in f.iter().enumerate().take(n + 1) {
            let mut e = vec![0u32; x + 1];
            e[x] = k as u32;
            s.add_term(e, rat(c));
        }
        s
    };
    let weights = vec![1u32; n];
    let mut prod = RatPoly::one();
    for i in 0..n {
        prod = (&prod * &series(i)).truncate(&weights, n as u32);
    }
    let top = prod.homogeneous_part(&weights, n as u32);
    to_elementary(&top, n).expect("products of a series in each variable are symmetric")
}

/// Coefficient of the monomial p_n alone in K_n.
pub fn top_coefficient(k: &RatPoly, n: usize) -> Rational {
    let mut e = vec![0u32; n];
    e[n - 1] = 1;
    k.coeff(&e)
}

/// Weighted degree helper: the polynomial in p_1..p_n must be homogeneous of weight n.
pub fn is_weight_homogeneous(k: &RatPoly, n: usize) -> bool {
    let w: Vec<u32> = (1..=n as u32).collect();
    k.homogeneous_part(&w, n as u32) == *k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_two_in_elementary() {
        // x1^2 + x2^2 = e1^2 - 2 e2
        let x1 = RatPoly::var(0);
        let x2 = RatPoly::var(1);
        let f = &x1.pow(2) + &x2.pow(2);
        let g = to_elementary(&f, 2).unwrap();
        assert_eq!(g.coeff(&[2]), rat(1));
        assert_eq!(g.coeff(&[0, 1]), rat(-2));
    }

    #[test]
    fn non_symmetric_rejected() {
        assert!(to_elementary(&RatPoly::var(1), 2).is_none());
    }

    #[test]
    fn first_term_is_linear_coefficient() {
        let k = multiplicative_sequence(&[1, 3], 1);
        assert_eq!(k.coeff(&[1]), rat(3));
    }
}
