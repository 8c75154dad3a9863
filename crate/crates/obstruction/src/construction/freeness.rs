//! Which group elements have fixed points where, decided with exact eigenvectors over Q(ζ₉).

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::mat3::Mat3;
use super::reps::{p_scaled, rep_matrix, GroupWord, Rep};
use super::sym::SymScalar;
use super::ConstructionError;
use crate::exact::CycScalar;
use crate::report::CheckRecord;
use crate::Rational;

fn constant(x: &SymScalar) -> CycScalar {
    x.poly().coeff(&[])
}

fn to_cyc(m: &Mat3<SymScalar>) -> Mat3<CycScalar> {
    m.map(constant)
}

/// Basis of the kernel of a 3×3 matrix over Q(ζ₉).
pub fn kernel(m: &Mat3<CycScalar>) -> Vec<[CycScalar; 3]> {
    let mut a = m.e.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..3 {
        let Some(p) = (row..3).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inv().expect("nonzero pivot");
        for x in a[row].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..3 {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..3 {
                    a[r][c] = &a[r][c] - &(&f * &a[row][c]);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..3)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v: [CycScalar; 3] = std::array::from_fn(|_| CycScalar::zero());
            v[free] = CycScalar::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -&a[r][free];
            }
            v
        })
        .collect()
}

/// Squared moduli of the coordinates, normalized to sum 1; None if not rational.
pub fn squared_moduli(v: &[CycScalar; 3]) -> Option<[Rational; 3]> {
    let sq: Vec<Rational> = v
        .iter()
        .map(|x| {
            let n = x * &x.conj();
            n.is_rational().then(|| n.coefficients()[0].clone())
        })
        .collect::<Option<_>>()?;
    let total: Rational = sq.iter().cloned().sum();
    Some(std::array::from_fn(|i| &sq[i] / &total))
}

/// Whether some pair of coordinates carries squared mass at most (or, `strict`, below) ε.
pub fn in_tube(moduli: &[Rational; 3], eps: &Rational, strict: bool) -> bool {
    [(0, 1), (1, 2), (0, 2)].iter().any(|&(i, j)| {
        let s = &moduli[i] + &moduli[j];
        if strict {
            &s < eps
        } else {
            &s <= eps
        }
    })
}

/// One fixed line of φ(aⁱbʲ)·z, for the circle value z = λ̄.
#[derive(Debug, Clone, Serialize)]
pub struct FixedLine {
    pub circle_value: String,
    pub vector: [String; 3],
    pub moduli: [String; 3],
    pub in_first: bool,
    pub in_first_interior: bool,
    pub in_second: bool,
    pub in_second_interior: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WordFreeness {
    pub i: u32,
    pub j: u32,
    /// ψ₀, ψ₁, ψ₂ of aⁱbʲ have eigenvalue 1.
    pub psi_has_unit: [bool; 3],
    pub lines: Vec<FixedLine>,
    pub free_on_middle: bool,
    pub free_on_first: bool,
    pub free_on_second: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreenessReport {
    pub eps: String,
    pub words: Vec<WordFreeness>,
    /// Word classes (i, j) that have fixed points in the product with ψ₀, by piece.
    pub first_set: Vec<(u32, u32)>,
    pub second_set: Vec<(u32, u32)>,
    pub checks: Vec<CheckRecord>,
}

fn has_unit(m: &Mat3<SymScalar>) -> bool {
    (0..3).any(|i| m.e[i][i] == SymScalar::one())
}

fn word_name(i: u32, j: u32) -> String {
    let part = |g: &str, e: u32| match e {
        0 => String::new(),
        1 => g.to_string(),
        _ => format!("{g}^{e}"),
    };
    let s = format!("{}{}", part("a", i), part("b", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

pub fn analyse_word(i: u32, j: u32, eps: &Rational) -> Result<WordFreeness, ConstructionError> {
    let w = GroupWord::ab(i, j);
    let phi = to_cyc(&rep_matrix(Rep::Phi, &w));
    let psi_has_unit = [Rep::Psi0, Rep::Psi1, Rep::Psi2].map(|r| has_unit(&rep_matrix(r, &w)));
    let p_adj = to_cyc(&p_scaled().adjoint());
    let mut lines = Vec::new();
    if (i, j) != (0, 0) {
        for t in 0..9 {
            let lambda = CycScalar::zeta(9, t).expect("conductor 9");
            let shifted = Mat3::from_fn(|r, c| {
                if r == c {
                    &phi.e[r][c] - &lambda
                } else {
                    phi.e[r][c].clone()
                }
            });
            for v in kernel(&shifted) {
                let m1 = squared_moduli(&v).ok_or(ConstructionError::IrrationalModulus)?;
                let pv: [CycScalar; 3] = std::array::from_fn(|r| {
                    (0..3).fold(CycScalar::zero(), |acc, c| &acc + &(&p_adj.e[r][c] * &v[c]))
                });
                let m2 = squared_moduli(&pv).ok_or(ConstructionError::IrrationalModulus)?;
                lines.push(FixedLine {
                    circle_value: lambda.conj().to_string(),
                    vector: v.clone().map(|x| x.to_string()),
                    moduli: m1.clone().map(|x| x.to_string()),
                    in_first: in_tube(&m1, eps, false),
                    in_first_interior: in_tube(&m1, eps, true),
                    in_second: in_tube(&m2, eps, false),
                    in_second_interior: in_tube(&m2, eps, true),
                });
            }
        }
    }
    let free_on_middle =
        !psi_has_unit[0] || lines.iter().all(|l| l.in_first_interior || l.in_second_interior);
    let free_on_first = !psi_has_unit[1] || lines.iter().all(|l| !l.in_first);
    let free_on_second = !psi_has_unit[2] || lines.iter().all(|l| !l.in_second);
    Ok(WordFreeness {
        i,
        j,
        psi_has_unit,
        lines,
        free_on_middle,
        free_on_first,
        free_on_second,
    })
}

fn set_name(s: &[(u32, u32)]) -> String {
    let names: Vec<String> = s.iter().map(|&(i, j)| format!("{}z", word_name(i, j))).collect();
    format!("{{{}}}", names.join(", "))
}

pub fn verify_freeness(eps: &Rational) -> Result<FreenessReport, ConstructionError> {
    let mut words = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            words.push(analyse_word(i, j, eps)?);
        }
    }
    let collect = |first: bool| -> Vec<(u32, u32)> {
        words
            .iter()
            .filter(|w| {
                w.psi_has_unit[0]
                    && w.lines.iter().any(|l| if first { l.in_first_interior } else { l.in_second_interior })
            })
            .map(|w| (w.i, w.j))
            .collect()
    };
    let first_set = collect(true);
    let second_set = collect(false);
    let anchor = "freeness of the three pieces";
    let mut checks = Vec::new();

    // every word with a fixed point on the product with ψ₀ is accounted for by the two sets
    let exceptional: BTreeSet<(u32, u32)> = words
        .iter()
        .filter(|w| w.psi_has_unit[0] && !w.lines.is_empty())
        .map(|w| (w.i, w.j))
        .collect();
    let covered: BTreeSet<(u32, u32)> = first_set.iter().chain(&second_set).copied().collect();
    let stray: Vec<String> = exceptional.difference(&covered).map(|&(i, j)| word_name(i, j)).collect();
    checks.push(CheckRecord::new(
        "non-free words lie in the two exceptional sets",
        anchor,
        "all covered",
        if stray.is_empty() { "all covered" } else { "stray words" },
        stray,
    ));
    checks.push(CheckRecord::compare("first exceptional set", anchor, "{bz, b^2z}", set_name(&first_set)));
    let printed_second = "{a^2bz, a^2b^2z}";
    if set_name(&second_set) == printed_second {
        checks.push(CheckRecord::compare("second exceptional set", anchor, printed_second, set_name(&second_set)));
    } else {
        checks.push(CheckRecord::discrepancy(
            "second exceptional set",
            anchor,
            printed_second,
            set_name(&second_set),
            vec!["a^2b^2 acts through ψ0 without eigenvalue 1, while ab^2 has one".into()],
        ));
    }
    for (piece, pick) in [("middle", 0usize), ("first", 1), ("second", 2)] {
        let bad: Vec<String> = words
            .iter()
            .filter(|w| ![w.free_on_middle, w.free_on_first, w.free_on_second][pick])
            .map(|w| word_name(w.i, w.j))
            .collect();
        checks.push(CheckRecord::new(
            format!("free on the {piece} piece"),
            anchor,
            "free",
            if bad.is_empty() { "free" } else { "fixed points" },
            bad,
        ));
    }
    let lines_inside: Vec<String> = words
        .iter()
        .filter(|w| first_set.contains(&(w.i, w.j)) || second_set.contains(&(w.i, w.j)))
        .flat_map(|w| {
            let first = first_set.contains(&(w.i, w.j));
            w.lines
                .iter()
                .filter(move |l| if first { !l.in_first_interior } else { !l.in_second_interior })
                .map(move |l| format!("{} at z = {}", word_name(w.i, w.j), l.circle_value))
        })
        .collect();
    checks.push(CheckRecord::new(
        "exceptional fixed lines inside the open tubes",
        anchor,
        "inside",
        if lines_inside.is_empty() { "inside" } else { "outside" },
        lines_inside,
    ));
    // ψ₁ and ψ₂ restricted to the exceptional sets
    for (set, m) in [(&first_set, 1usize), (&second_set, 2)] {
        let bad: Vec<String> = words
            .iter()
            .filter(|w| set.contains(&(w.i, w.j)) && w.psi_has_unit[m])
            .map(|w| word_name(w.i, w.j))
            .collect();
        checks.push(CheckRecord::new(
            format!("psi{m} has no eigenvalue 1 on its exceptional set"),
            anchor,
            "none",
            if bad.is_empty() { "none" } else { "eigenvalue 1" },
            bad,
        ));
    }
    let printed_word = &words[8];
    if printed_word.psi_has_unit[2] {
        checks.push(CheckRecord::discrepancy(
            "psi2(a^2b^2) as listed",
            anchor,
            "no eigenvalue 1",
            "eigenvalue 1",
            vec![format!("psi2(a^2 b^2) = {}", rep_matrix(Rep::Psi2, &GroupWord::ab(2, 2)))],
        ));
    }
    Ok(FreenessReport {
        eps: eps.to_string(),
        words,
        first_set,
        second_set,
        checks,
    })
}

/// Outcome of the inequality chain ruling out a common point of the two tubes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointnessVerdict {
    pub eps: String,
    /// Lower bound 1 − 3ε on every squared coordinate of a common point.
    pub coordinate_bound: String,
    /// Lower bound 2(1 − 3ε) on a pair, to be compared with ε.
    pub pair_bound: String,
    pub disjoint: bool,
    pub within_hypothesis: bool,
}

pub fn verify_disjointness(eps: &Rational) -> Result<DisjointnessVerdict, ConstructionError> {
    if !eps.is_positive() || eps >= &Rational::one() {
        return Err(ConstructionError::EpsilonOutOfRange(eps.to_string()));
    }
    let three = Rational::from_integer(BigInt::from(3));
    let coord = Rational::one() - &three * eps;
    let pair = &coord + &coord;
    Ok(DisjointnessVerdict {
        eps: eps.to_string(),
        coordinate_bound: coord.to_string(),
        pair_bound: pair.to_string(),
        disjoint: &pair > eps,
        within_hypothesis: eps < &Rational::new(BigInt::from(1), BigInt::from(4)),
    })
}

pub fn disjointness_check(eps: &Rational) -> Result<CheckRecord, ConstructionError> {
    let v = verify_disjointness(eps)?;
    Ok(CheckRecord::new(
        "tubes are disjoint",
        "disjointness of the two tubes",
        "disjoint",
        if v.disjoint { "disjoint".to_string() } else { "criterion inconclusive".into() },
        if v.disjoint { Vec::new() } else { vec![format!("2(1 - 3ε) = {} <= ε = {}", v.pair_bound, v.eps)] },
    ))
}

/// ψ-matrices of a word as displayed strings, for reports.
pub fn psi_diagonal(m: usize, i: u32, j: u32) -> String {
    rep_matrix(Rep::psi(m as u32), &GroupWord::ab(i, j)).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_b_minus_one_is_first_axis() {
        let b = to_cyc(&super::super::reps::generator_matrix(Rep::Phi, super::super::reps::Gen::B));
        let m = Mat3::from_fn(|r, c| if r == c { &b.e[r][c] - &CycScalar::one() } else { b.e[r][c].clone() });
        let k = kernel(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], [CycScalar::one(), CycScalar::zero(), CycScalar::zero()]);
    }
}
