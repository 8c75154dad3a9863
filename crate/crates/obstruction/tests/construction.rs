use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use obstruction::construction::freeness::{disjointness_check, in_tube, squared_moduli};
use obstruction::construction::reps::{
    block_gram, build_z_with, eps_q, equivariance_residual, p_scaled, su3_check, z_block,
};
use obstruction::construction::sym::{apply_rule_once, div_q, normalize, Rule, EPS, NVARS, Z1, Z2, Z3, ZC};
use obstruction::construction::*;
use obstruction::exact::CycScalar;
use obstruction::report::Verdict;
use obstruction::{MPoly, Rational};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn word(s: &str) -> GroupWord {
    GroupWord::parse(s).unwrap()
}

#[test]
fn representation_examples() {
    let id = Mat3::<SymScalar>::identity();
    assert_eq!(rep_matrix(Rep::Phi, &word("a^3")), id);
    assert_eq!(rep_matrix(Rep::Phi, &word("aaa")), id);
    let xi = SymScalar::xi_pow(1);
    assert_eq!(rep_matrix(Rep::Phi, &word("a b a^-1 b^-1")), id.scale(&xi));
    assert_eq!(rep_matrix(Rep::Psi1, &word("z")), id);
    assert_eq!(rep_matrix(Rep::Phi, &word("z z^-1")), id);
    assert!(GroupWord::parse("a c").is_err());
}

#[test]
fn conjugating_matrix() {
    let recs = verify_p_conjugation();
    assert_eq!(recs.len(), 3);
    assert!(recs.iter().all(|r| r.verdict == Verdict::Pass), "{recs:?}");
    // cross-check: P'P'^† is 3·I entry by entry from the cyclotomic relation 1 + ξ + ξ² = 0
    let p = p_scaled();
    let g = p.mul(&p.adjoint());
    for r in 0..3 {
        for c in 0..3 {
            let want = if r == c { SymScalar::int(3) } else { SymScalar::zero() };
            assert_eq!(g.e[r][c], want);
        }
    }
}

#[test]
fn block_gram_is_scalar() {
    for form in [BlockForm::Printed, BlockForm::Transposed] {
        let g = block_gram(form);
        assert_eq!(g[0][0], eps_q());
        assert_eq!(g[1][1], eps_q());
        assert!(g[0][1].is_zero() && g[1][0].is_zero());
        let b = z_block(form);
        let det = b[0][0].clone() * b[1][1].clone() - b[0][1].clone() * b[1][0].clone();
        assert_eq!(det, eps_q());
    }
}

#[test]
fn gluing_matrices_are_special_unitary() {
    for m in 1..=2 {
        let recs = su3_check(m, &build_z(m));
        assert!(recs.iter().all(|r| r.verdict == Verdict::Pass), "{recs:?}");
    }
    // with the prefactor on every entry the determinant is s = (ε(1-ε))^{-1/2}
    let whole = build_z_with(1, BlockForm::Transposed, true);
    assert_eq!(whole.det(), ScaledScalar::new(1, SymScalar::one()));
    assert_eq!(whole.det().to_string(), "s");
}

#[test]
fn equivariance_under_each_generator() {
    for m in 1..=2 {
        for g in [Gen::A, Gen::B, Gen::Z] {
            let r = verify_alpha_equivariance(g, m).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        }
    }
}

#[test]
fn block_orientation_matters_only_for_b() {
    for g in [Gen::A, Gen::Z] {
        for m in 1..=2 {
            for form in [BlockForm::Printed, BlockForm::Transposed] {
                assert!(equivariance_residual(g, m, form).unwrap().is_empty());
            }
        }
    }
    assert!(!equivariance_residual(Gen::B, 1, BlockForm::Printed).unwrap().is_empty());
    assert!(equivariance_residual(Gen::B, 1, BlockForm::Transposed).unwrap().is_empty());
    assert!(equivariance_residual(Gen::B, 2, BlockForm::Printed).unwrap().is_empty());
    assert!(!equivariance_residual(Gen::B, 2, BlockForm::Transposed).unwrap().is_empty());
}

#[test]
fn base_point_moves() {
    use obstruction::construction::reps::base_point_move;
    for m in 1..=2 {
        for k in 0..3 {
            let a = base_point_move(Gen::A, m, k).unwrap();
            assert_eq!(a.k_out, (k + 1) % 3);
            assert!(a.scaling.iter().all(|x| x.is_one()));
            let b = base_point_move(Gen::B, m, k).unwrap();
            // b lands on the same sheet for m = 1 and one further for m = 2
            assert_eq!(b.k_out, (k + m - 1) % 3);
            // w' = ξ^{-k} diag(1, ξ, ξ²) w
            for j in 0..3 {
                assert_eq!(b.scaling[j], SymScalar::xi_pow(j as i64 - k as i64));
            }
        }
    }
}

#[test]
fn freeness_sets() {
    let r = verify_freeness(&rat(1, 8)).unwrap();
    assert_eq!(r.first_set, vec![(0, 1), (0, 2)]);
    assert_eq!(r.second_set, vec![(1, 2), (2, 1)]);
    assert!(r.checks.iter().all(|c| c.passed()), "{:?}", r.checks);
    let disc: Vec<_> = r.checks.iter().filter(|c| c.verdict == Verdict::Discrepancy).map(|c| c.name.as_str()).collect();
    assert_eq!(disc, vec!["second exceptional set", "psi2(a^2b^2) as listed"]);
    // every non-identity word has exactly three fixed lines, one per circle value
    for w in &r.words {
        let want = if (w.i, w.j) == (0, 0) { 0 } else { 3 };
        assert_eq!(w.lines.len(), want);
    }
    // b fixes the coordinate axes
    let b = &r.words[1];
    assert!(b.lines.iter().all(|l| l.moduli.iter().filter(|m| *m == "1").count() == 1));
}

#[test]
fn disjointness_chain() {
    let v = verify_disjointness(&rat(1, 8)).unwrap();
    assert!(v.disjoint && v.within_hypothesis);
    assert_eq!(v.pair_bound, "5/4");
    assert!(verify_disjointness(&rat(1, 5)).unwrap().disjoint);
    let edge = verify_disjointness(&rat(2, 7)).unwrap();
    assert!(!edge.disjoint && !edge.within_hypothesis);
    let rec = disjointness_check(&rat(2, 7)).unwrap();
    assert_eq!(rec.computed, "criterion inconclusive");
    assert!(verify_disjointness(&rat(0, 1)).is_err());
    assert!(verify_disjointness(&rat(1, 1)).is_err());
}

#[test]
fn numeric_cross_check_agrees() {
    let r = numeric_cross_check(0.125, 100, 11);
    assert!(r.passed, "{:?}", r.max_residual);
    assert_eq!(r.max_residual.len(), 14);
}

#[test]
fn full_run_is_fast_and_clean() {
    let t = std::time::Instant::now();
    let r = obstruction::construction::run(&rat(1, 8), 100, 1).unwrap();
    assert!(t.elapsed().as_secs() < 30);
    let fails: Vec<_> = r.checks.iter().filter(|c| !c.passed()).collect();
    assert!(fails.is_empty(), "{fails:?}");
    assert_eq!(r.checks.iter().filter(|c| c.verdict == Verdict::Discrepancy).count(), 5);
}

#[test]
fn scale_bookkeeping() {
    let s = ScaledScalar::new(1, SymScalar::one());
    let q = ScaledScalar::plain(eps_q());
    assert_eq!(s.clone() * s.clone() * q.clone(), ScaledScalar::one());
    assert_eq!((s.clone() * s.clone() * s.clone() * q).to_string(), "s");
    assert_ne!(s, ScaledScalar::one());
}

// independent squared-moduli oracle: P'·e₁ has all coordinates of modulus 1
#[test]
fn tube_membership_of_rotated_axes() {
    let p = p_scaled();
    let col: [CycScalar; 3] = std::array::from_fn(|r| p.e[r][0].poly().coeff(&[]));
    let m = squared_moduli(&col).unwrap();
    assert!(m.iter().all(|x| *x == rat(1, 3)));
    assert!(!in_tube(&m, &rat(1, 4), false));
    assert!(in_tube(&m, &rat(2, 3), false));
    assert!(!in_tube(&m, &rat(2, 3), true));
}

fn raw_conj(p: &MPoly<CycScalar>) -> MPoly<CycScalar> {
    let mut out = MPoly::zero();
    for (e, c) in p.terms() {
        let mut f = e.clone();
        f.resize(NVARS, 0);
        for v in [0, 2, 4, 6] {
            f.swap(v, v + 1);
        }
        out.add_term(f, c.conj());
    }
    out
}

fn arb_poly() -> impl Strategy<Value = MPoly<CycScalar>> {
    let term = (prop::collection::vec(0u32..3, NVARS), -3i64..4, 0i64..9);
    prop::collection::vec(term, 1..5).prop_map(|ts| {
        let mut p = MPoly::zero();
        for (e, c, t) in ts {
            let coeff = &CycScalar::from_int(c) * &CycScalar::zeta(9, t).unwrap();
            p.add_term(e, coeff);
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rewriting_is_confluent(p in arb_poly(), choices in prop::collection::vec((0usize..3, 0usize..8), 64)) {
        let want = normalize(&p);
        let mut cur = p;
        let mut it = choices.into_iter().cycle();
        loop {
            let pending: Vec<Rule> = Rule::ALL.iter().copied().filter(|r| apply_rule_once(&cur, *r, 0).is_some()).collect();
            if pending.is_empty() {
                break;
            }
            let (r, which) = it.next().unwrap();
            let rule = pending[r % pending.len()];
            cur = apply_rule_once(&cur, rule, which).unwrap();
        }
        prop_assert_eq!(cur, want);
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(p in arb_poly(), q in arb_poly()) {
        let (x, y) = (SymScalar::new(p.clone()), SymScalar::new(q));
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((x.clone() * y.clone()).conj(), x.conj() * y.conj());
        prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
        // commutes with reduction
        prop_assert_eq!(SymScalar::new(raw_conj(&p)), x.conj());
    }

    #[test]
    fn division_by_scale_inverts_multiplication(p in arb_poly()) {
        let x = SymScalar::new(p);
        let prod = x.clone() * eps_q();
        prop_assert_eq!(div_q(&prod), Some(x));
    }

    #[test]
    fn evaluation_respects_the_rules(p in arb_poly(), t in 0.0f64..6.28, u in 0.0f64..6.28, v in 0.0f64..1.57) {
        let eps = 0.125;
        let z1 = Complex64::from_polar((1.0f64 - eps).sqrt(), t);
        let z2 = Complex64::from_polar(eps.sqrt() * v.cos(), u);
        let z3 = Complex64::from_polar(eps.sqrt() * v.sin(), t + u);
        let z = Complex64::from_polar(1.0, 2.0 * u);
        let raw: Complex64 = p
            .terms()
            .map(|(e, c)| {
                let vals = [z1, z1.conj(), z2, z2.conj(), z3, z3.conj(), z, z.conj(), Complex64::new(eps, 0.0)];
                let coeff = obstruction::construction::sym::cyc_to_complex(c);
                e.iter().enumerate().fold(coeff, |acc, (i, &k)| acc * vals[i].powu(k))
            })
            .sum();
        let reduced = SymScalar::new(p).eval(z1, z2, z3, z, eps);
        prop_assert!((raw - reduced).norm() < 1e-9 * (1.0 + raw.norm()));
    }

    // sampled oracle for disjointness: rotate a point of the first tube by P and test
    // membership of the result in the first tube numerically
    #[test]
    fn rotated_tube_misses_the_tube(t in 0.0f64..6.28, u in 0.0f64..6.28, v in 0.0f64..1.57, r in 0.0f64..1.0) {
        let eps = 0.125f64;
        let tail = eps * r;
        let w = [
            Complex64::from_polar((1.0 - tail).sqrt(), t),
            Complex64::from_polar(tail.sqrt() * v.cos(), u),
            Complex64::from_polar(tail.sqrt() * v.sin(), t - u),
        ];
        let p = p_scaled();
        let x: Vec<Complex64> = (0..3)
            .map(|row| (0..3).map(|c| obstruction::construction::sym::cyc_to_complex(&p.e[row][c].poly().coeff(&[])) * w[c]).sum::<Complex64>() / 3f64.sqrt())
            .collect();
        let sq: Vec<f64> = x.iter().map(|c| c.norm_sqr()).collect();
        prop_assert!((sq.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            prop_assert!(sq[i] + sq[j] > eps);
        }
    }
}

#[test]
fn variable_layout() {
    assert_eq!((Z1, Z2, Z3, ZC, EPS), (0, 2, 4, 6, 8));
}
