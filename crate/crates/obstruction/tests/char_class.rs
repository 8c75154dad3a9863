use num_bigint::BigInt;
use num_traits::{One, Zero};
use obstruction::char_class::*;
use obstruction::group_rings::*;
use obstruction::{RatPoly, Rational};

fn m(s: &str) -> Monomial {
    s.parse().unwrap()
}

fn binom(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn rings(p: u32) -> (TruncatedRing, TruncatedRing) {
    (
        build_ring(RingKind::BHt, p, Coefficients::Integral),
        build_ring(RingKind::BHt, p, Coefficients::ModP),
    )
}

#[test]
fn psi_restricts_to_shifted_lines() {
    let (z, _) = rings(3);
    let s = decompose_restriction(Rep::Psi, &z, 1).unwrap();
    let shown: Vec<String> = s.lines.iter().map(|l| z.display(l)).collect();
    assert_eq!(shown, ["tau'", "v' + tau'", "-v' + tau'"]);
    let phi0 = decompose_restriction(Rep::PhiZero, &z, 3).unwrap();
    assert!(phi0.lines[0].is_zero());
    let triv = decompose_restriction(Rep::Trivial, &z, 0).unwrap();
    assert_eq!(chern_total(&z, &triv).unwrap().total(&z), z.one());
}

#[test]
fn chern_class_of_psi_mod_p_and_integral_residual() {
    for p in [3u32, 5, 7] {
        let (z, fp) = rings(p);
        let printed_z = z
            .parse(&format!("1 - v'^{} + tau'^{p} - tau'*v'^{}", p - 1, p - 1))
            .unwrap();
        let printed_fp = fp
            .parse(&format!("1 - v^{} + taub^{p} - taub*v^{}", p - 1, p - 1))
            .unwrap();
        for t in 0..=p {
            let ch_fp = chern_total(&fp, &decompose_restriction(Rep::Psi, &fp, t).unwrap()).unwrap();
            assert_eq!(ch_fp.total(&fp), printed_fp, "p={p} t={t}");
            let ch_z = chern_total(&z, &decompose_restriction(Rep::Psi, &z, t).unwrap()).unwrap();
            let residual = z.sub(&ch_z.total(&z), &printed_z);
            let mut expected = z.zero();
            for j in 1..p {
                let tj = z.monomial(&Monomial::from_factors([(Gen::TauPrime, j)]));
                expected = z.add(&expected, &z.scale(&tj, binom(p as i64, j as i64)));
            }
            assert_eq!(residual, expected, "p={p} t={t}");
            // top class equals the restriction of ζ, exactly
            let res_zeta = restriction_g_to_h(p, t, Coefficients::Integral)
                .apply(&build_ring(RingKind::BGt, p, Coefficients::Integral).monomial(&m("zeta")), &z)
                .unwrap();
            assert_eq!(ch_z.classes[p as usize], res_zeta);
        }
    }
}

#[test]
fn chern_class_of_phi_blocks() {
    for p in [3u32, 5, 7] {
        let (z, _) = rings(p);
        for t in 0..=p {
            let mut blocks = LineBundleSum { lines: Vec::new() };
            for _ in 0..p {
                blocks = blocks.concat(&decompose_restriction(Rep::PhiZero, &z, t).unwrap());
                blocks = blocks.concat(&decompose_restriction(Rep::PhiP, &z, t).unwrap());
            }
            let got = chern_total(&z, &blocks).unwrap().total(&z);
            let want = if t < p {
                z.parse(&format!("1 + {}*v'^{p} + {t}*v'^{}", 1 + t, 2 * p)).unwrap()
            } else {
                z.parse(&format!("1 + v'^{p}")).unwrap()
            };
            assert_eq!(got, want, "p={p} t={t}");
        }
    }
}

#[test]
fn whitney_sum_formula() {
    for p in [3u32, 5] {
        let (z, fp) = rings(p);
        for ring in [&z, &fp] {
            for t in 0..=p {
                let a = decompose_restriction(Rep::Psi, ring, t).unwrap();
                let b = decompose_restriction(Rep::PhiP, ring, t).unwrap();
                let whole = chern_total(ring, &a.concat(&b)).unwrap().total(ring);
                let parts = ring
                    .multiply(
                        &chern_total(ring, &a).unwrap().total(ring),
                        &chern_total(ring, &b).unwrap().total(ring),
                    )
                    .unwrap();
                assert_eq!(whole, parts);
            }
        }
    }
}

#[test]
fn naturality_on_the_circle() {
    for p in [3u32, 5, 7] {
        let (z, _) = rings(p);
        let s = build_ring(RingKind::BS1, p, Coefficients::Integral);
        let ch = chern_total(&z, &decompose_restriction(Rep::Psi, &z, 1).unwrap()).unwrap();
        let restricted = restriction_h_to_s(p).apply(&ch.total(&z), &s).unwrap();
        let tau = s.monomial(&m("tau"));
        let want = s.pow(&s.add(&s.one(), &tau), p).unwrap();
        assert_eq!(restricted, want);
        assert_eq!(s.homogeneous(&restricted, 2 * p), s.pow(&tau, p).unwrap());
    }
}

#[test]
fn stable_inverse_of_psi_hat() {
    for p in [3u32, 5, 7] {
        let (_, fp) = rings(p);
        for t in 0..=p {
            let c = chern_total(&fp, &decompose_restriction(Rep::PsiHat, &fp, t).unwrap()).unwrap();
            let inv = stable_inverse(&fp, &c, 4 * p - 2).unwrap();
            let prod = fp.multiply(&c.total(&fp), &inv.total(&fp)).unwrap();
            for d in 1..=4 * p - 2 {
                assert!(fp.homogeneous(&prod, d).is_zero(), "p={p} t={t} d={d}");
            }
            assert_eq!(fp.homogeneous(&prod, 0), fp.one());
            let lead = fp.parse(&format!("1 + v^{}", p - 1)).unwrap();
            let low: GradedElement = (0..=2 * p - 2).fold(fp.zero(), |acc, d| fp.add(&acc, &fp.homogeneous(&inv.total(&fp), d)));
            assert_eq!(low, lead);
        }
    }
}

#[test]
fn stable_inverse_geometric_series() {
    let s = build_ring(RingKind::BS1, 3, Coefficients::Integral);
    let one_plus_x = ChernVector::from_total(&s, &s.parse("1 + tau").unwrap());
    let inv = stable_inverse(&s, &one_plus_x, 6).unwrap();
    assert_eq!(inv.total(&s), s.parse("1 - tau + tau^2 - tau^3").unwrap());
    // re-multiplication oracle
    let back = s.multiply(&inv.total(&s), &one_plus_x.total(&s)).unwrap();
    assert_eq!(back, s.parse("1 - tau^4").unwrap());
    let unit = ChernVector::from_total(&s, &s.one());
    assert_eq!(stable_inverse(&s, &unit, 6).unwrap().total(&s), s.one());
}

fn xi_classes(p: u32, t: u32) -> (TruncatedRing, Vec<GradedElement>) {
    let (_, fp) = rings(p);
    let c = chern_total(&fp, &decompose_restriction(Rep::PsiHat, &fp, t).unwrap()).unwrap();
    let xi = stable_inverse(&fp, &c, 4 * p - 2).unwrap();
    let r = (p as usize - 1) / 2;
    let pont = pontrjagin_classes(&fp, &xi, r).unwrap();
    (fp, pont)
}

#[test]
fn pontrjagin_and_wu_classes() {
    for p in [3u32, 5, 7] {
        let r = (p as usize - 1) / 2;
        for t in 0..=p {
            let (fp, pont) = xi_classes(p, t);
            assert_eq!(pont[0], fp.one());
            for k in 1..r {
                assert!(pont[k].is_zero(), "p={p} t={t} k={k}");
            }
            let sign = if r % 2 == 0 { 2 } else { -2 };
            let want = fp.scale(&fp.monomial(&Monomial::from_factors([(Gen::V, p - 1)])), sign);
            assert_eq!(pont[r], want);
            let q1 = wu_q1(&fp, &pont).unwrap();
            assert_eq!(q1, fp.monomial(&Monomial::from_factors([(Gen::V, p - 1)])));
            assert_eq!(q1, wu_q1_shortcut(&fp, &pont));
        }
    }
}

#[test]
fn p1_at_three_is_v_squared() {
    let (fp, pont) = xi_classes(3, 1);
    assert_eq!(pont[1], fp.parse("v^2").unwrap());
}

#[test]
fn zero_pontrjagin_vector_gives_zero_q1() {
    let (fp, _) = rings(5);
    let pont = vec![fp.one(), fp.zero(), fp.zero()];
    assert!(wu_q1(&fp, &pont).unwrap().is_zero());
}

#[test]
fn pontrjagin_needs_enough_classes() {
    let s = build_ring(RingKind::BS1, 3, Coefficients::Integral);
    let c = ChernVector { classes: vec![s.one()] };
    assert!(matches!(
        pontrjagin_classes(&s, &c, 1),
        Err(CharError::CapTooSmall { .. })
    ));
}

/// Newton's identities: power sums in elementary symmetric functions.
fn newton_power_sum(r: usize) -> RatPoly {
    let e = |i: usize| RatPoly::var(i - 1);
    let mut p: Vec<RatPoly> = vec![RatPoly::zero()];
    for k in 1..=r {
        let mut acc = RatPoly::zero();
        for i in 1..k {
            let s = if (i - 1) % 2 == 0 { 1 } else { -1 };
            acc = &acc + &(&e(i) * &p[k - i]).scale(&Rational::from_integer(BigInt::from(s)));
        }
        let s = if (k - 1) % 2 == 0 { k as i64 } else { -(k as i64) };
        acc = &acc + &e(k).scale(&Rational::from_integer(BigInt::from(s)));
        p.push(acc);
    }
    p.pop().unwrap()
}

#[test]
fn sequence_of_one_plus_t_r_is_the_power_sum() {
    for r in 1..=4 {
        let mut f = vec![0i64; r + 1];
        f[0] = 1;
        f[r] = 1;
        let k = multiplicative_sequence(&f, r);
        assert_eq!(k, newton_power_sum(r), "r={r}");
        let expected = if r % 2 == 1 { r as i64 } else { -(r as i64) };
        assert_eq!(top_coefficient(&k, r), Rational::from_integer(BigInt::from(expected)));
    }
    let k2 = multiplicative_sequence(&[1, 0, 1], 2);
    assert_eq!(top_coefficient(&k2, 2), -Rational::one() - Rational::one());
}
