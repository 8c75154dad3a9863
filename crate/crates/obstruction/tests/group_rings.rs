use obstruction::group_rings::maps::{gamma_pullback_multiple, projection_formula_instances};
use obstruction::group_rings::*;
use proptest::prelude::*;

fn m(s: &str) -> Monomial {
    s.parse().unwrap()
}

fn g(p: u32) -> TruncatedRing {
    build_ring(RingKind::BGt, p, Coefficients::Integral)
}

fn h(p: u32) -> TruncatedRing {
    build_ring(RingKind::BHt, p, Coefficients::Integral)
}

#[test]
fn bgt_degree_four_basis_and_orders() {
    let r = g(3);
    let b = r.ring_basis(4).unwrap();
    let names: Vec<String> = b.iter().map(ToString::to_string).collect();
    assert_eq!(names, ["alpha^2", "alpha*beta", "beta^2", "chi2"]);
    assert_eq!(r.order(&m("chi2")), Some(0));
    for x in ["alpha^2", "alpha*beta", "beta^2"] {
        assert_eq!(r.order(&m(x)), Some(3));
    }
}

#[test]
fn bht_degree_four_basis() {
    let b = h(3).ring_basis(4).unwrap();
    let mut names: Vec<String> = b.iter().map(ToString::to_string).collect();
    names.sort();
    assert_eq!(names, ["tau'*v'", "tau'^2", "v'^2"]);
}

#[test]
fn degree_zero_is_unit_everywhere() {
    for p in [3, 5, 7] {
        for kind in [RingKind::BS1, RingKind::BHt, RingKind::BGt, RingKind::BDt] {
            for c in [Coefficients::Integral, Coefficients::ModP] {
                let r = build_ring(kind, p, c);
                assert_eq!(r.ring_basis(0).unwrap(), vec![Monomial::one()]);
            }
        }
    }
}

#[test]
fn basis_above_cap_is_an_error() {
    let r = g(3);
    assert!(matches!(
        r.ring_basis(13),
        Err(RingError::DegreeAboveCap { degree: 13, cap: 12 })
    ));
}

#[test]
fn bgt_top_degree_lists() {
    for p in [3u32, 5, 7] {
        let r = g(p);
        let b = r.ring_basis(2 * p - 2).unwrap();
        assert_eq!(b.len(), p as usize + 1);
        assert!(b.contains(&Monomial::gen(Gen::Chi(p - 1))));
        // (Z/p)^{2p+1} ⊕ Z in degree 4p-2
        let top = r.ring_basis(4 * p - 2).unwrap();
        let torsion = top.iter().filter(|x| r.order(x) == Some(p as u64)).count();
        let free = top.iter().filter(|x| r.order(x) == Some(0)).count();
        assert_eq!((torsion, free), (2 * p as usize + 1, 1));
    }
}

#[test]
fn k_invariant_times_top_chi() {
    for p in [3u32, 5, 7] {
        let r = g(p);
        let k2 = r.alias("k2").unwrap();
        let chi = r.monomial(&Monomial::gen(Gen::Chi(p - 1)));
        let want = r
            .parse(&format!(
                "alpha^{} + alpha^{}*beta + beta^{}",
                2 * p - 1,
                2 * p - 2,
                2 * p - 1
            ))
            .unwrap();
        assert_eq!(r.multiply(&k2, &chi).unwrap(), want);
        assert_eq!(r.multiply(&chi, &k2).unwrap(), want);
    }
}

#[test]
fn alpha_p_beta_equals_alpha_beta_p() {
    for p in [3u32, 5, 7] {
        let r = g(p);
        let a = r.monomial(&Monomial::gen(Gen::Alpha));
        let b = r.monomial(&Monomial::gen(Gen::Beta));
        let lhs = r.multiply(&r.pow(&a, p).unwrap(), &b).unwrap();
        let rhs = r.multiply(&a, &r.pow(&b, p).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn untabled_chi_products_fail_honestly() {
    let r = g(3);
    let chi = r.monomial(&m("chi2"));
    let a = r.monomial(&m("alpha"));
    match r.multiply(&chi, &a) {
        Err(RingError::UnknownProduct { left, right, .. }) => {
            assert_eq!(left, m("chi2"));
            assert_eq!(right, m("alpha"));
        }
        other => panic!("expected UnknownProduct, got {other:?}"),
    }
    assert!(r.multiply(&chi, &chi).is_err());
}

#[test]
fn free_polynomial_part_of_bht() {
    let p = 5;
    let r = h(p);
    let vp = r.monomial(&m("v'^5"));
    let tp = r.monomial(&m("tau'^4"));
    assert_eq!(r.multiply(&vp, &tp).unwrap(), r.monomial(&m("tau'^4*v'^5")));
    // p v' = 0
    assert!(r.scale(&r.monomial(&m("v'")), 5).is_zero());
}

#[test]
fn restriction_of_k_invariant() {
    for p in [3u32, 5, 7] {
        let (gr, hr) = (g(p), h(p));
        let k2 = gr.alias("k2").unwrap();
        let want = hr.monomial(&Monomial::from_factors([(Gen::VPrime, p)]));
        for t in 0..=p {
            let res = restriction_g_to_h(p, t, Coefficients::Integral);
            assert_eq!(res.apply(&k2, &hr).unwrap(), want, "p={p} t={t}");
        }
    }
}

#[test]
fn restriction_generators() {
    let p = 3;
    let (gr, hr) = (g(p), h(p));
    let a = gr.monomial(&m("alpha"));
    let zero_at_p = restriction_g_to_h(p, p, Coefficients::Integral);
    assert!(zero_at_p.apply(&a, &hr).unwrap().is_zero());
    let generic = restriction_g_to_h(p, 2, Coefficients::Integral);
    assert_eq!(generic.apply(&a, &hr).unwrap(), hr.monomial(&m("v'")));
    assert_eq!(generic.apply(&gr.one(), &hr).unwrap(), hr.one());
    let zeta = gr.monomial(&m("zeta"));
    assert_eq!(
        generic.apply(&zeta, &hr).unwrap(),
        hr.parse("tau'^3 - tau'*v'^2").unwrap()
    );
    let s = build_ring(RingKind::BS1, p, Coefficients::Integral);
    assert_eq!(
        restriction_g_to_s(p).apply(&zeta, &s).unwrap(),
        s.monomial(&m("tau^3"))
    );
    assert!(matches!(
        generic.apply(&gr.monomial(&m("chi1")), &hr),
        Err(MapError::UnknownRestriction(_))
    ));
}

#[test]
fn restriction_composes_to_the_circle() {
    for p in [3u32, 5] {
        let (gr, hr) = (g(p), h(p));
        let s = build_ring(RingKind::BS1, p, Coefficients::Integral);
        for t in 0..=p {
            let gh = restriction_g_to_h(p, t, Coefficients::Integral);
            for d in 0..=gr.cap() {
                for x in gr.ring_basis(d).unwrap() {
                    let e = gr.monomial(&x);
                    let (Ok(a), Ok(b)) = (gh.apply(&e, &hr), restriction_g_to_s(p).apply(&e, &s)) else {
                        continue;
                    };
                    assert_eq!(restriction_h_to_s(p).apply(&a, &s).unwrap(), b);
                }
            }
        }
    }
}

#[test]
fn restriction_is_multiplicative_where_tabled() {
    for p in [3u32, 5] {
        let (gr, hr) = (g(p), h(p));
        for t in 0..=p {
            let res = restriction_g_to_h(p, t, Coefficients::Integral);
            let mut checked = 0;
            for ((a, b), prod) in gr.products() {
                let ab = gr.from_terms(prod.clone());
                let (ea, eb) = (gr.monomial(a), gr.monomial(b));
                let (Ok(ra), Ok(rb), Ok(rab)) = (res.apply(&ea, &hr), res.apply(&eb, &hr), res.apply(&ab, &hr)) else {
                    continue;
                };
                assert_eq!(hr.multiply(&ra, &rb).unwrap(), rab, "{a} * {b}");
                checked += 1;
            }
            assert!(checked > 50);
        }
    }
}

#[test]
fn transfer_of_top_tau_power() {
    for p in [3u32, 5, 7] {
        let (gr, hr) = (g(p), h(p));
        let tr = transfer_table(Covering::HtoG { t: 1 }, p);
        let x = hr.monomial(&Monomial::from_factors([(Gen::TauPrime, p - 1)]));
        let want = gr
            .parse(&format!("chi{} - alpha^{}", p - 1, p - 1))
            .unwrap();
        assert_eq!(tr.apply(&x, &gr).unwrap(), want);
        assert!(tr.apply(&hr.zero(), &gr).unwrap().is_zero());
        assert!(matches!(
            tr.apply(&hr.monomial(&m("tau'")), &gr),
            Err(MapError::UnknownTransfer(_))
        ));
    }
}

#[test]
fn mod_p_transfer_identity_and_bockstein() {
    for p in [3u32, 5, 7] {
        let gm = build_ring(RingKind::BGt, p, Coefficients::ModP);
        let hm = build_ring(RingKind::BHt, p, Coefficients::ModP);
        let tr = transfer_table_mod_p(p);
        let res = restriction_g_to_h(p, p, Coefficients::ModP);
        let yp = gm.monomial(&m("y'"));
        let ry = res.apply(&yp, &hm).unwrap();
        assert_eq!(ry, hm.monomial(&m("u")));
        let taub = hm.monomial(&Monomial::from_factors([(Gen::TauBar, p - 1)]));
        let lhs = tr.apply(&hm.multiply(&ry, &taub).unwrap(), &gm).unwrap();
        let rhs = gm.multiply(&yp, &tr.apply(&taub, &gm).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // the quoted form, with y'·x^{p-1} written out before rewriting
        let quoted = gm
            .add(
                &gm.scale(&gm.monomial(&Monomial::from_factors([(Gen::XPrime, p - 1), (Gen::YPrime, 1)])), -1),
                &gm.multiply(&yp, &gm.monomial(&Monomial::from_factors([(Gen::X, p - 1)]))).unwrap(),
            );
        assert_eq!(lhs, quoted);
        let gz = g(p);
        let delta = maps::bockstein(&lhs, &gz).unwrap();
        let want = gz
            .parse(&format!("alpha^{}*beta - beta^{p}", p - 1))
            .unwrap();
        assert_eq!(delta, want);
    }
}

#[test]
fn projection_formula_on_tabled_pairs() {
    for p in [3u32, 5, 7] {
        let fam = RingFamily::new(p);
        let mut total = 0;
        for t in 0..p {
            let inst = projection_formula_instances(
                &transfer_table(Covering::HtoG { t }, p),
                &restriction_g_to_h(p, t, Coefficients::Integral),
                &fam.g,
                &fam.h,
                fam.g.cap(),
            );
            assert!(inst.iter().all(|i| i.holds), "{inst:?}");
            total += inst.len();
        }
        let sh = projection_formula_instances(
            &transfer_table(Covering::StoH { t: 0 }, p),
            &restriction_h_to_s(p),
            &fam.h,
            &fam.s,
            fam.h.cap(),
        );
        assert!(sh.iter().all(|i| i.holds));
        let sg = projection_formula_instances(
            &transfer_table(Covering::StoG, p),
            &restriction_g_to_s(p),
            &fam.g,
            &fam.s,
            fam.g.cap(),
        );
        assert!(sg.iter().all(|i| i.holds));
        assert!(total > 0 && !sh.is_empty() && !sg.is_empty());

        let gm = build_ring(RingKind::BGt, p, Coefficients::ModP);
        let hm = build_ring(RingKind::BHt, p, Coefficients::ModP);
        let modp = projection_formula_instances(
            &transfer_table_mod_p(p),
            &restriction_g_to_h(p, p, Coefficients::ModP),
            &gm,
            &hm,
            gm.cap(),
        );
        assert!(modp.iter().any(|i| i.a == m("y'")));
        assert!(modp.iter().all(|i| i.holds), "{modp:?}");
    }
}

#[test]
fn composite_transfer_matches_direct_table() {
    for p in [3u32, 5, 7] {
        let fam = RingFamily::new(p);
        let t1 = transfer_table(Covering::HtoG { t: 1 }, p);
        let t2 = transfer_table(Covering::StoH { t: 1 }, p);
        let direct = transfer_table(Covering::StoG, p);
        for src in direct.sources() {
            let x = fam.s.monomial(src);
            let via = t1.apply(&t2.apply(&x, &fam.h).unwrap(), &fam.g).unwrap();
            assert_eq!(via, direct.apply(&x, &fam.g).unwrap());
        }
    }
}

#[test]
fn gamma_classes_transfer_and_pull_back() {
    for p in [3u32, 5, 7] {
        let fam = RingFamily::new(p);
        let gg = GammaClass::new(TotalSpace::G, &fam);
        let gh = GammaClass::new(TotalSpace::H, &fam);
        let gs = GammaClass::new(TotalSpace::S, &fam);
        for t in 0..p {
            assert_eq!(gh.transfer(&transfer_table(Covering::HtoG { t }, p), &fam).unwrap(), gg);
            assert_eq!(gs.transfer(&transfer_table(Covering::StoH { t }, p), &fam).unwrap(), gh);
        }
        assert_eq!(gs.transfer(&transfer_table(Covering::StoG, p), &fam).unwrap(), gg);
        let pi = i64::from(p);
        assert_eq!(gamma_pullback_multiple(Covering::HtoG { t: 1 }, p), pi);
        assert_eq!(gamma_pullback_multiple(Covering::StoH { t: 1 }, p), pi);
        assert_eq!(
            gamma_pullback_multiple(Covering::HtoG { t: 1 }, p) * gamma_pullback_multiple(Covering::StoH { t: 1 }, p),
            gamma_pullback_multiple(Covering::StoG, p)
        );
    }
}

#[test]
fn bockstein_and_reduction_generators() {
    let p = 3;
    let gz = g(p);
    let gm = build_ring(RingKind::BGt, p, Coefficients::ModP);
    assert_eq!(maps::bockstein(&gm.monomial(&m("y")), &gz).unwrap(), gz.monomial(&m("alpha")));
    assert_eq!(maps::bockstein(&gm.monomial(&m("y'")), &gz).unwrap(), gz.monomial(&m("beta")));
    let hm = build_ring(RingKind::BHt, p, Coefficients::ModP);
    assert_eq!(maps::bockstein(&hm.monomial(&m("u")), &h(p)).unwrap(), h(p).monomial(&m("v'")));
    let pi = reduction(RingKind::BGt, p);
    assert_eq!(pi.apply(&gz.monomial(&m("zeta")), &gm).unwrap(), gm.monomial(&m("z")));
    assert_eq!(pi.apply(&gz.monomial(&m("alpha")), &gm).unwrap(), gm.monomial(&m("x")));
    let pchi = gz.scale(&gz.monomial(&m("chi2")), 3);
    assert!(pi.apply(&pchi, &gm).unwrap().is_zero());
}

#[test]
fn reduction_then_bockstein_vanishes() {
    for p in [3u32, 5] {
        for kind in [RingKind::BGt, RingKind::BHt, RingKind::BDt, RingKind::BS1] {
            let z = build_ring(kind, p, Coefficients::Integral);
            let fp = build_ring(kind, p, Coefficients::ModP);
            let pi = reduction(kind, p);
            for d in 0..=fp.cap() {
                for x in z.ring_basis(d).unwrap() {
                    let Ok(r) = pi.apply(&z.monomial(&x), &fp) else { continue };
                    let back = maps::bockstein(&r, &z).unwrap();
                    assert!(back.is_zero());
                    assert!(pi.apply(&back, &fp).unwrap().is_zero());
                }
            }
        }
    }
}

fn basis_elements(r: &TruncatedRing) -> Vec<Monomial> {
    (0..=r.cap()).flat_map(|d| r.ring_basis(d).unwrap()).collect()
}

proptest! {
    #[test]
    fn graded_commutativity(p in prop::sample::select(vec![3u32, 5, 7]),
                            kind in prop::sample::select(vec![RingKind::BGt, RingKind::BHt, RingKind::BDt]),
                            modp in any::<bool>(), i in 0usize..400, j in 0usize..400) {
        let c = if modp { Coefficients::ModP } else { Coefficients::Integral };
        let r = build_ring(kind, p, c);
        let b = basis_elements(&r);
        let (x, y) = (&b[i % b.len()], &b[j % b.len()]);
        let (ex, ey) = (r.monomial(x), r.monomial(y));
        if let (Ok(xy), Ok(yx)) = (r.multiply(&ex, &ey), r.multiply(&ey, &ex)) {
            let sign = x.swap_sign(y, p);
            prop_assert_eq!(xy, r.scale(&yx, sign));
        }
    }

    #[test]
    fn associativity_where_tabled(p in prop::sample::select(vec![3u32, 5]),
                                  kind in prop::sample::select(vec![RingKind::BGt, RingKind::BHt, RingKind::BDt]),
                                  modp in any::<bool>(),
                                  i in 0usize..400, j in 0usize..400, k in 0usize..400) {
        let c = if modp { Coefficients::ModP } else { Coefficients::Integral };
        let r = build_ring(kind, p, c);
        let b = basis_elements(&r);
        let (x, y, z) = (r.monomial(&b[i % b.len()]), r.monomial(&b[j % b.len()]), r.monomial(&b[k % b.len()]));
        let left = r.multiply(&x, &y).and_then(|xy| r.multiply(&xy, &z));
        let right = r.multiply(&y, &z).and_then(|yz| r.multiply(&x, &yz));
        if let (Ok(l), Ok(rr)) = (left, right) {
            prop_assert_eq!(l, rr);
        }
    }
}
