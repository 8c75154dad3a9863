use obstruction::steenrod::*;
use proptest::prelude::*;

fn alg(p: u32) -> SteenrodAlgebra {
    SteenrodAlgebra::new(p).unwrap()
}

fn render(e: &SteenrodElement) -> String {
    e.to_string()
}

#[test]
fn adem_examples() {
    let a = alg(3);
    // oracle: (−1)^{a+t} C((p−1)(b−t)−1, a−pt) at a = b = 1, t = 0 is −C(1,1) = −1 ≡ 2
    let coeff = (3 - 1) % 3;
    assert_eq!(render(&a.adem_reduce(&parse_word("P1 P1").unwrap())), format!("{coeff}P²"));
    assert!(a.adem_reduce(&parse_word("b b").unwrap()).is_zero());
    for w in ["P3 P1", "b P1 b", "P4 b P1", "P1"] {
        let word = parse_word(w).unwrap();
        let m = AdmissibleMonomial::from_word(word.clone(), 3).unwrap();
        assert_eq!(a.adem_reduce(&word), SteenrodElement::monomial(m));
    }
    // at p = 5 the same relation reads P¹P¹ = 2P² as well: −C(3,1) = −3 ≡ 2
    assert_eq!(render(&alg(5).adem_reduce(&parse_word("P1 P1").unwrap())), "2P²");
}

#[test]
fn relation_used_for_the_thom_class() {
    // P²P¹ = 0 at p = 3: the coefficient C(2·1−1, 2) vanishes
    assert!(alg(3).adem_reduce(&parse_word("P2 P1").unwrap()).is_zero());
}

#[test]
fn basis_dimensions_match_a_counting_oracle() {
    // oracle: count admissible sequences directly from the definition
    fn count(p: u32, d: u32) -> usize {
        let mut n = 0;
        // brute force over short sequences
        let step = 2 * (p - 1);
        let maxs = d / step + 1;
        let mut seqs: Vec<(Vec<bool>, Vec<u32>)> = vec![(vec![false], vec![]), (vec![true], vec![])];
        for _ in 0..4 {
            let mut next = Vec::new();
            for (e, s) in &seqs {
                for x in 1..=maxs {
                    for b in [false, true] {
                        let mut e2 = e.clone();
                        e2.push(b);
                        let mut s2 = s.clone();
                        s2.push(x);
                        next.push((e2, s2));
                    }
                }
            }
            seqs.extend(next.into_iter().filter(|(e, s)| {
                let deg: u32 = s.iter().map(|x| x * step).sum::<u32>() + e.iter().filter(|&&b| b).count() as u32;
                deg <= d
            }));
            seqs.sort();
            seqs.dedup();
        }
        for (e, s) in &seqs {
            let deg: u32 = s.iter().map(|x| x * step).sum::<u32>() + e.iter().filter(|&&b| b).count() as u32;
            let ok = (0..s.len().saturating_sub(1)).all(|i| s[i] >= p * s[i + 1] + u32::from(e[i + 1]));
            if deg == d && ok {
                n += 1;
            }
        }
        n
    }
    for p in [3, 5] {
        let a = alg(p);
        for d in 0..=30 {
            assert_eq!(a.basis(d).len(), count(p, d), "p={p} d={d}");
        }
    }
}

fn words(p: u32) -> impl Strategy<Value = Vec<Tok>> {
    prop::collection::vec(
        prop_oneof![Just(Tok::Beta), (1u32..=4).prop_map(Tok::P)],
        1..5,
    )
    .prop_filter("window", move |w| w.iter().map(|t| t.degree(p)).sum::<u32>() <= 40)
}

proptest! {
    #[test]
    fn reduction_is_confluent(w in words(3)) {
        let a = alg(3);
        prop_assert_eq!(a.reduce_with(&w, ReductionOrder::LeftFirst), a.reduce_with(&w, ReductionOrder::RightFirst));
    }

    #[test]
    fn reduction_is_idempotent_and_associative(w in words(5), v in words(5)) {
        let a = alg(5);
        let x = a.adem_reduce(&w);
        for m in x.terms.keys() {
            prop_assert!(m.is_admissible(5));
            prop_assert_eq!(a.adem_reduce(m.word()), SteenrodElement::monomial(m.clone()));
        }
        let mut wv = w.clone();
        wv.extend(v.iter().copied());
        prop_assert_eq!(a.multiply(&x, &a.adem_reduce(&v)), a.adem_reduce(&wv));
    }
}

#[test]
fn thom_lemma_values() {
    for p in [3u32, 5, 7] {
        let cap = 4 * p - 3;
        for kind in [ThomKind::Dt(1), ThomKind::Ht(0), ThomKind::Ht(p), ThomKind::S1] {
            let m = thom_module(kind, p, cap);
            let u = {
                let mut v = vec![0; m.dim(0)];
                v[0] = 1;
                v
            };
            let zero = |d: u32, x: Vec<u32>| x.iter().all(|&c| c == 0) || d > cap;
            assert!(zero(1, m.act_word(&parse_word("b").unwrap(), 0, &u)));
            let p1 = m.describe(2 * (p - 1), &m.act_word(&parse_word("P1").unwrap(), 0, &u));
            let want = if kind == ThomKind::S1 { "0".to_string() } else { format!("Uv^{}", p - 1) };
            assert_eq!(p1, want, "{kind:?} p={p}");
            for w in ["P1 b", "b P1", "b P1 b", "P2"] {
                let word = parse_word(w).unwrap();
                let d: u32 = word.iter().map(|t| t.degree(p)).sum();
                assert!(zero(d, m.act_word(&word, 0, &u)), "{w} on U, {kind:?} p={p}");
            }
        }
    }
}

#[test]
fn circle_wu_class_in_degree_twelve() {
    // restricted to the circle the representation is p copies of one line plus trivial
    // ones, so the total class is 1/(1 + τ^{p(p−1)}): P³U = −Uτ⁶ at p = 3
    let m = thom_module(ThomKind::S1, 3, 12);
    let x = m.act_word(&parse_word("P3").unwrap(), 0, &[1]);
    assert_eq!(m.describe(12, &x), "2Uτ^6");
}

#[test]
fn module_actions_satisfy_adem() {
    for (p, cap) in [(3u32, 9u32), (3, 12), (5, 17)] {
        let a = alg(p);
        for kind in [ThomKind::Dt(1), ThomKind::Ht(1), ThomKind::S1] {
            let m = thom_module(kind, p, cap);
            assert!(m.check_adem(&a).unwrap() > 0, "{kind:?}");
        }
    }
}

#[test]
fn sphere_chart_at_three() {
    let a = alg(3);
    let s = sphere(3);
    let res = minimal_resolution(&a, &s, 14, 14, ResolveOptions::default()).unwrap();
    assert!(res.check_minimal());
    assert!(res.check_exactness(&s).unwrap() > 0);
    let chart = res.chart();
    // tower at stem 0
    for n in 0..=14 {
        assert_eq!(chart.dim(n, n as u32), 1);
    }
    assert_eq!(res.gens[1].iter().filter(|&&t| t <= 8).collect::<Vec<_>>(), [&1, &4]);
    assert_eq!(res.gens[2].iter().filter(|&&t| t <= 9).collect::<Vec<_>>(), [&2, &9]);
    // through stem 4p−4 the chart is exactly the tower plus stems 2p−3 and 4p−5
    let off_tower: Vec<(usize, i64, usize)> =
        chart.by_stem().into_iter().filter(|&(_, s, _)| s != 0 && s <= 8).collect();
    assert_eq!(off_tower, [(1, 3, 1), (2, 7, 1)]);
    assert_eq!(res.describe_boundary(&s, 1, 1), "P¹(ι_0)");
}

#[test]
fn charts_do_not_depend_on_pivot_order() {
    let a = alg(3);
    for m in [sphere(3), thom_module(ThomKind::Dt(1), 3, 9)] {
        let top = m.valid_through.unwrap_or(12);
        let x = minimal_resolution(&a, &m, top, 8, ResolveOptions::default()).unwrap();
        let y = minimal_resolution(&a, &m, top, 8, ResolveOptions { reverse_pivots: true }).unwrap();
        assert_eq!(x.chart(), y.chart());
        assert!(y.check_minimal());
        y.check_exactness(&m).unwrap();
    }
}

#[test]
fn dt_resolution_at_three() {
    let a = alg(3);
    let m = thom_module(ThomKind::Dt(1), 3, 9);
    let res = minimal_resolution(&a, &m, 9, 6, ResolveOptions::default()).unwrap();
    assert_eq!(res.gens[0], [0, 1, 3, 9]);
    // filtration 1 through internal degree 4p−3: α_0, α_{2p−3}, α_{2k−1} (k = p..2p−2), α_{4p−4}
    assert_eq!(res.gens[1].iter().filter(|&&t| t <= 9).copied().collect::<Vec<_>>(), [1, 4, 6, 8, 9]);
    // filtration 2 through internal degree 4p−3: β_0 and β_{4p−5}
    assert_eq!(res.gens[2].iter().filter(|&&t| t <= 9).copied().collect::<Vec<_>>(), [2, 9]);
    assert!(res.check_minimal());
    res.check_exactness(&m).unwrap();
}

#[test]
fn truncated_modules_refuse_to_go_past_their_window() {
    let a = alg(3);
    let m = thom_module(ThomKind::Dt(1), 3, 9);
    assert!(matches!(
        minimal_resolution(&a, &m, 10, 2, ResolveOptions::default()),
        Err(SteenrodError::WindowExhausted { requested: 10, valid: 9 })
    ));
}

fn nat_injective(p: u32) {
    let a = alg(p);
    let cap = 4 * p - 3;
    let md = thom_module(ThomKind::Dt(1), p, cap);
    let s = sphere(p);
    let rd = minimal_resolution(&a, &md, cap, 3, ResolveOptions::default()).unwrap();
    let rs = minimal_resolution(&a, &s, cap, 3, ResolveOptions::default()).unwrap();
    let f = ModuleMap::bottom_cell(&md, &s);
    assert!(f.is_linear(&md, &s));
    let lift = lift_chain_map(&a, &f, &rd, &s, &rs).unwrap();
    assert!(lift.is_nonzero_on_ext(&rd, &rs, 2, cap), "p={p}");
    let v = permanent_cycle_check(&rd, i64::from(4 * p - 5), 2);
    assert!(v.class_present);
    assert!(v.incoming.is_empty());
    assert!(v.verdict.starts_with("no possible differential"), "{v:?}");
    // the bidegree named in the argument, filtration 0 at internal degree 4p−5, is empty too
    assert_eq!(rd.count(0, 4 * p - 5), 0);
}

#[test]
fn nat_injective_at_three() {
    nat_injective(3);
}

#[test]
fn nat_injective_at_five() {
    nat_injective(5);
}

#[test]
fn identity_lifts_to_identity_on_ext() {
    let a = alg(3);
    let m = thom_module(ThomKind::Dt(1), 3, 9);
    let r = minimal_resolution(&a, &m, 9, 4, ResolveOptions::default()).unwrap();
    let lift = lift_chain_map(&a, &ModuleMap::identity(&m), &r, &m, &r).unwrap();
    for n in 0..=4 {
        for t in 0..=9 {
            let e = lift.induced_ext(&r, &r, n, t);
            for (i, row) in e.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    assert_eq!(x, u32::from(i == j));
                }
            }
        }
    }
}

#[test]
fn circle_detects_stem_ten_at_three() {
    let a = alg(3);
    let ms = thom_module(ThomKind::S1, 3, 12);
    let s = sphere(3);
    let rm = minimal_resolution(&a, &ms, 12, 3, ResolveOptions::default()).unwrap();
    let rs = minimal_resolution(&a, &s, 12, 3, ResolveOptions::default()).unwrap();
    assert_eq!(rs.count(2, 12), 1);
    let lift = lift_chain_map(&a, &ModuleMap::bottom_cell(&ms, &s), &rm, &s, &rs).unwrap();
    assert!(lift.is_nonzero_on_ext(&rm, &rs, 2, 12));
}

#[test]
fn permanent_cycle_checks_on_the_sphere() {
    let a = alg(3);
    let r = minimal_resolution(&a, &sphere(3), 10, 10, ResolveOptions::default()).unwrap();
    for (stem, n) in [(0, 0), (0, 1)] {
        let v = permanent_cycle_check(&r, stem, n);
        assert_eq!(v.verdict, "no possible differential", "{v:?}");
    }
    let empty = permanent_cycle_check(&r, 5, 1);
    assert!(!empty.class_present);
    assert!(empty.verdict.starts_with("vacuous"));
}

#[test]
fn chart_json_shape() {
    let a = alg(3);
    let r = minimal_resolution(&a, &sphere(3), 5, 3, ResolveOptions::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.chart().to_json()).unwrap();
    assert_eq!(v["prime"], 3);
    assert_eq!(v["module"], "S");
    assert!(v["entries"].as_array().unwrap().iter().any(|e| e["filtration"] == 1 && e["internal_degree"] == 4 && e["dim"] == 1));
}

#[test]
fn dt_first_boundaries_use_odd_bottom_classes() {
    // the element (k−p+2)βP¹(ι) − (k−p+1)P¹β(ι) on the bottom class ι of internal degree
    // 2(k−p+1)−1 is a cycle that forces the generator at internal degree 2k
    for p in [3u32, 5] {
        let a = alg(p);
        let cap = 4 * p - 3;
        let m = thom_module(ThomKind::Dt(1), p, cap);
        let r = minimal_resolution(&a, &m, cap, 2, ResolveOptions::default()).unwrap();
        for k in p..=2 * p - 2 {
            let j = 2 * (k - p + 1) - 1;
            let h = r.gens[0].iter().position(|&t| t == j).unwrap();
            let c1 = (k - p + 2) % p;
            let c2 = (p - (k - p + 1) % p) % p;
            let mut x = r.generator_term(h, a.monomial("b P1").unwrap(), c1);
            x.extend(r.generator_term(h, a.monomial("P1 b").unwrap(), c2));
            x.retain(|_, c| *c != 0);
            assert_eq!(r.requires_new_generator(&a, &m, 0, 2 * k, &x).unwrap(), Some(true), "p={p} k={k}");
            // βP¹ on a class of internal degree k−p+1 lands in degree k+p, which is 2k only for k = p
            assert_eq!((k - p + 1) + 2 * p - 1 == 2 * k, k == p);
        }
    }
}
