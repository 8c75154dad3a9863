use obstruction::finite_groups::gl2::det;
use obstruction::finite_groups::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn presentation_relations_hold() {
    for p in [3, 5, 7] {
        let g = ExtraspecialGroup::new(p).unwrap();
        assert!(g.check_presentation(), "p = {p}");
        let ab = g.mul(g.a(), g.b());
        assert_eq!(ab, g.mul(g.mul(g.b(), g.a()), g.c()));
    }
    assert_eq!(ExtraspecialGroup::new(4).unwrap_err(), GroupError::BadPrime(4));
    assert!(ExtraspecialGroup::new(2).is_err());
}

#[test]
fn closed_form_agrees_with_matrix_model_everywhere_at_three() {
    let g = ExtraspecialGroup::new(3).unwrap();
    let all = g.elements();
    for &x in &all {
        for &y in &all {
            assert_eq!(g.mul(x, y), g.mul_formula(x, y));
        }
    }
}

#[test]
fn associativity_exhaustive_at_three() {
    let g = ExtraspecialGroup::new(3).unwrap();
    let all = g.elements();
    for &x in &all {
        for &y in &all {
            let xy = g.mul(x, y);
            for &z in &all {
                assert_eq!(g.mul(xy, z), g.mul(x, g.mul(y, z)));
            }
        }
    }
}

#[test]
fn associativity_random_triples() {
    for p in [5u32, 7] {
        let g = ExtraspecialGroup::new(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(u64::from(p));
        let draw = |rng: &mut ChaCha8Rng| Element {
            i: rng.gen_range(0..p),
            j: rng.gen_range(0..p),
            k: rng.gen_range(0..p),
        };
        for _ in 0..100_000 {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
            assert_eq!(g.mul(x, y), g.mul_formula(x, y));
        }
    }
}

#[test]
fn exponent_identity_and_center() {
    for p in [3, 5, 7] {
        let g = ExtraspecialGroup::new(p).unwrap();
        for x in g.elements() {
            assert_eq!(g.pow(x, p), g.identity());
            assert_eq!(g.mul(g.identity(), x), x);
        }
        let z = g.center();
        assert_eq!(z.len(), p as usize);
        assert!(z.iter().all(|e| e.i == 0 && e.j == 0));
    }
}

#[test]
fn class_equation() {
    for p in [3u32, 5] {
        let g = ExtraspecialGroup::new(p).unwrap();
        let sizes = g.class_sizes();
        assert_eq!(sizes.iter().sum::<usize>(), g.order());
        // p central classes and p² − 1 classes of size p
        assert_eq!(sizes.iter().filter(|&&s| s == 1).count(), p as usize);
        assert_eq!(sizes.iter().filter(|&&s| s == p as usize).count(), (p * p - 1) as usize);
    }
}

#[test]
fn census_shape() {
    for p in [3usize, 5, 7] {
        let g = ExtraspecialGroup::new(p as u32).unwrap();
        let census = cyclic_subgroup_census(&g);
        let trivial: Vec<_> = census.iter().filter(|r| r.order == 1).collect();
        assert_eq!(trivial.len(), 1);
        assert_eq!((trivial[0].normalizer_order, trivial[0].centralizer_order), (p.pow(3), p.pow(3)));
        let center: Vec<_> = census.iter().filter(|r| r.order > 1 && r.central).collect();
        assert_eq!(center.len(), 1);
        assert_eq!((center[0].normalizer_order, center[0].centralizer_order), (p.pow(3), p.pow(3)));
        let rest: Vec<_> = census.iter().filter(|r| !r.central).collect();
        // p² + p non-central subgroups of order p, in classes of size p
        assert_eq!(rest.len(), p + 1);
        for r in &rest {
            assert_eq!((r.order, r.normalizer_order, r.centralizer_order), (p, p * p, p * p));
            assert_eq!(r.class_size, p);
        }
        assert!(census.iter().all(|r| r.order != p * p));
        assert!(census.iter().all(|r| p.pow(3) % r.order == 0 && r.normalizer_order % r.centralizer_order == 0));
        // every cyclic subgroup appears in exactly one class
        let total: usize = census.iter().map(|r| r.class_size).sum();
        assert_eq!(total, 1 + (p.pow(3) - 1) / (p - 1));
    }
}

#[test]
fn oliver_order_values() {
    for (p, want) in [(3u32, 9u64), (5, 25), (7, 49)] {
        let r = oliver_order(p).unwrap();
        assert_eq!(r.order, want);
        assert_eq!(r.product, (want * want).to_string());
        assert_eq!(r.trivial_factor, u64::from(p).pow(3).to_string());
        assert_eq!(r.center_factor, p.to_string());
        assert!(r.non_central_factors.iter().all(|f| f == "1"));
    }
}

fn basis_vec(dim: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = 1;
    v
}

#[test]
fn transfer_seed_spans_everything() {
    for p in [3u32, 5, 7] {
        let m = GL2Module::new(p, p);
        let seed = m
            .parse(&format!("beta^{p} - beta*alpha^{}", p - 1))
            .unwrap();
        assert_eq!(gl2_submodule_span(p, &[seed]), (p + 1) as usize, "p = {p}");
    }
}

#[test]
fn frobenius_twist_is_two_dimensional() {
    for p in [3u32, 5, 7] {
        let m = GL2Module::new(p, p);
        let seeds = vec![m.parse(&format!("alpha^{p}")).unwrap(), m.parse(&format!("beta^{p}")).unwrap()];
        assert_eq!(gl2_submodule_span(p, &seeds), 2);
        // either pure power alone already reaches the whole twist
        assert_eq!(gl2_submodule_span(p, &seeds[..1]), 2);
    }
}

#[test]
fn degenerate_seeds() {
    for p in [3u32, 5, 7] {
        let dim = (p + 1) as usize;
        assert_eq!(gl2_submodule_span(p, &[vec![0; dim]]), 0);
        let full: Vec<_> = (0..dim).map(|i| basis_vec(dim, i)).collect();
        assert_eq!(gl2_submodule_span(p, &full), dim);
    }
}

#[test]
fn generators_suffice_for_closure() {
    let p = 5;
    let m = GL2Module::new(p, p);
    let all = gl2_elements(p);
    let seed = m.parse("beta^5 - beta*alpha^4").unwrap();
    let gens: Vec<Mat2> = vec![[[2, 0], [0, 1]], [[p - 1, 1], [p - 1, 0]]];
    assert_eq!(span_under(&m, &gens, &[seed.clone()]), span_under(&m, &all, &[seed]));
    assert!(all.iter().all(|g| det(g, p) != 0));
}

#[test]
fn parse_rejects_wrong_degree() {
    let m = GL2Module::new(3, 3);
    assert!(m.parse("alpha^2").is_none());
    assert_eq!(m.parse("2*alpha^3 + beta^3").unwrap(), vec![2, 0, 0, 1]);
}

fn all_gl2() -> &'static [(u32, Vec<Mat2>)] {
    static ALL: std::sync::OnceLock<Vec<(u32, Vec<Mat2>)>> = std::sync::OnceLock::new();
    ALL.get_or_init(|| [3, 5, 7].iter().map(|&p| (p, gl2_elements(p))).collect())
}

proptest! {
    #[test]
    fn action_is_a_homomorphism(which in 0usize..3, a in 0usize..2016, b in 0usize..2016, i in 0usize..8) {
        let (p, all) = &all_gl2()[which];
        let m = GL2Module::new(*p, *p);
        let s = (i % m.dim(), all[a % all.len()], all[b % all.len()]);
        prop_assert!(m.is_homomorphism_on(&[s]));
    }

    #[test]
    fn orbit_span_is_action_closed(p in prop::sample::select(vec![3u32, 5]), coeffs in prop::collection::vec(0u32..5, 6)) {
        let dim = (p + 1) as usize;
        let seed: Vec<u32> = coeffs.iter().take(dim).map(|c| c % p).collect();
        let d = gl2_submodule_span(p, &[seed]);
        // the only submodules are 0, the twist and everything
        prop_assert!(d == 0 || d == 2 || d == dim);
    }
}
