use obstruction::em_space::*;
use obstruction::group_rings::Coefficients;
use obstruction::AbGroup;

const PRIMES: [u32; 3] = [3, 5, 7];

fn table(s: Space, c: Coefficients, p: u32) -> EMTable {
    k_table(s, p, c).unwrap()
}

fn names(e: &EmEntry) -> Vec<String> {
    e.basis.iter().map(Class::pretty).collect()
}

#[test]
fn k_mod_p_facts() {
    for p in PRIMES {
        let t = table(Space::K, Coefficients::ModP, p);
        assert_eq!(t.dim(0).unwrap(), 1);
        for i in 1..=2 * p - 2 {
            assert_eq!(t.dim(i).unwrap(), 0);
        }
        assert_eq!(names(t.entry(2 * p - 1).unwrap()), ["z̄₁", "z̄₂"]);
        for i in 2 * p..=4 * p - 4 {
            assert_eq!(t.dim(i).unwrap(), 0);
        }
        assert_eq!(names(t.entry(4 * p - 3).unwrap()), ["P¹z̄₁", "P¹z̄₂"]);
        let top = t.entry(4 * p - 2).unwrap();
        assert_eq!(names(top), ["z̄₁∪z̄₂", "βP¹z̄₁", "βP¹z̄₂"]);
        assert_eq!(top.group.to_string(), format!("Z/{p} ⊕ Z/{p} ⊕ Z/{p}"));
        assert_eq!(t.group(4 * p - 1), Err(EmError::NotDetermined { degree: 4 * p - 1 }));
        assert_eq!(t.group(4 * p), Err(EmError::OutOfRange { degree: 4 * p, top: 4 * p - 1 }));
    }
}

#[test]
fn k_integral_facts() {
    for p in PRIMES {
        let t = table(Space::K, Coefficients::Integral, p);
        assert_eq!(t.group(0).unwrap().to_string(), "Z");
        assert_eq!(t.group(2 * p - 1).unwrap().to_string(), "Z ⊕ Z");
        for i in (1..=2 * p - 2).chain(2 * p..=4 * p - 3) {
            assert!(t.group(i).unwrap().is_trivial(), "p={p} i={i}");
        }
        let top = t.entry(4 * p - 2).unwrap();
        assert_eq!(top.group.to_string(), format!("Z ⊕ Z/{p} ⊕ Z/{p}"));
        assert_eq!(names(top), ["z₁∪z₂", "δP¹z̄₁", "δP¹z̄₂"]);
        assert_eq!(t.group(4 * p - 1).unwrap().p_torsion_rank(p as u64), 0);
        assert_eq!(t.full_group(2 * p - 1).unwrap().free_rank(), 2);
        assert_eq!(
            t.full_group(4 * p - 2),
            Err(EmError::PrimeToPUnknown { degree: 4 * p - 2 })
        );
    }
}

#[test]
fn kp_mod_p_facts() {
    for p in PRIMES {
        let t = table(Space::Kp, Coefficients::ModP, p);
        let dims: Vec<usize> = (0..=4 * p - 1).map(|i| t.dim(i).unwrap()).collect();
        for (i, d) in dims.iter().enumerate() {
            let i = i as u32;
            let want = match i {
                0 => 1,
                _ if i == 2 * p - 1 || i == 2 * p || i == 4 * p - 3 => 2,
                _ if i == 4 * p - 2 => 5,
                _ if i == 4 * p - 1 => 6,
                _ => 0,
            };
            assert_eq!(*d, want, "p={p} i={i}");
        }
        assert_eq!(names(t.entry(2 * p).unwrap()), ["βι₁", "βι₂"]);
        assert_eq!(
            names(t.entry(4 * p - 2).unwrap()),
            ["ι₁∪ι₂", "βP¹ι₁", "P¹βι₁", "βP¹ι₂", "P¹βι₂"]
        );
    }
}

#[test]
fn generator_degrees_and_closure() {
    for p in PRIMES {
        for (s, c) in [
            (Space::Kp, Coefficients::ModP),
            (Space::K, Coefficients::ModP),
            (Space::K, Coefficients::Integral),
        ] {
            let t = table(s, c, p);
            t.check_degrees().unwrap();
            t.check_steenrod_closure().unwrap();
        }
    }
}

#[test]
fn closure_detects_a_missing_class() {
    let mut t = table(Space::Kp, Coefficients::ModP, 3);
    let e = t.entries.get_mut(&6).unwrap();
    e.basis.pop();
    assert!(matches!(t.check_steenrod_closure(), Err(EmError::NotClosed { .. })));
}

#[test]
fn bockstein_counting_rule() {
    for p in PRIMES {
        let fp = table(Space::K, Coefficients::ModP, p);
        let z = table(Space::K, Coefficients::Integral, p);
        let r = bockstein_consistency(&fp, &z).unwrap();
        let row = |d: u32| r.rows.iter().find(|x| x.degree == d).unwrap().clone();
        let bottom = row(2 * p - 1);
        assert_eq!((bottom.mod_p_dim, bottom.tensor_rank, bottom.next_p_torsion), (2, 2, 0));
        for d in 2 * p..=4 * p - 4 {
            let x = row(d);
            assert_eq!((x.mod_p_dim, x.tensor_rank, x.next_p_torsion), (0, 0, 0));
        }
        // 3 = (1 free + 2 torsion) + 0
        let top = row(4 * p - 2);
        assert_eq!((top.mod_p_dim, top.tensor_rank, top.next_p_torsion), (3, 3, 0));
        let below = row(4 * p - 3);
        assert_eq!((below.mod_p_dim, below.tensor_rank, below.next_p_torsion), (2, 0, 2));
        assert_eq!(r.forced_torsion_free, [4 * p - 1]);
    }
}

#[test]
fn bockstein_counting_rule_names_the_failing_degree() {
    let fp = table(Space::K, Coefficients::ModP, 5);
    let mut z = table(Space::K, Coefficients::Integral, 5);
    z.entries.get_mut(&18).unwrap().group = AbGroup::new([("z1*z2", 0u64), ("d(P(zb1))", 5)]);
    assert!(matches!(
        bockstein_consistency(&fp, &z),
        Err(EmError::InconsistentTables { degree: 17, .. })
    ));
}

#[test]
fn homology_is_the_formal_dual() {
    for p in PRIMES {
        let z = table(Space::K, Coefficients::Integral, p);
        let h = homology_dual(&z).unwrap();
        assert_eq!(h[&0].to_string(), "Z");
        for i in 1..2 * p - 1 {
            assert!(h[&i].is_trivial());
        }
        assert_eq!(h[&(2 * p - 1)].to_string(), "Z ⊕ Z");
        for i in 2 * p..4 * p - 3 {
            assert!(h[&i].is_trivial(), "p={p} i={i}");
        }
        assert_eq!(h[&(4 * p - 3)].to_string(), format!("Z/{p} ⊕ Z/{p}"));
        let fp = homology_dual(&table(Space::K, Coefficients::ModP, p)).unwrap();
        assert_eq!(fp[&(2 * p - 1)].tensor_rank(p as u64), 2);
        assert_eq!(fp[&(4 * p - 3)].tensor_rank(p as u64), 2);
        // mod-p homology again satisfies the counting rule, read downward
        for i in 0..4 * p - 2 {
            let lower = if i == 0 { AbGroup::trivial() } else { h[&(i - 1)].clone() };
            assert_eq!(
                fp[&i].tensor_rank(p as u64),
                h[&i].tensor_rank(p as u64) + lower.p_torsion_rank(p as u64),
                "p={p} i={i}"
            );
        }
    }
}
