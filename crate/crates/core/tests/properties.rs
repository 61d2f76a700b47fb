use std::collections::BTreeMap;

use proptest::prelude::*;

use kiteforge::algebra::Algebra;
use kiteforge::bcycle::BCycle;
use kiteforge::finalg::{corpus, enumerate_flw};
use kiteforge::kite::checks::{check_axioms, residuated_laws};
use kiteforge::kite::Sampler;
use kiteforge::lgrp::{ratio, Rational};
use kiteforge::terms::{eval, normalize_to_unit, parse_term, vee_neg_substitute, Equation, Term};
use kiteforge::{DivNat, FinFLw, KiteAlgebra, KiteElem, LAut, LVec, Semidirect, SemidirectElem, VecGroup};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=8).prop_map(|(p, q)| ratio(p, q))
}

fn lvec(k: usize) -> impl Strategy<Value = LVec> {
    proptest::collection::vec(rational(), k).prop_map(LVec)
}

fn laut(k: usize) -> impl Strategy<Value = LAut> {
    let perm = Just((0..k).collect::<Vec<usize>>()).prop_shuffle();
    let scales = proptest::collection::vec(prop_oneof![3 => Just(ratio(1, 1)), 1 => (1i64..=4, 1i64..=4).prop_map(|(p, q)| ratio(p, q))], k);
    (perm, scales).prop_map(|(p, s)| LAut::new(p, s).unwrap())
}

fn kite_elem(k: usize) -> impl Strategy<Value = KiteElem> {
    (any::<bool>(), lvec(k)).prop_map(|(t, v)| {
        let abs = LVec(v.0.iter().map(|x| if *x < ratio(0, 1) { -x.clone() } else { x.clone() }).collect());
        if t {
            KiteElem::top(-&abs)
        } else {
            KiteElem::bottom(abs)
        }
    })
}

fn term(vars: &'static [&'static str]) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::One),
        proptest::sample::select(vars).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        (0usize..5, inner.clone(), inner).prop_map(|(op, l, r)| match op {
            0 => Term::meet(l, r),
            1 => Term::join(l, r),
            2 => Term::mul(l, r),
            3 => Term::ldiv(l, r),
            _ => Term::rdiv(l, r),
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn printing_then_parsing_is_identity(t in term(&["x", "y", "z1"])) {
        prop_assert_eq!(parse_term(&t.to_string(), &["x", "y", "z1"]).unwrap(), t);
    }

    #[test]
    fn relativization_commutes_with_evaluation(t in term(&["x", "y"]), xs in (0usize..3, 0usize..3)) {
        for a in [corpus::luk3(), corpus::godel3()] {
            let env = BTreeMap::from([("x".to_string(), xs.0), ("y".to_string(), xs.1)]);
            let rel: BTreeMap<String, usize> = env.iter().map(|(k, &v)| (k.clone(), a.jn(v, a.neg_left(v)))).collect();
            prop_assert_eq!(eval(&vee_neg_substitute(&t), &a, &env).unwrap(), eval(&t, &a, &rel).unwrap());
        }
    }

    #[test]
    fn relativization_commutes_with_kite_evaluation(t in term(&["x", "y"]), x in kite_elem(2), y in kite_elem(2)) {
        let k = KiteAlgebra::new(VecGroup::rational(2), LAut::permutation(vec![1, 0]).unwrap()).unwrap();
        let env = BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)]);
        let rel: BTreeMap<String, KiteElem> = env.iter().map(|(n, v)| (n.clone(), k.join(v, &k.negl(v)))).collect();
        prop_assert_eq!(eval(&vee_neg_substitute(&t), &k, &env).unwrap(), eval(&t, &k, &rel).unwrap());
    }

    #[test]
    fn lattice_group_decomposition(x in lvec(3)) {
        prop_assert_eq!(&x.join_zero() + &x.meet_zero(), x);
    }

    #[test]
    fn automorphisms_preserve_structure(l in laut(3), x in lvec(3), y in lvec(3)) {
        prop_assert_eq!(l.apply(&x.meet(&y)), l.apply(&x).meet(&l.apply(&y)));
        prop_assert_eq!(l.apply(&x.join(&y)), l.apply(&x).join(&l.apply(&y)));
        prop_assert_eq!(l.apply(&(&x + &y)), &l.apply(&x) + &l.apply(&y));
        prop_assert!(l.apply(&LVec::zero(3)).is_zero());
        prop_assert_eq!(l.invert().apply(&l.apply(&x)), x.clone());
        prop_assert_eq!(l.compose(&l.invert()).unwrap(), LAut::identity(3));
    }

    #[test]
    fn powers_add(l in laut(3), m in -5i64..=5, n in -5i64..=5, x in lvec(3)) {
        prop_assert_eq!(l.power(m).compose(&l.power(n)).unwrap(), l.power(m + n));
        prop_assert_eq!(l.power(m).apply(&l.power(n).apply(&x)), l.power(m + n).apply(&x));
    }

    #[test]
    fn dimension_is_certified(l in laut(4)) {
        let d = l.dimension();
        if d > 0 {
            prop_assert!(l.power(d as i64).is_identity());
            for e in 1..d {
                if d % e == 0 {
                    prop_assert!(!l.power(e as i64).is_identity());
                }
            }
        } else {
            for n in 1..=64 {
                prop_assert!(!l.power(n).is_identity());
            }
            prop_assert!(l.unbalanced_cycle().is_some());
        }
    }

    #[test]
    fn semidirect_group_laws(l in laut(2), xs in proptest::collection::vec((lvec(2), -3i64..=3), 3)) {
        let g = Semidirect::new(VecGroup::rational(2), l).unwrap();
        let e: Vec<SemidirectElem> = xs.into_iter().map(|(x, m)| SemidirectElem::new(x, m)).collect();
        let (a, b, c) = (&e[0], &e[1], &e[2]);
        prop_assert_eq!(g.mul(&g.mul(a, b), c), g.mul(a, &g.mul(b, c)));
        prop_assert_eq!(g.mul(a, &g.inv(a)), g.identity());
        prop_assert_eq!(g.mul(&g.inv(a), a), g.identity());
        if g.leq(a, b) {
            prop_assert!(g.leq(&g.mul(c, a), &g.mul(c, b)));
            prop_assert!(g.leq(&g.mul(a, c), &g.mul(b, c)));
        }
        prop_assert!(g.leq(&g.meet(a, b), a) && g.leq(a, &g.join(a, b)));
    }

    #[test]
    fn random_kites_are_residuated(l in laut(3), x in kite_elem(3), y in kite_elem(3), z in kite_elem(3)) {
        let k = KiteAlgebra::new(VecGroup::rational(3), l).unwrap();
        let xs = [x, y, z];
        for law in residuated_laws::<KiteAlgebra>() {
            prop_assert!((law.holds)(&k, &xs), "{}", law.name);
        }
    }

    #[test]
    fn divisibility_lattice_laws(a in 0u64..100_000, b in 0u64..100_000, c in 0u64..1_000) {
        let (a, b, c) = (DivNat(a), DivNat(b), DivNat(c));
        prop_assert_eq!(a.join(b), b.join(a));
        prop_assert_eq!(a.meet(b), b.meet(a));
        prop_assert_eq!(a.meet(a.join(b)), a);
        prop_assert_eq!(a.join(a.meet(b)), a);
        prop_assert_eq!(a.meet(b).meet(c), a.meet(b.meet(c)));
        prop_assert_eq!(a.leq(b), a.join(b) == b);
        prop_assert_eq!(a.leq(b), a.meet(b) == a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn seeded_axiom_runs_pass_for_random_automorphisms(l in laut(3), seed in any::<u64>()) {
        let k = KiteAlgebra::new(VecGroup::rational(3), l).unwrap();
        let r = check_axioms(&k, Sampler::default(), seed, 200);
        prop_assert!(r.passed(), "{}", r.to_json());
    }
}

/// `s = t` holds exactly when `((s\t) ∧ (t\s)) ∧ 1 = 1`. The truth of both
/// sides depends only on the values of `s` and `t`, so it is checked on every
/// pair of values, and literally on every equation between terms of depth
/// at most one in two variables.
#[test]
fn unit_normal_form_is_sound_on_the_corpus() {
    let (s, t) = (Term::var("s"), Term::var("t"));
    let generic = normalize_to_unit(&Equation::new(s, t));
    let mut leaves = vec![Term::Zero, Term::One, Term::var("x"), Term::var("y")];
    let mut shallow = leaves.clone();
    for l in &leaves {
        for r in &leaves {
            for op in [Term::meet, Term::join, Term::mul, Term::ldiv, Term::rdiv] {
                shallow.push(op(l.clone(), r.clone()));
            }
        }
    }
    leaves.clear();
    let algebras: Vec<FinFLw> = (2..=4).flat_map(|n| enumerate_flw(n).unwrap()).collect();
    for a in &algebras {
        for p in a.elements() {
            for q in a.elements() {
                let env = BTreeMap::from([("s".to_string(), p), ("t".to_string(), q)]);
                assert_eq!(eval(&generic, a, &env).unwrap() == a.top(), p == q);
            }
        }
        for x in a.elements() {
            for y in a.elements() {
                let env = BTreeMap::from([("x".to_string(), x), ("y".to_string(), y)]);
                let vals: Vec<usize> = shallow.iter().map(|t| eval(t, a, &env).unwrap()).collect();
                for (i, l) in shallow.iter().enumerate() {
                    for (j, r) in shallow.iter().enumerate() {
                        let e = normalize_to_unit(&Equation::new(l.clone(), r.clone()));
                        assert_eq!(eval(&e, a, &env).unwrap() == a.top(), vals[i] == vals[j]);
                    }
                }
            }
        }
    }
}

#[test]
fn bcycle_dimension_matches_automorphism_dimension() {
    fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        (1..=max.min(n))
            .rev()
            .flat_map(|p| {
                partitions(n - p, p).into_iter().map(move |mut rest| {
                    rest.insert(0, p);
                    rest
                })
            })
            .collect()
    }
    for size in 1..=8 {
        for ct in partitions(size, size) {
            let b = BCycle::from_cycle_type(&ct).unwrap();
            let aut = b.induced_aut(&VecGroup::rational(1));
            assert_eq!(b.dimension(), aut.dimension(), "{ct:?}");
            if size <= 6 {
                let n = b.dimension();
                let f = BCycle::unroll_hom(n, &b).unwrap();
                assert!(BCycle::unroll_domain(n, &b).unwrap().is_hom(&f, &b), "{ct:?}");
            }
        }
    }
    let (z2, z3) = (BCycle::z_n(2).unwrap(), BCycle::z_n(3).unwrap());
    let p = z2.product(&z3);
    assert!(p.is_hom(&z2.projection_left(&z3), &z2));
    assert!(p.is_hom(&z2.projection_right(&z3), &z3));
}
