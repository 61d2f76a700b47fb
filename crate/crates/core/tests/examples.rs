//! Worked examples for each module, computed by hand from the operation
//! tables and case definitions.

use std::collections::BTreeMap;

use kiteforge::algebra::Algebra;
use kiteforge::bcycle::BCycle;
use kiteforge::finalg::{corpus, Tables};
use kiteforge::kite::checks::{iota, omega};
use kiteforge::kite::homs::{kite_contravariant, lift_filter_hom, lift_lgroup_hom};
use kiteforge::kite::Sampler;
use kiteforge::lgrp::{int, LinearMap};
use kiteforge::terms::{eval, normalize_to_unit, parse_equation, parse_term, vee_neg_substitute, Equation, Term};
use kiteforge::variety::{dim_of_kite_family, dims_lcm};
use kiteforge::{
    AlgebraError, DivNat, FinFLw, GammaAlgebra, GammaElem, KiteAlgebra, KiteElem, KiteError, LAut, LVec, NormalFilter,
    Semidirect, SemidirectElem, TermError, VecGroup, Zone,
};

fn v(xs: &[i64]) -> LVec {
    LVec::from_ints(xs)
}

fn top(xs: &[i64]) -> KiteElem {
    KiteElem::top(v(xs))
}

fn bot(xs: &[i64]) -> KiteElem {
    KiteElem::bottom(v(xs))
}

fn zid() -> KiteAlgebra {
    KiteAlgebra::new(VecGroup::integer(1), LAut::identity(1)).unwrap()
}

fn swap() -> KiteAlgebra {
    KiteAlgebra::new(VecGroup::rational(2), LAut::permutation(vec![1, 0]).unwrap()).unwrap()
}

fn scale2() -> KiteAlgebra {
    KiteAlgebra::new(VecGroup::rational(1), LAut::scaling(vec![int(2)]).unwrap()).unwrap()
}

fn members(a: &FinFLw, f: &NormalFilter) -> Vec<String> {
    f.members().iter().map(|&x| a.element_name(x)).collect()
}

// terms

#[test]
fn term_parsing() {
    let t = parse_term("meet(x, negl(x))", &["x"]).unwrap();
    assert_eq!(t, Term::meet(Term::var("x"), Term::rdiv(Term::Zero, Term::var("x"))));
    assert_eq!(parse_term("1", &[]).unwrap(), Term::One);
    let o = parse_term("oplus(x,y)", &["x", "y"]).unwrap();
    let (x, y) = (Term::var("x"), Term::var("y"));
    assert_eq!(
        o,
        Term::ldiv(Term::mul(Term::rdiv(Term::Zero, x.clone()), Term::rdiv(Term::Zero, y)), Term::Zero)
    );
    assert!(matches!(parse_term("mul(x, z)", &["x"]), Err(TermError::UndeclaredVariable { .. })));
    assert!(matches!(parse_term("mul(x,", &["x"]), Err(TermError::Syntax { .. })));
    assert_eq!(parse_term(&o.to_string(), &["x", "y"]).unwrap(), o);
}

#[test]
fn term_evaluation() {
    let b = corpus::boolean2();
    let t = parse_term("meet(x, negl(x))", &["x"]).unwrap();
    let env = BTreeMap::from([("x".to_string(), 1usize)]);
    assert_eq!(eval(&t, &b, &env).unwrap(), 0);

    let k = zid();
    let t = parse_term("mul(x,y)", &["x", "y"]).unwrap();
    let env = BTreeMap::from([("x".to_string(), top(&[-1])), ("y".to_string(), top(&[-2]))]);
    assert_eq!(eval(&t, &k, &env).unwrap(), top(&[-3]));

    let l = corpus::luk3();
    let half = l.element("half").unwrap();
    let t = parse_term("mul(x,x)", &["x"]).unwrap();
    assert_eq!(eval(&t, &l, &BTreeMap::from([("x".to_string(), half)])).unwrap(), 0);
    assert_eq!(
        eval(&t, &l, &BTreeMap::new()),
        Err(TermError::MissingBinding("x".to_string()))
    );
}

#[test]
fn unit_normal_form() {
    let l = corpus::luk3();
    let e = parse_equation("mul(x,y)=mul(y,x)", &["x", "y"]).unwrap();
    let t = normalize_to_unit(&e);
    let env = BTreeMap::from([("x".to_string(), l.element("half").unwrap()), ("y".to_string(), l.top())]);
    assert_eq!(eval(&t, &l, &env).unwrap(), l.top());
    let refl = normalize_to_unit(&Equation::new(Term::var("x"), Term::var("x")));
    for x in l.elements() {
        assert_eq!(eval(&refl, &l, &BTreeMap::from([("x".to_string(), x)])).unwrap(), l.top());
    }
}

#[test]
fn relativization() {
    let x = Term::var("x");
    assert_eq!(vee_neg_substitute(&x), Term::join(x.clone(), Term::negl(x.clone())));
    let xx = vee_neg_substitute(&Term::mul(x.clone(), x.clone()));
    let r = Term::join(x.clone(), Term::negl(x));
    assert_eq!(xx, Term::mul(r.clone(), r));
    assert_eq!(vee_neg_substitute(&Term::One), Term::One);
}

// finite algebras

#[test]
fn validation() {
    assert!(FinFLw::validate(&corpus::boolean2().tables()).is_ok());
    assert!(FinFLw::validate(&corpus::luk3().tables()).is_ok());
    // 3-chain with ½·½ = 1: monotonicity fails, so no residuals
    let mut t: Tables = corpus::luk3().tables();
    t.mul[1][1] = 2;
    let err = FinFLw::validate(&t).unwrap_err();
    assert!(
        matches!(err, AlgebraError::NotResiduated { .. } | AlgebraError::NotAMonoid { .. }),
        "{err}"
    );
    let mut t = corpus::luk3().tables();
    t.meet[0][1] = 2;
    assert!(matches!(FinFLw::validate(&t), Err(AlgebraError::NotALattice { .. })));
}

#[test]
fn residuals() {
    let b = corpus::boolean2();
    assert_eq!(b.under(1, 0), 0);
    let l = corpus::luk3();
    assert_eq!(l.under(1, 0), 1);
    let g = corpus::godel3();
    let a = g.element("a").unwrap();
    assert_eq!(g.over(a, a), g.top());
}

#[test]
fn conjugation_monoids() {
    let b = corpus::boolean2();
    let m = b.conjugation_monoid();
    assert!(m.contains(&[0, 1]));
    assert!(m.len() <= 4);
    for a in [corpus::luk3(), corpus::godel3()] {
        let n = a.size();
        let m = a.conjugation_monoid();
        let id: Vec<usize> = a.elements().collect();
        assert!(m.contains(&id));
        assert!(m.len() <= n.pow(n as u32));
    }
}

#[test]
fn filters_and_quotients() {
    let l = corpus::luk3();
    let one = NormalFilter::trivial(&l);
    let half = l.element("half").unwrap();
    assert_eq!(members(&l, &l.filter_closure(&one, half).unwrap()), ["0", "half", "1"]);
    assert_eq!(members(&l, &l.filter_closure(&one, l.top()).unwrap()), ["1"]);
    let g = corpus::godel3();
    let a = g.element("a").unwrap();
    let fa = g.filter_closure(&NormalFilter::trivial(&g), a).unwrap();
    assert_eq!(members(&g, &fa), ["a", "1"]);

    let list = |x: &FinFLw| -> Vec<Vec<String>> { x.all_normal_filters().iter().map(|f| members(x, f)).collect() };
    assert_eq!(list(&corpus::boolean2()), [vec!["1"], vec!["0", "1"]]);
    assert_eq!(list(&l), [vec!["1"], vec!["0", "half", "1"]]);
    assert_eq!(list(&g), [vec!["1"], vec!["a", "1"], vec!["0", "a", "1"]]);

    assert!(g.quotient(&fa).unwrap().is_isomorphic(&corpus::boolean2()));
    assert!(corpus::boolean2().is_subdirectly_irreducible());
    assert!(l.is_subdirectly_irreducible());
    let b = corpus::boolean2();
    assert!(!b.product(&b).is_subdirectly_irreducible());
}

#[test]
fn perfectness() {
    let b = corpus::boolean2();
    let s = b.is_perfect().unwrap().unwrap();
    assert_eq!((s.ideal, members(&b, &s.filter)), (vec![0], vec!["1".to_string()]));
    let g = corpus::godel3();
    let s = g.is_perfect().unwrap().unwrap();
    assert_eq!((s.ideal, members(&g, &s.filter)), (vec![0], vec!["a".to_string(), "1".to_string()]));
    assert!(corpus::luk3().is_perfect().unwrap().is_none());
    let trivial = b.quotient(&NormalFilter::total(&b)).unwrap();
    assert_eq!(trivial.is_perfect().unwrap_err(), AlgebraError::TrivialAlgebra);
}

#[test]
fn perfgen() {
    assert!(corpus::boolean2().check_perfgen_identities().is_ok());
    assert!(corpus::godel3().check_perfgen_identities().is_ok());
    let l = corpus::luk3();
    assert!(l.check_perfgen_identities().is_err());
    for a in [corpus::boolean2(), corpus::godel3(), l] {
        assert!(a.perfgen_oracle_agree().unwrap());
    }
}

// ℓ-groups and automorphisms

#[test]
fn automorphisms() {
    let sw = LAut::permutation(vec![1, 0]).unwrap();
    assert_eq!(sw.apply(&v(&[3, 5])), v(&[5, 3]));
    let s2 = LAut::scaling(vec![int(2)]).unwrap();
    assert_eq!(s2.apply(&v(&[3])), v(&[6]));
    assert!(sw.power(2).is_identity());
    assert!(sw.power(0).is_identity());
    assert_eq!(LAut::identity(3).dimension(), 1);
    assert_eq!(sw.dimension(), 2);
    assert_eq!(s2.dimension(), 0);
    assert!(LAut::identity(2).try_apply(&v(&[1])).is_err());
}

#[test]
fn semidirect_products() {
    let id = Semidirect::new(VecGroup::rational(2), LAut::identity(2)).unwrap();
    let a = SemidirectElem::new(v(&[1, 2]), 1);
    let b = SemidirectElem::new(v(&[3, 4]), 1);
    assert_eq!(id.mul(&a, &b), SemidirectElem::new(v(&[4, 6]), 2));
    let sw = Semidirect::new(VecGroup::rational(2), LAut::permutation(vec![1, 0]).unwrap()).unwrap();
    assert_eq!(sw.mul(&a, &b), SemidirectElem::new(v(&[5, 5]), 2));
    assert_eq!(sw.inv(&SemidirectElem::new(v(&[1, 2]), 0)), SemidirectElem::new(v(&[-1, -2]), 0));
}

#[test]
fn gamma_algebra() {
    let g = GammaAlgebra::new(VecGroup::integer(1), LAut::identity(1)).unwrap();
    let zero = GammaElem::new(SemidirectElem::new(v(&[0]), -1)).unwrap();
    assert_eq!(g.mul(&zero, &zero), zero);
    assert_eq!(g.zero(), zero);
    let p = |x: i64| GammaElem::new(SemidirectElem::new(v(&[x]), 0)).unwrap();
    assert_eq!(g.mul(&p(-1), &p(-2)), p(-3));
    assert_eq!(g.one(), p(0));
    assert!(GammaElem::new(SemidirectElem::new(v(&[1]), 0)).is_err());
    assert!(GammaElem::new(SemidirectElem::new(v(&[0]), -2)).is_err());
}

// B-cycles

#[test]
fn bcycles() {
    assert_eq!(BCycle::z_n(1).unwrap().beta(), &[0]);
    assert_eq!(BCycle::z_n(2).unwrap().beta(), &[1, 0]);
    assert_eq!(BCycle::z_n(6).unwrap().apply(5), 0);
    let (z2, z3) = (BCycle::z_n(2).unwrap(), BCycle::z_n(3).unwrap());
    let p = z2.product(&z3);
    assert_eq!(p.size(), 6);
    assert_eq!(p.cycle_type(), vec![6]);
    let z1 = BCycle::z_n(1).unwrap();
    assert!(p.is_hom(&[0; 6], &z1));
    assert!(!z2.is_hom(&[0, 0], &z2));
    assert_eq!(BCycle::z_n(6).unwrap().dimension(), 6);
    assert_eq!(p.dimension(), 6);
    assert_eq!(BCycle::from_cycle_type(&[2, 2]).unwrap().dimension(), 2);
    assert_eq!(BCycle::from_cycle_type(&[2, 3]).unwrap().dimension(), 6);

    let f = BCycle::unroll_hom(2, &z2).unwrap();
    assert_eq!(f[z2.size()], 1, "f(1, 0) = β(0) = 1");
    let b23 = BCycle::from_cycle_type(&[2, 3]).unwrap();
    let f = BCycle::unroll_hom(6, &b23).unwrap();
    assert!(BCycle::unroll_domain(6, &b23).unwrap().is_hom(&f, &b23));
    assert!(BCycle::unroll_hom(4, &z3).is_err());

    assert_eq!(z2.induced_aut(&VecGroup::rational(1)), LAut::permutation(vec![1, 0]).unwrap());
    assert!(z1.induced_aut(&VecGroup::rational(1)).is_identity());
    for n in 1..=12 {
        assert_eq!(BCycle::z_n(n).unwrap().induced_aut(&VecGroup::rational(1)).dimension(), n as u64);
    }
}

// kites

#[test]
fn kite_operations() {
    let k = zid();
    assert_eq!(k.mul(&top(&[-1]), &top(&[-2])), top(&[-3]));
    assert_eq!(k.mul(&bot(&[3]), &top(&[-1])), bot(&[2]));
    assert_eq!(k.mul(&bot(&[1]), &bot(&[5])), k.zero());
    assert_eq!(k.meet(&top(&[-1]), &bot(&[7])), bot(&[7]));
    assert_eq!(k.join(&top(&[-1]), &bot(&[7])), top(&[-1]));
    assert_eq!(k.negl(&top(&[-2])), bot(&[2]));
    assert_eq!(scale2().negr(&top(&[-1])), bot(&[2]));
    assert_eq!(k.negl(&k.zero()), k.one());
    assert!(k.leq(&bot(&[1_000_000]), &top(&[-1_000_000])));
    assert_eq!(k.double_tilde(&top(&[-1])), top(&[-1]));
    assert_eq!(
        k.element(Zone::Top, v(&[1])).unwrap_err(),
        KiteError::WrongCone { zone: Zone::Top, value: "[1]".into() }
    );
}

#[test]
fn kite_negations_follow_the_case_formulas() {
    let k = swap();
    let x = top(&[-1, 0]);
    assert_eq!(k.negl(&x), bot(&[1, 0]));
    assert_eq!(k.negr(&x), bot(&[0, 1]));
    let y = bot(&[2, 3]);
    assert_eq!(k.negl(&y), top(&[-3, -2]));
    assert_eq!(k.negr(&y), top(&[-2, -3]));
}

#[test]
fn kite_specs() {
    let over: KiteAlgebra = "kite{bcycle:zn:2; base:Q}".parse().unwrap();
    assert_eq!(over.group(), swap().group());
    assert_eq!(over.lambda(), swap().lambda());
    let s: KiteAlgebra = "kite{group:Q^1; aut:perm:(0);scale:2}".parse().unwrap();
    assert_eq!(s, scale2());
    assert_eq!(s.dim_pmv(), 0);
    for n in 1..=12 {
        let k = KiteAlgebra::over_bcycle(&BCycle::z_n(n).unwrap(), &VecGroup::integer(1));
        assert_eq!(k.dim_pmv(), n as u64);
        assert_eq!(k.spec_string().parse::<KiteAlgebra>().unwrap(), k);
    }
}

#[test]
fn omega_and_iota_values() {
    let k = zid();
    assert_eq!(omega(&k, &bot(&[3])), bot(&[3]));
    assert_eq!(omega(&k, &top(&[-2])), top(&[-2]));
    assert_eq!(omega(&k, &k.zero()), bot(&[0]));
    assert_eq!(iota(&k.zero()), SemidirectElem::new(v(&[0]), -1));
    assert_eq!(iota(&k.one()), SemidirectElem::new(v(&[0]), 0));
}

#[test]
fn kite_homomorphisms() {
    let q2 = KiteAlgebra::new(VecGroup::rational(2), LAut::identity(2)).unwrap();
    let q1 = KiteAlgebra::new(VecGroup::rational(1), LAut::identity(1)).unwrap();
    let proj = LinearMap::parse("1,0").unwrap();
    let h = lift_lgroup_hom(&proj, &q2, &q1).unwrap();
    assert!(h.check_hom(Sampler::default(), 1, 500).passed());
    let idh = lift_lgroup_hom(&LinearMap::identity(2), &q2, &q2).unwrap();
    assert_eq!(idh.apply(&bot(&[4, 5])), bot(&[4, 5]));
    assert!(matches!(lift_lgroup_hom(&proj, &swap(), &q1), Err(KiteError::Commutation { .. })));

    let three = LinearMap::scalar(1, int(3));
    let f = lift_filter_hom(&three, &q1, &q1, Sampler::default(), 0, 500).unwrap();
    assert_eq!(f.apply(&bot(&[2])), bot(&[6]));
    let fid = lift_filter_hom(&LinearMap::identity(1), &q1, &q1, Sampler::default(), 0, 100).unwrap();
    assert_eq!(fid.apply(&bot(&[7])), bot(&[7]));
    let collapse = LinearMap::parse("1,0;1,0").unwrap();
    assert!(matches!(
        lift_filter_hom(&collapse, &swap(), &swap(), Sampler::default(), 0, 500),
        Err(KiteError::DoubleTildeCommutation { .. })
    ));

    let z = VecGroup::integer(1);
    let (z2, z3) = (BCycle::z_n(2).unwrap(), BCycle::z_n(3).unwrap());
    let p = z2.product(&z3);
    let h = kite_contravariant(&z2.projection_left(&z3), &p, &z2, &z).unwrap();
    assert!(h.check_hom(Sampler::default(), 2, 500).passed());
    assert_eq!(h.apply(&top(&[-1, -2])), top(&[-1, -1, -1, -2, -2, -2]));
    let id = kite_contravariant(&[0, 1], &z2, &z2, &z).unwrap();
    assert_eq!(id.apply(&bot(&[3, 5])), bot(&[3, 5]));
}

// varieties

#[test]
fn variety_dimensions() {
    assert_eq!(DivNat(4).join(DivNat(6)), DivNat(12));
    assert_eq!(DivNat(4).meet(DivNat(6)), DivNat(2));
    assert_eq!(dims_lcm(&[DivNat(2), DivNat(3)]).unwrap(), DivNat(6));
    assert_eq!(dims_lcm(&[DivNat(scale2().dim_pmv())]).unwrap(), DivNat(0));
    assert_eq!(dims_lcm(&[]).unwrap(), DivNat(1));
    assert_eq!(
        dim_of_kite_family(&["kite{bcycle:zn:2; base:Z}", "kite{bcycle:zn:3; base:Z}"]).unwrap(),
        DivNat(6)
    );
    assert_eq!(dim_of_kite_family(&["kite{group:Q^2; aut:id}"]).unwrap(), DivNat(1));
}
