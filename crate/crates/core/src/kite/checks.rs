//! Sampled verification harnesses. Every check draws its samples through
//! [`crate::parallel::find_first_failure`], so reports depend only on the
//! seed and the sample count.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::atomic::{AtomicU64, Ordering};

use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{KiteAlgebra, KiteElem, Sampler, Zone};
use crate::algebra::Algebra;
use crate::lgrp::{GammaAlgebra, GammaElem, LAut, LVec, SemidirectElem};
use crate::parallel::find_first_failure;
use crate::report::CheckReport;
use crate::terms::{eval, vee_neg_substitute, Equation};

type Holds<A> = Box<dyn Fn(&A, &[<A as Algebra>::Elem]) -> bool + Send + Sync>;

/// A named property of up to three sampled elements.
pub struct Law<A: Algebra> {
    pub name: &'static str,
    pub arity: usize,
    pub holds: Holds<A>,
}

impl<A: Algebra> Law<A> {
    pub fn new(
        name: &'static str,
        arity: usize,
        holds: impl Fn(&A, &[A::Elem]) -> bool + Send + Sync + 'static,
    ) -> Law<A> {
        Law {
            name,
            arity,
            holds: Box::new(holds),
        }
    }
}

/// Runs every law on `count` sampled tuples; the report carries the first
/// failing sample (lowest index, then first law in list order).
pub fn check_laws<A, D>(
    check: &str,
    alg: &A,
    laws: &[Law<A>],
    seed: u64,
    count: u64,
    draw: D,
) -> CheckReport
where
    A: Algebra + Sync,
    A::Elem: Display,
    D: Fn(u64, &mut ChaCha8Rng) -> Vec<A::Elem> + Sync,
{
    let failure = find_first_failure(seed, count, |i, rng| {
        let xs = draw(i, rng);
        laws.iter()
            .find(|law| !(law.holds)(alg, &xs))
            .map(|law| (law.name, xs[..law.arity].iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    });
    match failure {
        None => CheckReport::pass(check, count, seed),
        Some((index, (law, elems))) => CheckReport::fail(
            check,
            count,
            seed,
            json!({"index": index, "law": law, "elements": elems}),
        ),
    }
}

/// Residuation, lattice and monoid laws of an FL-algebra.
pub fn residuated_laws<A: Algebra + 'static>() -> Vec<Law<A>> {
    vec![
        Law::new("residuation y≤x\\z ⟺ xy≤z ⟺ x≤z/y", 3, |a: &A, e: &[A::Elem]| {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            let p = a.leq(y, &a.ldiv(x, z));
            let q = a.leq(&a.mul(x, y), z);
            let r = a.leq(x, &a.rdiv(z, y));
            p == q && q == r
        }),
        Law::new("residuation at z = xy", 2, |a: &A, e: &[A::Elem]| {
            let xy = a.mul(&e[0], &e[1]);
            a.leq(&e[1], &a.ldiv(&e[0], &xy)) && a.leq(&e[0], &a.rdiv(&xy, &e[1]))
        }),
        Law::new("residuals are attained", 3, |a: &A, e: &[A::Elem]| {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            a.leq(&a.mul(x, &a.ldiv(x, z)), z) && a.leq(&a.mul(&a.rdiv(z, y), y), z)
        }),
        Law::new("order agrees with meet and join", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.leq(x, y) == (a.meet(x, y) == *x) && a.leq(x, y) == (a.join(x, y) == *y)
        }),
        Law::new("lattice laws", 3, |a: &A, e: &[A::Elem]| {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            a.meet(x, y) == a.meet(y, x)
                && a.join(x, y) == a.join(y, x)
                && a.meet(&a.meet(x, y), z) == a.meet(x, &a.meet(y, z))
                && a.join(&a.join(x, y), z) == a.join(x, &a.join(y, z))
                && a.meet(x, &a.join(x, y)) == *x
                && a.join(x, &a.meet(x, y)) == *x
        }),
        Law::new("monoid laws", 3, |a: &A, e: &[A::Elem]| {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            a.mul(&a.mul(x, y), z) == a.mul(x, &a.mul(y, z))
                && a.mul(x, &a.one()) == *x
                && a.mul(&a.one(), x) == *x
        }),
        Law::new("bounds 0 ≤ x ≤ 1", 1, |a: &A, e: &[A::Elem]| {
            a.leq(&a.zero(), &e[0]) && a.leq(&e[0], &a.one())
        }),
        Law::new("x⁻ = 0/x and x^∼ = x\\0", 1, |a: &A, e: &[A::Elem]| {
            a.negl(&e[0]) == a.rdiv(&a.zero(), &e[0]) && a.negr(&e[0]) == a.ldiv(&e[0], &a.zero())
        }),
    ]
}

/// (A1)–(A8) with `x ⊕ y = (x⁻·y⁻)^∼`, the term-equivalence definitions,
/// (Łuk) and the De Morgan laws.
pub fn pmv_laws<A: Algebra + 'static>() -> Vec<Law<A>> {
    vec![
        Law::new("(A1) x⊕(y⊕z) = (x⊕y)⊕z", 3, |a: &A, e: &[A::Elem]| {
            let (x, y, z) = (&e[0], &e[1], &e[2]);
            a.oplus(x, &a.oplus(y, z)) == a.oplus(&a.oplus(x, y), z)
        }),
        Law::new("(A2) x⊕0 = x", 1, |a: &A, e: &[A::Elem]| a.oplus(&e[0], &a.zero()) == e[0]),
        Law::new("(A3) x⊕1 = 1", 1, |a: &A, e: &[A::Elem]| a.oplus(&e[0], &a.one()) == a.one()),
        Law::new("(A4) (x⁻⊕y⁻)^∼ = (x^∼⊕y^∼)⁻", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.negr(&a.oplus(&a.negl(x), &a.negl(y))) == a.negl(&a.oplus(&a.negr(x), &a.negr(y)))
        }),
        Law::new("(A5) (x⊕y^∼)⁻⊕x = y⊕(x⁻⊕y)^∼", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            let l = a.oplus(&a.negl(&a.oplus(x, &a.negr(y))), x);
            let r = a.oplus(y, &a.negr(&a.oplus(&a.negl(x), y)));
            l == r
        }),
        Law::new("(A6) x⊕(y⁻⊕x)^∼ = y⊕(x⁻⊕y)^∼", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.oplus(x, &a.negr(&a.oplus(&a.negl(y), x))) == a.oplus(y, &a.negr(&a.oplus(&a.negl(x), y)))
        }),
        Law::new("(A7) x⁻^∼ = x = x^∼⁻", 1, |a: &A, e: &[A::Elem]| {
            a.negr(&a.negl(&e[0])) == e[0] && a.negl(&a.negr(&e[0])) == e[0]
        }),
        Law::new("(A8) 0⁻ = 1", 0, |a: &A, _: &[A::Elem]| a.negl(&a.zero()) == a.one()),
        Law::new("x∨y = x⊕(y⊙x^∼)", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.join(x, y) == a.oplus(x, &a.mul(y, &a.negr(x)))
        }),
        Law::new("x∧y = (x⁻⊕y)⊙x", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.meet(x, y) == a.mul(&a.oplus(&a.negl(x), y), x)
        }),
        Law::new("x\\y = y⊕x^∼ and y/x = x⁻⊕y", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            a.ldiv(x, y) == a.oplus(y, &a.negr(x)) && a.rdiv(y, x) == a.oplus(&a.negl(x), y)
        }),
        Law::new("x≤y ⟺ x⁻⊕y=1 ⟺ y⊕x^∼=1 ⟺ x⊙y^∼=0 ⟺ y⁻⊙x=0", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            let le = a.leq(x, y);
            le == (a.oplus(&a.negl(x), y) == a.one())
                && le == (a.oplus(y, &a.negr(x)) == a.one())
                && le == (a.mul(x, &a.negr(y)) == a.zero())
                && le == (a.mul(&a.negl(y), x) == a.zero())
        }),
        Law::new("(Łuk) x/(y\\x) = x∨y = (x/y)\\x", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            let j = a.join(x, y);
            a.rdiv(x, &a.ldiv(y, x)) == j && a.ldiv(&a.rdiv(x, y), x) == j
        }),
        Law::new("De Morgan (x∨y)^∼ = x^∼∧y^∼, (x∨y)⁻ = x⁻∧y⁻", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            let j = a.join(x, y);
            a.negr(&j) == a.meet(&a.negr(x), &a.negr(y)) && a.negl(&j) == a.meet(&a.negl(x), &a.negl(y))
        }),
        Law::new("De Morgan (x∧y)^∼ = x^∼∨y^∼, (x∧y)⁻ = x⁻∨y⁻", 2, |a: &A, e: &[A::Elem]| {
            let (x, y) = (&e[0], &e[1]);
            let m = a.meet(x, y);
            a.negr(&m) == a.join(&a.negr(x), &a.negr(y)) && a.negl(&m) == a.join(&a.negl(x), &a.negl(y))
        }),
    ]
}

fn triples(alg: &KiteAlgebra, sampler: Sampler) -> impl Fn(u64, &mut ChaCha8Rng) -> Vec<KiteElem> + Sync + '_ {
    let probes = sampler.probe_list(alg);
    move |i, rng| sampler.elements(alg, &probes, i, 3, rng)
}

/// The residuation equivalences, (A1)–(A8), the term-equivalence definitions, (Łuk) and De Morgan.
pub fn check_axioms(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let mut laws = residuated_laws::<KiteAlgebra>();
    laws.extend(pmv_laws());
    check_laws("axioms", alg, &laws, seed, count, triples(alg, sampler))
}

fn bool_op(zone: Zone) -> bool {
    zone == Zone::Top
}

/// `h(x) = zone` is a homomorphism onto 2 and Bottom lies below Top.
pub fn perfect_witness(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let laws: Vec<Law<KiteAlgebra>> = vec![
        Law::new("h(0) = 0 and h(1) = 1", 0, |a: &KiteAlgebra, _: &[KiteElem]| {
            a.zero().zone == Zone::Bottom && a.one().zone == Zone::Top
        }),
        Law::new("h preserves ∧ ∨ ⊙ \\ /", 2, |a: &KiteAlgebra, e: &[KiteElem]| {
            let (x, y) = (&e[0], &e[1]);
            let (p, q) = (bool_op(x.zone), bool_op(y.zone));
            bool_op(a.meet(x, y).zone) == (p && q)
                && bool_op(a.join(x, y).zone) == (p || q)
                && bool_op(a.mul(x, y).zone) == (p && q)
                && bool_op(a.ldiv(x, y).zone) == (!p || q)
                && bool_op(a.rdiv(y, x).zone) == (!p || q)
        }),
        Law::new("J ≤ F", 2, |a: &KiteAlgebra, e: &[KiteElem]| {
            let (x, y) = (&e[0], &e[1]);
            match (x.zone, y.zone) {
                (Zone::Bottom, Zone::Top) => a.leq(x, y) && !a.leq(y, x),
                (Zone::Top, Zone::Bottom) => a.leq(y, x) && !a.leq(x, y),
                _ => true,
            }
        }),
    ];
    check_laws("perfect", alg, &laws, seed, count, triples(alg, sampler))
}

/// Searches for `x⁻ ≠ x^∼`.
pub fn symmetry_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let laws = vec![Law::new("x⁻ = x^∼", 1, |a: &KiteAlgebra, e: &[KiteElem]| {
        a.negl(&e[0]) == a.negr(&e[0])
    })];
    let probes = sampler.probe_list(alg);
    check_laws("symmetry", alg, &laws, seed, count, move |i, rng| {
        sampler.elements(alg, &probes, i, 1, rng)
    })
}

/// Searches for `xy ≠ yx`.
pub fn commutativity_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let laws = vec![Law::new("xy = yx", 2, |a: &KiteAlgebra, e: &[KiteElem]| {
        a.mul(&e[0], &e[1]) == a.mul(&e[1], &e[0])
    })];
    check_laws("commutativity", alg, &laws, seed, count, triples(alg, sampler))
}

/// `(x∨x⁻)⊙(x∨x⁻) = (x∨x⁻)^∼∼`
pub fn not_kite_identity_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let laws = vec![Law::new("(x∨x⁻)⊙(x∨x⁻) = (x∨x⁻)^∼∼", 1, |a: &KiteAlgebra, e: &[KiteElem]| {
        let b = a.join(&e[0], &a.negl(&e[0]));
        a.mul(&b, &b) == a.double_tilde(&b)
    })];
    let probes = sampler.probe_list(alg);
    check_laws("notkite", alg, &laws, seed, count, move |i, rng| {
        sampler.elements(alg, &probes, i, 1, rng)
    })
}

/// `x^∼∼ = (zone, λ(value))` in both zones.
pub fn double_tilde_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let laws = vec![Law::new("x^∼∼ = λ(x)", 1, |a: &KiteAlgebra, e: &[KiteElem]| {
        let d = a.double_tilde(&e[0]);
        d.zone == e[0].zone && d.value == a.lambda().apply(&e[0].value)
    })];
    let probes = sampler.probe_list(alg);
    check_laws("double_tilde", alg, &laws, seed, count, move |i, rng| {
        sampler.elements(alg, &probes, i, 1, rng)
    })
}

/// Checks an equation on sampled assignments; with `relativize`, every
/// variable `x` is first replaced by `x ∨ x⁻`.
pub fn identity_check(
    alg: &KiteAlgebra,
    eq: &Equation,
    relativize: bool,
    sampler: Sampler,
    seed: u64,
    count: u64,
) -> CheckReport {
    let eq = if relativize {
        Equation::new(vee_neg_substitute(&eq.lhs), vee_neg_substitute(&eq.rhs))
    } else {
        eq.clone()
    };
    let vars: Vec<String> = eq.variables().into_iter().collect();
    let probes = sampler.probe_list(alg);
    let failure = find_first_failure(seed, count, |i, rng| {
        let xs = sampler.elements(alg, &probes, i, vars.len(), rng);
        let env: BTreeMap<String, KiteElem> = vars.iter().cloned().zip(xs).collect();
        let l = eval(&eq.lhs, alg, &env).expect("all variables bound");
        let r = eval(&eq.rhs, alg, &env).expect("all variables bound");
        (l != r).then(|| {
            let assignment: BTreeMap<&String, String> = env.iter().map(|(k, v)| (k, v.to_string())).collect();
            json!({"assignment": assignment, "lhs": l.to_string(), "rhs": r.to_string()})
        })
    });
    let name = "identity";
    match failure {
        None => CheckReport::pass(name, count, seed),
        Some((index, mut w)) => {
            w["index"] = json!(index);
            w["equation"] = json!(eq.to_string());
            CheckReport::fail(name, count, seed, w)
        }
    }
}

/// Number of sampled products seen in each zone case, indexed
/// `[TT, TB, BT, BB]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ZoneCases(pub [u64; 4]);

impl ZoneCases {
    pub fn all_covered(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }
}

fn zone_case(x: Zone, y: Zone) -> usize {
    match (x, y) {
        (Zone::Top, Zone::Top) => 0,
        (Zone::Top, Zone::Bottom) => 1,
        (Zone::Bottom, Zone::Top) => 2,
        (Zone::Bottom, Zone::Bottom) => 3,
    }
}

/// The target of Ω: `K(ℓ(F_A), λ')` with ℓ(F_A) identified with L and
/// λ' read off the double-negation map on Top basis elements.
pub fn omega_target(alg: &KiteAlgebra) -> KiteAlgebra {
    let k = alg.arity();
    let images: Vec<LVec> = (0..k)
        .map(|j| -&alg.double_tilde(&KiteElem::top(-&LVec::basis(k, j))).value)
        .collect();
    let lambda = LAut::from_basis_images(&images).expect("double tilde is monomial");
    KiteAlgebra::new(alg.group().clone(), lambda).expect("recovered automorphism is valid")
}

/// `Ω(x) = x` on Top and `Ω(x) = (x^∼)⁻¹` on Bottom.
pub fn omega(alg: &KiteAlgebra, x: &KiteElem) -> KiteElem {
    match x.zone {
        Zone::Top => x.clone(),
        Zone::Bottom => KiteElem::bottom(-&alg.negr(x).value),
    }
}

/// Inverse of Ω: Bottom `t` comes from `((Top, t⁻¹))⁻` in A.
pub fn omega_inverse(alg: &KiteAlgebra, t: &KiteElem) -> KiteElem {
    match t.zone {
        Zone::Top => t.clone(),
        Zone::Bottom => alg.negl(&KiteElem::top(-&t.value)),
    }
}

/// Ω is a bijection onto the rebuilt kite and preserves 0, 1, ⊙ and both
/// negations, with all four zone cases of the product sampled.
pub fn omega_check_with_cases(
    alg: &KiteAlgebra,
    sampler: Sampler,
    seed: u64,
    count: u64,
) -> (CheckReport, ZoneCases) {
    let target = omega_target(alg);
    let cases: [AtomicU64; 4] = Default::default();
    let draw = triples(alg, sampler);
    let failure = find_first_failure(seed, count, |i, rng| {
        let e = draw(i, rng);
        let (x, y, z) = (&e[0], &e[1], &e[2]);
        cases[zone_case(x.zone, y.zone)].fetch_add(1, Ordering::Relaxed);
        let w = |law: &str| Some(json!({"index": i, "law": law, "elements": [x.to_string(), y.to_string()]}));
        let (ox, oy) = (omega(alg, x), omega(alg, y));
        if !target.contains(&ox) {
            return w("Ω lands in L⁻ ⊎ L⁺");
        }
        if omega(alg, &alg.mul(x, y)) != target.mul(&ox, &oy) {
            return w("Ω(xy) = Ω(x)Ω(y)");
        }
        if omega(alg, &alg.negl(x)) != target.negl(&ox) || omega(alg, &alg.negr(x)) != target.negr(&ox) {
            return w("Ω preserves both negations");
        }
        if omega_inverse(alg, &ox) != *x {
            return w("Ω⁻¹(Ω(x)) = x");
        }
        // z is read as an element of the target, where every value is legal
        if omega(alg, &omega_inverse(alg, z)) != *z {
            return w("Ω(Ω⁻¹(z)) = z");
        }
        if (ox == oy) != (x == y) {
            return w("Ω is injective");
        }
        None
    });
    let constants = omega(alg, &alg.zero()) == target.zero() && omega(alg, &alg.one()) == target.one();
    let cases = ZoneCases(cases.map(|c| c.into_inner()));
    let report = match failure {
        Some((_, w)) => CheckReport::fail("omega", count, seed, w),
        None if !constants => CheckReport::fail("omega", count, seed, json!({"law": "Ω preserves 0 and 1"})),
        None if !cases.all_covered() => CheckReport::fail(
            "omega",
            count,
            seed,
            json!({"law": "all four zone cases of the product sampled", "cases": cases.0}),
        ),
        None => CheckReport::pass("omega", count, seed),
    };
    (report, cases)
}

pub fn omega_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    omega_check_with_cases(alg, sampler, seed, count).0
}

/// `ι(Top, x) = (x, 0)` and `ι(Bottom, y) = (y, -1)`.
pub fn iota(x: &KiteElem) -> SemidirectElem {
    match x.zone {
        Zone::Top => SemidirectElem::new(x.value.clone(), 0),
        Zone::Bottom => SemidirectElem::new(x.value.clone(), -1),
    }
}

/// ι is an order isomorphism onto Γ(L ⋉ ℤ, (e,-1)) preserving every
/// operation and constant.
pub fn gamma_iso_check(alg: &KiteAlgebra, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let gamma = GammaAlgebra::new(alg.group().clone(), alg.lambda().clone()).expect("same λ");
    let g = |x: &KiteElem| GammaElem::new(iota(x));
    let draw = triples(alg, sampler);
    let failure = find_first_failure(seed, count, |i, rng| {
        let e = draw(i, rng);
        let (x, y) = (&e[0], &e[1]);
        let w = |law: &str| Some(json!({"index": i, "law": law, "elements": [x.to_string(), y.to_string()]}));
        let (Ok(gx), Ok(gy)) = (g(x), g(y)) else {
            return w("ι lands in the interval");
        };
        let ops: [(&str, KiteElem, GammaElem); 5] = [
            ("ι(x∧y)", alg.meet(x, y), gamma.meet(&gx, &gy)),
            ("ι(x∨y)", alg.join(x, y), gamma.join(&gx, &gy)),
            ("ι(x⊙y)", alg.mul(x, y), gamma.mul(&gx, &gy)),
            ("ι(x\\y)", alg.ldiv(x, y), gamma.ldiv(&gx, &gy)),
            ("ι(x/y)", alg.rdiv(x, y), gamma.rdiv(&gx, &gy)),
        ];
        for (law, k, gv) in ops {
            if iota(&k) != *gv.inner() {
                return w(law);
            }
        }
        if alg.leq(x, y) != gamma.leq(&gx, &gy) {
            return w("x ≤ y ⟺ ι(x) ≤ ι(y)");
        }
        None
    });
    let constants = iota(&alg.zero()) == *gamma.zero().inner() && iota(&alg.one()) == *gamma.one().inner();
    match failure {
        Some((_, w)) => CheckReport::fail("gamma", count, seed, w),
        None if !constants => CheckReport::fail("gamma", count, seed, json!({"law": "ι preserves 0 and 1"})),
        None => CheckReport::pass("gamma", count, seed),
    }
}
