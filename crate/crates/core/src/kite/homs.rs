//! Homomorphisms between kites: lifts of ℓ-group maps, lifts of maps on
//! the filter, and the contravariant functor along B-cycle maps.

use serde_json::json;

use super::{KiteAlgebra, KiteElem, KiteError, Sampler, Zone};
use crate::algebra::Algebra;
use crate::bcycle::BCycle;
use crate::lgrp::LinearMap;
use crate::parallel::find_first_failure;
use crate::report::CheckReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomKind {
    /// `h_f(zone, v) = (zone, f(v))`
    Lifted,
    /// `f̄(x) = f(x)` on F and `f(x^∼)⁻¹` on J.
    FromFilter,
}

#[derive(Debug, Clone)]
pub struct KiteHom {
    source: KiteAlgebra,
    target: KiteAlgebra,
    f: LinearMap,
    kind: HomKind,
}

impl KiteHom {
    pub fn source(&self) -> &KiteAlgebra {
        &self.source
    }

    pub fn target(&self) -> &KiteAlgebra {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.f
    }

    pub fn apply(&self, x: &KiteElem) -> KiteElem {
        match (self.kind, x.zone) {
            (_, Zone::Top) | (HomKind::Lifted, Zone::Bottom) => KiteElem {
                zone: x.zone,
                value: self.f.apply(&x.value),
            },
            (HomKind::FromFilter, Zone::Bottom) => {
                let t = self.source.negr(x);
                KiteElem::bottom(-&self.f.apply(&t.value))
            }
        }
    }

    /// Samples pairs and checks that every operation and constant is
    /// preserved.
    pub fn check_hom(&self, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
        let (a, b) = (&self.source, &self.target);
        let probes = sampler.probe_list(a);
        let constants = self.apply(&a.zero()) == b.zero() && self.apply(&a.one()) == b.one();
        let failure = find_first_failure(seed, count, |i, rng| {
            let e = sampler.elements(a, &probes, i, 2, rng);
            let (x, y) = (&e[0], &e[1]);
            let (hx, hy) = (self.apply(x), self.apply(y));
            let checks: [(&str, KiteElem, KiteElem); 7] = [
                ("h(x∧y)", self.apply(&a.meet(x, y)), b.meet(&hx, &hy)),
                ("h(x∨y)", self.apply(&a.join(x, y)), b.join(&hx, &hy)),
                ("h(x⊙y)", self.apply(&a.mul(x, y)), b.mul(&hx, &hy)),
                ("h(x\\y)", self.apply(&a.ldiv(x, y)), b.ldiv(&hx, &hy)),
                ("h(x/y)", self.apply(&a.rdiv(x, y)), b.rdiv(&hx, &hy)),
                ("h(x⁻)", self.apply(&a.negl(x)), b.negl(&hx)),
                ("h(x^∼)", self.apply(&a.negr(x)), b.negr(&hx)),
            ];
            if !b.contains(&hx) {
                return Some(json!({"index": i, "law": "h(x) in target", "elements": [x.to_string()]}));
            }
            checks.iter().find(|(_, l, r)| l != r).map(|(law, _, _)| {
                json!({"index": i, "law": law, "elements": [x.to_string(), y.to_string()]})
            })
        });
        match failure {
            Some((_, w)) => CheckReport::fail("hom", count, seed, w),
            None if !constants => CheckReport::fail("hom", count, seed, json!({"law": "h(0)=0, h(1)=1"})),
            None => CheckReport::pass("hom", count, seed),
        }
    }

    /// Looks for distinct sampled elements with equal images.
    pub fn check_injective(&self, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
        let a = &self.source;
        let probes = sampler.probe_list(a);
        let failure = find_first_failure(seed, count, |i, rng| {
            let e = sampler.elements(a, &probes, i, 2, rng);
            (e[0] != e[1] && self.apply(&e[0]) == self.apply(&e[1]))
                .then(|| json!({"index": i, "elements": [e[0].to_string(), e[1].to_string()]}))
        });
        match failure {
            Some((_, w)) => CheckReport::fail("injective", count, seed, w),
            None => CheckReport::pass("injective", count, seed),
        }
    }
}

fn check_commutes(f: &LinearMap, a1: &KiteAlgebra, a2: &KiteAlgebra) -> Result<(), KiteError> {
    f.check_lgroup_hom(a1.group(), a2.group())?;
    match f.commutation_failure(a1.lambda(), a2.lambda()) {
        Some(basis) => Err(KiteError::Commutation { basis }),
        None => Ok(()),
    }
}

/// `h_f(zone, v) = (zone, f(v))` for an ℓ-group map `f` with
/// `f∘λ₁ = λ₂∘f`. Commutation is checked exactly on a basis.
pub fn lift_lgroup_hom(f: &LinearMap, a1: &KiteAlgebra, a2: &KiteAlgebra) -> Result<KiteHom, KiteError> {
    check_commutes(f, a1, a2)?;
    Ok(KiteHom {
        source: a1.clone(),
        target: a2.clone(),
        f: f.clone(),
        kind: HomKind::Lifted,
    })
}

/// Extends a map on the Top zones to the whole kite by
/// `f̄(x) = f(x^∼)⁻¹` on Bottom. `f` must commute with `x ↦ x^∼∼`; this is
/// checked on sampled Top elements, as is preservation of the Top-zone
/// operations.
pub fn lift_filter_hom(
    f: &LinearMap,
    a1: &KiteAlgebra,
    a2: &KiteAlgebra,
    sampler: Sampler,
    seed: u64,
    count: u64,
) -> Result<KiteHom, KiteError> {
    f.check_lgroup_hom(a1.group(), a2.group())?;
    let fx = |x: &KiteElem| KiteElem::top(f.apply(&x.value));
    let failure = find_first_failure(seed, count, |_, rng| {
        let x = sampler.random_in(a1, Zone::Top, rng);
        let y = sampler.random_in(a1, Zone::Top, rng);
        if fx(&a1.double_tilde(&x)) != a2.double_tilde(&fx(&x)) {
            return Some(KiteError::DoubleTildeCommutation { witness: x.to_string() });
        }
        let ok = fx(&a1.meet(&x, &y)) == a2.meet(&fx(&x), &fx(&y))
            && fx(&a1.join(&x, &y)) == a2.join(&fx(&x), &fx(&y))
            && fx(&a1.mul(&x, &y)) == a2.mul(&fx(&x), &fx(&y))
            && fx(&a1.ldiv(&x, &y)) == a2.ldiv(&fx(&x), &fx(&y))
            && fx(&a1.rdiv(&x, &y)) == a2.rdiv(&fx(&x), &fx(&y));
        (!ok).then(|| KiteError::NotAHom(format!("filter map fails at ({x}, {y})")))
    });
    if let Some((_, e)) = failure {
        return Err(e);
    }
    if fx(&a1.one()) != a2.one() {
        return Err(KiteError::NotAHom("f(1) ≠ 1".into()));
    }
    Ok(KiteHom {
        source: a1.clone(),
        target: a2.clone(),
        f: f.clone(),
        kind: HomKind::FromFilter,
    })
}

/// `K_f(L) : K_C(L) → K_B(L)`, `x ↦ x∘f`, for a B-cycle map `f : B → C`.
pub fn kite_contravariant(
    f: &[usize],
    b: &BCycle,
    c: &BCycle,
    base: &crate::lgrp::VecGroup,
) -> Result<KiteHom, KiteError> {
    b.check_hom(f, c)?;
    let k = base.arity();
    let select: Vec<usize> = (0..b.size() * k).map(|p| f[p / k] * k + p % k).collect();
    let map = LinearMap::selection(&select, c.size() * k);
    lift_lgroup_hom(&map, &KiteAlgebra::over_bcycle(c, base), &KiteAlgebra::over_bcycle(b, base))
}

/// The embedding `K_B(L) → K_{Z_n × B}(L)` along the unrolling map with
/// `n = dim(B)`, checked to be an injective homomorphism with left inverse
/// `x(i) = h(x)(0, i)`.
pub fn embed_check(b: &BCycle, base: &crate::lgrp::VecGroup, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let n = b.dimension();
    let f = BCycle::unroll_hom(n, b).expect("dim(B) divides itself");
    let domain = BCycle::unroll_domain(n, b).expect("n ≥ 1");
    let h = kite_contravariant(&f, &domain, b, base).expect("unrolling is a hom");
    let hom = h.check_hom(sampler, seed, count);
    if !hom.passed() {
        return CheckReport { check: "embed".into(), ..hom };
    }
    let inj = h.check_injective(sampler, seed, count);
    if !inj.passed() {
        return CheckReport { check: "embed".into(), ..inj };
    }
    let k = base.arity();
    let a = h.source();
    let probes = sampler.probe_list(a);
    // (m, i) sits at index m·|B| + i, so (0, i) is index i
    let failure = find_first_failure(seed, count, |i, rng| {
        let x = sampler.elements(a, &probes, i, 1, rng).remove(0);
        let hx = h.apply(&x);
        let back = crate::lgrp::LVec(hx.value.0[..b.size() * k].to_vec());
        (back != x.value || hx.zone != x.zone)
            .then(|| json!({"index": i, "law": "x(i) = h(x)(0, i)", "elements": [x.to_string()]}))
    });
    match failure {
        Some((_, w)) => CheckReport::fail("embed", count, seed, w),
        None => CheckReport::pass("embed", count, seed),
    }
}

/// The left triangle identity at `ε_B(i) = π_i`: for sampled `x` and every
/// point `i`, `((K_{ε_B} ∘ η)(x))(i) = x(i)`, where `η(x)(α) = α(x)` on Top
/// and `α(x^∼)⁻¹` on Bottom. Also checks that `i ↦ π_i` is equivariant,
/// `π_i(x^∼∼) = π_{β(i)}(x)`.
pub fn triangle_identity_check(
    b: &BCycle,
    base: &crate::lgrp::VecGroup,
    sampler: Sampler,
    seed: u64,
    count: u64,
) -> CheckReport {
    let a = KiteAlgebra::over_bcycle(b, base);
    let k = base.arity();
    let pi = |i: usize, v: &crate::lgrp::LVec| crate::lgrp::LVec(v.0[i * k..(i + 1) * k].to_vec());
    let probes = sampler.probe_list(&a);
    let failure = find_first_failure(seed, count, |s, rng| {
        let x = sampler.elements(&a, &probes, s, 1, rng).remove(0);
        for i in 0..b.size() {
            let eta = match x.zone {
                Zone::Top => pi(i, &x.value),
                Zone::Bottom => -&pi(i, &a.negr(&x).value),
            };
            if eta != pi(i, &x.value) {
                return Some(json!({"index": s, "law": "K_ε(η(x))(i) = x(i)", "point": i, "elements": [x.to_string()]}));
            }
            if x.zone == Zone::Top && pi(i, &a.double_tilde(&x).value) != pi(b.apply(i), &x.value) {
                return Some(json!({"index": s, "law": "ε_B is equivariant", "point": i, "elements": [x.to_string()]}));
            }
        }
        None
    });
    match failure {
        Some((_, w)) => CheckReport::fail("triangle", count, seed, w),
        None => CheckReport::pass("triangle", count, seed),
    }
}
