//! Perfect products of kites: the zone-aligned part of a finite power.

use serde_json::json;

use super::{KiteAlgebra, KiteElem, KiteError, Sampler, Zone};
use crate::algebra::Algebra;
use crate::bcycle::BCycle;
use crate::lgrp::{LVec, VecGroup};
use crate::parallel::find_first_failure;
use crate::report::CheckReport;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PProdKiteElem {
    zone: Zone,
    values: Vec<LVec>,
}

impl PProdKiteElem {
    pub fn zone(&self) -> Zone {
        self.zone
    }

    pub fn values(&self) -> &[LVec] {
        &self.values
    }

    fn component(&self, s: usize) -> KiteElem {
        KiteElem {
            zone: self.zone,
            value: self.values[s].clone(),
        }
    }
}

impl std::fmt::Display for PProdKiteElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:(", self.zone)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// `A^S` restricted to tuples whose coordinates all lie in the same zone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PProdKite {
    factor: KiteAlgebra,
    s: usize,
}

impl PProdKite {
    pub fn new(factor: KiteAlgebra, s: usize) -> PProdKite {
        assert!(s >= 1, "index set must be nonempty");
        PProdKite { factor, s }
    }

    pub fn factor(&self) -> &KiteAlgebra {
        &self.factor
    }

    pub fn index_size(&self) -> usize {
        self.s
    }

    pub fn element(&self, coords: &[KiteElem]) -> Result<PProdKiteElem, KiteError> {
        if coords.len() != self.s {
            return Err(KiteError::NotAHom(format!(
                "expected {} coordinates, got {}",
                self.s,
                coords.len()
            )));
        }
        let zone = coords[0].zone;
        if coords.iter().any(|c| c.zone != zone) {
            return Err(KiteError::MisalignedZones);
        }
        for c in coords {
            self.factor.element(c.zone, c.value.clone())?;
        }
        Ok(PProdKiteElem {
            zone,
            values: coords.iter().map(|c| c.value.clone()).collect(),
        })
    }

    fn lift(&self, x: &PProdKiteElem, y: &PProdKiteElem, op: impl Fn(&KiteElem, &KiteElem) -> KiteElem) -> PProdKiteElem {
        let coords: Vec<KiteElem> = (0..self.s).map(|s| op(&x.component(s), &y.component(s))).collect();
        self.element(&coords).expect("zone map is a homomorphism")
    }

    fn constant(&self, c: KiteElem) -> PProdKiteElem {
        PProdKiteElem {
            zone: c.zone,
            values: vec![c.value; self.s],
        }
    }
}

impl Algebra for PProdKite {
    type Elem = PProdKiteElem;

    fn meet(&self, x: &PProdKiteElem, y: &PProdKiteElem) -> PProdKiteElem {
        self.lift(x, y, |a, b| self.factor.meet(a, b))
    }

    fn join(&self, x: &PProdKiteElem, y: &PProdKiteElem) -> PProdKiteElem {
        self.lift(x, y, |a, b| self.factor.join(a, b))
    }

    fn mul(&self, x: &PProdKiteElem, y: &PProdKiteElem) -> PProdKiteElem {
        self.lift(x, y, |a, b| self.factor.mul(a, b))
    }

    fn ldiv(&self, x: &PProdKiteElem, y: &PProdKiteElem) -> PProdKiteElem {
        self.lift(x, y, |a, b| self.factor.ldiv(a, b))
    }

    fn rdiv(&self, x: &PProdKiteElem, y: &PProdKiteElem) -> PProdKiteElem {
        self.lift(x, y, |a, b| self.factor.rdiv(a, b))
    }

    fn zero(&self) -> PProdKiteElem {
        self.constant(self.factor.zero())
    }

    fn one(&self) -> PProdKiteElem {
        self.constant(self.factor.one())
    }
}

/// Coordinate reshuffle between `PProd_S K_B(L)` and `K_{B×S}(L)`, where
/// `S` acts trivially. Point `(i, s)` of `B×S` has index `i·|S| + s`, and
/// its block of `k` coordinates holds `values[s][i·k .. (i+1)·k]`.
#[derive(Debug, Clone)]
pub struct PowerBijection {
    pub pprod: PProdKite,
    pub target: KiteAlgebra,
    b: usize,
    k: usize,
}

impl PowerBijection {
    pub fn new(b: &BCycle, base: &VecGroup, s: usize) -> PowerBijection {
        let factor = KiteAlgebra::over_bcycle(b, base);
        let bs = b.product(&BCycle::discrete(s).expect("s ≥ 1"));
        PowerBijection {
            pprod: PProdKite::new(factor, s),
            target: KiteAlgebra::over_bcycle(&bs, base),
            b: b.size(),
            k: base.arity(),
        }
    }

    pub fn forward(&self, x: &PProdKiteElem) -> KiteElem {
        let s_len = self.pprod.s;
        let mut out = Vec::with_capacity(self.b * s_len * self.k);
        for i in 0..self.b {
            for s in 0..s_len {
                out.extend_from_slice(&x.values[s].0[i * self.k..(i + 1) * self.k]);
            }
        }
        KiteElem {
            zone: x.zone,
            value: LVec(out),
        }
    }

    pub fn backward(&self, y: &KiteElem) -> PProdKiteElem {
        let s_len = self.pprod.s;
        let values = (0..s_len)
            .map(|s| {
                let mut v = Vec::with_capacity(self.b * self.k);
                for i in 0..self.b {
                    let p = (i * s_len + s) * self.k;
                    v.extend_from_slice(&y.value.0[p..p + self.k]);
                }
                LVec(v)
            })
            .collect();
        PProdKiteElem { zone: y.zone, values }
    }
}

/// Samples pairs in `K_{B×S}(L)` and checks that the reshuffle is a
/// bijection preserving every operation and both constants.
pub fn powerlemma_check(b: &BCycle, base: &VecGroup, s: usize, sampler: Sampler, seed: u64, count: u64) -> CheckReport {
    let bij = PowerBijection::new(b, base, s);
    let (p, t) = (&bij.pprod, &bij.target);
    let probes = sampler.probe_list(t);
    let constants = bij.forward(&p.zero()) == t.zero() && bij.forward(&p.one()) == t.one();
    let failure = find_first_failure(seed, count, |i, rng| {
        let e = sampler.elements(t, &probes, i, 2, rng);
        let (x, y) = (&e[0], &e[1]);
        let w = |law: &str| Some(json!({"index": i, "law": law, "elements": [x.to_string(), y.to_string()]}));
        let (px, py) = (bij.backward(x), bij.backward(y));
        if bij.forward(&px) != *x || bij.backward(&bij.forward(&px)) != px {
            return w("reshuffle is a bijection");
        }
        if p.element(&(0..s).map(|j| px.component(j)).collect::<Vec<_>>()).is_err() {
            return w("image is zone aligned and in the cones");
        }
        let ops: [(&str, PProdKiteElem, KiteElem); 7] = [
            ("∧", p.meet(&px, &py), t.meet(x, y)),
            ("∨", p.join(&px, &py), t.join(x, y)),
            ("⊙", p.mul(&px, &py), t.mul(x, y)),
            ("\\", p.ldiv(&px, &py), t.ldiv(x, y)),
            ("/", p.rdiv(&px, &py), t.rdiv(x, y)),
            ("⁻", p.negl(&px), t.negl(x)),
            ("∼", p.negr(&px), t.negr(x)),
        ];
        for (law, l, r) in ops {
            if bij.forward(&l) != r {
                return w(law);
            }
        }
        None
    });
    match failure {
        Some((_, w)) => CheckReport::fail("powerlemma", count, seed, w),
        None if !constants => CheckReport::fail("powerlemma", count, seed, json!({"law": "constants"})),
        None => CheckReport::pass("powerlemma", count, seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zone_alignment_is_enforced() {
        let z2 = BCycle::z_n(2).unwrap();
        let p = PProdKite::new(KiteAlgebra::over_bcycle(&z2, &VecGroup::integer(1)), 2);
        let t = KiteElem::top(LVec::from_ints(&[-1, 0]));
        let b = KiteElem::bottom(LVec::from_ints(&[1, 0]));
        assert_eq!(p.element(&[t.clone(), b]).unwrap_err(), KiteError::MisalignedZones);
        assert!(p.element(&[t.clone(), t]).is_ok());
    }

    #[test]
    fn reshuffle_preserves_operations() {
        let z2 = BCycle::z_n(2).unwrap();
        for s in [1, 2, 3] {
            let r = powerlemma_check(&z2, &VecGroup::integer(1), s, Sampler::default(), 0, 300);
            assert!(r.passed(), "{}", r.to_json());
        }
        let bij = PowerBijection::new(&z2, &VecGroup::integer(1), 1);
        let x = KiteElem::bottom(LVec::from_ints(&[3, 5]));
        assert_eq!(bij.forward(&bij.backward(&x)), x);
        assert_eq!(bij.backward(&x).values(), &[LVec::from_ints(&[3, 5])]);
    }
}
