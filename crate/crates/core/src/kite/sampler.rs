use num::{BigInt, Signed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{KiteAlgebra, KiteElem, Zone};
use crate::algebra::Algebra;
use crate::lgrp::{Domain, LVec, Rational};

/// Seeded element generator. Zones come from a fair coin; each entry is
/// `|p/q|` with `p` uniform in `[-N, N]` and `q` uniform in `[1, M]`
/// (`q = 1` over ℤ), negated for Top.
///
/// With `probes` on, sample indices first run through a fixed list of
/// boundary elements: `1`, `0`, `(Top, -e_j)`, `(Bottom, e_j)`,
/// `(Top, -𝟙)` and `(Bottom, 𝟙)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampler {
    pub max_num: i64,
    pub max_den: i64,
    pub probes: bool,
}

impl Default for Sampler {
    fn default() -> Sampler {
        Sampler {
            max_num: 100,
            max_den: 10,
            probes: true,
        }
    }
}

impl Sampler {
    pub fn without_probes(self) -> Sampler {
        Sampler {
            probes: false,
            ..self
        }
    }

    pub fn random_entry(&self, domain: Domain, rng: &mut ChaCha8Rng) -> Rational {
        let p = rng.random_range(-self.max_num..=self.max_num);
        let q = match domain {
            Domain::Integer => 1,
            Domain::Rational => rng.random_range(1..=self.max_den.max(1)),
        };
        Rational::new(BigInt::from(p), BigInt::from(q)).abs()
    }

    pub fn random_value(&self, alg: &KiteAlgebra, rng: &mut ChaCha8Rng) -> LVec {
        let g = alg.group();
        LVec((0..g.arity()).map(|_| self.random_entry(g.domain(), rng)).collect())
    }

    pub fn random(&self, alg: &KiteAlgebra, rng: &mut ChaCha8Rng) -> KiteElem {
        let top = rng.random_bool(0.5);
        let v = self.random_value(alg, rng);
        if top {
            KiteElem::top(-&v)
        } else {
            KiteElem::bottom(v)
        }
    }

    /// A random element of the given zone.
    pub fn random_in(&self, alg: &KiteAlgebra, zone: Zone, rng: &mut ChaCha8Rng) -> KiteElem {
        let v = self.random_value(alg, rng);
        match zone {
            Zone::Top => KiteElem::top(-&v),
            Zone::Bottom => KiteElem::bottom(v),
        }
    }

    pub fn probe_list(&self, alg: &KiteAlgebra) -> Vec<KiteElem> {
        if !self.probes {
            return Vec::new();
        }
        let k = alg.arity();
        let mut out = vec![alg.one(), alg.zero()];
        out.extend((0..k).map(|j| KiteElem::top(-&LVec::basis(k, j))));
        out.extend((0..k).map(|j| KiteElem::bottom(LVec::basis(k, j))));
        let ones = LVec(vec![crate::lgrp::int(1); k]);
        out.push(KiteElem::top(-&ones));
        out.push(KiteElem::bottom(ones));
        out
    }

    /// `n` elements for sample `index`. With probes on, a single element
    /// runs through the probes first; for `n ≥ 2` the first two elements
    /// run through all probe pairs first. Remaining slots are random.
    pub fn elements(
        &self,
        alg: &KiteAlgebra,
        probes: &[KiteElem],
        index: u64,
        n: usize,
        rng: &mut ChaCha8Rng,
    ) -> Vec<KiteElem> {
        let p = probes.len() as u64;
        let mut out = Vec::with_capacity(n);
        if n == 1 && index < p {
            out.push(probes[index as usize].clone());
        } else if n >= 2 && index < p * p {
            out.push(probes[(index / p) as usize].clone());
            out.push(probes[(index % p) as usize].clone());
        }
        while out.len() < n {
            out.push(self.random(alg, rng));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lgrp::{LAut, VecGroup};
    use crate::parallel::shard_rng;

    #[test]
    fn samples_stay_in_their_cones() {
        let k = KiteAlgebra::new(VecGroup::rational(3), LAut::cyclic_shift(3)).unwrap();
        let z = KiteAlgebra::new(VecGroup::integer(2), LAut::identity(2)).unwrap();
        let s = Sampler::default();
        let mut rng = shard_rng(5, 0);
        for _ in 0..500 {
            assert!(k.contains(&s.random(&k, &mut rng)));
            assert!(z.contains(&s.random(&z, &mut rng)));
        }
        assert!(s.probe_list(&k).iter().all(|x| k.contains(x)));
        assert_eq!(s.probe_list(&k).len(), 10);
        assert!(s.without_probes().probe_list(&k).is_empty());
    }

    #[test]
    fn probes_come_first() {
        let k = KiteAlgebra::new(VecGroup::integer(1), LAut::identity(1)).unwrap();
        let s = Sampler::default();
        let probes = s.probe_list(&k);
        let mut rng = shard_rng(0, 0);
        assert_eq!(s.elements(&k, &probes, 2, 1, &mut rng)[0].to_string(), "top:[-1]");
        let pair = s.elements(&k, &probes, 1, 3, &mut rng);
        assert_eq!((pair[0].clone(), pair[1].clone()), (k.one(), k.zero()));
    }
}
