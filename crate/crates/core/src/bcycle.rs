//! Finite B-cycles: sets with a distinguished bijection.

use std::fmt;

use num::integer::lcm;
use thiserror::Error;

use crate::lgrp::{LAut, VecGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BCycleError {
    #[error("a B-cycle needs at least one point")]
    Empty,
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("map has {found} entries or values out of range for a target of size {target}")]
    NotAMap { found: usize, target: usize },
    #[error("not equivariant at point {point}: f(β(i)) = {lhs} but β(f(i)) = {rhs}")]
    NotEquivariant { point: usize, lhs: usize, rhs: usize },
    #[error("the dimension {dimension} does not divide {n}")]
    Divisibility { n: u64, dimension: u64 },
    #[error("cannot parse cycle spec `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BCycle {
    beta: Vec<usize>,
    inv: Vec<usize>,
}

impl BCycle {
    pub fn new(beta: Vec<usize>) -> Result<BCycle, BCycleError> {
        if beta.is_empty() {
            return Err(BCycleError::Empty);
        }
        let mut inv = vec![usize::MAX; beta.len()];
        for (i, &b) in beta.iter().enumerate() {
            if b >= beta.len() || inv[b] != usize::MAX {
                return Err(BCycleError::NotAPermutation(beta));
            }
            inv[b] = i;
        }
        Ok(BCycle { beta, inv })
    }

    /// `Z_n` with `m ↦ m+1 (mod n)`.
    pub fn z_n(n: usize) -> Result<BCycle, BCycleError> {
        BCycle::new((0..n).map(|m| (m + 1) % n.max(1)).collect())
    }

    /// Disjoint cycles of the given lengths on consecutive points.
    pub fn from_cycle_type(lengths: &[usize]) -> Result<BCycle, BCycleError> {
        let mut beta = Vec::new();
        for &len in lengths {
            if len == 0 {
                return Err(BCycleError::Parse(format!("cycle length 0 in {lengths:?}")));
            }
            let start = beta.len();
            beta.extend((0..len).map(|m| start + (m + 1) % len));
        }
        BCycle::new(beta)
    }

    /// `n` points, each fixed.
    pub fn discrete(n: usize) -> Result<BCycle, BCycleError> {
        BCycle::new((0..n).collect())
    }

    pub fn size(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[usize] {
        &self.beta
    }

    pub fn apply(&self, i: usize) -> usize {
        self.beta[i]
    }

    pub fn apply_inverse(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// `β^m(i)` for any integer `m`.
    pub fn apply_power(&self, m: i64, i: usize) -> usize {
        let table = if m < 0 { &self.inv } else { &self.beta };
        (0..m.unsigned_abs()).fold(i, |j, _| table[j])
    }

    /// Cycle lengths in order of least element.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut out = Vec::new();
        for start in 0..self.size() {
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.beta[i];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out
    }

    /// lcm of the cycle lengths.
    pub fn dimension(&self) -> u64 {
        self.cycle_type().iter().map(|&l| l as u64).fold(1, lcm)
    }

    /// `B × C` with `(i, j)` at index `i * |C| + j`.
    pub fn product(&self, other: &BCycle) -> BCycle {
        let m = other.size();
        BCycle::new(
            (0..self.size() * m)
                .map(|p| self.beta[p / m] * m + other.beta[p % m])
                .collect(),
        )
        .expect("product of bijections")
    }

    pub fn projection_left(&self, other: &BCycle) -> Vec<usize> {
        (0..self.size() * other.size()).map(|p| p / other.size()).collect()
    }

    pub fn projection_right(&self, other: &BCycle) -> Vec<usize> {
        (0..self.size() * other.size()).map(|p| p % other.size()).collect()
    }

    /// Checks `f ∘ β_self = β_target ∘ f`.
    pub fn check_hom(&self, f: &[usize], target: &BCycle) -> Result<(), BCycleError> {
        if f.len() != self.size() || f.iter().any(|&v| v >= target.size()) {
            return Err(BCycleError::NotAMap {
                found: f.len(),
                target: target.size(),
            });
        }
        for i in 0..self.size() {
            let (lhs, rhs) = (f[self.beta[i]], target.beta[f[i]]);
            if lhs != rhs {
                return Err(BCycleError::NotEquivariant { point: i, lhs, rhs });
            }
        }
        Ok(())
    }

    pub fn is_hom(&self, f: &[usize], target: &BCycle) -> bool {
        self.check_hom(f, target).is_ok()
    }

    /// `f : Z_n × B → B`, `f(m, i) = β^m(i)`, with `(m, i)` at index
    /// `m * |B| + i`. Here `B` is the bare point set, so the domain is
    /// `Z_n` times `|B|` fixed points; see [`BCycle::unroll_domain`].
    /// Requires `dim(B) | n`.
    pub fn unroll_hom(n: u64, b: &BCycle) -> Result<Vec<usize>, BCycleError> {
        let dimension = b.dimension();
        if n == 0 || n % dimension != 0 {
            return Err(BCycleError::Divisibility { n, dimension });
        }
        let f: Vec<usize> = (0..n as usize)
            .flat_map(|m| (0..b.size()).map(move |i| b.apply_power(m as i64, i)))
            .collect();
        BCycle::unroll_domain(n, b)?.check_hom(&f, b)?;
        Ok(f)
    }

    /// The domain `Z_n × B` of [`BCycle::unroll_hom`], with `B` acting trivially.
    pub fn unroll_domain(n: u64, b: &BCycle) -> Result<BCycle, BCycleError> {
        Ok(BCycle::z_n(n as usize)?.product(&BCycle::discrete(b.size())?))
    }

    /// The coordinate permutation `λ(x)(i) = x(β(i))` on `base^B`, with
    /// coordinate `t` of point `i` at index `i * arity + t`.
    pub fn induced_aut(&self, base: &VecGroup) -> LAut {
        let k = base.arity();
        LAut::permutation(
            (0..self.size() * k)
                .map(|p| self.beta[p / k] * k + p % k)
                .collect(),
        )
        .expect("induced map is a permutation")
    }

    /// `zn:6` or `cycles:2,3`.
    pub fn parse(spec: &str) -> Result<BCycle, BCycleError> {
        let bad = || BCycleError::Parse(spec.to_string());
        let s = spec.trim();
        if let Some(n) = s.strip_prefix("zn:") {
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            BCycle::z_n(n)
        } else if let Some(list) = s.strip_prefix("cycles:") {
            let lengths = list
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>, _>>()?;
            BCycle::from_cycle_type(&lengths)
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for BCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.cycle_type().iter().map(|l| l.to_string()).collect();
        write!(f, "cycles:{}", t.join(","))
    }
}
