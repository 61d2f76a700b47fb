//! The divisibility lattice 𝔻, dimensions of kite families, and the lattice
//! `1 ⊕ (Λ⁺ × 𝔻)` of kite-generated varieties over a finite label lattice.

use std::fmt;
use std::str::FromStr;

use num::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bcycle::BCycle;
use crate::kite::{KiteAlgebra, KiteError};
use crate::lgrp::VecGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VarietyError {
    #[error("label lattice: {0}")]
    BadLattice(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label index {0} is not in this label lattice")]
    ForeignLabel(usize),
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error(transparent)]
    Kite(#[from] KiteError),
    #[error("lcm overflows 64 bits")]
    Overflow,
}

fn parse_err(input: &str, message: impl Into<String>) -> VarietyError {
    VarietyError::Parse {
        input: input.to_string(),
        message: message.into(),
    }
}

/// A natural number ordered by divisibility; `0` is the top.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivNat(pub u64);

impl DivNat {
    pub const TOP: DivNat = DivNat(0);
    pub const BOTTOM: DivNat = DivNat(1);

    /// `n | m`, so everything divides 0.
    pub fn leq(self, other: DivNat) -> bool {
        match (self.0, other.0) {
            (_, 0) => true,
            (0, _) => false,
            (n, m) => m % n == 0,
        }
    }

    /// lcm, with `lcm(n, 0) = 0`.
    pub fn checked_join(self, other: DivNat) -> Option<DivNat> {
        if self.0 == 0 || other.0 == 0 {
            return Some(DivNat(0));
        }
        let g = self.0.gcd(&other.0);
        (self.0 / g).checked_mul(other.0).map(DivNat)
    }

    /// Panics if the lcm does not fit in 64 bits.
    pub fn join(self, other: DivNat) -> DivNat {
        self.checked_join(other).expect("lcm overflows 64 bits")
    }

    /// gcd, with `gcd(n, 0) = n`.
    pub fn meet(self, other: DivNat) -> DivNat {
        DivNat(self.0.gcd(&other.0))
    }
}

impl fmt::Display for DivNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for DivNat {
    type Err = VarietyError;

    fn from_str(s: &str) -> Result<DivNat, VarietyError> {
        s.trim().parse().map(DivNat).map_err(|e| parse_err(s, format!("{e}")))
    }
}

/// 𝔻-join of a list of dimensions; the empty join is 1.
pub fn dims_lcm(dims: &[DivNat]) -> Result<DivNat, VarietyError> {
    dims.iter()
        .try_fold(DivNat::BOTTOM, |acc, &d| acc.checked_join(d))
        .ok_or(VarietyError::Overflow)
}

/// Parses a kite spec (`kite{...}`) or a bare B-cycle spec (`zn:6`,
/// `cycles:2,3`), the latter meaning the kite over that cycle with base ℤ.
pub fn parse_kite_or_bcycle(spec: &str) -> Result<KiteAlgebra, VarietyError> {
    let spec = spec.trim();
    if spec.starts_with("kite") {
        Ok(spec.parse::<KiteAlgebra>()?)
    } else {
        let b = BCycle::parse(spec).map_err(KiteError::from)?;
        Ok(KiteAlgebra::over_bcycle(&b, &VecGroup::integer(1)))
    }
}

/// Dimension of the variety generated by the given kites: the 𝔻-join of
/// their dimensions.
pub fn dim_of_kite_family<S: AsRef<str>>(specs: &[S]) -> Result<DivNat, VarietyError> {
    let dims = specs
        .iter()
        .map(|s| parse_kite_or_bcycle(s.as_ref()).map(|k| DivNat(k.dim_pmv())))
        .collect::<Result<Vec<_>, _>>()?;
    dims_lcm(&dims)
}

#[derive(Debug, Deserialize, Serialize)]
struct LatticeFile {
    elems: Vec<String>,
    leq: Vec<Vec<bool>>,
}

/// A finite bounded lattice given by its order, standing in for the
/// lattice of nontrivial subvarieties of the negative-cone variety.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelLattice {
    elems: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
}

impl Default for LabelLattice {
    /// The 2-chain `Ab < All`.
    fn default() -> LabelLattice {
        LabelLattice::new(
            vec!["Ab".into(), "All".into()],
            vec![vec![true, true], vec![false, true]],
        )
        .expect("2-chain is a lattice")
    }
}

impl LabelLattice {
    pub fn new(elems: Vec<String>, leq: Vec<Vec<bool>>) -> Result<LabelLattice, VarietyError> {
        let n = elems.len();
        let bad = |m: String| Err(VarietyError::BadLattice(m));
        if n == 0 {
            return bad("no elements".into());
        }
        if leq.len() != n || leq.iter().any(|r| r.len() != n) {
            return bad(format!("order table must be {n}×{n}"));
        }
        for (i, e) in elems.iter().enumerate() {
            if elems[..i].contains(e) {
                return bad(format!("duplicate element `{e}`"));
            }
        }
        for a in 0..n {
            if !leq[a][a] {
                return bad(format!("not reflexive at {}", elems[a]));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return bad(format!("not antisymmetric at {}, {}", elems[a], elems[b]));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return bad(format!("not transitive at {}, {}, {}", elems[a], elems[b], elems[c]));
                    }
                }
            }
        }
        // least upper bound: an upper bound below every other upper bound
        let bound = |a: usize, b: usize, up: bool| -> Option<usize> {
            let rel = |x: usize, y: usize| if up { leq[x][y] } else { leq[y][x] };
            let bounds: Vec<usize> = (0..n).filter(|&c| rel(a, c) && rel(b, c)).collect();
            bounds.iter().copied().find(|&c| bounds.iter().all(|&d| rel(c, d)))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        for a in 0..n {
            for b in 0..n {
                match (bound(a, b, false), bound(a, b, true)) {
                    (Some(m), Some(j)) => {
                        meet[a][b] = m;
                        join[a][b] = j;
                    }
                    _ => return bad(format!("{} and {} lack a meet or join", elems[a], elems[b])),
                }
            }
        }
        Ok(LabelLattice { elems, leq, meet, join })
    }

    pub fn from_json(text: &str) -> Result<LabelLattice, VarietyError> {
        let f: LatticeFile = serde_json::from_str(text).map_err(|e| VarietyError::BadLattice(e.to_string()))?;
        LabelLattice::new(f.elems, f.leq)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&LatticeFile {
            elems: self.elems.clone(),
            leq: self.leq.clone(),
        })
        .expect("plain data")
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elems[i]
    }

    pub fn index(&self, name: &str) -> Result<usize, VarietyError> {
        self.elems
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| VarietyError::UnknownLabel(name.to_string()))
    }

    fn check(&self, i: usize) -> Result<usize, VarietyError> {
        if i < self.size() {
            Ok(i)
        } else {
            Err(VarietyError::ForeignLabel(i))
        }
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }
}

/// A point of `1 ⊕ (Λ⁺ × 𝔻)`: the Boolean variety, or a label paired with
/// a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KiteVarietyPoint {
    Boolean,
    Pair { label: usize, dim: DivNat },
}

impl KiteVarietyPoint {
    pub fn pair(label: usize, dim: u64) -> KiteVarietyPoint {
        KiteVarietyPoint::Pair { label, dim: DivNat(dim) }
    }

    fn check(self, lat: &LabelLattice) -> Result<KiteVarietyPoint, VarietyError> {
        if let KiteVarietyPoint::Pair { label, .. } = self {
            lat.check(label)?;
        }
        Ok(self)
    }

    /// Parses `BA` or `(label, n)`.
    pub fn parse(text: &str, lat: &LabelLattice) -> Result<KiteVarietyPoint, VarietyError> {
        let t = text.trim();
        if t == "BA" {
            return Ok(KiteVarietyPoint::Boolean);
        }
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| parse_err(text, "expected `BA` or `(label, n)`"))?;
        let (label, n) = inner
            .split_once(',')
            .ok_or_else(|| parse_err(text, "expected `(label, n)`"))?;
        Ok(KiteVarietyPoint::Pair {
            label: lat.index(label.trim())?,
            dim: n.parse().map_err(|_| parse_err(text, "dimension must be a natural number"))?,
        })
    }

    pub fn display(&self, lat: &LabelLattice) -> String {
        match self {
            KiteVarietyPoint::Boolean => "BA".to_string(),
            KiteVarietyPoint::Pair { label, dim } => format!("({},{})", lat.name(*label), dim),
        }
    }
}

pub fn kv_leq(x: KiteVarietyPoint, y: KiteVarietyPoint, lat: &LabelLattice) -> Result<bool, VarietyError> {
    use KiteVarietyPoint::*;
    Ok(match (x.check(lat)?, y.check(lat)?) {
        (Boolean, _) => true,
        (Pair { .. }, Boolean) => false,
        (Pair { label: a, dim: n }, Pair { label: b, dim: m }) => lat.leq(a, b) && n.leq(m),
    })
}

pub fn kv_join(x: KiteVarietyPoint, y: KiteVarietyPoint, lat: &LabelLattice) -> Result<KiteVarietyPoint, VarietyError> {
    use KiteVarietyPoint::*;
    Ok(match (x.check(lat)?, y.check(lat)?) {
        (Boolean, p) | (p, Boolean) => p,
        (Pair { label: a, dim: n }, Pair { label: b, dim: m }) => Pair {
            label: lat.join(a, b),
            dim: n.checked_join(m).ok_or(VarietyError::Overflow)?,
        },
    })
}

pub fn kv_meet(x: KiteVarietyPoint, y: KiteVarietyPoint, lat: &LabelLattice) -> Result<KiteVarietyPoint, VarietyError> {
    use KiteVarietyPoint::*;
    Ok(match (x.check(lat)?, y.check(lat)?) {
        (Boolean, _) | (_, Boolean) => Boolean,
        (Pair { label: a, dim: n }, Pair { label: b, dim: m }) => Pair {
            label: lat.meet(a, b),
            dim: n.meet(m),
        },
    })
}
