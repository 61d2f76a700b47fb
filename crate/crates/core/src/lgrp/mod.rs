//! Abelian ℓ-groups of exact rational (or integer) vectors with the pointwise
//! order, their permutation-and-scaling automorphisms, the antilexicographic
//! semidirect product with ℤ, and the Γ interval algebra.

mod aut;
mod linear;
mod semidirect;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

pub use aut::LAut;
pub use linear::LinearMap;
pub use semidirect::{GammaAlgebra, GammaElem, Semidirect, SemidirectElem};

/// Exact rationals, always reduced.
pub type Rational = num::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LgrpError {
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("scale at index {index} is not positive: {value}")]
    NonPositiveScale { index: usize, value: String },
    #[error("automorphism does not preserve the integer lattice (scale {value} at index {index})")]
    NotIntegral { index: usize, value: String },
    #[error("value {0} is not in the group")]
    NotInGroup(String),
    #[error("element {0} lies outside the Γ interval")]
    OutsideInterval(String),
    #[error("not a monomial matrix: {0}")]
    NotMonomial(String),
    #[error("cannot parse `{input}`: {message}")]
    Parse { input: String, message: String },
}

fn parse_err(input: &str, message: impl Into<String>) -> LgrpError {
    LgrpError::Parse {
        input: input.to_string(),
        message: message.into(),
    }
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational, LgrpError> {
    let s = s.trim();
    Rational::from_str(s).map_err(|e| parse_err(s, e.to_string()))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// A vector of exact rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LVec(pub Vec<Rational>);

impl LVec {
    pub fn zero(k: usize) -> LVec {
        LVec(vec![Rational::zero(); k])
    }

    pub fn from_ints(v: &[i64]) -> LVec {
        LVec(v.iter().map(|&x| int(x)).collect())
    }

    pub fn basis(k: usize, j: usize) -> LVec {
        let mut v = LVec::zero(k);
        v.0[j] = Rational::one();
        v
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    /// Pointwise `≤`.
    pub fn leq(&self, other: &LVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn meet(&self, other: &LVec) -> LVec {
        LVec(self.0.iter().zip(&other.0).map(|(a, b)| a.min(b).clone()).collect())
    }

    pub fn join(&self, other: &LVec) -> LVec {
        LVec(self.0.iter().zip(&other.0).map(|(a, b)| a.max(b).clone()).collect())
    }

    /// `x ∧ e`
    pub fn meet_zero(&self) -> LVec {
        LVec(self.0.iter().map(|a| if a.is_positive() { Rational::zero() } else { a.clone() }).collect())
    }

    /// `x ∨ e`
    pub fn join_zero(&self) -> LVec {
        LVec(self.0.iter().map(|a| if a.is_negative() { Rational::zero() } else { a.clone() }).collect())
    }

    pub fn is_negative_cone(&self) -> bool {
        self.0.iter().all(|a| !a.is_positive())
    }

    pub fn is_positive_cone(&self) -> bool {
        self.0.iter().all(|a| !a.is_negative())
    }

    pub fn scale(&self, c: &Rational) -> LVec {
        LVec(self.0.iter().map(|a| a * c).collect())
    }
}

impl Add for &LVec {
    type Output = LVec;
    fn add(self, rhs: &LVec) -> LVec {
        LVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LVec {
    type Output = LVec;
    fn sub(self, rhs: &LVec) -> LVec {
        LVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LVec {
    type Output = LVec;
    fn neg(self) -> LVec {
        LVec(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for LVec {
    type Err = LgrpError;

    /// Parses `[p/q, ...]`; a bare scalar is a one-entry vector.
    fn from_str(s: &str) -> Result<LVec, LgrpError> {
        let t = s.trim();
        let inner = match t.strip_prefix('[') {
            Some(rest) => rest
                .strip_suffix(']')
                .ok_or_else(|| parse_err(s, "missing `]`"))?,
            None => t,
        };
        if inner.trim().is_empty() {
            return Err(parse_err(s, "empty vector"));
        }
        inner.split(',').map(parse_rational).collect::<Result<_, _>>().map(LVec)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Domain {
    Integer,
    Rational,
}

/// `ℤ^k` or `ℚ^k` with pointwise order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VecGroup {
    arity: usize,
    domain: Domain,
}

impl VecGroup {
    pub fn new(arity: usize, domain: Domain) -> Result<VecGroup, LgrpError> {
        if arity == 0 {
            return Err(LgrpError::ArityMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(VecGroup { arity, domain })
    }

    pub fn rational(arity: usize) -> VecGroup {
        VecGroup::new(arity, Domain::Rational).expect("positive arity")
    }

    pub fn integer(arity: usize) -> VecGroup {
        VecGroup::new(arity, Domain::Integer).expect("positive arity")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// The `n`-fold power, used for groups of functions on a B-cycle.
    pub fn power(&self, n: usize) -> VecGroup {
        VecGroup {
            arity: self.arity * n,
            domain: self.domain,
        }
    }

    pub fn identity(&self) -> LVec {
        LVec::zero(self.arity)
    }

    pub fn check(&self, x: &LVec) -> Result<(), LgrpError> {
        if x.arity() != self.arity {
            return Err(LgrpError::ArityMismatch {
                expected: self.arity,
                found: x.arity(),
            });
        }
        if self.domain == Domain::Integer && !x.0.iter().all(|a| a.is_integer()) {
            return Err(LgrpError::NotInGroup(x.to_string()));
        }
        Ok(())
    }

    pub fn contains(&self, x: &LVec) -> bool {
        self.check(x).is_ok()
    }

    pub fn parse_element(&self, s: &str) -> Result<LVec, LgrpError> {
        let v: LVec = s.parse()?;
        self.check(&v)?;
        Ok(v)
    }
}

impl fmt::Display for VecGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.domain {
            Domain::Integer => "Z",
            Domain::Rational => "Q",
        };
        write!(f, "{d}^{}", self.arity)
    }
}

impl FromStr for VecGroup {
    type Err = LgrpError;

    /// `Q^k`, `Z^k`, `Q` or `Z`.
    fn from_str(s: &str) -> Result<VecGroup, LgrpError> {
        let t = s.trim();
        let (d, k) = match t.split_once('^') {
            Some((d, k)) => (
                d.trim(),
                k.trim()
                    .parse::<usize>()
                    .map_err(|e| parse_err(s, e.to_string()))?,
            ),
            None => (t, 1),
        };
        let domain = match d {
            "Q" => Domain::Rational,
            "Z" => Domain::Integer,
            _ => return Err(parse_err(s, "expected Q or Z")),
        };
        VecGroup::new(k, domain).map_err(|_| parse_err(s, "arity must be positive"))
    }
}
