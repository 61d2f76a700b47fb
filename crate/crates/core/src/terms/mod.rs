//! The FL term language: abstract syntax, a function-style parser and printer,
//! evaluation over any [`Algebra`], and the two term transforms used to move
//! identities between an algebra and its filter (`t = 1` normal form and the
//! `x ↦ x ∨ x⁻` relativization).

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Algebra;

pub use parse::{parse_equation, parse_term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("undeclared variable `{name}` at byte {offset}")]
    UndeclaredVariable { name: String, offset: usize },
    #[error("no binding for variable `{0}`")]
    MissingBinding(String),
}

/// A term over the signature `{∧, ∨, ·, \, /, 0, 1}`.
///
/// Children are reference counted, so cloning and substitution share
/// unchanged subtrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    Zero,
    One,
    Meet(Arc<Term>, Arc<Term>),
    Join(Arc<Term>, Arc<Term>),
    Mul(Arc<Term>, Arc<Term>),
    /// `l \ r`
    LDiv(Arc<Term>, Arc<Term>),
    /// `l / r`
    RDiv(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn meet(l: Term, r: Term) -> Term {
        Term::Meet(Arc::new(l), Arc::new(r))
    }

    pub fn join(l: Term, r: Term) -> Term {
        Term::Join(Arc::new(l), Arc::new(r))
    }

    pub fn mul(l: Term, r: Term) -> Term {
        Term::Mul(Arc::new(l), Arc::new(r))
    }

    pub fn ldiv(l: Term, r: Term) -> Term {
        Term::LDiv(Arc::new(l), Arc::new(r))
    }

    pub fn rdiv(l: Term, r: Term) -> Term {
        Term::RDiv(Arc::new(l), Arc::new(r))
    }

    /// `t⁻ = 0/t`
    pub fn negl(t: Term) -> Term {
        Term::rdiv(Term::Zero, t)
    }

    /// `t^∼ = t\0`
    pub fn negr(t: Term) -> Term {
        Term::ldiv(t, Term::Zero)
    }

    /// `s ⊕ t = (s⁻ · t⁻)^∼`
    pub fn oplus(s: Term, t: Term) -> Term {
        Term::negr(Term::mul(Term::negl(s), Term::negl(t)))
    }

    fn children(&self) -> Option<(&Arc<Term>, &Arc<Term>)> {
        match self {
            Term::Meet(l, r)
            | Term::Join(l, r)
            | Term::Mul(l, r)
            | Term::LDiv(l, r)
            | Term::RDiv(l, r) => Some((l, r)),
            Term::Var(_) | Term::Zero | Term::One => None,
        }
    }

    fn rebuild(&self, l: Term, r: Term) -> Term {
        match self {
            Term::Meet(..) => Term::meet(l, r),
            Term::Join(..) => Term::join(l, r),
            Term::Mul(..) => Term::mul(l, r),
            Term::LDiv(..) => Term::ldiv(l, r),
            Term::RDiv(..) => Term::rdiv(l, r),
            Term::Var(_) | Term::Zero | Term::One => self.clone(),
        }
    }

    pub fn depth(&self) -> usize {
        match self.children() {
            Some((l, r)) => 1 + l.depth().max(r.depth()),
            None => 0,
        }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(name) => {
                out.insert(name.to_string());
            }
            _ => {
                if let Some((l, r)) = self.children() {
                    l.collect_vars(out);
                    r.collect_vars(out);
                }
            }
        }
    }

    /// Replaces every variable by `f(name)`; all other nodes are rebuilt as is.
    pub fn substitute(&self, f: &impl Fn(&str) -> Term) -> Term {
        match self {
            Term::Var(name) => f(name),
            Term::Zero | Term::One => self.clone(),
            _ => {
                let (l, r) = self.children().expect("binary node");
                self.rebuild(l.substitute(f), r.substitute(f))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(name) => write!(f, "{name}"),
            Term::Zero => write!(f, "0"),
            Term::One => write!(f, "1"),
            Term::Meet(l, r) => write!(f, "meet({l},{r})"),
            Term::Join(l, r) => write!(f, "join({l},{r})"),
            Term::Mul(l, r) => write!(f, "mul({l},{r})"),
            Term::LDiv(l, r) => write!(f, "under({l},{r})"),
            Term::RDiv(l, r) => write!(f, "over({l},{r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut vars = self.lhs.variables();
        vars.extend(self.rhs.variables());
        vars
    }

    /// Applies [`vee_neg_substitute`] to both sides.
    pub fn relativize(&self) -> Equation {
        Equation::new(vee_neg_substitute(&self.lhs), vee_neg_substitute(&self.rhs))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={}", self.lhs, self.rhs)
    }
}

/// Evaluates `t` bottom-up in `alg` under the assignment `env`.
pub fn eval<A: Algebra>(
    t: &Term,
    alg: &A,
    env: &BTreeMap<String, A::Elem>,
) -> Result<A::Elem, TermError> {
    Ok(match t {
        Term::Var(name) => env
            .get(name.as_ref())
            .cloned()
            .ok_or_else(|| TermError::MissingBinding(name.to_string()))?,
        Term::Zero => alg.zero(),
        Term::One => alg.one(),
        Term::Meet(l, r) => alg.meet(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Join(l, r) => alg.join(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::Mul(l, r) => alg.mul(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::LDiv(l, r) => alg.ldiv(&eval(l, alg, env)?, &eval(r, alg, env)?),
        Term::RDiv(l, r) => alg.rdiv(&eval(l, alg, env)?, &eval(r, alg, env)?),
    })
}

/// Rewrites `s = t` as the single term `((s\t) ∧ (t\s)) ∧ 1`.
///
/// In any residuated lattice `a ≤ b` iff `(a\b) ∧ 1 = 1`, so `s = t` holds
/// under an assignment exactly when the returned term evaluates to `1`.
pub fn normalize_to_unit(e: &Equation) -> Term {
    Term::meet(
        Term::meet(
            Term::ldiv(e.lhs.clone(), e.rhs.clone()),
            Term::ldiv(e.rhs.clone(), e.lhs.clone()),
        ),
        Term::One,
    )
}

/// Replaces every variable `x` by `x ∨ x⁻`, leaving all other nodes alone.
pub fn vee_neg_substitute(t: &Term) -> Term {
    t.substitute(&|name| Term::join(Term::var(name), Term::negl(Term::var(name))))
}
