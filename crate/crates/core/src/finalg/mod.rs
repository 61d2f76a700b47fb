//! Finite FL_w-algebras given by exact operation tables.
//!
//! Elements are indices `0..n`. Only the lattice and monoid tables are ever
//! supplied; both residuals are derived as `x\z = max{y : xy ≤ z}` and
//! `z/y = max{x : xy ≤ z}` and then checked against the residuation
//! equivalences.

mod conj;
pub mod corpus;
mod enumerate;
mod filters;
mod perfect;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::Algebra;

pub use conj::ConjMonoid;
pub use enumerate::{
    bounded_lattices, corpus_lock, enumerate_flw, CorpusEntry, CorpusLock, MAX_ENUMERATION_SIZE,
};
pub use filters::{congruence_of_filter, NormalFilter};
pub use perfect::{PerfGenFailure, PerfGenIdentity, PerfectSplit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("malformed tables: {0}")]
    Shape(String),
    #[error("not a lattice: {law} fails at {witness:?}")]
    NotALattice {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("not integral: {witness} is not below 1")]
    NotIntegral { witness: usize },
    #[error("not 0-bounded: 0 is not below {witness}")]
    NotZeroBounded { witness: usize },
    #[error("not a monoid: {law} fails at {witness:?}")]
    NotAMonoid {
        law: &'static str,
        witness: Vec<usize>,
    },
    #[error("{side} residual of ({x}, {z}) has no maximum")]
    NoMaximum {
        side: &'static str,
        x: usize,
        z: usize,
    },
    #[error("not residuated at (x, y, z) = ({x}, {y}, {z}): {detail}")]
    NotResiduated {
        x: usize,
        y: usize,
        z: usize,
        detail: String,
    },
    #[error("not a normal filter: {reason} (witness {witness:?})")]
    NotANormalFilter {
        reason: &'static str,
        witness: Vec<usize>,
    },
    #[error("the one-element algebra is not perfect")]
    TrivialAlgebra,
    #[error("factor {0} is not perfect")]
    NotPerfect(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("invalid algebra file: {0}")]
    Json(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// The on-disk shape of a finite algebra. Residual tables are never read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub size: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

/// A validated finite FL_w-algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinFLw {
    n: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    mul: Vec<usize>,
    ldiv: Vec<usize>,
    rdiv: Vec<usize>,
    zero: usize,
    one: usize,
    names: Option<Vec<String>>,
}

impl fmt::Debug for FinFLw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinFLw")
            .field("n", &self.n)
            .field("meet", &self.meet)
            .field("mul", &self.mul)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish()
    }
}

fn flatten(name: &str, rows: &[Vec<usize>], n: usize) -> Result<Vec<usize>, AlgebraError> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(AlgebraError::Shape(format!("{name} table is not {n}x{n}")));
    }
    let flat: Vec<usize> = rows.iter().flatten().copied().collect();
    if let Some(bad) = flat.iter().find(|&&v| v >= n) {
        return Err(AlgebraError::Shape(format!("{name} table entry {bad} out of range")));
    }
    Ok(flat)
}

/// `max{y : x·y ≤ z}` for every `(x, z)` and `max{x : x·y ≤ z}` for every
/// `(z, y)`, as flat tables indexed `[x*n + z]` and `[z*n + y]`.
///
/// Expects a valid lattice (`meet`, `join`) and a total `mul`.
pub fn residuals_from_mul(
    n: usize,
    meet: &[usize],
    join: &[usize],
    mul: &[usize],
) -> Result<(Vec<usize>, Vec<usize>), AlgebraError> {
    let leq = |a: usize, b: usize| meet[a * n + b] == a;
    let max_of = |cands: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        let all: Vec<usize> = cands.collect();
        let top = all.iter().copied().reduce(|a, b| join[a * n + b])?;
        all.contains(&top).then_some(top)
    };
    let mut ldiv = vec![0; n * n];
    let mut rdiv = vec![0; n * n];
    for x in 0..n {
        for z in 0..n {
            ldiv[x * n + z] = max_of(&mut (0..n).filter(|&y| leq(mul[x * n + y], z)))
                .ok_or(AlgebraError::NoMaximum { side: "left", x, z })?;
        }
    }
    for z in 0..n {
        for y in 0..n {
            rdiv[z * n + y] = max_of(&mut (0..n).filter(|&x| leq(mul[x * n + y], z)))
                .ok_or(AlgebraError::NoMaximum { side: "right", x: y, z })?;
        }
    }
    Ok((ldiv, rdiv))
}

fn check_lattice(n: usize, meet: &[usize], join: &[usize]) -> Result<(), AlgebraError> {
    let fail = |law, witness| Err(AlgebraError::NotALattice { law, witness });
    for x in 0..n {
        if meet[x * n + x] != x {
            return fail("meet idempotence", vec![x]);
        }
        if join[x * n + x] != x {
            return fail("join idempotence", vec![x]);
        }
        for y in 0..n {
            if meet[x * n + y] != meet[y * n + x] {
                return fail("meet commutativity", vec![x, y]);
            }
            if join[x * n + y] != join[y * n + x] {
                return fail("join commutativity", vec![x, y]);
            }
            if meet[x * n + join[x * n + y]] != x {
                return fail("absorption x∧(x∨y)=x", vec![x, y]);
            }
            if join[x * n + meet[x * n + y]] != x {
                return fail("absorption x∨(x∧y)=x", vec![x, y]);
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if meet[meet[x * n + y] * n + z] != meet[x * n + meet[y * n + z]] {
                    return fail("meet associativity", vec![x, y, z]);
                }
                if join[join[x * n + y] * n + z] != join[x * n + join[y * n + z]] {
                    return fail("join associativity", vec![x, y, z]);
                }
            }
        }
    }
    Ok(())
}

impl FinFLw {
    /// Checks the lattice, monoid and residuation axioms, integrality and
    /// 0-boundedness, deriving the residuals along the way. The first
    /// violated axiom is reported with a witness.
    pub fn validate(tables: &Tables) -> Result<FinFLw, AlgebraError> {
        let n = tables.size;
        if n == 0 {
            return Err(AlgebraError::Shape("size must be positive".into()));
        }
        let meet = flatten("meet", &tables.meet, n)?;
        let join = flatten("join", &tables.join, n)?;
        let mul = flatten("mul", &tables.mul, n)?;
        let (zero, one) = (tables.zero, tables.one);
        if zero >= n || one >= n {
            return Err(AlgebraError::Shape("constant out of range".into()));
        }
        if let Some(names) = &tables.names {
            if names.len() != n {
                return Err(AlgebraError::Shape("names list has the wrong length".into()));
            }
        }
        check_lattice(n, &meet, &join)?;
        let leq = |a: usize, b: usize| meet[a * n + b] == a;
        if let Some(x) = (0..n).find(|&x| !leq(x, one)) {
            return Err(AlgebraError::NotIntegral { witness: x });
        }
        if let Some(x) = (0..n).find(|&x| !leq(zero, x)) {
            return Err(AlgebraError::NotZeroBounded { witness: x });
        }
        for x in 0..n {
            if mul[one * n + x] != x || mul[x * n + one] != x {
                return Err(AlgebraError::NotAMonoid {
                    law: "1 is a unit",
                    witness: vec![x],
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if mul[mul[x * n + y] * n + z] != mul[x * n + mul[y * n + z]] {
                        return Err(AlgebraError::NotAMonoid {
                            law: "associativity",
                            witness: vec![x, y, z],
                        });
                    }
                }
            }
        }
        let (ldiv, rdiv) = residuals_from_mul(n, &meet, &join, &mul).map_err(|e| match e {
            AlgebraError::NoMaximum { side, x, z } => AlgebraError::NotResiduated {
                x,
                y: x,
                z,
                detail: format!("{side} residual has no maximum"),
            },
            other => other,
        })?;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let a = leq(y, ldiv[x * n + z]);
                    let b = leq(mul[x * n + y], z);
                    let c = leq(x, rdiv[z * n + y]);
                    if a != b || b != c {
                        return Err(AlgebraError::NotResiduated {
                            x,
                            y,
                            z,
                            detail: format!(
                                "y≤x\\z is {a}, xy≤z is {b}, x≤z/y is {c}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(FinFLw {
            n,
            meet,
            join,
            mul,
            ldiv,
            rdiv,
            zero,
            one,
            names: tables.names.clone(),
        })
    }

    pub fn from_json(text: &str) -> Result<FinFLw, AlgebraError> {
        let tables: Tables =
            serde_json::from_str(text).map_err(|e| AlgebraError::Json(e.to_string()))?;
        FinFLw::validate(&tables)
    }

    pub fn tables(&self) -> Tables {
        let rows = |t: &[usize]| t.chunks(self.n).map(|r| r.to_vec()).collect();
        Tables {
            size: self.n,
            meet: rows(&self.meet),
            join: rows(&self.join),
            mul: rows(&self.mul),
            zero: self.zero,
            one: self.one,
            names: self.names.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.tables()).expect("tables serialize")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn with_names(mut self, names: &[&str]) -> FinFLw {
        assert_eq!(names.len(), self.n);
        self.names = Some(names.iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn element_name(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => x.to_string(),
        }
    }

    /// Looks an element up by name, falling back to a decimal index.
    pub fn element(&self, s: &str) -> Result<usize, AlgebraError> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|n| n == s) {
                return Ok(i);
            }
        }
        s.parse::<usize>()
            .ok()
            .filter(|&i| i < self.n)
            .ok_or_else(|| AlgebraError::UnknownElement(s.to_string()))
    }

    #[inline]
    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet[x * self.n + y] == x
    }

    #[inline]
    pub fn m(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.n + y]
    }

    #[inline]
    pub fn mt(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.n + y]
    }

    #[inline]
    pub fn jn(&self, x: usize, y: usize) -> usize {
        self.join[x * self.n + y]
    }

    /// `x\y`
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.ldiv[x * self.n + y]
    }

    /// `x/y`
    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.rdiv[x * self.n + y]
    }

    pub fn bottom(&self) -> usize {
        self.zero
    }

    pub fn top(&self) -> usize {
        self.one
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.m(x, y) == self.m(y, x)))
    }

    /// Builds the subalgebra on `members`, which must contain both constants
    /// and be closed under every operation.
    pub fn subalgebra(&self, members: &[usize]) -> Result<FinFLw, AlgebraError> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &x) in members.iter().enumerate() {
            index[x] = i;
        }
        let k = members.len();
        let mut t = Tables {
            size: k,
            meet: vec![vec![0; k]; k],
            join: vec![vec![0; k]; k],
            mul: vec![vec![0; k]; k],
            zero: index[self.zero],
            one: index[self.one],
            names: self
                .names
                .as_ref()
                .map(|names| members.iter().map(|&x| names[x].clone()).collect()),
        };
        if t.zero == usize::MAX || t.one == usize::MAX {
            return Err(AlgebraError::Shape("subuniverse must contain 0 and 1".into()));
        }
        let lookup = |v: usize| -> Result<usize, AlgebraError> {
            match index[v] {
                usize::MAX => Err(AlgebraError::Shape(format!("not closed: {v} escapes"))),
                i => Ok(i),
            }
        };
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                t.meet[i][j] = lookup(self.mt(x, y))?;
                t.join[i][j] = lookup(self.jn(x, y))?;
                t.mul[i][j] = lookup(self.m(x, y))?;
                lookup(self.under(x, y))?;
                lookup(self.over(x, y))?;
            }
        }
        FinFLw::validate(&t)
    }

    /// Every subuniverse, as sorted member lists, in a deterministic order.
    pub fn subuniverses(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        assert!(n <= 20, "subuniverse enumeration is exponential");
        let mut out = Vec::new();
        for mask in 0u32..(1u32 << n) {
            if mask & (1 << self.zero) == 0 || mask & (1 << self.one) == 0 {
                continue;
            }
            let inside = |v: usize| mask & (1 << v) != 0;
            let closed = (0..n).filter(|&x| inside(x)).all(|x| {
                (0..n).filter(|&y| inside(y)).all(|y| {
                    inside(self.mt(x, y))
                        && inside(self.jn(x, y))
                        && inside(self.m(x, y))
                        && inside(self.under(x, y))
                        && inside(self.over(x, y))
                })
            });
            if closed {
                out.push((0..n).filter(|&x| inside(x)).collect());
            }
        }
        out
    }

    /// Relabels elements by `perm` (old index `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> FinFLw {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let remap = |t: &[usize]| -> Vec<usize> {
            let mut out = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    out[a * n + b] = perm[t[inv[a] * n + inv[b]]];
                }
            }
            out
        };
        FinFLw {
            n,
            meet: remap(&self.meet),
            join: remap(&self.join),
            mul: remap(&self.mul),
            ldiv: remap(&self.ldiv),
            rdiv: remap(&self.rdiv),
            zero: perm[self.zero],
            one: perm[self.one],
            names: self
                .names
                .as_ref()
                .map(|names| (0..n).map(|p| names[inv[p]].clone()).collect()),
        }
    }

    /// The lexicographically least `(meet, mul)` table tuple over all
    /// relabelings sending 0 to index 0 and 1 to index `n-1`, together with
    /// the relabeling attaining it.
    pub fn canonical_form(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.n;
        if n == 1 {
            return (vec![0, 0], vec![0]);
        }
        let middle: Vec<usize> = (0..n).filter(|&x| x != self.zero && x != self.one).collect();
        let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
        let mut order = middle.clone();
        let mut perm = vec![0; n];
        for_each_permutation(&mut order, &mut |ord| {
            perm[self.zero] = 0;
            perm[self.one] = n - 1;
            for (slot, &x) in ord.iter().enumerate() {
                perm[x] = slot + 1;
            }
            let key = self.key_under(&perm);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, perm.clone()));
            }
        });
        best.expect("at least one permutation")
    }

    fn key_under(&self, perm: &[usize]) -> Vec<usize> {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let mut key = Vec::with_capacity(2 * n * n);
        for t in [&self.meet, &self.mul] {
            for a in 0..n {
                for b in 0..n {
                    key.push(perm[t[inv[a] * n + inv[b]]]);
                }
            }
        }
        key
    }

    /// The algebra relabeled into canonical form (names dropped).
    pub fn canonical(&self) -> FinFLw {
        let (_, perm) = self.canonical_form();
        let mut c = self.relabel(&perm);
        c.names = None;
        c
    }

    pub fn is_isomorphic(&self, other: &FinFLw) -> bool {
        self.n == other.n && self.canonical_form().0 == other.canonical_form().0
    }

    /// The direct product, with `(a, b)` at index `a * other.size() + b`.
    pub fn product(&self, other: &FinFLw) -> FinFLw {
        let (n, m) = (self.n, other.n);
        let k = n * m;
        let idx = |a: usize, b: usize| a * m + b;
        let mut t = Tables {
            size: k,
            meet: vec![vec![0; k]; k],
            join: vec![vec![0; k]; k],
            mul: vec![vec![0; k]; k],
            zero: idx(self.zero, other.zero),
            one: idx(self.one, other.one),
            names: None,
        };
        for p in 0..k {
            for q in 0..k {
                let (a1, b1, a2, b2) = (p / m, p % m, q / m, q % m);
                t.meet[p][q] = idx(self.mt(a1, a2), other.mt(b1, b2));
                t.join[p][q] = idx(self.jn(a1, a2), other.jn(b1, b2));
                t.mul[p][q] = idx(self.m(a1, a2), other.m(b1, b2));
            }
        }
        FinFLw::validate(&t).expect("products of FL_w-algebras are FL_w-algebras")
    }
}

/// Heap's algorithm; calls `f` once per permutation of `items`.
pub(crate) fn for_each_permutation(items: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn rec(k: usize, items: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            rec(k - 1, items, f);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        rec(k - 1, items, f);
    }
    let len = items.len();
    rec(len, items, f);
}

impl Algebra for FinFLw {
    type Elem = usize;

    fn meet(&self, x: &usize, y: &usize) -> usize {
        self.mt(*x, *y)
    }
    fn join(&self, x: &usize, y: &usize) -> usize {
        self.jn(*x, *y)
    }
    fn mul(&self, x: &usize, y: &usize) -> usize {
        self.m(*x, *y)
    }
    fn ldiv(&self, x: &usize, y: &usize) -> usize {
        self.under(*x, *y)
    }
    fn rdiv(&self, x: &usize, y: &usize) -> usize {
        self.over(*x, *y)
    }
    fn zero(&self) -> usize {
        self.zero
    }
    fn one(&self) -> usize {
        self.one
    }
    fn leq(&self, x: &usize, y: &usize) -> bool {
        self.le(*x, *y)
    }
}
