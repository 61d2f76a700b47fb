use std::collections::HashMap;
use std::fmt;

use super::{AlgebraError, FinFLw, NormalFilter, Tables};

/// The fibers of a homomorphism onto 2 with `J` entirely below `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfectSplit {
    pub ideal: Vec<usize>,
    pub filter: NormalFilter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PerfGenIdentity {
    /// `α(x/x⁻) ∨ β(x⁻/x) = 1`
    One,
    /// `α((x∨x⁻)(y∨y⁻))⁻ ≤ α((x∨x⁻)(y∨y⁻))`
    Two,
    /// `x∧x⁻ ≤ y∨y⁻`
    Three,
}

impl fmt::Display for PerfGenIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = match self {
            PerfGenIdentity::One => 1,
            PerfGenIdentity::Two => 2,
            PerfGenIdentity::Three => 3,
        };
        write!(f, "identity ({n})")
    }
}

/// A failing instance. `alpha`/`beta` are conjugation maps as index arrays.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerfGenFailure {
    pub identity: PerfGenIdentity,
    pub alpha: Option<Vec<usize>>,
    pub beta: Option<Vec<usize>>,
    pub x: usize,
    pub y: Option<usize>,
}

impl FinFLw {
    /// `x⁻ = 0/x`
    pub fn neg_left(&self, x: usize) -> usize {
        self.over(self.bottom(), x)
    }

    /// `x^∼ = x\0`
    pub fn neg_right(&self, x: usize) -> usize {
        self.under(x, self.bottom())
    }

    /// The unique split `(J, F)` witnessing perfectness, if any.
    pub fn is_perfect(&self) -> Result<Option<PerfectSplit>, AlgebraError> {
        if self.size() == 1 {
            return Err(AlgebraError::TrivialAlgebra);
        }
        let mut splits = Vec::new();
        for f in self.all_normal_filters() {
            let ideal: Vec<usize> = self.elements().filter(|&x| !f.contains(x)).collect();
            if ideal.is_empty() {
                continue;
            }
            let is_ideal = ideal.iter().all(|&j| {
                self.elements().all(|y| !self.le(y, j) || !f.contains(y))
                    && ideal.iter().all(|&k| !f.contains(self.jn(j, k)))
            });
            if !is_ideal {
                continue;
            }
            if self.quotient(&f)?.size() != 2 {
                continue;
            }
            if ideal.iter().all(|&j| f.members().iter().all(|&g| self.le(j, g))) {
                splits.push(PerfectSplit { ideal, filter: f });
            }
        }
        if splits.len() > 1 {
            return Err(AlgebraError::Internal(format!(
                "{} distinct perfect splits",
                splits.len()
            )));
        }
        Ok(splits.pop())
    }

    /// The first failing instance of each identity (1)–(3), in that order.
    pub fn perfgen_failures(&self) -> [Option<PerfGenFailure>; 3] {
        let monoid = self.conjugation_monoid();
        let maps = monoid.maps();
        let one = self.top();
        let n = self.size();

        let first = (0..n).find_map(|x| {
            let xm = self.neg_left(x);
            let (p, q) = (self.over(x, xm), self.over(xm, x));
            maps.iter().find_map(|a| {
                maps.iter()
                    .find(|b| self.jn(a[p], b[q]) != one)
                    .map(|b| PerfGenFailure {
                        identity: PerfGenIdentity::One,
                        alpha: Some(a.clone()),
                        beta: Some(b.clone()),
                        x,
                        y: None,
                    })
            })
        });

        let vee = |x: usize| self.jn(x, self.neg_left(x));
        let second = (0..n).find_map(|x| {
            (0..n).find_map(|y| {
                let t = self.m(vee(x), vee(y));
                maps.iter()
                    .find(|a| !self.le(self.neg_left(a[t]), a[t]))
                    .map(|a| PerfGenFailure {
                        identity: PerfGenIdentity::Two,
                        alpha: Some(a.clone()),
                        beta: None,
                        x,
                        y: Some(y),
                    })
            })
        });

        let third = (0..n).find_map(|x| {
            (0..n)
                .find(|&y| !self.le(self.mt(x, self.neg_left(x)), vee(y)))
                .map(|y| PerfGenFailure {
                    identity: PerfGenIdentity::Three,
                    alpha: None,
                    beta: None,
                    x,
                    y: Some(y),
                })
        });
        [first, second, third]
    }

    /// Identities (1)–(3) over all conjugation maps; the first failure if any.
    pub fn check_perfgen_identities(&self) -> Result<(), PerfGenFailure> {
        match self.perfgen_failures().into_iter().flatten().next() {
            Some(w) => Err(w),
            None => Ok(()),
        }
    }

    /// Whether every subdirectly irreducible quotient is perfect.
    pub fn si_quotients_perfect(&self) -> Result<bool, AlgebraError> {
        for f in self.completely_meet_irreducible_filters() {
            if self.quotient(&f)?.is_perfect()?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the identity check agrees with the SI-quotient oracle.
    pub fn perfgen_oracle_agree(&self) -> Result<bool, AlgebraError> {
        Ok(self.check_perfgen_identities().is_ok() == self.si_quotients_perfect()?)
    }

    /// The zone-aligned subalgebra of `∏ As`: tuples lying entirely in the
    /// filters or entirely in the ideals. Tuples are ordered lexicographically
    /// with all-ideal tuples first.
    pub fn perfect_product(factors: &[FinFLw]) -> Result<FinFLw, AlgebraError> {
        if factors.is_empty() {
            return Err(AlgebraError::Shape("empty product".into()));
        }
        let mut splits = Vec::with_capacity(factors.len());
        for (i, a) in factors.iter().enumerate() {
            match a.is_perfect() {
                Ok(Some(s)) => splits.push(s),
                Ok(None) | Err(AlgebraError::TrivialAlgebra) => {
                    return Err(AlgebraError::NotPerfect(i))
                }
                Err(e) => return Err(e),
            }
        }
        let mut elems: Vec<Vec<usize>> = vec![vec![]];
        let mut filter_tuples: Vec<Vec<usize>> = vec![vec![]];
        for s in &splits {
            elems = cartesian(&elems, &s.ideal);
            filter_tuples = cartesian(&filter_tuples, s.filter.members());
        }
        elems.extend(filter_tuples);
        let index: HashMap<&[usize], usize> =
            elems.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
        let k = elems.len();
        let lookup = |t: Vec<usize>| -> Result<usize, AlgebraError> {
            index
                .get(t.as_slice())
                .copied()
                .ok_or_else(|| AlgebraError::Internal(format!("perfect product not closed at {t:?}")))
        };
        let op = |f: &dyn Fn(&FinFLw, usize, usize) -> usize, p: &[usize], q: &[usize]| {
            factors
                .iter()
                .zip(p.iter().zip(q))
                .map(|(a, (&x, &y))| f(a, x, y))
                .collect::<Vec<usize>>()
        };
        let mut t = Tables {
            size: k,
            meet: vec![vec![0; k]; k],
            join: vec![vec![0; k]; k],
            mul: vec![vec![0; k]; k],
            zero: lookup(factors.iter().map(|a| a.bottom()).collect())?,
            one: lookup(factors.iter().map(|a| a.top()).collect())?,
            names: None,
        };
        for (i, p) in elems.iter().enumerate() {
            for (j, q) in elems.iter().enumerate() {
                t.meet[i][j] = lookup(op(&|a, x, y| a.mt(x, y), p, q))?;
                t.join[i][j] = lookup(op(&|a, x, y| a.jn(x, y), p, q))?;
                t.mul[i][j] = lookup(op(&|a, x, y| a.m(x, y), p, q))?;
                lookup(op(&|a, x, y| a.under(x, y), p, q))?;
                lookup(op(&|a, x, y| a.over(x, y), p, q))?;
            }
        }
        let out = FinFLw::validate(&t)?;
        if out.is_perfect()?.is_none() {
            return Err(AlgebraError::Internal("perfect product is not perfect".into()));
        }
        Ok(out)
    }
}

fn cartesian(prefixes: &[Vec<usize>], items: &[usize]) -> Vec<Vec<usize>> {
    prefixes
        .iter()
        .flat_map(|p| {
            items.iter().map(move |&x| {
                let mut t = p.clone();
                t.push(x);
                t
            })
        })
        .collect()
}
