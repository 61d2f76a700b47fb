use std::fmt;

use num::integer::lcm;
use num::{One, Signed};

use super::{parse_err, parse_rational, Domain, LVec, LgrpError, Rational, VecGroup};

/// A permutation followed by positive diagonal scaling:
/// `λ(x)(i) = c_i · x(β(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LAut {
    perm: Vec<usize>,
    scale: Vec<Rational>,
}

impl LAut {
    pub fn new(perm: Vec<usize>, scale: Vec<Rational>) -> Result<LAut, LgrpError> {
        if perm.len() != scale.len() {
            return Err(LgrpError::ArityMismatch {
                expected: perm.len(),
                found: scale.len(),
            });
        }
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(LgrpError::NotAPermutation(perm));
            }
            seen[p] = true;
        }
        if let Some((index, c)) = scale.iter().enumerate().find(|(_, c)| !c.is_positive()) {
            return Err(LgrpError::NonPositiveScale {
                index,
                value: c.to_string(),
            });
        }
        Ok(LAut { perm, scale })
    }

    pub fn identity(k: usize) -> LAut {
        LAut::permutation((0..k).collect()).expect("identity permutation")
    }

    pub fn permutation(perm: Vec<usize>) -> Result<LAut, LgrpError> {
        let k = perm.len();
        LAut::new(perm, vec![Rational::one(); k])
    }

    pub fn scaling(scale: Vec<Rational>) -> Result<LAut, LgrpError> {
        let k = scale.len();
        LAut::new((0..k).collect(), scale)
    }

    /// `λ(x)(i) = x(i+1 mod k)`
    pub fn cyclic_shift(k: usize) -> LAut {
        LAut::permutation((0..k).map(|i| (i + 1) % k).collect()).expect("shift is a bijection")
    }

    pub fn arity(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn scales(&self) -> &[Rational] {
        &self.scale
    }

    /// Checks arity and, for integer groups, that the integer lattice is
    /// mapped onto itself (all scales 1).
    pub fn check_on(&self, group: &VecGroup) -> Result<(), LgrpError> {
        if self.arity() != group.arity() {
            return Err(LgrpError::ArityMismatch {
                expected: group.arity(),
                found: self.arity(),
            });
        }
        if group.domain() == Domain::Integer {
            if let Some((index, c)) = self.scale.iter().enumerate().find(|(_, c)| !c.is_one()) {
                return Err(LgrpError::NotIntegral {
                    index,
                    value: c.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn try_apply(&self, x: &LVec) -> Result<LVec, LgrpError> {
        if x.arity() != self.arity() {
            return Err(LgrpError::ArityMismatch {
                expected: self.arity(),
                found: x.arity(),
            });
        }
        Ok(self.apply(x))
    }

    /// Panics on arity mismatch; see [`LAut::try_apply`].
    pub fn apply(&self, x: &LVec) -> LVec {
        assert_eq!(x.arity(), self.arity(), "arity mismatch");
        LVec(
            self.perm
                .iter()
                .zip(&self.scale)
                .map(|(&b, c)| c * &x.0[b])
                .collect(),
        )
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &LAut) -> Result<LAut, LgrpError> {
        if other.arity() != self.arity() {
            return Err(LgrpError::ArityMismatch {
                expected: self.arity(),
                found: other.arity(),
            });
        }
        Ok(LAut {
            perm: self.perm.iter().map(|&b| other.perm[b]).collect(),
            scale: self
                .perm
                .iter()
                .zip(&self.scale)
                .map(|(&b, c)| c * &other.scale[b])
                .collect(),
        })
    }

    pub fn invert(&self) -> LAut {
        let k = self.arity();
        let mut inv = vec![0; k];
        for (i, &b) in self.perm.iter().enumerate() {
            inv[b] = i;
        }
        let scale = inv.iter().map(|&i| self.scale[i].recip()).collect();
        LAut { perm: inv, scale }
    }

    /// `λⁿ` for any integer `n`, with `λ⁰ = id`.
    pub fn power(&self, n: i64) -> LAut {
        let base = if n < 0 { self.invert() } else { self.clone() };
        let mut acc = LAut::identity(self.arity());
        let mut sq = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq).expect("same arity");
            }
            sq = sq.compose(&sq).expect("same arity");
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &b)| i == b) && self.scale.iter().all(|c| c.is_one())
    }

    /// Cycles of β, each listed from its least index along `i ↦ β(i)`.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.arity()];
        let mut out = Vec::new();
        for start in 0..self.arity() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![];
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.perm[i];
            }
            out.push(cycle);
        }
        out
    }

    /// A cycle whose scales do not multiply to 1, with that product.
    pub fn unbalanced_cycle(&self) -> Option<(Vec<usize>, Rational)> {
        self.cycles().into_iter().find_map(|c| {
            let p: Rational = c.iter().map(|&i| self.scale[i].clone()).product();
            (!p.is_one()).then_some((c, p))
        })
    }

    /// Least `n > 0` with `λⁿ = id`, or 0 if there is none. Along a cycle of
    /// length ℓ, `λ^ℓ` multiplies each coordinate by the product of the
    /// cycle's scales, so a finite order exists exactly when every such
    /// product is 1, and it is then the lcm of the cycle lengths.
    pub fn dimension(&self) -> u64 {
        if self.unbalanced_cycle().is_some() {
            return 0;
        }
        let n = self.cycles().iter().map(|c| c.len() as u64).fold(1, lcm);
        debug_assert!(self.fixes_basis(n as i64));
        n
    }

    /// Whether `λⁿ` fixes every basis vector.
    pub fn fixes_basis(&self, n: i64) -> bool {
        let p = self.power(n);
        (0..self.arity()).all(|j| {
            let e = LVec::basis(self.arity(), j);
            p.apply(&e) == e
        })
    }

    /// Recovers λ from the images of the basis vectors, which must form a
    /// monomial matrix with positive entries.
    pub fn from_basis_images(images: &[LVec]) -> Result<LAut, LgrpError> {
        let k = images.len();
        let mut perm = vec![usize::MAX; k];
        let mut scale = vec![Rational::one(); k];
        for (j, img) in images.iter().enumerate() {
            if img.arity() != k {
                return Err(LgrpError::ArityMismatch {
                    expected: k,
                    found: img.arity(),
                });
            }
            let nonzero: Vec<usize> = (0..k).filter(|&i| !num::Zero::is_zero(&img.0[i])).collect();
            let [i] = nonzero[..] else {
                return Err(LgrpError::NotMonomial(format!("column {j} is {img}")));
            };
            if perm[i] != usize::MAX {
                return Err(LgrpError::NotMonomial(format!("row {i} used twice")));
            }
            perm[i] = j;
            scale[i] = img.0[i].clone();
        }
        LAut::new(perm, scale)
    }

    /// Parses `perm:(0 1)(2);scale:1,2,1`. Either part may be omitted;
    /// `id` is the identity and a single scale applies to every coordinate.
    pub fn parse(spec: &str, arity: usize) -> Result<LAut, LgrpError> {
        let mut perm: Vec<usize> = (0..arity).collect();
        let mut scale = vec![Rational::one(); arity];
        for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "id" {
                continue;
            } else if let Some(cycles) = part.strip_prefix("perm:") {
                perm = parse_cycles(cycles, arity).map_err(|m| parse_err(spec, m))?;
            } else if let Some(list) = part.strip_prefix("scale:") {
                let vals = list
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<Vec<_>, _>>()?;
                scale = match vals.len() {
                    1 => vec![vals[0].clone(); arity],
                    n if n == arity => vals,
                    n => return Err(parse_err(spec, format!("{n} scales for arity {arity}"))),
                };
            } else {
                return Err(parse_err(spec, format!("unknown part `{part}`")));
            }
        }
        LAut::new(perm, scale)
    }
}

fn parse_cycles(text: &str, arity: usize) -> Result<Vec<usize>, String> {
    let mut perm: Vec<usize> = (0..arity).collect();
    let mut moved = vec![false; arity];
    let mut rest = text.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or("expected `(`")?;
        let end = body.find(')').ok_or("expected `)`")?;
        let items = body[..end]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse::<usize>().map_err(|e| e.to_string()))
            .collect::<Result<Vec<_>, _>>()?;
        for (idx, &i) in items.iter().enumerate() {
            if i >= arity {
                return Err(format!("index {i} out of range for arity {arity}"));
            }
            if moved[i] {
                return Err(format!("index {i} appears twice"));
            }
            moved[i] = true;
            perm[i] = items[(idx + 1) % items.len()];
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(perm)
}

impl fmt::Display for LAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "perm:")?;
        for c in self.cycles().iter().filter(|c| c.len() > 1) {
            let items: Vec<String> = c.iter().map(|i| i.to_string()).collect();
            write!(f, "({})", items.join(" "))?;
        }
        let scales: Vec<String> = self.scale.iter().map(|c| c.to_string()).collect();
        write!(f, ";scale:{}", scales.join(","))
    }
}
