use std::fmt;

use super::{LAut, LVec, LgrpError, VecGroup};
use crate::algebra::Algebra;

/// An element `(x, m)` of `L ⋉ ℤ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemidirectElem {
    pub x: LVec,
    pub m: i64,
}

impl SemidirectElem {
    pub fn new(x: LVec, m: i64) -> SemidirectElem {
        SemidirectElem { x, m }
    }
}

impl fmt::Display for SemidirectElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.m)
    }
}

/// The antilexicographically ordered semidirect product of a vector group
/// with ℤ, with `(x,m)(y,n) = (λ^{-n}(x) + y, m+n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semidirect {
    group: VecGroup,
    lambda: LAut,
}

impl Semidirect {
    pub fn new(group: VecGroup, lambda: LAut) -> Result<Semidirect, LgrpError> {
        lambda.check_on(&group)?;
        Ok(Semidirect { group, lambda })
    }

    pub fn group(&self) -> &VecGroup {
        &self.group
    }

    pub fn lambda(&self) -> &LAut {
        &self.lambda
    }

    pub fn identity(&self) -> SemidirectElem {
        SemidirectElem::new(self.group.identity(), 0)
    }

    pub fn mul(&self, a: &SemidirectElem, b: &SemidirectElem) -> SemidirectElem {
        let shifted = if b.m == 0 {
            a.x.clone()
        } else {
            self.lambda.power(-b.m).apply(&a.x)
        };
        SemidirectElem::new(&shifted + &b.x, a.m + b.m)
    }

    /// `(x,m)⁻¹ = (λ^m(-x), -m)`
    pub fn inv(&self, a: &SemidirectElem) -> SemidirectElem {
        let neg = -&a.x;
        let x = if a.m == 0 { neg } else { self.lambda.power(a.m).apply(&neg) };
        SemidirectElem::new(x, -a.m)
    }

    /// Antilexicographic order: compare `m` first, then `x` pointwise.
    pub fn leq(&self, a: &SemidirectElem, b: &SemidirectElem) -> bool {
        a.m < b.m || (a.m == b.m && a.x.leq(&b.x))
    }

    pub fn meet(&self, a: &SemidirectElem, b: &SemidirectElem) -> SemidirectElem {
        match a.m.cmp(&b.m) {
            std::cmp::Ordering::Less => a.clone(),
            std::cmp::Ordering::Greater => b.clone(),
            std::cmp::Ordering::Equal => SemidirectElem::new(a.x.meet(&b.x), a.m),
        }
    }

    pub fn join(&self, a: &SemidirectElem, b: &SemidirectElem) -> SemidirectElem {
        match a.m.cmp(&b.m) {
            std::cmp::Ordering::Less => b.clone(),
            std::cmp::Ordering::Greater => a.clone(),
            std::cmp::Ordering::Equal => SemidirectElem::new(a.x.join(&b.x), a.m),
        }
    }
}

/// An element of the interval `[(e,-1), (e,0)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaElem(SemidirectElem);

impl GammaElem {
    pub fn new(a: SemidirectElem) -> Result<GammaElem, LgrpError> {
        let inside = match a.m {
            0 => a.x.is_negative_cone(),
            -1 => a.x.is_positive_cone(),
            _ => false,
        };
        if inside {
            Ok(GammaElem(a))
        } else {
            Err(LgrpError::OutsideInterval(a.to_string()))
        }
    }

    pub fn inner(&self) -> &SemidirectElem {
        &self.0
    }
}

impl fmt::Display for GammaElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `Γ(L ⋉ ℤ, u⁻¹)` with `u = (e,1)`: `x⊙y = xy ∨ u⁻¹`, `x\y = x⁻¹y ∧ e`,
/// `y/x = yx⁻¹ ∧ e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaAlgebra {
    sd: Semidirect,
}

impl GammaAlgebra {
    pub fn new(group: VecGroup, lambda: LAut) -> Result<GammaAlgebra, LgrpError> {
        Ok(GammaAlgebra {
            sd: Semidirect::new(group, lambda)?,
        })
    }

    pub fn semidirect(&self) -> &Semidirect {
        &self.sd
    }

    fn wrap(&self, a: SemidirectElem) -> GammaElem {
        GammaElem::new(a).expect("Γ operations stay in the interval")
    }

    fn bottom(&self) -> SemidirectElem {
        SemidirectElem::new(self.sd.group().identity(), -1)
    }
}

impl Algebra for GammaAlgebra {
    type Elem = GammaElem;

    fn meet(&self, x: &GammaElem, y: &GammaElem) -> GammaElem {
        self.wrap(self.sd.meet(&x.0, &y.0))
    }
    fn join(&self, x: &GammaElem, y: &GammaElem) -> GammaElem {
        self.wrap(self.sd.join(&x.0, &y.0))
    }
    fn mul(&self, x: &GammaElem, y: &GammaElem) -> GammaElem {
        self.wrap(self.sd.join(&self.sd.mul(&x.0, &y.0), &self.bottom()))
    }
    fn ldiv(&self, x: &GammaElem, y: &GammaElem) -> GammaElem {
        let p = self.sd.mul(&self.sd.inv(&x.0), &y.0);
        self.wrap(self.sd.meet(&p, &self.sd.identity()))
    }
    fn rdiv(&self, y: &GammaElem, x: &GammaElem) -> GammaElem {
        let p = self.sd.mul(&y.0, &self.sd.inv(&x.0));
        self.wrap(self.sd.meet(&p, &self.sd.identity()))
    }
    fn zero(&self) -> GammaElem {
        GammaElem(self.bottom())
    }
    fn one(&self) -> GammaElem {
        GammaElem(self.sd.identity())
    }
    fn leq(&self, x: &GammaElem, y: &GammaElem) -> bool {
        self.sd.leq(&x.0, &y.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: &[i64], m: i64) -> SemidirectElem {
        SemidirectElem::new(LVec::from_ints(v), m)
    }

    #[test]
    fn products() {
        let id = Semidirect::new(VecGroup::rational(2), LAut::identity(2)).unwrap();
        assert_eq!(id.mul(&e(&[1, 2], 1), &e(&[3, 4], 1)), e(&[4, 6], 2));
        let swap = Semidirect::new(VecGroup::rational(2), LAut::permutation(vec![1, 0]).unwrap()).unwrap();
        assert_eq!(swap.mul(&e(&[1, 2], 1), &e(&[3, 4], 1)), e(&[5, 5], 2));
        assert_eq!(swap.inv(&e(&[1, 2], 0)), e(&[-1, -2], 0));
        for a in [e(&[1, 2], 3), e(&[-4, 0], -1), e(&[0, 7], 0)] {
            assert_eq!(swap.mul(&a, &swap.inv(&a)), swap.identity());
            assert_eq!(swap.mul(&swap.inv(&a), &a), swap.identity());
        }
    }

    #[test]
    fn antilex_order() {
        let sd = Semidirect::new(VecGroup::rational(2), LAut::identity(2)).unwrap();
        assert!(sd.leq(&e(&[100, 100], -1), &e(&[-100, -100], 0)));
        assert!(!sd.leq(&e(&[1, 0], 0), &e(&[0, 1], 0)));
        assert_eq!(sd.meet(&e(&[1, 0], 0), &e(&[0, 1], 0)), e(&[0, 0], 0));
        assert_eq!(sd.join(&e(&[1, 0], 0), &e(&[9, 9], -3)), e(&[1, 0], 0));
    }

    #[test]
    fn gamma_examples() {
        let g = GammaAlgebra::new(VecGroup::integer(1), LAut::identity(1)).unwrap();
        let zero = g.zero();
        assert_eq!(g.mul(&zero, &zero), zero);
        let a = GammaElem::new(e(&[-1], 0)).unwrap();
        let b = GammaElem::new(e(&[-2], 0)).unwrap();
        assert_eq!(g.mul(&a, &b).inner(), &e(&[-3], 0));
        assert_eq!(g.one().inner(), &e(&[0], 0));
        assert!(GammaElem::new(e(&[1], 0)).is_err());
        assert!(GammaElem::new(e(&[-1], -1)).is_err());
        assert!(GammaElem::new(e(&[0], -2)).is_err());
    }
}
