//! The operation interface shared by every carrier in the crate.

use std::fmt::Debug;

/// An FL-algebra `(A; ∧, ∨, ·, \, /, 0, 1)` given by its operations.
///
/// `ldiv(x, y)` is `x\y` and `rdiv(x, y)` is `x/y`.
pub trait Algebra {
    type Elem: Clone + PartialEq + Debug;

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn ldiv(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn rdiv(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.meet(x, y) == *x
    }

    /// `x⁻ = 0/x`
    fn negl(&self, x: &Self::Elem) -> Self::Elem {
        self.rdiv(&self.zero(), x)
    }

    /// `x^∼ = x\0`
    fn negr(&self, x: &Self::Elem) -> Self::Elem {
        self.ldiv(x, &self.zero())
    }

    /// `x ⊕ y = (x⁻ · y⁻)^∼`
    fn oplus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.negr(&self.mul(&self.negl(x), &self.negl(y)))
    }
}
