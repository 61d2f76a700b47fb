//! Fixtures shared by the benchmarks.

use kiteforge::finalg::corpus;
use kiteforge::{FinFLw, KiteAlgebra, LAut, VecGroup};

/// `kite(ℚ³, cyclic shift)`, the slowest of the standard axiom targets.
pub fn shift3() -> KiteAlgebra {
    KiteAlgebra::new(VecGroup::rational(3), LAut::cyclic_shift(3)).expect("valid kite")
}

/// A handful of small algebras with nontrivial filter lattices.
pub fn filter_targets() -> Vec<FinFLw> {
    vec![corpus::luk3(), corpus::godel3(), corpus::boolean2()]
}
