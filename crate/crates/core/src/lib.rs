//! Exact constructions and checkers for finite FL_w-algebras, rational vector
//! ℓ-groups, generalized kites `K(L, λ)`, kites over B-cycles, and the lattice
//! of kite-generated varieties.
//!
//! All arithmetic is exact: finite algebras are operation tables over `usize`
//! indices, and ℓ-group elements are vectors of arbitrary-precision rationals.
//! Randomized checks are seeded and sharded deterministically, so a given
//! `(seed, samples)` pair always yields the same report.

pub mod algebra;
pub mod bcycle;
pub mod finalg;
pub mod kite;
pub mod lgrp;
pub mod parallel;
pub mod report;
pub mod terms;
pub mod variety;

pub use algebra::Algebra;
pub use bcycle::{BCycle, BCycleError};
pub use finalg::{AlgebraError, ConjMonoid, FinFLw, NormalFilter};
pub use kite::{KiteAlgebra, KiteElem, KiteError, Zone};
pub use lgrp::{GammaAlgebra, GammaElem, LAut, LVec, LgrpError, Rational, Semidirect, SemidirectElem, VecGroup};
pub use report::{CheckReport, Status};
pub use terms::{Equation, Term, TermError};
pub use variety::{DivNat, KiteVarietyPoint, LabelLattice, VarietyError};
