//! A few small named algebras used throughout the tests and the CLI.

use super::{FinFLw, Tables};

/// Meet and join tables of the chain `0 < 1 < ... < n-1`.
pub fn chain_lattice(n: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let meet = (0..n).map(|i| (0..n).map(|j| i.min(j)).collect()).collect();
    let join = (0..n).map(|i| (0..n).map(|j| i.max(j)).collect()).collect();
    (meet, join)
}

fn chain_algebra(n: usize, mul: impl Fn(usize, usize) -> usize) -> FinFLw {
    let (meet, join) = chain_lattice(n);
    let t = Tables {
        size: n,
        meet,
        join,
        mul: (0..n).map(|i| (0..n).map(|j| mul(i, j)).collect()).collect(),
        zero: 0,
        one: n - 1,
        names: None,
    };
    FinFLw::validate(&t).expect("chain algebra is valid")
}

/// The `n`-element Łukasiewicz chain, `i·j = max(0, i+j-(n-1))`.
pub fn lukasiewicz(n: usize) -> FinFLw {
    chain_algebra(n, |i, j| (i + j).saturating_sub(n - 1))
}

/// The `n`-element Gödel chain, product is meet.
pub fn godel(n: usize) -> FinFLw {
    chain_algebra(n, |i, j| i.min(j))
}

pub fn boolean2() -> FinFLw {
    godel(2).with_names(&["0", "1"])
}

/// Ł₃ = {0 < half < 1} with half·half = 0.
pub fn luk3() -> FinFLw {
    lukasiewicz(3).with_names(&["0", "half", "1"])
}

/// The Gödel chain {0 < a < 1}.
pub fn godel3() -> FinFLw {
    godel(3).with_names(&["0", "a", "1"])
}
