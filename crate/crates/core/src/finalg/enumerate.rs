//! Isomorph-free enumeration of finite FL_w-algebras.
//!
//! Bounded lattices are generated first, with 0 at index 0, 1 at index
//! `n-1` and the order compatible with the index order. For each lattice the
//! multiplication is found by backtracking over the cells not fixed by
//! `0x = x0 = 0` and `1x = x1 = x`, pruning with `xy ≤ x∧y`, join
//! preservation in both arguments and associativity. In a finite lattice
//! these conditions are exactly residuation. Results are deduplicated by
//! canonical form.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{AlgebraError, FinFLw, Tables};

pub const MAX_ENUMERATION_SIZE: usize = 6;

const UNSET: usize = usize::MAX;

/// Bounded lattices of size `n` as `(meet, join)` row tables, one per
/// isomorphism class, with 0 at index 0 and 1 at index `n-1`.
pub fn bounded_lattices(n: usize) -> Vec<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    assert!(n >= 1);
    if n == 1 {
        return vec![(vec![vec![0]], vec![vec![0]])];
    }
    let middle: Vec<(usize, usize)> = (1..n - 1)
        .flat_map(|i| (i + 1..n - 1).map(move |j| (i, j)))
        .collect();
    let mut seen = BTreeMap::new();
    for mask in 0u64..(1u64 << middle.len()) {
        let mut le = vec![vec![false; n]; n];
        for i in 0..n {
            le[i][i] = true;
            le[0][i] = true;
            le[i][n - 1] = true;
        }
        for (b, &(i, j)) in middle.iter().enumerate() {
            if mask & (1 << b) != 0 {
                le[i][j] = true;
            }
        }
        let transitive = (0..n).all(|a| {
            (0..n).all(|b| !le[a][b] || (0..n).all(|c| !le[b][c] || le[a][c]))
        });
        if !transitive {
            continue;
        }
        let Some((meet, join)) = lattice_ops(&le) else {
            continue;
        };
        // canonical key: least meet table over relabelings of the middle
        let mut order: Vec<usize> = (1..n - 1).collect();
        let mut best: Option<Vec<usize>> = None;
        let mut perm = vec![0; n];
        super::for_each_permutation(&mut order, &mut |ord| {
            perm[0] = 0;
            perm[n - 1] = n - 1;
            for (slot, &x) in ord.iter().enumerate() {
                perm[x] = slot + 1;
            }
            let mut inv = vec![0; n];
            for (x, &p) in perm.iter().enumerate() {
                inv[p] = x;
            }
            let key: Vec<usize> = (0..n * n)
                .map(|c| perm[meet[inv[c / n]][inv[c % n]]])
                .collect();
            if best.as_ref().is_none_or(|b| key < *b) {
                best = Some(key);
            }
        });
        seen.entry(best.expect("nonempty")).or_insert((meet, join));
    }
    seen.into_values().collect()
}

fn lattice_ops(le: &[Vec<bool>]) -> Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
    let n = le.len();
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let lower: Vec<usize> = (0..n).filter(|&c| le[c][a] && le[c][b]).collect();
            meet[a][b] = *lower.iter().find(|&&c| lower.iter().all(|&d| le[d][c]))?;
            let upper: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
            join[a][b] = *upper.iter().find(|&&c| upper.iter().all(|&d| le[c][d]))?;
        }
    }
    Some((meet, join))
}

struct Search<'a> {
    n: usize,
    meet: &'a [Vec<usize>],
    join: &'a [Vec<usize>],
    le: Vec<Vec<bool>>,
    cells: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn consistent(&self, mul: &[usize], x: usize, y: usize) -> bool {
        let n = self.n;
        let get = |a: usize, b: usize| mul[a * n + b];
        let v = get(x, y);
        if !self.le[v][self.meet[x][y]] {
            return false;
        }
        // join preservation: x(a∨b) = xa ∨ xb and (a∨b)y = ay ∨ by
        for a in 0..n {
            for b in 0..n {
                let j = self.join[a][b];
                let (p, q, r) = (get(x, a), get(x, b), get(x, j));
                if p != UNSET && q != UNSET && r != UNSET && self.join[p][q] != r {
                    return false;
                }
                let (p, q, r) = (get(a, y), get(b, y), get(j, y));
                if p != UNSET && q != UNSET && r != UNSET && self.join[p][q] != r {
                    return false;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = get(a, b);
                    let bc = get(b, c);
                    if ab == UNSET || bc == UNSET {
                        continue;
                    }
                    let (l, r) = (get(ab, c), get(a, bc));
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&self, mul: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == self.cells.len() {
            out.push(mul.clone());
            return;
        }
        let (x, y) = self.cells[k];
        for v in 0..self.n {
            if !self.le[v][self.meet[x][y]] {
                continue;
            }
            mul[x * self.n + y] = v;
            if self.consistent(mul, x, y) {
                self.run(mul, k + 1, out);
            }
        }
        mul[x * self.n + y] = UNSET;
    }
}

fn algebras_on_lattice(n: usize, meet: &[Vec<usize>], join: &[Vec<usize>]) -> Vec<FinFLw> {
    let le: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| meet[a][b] == a).collect())
        .collect();
    let mut mul = vec![UNSET; n * n];
    for x in 0..n {
        mul[x] = 0;
        mul[x * n] = 0;
        mul[(n - 1) * n + x] = x;
        mul[x * n + n - 1] = x;
    }
    let cells: Vec<(usize, usize)> = (1..n - 1)
        .flat_map(|x| (1..n - 1).map(move |y| (x, y)))
        .collect();
    let search = Search {
        n,
        meet,
        join,
        le,
        cells,
    };
    let mut found = Vec::new();
    search.run(&mut mul, 0, &mut found);
    found
        .into_iter()
        .filter_map(|m| {
            let t = Tables {
                size: n,
                meet: meet.to_vec(),
                join: join.to_vec(),
                mul: m.chunks(n).map(|r| r.to_vec()).collect(),
                zero: 0,
                one: n - 1,
                names: None,
            };
            FinFLw::validate(&t).ok()
        })
        .collect()
}

/// All FL_w-algebras of size `n` up to isomorphism, each in canonical form,
/// sorted by canonical key.
pub fn enumerate_flw(n: usize) -> Result<Vec<FinFLw>, AlgebraError> {
    if !(2..=MAX_ENUMERATION_SIZE).contains(&n) {
        return Err(AlgebraError::Shape(format!(
            "enumeration size must be in 2..={MAX_ENUMERATION_SIZE}, got {n}"
        )));
    }
    let lattices = bounded_lattices(n);
    let keyed: Vec<(Vec<usize>, FinFLw)> = lattices
        .par_iter()
        .flat_map_iter(|(meet, join)| algebras_on_lattice(n, meet, join))
        .map(|a| {
            let c = a.canonical();
            (c.canonical_form().0, c)
        })
        .collect();
    let unique: BTreeMap<Vec<usize>, FinFLw> = keyed.into_iter().collect();
    Ok(unique.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub size: usize,
    pub count: usize,
    pub hashes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusLock {
    pub sizes: Vec<CorpusEntry>,
}

impl FinFLw {
    /// SHA-256 of the canonical table JSON.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().to_json().as_bytes()))
    }
}

/// Counts and canonical hashes for each size in `sizes`.
pub fn corpus_lock(sizes: &[usize]) -> Result<CorpusLock, AlgebraError> {
    let mut out = Vec::new();
    for &n in sizes {
        let algebras = enumerate_flw(n)?;
        out.push(CorpusEntry {
            size: n,
            count: algebras.len(),
            hashes: algebras.iter().map(|a| a.canonical_hash()).collect(),
        });
    }
    Ok(CorpusLock { sizes: out })
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;
    use super::*;

    #[test]
    fn lattice_counts() {
        // 1, 1, 1, 2, 5 bounded lattices on 1..=5 elements
        let counts: Vec<usize> = (1..=5).map(|n| bounded_lattices(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5]);
        assert_eq!(bounded_lattices(6).len(), 15);
    }

    #[test]
    fn small_sizes() {
        let two = enumerate_flw(2).unwrap();
        assert_eq!(two.len(), 1);
        assert!(two[0].is_isomorphic(&boolean2()));
        let three = enumerate_flw(3).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.iter().any(|a| a.is_isomorphic(&luk3())));
        assert!(three.iter().any(|a| a.is_isomorphic(&godel3())));
        assert!(enumerate_flw(1).is_err());
        assert!(enumerate_flw(7).is_err());
    }
}
