//! Brute-force oracles over raw operation tables. Nothing here calls the
//! library's filter, congruence, perfectness or enumeration code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use kiteforge::FinFLw;

/// Operation tables with residuals recomputed by exhaustive search.
#[derive(Debug, Clone)]
pub struct Tab {
    pub n: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub ldiv: Vec<Vec<usize>>,
    pub rdiv: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

impl Tab {
    pub fn of(a: &FinFLw) -> Tab {
        let t = a.tables();
        let n = t.size;
        let le = |x: usize, y: usize| t.meet[x][y] == x;
        let max_of = |ok: &dyn Fn(usize) -> bool| -> usize {
            let cands: Vec<usize> = (0..n).filter(|&y| ok(y)).collect();
            *cands
                .iter()
                .find(|&&m| cands.iter().all(|&c| le(c, m)))
                .expect("residual exists")
        };
        let mut ldiv = vec![vec![0; n]; n];
        let mut rdiv = vec![vec![0; n]; n];
        for x in 0..n {
            for z in 0..n {
                ldiv[x][z] = max_of(&|y| le(t.mul[x][y], z));
                rdiv[z][x] = max_of(&|y| le(t.mul[y][x], z));
            }
        }
        Tab {
            n,
            meet: t.meet,
            join: t.join,
            mul: t.mul,
            ldiv,
            rdiv,
            zero: t.zero,
            one: t.one,
        }
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    fn binary_ops(&self) -> [&Vec<Vec<usize>>; 5] {
        [&self.meet, &self.join, &self.mul, &self.ldiv, &self.rdiv]
    }
}

/// Every subset that is a normal filter by definition, as sorted vectors.
pub fn normal_filters(t: &Tab) -> Vec<Vec<usize>> {
    let n = t.n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let has = |x: usize| mask >> x & 1 == 1;
        if !has(t.one) {
            continue;
        }
        let mut ok = true;
        'check: for a in (0..n).filter(|&a| has(a)) {
            for b in 0..n {
                let lam = t.meet[t.ldiv[b][t.mul[a][b]]][t.one];
                let rho = t.meet[t.rdiv[t.mul[b][a]][b]][t.one];
                if (t.le(a, b) && !has(b)) || (has(b) && !has(t.mul[a][b])) || !has(lam) || !has(rho) {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            out.push((0..n).filter(|&x| has(x)).collect());
        }
    }
    out
}

/// Least normal filter containing `f ∪ {x}`: the intersection of all
/// normal filters above it.
pub fn closure(t: &Tab, f: &[usize], x: usize) -> Vec<usize> {
    let mut gens: BTreeSet<usize> = f.iter().copied().collect();
    gens.insert(x);
    normal_filters(t)
        .into_iter()
        .filter(|g| gens.iter().all(|y| g.contains(y)))
        .min_by_key(|g| g.len())
        .map(|g| g.to_vec())
        .expect("the whole algebra is a normal filter")
}

/// All partitions of `0..n` as restricted growth strings.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            if i == 0 && b > 0 {
                break;
            }
            cur.push(b);
            go(i + 1, n, cur, max.max(b), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), 0, &mut out);
    out
}

/// Relabels a partition so each element maps to the least member of its
/// block.
pub fn least_member_labels(blocks: &[usize]) -> Vec<usize> {
    (0..blocks.len())
        .map(|x| (0..blocks.len()).find(|&y| blocks[y] == blocks[x]).unwrap())
        .collect()
}

/// Every congruence of the algebra, as least-member labelings.
pub fn congruences(t: &Tab) -> Vec<Vec<usize>> {
    let n = t.n;
    let mut out = Vec::new();
    for p in partitions(n) {
        let ok = t.binary_ops().iter().all(|op| {
            (0..n).all(|x| {
                (0..n).all(|x2| {
                    p[x] != p[x2]
                        || (0..n).all(|y| {
                            (0..n).all(|y2| p[y] != p[y2] || p[op[x][y]] == p[op[x2][y2]])
                        })
                })
            })
        });
        if ok {
            out.push(least_member_labels(&p));
        }
    }
    out
}

/// θ ⊆ ψ as relations.
pub fn cong_le(theta: &[usize], psi: &[usize]) -> bool {
    (0..theta.len()).all(|x| (0..theta.len()).all(|y| theta[x] != theta[y] || psi[x] == psi[y]))
}

/// Homomorphisms onto 2 whose 0-fiber lies below the 1-fiber, after
/// factoring through `theta`. Returned as the 1-fiber.
pub fn split_homs_mod(t: &Tab, theta: &[usize]) -> Vec<Vec<usize>> {
    let n = t.n;
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let h = |x: usize| mask >> x & 1 == 1;
        if (0..n).any(|x| h(x) != h(theta[x])) || h(t.zero) || !h(t.one) {
            continue;
        }
        let hom = (0..n).all(|x| {
            (0..n).all(|y| {
                h(t.meet[x][y]) == (h(x) && h(y))
                    && h(t.join[x][y]) == (h(x) || h(y))
                    && h(t.mul[x][y]) == (h(x) && h(y))
                    && h(t.ldiv[x][y]) == (!h(x) || h(y))
                    && h(t.rdiv[x][y]) == (!h(y) || h(x))
            })
        });
        // quotient order: [x] ≤ [y] iff x∧y θ x
        let split = (0..n).all(|x| (0..n).all(|y| h(x) || !h(y) || theta[t.meet[x][y]] == theta[x]));
        if hom && split {
            out.push((0..n).filter(|&x| h(x)).collect());
        }
    }
    out
}

pub fn split_homs(t: &Tab) -> Vec<Vec<usize>> {
    let identity: Vec<usize> = (0..t.n).collect();
    split_homs_mod(t, &identity)
}

/// Every subdirectly irreducible quotient is perfect, decided on the
/// brute-force congruence lattice.
pub fn si_quotients_perfect(t: &Tab) -> bool {
    let cons = congruences(t);
    let total = vec![0; t.n];
    cons.iter().filter(|c| **c != total).all(|theta| {
        let above: Vec<&Vec<usize>> = cons.iter().filter(|c| *c != theta && cong_le(theta, c)).collect();
        let cmi = above.iter().any(|m| above.iter().all(|c| cong_le(m, c)));
        !cmi || !split_homs_mod(t, theta).is_empty()
    })
}

/// Canonical key of raw tables under permutations fixing 0 and 1:
/// the minimal relabelled (meet, mul) table pair.
pub fn iso_key(n: usize, meet: &[Vec<usize>], mul: &[Vec<usize>], zero: usize, one: usize) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    let rest: Vec<usize> = (0..n).filter(|&x| x != zero && x != one).collect();
    let mut perm = rest.clone();
    permute(&mut perm, 0, &mut |p| {
        // old index -> new index: zero -> 0, one -> n-1, rest in order p
        let mut to = vec![0; n];
        to[zero] = 0;
        to[one] = n - 1;
        for (i, &old) in p.iter().enumerate() {
            to[old] = i + 1;
        }
        let mut from = vec![0; n];
        for x in 0..n {
            from[to[x]] = x;
        }
        let mut key = Vec::with_capacity(2 * n * n);
        for x in 0..n {
            for y in 0..n {
                key.push(to[meet[from[x]][from[y]]]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                key.push(to[mul[from[x]][from[y]]]);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    });
    best.unwrap()
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Isomorphism classes of FL_w-algebras on `n` elements by generate-and-test
/// over every order and every multiplication table. Feasible for `n ≤ 4`.
pub fn brute_force_classes(n: usize) -> BTreeSet<Vec<usize>> {
    assert!((2..=4).contains(&n));
    let (zero, one) = (0, n - 1);
    let mid: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = mid
        .iter()
        .flat_map(|&a| mid.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let mut classes = BTreeSet::new();
    for rel in 0u32..(1 << pairs.len()) {
        let mut le = vec![vec![false; n]; n];
        for x in 0..n {
            le[x][x] = true;
            le[zero][x] = true;
            le[x][one] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if rel >> i & 1 == 1 {
                le[a][b] = true;
            }
        }
        let partial_order = (0..n).all(|a| {
            (0..n).all(|b| {
                (a == b || !(le[a][b] && le[b][a])) && (0..n).all(|c| !(le[a][b] && le[b][c]) || le[a][c])
            })
        });
        if !partial_order {
            continue;
        }
        let glb = |a: usize, b: usize| -> Option<usize> {
            let lower: Vec<usize> = (0..n).filter(|&c| le[c][a] && le[c][b]).collect();
            lower.iter().copied().find(|&m| lower.iter().all(|&c| le[c][m]))
        };
        let lub = |a: usize, b: usize| -> Option<usize> {
            let upper: Vec<usize> = (0..n).filter(|&c| le[a][c] && le[b][c]).collect();
            upper.iter().copied().find(|&m| upper.iter().all(|&c| le[m][c]))
        };
        let mut meet = vec![vec![0; n]; n];
        let mut join = vec![vec![0; n]; n];
        let mut lattice = true;
        for a in 0..n {
            for b in 0..n {
                match (glb(a, b), lub(a, b)) {
                    (Some(m), Some(j)) => {
                        meet[a][b] = m;
                        join[a][b] = j;
                    }
                    _ => lattice = false,
                }
            }
        }
        if !lattice {
            continue;
        }
        let free: Vec<(usize, usize)> = (0..n - 1).flat_map(|x| (0..n - 1).map(move |y| (x, y))).collect();
        let total = n.pow(free.len() as u32);
        let mut mul = vec![vec![0; n]; n];
        for x in 0..n {
            mul[x][one] = x;
            mul[one][x] = x;
        }
        for code in 0..total {
            let mut c = code;
            for &(x, y) in &free {
                mul[x][y] = c % n;
                c /= n;
            }
            let assoc = (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| mul[mul[x][y]][z] == mul[x][mul[y][z]])));
            if !assoc {
                continue;
            }
            // residuated: {y : xy ≤ z} and {y : yx ≤ z} are principal down-sets
            let residuated = (0..n).all(|x| {
                (0..n).all(|z| {
                    let principal = |ok: &dyn Fn(usize) -> bool| {
                        (0..n).any(|m| (0..n).all(|y| ok(y) == le[y][m]))
                    };
                    principal(&|y| le[mul[x][y]][z]) && principal(&|y| le[mul[y][x]][z])
                })
            });
            if residuated {
                classes.insert(iso_key(n, &meet, &mul, zero, one));
            }
        }
    }
    classes
}
