use std::collections::BTreeSet;

use super::FinFLw;

/// The monoid of iterated conjugation maps, each stored as an index array.
/// Maps are kept sorted, so indices into the monoid are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjMonoid {
    maps: Vec<Vec<usize>>,
}

impl ConjMonoid {
    pub fn maps(&self) -> &[Vec<usize>] {
        &self.maps
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn contains(&self, map: &[usize]) -> bool {
        self.maps.binary_search_by(|m| m.as_slice().cmp(map)).is_ok()
    }

    pub fn identity_index(&self) -> usize {
        self.maps
            .iter()
            .position(|m| m.iter().enumerate().all(|(i, &v)| i == v))
            .expect("monoid contains the identity")
    }
}

impl FinFLw {
    /// `λ_b(a) = (b\ab)∧1`
    pub fn left_conjugate(&self, b: usize, a: usize) -> usize {
        self.mt(self.under(b, self.m(a, b)), self.top())
    }

    /// `ρ_b(a) = (ba/b)∧1`
    pub fn right_conjugate(&self, b: usize, a: usize) -> usize {
        self.mt(self.over(self.m(b, a), b), self.top())
    }

    /// All maps `λ_b` and `ρ_b`, deduplicated and sorted.
    pub fn conjugate_generators(&self) -> Vec<Vec<usize>> {
        let mut gens = BTreeSet::new();
        for b in self.elements() {
            gens.insert(self.elements().map(|a| self.left_conjugate(b, a)).collect::<Vec<_>>());
            gens.insert(self.elements().map(|a| self.right_conjugate(b, a)).collect::<Vec<_>>());
        }
        gens.into_iter().collect()
    }

    /// The least composition-closed set of maps containing the identity and
    /// every conjugate.
    pub fn conjugation_monoid(&self) -> ConjMonoid {
        let gens = self.conjugate_generators();
        let id: Vec<usize> = self.elements().collect();
        let mut seen = BTreeSet::from([id.clone()]);
        let mut frontier = vec![id];
        while let Some(f) = frontier.pop() {
            for g in &gens {
                let h: Vec<usize> = f.iter().map(|&v| g[v]).collect();
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        ConjMonoid {
            maps: seen.into_iter().collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::corpus::*;

    #[test]
    fn small_monoids() {
        // On 2 the conjugate by 0 sends everything to 0\0 = 1.
        let b = boolean2().conjugation_monoid();
        assert_eq!(b.maps(), &[vec![0, 1], vec![1, 1]]);

        // Ł₃ also has λ_half: 0 ↦ half\0 = half.
        let l = luk3().conjugation_monoid();
        assert_eq!(l.maps(), &[vec![0, 1, 2], vec![1, 1, 2], vec![2, 2, 2]]);

        // Gödel: λ_a(a) = a\a = 1 while λ_a(0) = 0.
        let g = godel3().conjugation_monoid();
        assert_eq!(g.maps(), &[vec![0, 1, 2], vec![0, 2, 2], vec![2, 2, 2]]);
        assert!(g.contains(&[0, 2, 2]));
        assert_eq!(g.identity_index(), 0);
    }

    #[test]
    fn commutative_conjugates_are_above_the_argument() {
        for a in [luk3(), godel3(), lukasiewicz(5), godel(4)] {
            for m in a.conjugation_monoid().maps() {
                for x in a.elements() {
                    assert!(a.le(x, m[x]));
                }
            }
        }
    }
}
