use std::collections::BTreeSet;

use super::{AlgebraError, ConjMonoid, FinFLw, Tables};

/// A normal filter of some parent algebra, as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalFilter {
    members: Vec<usize>,
}

impl NormalFilter {
    /// Checks the normal-filter conditions against `alg`.
    pub fn new(alg: &FinFLw, members: &[usize]) -> Result<NormalFilter, AlgebraError> {
        let mut inside = vec![false; alg.size()];
        for &x in members {
            if x >= alg.size() {
                return Err(AlgebraError::UnknownElement(x.to_string()));
            }
            inside[x] = true;
        }
        alg.check_normal_filter(&inside)?;
        Ok(NormalFilter::from_mask(&inside))
    }

    /// The filter `{1}`.
    pub fn trivial(alg: &FinFLw) -> NormalFilter {
        NormalFilter {
            members: vec![alg.top()],
        }
    }

    /// The whole algebra.
    pub fn total(alg: &FinFLw) -> NormalFilter {
        NormalFilter {
            members: alg.elements().collect(),
        }
    }

    fn from_mask(mask: &[bool]) -> NormalFilter {
        NormalFilter {
            members: (0..mask.len()).filter(|&i| mask[i]).collect(),
        }
    }

    fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &x in &self.members {
            m[x] = true;
        }
        m
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &NormalFilter) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &NormalFilter) -> NormalFilter {
        NormalFilter {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }
}

/// Class labels of θ_F: `x θ_F y` iff `(x\y)∧1` and `(y\x)∧1` lie in F.
/// Each element is labeled with the least member of its class.
pub fn congruence_of_filter(alg: &FinFLw, f: &NormalFilter) -> Vec<usize> {
    let related = |x: usize, y: usize| {
        f.contains(alg.mt(alg.under(x, y), alg.top())) && f.contains(alg.mt(alg.under(y, x), alg.top()))
    };
    alg.elements()
        .map(|x| (0..=x).find(|&y| related(x, y)).expect("θ_F is reflexive"))
        .collect()
}

impl FinFLw {
    fn check_normal_filter(&self, inside: &[bool]) -> Result<(), AlgebraError> {
        let fail = |reason, witness| Err(AlgebraError::NotANormalFilter { reason, witness });
        if !inside[self.top()] {
            return fail("does not contain 1", vec![]);
        }
        for x in self.elements().filter(|&x| inside[x]) {
            for y in self.elements() {
                if self.le(x, y) && !inside[y] {
                    return fail("not upward closed", vec![x, y]);
                }
                if inside[y] && !inside[self.m(x, y)] {
                    return fail("not closed under products", vec![x, y]);
                }
                if !inside[self.left_conjugate(y, x)] || !inside[self.right_conjugate(y, x)] {
                    return fail("not closed under conjugates", vec![x, y]);
                }
            }
        }
        Ok(())
    }

    pub fn is_normal_filter(&self, members: &[usize]) -> bool {
        NormalFilter::new(self, members).is_ok()
    }

    /// Least normal filter containing `F ∪ {x}`, by saturating under
    /// up-sets, products and conjugates.
    pub fn filter_closure_fixpoint(&self, f: &NormalFilter, x: usize) -> NormalFilter {
        let n = self.size();
        let mut inside = f.mask(n);
        inside[x] = true;
        let mut changed = true;
        while changed {
            changed = false;
            for a in 0..n {
                if !inside[a] {
                    continue;
                }
                for b in 0..n {
                    let mut new = [None; 4];
                    if self.le(a, b) {
                        new[0] = Some(b);
                    }
                    new[1] = Some(self.left_conjugate(b, a));
                    new[2] = Some(self.right_conjugate(b, a));
                    if inside[b] {
                        new[3] = Some(self.m(a, b));
                    }
                    for v in new.into_iter().flatten() {
                        if !inside[v] {
                            inside[v] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        NormalFilter::from_mask(&inside)
    }

    /// `F_x = {a : f·α₁(x)···αₖ(x) ≤ a for some f ∈ F and conjugation maps αᵢ}`.
    pub fn filter_closure_membership(
        &self,
        monoid: &ConjMonoid,
        f: &NormalFilter,
        x: usize,
    ) -> NormalFilter {
        let n = self.size();
        let conj: BTreeSet<usize> = monoid.maps().iter().map(|m| m[x]).collect();
        // products of iterated conjugates of x, the empty product included
        let mut prods = vec![false; n];
        prods[self.top()] = true;
        let mut stack = vec![self.top()];
        while let Some(p) = stack.pop() {
            for &c in &conj {
                let q = self.m(p, c);
                if !prods[q] {
                    prods[q] = true;
                    stack.push(q);
                }
            }
        }
        let inside: Vec<bool> = (0..n)
            .map(|a| {
                f.members()
                    .iter()
                    .any(|&g| (0..n).any(|p| prods[p] && self.le(self.m(g, p), a)))
            })
            .collect();
        NormalFilter::from_mask(&inside)
    }

    /// The smallest normal filter containing `F ∪ {x}`, computed both by
    /// saturation and by the membership characterization; the two must agree.
    pub fn filter_closure(&self, f: &NormalFilter, x: usize) -> Result<NormalFilter, AlgebraError> {
        if x >= self.size() {
            return Err(AlgebraError::UnknownElement(x.to_string()));
        }
        self.check_normal_filter(&f.mask(self.size()))?;
        let a = self.filter_closure_fixpoint(f, x);
        let b = self.filter_closure_membership(&self.conjugation_monoid(), f, x);
        if a != b {
            return Err(AlgebraError::Internal(format!(
                "closure mismatch at x={x}: fixpoint {:?}, membership {:?}",
                a.members(),
                b.members()
            )));
        }
        Ok(a)
    }

    /// Every normal filter, ordered by size and then by member list.
    pub fn all_normal_filters(&self) -> Vec<NormalFilter> {
        let trivial = NormalFilter::trivial(self);
        let mut found: BTreeSet<NormalFilter> = self
            .elements()
            .map(|x| self.filter_closure_fixpoint(&trivial, x))
            .collect();
        loop {
            let list: Vec<NormalFilter> = found.iter().cloned().collect();
            let before = found.len();
            for a in &list {
                for b in &list {
                    found.insert(a.intersection(b));
                }
            }
            if found.len() == before {
                break;
            }
        }
        let mut out: Vec<NormalFilter> = found.into_iter().collect();
        out.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
        out
    }

    /// `A/θ_F`. Classes are ordered by their least member.
    pub fn quotient(&self, f: &NormalFilter) -> Result<FinFLw, AlgebraError> {
        self.check_normal_filter(&f.mask(self.size()))?;
        let labels = congruence_of_filter(self, f);
        let reps: Vec<usize> = self.elements().filter(|&x| labels[x] == x).collect();
        let class_of = |x: usize| reps.binary_search(&labels[x]).expect("label is a representative");
        let k = reps.len();
        let mut t = Tables {
            size: k,
            meet: vec![vec![0; k]; k],
            join: vec![vec![0; k]; k],
            mul: vec![vec![0; k]; k],
            zero: class_of(self.bottom()),
            one: class_of(self.top()),
            names: None,
        };
        for (cx, &x) in reps.iter().enumerate() {
            for (cy, &y) in reps.iter().enumerate() {
                t.meet[cx][cy] = class_of(self.mt(x, y));
                t.join[cx][cy] = class_of(self.jn(x, y));
                t.mul[cx][cy] = class_of(self.m(x, y));
            }
        }
        for x in self.elements() {
            for y in self.elements() {
                let (cx, cy) = (class_of(x), class_of(y));
                let checks = [
                    (t.meet[cx][cy], self.mt(x, y)),
                    (t.join[cx][cy], self.jn(x, y)),
                    (t.mul[cx][cy], self.m(x, y)),
                    (class_of(self.under(reps[cx], reps[cy])), self.under(x, y)),
                    (class_of(self.over(reps[cx], reps[cy])), self.over(x, y)),
                ];
                if checks.iter().any(|&(c, v)| c != class_of(v)) {
                    return Err(AlgebraError::Internal(format!(
                        "θ_F does not respect the operations at ({x}, {y})"
                    )));
                }
            }
        }
        FinFLw::validate(&t)
    }

    /// True iff the nontrivial normal filters have a least element.
    pub fn is_subdirectly_irreducible(&self) -> bool {
        let filters = self.all_normal_filters();
        let nontrivial: Vec<&NormalFilter> = filters.iter().filter(|f| f.len() > 1).collect();
        match nontrivial.first() {
            None => false,
            Some(least) => nontrivial.iter().all(|f| least.is_subset(f)),
        }
    }

    /// Proper normal filters whose strict upper bounds have a least element;
    /// exactly those with a subdirectly irreducible quotient.
    pub fn completely_meet_irreducible_filters(&self) -> Vec<NormalFilter> {
        let filters = self.all_normal_filters();
        filters
            .iter()
            .filter(|f| f.len() < self.size())
            .filter(|f| {
                let above: Vec<&NormalFilter> = filters
                    .iter()
                    .filter(|g| g.len() > f.len() && f.is_subset(g))
                    .collect();
                above
                    .iter()
                    .any(|least| above.iter().all(|g| least.is_subset(g)))
            })
            .cloned()
            .collect()
    }
}
