use std::fmt;

use num::{Signed, Zero};

use super::{parse_err, parse_rational, LAut, LVec, LgrpError, VecGroup};

/// A rational matrix acting on column vectors, `f(v)_r = Σ_c a[r][c]·v_c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: Vec<Vec<super::Rational>>,
    cols: usize,
}

impl LinearMap {
    pub fn new(rows: Vec<Vec<super::Rational>>, cols: usize) -> Result<LinearMap, LgrpError> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(LgrpError::ArityMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        Ok(LinearMap { rows, cols })
    }

    /// `f(v)_r = v_{select[r]}`.
    pub fn selection(select: &[usize], cols: usize) -> LinearMap {
        let rows = select
            .iter()
            .map(|&c| (0..cols).map(|j| super::int(i64::from(j == c))).collect())
            .collect();
        LinearMap { rows, cols }
    }

    pub fn identity(k: usize) -> LinearMap {
        LinearMap::selection(&(0..k).collect::<Vec<_>>(), k)
    }

    pub fn scalar(k: usize, c: super::Rational) -> LinearMap {
        let rows = (0..k)
            .map(|r| (0..k).map(|j| if j == r { c.clone() } else { super::int(0) }).collect())
            .collect();
        LinearMap { rows, cols: k }
    }

    pub fn source_arity(&self) -> usize {
        self.cols
    }

    pub fn target_arity(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, v: &LVec) -> LVec {
        assert_eq!(v.arity(), self.cols, "arity mismatch");
        LVec(
            self.rows
                .iter()
                .map(|r| r.iter().zip(&v.0).map(|(a, x)| a * x).sum())
                .collect(),
        )
    }

    /// Whether `f` is an ℓ-group homomorphism between the given groups:
    /// every row has at most one nonzero entry, that entry is positive, and
    /// integer groups are mapped into integer groups. Pointwise meets and
    /// joins are preserved exactly under these conditions.
    pub fn check_lgroup_hom(&self, source: &VecGroup, target: &VecGroup) -> Result<(), LgrpError> {
        if source.arity() != self.cols {
            return Err(LgrpError::ArityMismatch {
                expected: source.arity(),
                found: self.cols,
            });
        }
        if target.arity() != self.rows.len() {
            return Err(LgrpError::ArityMismatch {
                expected: target.arity(),
                found: self.rows.len(),
            });
        }
        for (r, row) in self.rows.iter().enumerate() {
            let nonzero: Vec<&super::Rational> = row.iter().filter(|a| !a.is_zero()).collect();
            if nonzero.len() > 1 || nonzero.iter().any(|a| !a.is_positive()) {
                return Err(LgrpError::NotMonomial(format!(
                    "row {r} does not preserve the pointwise lattice order"
                )));
            }
        }
        for j in 0..self.cols {
            let img = self.apply(&LVec::basis(self.cols, j));
            if source.domain() == super::Domain::Integer {
                target.check(&img)?;
            }
        }
        Ok(())
    }

    /// The first basis vector `e_j` with `f(λ₁(e_j)) ≠ λ₂(f(e_j))`.
    /// By linearity, agreement on a basis is agreement everywhere.
    pub fn commutation_failure(&self, l1: &LAut, l2: &LAut) -> Option<usize> {
        (0..self.cols).find(|&j| {
            let e = LVec::basis(self.cols, j);
            self.apply(&l1.apply(&e)) != l2.apply(&self.apply(&e))
        })
    }

    /// Rows separated by `;`, entries by `,`: `1,0;0,1`.
    pub fn parse(text: &str) -> Result<LinearMap, LgrpError> {
        let rows = text
            .split(';')
            .map(|r| r.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let cols = rows.first().map(|r| r.len()).ok_or_else(|| parse_err(text, "empty matrix"))?;
        LinearMap::new(rows, cols)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", rows.join(";"))
    }
}
