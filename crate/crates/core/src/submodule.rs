//! Finitely generated `k[t^-1]`-submodules of `V⊕ = V[t, t^-1] / V[t^-1]`.
//!
//! Every such submodule lives inside `⊕_{i=1..m} t^i V` for some `m` and is
//! stored as a `k`-subspace of that finite-dimensional space. Coordinates
//! are ordered with the `t^m` layer first, so the `t^-1` action is a plain
//! coordinate shift.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::laurent::{LaurentMat, LaurentVec};
use crate::linalg::Matrix;
use crate::space::{check_same_space, QuadSpace, Subspace};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GradedSubmodule<F = Rational> {
    space: Arc<QuadSpace<F>>,
    m: usize,
    basis: Matrix<F>,
}

impl<F: Field> GradedSubmodule<F> {
    pub fn zero(space: &Arc<QuadSpace<F>>) -> Self {
        GradedSubmodule { space: Arc::clone(space), m: 0, basis: Matrix::zeros(0, 0) }
    }

    /// `k`-span of the rows of `vectors`, each a coordinate vector of
    /// `⊕_{i=1..m} t^i V` (top layer first). The result is canonical but
    /// not necessarily shift-closed.
    pub fn span_of_coords(space: &Arc<QuadSpace<F>>, m: usize, vectors: &Matrix<F>) -> Self {
        let n = space.dim();
        assert_eq!(vectors.cols(), m * n, "coordinate vectors have the wrong length");
        let mut basis = vectors.row_space();
        let mut m = m;
        while m > 0 && (0..basis.rows()).all(|r| basis.row(r)[..n].iter().all(F::is_zero)) {
            basis = basis.select_columns(&(n..m * n).collect::<Vec<_>>());
            m -= 1;
        }
        GradedSubmodule { space: Arc::clone(space), m, basis }
    }

    /// `k[t^-1]`-submodule generated by the images of `vectors` in `V⊕`
    /// (terms of exponent `<= 0` are dropped).
    pub fn generated_by(space: &Arc<QuadSpace<F>>, vectors: &[LaurentVec<F>]) -> Result<Self> {
        let n = space.dim();
        let mut m = 0usize;
        for v in vectors {
            if v.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.dim() });
            }
            m = m.max(v.degree().unwrap_or(0).max(0) as usize);
        }
        let mut rows = Vec::new();
        for v in vectors {
            for s in 0..m as i64 {
                rows.push(to_coords(&v.shift_down(s), m));
            }
        }
        let spanning = Matrix::from_rows(rows, m * n).expect("uniform widths");
        Ok(Self::span_of_coords(space, m, &spanning))
    }

    /// Parse basis vectors given as lists of layers (top layer first).
    pub fn from_layers(space: &Arc<QuadSpace<F>>, m: usize, vectors: Vec<Vec<Vec<F>>>) -> Result<Self> {
        let n = space.dim();
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != m {
                return Err(Error::DimensionMismatch { expected: m, found: v.len() });
            }
            let mut row = Vec::with_capacity(m * n);
            for layer in v {
                if layer.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, found: layer.len() });
                }
                row.extend(layer);
            }
            rows.push(row);
        }
        let spanning = Matrix::from_rows(rows, m * n)?;
        Ok(Self::span_of_coords(space, m, &spanning))
    }

    /// `t U = {t u : u in U}`.
    pub fn layer_one(u: &Subspace<F>) -> Self {
        Self::span_of_coords(u.space(), 1, u.basis())
    }

    pub fn space(&self) -> &Arc<QuadSpace<F>> {
        &self.space
    }

    /// Highest occupied layer (0 for the zero module).
    pub fn top(&self) -> usize {
        self.m
    }

    /// Dimension over `k`.
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Reduced echelon basis in coordinates of `⊕_{i=1..top} t^i V`.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    /// Basis vectors as lists of layers, top layer first.
    pub fn basis_layers(&self) -> Vec<Vec<Vec<F>>> {
        let n = self.space.dim();
        (0..self.basis.rows())
            .map(|r| self.basis.row(r).chunks(n).map(|c| c.to_vec()).collect())
            .collect()
    }

    pub fn basis_vectors(&self) -> Vec<LaurentVec<F>> {
        let n = self.space.dim();
        (0..self.basis.rows())
            .map(|r| {
                let row = self.basis.row(r);
                LaurentVec::from_layers(
                    n,
                    (1..=self.m).map(|i| (i as i64, row[(self.m - i) * n..(self.m - i + 1) * n].to_vec())),
                )
            })
            .collect()
    }

    fn embedded(&self, m: usize) -> Matrix<F> {
        let n = self.space.dim();
        let pad = (m - self.m) * n;
        Matrix::from_fn(self.basis.rows(), m * n, |i, j| if j < pad { F::zero() } else { self.basis.get(i, j - pad) })
    }

    /// Closed under multiplication by `t^-1`, i.e. a `k[t^-1]`-submodule.
    pub fn is_shift_closed(&self) -> bool {
        let n = self.space.dim();
        let total = self.m * n;
        let shifted = Matrix::from_fn(self.basis.rows(), total, |i, j| {
            if j < n { F::zero() } else { self.basis.get(i, j - n) }
        });
        self.basis.vstack(&shifted).rank() == self.dim()
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        check_same_space(&self.space, &other.space)?;
        if other.m > self.m {
            return Ok(other.is_zero());
        }
        Ok(self.basis.vstack(&other.embedded(self.m)).rank() == self.dim())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        let m = self.m.max(other.m);
        Ok(Self::span_of_coords(&self.space, m, &self.embedded(m).vstack(&other.embedded(m))))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        let m = self.m.max(other.m);
        let a = self.embedded(m);
        let relations = a.vstack(&other.embedded(m)).left_nullspace();
        let coeffs = relations.select_columns(&(0..a.rows()).collect::<Vec<_>>());
        Ok(Self::span_of_coords(&self.space, m, &coeffs.mul(&a)))
    }

    /// `{v in V : t^i v in M}`; for a submodule these shrink as `i` grows.
    pub fn layer(&self, i: usize) -> Subspace<F> {
        let n = self.space.dim();
        if i == 0 || i > self.m {
            return Subspace::zero(&self.space);
        }
        let start = (self.m - i) * n;
        let others: Vec<usize> = (0..self.m * n).filter(|&j| j < start || j >= start + n).collect();
        let combos = self.basis.select_columns(&others).left_nullspace();
        let slice = self.basis.select_columns(&(start..start + n).collect::<Vec<_>>());
        Subspace::from_spanning_matrix(&self.space, &combos.mul(&slice))
    }

    /// Image under a matrix over `k[t^-1]` acting on `V⊕`.
    pub fn image_under(&self, a: &LaurentMat<F>) -> Result<Self> {
        if a.dim() != self.space.dim() {
            return Err(Error::DimensionMismatch { expected: self.space.dim(), found: a.dim() });
        }
        if a.degree().is_some_and(|d| d > 0) {
            return Err(Error::NotNegativeCone);
        }
        let images = self
            .basis_vectors()
            .iter()
            .map(|v| a.apply(v))
            .collect::<Result<Vec<_>>>()?;
        let n = self.space.dim();
        let rows: Vec<Vec<F>> = images.iter().map(|v| to_coords(v, self.m)).collect();
        let spanning = Matrix::from_rows(rows, self.m * n)?;
        Ok(Self::span_of_coords(&self.space, self.m, &spanning))
    }
}

/// Coordinates of the image of `v` in `⊕_{i=1..m} t^i V`; layers above `m` are dropped.
fn to_coords<F: Field>(v: &LaurentVec<F>, m: usize) -> Vec<F> {
    let mut out = Vec::with_capacity(m * v.dim());
    for i in (1..=m as i64).rev() {
        out.extend(v.layer(i));
    }
    out
}

impl<F: Field> LaurentVec<F> {
    /// Multiply by `t^-s`.
    pub(crate) fn shift_down(&self, s: i64) -> Self {
        LaurentVec::new(self.coords().iter().map(|p| p.shift(-s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| q((i == j) as i64)).collect()
    }

    fn span(space: &Arc<QuadSpace>, vs: &[&[i64]]) -> Subspace {
        Subspace::span(space, vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn layer_one_sum_and_intersection() {
        let s = QuadSpace::standard(2);
        let a = GradedSubmodule::layer_one(&span(&s, &[&[1, 0]]));
        let b = GradedSubmodule::layer_one(&span(&s, &[&[0, 1]]));
        assert_eq!(a.sum(&b).unwrap(), GradedSubmodule::layer_one(&Subspace::full(&s)));
        assert!(a.intersect(&b).unwrap().is_zero());
        assert_eq!(a.intersect(&b).unwrap(), GradedSubmodule::zero(&s));
    }

    #[test]
    fn layer_extraction() {
        let s = QuadSpace::standard(2);
        let m = GradedSubmodule::generated_by(&s, &[LaurentVec::from_constant(&e(2, 1), 2)]).unwrap();
        assert_eq!(m.top(), 2);
        assert_eq!(m.dim(), 2);
        assert_eq!(m.layer(1), span(&s, &[&[0, 1]]));
        assert_eq!(m.layer(2), span(&s, &[&[0, 1]]));
        assert!(m.layer(3).is_zero());
        assert!(m.is_shift_closed());
        assert_eq!(m.basis_layers(), vec![vec![vec![q(0), q(1)], vec![q(0), q(0)]], vec![vec![q(0), q(0)], vec![q(0), q(1)]]]);
    }

    #[test]
    fn shift_closure_detected() {
        let s = QuadSpace::standard(2);
        let lone = GradedSubmodule::from_layers(&s, 2, vec![vec![e(2, 1), vec![q(0), q(0)]]]).unwrap();
        assert!(!lone.is_shift_closed());
        assert!(GradedSubmodule::zero(&s).is_shift_closed());
    }

    #[test]
    fn canonical_top_is_trimmed() {
        let s = QuadSpace::standard(2);
        let m = GradedSubmodule::from_layers(&s, 3, vec![vec![vec![q(0), q(0)], vec![q(0), q(0)], e(2, 0)]]).unwrap();
        assert_eq!(m, GradedSubmodule::layer_one(&span(&s, &[&[1, 0]])));
        assert!(matches!(
            GradedSubmodule::from_layers(&s, 2, vec![vec![e(2, 0)]]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn containment_across_tops() {
        let s = QuadSpace::standard(2);
        let big = GradedSubmodule::generated_by(&s, &[LaurentVec::from_constant(&e(2, 0), 3)]).unwrap();
        let small = GradedSubmodule::layer_one(&span(&s, &[&[1, 0]]));
        assert!(big.contains(&small).unwrap());
        assert!(!small.contains(&big).unwrap());
        assert_eq!(big.intersect(&small).unwrap(), small);
        assert_eq!(big.sum(&small).unwrap(), big);
    }
}
