//! Anisotropic quadratic spaces and the orthomodular lattice of their subspaces.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Certificate, Field, Rational};
use crate::linalg::Matrix;

/// A finite-dimensional space `k^n` with an anisotropic symmetric bilinear
/// form `b(v, w) = v^T G w`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadSpace<F = Rational> {
    gram: Matrix<F>,
    gram_inv: Matrix<F>,
    certificate: Certificate<F>,
}

impl<F: Field> QuadSpace<F> {
    /// Validate a Gram matrix. Over the rationals this accepts exactly the
    /// positive definite forms; over `F_p` an exhaustive isotropy search is run.
    pub fn new(n: usize, gram: Matrix<F>) -> Result<Arc<Self>> {
        if gram.rows() != n || gram.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: gram.rows().max(gram.cols()) });
        }
        if F::characteristic() == 2 {
            return Err(Error::Characteristic2);
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let certificate = F::certify_anisotropic(&gram)?;
        let gram_inv = gram.inverse().expect("anisotropic forms are non-degenerate");
        Ok(Arc::new(QuadSpace { gram, gram_inv, certificate }))
    }

    /// `k^n` with the standard inner product.
    pub fn standard(n: usize) -> Arc<Self> {
        Self::new(n, Matrix::identity(n)).expect("identity form is anisotropic")
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix<F> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<F> {
        &self.gram_inv
    }

    pub fn certificate(&self) -> &Certificate<F> {
        &self.certificate
    }

    /// `b(v, w)`.
    pub fn form(&self, v: &[F], w: &[F]) -> F {
        let gw = self.gram.mul_vec(w);
        v.iter().zip(&gw).fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    /// Adjoint of a constant endomorphism: the unique `a'` with `b(a'v, w) = b(v, a w)`,
    /// given in coordinates by `G^-1 a^T G`.
    pub fn constant_adjoint(&self, a: &Matrix<F>) -> Matrix<F> {
        self.gram_inv.mul(&a.transpose()).mul(&self.gram)
    }
}

pub(crate) fn check_same_space<F: Field>(a: &Arc<QuadSpace<F>>, b: &Arc<QuadSpace<F>>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// A subspace of a [`QuadSpace`], stored as a basis in reduced row echelon
/// form so that equal subspaces compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace<F = Rational> {
    space: Arc<QuadSpace<F>>,
    basis: Matrix<F>,
}

impl<F: Field> Subspace<F> {
    /// Span of the given vectors (which need not be independent).
    pub fn span(space: &Arc<QuadSpace<F>>, vectors: Vec<Vec<F>>) -> Result<Self> {
        let m = Matrix::from_rows(vectors, space.dim())?;
        Ok(Self::from_spanning_matrix(space, &m))
    }

    /// Span of the rows of `m`; `m` must have `space.dim()` columns.
    pub fn from_spanning_matrix(space: &Arc<QuadSpace<F>>, m: &Matrix<F>) -> Self {
        assert_eq!(m.cols(), space.dim(), "spanning vectors have the wrong length");
        Subspace { space: Arc::clone(space), basis: m.row_space() }
    }

    /// Column space of a square matrix.
    pub fn image_of(space: &Arc<QuadSpace<F>>, m: &Matrix<F>) -> Self {
        Self::from_spanning_matrix(space, &m.transpose())
    }

    pub fn zero(space: &Arc<QuadSpace<F>>) -> Self {
        Subspace { space: Arc::clone(space), basis: Matrix::zeros(0, space.dim()) }
    }

    pub fn full(space: &Arc<QuadSpace<F>>) -> Self {
        Subspace { space: Arc::clone(space), basis: Matrix::identity(space.dim()) }
    }

    pub fn space(&self) -> &Arc<QuadSpace<F>> {
        &self.space
    }

    /// Reduced echelon basis, one vector per row.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.space.dim()
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.basis.row_space_contains(v)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        check_same_space(&self.space, &other.space)?;
        Ok(self.basis.vstack(&other.basis).rank() == self.dim())
    }

    /// `U* = {v : b(u, v) = 0 for all u in U}`.
    pub fn orthocomplement(&self) -> Self {
        let constraints = self.basis.mul(self.space.gram());
        Subspace { space: Arc::clone(&self.space), basis: constraints.nullspace() }
    }

    /// Orthogonal projection onto `U` along `U*`, computed as
    /// `B^T (B G B^T)^-1 B G` for the echelon basis `B`.
    pub fn projection(&self) -> Matrix<F> {
        let n = self.space.dim();
        if self.is_zero() {
            return Matrix::zeros(n, n);
        }
        let bg = self.basis.mul(self.space.gram());
        let restricted = bg.mul(&self.basis.transpose());
        let inv = restricted.inverse().expect("restriction of an anisotropic form is non-degenerate");
        self.basis.transpose().mul(&inv).mul(&bg)
    }

    /// Intersection `U ∩ W`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        let r = self.dim();
        let relations = self.basis.vstack(&other.basis).left_nullspace();
        let coeffs = relations.select_columns(&(0..r).collect::<Vec<_>>());
        Ok(Self::from_spanning_matrix(&self.space, &coeffs.mul(&self.basis)))
    }

    /// Sum `U + W`.
    pub fn join(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        Ok(Self::from_spanning_matrix(&self.space, &self.basis.vstack(&other.basis)))
    }

    /// `U ⊥ W`, i.e. `W ⊆ U*`.
    pub fn rel_bot(&self, other: &Self) -> Result<bool> {
        self.orthocomplement().contains(other)
    }

    /// `U ⊤ W`, i.e. `W ⊇ U*`.
    pub fn rel_top(&self, other: &Self) -> Result<bool> {
        other.contains(&self.orthocomplement())
    }

    /// `U ⊕ W = U + W`, defined only when `U ⊥ W`.
    pub fn partial_oplus(&self, other: &Self) -> Result<Option<Self>> {
        Ok(if self.rel_bot(other)? { Some(self.join(other)?) } else { None })
    }

    /// `U ⊓ W = U ∩ W`, defined only when `U ⊤ W`.
    pub fn partial_sqcap(&self, other: &Self) -> Result<Option<Self>> {
        Ok(if self.rel_top(other)? { Some(self.meet(other)?) } else { None })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), cols).unwrap()
    }

    fn span(space: &Arc<QuadSpace>, vs: &[&[i64]]) -> Subspace {
        Subspace::span(space, vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn validate_form_examples() {
        assert!(QuadSpace::new(2, Matrix::<Rational>::identity(2)).is_ok());
        match QuadSpace::new(2, qm(&[&[1, 0], &[0, -1]])) {
            Err(Error::NotPositiveDefinite { index, minor }) => assert_eq!((index, minor.as_str()), (2, "-1")),
            other => panic!("unexpected {other:?}"),
        }
        // the rejected form really is isotropic at (1, 1)
        let g = qm(&[&[1, 0], &[0, -1]]);
        let v = [q(1), q(1)];
        assert!(g.mul_vec(&v).iter().zip(&v).fold(q(0), |a, (x, y)| a + x * y).is_zero());
        let s = QuadSpace::new(2, qm(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(s.certificate(), &Certificate::LeadingMinors(vec![q(2), q(1)]));
        assert_eq!(QuadSpace::new(2, qm(&[&[1, 1], &[0, 1]])), Err(Error::NotSymmetric));
        assert!(matches!(QuadSpace::new(3, qm(&[&[1, 0], &[0, 1]])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn characteristic_two_rejected() {
        assert_eq!(QuadSpace::new(1, Matrix::<Fp<2>>::identity(1)), Err(Error::Characteristic2));
    }

    #[test]
    fn orthocomplement_examples() {
        let s = QuadSpace::standard(2);
        assert_eq!(span(&s, &[&[1, 0]]).orthocomplement(), span(&s, &[&[0, 1]]));
        assert_eq!(Subspace::zero(&s).orthocomplement(), Subspace::full(&s));
        assert_eq!(Subspace::full(&s).orthocomplement(), Subspace::zero(&s));
        let skew = QuadSpace::new(2, qm(&[&[2, 1], &[1, 1]])).unwrap();
        assert_eq!(span(&skew, &[&[1, 0]]).orthocomplement(), span(&skew, &[&[1, -2]]));
    }

    #[test]
    fn projection_examples() {
        let s = QuadSpace::standard(2);
        assert!(Subspace::full(&s).projection().is_identity());
        assert!(Subspace::zero(&s).projection().is_zero());
        assert_eq!(span(&s, &[&[1, 0]]).projection(), qm(&[&[1, 0], &[0, 0]]));
        let half = Rational::new(1.into(), 2.into());
        assert_eq!(span(&s, &[&[1, 1]]).projection(), qm(&[&[1, 1], &[1, 1]]).scale(&half));
    }

    #[test]
    fn meet_join_examples() {
        let s = QuadSpace::standard(2);
        let e1 = span(&s, &[&[1, 0]]);
        let e2 = span(&s, &[&[0, 1]]);
        let d = span(&s, &[&[1, 1]]);
        assert!(e1.meet(&e1.orthocomplement()).unwrap().is_zero());
        assert!(e1.join(&e2).unwrap().is_full());
        assert!(e1.meet(&d).unwrap().is_zero());
        let s3 = QuadSpace::standard(3);
        let a = span(&s3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(&s3, &[&[0, 1, 1], &[1, 0, 0]]);
        assert_eq!(a.meet(&b).unwrap(), span(&s3, &[&[1, 0, 0]]));
        assert_eq!(e1.meet(&Subspace::zero(&QuadSpace::standard(3))), Err(Error::SpaceMismatch));
    }

    #[test]
    fn relation_examples() {
        let s = QuadSpace::standard(2);
        let e1 = span(&s, &[&[1, 0]]);
        let e2 = span(&s, &[&[0, 1]]);
        let d = span(&s, &[&[1, 1]]);
        assert!(e1.rel_bot(&e2).unwrap());
        assert!(d.rel_top(&d.orthocomplement()).unwrap());
        assert!(!e1.rel_top(&e1).unwrap());
        assert!(e1.partial_oplus(&e2).unwrap().unwrap().is_full());
        assert!(d.partial_sqcap(&d.orthocomplement()).unwrap().unwrap().is_zero());
        assert_eq!(e1.partial_oplus(&d).unwrap(), None);
    }

    #[test]
    fn finite_field_space() {
        type F3 = Fp<3>;
        let s = QuadSpace::<F3>::standard(2);
        let u = Subspace::span(&s, vec![vec![F3::new(1), F3::new(1)]]).unwrap();
        let uc = u.orthocomplement();
        assert_eq!(uc, Subspace::span(&s, vec![vec![F3::new(1), F3::new(-1)]]).unwrap());
        let p = u.projection();
        assert_eq!(p.mul(&p), p);
        assert!(p.add(&uc.projection()).is_identity());
    }
}
