//! The paraunitary group `PU(b)`, its pure subgroup `PPU(b) = ker ε₁`, the
//! constants `U(b)`, and the degree-one generators `p_U`.

use std::fmt;
use std::ops::Mul;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::laurent::{LaurentMat, LaurentPoly, LaurentVec};
use crate::linalg::Matrix;
use crate::space::{check_same_space, QuadSpace, Subspace};

impl<F: Field> QuadSpace<F> {
    /// The extension `b̃` of the form to `V[t, t^-1]`: `star(v)^T G w`.
    ///
    /// Antilinear in the first argument and linear in the second, so that
    /// `b̃(t^i v, t^j w) = t^(j-i) b(v, w)`.
    pub fn extended_form(&self, v: &LaurentVec<F>, w: &LaurentVec<F>) -> Result<LaurentPoly<F>> {
        let n = self.dim();
        for x in [v, w] {
            if x.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: x.dim() });
            }
        }
        let mut acc = LaurentPoly::zero();
        for i in 0..n {
            let vi = v.coords()[i].star();
            if vi.is_zero() {
                continue;
            }
            for j in 0..n {
                let g = self.gram().entry(i, j);
                if g.is_zero() || w.coords()[j].is_zero() {
                    continue;
                }
                acc = &acc + &(&vi * &w.coords()[j]).scale(g);
            }
        }
        Ok(acc)
    }

    /// Constant coefficient of [`extended_form`](Self::extended_form), the
    /// symmetric `k`-bilinear form `sum_i b(v_i, w_i)`.
    pub fn extended_form_t0(&self, v: &LaurentVec<F>, w: &LaurentVec<F>) -> Result<F> {
        Ok(self.extended_form(v, w)?.coeff(0))
    }

    /// Adjoint of a Laurent matrix with respect to `b̃`: `G^-1 star(φ)^T G`.
    pub fn laurent_adjoint(&self, m: &LaurentMat<F>) -> LaurentMat<F> {
        let gi = LaurentMat::from_constant(self.gram_inv(), 0);
        let g = LaurentMat::from_constant(self.gram(), 0);
        gi.mul(&m.star_transpose()).and_then(|x| x.mul(&g)).expect("dimensions agree")
    }
}

/// An element of `PU(b)`: a Laurent matrix `φ` with `φ'φ = 1`.
///
/// The adjoint `φ'`, which is also the inverse, is computed once and cached.
#[derive(Clone, Debug)]
pub struct GroupElement<F = Rational> {
    space: Arc<QuadSpace<F>>,
    mat: LaurentMat<F>,
    adjoint: LaurentMat<F>,
}

impl<F: Field> PartialEq for GroupElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat && (Arc::ptr_eq(&self.space, &other.space) || self.space == other.space)
    }
}

impl<F: Field> Eq for GroupElement<F> {}

impl<F: Field> GroupElement<F> {
    /// Validate that `mat` is paraunitary with respect to the space's form.
    pub fn new(space: &Arc<QuadSpace<F>>, mat: LaurentMat<F>) -> Result<Self> {
        if mat.dim() != space.dim() {
            return Err(Error::DimensionMismatch { expected: space.dim(), found: mat.dim() });
        }
        let adjoint = space.laurent_adjoint(&mat);
        let product = adjoint.mul(&mat)?;
        if !product.is_identity() {
            let residual = product.sub(&LaurentMat::identity(mat.dim()))?;
            return Err(Error::NotParaunitary { residual: residual.to_string() });
        }
        Ok(GroupElement { space: Arc::clone(space), mat, adjoint })
    }

    /// Caller guarantees `adjoint * mat = 1`.
    pub(crate) fn from_parts(space: &Arc<QuadSpace<F>>, mat: LaurentMat<F>, adjoint: LaurentMat<F>) -> Self {
        debug_assert!(adjoint.mul(&mat).unwrap().is_identity());
        GroupElement { space: Arc::clone(space), mat, adjoint }
    }

    pub fn identity(space: &Arc<QuadSpace<F>>) -> Self {
        Self::t_pow(space, 0)
    }

    /// The central element `t^k * I`.
    pub fn t_pow(space: &Arc<QuadSpace<F>>, k: i64) -> Self {
        let n = space.dim();
        Self::from_parts(space, LaurentMat::scalar_t_pow(n, k), LaurentMat::scalar_t_pow(n, -k))
    }

    /// The generator `p_U = t^-1 π_{U*} + π_U`.
    pub fn generator(u: &Subspace<F>) -> Self {
        let pu = u.projection();
        let pc = u.orthocomplement().projection();
        let n = pu.rows();
        let mat = LaurentMat::from_coefficients(n, [(-1, pc.clone()), (0, pu.clone())]);
        let adjoint = LaurentMat::from_coefficients(n, [(1, pc), (0, pu)]);
        Self::from_parts(u.space(), mat, adjoint)
    }

    pub fn space(&self) -> &Arc<QuadSpace<F>> {
        &self.space
    }

    pub fn mat(&self) -> &LaurentMat<F> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn valuation(&self) -> i64 {
        self.mat.valuation().expect("invertible matrices are nonzero")
    }

    pub fn degree(&self) -> i64 {
        self.mat.degree().expect("invertible matrices are nonzero")
    }

    /// `φ'`, the adjoint with respect to `b̃`; for paraunitary `φ` this is `φ^-1`.
    pub fn adjoint(&self) -> Self {
        GroupElement { space: Arc::clone(&self.space), mat: self.adjoint.clone(), adjoint: self.mat.clone() }
    }

    pub fn inverse(&self) -> Self {
        self.adjoint()
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        Ok(GroupElement {
            space: Arc::clone(&self.space),
            mat: self.mat.mul(&other.mat)?,
            adjoint: other.adjoint.mul(&self.adjoint)?,
        })
    }

    /// `t^k φ`.
    pub fn shift(&self, k: i64) -> Self {
        GroupElement { space: Arc::clone(&self.space), mat: self.mat.shift(k), adjoint: self.adjoint.shift(-k) }
    }

    pub fn apply(&self, v: &LaurentVec<F>) -> Result<LaurentVec<F>> {
        self.mat.apply(v)
    }

    /// Canonical specialization `t -> 1`, a homomorphism onto `U(b)`.
    pub fn epsilon1(&self) -> ConstantElement<F> {
        let m = self.mat.eval(&F::one()).expect("1 is nonzero");
        ConstantElement { space: Arc::clone(&self.space), mat: m }
    }

    /// Specialization `t -> -1`.
    pub fn epsilon_minus1(&self) -> ConstantElement<F> {
        let m = self.mat.eval(&-F::one()).expect("-1 is nonzero outside characteristic 2");
        ConstantElement { space: Arc::clone(&self.space), mat: m }
    }

    /// Membership in `PPU(b)`.
    pub fn is_pure(&self) -> bool {
        self.epsilon1().mat().is_identity()
    }

    pub(crate) fn require_pure(&self) -> Result<()> {
        if self.is_pure() { Ok(()) } else { Err(Error::NotPure) }
    }

    /// `PU(b) = PPU(b) ⋊ U(b)`: returns `(φ ι(h)^-1, h)` with `h = ε₁(φ)`.
    pub fn semidirect_split(&self) -> (Self, ConstantElement<F>) {
        let h = self.epsilon1();
        let pure = self * &h.inverse().iota();
        (pure, h)
    }
}

impl<F: Field> Mul for &GroupElement<F> {
    type Output = GroupElement<F>;

    /// Panics if the operands live in different spaces; see [`GroupElement::try_mul`].
    fn mul(self, rhs: Self) -> GroupElement<F> {
        self.try_mul(rhs).expect("group elements over the same space")
    }
}

impl<F: Field> fmt::Display for GroupElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.mat.fmt(f)
    }
}

/// An element of the unitary group `U(b)`: a constant `h` with `h^T G h = G`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstantElement<F = Rational> {
    space: Arc<QuadSpace<F>>,
    mat: Matrix<F>,
}

impl<F: Field> ConstantElement<F> {
    pub fn new(space: &Arc<QuadSpace<F>>, mat: Matrix<F>) -> Result<Self> {
        let n = space.dim();
        if mat.rows() != n || mat.cols() != n {
            return Err(Error::DimensionMismatch { expected: n, found: mat.rows().max(mat.cols()) });
        }
        if mat.transpose().mul(space.gram()).mul(&mat) != *space.gram() {
            return Err(Error::NotOrthogonal);
        }
        Ok(ConstantElement { space: Arc::clone(space), mat })
    }

    pub fn identity(space: &Arc<QuadSpace<F>>) -> Self {
        ConstantElement { space: Arc::clone(space), mat: Matrix::identity(space.dim()) }
    }

    /// The reflection `1 - 2π_U`, fixing `U*` and negating `U`.
    pub fn reflection(u: &Subspace<F>) -> Self {
        let n = u.space().dim();
        let two = F::one() + F::one();
        let mat = Matrix::identity(n).sub(&u.projection().scale(&two));
        ConstantElement { space: Arc::clone(u.space()), mat }
    }

    pub fn space(&self) -> &Arc<QuadSpace<F>> {
        &self.space
    }

    pub fn mat(&self) -> &Matrix<F> {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn inverse(&self) -> Self {
        ConstantElement { space: Arc::clone(&self.space), mat: self.space.constant_adjoint(&self.mat) }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same_space(&self.space, &other.space)?;
        Ok(ConstantElement { space: Arc::clone(&self.space), mat: self.mat.mul(&other.mat) })
    }

    /// The canonical inclusion `ι: U(b) -> PU(b)`.
    pub fn iota(&self) -> GroupElement<F> {
        let inv = self.space.constant_adjoint(&self.mat);
        GroupElement::from_parts(
            &self.space,
            LaurentMat::from_constant(&self.mat, 0),
            LaurentMat::from_constant(&inv, 0),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = LaurentPoly<Rational>;

    fn q(v: i64) -> Rational {
        Rational::from_i64(v)
    }

    fn half() -> Rational {
        Rational::new(1.into(), 2.into())
    }

    fn diag(entries: &[P]) -> LaurentMat {
        LaurentMat::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { P::zero() })
    }

    fn span(space: &Arc<QuadSpace>, vs: &[&[i64]]) -> Subspace {
        Subspace::span(space, vs.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn e(n: usize, i: usize) -> Vec<Rational> {
        (0..n).map(|j| q((i == j) as i64)).collect()
    }

    #[test]
    fn extended_form_examples() {
        let s = QuadSpace::standard(2);
        let tv = LaurentVec::from_constant(&e(2, 0), 1);
        assert_eq!(s.extended_form(&tv, &tv).unwrap(), P::one());
        assert_eq!(s.extended_form_t0(&tv, &tv).unwrap(), q(1));
        let c = LaurentVec::from_constant(&e(2, 0), 0);
        assert_eq!(s.extended_form_t0(&tv, &c).unwrap(), q(0));
        // b̃(t^i v, t^j w) = t^(j-i) b(v, w)
        let g = QuadSpace::new(2, Matrix::from_rows(vec![vec![q(2), q(1)], vec![q(1), q(1)]], 2).unwrap()).unwrap();
        let v = [q(1), q(-1)];
        let w = [q(3), q(2)];
        let lhs = g.extended_form(&LaurentVec::from_constant(&v, 2), &LaurentVec::from_constant(&w, -1)).unwrap();
        assert_eq!(lhs, P::monomial(g.form(&v, &w), -3));
    }

    #[test]
    fn extended_form_specializes() {
        let s = QuadSpace::standard(2);
        let v = LaurentVec::from_layers(2, [(0, e(2, 0)), (1, e(2, 1))]);
        let w = LaurentVec::from_constant(&e(2, 0), -1);
        let lhs = s.extended_form(&v, &w).unwrap().eval(&q(1)).unwrap();
        assert_eq!(lhs, s.form(&v.eval(&q(1)).unwrap(), &w.eval(&q(1)).unwrap()));
        assert!(s.extended_form(&v, &LaurentVec::zero(3)).is_err());
    }

    #[test]
    fn splitting_at_zero_exponent() {
        // vectors in tV[t] are b̃₀-orthogonal to vectors in V[t^-1]
        let s = QuadSpace::standard(2);
        let v = LaurentVec::from_layers(2, [(1, vec![q(1), q(2)]), (3, vec![q(-1), q(5)])]);
        let w = LaurentVec::from_layers(2, [(0, vec![q(4), q(1)]), (-2, vec![q(7), q(-3)])]);
        assert_eq!(s.extended_form_t0(&v, &w).unwrap(), q(0));
    }

    #[test]
    fn make_element_examples() {
        let s = QuadSpace::standard(2);
        let d = GroupElement::new(&s, diag(&[P::one(), P::t_pow(-1)])).unwrap();
        assert_eq!(d.adjoint().mat(), &diag(&[P::one(), P::t_pow(1)]));
        assert!(matches!(
            GroupElement::new(&s, diag(&[P::constant(q(2)), P::one()])),
            Err(Error::NotParaunitary { .. })
        ));
        let swap = LaurentMat::from_rows(vec![vec![P::zero(), P::one()], vec![P::one(), P::zero()]]).unwrap();
        let swap = GroupElement::new(&s, swap).unwrap();
        assert!(!swap.is_pure());
        assert!(GroupElement::new(&s, LaurentMat::identity(3)).is_err());
    }

    #[test]
    fn generator_examples() {
        let s = QuadSpace::standard(2);
        assert_eq!(GroupElement::generator(&Subspace::zero(&s)), GroupElement::t_pow(&s, -1));
        assert_eq!(GroupElement::generator(&Subspace::full(&s)), GroupElement::identity(&s));
        assert_eq!(GroupElement::generator(&span(&s, &[&[1, 0]])).mat(), &diag(&[P::one(), P::t_pow(-1)]));
        let plus = P::new(-1, vec![half(), half()]);
        let minus = P::new(-1, vec![-half(), half()]);
        let expected = LaurentMat::from_rows(vec![vec![plus.clone(), minus.clone()], vec![minus, plus]]).unwrap();
        assert_eq!(GroupElement::generator(&span(&s, &[&[1, 1]])).mat(), &expected);
    }

    #[test]
    fn generator_identities() {
        let s = QuadSpace::new(3, Matrix::from_rows(vec![
            vec![q(2), q(1), q(0)],
            vec![q(1), q(3), q(1)],
            vec![q(0), q(1), q(1)],
        ], 3).unwrap()).unwrap();
        let u = span(&s, &[&[1, 2, 0], &[0, 1, -1]]);
        let p = GroupElement::generator(&u);
        let pc = GroupElement::generator(&u.orthocomplement());
        // validation through the public constructor agrees with the cached adjoint
        assert_eq!(GroupElement::new(&s, p.mat().clone()).unwrap(), p);
        assert_eq!(&p * &pc, GroupElement::t_pow(&s, -1));
        assert!(p.is_pure());
        assert!(p.epsilon1().is_identity());
        // p_U(-1) = π_U - π_{U*}: fixes U, negates U*
        assert_eq!(p.epsilon_minus1(), ConstantElement::reflection(&u.orthocomplement()));
        let expected_adj = LaurentMat::from_coefficients(3, [(1, u.orthocomplement().projection()), (0, u.projection())]);
        assert_eq!(p.adjoint().mat(), &expected_adj);
        assert_eq!(p.adjoint().adjoint(), p);
    }

    #[test]
    fn specializations_and_split() {
        let s = QuadSpace::standard(2);
        let h = ConstantElement::new(&s, Matrix::diagonal(&[q(-1), q(1)])).unwrap();
        assert_eq!(h.iota().epsilon1(), h);
        let (pure, c) = h.iota().semidirect_split();
        assert_eq!((pure, c), (GroupElement::identity(&s), h.clone()));
        let p = GroupElement::generator(&span(&s, &[&[1, 0]]));
        assert_eq!(p.semidirect_split(), (p.clone(), ConstantElement::identity(&s)));
        let ph = &p * &h.iota();
        assert_eq!(ph.semidirect_split(), (p.clone(), h.clone()));
        assert!(!h.iota().is_pure());
        assert!(GroupElement::new(&s, diag(&[P::t_pow(1), P::one()])).unwrap().is_pure());
        assert_eq!(
            ConstantElement::new(&s, Matrix::diagonal(&[q(2), q(1)])),
            Err(Error::NotOrthogonal)
        );
    }

    #[test]
    fn hecke_relation() {
        let s = QuadSpace::standard(3);
        let u = span(&s, &[&[1, -1, 2]]);
        let p = GroupElement::generator(&u);
        let a = p.mat().sub(&LaurentMat::scalar_t_pow(3, -1)).unwrap();
        let b = p.mat().sub(&LaurentMat::identity(3)).unwrap();
        assert!(a.mul(&b).unwrap().is_zero());
    }
}
