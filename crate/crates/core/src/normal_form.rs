//! Unique factorization `φ = p_{U_1} ... p_{U_n} h` with `U_i* + U_{i+1} = V`.
//!
//! Factors are peeled from the left. For a negative-cone `φ`, `p_U` is a
//! left divisor exactly when `U` contains the image of the constant
//! coefficient `φ_0`, so the greedy choice is `U_1 = im φ_0`. Peeling the
//! largest divisor on the left is what forces `U_i* + U_{i+1} = V`; peeling
//! from the right produces the mirrored form `U_i + U_{i+1}* = V` instead.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::group::{ConstantElement, GroupElement};
use crate::laurent::LaurentMat;
use crate::order::{cone_classify, Cone};
use crate::space::{check_same_space, QuadSpace, Subspace};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NormalForm<F = Rational> {
    pub factors: Vec<Subspace<F>>,
    pub tail: ConstantElement<F>,
}

impl<F: Field> NormalForm<F> {
    pub fn identity(space: &Arc<QuadSpace<F>>) -> Self {
        NormalForm { factors: Vec::new(), tail: ConstantElement::identity(space) }
    }

    pub fn space(&self) -> &Arc<QuadSpace<F>> {
        self.tail.space()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Index `i` of the first junction with `U_i* + U_{i+1} != V`.
    pub fn first_adjacency_violation(&self) -> Option<usize> {
        self.factors
            .windows(2)
            .position(|w| !w[0].orthocomplement().join(&w[1]).expect("same space").is_full())
    }

    pub fn check_adjacency(&self) -> Result<()> {
        match self.first_adjacency_violation() {
            None => Ok(()),
            Some(index) => Err(Error::AdjacencyViolation { index }),
        }
    }
}

/// Normal form of a negative-cone pure element.
pub fn factorize_pure<F: Field>(phi: &GroupElement<F>) -> Result<NormalForm<F>> {
    match cone_classify(phi)? {
        Cone::Negative | Cone::Identity => {}
        _ => return Err(Error::NotNegativeCone),
    }
    let space = phi.space();
    let mut factors = Vec::new();
    let mut rest = phi.clone();
    loop {
        let u = Subspace::image_of(space, &rest.mat().coefficient(0));
        if u.is_full() {
            break;
        }
        rest = &GroupElement::generator(&u).adjoint() * &rest;
        factors.push(u);
    }
    debug_assert!(rest.mat().is_identity());
    let nf = NormalForm { factors, tail: ConstantElement::identity(space) };
    nf.check_adjacency()?;
    Ok(nf)
}

/// Factor a paraunitary matrix with entries in `k[t^-1]` as a normal form
/// times the constant `h = φ(1)`.
pub fn factorize_lossless<F: Field>(phi: &GroupElement<F>) -> Result<NormalForm<F>> {
    if phi.degree() > 0 {
        return Err(Error::PositiveExponentPresent);
    }
    let (pure, h) = phi.semidirect_split();
    let mut nf = factorize_pure(&pure)?;
    nf.tail = h;
    Ok(nf)
}

/// Validate `mat` as an element of `PU(b)` and factor it.
pub fn factorize_lossless_matrix<F: Field>(space: &Arc<QuadSpace<F>>, mat: LaurentMat<F>) -> Result<NormalForm<F>> {
    factorize_lossless(&GroupElement::new(space, mat)?)
}

pub fn multiply_out<F: Field>(nf: &NormalForm<F>) -> Result<GroupElement<F>> {
    let space = nf.space();
    let mut acc = GroupElement::identity(space);
    for u in &nf.factors {
        check_same_space(space, u.space())?;
        acc = acc.try_mul(&GroupElement::generator(u))?;
    }
    acc.try_mul(&nf.tail.iota())
}

/// `φ = t^k σ` with `σ` in the negative cone and `k = max(0, degree φ)`.
pub fn fraction_form<F: Field>(phi: &GroupElement<F>) -> Result<(i64, GroupElement<F>)> {
    if !phi.is_pure() {
        return Err(Error::NotPure);
    }
    let k = phi.degree().max(0);
    Ok((k, phi.shift(-k)))
}
