//! The right-invariant lattice order on `PPU(b)`.
//!
//! `φ <= ψ` iff `ψ φ^-1` lies in the positive cone (entries in `k[t]`).
//! Negative-cone elements correspond bijectively to submodules of `V⊕`
//! through their kernels; a larger kernel means a smaller element.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::group::GroupElement;
use crate::linalg::Matrix;
use crate::space::{check_same_space, Subspace};
use crate::submodule::GradedSubmodule;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Cone {
    Positive,
    Negative,
    Identity,
    Neither,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum OrderRelation {
    LessEq,
    GreaterEq,
    Equal,
    Incomparable,
}

impl fmt::Display for OrderRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn cone_classify<F: Field>(phi: &GroupElement<F>) -> Result<Cone> {
    phi.require_pure()?;
    let neg = phi.degree() <= 0;
    let pos = phi.valuation() >= 0;
    Ok(match (pos, neg) {
        (true, true) => Cone::Identity,
        (true, false) => Cone::Positive,
        (false, true) => Cone::Negative,
        (false, false) => Cone::Neither,
    })
}

pub fn compare<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<OrderRelation> {
    phi.require_pure()?;
    psi.require_pure()?;
    let chi = psi.try_mul(&phi.inverse())?;
    Ok(match cone_classify(&chi)? {
        Cone::Positive => OrderRelation::LessEq,
        Cone::Negative => OrderRelation::GreaterEq,
        Cone::Identity => OrderRelation::Equal,
        Cone::Neither => OrderRelation::Incomparable,
    })
}

/// `φ <= ψ`.
pub fn le<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<bool> {
    Ok(matches!(compare(phi, psi)?, OrderRelation::LessEq | OrderRelation::Equal))
}

/// `ψ = σ φ` for some negative-cone `σ`, i.e. `ψ <= φ`.
pub fn right_divides<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<bool> {
    le(psi, phi)
}

fn require_negative<F: Field>(phi: &GroupElement<F>) -> Result<()> {
    match cone_classify(phi)? {
        Cone::Negative | Cone::Identity => Ok(()),
        _ => Err(Error::NotNegativeCone),
    }
}

/// Kernel of a negative-cone element acting on `V⊕`.
///
/// The kernel lies in layers `1..=d` with `d = -valuation(φ)`, so it is the
/// nullspace of the truncated action on `⊕_{i=1..d} t^i V`.
pub fn omega<F: Field>(phi: &GroupElement<F>) -> Result<GradedSubmodule<F>> {
    require_negative(phi)?;
    let space = phi.space();
    let n = space.dim();
    let d = (-phi.valuation()).max(0) as usize;
    let mat = phi.mat();
    let mut action = Matrix::zeros(d * n, d * n);
    for i in 1..=d {
        for j in 0..n {
            let col = (d - i) * n + j;
            for r in 0..n {
                for (e, c) in mat.get(r, j).terms() {
                    let l = e + i as i64;
                    if l >= 1 && l <= d as i64 {
                        action.set((d - l as usize) * n + r, col, c.clone());
                    }
                }
            }
        }
    }
    Ok(GradedSubmodule::span_of_coords(space, d, &action.nullspace()))
}

/// The unique negative-cone element whose kernel is `m`.
///
/// Peels one generator at a time: with `W = {v : tv in M}`, `p_{W*}` is a
/// right divisor and the remaining kernel is `p_{W*} M`.
pub fn omega_inverse<F: Field>(m: &GradedSubmodule<F>) -> Result<GroupElement<F>> {
    if !m.is_shift_closed() {
        return Err(Error::NotShiftClosed);
    }
    let space = m.space();
    let mut acc = GroupElement::identity(space);
    let mut rest = m.clone();
    while !rest.is_zero() {
        let w = rest.layer(1);
        let g = GroupElement::generator(&w.orthocomplement());
        let next = rest.image_under(g.mat())?;
        assert!(next.dim() < rest.dim(), "peeling must shrink the kernel");
        rest = next;
        acc = &g * &acc;
    }
    Ok(acc)
}

pub fn submodule_sum<F: Field>(m: &GradedSubmodule<F>, n: &GradedSubmodule<F>) -> Result<GradedSubmodule<F>> {
    m.sum(n)
}

pub fn submodule_intersect<F: Field>(m: &GradedSubmodule<F>, n: &GradedSubmodule<F>) -> Result<GradedSubmodule<F>> {
    m.intersect(n)
}

pub fn layer<F: Field>(m: &GradedSubmodule<F>, i: usize) -> Subspace<F> {
    m.layer(i)
}

fn common_shift<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<i64> {
    phi.require_pure()?;
    psi.require_pure()?;
    check_same_space(phi.space(), psi.space())?;
    Ok(phi.degree().max(psi.degree()).max(0))
}

pub fn lattice_meet<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<GroupElement<F>> {
    let d = common_shift(phi, psi)?;
    let k = omega(&phi.shift(-d))?.sum(&omega(&psi.shift(-d))?)?;
    Ok(omega_inverse(&k)?.shift(d))
}

pub fn lattice_join<F: Field>(phi: &GroupElement<F>, psi: &GroupElement<F>) -> Result<GroupElement<F>> {
    let d = common_shift(phi, psi)?;
    let k = omega(&phi.shift(-d))?.intersect(&omega(&psi.shift(-d))?)?;
    Ok(omega_inverse(&k)?.shift(d))
}

/// `t^-1 <= φ <= 1`, equivalently all exponents of `φ` lie in `[-1, 0]`.
pub fn in_interval<F: Field>(phi: &GroupElement<F>) -> Result<bool> {
    phi.require_pure()?;
    Ok(phi.valuation() >= -1 && phi.degree() <= 0)
}

/// The subspace `U` with `φ = p_U`.
pub fn as_generator<F: Field>(phi: &GroupElement<F>) -> Result<Subspace<F>> {
    if !in_interval(phi)? {
        return Err(Error::NotInInterval);
    }
    Ok(omega(phi)?.layer(1).orthocomplement())
}

/// `t^-1 φ^-1`; sends `p_U` to `p_{U*}`.
pub fn interval_complement<F: Field>(phi: &GroupElement<F>) -> Result<GroupElement<F>> {
    phi.require_pure()?;
    Ok(phi.inverse().shift(-1))
}
