//! Laurent polynomials over an exact field, and vectors and square matrices
//! with Laurent polynomial entries.
//!
//! Storage is dense: a lowest exponent plus a coefficient list. Exponent
//! spans in this crate stay small (bounded by the number of generator
//! factors), so dense layers are the natural fit.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{Field, Rational};
use crate::linalg::Matrix;

/// Element of `k[t, t^-1]`.
///
/// Canonical: the first and last stored coefficients are nonzero, and the zero
/// polynomial has no coefficients and `low == 0`. Derived equality is therefore
/// equality of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPoly<F = Rational> {
    low: i64,
    coeffs: Vec<F>,
}

impl<F: Field> LaurentPoly<F> {
    pub fn new(low: i64, coeffs: Vec<F>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(F::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`.
    pub fn monomial(c: F, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    /// `t^e`.
    pub fn t_pow(e: i64) -> Self {
        Self::monomial(F::one(), e)
    }

    /// Build from `(exponent, coefficient)` terms in any order; repeated exponents add up.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, F)>) -> Self {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (e, c)| &acc + &Self::monomial(c, e))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> F {
        let idx = e - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            F::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &F)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// The involution `t -> t^-1`.
    pub fn star(&self) -> Self {
        match self.degree() {
            None => Self::zero(),
            Some(d) => LaurentPoly { low: -d, coeffs: self.coeffs.iter().rev().cloned().collect() },
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|x| c.clone() * x.clone()).collect())
    }

    /// Substitute a nonzero field element for `t`.
    pub fn eval(&self, x: &F) -> Result<F> {
        let inv = x.inv().ok_or(Error::ZeroEvaluation)?;
        let horner = self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc * x.clone() + c.clone());
        let (base, e) = if self.low >= 0 { (x.clone(), self.low) } else { (inv, -self.low) };
        Ok((0..e).fold(horner, |acc, _| acc * base.clone()))
    }
}

impl<F: Field> Add for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn add(self, rhs: Self) -> LaurentPoly<F> {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().unwrap().max(rhs.degree().unwrap());
        let coeffs = (low..=high).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(low, coeffs)
    }
}

impl<F: Field> Sub for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn sub(self, rhs: Self) -> LaurentPoly<F> {
        self + &(-rhs)
    }
}

impl<F: Field> Neg for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn neg(self) -> LaurentPoly<F> {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

impl<F: Field> Mul for &LaurentPoly<F> {
    type Output = LaurentPoly<F>;
    fn mul(self, rhs: Self) -> LaurentPoly<F> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        LaurentPoly::new(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl<F: Field> $tr for LaurentPoly<F> {
            type Output = LaurentPoly<F>;
            fn $m(self, rhs: Self) -> LaurentPoly<F> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<F: Field> fmt::Display for LaurentPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Element of `V[t, t^-1]` in coordinates.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentVec<F = Rational> {
    coords: Vec<LaurentPoly<F>>,
}

impl<F: Field> LaurentVec<F> {
    pub fn new(coords: Vec<LaurentPoly<F>>) -> Self {
        LaurentVec { coords }
    }

    pub fn zero(n: usize) -> Self {
        LaurentVec { coords: vec![LaurentPoly::zero(); n] }
    }

    /// `t^e * v` for a constant vector `v`.
    pub fn from_constant(v: &[F], e: i64) -> Self {
        LaurentVec { coords: v.iter().map(|c| LaurentPoly::monomial(c.clone(), e)).collect() }
    }

    /// `sum_e t^e * v_e` from `(e, v_e)` layers.
    pub fn from_layers(n: usize, layers: impl IntoIterator<Item = (i64, Vec<F>)>) -> Self {
        layers
            .into_iter()
            .fold(Self::zero(n), |acc, (e, v)| acc.add(&Self::from_constant(&v, e)))
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[LaurentPoly<F>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    /// The coefficient vector `v_e` of `t^e`.
    pub fn layer(&self, e: i64) -> Vec<F> {
        self.coords.iter().map(|p| p.coeff(e)).collect()
    }

    pub fn valuation(&self) -> Option<i64> {
        self.coords.iter().filter_map(LaurentPoly::valuation).min()
    }

    pub fn degree(&self) -> Option<i64> {
        self.coords.iter().filter_map(LaurentPoly::degree).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector add dimension");
        LaurentVec { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, f: &LaurentPoly<F>) -> Self {
        LaurentVec { coords: self.coords.iter().map(|c| f * c).collect() }
    }

    pub fn eval(&self, x: &F) -> Result<Vec<F>> {
        self.coords.iter().map(|p| p.eval(x)).collect()
    }
}

/// Square matrix over `k[t, t^-1]`; an endomorphism of `V[t, t^-1]` acting on
/// column vectors from the left.
#[derive(Clone, Debug)]
pub struct LaurentMat<F = Rational> {
    n: usize,
    entries: Vec<LaurentPoly<F>>,
    valuation: Option<i64>,
    degree: Option<i64>,
}

impl<F: Field> PartialEq for LaurentMat<F> {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl<F: Field> Eq for LaurentMat<F> {}

impl<F: Field> std::hash::Hash for LaurentMat<F> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl<F: Field> LaurentMat<F> {
    fn from_vec(n: usize, entries: Vec<LaurentPoly<F>>) -> Self {
        let valuation = entries.iter().filter_map(LaurentPoly::valuation).min();
        let degree = entries.iter().filter_map(LaurentPoly::degree).max();
        LaurentMat { n, entries, valuation, degree }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly<F>) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self::from_vec(n, entries)
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly<F>>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self::from_vec(n, entries))
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar_t_pow(n, 0)
    }

    /// `t^k * I`.
    pub fn scalar_t_pow(n: usize, k: i64) -> Self {
        Self::from_fn(n, |i, j| if i == j { LaurentPoly::t_pow(k) } else { LaurentPoly::zero() })
    }

    /// `t^e * c` for a constant matrix `c`.
    pub fn from_constant(c: &Matrix<F>, e: i64) -> Self {
        assert!(c.is_square(), "constant must be square");
        Self::from_fn(c.rows(), |i, j| LaurentPoly::monomial(c.get(i, j), e))
    }

    /// `sum_e t^e * c_e`.
    pub fn from_coefficients(n: usize, layers: impl IntoIterator<Item = (i64, Matrix<F>)>) -> Self {
        layers.into_iter().fold(Self::from_fn(n, |_, _| LaurentPoly::zero()), |acc, (e, c)| {
            acc.add(&Self::from_constant(&c, e)).expect("same dimension")
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly<F> {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly<F>]> + '_ {
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    /// Minimum exponent over all entries; `None` for the zero matrix.
    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    /// Maximum exponent over all entries; `None` for the zero matrix.
    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    pub fn is_identity(&self) -> bool {
        self.valuation == Some(0) && self.degree == Some(0) && self.coefficient(0).is_identity()
    }

    /// The constant matrix multiplying `t^e`.
    pub fn coefficient(&self, e: i64) -> Matrix<F> {
        Matrix::from_fn(self.n, self.n, |i, j| self.get(i, j).coeff(e))
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_vec(self.n, self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::from_vec(self.n, self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.n;
        Ok(Self::from_fn(n, |i, j| {
            (0..n).fold(LaurentPoly::zero(), |acc, k| {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if a.is_zero() || b.is_zero() { acc } else { &acc + &(a * b) }
            })
        }))
    }

    /// Transpose with `t -> t^-1` applied to every entry.
    pub fn star_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).star())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::from_vec(self.n, self.entries.iter().map(|p| p.shift(k)).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_vec(self.n, self.entries.iter().map(|p| p.scale(c)).collect())
    }

    /// Substitute a nonzero field element for `t`.
    pub fn eval(&self, x: &F) -> Result<Matrix<F>> {
        if x.is_zero() {
            return Err(Error::ZeroEvaluation);
        }
        let mut out = Matrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).eval(x)?);
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &LaurentVec<F>) -> Result<LaurentVec<F>> {
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: v.dim() });
        }
        Ok(LaurentVec::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n).fold(LaurentPoly::zero(), |acc, k| &acc + &(self.get(i, k) * &v.coords()[k]))
                })
                .collect(),
        ))
    }
}

impl<F: Field> fmt::Display for LaurentMat<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
