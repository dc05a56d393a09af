//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two backends are
//! provided: arbitrary-precision rationals ([`Rational`], the default) and
//! residues modulo a small odd prime ([`Fp`]).

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::Matrix;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// How a Gram matrix was shown to be anisotropic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Certificate<F> {
    /// Leading principal minors, all strictly positive (Sylvester's criterion).
    LeadingMinors(Vec<F>),
    /// Every projective point was checked; no isotropic vector exists.
    Exhaustive,
}

pub trait Field:
    Clone
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals.
    fn characteristic() -> u64;

    /// Check that the symmetric matrix `gram` defines an anisotropic form.
    fn certify_anisotropic(gram: &Matrix<Self>) -> Result<Certificate<Self>, Error>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn one() -> Self {
        One::one()
    }

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }

    fn characteristic() -> u64 {
        0
    }

    /// Positive definiteness via leading principal minors. General rational
    /// anisotropy (indefinite anisotropic forms) is deliberately not accepted.
    fn certify_anisotropic(gram: &Matrix<Self>) -> Result<Certificate<Self>, Error> {
        let n = gram.rows();
        let mut minors = Vec::with_capacity(n);
        for k in 1..=n {
            let minor = gram.leading_block(k).determinant();
            if !minor.is_positive() {
                return Err(Error::NotPositiveDefinite {
                    index: k,
                    minor: minor.to_string(),
                });
            }
            minors.push(minor);
        }
        Ok(Certificate::LeadingMinors(minors))
    }
}

/// Residue class modulo the prime `P`.
///
/// Anisotropic forms over a finite field exist only in dimension at most 2,
/// so spaces over `Fp` are limited to that.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn modulus_is_prime() -> bool {
        if P < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= P {
            if P.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }

    fn one() -> Self {
        Fp(1 % P)
    }

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn is_zero(&self) -> bool {
        self.0 == 0
    }

    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }

    fn characteristic() -> u64 {
        P
    }

    /// Exhaustive search over projective points; a witness is reported on failure.
    fn certify_anisotropic(gram: &Matrix<Self>) -> Result<Certificate<Self>, Error> {
        let n = gram.rows();
        if !Self::modulus_is_prime() {
            return Err(Error::UnsupportedField(format!("modulus {P} is not prime")));
        }
        if n > 2 {
            return Err(Error::UnsupportedField(format!(
                "no anisotropic form of dimension {n} exists over F_{P}"
            )));
        }
        let q = |v: &[Self]| -> Self {
            let mut acc = Self::zero();
            for i in 0..n {
                for j in 0..n {
                    acc = acc + v[i] * gram.get(i, j) * v[j];
                }
            }
            acc
        };
        let mut points: Vec<Vec<Self>> = Vec::new();
        match n {
            0 => {}
            1 => points.push(vec![Self::one()]),
            _ => {
                points.push(vec![Self::zero(), Self::one()]);
                for y in 0..P {
                    points.push(vec![Self::one(), Fp(y)]);
                }
            }
        }
        for v in points {
            if q(&v).is_zero() {
                return Err(Error::IsotropicVector {
                    witness: v.iter().map(|x| x.to_string()).collect(),
                });
            }
        }
        Ok(Certificate::Exhaustive)
    }
}
