//! Exact arithmetic in paraunitary groups of anisotropic quadratic spaces.
//!
//! The group `PU(b)` consists of Laurent-polynomial matrices `φ` with
//! `φ' φ = 1`, where `φ'` is the adjoint for the extended form. Its pure part
//! (elements with `φ(1) = 1`) is lattice ordered; this crate computes the
//! order, meets and joins, and the unique factorization of pure elements
//! into generators `p_U`.

pub mod error;
pub mod field;
pub mod group;
pub mod json;
pub mod laurent;
pub mod linalg;
pub mod normal_form;
pub mod order;
pub mod random;
pub mod space;
pub mod submodule;

pub use error::{Error, Result};
pub use field::{Certificate, Field, Fp, Rational};
pub use group::{ConstantElement, GroupElement};
pub use laurent::{LaurentMat, LaurentPoly, LaurentVec};
pub use linalg::Matrix;
pub use normal_form::NormalForm;
pub use order::{Cone, OrderRelation};
pub use space::{QuadSpace, Subspace};
pub use submodule::GradedSubmodule;
