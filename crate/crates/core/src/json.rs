//! JSON wire formats.
//!
//! Rationals travel as strings (`"3"`, `"-1/2"`), Laurent polynomials as
//! `[[exponent, "coefficient"], ...]` with strictly increasing exponents.
//! Decoders are strict about shape and enforce size limits so hostile input
//! cannot request unbounded work.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{de::DeserializeOwned, Deserialize, Serialize};
use thiserror::Error;

use crate::error::Error;
use crate::field::Rational;
use crate::group::{ConstantElement, GroupElement};
use crate::laurent::{LaurentMat, LaurentPoly};
use crate::linalg::Matrix;
use crate::normal_form::NormalForm;
use crate::space::{QuadSpace, Subspace};
use crate::submodule::GradedSubmodule;

pub const MAX_DIM: usize = 12;
pub const MAX_EXPONENT: i64 = 64;
pub const MAX_LAYERS: usize = 16;
pub const MAX_FACTORS: usize = 256;
pub const MAX_RATIONAL_LEN: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Invalid(#[from] Error),
}

pub type DecodeResult<T> = std::result::Result<T, DecodeError>;

fn malformed<T>(msg: impl Into<String>) -> DecodeResult<T> {
    Err(DecodeError::Malformed(msg.into()))
}

pub type PolyDoc = Vec<(i64, String)>;
pub type ScalarMatrixDoc = Vec<Vec<String>>;

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDoc {
    pub n: usize,
    pub gram: ScalarMatrixDoc,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<ScalarMatrixDoc>,
    pub basis: ScalarMatrixDoc,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<ScalarMatrixDoc>,
    pub mat: Vec<Vec<PolyDoc>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubmoduleDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<ScalarMatrixDoc>,
    pub m: usize,
    pub basis: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalFormDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<ScalarMatrixDoc>,
    pub factors: Vec<FactorDoc>,
    pub tail: ScalarMatrixDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorDoc {
    pub basis: ScalarMatrixDoc,
}

/// Parse a JSON document into one of the `*Doc` types.
pub fn from_str<T: DeserializeOwned>(text: &str) -> DecodeResult<T> {
    serde_json::from_str(text).map_err(|e| DecodeError::Malformed(e.to_string()))
}

/// Compact single-line rendering.
pub fn to_line<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("documents always serialize")
}

// ---- scalars

pub fn parse_rational(s: &str) -> DecodeResult<Rational> {
    if s.len() > MAX_RATIONAL_LEN {
        return malformed("rational literal too long");
    }
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    let body = s.strip_prefix('-').unwrap_or(s);
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (body, None),
    };
    if !digits(num) || den.is_some_and(|d| !digits(d)) {
        return malformed(format!("not a rational: {s:?}"));
    }
    let mut n: BigInt = num.parse().expect("validated digits");
    if s.starts_with('-') {
        n = -n;
    }
    let d: BigInt = match den {
        Some(d) => d.parse().expect("validated digits"),
        None => BigInt::from(1),
    };
    if d == BigInt::from(0) {
        return malformed(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

pub fn print_rational(x: &Rational) -> String {
    x.to_string()
}

fn check_dim(n: usize) -> DecodeResult<()> {
    if n == 0 || n > MAX_DIM {
        return malformed(format!("dimension {n} outside 1..={MAX_DIM}"));
    }
    Ok(())
}

pub fn decode_scalar_matrix(doc: &ScalarMatrixDoc, rows: usize, cols: usize) -> DecodeResult<Matrix<Rational>> {
    if doc.len() != rows || doc.iter().any(|r| r.len() != cols) {
        return malformed(format!("expected a {rows}x{cols} matrix"));
    }
    let data = doc
        .iter()
        .map(|r| r.iter().map(|x| parse_rational(x)).collect::<DecodeResult<Vec<_>>>())
        .collect::<DecodeResult<Vec<_>>>()?;
    Ok(Matrix::from_rows(data, cols)?)
}

pub fn encode_scalar_matrix(m: &Matrix<Rational>) -> ScalarMatrixDoc {
    (0..m.rows()).map(|i| m.row(i).iter().map(print_rational).collect()).collect()
}

// ---- polynomials

pub fn decode_poly(doc: &PolyDoc) -> DecodeResult<LaurentPoly> {
    let mut prev: Option<i64> = None;
    let mut terms = Vec::with_capacity(doc.len());
    for (e, c) in doc {
        if e.abs() > MAX_EXPONENT {
            return malformed(format!("exponent {e} exceeds {MAX_EXPONENT} in magnitude"));
        }
        if prev.is_some_and(|p| p >= *e) {
            return malformed("polynomial exponents must be strictly increasing");
        }
        prev = Some(*e);
        terms.push((*e, parse_rational(c)?));
    }
    Ok(LaurentPoly::from_terms(terms))
}

pub fn encode_poly(p: &LaurentPoly) -> PolyDoc {
    p.terms().map(|(e, c)| (e, print_rational(c))).collect()
}

// ---- spaces

pub fn decode_space_doc(doc: &SpaceDoc) -> DecodeResult<Arc<QuadSpace>> {
    check_dim(doc.n)?;
    let g = decode_scalar_matrix(&doc.gram, doc.n, doc.n)?;
    Ok(QuadSpace::new(doc.n, g)?)
}

pub fn decode_space(text: &str) -> DecodeResult<Arc<QuadSpace>> {
    decode_space_doc(&from_str(text)?)
}

pub fn encode_space(space: &QuadSpace) -> SpaceDoc {
    SpaceDoc { n: space.dim(), gram: encode_scalar_matrix(space.gram()) }
}

fn gram_space(gram: &ScalarMatrixDoc) -> DecodeResult<Arc<QuadSpace>> {
    let n = gram.len();
    check_dim(n)?;
    let g = decode_scalar_matrix(gram, n, n)?;
    Ok(QuadSpace::new(n, g)?)
}

/// Pick the space for a payload: an embedded Gram matrix, else `fallback`,
/// else the standard form of dimension `n`. An embedded Gram matrix that
/// disagrees with `fallback` is rejected.
fn resolve_space(
    embedded: Option<&ScalarMatrixDoc>,
    fallback: Option<&Arc<QuadSpace>>,
    n: Option<usize>,
) -> DecodeResult<Arc<QuadSpace>> {
    let space = match (embedded, fallback) {
        (Some(g), Some(f)) => {
            let s = gram_space(g)?;
            if *s != **f {
                return malformed("embedded gram disagrees with the supplied space");
            }
            Arc::clone(f)
        }
        (Some(g), None) => gram_space(g)?,
        (None, Some(f)) => Arc::clone(f),
        (None, None) => match n {
            Some(n) => {
                check_dim(n)?;
                QuadSpace::standard(n)
            }
            None => return malformed("cannot infer the dimension"),
        },
    };
    if let Some(n) = n {
        if n != space.dim() {
            return malformed(format!("payload has dimension {n}, space has {}", space.dim()));
        }
    }
    Ok(space)
}

// ---- subspaces

pub fn decode_subspace_doc(doc: &SubspaceDoc, space: Option<&Arc<QuadSpace>>) -> DecodeResult<Subspace> {
    let width = doc.basis.first().map(Vec::len);
    if let (Some(n), Some(w)) = (doc.n, width) {
        if n != w {
            return malformed("basis vectors do not match \"n\"");
        }
    }
    let space = resolve_space(doc.gram.as_ref(), space, doc.n.or(width))?;
    let n = space.dim();
    if doc.basis.len() > MAX_DIM * 4 {
        return malformed("too many basis vectors");
    }
    let m = decode_scalar_matrix(&doc.basis, doc.basis.len(), n)?;
    Ok(Subspace::from_spanning_matrix(&space, &m))
}

pub fn decode_subspace(text: &str, space: Option<&Arc<QuadSpace>>) -> DecodeResult<Subspace> {
    decode_subspace_doc(&from_str(text)?, space)
}

pub fn encode_subspace(u: &Subspace) -> SubspaceDoc {
    SubspaceDoc { n: None, gram: None, basis: encode_scalar_matrix(u.basis()) }
}

// ---- Laurent matrices and group elements

/// Decode a Laurent matrix without checking paraunitarity.
pub fn decode_matrix_doc(doc: &MatrixDoc, space: Option<&Arc<QuadSpace>>) -> DecodeResult<(Arc<QuadSpace>, LaurentMat)> {
    let n = doc.mat.len();
    check_dim(n)?;
    if doc.mat.iter().any(|r| r.len() != n) {
        return malformed("matrix must be square");
    }
    let space = resolve_space(doc.gram.as_ref(), space, Some(n))?;
    let rows = doc
        .mat
        .iter()
        .map(|r| r.iter().map(decode_poly).collect::<DecodeResult<Vec<_>>>())
        .collect::<DecodeResult<Vec<_>>>()?;
    Ok((space, LaurentMat::from_rows(rows)?))
}

pub fn decode_matrix(text: &str, space: Option<&Arc<QuadSpace>>) -> DecodeResult<(Arc<QuadSpace>, LaurentMat)> {
    decode_matrix_doc(&from_str(text)?, space)
}

pub fn decode_element(text: &str, space: Option<&Arc<QuadSpace>>) -> DecodeResult<GroupElement> {
    let (space, mat) = decode_matrix(text, space)?;
    Ok(GroupElement::new(&space, mat)?)
}

pub fn encode_matrix(space: &QuadSpace, m: &LaurentMat) -> MatrixDoc {
    MatrixDoc {
        gram: Some(encode_scalar_matrix(space.gram())),
        mat: m.rows().map(|r| r.iter().map(encode_poly).collect()).collect(),
    }
}

pub fn encode_element(phi: &GroupElement) -> MatrixDoc {
    encode_matrix(phi.space(), phi.mat())
}

// ---- graded submodules

pub fn decode_submodule_doc(doc: &SubmoduleDoc, space: Option<&Arc<QuadSpace>>) -> DecodeResult<GradedSubmodule> {
    if doc.m > MAX_LAYERS {
        return malformed(format!("at most {MAX_LAYERS} layers are supported"));
    }
    let width = doc.basis.first().and_then(|v| v.first()).map(Vec::len);
    let space = resolve_space(doc.gram.as_ref(), space, width)?;
    let n = space.dim();
    if doc.basis.len() > doc.m * n {
        return malformed("more basis vectors than the ambient dimension");
    }
    let mut vectors = Vec::with_capacity(doc.basis.len());
    for v in &doc.basis {
        if v.len() != doc.m || v.iter().any(|l| l.len() != n) {
            return malformed(format!("each basis vector needs {} layers of length {n}", doc.m));
        }
        let layers = v
            .iter()
            .map(|l| l.iter().map(|x| parse_rational(x)).collect::<DecodeResult<Vec<_>>>())
            .collect::<DecodeResult<Vec<_>>>()?;
        vectors.push(layers);
    }
    Ok(GradedSubmodule::from_layers(&space, doc.m, vectors)?)
}

pub fn decode_submodule(text: &str, space: Option<&Arc<QuadSpace>>) -> DecodeResult<GradedSubmodule> {
    decode_submodule_doc(&from_str(text)?, space)
}

pub fn encode_submodule(m: &GradedSubmodule) -> SubmoduleDoc {
    SubmoduleDoc {
        gram: Some(encode_scalar_matrix(m.space().gram())),
        m: m.top(),
        basis: m
            .basis_layers()
            .iter()
            .map(|v| v.iter().map(|l| l.iter().map(print_rational).collect()).collect())
            .collect(),
    }
}

// ---- normal forms

pub fn decode_normal_form_doc(doc: &NormalFormDoc, space: Option<&Arc<QuadSpace>>) -> DecodeResult<NormalForm> {
    if doc.factors.len() > MAX_FACTORS {
        return malformed(format!("at most {MAX_FACTORS} factors are supported"));
    }
    let space = resolve_space(doc.gram.as_ref(), space, Some(doc.tail.len()))?;
    let n = space.dim();
    let tail = ConstantElement::new(&space, decode_scalar_matrix(&doc.tail, n, n)?)?;
    let factors = doc
        .factors
        .iter()
        .map(|f| decode_subspace_doc(&SubspaceDoc { n: Some(n), gram: None, basis: f.basis.clone() }, Some(&space)))
        .collect::<DecodeResult<Vec<_>>>()?;
    Ok(NormalForm { factors, tail })
}

pub fn decode_normal_form(text: &str, space: Option<&Arc<QuadSpace>>) -> DecodeResult<NormalForm> {
    decode_normal_form_doc(&from_str(text)?, space)
}

pub fn encode_normal_form(nf: &NormalForm, verified: Option<bool>) -> NormalFormDoc {
    NormalFormDoc {
        gram: Some(encode_scalar_matrix(nf.space().gram())),
        factors: nf.factors.iter().map(|u| FactorDoc { basis: encode_scalar_matrix(u.basis()) }).collect(),
        tail: encode_scalar_matrix(nf.tail.mat()),
        verified,
    }
}
