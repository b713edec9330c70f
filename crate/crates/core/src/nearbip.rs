//! Near-bipartite classification for d ≥ 3, the dual q-Krawtchouk and
//! Krawtchouk contractions, and the two expansion constructions.
//!
//! The trichotomy answers the question over an algebraically closed
//! extension. Over the base field the pair is near-bipartite exactly when
//! the trichotomy holds and the eigenvalues of the contraction lie in the
//! field; [`NearBipartiteClassification::in_field`] records that answer, and
//! the classifier checks it against the matrix route.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::flat::{bipartite_contraction, bipartite_status_array, flat_part, ContractionOutcome, FlatError};
use crate::matrix::Matrix;
use crate::params::{
    affine_transform, realize_matrices, tdd_from_parameter_array, validate_parameter_array, ParameterArray,
    ParamsError, TddSequence, ValidationReport,
};
use crate::poly::Polynomial;
use crate::primary::{
    dual_eigenvalue_ratio, dual_q_krawtchouk_conditions, fundamental_type, krawtchouk_conditions,
    parameter_array_from_primary_data, primary_data_from_parameter_array, q_from_beta, reinforced_from_ratio,
    special_type_flags, PrimaryData, PrimaryError, PrimarySeq, TypeTag,
};
use crate::small::{leonard_d1, leonard_d2};
use crate::verify::MatrixPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    EssentiallyBipartite,
    ReinforcedDualQKrawtchouk,
    Krawtchouk,
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::EssentiallyBipartite => "EssentiallyBipartite",
            Reason::ReinforcedDualQKrawtchouk => "ReinforcedDualQKrawtchouk",
            Reason::Krawtchouk => "Krawtchouk",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fallback {
    /// Type I with no q in the field; the dual q-Krawtchouk test ran on the array.
    NoQInField,
    /// The contraction exists over an extension only; compared as a TD/D sequence.
    MuPrimeNotInField,
}

impl fmt::Display for Fallback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fallback::NoQInField => "NoQInField",
            Fallback::MuPrimeNotInField => "MuPrimeNotInField",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearBipartiteClassification {
    /// Over the algebraic closure; for d ≥ 3 this is `!reasons.is_empty()`.
    pub near_bipartite: bool,
    /// Over the base field.
    pub in_field: bool,
    pub reasons: Vec<Reason>,
    pub fallbacks: Vec<Fallback>,
    pub contraction: Option<ParameterArray>,
    /// The contraction in TD/D form (zero diagonal, same x and θ*).
    pub contraction_tdd: Option<TddSequence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NearBipError {
    #[error("invalid parameter array: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Flat(#[from] FlatError),
    #[error(transparent)]
    Primary(#[from] PrimaryError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContractError {
    #[error("primary data is not of dual q-Krawtchouk type")]
    NotDualQKrawtchouk,
    #[error("primary data is not of Krawtchouk type")]
    NotKrawtchouk,
    #[error("mu' is not in the field; the contraction is only available in TD/D form")]
    MuPrimeNotInField(TddSequence),
    #[error(transparent)]
    Primary(#[from] PrimaryError),
    #[error(transparent)]
    Params(#[from] ParamsError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpandError {
    #[error("B must be bipartite dual q-Krawtchouk (delta = 0, mu + h = 0, mu* h* = 0, tau = 0)")]
    NotBipartiteDualQKrawtchouk,
    #[error("B must be bipartite Krawtchouk (delta = 0, h = 0, h* = 0, tau = 0)")]
    NotBipartiteKrawtchouk,
    #[error("mu must be nonzero")]
    MuZero,
    #[error("mu = ±sqrt(-1) mu' q^i at i={0}")]
    MuForbidden(i64),
    #[error("4 tau^2 = (mu^2 - mu'^2) mu*^2 has no solution in the field")]
    NoTauInField,
    #[error("scalars from different fields")]
    FieldMismatch,
    #[error(transparent)]
    Primary(#[from] PrimaryError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Flat(#[from] FlatError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// An expansion: its primary data, parameter array and matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub primary: PrimaryData,
    pub array: ParameterArray,
    pub pair: MatrixPair,
}

/// K = diag(q^{2i-d}).
pub fn structure_k(q: &Scalar, d: usize) -> Matrix {
    let diag: Vec<Scalar> = (0..=d as i64).map(|i| q.pow(2 * i - d as i64)).collect();
    Matrix::diagonal(q.field(), &diag)
}

/// H = diag(2i - d).
pub fn structure_h(field: Field, d: usize) -> Matrix {
    let diag: Vec<Scalar> = (0..=d as i64).map(|i| field.int(2 * i - d as i64)).collect();
    Matrix::diagonal(field, &diag)
}

// ∏ (λ - θ'_i) from the squares θ'_i², using θ'_{d-i} = -θ'_i.
fn poly_from_squares(f: Field, d: usize, sq: impl Fn(usize) -> Scalar) -> Polynomial {
    let mut out = Polynomial::constant(f.one());
    for i in 0..d.div_ceil(2) {
        out = out.mul(&Polynomial::new(f, vec![-sq(i), f.zero(), f.one()]));
    }
    if d % 2 == 0 {
        out = out.mul(&Polynomial::new(f, vec![f.zero(), f.one()]));
    }
    out
}

/// Characteristic polynomial of the dual q-Krawtchouk contraction, from μh and Q = q^{±2}.
pub fn dual_q_contraction_poly(mu_h: &Scalar, big_q: &Scalar, d: usize) -> Polynomial {
    let f = mu_h.field();
    let di = d as i64;
    poly_from_squares(f, d, |i| {
        let e = 2 * i as i64 - di;
        -mu_h * (big_q.pow(e) + big_q.pow(-e) - f.int(2))
    })
}

/// Characteristic polynomial of the Krawtchouk contraction, from μ'².
pub fn krawtchouk_contraction_poly(mu_prime_sq: &Scalar, d: usize) -> Polynomial {
    let f = mu_prime_sq.field();
    poly_from_squares(f, d, |i| mu_prime_sq * (f.int(i as i64) - f.ratio(d as i64, 2)).square())
}

fn zero_diagonal_tdd(pd: &PrimaryData, d: usize) -> Result<TddSequence, ContractError> {
    let p = parameter_array_from_primary_data(pd, d)?;
    Ok(tdd_from_parameter_array(&p)?.with_zero_diagonal())
}

/// The bipartite contraction of a dual q-Krawtchouk array, or `None` when
/// the data is not reinforced.
pub fn contract_dual_q_krawtchouk(pd: &PrimaryData, d: usize) -> Result<Option<ParameterArray>, ContractError> {
    let flags = special_type_flags(pd, d);
    let PrimaryData::TypeI { q, seq } = pd else {
        return Err(ContractError::NotDualQKrawtchouk);
    };
    if !flags.dual_q_krawtchouk {
        return Err(ContractError::NotDualQKrawtchouk);
    }
    parameter_array_from_primary_data(pd, d)?;
    if !flags.reinforced {
        return Ok(None);
    }
    let Some(mu_p) = (-(&seq.mu * &seq.h)).square_roots().into_iter().next() else {
        return Err(ContractError::MuPrimeNotInField(zero_diagonal_tdd(pd, d)?));
    };
    let f = pd.field();
    let b = PrimaryData::TypeI {
        q: q.clone(),
        seq: PrimarySeq {
            delta: f.zero(),
            h: -&mu_p,
            mu: mu_p,
            delta_s: seq.delta_s.clone(),
            mu_s: seq.mu_s.clone(),
            h_s: seq.h_s.clone(),
            tau: f.zero(),
        },
    };
    Ok(Some(parameter_array_from_primary_data(&b, d)?))
}

/// μ'² = μ² - 4τ²/μ*².
pub fn krawtchouk_mu_prime_sq(seq: &PrimarySeq) -> Scalar {
    let f = seq.field();
    seq.mu.square() - f.int(4) * seq.tau.square() / seq.mu_s.square()
}

/// The bipartite contraction of a Krawtchouk array.
pub fn contract_krawtchouk(pd: &PrimaryData, d: usize) -> Result<ParameterArray, ContractError> {
    let PrimaryData::TypeII(seq) = pd else {
        return Err(ContractError::NotKrawtchouk);
    };
    if !special_type_flags(pd, d).krawtchouk {
        return Err(ContractError::NotKrawtchouk);
    }
    parameter_array_from_primary_data(pd, d)?;
    let Some(mu_p) = krawtchouk_mu_prime_sq(seq).square_roots().into_iter().next() else {
        return Err(ContractError::MuPrimeNotInField(zero_diagonal_tdd(pd, d)?));
    };
    let f = pd.field();
    let b = PrimaryData::TypeII(PrimarySeq {
        delta: f.zero(),
        mu: mu_p,
        h: f.zero(),
        delta_s: seq.delta_s.clone(),
        mu_s: seq.mu_s.clone(),
        h_s: f.zero(),
        tau: f.zero(),
    });
    Ok(parameter_array_from_primary_data(&b, d)?)
}

// What the formulas predict about the contraction.
struct Prediction {
    reasons: Vec<Reason>,
    fallbacks: Vec<Fallback>,
    array: Option<ParameterArray>,
    /// Characteristic polynomial of the contraction, for reasons (ii) and (iii).
    poly: Option<Polynomial>,
}

fn inconsistent(msg: impl Into<String>) -> NearBipError {
    NearBipError::Inconsistent(msg.into())
}

// θ_i = δ + u r^i + v r^{-i}; returns uv.
fn geometric_uv(theta: &[Scalar], r: &Scalar) -> Option<Scalar> {
    let f = r.field();
    let rows = (0..3i64).map(|i| vec![f.one(), r.pow(i), r.pow(-i)]).collect();
    let inv = Matrix::from_rows(rows).ok()?.inverse()?;
    let coef = |row: usize| (0..3).fold(f.zero(), |acc, c| acc + &inv[(row, c)] * &theta[c]);
    Some(coef(1) * coef(2))
}

fn predict(p: &ParameterArray) -> Result<Prediction, NearBipError> {
    let d = p.d();
    let mut pr = Prediction { reasons: Vec::new(), fallbacks: Vec::new(), array: None, poly: None };
    let status = bipartite_status_array(p);
    if status.essentially_bipartite {
        pr.reasons.push(Reason::EssentiallyBipartite);
        let alpha = status.alpha.clone().expect("set when essentially bipartite");
        let f = p.field();
        pr.array = Some(affine_transform(p, &f.one(), &-alpha, &f.one(), &f.zero())?);
    }
    let ft = fundamental_type(p)?;
    let pd = match ft.tag {
        TypeTag::I if q_from_beta(&ft.beta).is_empty() => None,
        TypeTag::IIIMinus => None,
        _ => Some(primary_data_from_parameter_array(p, None)?),
    };
    if let Some(pd) = &pd {
        let flags = special_type_flags(pd, d);
        if flags.essentially_bipartite != status.essentially_bipartite {
            return Err(inconsistent("essentially bipartite: primary data and array disagree"));
        }
        if flags.dual_q_krawtchouk != dual_q_krawtchouk_conditions(p) {
            return Err(inconsistent("dual q-Krawtchouk: primary data and ratio conditions disagree"));
        }
        if flags.krawtchouk != krawtchouk_conditions(p) {
            return Err(inconsistent("Krawtchouk: primary data and difference conditions disagree"));
        }
    }
    match (&pd, ft.tag) {
        (Some(pd @ PrimaryData::TypeI { q, seq }), _) => {
            let flags = special_type_flags(pd, d);
            if flags.dual_q_krawtchouk && flags.reinforced {
                pr.reasons.push(Reason::ReinforcedDualQKrawtchouk);
                pr.poly = Some(dual_q_contraction_poly(&(&seq.mu * &seq.h), &q.square(), d));
                match contract_dual_q_krawtchouk(pd, d) {
                    Ok(Some(a)) => {
                        pr.array.get_or_insert(a);
                    }
                    Ok(None) => return Err(inconsistent("reinforced data without contraction")),
                    Err(ContractError::MuPrimeNotInField(_)) => pr.fallbacks.push(Fallback::MuPrimeNotInField),
                    Err(e) => return Err(inconsistent(e.to_string())),
                }
            }
        }
        (None, TypeTag::I) => {
            pr.fallbacks.push(Fallback::NoQInField);
            if dual_q_krawtchouk_conditions(p) {
                let r = dual_eigenvalue_ratio(p).expect("checked by the conditions");
                if reinforced_from_ratio(&r, d) {
                    pr.reasons.push(Reason::ReinforcedDualQKrawtchouk);
                    let mu_h = geometric_uv(p.theta(), &r).ok_or_else(|| inconsistent("singular geometric solve"))?;
                    pr.poly = Some(dual_q_contraction_poly(&mu_h, &r, d));
                    pr.fallbacks.push(Fallback::MuPrimeNotInField);
                }
            }
        }
        (Some(pd @ PrimaryData::TypeII(seq)), _) => {
            if special_type_flags(pd, d).krawtchouk {
                pr.reasons.push(Reason::Krawtchouk);
                pr.poly = Some(krawtchouk_contraction_poly(&krawtchouk_mu_prime_sq(seq), d));
                match contract_krawtchouk(pd, d) {
                    Ok(a) => {
                        pr.array.get_or_insert(a);
                    }
                    Err(ContractError::MuPrimeNotInField(_)) => pr.fallbacks.push(Fallback::MuPrimeNotInField),
                    Err(e) => return Err(inconsistent(e.to_string())),
                }
            }
        }
        _ => {}
    }
    Ok(pr)
}

/// Near-bipartite classification of a valid parameter array.
pub fn classify_near_bipartite(p: &ParameterArray) -> Result<NearBipartiteClassification, NearBipError> {
    let report = validate_parameter_array(p);
    if !report.is_valid() {
        return Err(NearBipError::Invalid(report));
    }
    let tdd = tdd_from_parameter_array(p)?;
    let pair = realize_matrices(&tdd);
    let zero_tdd = tdd.with_zero_diagonal();
    // matrix route
    let matrix = match bipartite_contraction(&pair) {
        Ok(ContractionOutcome::NearBipartite(c)) => Some(*c),
        Ok(ContractionOutcome::NotNearBipartite(_)) | Err(FlatError::ContractionNotSplit) => None,
        Err(e) => return Err(e.into()),
    };
    if let Some(c) = &matrix {
        if c.tdd != zero_tdd {
            return Err(inconsistent("matrix-route contraction has unexpected TD/D data"));
        }
    }
    let in_field = matrix.is_some();
    let d = p.d();
    if d <= 2 {
        let (closed, predicted) = if d == 1 {
            let (a, x, s) = (tdd.a(), tdd.x(), tdd.thetastar());
            let c = leonard_d1(&a[0], &a[1], &x[0], &s[0], &s[1]);
            (c.closed_contraction_leonard, c.contraction_leonard)
        } else {
            let a: [Scalar; 3] = tdd.a().to_vec().try_into().expect("d = 2");
            let x: [Scalar; 2] = tdd.x().to_vec().try_into().expect("d = 2");
            let s: [Scalar; 3] = tdd.thetastar().to_vec().try_into().expect("d = 2");
            let c = leonard_d2(&a, &x, &s);
            (c.closed_contraction_leonard, c.contraction_leonard)
        };
        if predicted != in_field {
            return Err(inconsistent("low-diameter predicate disagrees with the matrix route"));
        }
        let reasons = if bipartite_status_array(p).essentially_bipartite {
            vec![Reason::EssentiallyBipartite]
        } else {
            Vec::new()
        };
        let fallbacks = if closed && !in_field { vec![Fallback::MuPrimeNotInField] } else { Vec::new() };
        return Ok(NearBipartiteClassification {
            near_bipartite: closed,
            in_field,
            reasons,
            fallbacks,
            contraction: matrix.as_ref().map(|c| c.array.clone()),
            contraction_tdd: closed.then_some(zero_tdd),
        });
    }

    let pr = predict(p)?;
    let near = !pr.reasons.is_empty();
    let b_poly = realize_matrices(&zero_tdd).a.char_poly();
    if let Some(expected) = &pr.poly {
        if *expected != b_poly {
            return Err(inconsistent("characteristic polynomial of A - F differs from the predicted spectrum"));
        }
        if !b_poly.is_square_free() {
            return Err(inconsistent("predicted contraction has a repeated eigenvalue"));
        }
    }
    let predicted_in_field = pr.reasons.contains(&Reason::EssentiallyBipartite)
        || (near && pr.poly.as_ref().is_some_and(|f| f.split_roots().0));
    if predicted_in_field != in_field {
        return Err(inconsistent(format!(
            "formula route says in-field near-bipartite={predicted_in_field}, matrix route says {in_field}"
        )));
    }
    if !near && !pr.fallbacks.is_empty() && pr.fallbacks != [Fallback::NoQInField] {
        return Err(inconsistent("fallback recorded without a reason"));
    }
    if let Some(a) = &pr.array {
        if tdd_from_parameter_array(a)? != zero_tdd {
            return Err(inconsistent("formula contraction array has unexpected TD/D data"));
        }
    }
    let mut fallbacks = pr.fallbacks;
    if near && !in_field && !fallbacks.contains(&Fallback::MuPrimeNotInField) {
        fallbacks.push(Fallback::MuPrimeNotInField);
    }
    let contraction = pr.array.or_else(|| matrix.map(|c| c.array));
    Ok(NearBipartiteClassification {
        near_bipartite: near,
        in_field,
        reasons: pr.reasons,
        fallbacks,
        contraction,
        contraction_tdd: near.then_some(zero_tdd),
    })
}

// A - F = B, checked through the flat part of A.
fn check_flat_recovers(pair: &MatrixPair, b: &MatrixPair) -> Result<(), ExpandError> {
    let fp = flat_part(pair)?;
    if pair.a.sub(&fp.matrix) != b.a {
        return Err(ExpandError::Inconsistent("A - F differs from B".into()));
    }
    Ok(())
}

fn expansion_from(pd: PrimaryData, d: usize, b_pair: &MatrixPair, a: Matrix) -> Result<Expansion, ExpandError> {
    let array = parameter_array_from_primary_data(&pd, d)?;
    let pair = MatrixPair::new(a, b_pair.astar.clone()).expect("same dimension");
    if realize_matrices(&tdd_from_parameter_array(&array)?) != pair {
        return Err(ExpandError::Inconsistent("matrix form differs from the realized expansion".into()));
    }
    check_flat_recovers(&pair, b_pair)?;
    Ok(Expansion { primary: pd, array, pair })
}

/// The expansion of a bipartite dual q-Krawtchouk B with the given δ and μ.
pub fn expansions_dual_q_krawtchouk(
    b: &PrimaryData,
    d: usize,
    delta: &Scalar,
    mu: &Scalar,
) -> Result<Expansion, ExpandError> {
    let PrimaryData::TypeI { q, seq: bs } = b else {
        return Err(ExpandError::NotBipartiteDualQKrawtchouk);
    };
    let f = b.field();
    if delta.field() != f || mu.field() != f {
        return Err(ExpandError::FieldMismatch);
    }
    let flags = special_type_flags(b, d);
    if !(flags.dual_q_krawtchouk && flags.bipartite) {
        return Err(ExpandError::NotBipartiteDualQKrawtchouk);
    }
    let b_array = parameter_array_from_primary_data(b, d)?;
    if mu.is_zero() {
        return Err(ExpandError::MuZero);
    }
    let di = d as i64;
    for s in f.int(-1).square_roots() {
        for i in 1 - di..di {
            if *mu == &s * &bs.mu * q.pow(i) {
                return Err(ExpandError::MuForbidden(i));
            }
        }
    }
    let h = &bs.mu * &bs.h / mu;
    let seq = PrimarySeq {
        delta: delta.clone(),
        mu: mu.clone(),
        h,
        delta_s: bs.delta_s.clone(),
        mu_s: bs.mu_s.clone(),
        h_s: bs.h_s.clone(),
        tau: f.zero(),
    };
    let k = if bs.mu_s.is_zero() {
        structure_k(q, d)
    } else {
        structure_k(q, d).inverse().expect("q is nonzero")
    };
    let b_pair = realize_matrices(&tdd_from_parameter_array(&b_array)?);
    let a = b_pair.a.add(&k.scale(&(mu + &seq.h))).shift(delta);
    expansion_from(b.with_seq(seq), d, &b_pair, a)
}

/// The expansions of a bipartite Krawtchouk B with the given δ and μ, one
/// per square root τ, in square-root order.
pub fn expansions_krawtchouk(
    b: &PrimaryData,
    d: usize,
    delta: &Scalar,
    mu: &Scalar,
) -> Result<Vec<Expansion>, ExpandError> {
    let PrimaryData::TypeII(bs) = b else {
        return Err(ExpandError::NotBipartiteKrawtchouk);
    };
    let f = b.field();
    if delta.field() != f || mu.field() != f {
        return Err(ExpandError::FieldMismatch);
    }
    let flags = special_type_flags(b, d);
    if !(flags.krawtchouk && flags.bipartite) {
        return Err(ExpandError::NotBipartiteKrawtchouk);
    }
    let b_array = parameter_array_from_primary_data(b, d)?;
    if mu.is_zero() {
        return Err(ExpandError::MuZero);
    }
    let rhs = (mu.square() - bs.mu.square()) * bs.mu_s.square() / f.int(4);
    let taus = rhs.square_roots();
    if taus.is_empty() {
        return Err(ExpandError::NoTauInField);
    }
    let b_pair = realize_matrices(&tdd_from_parameter_array(&b_array)?);
    let h = structure_h(f, d);
    taus.into_iter()
        .map(|tau| {
            let a = b_pair.a.add(&h.scale(&(&tau / &bs.mu_s))).shift(delta);
            let seq = PrimarySeq {
                delta: delta.clone(),
                mu: mu.clone(),
                h: f.zero(),
                delta_s: bs.delta_s.clone(),
                mu_s: bs.mu_s.clone(),
                h_s: f.zero(),
                tau,
            };
            expansion_from(b.with_seq(seq), d, &b_pair, a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.int(x)).collect()
    }

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn e2() -> ParameterArray {
        let f = gf(13);
        ParameterArray::new(v(f, &[7, 11, 2, 6]), v(f, &[10, 12, 1, 3]), v(f, &[3, 4, 3]), v(f, &[1, 10, 1])).unwrap()
    }

    fn e3b() -> PrimaryData {
        let q = Field::Rationals;
        PrimaryData::TypeI { q: q.int(2), seq: PrimarySeq::from_ints(q, [0, 1, -1, 0, 0, 1, 0]) }
    }

    fn e4() -> PrimaryData {
        let g = gf(17);
        PrimaryData::TypeI { q: g.int(2), seq: PrimarySeq::from_ints(g, [0, 1, 3, 0, 0, 1, 0]) }
    }

    #[test]
    fn classify_e2() {
        let c = classify_near_bipartite(&e2()).unwrap();
        assert!(c.near_bipartite && c.in_field);
        assert_eq!(c.reasons, vec![Reason::Krawtchouk]);
        let g = gf(13);
        let b = PrimaryData::TypeII(PrimarySeq::from_ints(g, [0, 2, 0, 0, 2, 0, 0]));
        assert_eq!(c.contraction, Some(parameter_array_from_primary_data(&b, 3).unwrap()));
        assert_eq!(c.contraction_tdd.unwrap().x(), v(g, &[3, 4, 3]).as_slice());
    }

    #[test]
    fn classify_shifted_e1() {
        let q = Field::Rationals;
        let e1 = parameter_array_from_primary_data(
            &PrimaryData::TypeII(PrimarySeq::from_ints(q, [0, 2, 0, 0, 2, 0, 0])),
            3,
        )
        .unwrap();
        let shifted = affine_transform(&e1, &q.one(), &q.int(5), &q.one(), &q.zero()).unwrap();
        let c = classify_near_bipartite(&shifted).unwrap();
        assert!(c.reasons.contains(&Reason::EssentiallyBipartite));
        assert_eq!(c.contraction, Some(e1));
    }

    #[test]
    fn classify_e4_not_reinforced() {
        let p = parameter_array_from_primary_data(&e4(), 3).unwrap();
        let c = classify_near_bipartite(&p).unwrap();
        assert!(!c.near_bipartite && !c.in_field && c.reasons.is_empty());
        assert_eq!(contract_dual_q_krawtchouk(&e4(), 3), Ok(None));
        let b = realize_matrices(&tdd_from_parameter_array(&p).unwrap().with_zero_diagonal());
        assert!(!b.a.char_poly().is_square_free());
    }

    #[test]
    fn dual_q_contractions() {
        let q = Field::Rationals;
        let seq = PrimarySeq::new([q.zero(), q.int(2), q.ratio(-1, 2), q.zero(), q.zero(), q.one(), q.zero()]);
        let e3 = PrimaryData::TypeI { q: q.int(2), seq };
        let c = contract_dual_q_krawtchouk(&e3, 3).unwrap().unwrap();
        assert_eq!(c, parameter_array_from_primary_data(&e3b(), 3).unwrap());
        let same = contract_dual_q_krawtchouk(&e3b(), 3).unwrap().unwrap();
        assert_eq!(same, parameter_array_from_primary_data(&e3b(), 3).unwrap());
        let bad = PrimaryData::TypeII(PrimarySeq::from_ints(q, [0, 2, 0, 0, 2, 0, 0]));
        assert_eq!(contract_dual_q_krawtchouk(&bad, 3), Err(ContractError::NotDualQKrawtchouk));
    }

    #[test]
    fn krawtchouk_contractions() {
        let g = gf(13);
        let e2pd = PrimaryData::TypeII(PrimarySeq::from_ints(g, [0, 4, 0, 0, 2, 0, 5]));
        let c = contract_krawtchouk(&e2pd, 3).unwrap();
        assert_eq!(c.theta()[3], g.int(3));
        assert_eq!(tdd_from_parameter_array(&c).unwrap().x(), v(g, &[3, 4, 3]).as_slice());
        let q = Field::Rationals;
        let zero_tau = PrimaryData::TypeII(PrimarySeq::from_ints(q, [0, 2, 0, 0, 2, 0, 0]));
        assert_eq!(contract_krawtchouk(&zero_tau, 3).unwrap(), parameter_array_from_primary_data(&zero_tau, 3).unwrap());
        let irr = PrimaryData::TypeII(PrimarySeq::from_ints(q, [0, 2, 0, 0, 2, 0, 1]));
        match contract_krawtchouk(&irr, 3) {
            Err(ContractError::MuPrimeNotInField(t)) => {
                assert!(t.a().iter().all(Scalar::is_zero));
                // x_i = i(d-i+1)(μ²/4 - τ²/μ*²) = i(4-i)·3/4
                assert_eq!(t.x(), &[q.ratio(9, 4), q.int(3), q.ratio(9, 4)]);
            }
            other => panic!("{other:?}"),
        }
        let p = parameter_array_from_primary_data(&irr, 3).unwrap();
        let c = classify_near_bipartite(&p).unwrap();
        assert!(c.near_bipartite && !c.in_field);
        assert_eq!(c.fallbacks, vec![Fallback::MuPrimeNotInField]);
    }

    #[test]
    fn dual_q_expansions() {
        let q = Field::Rationals;
        let x = expansions_dual_q_krawtchouk(&e3b(), 3, &q.zero(), &q.int(2)).unwrap();
        assert_eq!(x.primary.seq().h, q.ratio(-1, 2));
        let expect: Vec<Scalar> = [q.ratio(1, 8), q.ratio(1, 2), q.int(2), q.int(8)]
            .iter()
            .map(|s| s * &q.ratio(3, 2))
            .collect();
        assert_eq!(x.pair.a.diag(), expect);
        let same = expansions_dual_q_krawtchouk(&e3b(), 3, &q.zero(), &q.one()).unwrap();
        assert_eq!(same.array, parameter_array_from_primary_data(&e3b(), 3).unwrap());
        assert_eq!(expansions_dual_q_krawtchouk(&e3b(), 3, &q.zero(), &q.zero()), Err(ExpandError::MuZero));
        let g = gf(13);
        let b = PrimaryData::TypeI { q: g.int(2), seq: PrimarySeq::from_ints(g, [0, 1, -1, 0, 0, 1, 0]) };
        assert_eq!(expansions_dual_q_krawtchouk(&b, 3, &g.zero(), &g.int(10)), Err(ExpandError::MuForbidden(1)));
    }

    #[test]
    fn krawtchouk_expansions() {
        let g = gf(13);
        let b = PrimaryData::TypeII(PrimarySeq::from_ints(g, [0, 2, 0, 0, 2, 0, 0]));
        let xs = expansions_krawtchouk(&b, 3, &g.zero(), &g.int(4)).unwrap();
        assert_eq!(xs.iter().map(|x| x.primary.seq().tau.clone()).collect::<Vec<_>>(), v(g, &[5, 8]));
        assert_eq!(xs[0].array, e2());
        assert_eq!(xs[0].pair.a.diag(), v(g, &[12, 4, 9, 1]));
        let same = expansions_krawtchouk(&b, 3, &g.zero(), &g.int(2)).unwrap();
        assert_eq!(same.len(), 1);
        assert_eq!(same[0].array, parameter_array_from_primary_data(&b, 3).unwrap());
        assert_eq!(expansions_krawtchouk(&b, 3, &g.zero(), &g.int(5)), Err(ExpandError::NoTauInField));
    }

    #[test]
    fn structure_matrices() {
        let q = Field::Rationals;
        assert_eq!(structure_k(&q.int(2), 3).diag(), vec![q.ratio(1, 8), q.ratio(1, 2), q.int(2), q.int(8)]);
        assert_eq!(structure_h(q, 3).diag(), v(q, &[-3, -1, 1, 3]));
    }
}
