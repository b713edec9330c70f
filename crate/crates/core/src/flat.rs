//! The flat part of a Leonard pair, bipartite and essentially bipartite
//! tests, and the bipartite contraction A - F.

use std::fmt;

use thiserror::Error;

use crate::field::Scalar;
use crate::matrix::{idempotents_unchecked, Matrix};
use crate::params::{parameter_arrays_from_tdd, ParameterArray, ParamsError, TddSequence};
use crate::verify::{
    trace_data_unchecked, verify_leonard_pair, MatrixPair, NotLeonardReason, Role, VerificationReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlatError {
    #[error("eigenvalues of {0} do not lie in the field")]
    NotSplitOverField(Role),
    #[error("the contraction A - F has distinct eigenvalues outside the field")]
    ContractionNotSplit,
    #[error("not a Leonard pair: {0}")]
    NotLeonard(VerificationReport),
    #[error("the two arrays have different dual eigenvalue sequences")]
    ThetaStarMismatch,
    #[error("the reference array is not bipartite")]
    NotBipartite,
    #[error(transparent)]
    Params(#[from] ParamsError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlatPart {
    /// Σ E*_i A E*_i
    pub matrix: Matrix,
    /// The common diagonal value when F is a scalar matrix.
    pub a_common: Option<Scalar>,
}

fn require_leonard(pair: &MatrixPair) -> Result<Vec<Scalar>, FlatError> {
    match verify_leonard_pair(pair) {
        VerificationReport::LeonardPair { thetastar, .. } => Ok(thetastar),
        VerificationReport::NotSplitOverField(r) => Err(FlatError::NotSplitOverField(r)),
        other => Err(FlatError::NotLeonard(other)),
    }
}

/// F = Σ E*_i A E*_i over the primitive idempotents of A*.
pub fn flat_part(pair: &MatrixPair) -> Result<FlatPart, FlatError> {
    let thetastar = require_leonard(pair)?;
    let es = idempotents_unchecked(&pair.astar, &thetastar);
    let f = pair.a.field();
    let mut m = Matrix::zeros(f, pair.dim());
    for e in &es {
        m = m.add(&e.mul(&pair.a).mul(e));
    }
    let ident = Matrix::identity(f, pair.dim());
    let c = m[(0, 0)].clone();
    let a_common = (m == ident.scale(&c)).then_some(c);
    Ok(FlatPart { matrix: m, a_common })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteStatus {
    pub bipartite: bool,
    pub essentially_bipartite: bool,
    /// Known true for essentially bipartite pairs; otherwise undecided here.
    pub near_bipartite: Option<bool>,
    pub alpha: Option<Scalar>,
}

impl fmt::Display for BipartiteStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "bipartite={}; essentially_bipartite={}",
            self.bipartite, self.essentially_bipartite
        )?;
        if let Some(a) = &self.alpha {
            write!(f, "; alpha={a}")?;
        }
        Ok(())
    }
}

fn status(essentially: bool, alpha: Option<Scalar>) -> BipartiteStatus {
    let bipartite = essentially && alpha.as_ref().is_some_and(Scalar::is_zero);
    BipartiteStatus {
        bipartite,
        essentially_bipartite: essentially,
        near_bipartite: essentially.then_some(true),
        alpha: if essentially { alpha } else { None },
    }
}

/// Read off from the diagonal a.
pub fn bipartite_status_tdd(t: &TddSequence) -> BipartiteStatus {
    let a0 = &t.a()[0];
    let essentially = t.a().iter().all(|a| a == a0);
    status(essentially, Some(a0.clone()))
}

/// θ_i + θ_{d-i} independent of i together with φ_i + ϕ_i = 0; α is half that sum.
pub fn bipartite_status_array(p: &ParameterArray) -> BipartiteStatus {
    let d = p.d();
    let th = p.theta();
    let sum0 = &th[0] + &th[d];
    let essentially = (0..=d).all(|i| &th[i] + &th[d - i] == sum0)
        && p.phi1().iter().zip(p.phi2()).all(|(a, b)| (a + b).is_zero());
    let half = p.field().ratio(1, 2);
    status(essentially, Some(&sum0 * &half))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    /// (A - F, A*)
    pub pair: MatrixPair,
    /// A parameter array of the contraction.
    pub array: ParameterArray,
    pub tdd: TddSequence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContractionOutcome {
    NearBipartite(Box<Contraction>),
    NotNearBipartite(NotLeonardReason),
}

impl ContractionOutcome {
    pub fn contraction(&self) -> Option<&Contraction> {
        match self {
            ContractionOutcome::NearBipartite(c) => Some(c),
            ContractionOutcome::NotNearBipartite(_) => None,
        }
    }

    pub fn is_near_bipartite(&self) -> bool {
        self.contraction().is_some()
    }
}

// Keep the diagonal of A* when it is itself a standard ordering.
pub(crate) fn diagonal_order(astar: &Matrix, standard: Vec<Scalar>) -> Vec<Scalar> {
    if astar.is_diagonal() {
        let diag = astar.diag();
        if diag.iter().rev().eq(standard.iter()) {
            return diag;
        }
    }
    standard
}

/// Forms B = A - F and tests whether B, A* is a Leonard pair.
pub fn bipartite_contraction(pair: &MatrixPair) -> Result<ContractionOutcome, FlatError> {
    let fp = flat_part(pair)?;
    let b = MatrixPair::new(pair.a.sub(&fp.matrix), pair.astar.clone()).unwrap();
    match verify_leonard_pair(&b) {
        VerificationReport::LeonardPair { thetastar, .. } => {
            let thetastar = diagonal_order(&b.astar, thetastar);
            let (a, x) = trace_data_unchecked(&b, &thetastar);
            let tdd = TddSequence::new(a, x, thetastar)?;
            let array = parameter_arrays_from_tdd(&tdd)?.swap_remove(0);
            Ok(ContractionOutcome::NearBipartite(Box::new(Contraction { pair: b, array, tdd })))
        }
        VerificationReport::NotLeonard(reason) => Ok(ContractionOutcome::NotNearBipartite(reason)),
        VerificationReport::NotSplitOverField(Role::A) => Err(FlatError::ContractionNotSplit),
        VerificationReport::NotSplitOverField(Role::AStar) => Err(FlatError::NotSplitOverField(Role::AStar)),
    }
}

/// φ_i ϕ_i = φ'_i ϕ'_i for all i, where `b` is bipartite with the same θ*.
pub fn contraction_condition(p: &ParameterArray, b: &ParameterArray) -> Result<bool, FlatError> {
    if p.thetastar() != b.thetastar() {
        return Err(FlatError::ThetaStarMismatch);
    }
    if !bipartite_status_array(b).bipartite {
        return Err(FlatError::NotBipartite);
    }
    Ok(p.phi_products() == b.phi_products())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::params::{affine_transform, realize_matrices, tdd_from_parameter_array};

    fn v(f: Field, xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| f.int(x)).collect()
    }

    fn e1() -> ParameterArray {
        let f = Field::Rationals;
        ParameterArray::new(v(f, &[-3, -1, 1, 3]), v(f, &[-3, -1, 1, 3]), v(f, &[-6, -8, -6]), v(f, &[6, 8, 6]))
            .unwrap()
    }

    fn e2() -> ParameterArray {
        let f = Field::prime(13).unwrap();
        ParameterArray::new(v(f, &[7, 11, 2, 6]), v(f, &[10, 12, 1, 3]), v(f, &[3, 4, 3]), v(f, &[1, 10, 1]))
            .unwrap()
    }

    fn pair_of(p: &ParameterArray) -> MatrixPair {
        realize_matrices(&tdd_from_parameter_array(p).unwrap())
    }

    #[test]
    fn flat_part_examples() {
        let g = Field::prime(13).unwrap();
        let fp = flat_part(&pair_of(&e2())).unwrap();
        assert_eq!(fp.matrix, Matrix::diagonal(g, &v(g, &[12, 4, 9, 1])));
        assert_eq!(fp.a_common, None);
        let f = Field::Rationals;
        let fp = flat_part(&pair_of(&e1())).unwrap();
        assert!(fp.matrix.is_zero());
        assert_eq!(fp.a_common, Some(f.zero()));
        let shifted = pair_of(&e1());
        let shifted = MatrixPair::new(shifted.a.shift(&f.int(5)), shifted.astar).unwrap();
        let fp = flat_part(&shifted).unwrap();
        assert_eq!(fp.matrix, Matrix::identity(f, 4).scale(&f.int(5)));
    }

    #[test]
    fn status_examples() {
        let f = Field::Rationals;
        let s = bipartite_status_array(&e1());
        assert!(s.bipartite && s.essentially_bipartite);
        let shifted = affine_transform(&e1(), &f.one(), &f.int(5), &f.one(), &f.zero()).unwrap();
        let s = bipartite_status_array(&shifted);
        assert!(s.essentially_bipartite && !s.bipartite);
        assert_eq!(s.alpha, Some(f.int(5)));
        assert_eq!(s, bipartite_status_tdd(&tdd_from_parameter_array(&shifted).unwrap()));
        let s = bipartite_status_array(&e2());
        assert!(!s.essentially_bipartite && s.near_bipartite.is_none());
        assert_eq!(s, bipartite_status_tdd(&tdd_from_parameter_array(&e2()).unwrap()));
    }

    #[test]
    fn contraction_of_e2() {
        let g = Field::prime(13).unwrap();
        let out = bipartite_contraction(&pair_of(&e2())).unwrap();
        let c = out.contraction().expect("near-bipartite");
        let t = tdd_from_parameter_array(&e2()).unwrap();
        assert_eq!(c.pair, realize_matrices(&t.with_zero_diagonal()));
        assert!(c.tdd.a().iter().all(Scalar::is_zero));
        assert_eq!(c.tdd.x(), v(g, &[3, 4, 3]).as_slice());
        assert!(bipartite_status_array(&c.array).bipartite);
        assert_eq!(contraction_condition(&e2(), &c.array), Ok(true));
    }

    #[test]
    fn contraction_of_bipartite_is_itself() {
        let pair = pair_of(&e1());
        let out = bipartite_contraction(&pair).unwrap();
        assert_eq!(out.contraction().unwrap().pair, pair);
    }

    #[test]
    fn contraction_condition_examples() {
        let f = Field::Rationals;
        assert_eq!(contraction_condition(&e1(), &e1()), Ok(true));
        let scaled = affine_transform(&e1(), &f.int(2), &f.zero(), &f.one(), &f.zero()).unwrap();
        assert_eq!(contraction_condition(&scaled, &e1()), Ok(false));
        let moved = affine_transform(&e1(), &f.one(), &f.zero(), &f.one(), &f.one()).unwrap();
        assert_eq!(contraction_condition(&moved, &e1()), Err(FlatError::ThetaStarMismatch));
    }
}
