//! Brute-force Leonard pair check working directly from the definition.

use std::fmt;

use thiserror::Error;

use crate::field::Scalar;
use crate::matrix::{idempotents_unchecked, Matrix, MatrixError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    A,
    AStar,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::A => write!(f, "A"),
            Role::AStar => write!(f, "A*"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NotLeonardReason {
    /// The characteristic polynomial has a repeated root (over any extension).
    RepeatedEigenvalue(Role),
    /// In the eigenbasis of the named matrix, the partner is not irreducible tridiagonal
    /// under any ordering.
    NotTridiagonal { eigenbasis_of: Role },
}

impl fmt::Display for NotLeonardReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotLeonardReason::RepeatedEigenvalue(r) => write!(f, "{r} is not multiplicity-free"),
            NotLeonardReason::NotTridiagonal { eigenbasis_of } => {
                let other = match eigenbasis_of {
                    Role::A => Role::AStar,
                    Role::AStar => Role::A,
                };
                write!(f, "{other} is not irreducible tridiagonal in any eigenbasis of {eigenbasis_of}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerificationReport {
    /// Standard orderings of the eigenvalues of A and of A*.
    LeonardPair { theta: Vec<Scalar>, thetastar: Vec<Scalar> },
    NotLeonard(NotLeonardReason),
    /// The named matrix is square-free but its eigenvalues are not all in the field.
    NotSplitOverField(Role),
}

impl VerificationReport {
    pub fn is_leonard(&self) -> bool {
        matches!(self, VerificationReport::LeonardPair { .. })
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerificationReport::LeonardPair { .. } => write!(f, "Leonard pair"),
            VerificationReport::NotLeonard(r) => write!(f, "not a Leonard pair: {r}"),
            VerificationReport::NotSplitOverField(r) => {
                write!(f, "eigenvalues of {r} do not lie in the field")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPair {
    pub a: Matrix,
    pub astar: Matrix,
}

impl MatrixPair {
    pub fn new(a: Matrix, astar: Matrix) -> Result<MatrixPair, MatrixError> {
        if a.dim() != astar.dim() {
            return Err(MatrixError::DimensionMismatch {
                left: a.dim(),
                right: astar.dim(),
            });
        }
        if a.field() != astar.field() {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(MatrixPair { a, astar })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn diameter(&self) -> usize {
        self.a.dim() - 1
    }
}

enum Clause {
    Ordering(Vec<Scalar>),
    Fail(VerificationReport),
}

// Distinct in-field eigenvalues of `m`, or the reason they are unavailable.
fn distinct_spectrum(m: &Matrix, role: Role) -> Result<Vec<Scalar>, VerificationReport> {
    let s = m.spectrum();
    if !s.square_free {
        return Err(VerificationReport::NotLeonard(NotLeonardReason::RepeatedEigenvalue(role)));
    }
    if !s.split {
        return Err(VerificationReport::NotSplitOverField(role));
    }
    Ok(s.eigenvalues)
}

/// Orders `eigs` (eigenvalues of `diag_side`) so that `other`, written in the
/// corresponding eigenbasis, is irreducible tridiagonal.
fn standard_ordering(diag_side: &Matrix, eigs: &[Scalar], other: &Matrix, role: Role) -> Clause {
    let f = diag_side.field();
    let n = diag_side.dim();
    let cols: Vec<Vec<Scalar>> = eigs
        .iter()
        .map(|t| {
            let mut k = diag_side.shift(&-t).kernel();
            debug_assert_eq!(k.len(), 1);
            k.swap_remove(0)
        })
        .collect();
    let p = Matrix::from_columns(f, &cols);
    let pinv = p.inverse().expect("eigenvectors of distinct eigenvalues are independent");
    let rep = pinv.mul(other).mul(&p);
    let fail = Clause::Fail(VerificationReport::NotLeonard(NotLeonardReason::NotTridiagonal {
        eigenbasis_of: role,
    }));
    match path_order(&rep) {
        Some(order) => {
            let permuted = rep.permuted(&order);
            if !permuted.is_irreducible_tridiagonal() || n != order.len() {
                return fail;
            }
            Clause::Ordering(order.iter().map(|&i| eigs[i].clone()).collect())
        }
        None => fail,
    }
}

// The off-diagonal support of `rep` must be a Hamiltonian path with both
// directions nonzero; walk it from its lower-numbered endpoint.
fn path_order(rep: &Matrix) -> Option<Vec<usize>> {
    let n = rep.dim();
    if n == 1 {
        return Some(vec![0]);
    }
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in 0..n {
            if i != j && !rep[(i, j)].is_zero() {
                if rep[(j, i)].is_zero() {
                    return None;
                }
                adj[i].push(j);
            }
        }
    }
    if adj.iter().any(|a| a.is_empty() || a.len() > 2) {
        return None;
    }
    let start = (0..n).find(|&i| adj[i].len() == 1)?;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while order.len() < n {
        let next = *adj[cur].iter().find(|&&j| j != prev)?;
        if order.contains(&next) {
            return None;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
    Some(order)
}

/// Decides whether the pair is a Leonard pair over the base field.
pub fn verify_leonard_pair(pair: &MatrixPair) -> VerificationReport {
    let ths = match distinct_spectrum(&pair.astar, Role::AStar) {
        Ok(v) => v,
        Err(r) => return r,
    };
    let th = match distinct_spectrum(&pair.a, Role::A) {
        Ok(v) => v,
        Err(r) => return r,
    };
    let thetastar = match standard_ordering(&pair.astar, &ths, &pair.a, Role::AStar) {
        Clause::Ordering(o) => o,
        Clause::Fail(r) => return r,
    };
    let theta = match standard_ordering(&pair.a, &th, &pair.astar, Role::A) {
        Clause::Ordering(o) => o,
        Clause::Fail(r) => return r,
    };
    VerificationReport::LeonardPair { theta, thetastar }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("the pair is not a Leonard pair over the field: {0}")]
    NotLeonard(VerificationReport),
    #[error("the given ordering is not a standard ordering of the eigenvalues of A*")]
    NotStandardOrdering,
}

/// a_i = tr(A E*_i) and x_i = tr(E*_i A E*_{i-1} A) for a standard ordering of A*'s eigenvalues.
pub fn trace_data(
    pair: &MatrixPair,
    thetastar_order: &[Scalar],
) -> Result<(Vec<Scalar>, Vec<Scalar>), TraceError> {
    let standard = match verify_leonard_pair(pair) {
        VerificationReport::LeonardPair { thetastar, .. } => thetastar,
        other => return Err(TraceError::NotLeonard(other)),
    };
    let reversed: Vec<Scalar> = standard.iter().rev().cloned().collect();
    if thetastar_order != standard.as_slice() && thetastar_order != reversed.as_slice() {
        return Err(TraceError::NotStandardOrdering);
    }
    Ok(trace_data_unchecked(pair, thetastar_order))
}

pub(crate) fn trace_data_unchecked(pair: &MatrixPair, thetastar_order: &[Scalar]) -> (Vec<Scalar>, Vec<Scalar>) {
    let es = idempotents_unchecked(&pair.astar, thetastar_order);
    let a: Vec<Scalar> = es.iter().map(|e| pair.a.mul(e).trace()).collect();
    let x: Vec<Scalar> = (1..es.len())
        .map(|i| es[i].mul(&pair.a).mul(&es[i - 1]).mul(&pair.a).trace())
        .collect();
    (a, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn tdd_matrix(f: Field, a: &[i64], x: &[i64]) -> Matrix {
        let n = a.len();
        Matrix::from_fn(f, n, |i, j| {
            if i == j {
                f.int(a[i])
            } else if j == i + 1 {
                f.int(x[i])
            } else if i == j + 1 {
                f.one()
            } else {
                f.zero()
            }
        })
    }

    fn diag(f: Field, v: &[i64]) -> Matrix {
        Matrix::diagonal(f, &v.iter().map(|&x| f.int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn e1_is_leonard() {
        let f = Field::Rationals;
        let pair = MatrixPair::new(tdd_matrix(f, &[0, 0, 0, 0], &[3, 4, 3]), diag(f, &[-3, -1, 1, 3])).unwrap();
        let r = verify_leonard_pair(&pair);
        let VerificationReport::LeonardPair { theta, thetastar } = r else {
            panic!("{r:?}")
        };
        let sorted = |v: &[i64]| v.iter().map(|&x| f.int(x)).collect::<Vec<_>>();
        assert!(thetastar == sorted(&[-3, -1, 1, 3]) || thetastar == sorted(&[3, 1, -1, -3]));
        assert!(theta == sorted(&[-3, -1, 1, 3]) || theta == sorted(&[3, 1, -1, -3]));
        let (a, x) = trace_data(&pair, &sorted(&[-3, -1, 1, 3])).unwrap();
        assert!(a.iter().all(Scalar::is_zero));
        assert_eq!(x, sorted(&[3, 4, 3]));
        let (a, x) = trace_data(&pair, &sorted(&[3, 1, -1, -3])).unwrap();
        assert!(a.iter().all(Scalar::is_zero));
        assert_eq!(x, sorted(&[3, 4, 3]));
        assert_eq!(
            trace_data(&pair, &sorted(&[-1, -3, 1, 3])),
            Err(TraceError::NotStandardOrdering)
        );
    }

    #[test]
    fn two_diagonals_are_not_leonard() {
        let f = Field::Rationals;
        let pair = MatrixPair::new(diag(f, &[1, 2]), diag(f, &[3, 4])).unwrap();
        assert_eq!(
            verify_leonard_pair(&pair),
            VerificationReport::NotLeonard(NotLeonardReason::NotTridiagonal {
                eigenbasis_of: Role::AStar
            })
        );
    }

    #[test]
    fn d1_split_depends_on_field() {
        let q = Field::Rationals;
        let pair = MatrixPair::new(tdd_matrix(q, &[3, 1], &[1]), diag(q, &[0, 1])).unwrap();
        assert_eq!(verify_leonard_pair(&pair), VerificationReport::NotSplitOverField(Role::A));
        let f = Field::prime(7).unwrap();
        let pair = MatrixPair::new(tdd_matrix(f, &[3, 1], &[1]), diag(f, &[0, 1])).unwrap();
        let VerificationReport::LeonardPair { mut theta, .. } = verify_leonard_pair(&pair) else {
            panic!()
        };
        theta.sort();
        assert_eq!(theta, vec![f.int(5), f.int(6)]);
    }

    #[test]
    fn repeated_eigenvalues_are_rejected() {
        let f = Field::Rationals;
        let pair = MatrixPair::new(tdd_matrix(f, &[0, 0], &[1]), diag(f, &[1, 1])).unwrap();
        assert_eq!(
            verify_leonard_pair(&pair),
            VerificationReport::NotLeonard(NotLeonardReason::RepeatedEigenvalue(Role::AStar))
        );
    }

    #[test]
    fn non_tridiagonal_partner() {
        // Full 3x3 matrix against a diagonal one: off-diagonal support is a triangle.
        let f = Field::Rationals;
        let a = Matrix::from_fn(f, 3, |i, j| f.int(1 + (i * 3 + j) as i64 % 5));
        let pair = MatrixPair::new(a, diag(f, &[0, 1, 2])).unwrap();
        let r = verify_leonard_pair(&pair);
        assert!(!r.is_leonard(), "{r:?}");
    }

    #[test]
    fn dimension_mismatch() {
        let f = Field::Rationals;
        assert!(MatrixPair::new(diag(f, &[1]), diag(f, &[1, 2])).is_err());
    }
}
