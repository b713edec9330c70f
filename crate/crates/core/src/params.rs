//! Parameter arrays, TD/D sequences, the conversions between them, and the
//! normalized tridiagonal/diagonal matrix realization.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::verify::{verify_leonard_pair, MatrixPair, Role, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("{what} has length {got}, expected {expected}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("diameter must be at least 1")]
    ZeroDiameter,
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("scale factors must be nonzero")]
    ZeroScale,
    #[error("x_{0} = 0 (superdiagonal entries must be nonzero)")]
    ZeroSuperdiagonal(usize),
    #[error("dual eigenvalues θ*_{0} and θ*_{1} coincide")]
    RepeatedDualEigenvalue(usize, usize),
    #[error("eigenvalues of {0} do not lie in the field")]
    NotSplitOverField(Role),
    #[error("not the data of a Leonard pair: {0}")]
    NotLeonard(String),
}

fn check_len(what: &'static str, v: &[Scalar], expected: usize) -> Result<(), ParamsError> {
    if v.len() != expected {
        return Err(ParamsError::LengthMismatch {
            what,
            expected,
            got: v.len(),
        });
    }
    Ok(())
}

fn common_field(parts: &[&[Scalar]]) -> Result<Field, ParamsError> {
    let field = parts
        .iter()
        .flat_map(|p| p.first())
        .next()
        .ok_or(ParamsError::ZeroDiameter)?
        .field();
    if parts.iter().flat_map(|p| p.iter()).any(|x| x.field() != field) {
        return Err(ParamsError::FieldMismatch);
    }
    Ok(field)
}

fn first_repeat(v: &[Scalar]) -> Option<(usize, usize)> {
    for j in 0..v.len() {
        for i in 0..j {
            if v[i] == v[j] {
                return Some((i, j));
            }
        }
    }
    None
}

/// (θ_i; θ*_i; φ_i; ϕ_i). Validity is checked separately by [`validate_parameter_array`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParameterArray {
    field: Field,
    theta: Vec<Scalar>,
    thetastar: Vec<Scalar>,
    phi1: Vec<Scalar>,
    phi2: Vec<Scalar>,
}

impl ParameterArray {
    pub fn new(
        theta: Vec<Scalar>,
        thetastar: Vec<Scalar>,
        phi1: Vec<Scalar>,
        phi2: Vec<Scalar>,
    ) -> Result<ParameterArray, ParamsError> {
        if theta.len() < 2 {
            return Err(ParamsError::ZeroDiameter);
        }
        let d = theta.len() - 1;
        check_len("thetastar", &thetastar, d + 1)?;
        check_len("phi1", &phi1, d)?;
        check_len("phi2", &phi2, d)?;
        let field = common_field(&[&theta, &thetastar, &phi1, &phi2])?;
        Ok(ParameterArray {
            field,
            theta,
            thetastar,
            phi1,
            phi2,
        })
    }

    /// Builds the array determined by its eigenvalue sequences and φ_1, using
    /// the two split-sequence identities. Requires θ_0 ≠ θ_d.
    pub fn from_eigenvalues(
        theta: Vec<Scalar>,
        thetastar: Vec<Scalar>,
        phi1_first: Scalar,
    ) -> Result<ParameterArray, ParamsError> {
        if theta.len() < 2 {
            return Err(ParamsError::ZeroDiameter);
        }
        let d = theta.len() - 1;
        check_len("thetastar", &thetastar, d + 1)?;
        let f = phi1_first.field();
        let span = &theta[0] - &theta[d];
        let span_inv = span
            .inv()
            .ok_or_else(|| ParamsError::NotLeonard("θ_0 = θ_d".into()))?;
        // ϕ_1 from the second identity at i = 1
        let phi2_first = &phi1_first + &(&thetastar[1] - &thetastar[0]) * &(&theta[d] - &theta[0]);
        let mut phi1 = Vec::with_capacity(d);
        let mut phi2 = Vec::with_capacity(d);
        let mut partial = f.zero();
        for i in 1..=d {
            partial += &(&theta[i - 1] - &theta[d - i + 1]);
            let weight = &partial * &span_inv;
            phi1.push(&phi2_first * &weight + (&thetastar[i] - &thetastar[0]) * (&theta[i - 1] - &theta[d]));
            phi2.push(&phi1_first * &weight + (&thetastar[i] - &thetastar[0]) * (&theta[d - i + 1] - &theta[0]));
        }
        ParameterArray::new(theta, thetastar, phi1, phi2)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn thetastar(&self) -> &[Scalar] {
        &self.thetastar
    }

    /// φ_1..φ_d, stored 0-based.
    pub fn phi1(&self) -> &[Scalar] {
        &self.phi1
    }

    /// ϕ_1..ϕ_d, stored 0-based.
    pub fn phi2(&self) -> &[Scalar] {
        &self.phi2
    }

    /// φ_i ϕ_i for 1 ≤ i ≤ d.
    pub fn phi_products(&self) -> Vec<Scalar> {
        self.phi1.iter().zip(&self.phi2).map(|(a, b)| a * b).collect()
    }

    /// The array with θ replaced by θ_{d-i}, φ and ϕ exchanged.
    pub fn theta_reversal(&self) -> ParameterArray {
        ParameterArray {
            field: self.field,
            theta: self.theta.iter().rev().cloned().collect(),
            thetastar: self.thetastar.clone(),
            phi1: self.phi2.clone(),
            phi2: self.phi1.clone(),
        }
    }

    /// The array with θ* replaced by θ*_{d-i}, φ_i by ϕ_{d-i+1}, ϕ_i by φ_{d-i+1}.
    pub fn thetastar_reversal(&self) -> ParameterArray {
        ParameterArray {
            field: self.field,
            theta: self.theta.clone(),
            thetastar: self.thetastar.iter().rev().cloned().collect(),
            phi1: self.phi2.iter().rev().cloned().collect(),
            phi2: self.phi1.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for ParameterArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "theta     = {}", join(&self.theta))?;
        writeln!(f, "thetastar = {}", join(&self.thetastar))?;
        writeln!(f, "phi1      = {}", join(&self.phi1))?;
        write!(f, "phi2      = {}", join(&self.phi2))
    }
}

pub(crate) fn join(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RepeatedEigenvalue(usize, usize),
    RepeatedDualEigenvalue(usize, usize),
    ZeroFirstSplit(usize),
    ZeroSecondSplit(usize),
    FirstSplitIdentity(usize),
    SecondSplitIdentity(usize),
    RatioNotConstant,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RepeatedEigenvalue(i, j) => write!(f, "(i) θ_{i} = θ_{j}"),
            Violation::RepeatedDualEigenvalue(i, j) => write!(f, "(i) θ*_{i} = θ*_{j}"),
            Violation::ZeroFirstSplit(i) => write!(f, "(ii) φ_{i} = 0"),
            Violation::ZeroSecondSplit(i) => write!(f, "(ii) ϕ_{i} = 0"),
            Violation::FirstSplitIdentity(i) => write!(f, "(iii) φ identity fails at i={i}"),
            Violation::SecondSplitIdentity(i) => write!(f, "(iv) ϕ identity fails at i={i}"),
            Violation::RatioNotConstant => write!(f, "(v) three-term ratios are not equal and constant"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Fundamental constant, when d ≥ 3 and the ratio clause holds.
    pub beta: Option<Scalar>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("Valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "Invalid; violations=[{}]", parts.join("; "))
    }
}

/// (s_{i-2} - s_{i+1})/(s_{i-1} - s_i) for 2 ≤ i ≤ d-1; None if some denominator vanishes.
pub(crate) fn three_term_ratios(s: &[Scalar]) -> Option<Vec<Scalar>> {
    let d = s.len() - 1;
    (2..d)
        .map(|i| (&s[i - 2] - &s[i + 1]).checked_div(&(&s[i - 1] - &s[i])))
        .collect()
}

/// Checks the five conditions characterizing parameter arrays.
pub fn validate_parameter_array(p: &ParameterArray) -> ValidationReport {
    let d = p.d();
    let th = &p.theta;
    let ths = &p.thetastar;
    let mut violations = Vec::new();
    for j in 0..=d {
        for i in 0..j {
            if th[i] == th[j] {
                violations.push(Violation::RepeatedEigenvalue(i, j));
            }
        }
    }
    for j in 0..=d {
        for i in 0..j {
            if ths[i] == ths[j] {
                violations.push(Violation::RepeatedDualEigenvalue(i, j));
            }
        }
    }
    for i in 1..=d {
        if p.phi1[i - 1].is_zero() {
            violations.push(Violation::ZeroFirstSplit(i));
        }
    }
    for i in 1..=d {
        if p.phi2[i - 1].is_zero() {
            violations.push(Violation::ZeroSecondSplit(i));
        }
    }
    if let Some(span_inv) = (&th[0] - &th[d]).inv() {
        let mut partial = p.field.zero();
        let mut bad1 = Vec::new();
        let mut bad2 = Vec::new();
        for i in 1..=d {
            partial += &(&th[i - 1] - &th[d - i + 1]);
            let weight = &partial * &span_inv;
            let want1 = &p.phi2[0] * &weight + (&ths[i] - &ths[0]) * (&th[i - 1] - &th[d]);
            let want2 = &p.phi1[0] * &weight + (&ths[i] - &ths[0]) * (&th[d - i + 1] - &th[0]);
            if want1 != p.phi1[i - 1] {
                bad1.push(Violation::FirstSplitIdentity(i));
            }
            if want2 != p.phi2[i - 1] {
                bad2.push(Violation::SecondSplitIdentity(i));
            }
        }
        violations.extend(bad1);
        violations.extend(bad2);
    }
    let mut beta = None;
    if d >= 3 {
        if let (Some(r), Some(rs)) = (three_term_ratios(th), three_term_ratios(ths)) {
            let first = &r[0];
            if r.iter().chain(&rs).all(|x| x == first) {
                beta = Some(first - &p.field.one());
            } else {
                violations.push(Violation::RatioNotConstant);
            }
        }
    }
    ValidationReport { violations, beta }
}

/// The four parameter arrays of one Leonard pair, in the order:
/// identity, θ*-reversal, θ-reversal, both reversals.
pub fn parameter_array_relatives(p: &ParameterArray) -> [ParameterArray; 4] {
    let second = p.thetastar_reversal();
    let third = p.theta_reversal();
    let fourth = second.theta_reversal();
    [p.clone(), second, third, fourth]
}

/// (ξθ_i + ζ; ξ*θ*_i + ζ*; ξξ*φ_i; ξξ*ϕ_i)
pub fn affine_transform(
    p: &ParameterArray,
    xi: &Scalar,
    zeta: &Scalar,
    xi_s: &Scalar,
    zeta_s: &Scalar,
) -> Result<ParameterArray, ParamsError> {
    if xi.is_zero() || xi_s.is_zero() {
        return Err(ParamsError::ZeroScale);
    }
    let prod = xi * xi_s;
    Ok(ParameterArray {
        field: p.field,
        theta: p.theta.iter().map(|t| xi * t + zeta).collect(),
        thetastar: p.thetastar.iter().map(|t| xi_s * t + zeta_s).collect(),
        phi1: p.phi1.iter().map(|t| &prod * t).collect(),
        phi2: p.phi2.iter().map(|t| &prod * t).collect(),
    })
}

/// (a_i; x_i; θ*_i) with x_i ≠ 0 and θ* mutually distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TddSequence {
    field: Field,
    a: Vec<Scalar>,
    x: Vec<Scalar>,
    thetastar: Vec<Scalar>,
}

impl TddSequence {
    pub fn new(a: Vec<Scalar>, x: Vec<Scalar>, thetastar: Vec<Scalar>) -> Result<TddSequence, ParamsError> {
        if a.len() < 2 {
            return Err(ParamsError::ZeroDiameter);
        }
        let d = a.len() - 1;
        check_len("x", &x, d)?;
        check_len("thetastar", &thetastar, d + 1)?;
        let field = common_field(&[&a, &x, &thetastar])?;
        if let Some(i) = x.iter().position(Scalar::is_zero) {
            return Err(ParamsError::ZeroSuperdiagonal(i + 1));
        }
        if let Some((i, j)) = first_repeat(&thetastar) {
            return Err(ParamsError::RepeatedDualEigenvalue(i, j));
        }
        Ok(TddSequence { field, a, x, thetastar })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    /// x_1..x_d, stored 0-based.
    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn thetastar(&self) -> &[Scalar] {
        &self.thetastar
    }

    /// Same x and θ*, all a_i = 0.
    pub fn with_zero_diagonal(&self) -> TddSequence {
        TddSequence {
            field: self.field,
            a: vec![self.field.zero(); self.a.len()],
            x: self.x.clone(),
            thetastar: self.thetastar.clone(),
        }
    }

    /// The sequence for the reversed standard ordering of θ*.
    pub fn reversed(&self) -> TddSequence {
        TddSequence {
            field: self.field,
            a: self.a.iter().rev().cloned().collect(),
            x: self.x.iter().rev().cloned().collect(),
            thetastar: self.thetastar.iter().rev().cloned().collect(),
        }
    }
}

impl fmt::Display for TddSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "a         = {}", join(&self.a))?;
        writeln!(f, "x         = {}", join(&self.x))?;
        write!(f, "thetastar = {}", join(&self.thetastar))
    }
}

/// Evaluates τ*_i(λ) = ∏_{k<i}(λ - θ*_k) and η*_i(λ) = ∏_{k<i}(λ - θ*_{d-k}).
#[derive(Debug, Clone)]
pub struct SplitPolynomials<'a> {
    thetastar: &'a [Scalar],
}

impl<'a> SplitPolynomials<'a> {
    pub fn new(thetastar: &'a [Scalar]) -> SplitPolynomials<'a> {
        SplitPolynomials { thetastar }
    }

    pub fn tau(&self, i: usize, lambda: &Scalar) -> Scalar {
        (0..i).fold(lambda.field().one(), |acc, k| acc * (lambda - &self.thetastar[k]))
    }

    pub fn eta(&self, i: usize, lambda: &Scalar) -> Scalar {
        let d = self.thetastar.len() - 1;
        (0..i).fold(lambda.field().one(), |acc, k| acc * (lambda - &self.thetastar[d - k]))
    }
}

fn diagonal_from_split(theta: &[Scalar], ths: &[Scalar], phi: &[Scalar]) -> Vec<Scalar> {
    let d = theta.len() - 1;
    (0..=d)
        .map(|i| {
            let mut a = theta[i].clone();
            if i > 0 {
                a += &(&phi[i - 1] / &(&ths[i] - &ths[i - 1]));
            }
            if i < d {
                a += &(&phi[i] / &(&ths[i] - &ths[i + 1]));
            }
            a
        })
        .collect()
}

/// The TD/D sequence corresponding to a parameter array.
pub fn tdd_from_parameter_array(p: &ParameterArray) -> Result<TddSequence, ParamsError> {
    if let Some((i, j)) = first_repeat(&p.thetastar) {
        return Err(ParamsError::RepeatedDualEigenvalue(i, j));
    }
    let d = p.d();
    let ths = &p.thetastar;
    let a = diagonal_from_split(&p.theta, ths, &p.phi1);
    let sp = SplitPolynomials::new(ths);
    let x = (1..=d)
        .map(|i| {
            let num = &p.phi1[i - 1] * &p.phi2[i - 1] * sp.tau(i - 1, &ths[i - 1]) * sp.eta(d - i, &ths[i]);
            let den = sp.tau(i, &ths[i]) * sp.eta(d - i + 1, &ths[i - 1]);
            num / den
        })
        .collect();
    TddSequence::new(a, x, ths.clone())
}

/// The same diagonal computed from the mirrored formulas (θ_{d-i} and ϕ in
/// place of θ_i and φ); agrees with [`tdd_from_parameter_array`] on valid arrays.
pub fn tdd_diagonal_mirrored(p: &ParameterArray) -> Vec<Scalar> {
    let rev: Vec<Scalar> = p.theta.iter().rev().cloned().collect();
    diagonal_from_split(&rev, &p.thetastar, &p.phi2)
}

/// Normalized presentation: A has diagonal a, subdiagonal 1, superdiagonal x;
/// A* = diag(θ*).
pub fn realize_matrices(t: &TddSequence) -> MatrixPair {
    let f = t.field;
    let n = t.a.len();
    let a = Matrix::from_fn(f, n, |i, j| {
        if i == j {
            t.a[i].clone()
        } else if j == i + 1 {
            t.x[i].clone()
        } else if i == j + 1 {
            f.one()
        } else {
            f.zero()
        }
    });
    MatrixPair::new(a, Matrix::diagonal(f, &t.thetastar)).unwrap()
}

// Solve the diagonal identities for the split sequence given an ordering of θ.
fn split_from_diagonal(theta: &[Scalar], ths: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
    let d = theta.len() - 1;
    let mut phi: Vec<Scalar> = Vec::with_capacity(d);
    for i in 0..d {
        let mut rest = &a[i] - &theta[i];
        if i > 0 {
            rest -= &(&phi[i - 1] / &(&ths[i] - &ths[i - 1]));
        }
        phi.push(rest * (&ths[i] - &ths[i + 1]));
    }
    phi
}

/// The parameter arrays (an array and its θ-reversal) whose TD/D sequence is `t`.
pub fn parameter_arrays_from_tdd(t: &TddSequence) -> Result<Vec<ParameterArray>, ParamsError> {
    let pair = realize_matrices(t);
    let theta = match verify_leonard_pair(&pair) {
        VerificationReport::LeonardPair { theta, .. } => theta,
        VerificationReport::NotSplitOverField(r) => return Err(ParamsError::NotSplitOverField(r)),
        VerificationReport::NotLeonard(r) => return Err(ParamsError::NotLeonard(r.to_string())),
    };
    let mut out = Vec::new();
    for order in [theta.clone(), theta.iter().rev().cloned().collect()] {
        let rev: Vec<Scalar> = order.iter().rev().cloned().collect();
        let phi1 = split_from_diagonal(&order, &t.thetastar, &t.a);
        let phi2 = split_from_diagonal(&rev, &t.thetastar, &t.a);
        let candidate = ParameterArray::new(order, t.thetastar.clone(), phi1, phi2)?;
        if validate_parameter_array(&candidate).is_valid()
            && tdd_from_parameter_array(&candidate).as_ref() == Ok(t)
        {
            out.push(candidate);
        }
    }
    if out.is_empty() {
        return Err(ParamsError::NotLeonard("no ordering of the eigenvalues is consistent".into()));
    }
    out.sort_by(|p, q| p.theta[0].cmp(&q.theta[0]));
    Ok(out)
}

/// (ξa_i + ζ; ξ²x_i; ξ*θ*_i + ζ*)
pub fn tdd_affine(
    t: &TddSequence,
    xi: &Scalar,
    zeta: &Scalar,
    xi_s: &Scalar,
    zeta_s: &Scalar,
) -> Result<TddSequence, ParamsError> {
    if xi.is_zero() || xi_s.is_zero() {
        return Err(ParamsError::ZeroScale);
    }
    let xi2 = xi * xi;
    TddSequence::new(
        t.a.iter().map(|a| xi * a + zeta).collect(),
        t.x.iter().map(|x| &xi2 * x).collect(),
        t.thetastar.iter().map(|s| xi_s * s + zeta_s).collect(),
    )
}
