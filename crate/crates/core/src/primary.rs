//! Fundamental type, primary data of types I, II and III⁺, the special
//! families, and the φϕ-product criteria.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::params::{three_term_ratios, ParameterArray};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeTag {
    I,
    II,
    IIIPlus,
    IIIMinus,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeTag::I => "I",
            TypeTag::II => "II",
            TypeTag::IIIPlus => "III+",
            TypeTag::IIIMinus => "III-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalType {
    pub tag: TypeTag,
    pub beta: Scalar,
}

/// One failed inequality, with the index at which it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityViolation {
    pub condition: &'static str,
    pub index: Option<i64>,
}

impl fmt::Display for InequalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{} fails at i={i}", self.condition),
            None => write!(f, "{} fails", self.condition),
        }
    }
}

fn list<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimaryError {
    #[error("diameter {0} is below 3")]
    DiameterTooSmall(usize),
    #[error("three-term ratios are not equal and constant")]
    RatioNotConstant,
    #[error("no q in the field satisfies q^2 + q^-2 = beta")]
    NoQInField,
    #[error("q = {0} does not satisfy q^2 + q^-2 = beta")]
    QMismatch(Scalar),
    #[error("type {0} has no primary data")]
    NoPrimaryData(TypeTag),
    #[error("type III+ needs an even diameter")]
    OddDiameter,
    #[error("invalid primary data: {}", list(.0))]
    PrimaryDataInvalid(Vec<InequalityViolation>),
    #[error("the array does not have the closed form of its type")]
    InconsistentArray,
    #[error("primary data of different types")]
    TypeMismatch,
    #[error("primary data with different dual parts")]
    DualMismatch,
    #[error("scalars from different fields")]
    FieldMismatch,
}

/// (δ, μ, h, δ*, μ*, h*, τ). For type III⁺ the μ slots hold s and s*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimarySeq {
    pub delta: Scalar,
    pub mu: Scalar,
    pub h: Scalar,
    pub delta_s: Scalar,
    pub mu_s: Scalar,
    pub h_s: Scalar,
    pub tau: Scalar,
}

impl PrimarySeq {
    pub fn new(values: [Scalar; 7]) -> PrimarySeq {
        let [delta, mu, h, delta_s, mu_s, h_s, tau] = values;
        PrimarySeq { delta, mu, h, delta_s, mu_s, h_s, tau }
    }

    pub fn from_ints(field: Field, values: [i64; 7]) -> PrimarySeq {
        PrimarySeq::new(values.map(|v| field.int(v)))
    }

    pub fn values(&self) -> [&Scalar; 7] {
        [&self.delta, &self.mu, &self.h, &self.delta_s, &self.mu_s, &self.h_s, &self.tau]
    }

    pub fn field(&self) -> Field {
        self.delta.field()
    }

    fn same_dual(&self, other: &PrimarySeq) -> bool {
        self.delta_s == other.delta_s && self.mu_s == other.mu_s && self.h_s == other.h_s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimaryData {
    TypeI { q: Scalar, seq: PrimarySeq },
    TypeII(PrimarySeq),
    TypeIIIPlus(PrimarySeq),
}

impl PrimaryData {
    pub fn tag(&self) -> TypeTag {
        match self {
            PrimaryData::TypeI { .. } => TypeTag::I,
            PrimaryData::TypeII(_) => TypeTag::II,
            PrimaryData::TypeIIIPlus(_) => TypeTag::IIIPlus,
        }
    }

    pub fn seq(&self) -> &PrimarySeq {
        match self {
            PrimaryData::TypeI { seq, .. } | PrimaryData::TypeII(seq) | PrimaryData::TypeIIIPlus(seq) => seq,
        }
    }

    pub fn q(&self) -> Option<&Scalar> {
        match self {
            PrimaryData::TypeI { q, .. } => Some(q),
            _ => None,
        }
    }

    pub fn field(&self) -> Field {
        self.seq().field()
    }

    /// Same type (and q), new sequence.
    pub fn with_seq(&self, seq: PrimarySeq) -> PrimaryData {
        match self {
            PrimaryData::TypeI { q, .. } => PrimaryData::TypeI { q: q.clone(), seq },
            PrimaryData::TypeII(_) => PrimaryData::TypeII(seq),
            PrimaryData::TypeIIIPlus(_) => PrimaryData::TypeIIIPlus(seq),
        }
    }

    fn shape(&self) -> Shape {
        match self {
            PrimaryData::TypeI { q, .. } => Shape::Geometric(q.clone()),
            PrimaryData::TypeII(_) => Shape::Quadratic,
            PrimaryData::TypeIIIPlus(_) => Shape::Alternating,
        }
    }

    fn check_field(&self) -> Result<(), PrimaryError> {
        let f = self.field();
        let ok = self.seq().values().iter().all(|v| v.field() == f) && self.q().is_none_or(|q| q.field() == f);
        if ok {
            Ok(())
        } else {
            Err(PrimaryError::FieldMismatch)
        }
    }
}

impl fmt::Display for PrimaryData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.seq();
        write!(f, "type={}", self.tag())?;
        if let Some(q) = self.q() {
            write!(f, "; q={q}")?;
        }
        let (m, ms) = if self.tag() == TypeTag::IIIPlus { ("s", "sstar") } else { ("mu", "mustar") };
        write!(
            f,
            "; delta={}; {m}={}; h={}; deltastar={}; {ms}={}; hstar={}; tau={}",
            s.delta, s.mu, s.h, s.delta_s, s.mu_s, s.h_s, s.tau
        )
    }
}

// The three closed forms of the eigenvalue sequences.
#[derive(Debug, Clone)]
enum Shape {
    Geometric(Scalar),
    Quadratic,
    Alternating,
}

impl Shape {
    /// Coefficients of (δ, μ, h) in θ_i.
    fn basis(&self, f: Field, d: usize, i: usize) -> [Scalar; 3] {
        let (i, di) = (i as i64, d as i64);
        let half_d = f.ratio(di, 2);
        match self {
            Shape::Geometric(q) => [f.one(), q.pow(2 * i - di), q.pow(di - 2 * i)],
            Shape::Quadratic => [f.one(), f.int(i) - &half_d, f.int(i * (di - i))],
            Shape::Alternating => {
                let lin = f.int(i) - &half_d;
                if i % 2 == 0 {
                    [f.one(), f.one(), lin]
                } else {
                    [f.one(), f.int(-1), -lin]
                }
            }
        }
    }

    fn eigenvalue(&self, d: usize, i: usize, delta: &Scalar, mu: &Scalar, h: &Scalar) -> Scalar {
        let [c0, c1, c2] = self.basis(delta.field(), d, i);
        c0 * delta + c1 * mu + c2 * h
    }

    /// (prefactor, bracket of φ_i, bracket of ϕ_i); φ_i = prefactor · bracket.
    fn split_factors(&self, s: &PrimarySeq, d: usize, i: usize) -> (Scalar, Scalar, Scalar) {
        let f = s.field();
        let (ii, di) = (i as i64, d as i64);
        let PrimarySeq { mu, h, mu_s, h_s, tau, .. } = s;
        match self {
            Shape::Geometric(q) => {
                let pref = (q.pow(ii) - q.pow(-ii)) * (q.pow(di - ii + 1) - q.pow(ii - di - 1));
                let up = q.pow(2 * ii - di - 1);
                let down = q.pow(di - 2 * ii + 1);
                let b1 = tau - mu * mu_s * &up - h * h_s * &down;
                let b2 = tau - h * mu_s * &up - mu * h_s * &down;
                (pref, b1, b2)
            }
            Shape::Quadratic => {
                let pref = f.int(ii * (di - ii + 1));
                let mid = f.int(ii) - f.ratio(di + 1, 2);
                let tail = h * h_s * f.int((ii - 1) * (di - ii));
                let half = mu * mu_s * f.ratio(1, 2);
                let b1 = tau - &half + (h * mu_s + mu * h_s) * &mid + &tail;
                let b2 = tau + &half + (h * mu_s - mu * h_s) * &mid + &tail;
                (pref, b1, b2)
            }
            Shape::Alternating => {
                let sv = mu;
                let ss = mu_s;
                let mid = h * h_s * (f.int(ii) - f.ratio(di + 1, 2));
                let a = sv * h_s;
                let b = ss * h;
                if i % 2 == 0 {
                    (f.int(ii), tau - &a - &b - &mid, tau - &a + &b + &mid)
                } else {
                    (f.int(di - ii + 1), tau + &a + &b + &mid, tau + &a - &b - &mid)
                }
            }
        }
    }
}

/// β from the common three-term ratio, and the type it determines.
pub fn fundamental_type(p: &ParameterArray) -> Result<FundamentalType, PrimaryError> {
    let d = p.d();
    if d < 3 {
        return Err(PrimaryError::DiameterTooSmall(d));
    }
    let r = three_term_ratios(p.theta()).ok_or(PrimaryError::RatioNotConstant)?;
    let rs = three_term_ratios(p.thetastar()).ok_or(PrimaryError::RatioNotConstant)?;
    if !r.iter().chain(&rs).all(|x| x == &r[0]) {
        return Err(PrimaryError::RatioNotConstant);
    }
    let f = p.field();
    let beta = &r[0] - &f.one();
    Ok(FundamentalType { tag: tag_of(&beta, d), beta })
}

fn tag_of(beta: &Scalar, d: usize) -> TypeTag {
    let two = beta.field().int(2);
    if *beta == two {
        TypeTag::II
    } else if *beta == -&two {
        if d % 2 == 0 {
            TypeTag::IIIPlus
        } else {
            TypeTag::IIIMinus
        }
    } else {
        TypeTag::I
    }
}

/// Every q in the field with q² + q⁻² = β. Roots of z² - βz + 1 come first
/// in square-root order, then the square roots of each.
pub fn q_from_beta(beta: &Scalar) -> Vec<Scalar> {
    let f = beta.field();
    let two = f.int(2);
    if *beta == two || *beta == -&two {
        return Vec::new();
    }
    let disc = beta.square() - f.int(4);
    let mut out: Vec<Scalar> = Vec::new();
    for r in disc.square_roots() {
        let z = (beta + &r) / &two;
        for q in z.square_roots() {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out
}

fn violation(condition: &'static str, index: Option<i64>) -> InequalityViolation {
    InequalityViolation { condition, index }
}

/// All inequality conditions of the primary data's type that fail.
pub fn check_primary_data(pd: &PrimaryData, d: usize) -> Vec<InequalityViolation> {
    let s = pd.seq();
    let f = pd.field();
    let di = d as i64;
    let mut out = Vec::new();
    let shape = pd.shape();
    match pd {
        PrimaryData::TypeI { q, .. } => {
            if q.is_zero() || q.pow(4).is_one() {
                out.push(violation("q != 0 and q^4 != 1", None));
                return out;
            }
            for i in 1..=di {
                if q.pow(2 * i).is_one() {
                    out.push(violation("q^(2i) != 1", Some(i)));
                }
            }
            for i in 1 - di..di {
                if s.mu == &s.h * &q.pow(2 * i) {
                    out.push(violation("mu != h q^(2i)", Some(i)));
                }
            }
            for i in 1 - di..di {
                if s.mu_s == &s.h_s * &q.pow(2 * i) {
                    out.push(violation("mu* != h* q^(2i)", Some(i)));
                }
            }
        }
        PrimaryData::TypeII(_) => {
            let c = f.characteristic();
            if c != 0 && c <= d as u64 {
                out.push(violation("Char(F) = 0 or Char(F) > d", None));
            }
            for i in 1 - di..di {
                if s.mu == &s.h * &f.int(i) {
                    out.push(violation("mu != h i", Some(i)));
                }
            }
            for i in 1 - di..di {
                if s.mu_s == &s.h_s * &f.int(i) {
                    out.push(violation("mu* != h* i", Some(i)));
                }
            }
        }
        PrimaryData::TypeIIIPlus(_) => {
            let c = f.characteristic();
            if c != 0 && 2 * c <= d as u64 {
                out.push(violation("Char(F) = 0 or Char(F) > d/2", None));
            }
            if s.h.is_zero() {
                out.push(violation("h != 0", None));
            }
            if s.h_s.is_zero() {
                out.push(violation("h* != 0", None));
            }
            let two = f.int(2);
            for i in (1 - di..di).filter(|i| i % 2 != 0) {
                if &two * &s.mu == &s.h * &f.int(i) {
                    out.push(violation("2s != i h (i odd)", Some(i)));
                }
            }
            for i in (1 - di..di).filter(|i| i % 2 != 0) {
                if &two * &s.mu_s == &s.h_s * &f.int(i) {
                    out.push(violation("2s* != i h* (i odd)", Some(i)));
                }
            }
        }
    }
    let mut second = Vec::new();
    for i in 1..=d {
        let (_, b1, b2) = shape.split_factors(s, d, i);
        if b1.is_zero() {
            out.push(violation("phi_i != 0 (tau avoids its forbidden value)", Some(i as i64)));
        }
        if b2.is_zero() {
            second.push(violation("phi'_i != 0 (tau avoids its forbidden value)", Some(i as i64)));
        }
    }
    out.extend(second);
    out
}

/// The displayed closed-form parameter array, after checking the inequalities.
pub fn parameter_array_from_primary_data(pd: &PrimaryData, d: usize) -> Result<ParameterArray, PrimaryError> {
    if d < 3 {
        return Err(PrimaryError::DiameterTooSmall(d));
    }
    if pd.tag() == TypeTag::IIIPlus && d % 2 == 1 {
        return Err(PrimaryError::OddDiameter);
    }
    pd.check_field()?;
    let bad = check_primary_data(pd, d);
    if !bad.is_empty() {
        return Err(PrimaryError::PrimaryDataInvalid(bad));
    }
    Ok(build_array(pd, d))
}

fn build_array(pd: &PrimaryData, d: usize) -> ParameterArray {
    let s = pd.seq();
    let shape = pd.shape();
    let theta = (0..=d).map(|i| shape.eigenvalue(d, i, &s.delta, &s.mu, &s.h)).collect();
    let thetastar = (0..=d).map(|i| shape.eigenvalue(d, i, &s.delta_s, &s.mu_s, &s.h_s)).collect();
    let mut phi1 = Vec::with_capacity(d);
    let mut phi2 = Vec::with_capacity(d);
    for i in 1..=d {
        let (pref, b1, b2) = shape.split_factors(s, d, i);
        phi1.push(&pref * &b1);
        phi2.push(&pref * &b2);
    }
    ParameterArray::new(theta, thetastar, phi1, phi2).expect("lengths agree")
}

fn solve3(shape: &Shape, f: Field, d: usize, values: &[Scalar]) -> Option<[Scalar; 3]> {
    let rows: Vec<Vec<Scalar>> = (0..3).map(|i| shape.basis(f, d, i).to_vec()).collect();
    let inv = Matrix::from_rows(rows).ok()?.inverse()?;
    let mut out = [f.zero(), f.zero(), f.zero()];
    for (r, slot) in out.iter_mut().enumerate() {
        for c in 0..3 {
            *slot += &(&inv[(r, c)] * &values[c]);
        }
    }
    Some(out)
}

/// Solves for the primary data from θ_0..θ_2, θ*_0..θ*_2 and φ_1, then checks
/// every entry of the array against the closed form. For type I, `q_choice`
/// defaults to the first element of [`q_from_beta`].
pub fn primary_data_from_parameter_array(
    p: &ParameterArray,
    q_choice: Option<&Scalar>,
) -> Result<PrimaryData, PrimaryError> {
    let ft = fundamental_type(p)?;
    let f = p.field();
    let d = p.d();
    let shape = match ft.tag {
        TypeTag::I => {
            let q = match q_choice {
                Some(q) => {
                    if q.field() != f {
                        return Err(PrimaryError::FieldMismatch);
                    }
                    if q.is_zero() || q.square() + q.pow(-2) != ft.beta {
                        return Err(PrimaryError::QMismatch(q.clone()));
                    }
                    q.clone()
                }
                None => q_from_beta(&ft.beta).into_iter().next().ok_or(PrimaryError::NoQInField)?,
            };
            Shape::Geometric(q)
        }
        TypeTag::II => Shape::Quadratic,
        TypeTag::IIIPlus => Shape::Alternating,
        TypeTag::IIIMinus => return Err(PrimaryError::NoPrimaryData(TypeTag::IIIMinus)),
    };
    let [delta, mu, h] = solve3(&shape, f, d, p.theta()).ok_or(PrimaryError::InconsistentArray)?;
    let [delta_s, mu_s, h_s] = solve3(&shape, f, d, p.thetastar()).ok_or(PrimaryError::InconsistentArray)?;
    let mut seq = PrimarySeq { delta, mu, h, delta_s, mu_s, h_s, tau: f.zero() };
    // bracket of φ_1 is τ plus a τ-free part
    let (pref, b1, _) = shape.split_factors(&seq, d, 1);
    let pref_inv = pref.inv().ok_or(PrimaryError::InconsistentArray)?;
    seq.tau = &p.phi1()[0] * &pref_inv - &b1;
    let pd = match shape {
        Shape::Geometric(q) => PrimaryData::TypeI { q, seq },
        Shape::Quadratic => PrimaryData::TypeII(seq),
        Shape::Alternating => PrimaryData::TypeIIIPlus(seq),
    };
    match parameter_array_from_primary_data(&pd, d) {
        Ok(back) if back == *p => Ok(pd),
        _ => Err(PrimaryError::InconsistentArray),
    }
}

/// Primary data of the four relatives, in the order of
/// [`crate::parameter_array_relatives`].
pub fn primary_data_relatives(pd: &PrimaryData) -> [PrimaryData; 4] {
    let s = pd.seq();
    let make = |mu: &Scalar, h: &Scalar, mu_s: &Scalar, h_s: &Scalar| {
        pd.with_seq(PrimarySeq {
            delta: s.delta.clone(),
            mu: mu.clone(),
            h: h.clone(),
            delta_s: s.delta_s.clone(),
            mu_s: mu_s.clone(),
            h_s: h_s.clone(),
            tau: s.tau.clone(),
        })
    };
    let (mu, h, mu_s, h_s) = (&s.mu, &s.h, &s.mu_s, &s.h_s);
    match pd {
        PrimaryData::TypeI { .. } => [
            make(mu, h, mu_s, h_s),
            make(mu, h, h_s, mu_s),
            make(h, mu, mu_s, h_s),
            make(h, mu, h_s, mu_s),
        ],
        PrimaryData::TypeII(_) => [
            make(mu, h, mu_s, h_s),
            make(mu, h, &-mu_s, h_s),
            make(&-mu, h, mu_s, h_s),
            make(&-mu, h, &-mu_s, h_s),
        ],
        PrimaryData::TypeIIIPlus(_) => [
            make(mu, h, mu_s, h_s),
            make(mu, h, mu_s, &-h_s),
            make(mu, &-h, mu_s, h_s),
            make(mu, &-h, mu_s, &-h_s),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SpecialTypeFlags {
    pub dual_q_krawtchouk: bool,
    pub krawtchouk: bool,
    /// Only set for dual q-Krawtchouk data.
    pub reinforced: bool,
    pub bipartite: bool,
    pub essentially_bipartite: bool,
}

/// True when q is known not to be a root of unity: a rational q other than 0, ±1.
/// Every nonzero element of a prime field is a root of unity.
pub fn not_root_of_unity(q: &Scalar) -> bool {
    match q {
        Scalar::Rational(_) => !q.is_zero() && !q.square().is_one(),
        Scalar::Residue { .. } => false,
    }
}

/// q^{2i} ≠ -1 for 1 ≤ i ≤ d-1.
pub fn is_reinforced(q: &Scalar, d: usize) -> bool {
    if not_root_of_unity(q) {
        return true;
    }
    let minus_one = q.field().int(-1);
    (1..d as i64).all(|i| q.pow(2 * i) != minus_one)
}

pub fn special_type_flags(pd: &PrimaryData, d: usize) -> SpecialTypeFlags {
    let s = pd.seq();
    let tau0 = s.tau.is_zero();
    let (dual_q, kraw, ess) = match pd {
        PrimaryData::TypeI { .. } => ((&s.mu_s * &s.h_s).is_zero() && tau0, false, (&s.mu + &s.h).is_zero() && tau0),
        PrimaryData::TypeII(_) => (false, s.h.is_zero() && s.h_s.is_zero(), s.h.is_zero() && tau0),
        PrimaryData::TypeIIIPlus(_) => (false, false, s.mu.is_zero() && tau0),
    };
    SpecialTypeFlags {
        dual_q_krawtchouk: dual_q,
        krawtchouk: kraw,
        reinforced: dual_q && is_reinforced(pd.q().expect("type I"), d),
        bipartite: ess && s.delta.is_zero(),
        essentially_bipartite: ess,
    }
}

/// The type II reading of the dual q-Krawtchouk ratio conditions: μh = 0
/// and h* = 0. Distinct from the Krawtchouk family and not used by the
/// classifier.
pub fn type_ii_ratio_conditions(pd: &PrimaryData) -> bool {
    match pd {
        PrimaryData::TypeII(s) => (&s.mu * &s.h).is_zero() && s.h_s.is_zero(),
        _ => false,
    }
}

/// The common value of (θ*_{i-1} - θ*_i)/(θ*_i - θ*_{i+1}), 1 ≤ i ≤ d-1, if any.
pub fn dual_eigenvalue_ratio(p: &ParameterArray) -> Option<Scalar> {
    let ths = p.thetastar();
    let d = p.d();
    let r: Option<Vec<Scalar>> = (1..d)
        .map(|i| (&ths[i - 1] - &ths[i]).checked_div(&(&ths[i] - &ths[i + 1])))
        .collect();
    let r = r?;
    let first = r.first()?.clone();
    r.iter().all(|x| *x == first).then_some(first)
}

/// Type I together with the two ratio conditions, read off the array.
pub fn dual_q_krawtchouk_conditions(p: &ParameterArray) -> bool {
    if !matches!(fundamental_type(p), Ok(FundamentalType { tag: TypeTag::I, .. })) {
        return false;
    }
    let ratios: Option<Vec<Scalar>> = p.phi1().iter().zip(p.phi2()).map(|(a, b)| a.checked_div(b)).collect();
    let split_const = ratios.is_some_and(|r| r.iter().all(|x| *x == r[0]));
    split_const && dual_eigenvalue_ratio(p).is_some()
}

/// Type II with both eigenvalue sequences in arithmetic progression.
pub fn krawtchouk_conditions(p: &ParameterArray) -> bool {
    let arith = |s: &[Scalar]| {
        let step = &s[1] - &s[0];
        s.windows(2).all(|w| &w[1] - &w[0] == step)
    };
    matches!(fundamental_type(p), Ok(FundamentalType { tag: TypeTag::II, .. }))
        && arith(p.theta())
        && arith(p.thetastar())
}

/// r^i ≠ -1 for 1 ≤ i ≤ d-1, where r = q^{±2} is the dual eigenvalue ratio.
pub fn reinforced_from_ratio(r: &Scalar, d: usize) -> bool {
    let minus_one = r.field().int(-1);
    (1..d as i64).all(|i| r.pow(i) != minus_one)
}

/// Whether φ_iϕ_i = φ'_iϕ'_i for all i, decided on the primary data of two
/// arrays that share θ*.
pub fn phi_products_equal(pd1: &PrimaryData, pd2: &PrimaryData, d: usize) -> Result<bool, PrimaryError> {
    if pd1.tag() != pd2.tag() {
        return Err(PrimaryError::TypeMismatch);
    }
    if pd1.field() != pd2.field() {
        return Err(PrimaryError::FieldMismatch);
    }
    let (a, b) = (pd1.seq(), pd2.seq());
    if !a.same_dual(b) || pd1.q() != pd2.q() {
        return Err(PrimaryError::DualMismatch);
    }
    let f = pd1.field();
    Ok(match pd1 {
        PrimaryData::TypeI { .. } => {
            let sum1 = &a.mu + &a.h;
            let sum2 = &b.mu + &b.h;
            let dual = &a.mu_s * &a.h_s;
            &a.mu * &a.h == &b.mu * &b.h
                && &a.tau * &sum1 == &b.tau * &sum2
                && a.tau.square() + sum1.square() * &dual == b.tau.square() + sum2.square() * &dual
        }
        PrimaryData::TypeII(_) => {
            let two = f.int(2);
            let four = f.int(4);
            let w = a.mu_s.square() + f.int(d as i64 - 1).square() * a.h_s.square();
            a.h.square() == b.h.square()
                && &two * &a.h * &a.tau + a.mu.square() * &a.h_s == &two * &b.h * &b.tau + b.mu.square() * &a.h_s
                && &four * a.tau.square() - a.mu.square() * &w == &four * b.tau.square() - b.mu.square() * &w
        }
        PrimaryData::TypeIIIPlus(_) => {
            let (s1, s2) = (&a.mu * &a.h_s, &b.mu * &a.h_s);
            a.h.square() == b.h.square()
                && (&a.tau + &s1).square() == (&b.tau + &s2).square()
                && (&a.tau - &s1).square() == (&b.tau - &s2).square()
        }
    })
}
