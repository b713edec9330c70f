//! Seeded random generation of valid primary data and parameter arrays.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{Field, Scalar};
use crate::params::{validate_parameter_array, ParameterArray};
use crate::primary::{
    dual_q_krawtchouk_conditions, fundamental_type, parameter_array_from_primary_data, PrimaryData, PrimarySeq,
    TypeTag,
};

/// Rejection sampling gives up after this many draws per item.
pub const MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Krawtchouk,
    DualQ,
    EssBipI,
    EssBipII,
    EssBipIIIPlus,
    GenericI,
    GenericII,
    GenericIIIPlus,
    /// Type III⁻ arrays (odd d), built from eigenvalues since they have no primary data.
    IIIMinus,
    /// Dual q-Krawtchouk arrays whose q lies outside the field (q² does not).
    DualQNoQ,
    /// Type I arrays whose q lies outside the field.
    GenericINoQ,
}

pub const ALL_FAMILIES: [Family; 11] = [
    Family::Krawtchouk,
    Family::DualQ,
    Family::EssBipI,
    Family::EssBipII,
    Family::EssBipIIIPlus,
    Family::GenericI,
    Family::GenericII,
    Family::GenericIIIPlus,
    Family::IIIMinus,
    Family::DualQNoQ,
    Family::GenericINoQ,
];

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Krawtchouk => "krawtchouk",
            Family::DualQ => "dualq",
            Family::EssBipI => "essbip-I",
            Family::EssBipII => "essbip-II",
            Family::EssBipIIIPlus => "essbip-III+",
            Family::GenericI => "generic-I",
            Family::GenericII => "generic-II",
            Family::GenericIIIPlus => "generic-III+",
            Family::IIIMinus => "III-",
            Family::DualQNoQ => "dualq-noq",
            Family::GenericINoQ => "generic-I-noq",
        }
    }

    pub fn tag(self) -> TypeTag {
        match self {
            Family::DualQ | Family::EssBipI | Family::GenericI | Family::DualQNoQ | Family::GenericINoQ => TypeTag::I,
            Family::Krawtchouk | Family::EssBipII | Family::GenericII => TypeTag::II,
            Family::EssBipIIIPlus | Family::GenericIIIPlus => TypeTag::IIIPlus,
            Family::IIIMinus => TypeTag::IIIMinus,
        }
    }

    /// Families sampled through primary data.
    pub fn has_primary_data(self) -> bool {
        !matches!(self, Family::IIIMinus | Family::DualQNoQ | Family::GenericINoQ)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = SampleError;

    fn from_str(s: &str) -> Result<Family, SampleError> {
        ALL_FAMILIES
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| SampleError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleError {
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
    #[error("family {0} needs d >= 3")]
    DiameterTooSmall(Family),
    #[error("family {0} needs an even diameter")]
    NeedsEvenDiameter(Family),
    #[error("family {0} needs an odd diameter")]
    NeedsOddDiameter(Family),
    #[error("family {0} has no primary data")]
    NoPrimaryData(Family),
    #[error("no valid sample for {family} after {MAX_RETRIES} draws")]
    Exhausted { family: Family },
    #[error("q must lie in the field")]
    QFieldMismatch,
}

pub struct Sampler {
    rng: ChaCha8Rng,
    field: Field,
}

impl Sampler {
    pub fn new(field: Field, seed: u64) -> Sampler {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), field }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Uniform over GF(p); over Q a small fraction with numerator in [-9, 9]
    /// and denominator 1, 2 or 3.
    pub fn scalar(&mut self) -> Scalar {
        match self.field {
            Field::Prime(p) => self.field.int(self.rng.random_range(0..p as i64)),
            Field::Rationals => {
                let n = self.rng.random_range(-9..=9);
                let d = if self.rng.random_bool(2.0 / 3.0) { 1 } else { self.rng.random_range(2..=3) };
                self.field.ratio(n, d)
            }
        }
    }

    pub fn nonzero(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    fn check_shape(family: Family, d: usize) -> Result<(), SampleError> {
        if d < 3 {
            return Err(SampleError::DiameterTooSmall(family));
        }
        match family.tag() {
            TypeTag::IIIPlus if d % 2 == 1 => Err(SampleError::NeedsEvenDiameter(family)),
            TypeTag::IIIMinus if d % 2 == 0 => Err(SampleError::NeedsOddDiameter(family)),
            _ => Ok(()),
        }
    }

    // One unchecked draw; q is drawn when not fixed.
    fn draw_primary(&mut self, family: Family, q: Option<&Scalar>) -> PrimaryData {
        let f = self.field;
        let mut s = PrimarySeq::new(std::array::from_fn(|_| self.scalar()));
        let zero = f.zero();
        match family {
            Family::Krawtchouk => {
                s.h = zero.clone();
                s.h_s = zero;
            }
            Family::DualQ => {
                if self.rng.random_bool(0.5) {
                    s.mu_s = zero.clone();
                } else {
                    s.h_s = zero.clone();
                }
                s.tau = zero;
            }
            Family::EssBipI => {
                s.h = -&s.mu;
                s.tau = zero;
            }
            Family::EssBipII => {
                s.h = zero.clone();
                s.tau = zero;
            }
            Family::EssBipIIIPlus => {
                s.mu = zero.clone();
                s.tau = zero;
            }
            _ => {}
        }
        match family.tag() {
            TypeTag::I => {
                let q = q.cloned().unwrap_or_else(|| self.nonzero());
                PrimaryData::TypeI { q, seq: s }
            }
            TypeTag::II => PrimaryData::TypeII(s),
            _ => PrimaryData::TypeIIIPlus(s),
        }
    }

    /// Valid primary data of the family, by rejection. For type I families
    /// `q` fixes q; otherwise q is drawn too.
    pub fn primary(&mut self, family: Family, d: usize, q: Option<&Scalar>) -> Result<PrimaryData, SampleError> {
        Self::check_shape(family, d)?;
        if !family.has_primary_data() {
            return Err(SampleError::NoPrimaryData(family));
        }
        if q.is_some_and(|q| q.field() != self.field) {
            return Err(SampleError::QFieldMismatch);
        }
        for _ in 0..MAX_RETRIES {
            let pd = self.draw_primary(family, q);
            if parameter_array_from_primary_data(&pd, d).is_ok() {
                return Ok(pd);
            }
        }
        Err(SampleError::Exhausted { family })
    }

    /// A valid parameter array of the family.
    pub fn array(&mut self, family: Family, d: usize, q: Option<&Scalar>) -> Result<ParameterArray, SampleError> {
        if family.has_primary_data() {
            let pd = self.primary(family, d, q)?;
            return Ok(parameter_array_from_primary_data(&pd, d).expect("checked by primary"));
        }
        Self::check_shape(family, d)?;
        for _ in 0..MAX_RETRIES {
            if let Some(p) = self.draw_array(family, d) {
                if validate_parameter_array(&p).is_valid()
                    && fundamental_type(&p).is_ok_and(|t| t.tag == family.tag())
                    && (family != Family::DualQNoQ || dual_q_krawtchouk_conditions(&p))
                {
                    return Ok(p);
                }
            }
        }
        Err(SampleError::Exhausted { family })
    }

    // A nonzero non-square Q with Q ≠ ±1.
    fn non_square(&mut self) -> Scalar {
        loop {
            let s = self.nonzero();
            if !s.is_square() && !s.square().is_one() {
                return s;
            }
        }
    }

    fn draw_array(&mut self, family: Family, d: usize) -> Option<ParameterArray> {
        let f = self.field;
        let idx = |i: usize| i as i64;
        match family {
            Family::IIIMinus => {
                // θ_i = a + (b + c i)(-1)^i
                let mut alt = || {
                    let (a, b, c) = (self.scalar(), self.scalar(), self.nonzero());
                    (0..=d)
                        .map(|i| {
                            let t = &b + &c * f.int(idx(i));
                            if i % 2 == 0 { &a + &t } else { &a - &t }
                        })
                        .collect::<Vec<_>>()
                };
                let theta = alt();
                let thetastar = alt();
                let phi1 = self.nonzero();
                ParameterArray::from_eigenvalues(theta, thetastar, phi1).ok()
            }
            Family::DualQNoQ | Family::GenericINoQ => {
                // θ_i = δ + u Q^i + v Q^{-i}, with Q not a square
                let big_q = self.non_square();
                let (delta, u, v) = (self.scalar(), self.nonzero(), self.nonzero());
                let theta = (0..=d).map(|i| &delta + &u * big_q.pow(idx(i)) + &v * big_q.pow(-idx(i))).collect();
                let delta_s = self.scalar();
                let (thetastar, phi1) = if family == Family::DualQNoQ {
                    // θ*_i = δ* + w Q^{-i}; τ = 0 forces φ_1 = -(1 - Q⁻¹)(1 - Q^{-d}) v w
                    let w = self.nonzero();
                    let ths = (0..=d).map(|i| &delta_s + &w * big_q.pow(-idx(i))).collect();
                    let phi1 = -((f.one() - big_q.pow(-1)) * (f.one() - big_q.pow(-idx(d))) * &v * &w);
                    (ths, phi1)
                } else {
                    let (us, vs) = (self.scalar(), self.scalar());
                    let ths = (0..=d).map(|i| &delta_s + &us * big_q.pow(idx(i)) + &vs * big_q.pow(-idx(i))).collect();
                    (ths, self.nonzero())
                };
                ParameterArray::from_eigenvalues(theta, thetastar, phi1).ok()
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primary::{q_from_beta, special_type_flags};

    #[test]
    fn deterministic() {
        let g = Field::prime(13).unwrap();
        let a: Vec<_> = {
            let mut s = Sampler::new(g, 7);
            (0..5).map(|_| s.primary(Family::Krawtchouk, 3, None).unwrap()).collect()
        };
        let mut s = Sampler::new(g, 7);
        let b: Vec<_> = (0..5).map(|_| s.primary(Family::Krawtchouk, 3, None).unwrap()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn families_have_their_flags() {
        for field in [Field::Rationals, Field::prime(13).unwrap()] {
            let mut s = Sampler::new(field, 1);
            let two = field.int(2);
            for _ in 0..10 {
                let pd = s.primary(Family::DualQ, 3, Some(&two)).unwrap();
                assert!(special_type_flags(&pd, 3).dual_q_krawtchouk);
                let pd = s.primary(Family::Krawtchouk, 4, None).unwrap();
                assert!(special_type_flags(&pd, 4).krawtchouk);
                let pd = s.primary(Family::EssBipIIIPlus, 4, None).unwrap();
                assert!(special_type_flags(&pd, 4).essentially_bipartite);
                let p = s.array(Family::IIIMinus, 3, None).unwrap();
                assert_eq!(fundamental_type(&p).unwrap().tag, TypeTag::IIIMinus);
                let p = s.array(Family::DualQNoQ, 3, None).unwrap();
                assert!(q_from_beta(&fundamental_type(&p).unwrap().beta).is_empty());
            }
        }
    }

    #[test]
    fn shape_errors() {
        let mut s = Sampler::new(Field::Rationals, 0);
        assert_eq!(s.primary(Family::EssBipIIIPlus, 3, None), Err(SampleError::NeedsEvenDiameter(Family::EssBipIIIPlus)));
        assert_eq!(s.array(Family::IIIMinus, 4, None), Err(SampleError::NeedsOddDiameter(Family::IIIMinus)));
        assert_eq!(s.primary(Family::IIIMinus, 3, None), Err(SampleError::NoPrimaryData(Family::IIIMinus)));
        assert_eq!("dualq".parse::<Family>(), Ok(Family::DualQ));
    }
}
