//! Exact scalar arithmetic over the rationals and odd prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Prime moduli must stay below this bound (square roots and polynomial
/// roots are found by exhaustive search).
pub const PRIME_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,
    #[error("modulus {0} is too large (must be below {PRIME_BOUND})")]
    ModulusTooLarge(u64),
    #[error("cannot read {text:?} as an element of {field}")]
    Parse { text: String, field: Field },
    #[error("unknown field {0:?} (expected \"Q\" or \"p=<prime>\")")]
    UnknownField(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// The base field: the rationals, or GF(p) for an odd prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p == 2 {
            return Err(FieldError::CharacteristicTwo);
        }
        if p >= PRIME_BOUND {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p as u64,
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// n/d; panics when d vanishes in the field.
    pub fn ratio(self, n: i64, d: i64) -> Scalar {
        let den = self.int(d);
        self.int(n).checked_div(&den).expect("zero denominator")
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Residue {
                    value: r.to_u32().unwrap(),
                    modulus: p,
                }
            }
        }
    }

    /// Reads "n" or "n/d". Prime-field input may be any integer or quotient
    /// and is reduced to its residue.
    pub fn parse(self, text: &str) -> Result<Scalar, FieldError> {
        let err = || FieldError::Parse {
            text: text.to_string(),
            field: self,
        };
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let n: BigInt = num.parse().map_err(|_| err())?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| err())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(err());
        }
        match self {
            Field::Rationals => Ok(Scalar::Rational(BigRational::new(n, d))),
            Field::Prime(_) => self
                .from_bigint(&n)
                .checked_div(&self.from_bigint(&d))
                .ok_or_else(err),
        }
    }

    /// All elements of a prime field in residue order; None for the rationals.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(
                (0..p)
                    .map(|value| Scalar::Residue { value, modulus: p })
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "p={p}"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("p=")
            .or_else(|| t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')))
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// A field element in canonical form. Mixing fields in one operation panics.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

fn mixed() -> ! {
    panic!("arithmetic between scalars of different fields")
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2)
    pow_mod(a as u64, (p - 2) as u64, p as u64) as u32
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// Integer power; negative exponents need a nonzero base.
    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let e = e.unsigned_abs();
        match base {
            Scalar::Rational(r) => {
                let e = usize::try_from(e).expect("exponent too large");
                Scalar::Rational(num_traits::pow(r, e))
            }
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: pow_mod(value as u64, e, modulus as u64) as u32,
                modulus,
            },
        }
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    /// Every y in the field with y² = self, ascending (rationals: positive root first).
    pub fn square_roots(&self) -> Vec<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    return vec![self.clone()];
                }
                if r.is_negative() {
                    return vec![];
                }
                let n = r.numer();
                let d = r.denom();
                let sn = n.sqrt();
                let sd = d.sqrt();
                if &(&sn * &sn) != n || &(&sd * &sd) != d {
                    return vec![];
                }
                let root = BigRational::new(sn, sd);
                vec![Scalar::Rational(root.clone()), Scalar::Rational(-root)]
            }
            Scalar::Residue { value, modulus } => {
                let p = *modulus as u64;
                let v = *value as u64;
                (0..p)
                    .filter(|y| y * y % p == v)
                    .map(|y| Scalar::Residue {
                        value: y as u32,
                        modulus: *modulus,
                    })
                    .collect()
            }
        }
    }

    pub fn is_square(&self) -> bool {
        !self.square_roots().is_empty()
    }

    /// The rational value, if this is a rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    fn combine(&self, rhs: &Scalar, rat: impl Fn(&BigRational, &BigRational) -> BigRational, md: impl Fn(u64, u64, u64) -> u64) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(rat(a, b)),
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => {
                if p != q {
                    mixed();
                }
                Scalar::Residue {
                    value: md(*a as u64, *b as u64, *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mixed(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a + b, |a, b, p| (a + b) % p)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a - b, |a, b, p| (a + p - b) % p)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.combine(rhs, |a, b| a * b, |a, b, p| a * b % p)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { self.$m(&rhs) }
        }
    )*};
}
owned_binops!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Sum of a nonempty iterator of scalars of field `field`.
pub fn sum<'a>(field: Field, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    items.into_iter().fold(field.zero(), |acc, x| acc + x)
}

pub fn product<'a>(field: Field, items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    items.into_iter().fold(field.one(), |acc, x| acc * x)
}
