//! Univariate polynomials over a [`Field`] and their roots in that field.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{is_prime, Field, Scalar};

/// Coefficients in ascending order of degree, without trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Polynomial {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Polynomial {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: Field) -> Polynomial {
        Polynomial { field, coeffs: vec![] }
    }

    pub fn constant(c: Scalar) -> Polynomial {
        Polynomial::new(c.field(), vec![c])
    }

    /// λ - r
    pub fn linear(r: &Scalar) -> Polynomial {
        let f = r.field();
        Polynomial::new(f, vec![-r, f.one()])
    }

    /// ∏ (λ - r)
    pub fn from_roots(field: Field, roots: &[Scalar]) -> Polynomial {
        roots
            .iter()
            .fold(Polynomial::constant(field.one()), |acc, r| acc.mul(&Polynomial::linear(r)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.int(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Polynomial::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Polynomial::new(self.field, quot), Polynomial::new(self.field, rem))
    }

    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// No repeated factor over any extension field.
    pub fn is_square_free(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Roots lying in the base field with their multiplicities, ascending.
    pub fn roots(&self) -> Vec<(Scalar, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let candidates = match self.field {
            Field::Prime(_) => self.field.elements().unwrap(),
            Field::Rationals => rational_root_candidates(self),
        };
        let deg = self.degree().unwrap_or(0);
        let mut found = 0;
        let mut out = Vec::new();
        for r in candidates {
            if found == deg {
                break;
            }
            if !self.eval(&r).is_zero() {
                continue;
            }
            let lin = Polynomial::linear(&r);
            let mut p = self.clone();
            let mut mult = 0;
            loop {
                let (q, rem) = p.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                mult += 1;
                p = q;
            }
            if mult > 0 {
                found += mult;
                out.push((r, mult));
            }
        }
        out.sort();
        out
    }

    /// Roots as a multiset, ascending; true when they account for the whole degree.
    pub fn split_roots(&self) -> (bool, Vec<Scalar>) {
        let roots = self.roots();
        let count: usize = roots.iter().map(|(_, m)| m).sum();
        let flat = roots
            .into_iter()
            .flat_map(|(r, m)| std::iter::repeat_n(r, m))
            .collect();
        (Some(count) == self.degree(), flat)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = i == 0 || !c.is_one();
            if show_coeff {
                write!(f, "({c})")?;
            }
            match i {
                0 => {}
                1 => write!(f, "λ")?,
                _ => write!(f, "λ^{i}")?,
            }
        }
        Ok(())
    }
}

// Rational roots: take the square-free part, clear denominators, find roots
// modulo a good prime, lift them p-adically and reconstruct the fraction.
// Each reconstructed candidate is confirmed by exact division in `roots`.
fn rational_root_candidates(poly: &Polynomial) -> Vec<Scalar> {
    let field = poly.field;
    let mut g = poly.clone();
    let mut out = Vec::new();
    if g.coeff(0).is_zero() {
        out.push(field.zero());
        let shift = g.coeffs.iter().take_while(|c| c.is_zero()).count();
        g = Polynomial::new(field, g.coeffs[shift..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let g = g.div_rem(&g.gcd(&g.derivative())).0;
    if g.degree() == Some(0) {
        return out;
    }
    let ints = integer_primitive(&g);
    let lc = ints.last().unwrap().abs();
    let c0 = ints[0].abs();
    let bound = std::cmp::max(lc.clone(), c0.clone());
    let target: BigInt = BigInt::from(2) * &bound * &bound;

    let mut p: u64 = 3;
    let residues = loop {
        p += 2;
        if !is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let gp: Vec<u64> = ints
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap())
            .collect();
        if !square_free_mod(&gp, p) {
            continue;
        }
        break (0..p).filter(|&r| eval_mod(&gp, r, p) == 0).collect::<Vec<_>>();
    };

    let pb = BigInt::from(p);
    for r0 in residues {
        let mut m = pb.clone();
        let mut r = BigInt::from(r0);
        while m <= target {
            // Newton step modulo m²: r ← r - g(r)/g'(r)
            let m2 = &m * &m;
            let val = eval_big(&ints, &r, &m2);
            let der = eval_big(&derivative_big(&ints), &r, &m2);
            let inv = mod_inverse(&der, &m2).expect("simple root stays simple");
            r = (&r - &val * inv).mod_floor(&m2);
            m = m2;
        }
        if let Some((a, b)) = reconstruct(&r, &m, &bound) {
            out.push(Scalar::Rational(num_rational::BigRational::new(a, b)));
        }
    }
    out
}

fn integer_primitive(poly: &Polynomial) -> Vec<BigInt> {
    let rats: Vec<_> = poly
        .coeffs
        .iter()
        .map(|c| c.as_rational().expect("rational polynomial").clone())
        .collect();
    let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &den).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &content).collect()
}

fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, c| (acc * x + c) % p)
}

fn trim_mod(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn square_free_mod(coeffs: &[u64], p: u64) -> bool {
    let f = trim_mod(coeffs.to_vec());
    let df = trim_mod(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * (i as u64 % p) % p)
            .collect(),
    );
    if df.is_empty() {
        return false;
    }
    let mut a = f;
    let mut b = df;
    while !b.is_empty() {
        let r = rem_mod(&a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn rem_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = pow_u64(b[db], p - 2, p);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1] * inv % p;
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        r.pop();
        r = trim_mod(r);
    }
    trim_mod(r)
}

fn pow_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn eval_big(coeffs: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn derivative_big(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

// Find a/b ≡ r (mod m) with |a| ≤ bound and 0 < b ≤ bound.
fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || &t1.abs() > bound {
        return None;
    }
    let (a, b) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    Some((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.int(n)
    }

    fn qr(n: i64, d: i64) -> Scalar {
        Field::Rationals.ratio(n, d)
    }

    #[test]
    fn division_and_gcd() {
        let f = Field::Rationals;
        let a = Polynomial::from_roots(f, &[q(1), q(2), q(2)]);
        let b = Polynomial::from_roots(f, &[q(2), q(3)]);
        assert_eq!(a.gcd(&b), Polynomial::linear(&q(2)));
        let (quo, rem) = a.div_rem(&b);
        assert_eq!(quo.mul(&b).add(&rem), a);
        assert!(!a.is_square_free());
        assert!(b.is_square_free());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let f = Field::Rationals;
        let roots = [qr(-63, 8), qr(-3, 2), qr(3, 2), qr(3, 2), q(0), qr(1024, 3)];
        let p = Polynomial::from_roots(f, &roots).scale(&qr(7, 5));
        let found = p.roots();
        assert_eq!(
            found,
            vec![(qr(-63, 8), 1), (qr(-3, 2), 1), (q(0), 1), (qr(3, 2), 2), (qr(1024, 3), 1)]
        );
    }

    #[test]
    fn irrational_roots_are_absent() {
        // λ² - λ - 1
        let p = Polynomial::new(Field::Rationals, vec![q(-1), q(-1), q(1)]);
        assert!(p.roots().is_empty());
        let (split, _) = p.split_roots();
        assert!(!split);
        // (λ² - 2)(λ - 5)
        let p = Polynomial::new(Field::Rationals, vec![q(-2), q(0), q(1)])
            .mul(&Polynomial::linear(&q(5)));
        assert_eq!(p.roots(), vec![(q(5), 1)]);
    }

    #[test]
    fn large_rational_roots() {
        let f = Field::Rationals;
        let big = qr(123_456_789_012_345, 1 << 40);
        let p = Polynomial::from_roots(f, &[big.clone(), -big.clone(), qr(1, 3)]);
        assert_eq!(p.roots().len(), 3);
    }

    #[test]
    fn prime_field_roots() {
        let f = Field::prime(7).unwrap();
        // λ² - 4λ + 2 has discriminant 8 ≡ 1
        let p = Polynomial::new(f, vec![f.int(2), f.int(-4), f.int(1)]);
        assert_eq!(p.roots(), vec![(f.int(5), 1), (f.int(6), 1)]);
    }

    #[test]
    fn derivative_in_small_characteristic() {
        let f = Field::prime(3).unwrap();
        // λ³ has derivative 3λ² = 0
        let p = Polynomial::from_roots(f, &[f.zero(), f.zero(), f.zero()]);
        assert!(p.derivative().is_zero());
        assert!(!p.is_square_free());
    }
}
