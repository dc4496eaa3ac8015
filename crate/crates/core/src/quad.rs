//! Exact scalars `a + b*sqrt(d)` over a fixed squarefree `d`, and complex
//! numbers with such coordinates.
//!
//! Rational values are canonicalized to `d = 0`, so values from different
//! sessions mix freely as long as at most one irrational field is involved.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Strips square factors from `d` and returns `(s, d')` with `d = s^2 * d'`.
fn extract_square(d: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut rest = d;
    let mut p = 2u64;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            s *= p;
        }
        p += 1;
    }
    (s, rest)
}

/// An exact element `a + b*sqrt(d)` of a real quadratic field.
///
/// Invariants: `d` is squarefree; `d == 0` iff the value is rational
/// (`b == 0`). Values with distinct nonzero `d` must never meet in one
/// arithmetic expression; doing so is a programming error and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl QuadScalar {
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Self {
        let (s, d) = extract_square(d);
        let b = b * BigRational::from(BigInt::from(s));
        if d <= 1 {
            // sqrt(0) = 0 and sqrt(1) = 1 collapse to rationals.
            let a = if d == 1 { a + b } else { a };
            return QuadScalar {
                a,
                b: BigRational::zero(),
                d: 0,
            };
        }
        if b.is_zero() {
            return QuadScalar {
                a,
                b,
                d: 0,
            };
        }
        QuadScalar { a, b, d }
    }

    pub fn from_rational(a: BigRational) -> Self {
        QuadScalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from(n))
    }

    /// `p/q` as an exact rational scalar.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `sqrt(d)` itself.
    pub fn sqrt_d(d: u64) -> Self {
        Self::new(BigRational::zero(), BigRational::one(), d)
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field_d(&self) -> u64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact rational value, if the scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn unified_d(&self, other: &Self) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("mixed quadratic fields: sqrt({x}) vs sqrt({y})"),
        }
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sa = rational_sign(&self.a);
        if self.b.is_zero() {
            return sa;
        }
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // Opposite signs: compare a^2 against b^2 * d exactly.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * BigRational::from(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            // a^2 = b^2 d with d squarefree > 1 would make sqrt(d) rational.
            Ordering::Equal => 0,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn cmp_exact(&self, other: &Self) -> Ordering {
        match (self.clone() - other.clone()).signum() {
            x if x < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero QuadScalar");
        if self.b.is_zero() {
            return Self::from_rational(self.a.recip());
        }
        // 1/(a + b sqrt d) = (a - b sqrt d)/(a^2 - b^2 d)
        let denom = &self.a * &self.a - &self.b * &self.b * BigRational::from(BigInt::from(self.d));
        QuadScalar::new(&self.a / &denom, -(&self.b / &denom), self.d)
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        // Start from a float guess, then correct with exact comparisons.
        let mut n = BigInt::from(self.to_f64().floor() as i64);
        loop {
            let lower = self.clone() - Self::from_bigint(n.clone());
            if lower.is_negative() {
                n -= 1;
                continue;
            }
            let upper = Self::from_bigint(&n + 1) - self.clone();
            if !upper.is_positive() {
                n += 1;
                continue;
            }
            return n;
        }
    }

    /// Nearest integer with floor-based tie-break: `floor(x + 1/2)`.
    pub fn round_half_up(&self) -> BigInt {
        (self.clone() + Self::ratio(1, 2)).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let fa = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return fa;
        }
        fa + self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt()
    }

    /// Structural ordering key (not the real-number order): deterministic
    /// and total even across different fields.
    pub fn structural_key(&self) -> (u64, BigRational, BigRational) {
        (self.d, self.a.clone(), self.b.clone())
    }

    /// Exact square root within the value's own field, when one exists.
    pub fn try_sqrt(&self) -> Option<QuadScalar> {
        self.try_sqrt_in(self.d)
    }

    /// Exact square root within `Q(sqrt(session_d))`, when one exists.
    /// Rational inputs may acquire a surd part `q*sqrt(session_d)`.
    pub fn try_sqrt_in(&self, session_d: u64) -> Option<QuadScalar> {
        let sign = self.signum();
        if sign < 0 {
            return None;
        }
        if sign == 0 {
            return Some(QuadScalar::zero());
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(QuadScalar::from_rational(r));
            }
            // sqrt(a) = sqrt(a/d) * sqrt(d) when a/d is a rational square.
            let (_, d) = extract_square(session_d);
            if d >= 2 {
                let q = &self.a / BigRational::from(BigInt::from(d));
                if let Some(r) = rational_sqrt(&q) {
                    return Some(QuadScalar::new(BigRational::zero(), r, d));
                }
            }
            return None;
        }
        // Solve (p + q sqrt d)^2 = a + b sqrt d: p^2 + q^2 d = a, 2pq = b.
        // p^2 is a root of T^2 - a T + b^2 d / 4 = 0.
        let d = BigRational::from(BigInt::from(self.d));
        let disc = &self.a * &self.a - &self.b * &self.b * &d;
        let sq = rational_sqrt(&disc)?;
        for root in [
            (&self.a + &sq) / BigRational::from(BigInt::from(2)),
            (&self.a - &sq) / BigRational::from(BigInt::from(2)),
        ] {
            if root.is_negative() {
                continue;
            }
            if let Some(p) = rational_sqrt(&root) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.b / (BigRational::from(BigInt::from(2)) * &p);
                let cand = QuadScalar::new(p, q, self.d);
                if cand.is_positive() {
                    return Some(cand);
                }
            }
        }
        None
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Exact square root of a nonnegative rational, when it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let num = r.numer();
    let den = r.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

impl Add for QuadScalar {
    type Output = QuadScalar;
    fn add(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.unified_d(&rhs);
        QuadScalar::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for QuadScalar {
    type Output = QuadScalar;
    fn sub(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.unified_d(&rhs);
        QuadScalar::new(self.a - rhs.a, self.b - rhs.b, d)
    }
}

impl Mul for QuadScalar {
    type Output = QuadScalar;
    fn mul(self, rhs: QuadScalar) -> QuadScalar {
        let d = self.unified_d(&rhs);
        let dd = BigRational::from(BigInt::from(d));
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dd;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        QuadScalar::new(a, b, d)
    }
}

impl Div for QuadScalar {
    type Output = QuadScalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QuadScalar) -> QuadScalar {
        self * rhs.recip()
    }
}

impl Neg for QuadScalar {
    type Output = QuadScalar;
    fn neg(self) -> QuadScalar {
        QuadScalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl fmt::Debug for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.d)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Wire form of a [`QuadScalar`]: decimal-string rationals plus the field tag.
#[derive(Serialize, Deserialize)]
struct QuadScalarWire {
    a: String,
    b: String,
    d: u64,
}

impl Serialize for QuadScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuadScalarWire {
            a: self.a.to_string(),
            b: self.b.to_string(),
            d: self.d,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let wire = QuadScalarWire::deserialize(de)?;
        let parse = |s: &str| -> std::result::Result<BigRational, D::Error> {
            s.parse::<BigRational>()
                .map_err(|e| serde::de::Error::custom(format!("bad rational {s:?}: {e}")))
        };
        Ok(QuadScalar::new(parse(&wire.a)?, parse(&wire.b)?, wire.d))
    }
}

/// A complex number whose coordinates live in one real quadratic field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadComplex {
    pub re: QuadScalar,
    pub im: QuadScalar,
}

impl QuadComplex {
    pub fn new(re: QuadScalar, im: QuadScalar) -> Self {
        QuadComplex { re, im }
    }

    pub fn zero() -> Self {
        QuadComplex::new(QuadScalar::zero(), QuadScalar::zero())
    }

    pub fn one() -> Self {
        QuadComplex::new(QuadScalar::one(), QuadScalar::zero())
    }

    pub fn i() -> Self {
        QuadComplex::new(QuadScalar::zero(), QuadScalar::one())
    }

    pub fn from_rationals(re: BigRational, im: BigRational) -> Self {
        QuadComplex::new(QuadScalar::from_rational(re), QuadScalar::from_rational(im))
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        QuadComplex::new(QuadScalar::from_int(re), QuadScalar::from_int(im))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_gaussian_rational(&self) -> bool {
        self.re.is_rational() && self.im.is_rational()
    }

    pub fn conj(&self) -> Self {
        QuadComplex::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        QuadComplex::new(-self.im.clone(), self.re.clone())
    }

    pub fn norm_sqr(&self) -> QuadScalar {
        self.re.clone() * self.re.clone() + self.im.clone() * self.im.clone()
    }

    /// Exact inverse; panics on zero.
    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero QuadComplex");
        let inv = n.recip();
        QuadComplex::new(self.re.clone() * inv.clone(), -(self.im.clone() * inv))
    }

    pub fn scale(&self, s: &QuadScalar) -> Self {
        QuadComplex::new(self.re.clone() * s.clone(), self.im.clone() * s.clone())
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl Add for QuadComplex {
    type Output = QuadComplex;
    fn add(self, rhs: QuadComplex) -> QuadComplex {
        QuadComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for QuadComplex {
    type Output = QuadComplex;
    fn sub(self, rhs: QuadComplex) -> QuadComplex {
        QuadComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for QuadComplex {
    type Output = QuadComplex;
    fn mul(self, rhs: QuadComplex) -> QuadComplex {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        QuadComplex::new(re, im)
    }
}

impl Div for QuadComplex {
    type Output = QuadComplex;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: QuadComplex) -> QuadComplex {
        self * rhs.recip()
    }
}

impl Neg for QuadComplex {
    type Output = QuadComplex;
    fn neg(self) -> QuadComplex {
        QuadComplex::new(-self.re, -self.im)
    }
}

impl fmt::Debug for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

impl fmt::Display for QuadComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + ({})i", self.re, self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64, d: u64) -> QuadScalar {
        QuadScalar::new(
            BigRational::from(BigInt::from(a)),
            BigRational::from(BigInt::from(b)),
            d,
        )
    }

    #[test]
    fn sign_of_mixed_terms() {
        // 2 - sqrt(3) > 0, 1 - sqrt(3) < 0
        assert_eq!(s(2, -1, 3).signum(), 1);
        assert_eq!(s(1, -1, 3).signum(), -1);
        assert_eq!(s(-2, 1, 3).signum(), -1);
        assert_eq!(s(-1, 1, 3).signum(), 1);
        assert_eq!(s(0, 0, 3).signum(), 0);
    }

    #[test]
    fn floor_is_exact_near_integers() {
        // sqrt(3) = 1.732...
        assert_eq!(s(0, 1, 3).floor(), BigInt::from(1));
        assert_eq!(s(0, -1, 3).floor(), BigInt::from(-2));
        assert_eq!(s(2, -1, 3).floor(), BigInt::from(0));
        assert_eq!(QuadScalar::ratio(-1, 2).floor(), BigInt::from(-1));
        assert_eq!(QuadScalar::ratio(1, 2).round_half_up(), BigInt::from(1));
    }

    #[test]
    fn field_inverse_roundtrip() {
        let x = s(2, -1, 3); // 2 - sqrt 3
        let prod = x.clone() * x.recip();
        assert_eq!(prod, QuadScalar::one());
    }

    #[test]
    fn square_extraction() {
        // sqrt(12) = 2 sqrt(3)
        let x = QuadScalar::new(BigRational::zero(), BigRational::one(), 12);
        assert_eq!(x.field_d(), 3);
        assert_eq!(x, s(0, 2, 3));
    }

    #[test]
    fn sqrt_in_field() {
        // 7 - 4 sqrt 3 = (2 - sqrt 3)^2
        let x = s(7, -4, 3);
        let r = x.try_sqrt().unwrap();
        assert_eq!(r, s(2, -1, 3));
        assert!(s(2, 0, 3).try_sqrt_in(3).is_none()); // sqrt 2 not in Q(sqrt 3)
        assert_eq!(s(3, 0, 3).try_sqrt_in(3).unwrap(), s(0, 1, 3)); // sqrt 3 in field
    }

    #[test]
    fn complex_inverse_roundtrip() {
        let z = QuadComplex::new(s(1, 1, 3), s(-2, 1, 3));
        let w = z.clone() * z.recip();
        assert_eq!(w, QuadComplex::one());
    }
}
