//! Gaussian integers, the digit alphabet, the nearest-integer map and the
//! dihedral symmetry group of the unit square.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::{QuadComplex, QuadScalar};

/// A Gaussian integer with arbitrary-precision coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussianInt::new(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    /// True iff the norm is 1, i.e. the value is one of the four units.
    pub fn is_unit(&self) -> bool {
        self.norm() == BigInt::from(1)
    }

    /// Digit alphabet membership: everything except zero and the four units.
    pub fn is_digit(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    /// `min(|re|, |im|)`.
    pub fn pm(&self) -> BigInt {
        self.re.abs().min(self.im.abs())
    }

    /// `max(|re|, |im|)`, the Chebyshev magnitude.
    pub fn linf(&self) -> BigInt {
        self.re.abs().max(self.im.abs())
    }

    pub fn conj(&self) -> Self {
        GaussianInt::new(self.re.clone(), -self.im.clone())
    }

    /// Multiplication by `i`.
    pub fn times_i(&self) -> Self {
        GaussianInt::new(-self.im.clone(), self.re.clone())
    }

    pub fn to_quad(&self) -> QuadComplex {
        QuadComplex::new(
            QuadScalar::from_bigint(self.re.clone()),
            QuadScalar::from_bigint(self.im.clone()),
        )
    }

    pub fn to_i64_pair(&self) -> Option<(i64, i64)> {
        Some((self.re.to_i64()?, self.im.to_i64()?))
    }

    pub fn require_digit(&self) -> Result<()> {
        if self.is_digit() {
            Ok(())
        } else {
            Err(Error::InvalidDigit(self.to_string()))
        }
    }
}

impl From<(i64, i64)> for GaussianInt {
    fn from((re, im): (i64, i64)) -> Self {
        GaussianInt::new(re, im)
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        GaussianInt::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        let re = &self.re * &rhs.re - &self.im * &rhs.im;
        let im = &self.re * &rhs.im + &self.im * &rhs.re;
        GaussianInt { re, im }
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt::new(-self.re, -self.im)
    }
}

impl fmt::Debug for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_positive() {
            write!(f, "{}+{}i", self.re, self.im)
        } else {
            write!(f, "{}{}i", self.re, self.im)
        }
    }
}

impl Serialize for GaussianInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_i64_pair() {
            Some(pair) => pair.serialize(s),
            None => (self.re.to_string(), self.im.to_string()).serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for GaussianInt {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let (re, im) = <(i64, i64)>::deserialize(de)?;
        Ok(GaussianInt::new(re, im))
    }
}

/// The nearest Gaussian integer `[z] = floor(Re z + 1/2) + i floor(Im z + 1/2)`.
///
/// The floor form breaks ties toward the larger coordinate, which is what
/// makes the digit expansion unique.
pub fn nearest_gaussian(z: &QuadComplex) -> GaussianInt {
    GaussianInt {
        re: z.re.round_half_up(),
        im: z.im.round_half_up(),
    }
}

/// Membership in the half-open fundamental square
/// `-1/2 <= Re z < 1/2, -1/2 <= Im z < 1/2`.
pub fn in_fundamental_domain(z: &QuadComplex) -> bool {
    nearest_gaussian(z).is_zero()
}

/// An element of the dihedral group generated by `z -> iz` and conjugation,
/// acting as `z -> i^rot * z` or `z -> i^rot * conj(z)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symmetry {
    rot: u8,
    mirror: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry {
        rot: 0,
        mirror: false,
    };
    /// `z -> iz`.
    pub const ROTA: Symmetry = Symmetry {
        rot: 1,
        mirror: false,
    };
    /// `z -> conj(z)`.
    pub const MIR1: Symmetry = Symmetry {
        rot: 0,
        mirror: true,
    };
    /// `z -> -conj(z)`, i.e. `Rota^2 . Mir1`.
    pub const MIR2: Symmetry = Symmetry {
        rot: 2,
        mirror: true,
    };

    pub fn new(rot: u8, mirror: bool) -> Self {
        Symmetry {
            rot: rot % 4,
            mirror,
        }
    }

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for r in 0..4u8 {
            out[r as usize] = Symmetry::new(r, false);
            out[4 + r as usize] = Symmetry::new(r, true);
        }
        out
    }

    pub fn rot(&self) -> u8 {
        self.rot
    }

    pub fn is_mirror(&self) -> bool {
        self.mirror
    }

    /// Group composition: `(self . other)(z) = self(other(z))`.
    pub fn compose(&self, other: &Symmetry) -> Symmetry {
        let rot = if self.mirror {
            (self.rot + 4 - other.rot) % 4
        } else {
            (self.rot + other.rot) % 4
        };
        Symmetry::new(rot, self.mirror ^ other.mirror)
    }

    pub fn inverse(&self) -> Symmetry {
        if self.mirror {
            // Reflections are involutions.
            *self
        } else {
            Symmetry::new((4 - self.rot) % 4, false)
        }
    }

    pub fn apply_gaussian(&self, z: &GaussianInt) -> GaussianInt {
        let mut w = if self.mirror { z.conj() } else { z.clone() };
        for _ in 0..self.rot {
            w = w.times_i();
        }
        w
    }

    pub fn apply_quad(&self, z: &QuadComplex) -> QuadComplex {
        let mut w = if self.mirror { z.conj() } else { z.clone() };
        for _ in 0..self.rot {
            w = w.times_i();
        }
        w
    }
}

impl fmt::Debug for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rot, self.mirror) {
            (0, false) => write!(f, "id"),
            (r, false) => write!(f, "Rota^{r}"),
            (0, true) => write!(f, "Mir1"),
            (2, true) => write!(f, "Mir2"),
            (r, true) => write!(f, "Rota^{r}.Mir1"),
        }
    }
}
