//! Midpoint-radius complex intervals with exact rational arithmetic.
//!
//! Midpoints and radii are arbitrary-precision rationals, so the usual
//! outward-rounding bookkeeping reduces to exact inequalities; only the
//! reciprocal needs a certified lower bound on the midpoint modulus, which
//! an integer square root provides.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::quad::QuadComplex;

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct ComplexBall {
    pub re: BigRational,
    pub im: BigRational,
    pub rad: BigRational,
}

/// Exact lower bound for `sqrt(x)`: `isqrt(p*q)/q` for `x = p/q`.
fn sqrt_lower(x: &BigRational) -> BigRational {
    assert!(!x.is_negative());
    let pq = x.numer() * x.denom();
    BigRational::new(pq.sqrt(), x.denom().clone())
}

impl ComplexBall {
    pub fn exact(re: BigRational, im: BigRational) -> ComplexBall {
        ComplexBall {
            re,
            im,
            rad: BigRational::zero(),
        }
    }

    pub fn new(re: BigRational, im: BigRational, rad: BigRational) -> ComplexBall {
        assert!(!rad.is_negative(), "negative radius");
        ComplexBall { re, im, rad }
    }

    pub fn from_f64(re: f64, im: f64, rad: f64) -> Option<ComplexBall> {
        Some(ComplexBall::new(
            BigRational::from_float(re)?,
            BigRational::from_float(im)?,
            BigRational::from_float(rad)?,
        ))
    }

    pub fn mid_norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Does the ball provably contain the exact point?
    pub fn contains_quad(&self, z: &QuadComplex) -> bool {
        let dre = z.re.clone() - crate::quad::QuadScalar::from_rational(self.re.clone());
        let dim = z.im.clone() - crate::quad::QuadScalar::from_rational(self.im.clone());
        let d2 = dre.clone() * dre + dim.clone() * dim;
        let r2 = crate::quad::QuadScalar::from_rational(&self.rad * &self.rad);
        d2.cmp_exact(&r2) != std::cmp::Ordering::Greater
    }

    pub fn sub_gaussian(&self, g: &GaussianInt) -> ComplexBall {
        ComplexBall {
            re: &self.re - BigRational::from(g.re.clone()),
            im: &self.im - BigRational::from(g.im.clone()),
            rad: self.rad.clone(),
        }
    }

    /// Certified enclosure of `1/z` over the ball. Fails when the ball is
    /// too coarse to exclude zero.
    pub fn recip(&self) -> Result<ComplexBall> {
        let n2 = self.mid_norm_sqr();
        if n2.is_zero() {
            return Err(Error::Undecidable("ball centered at zero".into()));
        }
        // Lower bound L <= |mid|; need rad < L for a certified enclosure.
        let low = sqrt_lower(&n2);
        if low <= self.rad {
            return Err(Error::Undecidable(
                "ball radius reaches the origin; refine the input".into(),
            ));
        }
        // 1/z = conj(mid)/|mid|^2 with |1/z - 1/mid| <= rad/(|mid| (|mid| - rad)).
        let re = &self.re / &n2;
        let im = -(&self.im / &n2);
        let rad = &self.rad / (&low * (&low - &self.rad));
        Ok(ComplexBall::new(re, im, rad))
    }

    /// The nearest Gaussian integer, when it is constant over the ball.
    pub fn nearest_gaussian(&self) -> Result<GaussianInt> {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let coord = |mid: &BigRational| -> Result<BigInt> {
            let lo = (mid - &self.rad + &half).floor().to_integer();
            let hi = (mid + &self.rad + &half).floor().to_integer();
            if lo == hi {
                Ok(lo)
            } else {
                Err(Error::Undecidable(
                    "ball straddles a rounding tie line".into(),
                ))
            }
        };
        Ok(GaussianInt {
            re: coord(&self.re)?,
            im: coord(&self.im)?,
        })
    }

    pub fn to_f64_triplet(&self) -> (f64, f64, f64) {
        use num_traits::ToPrimitive;
        (
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
            self.rad.to_f64().unwrap_or(f64::NAN),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn nearest_is_undecidable_on_tie_lines() {
        let b = ComplexBall::new(rat(1, 2), rat(0, 1), rat(1, 100));
        assert!(matches!(b.nearest_gaussian(), Err(Error::Undecidable(_))));
        let c = ComplexBall::new(rat(49, 100), rat(0, 1), rat(1, 1000));
        assert_eq!(c.nearest_gaussian().unwrap(), GaussianInt::zero());
    }

    #[test]
    fn recip_encloses_true_value() {
        // Ball around 1/2 + i/3 with small radius; 1/z for z = mid is in
        // the enclosure, and so is 1/(mid + rad/2).
        let b = ComplexBall::new(rat(1, 2), rat(1, 3), rat(1, 50));
        let r = b.recip().unwrap();
        let mid = QuadComplex::from_rationals(rat(1, 2), rat(1, 3));
        assert!(r.contains_quad(&mid.recip()));
        let shifted = QuadComplex::from_rationals(rat(1, 2) + rat(1, 100), rat(1, 3));
        assert!(r.contains_quad(&shifted.recip()));
    }

    #[test]
    fn recip_rejects_zero_straddling() {
        let b = ComplexBall::new(rat(1, 100), rat(0, 1), rat(1, 10));
        assert!(matches!(b.recip(), Err(Error::Undecidable(_))));
    }
}
