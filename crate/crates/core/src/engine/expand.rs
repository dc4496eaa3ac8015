//! The complex Gauss map and digit expansion for exact and ball inputs.

use serde::Serialize;

use super::ball::ComplexBall;
use crate::error::{Error, Result};
use crate::gaussian::{in_fundamental_domain, nearest_gaussian, GaussianInt};
use crate::quad::QuadComplex;

/// `T(z) = 1/z - [1/z]` together with the digit `[1/z]`.
pub fn gauss_map(z: &QuadComplex) -> Result<(GaussianInt, QuadComplex)> {
    if z.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !in_fundamental_domain(z) {
        return Err(Error::PreconditionViolated(format!(
            "{z} is outside the fundamental square"
        )));
    }
    let w = z.recip();
    let digit = nearest_gaussian(&w);
    debug_assert!(digit.is_digit(), "gauss map produced a unit digit");
    let next = w - digit.to_quad();
    Ok((digit, next))
}

/// A digit expansion `[a_0; a_1, a_2, ...]`.
#[derive(Clone, Debug, Serialize)]
pub struct Expansion {
    pub a0: GaussianInt,
    pub digits: Vec<GaussianInt>,
    /// The orbit hit zero: the input was a Gaussian rational and the
    /// expansion is complete.
    pub terminated: bool,
}

/// Expands an exact value: peels the integer part, then iterates the Gauss
/// map for up to `n_digits` digits. Terminates early exactly on Gaussian
/// rationals.
pub fn expand(z: &QuadComplex, n_digits: usize) -> Result<Expansion> {
    let a0 = nearest_gaussian(z);
    let mut y = z.clone() - a0.to_quad();
    let mut digits = Vec::new();
    let mut terminated = false;
    for _ in 0..n_digits {
        if y.is_zero() {
            terminated = true;
            break;
        }
        let (d, next) = gauss_map(&y)?;
        digits.push(d);
        y = next;
    }
    if !terminated && y.is_zero() {
        terminated = true;
    }
    Ok(Expansion {
        a0,
        digits,
        terminated,
    })
}

/// Expands a ball input. Digits are produced while they are certified;
/// the expansion stops with `Undecidable` when the ball becomes too coarse
/// to decide a digit (callers refine the input radius and retry).
pub fn expand_ball(z: &ComplexBall, n_digits: usize) -> Result<Expansion> {
    let a0 = z.nearest_gaussian()?;
    let mut y = z.sub_gaussian(&a0);
    let mut digits = Vec::new();
    for _ in 0..n_digits {
        let inv = y.recip()?;
        let d = inv.nearest_gaussian()?;
        if !d.is_digit() {
            // Happens only when the underlying exact value is a Gaussian
            // rational whose orbit hit zero (digit 0), or the ball is
            // garbage; both are undecidable at finite radius.
            return Err(Error::Undecidable(
                "ball orbit reached an undecidable small value".into(),
            ));
        }
        y = inv.sub_gaussian(&d);
        digits.push(d);
    }
    Ok(Expansion {
        a0,
        digits,
        terminated: false,
    })
}

/// Expands with the orbit tail returned as well (used by the shift/Gauss
/// conjugacy tests).
pub fn expand_with_tail(z: &QuadComplex, n_digits: usize) -> Result<(Expansion, QuadComplex)> {
    let a0 = nearest_gaussian(z);
    let mut y = z.clone() - a0.to_quad();
    let mut digits = Vec::new();
    let mut terminated = false;
    for _ in 0..n_digits {
        if y.is_zero() {
            terminated = true;
            break;
        }
        let (d, next) = gauss_map(&y)?;
        digits.push(d);
        y = next;
    }
    Ok((
        Expansion {
            a0,
            digits,
            terminated,
        },
        y,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadScalar;

    #[test]
    fn sqrt_two_minus_one_has_constant_digits() {
        // sqrt(2) - 1 = [0; 2, 2, 2, ...]
        let z = QuadComplex::new(
            QuadScalar::new(
                num_rational::BigRational::from_integer((-1).into()),
                num_rational::BigRational::from_integer(1.into()),
                2,
            ),
            QuadScalar::zero(),
        );
        let e = expand(&z, 8).unwrap();
        assert_eq!(e.a0, GaussianInt::zero());
        assert!(!e.terminated);
        for d in &e.digits {
            assert_eq!(d, &GaussianInt::new(2, 0));
        }
    }

    #[test]
    fn gaussian_rationals_terminate_and_roundtrip() {
        let z = QuadComplex::from_rationals(
            num_rational::BigRational::new(3.into(), 13.into()),
            num_rational::BigRational::new((-2).into(), 13.into()),
        );
        let e = expand(&z, 64).unwrap();
        assert!(e.terminated);
        // Re-evaluate: a0 + [0; digits] must reproduce z exactly.
        let w = crate::shift::Word::new(e.digits.clone()).unwrap();
        let cs = crate::engine::convergent::convergents(&w);
        let tail = cs.last().unwrap().value().unwrap();
        let back = e.a0.to_quad() + tail;
        assert_eq!(back, z);
    }

    #[test]
    fn ball_expansion_matches_exact() {
        let re = num_rational::BigRational::new(29.into(), 101.into());
        let im = num_rational::BigRational::new(17.into(), 103.into());
        let z = QuadComplex::from_rationals(re.clone(), im.clone());
        let exact = expand(&z, 16).unwrap();
        let n = exact.digits.len().min(4);
        assert!(n >= 3, "test value expands far enough");
        let ball = ComplexBall::new(
            re,
            im,
            num_rational::BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(40)),
        );
        let via_ball = expand_ball(&ball, n).unwrap();
        assert_eq!(exact.digits[..n], via_ball.digits[..]);
    }

    #[test]
    fn zero_input_is_rejected_by_gauss_map() {
        assert!(matches!(
            gauss_map(&QuadComplex::zero()),
            Err(Error::ZeroInput)
        ));
    }
}
