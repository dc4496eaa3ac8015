//! Exact constants of the quadratic orbit on the square's boundary.

use num_rational::BigRational;

use crate::quad::{QuadComplex, QuadScalar};

/// `alpha = (2 - sqrt 3)/2`, the imaginary offset of the boundary fixed
/// orbit.
pub fn alpha() -> QuadScalar {
    QuadScalar::new(
        BigRational::from_integer(1.into()),
        BigRational::new((-1).into(), 2.into()),
        3,
    )
}

/// The four distinguished boundary points:
/// `zeta_1 = -1/2 + i a`, `zeta_2 = -1/2 - i a`,
/// `zeta_3 = -a - i/2`, `zeta_4 = a - i/2` with `a = alpha()`.
pub fn zeta(k: u8) -> QuadComplex {
    let a = alpha();
    let half = QuadScalar::ratio(1, 2);
    match k {
        1 => QuadComplex::new(-half, a),
        2 => QuadComplex::new(-half, -a),
        3 => QuadComplex::new(-a, -half),
        4 => QuadComplex::new(a, -half),
        _ => panic!("zeta index must be 1..=4"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::expand::gauss_map;
    use crate::gaussian::GaussianInt;

    /// The exact one-step identities of the boundary orbit.
    #[test]
    fn zeta_orbit_identities() {
        let cases = [
            (1u8, GaussianInt::new(-2, 0), 4u8),
            (2, GaussianInt::new(-2, 1), 4),
            (3, GaussianInt::new(0, 2), 2),
            (4, GaussianInt::new(1, 2), 2),
        ];
        for (from, digit, to) in cases {
            let (d, next) = gauss_map(&zeta(from)).unwrap();
            assert_eq!(d, digit, "digit of zeta_{from}");
            assert_eq!(next, zeta(to), "image of zeta_{from}");
        }
    }

    #[test]
    fn alpha_squares_correctly() {
        // alpha^2 = (7 - 4 sqrt 3)/4 and 1/4 + alpha^2 = 2 - sqrt 3.
        let a = alpha();
        let lhs = QuadScalar::ratio(1, 4) + a.clone() * a;
        let rhs = QuadScalar::new(
            BigRational::from_integer(2.into()),
            BigRational::from_integer((-1).into()),
            3,
        );
        assert_eq!(lhs, rhs);
    }
}
