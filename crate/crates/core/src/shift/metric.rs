//! The dyadic metric on digit sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::word::DigitStream;

/// Distance `2^-n` where `n` is the first (1-based) index at which the two
/// streams disagree within the horizon; `0` when they agree throughout.
pub fn shift_distance(a: &dyn DigitStream, b: &dyn DigitStream, horizon: usize) -> BigRational {
    for i in 0..horizon {
        if a.digit(i) != b.digit(i) {
            let n = (i + 1) as u32;
            return BigRational::new(BigInt::one(), BigInt::from(2u8).pow(n));
        }
    }
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::word::Word;

    #[test]
    fn distance_examples() {
        let a = Word::from_pairs(&[(-2, 0), (3, 0), (4, 0)]).unwrap();
        let b = Word::from_pairs(&[(-2, 0), (3, 0), (4, 0)]).unwrap();
        assert!(shift_distance(&a, &b, 3).is_zero());
        let c = Word::from_pairs(&[(2, 0), (3, 0), (4, 0)]).unwrap();
        assert_eq!(
            shift_distance(&a, &c, 3),
            BigRational::new(1.into(), 2.into())
        );
        let d = Word::from_pairs(&[(-2, 0), (3, 0), (5, 0)]).unwrap();
        assert_eq!(
            shift_distance(&a, &d, 3),
            BigRational::new(1.into(), 8.into())
        );
    }
}
