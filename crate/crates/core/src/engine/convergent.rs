//! Convergent numerators and denominators from the standard matrix
//! recurrence.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::quad::{QuadComplex, QuadScalar};
use crate::shift::Word;

/// One convergent `p_n / q_n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ConvergentPair {
    pub n: usize,
    pub p: GaussianInt,
    pub q: GaussianInt,
}

impl ConvergentPair {
    /// Exact value `p/q` as a Gaussian rational.
    pub fn value(&self) -> Result<QuadComplex> {
        if self.q.is_zero() {
            return Err(Error::ZeroDenominator(self.n));
        }
        Ok(self.p.to_quad() / self.q.to_quad())
    }
}

/// Convergents of `[0; a_1, ..., a_n]` for `n = 0..=|w|`, from the seeds
/// `p_{-1} = 1, p_{-2} = 0, q_{-1} = 0, q_{-2} = 1` (so `p_0/q_0 = 0/1`).
pub fn convergents(w: &Word) -> Vec<ConvergentPair> {
    let mut out = Vec::with_capacity(w.len() + 1);
    let mut p_prev = GaussianInt::new(1, 0); // p_{-1}
    let mut p = GaussianInt::zero(); // p_0 (a_0 = 0)
    let mut q_prev = GaussianInt::zero(); // q_{-1}
    let mut q = GaussianInt::new(1, 0); // q_0
    out.push(ConvergentPair {
        n: 0,
        p: p.clone(),
        q: q.clone(),
    });
    for (i, a) in w.digits().iter().enumerate() {
        let p_next = a.clone() * p.clone() + p_prev.clone();
        let q_next = a.clone() * q.clone() + q_prev.clone();
        p_prev = p;
        q_prev = q;
        p = p_next;
        q = q_next;
        out.push(ConvergentPair {
            n: i + 1,
            p: p.clone(),
            q: q.clone(),
        });
    }
    out
}

/// `phi^k` as an exact element of `Q(sqrt 5)`, where `phi = (1+sqrt5)/2`
/// is the square of the convergent growth constant.
pub fn phi_pow(k: u32) -> QuadScalar {
    let phi = QuadScalar::new(
        num_rational::BigRational::new(1.into(), 2.into()),
        num_rational::BigRational::new(1.into(), 2.into()),
        5,
    );
    let mut acc = QuadScalar::one();
    for _ in 0..k {
        acc = acc * phi.clone();
    }
    acc
}

/// Exact check of the growth law `|q_n| >= psi^{n-1}`, i.e.
/// `|q_n|^2 >= phi^{n-1}`.
pub fn q_growth_holds(pair: &ConvergentPair) -> bool {
    if pair.n == 0 {
        // |q_0| = 1 >= psi^{-1}.
        return !pair.q.is_zero();
    }
    let lhs = QuadScalar::from_bigint(pair.q.norm());
    let rhs = phi_pow((pair.n - 1) as u32);
    lhs.cmp_exact(&rhs) != std::cmp::Ordering::Less
}

/// Exact check that `|q|` is strictly increasing along the list.
pub fn q_strictly_increasing(pairs: &[ConvergentPair]) -> bool {
    pairs.windows(2).all(|w| {
        let a: BigInt = w[0].q.norm();
        let b: BigInt = w[1].q.norm();
        a < b
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_two_gives_two_fifths() {
        let w = Word::from_pairs(&[(2, 0), (2, 0)]).unwrap();
        let cs = convergents(&w);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[2].p, GaussianInt::new(2, 0));
        assert_eq!(cs[2].q, GaussianInt::new(5, 0));
    }

    #[test]
    fn growth_law_on_small_example()  {
        let w = Word::from_pairs(&[(-2, 0), (1, 3), (2, -2)]).unwrap();
        let cs = convergents(&w);
        assert!(q_strictly_increasing(&cs));
        for c in &cs {
            assert!(q_growth_holds(c), "n={}", c.n);
        }
    }

    #[test]
    fn phi_power_is_exact() {
        // phi^2 = phi + 1
        let phi = phi_pow(1);
        assert_eq!(phi_pow(2), phi.clone() + QuadScalar::one());
    }
}
