//! Certified evaluation of digit sequences in the closed shift.

use num_rational::BigRational;
use num_traits::Signed;

use super::ball::ComplexBall;
use super::convergent::{convergents, phi_pow};
use crate::error::{Error, Result};
use crate::quad::QuadScalar;
use crate::shift::{DigitStream, SoficGraph};

/// Smallest prefix length `m >= 2` with `phi^{m-1} >= 1/target`, so that
/// the convergent error bound `1/|q_m|^2 <= 1/phi^{m-1}` meets the target.
pub fn prefix_length_for(target: &BigRational) -> usize {
    assert!(target.is_positive(), "target radius must be positive");
    let bound = QuadScalar::from_rational(target.recip());
    let mut m = 2usize;
    loop {
        if phi_pow((m - 1) as u32).cmp_exact(&bound) != std::cmp::Ordering::Less {
            return m;
        }
        m += 1;
    }
}

/// Evaluates a sequence from the closed shift to a certified ball of
/// radius at most `target_radius`.
///
/// Every prefix must be regular (graph-checked); otherwise the sequence is
/// outside the domain of the continuous extension and the call fails.
pub fn lambda_bar(
    seq: &dyn DigitStream,
    target_radius: &BigRational,
    graph: &SoficGraph,
) -> Result<ComplexBall> {
    let mut m = prefix_length_for(target_radius);
    loop {
        let w = seq.prefix_word(m)?;
        let states = graph.walk(w.digits())?;
        if let Some(k) = states.iter().position(|s| s.is_none()) {
            return Err(Error::NotInClosedShift(k + 1));
        }
        let cs = convergents(&w);
        let last = cs.last().expect("nonempty");
        let q_norm = BigRational::from(last.q.norm());
        let rad = q_norm.recip();
        if &rad <= target_radius {
            let v = last.value()?;
            let re = v.re.as_rational().expect("gaussian rational").clone();
            let im = v.im.as_rational().expect("gaussian rational").clone();
            return Ok(ComplexBall::new(re, im, rad));
        }
        // The theoretical bound guarantees progress; extend the prefix.
        m += 1;
    }
}

/// The certified modulus-of-continuity radius `2/psi^{m-1}` as an exact
/// upper-bound rational, for prefix length `m`.
pub fn continuity_radius(m: usize) -> BigRational {
    // 2/psi^(m-1) with psi = sqrt(phi): use phi^floor((m-1)/2) as an exact
    // lower bound for psi^(m-1) (psi > 1), conservative but rational.
    let k = ((m - 1) / 2) as u32;
    let phi_k = phi_pow(k);
    // phi^k = a + b sqrt 5 >= a + 2b as a rational lower bound (sqrt5 > 2).
    let lower = phi_k.rational_part().clone()
        + BigRational::from_integer(2.into()) * phi_k.surd_part().clone();
    BigRational::from_integer(2.into()) / lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::{PeriodicStream, Word};
    use num_bigint::BigInt;

    #[test]
    fn prefix_length_grows_with_precision() {
        let coarse = BigRational::new(1.into(), 100.into());
        let fine = BigRational::new(1.into(), BigInt::from(10u8).pow(30));
        assert!(prefix_length_for(&fine) > prefix_length_for(&coarse));
    }

    #[test]
    fn rejects_irregular_sequences() {
        let graph = SoficGraph::build().unwrap();
        let w = Word::from_pairs(&[(-2, 0), (1, 3), (-2, 0), (1, 3), (-2, 0), (1, 3)]).unwrap();
        let r = lambda_bar(&w, &BigRational::new(1.into(), 10.into()), &graph);
        assert!(matches!(r, Err(Error::NotInClosedShift(2))));
    }

    #[test]
    fn periodic_regular_sequence_evaluates() {
        let graph = SoficGraph::build().unwrap();
        // (-2, 2i, 2, -2i) repeated stays regular.
        let s = PeriodicStream {
            pre: vec![],
            cycle: vec![
                crate::gaussian::GaussianInt::new(-2, 0),
                crate::gaussian::GaussianInt::new(0, 2),
                crate::gaussian::GaussianInt::new(2, 0),
                crate::gaussian::GaussianInt::new(0, -2),
            ],
        };
        let target = BigRational::new(1.into(), BigInt::from(10u8).pow(12));
        let ball = lambda_bar(&s, &target, &graph).unwrap();
        assert!(ball.rad <= target);
        // The limit is zeta_1 = -1/2 + i(2 - sqrt 3)/2.
        let zeta1 = crate::engine::constants::zeta(1);
        assert!(ball.contains_quad(&zeta1));
    }
}
