//! Exact finite evaluation and the mirror formula.


use super::convergent::convergents;
use crate::error::{Error, Result};
use crate::quad::QuadComplex;
use crate::shift::Word;

/// Exact value of `[0; a_1, ..., a_n]` as `p_n / q_n`.
pub fn evaluate_finite(w: &Word) -> Result<QuadComplex> {
    let cs = convergents(w);
    cs.last().expect("nonempty convergent list").value()
}

/// Bottom-up evaluation of a general continued fraction
/// `<0; b_1, ..., b_n>`, reporting the index of any vanishing intermediate
/// denominator.
pub fn evaluate_general(digits: &[crate::gaussian::GaussianInt]) -> Result<QuadComplex> {
    if digits.is_empty() {
        return Ok(QuadComplex::zero());
    }
    let mut tail = digits.last().unwrap().to_quad();
    for (idx, b) in digits.iter().enumerate().rev().skip(1) {
        if tail.is_zero() {
            return Err(Error::ZeroDenominator(idx + 1));
        }
        tail = b.to_quad() + tail.recip();
    }
    if tail.is_zero() {
        return Err(Error::ZeroDenominator(0));
    }
    Ok(tail.recip())
}

/// Both sides of the mirror formula
/// `q_{n-1}/q_n = <0; a_n, a_{n-1}, ..., a_1>`, computed independently.
pub fn mirror(w: &Word) -> Result<(QuadComplex, QuadComplex)> {
    if w.is_empty() {
        return Err(Error::PreconditionViolated("empty word".into()));
    }
    let cs = convergents(w);
    let n = w.len();
    let q_last = &cs[n].q;
    if q_last.is_zero() {
        return Err(Error::ZeroDenominator(n));
    }
    let lhs = cs[n - 1].q.to_quad() / q_last.to_quad();
    let rev = w.reversed();
    let rhs = evaluate_general(rev.digits())?;
    Ok((lhs, rhs))
}
