//! Word combinatorics: repetition exponents, prefix decompositions,
//! shuffles, and the digit-family generators with hypothesis checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::engine::convergent::{convergents, phi_pow};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::quad::QuadScalar;
use crate::shift::{classify, Word, WordClass};

/// `r(n, a)`: the least `m` such that the length-`window` block at some
/// position `i <= m - n` recurs at position `m` (1-based positions). The
/// window length defaults to `n + 2`. Returns `None` when no repetition is
/// witnessed inside the available prefix.
pub fn repetition(a: &Word, n: usize, window: Option<usize>) -> Option<usize> {
    let win = window.unwrap_or(n + 2);
    let len = a.len();
    let digits = a.digits();
    // Need both blocks inside the prefix: m + win - 1 <= len.
    let mut m = n + 1;
    while m + win <= len + 1 {
        for i in 1..=(m - n) {
            if digits[i - 1..i - 1 + win] == digits[m - 1..m - 1 + win] {
                return Some(m);
            }
        }
        m += 1;
    }
    None
}

/// Independent quadratic re-scan of the same quantity, used as an oracle in
/// the tests: walks candidate pairs rather than candidate `m` values.
pub fn repetition_oracle(a: &Word, n: usize, window: Option<usize>) -> Option<usize> {
    let win = window.unwrap_or(n + 2);
    let digits = a.digits();
    let len = a.len();
    let mut best: Option<usize> = None;
    for i in 1..=len {
        for m in (i + n).max(n + 1)..=len {
            if m + win - 1 > len || i + win - 1 > len {
                continue;
            }
            if best.map(|b| m >= b).unwrap_or(false) {
                continue;
            }
            if digits[i - 1..i - 1 + win] == digits[m - 1..m - 1 + win] {
                best = Some(best.map_or(m, |b| b.min(m)));
            }
        }
    }
    best
}

/// r-values over a range of `n`, plus the minimum of `r(n)/n` over the
/// computed rows. A liminf cannot be certified from a finite prefix; the
/// estimate is only a record of the observed minimum.
#[derive(Clone, Debug, Serialize)]
pub struct RepetitionProfile {
    pub r_values: Vec<(usize, Option<usize>)>,
    pub rep_estimate: Option<BigRational>,
}

pub fn repetition_profile(a: &Word, max_n: usize, window_of: impl Fn(usize) -> usize) -> RepetitionProfile {
    let mut rows = Vec::new();
    let mut best: Option<BigRational> = None;
    for n in 1..=max_n {
        let r = repetition(a, n, Some(window_of(n)));
        if let Some(m) = r {
            let q = BigRational::new(BigInt::from(m), BigInt::from(n));
            best = Some(match best {
                None => q,
                Some(b) => b.min(q),
            });
        }
        rows.push((n, r));
    }
    RepetitionProfile {
        r_values: rows,
        rep_estimate: best,
    }
}

/// A decomposition `prefix = W U V U` of a prefix of the word.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WuvDecomposition {
    pub w: Word,
    pub u: Word,
    pub v: Word,
}

impl WuvDecomposition {
    pub fn prefix_len(&self) -> usize {
        self.w.len() + 2 * self.u.len() + self.v.len()
    }

    /// `(|W| + |V|) / |U|`, the boundedness statistic.
    pub fn ratio(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.w.len() + self.v.len()),
            BigInt::from(self.u.len()),
        )
    }

    /// Even-`|U|` normalization: when `|U|` is odd, move its last letter
    /// into `V` and shorten the covered prefix by one. `None` when
    /// `|U| = 1`.
    pub fn make_even_u(&self) -> Option<WuvDecomposition> {
        if self.u.len() % 2 == 0 {
            return Some(self.clone());
        }
        if self.u.len() == 1 {
            return None;
        }
        let u_hat = self.u.prefix(self.u.len() - 1);
        let x = Word(vec![self.u.digits().last().unwrap().clone()]);
        Some(WuvDecomposition {
            w: self.w.clone(),
            u: u_hat,
            v: x.concat(&self.v),
        })
    }
}

/// All decompositions of the full word as `W U V U` with `|U| >= 1`,
/// sorted by `(|W|, |U|)`.
pub fn find_wuv(a: &Word) -> Vec<WuvDecomposition> {
    let len = a.len();
    let digits = a.digits();
    let mut out = Vec::new();
    for w_len in 0..len {
        for u_len in 1..=(len - w_len) / 2 {
            let v_len = len - w_len - 2 * u_len;
            let first = &digits[w_len..w_len + u_len];
            let second = &digits[w_len + u_len + v_len..w_len + u_len + v_len + u_len];
            if first == second {
                out.push(WuvDecomposition {
                    w: a.factor(0, w_len),
                    u: a.factor(w_len, w_len + u_len),
                    v: a.factor(w_len + u_len, w_len + u_len + v_len),
                });
            }
        }
    }
    out.sort_by_key(|d| (d.w.len(), d.u.len()));
    out
}

/// The shuffle `s(A, B) = (a_1, b_1, a_2, b_2, ...)` of equal-length words.
pub fn shuffle(a: &Word, b: &Word) -> Result<Word> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let mut v = Vec::with_capacity(2 * a.len());
    for (x, y) in a.digits().iter().zip(b.digits()) {
        v.push(x.clone());
        v.push(y.clone());
    }
    Ok(Word(v))
}

/// Rule-based integer sequence specification with a non-periodicity
/// certificate. Non-periodicity of an arbitrary sequence is not decidable
/// from a prefix, so only rule-certified or caller-asserted specs pass the
/// generator hypothesis checks.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IntSeqSpec {
    Constant { value: i64 },
    Periodic { values: Vec<i64> },
    /// `base` everywhere except `special` at positions that are powers of
    /// two (1-based); aperiodic by the gap growth of the special positions.
    PowerPerturbed { base: i64, special: i64 },
    Explicit {
        values: Vec<i64>,
        #[serde(default)]
        assert_nonperiodic: bool,
    },
}

impl IntSeqSpec {
    pub fn value(&self, idx1: usize) -> Option<i64> {
        match self {
            IntSeqSpec::Constant { value } => Some(*value),
            IntSeqSpec::Periodic { values } => {
                if values.is_empty() {
                    None
                } else {
                    Some(values[(idx1 - 1) % values.len()])
                }
            }
            IntSeqSpec::PowerPerturbed { base, special } => {
                Some(if idx1.is_power_of_two() { *special } else { *base })
            }
            IntSeqSpec::Explicit { values, .. } => values.get(idx1 - 1).copied(),
        }
    }

    /// Minimum `|B_n|` over the whole rule, when finitely describable.
    pub fn min_abs(&self) -> Option<i64> {
        match self {
            IntSeqSpec::Constant { value } => Some(value.abs()),
            IntSeqSpec::Periodic { values } | IntSeqSpec::Explicit { values, .. } => {
                values.iter().map(|v| v.abs()).min()
            }
            IntSeqSpec::PowerPerturbed { base, special } => Some(base.abs().min(special.abs())),
        }
    }

    /// Does the rule certify non-periodicity?
    pub fn certified_nonperiodic(&self) -> Result<()> {
        match self {
            IntSeqSpec::Constant { .. } | IntSeqSpec::Periodic { .. } => Err(
                Error::HypothesisViolated("sequence rule is periodic".into()),
            ),
            IntSeqSpec::PowerPerturbed { base, special } if base == special => Err(
                Error::HypothesisViolated("perturbation is trivial, sequence constant".into()),
            ),
            IntSeqSpec::PowerPerturbed { .. } => Ok(()),
            IntSeqSpec::Explicit {
                assert_nonperiodic, ..
            } => {
                if *assert_nonperiodic {
                    Ok(())
                } else {
                    Err(Error::HypothesisViolated(
                        "explicit sequence lacks a non-periodicity assertion".into(),
                    ))
                }
            }
        }
    }
}

/// Digit family `(-2, 1+iB_1, -2, 1+iB_2, ...)`: bounded non-periodic `B`
/// with `min |B_n| >= 3` gives the first transcendental family. The
/// emitted prefix enforces the modulus bound; the non-periodicity
/// certificate is rule-based.
pub fn gen_alternating_family(b_spec: &IntSeqSpec, len: usize) -> Result<Word> {
    b_spec.certified_nonperiodic()?;
    if let Some(m) = b_spec.min_abs() {
        if m < 3 {
            return Err(Error::HypothesisViolated(format!(
                "rule admits |B_n| = {m} < 3"
            )));
        }
    }
    let mut v = Vec::with_capacity(len);
    for pos in 1..=len {
        if pos % 2 == 1 {
            v.push(GaussianInt::new(-2, 0));
        } else {
            let idx = pos / 2;
            let b = b_spec.value(idx).ok_or_else(|| {
                Error::HypothesisViolated(format!("B sequence ends before index {idx}"))
            })?;
            if b.abs() < 3 {
                return Err(Error::HypothesisViolated(format!(
                    "|B_{idx}| = {} < 3",
                    b.abs()
                )));
            }
            v.push(GaussianInt::new(1, b));
        }
    }
    Word::new(v)
}

/// Axis digit sequence specification for the shuffled family: values in
/// `{2, 2i, -2, -2i}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxisSeqSpec {
    Periodic { values: Vec<(i64, i64)> },
    Explicit { values: Vec<(i64, i64)> },
}

impl AxisSeqSpec {
    pub fn value(&self, idx1: usize) -> Option<GaussianInt> {
        let raw = match self {
            AxisSeqSpec::Periodic { values } => {
                if values.is_empty() {
                    return None;
                }
                values[(idx1 - 1) % values.len()]
            }
            AxisSeqSpec::Explicit { values } => *values.get(idx1 - 1)?,
        };
        Some(GaussianInt::new(raw.0, raw.1))
    }

    fn validate_alphabet(&self, len: usize) -> Result<()> {
        for idx in 1..=len {
            match self.value(idx) {
                Some(g)
                    if [(2, 0), (0, 2), (-2, 0), (0, -2)]
                        .contains(&g.to_i64_pair().unwrap_or((9, 9))) => {}
                Some(g) => {
                    return Err(Error::HypothesisViolated(format!(
                        "A_{idx} = {g} is not in {{2, 2i, -2, -2i}}"
                    )))
                }
                None => {
                    return Err(Error::HypothesisViolated(format!(
                        "A sequence ends before index {idx}"
                    )))
                }
            }
        }
        Ok(())
    }
}

/// Shuffled family `C = s(A, B)` with `A` over `{2, 2i, -2, -2i}`:
/// the emitted prefix must classify as valid; non-periodicity is certified
/// by the `B` rule.
pub fn gen_shuffled_family(
    a_spec: &AxisSeqSpec,
    b_spec: &IntSeqSpec,
    len: usize,
    session_d: u64,
) -> Result<Word> {
    b_spec.certified_nonperiodic()?;
    let half = len / 2 + len % 2;
    a_spec.validate_alphabet(half)?;
    let mut v = Vec::with_capacity(len);
    for pos in 1..=len {
        let idx = pos / 2 + pos % 2;
        if pos % 2 == 1 {
            v.push(a_spec.value(idx).expect("validated"));
        } else {
            let b = b_spec.value(idx).ok_or_else(|| {
                Error::HypothesisViolated(format!("B sequence ends before index {idx}"))
            })?;
            let g = GaussianInt::new(b, 0);
            g.require_digit()
                .map_err(|_| Error::HypothesisViolated(format!("B_{idx} = {b} is a unit or zero")))?;
            v.push(g);
        }
    }
    let word = Word::new(v)?;
    let tag = classify(&word, session_d)?.tag;
    if tag == WordClass::Invalid {
        return Err(Error::NotValid(format!("{word}")));
    }
    Ok(word)
}

/// One row of the growth-inequality report:
/// `psi^{2u} >= |q_{2w} q_{2(w+u+v)}|^eps`, checked exactly.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub w: usize,
    pub u: usize,
    pub v: usize,
    pub holds: bool,
}

/// Exact check of the growth inequality for rational `eps = p/r >= 0` at
/// the given index triples.
pub fn check_growth_inequality(
    a: &Word,
    decomps: &[(usize, usize, usize)],
    eps_num: u32,
    eps_den: u32,
) -> Result<Vec<GrowthRow>> {
    assert!(eps_den > 0);
    let cs = convergents(a);
    let mut out = Vec::with_capacity(decomps.len());
    for &(w, u, v) in decomps {
        let t = w + u + v;
        if 2 * t >= cs.len() {
            return Err(Error::PreconditionViolated(format!(
                "word too short for index 2t = {}",
                2 * t
            )));
        }
        // psi^{2u} >= (|q_{2w}| |q_{2t}|)^{p/r}
        //   <=> phi^{2ur} >= (N(q_{2w}) N(q_{2t}))^p  with N the norm.
        let holds = if eps_num == 0 {
            true
        } else {
            let lhs = phi_pow(2 * u as u32 * eps_den);
            let prod = cs[2 * w].q.norm() * cs[2 * t].q.norm();
            let rhs = QuadScalar::from_bigint(prod.pow(eps_num));
            lhs.cmp_exact(&rhs) != std::cmp::Ordering::Less
        };
        out.push(GrowthRow { w, u, v, holds });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(pairs: &[(i64, i64)]) -> Word {
        Word::from_pairs(pairs).unwrap()
    }

    #[test]
    fn repetition_of_two_periodic_word() {
        // (x, y, x, y, ...) with window length n+2.
        let a = w(&[(2, 0), (0, 3), (2, 0), (0, 3), (2, 0), (0, 3), (2, 0), (0, 3), (2, 0), (0, 3)]);
        for n in 1..=3 {
            let direct = repetition(&a, n, None);
            let oracle = repetition_oracle(&a, n, None);
            assert_eq!(direct, oracle, "n={n}");
            let m = direct.unwrap();
            assert!(m > n);
            // Window at m matches window at m-2 by periodicity.
            assert!(m <= n + 3);
        }
    }

    #[test]
    fn repetition_none_when_all_distinct() {
        let a = w(&[(2, 0), (3, 0), (4, 0), (5, 0), (6, 0)]);
        assert_eq!(repetition(&a, 1, None), None);
        assert_eq!(repetition_oracle(&a, 1, None), None);
    }

    #[test]
    fn wuv_finds_direct_square() {
        let a = w(&[(2, 0), (0, 3), (2, 0), (0, 3)]);
        let ds = find_wuv(&a);
        assert!(ds.iter().any(|d| d.w.is_empty() && d.u.len() == 2 && d.v.is_empty()));
        for d in &ds {
            // The defining equation W U V U = a holds verbatim.
            let rebuilt = d.w.concat(&d.u).concat(&d.v).concat(&d.u);
            assert_eq!(rebuilt, a);
        }
    }

    #[test]
    fn wuv_empty_when_no_repeat() {
        let a = w(&[(2, 0), (3, 0), (4, 0)]);
        assert!(find_wuv(&a).is_empty());
    }

    #[test]
    fn even_u_normalization() {
        let a = w(&[(2, 0), (0, 3), (4, 0), (2, 0), (0, 3), (4, 0)]);
        let ds = find_wuv(&a);
        let odd = ds.iter().find(|d| d.u.len() == 3).expect("|U|=3 square");
        let even = odd.make_even_u().unwrap();
        assert_eq!(even.u.len(), 2);
        // The normalized triple decomposes a one-shorter prefix.
        assert_eq!(even.prefix_len(), odd.prefix_len() - 1);
        let rebuilt = even.w.concat(&even.u).concat(&even.v).concat(&even.u);
        assert_eq!(rebuilt, a.prefix(a.len() - 1));
    }

    #[test]
    fn shuffle_interleaves() {
        let a = w(&[(-2, 0), (-2, 0)]);
        let b = w(&[(1, 3), (1, 4)]);
        let s = shuffle(&a, &b).unwrap();
        assert_eq!(s, w(&[(-2, 0), (1, 3), (-2, 0), (1, 4)]));
        assert_eq!(
            shuffle(&Word::empty(), &Word::empty()).unwrap(),
            Word::empty()
        );
        assert!(matches!(
            shuffle(&a, &Word::empty()),
            Err(Error::LengthMismatch(2, 0))
        ));
    }

    #[test]
    fn alternating_family_generator() {
        let spec = IntSeqSpec::PowerPerturbed {
            base: 3,
            special: 4,
        };
        let word = gen_alternating_family(&spec, 8).unwrap();
        // B = (4, 4, 3, 4, 3, 3, 3, 4, ...): positions 1,2,4,8 are special.
        assert_eq!(word.digits()[0], GaussianInt::new(-2, 0));
        assert_eq!(word.digits()[1], GaussianInt::new(1, 4));
        assert_eq!(word.digits()[3], GaussianInt::new(1, 4));
        assert_eq!(word.digits()[5], GaussianInt::new(1, 3));
        // Small modulus is rejected.
        let bad = IntSeqSpec::PowerPerturbed {
            base: 2,
            special: 5,
        };
        assert!(matches!(
            gen_alternating_family(&bad, 4),
            Err(Error::HypothesisViolated(_))
        ));
        // Periodic rule lacks the certificate.
        let per = IntSeqSpec::Periodic { values: vec![3, 4] };
        assert!(matches!(
            gen_alternating_family(&per, 4),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn shuffled_family_generator() {
        // Imaginary axis digits leave the kill direction of the excluded
        // disk orthogonal to real B values, so any bounded B works.
        let a = AxisSeqSpec::Periodic {
            values: vec![(0, 2), (0, -2)],
        };
        let b = IntSeqSpec::PowerPerturbed {
            base: 3,
            special: -4,
        };
        let word = gen_shuffled_family(&a, &b, 10, 3).unwrap();
        assert_eq!(word.len(), 10);
        let tag = classify(&word, 3).unwrap().tag;
        assert!(tag.is_valid() || tag == WordClass::ValidUnknownDegenerate);
        // A real alternating A against sign-locked B dies geometrically:
        // the generator must refuse it rather than emit an invalid word.
        let bad_a = AxisSeqSpec::Periodic {
            values: vec![(-2, 0), (2, 0)],
        };
        assert!(matches!(
            gen_shuffled_family(&bad_a, &b, 10, 3),
            Err(Error::NotValid(_))
        ));
    }

    #[test]
    fn growth_inequality_monotone_in_eps() {
        let word = gen_alternating_family(
            &IntSeqSpec::PowerPerturbed {
                base: 3,
                special: 5,
            },
            24,
        )
        .unwrap();
        let decomps = [(2usize, 3usize, 1usize), (1, 4, 2)];
        let strict = check_growth_inequality(&word, &decomps, 1, 10).unwrap();
        let loose = check_growth_inequality(&word, &decomps, 1, 100).unwrap();
        let zero = check_growth_inequality(&word, &decomps, 0, 1).unwrap();
        for ((s, l), z) in strict.iter().zip(&loose).zip(&zero) {
            assert!(z.holds, "eps = 0 always holds");
            // Monotone: holding at a larger eps implies holding at smaller.
            if s.holds {
                assert!(l.holds);
            }
        }
    }
}
