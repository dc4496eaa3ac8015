//! Rewriting irregular digit sequences into the closed shift.
//!
//! The rewrite keeps the regular prefix up to the breakpoint, substitutes
//! the offending digit through the map `S`, and reflects the tail through
//! `Mir1` (for digits `m +- i`) or `Mir2` (for `+-1 + im`). Breakpoints
//! strictly increase, so every output position stabilizes after finitely
//! many iterations and a finite output prefix needs only a finite horizon.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, Symmetry};
use crate::shift::{classify, DigitStream, SoficGraph, Word, WordClass};

/// The digit substitution `S`: `+-1 + im -> im` and `m +- i -> m`, defined
/// for `|m| >= 2`.
pub fn s_map(a: &GaussianInt) -> Result<GaussianInt> {
    let one = BigInt::from(1);
    if a.re.abs() == one && a.im.abs() >= BigInt::from(2) {
        return Ok(GaussianInt::new(0, a.im.clone()));
    }
    if a.im.abs() == one && a.re.abs() >= BigInt::from(2) {
        return Ok(GaussianInt::new(a.re.clone(), 0));
    }
    Err(Error::NotInDomain(a.to_string()))
}

/// The tail reflection paired with a breakpoint digit: `Mir1` for
/// `m +- i`, `Mir2` for `+-1 + im`.
pub fn mir_for_breakpoint(a: &GaussianInt) -> Result<Symmetry> {
    let one = BigInt::from(1);
    if a.re.abs() == one && a.im.abs() >= BigInt::from(2) {
        return Ok(Symmetry::MIR2);
    }
    if a.im.abs() == one && a.re.abs() >= BigInt::from(2) {
        return Ok(Symmetry::MIR1);
    }
    Err(Error::NotInDomain(a.to_string()))
}

/// State of the rewriting pass over a materialized horizon.
#[derive(Clone, Debug)]
pub struct RewriteState {
    pub iteration: usize,
    pub digits: Vec<GaussianInt>,
    pub breakpoints: Vec<usize>,
    pub mirrors: Vec<Symmetry>,
}

/// One trace record per iteration, for the machine-readable trace stream.
#[derive(Clone, Debug, Serialize)]
pub struct TraceEvent {
    pub iteration: usize,
    pub breakpoint: usize,
    pub mir: String,
    pub prefix: Word,
}

/// Least `j` in `[start, max_j]` such that the prefix of length `j` is
/// regular and the prefix of length `j+1` is not. The prefix of length
/// `start` must already be regular.
pub fn find_breakpoint(
    digits: &[GaussianInt],
    start: usize,
    max_j: usize,
    graph: &SoficGraph,
) -> Result<Option<usize>> {
    let mut state = crate::shift::PrototypeState::SQ;
    let limit = (max_j + 1).min(digits.len());
    for j in 0..limit {
        // The prefix of length `j` is regular and reaches `state`; test the
        // extension by digits[j] (the digit at 1-based position j+1).
        if j >= start {
            match graph.edge(state, &digits[j])? {
                Some(next) => state = next,
                None => return Ok(Some(j)),
            }
        } else {
            state = graph
                .edge(state, &digits[j])?
                .ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "prefix of length {start} is not regular"
                    ))
                })?;
        }
    }
    Ok(None)
}

/// Applies one rewrite at breakpoint `j` (1-based position of the last
/// regular prefix). The offending digit sits at 0-based index `j`.
pub fn rewrite_step(state: &mut RewriteState, j: usize, graph: &SoficGraph) -> Result<()> {
    let offending = state.digits[j].clone();
    let substituted = s_map(&offending).map_err(|_| {
        Error::InternalInvariantViolation(format!(
            "breakpoint digit {offending} is outside the domain of S"
        ))
    })?;
    let mir = mir_for_breakpoint(&offending)?;
    state.digits[j] = substituted;
    for d in state.digits.iter_mut().skip(j + 1) {
        *d = mir.apply_gaussian(d);
    }
    state.iteration += 1;
    state.breakpoints.push(j);
    state.mirrors.push(mir);
    // The rewritten prefix through j+1 must be regular again.
    let walk = graph.walk(&state.digits[..j + 1])?;
    if walk.iter().any(|s| s.is_none()) {
        return Err(Error::InternalInvariantViolation(format!(
            "rewritten prefix {:?} lost regularity",
            &state.digits[..j + 1]
        )));
    }
    Ok(())
}

/// Options for [`regularize`].
#[derive(Clone, Debug)]
pub struct RegularizeOptions {
    /// Extra digits materialized beyond the requested output length.
    pub slack: usize,
    /// Skip the validity pre-check of the input prefix.
    pub assume_valid: bool,
}

impl Default for RegularizeOptions {
    fn default() -> Self {
        RegularizeOptions {
            slack: 4,
            assume_valid: false,
        }
    }
}

/// Result of a rewriting pass.
#[derive(Clone, Debug)]
pub struct Regularized {
    pub output: Word,
    pub trace: Vec<TraceEvent>,
}

/// Rewrites a valid digit sequence into one whose prefixes are all
/// regular, emitting the first `out_len` digits of the limit sequence.
pub fn regularize(
    seq: &dyn DigitStream,
    out_len: usize,
    graph: &SoficGraph,
    session_d: u64,
    opts: &RegularizeOptions,
) -> Result<Regularized> {
    let horizon = out_len + opts.slack.max(1);
    let input = seq.prefix_word(horizon)?;

    if !opts.assume_valid {
        // The rewrite is only meaningful for valid inputs.
        match classify(&input, session_d) {
            Ok(c) if c.tag == WordClass::Invalid => {
                return Err(Error::NotValid(format!(
                    "input prefix {input} has an empty cylinder"
                )))
            }
            Ok(_) => {}
            Err(Error::FieldOverflow(_)) => {}
            Err(e) => return Err(e),
        }
    }

    let mut state = RewriteState {
        iteration: 0,
        digits: input.digits().to_vec(),
        breakpoints: Vec::new(),
        mirrors: Vec::new(),
    };
    let mut trace = Vec::new();
    let mut start = 0usize;
    while out_len > 0 {
        let j = match find_breakpoint(&state.digits, start, out_len - 1, graph)? {
            None => break,
            Some(j) => j,
        };
        rewrite_step(&mut state, j, graph)?;
        trace.push(TraceEvent {
            iteration: state.iteration - 1,
            breakpoint: j,
            mir: format!("{:?}", state.mirrors.last().unwrap()),
            prefix: Word(state.digits[..j + 1].to_vec()),
        });
        start = j + 1;
    }

    let output = Word(state.digits[..out_len].to_vec());
    // Contract: every prefix of the output is regular.
    let walk = graph.walk(output.digits())?;
    if walk.iter().any(|s| s.is_none()) {
        return Err(Error::InternalInvariantViolation(
            "output prefix failed regularity".into(),
        ));
    }
    Ok(Regularized { output, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shift::PeriodicStream;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn s_map_examples() {
        assert_eq!(s_map(&g(1, 3)).unwrap(), g(0, 3));
        assert_eq!(s_map(&g(-2, 1)).unwrap(), g(-2, 0));
        assert!(matches!(s_map(&g(5, 0)), Err(Error::NotInDomain(_))));
        // 1 + i has |m| = 1 on both readings: not in the domain.
        assert!(s_map(&g(1, 1)).is_err());
    }

    #[test]
    fn s_commutes_with_mirrors() {
        for (re, im) in [(1i64, 3i64), (-1, 4), (3, 1), (-5, -1), (1, -2), (2, 1)] {
            let a = g(re, im);
            for mir in [Symmetry::MIR1, Symmetry::MIR2] {
                let lhs = s_map(&mir.apply_gaussian(&a)).unwrap();
                let rhs = mir.apply_gaussian(&s_map(&a).unwrap());
                assert_eq!(lhs, rhs, "digit {a}, {mir:?}");
            }
        }
    }

    /// First worked example: `(-2, 1+iB1, -2, 1+iB2, ...)` with
    /// `|B_n| >= 3` rewrites to `(-2, iB1, 2, iB2, -2, iB3, 2, iB4, ...)`.
    #[test]
    fn alternating_family_rewrites_to_limit_shape() {
        let graph = SoficGraph::build().unwrap();
        let bs = [3i64, -4, 5, 3, -4, 5, 3, -4, 5, 3, -4, 5, 3, -4, 5, 3];
        let mut cycle = Vec::new();
        for b in bs {
            cycle.push(g(-2, 0));
            cycle.push(g(1, b));
        }
        let stream = PeriodicStream { pre: cycle, cycle: vec![] };
        let out = regularize(&stream, 24, &graph, 3, &RegularizeOptions::default()).unwrap();
        for (i, d) in out.output.digits().iter().enumerate() {
            let expect = if i % 2 == 0 {
                // Positions 1, 5, 9, ... hold -2; positions 3, 7, ... hold 2.
                if (i / 2) % 2 == 0 { g(-2, 0) } else { g(2, 0) }
            } else {
                g(0, bs[i / 2])
            };
            assert_eq!(d, &expect, "position {i}");
        }
        // Breakpoints strictly increase through odd positions.
        let bps: Vec<usize> = out.trace.iter().map(|t| t.breakpoint).collect();
        assert!(bps.windows(2).all(|w| w[0] < w[1]));
    }

    /// Second worked example: the expansion of zeta_1 rewrites to the
    /// period-four sequence `(-2, 2i, 2, -2i, ...)`.
    #[test]
    fn zeta_expansion_rewrites_to_period_four() {
        let graph = SoficGraph::build().unwrap();
        let stream = PeriodicStream {
            pre: vec![g(-2, 0)],
            cycle: vec![g(1, 2), g(-2, 1)],
        };
        let out = regularize(&stream, 16, &graph, 3, &RegularizeOptions::default()).unwrap();
        let period = [g(-2, 0), g(0, 2), g(2, 0), g(0, -2)];
        for (i, d) in out.output.digits().iter().enumerate() {
            assert_eq!(d, &period[i % 4], "position {i}");
        }
    }

    #[test]
    fn regular_input_is_unchanged() {
        let graph = SoficGraph::build().unwrap();
        let w = Word::from_pairs(&[(3, 3), (-4, 0), (0, 5), (2, 2)]).unwrap();
        let out = regularize(&w.prefix(4), 3, &graph, 3, &RegularizeOptions { slack: 1, assume_valid: false }).unwrap();
        assert_eq!(out.output, w.prefix(3));
        assert!(out.trace.is_empty());
    }

    #[test]
    fn invalid_input_is_rejected() {
        let graph = SoficGraph::build().unwrap();
        let w = Word::from_pairs(&[(-2, 0), (1, 3), (0, 5), (3, 3), (3, 3), (3, 3), (3, 3)])
            .unwrap();
        let r = regularize(&w, 3, &graph, 3, &RegularizeOptions::default());
        assert!(matches!(r, Err(Error::NotValid(_))), "got {r:?}");
    }
}
