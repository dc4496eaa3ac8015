//! Finite digit words and the word taxonomy tags.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, Symmetry};

/// A finite word over the digit alphabet (Gaussian integers that are
/// neither zero nor units). May be empty.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<GaussianInt>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn new(digits: Vec<GaussianInt>) -> Result<Word> {
        for d in &digits {
            d.require_digit()?;
        }
        Ok(Word(digits))
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Word> {
        Word::new(pairs.iter().map(|&(re, im)| GaussianInt::new(re, im)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn digits(&self) -> &[GaussianInt] {
        &self.0
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn factor(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Word(v)
    }

    pub fn push(&mut self, d: GaussianInt) -> Result<()> {
        d.require_digit()?;
        self.0.push(d);
        Ok(())
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Letterwise image under a dihedral symmetry.
    pub fn apply_symmetry(&self, s: &Symmetry) -> Word {
        Word(self.0.iter().map(|d| s.apply_gaussian(d)).collect())
    }

    pub fn last(&self) -> Option<&GaussianInt> {
        self.0.last()
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Classification tag of a finite word.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WordClass {
    RegularFull,
    RegularNotFull,
    IrregularValid,
    ExtremelyIrregular,
    Invalid,
    /// Degenerate tracking left the session field; validity is undecided.
    ValidUnknownDegenerate,
}

impl WordClass {
    pub fn is_regular(&self) -> bool {
        matches!(self, WordClass::RegularFull | WordClass::RegularNotFull)
    }

    pub fn is_valid(&self) -> bool {
        matches!(
            self,
            WordClass::RegularFull
                | WordClass::RegularNotFull
                | WordClass::IrregularValid
                | WordClass::ExtremelyIrregular
        )
    }
}

/// An infinite digit supply: finite words, periodic words, or generated
/// families all expose digits by index (0-based).
pub trait DigitStream {
    /// Digit at 0-based position `i`, or `None` past the end.
    fn digit(&self, i: usize) -> Option<GaussianInt>;

    /// Materializes the first `n` digits; fails if the stream is shorter.
    fn prefix_word(&self, n: usize) -> Result<Word> {
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match self.digit(i) {
                Some(d) => v.push(d),
                None => {
                    return Err(Error::PreconditionViolated(format!(
                        "stream ends at {i}, {n} digits requested"
                    )))
                }
            }
        }
        Word::new(v)
    }
}

impl DigitStream for Word {
    fn digit(&self, i: usize) -> Option<GaussianInt> {
        self.0.get(i).cloned()
    }
}

/// Eventually periodic stream: `pre` then `cycle` repeated.
#[derive(Clone, Debug)]
pub struct PeriodicStream {
    pub pre: Vec<GaussianInt>,
    pub cycle: Vec<GaussianInt>,
}

impl DigitStream for PeriodicStream {
    fn digit(&self, i: usize) -> Option<GaussianInt> {
        if i < self.pre.len() {
            Some(self.pre[i].clone())
        } else if self.cycle.is_empty() {
            None
        } else {
            Some(self.cycle[(i - self.pre.len()) % self.cycle.len()].clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_rejects_units() {
        assert!(Word::from_pairs(&[(0, 1)]).is_err());
        assert!(Word::from_pairs(&[(1, 1), (-2, 0)]).is_ok());
    }

    #[test]
    fn symmetry_acts_letterwise() {
        let w = Word::from_pairs(&[(1, 3), (2, -1)]).unwrap();
        let m = w.apply_symmetry(&Symmetry::MIR2);
        assert_eq!(m, Word::from_pairs(&[(-1, 3), (-2, -1)]).unwrap());
    }

    #[test]
    fn periodic_stream_wraps() {
        let s = PeriodicStream {
            pre: vec![GaussianInt::new(-2, 0)],
            cycle: vec![GaussianInt::new(1, 2), GaussianInt::new(-2, 1)],
        };
        assert_eq!(s.digit(0).unwrap(), GaussianInt::new(-2, 0));
        assert_eq!(s.digit(1).unwrap(), GaussianInt::new(1, 2));
        assert_eq!(s.digit(2).unwrap(), GaussianInt::new(-2, 1));
        assert_eq!(s.digit(3).unwrap(), GaussianInt::new(1, 2));
    }
}
