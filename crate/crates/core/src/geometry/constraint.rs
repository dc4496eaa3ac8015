//! Side constraints: a circline together with the set of signs its defining
//! form may take on the region.

use serde::Serialize;

use super::circline::Circline;
use crate::quad::{QuadComplex, QuadScalar};

/// Subset of `{-, 0, +}` encoded as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignSet(u8);

impl SignSet {
    pub const NEG: SignSet = SignSet(0b001);
    pub const ZERO: SignSet = SignSet(0b010);
    pub const POS: SignSet = SignSet(0b100);
    pub const NEG_ZERO: SignSet = SignSet(0b011);
    pub const POS_ZERO: SignSet = SignSet(0b110);
    pub const ALL: SignSet = SignSet(0b111);
    pub const EMPTY: SignSet = SignSet(0);

    pub fn contains_sign(&self, sign: i32) -> bool {
        let bit = match sign {
            s if s < 0 => Self::NEG.0,
            0 => Self::ZERO.0,
            _ => Self::POS.0,
        };
        self.0 & bit != 0
    }

    pub fn intersect(&self, other: SignSet) -> SignSet {
        SignSet(self.0 & other.0)
    }

    pub fn union(&self, other: SignSet) -> SignSet {
        SignSet(self.0 | other.0)
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn has_zero(&self) -> bool {
        self.0 & Self::ZERO.0 != 0
    }

    /// Only the zero sign is allowed.
    pub fn is_zero_only(&self) -> bool {
        self.0 == Self::ZERO.0
    }

    /// Mirror image under negating the defining form.
    pub fn flip(&self) -> SignSet {
        let mut out = 0;
        if self.0 & Self::NEG.0 != 0 {
            out |= Self::POS.0;
        }
        if self.0 & Self::ZERO.0 != 0 {
            out |= Self::ZERO.0;
        }
        if self.0 & Self::POS.0 != 0 {
            out |= Self::NEG.0;
        }
        SignSet(out)
    }

    pub fn is_subset_of(&self, other: SignSet) -> bool {
        self.0 & !other.0 == 0
    }
}

/// One side constraint of a region: `sign(f(z))` must lie in `allow`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Constraint {
    pub circ: Circline,
    pub allow: SignSet,
}

impl Constraint {
    /// Builds a constraint, canonicalizing the circline and adjusting the
    /// allowed sign set if the triple was negated.
    pub fn new(a: QuadScalar, b: QuadComplex, c: QuadScalar, allow: SignSet) -> Self {
        let (circ, flipped) = Circline::new(a, b, c);
        Constraint {
            circ,
            allow: if flipped { allow.flip() } else { allow },
        }
    }

    pub fn from_canonical(circ: Circline, allow: SignSet) -> Self {
        Constraint { circ, allow }
    }

    pub fn satisfied_at(&self, z: &QuadComplex) -> bool {
        self.allow.contains_sign(self.circ.sign_at(z))
    }

    pub fn invert(&self) -> Constraint {
        let (circ, flipped) = self.circ.invert();
        Constraint {
            circ,
            allow: if flipped {
                self.allow.flip()
            } else {
                self.allow
            },
        }
    }

    pub fn translate(&self, t: &QuadComplex) -> Constraint {
        let (circ, flipped) = self.circ.translate(t);
        Constraint {
            circ,
            allow: if flipped {
                self.allow.flip()
            } else {
                self.allow
            },
        }
    }

    pub fn apply_symmetry(&self, s: &crate::gaussian::Symmetry) -> Constraint {
        let (circ, flipped) = self.circ.apply_symmetry(s);
        Constraint {
            circ,
            allow: if flipped {
                self.allow.flip()
            } else {
                self.allow
            },
        }
    }
}

/// The four side constraints of the half-open fundamental square
/// (left and bottom edges included, right and top excluded).
pub fn square_constraints() -> Vec<Constraint> {
    let one = QuadScalar::one;
    let zero = QuadScalar::zero;
    vec![
        // Re z >= -1/2: f = 2x + 1
        Constraint::new(
            zero(),
            QuadComplex::new(one(), zero()),
            one(),
            SignSet::POS_ZERO,
        ),
        // Re z < 1/2: f = 2x - 1
        Constraint::new(
            zero(),
            QuadComplex::new(one(), zero()),
            -one(),
            SignSet::NEG,
        ),
        // Im z >= -1/2
        Constraint::new(
            zero(),
            QuadComplex::new(zero(), one()),
            one(),
            SignSet::POS_ZERO,
        ),
        // Im z < 1/2
        Constraint::new(
            zero(),
            QuadComplex::new(zero(), one()),
            -one(),
            SignSet::NEG,
        ),
    ]
}

/// Like [`square_constraints`] but fully open or fully closed.
pub fn square_constraints_with(open: bool) -> Vec<Constraint> {
    let mut cs = square_constraints();
    for c in &mut cs {
        c.allow = if open {
            match c.allow {
                x if x == SignSet::POS_ZERO => SignSet::POS,
                x if x == SignSet::NEG => SignSet::NEG,
                other => other,
            }
        } else {
            match c.allow {
                x if x == SignSet::POS_ZERO => SignSet::POS_ZERO,
                x if x == SignSet::NEG => SignSet::NEG_ZERO,
                other => other,
            }
        };
    }
    cs
}

/// The canonical circlines of the four square edges, for recognition.
pub fn square_edge_circlines() -> [Circline; 4] {
    [
        Circline::line_re_eq(QuadScalar::ratio(-1, 2)),
        Circline::line_re_eq(QuadScalar::ratio(1, 2)),
        Circline::line_im_eq(QuadScalar::ratio(-1, 2)),
        Circline::line_im_eq(QuadScalar::ratio(1, 2)),
    ]
}
