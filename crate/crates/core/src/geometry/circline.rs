//! Lines and circles in Hermitian form, closed under inversion, translation
//! and the dihedral symmetries.
//!
//! A circline is the zero set of `f(z) = A|z|^2 + 2 Re(conj(B) z) + C` with
//! real `A, C` and complex `B` satisfying `|B|^2 - A C > 0`. `A = 0` gives a
//! line, otherwise the circle of center `-B/A` and squared radius
//! `(|B|^2 - A C)/A^2`. The key fact used everywhere: substituting `z = 1/w`
//! and clearing `|w|^2` turns the triple `(A, B, C)` into `(C, conj(B), A)`
//! and preserves the sign of `f`, so sides of circlines transport through
//! the inversion without case analysis.

use serde::Serialize;

use crate::gaussian::{GaussianInt, Symmetry};
use crate::quad::{QuadComplex, QuadScalar};

/// A line or circle in Hermitian form. Kept canonical: scaled by a positive
/// factor so that the first nonzero coefficient of `(A, Re B, Im B, C)` is
/// `+1` or `-1`, making syntactic equality meaningful.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Circline {
    a: QuadScalar,
    b: QuadComplex,
    c: QuadScalar,
}

impl Circline {
    /// Builds a canonical circline. Returns `(circline, flipped)` where
    /// `flipped` records whether the defining triple was negated to reach
    /// canonical form (callers must then swap their side bookkeeping).
    pub fn new(a: QuadScalar, b: QuadComplex, c: QuadScalar) -> (Self, bool) {
        let disc = b.norm_sqr() - a.clone() * c.clone();
        assert!(
            disc.is_positive(),
            "degenerate circline: |B|^2 - AC must be positive"
        );
        let lead = [&a, &b.re, &b.im, &c]
            .into_iter()
            .find(|x| !x.is_zero())
            .expect("zero triple is not a circline")
            .clone();
        let flipped = lead.is_negative();
        let scale = lead.abs().recip();
        let circ = Circline {
            a: a * scale.clone(),
            b: b.scale(&scale),
            c: c * scale,
        };
        if flipped {
            (
                Circline {
                    a: -circ.a,
                    b: -circ.b,
                    c: -circ.c,
                },
                true,
            )
        } else {
            (circ, false)
        }
    }

    /// The vertical line `Re z = k`.
    pub fn line_re_eq(k: QuadScalar) -> Self {
        // f = 2x - 2k
        Circline::new(
            QuadScalar::zero(),
            QuadComplex::new(QuadScalar::one(), QuadScalar::zero()),
            QuadScalar::from_int(-2) * k,
        )
        .0
    }

    /// The horizontal line `Im z = k`.
    pub fn line_im_eq(k: QuadScalar) -> Self {
        Circline::new(
            QuadScalar::zero(),
            QuadComplex::new(QuadScalar::zero(), QuadScalar::one()),
            QuadScalar::from_int(-2) * k,
        )
        .0
    }

    /// The circle `|z - center| = r` given by its squared radius.
    pub fn circle(center: &QuadComplex, radius_sqr: QuadScalar) -> Self {
        // f = |z|^2 - 2 Re(conj(center) z) + |center|^2 - r^2
        Circline::new(
            QuadScalar::one(),
            -center.clone(),
            center.norm_sqr() - radius_sqr,
        )
        .0
    }

    pub fn coeff_a(&self) -> &QuadScalar {
        &self.a
    }

    pub fn coeff_b(&self) -> &QuadComplex {
        &self.b
    }

    pub fn coeff_c(&self) -> &QuadScalar {
        &self.c
    }

    pub fn is_line(&self) -> bool {
        self.a.is_zero()
    }

    /// Center of the circle variant.
    pub fn center(&self) -> Option<QuadComplex> {
        if self.is_line() {
            None
        } else {
            Some(-self.b.scale(&self.a.recip()))
        }
    }

    /// Squared radius of the circle variant.
    pub fn radius_sqr(&self) -> Option<QuadScalar> {
        if self.is_line() {
            None
        } else {
            let num = self.b.norm_sqr() - self.a.clone() * self.c.clone();
            Some(num / (self.a.clone() * self.a.clone()))
        }
    }

    /// Evaluates the defining form at `z`; its sign tells the side.
    pub fn eval(&self, z: &QuadComplex) -> QuadScalar {
        self.a.clone() * z.norm_sqr()
            + QuadScalar::from_int(2)
                * (self.b.re.clone() * z.re.clone() + self.b.im.clone() * z.im.clone())
            + self.c.clone()
    }

    pub fn sign_at(&self, z: &QuadComplex) -> i32 {
        self.eval(z).signum()
    }

    /// Image under `z -> 1/z`, with the side sign preserved.
    pub fn invert(&self) -> (Self, bool) {
        Circline::new(self.c.clone(), self.b.conj(), self.a.clone())
    }

    /// Image under `z -> z + t`, with the side sign preserved.
    pub fn translate(&self, t: &QuadComplex) -> (Self, bool) {
        let b = self.b.clone() - t.scale(&self.a);
        let c = self.eval(&-t.clone());
        Circline::new(self.a.clone(), b, c)
    }

    pub fn translate_gaussian(&self, t: &GaussianInt) -> (Self, bool) {
        self.translate(&t.to_quad())
    }

    /// Image under a dihedral symmetry, side sign preserved.
    pub fn apply_symmetry(&self, s: &Symmetry) -> (Self, bool) {
        let mut b = self.b.clone();
        if s.is_mirror() {
            b = b.conj();
        }
        for _ in 0..s.rot() {
            b = b.times_i();
        }
        Circline::new(self.a.clone(), b, self.c.clone())
    }

    /// Does the circline pass through the origin?
    pub fn through_origin(&self) -> bool {
        self.c.is_zero()
    }

    /// Exact minimum and maximum of the defining form over the closed unit
    /// square `[-1/2, 1/2]^2`. The form is separable in `x` and `y`, so the
    /// extrema reduce to two one-dimensional quadratics.
    pub fn square_extrema(&self) -> (QuadScalar, QuadScalar) {
        let (min_x, max_x) = extrema_1d(&self.a, &self.b.re);
        let (min_y, max_y) = extrema_1d(&self.a, &self.b.im);
        (
            min_x + min_y + self.c.clone(),
            max_x + max_y + self.c.clone(),
        )
    }
}

/// Extrema of `a t^2 + 2 b t` over `t` in `[-1/2, 1/2]`.
fn extrema_1d(a: &QuadScalar, b: &QuadScalar) -> (QuadScalar, QuadScalar) {
    let half = QuadScalar::ratio(1, 2);
    let at = |t: QuadScalar| a.clone() * t.clone() * t.clone() + QuadScalar::from_int(2) * b.clone() * t;
    let mut lo = at(-half.clone());
    let mut hi = at(half.clone());
    if hi.cmp_exact(&lo) == std::cmp::Ordering::Less {
        std::mem::swap(&mut lo, &mut hi);
    }
    if !a.is_zero() {
        let vertex = -(b.clone() / a.clone());
        if vertex.cmp_exact(&-half.clone()) != std::cmp::Ordering::Less
            && vertex.cmp_exact(&half) != std::cmp::Ordering::Greater
        {
            let v = at(vertex);
            if v.cmp_exact(&lo) == std::cmp::Ordering::Less {
                lo = v.clone();
            }
            if v.cmp_exact(&hi) == std::cmp::Ordering::Greater {
                hi = v;
            }
        }
    }
    (lo, hi)
}

/// Deterministic ordering key so constraint lists can be sorted canonically.
/// This is a structural order on coefficients, not the real-number order.
pub fn circline_key(c: &Circline) -> impl Ord + '_ {
    (
        scalar_key(&c.a),
        scalar_key(&c.b.re),
        scalar_key(&c.b.im),
        scalar_key(&c.c),
    )
}

fn scalar_key(s: &QuadScalar) -> (u64, num_rational::BigRational, num_rational::BigRational) {
    (s.field_d(), s.rational_part().clone(), s.surd_part().clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(re: i64, im: i64) -> QuadComplex {
        QuadComplex::from_ints(re, im)
    }

    #[test]
    fn line_re_half_inverts_to_unit_circle_at_one() {
        // Re z = 1/2 maps to the circle of center 1 and radius 1.
        let line = Circline::line_re_eq(QuadScalar::ratio(1, 2));
        let (img, _) = line.invert();
        assert!(!img.is_line());
        assert_eq!(img.center().unwrap(), q(1, 0));
        assert_eq!(img.radius_sqr().unwrap(), QuadScalar::one());
    }

    #[test]
    fn line_im_k_inverts_per_formula() {
        // Im z = k maps to the circle of center -i/2k and radius 1/2|k|.
        let k = QuadScalar::ratio(1, 2);
        let (img, _) = Circline::line_im_eq(k).invert();
        assert_eq!(img.center().unwrap(), q(0, -1));
        assert_eq!(img.radius_sqr().unwrap(), QuadScalar::one());
        let k = QuadScalar::ratio(-3, 2);
        let (img, _) = Circline::line_im_eq(k).invert();
        // center -i/(2k) = i/3, radius 1/3
        assert_eq!(
            img.center().unwrap(),
            QuadComplex::new(QuadScalar::zero(), QuadScalar::ratio(1, 3))
        );
        assert_eq!(img.radius_sqr().unwrap(), QuadScalar::ratio(1, 9));
    }

    #[test]
    fn unit_circle_is_inversion_invariant() {
        let c = Circline::circle(&q(0, 0), QuadScalar::one());
        let (img, _) = c.invert();
        assert_eq!(img, c);
    }

    #[test]
    fn circle_formula_matches_general_rule() {
        // C(z0; rho) with |z0| != rho maps to C(conj z0 / (|z0|^2 - rho^2); ...).
        let c = Circline::circle(&q(3, 0), QuadScalar::one());
        let (img, _) = c.invert();
        assert_eq!(
            img.center().unwrap(),
            QuadComplex::new(QuadScalar::ratio(3, 8), QuadScalar::zero())
        );
        assert_eq!(img.radius_sqr().unwrap(), QuadScalar::ratio(1, 64));
    }

    #[test]
    fn sides_are_preserved_by_inversion() {
        // z and 1/z must land on matching sides after the triple transform,
        // modulo the canonicalization flip flag.
        let line = Circline::line_re_eq(QuadScalar::ratio(1, 2));
        let (img, flipped) = line.invert();
        for (z, inv_z) in [
            (q(1, 0), q(1, 0)),
            (q(2, 0), QuadComplex::new(QuadScalar::ratio(1, 2), QuadScalar::zero())),
            (q(-1, 0), q(-1, 0)),
            (q(0, 2), QuadComplex::new(QuadScalar::zero(), QuadScalar::ratio(-1, 2))),
        ] {
            let s_line = line.sign_at(&z);
            let s_img = img.sign_at(&inv_z);
            let expected = if flipped { -s_line } else { s_line };
            assert_eq!(s_img, expected, "at {z:?}");
        }
    }

    #[test]
    fn double_inversion_is_identity() {
        let c = Circline::circle(&q(2, -1), QuadScalar::ratio(1, 4));
        let (i1, f1) = c.invert();
        let (i2, f2) = i1.invert();
        assert_eq!(i2, c);
        assert_eq!(f1 ^ f2, false);
    }

    #[test]
    fn translation_moves_center() {
        let c = Circline::circle(&q(1, 1), QuadScalar::one());
        let (t, _) = c.translate_gaussian(&GaussianInt::new(-2, 3));
        assert_eq!(t.center().unwrap(), q(-1, 4));
        assert_eq!(t.radius_sqr().unwrap(), QuadScalar::one());
    }

    #[test]
    fn square_extrema_of_unit_disk_at_one() {
        // f = |z-1|^2 - 1 over the square: min at (1/2, 0) -> -3/4,
        // max at (-1/2, +-1/2) -> 3/2.
        let c = Circline::circle(&q(1, 0), QuadScalar::one());
        let (lo, hi) = c.square_extrema();
        assert_eq!(lo, QuadScalar::ratio(-3, 4));
        assert_eq!(hi, QuadScalar::ratio(3, 2));
    }
}
