//! Exact parameterizations of circlines and one-dimensional interval algebra
//! on them.
//!
//! A line is parameterized affinely, a circle by the tangent half-angle
//! substitution `z(t) = center + radius * (1 - t^2 + 2it) / (1 + t^2)`, which
//! sweeps counterclockwise as `t` grows and reaches `center - radius` at
//! `t = infinity`. Restricting a circline form to a carrier yields a
//! quadratic in `t` with coefficients in the session field, so side
//! conditions become exact sign analyses of quadratics.

use std::cmp::Ordering;

use super::circline::Circline;
use super::constraint::SignSet;
use crate::error::{Error, Result};
use crate::quad::{QuadComplex, QuadScalar};

/// Exact parameterization of a carrier circline.
#[derive(Clone, Debug)]
pub enum CarrierParam {
    Line {
        origin: QuadComplex,
        dir: QuadComplex,
    },
    Circle {
        center: QuadComplex,
        radius: QuadScalar,
    },
}

impl CarrierParam {
    /// Builds the parameterization; fails with `FieldOverflow` when the
    /// circle's radius does not exist in the session field.
    pub fn from_circline(c: &Circline, session_d: u64) -> Result<CarrierParam> {
        if c.is_line() {
            let b = c.coeff_b().clone();
            let n = b.norm_sqr();
            // Point on the line: f(z0) = 2 Re(conj(b) z0) + c = 0.
            let origin = b.scale(&(-(c.coeff_c().clone() / (QuadScalar::from_int(2) * n))));
            let dir = b.times_i();
            Ok(CarrierParam::Line { origin, dir })
        } else {
            let center = c.center().expect("circle has a center");
            let r2 = c.radius_sqr().expect("circle has a radius");
            let radius = r2
                .try_sqrt_in(session_d)
                .ok_or_else(|| Error::FieldOverflow(format!("radius sqrt of {r2}")))?;
            Ok(CarrierParam::Circle { center, radius })
        }
    }

    pub fn is_circle(&self) -> bool {
        matches!(self, CarrierParam::Circle { .. })
    }

    /// The point at parameter `t`.
    pub fn at(&self, t: &QuadScalar) -> QuadComplex {
        match self {
            CarrierParam::Line { origin, dir } => origin.clone() + dir.scale(t),
            CarrierParam::Circle { center, radius } => {
                let t2 = t.clone() * t.clone();
                let denom = (QuadScalar::one() + t2.clone()).recip();
                let re = radius.clone() * (QuadScalar::one() - t2) * denom.clone();
                let im = radius.clone() * QuadScalar::from_int(2) * t.clone() * denom;
                center.clone() + QuadComplex::new(re, im)
            }
        }
    }

    /// The point reached at `t = infinity` (circles only).
    pub fn at_infinity(&self) -> Option<QuadComplex> {
        match self {
            CarrierParam::Line { .. } => None,
            CarrierParam::Circle { center, radius } => {
                Some(center.clone() - QuadComplex::new(radius.clone(), QuadScalar::zero()))
            }
        }
    }

    /// Parameter of a point on the carrier. `None` means the circle's
    /// infinity point. The caller must ensure `p` lies on the carrier.
    pub fn to_t(&self, p: &QuadComplex) -> Option<QuadScalar> {
        match self {
            CarrierParam::Line { origin, dir } => {
                let rel = p.clone() - origin.clone();
                let num = rel.re.clone() * dir.re.clone() + rel.im.clone() * dir.im.clone();
                Some(num / dir.norm_sqr())
            }
            CarrierParam::Circle { center, radius } => {
                let u = (p.clone() - center.clone()).scale(&radius.recip());
                let denom = QuadScalar::one() + u.re.clone();
                if denom.is_zero() {
                    None
                } else {
                    Some(u.im.clone() / denom)
                }
            }
        }
    }

    /// Restricts a circline form to the carrier: returns `(p, q, r)` with
    /// `sign f(z(t)) = sign(p t^2 + q t + r)` for finite `t`.
    pub fn restrict(&self, f: &Circline) -> (QuadScalar, QuadScalar, QuadScalar) {
        let two = QuadScalar::from_int(2);
        match self {
            CarrierParam::Line { origin, dir } => {
                let a = f.coeff_a().clone();
                let b = f.coeff_b().clone();
                let p = a.clone() * dir.norm_sqr();
                let dot = |x: &QuadComplex, y: &QuadComplex| {
                    x.re.clone() * y.re.clone() + x.im.clone() * y.im.clone()
                };
                let q = two.clone() * (a * dot(origin, dir) + dot(&b, dir));
                let r = f.eval(origin);
                (p, q, r)
            }
            CarrierParam::Circle { center, radius } => {
                let a = f.coeff_a().clone();
                let w = center.conj().scale(&a) + f.coeff_b().conj();
                let base = f.eval(center) + a * radius.clone() * radius.clone();
                let two_rho_re = two.clone() * radius.clone() * w.re.clone();
                let p = base.clone() - two_rho_re.clone();
                let q = -(two.clone() * two * radius.clone() * w.im.clone());
                let r = base + two_rho_re;
                (p, q, r)
            }
        }
    }

    /// Sign of a circline form at the carrier's infinity point.
    pub fn sign_at_infinity(&self, f: &Circline) -> Option<i32> {
        self.at_infinity().map(|p| f.sign_at(&p))
    }
}

/// An endpoint bound: the parameter value plus whether it is included.
pub type Bound = (QuadScalar, bool);

/// A nonempty interval of the real parameter line. `None` bounds are
/// infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct TInterval {
    pub lo: Option<Bound>,
    pub hi: Option<Bound>,
}

impl TInterval {
    pub fn all() -> Self {
        TInterval { lo: None, hi: None }
    }

    fn is_valid(&self) -> bool {
        match (&self.lo, &self.hi) {
            (Some((a, ai)), Some((b, bi))) => match a.cmp_exact(b) {
                Ordering::Less => true,
                Ordering::Equal => *ai && *bi,
                Ordering::Greater => false,
            },
            _ => true,
        }
    }

    fn intersect(&self, other: &TInterval) -> Option<TInterval> {
        let lo = max_bound(&self.lo, &other.lo);
        let hi = min_bound(&self.hi, &other.hi);
        let out = TInterval { lo, hi };
        out.is_valid().then_some(out)
    }

    pub fn is_point(&self) -> Option<&QuadScalar> {
        match (&self.lo, &self.hi) {
            (Some((a, true)), Some((b, true))) if a == b => Some(a),
            _ => None,
        }
    }
}

fn max_bound(a: &Option<Bound>, b: &Option<Bound>) -> Option<Bound> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some((x, xi)), Some((y, yi))) => match x.cmp_exact(y) {
            Ordering::Greater => Some((x.clone(), *xi)),
            Ordering::Less => Some((y.clone(), *yi)),
            Ordering::Equal => Some((x.clone(), *xi && *yi)),
        },
    }
}

fn min_bound(a: &Option<Bound>, b: &Option<Bound>) -> Option<Bound> {
    match (a, b) {
        (None, x) | (x, None) => x.clone(),
        (Some((x, xi)), Some((y, yi))) => match x.cmp_exact(y) {
            Ordering::Less => Some((x.clone(), *xi)),
            Ordering::Greater => Some((y.clone(), *yi)),
            Ordering::Equal => Some((x.clone(), *xi && *yi)),
        },
    }
}

/// A subset of the projective parameter line: disjoint sorted intervals of
/// the real line plus a membership flag for the infinity point.
#[derive(Clone, Debug, PartialEq)]
pub struct TSet {
    pub intervals: Vec<TInterval>,
    pub at_infinity: bool,
}

impl TSet {
    pub fn all(with_infinity: bool) -> Self {
        TSet {
            intervals: vec![TInterval::all()],
            at_infinity: with_infinity,
        }
    }

    pub fn empty() -> Self {
        TSet {
            intervals: vec![],
            at_infinity: false,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && !self.at_infinity
    }

    pub fn intersect(&self, other: &TSet) -> TSet {
        let mut intervals = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                if let Some(c) = a.intersect(b) {
                    intervals.push(c);
                }
            }
        }
        TSet {
            intervals,
            at_infinity: self.at_infinity && other.at_infinity,
        }
    }

    /// The allowed parameter set of a sign condition on a quadratic.
    ///
    /// `inf_sign`, when present, is the exact sign of the constraint at the
    /// carrier's infinity point and controls the `at_infinity` flag.
    pub fn from_quadratic(
        p: &QuadScalar,
        q: &QuadScalar,
        r: &QuadScalar,
        allow: SignSet,
        inf_sign: Option<i32>,
        session_d: u64,
    ) -> Result<TSet> {
        let at_infinity = inf_sign.map(|s| allow.contains_sign(s)).unwrap_or(false);
        let mut cuts: Vec<QuadScalar> = Vec::new();
        if p.is_zero() {
            if q.is_zero() {
                return Ok(if allow.contains_sign(r.signum()) {
                    TSet {
                        intervals: vec![TInterval::all()],
                        at_infinity,
                    }
                } else {
                    TSet {
                        intervals: vec![],
                        at_infinity,
                    }
                });
            }
            cuts.push(-(r.clone() / q.clone()));
        } else {
            let four = QuadScalar::from_int(4);
            let disc = q.clone() * q.clone() - four * p.clone() * r.clone();
            match disc.signum() {
                s if s < 0 => {}
                0 => cuts.push(-(q.clone() / (QuadScalar::from_int(2) * p.clone()))),
                _ => {
                    let sq = disc.try_sqrt_in(session_d).ok_or_else(|| {
                        Error::FieldOverflow(format!("quadratic discriminant {disc}"))
                    })?;
                    let two_p = QuadScalar::from_int(2) * p.clone();
                    let r1 = (-q.clone() - sq.clone()) / two_p.clone();
                    let r2 = (-q.clone() + sq) / two_p;
                    if r1.cmp_exact(&r2) == Ordering::Less {
                        cuts.push(r1);
                        cuts.push(r2);
                    } else {
                        cuts.push(r2);
                        cuts.push(r1);
                    }
                }
            }
        }

        // Sign on each maximal run between cuts, sampled exactly.
        let eval_sign = |t: &QuadScalar| -> i32 {
            (p.clone() * t.clone() * t.clone() + q.clone() * t.clone() + r.clone()).signum()
        };
        let sample_between = |lo: Option<&QuadScalar>, hi: Option<&QuadScalar>| -> QuadScalar {
            match (lo, hi) {
                (None, None) => QuadScalar::zero(),
                (None, Some(h)) => h.clone() - QuadScalar::one(),
                (Some(l), None) => l.clone() + QuadScalar::one(),
                (Some(l), Some(h)) => (l.clone() + h.clone()) / QuadScalar::from_int(2),
            }
        };

        // The real line decomposes into alternating open runs and cut
        // points: (-inf,c1), {c1}, (c1,c2), {c2}, ..., (cn,+inf). Walk them
        // in order, merging consecutive allowed items into one interval.
        let zero_ok = allow.has_zero();
        let n = cuts.len();
        let mut intervals: Vec<TInterval> = Vec::new();
        let mut current: Option<TInterval> = None;
        for i in 0..=n {
            let lo = if i == 0 { None } else { Some(&cuts[i - 1]) };
            let hi = if i == n { None } else { Some(&cuts[i]) };
            let run_allowed = allow.contains_sign(eval_sign(&sample_between(lo, hi)));
            if run_allowed {
                let hi_b = hi.map(|v| (v.clone(), false));
                match &mut current {
                    // Previous item was the cut at `lo`, already included.
                    Some(cur) => cur.hi = hi_b,
                    None => {
                        current = Some(TInterval {
                            lo: lo.map(|v| (v.clone(), false)),
                            hi: hi_b,
                        })
                    }
                }
            } else if let Some(cur) = current.take() {
                intervals.push(cur);
            }
            if i < n {
                if zero_ok {
                    match &mut current {
                        Some(cur) => cur.hi = Some((cuts[i].clone(), true)),
                        None => {
                            current = Some(TInterval {
                                lo: Some((cuts[i].clone(), true)),
                                hi: Some((cuts[i].clone(), true)),
                            })
                        }
                    }
                } else if let Some(cur) = current.take() {
                    intervals.push(cur);
                }
            }
        }
        if let Some(cur) = current.take() {
            intervals.push(cur);
        }

        Ok(TSet {
            intervals,
            at_infinity,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: i64) -> QuadScalar {
        QuadScalar::from_int(x)
    }

    #[test]
    fn quadratic_sign_sets() {
        // t^2 - 1: negative inside (-1, 1).
        let neg = TSet::from_quadratic(&s(1), &s(0), &s(-1), SignSet::NEG, None, 3).unwrap();
        assert_eq!(neg.intervals.len(), 1);
        let iv = &neg.intervals[0];
        assert_eq!(iv.lo.as_ref().unwrap().0, s(-1));
        assert!(!iv.lo.as_ref().unwrap().1);
        assert_eq!(iv.hi.as_ref().unwrap().0, s(1));

        // Non-strict positive side: two closed unbounded intervals.
        let pos = TSet::from_quadratic(&s(1), &s(0), &s(-1), SignSet::POS_ZERO, None, 3).unwrap();
        assert_eq!(pos.intervals.len(), 2);
        assert!(pos.intervals[0].lo.is_none());
        assert!(pos.intervals[0].hi.as_ref().unwrap().1);

        // Zero only: the two roots as degenerate intervals.
        let zero = TSet::from_quadratic(&s(1), &s(0), &s(-1), SignSet::ZERO, None, 3).unwrap();
        assert_eq!(zero.intervals.len(), 2);
        assert!(zero.intervals[0].is_point().is_some());
    }

    #[test]
    fn irrational_roots_stay_in_session_field() {
        // t^2 - 3 = 0 has roots +-sqrt(3).
        let t = TSet::from_quadratic(&s(1), &s(0), &s(-3), SignSet::NEG_ZERO, None, 3).unwrap();
        assert_eq!(t.intervals.len(), 1);
        let root = &t.intervals[0].hi.as_ref().unwrap().0;
        assert_eq!(root.clone() * root.clone(), s(3));
        // In a d=2 session the same computation overflows the field.
        let err = TSet::from_quadratic(&s(1), &s(0), &s(-3), SignSet::NEG_ZERO, None, 2);
        assert!(matches!(err, Err(Error::FieldOverflow(_))));
    }

    #[test]
    fn interval_intersection() {
        let a = TSet {
            intervals: vec![TInterval {
                lo: Some((s(0), true)),
                hi: Some((s(10), true)),
            }],
            at_infinity: true,
        };
        let b = TSet {
            intervals: vec![
                TInterval {
                    lo: None,
                    hi: Some((s(2), false)),
                },
                TInterval {
                    lo: Some((s(5), true)),
                    hi: None,
                },
            ],
            at_infinity: false,
        };
        let c = a.intersect(&b);
        assert!(!c.at_infinity);
        assert_eq!(c.intervals.len(), 2);
        assert_eq!(c.intervals[0].lo.as_ref().unwrap().0, s(0));
        assert_eq!(c.intervals[0].hi.as_ref().unwrap(), &(s(2), false));
        assert_eq!(c.intervals[1].lo.as_ref().unwrap(), &(s(5), true));
        assert_eq!(c.intervals[1].hi.as_ref().unwrap(), &(s(10), true));
    }

    #[test]
    fn circle_parameterization_roundtrip() {
        let circ = Circline::circle(&QuadComplex::from_ints(1, 0), QuadScalar::one());
        let p = CarrierParam::from_circline(&circ, 3).unwrap();
        for t in [-3i64, -1, 0, 2, 7] {
            let z = p.at(&s(t));
            assert_eq!(circ.sign_at(&z), 0);
            assert_eq!(p.to_t(&z).unwrap(), s(t));
        }
        assert_eq!(p.at_infinity().unwrap(), QuadComplex::from_ints(0, 0));
    }

    #[test]
    fn restriction_matches_direct_evaluation() {
        let carrier = Circline::circle(&QuadComplex::from_ints(1, 0), QuadScalar::one());
        let p = CarrierParam::from_circline(&carrier, 3).unwrap();
        let f = Circline::circle(&QuadComplex::from_ints(0, 1), QuadScalar::ratio(1, 4));
        let (a, b, c) = p.restrict(&f);
        for t in [-2i64, 0, 1, 5] {
            let t = s(t);
            let direct = f.sign_at(&p.at(&t));
            let via = (a.clone() * t.clone() * t.clone() + b.clone() * t.clone() + c.clone())
                .signum();
            assert_eq!(direct, via);
        }
        let inf = p.sign_at_infinity(&f).unwrap();
        assert_eq!(inf, f.sign_at(&QuadComplex::from_ints(0, 0)));
    }
}
