//! Symbolic plane regions: boolean side-conditions on circlines with exact
//! degenerate (segment/arc/point) tracking.
//!
//! Two-dimensional regions are conjunctions of side constraints. When the
//! constraints pinch the set onto a circline, normalization descends onto
//! that carrier and solves the remaining constraints exactly in a rational
//! parameterization, producing segments, arcs and points with exact
//! endpoints and end-inclusion flags.

use serde::Serialize;

use super::carrier::{CarrierParam, TInterval, TSet};
use super::circline::{circline_key, Circline};
use super::constraint::{square_constraints, square_edge_circlines, Constraint, SignSet};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::quad::{QuadComplex, QuadScalar};

/// A maximal connected degenerate piece: a point, or a segment/arc of a
/// circline with end-inclusion flags.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum Piece {
    Point(QuadComplex),
    Seg(Segment),
}

/// A one-dimensional subset of a circline. `span = None` is the full
/// circle. A span with `start == end` and open flags is the full circle
/// punctured at that point.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Segment {
    pub carrier: Circline,
    pub span: Option<SegSpan>,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct SegSpan {
    pub start: QuadComplex,
    pub start_closed: bool,
    pub end: QuadComplex,
    pub end_closed: bool,
    /// A point strictly inside the piece; selects which of the two arcs
    /// between `start` and `end` is meant. Unused for plain line segments.
    pub witness: QuadComplex,
}

/// Sign of the oriented area of the triangle `(a, b, c)`.
fn area_sign(a: &QuadComplex, b: &QuadComplex, c: &QuadComplex) -> i32 {
    let ab = b.clone() - a.clone();
    let ac = c.clone() - a.clone();
    (ab.re.clone() * ac.im.clone() - ab.im.clone() * ac.re.clone()).signum()
}

impl Segment {
    pub fn contains(&self, z: &QuadComplex) -> bool {
        if self.carrier.sign_at(z) != 0 {
            return false;
        }
        let sp = match &self.span {
            None => return true,
            Some(sp) => sp,
        };
        if *z == sp.start {
            return sp.start_closed;
        }
        if *z == sp.end {
            return sp.end_closed;
        }
        if sp.start == sp.end {
            // Punctured full circle.
            return true;
        }
        if self.carrier.is_line() {
            let dir = sp.end.clone() - sp.start.clone();
            let dot = |x: &QuadComplex, y: &QuadComplex| {
                (x.re.clone() * y.re.clone() + x.im.clone() * y.im.clone()).signum()
            };
            let rel = z.clone() - sp.start.clone();
            let rel2 = sp.end.clone() - z.clone();
            dot(&dir, &rel) > 0 && dot(&dir, &rel2) > 0
        } else {
            let orient = area_sign(&sp.start, &sp.witness, &sp.end);
            area_sign(&sp.start, z, &sp.end) == orient
        }
    }

    fn map_points(&self, f: impl Fn(&QuadComplex) -> QuadComplex, carrier: Circline) -> Segment {
        Segment {
            carrier,
            span: self.span.as_ref().map(|sp| SegSpan {
                start: f(&sp.start),
                start_closed: sp.start_closed,
                end: f(&sp.end),
                end_closed: sp.end_closed,
                witness: f(&sp.witness),
            }),
        }
    }
}

impl Piece {
    pub fn contains(&self, z: &QuadComplex) -> bool {
        match self {
            Piece::Point(p) => p == z,
            Piece::Seg(s) => s.contains(z),
        }
    }

    fn sort_key(&self) -> String {
        serde_json::to_string(self).unwrap_or_default()
    }
}

/// A normalized region of the plane.
#[derive(Clone, PartialEq, Debug, Serialize)]
pub enum Region {
    /// Conjunction of side constraints with nonempty interior.
    TwoDim { constraints: Vec<Constraint> },
    /// A nonempty union of segments, arcs and points.
    Degenerate { pieces: Vec<Piece> },
    Empty,
}

impl Region {
    /// The half-open fundamental square (left and bottom edges included).
    pub fn square() -> Region {
        Region::TwoDim {
            constraints: sorted(square_constraints()),
        }
    }

    /// The open unit square.
    pub fn square_open() -> Region {
        Region::TwoDim {
            constraints: sorted(super::constraint::square_constraints_with(true)),
        }
    }

    /// The closed unit square.
    pub fn square_closed() -> Region {
        Region::TwoDim {
            constraints: sorted(super::constraint::square_constraints_with(false)),
        }
    }

    /// Normalizes a raw constraint list into a region.
    pub fn from_constraints(cs: Vec<Constraint>, session_d: u64) -> Result<Region> {
        normalize(cs, session_d)
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Region::Empty)
    }

    pub fn has_nonempty_interior(&self) -> bool {
        matches!(self, Region::TwoDim { .. })
    }

    pub fn contains(&self, z: &QuadComplex) -> bool {
        match self {
            Region::TwoDim { constraints } => constraints.iter().all(|c| c.satisfied_at(z)),
            Region::Degenerate { pieces } => pieces.iter().any(|p| p.contains(z)),
            Region::Empty => false,
        }
    }

    /// Is the region a single point? Returns it if so.
    pub fn as_single_point(&self) -> Option<&QuadComplex> {
        match self {
            Region::Degenerate { pieces } => match pieces.as_slice() {
                [Piece::Point(p)] => Some(p),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn intersect(&self, other: &Region, session_d: u64) -> Result<Region> {
        match (self, other) {
            (Region::Empty, _) | (_, Region::Empty) => Ok(Region::Empty),
            (Region::TwoDim { constraints: a }, Region::TwoDim { constraints: b }) => {
                let mut cs = a.clone();
                cs.extend(b.iter().cloned());
                normalize(cs, session_d)
            }
            (Region::TwoDim { constraints }, Region::Degenerate { pieces })
            | (Region::Degenerate { pieces }, Region::TwoDim { constraints }) => {
                impose(constraints, pieces, session_d)
            }
            (Region::Degenerate { pieces: ps }, Region::Degenerate { pieces: qs }) => {
                let mut out = Vec::new();
                for p in ps {
                    for q in qs {
                        out.extend(intersect_pieces(p, q, session_d)?);
                    }
                }
                Ok(finish_pieces(out))
            }
        }
    }

    /// Exact image under `z -> 1/z`. Fails when the region contains the
    /// origin as a set point (the image would not be a plane region).
    pub fn invert(&self, _session_d: u64) -> Result<Region> {
        let zero = QuadComplex::zero();
        match self {
            Region::Empty => Ok(Region::Empty),
            Region::TwoDim { constraints } => {
                if constraints.iter().all(|c| c.satisfied_at(&zero)) {
                    return Err(Error::OriginInRegion);
                }
                Ok(Region::TwoDim {
                    constraints: sorted(constraints.iter().map(Constraint::invert).collect()),
                })
            }
            Region::Degenerate { pieces } => {
                let mut out = Vec::with_capacity(pieces.len());
                for p in pieces {
                    if p.contains(&zero) {
                        return Err(Error::OriginInRegion);
                    }
                    out.push(match p {
                        Piece::Point(q) => Piece::Point(q.recip()),
                        Piece::Seg(seg) => {
                            if let Some(sp) = &seg.span {
                                if sp.start.is_zero() || sp.end.is_zero() {
                                    return Err(Error::InternalInvariantViolation(
                                        "degenerate piece has an open endpoint at the origin"
                                            .into(),
                                    ));
                                }
                            } else if seg.carrier.through_origin() {
                                return Err(Error::InternalInvariantViolation(
                                    "full circle through the origin inverts to a full line"
                                        .into(),
                                ));
                            }
                            let (carrier, _) = seg.carrier.invert();
                            Piece::Seg(seg.map_points(|q| q.recip(), carrier))
                        }
                    });
                }
                Ok(finish_pieces(out))
            }
        }
    }

    pub fn translate(&self, t: &QuadComplex) -> Region {
        match self {
            Region::Empty => Region::Empty,
            Region::TwoDim { constraints } => Region::TwoDim {
                constraints: sorted(constraints.iter().map(|c| c.translate(t)).collect()),
            },
            Region::Degenerate { pieces } => Region::Degenerate {
                pieces: sort_pieces(
                    pieces
                        .iter()
                        .map(|p| match p {
                            Piece::Point(q) => Piece::Point(q.clone() + t.clone()),
                            Piece::Seg(seg) => {
                                let (carrier, _) = seg.carrier.translate(t);
                                Piece::Seg(seg.map_points(|q| q.clone() + t.clone(), carrier))
                            }
                        })
                        .collect(),
                ),
            },
        }
    }

    pub fn translate_gaussian(&self, a: &GaussianInt) -> Region {
        self.translate(&a.to_quad())
    }

    pub fn apply_symmetry(&self, s: &crate::gaussian::Symmetry) -> Region {
        match self {
            Region::Empty => Region::Empty,
            Region::TwoDim { constraints } => Region::TwoDim {
                constraints: sorted(constraints.iter().map(|c| c.apply_symmetry(s)).collect()),
            },
            Region::Degenerate { pieces } => Region::Degenerate {
                pieces: sort_pieces(
                    pieces
                        .iter()
                        .map(|p| match p {
                            Piece::Point(q) => Piece::Point(s.apply_quad(q)),
                            Piece::Seg(seg) => {
                                let (carrier, _) = seg.carrier.apply_symmetry(s);
                                Piece::Seg(seg.map_points(|q| s.apply_quad(q), carrier))
                            }
                        })
                        .collect(),
                ),
            },
        }
    }

    pub fn constraints(&self) -> Option<&[Constraint]> {
        match self {
            Region::TwoDim { constraints } => Some(constraints),
            _ => None,
        }
    }

    pub fn pieces(&self) -> Option<&[Piece]> {
        match self {
            Region::Degenerate { pieces } => Some(pieces),
            _ => None,
        }
    }

    /// JSON debug dump (variant plus circline/piece data).
    pub fn dump_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("region serializes")
    }
}

fn sorted(mut cs: Vec<Constraint>) -> Vec<Constraint> {
    cs.sort_by(|x, y| circline_key(&x.circ).cmp(&circline_key(&y.circ)));
    cs.dedup();
    cs
}

fn sort_pieces(mut ps: Vec<Piece>) -> Vec<Piece> {
    ps.sort_by_key(|p| p.sort_key());
    ps.dedup();
    ps
}

/// Drops points that lie inside kept segments, sorts, and wraps.
fn finish_pieces(pieces: Vec<Piece>) -> Region {
    let segs: Vec<Piece> = pieces
        .iter()
        .filter(|p| matches!(p, Piece::Seg(_)))
        .cloned()
        .collect();
    let mut out: Vec<Piece> = segs.clone();
    for p in &pieces {
        if let Piece::Point(z) = p {
            if !segs.iter().any(|s| s.contains(z)) {
                out.push(p.clone());
            }
        }
    }
    let out = sort_pieces(out);
    if out.is_empty() {
        Region::Empty
    } else {
        Region::Degenerate { pieces: out }
    }
}

/// Merges constraints sharing a circline; `None` means an empty sign set
/// (the region is empty).
fn merge_constraints(cs: Vec<Constraint>) -> Option<Vec<Constraint>> {
    let mut cs = sorted(cs);
    let mut out: Vec<Constraint> = Vec::with_capacity(cs.len());
    for c in cs.drain(..) {
        if let Some(last) = out.last_mut() {
            if last.circ == c.circ {
                last.allow = last.allow.intersect(c.allow);
                if last.allow.is_empty() {
                    return None;
                }
                continue;
            }
        }
        out.push(c);
    }
    Some(out)
}

/// Signs a circline form attains on the closed unit square.
fn signs_on_square(circ: &Circline) -> SignSet {
    let (mn, mx) = circ.square_extrema();
    let mut s = SignSet::EMPTY;
    if mn.is_negative() {
        s = s.union(SignSet::NEG);
    }
    if mx.is_positive() {
        s = s.union(SignSet::POS);
    }
    if !mn.is_positive() && !mx.is_negative() {
        s = s.union(SignSet::ZERO);
    }
    s
}

fn normalize(cs: Vec<Constraint>, session_d: u64) -> Result<Region> {
    let merged = match merge_constraints(cs) {
        None => return Ok(Region::Empty),
        Some(m) => m,
    };

    // Square-based reduction applies only when all four edges bound the
    // region from the correct side.
    let edges = square_edge_circlines();
    let edge_dir = |i: usize| -> SignSet {
        // Edges 0,2 are the low edges (region on the positive side),
        // edges 1,3 the high edges (region on the negative side).
        if i % 2 == 0 {
            SignSet::POS
        } else {
            SignSet::NEG
        }
    };
    let mut square_based = true;
    for (i, e) in edges.iter().enumerate() {
        let found = merged.iter().find(|c| &c.circ == e);
        let ok = match found {
            Some(c) => !c.allow.contains_sign(if edge_dir(i) == SignSet::POS { -1 } else { 1 }),
            None => false,
        };
        if !ok {
            square_based = false;
            break;
        }
    }

    if !square_based {
        return Ok(Region::TwoDim {
            constraints: merged,
        });
    }

    let is_edge = |c: &Circline| edges.iter().any(|e| e == c);
    let mut kept: Vec<Constraint> = Vec::new();
    let mut pinch: Option<Circline> = None;
    for c in &merged {
        if is_edge(&c.circ) {
            if c.allow.is_zero_only() && pinch.is_none() {
                pinch = Some(c.circ.clone());
            }
            kept.push(c.clone());
            continue;
        }
        let attainable = signs_on_square(&c.circ);
        let feasible = c.allow.intersect(attainable);
        if feasible.is_empty() {
            return Ok(Region::Empty);
        }
        if attainable.is_subset_of(c.allow) {
            continue; // redundant over the square
        }
        if feasible.is_zero_only() && pinch.is_none() {
            pinch = Some(c.circ.clone());
        }
        kept.push(c.clone());
    }

    if let Some(carrier) = pinch {
        let pieces = descend(&kept, &carrier, session_d)?;
        return Ok(finish_pieces(pieces));
    }

    Ok(Region::TwoDim {
        constraints: sorted(kept),
    })
}

/// Solves all constraints on a single carrier circline, yielding exact
/// degenerate pieces.
fn descend(constraints: &[Constraint], carrier: &Circline, session_d: u64) -> Result<Vec<Piece>> {
    let param = CarrierParam::from_circline(carrier, session_d)?;
    let mut t = TSet::all(param.is_circle());
    for c in constraints {
        if &c.circ == carrier {
            if !c.allow.has_zero() {
                return Ok(vec![]);
            }
            continue;
        }
        let (p, q, r) = param.restrict(&c.circ);
        let inf = param.sign_at_infinity(&c.circ);
        t = t.intersect(&TSet::from_quadratic(&p, &q, &r, c.allow, inf, session_d)?);
        if t.is_empty() {
            return Ok(vec![]);
        }
    }
    materialize(&t, &param, carrier)
}

/// Imposes side constraints on existing degenerate pieces.
fn impose(constraints: &[Constraint], pieces: &[Piece], session_d: u64) -> Result<Region> {
    let mut out = Vec::new();
    for piece in pieces {
        match piece {
            Piece::Point(z) => {
                if constraints.iter().all(|c| c.satisfied_at(z)) {
                    out.push(piece.clone());
                }
            }
            Piece::Seg(seg) => {
                let param = CarrierParam::from_circline(&seg.carrier, session_d)?;
                let mut t = seg_to_tset(seg, &param);
                let mut dead = false;
                for c in constraints {
                    if c.circ == seg.carrier {
                        if !c.allow.has_zero() {
                            dead = true;
                            break;
                        }
                        continue;
                    }
                    let (p, q, r) = param.restrict(&c.circ);
                    let inf = param.sign_at_infinity(&c.circ);
                    t = t.intersect(&TSet::from_quadratic(&p, &q, &r, c.allow, inf, session_d)?);
                    if t.is_empty() {
                        dead = true;
                        break;
                    }
                }
                if !dead {
                    out.extend(materialize(&t, &param, &seg.carrier)?);
                }
            }
        }
    }
    Ok(finish_pieces(out))
}

fn intersect_pieces(p: &Piece, q: &Piece, session_d: u64) -> Result<Vec<Piece>> {
    match (p, q) {
        (Piece::Point(a), _) => Ok(if q.contains(a) {
            vec![Piece::Point(a.clone())]
        } else {
            vec![]
        }),
        (_, Piece::Point(b)) => Ok(if p.contains(b) {
            vec![Piece::Point(b.clone())]
        } else {
            vec![]
        }),
        (Piece::Seg(s), Piece::Seg(t)) => {
            if s.carrier == t.carrier {
                let param = CarrierParam::from_circline(&s.carrier, session_d)?;
                let ts = seg_to_tset(s, &param).intersect(&seg_to_tset(t, &param));
                materialize(&ts, &param, &s.carrier)
            } else {
                // Distinct circlines meet in at most two points.
                let param = CarrierParam::from_circline(&s.carrier, session_d)?;
                let (a, b, c) = param.restrict(&t.carrier);
                let roots =
                    TSet::from_quadratic(&a, &b, &c, SignSet::ZERO, None, session_d)?;
                let mut pts: Vec<QuadComplex> = roots
                    .intervals
                    .iter()
                    .filter_map(|iv| iv.is_point().map(|v| param.at(v)))
                    .collect();
                if let Some(inf) = param.at_infinity() {
                    if t.carrier.sign_at(&inf) == 0 {
                        pts.push(inf);
                    }
                }
                Ok(pts
                    .into_iter()
                    .filter(|z| p.contains(z) && q.contains(z))
                    .map(Piece::Point)
                    .collect())
            }
        }
    }
}

/// Rebuilds the parameter set of a segment piece.
fn seg_to_tset(seg: &Segment, param: &CarrierParam) -> TSet {
    let sp = match &seg.span {
        None => return TSet::all(param.is_circle()),
        Some(sp) => sp,
    };
    if sp.start == sp.end {
        // Punctured full circle.
        return match param.to_t(&sp.start) {
            None => TSet {
                intervals: vec![TInterval::all()],
                at_infinity: false,
            },
            Some(t0) => TSet {
                intervals: vec![
                    TInterval {
                        lo: None,
                        hi: Some((t0.clone(), false)),
                    },
                    TInterval {
                        lo: Some((t0, false)),
                        hi: None,
                    },
                ],
                at_infinity: param.is_circle(),
            },
        };
    }
    let ts = param.to_t(&sp.start);
    let te = param.to_t(&sp.end);
    match (ts, te) {
        (Some(a), Some(b)) => {
            let (lo, lo_c, hi, hi_c) = if a.cmp_exact(&b) == std::cmp::Ordering::Less {
                (a, sp.start_closed, b, sp.end_closed)
            } else {
                (b, sp.end_closed, a, sp.start_closed)
            };
            if !param.is_circle() {
                return TSet {
                    intervals: vec![TInterval {
                        lo: Some((lo, lo_c)),
                        hi: Some((hi, hi_c)),
                    }],
                    at_infinity: false,
                };
            }
            let wraps = match param.to_t(&sp.witness) {
                None => true,
                Some(w) => {
                    !(lo.cmp_exact(&w) == std::cmp::Ordering::Less
                        && w.cmp_exact(&hi) == std::cmp::Ordering::Less)
                }
            };
            if wraps {
                TSet {
                    intervals: vec![
                        TInterval {
                            lo: None,
                            hi: Some((lo, lo_c)),
                        },
                        TInterval {
                            lo: Some((hi, hi_c)),
                            hi: None,
                        },
                    ],
                    at_infinity: true,
                }
            } else {
                TSet {
                    intervals: vec![TInterval {
                        lo: Some((lo, lo_c)),
                        hi: Some((hi, hi_c)),
                    }],
                    at_infinity: false,
                }
            }
        }
        (None, Some(b)) => side_of(b, sp.end_closed, param.to_t(&sp.witness), sp.start_closed),
        (Some(a), None) => side_of(a, sp.start_closed, param.to_t(&sp.witness), sp.end_closed),
        (None, None) => unreachable!("start == end was handled above"),
    }
}

/// Arc with one endpoint at the carrier's infinity point: the set is one of
/// the two unbounded parameter rays, selected by the witness.
fn side_of(
    fin: QuadScalar,
    fin_closed: bool,
    witness_t: Option<QuadScalar>,
    inf_closed: bool,
) -> TSet {
    let below = match &witness_t {
        None => false,
        Some(w) => w.cmp_exact(&fin) == std::cmp::Ordering::Less,
    };
    let interval = if below {
        TInterval {
            lo: None,
            hi: Some((fin, fin_closed)),
        }
    } else {
        TInterval {
            lo: Some((fin, fin_closed)),
            hi: None,
        }
    };
    TSet {
        intervals: vec![interval],
        at_infinity: inf_closed,
    }
}

/// Converts a parameter set back into concrete pieces on the carrier.
fn materialize(t: &TSet, param: &CarrierParam, carrier: &Circline) -> Result<Vec<Piece>> {
    let mut pieces: Vec<Piece> = Vec::new();
    if !param.is_circle() {
        for iv in &t.intervals {
            match (&iv.lo, &iv.hi) {
                (Some((a, ai)), Some((b, bi))) => {
                    if a == b {
                        pieces.push(Piece::Point(param.at(a)));
                    } else {
                        let mid =
                            (a.clone() + b.clone()) / QuadScalar::from_int(2);
                        pieces.push(Piece::Seg(Segment {
                            carrier: carrier.clone(),
                            span: Some(SegSpan {
                                start: param.at(a),
                                start_closed: *ai,
                                end: param.at(b),
                                end_closed: *bi,
                                witness: param.at(&mid),
                            }),
                        }));
                    }
                }
                _ => {
                    return Err(Error::InternalInvariantViolation(
                        "unbounded degenerate piece on a line".into(),
                    ))
                }
            }
        }
        return Ok(pieces);
    }

    let infp = param.at_infinity().expect("circle has an infinity point");
    let mut bounded: Vec<&TInterval> = Vec::new();
    let mut unb_lo: Option<&TInterval> = None; // (-inf, x]
    let mut unb_hi: Option<&TInterval> = None; // [y, +inf)
    let mut whole_line = false;
    for iv in &t.intervals {
        match (&iv.lo, &iv.hi) {
            (None, None) => whole_line = true,
            (None, Some(_)) => unb_lo = Some(iv),
            (Some(_), None) => unb_hi = Some(iv),
            (Some(_), Some(_)) => bounded.push(iv),
        }
    }

    let arc = |start: QuadComplex,
               start_closed: bool,
               end: QuadComplex,
               end_closed: bool,
               witness: QuadComplex| {
        Piece::Seg(Segment {
            carrier: carrier.clone(),
            span: Some(SegSpan {
                start,
                start_closed,
                end,
                end_closed,
                witness,
            }),
        })
    };

    if whole_line {
        if t.at_infinity {
            pieces.push(Piece::Seg(Segment {
                carrier: carrier.clone(),
                span: None,
            }));
        } else {
            // Full circle punctured at the infinity point.
            pieces.push(Piece::Seg(Segment {
                carrier: carrier.clone(),
                span: Some(SegSpan {
                    start: infp.clone(),
                    start_closed: false,
                    end: infp.clone(),
                    end_closed: false,
                    witness: param.at(&QuadScalar::zero()),
                }),
            }));
        }
    } else if t.at_infinity {
        match (unb_hi, unb_lo) {
            (Some(h), Some(l)) => {
                let (y, yi) = h.lo.clone().expect("unbounded-high has a lower bound");
                let (x, xi) = l.hi.clone().expect("unbounded-low has an upper bound");
                pieces.push(arc(param.at(&y), yi, param.at(&x), xi, infp.clone()));
            }
            (Some(h), None) => {
                let (y, yi) = h.lo.clone().expect("bound");
                let w = y.clone() + QuadScalar::one();
                pieces.push(arc(param.at(&y), yi, infp.clone(), true, param.at(&w)));
            }
            (None, Some(l)) => {
                let (x, xi) = l.hi.clone().expect("bound");
                let w = x.clone() - QuadScalar::one();
                pieces.push(arc(infp.clone(), true, param.at(&x), xi, param.at(&w)));
            }
            (None, None) => pieces.push(Piece::Point(infp.clone())),
        }
    } else {
        if let Some(h) = unb_hi {
            let (y, yi) = h.lo.clone().expect("bound");
            let w = y.clone() + QuadScalar::one();
            pieces.push(arc(param.at(&y), yi, infp.clone(), false, param.at(&w)));
        }
        if let Some(l) = unb_lo {
            let (x, xi) = l.hi.clone().expect("bound");
            let w = x.clone() - QuadScalar::one();
            pieces.push(arc(infp.clone(), false, param.at(&x), xi, param.at(&w)));
        }
    }

    for iv in bounded {
        let (a, ai) = iv.lo.clone().expect("bounded");
        let (b, bi) = iv.hi.clone().expect("bounded");
        if a == b {
            pieces.push(Piece::Point(param.at(&a)));
        } else {
            let mid = (a.clone() + b.clone()) / QuadScalar::from_int(2);
            pieces.push(arc(param.at(&a), ai, param.at(&b), bi, param.at(&mid)));
        }
    }

    Ok(pieces)
}

/// The region `iota(tau_a(F))`, i.e. the set of `z` whose first digit is `a`
/// intersected only against the shifted square (not the square itself).
pub fn cyl1_pullback(a: &GaussianInt) -> Region {
    let t = a.to_quad();
    let constraints: Vec<Constraint> = square_constraints()
        .iter()
        .map(|c| c.translate(&t).invert())
        .collect();
    Region::TwoDim {
        constraints: sorted(constraints),
    }
}

/// One step of the prototype recurrence: `R -> tau_{-a}( iota( R o C1(a) ) )`.
///
/// The intersection with the digit-`a` pullback is taken before inverting,
/// which keeps the inverted set bounded away from the origin.
pub fn prototype_step(region: &Region, a: &GaussianInt, session_d: u64) -> Result<Region> {
    a.require_digit()?;
    let pb = cyl1_pullback(a);
    let s = region.intersect(&pb, session_d)?;
    if s.is_empty() {
        return Ok(Region::Empty);
    }
    let inv = s.invert(session_d)?;
    let shifted = inv.translate_gaussian(&-a.clone());
    match shifted {
        Region::TwoDim { constraints } => normalize(constraints, session_d),
        other => Ok(other),
    }
}

/// One step of the cylinder chain: `inner -> F o iota(tau_a(inner))`.
pub fn cylinder_step(inner: &Region, a: &GaussianInt, session_d: u64) -> Result<Region> {
    a.require_digit()?;
    let moved = inner.translate_gaussian(a);
    let inv = moved.invert(session_d)?;
    inv.intersect(&Region::square(), session_d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::QuadScalar;

    const D: u64 = 3;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn alpha() -> QuadScalar {
        // (2 - sqrt 3)/2
        QuadScalar::new(
            num_rational::BigRational::new(2.into(), 2.into()),
            num_rational::BigRational::new((-1).into(), 2.into()),
            3,
        )
    }

    fn pt(re: QuadScalar, im: QuadScalar) -> QuadComplex {
        QuadComplex::new(re, im)
    }

    #[test]
    fn square_is_two_dimensional() {
        assert!(Region::square().has_nonempty_interior());
        assert!(Region::square().contains(&QuadComplex::zero()));
        assert!(Region::square().contains(&pt(
            QuadScalar::ratio(-1, 2),
            QuadScalar::ratio(-1, 2)
        )));
        assert!(!Region::square().contains(&pt(QuadScalar::ratio(1, 2), QuadScalar::zero())));
    }

    #[test]
    fn prototype_of_minus_two_excludes_unit_disk_at_one() {
        let r = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        assert!(r.has_nonempty_interior());
        // 0.4 is inside the open disk D(1), so it must be excluded.
        assert!(!r.contains(&pt(QuadScalar::ratio(2, 5), QuadScalar::zero())));
        // The boundary circle |z-1| = 1 stays: z = 0 lies on it.
        assert!(r.contains(&QuadComplex::zero()));
        // A point away from the disk stays.
        assert!(r.contains(&pt(QuadScalar::ratio(-2, 5), QuadScalar::ratio(2, 5))));
    }

    #[test]
    fn intersect_is_idempotent_on_square() {
        let s = Region::square();
        assert_eq!(s.intersect(&s, D).unwrap(), s);
    }

    #[test]
    fn double_inversion_roundtrips() {
        let r = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        let pb = cyl1_pullback(&g(3, 1));
        let s = r.intersect(&pb, D).unwrap();
        let once = s.invert(D).unwrap();
        let twice = once.invert(D).unwrap();
        assert_eq!(twice, s);
    }

    /// The three-case segment formula for prototypes of `(-2, 1+mi)`.
    #[test]
    fn segment_formulas_for_level_two() {
        let half = QuadScalar::ratio(1, 2);
        let left = QuadScalar::ratio(-1, 2);

        let expect = |m: i64| -> (QuadScalar, bool, QuadScalar, bool) {
            // (start_im, start_closed, end_im, end_closed) on Re = -1/2.
            if m == 2 {
                (-alpha(), true, half.clone(), false)
            } else if m == -2 {
                (-half.clone(), true, alpha(), false)
            } else {
                (-half.clone(), true, half.clone(), false)
            }
        };

        for m in [2i64, -2, 3, -3, 5] {
            let r1 = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
            let r2 = prototype_step(&r1, &g(1, m), D).unwrap();
            let pieces = r2.pieces().unwrap_or_else(|| panic!("m={m}: degenerate expected"));
            assert_eq!(pieces.len(), 1, "m={m}");
            let seg = match &pieces[0] {
                Piece::Seg(s) => s,
                other => panic!("m={m}: expected segment, got {other:?}"),
            };
            assert!(seg.carrier.is_line(), "m={m}");
            let (s_im, s_cl, e_im, e_cl) = expect(m);
            let sp = seg.span.as_ref().expect("bounded segment");
            // Materialization orders by the parameter; normalize to
            // increasing imaginary part for comparison.
            let (lo, lo_cl, hi, hi_cl) = if sp.start.im.cmp_exact(&sp.end.im)
                == std::cmp::Ordering::Less
            {
                (&sp.start, sp.start_closed, &sp.end, sp.end_closed)
            } else {
                (&sp.end, sp.end_closed, &sp.start, sp.start_closed)
            };
            assert_eq!(lo.re, left, "m={m}");
            assert_eq!(hi.re, left, "m={m}");
            assert_eq!(lo.im, s_im, "m={m}");
            assert_eq!(hi.im, e_im, "m={m}");
            assert_eq!(lo_cl, s_cl, "m={m}");
            assert_eq!(hi_cl, e_cl, "m={m}");
        }
    }

    /// Deeper prototype: `(-2, 1+mi, -2)` with `|m| >= 3` is the arc
    /// `F o C(1;1)`.
    #[test]
    fn level_three_is_unit_circle_arc() {
        let r1 = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        let r2 = prototype_step(&r1, &g(1, 4), D).unwrap();
        let r3 = prototype_step(&r2, &g(-2, 0), D).unwrap();
        let pieces = r3.pieces().expect("degenerate");
        assert_eq!(pieces.len(), 1);
        let seg = match &pieces[0] {
            Piece::Seg(s) => s,
            other => panic!("expected arc, got {other:?}"),
        };
        assert!(!seg.carrier.is_line());
        assert_eq!(seg.carrier.center().unwrap(), QuadComplex::from_ints(1, 0));
        assert_eq!(seg.carrier.radius_sqr().unwrap(), QuadScalar::one());
        // The arc passes through the origin and is cut by the square edges
        // at 1 - sqrt(3)/2 +- i/2 (bottom end included, top excluded).
        assert!(seg.contains(&QuadComplex::zero()));
        let x = QuadScalar::new(
            num_rational::BigRational::from_integer(1.into()),
            num_rational::BigRational::new((-1).into(), 2.into()),
            3,
        );
        let bottom = pt(x.clone(), QuadScalar::ratio(-1, 2));
        let top = pt(x, QuadScalar::ratio(1, 2));
        assert!(seg.contains(&bottom), "closed bottom endpoint");
        assert!(!seg.contains(&top), "open top endpoint");
    }

    /// The point-pinch that starts the extremely irregular orbit.
    #[test]
    fn level_three_point_pinch_at_zeta() {
        let r1 = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        let r2 = prototype_step(&r1, &g(1, 2), D).unwrap();
        let r3 = prototype_step(&r2, &g(-2, 1), D).unwrap();
        // F_3(-2, 1+2i, -2+i) = { zeta_4 } = { alpha - i/2 }.
        let p = r3.as_single_point().expect("single point");
        assert_eq!(p.re, alpha());
        assert_eq!(p.im, QuadScalar::ratio(-1, 2));
    }

    #[test]
    fn empty_when_digit_impossible() {
        // From F_2(-2, 1+3i) (a segment), digit 5i is unreachable.
        let r1 = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        let r2 = prototype_step(&r1, &g(1, 3), D).unwrap();
        let r3 = prototype_step(&r2, &g(0, 5), D).unwrap();
        assert!(r3.is_empty());
    }

    #[test]
    fn symmetry_preserves_variant() {
        let r1 = prototype_step(&Region::square(), &g(-2, 0), D).unwrap();
        let m = r1.apply_symmetry(&crate::gaussian::Symmetry::MIR1);
        assert!(m.has_nonempty_interior());
        // Mir1 fixes the disk at 1, so membership mirrors vertically.
        assert!(!m.contains(&pt(QuadScalar::ratio(2, 5), QuadScalar::zero())));
    }
}
