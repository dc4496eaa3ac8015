//! The sofic transition graph on the thirteen open prototype states.
//!
//! Edges are labeled by digits. For digits of Chebyshev size at most 2 the
//! targets are computed by exact geometry once and stored in an exception
//! table; beyond that no shifted unit disk can reach the square, so a
//! closed-form large-digit rule applies (verified against geometry in the
//! tests).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::ToPrimitive;

use super::prototype::{match_catalogue, PrototypeState};
use crate::error::{Error, Result};
use crate::gaussian::GaussianInt;
use crate::geometry::{prototype_step, Region};

/// Chebyshev cutoff of the exception table.
pub const TABLE_CUT: i64 = 2;

/// The transition graph: 13 vertices, digit-labeled edges.
#[derive(Clone, Debug)]
pub struct SoficGraph {
    table: BTreeMap<(u8, (i64, i64)), Option<u8>>,
}

/// All digits with Chebyshev size at most `cut`.
pub fn digits_up_to(cut: i64) -> Vec<GaussianInt> {
    let mut v = Vec::new();
    for re in -cut..=cut {
        for im in -cut..=cut {
            let g = GaussianInt::new(re, im);
            if g.is_digit() {
                v.push(g);
            }
        }
    }
    v
}

impl SoficGraph {
    /// Builds the graph by exact geometry over the exception range.
    pub fn build() -> Result<SoficGraph> {
        let mut table = BTreeMap::new();
        for state in PrototypeState::all() {
            let region = state.region_open();
            for b in digits_up_to(TABLE_CUT) {
                let target = geometric_transition(&region, &b)?;
                let key = (state.index(), b.to_i64_pair().expect("small digit"));
                table.insert(key, target.map(|s| s.index()));
            }
        }
        Ok(SoficGraph { table })
    }

    /// The edge target for `(state, digit)`, if the edge exists.
    pub fn edge(&self, state: PrototypeState, b: &GaussianInt) -> Result<Option<PrototypeState>> {
        b.require_digit()?;
        if b.linf() <= TABLE_CUT.into() {
            let key = (state.index(), b.to_i64_pair().expect("small digit"));
            return Ok(self.table[&key].map(PrototypeState));
        }
        Ok(large_digit_rule(state, b))
    }

    /// Walks a word from the full-square state; `None` once an edge is
    /// missing.
    pub fn walk(&self, digits: &[GaussianInt]) -> Result<Vec<Option<PrototypeState>>> {
        let mut out = Vec::with_capacity(digits.len());
        let mut state = Some(PrototypeState::SQ);
        for d in digits {
            state = match state {
                Some(s) => self.edge(s, d)?,
                None => None,
            };
            out.push(state);
        }
        Ok(out)
    }

    /// Number of existing edges in the exception table.
    pub fn table_edge_count(&self) -> usize {
        self.table.values().filter(|t| t.is_some()).count()
    }

    /// Plain-text export: vertex list, labeled edge list, large-digit rule.
    pub fn export_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "vertices {}", PrototypeState::COUNT).unwrap();
        for s in PrototypeState::all() {
            writeln!(out, "vertex {} {}", s.index(), s.name()).unwrap();
        }
        writeln!(
            out,
            "edges (exception table, Chebyshev size <= {TABLE_CUT})"
        )
        .unwrap();
        for ((s, (re, im)), target) in &self.table {
            if let Some(t) = target {
                writeln!(out, "edge {s} -> {t} label {re},{im}").unwrap();
            }
        }
        writeln!(
            out,
            "rule: for |b|_inf > {TABLE_CUT}, edge exists iff Re(v*b) <= 0 \
             for every excluded axis unit v; target is vertex 0"
        )
        .unwrap();
        out
    }
}

/// Exact geometric transition from an open prototype region.
fn geometric_transition(region: &Region, b: &GaussianInt) -> Result<Option<PrototypeState>> {
    // Open prototype sets never leave the session-free rational field, so
    // the session tag is irrelevant here.
    let next = prototype_step(region, b, 0)?;
    match next {
        Region::Empty | Region::Degenerate { .. } => Ok(None),
        two @ Region::TwoDim { .. } => match match_catalogue(&two, true) {
            Ok(state) => Ok(Some(state)),
            Err(e) => Err(e),
        },
    }
}

/// Closed-form rule for digits beyond the exception table: no shifted unit
/// disk reaches the square, so the image is the full square unless an
/// excluded axis unit kills the transition.
fn large_digit_rule(state: PrototypeState, b: &GaussianInt) -> Option<PrototypeState> {
    for &(x, y) in state.k_set() {
        if x.abs() + y.abs() != 1 {
            continue;
        }
        // Re(v * b) with v = x + iy.
        let re = x * b.re.to_i64().unwrap_or(i64::MAX / 4)
            - y * b.im.to_i64().unwrap_or(i64::MAX / 4);
        if re >= 1 {
            return None;
        }
    }
    Some(PrototypeState::SQ)
}

/// Exact containment test `tau_b[closed F] inside iota[open P]`: when it
/// holds, the transition is full regardless of later digits.
pub fn full_transition(state: PrototypeState, b: &GaussianInt) -> bool {
    let region = state.region_open();
    let constraints = match region.constraints() {
        Some(cs) => cs,
        None => return false,
    };
    for c in constraints {
        // Need: c holds at iota(z) for all z in b + closed square, i.e. the
        // inverted-and-shifted constraint holds on the whole closed square.
        let moved = c.invert().translate(&b.to_quad());
        let (mn, mx) = moved.circ.square_extrema();
        let ok = match moved.allow {
            a if a == crate::geometry::SignSet::POS => mn.is_positive(),
            a if a == crate::geometry::SignSet::POS_ZERO => !mn.is_negative(),
            a if a == crate::geometry::SignSet::NEG => mx.is_negative(),
            a if a == crate::geometry::SignSet::NEG_ZERO => !mx.is_positive(),
            _ => false,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Independent closed-form transition used as a cross-check oracle: kills
/// from excluded axis units, unit-disk bites from shifted square edges and
/// conjugated diagonal disks, subsumption, catalogue lookup.
pub fn closed_form_transition(
    state: PrototypeState,
    b: &GaussianInt,
) -> Result<Option<PrototypeState>> {
    let (bx, by) = match b.to_i64_pair() {
        Some(p) => p,
        None => return Ok(large_digit_rule(state, b)),
    };
    // Kills from excluded axis units.
    for &(x, y) in state.k_set() {
        if x.abs() + y.abs() == 1 && x * bx - y * by >= 1 {
            return Ok(None);
        }
    }
    // Candidate excluded disks: images of the four square edges at u - b,
    // and of excluded diagonal disks at conj(v) - b.
    let mut centers: Vec<(i64, i64)> = vec![
        (1 - bx, -by),
        (-1 - bx, -by),
        (-bx, 1 - by),
        (-bx, -1 - by),
    ];
    for &(x, y) in state.k_set() {
        if x.abs() + y.abs() == 2 {
            centers.push((x - bx, -y - by));
        }
    }
    let mut k = std::collections::BTreeSet::new();
    for (cx, cy) in centers {
        if (cx, cy) == (0, 0) {
            return Ok(None); // unit disk at the origin covers the square
        }
        if cx.abs() <= 1 && cy.abs() <= 1 {
            k.insert((cx, cy));
        }
    }
    if [(1, 0), (-1, 0), (0, 1), (0, -1)].iter().all(|u| k.contains(u)) {
        return Ok(None); // the four axis disks cover the square
    }
    let axes: Vec<(i64, i64)> = k
        .iter()
        .cloned()
        .filter(|&(x, y)| x.abs() + y.abs() == 1)
        .collect();
    k.retain(|&(x, y)| {
        x.abs() + y.abs() != 2
            || !axes
                .iter()
                .any(|&(ax, ay)| (x - ax).abs() + (y - ay).abs() == 1)
    });
    PrototypeState::from_k_set(&k)
        .map(Some)
        .ok_or_else(|| Error::CatalogueViolation(format!("oracle set {k:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    #[test]
    fn minus_two_from_square_excludes_disk_at_one() {
        let graph = SoficGraph::build().unwrap();
        let t = graph.edge(PrototypeState::SQ, &g(-2, 0)).unwrap().unwrap();
        assert_eq!(t.k_set(), &[(1, 0)]);
    }

    #[test]
    fn kill_rule_matches_excluded_axis_unit() {
        let graph = SoficGraph::build().unwrap();
        // From SQ\D(1), digits with Re(b) >= 1 are dead.
        let s = PrototypeState::from_k_set(&[(1, 0)].into_iter().collect()).unwrap();
        assert!(graph.edge(s, &g(1, 3)).unwrap().is_none());
        assert!(graph.edge(s, &g(2, 0)).unwrap().is_none());
        assert!(graph.edge(s, &g(0, 2)).unwrap().is_some());
        assert!(graph.edge(s, &g(-2, 0)).unwrap().is_some());
    }

    #[test]
    fn large_digits_from_square_are_full() {
        let graph = SoficGraph::build().unwrap();
        for b in [g(3, 3), g(-4, 0), g(0, 5), g(7, -9)] {
            let t = graph.edge(PrototypeState::SQ, &b).unwrap().unwrap();
            assert_eq!(t, PrototypeState::SQ);
            assert!(full_transition(PrototypeState::SQ, &b));
        }
        assert!(!full_transition(PrototypeState::SQ, &g(-2, 0)));
    }

    #[test]
    fn geometry_agrees_with_closed_form_oracle() {
        let graph = SoficGraph::build().unwrap();
        for state in PrototypeState::all() {
            for b in digits_up_to(4) {
                let via_graph = graph.edge(state, &b).unwrap();
                let via_oracle = closed_form_transition(state, &b).unwrap();
                assert_eq!(via_graph, via_oracle, "state {state:?} digit {b}");
            }
        }
    }

    #[test]
    fn reachable_closure_is_the_catalogue() {
        let graph = SoficGraph::build().unwrap();
        let mut seen = std::collections::BTreeSet::new();
        let mut frontier = vec![PrototypeState::SQ];
        seen.insert(PrototypeState::SQ);
        while let Some(s) = frontier.pop() {
            for b in digits_up_to(TABLE_CUT) {
                if let Some(t) = graph.edge(s, &b).unwrap() {
                    if seen.insert(t) {
                        frontier.push(t);
                    }
                }
            }
        }
        assert_eq!(seen.len(), 13);
    }
}
