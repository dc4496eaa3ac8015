//! The catalogue of the thirteen open prototype shapes and recognition of
//! computed regions against it.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, Symmetry};
use crate::geometry::{Circline, Constraint, Region, SignSet};
use crate::quad::{QuadComplex, QuadScalar};

/// One of the 13 open prototype shapes: the open square minus nothing, one
/// closed unit disk at a unit (axis or diagonal), or two closed unit disks
/// at adjacent axis units.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrototypeState(pub u8);

/// Disk centers per state index. Axis units first, then diagonals, then
/// the four adjacent axis pairs.
const K_SETS: [&[(i64, i64)]; 13] = [
    &[],
    &[(1, 0)],
    &[(0, 1)],
    &[(-1, 0)],
    &[(0, -1)],
    &[(1, 1)],
    &[(-1, 1)],
    &[(-1, -1)],
    &[(1, -1)],
    &[(1, 0), (0, 1)],
    &[(0, 1), (-1, 0)],
    &[(-1, 0), (0, -1)],
    &[(0, -1), (1, 0)],
];

impl PrototypeState {
    pub const SQ: PrototypeState = PrototypeState(0);
    pub const COUNT: usize = 13;

    pub fn all() -> impl Iterator<Item = PrototypeState> {
        (0..Self::COUNT as u8).map(PrototypeState)
    }

    /// Excluded closed-unit-disk centers.
    pub fn k_set(&self) -> &'static [(i64, i64)] {
        K_SETS[self.0 as usize]
    }

    pub fn index(&self) -> u8 {
        self.0
    }

    /// Builds the state from a set of excluded centers (already subsumed).
    pub fn from_k_set(k: &BTreeSet<(i64, i64)>) -> Option<PrototypeState> {
        for s in Self::all() {
            let mine: BTreeSet<(i64, i64)> = s.k_set().iter().cloned().collect();
            if &mine == k {
                return Some(s);
            }
        }
        None
    }

    /// The open region of the state: open square minus closed unit disks.
    pub fn region_open(&self) -> Region {
        let mut cs = crate::geometry::constraint::square_constraints_with(true);
        for &(x, y) in self.k_set() {
            let center = QuadComplex::from_ints(x, y);
            let circ = Circline::circle(&center, QuadScalar::one());
            cs.push(Constraint::from_canonical(circ, SignSet::POS));
        }
        Region::from_constraints(cs, 0).expect("catalogue regions normalize")
    }

    /// Image of the state under a dihedral symmetry (the catalogue is
    /// closed under the full group).
    pub fn apply_symmetry(&self, s: &Symmetry) -> PrototypeState {
        let k: BTreeSet<(i64, i64)> = self
            .k_set()
            .iter()
            .map(|&(x, y)| {
                let g = s.apply_gaussian(&GaussianInt::new(x, y));
                (
                    i64::try_from(&g.re).expect("unit"),
                    i64::try_from(&g.im).expect("unit"),
                )
            })
            .collect();
        PrototypeState::from_k_set(&k).expect("catalogue is symmetry-closed")
    }

    pub fn name(&self) -> String {
        let disk = |c: (i64, i64)| format!("D({})", GaussianInt::new(c.0, c.1));
        match self.k_set() {
            [] => "SQ".to_string(),
            [a] => format!("SQ\\{}", disk(*a)),
            [a, b] => format!("SQ\\({}+{})", disk(*a), disk(*b)),
            _ => unreachable!(),
        }
    }
}

impl fmt::Debug for PrototypeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for PrototypeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// Extracts the excluded-disk centers from a normalized two-dimensional
/// region and matches it against the catalogue.
///
/// `strict_only` demands strictly-excluded closed disks (the open-world
/// form); the half-open tracker also produces `POS_ZERO` exclusions.
pub fn match_catalogue(region: &Region, strict_only: bool) -> Result<PrototypeState> {
    let constraints = region
        .constraints()
        .ok_or_else(|| Error::CatalogueViolation("region is not two-dimensional".into()))?;
    let edges = crate::geometry::constraint::square_edge_circlines();
    let mut k: BTreeSet<(i64, i64)> = BTreeSet::new();
    for c in constraints {
        if edges.iter().any(|e| e == &c.circ) {
            continue;
        }
        let bad = |msg: &str| -> Error {
            Error::CatalogueViolation(format!("{msg}: {:?}", c))
        };
        if c.circ.is_line() {
            return Err(bad("unexpected line constraint"));
        }
        if c.circ.radius_sqr() != Some(QuadScalar::one()) {
            return Err(bad("non-unit circle"));
        }
        let center = c.circ.center().expect("circle");
        let (cx, cy) = match (center.re.as_rational(), center.im.as_rational()) {
            (Some(a), Some(b)) if a.is_integer() && b.is_integer() => (
                i64::try_from(a.to_integer()).map_err(|_| bad("huge center"))?,
                i64::try_from(b.to_integer()).map_err(|_| bad("huge center"))?,
            ),
            _ => return Err(bad("non-integer center")),
        };
        let ok_allow = if strict_only {
            c.allow == SignSet::POS
        } else {
            c.allow == SignSet::POS || c.allow == SignSet::POS_ZERO
        };
        if !ok_allow {
            return Err(bad("not a disk exclusion"));
        }
        if cx.abs() > 1 || cy.abs() > 1 || (cx, cy) == (0, 0) {
            return Err(bad("center outside the unit neighborhood"));
        }
        k.insert((cx, cy));
    }

    // A diagonal disk adjacent to an axis disk is contained in it over the
    // square, so it is redundant in the open-region normal form.
    let axes: Vec<(i64, i64)> = k
        .iter()
        .cloned()
        .filter(|&(x, y)| x.abs() + y.abs() == 1)
        .collect();
    k.retain(|&(x, y)| {
        if x.abs() + y.abs() != 2 {
            return true;
        }
        !axes
            .iter()
            .any(|&(ax, ay)| (x - ax).abs() + (y - ay).abs() == 1)
    });

    PrototypeState::from_k_set(&k).ok_or_else(|| {
        Error::CatalogueViolation(format!("excluded-disk set {k:?} is not catalogued"))
    })
}
