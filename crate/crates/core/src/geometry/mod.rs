//! Exact symbolic plane geometry: circlines, side constraints, regions and
//! their images under inversion, translations and dihedral symmetries.

pub mod carrier;
pub mod circline;
pub mod constraint;
pub mod region;
pub mod svg;

pub use circline::Circline;
pub use constraint::{Constraint, SignSet};
pub use region::{cyl1_pullback, cylinder_step, prototype_step, Piece, Region, SegSpan, Segment};
pub use svg::{emit_svg, emit_svg_panels, Style};
