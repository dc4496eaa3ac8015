//! The finite-word taxonomy, the sofic transition graph on the thirteen
//! open prototype states, and cylinder/prototype computation.

pub mod classify;
pub mod graph;
pub mod metric;
pub mod prototype;
pub mod word;

pub use classify::{
    classify, concat_regular, cylinder_region, factor_check, find_full_extension,
    is_regular_prefix_closed, prototype_region, Classification,
};
pub use graph::{digits_up_to, full_transition, SoficGraph};
pub use metric::shift_distance;
pub use prototype::{match_catalogue, PrototypeState};
pub use word::{DigitStream, PeriodicStream, Word, WordClass};
