//! Digit expansion, convergents, certified evaluation and the mirror
//! formula.

pub mod ball;
pub mod constants;
pub mod convergent;
pub mod eval;
pub mod expand;
pub mod lambda;

pub use ball::ComplexBall;
pub use constants::{alpha, zeta};
pub use convergent::{convergents, phi_pow, q_growth_holds, q_strictly_increasing, ConvergentPair};
pub use eval::{evaluate_finite, evaluate_general, mirror};
pub use expand::{expand, expand_ball, expand_with_tail, gauss_map, Expansion};
pub use lambda::{continuity_radius, lambda_bar, prefix_length_for};
