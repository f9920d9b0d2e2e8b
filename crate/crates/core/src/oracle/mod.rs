//! Independent checks for the solvers: brute-force search over the trust ball,
//! central finite differences, and a seeded purchase simulator.
//!
//! Nothing here calls into the closed-form solvers, so the two can be compared.

mod gradient;
mod grid;
mod simulate;

pub use gradient::finite_diff_gradient;
pub use grid::{decide_strict, grid_max_on_sphere, GridMax, GridSearch, StrictDecision};
pub use simulate::{simulate_profit, SimEstimate, RNG_ALGORITHM};
