//! Quasi-Newton optimization of digitized-annealing schedules: BFGS with a
//! strong-Wolfe line search over the exact gradient, enumeration of the
//! degenerate optima, and the iterative depth-doubling construction of the
//! regular (adiabatic) schedule.

mod bfgs;
mod error;
mod ladder;
mod minima;
mod result;

pub use bfgs::minimize;
pub use error::{Error, Result};
pub use ladder::{
    contracted_interpolation, cost_accounting, interpolate_angles, linear_schedule_angles,
    regular_schedule, CostRow, LadderLevel, RegularLadder,
};
pub use minima::{canonicalize, enumerate_minima, MinimaSet, SATURATION_TOL};
pub use result::{OptimOptions, OptimResult};
