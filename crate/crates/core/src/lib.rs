//! Quiver mutation, period-2 quivers, and the exact cluster dynamics along
//! their mutation orbits.

pub mod error;
pub mod matrix;
pub mod period;
pub mod families;
pub mod solver;
pub mod verify;
pub mod rational;
pub mod laurent;
pub mod cluster;
pub mod orbit;
pub mod systems;
pub mod io;
pub mod suites;
mod small;

pub use error::{Error, Result};
pub use matrix::{ExchangeMatrix, Permutation};
pub use period::{
    find_relabeling, is_period1, is_period2, mu1_partner, period1_from_row, Period2Spec, Shape,
};
pub use rational::Rational;
pub use laurent::LaurentPoly;
pub use cluster::{mutate_seed, Seed};
pub use orbit::{laurent_check, run_orbit, OrbitTrace};
