//! Exact computation of interval-valence polynomials of finite posets and
//! Tamari lattices, cross-checked against the catalytic functional equations
//! solved as truncated power series.

pub mod exec;
pub mod polynomial;
pub mod poset;
pub mod series_solver;
pub mod tamari;
pub mod verify;

pub use exec::Execution;
