//! Directed last passage percolation on a planar Poisson field.
//!
//! The crate is `no_std` (it needs `alloc`) and holds the algorithmic core:
//!
//! * [`geometry`]: dominance order, rectangle areas, the line `U_t` and the
//!   cylinder construction around a ray from the origin.
//! * [`sampling`]: reproducible Poisson point configurations.
//! * [`chains`]: longest chains (maximal directed polymers) and their
//!   lowest/highest representatives.
//! * [`network`]: the union of all maximizers from the origin to `U_t`, branch
//!   counting and last branching points.
//! * [`spectral`]: the exact law of the chain length through the discrete
//!   Bessel kernel.
//!
//! IO, the experiment harness and the command line live in `dlpp-lab`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod chains;
mod error;
pub mod geometry;
mod math;
pub mod network;
pub mod sampling;
pub mod spectral;

pub use error::{Error, Result};
pub use geometry::{dominates, LineUt, Point};
pub use sampling::{PointConfiguration, Region};
