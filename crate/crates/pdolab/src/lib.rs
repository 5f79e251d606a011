//! Numerical laboratory for pseudo-differential operators with symbols in
//! the anisotropic derivative-bound classes: periodic-grid transforms, dyadic
//! frequency decompositions, sharp and maximal functions, Muckenhoupt
//! weights, and a CLI harness that probes the critical-order estimates by
//! refinement trends.

pub mod error;
pub mod grid;
pub mod harness;
pub mod maximal;
pub mod operator;
pub mod oracle;
pub mod partition;
pub mod symbol;
pub mod tolerances;
pub mod weights;

mod util;

pub use error::{Error, Result};
