//! Invariants of virtual links computed from signed oriented Gauss codes.
//!
//! The crate computes the writhe, the odd writhe, the arrow polynomial (and
//! its normalized form) together with its set of k-degrees, and decides or
//! obstructs checkerboard colorability. Everything starts from a
//! [`GaussCode`]; virtual crossings are never represented, since virtual
//! moves act trivially on Gauss codes.
//!
//! ```
//! use vknot::{arrow, GaussCode};
//!
//! let code: GaussCode = "O1-U2+O3+U1-O2+U3+".parse().unwrap();
//! let p = arrow::arrow_normalized(&code).unwrap();
//! assert_eq!(p.to_string(), "A^-8 - A^-8*K1^2 + K1^2");
//! ```

pub mod arrow;
pub mod cli;
pub mod colorability;
pub mod gauss;
pub mod moves;
pub mod parity;
pub mod poly;

pub use arrow::ArrowError;
pub use colorability::{ColorabilityVerdict, Obstruction};
pub use gauss::{Diagram, GaussCode, GaussError, Passage, Role, Sign};
pub use poly::{ArrowPoly, KMonomial};
