//! Exact computations for orthosymplectic Lie superalgebras and their flag
//! supermanifolds: ℚ(i, √2) scalars, free supercommutative polynomial rings,
//! block-graded matrices, basis and closure checks for `osp`, chart
//! transition maps with fundamental vector fields, and root/weight data for
//! Borel–Weil–Bott style computations.

pub mod cli;
pub mod error;
pub mod flag;
pub mod linalg;
pub mod matrix;
pub mod osp;
pub mod parse;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod suites;
pub mod weights;

pub use error::{Error, Result};
pub use matrix::{BlockShape, Entry, NumMatrix, SuperMatrix};
pub use ring::{Monomial, Parity, RingContext, SuperPoly, Variable};
pub use scalar::FieldScalar;
