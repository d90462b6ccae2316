//! Exact symbolic machinery for N-differential graded algebras.
//!
//! The crate is organized bottom-up: [`galgebra`] provides graded
//! polynomial algebras, [`operators`] derivations and differential operators
//! acting on them, and the remaining modules build the concrete
//! constructions on top.

pub mod error;
pub mod forms;
pub mod galgebra;
pub mod liealgebroid;
pub mod linalg;
pub mod ncomplex;
pub mod operators;
pub mod pathsum;
pub mod random;
pub mod rational;
pub mod strategy;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Q;
