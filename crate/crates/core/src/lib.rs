//! Exact point counting, zeta functions and maximality tests for curves
//! over small finite fields.

pub mod bounds;
pub mod classify;
pub mod curves;
pub mod error;
pub mod ff;
pub mod intpoly;
pub mod json;
pub mod search;
pub mod zeta;

pub use error::{Error, Result};
