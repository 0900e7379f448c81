//! Shioda invariants of binary octavics, points of the weighted projective
//! space `P(2, 3, 4, 5, 6, 7, 8)`, and a height-bounded database of genus 3
//! hyperelliptic curves.
//!
//! The exact pipeline is
//! [`shioda::moduli_point`] -> [`relations`] checks -> [`wps`] normalization,
//! driven at scale by [`database::build_database`].

pub mod arith;
pub mod binary_forms;
pub mod database;
pub mod error;
pub mod factor;
pub mod linalg;
pub mod modular;
pub mod par;
pub mod relations;
pub mod shioda;
pub mod tsuyumine;
pub mod wps;

pub use error::{Error, Result};
