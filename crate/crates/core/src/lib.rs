//! Exact algebra for the switch involution on `UNil_2(Z; Z, Z)` and
//! `UNil_3(Z; Z, Z)`, and the resulting classification of manifolds
//! homotopy equivalent to a connected sum of two real projective spaces.

pub mod classify;
pub mod dihedral;
pub mod error;
pub mod linking;
pub mod matrix;
pub mod poly;
pub mod quad_forms;
pub mod ring;
mod text;
pub mod unil;
pub mod verify;

pub use error::{Error, Result};
