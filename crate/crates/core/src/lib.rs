//! Univalent morphisms in finite presheaf toposes, computed in the strict
//! (1-categorical) setting.
//!
//! The ambient categories are presheaves on a finite category: finite sets
//! over the terminal category, `G`-sets over a one-object groupoid, and
//! anything else given by explicit tables. From a map `p: E → B` the library
//! builds the internal category of fiber maps, its nerve as a truncated
//! Segal object, and decides univalence by brute force over cartesian
//! squares, by completeness of the nerve, and through the subobject
//! classifier.
#![allow(clippy::needless_range_loop)]

pub mod corpus;
pub mod error;
pub mod fincat;
pub mod groups;
pub mod internal;
pub mod io;
pub mod presheaf;
pub mod repro;
pub mod segal;
pub mod univalence;

pub use error::{Error, Result};
