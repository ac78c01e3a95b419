//! Measured lamination spaces of surface pairs.
//!
//! A surface pair is a compact oriented surface whose boundary is split into
//! a part `α` (arcs and whole circles) and its complement `δ`. This crate
//! builds coordinates for measured laminations from a decomposition of the
//! pair into elementary pieces, works with train tracks in those pieces, and
//! evaluates intersection numbers with a finite family of curve classes.

pub mod catalog;
pub mod coordinates;
pub mod error;
pub mod geometry;
pub mod intersection;
pub mod linalg;
pub mod rational;
pub mod render;
pub mod ribbon;
pub mod schema;
pub mod train_track;

pub use error::*;
pub use rational::{Extended, Q};
