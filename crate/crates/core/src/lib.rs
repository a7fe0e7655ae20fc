//! Homogeneous wall extraction on colorful grid instances.
//!
//! The crate models a flat wall as a coordinate grid with colored vertices
//! and face-attached bridges, and implements the strip sorting, cropping,
//! tile confinement, rainbow-row, folding and wall-extraction stages, each
//! paired with an independent verifier.

pub mod cli;
pub mod color;
pub mod geometry;
pub mod homogenizer;
pub mod instance;
pub mod render;
pub mod verifier;
