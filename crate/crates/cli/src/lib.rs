//! Batch front end for the `ratcat` library: verification registry and SVG rendering.

pub mod checks;
pub mod render;
