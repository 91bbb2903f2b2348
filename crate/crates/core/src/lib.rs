//! Exact construction and verification of rational Catalan objects: `(a,b)`-Dyck
//! paths, rational associahedra, and homogeneous / inhomogeneous rational
//! noncrossing partitions.

pub mod assoc;
pub mod dyck;
pub mod error;
pub mod ncpart;
pub mod numbers;
pub mod scomplex;
pub mod verdict;

pub use error::{Error, Result};
pub use numbers::CoprimePair;
pub use verdict::Verdict;
