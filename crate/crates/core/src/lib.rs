//! Exact denumerants of numerical semigroups with three generators.
//!
//! The number of nonnegative solutions of `xa + yb + zc = m` is computed from
//! the L-shaped minimum distance diagram of `<a, b, c>` and a handful of
//! floor sums, so the cost does not depend on the size of `m`.

pub mod arith;
pub mod denumerant;
pub mod error;
pub mod floor_sums;
pub mod lshape;
pub mod semigroup;

pub use arith::Integer;
pub use error::{Error, Result};
pub use semigroup::{GeneratorTriple, Semigroup3};
