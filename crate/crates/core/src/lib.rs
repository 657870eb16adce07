//! Exact verification of q-orthogonal and quasi-orthogonal basic
//! hypergeometric polynomials: construction, contiguous relations,
//! order of quasi-orthogonality, and zero location and interlacing.

pub mod contiguous;
pub mod error;
pub mod exact;
pub mod families;
pub mod hyperq;
pub mod poly;
pub mod quasi;
pub mod rootlab;
pub mod suite;

pub use error::{Error, Result};
pub use exact::Rational;
