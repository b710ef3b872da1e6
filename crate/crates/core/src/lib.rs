//! Weight enumerators, shadow inequalities and existence bounds for quantum
//! maximum distance separable codes.

pub mod enumerators;
pub mod error;
pub mod exactmath;
pub mod feasibility;
pub mod oracle;

pub use enumerators::{CodeCheck, CodeParams, WeightDistribution, WeightKind};
pub use error::{Error, Result};
pub use exactmath::Rational;
