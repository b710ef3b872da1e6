//! Brute-force ground truth from stabilizer codes over prime dimensions.

mod census;
pub mod code;
pub mod dense;
pub mod fixture;
mod linalg;
pub mod pauli;
pub mod subset;
pub mod weights;

pub use census::ELEMENT_BUDGET;
pub use code::{is_prime, make_code, StabilizerCode};
pub use dense::{code_basis_vectors, dense_weights};
pub use fixture::{fixture, parse_code, write_code, FIXTURES};
pub use pauli::PauliElement;
pub use subset::Subset;
pub use weights::{
    average_entropy, fine_grained_sl, fine_grained_unitary, fine_grained_unitary_all, group_sl_weights,
    reduced_weights, shadow_aggregate, shadow_direct, shadow_direct_all, subsystem_entropy, FineGrainedWeights,
};
