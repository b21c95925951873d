//! Quantum K-theory of Grassmannians Gr(k,n).
//!
//! Partitions in the k × (n−k) rectangle index the Schubert structure sheaves O^λ. The crate
//! computes products in QK(Gr(k,n)) through the quantum K-theoretic Pieri rule, implements the
//! Seidel operators and the index reductions of structure constants, the closed formula for
//! Gr(3,n), and the partition combinatorics of curve neighborhoods.

pub mod curve_nbhd;
pub mod element;
pub mod engine;
pub mod error;
pub mod gr3n;
pub mod partitions;
pub mod pieri;
pub mod seidel;
pub mod verify;

pub use element::{euler_char, QPoly, QkElement};
pub use engine::{giambelli_lift_general, MultiplicationTable, QkEngine};
pub use error::{Error, Result};
pub use partitions::{Basis, GrContext, JumpSequence, Partition};
pub use seidel::StructureIndex;
