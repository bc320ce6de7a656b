//! Exact-arithmetic engine for finite-dimensional Nichols algebras of
//! non-abelian group type.
//!
//! The crate builds Nichols algebras degree by degree from (quandle,
//! 2-cocycle, field) data, using braided derivations as the zero test,
//! and provides gradings, Hilbert series arithmetic, derivation kernels,
//! shift operators and executable verification checks on top of the
//! construction. All arithmetic is exact.

pub mod algebra;
pub mod catalog;
pub mod cocycle;
pub mod error;
pub mod field;
pub mod linalg;
pub mod rack;
pub mod series;
pub mod shift;
pub mod snapshot;
pub mod verify;

pub use cocycle::{catalog_cocycle, Cocycle};
pub use error::CoreError;
pub use field::{q_integer, quantum_order, Field, FieldDescriptor, Order, Scalar};
pub use rack::{catalog_quandle, EnvWordClass, PermGroup, Rack, QUANDLE_NAMES};
