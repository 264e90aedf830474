//! Exact reconstruction and classification of finite subgroups of SU(4)
//! related to the two-qubit Clifford group.

pub mod atlas;
pub mod classify;
pub mod cyclo;
pub mod error;
pub mod gates;
pub mod group;
pub mod linal;

pub use cyclo::{Cyclotomic, Rational};
pub use error::{Error, Result};
pub use linal::GateMatrix;
