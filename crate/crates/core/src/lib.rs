//! Census of Cayley graph connection sets.
//!
//! Groups are stored as dense multiplication tables with identity 0. Connection
//! sets, cosets and graph rows are `u128` bit vectors, so every group handled
//! here has order at most 128.

pub mod bits;
pub mod catalog;
pub mod cayley;
pub mod census;
pub mod cli;
pub mod error;
pub mod group;
pub mod lemmas;
pub mod perm;

pub use bits::ElemSet;
pub use error::{Error, Result};
pub use group::FiniteGroup;
