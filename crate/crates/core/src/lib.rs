//! Exact split octonion algebras over Q, formal R and C, Q_p and F_p, their
//! automorphisms, and the classification of involutions of split G2 by the
//! quaternion subalgebras they fix.

pub mod automorphism;
pub mod classify;
pub mod cli;
pub mod composition;
pub mod error;
pub mod fields;
pub mod forms;
pub mod linalg;
pub mod sample;
pub mod suites;

pub use error::{Error, Result};
pub use fields::{FieldSpec, Place, Scalar};
