//! Exact desk-scale verification of the objects connecting left (local)
//! convergence and soft-core right convergence of bounded-degree graphs:
//! homomorphism counts, color-statistic cumulant generating functions,
//! joint-cumulant decompositions over labeled multigraph patterns, the
//! pattern coefficient matrices, and Taylor-radius certificates.

pub mod budget;
pub mod catalog;
pub mod convergence;
pub mod counting;
pub mod cumulant;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod scalar;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
