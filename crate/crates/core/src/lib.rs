//! Exact computer algebra for apolar schemes of homogeneous polynomials.

pub mod apolarity;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod groebner;
pub mod linalg;
pub mod polyring;
pub mod schemes;

pub use error::{Error, Result};
