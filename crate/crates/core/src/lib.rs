//! Exact computation with monomial valuations on dual complexes.

pub mod complex;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod multiplicities;
pub mod poly;
pub mod polyhedron;
pub mod scalar;
pub mod subdivision;
pub mod surface;
pub mod valuation;

pub use error::{Error, Result};
pub use poly::{parse_support, Exponent, Polynomial};
pub use scalar::{int, norm_eval, parse_rat, rat, Ext, Norm, Rat};
