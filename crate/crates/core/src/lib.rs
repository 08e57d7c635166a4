//! Exact construction and verification of generalized Cremmer-Gervais r-matrices for sl_n.

pub mod acceptance;
pub mod bd;
pub mod carrier;
pub mod cg;
pub mod cli;
pub mod cyb;
pub mod error;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod tensor;
pub mod wheels;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use tensor::{MatrixN, SparseOp2, SparseOp3, WedgeElement};
