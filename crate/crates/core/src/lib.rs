//! Exact algebra for plane quartics, nets of quadrics and skew nets on a
//! 7-dimensional space.

pub mod apolar;
pub mod census;
pub mod error;
pub mod invariants;
pub mod matrix;
pub mod netquad;
pub mod parse;
pub mod pipeline;
pub mod poly;
pub mod polymatrix;
pub mod random;
pub mod resolve;
pub mod scalar;
pub mod skewfano;
pub mod waring;

pub use error::{Error, Result};
pub use matrix::{Matrix, RowSpace};
pub use poly::{apply, mixed_polar_matrix, polar, Monomial, MultiPoly, Point, Ring, Side};
pub use polymatrix::PolyMatrix;
pub use scalar::{Field, Scalar};
