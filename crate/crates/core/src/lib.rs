//! Quaternionic matrices: Study's determinant, characteristic functions for
//! left eigenvalues, Hamilton–Cayley checks, and numerical left/right spectra.

pub mod charfn;
pub mod cli;
pub mod cmatrix;
pub mod eigensolve;
pub mod error;
pub mod ncexpr;
pub mod qmatrix;
pub mod quaternion;

pub use charfn::{CharFn, CharFnKind};
pub use error::{Error, Result};
pub use ncexpr::NcExpr;
pub use qmatrix::{Permutation, QMatrix};
pub use quaternion::Quaternion;
