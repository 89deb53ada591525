//! Exact closed forms for the `k`-th power of a square rational matrix.
//!
//! The entries of `A^k` all satisfy the linear recurrence given by the
//! characteristic polynomial of `A` (Cayley-Hamilton). This crate computes
//! that polynomial exactly, splits its nonzero roots into a spectral basis,
//! fits the recurrence's closed form to the first few powers, and evaluates
//! or renders the result.
//!
//! ```
//! use kpower::{charpoly::Matrix, matpow::power_matrix_symbolic};
//!
//! let a = Matrix::from_i64_rows(&[&[4, -2, 2], &[-5, 7, -5], &[-6, 6, -4]]).unwrap();
//! let cf = power_matrix_symbolic(&a).unwrap();
//! assert_eq!(cf.eval(10).unwrap(), a.pow(10));
//! ```

pub mod cfsolve;
pub mod charpoly;
pub mod cli;
pub mod error;
pub mod exact_arith;
pub mod matpow;
pub mod poly;

pub use error::{Error, Result};
pub use exact_arith::Rational;
