//! Exact dense linear algebra over a prime field.

mod field;
mod matrix;
mod poly;

pub use field::{is_prime, Fp, MAX_MODULUS};
pub use matrix::{matrix_of, swap_matrix, Cokernel, FpMatrix};
pub use poly::{factor, minpoly, FpPoly};
