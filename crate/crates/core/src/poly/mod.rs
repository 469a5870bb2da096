//! Exact arithmetic over `GF(p)[x_0..x_n]` with the standard grading.

mod field;
mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod ring;

pub use field::{Field, DEFAULT_CHARACTERISTIC};
pub use monomial::{Monomial, MAX_VARS};
pub use parse::{format_monomial, format_poly, parse_poly};
pub use poly::{poly_arith, ArithOp, Poly};
pub use ring::Ring;
