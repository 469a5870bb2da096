//! Module liaison over standard graded polynomial rings.

pub mod error;
pub mod fmodule;
pub mod gbasis;
pub mod hilbert;
pub mod liaison;
pub mod matlink;
pub mod linalg;
pub mod matrix;
pub mod poly;
pub mod resolution;

pub use error::{Error, Result};
pub use matrix::Matrix;
