//! Continued-fraction reduction, indefinite binary quadratic forms and the
//! exponentially convergent sums over them, in exact and certified arithmetic.

pub mod cfrac;
mod error;
pub mod mat2;
pub mod modsums;
pub mod qforms;
pub mod periods;
pub mod real;
pub mod verify;
mod ser;

pub use error::{Error, Result};
pub use mat2::Mat2;
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use qforms::{FormClass, IntPoly, QForm};
pub use real::{parse_real, Interval, QuadSurd, Real};
