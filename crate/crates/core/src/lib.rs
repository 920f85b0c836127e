//! Exact Weil heights and Mahler measures of integer polynomials, with
//! exhaustive censuses and height-map dynamics.

pub mod algnum;
pub mod census;
pub mod constructions;
pub mod error;
pub mod heightdyn;
pub mod mahler;
pub mod numeric;
pub mod poly;
pub mod rootloc;
pub mod verify;

pub use algnum::{AlgebraicKey, RealAlgebraic};
pub use error::{Error, Result};
pub use poly::{Factorization, IntPoly, SquarefreeDecomposition};

pub type Rational = num_rational::BigRational;
