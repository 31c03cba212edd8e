//! Exact Jordan–Chevalley machinery for rational matrices.

pub mod covariant;
pub mod decompose;
pub mod error;
pub mod generate;
pub mod io;
pub mod matfun;
pub mod matrix;
pub mod poly;
pub mod realclosed;
pub mod report;
pub mod scalar;
pub mod selftest;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use poly::{factor_rational, parse_poly, FactoredMinPoly, Poly};
pub use scalar::{Field, MultiQuad, NumberField, NumberFieldElement, Rational, Sign};
