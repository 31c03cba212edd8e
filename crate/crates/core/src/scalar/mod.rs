//! Exact scalar fields.
//!
//! Three concrete fields are provided: [`Rational`] (the base field),
//! [`MultiQuad`] (elements of `Q(√d₁, …, √d_k)`), and
//! [`NumberFieldElement`] (residues modulo an irreducible rational
//! polynomial). Generic polynomial and matrix code is written against the
//! [`Field`] trait.

mod multiquad;
mod numfield;
mod rational;

use std::fmt::Debug;

pub use multiquad::{squarefree_decompose, MultiQuad, Sign};
pub use numfield::{NumberField, NumberFieldElement};
pub use rational::{parse_rational, rational_to_string, Rational};

/// A commutative field with exact arithmetic.
///
/// Method names carry a `_ref` suffix where they would otherwise collide
/// with the std operator traits implemented on the concrete types.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv_ref(&self) -> Option<Self>;
    /// Image of a rational under the canonical embedding `Q → Self`.
    fn from_rational(q: &Rational) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div_ref(&self, rhs: &Self) -> Option<Self> {
        rhs.inv_ref().map(|inv| self.mul_ref(&inv))
    }

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(v.into()))
    }
}
