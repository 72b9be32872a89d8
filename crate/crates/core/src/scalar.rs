//! Exact integer scalars.
//!
//! Parameter arithmetic and group-ring coefficients are written against
//! [`Scalar`] so the same code runs on machine integers or on `BigInt` when
//! intermediate values could overflow.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact signed integer type.
pub trait Scalar:
    Integer + Signed + Roots + Clone + Debug + Display + Hash + FromPrimitive + ToPrimitive + Send + Sync
{
    fn of(x: i64) -> Self {
        Self::from_i64(x).expect("small constant fits every scalar type")
    }
}

impl Scalar for i64 {}
impl Scalar for i128 {}
impl Scalar for BigInt {}

/// Exact square root when `x` is a perfect square.
pub fn exact_sqrt<T: Scalar>(x: &T) -> Option<T> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    if r.clone() * r.clone() == *x {
        Some(r)
    } else {
        None
    }
}

/// Residue of `a` modulo `m`, normalized into `[0, |m|)`.
pub fn residue<T: Scalar>(a: &T, m: &T) -> T {
    a.mod_floor(&m.abs())
}

/// `Some(a / b)` when `b` divides `a` exactly.
pub fn exact_div<T: Scalar>(a: &T, b: &T) -> Option<T> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}
