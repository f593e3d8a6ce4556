//! The exact integer scalar abstraction.
//!
//! Every matrix, module and complex in the crate is generic over an exact
//! integer type. Machine integers are fast and detect overflow; `BigInt`
//! never overflows. Arithmetic goes through the checked helpers below so an
//! overflow surfaces as [`Error::Overflow`] instead of a wrong answer.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait Scalar:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + 'static
{
    #[inline]
    fn add_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_add(rhs).ok_or(Error::Overflow)
    }

    #[inline]
    fn sub_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_sub(rhs).ok_or(Error::Overflow)
    }

    #[inline]
    fn mul_c(&self, rhs: &Self) -> Result<Self> {
        self.checked_mul(rhs).ok_or(Error::Overflow)
    }

    /// `self + a * b`
    #[inline]
    fn fma_c(&self, a: &Self, b: &Self) -> Result<Self> {
        self.add_c(&a.mul_c(b)?)
    }

    fn from_i64_c(v: i64) -> Self {
        Self::from_i64(v).expect("every scalar type holds an i64")
    }

    fn from_usize_c(v: usize) -> Self {
        Self::from_usize(v).expect("every scalar type holds a usize")
    }

    /// Non-negative remainder modulo a positive `m`.
    #[inline]
    fn modulo(&self, m: &Self) -> Self {
        self.mod_floor(m)
    }
}

impl<T> Scalar for T where
    T: Clone
        + Debug
        + Display
        + Eq
        + Ord
        + Hash
        + Send
        + Sync
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + 'static
{
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd<T: Scalar>(a: &T, b: &T) -> Result<(T, T, T)> {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = old_r.sub_c(&q.mul_c(&r)?)?;
        old_r = std::mem::replace(&mut r, nr);
        let ns = old_s.sub_c(&q.mul_c(&s)?)?;
        old_s = std::mem::replace(&mut s, ns);
        let nt = old_t.sub_c(&q.mul_c(&t)?)?;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        Ok((-old_r, -old_s, -old_t))
    } else {
        Ok((old_r, old_s, old_t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn ext_gcd_bezout() {
        for a in -20i64..20 {
            for b in -20i64..20 {
                let (g, s, t) = ext_gcd(&a, &b).unwrap();
                assert_eq!(s * a + t * b, g);
                assert_eq!(g, a.gcd(&b));
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(i64::MAX.add_c(&1), Err(Error::Overflow)));
        let big = BigInt::from(i64::MAX);
        assert!(big.add_c(&BigInt::from(1)).is_ok());
    }
}
