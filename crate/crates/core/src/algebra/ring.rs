use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The coefficient ring: the integers, or the integers with a fixed `l >= 2`
/// inverted.
///
/// Matrices over `Z[1/l]` are stored as integer matrices; the ring only
/// changes which elements count as units (`±` products of primes dividing
/// `l`) and how invariant factors are normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingSpec {
    Integers,
    Inverted(u64),
}

impl RingSpec {
    pub fn inverted(l: u64) -> Result<Self> {
        if l < 2 {
            return Err(Error::Input(format!("cannot invert l = {l}; need l >= 2")));
        }
        Ok(RingSpec::Inverted(l))
    }

    /// `Z[1/l]`, collapsing to `Z` when `l <= 1`.
    pub fn with_inverted(l: u64) -> Self {
        if l <= 1 {
            RingSpec::Integers
        } else {
            RingSpec::Inverted(l)
        }
    }

    pub fn l(&self) -> Option<u64> {
        match self {
            RingSpec::Integers => None,
            RingSpec::Inverted(l) => Some(*l),
        }
    }

    /// The distinct primes that are units.
    pub fn inverted_primes(&self) -> Vec<u64> {
        match self {
            RingSpec::Integers => vec![],
            RingSpec::Inverted(l) => prime_factors(*l),
        }
    }

    /// Is `n` invertible in this ring?
    pub fn is_unit_u64(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        let mut n = n;
        for p in self.inverted_primes() {
            while n % p == 0 {
                n /= p;
            }
        }
        n == 1
    }

    pub fn is_unit<T: Scalar>(&self, x: &T) -> bool {
        !x.is_zero() && self.strip(x).is_one()
    }

    /// The associate of `x` normalized for this ring: `|x|` with every prime
    /// dividing `l` removed. Zero stays zero.
    pub fn strip<T: Scalar>(&self, x: &T) -> T {
        let mut v = x.abs();
        if v.is_zero() {
            return v;
        }
        if let RingSpec::Inverted(l) = self {
            let l = T::from_u64(*l).expect("l fits the scalar type");
            loop {
                let g = v.gcd(&l);
                if g.is_one() {
                    break;
                }
                v = v / g;
            }
        }
        v
    }

    /// The unit part `x / strip(x)` of a nonzero `x`.
    pub fn unit_part<T: Scalar>(&self, x: &T) -> T {
        if x.is_zero() {
            return T::one();
        }
        x.clone() / self.strip(x)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::Inverted(l) => write!(f, "Z[1/{l}]"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    /// Accepts `Z`, `Z[1/6]`, `1/6` or a bare `6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("z") || s == "1" {
            return Ok(RingSpec::Integers);
        }
        let inner = s
            .strip_prefix("Z[")
            .or_else(|| s.strip_prefix("z["))
            .and_then(|r| r.strip_suffix(']'))
            .unwrap_or(s);
        let inner = inner.strip_prefix("1/").unwrap_or(inner);
        let l: u64 = inner
            .parse()
            .map_err(|_| Error::Input(format!("unrecognized ring `{s}`")))?;
        RingSpec::inverted(l)
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}
