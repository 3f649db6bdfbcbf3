//! Exact rational scalars and their `"p/q"` string serialization.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Canonical string form: integers print bare, everything else as `p/q`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Newtype giving [`Q`] a `"p/q"` serde representation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(pub Q);

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_q(&self.0))
    }
}

impl From<Q> for Rational {
    fn from(x: Q) -> Self {
        Rational(x)
    }
}

impl From<i64> for Rational {
    fn from(x: i64) -> Self {
        Rational(q(x))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => parse_q(&s).map(Rational).map_err(serde::de::Error::custom),
            Raw::Int(i) => Ok(Rational(q(i))),
        }
    }
}

/// Exact binomial coefficient `C(n, k)` for `n >= 0`.
pub fn binomial(n: u64, k: u64) -> Q {
    if k > n {
        return zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Q::from_integer(acc)
}

pub fn factorial(n: u64) -> Q {
    Q::from_integer((1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i)))
}

/// Bernoulli numbers with the `B_1 = +1/2` convention, i.e. the Taylor
/// coefficients of `x / (1 - e^{-x}) = sum B_k x^k / k!`.
pub fn bernoulli_plus(count: usize) -> Vec<Q> {
    let mut b: Vec<Q> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(one());
            continue;
        }
        // sum_{j<=m} C(m+1, j) B^-_j = 0
        let mut s = zero();
        for (j, bj) in b.iter().enumerate() {
            s += binomial(m as u64 + 1, j as u64) * bj;
        }
        b.push(-s / q(m as i64 + 1));
    }
    if count > 1 {
        b[1] = b[1].abs();
    }
    b
}
