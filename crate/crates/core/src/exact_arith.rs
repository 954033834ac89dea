//! Exact integer and rational helpers shared by every invariant computation.
//!
//! Values in Q/Z are carried as [`QModZ`], always reduced into `(-1/2, 1/2]`
//! so that two invariants are equal exactly when their representatives are.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer triple `(t1, t2, t3)`, the raw parameter shape of `k` and `l`.
pub type Triple = [i64; 3];

/// Elementary symmetric polynomials `(σ1, σ2, σ3)` of a triple.
pub fn sym_polys(t: Triple) -> [i128; 3] {
    let [a, b, c] = t.map(i128::from);
    [a + b + c, a * b + a * c + b * c, a * b * c]
}

/// A rational number taken modulo 1, represented in `(-1/2, 1/2]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QModZ(BigRational);

impl QModZ {
    pub fn zero() -> Self {
        QModZ(BigRational::zero())
    }

    pub fn new(q: BigRational) -> Self {
        qmodz(q)
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        qmodz(BigRational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Multiplies by an integer and reduces again.
    pub fn scale(&self, n: &BigInt) -> Self {
        qmodz(&self.0 * BigRational::from_integer(n.clone()))
    }
}

/// Reduces `q` to its representative in `(-1/2, 1/2]`.
pub fn qmodz(q: BigRational) -> QModZ {
    let frac = &q - q.floor();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if frac > half {
        QModZ(frac - BigRational::one())
    } else {
        QModZ(frac)
    }
}

impl Add for &QModZ {
    type Output = QModZ;
    fn add(self, rhs: &QModZ) -> QModZ {
        qmodz(&self.0 + &rhs.0)
    }
}

impl Sub for &QModZ {
    type Output = QModZ;
    fn sub(self, rhs: &QModZ) -> QModZ {
        qmodz(&self.0 - &rhs.0)
    }
}

impl Neg for &QModZ {
    type Output = QModZ;
    fn neg(self) -> QModZ {
        qmodz(-&self.0)
    }
}

impl Neg for QModZ {
    type Output = QModZ;
    fn neg(self) -> QModZ {
        -&self
    }
}

impl fmt::Display for QModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for QModZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QModZ({self})")
    }
}

impl FromStr for QModZ {
    type Err = String;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
        let d: BigInt = d.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(qmodz(BigRational::new(n, d)))
    }
}

impl Serialize for QModZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QModZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A residue modulo an odd `modulus`, represented in `[-(m-1)/2, (m-1)/2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignedResidue {
    pub value: i64,
    pub modulus: i64,
}

impl std::ops::Neg for SignedResidue {
    type Output = Self;
    fn neg(self) -> Self {
        signed_residue(-i128::from(self.value), self.modulus)
    }
}

impl SignedResidue {
    /// `max(s, -s)`: identifies a residue with its negative.
    pub fn canonical_abs(self) -> i64 {
        self.value.abs()
    }
}

impl fmt::Display for SignedResidue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Symmetric representative of `a` modulo the odd modulus `m`.
pub fn signed_residue(a: i128, m: i64) -> SignedResidue {
    debug_assert!(m >= 1 && m % 2 == 1, "modulus must be odd and positive");
    let mm = i128::from(m);
    let mut v = a.rem_euclid(mm);
    if v > (mm - 1) / 2 {
        v -= mm;
    }
    SignedResidue {
        value: v as i64,
        modulus: m,
    }
}

/// Multiplicative inverse of `a` modulo `m`, in `[1, m-1]` (or `0` when `m == 1`).
pub fn mod_inverse(a: i128, m: i64) -> Result<i64> {
    assert!(m >= 1, "modulus must be positive");
    let mm = i128::from(m);
    let ext = a.rem_euclid(mm).extended_gcd(&mm);
    if ext.gcd != 1 {
        return Err(Error::NotInvertible { a, m });
    }
    Ok(ext.x.rem_euclid(mm) as i64)
}

/// `[n]_p`: the residue of `n` modulo `p` taken in `{1, ..., p}`.
pub fn res1(n: i64, p: i64) -> i64 {
    assert!(p >= 1, "res1 needs p >= 1");
    let m = n.rem_euclid(p);
    if m == 0 {
        p
    } else {
        m
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

pub fn pairwise_coprime(t: Triple) -> bool {
    gcd(t[0], t[1]) == 1 && gcd(t[0], t[2]) == 1 && gcd(t[1], t[2]) == 1
}

pub(crate) fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}
