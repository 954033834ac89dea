//! Kreck–Stolz invariants of seven dimensional lens spaces `L_p(p1, p2, p3, p4)`.
//!
//! The invariants are rational combinations of four trigonometric sums
//!
//! ```text
//! T = Σ Π cot(kπp_j/p)        S = Σ Π csc(kπp_j/p)
//! R = Σ cos(2πk/|p|) Π csc    U = Σ cos(4πk/|p|) Π csc      (k = 1..|p|-1)
//! ```
//!
//! each of which is a rational number with denominator dividing 45. The sums
//! are evaluated in multi-precision floating point and `45·value` is rounded to
//! the nearest integer; the result is accepted only when the rounding residual
//! is below `2^-20`, otherwise the working precision is doubled.

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{qmodz, rat, QModZ};

const RM: RoundingMode = RoundingMode::ToEven;

/// Log2 of the acceptance threshold on `|45·value - round(45·value)|`.
const RESIDUAL_LOG2: i32 = -20;
const TABLE_GUARD_BITS: usize = 32;
const MAX_DOUBLINGS: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LensSpace {
    p: i64,
    params: [i64; 4],
}

impl LensSpace {
    pub fn new(p: i64, params: [i64; 4]) -> Result<Self> {
        if p == 0 || params.iter().any(|&q| q == 0 || q.gcd(&p) != 1) {
            return Err(Error::LensNotCoprime { p, params });
        }
        Ok(LensSpace { p, params })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn params(&self) -> [i64; 4] {
        self.params
    }

    pub fn has_even_param_sum(&self) -> bool {
        self.params.iter().map(|&q| i128::from(q)).sum::<i128>() % 2 == 0
    }
}

/// Exact values of the four sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedSums {
    pub t: BigRational,
    pub s: BigRational,
    pub r: BigRational,
    pub u: BigRational,
}

impl CertifiedSums {
    fn zero() -> Self {
        CertifiedSums {
            t: BigRational::zero(),
            s: BigRational::zero(),
            r: BigRational::zero(),
            u: BigRational::zero(),
        }
    }

    pub fn as_array(&self) -> [&BigRational; 4] {
        [&self.t, &self.s, &self.r, &self.u]
    }
}

/// `s1`, `s2`, `s3` of one lens space, sharing a single sum evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensInvariants {
    pub s1: QModZ,
    pub s2: QModZ,
    pub s3: QModZ,
}

/// Largest possible denominator of `T, S, R, U` for this `p`: 1 when `p` is
/// prime to 15, 9 when only 3 divides it, 5 when only 5 does, else 45.
pub fn denominator_bound(p: i64) -> i64 {
    match (p % 3 == 0, p % 5 == 0) {
        (false, false) => 1,
        (true, false) => 9,
        (false, true) => 5,
        (true, true) => 45,
    }
}

/// Starting precision: four cot/csc factors each bounded by |p|, the sum
/// length, and 64 guard bits.
pub fn initial_precision(p: i64) -> usize {
    let n = p.unsigned_abs();
    let log2 = if n <= 1 {
        0
    } else {
        (u64::BITS - (n - 1).leading_zeros()) as usize
    };
    64 + 6 * log2
}

pub fn trig_sums(lens: &LensSpace) -> Result<CertifiedSums> {
    // Re-validate: the fields are private but cheap to check.
    let lens = LensSpace::new(lens.p, lens.params)?;
    if lens.p.abs() == 1 {
        return Ok(CertifiedSums::zero());
    }
    let mut bits = initial_precision(lens.p);
    let mut consts = Consts::new().expect("astro-float constants cache");
    for attempt in 0..=MAX_DOUBLINGS {
        let approx = approximate_sums(&lens, bits, &mut consts);
        let certified: Option<Vec<BigRational>> = approx.iter().map(certify).collect();
        if let Some(v) = certified {
            let [t, s, r, u]: [BigRational; 4] = v.try_into().expect("four sums");
            return Ok(CertifiedSums { t, s, r, u });
        }
        log::debug!(
            "lens sums for p={} not certified at {bits} bits (attempt {attempt})",
            lens.p
        );
        if attempt < MAX_DOUBLINGS {
            bits *= 2;
        }
    }
    Err(Error::PrecisionExhausted { p: lens.p, bits })
}

/// Tables of `sin(πm/n)` and `cos(πm/n)` for `m` in `[0, n)`.
struct AngleTable {
    n: i128,
    sin: Vec<BigFloat>,
    cos: Vec<BigFloat>,
}

impl AngleTable {
    /// Filled by repeated rotation through `π/n`, carrying extra guard bits
    /// for the accumulated rounding error.
    fn new(n: i64, bits: usize, consts: &mut Consts) -> Self {
        let wp = bits + TABLE_GUARD_BITS;
        let nn = n as usize;
        let step = consts.pi(wp, RM).div(&BigFloat::from_i64(n, wp), wp, RM);
        let (s1, c1) = (step.sin(wp, RM, consts), step.cos(wp, RM, consts));
        let mut sin = Vec::with_capacity(nn);
        let mut cos = Vec::with_capacity(nn);
        let (mut s, mut c) = (BigFloat::from_i64(0, wp), BigFloat::from_i64(1, wp));
        for _ in 0..nn {
            sin.push(s.clone());
            cos.push(c.clone());
            let s_next = s.mul(&c1, wp, RM).add(&c.mul(&s1, wp, RM), wp, RM);
            c = c.mul(&c1, wp, RM).sub(&s.mul(&s1, wp, RM), wp, RM);
            s = s_next;
        }
        AngleTable {
            n: i128::from(n),
            sin,
            cos,
        }
    }

    /// Table index and sign of `sin(πm/n)`, using period `2n` and the
    /// half-period sign flip.
    fn locate(&self, m: i128) -> (usize, bool) {
        let m = m.rem_euclid(2 * self.n);
        if m < self.n {
            (m as usize, false)
        } else {
            ((m - self.n) as usize, true)
        }
    }
}

/// One evaluation of `[T, S, R, U]` at `bits` of working precision.
fn approximate_sums(lens: &LensSpace, bits: usize, consts: &mut Consts) -> [BigFloat; 4] {
    let n = lens.p.abs();
    let table = AngleTable::new(n, bits, consts);
    // kπp_j/p = kπ(sign(p)·p_j)/|p|
    let sgn = i128::from(lens.p.signum());
    let params = lens.params.map(|q| sgn * i128::from(q));
    let one = BigFloat::from_i64(1, bits);
    let mut acc: [BigFloat; 4] = std::array::from_fn(|_| BigFloat::from_i64(0, bits));
    for k in 1..i128::from(n) {
        // sin and cos share the half-period sign, so the cot product is sign free
        let mut negative = false;
        let mut idx = [0usize; 4];
        for (slot, &q) in idx.iter_mut().zip(&params) {
            let (i, neg) = table.locate(k * q);
            *slot = i;
            negative ^= neg;
        }
        let sin_prod = table.sin[idx[0]].mul(&table.sin[idx[1]], bits, RM).mul(
            &table.sin[idx[2]].mul(&table.sin[idx[3]], bits, RM),
            bits,
            RM,
        );
        let cos_prod = table.cos[idx[0]].mul(&table.cos[idx[1]], bits, RM).mul(
            &table.cos[idx[2]].mul(&table.cos[idx[3]], bits, RM),
            bits,
            RM,
        );
        let inv_sin = one.div(&sin_prod, bits, RM);
        let cot_prod = cos_prod.mul(&inv_sin, bits, RM);
        let csc_prod = if negative { inv_sin.neg() } else { inv_sin };
        let (i2, n2) = table.locate(2 * k);
        let (i4, n4) = table.locate(4 * k);
        // cos has the same half-period sign flip as sin
        let c2 = table.cos[i2].mul(&csc_prod, bits, RM);
        let c4 = table.cos[i4].mul(&csc_prod, bits, RM);
        acc[0] = acc[0].add(&cot_prod, bits, RM);
        acc[1] = acc[1].add(&csc_prod, bits, RM);
        acc[2] = if n2 {
            acc[2].sub(&c2, bits, RM)
        } else {
            acc[2].add(&c2, bits, RM)
        };
        acc[3] = if n4 {
            acc[3].sub(&c4, bits, RM)
        } else {
            acc[3].add(&c4, bits, RM)
        };
    }
    acc
}

/// Recovers `value` as `n/45` if `45·value` is within `2^-20` of the integer `n`.
fn certify(value: &BigFloat) -> Option<BigRational> {
    let bits = value.mantissa_max_bit_len()?.max(64);
    let scaled = value.mul(&BigFloat::from_i64(45, bits), bits, RM);
    let nearest = scaled.round(0, RM);
    let residual = scaled.sub(&nearest, bits, RM).abs();
    let threshold = BigFloat::from_f64(2f64.powi(RESIDUAL_LOG2), bits);
    if residual.cmp(&threshold)? >= 0 {
        return None;
    }
    Some(rat(bigfloat_to_int(&nearest)?, 45))
}

/// Converts an integer-valued float to a [`BigInt`].
fn bigfloat_to_int(x: &BigFloat) -> Option<BigInt> {
    if x.is_zero() {
        return Some(BigInt::zero());
    }
    let (words, _, sign, exp, _) = x.as_raw_parts()?;
    let bytes: Vec<u8> = words.iter().flat_map(|w| w.to_le_bytes()).collect();
    let mantissa = BigUint::from_bytes_le(&bytes);
    // value = mantissa · 2^(exp - word_bits)
    let shift = i64::from(exp) - (words.len() * 64) as i64;
    let magnitude = if shift >= 0 {
        mantissa << shift as usize
    } else {
        let s = (-shift) as usize;
        if !(&mantissa % (BigUint::from(1u8) << s)).is_zero() {
            return None;
        }
        mantissa >> s
    };
    let v = BigInt::from(magnitude);
    Some(if sign == Sign::Neg { -v } else { v })
}

/// Kreck–Stolz invariants `s1, s2, s3` of `lens`.
///
/// `s2` and `s3` need an even parameter sum.
pub fn lens_invariants(lens: &LensSpace) -> Result<LensInvariants> {
    if !lens.has_even_param_sum() {
        return Err(Error::ParityViolated {
            params: lens.params,
        });
    }
    if lens.p.abs() == 1 {
        LensSpace::new(lens.p, lens.params)?;
        return Ok(LensInvariants {
            s1: QModZ::zero(),
            s2: QModZ::zero(),
            s3: QModZ::zero(),
        });
    }
    let sums = trig_sums(lens)?;
    Ok(LensInvariants {
        s1: s1_from_sums(lens.p, &sums),
        s2: s2_from_sums(lens.p, &sums),
        s3: s3_from_sums(lens.p, &sums),
    })
}

pub fn lens_s1(lens: &LensSpace) -> Result<QModZ> {
    if lens.p.abs() == 1 {
        LensSpace::new(lens.p, lens.params)?;
        return Ok(QModZ::zero());
    }
    Ok(s1_from_sums(lens.p, &trig_sums(lens)?))
}

pub fn lens_s2(lens: &LensSpace) -> Result<QModZ> {
    Ok(lens_invariants(lens)?.s2)
}

pub fn lens_s3(lens: &LensSpace) -> Result<QModZ> {
    Ok(lens_invariants(lens)?.s3)
}

fn s1_from_sums(p: i64, sums: &CertifiedSums) -> QModZ {
    let fourteen = BigRational::from_integer(14.into());
    qmodz((&sums.t + fourteen * &sums.s) / rat(32 * 7 * p, 1))
}

fn s2_from_sums(p: i64, sums: &CertifiedSums) -> QModZ {
    qmodz((&sums.r - &sums.s) / rat(16 * p, 1))
}

fn s3_from_sums(p: i64, sums: &CertifiedSums) -> QModZ {
    qmodz((&sums.u - &sums.s) / rat(16 * p, 1))
}

/// Plain `f64` evaluation of `[T, S, R, U]`, used as an independent check.
///
/// Only meaningful for small `|p|` (a few thousand at most).
pub fn oracle_trig_sums(lens: &LensSpace) -> [f64; 4] {
    use std::f64::consts::PI;
    let n = lens.p.abs();
    let mut out = [0.0f64; 4];
    for k in 1..n {
        let mut cot = 1.0;
        let mut csc = 1.0;
        for &q in &lens.params {
            // angle kπq/p, folded into one period
            let m = (i128::from(k) * i128::from(q)).rem_euclid(2 * i128::from(lens.p.abs()));
            let x = PI * (m as f64) / (lens.p as f64);
            cot *= x.cos() / x.sin();
            csc *= 1.0 / x.sin();
        }
        let theta = 2.0 * PI * (k as f64) / (n as f64);
        out[0] += cot;
        out[1] += csc;
        out[2] += theta.cos() * csc;
        out[3] += (2.0 * theta).cos() * csc;
    }
    out
}
