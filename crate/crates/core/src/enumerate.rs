//! Enumeration of positively curved Eschenburg spaces and 3-Sasakian triples
//! by the order `r` of `H^4`.
//!
//! In normal form `|r| = k1(k1 - l1) + (k2 - l2)(k1 + k2 - l1)` with
//! `k1 >= k2 > l1 >= l2 >= 0`, so for a fixed `r` every coordinate is bounded
//! and `l2` is determined by `(k1, l1, k2)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::Workers;
use crate::spaces::{is_free, NormalizedSpace, ParamPair, SasakianTriple};

/// All free normal forms with `|r| = n`, sorted by `(k1, k2, l1, l2)`.
pub fn enum_positively_curved(n: i64) -> Result<Vec<NormalizedSpace>> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::EvenOrder(n));
    }
    let mut out = Vec::new();
    for k1 in 1..n {
        // l1 <= k1 - 1 and k1(k1 - l1) <= n - 1
        let max_gap = (n - 1) / k1;
        if max_gap == 0 {
            break;
        }
        let l1_min = (k1 - max_gap).max(0);
        for l1 in l1_min..k1 {
            let rem = n - k1 * (k1 - l1);
            // m = k1 + k2 - l1 divides rem; m grows with k2
            for k2 in (l1 + 1)..=k1 {
                let m = k1 + k2 - l1;
                if m > rem {
                    break;
                }
                if rem % m != 0 {
                    continue;
                }
                let l2 = k2 - rem / m;
                if (0..=l1).contains(&l2) {
                    let ns = NormalizedSpace::from_coords(k1, k2, l1, l2)
                        .expect("loop bounds give normal coordinates");
                    if is_free(ns.params()) {
                        out.push(ns);
                    }
                }
            }
        }
    }
    out.sort_by_key(|ns| ns.coords());
    debug_assert!(out.iter().all(|ns| ns.order() == n));
    Ok(out)
}

/// All 3-Sasakian triples with `ab + ac + bc = r`, sorted by `(a, b, c)`.
pub fn enum_sasakian(r: i64) -> Result<Vec<SasakianTriple>> {
    if r < 1 || r % 2 == 0 {
        return Err(Error::EvenOrder(r));
    }
    let mut out = Vec::new();
    let mut c = 1;
    while 3 * c * c < r {
        let mut b = c + 1;
        // a > b  <=>  r - bc > b(b + c)
        while b * b + 2 * b * c < r {
            let rest = r - b * c;
            if rest % (b + c) == 0 {
                let a = rest / (b + c);
                if let Ok(t) = SasakianTriple::new(a, b, c) {
                    out.push(t);
                }
            }
            b += 1;
        }
        c += 1;
    }
    out.sort();
    Ok(out)
}

/// Triples with `lo <= r <= hi`, sorted by `(r, a, b, c)`.
///
/// Loops over `(c, b)` and solves for the range of `a`, which is much cheaper
/// than calling [`enum_sasakian`] once per `r` on wide ranges.
pub fn enum_sasakian_block(lo: i64, hi: i64) -> Vec<SasakianTriple> {
    let mut out = Vec::new();
    let mut c = 1;
    while 3 * c * c < hi {
        let mut b = c + 1;
        while b * b + 2 * b * c < hi {
            let (s, p) = (b + c, b * c);
            // r = a·s + p with a > b
            let a_lo = ((lo - p + s - 1).div_euclid(s)).max(b + 1);
            let a_hi = (hi - p).div_euclid(s);
            for a in a_lo..=a_hi {
                if let Ok(t) = SasakianTriple::new(a, b, c) {
                    out.push(t);
                }
            }
            b += 1;
        }
        c += 1;
    }
    // r is odd for pairwise coprime triples, so no parity filter is needed
    out.sort_by_key(|t| (t.order(), t.abc()));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    General,
    Sasakian,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::General => "eschenburg",
            Family::Sasakian => "sasakian",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "eschenburg" | "general" => Ok(Family::General),
            "sasakian" => Ok(Family::Sasakian),
            _ => Err(format!(
                "unknown family {s:?} (expected eschenburg|sasakian)"
            )),
        }
    }
}

/// Range of odd orders to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRequest {
    pub family: Family,
    pub r_min: i64,
    pub r_max: i64,
}

impl EnumerationRequest {
    pub fn new(family: Family, r_min: i64, r_max: i64) -> Result<Self> {
        for r in [r_min, r_max] {
            if r < 1 || r % 2 == 0 {
                return Err(Error::EvenOrder(r));
            }
        }
        if r_min > r_max {
            return Err(Error::InvalidRange {
                min: r_min,
                max: r_max,
            });
        }
        Ok(EnumerationRequest {
            family,
            r_min,
            r_max,
        })
    }

    /// Splits the range into consecutive blocks of `odd_per_block` odd values.
    pub fn blocks(&self, odd_per_block: usize) -> Vec<(i64, i64)> {
        let step = 2 * odd_per_block.max(1) as i64;
        let mut out = Vec::new();
        let mut lo = self.r_min;
        while lo <= self.r_max {
            let hi = (lo + step - 2).min(self.r_max);
            out.push((lo, hi));
            lo = hi + 2;
        }
        out
    }
}

/// One enumerated space, in the coordinates of its family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    General(NormalizedSpace),
    Sasakian(SasakianTriple),
}

impl Space {
    /// Parameters the invariants are computed from: the normal form, or
    /// `(a, b, c | a+b+c, 0, 0)`.
    pub fn params(&self) -> ParamPair {
        match self {
            Space::General(ns) => *ns.params(),
            Space::Sasakian(t) => t.to_params(),
        }
    }

    pub fn order(&self) -> i64 {
        match self {
            Space::General(ns) => ns.order(),
            Space::Sasakian(t) => t.order(),
        }
    }
}

/// All spaces of the family with `lo <= r <= hi` (both odd), ascending `r`,
/// then lexicographic coordinates.
pub(crate) fn enum_block(family: Family, lo: i64, hi: i64, workers: &Workers) -> Vec<Space> {
    match family {
        Family::General => {
            let orders: Vec<i64> = (lo..=hi).step_by(2).collect();
            workers
                .map(&orders, |&n| enum_positively_curved(n).expect("odd order"))
                .into_iter()
                .flatten()
                .map(Space::General)
                .collect()
        }
        Family::Sasakian => enum_sasakian_block(lo, hi)
            .into_iter()
            .map(Space::Sasakian)
            .collect(),
    }
}

/// Every space in the request, in deterministic order.
pub fn enum_range(req: &EnumerationRequest, threads: usize) -> Vec<Space> {
    let workers = Workers::new(threads);
    req.blocks(1000)
        .into_iter()
        .flat_map(|(lo, hi)| enum_block(req.family, lo, hi, &workers))
        .collect()
}
