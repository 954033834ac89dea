//! Parameter-level model of Eschenburg spaces `E_{k,l}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{gcd, pairwise_coprime, sym_polys, Triple};

/// Raw biquotient parameters `(k | l)` with `k1 + k2 + k3 = l1 + l2 + l3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamPair {
    pub k: Triple,
    pub l: Triple,
}

impl ParamPair {
    pub fn new(k: Triple, l: Triple) -> Result<Self> {
        if sym_polys(k)[0] != sym_polys(l)[0] {
            return Err(Error::UnequalSums { k, l });
        }
        Ok(ParamPair { k, l })
    }

    /// `r(k,l) = σ2(k) - σ2(l)`, with sign.
    pub fn r_signed(&self) -> i128 {
        sym_polys(self.k)[1] - sym_polys(self.l)[1]
    }

    /// Entry `A[i][j] = k_i - l_j` of the difference matrix (0-based).
    pub fn diff(&self, i: usize, j: usize) -> i64 {
        self.k[i] - self.l[j]
    }

    fn swapped(&self) -> Self {
        ParamPair {
            k: self.l,
            l: self.k,
        }
    }

    fn map(&self, f: impl Fn(i64) -> i64) -> Self {
        ParamPair {
            k: self.k.map(&f),
            l: self.l.map(&f),
        }
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [k1, k2, k3] = self.k;
        let [l1, l2, l3] = self.l;
        write!(f, "[{k1}, {k2}, {k3} | {l1}, {l2}, {l3}]")
    }
}

/// The six gcd conditions for a free circle action.
pub fn is_free(pp: &ParamPair) -> bool {
    const PAIRS: [(usize, usize); 6] = [(0, 1), (1, 0), (0, 2), (1, 2), (2, 0), (2, 1)];
    PAIRS
        .iter()
        .all(|&(a, b)| gcd(pp.diff(0, a), pp.diff(1, b)) == 1)
}

fn outside_closed_hull(xs: Triple, ys: Triple) -> bool {
    let lo = *ys.iter().min().unwrap();
    let hi = *ys.iter().max().unwrap();
    xs.iter().all(|&x| x < lo || x > hi)
}

/// Eschenburg's curvature criterion, applied to `(k | l)` or to `(l | k)`.
pub fn is_positively_curved(pp: &ParamPair) -> bool {
    outside_closed_hull(pp.k, pp.l) || outside_closed_hull(pp.l, pp.k)
}

/// What is known about the orientation relation between a space and its
/// normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Preserved,
    Reversed,
    Unknown,
}

/// The unique representative `k = (k1, k2, l1 + l2 - k1 - k2)`, `l = (l1, l2, 0)`
/// with `k1 >= k2 > l1 >= l2 >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct NormalizedSpace {
    params: ParamPair,
}

impl NormalizedSpace {
    /// Builds the normal form from its four free coordinates. Only checks shape.
    pub fn from_coords(k1: i64, k2: i64, l1: i64, l2: i64) -> Option<Self> {
        if !(k1 >= k2 && k2 > l1 && l1 >= l2 && l2 >= 0) {
            return None;
        }
        Some(NormalizedSpace {
            params: ParamPair {
                k: [k1, k2, l1 + l2 - k1 - k2],
                l: [l1, l2, 0],
            },
        })
    }

    pub fn params(&self) -> &ParamPair {
        &self.params
    }

    /// `(k1, k2, l1, l2)`
    pub fn coords(&self) -> [i64; 4] {
        [
            self.params.k[0],
            self.params.k[1],
            self.params.l[0],
            self.params.l[1],
        ]
    }

    /// `|r|`, which equals `k1(k1 - l1) + (k2 - l2)(k1 + k2 - l1)` in normal form.
    pub fn order(&self) -> i64 {
        let [k1, k2, l1, l2] = self.coords();
        k1 * (k1 - l1) + (k2 - l2) * (k1 + k2 - l1)
    }
}

impl fmt::Display for NormalizedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.params.fmt(f)
    }
}

/// Normal form of a free, positively curved space and the orientation bookkeeping.
pub fn normalize(pp: &ParamPair) -> Result<(NormalizedSpace, Orientation)> {
    if !is_free(pp) {
        return Err(Error::NotFree { k: pp.k, l: pp.l });
    }
    if !is_positively_curved(pp) {
        return Err(Error::NotPositivelyCurved { k: pp.k, l: pp.l });
    }
    let mut cur = *pp;
    let mut swapped = false;
    if !outside_closed_hull(cur.k, cur.l) {
        cur = cur.swapped();
        swapped = true;
    }
    let hi = *cur.l.iter().max().unwrap();
    let right = cur.k.iter().filter(|&&x| x > hi).count();
    // Equal sums force one or two k entries to the right of the l interval.
    let negated = right == 1;
    if negated {
        cur = cur.map(|x| -x);
    }
    let mut sorted = cur;
    sorted.k.sort_unstable_by(|a, b| b.cmp(a));
    sorted.l.sort_unstable_by(|a, b| b.cmp(a));
    let permuted = sorted != cur;
    let shift = sorted.l[2];
    let out = sorted.map(|x| x - shift);

    let orientation = if swapped || permuted {
        Orientation::Unknown
    } else if negated {
        Orientation::Reversed
    } else {
        Orientation::Preserved
    };
    let [k1, k2, _] = out.k;
    let [l1, l2, _] = out.l;
    let ns = NormalizedSpace::from_coords(k1, k2, l1, l2)
        .expect("normalization produced a non-normal representative");
    debug_assert_eq!(ns.params, out);
    Ok((ns, orientation))
}

/// One row or column of `A = (k_i - l_j)`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Line {
    Column(usize),
    Row(usize),
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Line::Column(j) => write!(f, "col{j}"),
            Line::Row(j) => write!(f, "row{j}"),
        }
    }
}

/// Rows and columns of `A = (k_i - l_j)` whose entries are pairwise coprime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionC {
    pub columns: [bool; 3],
    pub rows: [bool; 3],
}

impl ConditionC {
    pub fn holds(&self) -> bool {
        self.columns.iter().chain(self.rows.iter()).any(|&b| b)
    }

    /// Satisfied lines, columns first, in index order.
    pub fn lines(&self) -> Vec<Line> {
        let cols = (0..3)
            .filter(|&j| self.columns[j])
            .map(|j| Line::Column(j + 1));
        let rows = (0..3).filter(|&i| self.rows[i]).map(|i| Line::Row(i + 1));
        cols.chain(rows).collect()
    }

    pub fn first_line(&self) -> Option<Line> {
        self.lines().into_iter().next()
    }

    pub fn satisfies(&self, line: Line) -> bool {
        match line {
            Line::Column(j) => (1..=3).contains(&j) && self.columns[j - 1],
            Line::Row(i) => (1..=3).contains(&i) && self.rows[i - 1],
        }
    }
}

pub fn condition_c(pp: &ParamPair) -> ConditionC {
    let mut c = ConditionC::default();
    for j in 0..3 {
        c.columns[j] = pairwise_coprime([pp.diff(0, j), pp.diff(1, j), pp.diff(2, j)]);
    }
    for i in 0..3 {
        c.rows[i] = pairwise_coprime([pp.diff(i, 0), pp.diff(i, 1), pp.diff(i, 2)]);
    }
    c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cohomogeneity {
    One,
    TwoPlus,
    TwoMinus,
    Four,
}

impl fmt::Display for Cohomogeneity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Cohomogeneity::One => "1",
            Cohomogeneity::TwoPlus => "2+",
            Cohomogeneity::TwoMinus => "2-",
            Cohomogeneity::Four => "4",
        })
    }
}

impl std::str::FromStr for Cohomogeneity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(Cohomogeneity::One),
            "2+" => Ok(Cohomogeneity::TwoPlus),
            "2-" => Ok(Cohomogeneity::TwoMinus),
            "4" => Ok(Cohomogeneity::Four),
            _ => Err(format!("unknown cohomogeneity {s:?}")),
        }
    }
}

fn has_repeat(t: Triple) -> bool {
    t[0] == t[1] || t[0] == t[2] || t[1] == t[2]
}

pub fn cohomogeneity(ns: &NormalizedSpace) -> Cohomogeneity {
    match (has_repeat(ns.params.k), has_repeat(ns.params.l)) {
        (true, true) => Cohomogeneity::One,
        (true, false) => Cohomogeneity::TwoPlus,
        (false, true) => Cohomogeneity::TwoMinus,
        (false, false) => Cohomogeneity::Four,
    }
}

/// `(a, b, c)` with `a > b > c > 0` pairwise coprime, giving the 3-Sasakian
/// space `diag(z^a, z^b, z^c) \ SU(3) / diag(z^(a+b+c), 1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SasakianTriple {
    a: i64,
    b: i64,
    c: i64,
}

impl SasakianTriple {
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        if !(a > b && b > c && c > 0) || !pairwise_coprime([a, b, c]) {
            return Err(Error::InvalidSasakian { a, b, c });
        }
        Ok(SasakianTriple { a, b, c })
    }

    pub fn abc(&self) -> [i64; 3] {
        [self.a, self.b, self.c]
    }

    /// `r = ab + ac + bc`
    pub fn order(&self) -> i64 {
        self.a * self.b + self.a * self.c + self.b * self.c
    }

    pub fn to_params(&self) -> ParamPair {
        sasakian_to_params(self)
    }
}

impl fmt::Display for SasakianTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

pub fn sasakian_to_params(t: &SasakianTriple) -> ParamPair {
    ParamPair {
        k: [t.a, t.b, t.c],
        l: [t.a + t.b + t.c, 0, 0],
    }
}
