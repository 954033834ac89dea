//! Basic and Kreck–Stolz invariants of a single Eschenburg space.
//!
//! The basic invariants are polynomial in the parameters:
//! `r = σ2(k) - σ2(l)`, `s = σ3(k) - σ3(l) mod |r|`, `p1 = 2σ1(k)² - 6σ2(k) mod |r|`.
//!
//! The Kreck–Stolz invariants `s1, s2, s3` come from a bounding manifold whose
//! other boundary components are three lens spaces. The closed formulas need
//! a row or column of `A = (k_i - l_j)` with pairwise coprime entries
//! (condition (C)); the column and row variants differ in the sign of the lens
//! contributions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_arith::{
    mod_inverse, qmodz, res1, signed_residue, sym_polys, QModZ, SignedResidue,
};
use crate::lens_sums::{lens_invariants, LensInvariants, LensSpace};
use crate::spaces::{
    cohomogeneity, condition_c, normalize, Cohomogeneity, ConditionC, Line, ParamPair,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicInvariants {
    /// `σ2(k) - σ2(l)`
    pub r_signed: i128,
    pub r_abs: i64,
    pub s: SignedResidue,
    /// Least nonnegative residue mod `r_abs`.
    pub p1: i64,
    /// `-s⁻¹ / r` in Q/Z.
    pub linking: QModZ,
}

pub fn basic_invariants(pp: &ParamPair) -> Result<BasicInvariants> {
    let [sk1, sk2, sk3] = sym_polys(pp.k);
    let [_, sl2, sl3] = sym_polys(pp.l);
    let r_signed = sk2 - sl2;
    if r_signed == 0 {
        return Err(Error::ZeroOrder { k: pp.k, l: pp.l });
    }
    let r_abs = i64::try_from(r_signed.abs()).expect("|r| fits in i64");
    let rr = i128::from(r_abs);
    let s = signed_residue(sk3 - sl3, r_abs);
    let p1 = (2 * sk1 * sk1 - 6 * sk2).rem_euclid(rr) as i64;
    let s_inv = mod_inverse(i128::from(s.value), r_abs)?;
    let linking = qmodz(BigRational::new(
        BigInt::from(-i128::from(s_inv)),
        BigInt::from(r_signed),
    ));
    Ok(BasicInvariants {
        r_signed,
        r_abs,
        s,
        p1,
        linking,
    })
}

/// `q(k,l)` for condition (C) on column `j` (1-based).
pub fn q_column(pp: &ParamPair, j: usize) -> i128 {
    let (j0, jp0) = (j - 1, res1(j as i64 + 1, 2) as usize - 1);
    let sq = |x: i64| i128::from(x) * i128::from(x);
    (0..3)
        .map(|i| sq(pp.diff(i, j0)) + sq(pp.diff(i, jp0)))
        .sum::<i128>()
        - sq(pp.l[j0] - pp.l[jp0])
}

/// `q(k,l)` for condition (C) on row `j` (1-based).
pub fn q_row(pp: &ParamPair, j: usize) -> i128 {
    let (j0, jp0) = (j - 1, res1(j as i64 + 1, 2) as usize - 1);
    let sq = |x: i64| i128::from(x) * i128::from(x);
    (0..3)
        .map(|i| sq(pp.diff(j0, i)) + sq(pp.diff(jp0, i)))
        .sum::<i128>()
        - sq(pp.k[j0] - pp.k[jp0])
}

fn check_line(pp: &ParamPair, line: Line) -> Result<()> {
    if condition_c(pp).satisfies(line) {
        Ok(())
    } else {
        Err(Error::ConditionCFails {
            k: pp.k,
            l: pp.l,
            line: line.to_string(),
        })
    }
}

/// The three lens spaces bounding together with `E_{k,l}` for the given line.
pub fn lens_spaces_for(pp: &ParamPair, line: Line) -> Result<[LensSpace; 3]> {
    check_line(pp, line)?;
    let idx = |n: usize, m: i64| res1(n as i64, m) as usize - 1;
    let mut out = Vec::with_capacity(3);
    for i in 1..=3 {
        let (a, b, c) = (idx(i, 3), idx(i + 1, 3), idx(i + 2, 3));
        let (p, params) = match line {
            Line::Column(j) => {
                let (j, jp) = (j - 1, idx(j + 1, 2));
                (
                    pp.diff(a, j),
                    [pp.diff(b, j), pp.diff(c, j), pp.diff(b, jp), pp.diff(c, jp)],
                )
            }
            Line::Row(j) => {
                let (j, jp) = (j - 1, idx(j + 1, 2));
                (
                    pp.diff(j, a),
                    [pp.diff(j, b), pp.diff(j, c), pp.diff(jp, b), pp.diff(jp, c)],
                )
            }
        };
        let lens = LensSpace::new(p, params)?;
        debug_assert!(lens.has_even_param_sum(), "{lens:?} from {pp} has odd sum");
        out.push(lens);
    }
    Ok(out.try_into().expect("three lens spaces"))
}

/// Shorthand for [`lens_spaces_for`] with a column.
pub fn lens_spaces_for_column(pp: &ParamPair, j: usize) -> Result<[LensSpace; 3]> {
    lens_spaces_for(pp, Line::Column(j))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KSInvariants {
    pub s1: QModZ,
    pub s2: QModZ,
    pub s3: QModZ,
    /// `2|r| s2`
    pub s22: QModZ,
    pub source: Line,
}

impl KSInvariants {
    fn same_values(&self, other: &KSInvariants) -> bool {
        self.s1 == other.s1 && self.s2 == other.s2 && self.s3 == other.s3 && self.s22 == other.s22
    }
}

/// Kreck–Stolz invariants from the closed formula for `line`.
pub fn ks_invariants(pp: &ParamPair, line: Line) -> Result<KSInvariants> {
    let lenses = lens_spaces_for(pp, line)?;
    let (prod, q, lens_sign) = match line {
        Line::Column(j) => {
            let prod: BigInt = (0..3).map(|i| BigInt::from(pp.diff(i, j - 1))).product();
            (prod, q_column(pp, j), -1)
        }
        Line::Row(j) => {
            let prod: BigInt = (0..3).map(|i| BigInt::from(pp.diff(j - 1, i))).product();
            (prod, q_row(pp, j), 1)
        }
    };
    let r = BigInt::from(pp.r_signed());
    let r_abs = r.abs();
    let q = BigInt::from(q);
    let rp = &r * &prod;

    let mut s1 = BigRational::new(4 * rp.abs() - &q * &q, 896 * &rp);
    let mut s2 = BigRational::new(&q - 2, 48 * &rp);
    let mut s3 = BigRational::new(&q - 8, 12 * &rp);
    for lens in &lenses {
        let LensInvariants {
            s1: l1,
            s2: l2,
            s3: l3,
        } = lens_invariants(lens)?;
        if lens_sign < 0 {
            s1 -= l1.value();
            s2 -= l2.value();
            s3 -= l3.value();
        } else {
            s1 += l1.value();
            s2 += l2.value();
            s3 += l3.value();
        }
    }
    let s2 = qmodz(s2);
    let s22 = s2.scale(&(2 * r_abs));
    Ok(KSInvariants {
        s1: qmodz(s1),
        s2,
        s3: qmodz(s3),
        s22,
        source: line,
    })
}

pub fn ks_invariants_column(pp: &ParamPair, j: usize) -> Result<KSInvariants> {
    ks_invariants(pp, Line::Column(j))
}

pub fn ks_invariants_row(pp: &ParamPair, j: usize) -> Result<KSInvariants> {
    ks_invariants(pp, Line::Row(j))
}

/// Evaluates every satisfied line. All results should agree in Q/Z.
pub fn ks_invariants_all_lines(pp: &ParamPair) -> Result<Vec<KSInvariants>> {
    condition_c(pp)
        .lines()
        .into_iter()
        .map(|line| ks_invariants(pp, line))
        .collect()
}

/// True when every satisfied line yields the same `s1, s2, s3, s22`.
pub fn lines_agree(all: &[KSInvariants]) -> bool {
    all.windows(2).all(|w| w[0].same_values(&w[1]))
}

/// Everything known about one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    /// The representation the invariants were computed from.
    pub params: ParamPair,
    pub cohomogeneity: Cohomogeneity,
    pub basic: BasicInvariants,
    pub condition: ConditionC,
    /// `None` when condition (C) fails or the invariants were not requested.
    pub ks: Option<KSInvariants>,
}

impl InvariantRecord {
    pub fn condition_c_fails(&self) -> bool {
        !self.condition.holds()
    }

    /// `2 r s2` with the signed `r`, the convention of the printed tables.
    pub fn table_s22(&self) -> Option<QModZ> {
        self.ks
            .as_ref()
            .map(|ks| ks.s2.scale(&(2 * BigInt::from(self.basic.r_signed))))
    }

    /// Adds the Kreck–Stolz invariants from the first satisfied line.
    pub fn with_ks(mut self) -> Result<Self> {
        if self.ks.is_none() {
            if let Some(line) = self.condition.first_line() {
                self.ks = Some(ks_invariants(&self.params, line)?);
            }
        }
        Ok(self)
    }
}

/// Basic invariants, cohomogeneity and condition (C), without the lens sums.
pub fn basic_record(pp: &ParamPair) -> Result<InvariantRecord> {
    let (ns, _) = normalize(pp)?;
    Ok(InvariantRecord {
        params: *pp,
        cohomogeneity: cohomogeneity(&ns),
        basic: basic_invariants(pp)?,
        condition: condition_c(pp),
        ks: None,
    })
}

/// Complete record: Kreck–Stolz invariants from the first satisfied column,
/// else the first satisfied row; none if condition (C) fails.
pub fn full_record(pp: &ParamPair) -> Result<InvariantRecord> {
    basic_record(pp)?.with_ks()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(k: [i64; 3], l: [i64; 3]) -> ParamPair {
        ParamPair::new(k, l).unwrap()
    }

    fn q(s: &str) -> QModZ {
        s.parse().unwrap()
    }

    #[test]
    fn basic_examples() {
        let b = basic_invariants(&pp([21, 21, -2], [20, 20, 0])).unwrap();
        assert_eq!((b.r_abs, b.s.value, b.p1), (43, 21, 26));
        assert_eq!(b.r_signed, -43);
        // s⁻¹ = 41, Lk = -41/(-43)
        assert_eq!(b.linking, q("41/43"));

        let b = basic_invariants(&pp([79, 49, -50], [46, 32, 0])).unwrap();
        assert_eq!((b.r_abs, b.s.value, b.p1), (4001, -1502, 3336));

        let b = basic_invariants(&pp([316, 3, 1], [320, 0, 0])).unwrap();
        assert_eq!((b.r_abs, b.s.value, b.p1), (1267, -319, 813));
        assert_eq!(b.r_signed, 1267);
    }

    #[test]
    fn zero_order_is_an_error() {
        assert!(matches!(
            basic_invariants(&pp([1, 0, 0], [1, 0, 0])),
            Err(Error::ZeroOrder { .. })
        ));
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_column(&pp([1, 1, -2], [0, 0, 0]), 1), 12);
        assert_eq!(q_column(&pp([21, 21, -2], [20, 20, 0]), 1), 972);
        let p = pp([21, 21, -2], [20, 20, 0]);
        assert_eq!(q_column(&p, 1), q_column(&p, 2));
    }

    #[test]
    fn lens_spaces_of_e1() {
        let ls = lens_spaces_for_column(&pp([1, 1, -2], [0, 0, 0]), 1).unwrap();
        assert_eq!(ls[2], LensSpace::new(-2, [1, 1, 1, 1]).unwrap());
        assert_eq!(ls[0].p(), 1);
        assert!(ls.iter().all(|l| l.has_even_param_sum()));
    }

    #[test]
    fn lens_spaces_need_condition_c() {
        let bad = pp([35, 21, -34], [12, 10, 0]);
        for line in [Line::Column(1), Line::Row(2)] {
            assert!(matches!(
                lens_spaces_for(&bad, line),
                Err(Error::ConditionCFails { .. })
            ));
        }
    }

    #[test]
    fn e1_invariants_agree_across_lines() {
        let p = pp([1, 1, -2], [0, 0, 0]);
        let all = ks_invariants_all_lines(&p).unwrap();
        assert_eq!(all.len(), 5);
        assert!(lines_agree(&all));
        let ks = &all[0];
        assert_eq!(ks.s2, q("-1/36"));
        assert_eq!(ks.s1, q("1/112"));
        assert_eq!(ks.s3, q("1/18"));
        assert_eq!(ks.s22, q("-1/6"));
    }

    #[test]
    fn r4001_pair_values() {
        let rec = full_record(&pp([79, 49, -50], [46, 32, 0])).unwrap();
        let ks = rec.ks.as_ref().unwrap();
        assert_eq!(ks.source, Line::Column(2));
        assert_eq!(ks.s2, q("-1043/8002"));
        assert_eq!(ks.s1, q("49741/112028"));
        assert_eq!(rec.cohomogeneity, Cohomogeneity::Four);

        let rec = full_record(&pp([75, 54, -51], [46, 32, 0])).unwrap();
        let ks = rec.ks.unwrap();
        assert_eq!(ks.s2, q("1043/8002"));
        assert_eq!(ks.s1, q("1877/8002"));
    }

    #[test]
    fn condition_c_failure_is_data() {
        let rec = full_record(&pp([35, 21, -34], [12, 10, 0])).unwrap();
        assert!(rec.condition_c_fails());
        assert!(rec.ks.is_none());
        assert_eq!(rec.basic.r_abs, rec.params.r_signed().unsigned_abs() as i64);
        assert!(matches!(
            ks_invariants_column(&rec.params, 1),
            Err(Error::ConditionCFails { .. })
        ));
    }

    #[test]
    fn table_convention_for_s22() {
        let rec = full_record(&pp([21, 21, -2], [20, 20, 0])).unwrap();
        assert_eq!(rec.ks.as_ref().unwrap().s22, q("1/6"));
        assert_eq!(rec.table_s22().unwrap(), q("-1/6"));
    }
}
