//! Pair classification up to homotopy equivalence, homeomorphism and
//! diffeomorphism, in both orientations.
//!
//! Orientation preserving:
//! * homotopy equivalent iff `|r|`, `s` and `s22` agree;
//! * homeomorphic iff `|r|`, `s`, `p1` and `s2` agree;
//! * diffeomorphic iff additionally `s1` agrees.
//!
//! Orientation reversing: the same with `s`, `s1`, `s2`, `s22` of the second
//! space negated.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exact_arith::{QModZ, SignedResidue};
use crate::invariants::InvariantRecord;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Relation {
    None,
    HomotopyEquivalent,
    Homeomorphic,
    Diffeomorphic,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::None => "none",
            Relation::HomotopyEquivalent => "homotopy",
            Relation::Homeomorphic => "homeo",
            Relation::Diffeomorphic => "diffeo",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairOrientation {
    Preserving,
    Reversing,
}

impl fmt::Display for PairOrientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairOrientation::Preserving => "preserving",
            PairOrientation::Reversing => "reversing",
        })
    }
}

/// The invariants of one side of a comparison, after the orientation was applied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub r_abs: i64,
    pub s: SignedResidue,
    pub p1: i64,
    pub s1: QModZ,
    pub s2: QModZ,
    pub s22: QModZ,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairVerdict {
    pub relation: Relation,
    pub orientation: PairOrientation,
    /// False when either space fails condition (C) or lacks Kreck–Stolz data.
    pub classifiable: bool,
    pub witness: Option<[Witness; 2]>,
}

fn witness(rec: &InvariantRecord, orientation: PairOrientation) -> Option<Witness> {
    let ks = rec.ks.as_ref()?;
    let w = Witness {
        r_abs: rec.basic.r_abs,
        s: rec.basic.s,
        p1: rec.basic.p1,
        s1: ks.s1.clone(),
        s2: ks.s2.clone(),
        s22: ks.s22.clone(),
    };
    Some(match orientation {
        PairOrientation::Preserving => w,
        PairOrientation::Reversing => Witness {
            s: -w.s,
            s1: -w.s1,
            s2: -w.s2,
            s22: -w.s22,
            ..w
        },
    })
}

fn relation_of(a: &Witness, b: &Witness) -> Relation {
    if a.r_abs != b.r_abs || a.s != b.s {
        return Relation::None;
    }
    let homotopy = a.s22 == b.s22;
    let homeo = a.p1 == b.p1 && a.s2 == b.s2;
    // s22 = 2|r| s2, so equal s2 forces equal s22
    debug_assert!(
        !homeo || homotopy,
        "homeomorphic but not homotopy equivalent"
    );
    if homeo && a.s1 == b.s1 {
        Relation::Diffeomorphic
    } else if homeo {
        Relation::Homeomorphic
    } else if homotopy {
        Relation::HomotopyEquivalent
    } else {
        Relation::None
    }
}

/// Strongest relation between `a` and `b` over both orientations;
/// ties go to the orientation preserving one.
pub fn compare(a: &InvariantRecord, b: &InvariantRecord) -> PairVerdict {
    let Some(wa) = witness(a, PairOrientation::Preserving) else {
        return unclassifiable();
    };
    let mut best: Option<(Relation, PairOrientation, Witness)> = None;
    for orientation in [PairOrientation::Preserving, PairOrientation::Reversing] {
        let Some(wb) = witness(b, orientation) else {
            return unclassifiable();
        };
        let rel = relation_of(&wa, &wb);
        if best.as_ref().is_none_or(|(r, _, _)| rel > *r) {
            best = Some((rel, orientation, wb));
        }
    }
    let (relation, orientation, wb) = best.expect("two orientations tried");
    PairVerdict {
        relation,
        orientation,
        classifiable: true,
        witness: Some([wa, wb]),
    }
}

fn unclassifiable() -> PairVerdict {
    PairVerdict {
        relation: Relation::None,
        orientation: PairOrientation::Preserving,
        classifiable: false,
        witness: None,
    }
}

/// Re-derives the three predicates from the witnesses and checks
/// diffeomorphic ⇒ homeomorphic ⇒ homotopy equivalent, and that the reported
/// relation is the strongest one that holds.
pub fn is_monotone(v: &PairVerdict) -> bool {
    let Some([a, b]) = &v.witness else {
        return v.relation == Relation::None;
    };
    let base = a.r_abs == b.r_abs && a.s == b.s;
    let homotopy = base && a.s22 == b.s22;
    let homeo = base && a.p1 == b.p1 && a.s2 == b.s2;
    let diffeo = homeo && a.s1 == b.s1;
    let expected = if diffeo {
        Relation::Diffeomorphic
    } else if homeo {
        Relation::Homeomorphic
    } else if homotopy {
        Relation::HomotopyEquivalent
    } else {
        Relation::None
    };
    (!diffeo || homeo) && (!homeo || homotopy) && expected == v.relation
}

/// Equal `|r|`, equal `p1`, and `s` equal up to sign: necessary for a
/// homeomorphism in either orientation.
pub fn basic_match(a: &InvariantRecord, b: &InvariantRecord) -> bool {
    a.basic.r_abs == b.basic.r_abs
        && a.basic.p1 == b.basic.p1
        && a.basic.s.canonical_abs() == b.basic.s.canonical_abs()
}

/// Minimum strength a pair must reach to be reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Threshold {
    /// Basic invariants match; no Kreck–Stolz comparison.
    Basic,
    Homotopy,
    Homeo,
    Diffeo,
}

impl Threshold {
    pub fn relation(self) -> Option<Relation> {
        match self {
            Threshold::Basic => None,
            Threshold::Homotopy => Some(Relation::HomotopyEquivalent),
            Threshold::Homeo => Some(Relation::Homeomorphic),
            Threshold::Diffeo => Some(Relation::Diffeomorphic),
        }
    }

    /// Whether the bucket key must include `p1`. Homotopy equivalence does
    /// not see `p1`.
    pub fn keys_on_p1(self) -> bool {
        self != Threshold::Homotopy
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Threshold::Basic => "basic",
            Threshold::Homotopy => "homotopy",
            Threshold::Homeo => "homeo",
            Threshold::Diffeo => "diffeo",
        })
    }
}

impl FromStr for Threshold {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "basic" => Ok(Threshold::Basic),
            "homotopy" => Ok(Threshold::Homotopy),
            "homeo" => Ok(Threshold::Homeo),
            "diffeo" => Ok(Threshold::Diffeo),
            _ => Err(format!(
                "unknown relation {s:?} (expected basic|homotopy|homeo|diffeo)"
            )),
        }
    }
}

/// Bucket key for candidate pairs: `(|r|, |s|, p1 or -1)`.
pub fn bucket_key(rec: &InvariantRecord, threshold: Threshold) -> (i64, i64, i64) {
    let p1 = if threshold.keys_on_p1() {
        rec.basic.p1
    } else {
        -1
    };
    (rec.basic.r_abs, rec.basic.s.canonical_abs(), p1)
}

/// Whether the pair reaches `threshold`.
pub fn meets(a: &InvariantRecord, b: &InvariantRecord, threshold: Threshold) -> bool {
    match threshold.relation() {
        None => basic_match(a, b),
        Some(rel) => compare(a, b).relation >= rel,
    }
}

/// Number of unordered pairs of distinct records reaching `threshold`.
///
/// Records must be distinct spaces and, for thresholds above `Basic`, carry
/// Kreck–Stolz invariants where condition (C) holds.
pub fn relation_counts(records: &[InvariantRecord], threshold: Threshold) -> usize {
    let mut buckets: BTreeMap<(i64, i64, i64), Vec<&InvariantRecord>> = BTreeMap::new();
    for rec in records {
        buckets
            .entry(bucket_key(rec, threshold))
            .or_default()
            .push(rec);
    }
    buckets
        .values()
        .map(|b| {
            let mut n = 0;
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    if meets(b[i], b[j], threshold) {
                        n += 1;
                    }
                }
            }
            n
        })
        .sum()
}
