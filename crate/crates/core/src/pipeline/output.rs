//! CSV and JSON renderings of spaces and pair reports.
//!
//! Rationals are written as `num/den` in lowest terms. The `s22` column is
//! `2|r| s2`.

use std::fmt;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use super::PairReport;
use crate::error::{Error, Result};
use crate::exact_arith::Triple;
use crate::invariants::InvariantRecord;

pub const SPACE_HEADER: &str = "r,k1,k2,k3,l1,l2,l3,s,p1,cohom,condC,s1,s2,s3,s22";
pub const PAIR_HEADER_PREFIX: &str = "pair,relation,orientation";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv|json)")),
        }
    }
}

fn cond_label(rec: &InvariantRecord) -> String {
    rec.condition
        .first_line()
        .map_or_else(|| "fail".to_string(), |l| l.to_string())
}

/// One CSV line (without newline) in the [`SPACE_HEADER`] layout.
pub fn space_csv_row(rec: &InvariantRecord) -> String {
    let [k1, k2, k3] = rec.params.k;
    let [l1, l2, l3] = rec.params.l;
    let ks = match &rec.ks {
        Some(ks) => format!("{},{},{},{}", ks.s1, ks.s2, ks.s3, ks.s22),
        None => ",,,".to_string(),
    };
    format!(
        "{},{k1},{k2},{k3},{l1},{l2},{l3},{},{},{},{},{ks}",
        rec.basic.r_abs,
        rec.basic.s.value,
        rec.basic.p1,
        rec.cohomogeneity,
        cond_label(rec),
    )
}

#[derive(Serialize)]
struct SpaceJson {
    k: Triple,
    l: Triple,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct InvariantsJson {
    r: i64,
    s: i64,
    p1: i64,
    cohom: String,
    cond_c: String,
    s1: Option<String>,
    s2: Option<String>,
    s3: Option<String>,
    s22: Option<String>,
}

fn invariants_json(rec: &InvariantRecord) -> InvariantsJson {
    let ks = rec.ks.as_ref();
    InvariantsJson {
        r: rec.basic.r_abs,
        s: rec.basic.s.value,
        p1: rec.basic.p1,
        cohom: rec.cohomogeneity.to_string(),
        cond_c: cond_label(rec),
        s1: ks.map(|k| k.s1.to_string()),
        s2: ks.map(|k| k.s2.to_string()),
        s3: ks.map(|k| k.s3.to_string()),
        s22: ks.map(|k| k.s22.to_string()),
    }
}

#[derive(Serialize)]
struct SpaceRecordJson {
    space: SpaceJson,
    invariants: InvariantsJson,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PairJson {
    r: i64,
    space_a: SpaceJson,
    space_b: SpaceJson,
    relation: String,
    orientation: Option<String>,
    invariants_a: InvariantsJson,
    invariants_b: InvariantsJson,
}

fn relation_label(p: &PairReport) -> (String, Option<String>) {
    match &p.verdict {
        None => ("basic".to_string(), None),
        Some(v) => (v.relation.to_string(), Some(v.orientation.to_string())),
    }
}

/// JSON object for a single space.
pub fn record_json(rec: &InvariantRecord) -> serde_json::Value {
    serde_json::to_value(SpaceRecordJson {
        space: SpaceJson {
            k: rec.params.k,
            l: rec.params.l,
        },
        invariants: invariants_json(rec),
    })
    .expect("plain data serializes")
}

pub fn write_spaces<W: Write + ?Sized>(
    w: &mut W,
    format: Format,
    records: &[InvariantRecord],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "{SPACE_HEADER}")?;
            for rec in records {
                writeln!(w, "{}", space_csv_row(rec))?;
            }
        }
        Format::Json => {
            let all: Vec<_> = records.iter().map(record_json).collect();
            serde_json::to_writer_pretty(&mut *w, &all)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

pub fn write_pairs<W: Write + ?Sized>(
    w: &mut W,
    format: Format,
    reports: &[PairReport],
) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            writeln!(w, "{PAIR_HEADER_PREFIX},{SPACE_HEADER}")?;
            for (n, p) in reports.iter().enumerate() {
                let (rel, orient) = relation_label(p);
                let orient = orient.unwrap_or_default();
                for rec in [&p.a, &p.b] {
                    writeln!(w, "{},{rel},{orient},{}", n + 1, space_csv_row(rec))?;
                }
            }
        }
        Format::Json => {
            let all: Vec<_> = reports
                .iter()
                .map(|p| {
                    let (relation, orientation) = relation_label(p);
                    PairJson {
                        r: p.r,
                        space_a: SpaceJson {
                            k: p.a.params.k,
                            l: p.a.params.l,
                        },
                        space_b: SpaceJson {
                            k: p.b.params.k,
                            l: p.b.params.l,
                        },
                        relation,
                        orientation,
                        invariants_a: invariants_json(&p.a),
                        invariants_b: invariants_json(&p.b),
                    }
                })
                .collect();
            serde_json::to_writer_pretty(&mut *w, &all)?;
            writeln!(w)?;
        }
    }
    Ok(())
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    f(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

pub fn write_pairs_file(path: &Path, format: Format, reports: &[PairReport]) -> Result<()> {
    write_file(path, |w| write_pairs(w, format, reports))
}

pub fn write_spaces_file(path: &Path, format: Format, records: &[InvariantRecord]) -> Result<()> {
    write_file(path, |w| write_spaces(w, format, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{basic_record, full_record};
    use crate::spaces::ParamPair;

    #[test]
    fn csv_rows() {
        let rec = full_record(&ParamPair::new([79, 49, -50], [46, 32, 0]).unwrap()).unwrap();
        assert_eq!(
            space_csv_row(&rec),
            "4001,79,49,-50,46,32,0,-1502,3336,4,col2,49741/112028,-1043/8002,1675/8002,0/1"
        );
        let bad = basic_record(&ParamPair::new([35, 21, -34], [12, 10, 0]).unwrap()).unwrap();
        assert!(space_csv_row(&bad).ends_with(",fail,,,,"));
        assert_eq!(
            SPACE_HEADER.split(',').count(),
            space_csv_row(&bad).split(',').count()
        );
    }

    #[test]
    fn json_record_uses_string_rationals() {
        let rec = full_record(&ParamPair::new([1, 1, -2], [0, 0, 0]).unwrap()).unwrap();
        let v = record_json(&rec);
        assert_eq!(v["invariants"]["s1"], "1/112");
        assert_eq!(v["invariants"]["condC"], "col1");
        assert_eq!(v["space"]["k"][2], -2);
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }
}
