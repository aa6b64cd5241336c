use std::fmt::Write as _;
use std::ops::RangeInclusive;

use anyhow::Result;
use ginlab::gin::StaircaseRecord;
use ginlab::{canonical_class, exceptional_classes, gin_staircase, hilbert_table, intersect};
use ginlab::{PointConfig, ShapeReport, VerifyReport};
use serde::Serialize;

use crate::Format;

fn unsupported(command: &str, format: Format) -> anyhow::Error {
    anyhow::anyhow!("`{command}` has no {format:?} output")
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn monomial(a: u64, b: u64) -> String {
    let part = |v: &str, e: u64| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    let parts: Vec<String> = [part("x", a), part("y", b)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[derive(Serialize)]
struct ClassRow {
    class: String,
    degree: i64,
    mults: Vec<i64>,
    self_intersection: i64,
    canonical_pairing: i64,
}

#[derive(Serialize)]
struct ClassListing {
    config: PointConfig,
    count: usize,
    classes: Vec<ClassRow>,
}

pub fn classes(config: PointConfig, format: Option<Format>) -> Result<String> {
    let k = canonical_class(config.r())?;
    let rows = exceptional_classes(config)?
        .into_iter()
        .map(|c| {
            Ok(ClassRow {
                class: c.to_basis_string(),
                degree: c.degree(),
                mults: c.mults().to_vec(),
                self_intersection: intersect(&c, &c)?,
                canonical_pairing: intersect(&c, &k)?,
            })
        })
        .collect::<ginlab::Result<Vec<_>>>()?;
    let listing = ClassListing {
        config,
        count: rows.len(),
        classes: rows,
    };
    match format.unwrap_or(Format::Text) {
        Format::Json => json(&listing),
        Format::Csv => {
            let mut out = String::from("d");
            for i in 1..=config.r() {
                let _ = write!(out, ",a{i}");
            }
            out.push_str(",self_intersection,canonical_pairing\n");
            for row in &listing.classes {
                let mults: Vec<String> = row.mults.iter().map(i64::to_string).collect();
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    row.degree,
                    mults.join(","),
                    row.self_intersection,
                    row.canonical_pairing
                );
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!("{} classes for {config}\n", listing.count);
            for row in &listing.classes {
                let _ = writeln!(
                    out,
                    "{}  C^2={} C.K={}",
                    row.class, row.self_intersection, row.canonical_pairing
                );
            }
            Ok(out)
        }
        f => Err(unsupported("classes", f)),
    }
}

#[derive(Serialize)]
struct HilbertRow {
    t: u64,
    h: u64,
}

#[derive(Serialize)]
struct HilbertListing {
    config: PointConfig,
    m: u64,
    provenance: ginlab::Provenance,
    conjectural: bool,
    values: Vec<HilbertRow>,
}

pub fn hilbert(
    config: PointConfig,
    m: u64,
    ts: RangeInclusive<u64>,
    format: Option<Format>,
) -> Result<String> {
    let table = hilbert_table(config, m, ts)?;
    let conjectural = table.is_conjectural();
    let listing = HilbertListing {
        config,
        m,
        provenance: table.provenance,
        conjectural,
        values: table
            .value
            .into_iter()
            .map(|(t, h)| HilbertRow { t, h })
            .collect(),
    };
    match format.unwrap_or(Format::Csv) {
        Format::Json => json(&listing),
        Format::Csv => {
            let mut out = String::from("t,h\n");
            for row in &listing.values {
                let _ = writeln!(out, "{},{}", row.t, row.h);
            }
            Ok(out)
        }
        Format::Text => {
            let mut out = format!(
                "{config} m={m}{}\n",
                if conjectural { " (conjectural)" } else { "" }
            );
            for row in &listing.values {
                let _ = writeln!(out, "H({}) = {}", row.t, row.h);
            }
            Ok(out)
        }
        f => Err(unsupported("hilbert", f)),
    }
}

pub fn gin(config: PointConfig, m: u64, format: Option<Format>) -> Result<String> {
    let s = gin_staircase(config, m)?;
    let record = StaircaseRecord::from_staircase(&s)?;
    match format.unwrap_or(Format::Json) {
        Format::Json => json(&record),
        Format::Svg => Ok(ginlab::limit::shape_report_from(config, &[(m, s)].into())?.to_svg()),
        Format::Csv => {
            let mut out = String::from("x,y\n");
            for [a, b] in &record.generators {
                let _ = writeln!(out, "{a},{b}");
            }
            Ok(out)
        }
        Format::Text => {
            let gens: Vec<String> = record
                .generators
                .iter()
                .map(|&[a, b]| monomial(a, b))
                .collect();
            Ok(format!(
                "{config} m={m}{}\nalpha={} zeta={} colength={}\ngenerators: {}\n",
                if record.conjectural {
                    " (conjectural)"
                } else {
                    ""
                },
                record.alpha,
                s.zeta(),
                record.colength,
                gens.join(", ")
            ))
        }
    }
}

pub fn shape(report: &ShapeReport, format: Option<Format>) -> Result<String> {
    match format.unwrap_or(Format::Json) {
        Format::Json => json(report),
        Format::Csv => Ok(report.to_csv()),
        Format::Svg => Ok(report.to_svg()),
        Format::Text => {
            let mut out = format!(
                "{}{}\n",
                report.config,
                if report.conjectural {
                    " (conjectural)"
                } else {
                    ""
                }
            );
            if let Some(p) = &report.predicted {
                let _ = writeln!(out, "predicted intercepts: ({}, {})", p.gamma1, p.gamma2);
            }
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "m={} alpha={} zeta={} x={} y={} colength/m^2={}",
                    r.m, r.alpha, r.zeta, r.x_intercept, r.y_intercept, r.colength_over_m2
                );
            }
            let _ = writeln!(out, "seshadri estimate: {}", report.seshadri_estimate);
            Ok(out)
        }
    }
}

pub fn verify(report: &VerifyReport, format: Option<Format>) -> Result<String> {
    match format.unwrap_or(Format::Text) {
        Format::Json => json(report),
        Format::Text => Ok(report.to_text()),
        f => Err(unsupported("verify", f)),
    }
}
