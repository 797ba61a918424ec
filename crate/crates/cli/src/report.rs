//! Single-shape reports: `exact` and `bounds`.

use std::fmt::Write;

use semireg::bounds::{
    all_bounds, kz_root_bound, l_upper_root_bound, ls_lower_root_bound, ls_upper_root_bound, BoundOutcome,
};
use semireg::exact::{degree_of_regularity, hilbert_truncation};
use semireg::SystemShape;
use serde::Serialize;

use crate::table::BoundCell;
use crate::{Failure, Format, Settings};

#[derive(Serialize)]
struct ExactJson {
    m: u64,
    n: u64,
    dreg: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    coefficients: Option<Vec<String>>,
}

pub fn exact(settings: &Settings, shape: SystemShape, with_coefficients: bool) -> Result<String, Failure> {
    let dreg = degree_of_regularity(shape);
    let coefficients = with_coefficients.then(|| {
        hilbert_truncation(shape)
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    });
    let mut out = String::new();
    match settings.format {
        Format::Json => {
            let doc = ExactJson {
                m: shape.m(),
                n: shape.n(),
                dreg,
                coefficients,
            };
            out = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv => {
            writeln!(out, "m,n,dreg").unwrap();
            writeln!(out, "{},{},{dreg}", shape.m(), shape.n()).unwrap();
            if let Some(c) = coefficients {
                writeln!(out, "k,coefficient").unwrap();
                for (k, c) in c.iter().enumerate() {
                    writeln!(out, "{k},{c}").unwrap();
                }
            }
        }
        Format::Md => {
            writeln!(out, "d_reg = {dreg}").unwrap();
            if let Some(c) = coefficients {
                writeln!(out).unwrap();
                writeln!(out, "| k | coefficient |").unwrap();
                writeln!(out, "|---|---|").unwrap();
                for (k, c) in c.iter().enumerate() {
                    writeln!(out, "| {k} | {c} |").unwrap();
                }
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct BoundsJson {
    m: u64,
    n: u64,
    dreg: u64,
    kz_lower: BoundCell,
    ls_lower: BoundCell,
    ls_upper: BoundCell,
    l_upper: BoundCell,
    sandwich_holds: bool,
}

fn plain(outcome: &BoundOutcome) -> String {
    match outcome.bound() {
        Some(v) if outcome.is_near_boundary() => format!("{v}?"),
        Some(v) => v.to_string(),
        None => "-".to_string(),
    }
}

pub fn bounds(settings: &Settings, shape: SystemShape) -> Result<String, Failure> {
    let dreg = degree_of_regularity(shape);
    let [kz, ls, lsu, lu] = all_bounds(shape, &settings.airy);
    let holds = [kz, ls, lsu, lu].iter().all(|b| b.admits(dreg));
    let verdict = if holds { "holds" } else { "VIOLATED" };
    let sandwich = format!(
        "{} / {} <= {dreg} <= {} / {}",
        plain(&kz),
        plain(&ls),
        plain(&lsu),
        plain(&lu)
    );
    let mut out = String::new();
    match settings.format {
        Format::Json => {
            let doc = BoundsJson {
                m: shape.m(),
                n: shape.n(),
                dreg,
                kz_lower: BoundCell::from(&kz),
                ls_lower: BoundCell::from(&ls),
                ls_upper: BoundCell::from(&lsu),
                l_upper: BoundCell::from(&lu),
                sandwich_holds: holds,
            };
            out = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
        }
        Format::Csv => {
            writeln!(out, "m,n,dreg,kz_lower,ls_lower,ls_upper,l_upper,sandwich").unwrap();
            writeln!(
                out,
                "{},{},{dreg},{},{},{},{},{verdict}",
                shape.m(),
                shape.n(),
                plain(&kz),
                plain(&ls),
                plain(&lsu),
                plain(&lu)
            )
            .unwrap();
        }
        Format::Md => {
            writeln!(
                out,
                "shape: m = {}, n = {} (N = {}, t = {})",
                shape.m(),
                shape.n(),
                shape.family_size(),
                shape.excess()
            )
            .unwrap();
            writeln!(out, "d_reg = {dreg}").unwrap();
            for b in [kz, ls, lsu, lu] {
                writeln!(out, "{} = {b} [{}]", b.kind(), b.certification().name()).unwrap();
            }
            writeln!(out, "sandwich: {sandwich} ({verdict})").unwrap();
        }
    }
    Ok(out)
}

/// Root bounds against `k`, for plotting.
pub fn curve(settings: &Settings, shape: SystemShape) -> Result<String, Failure> {
    let family = shape.family_size();
    let fmt_opt = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
    let rows: Vec<[Option<f64>; 5]> = (1..=family / 2)
        .map(|k| {
            [
                Some(k as f64),
                kz_root_bound(family, k).ok(),
                Some(ls_lower_root_bound(family, k, &settings.airy)),
                ls_upper_root_bound(family, k).ok(),
                l_upper_root_bound(family, k).ok(),
            ]
        })
        .collect();
    let header = ["k", "kz_lower", "ls_lower", "ls_upper", "l_upper"];
    let mut out = String::new();
    if settings.format == Format::Json {
        let doc: Vec<serde_json::Value> = rows
            .iter()
            .map(|r| {
                let mut obj = serde_json::Map::new();
                obj.insert("threshold".into(), shape.excess().into());
                for (name, v) in header.iter().zip(r) {
                    obj.insert((*name).into(), v.map_or(serde_json::Value::Null, Into::into));
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        return Ok(serde_json::to_string_pretty(&doc).expect("serializable") + "\n");
    }
    writeln!(out, "{},threshold", header.join(",")).unwrap();
    for r in rows {
        let k = r[0].unwrap() as u64;
        let cells: Vec<String> = r[1..].iter().map(|&v| fmt_opt(v)).collect();
        writeln!(out, "{k},{},{}", cells.join(","), shape.excess()).unwrap();
    }
    Ok(out)
}
