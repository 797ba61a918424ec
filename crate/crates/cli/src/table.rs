//! Table sweeps over families of shapes.

use std::fmt::Write;

use clap::Args;
use rayon::prelude::*;
use semireg::bounds::{kz_lower, l_upper, ls_lower, ls_lower_asymptotic, ls_upper, BoundOutcome};
use semireg::exact::{degree_of_regularity, f5_cost_log2, DEFAULT_OMEGA};
use semireg::SystemShape;
use serde::{Deserialize, Serialize};

use crate::{Failure, Format, Settings};

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Family of shapes: `n+ALPHA`, `BETAn` (e.g. `2n`), `nlog2n`, or `list`.
    #[arg(long)]
    pub family: String,
    /// Values of n: comma-separated integers or power-of-two ranges such as
    /// `2^8..2^15`. Empty for a header-only table.
    #[arg(long, default_value = "2^8..2^15")]
    pub n: String,
    /// Explicit shapes for `--family list`, as `m:n` pairs.
    #[arg(long, default_value = "")]
    pub pairs: String,
    /// Columns to emit.
    #[arg(long, value_delimiter = ',', default_value = "dreg,kz_lower,ls_lower,ls_upper,l_upper")]
    pub columns: Vec<Column>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Column {
    Dreg,
    KzLower,
    LsLower,
    LsUpper,
    LUpper,
    F5Log2,
    LsAsymptotic,
}

impl Column {
    fn name(self) -> &'static str {
        match self {
            Column::Dreg => "dreg",
            Column::KzLower => "kz_lower",
            Column::LsLower => "ls_lower",
            Column::LsUpper => "ls_upper",
            Column::LUpper => "l_upper",
            Column::F5Log2 => "f5_log2",
            Column::LsAsymptotic => "ls_asymptotic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Additive(u64),
    Proportional(f64),
    NLog2N,
    Explicit(Vec<(u64, u64)>),
}

impl Family {
    pub fn parse(text: &str, pairs: &str) -> Result<Family, Failure> {
        let bad = |why: &str| Failure::Usage(format!("invalid family {text:?}: {why}"));
        let t = text.trim().replace(' ', "");
        if t == "list" {
            return Ok(Family::Explicit(parse_pairs(pairs)?));
        }
        if t == "nlog2n" {
            return Ok(Family::NLog2N);
        }
        if let Some(alpha) = t.strip_prefix("n+") {
            let alpha: u64 = alpha.parse().map_err(|_| bad("alpha must be a positive integer"))?;
            if alpha == 0 {
                return Err(bad("alpha must be positive"));
            }
            return Ok(Family::Additive(alpha));
        }
        if let Some(beta) = t.strip_suffix('n') {
            let beta: f64 = beta.parse().map_err(|_| bad("expected BETAn with a number BETA"))?;
            if !(beta > 1.0 && beta.is_finite()) {
                return Err(bad("beta must exceed 1"));
            }
            return Ok(Family::Proportional(beta));
        }
        Err(bad("expected n+ALPHA, BETAn, nlog2n or list"))
    }

    pub fn describe(&self) -> String {
        match self {
            Family::Additive(a) => format!("m = n + {a}"),
            Family::Proportional(b) => format!("m = {b}n"),
            Family::NLog2N => "m = n log2(n)".to_string(),
            Family::Explicit(_) => "explicit list".to_string(),
        }
    }

    pub fn rounding(&self) -> &'static str {
        match self {
            Family::NLog2N => "floor",
            Family::Proportional(_) => "nearest",
            _ => "exact",
        }
    }

    fn m_for(&self, n: u64) -> u64 {
        match self {
            Family::Additive(a) => n + a,
            Family::Proportional(b) => (b * n as f64).round() as u64,
            Family::NLog2N => (n as f64 * (n as f64).log2()).floor() as u64,
            Family::Explicit(_) => unreachable!("explicit shapes carry m"),
        }
    }

    pub fn shapes(&self, ns: &[u64]) -> Result<Vec<SystemShape>, Failure> {
        let pairs: Vec<(u64, u64)> = match self {
            Family::Explicit(p) => p.clone(),
            _ => ns.iter().map(|&n| (self.m_for(n), n)).collect(),
        };
        let mut shapes = pairs
            .into_iter()
            .map(|(m, n)| crate::shape(m, n))
            .collect::<Result<Vec<_>, _>>()?;
        shapes.sort_by_key(|s| (s.n(), s.m()));
        Ok(shapes)
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(u64, u64)>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|p| {
            let (m, n) = p
                .split_once(':')
                .ok_or_else(|| Failure::Usage(format!("expected m:n, got {p:?}")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<u64>()
                    .map_err(|_| Failure::Usage(format!("not an integer in pair {p:?}")))
            };
            Ok((parse(m)?, parse(n)?))
        })
        .collect()
}

/// Parses `256,512` and `2^8..2^15` style lists.
pub fn parse_n_values(text: &str) -> Result<Vec<u64>, Failure> {
    let bad = |item: &str| Failure::Usage(format!("invalid n value {item:?}"));
    let power = |item: &str| -> Result<u32, Failure> {
        item.trim()
            .strip_prefix("2^")
            .and_then(|e| e.parse().ok())
            .filter(|&e: &u32| e < 63)
            .ok_or_else(|| bad(item))
    };
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if let Some((lo, hi)) = item.split_once("..") {
            let (lo, hi) = (power(lo)?, power(hi)?);
            out.extend((lo..=hi).map(|e| 1u64 << e));
        } else {
            out.push(item.parse().map_err(|_| bad(item))?);
        }
    }
    Ok(out)
}

/// One bound cell: a value or the reason there is none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundCell {
    pub value: Option<u64>,
    pub reason: Option<String>,
    pub certification: String,
    pub near_boundary: bool,
    pub alternative: Option<u64>,
}

impl From<&BoundOutcome> for BoundCell {
    fn from(b: &BoundOutcome) -> Self {
        BoundCell {
            value: b.bound(),
            reason: b.reason().map(|r| r.name().to_string()),
            certification: b.certification().name().to_string(),
            near_boundary: b.is_near_boundary(),
            alternative: b.alternative(),
        }
    }
}

impl BoundCell {
    fn text(&self) -> String {
        match self.value {
            Some(v) if self.near_boundary => format!("{v}?"),
            Some(v) => v.to_string(),
            None => "-".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub n: u64,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dreg: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kz_lower: Option<BoundCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ls_lower: Option<BoundCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ls_upper: Option<BoundCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_upper: Option<BoundCell>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f5_log2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ls_asymptotic: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument {
    pub family: String,
    pub rounding: String,
    pub columns: Vec<Column>,
    pub rows: Vec<Row>,
}

fn compute_row(settings: &Settings, shape: SystemShape, columns: &[Column]) -> Row {
    let wants = |c| columns.contains(&c);
    let dreg = (wants(Column::Dreg) || wants(Column::F5Log2)).then(|| degree_of_regularity(shape));
    let cell = |c, f: &dyn Fn() -> BoundOutcome| wants(c).then(|| BoundCell::from(&f()));
    Row {
        n: shape.n(),
        m: shape.m(),
        dreg: dreg.filter(|_| wants(Column::Dreg)),
        kz_lower: cell(Column::KzLower, &|| kz_lower(shape)),
        ls_lower: cell(Column::LsLower, &|| ls_lower(shape, &settings.airy)),
        ls_upper: cell(Column::LsUpper, &|| ls_upper(shape)),
        l_upper: cell(Column::LUpper, &|| l_upper(shape)),
        f5_log2: dreg
            .filter(|_| wants(Column::F5Log2))
            .map(|d| f5_cost_log2(shape, d, DEFAULT_OMEGA).expect("dreg >= 1")),
        ls_asymptotic: wants(Column::LsAsymptotic).then(|| ls_lower_asymptotic(shape)),
    }
}

pub fn build(settings: &Settings, family: &Family, ns: &[u64], columns: &[Column]) -> Result<TableDocument, Failure> {
    let shapes = family.shapes(ns)?;
    let rows = shapes
        .par_iter()
        .map(|&s| compute_row(settings, s, columns))
        .collect();
    Ok(TableDocument {
        family: family.describe(),
        rounding: family.rounding().to_string(),
        columns: columns.to_vec(),
        rows,
    })
}

fn cells(row: &Row, columns: &[Column]) -> Vec<String> {
    let mut out = vec![row.n.to_string(), row.m.to_string()];
    let bound = |c: &Option<BoundCell>| c.as_ref().map_or(String::new(), BoundCell::text);
    for c in columns {
        out.push(match c {
            Column::Dreg => row.dreg.map_or(String::new(), |d| d.to_string()),
            Column::KzLower => bound(&row.kz_lower),
            Column::LsLower => bound(&row.ls_lower),
            Column::LsUpper => bound(&row.ls_upper),
            Column::LUpper => bound(&row.l_upper),
            Column::F5Log2 => row.f5_log2.map_or(String::new(), |v| format!("{v:.2}")),
            Column::LsAsymptotic => row.ls_asymptotic.map_or(String::new(), |v| format!("{v:.2}")),
        });
    }
    out
}

pub fn render(doc: &TableDocument, format: Format) -> String {
    let mut header = vec!["n", "m"];
    header.extend(doc.columns.iter().map(|c| c.name()));
    let mut out = String::new();
    match format {
        Format::Json => {
            out = serde_json::to_string_pretty(doc).expect("serializable") + "\n";
        }
        Format::Csv => {
            writeln!(out, "# family: {}; m rounding: {}", doc.family, doc.rounding).unwrap();
            writeln!(out, "{}", header.join(",")).unwrap();
            for row in &doc.rows {
                writeln!(out, "{}", cells(row, &doc.columns).join(",")).unwrap();
            }
        }
        Format::Md => {
            writeln!(out, "Family: {} (m rounding: {})", doc.family, doc.rounding).unwrap();
            writeln!(out).unwrap();
            writeln!(out, "| {} |", header.join(" | ")).unwrap();
            writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
            for row in &doc.rows {
                writeln!(out, "| {} |", cells(row, &doc.columns).join(" | ")).unwrap();
            }
        }
    }
    out
}

pub fn run(settings: &Settings, args: &TableArgs) -> Result<String, Failure> {
    let family = Family::parse(&args.family, &args.pairs)?;
    let ns = parse_n_values(&args.n)?;
    let doc = build(settings, &family, &ns, &args.columns)?;
    Ok(render(&doc, settings.format))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use semireg::bounds::AiryConstant;

    fn settings(format: Format) -> Settings {
        Settings {
            format,
            width: BigRational::new(1.into(), 1_000_000.into()),
            airy: AiryConstant::default(),
            ceiling: 512,
        }
    }

    #[test]
    fn parses_families() {
        assert_eq!(Family::parse("n+100", "").ok(), Some(Family::Additive(100)));
        assert_eq!(Family::parse("2n", "").ok(), Some(Family::Proportional(2.0)));
        assert_eq!(Family::parse("nlog2n", "").ok(), Some(Family::NLog2N));
        assert_eq!(
            Family::parse("list", "24:12, 512:256").ok(),
            Some(Family::Explicit(vec![(24, 12), (512, 256)]))
        );
        assert!(Family::parse("1n", "").is_err());
        assert!(Family::parse("n+0", "").is_err());
        assert!(Family::parse("n^2", "").is_err());
        assert!(Family::parse("list", "24-12").is_err());
    }

    #[test]
    fn parses_n_values() {
        assert_eq!(parse_n_values("2^8..2^10").ok(), Some(vec![256, 512, 1024]));
        assert_eq!(parse_n_values("3, 5,2^2..2^2").ok(), Some(vec![3, 5, 4]));
        assert_eq!(parse_n_values("").ok(), Some(vec![]));
        assert!(parse_n_values("2^x..2^3").is_err());
        assert!(parse_n_values("ten").is_err());
    }

    #[test]
    fn family_m_values() {
        assert_eq!(Family::NLog2N.m_for(256), 2048);
        assert_eq!(Family::NLog2N.m_for(100), 664);
        assert_eq!(Family::Proportional(1.5).m_for(3), 5);
        assert_eq!(Family::Additive(7).m_for(3), 10);
    }

    #[test]
    fn rows_sorted_and_rendered() {
        let fam = Family::Explicit(vec![(512, 256), (24, 12)]);
        let cols = [Column::Dreg, Column::KzLower, Column::LsLower, Column::LsUpper, Column::LUpper];
        let doc = build(&settings(Format::Md), &fam, &[], &cols).unwrap();
        assert_eq!(doc.rows[0].n, 12);
        let csv = render(&doc, Format::Csv);
        assert!(csv.contains("256,512,29,22,28,100,46"), "{csv}");
        let md = render(&doc, Format::Md);
        assert!(md.contains("| 256 | 512 | 29 | 22 | 28 | 100 | 46 |"), "{md}");
    }

    #[test]
    fn not_applicable_cells() {
        let fam = Family::Additive(100);
        let doc = build(&settings(Format::Csv), &fam, &[256], &[Column::LsUpper]).unwrap();
        assert_eq!(render(&doc, Format::Csv).lines().last(), Some("256,356,-"));
        let json = render(&doc, Format::Json);
        assert!(json.contains("\"reason\": \"negative_discriminant\""), "{json}");
        assert!(json.contains("\"value\": null"));
    }

    #[test]
    fn json_round_trip_is_idempotent() {
        let fam = Family::Proportional(2.0);
        let cols = [Column::Dreg, Column::LsUpper, Column::F5Log2, Column::LsAsymptotic];
        let doc = build(&settings(Format::Json), &fam, &[16, 32], &cols).unwrap();
        let first = render(&doc, Format::Json);
        let parsed: TableDocument = serde_json::from_str(&first).unwrap();
        assert_eq!(render(&parsed, Format::Json), first);
    }

    #[test]
    fn empty_table_has_header_only() {
        let doc = build(&settings(Format::Csv), &Family::Additive(100), &[], &[Column::Dreg]).unwrap();
        let csv = render(&doc, Format::Csv);
        assert_eq!(csv.lines().count(), 2);
        assert_eq!(csv.lines().last(), Some("n,m,dreg"));
    }
}
