//! `verify`: property and cross-validation suites up to a family size.

use std::fmt::Write;

use rayon::prelude::*;
use semireg::bounds::all_bounds;
use semireg::exact::degree_of_regularity;
use semireg::krawtchouk::{gf_identity_check, orthogonality_sweep};
use semireg::roots::{largest_eigenvalue, CrossValidation, SmallestRoots};
use semireg::SystemShape;
use serde::Serialize;

use crate::{Failure, Format, Settings};

/// Orthogonality sums grow like `4^N`; beyond this size the check only
/// burns time without adding coverage.
const ORTHOGONALITY_LIMIT: u64 = 64;

#[derive(Debug, Serialize)]
struct SuiteSummary {
    suite: &'static str,
    checks: usize,
}

/// Runs `check` over `items` in parallel; returns the number of checks or
/// the first counterexample in item order.
fn suite<T, F>(items: Vec<T>, check: F) -> Result<usize, String>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<usize, String> + Send + Sync,
{
    let results: Vec<Result<usize, String>> = items.par_iter().map(check).collect();
    results.into_iter().try_fold(0, |acc, r| r.map(|c| acc + c))
}

fn shapes_up_to(max_family_size: u64) -> Vec<SystemShape> {
    let mut out = Vec::new();
    for m in 2..=max_family_size {
        for n in 1..m {
            if 2 * m - n <= max_family_size {
                out.push(SystemShape::new(m, n).expect("m > n >= 1"));
            }
        }
    }
    out
}

pub fn run(settings: &Settings, max_family_size: u64) -> Result<String, Failure> {
    if max_family_size > settings.ceiling {
        return Err(Failure::Usage(format!(
            "family size {max_family_size} exceeds the ceiling {} (raise it with --ceiling)",
            settings.ceiling
        )));
    }
    let cross = CrossValidation::new(settings.ceiling, settings.width.clone())?;
    let families: Vec<u64> = (1..=max_family_size).collect();
    let shapes = shapes_up_to(max_family_size);
    let width = &settings.width;
    let mut summary = Vec::new();
    let fail = |suite: &str, msg: String| Failure::Verification(format!("{suite}: {msg}"));

    let checks = suite(families.clone(), |&family| {
        let mut chain = SmallestRoots::new(family, width.clone()).map_err(|e| e.to_string())?;
        for k in 1..family {
            if !chain.certify_decrease(k, 512).map_err(|e| e.to_string())? {
                return Err(format!("N = {family}, k = {k}: d_(k+1)(1) < d_k(1) not certified"));
            }
        }
        Ok(family.saturating_sub(1) as usize)
    })
    .map_err(|m| fail("interlacing", m))?;
    summary.push(SuiteSummary {
        suite: "interlacing",
        checks,
    });

    let checks = suite(shapes.clone(), |s| {
        match gf_identity_check(s.m(), s.n(), s.family_size()) {
            Ok(true) => Ok(1),
            Ok(false) => Err(format!("{s}")),
            Err(e) => Err(e.to_string()),
        }
    })
    .map_err(|m| fail("gf_identity", m))?;
    summary.push(SuiteSummary {
        suite: "gf_identity",
        checks,
    });

    let small: Vec<u64> = families
        .iter()
        .copied()
        .filter(|&f| f <= ORTHOGONALITY_LIMIT)
        .collect();
    let checks = suite(small, |&family| match orthogonality_sweep(family) {
        Ok(None) => Ok(((family + 1) * (family + 2) / 2) as usize),
        Ok(Some((l, k))) => Err(format!("N = {family}, l = {l}, k = {k}")),
        Err(e) => Err(e.to_string()),
    })
    .map_err(|m| fail("orthogonality", m))?;
    summary.push(SuiteSummary {
        suite: "orthogonality",
        checks,
    });

    let checks = suite(families, |&family| {
        let mut chain = SmallestRoots::new(family, width.clone()).map_err(|e| e.to_string())?;
        for k in 1..=family {
            let root = chain.get(k).map_err(|e| e.to_string())?.clone();
            let eig = largest_eigenvalue(family, k, width).map_err(|e| e.to_string())?;
            let n = num_rational::BigRational::from_integer(family.into());
            let two = num_bigint::BigInt::from(2);
            let from_root_lo = &n - root.hi() * &two;
            let from_root_hi = &n - root.lo() * &two;
            if eig.hi() < &from_root_lo || &from_root_hi < eig.lo() {
                return Err(format!("N = {family}, k = {k}: lambda_k and N - 2 d_k(1) disagree"));
            }
        }
        Ok(family as usize)
    })
    .map_err(|m| fail("duality", m))?;
    summary.push(SuiteSummary { suite: "duality", checks });

    let checks = suite(shapes.clone(), |&s| {
        let exact = degree_of_regularity(s);
        let roots = cross.dreg_via_roots(s).map_err(|e| e.to_string())?;
        let eig = cross.dreg_via_eigenvalues(s).map_err(|e| e.to_string())?;
        if exact == roots && roots == eig {
            Ok(1)
        } else {
            Err(format!("{s}: exact {exact}, roots {roots}, eigenvalues {eig}"))
        }
    })
    .map_err(|m| fail("three_method_agreement", m))?;
    summary.push(SuiteSummary {
        suite: "three_method_agreement",
        checks,
    });

    let checks = suite(shapes, |&s| {
        let dreg = degree_of_regularity(s);
        for b in all_bounds(s, &settings.airy) {
            if !b.admits(dreg) {
                return Err(format!("{s}: {} = {b} but d_reg = {dreg}", b.kind()));
            }
        }
        Ok(4)
    })
    .map_err(|m| fail("sandwich", m))?;
    summary.push(SuiteSummary { suite: "sandwich", checks });

    let mut out = String::new();
    match settings.format {
        Format::Json => out = serde_json::to_string_pretty(&summary).expect("serializable") + "\n",
        Format::Csv => {
            writeln!(out, "suite,checks,status").unwrap();
            for s in &summary {
                writeln!(out, "{},{},pass", s.suite, s.checks).unwrap();
            }
        }
        Format::Md => {
            for s in &summary {
                writeln!(out, "{}: {} checks passed", s.suite, s.checks).unwrap();
            }
            writeln!(out, "all suites passed up to N = {max_family_size}").unwrap();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_enumeration() {
        let shapes = shapes_up_to(5);
        // (2,1) N=3, (3,1) N=5, (3,2) N=4, (4,3) N=5
        assert_eq!(shapes.len(), 4);
        assert!(shapes.iter().all(|s| s.family_size() <= 5));
        assert!(shapes_up_to(2).is_empty());
    }
}
