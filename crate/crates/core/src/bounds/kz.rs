//! The Krasikov-Zarkh lower bound.
//!
//! The root bound at degree `k` is
//! `KZ_k = N/2 - sqrt(k (N - k)) (1 - 1.5 y^(2/3))` with
//! `y = (N - 2k) / (2k (N - k))`. Dropping the correction term leaves the
//! quadratic `p(k) = k^2 - N k + n^2/4`, whose smaller root gives the closed
//! form `1 + floor((N - 2 sqrt(m (m - n))) / 2)`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{certify_sign, BoundKind, BoundOutcome, Certification, Side};
use crate::interval::{ceil_sqrt, Interval};
use crate::{Error, Result, SystemShape};

/// Closed-form lower bound from the quadratic `p(k)`.
///
/// The floor is the largest `k` with `N - 2k >= sqrt(4 m (m - n))`, which
/// for integers is `N - 2k >= ceil(sqrt(4 m (m - n)))`.
pub fn kz_lower(shape: SystemShape) -> BoundOutcome {
    let (m, n) = (BigInt::from(shape.m()), BigInt::from(shape.n()));
    let disc = BigInt::from(4) * &m * (&m - &n);
    let slack = BigInt::from(shape.family_size()) - ceil_sqrt(&disc);
    // N^2 > 4 m (m - n), so the slack is never negative
    let k: u64 = (slack / 2u32).try_into().expect("non-negative and below N");
    BoundOutcome::value(BoundKind::KzLower, 1 + k, Certification::ExactIntegerPredicate)
}

fn check_range(shape: SystemShape, k: u64) -> Result<()> {
    if k == 0 || 2 * k >= shape.family_size() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            range: format!("1 <= k < {}/2", shape.family_size()),
        });
    }
    Ok(())
}

/// Enclosure of `KZ_k - (m - n) = n/2 - sqrt(k (N - k)) (1 - 1.5 y^(2/3))`.
fn excess_enclosure(shape: SystemShape, k: u64, bits: u32) -> Interval {
    let family = shape.family_size();
    let prod = BigInt::from(k) * BigInt::from(family - k);
    let y = BigRational::new(BigInt::from(family - 2 * k), BigInt::from(2) * &prod);
    let y_two_thirds = Interval::point(&y * &y).root(3, bits);
    let correction = &Interval::from_int(1) - &(&Interval::point(BigRational::new(3.into(), 2.into())) * &y_two_thirds);
    let radius = Interval::point(BigRational::from_integer(prod)).sqrt(bits);
    let half_n = Interval::point(BigRational::new(shape.n().into(), 2.into()));
    &half_n - &(&radius * &correction)
}

/// Where the full root bound `KZ_k` lies relative to `m - n`, for
/// `1 <= k < N/2`.
pub fn kz_predicate_full(shape: SystemShape, k: u64) -> Result<Side> {
    check_range(shape, k)?;
    Ok(Side::from_sign(certify_sign(|bits| excess_enclosure(shape, k, bits))))
}

/// Lower bound from the full root inequality: one more than the end of the
/// initial run of degrees whose `KZ_k` stays at or above `m - n`.
///
/// Never weaker than [`kz_lower`], since the correction term only raises
/// the root bound.
pub fn kz_full_lower(shape: SystemShape) -> BoundOutcome {
    let mut last = 0;
    let mut k = 1;
    while 2 * k < shape.family_size() {
        match kz_predicate_full(shape, k).expect("k in range") {
            side if side.accepts_lower() => last = k,
            Side::Undecided => return BoundOutcome::near_boundary(BoundKind::KzLower, last + 1, last + 2),
            _ => break,
        }
        k += 1;
    }
    BoundOutcome::value(BoundKind::KzLower, last + 1, Certification::IntervalCertified)
}

/// `KZ_k` in floating point, for `1 <= k < N/2`.
pub fn kz_root_bound(family_size: u64, k: u64) -> Result<f64> {
    if k == 0 || 2 * k >= family_size {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            range: format!("1 <= k < {family_size}/2"),
        });
    }
    let (nf, kf) = (family_size as f64, k as f64);
    let y = (nf - 2.0 * kf) / (2.0 * kf * (nf - kf));
    Ok(nf / 2.0 - (kf * (nf - kf)).sqrt() * (1.0 - 1.5 * y.powf(2.0 / 3.0)))
}
