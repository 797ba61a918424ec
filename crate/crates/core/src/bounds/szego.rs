//! Levenshtein-Szegő lower bound and Levenshtein's Hermite upper bound.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::{certify_sign, AiryConstant, BoundKind, BoundOutcome, Certification, NotApplicableReason, Side};
use crate::interval::Interval;
use crate::{Error, Result, SystemShape};

/// Radical expression for the positive root `w4` of
/// `q(w) = w^4 - a w + b`, with `a = n / sqrt(2 (2m - n))` and
/// `b = -c = -6^(-1/3) i1`.
///
/// Splitting `q` into two real quadratics `w^2 +- sqrt(U) w + ...` leads to
/// the resolvent cubic `U^3 + 4cU - a^2 = 0`, which has exactly one real
/// root:
///
/// ```text
/// T = a^2/2 + sqrt(a^4 + 256 c^3 / 27) / 2
/// U = T^(1/3) - (4c/3) T^(-1/3)
/// w4 = (sqrt(U) + sqrt(2a / sqrt(U) - U)) / 2
/// ```
///
/// `T` is real and positive for every shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticClosedForm {
    a: f64,
    c: f64,
    t: f64,
    u: f64,
    w4: f64,
}

impl QuarticClosedForm {
    pub fn new(shape: SystemShape, airy: &AiryConstant) -> Self {
        let a = shape.n() as f64 / (2.0 * shape.family_size() as f64).sqrt();
        QuarticClosedForm::from_coefficients(a, airy.c())
    }

    /// From `a` and the positive constant `c`.
    pub fn from_coefficients(a: f64, c: f64) -> Self {
        let t = 0.5 * a * a + 0.5 * (a.powi(4) + 256.0 * c.powi(3) / 27.0).sqrt();
        let cube = t.cbrt();
        let u = cube - (4.0 * c / 3.0) / cube;
        let root_u = u.sqrt();
        let w4 = 0.5 * (root_u + (2.0 * a / root_u - u).sqrt());
        QuarticClosedForm { a, c, t, u, w4 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    /// Constant term `b = -c` of `q`.
    pub fn b(&self) -> f64 {
        -self.c
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn w4(&self) -> f64 {
        self.w4
    }

    /// `q(w4)`, zero up to rounding.
    pub fn residual(&self) -> f64 {
        self.w4.powi(4) - self.a * self.w4 - self.c
    }

    /// `(w4^6 - 1) / 2`, whose floor is the largest accepted degree.
    pub fn half_sixth_power(&self) -> f64 {
        0.5 * (self.w4.powi(6) - 1.0)
    }
}

/// Outcome of [`ls_lower`] together with the quantities behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct LsLowerReport {
    pub outcome: BoundOutcome,
    pub closed_form: QuarticClosedForm,
    /// Largest `k` accepted by the per-degree predicate, if any.
    pub largest_accepted: Option<u64>,
}

/// Enclosure of `a u - u^4 + c` with `u = (2k+1)^(1/6)`; it has the sign of
/// `LS_k - (m - n)`.
fn lower_enclosure(shape: SystemShape, k: u64, airy: &AiryConstant, widened: bool, bits: u32) -> Interval {
    let n = BigInt::from(shape.n());
    let a_sq = BigRational::new(&n * &n, BigInt::from(2 * shape.family_size()));
    let a = Interval::point(a_sq).sqrt(bits);
    let u = Interval::from_int(2 * k as i64 + 1).root(6, bits);
    let c = airy.c_enclosure(bits, widened);
    &(&(&a * &u) - &u.powi(4)) + &c
}

fn lower_accepts(shape: SystemShape, k: i64, airy: &AiryConstant, widened: bool) -> Option<bool> {
    if k < 0 {
        return Some(true);
    }
    certify_sign(|bits| lower_enclosure(shape, k as u64, airy, widened, bits)).map(|s| s != Ordering::Less)
}

/// Where `LS_k` lies relative to `m - n`, at the point value of `i1`.
pub fn ls_lower_predicate(shape: SystemShape, k: u64, airy: &AiryConstant) -> Result<Side> {
    if k > shape.family_size() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            range: format!("0 <= k <= {}", shape.family_size()),
        });
    }
    Ok(Side::from_sign(certify_sign(|bits| lower_enclosure(shape, k, airy, false, bits))))
}

pub fn ls_lower(shape: SystemShape, airy: &AiryConstant) -> BoundOutcome {
    ls_lower_report(shape, airy).outcome
}

/// The bound `1 + floor((w4^6 - 1) / 2)`.
///
/// The floor is the largest `k` with `LS_k >= m - n`, a predicate monotone
/// in `k`. The floating closed form proposes `k0`; exact enclosures then
/// confirm that `k0` is accepted and `k0 + 1` is not, moving `k0` if the
/// proposal was off. A second pass over the whole interval `i1 +- radius`
/// detects answers that hinge on the unknown digits of `i1`.
pub fn ls_lower_report(shape: SystemShape, airy: &AiryConstant) -> LsLowerReport {
    let closed_form = QuarticClosedForm::new(shape, airy);
    let guess = closed_form.half_sixth_power().floor();
    let mut k0: i64 = if guess.is_finite() { (guess as i64).max(-1) } else { -1 };
    let to_value = |k: i64| (k + 1).max(1) as u64;
    let report = |outcome, k0: i64| LsLowerReport {
        outcome,
        closed_form,
        largest_accepted: u64::try_from(k0).ok(),
    };

    let mut settled = false;
    for _ in 0..256 {
        match (lower_accepts(shape, k0, airy, false), lower_accepts(shape, k0 + 1, airy, false)) {
            (Some(true), Some(false)) => {
                settled = true;
                break;
            }
            (Some(false), _) => k0 -= 1,
            (_, Some(true)) => k0 += 1,
            _ => break,
        }
    }
    if !settled {
        let outcome = BoundOutcome::near_boundary(BoundKind::LsLower, to_value(k0), to_value(k0 + 1));
        return report(outcome, k0);
    }

    let outcome = match (lower_accepts(shape, k0, airy, true), lower_accepts(shape, k0 + 1, airy, true)) {
        (Some(true), Some(false)) => BoundOutcome::value(BoundKind::LsLower, to_value(k0), Certification::IntervalCertified),
        (None, _) => BoundOutcome::near_boundary(BoundKind::LsLower, to_value(k0), to_value(k0 - 1)),
        _ => BoundOutcome::near_boundary(BoundKind::LsLower, to_value(k0), to_value(k0 + 1)),
    };
    report(outcome, k0)
}

/// `LS_k = N/2 - sqrt(N/2) (sqrt(2k+1) - c (2k+1)^(-1/6))` in floating point.
pub fn ls_lower_root_bound(family_size: u64, k: u64, airy: &AiryConstant) -> f64 {
    let nf = family_size as f64;
    let s = (2 * k + 1) as f64;
    nf / 2.0 - (nf / 2.0).sqrt() * (s.sqrt() - airy.c() * s.powf(-1.0 / 6.0))
}

/// The bound `1 + ceil((N + 3 - sqrt((N+1)^2 - 4n^2)) / 2)` when the
/// discriminant is non-negative.
///
/// The ceiling is the smallest `k` with `n^2 <= (N - k + 2)(k - 1)`; as
/// integers, `N + 3 - 2k <= floor(sqrt(D))`.
pub fn ls_upper(shape: SystemShape) -> BoundOutcome {
    let family = BigInt::from(shape.family_size());
    let n = BigInt::from(shape.n());
    let disc = (&family + 1u32).pow(2) - BigInt::from(4) * &n * &n;
    if disc.is_negative() {
        return BoundOutcome::not_applicable(
            BoundKind::LsUpper,
            NotApplicableReason::NegativeDiscriminant,
            Certification::ExactIntegerPredicate,
        );
    }
    let numer = family + 3u32 - disc.sqrt();
    let k: u64 = ((numer + 1u32) / 2u32).try_into().expect("positive and below N");
    BoundOutcome::value(BoundKind::LsUpper, 1 + k, Certification::ExactIntegerPredicate)
}

/// Where `LS^k = N/2 - sqrt((N - k + 2)(k - 1)) / 2` lies relative to
/// `m - n`, for `1 <= k <= N`. Decided exactly.
pub fn ls_upper_predicate(shape: SystemShape, k: u64) -> Result<Side> {
    let family = shape.family_size();
    if k == 0 || k > family {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            range: format!("1 <= k <= {family}"),
        });
    }
    let n = BigInt::from(shape.n());
    let prod = BigInt::from(family - k + 2) * BigInt::from(k - 1);
    Ok(Side::from_sign(Some((&n * &n).cmp(&prod))))
}

/// `LS^k` in floating point, for `1 <= k <= N`.
pub fn ls_upper_root_bound(family_size: u64, k: u64) -> Result<f64> {
    if k == 0 || k > family_size {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            range: format!("1 <= k <= {family_size}"),
        });
    }
    let nf = family_size as f64;
    let kf = k as f64;
    Ok(nf / 2.0 - 0.5 * ((nf - kf + 2.0) * (kf - 1.0)).sqrt())
}
