//! Closed-form lower and upper bounds on the degree of regularity.
//!
//! Each bound comes from an inequality on the smallest Krawtchouk root
//! `d_k^N(1)`:
//!
//! * a lower bound on the root that still exceeds `t = m - n` at degree `k`
//!   certifies `K_k^N(t) > 0`, hence `d_reg > k`;
//! * an upper bound on the root that falls to `t` or below certifies a
//!   non-positive coefficient at some degree `l <= k`.
//!
//! The four bounds are
//!
//! | kind       | source inequality                    | certification        |
//! |------------|--------------------------------------|----------------------|
//! | `KZ_lower` | quadratic in `k`                     | integer square root  |
//! | `LS_lower` | quartic in `(2k+1)^(1/6)`            | rational intervals   |
//! | `LS_upper` | quadratic in `k`                     | integer square root  |
//! | `L_upper`  | sextic in `k^(1/3)`                  | exact bisection      |
//!
//! Every floor and ceiling is decided by exact arithmetic. When an answer
//! depends on the limited precision of the Airy constant the outcome is
//! flagged as near the boundary and carries the competing value.

mod kz;
mod levenshtein;
mod poly;
mod szego;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::interval::{parse_rational, Interval};
use crate::{Error, Result};

pub use kz::{kz_full_lower, kz_lower, kz_predicate_full, kz_root_bound};
pub use levenshtein::{l_upper, l_upper_predicate, l_upper_report, l_upper_root_bound, SexticForm, SexticReport};
pub use poly::{quartic_discriminant, IntPoly};
pub use szego::{
    ls_lower, ls_lower_predicate, ls_lower_report, ls_lower_root_bound, ls_upper, ls_upper_predicate,
    ls_upper_root_bound, LsLowerReport, QuarticClosedForm,
};

/// Precisions, in bits, tried in turn when certifying a sign.
pub(crate) const PRECISION_LADDER: [u32; 7] = [64, 128, 256, 512, 1024, 2048, 4096];

/// Sign of the quantity enclosed by `f(bits)`, refining through
/// [`PRECISION_LADDER`]; `None` if still undecided at the finest level.
pub(crate) fn certify_sign(mut f: impl FnMut(u32) -> Interval) -> Option<Ordering> {
    PRECISION_LADDER.iter().find_map(|&bits| f(bits).sign())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    KzLower,
    LsLower,
    LsUpper,
    LUpper,
}

impl BoundKind {
    pub const ALL: [BoundKind; 4] = [
        BoundKind::KzLower,
        BoundKind::LsLower,
        BoundKind::LsUpper,
        BoundKind::LUpper,
    ];

    pub fn is_lower(self) -> bool {
        matches!(self, BoundKind::KzLower | BoundKind::LsLower)
    }

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::KzLower => "KZ_lower",
            BoundKind::LsLower => "LS_lower",
            BoundKind::LsUpper => "LS_upper",
            BoundKind::LUpper => "L_upper",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why an upper bound does not exist for a shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotApplicableReason {
    /// `(2m - n + 1)^2 < 4 n^2`.
    NegativeDiscriminant,
    /// The sextic never reaches zero on `x > 1`.
    SexticMaxNegative,
    /// The cube of the sextic root exceeds `floor((2m - n) / 2)`.
    SexticRootOutOfRange,
}

impl NotApplicableReason {
    pub fn name(self) -> &'static str {
        match self {
            NotApplicableReason::NegativeDiscriminant => "negative_discriminant",
            NotApplicableReason::SexticMaxNegative => "sextic_max_negative",
            NotApplicableReason::SexticRootOutOfRange => "sextic_root_out_of_range",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            NotApplicableReason::NegativeDiscriminant => "negative discriminant",
            NotApplicableReason::SexticMaxNegative => "sextic maximum is negative",
            NotApplicableReason::SexticRootOutOfRange => "sextic root out of range",
        }
    }
}

impl fmt::Display for NotApplicableReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description())
    }
}

/// How the integer in a [`BoundOutcome`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Certification {
    /// Decided by integer arithmetic alone.
    ExactIntegerPredicate,
    /// Decided by rational interval enclosures.
    IntervalCertified,
    /// The answer flips inside the uncertainty of an input constant.
    NearBoundary,
}

impl Certification {
    pub fn name(self) -> &'static str {
        match self {
            Certification::ExactIntegerPredicate => "exact_integer_predicate",
            Certification::IntervalCertified => "interval_certified",
            Certification::NearBoundary => "near_boundary_flag",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Value(u64),
    NotApplicable(NotApplicableReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoundOutcome {
    kind: BoundKind,
    verdict: Verdict,
    certification: Certification,
    alternative: Option<u64>,
}

impl BoundOutcome {
    pub(crate) fn value(kind: BoundKind, value: u64, certification: Certification) -> Self {
        BoundOutcome {
            kind,
            verdict: Verdict::Value(value),
            certification,
            alternative: None,
        }
    }

    pub(crate) fn not_applicable(kind: BoundKind, reason: NotApplicableReason, certification: Certification) -> Self {
        assert!(!kind.is_lower(), "lower bounds always exist");
        BoundOutcome {
            kind,
            verdict: Verdict::NotApplicable(reason),
            certification,
            alternative: None,
        }
    }

    pub(crate) fn near_boundary(kind: BoundKind, value: u64, alternative: u64) -> Self {
        BoundOutcome {
            kind,
            verdict: Verdict::Value(value),
            certification: Certification::NearBoundary,
            alternative: Some(alternative),
        }
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn bound(&self) -> Option<u64> {
        match self.verdict {
            Verdict::Value(v) => Some(v),
            Verdict::NotApplicable(_) => None,
        }
    }

    pub fn reason(&self) -> Option<NotApplicableReason> {
        match self.verdict {
            Verdict::Value(_) => None,
            Verdict::NotApplicable(r) => Some(r),
        }
    }

    pub fn is_near_boundary(&self) -> bool {
        self.certification == Certification::NearBoundary
    }

    /// The other candidate integer when the outcome is near a boundary.
    pub fn alternative(&self) -> Option<u64> {
        self.alternative
    }

    /// Whether `dreg` is consistent with this bound.
    pub fn admits(&self, dreg: u64) -> bool {
        match (self.verdict, self.kind.is_lower()) {
            (Verdict::NotApplicable(_), _) => true,
            (Verdict::Value(v), true) => v.min(self.alternative.unwrap_or(v)) <= dreg,
            (Verdict::Value(v), false) => dreg <= v.max(self.alternative.unwrap_or(v)),
        }
    }
}

impl fmt::Display for BoundOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Value(v) if self.is_near_boundary() => {
                write!(f, "{v}? (or {})", self.alternative.unwrap_or(v))
            }
            Verdict::Value(v) => write!(f, "{v}"),
            Verdict::NotApplicable(r) => write!(f, "not applicable: {r}"),
        }
    }
}

/// Position of a root bound relative to the threshold `m - n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Above,
    On,
    Below,
    Undecided,
}

impl Side {
    pub(crate) fn from_sign(sign: Option<Ordering>) -> Side {
        match sign {
            Some(Ordering::Greater) => Side::Above,
            Some(Ordering::Equal) => Side::On,
            Some(Ordering::Less) => Side::Below,
            None => Side::Undecided,
        }
    }

    /// A lower root bound at or above the threshold certifies `d_reg > k`.
    pub fn accepts_lower(self) -> bool {
        matches!(self, Side::Above | Side::On)
    }

    /// An upper root bound at or below the threshold certifies `d_reg <= k`.
    pub fn accepts_upper(self) -> bool {
        matches!(self, Side::Below | Side::On)
    }
}

/// First real zero `i1` of the Airy-type function, with a certification
/// radius reflecting how many digits of it are trusted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AiryConstant {
    i1: BigRational,
    radius: BigRational,
}

impl Default for AiryConstant {
    fn default() -> Self {
        AiryConstant {
            i1: parse_rational("3.37213").expect("literal"),
            radius: parse_rational("1e-5").expect("literal"),
        }
    }
}

impl AiryConstant {
    pub fn new(i1: BigRational, radius: BigRational) -> Result<Self> {
        if radius.is_negative() || &i1 - &radius <= BigRational::zero() {
            return Err(Error::InvalidParameter {
                name: "airy_i1",
                value: format!("{i1} +- {radius}"),
                range: "i1 - radius > 0 and radius >= 0",
            });
        }
        Ok(AiryConstant { i1, radius })
    }

    /// Parses a decimal `i1`, taking half a unit in its last digit as the
    /// radius.
    pub fn from_decimal(text: &str) -> Result<Self> {
        let i1 = parse_rational(text)?;
        let decimals = text.trim().split_once('.').map_or(0, |(_, frac)| {
            frac.chars().take_while(char::is_ascii_digit).count()
        });
        let radius = BigRational::new(BigInt::from(5), BigInt::from(10).pow(decimals as u32 + 1));
        AiryConstant::new(i1, radius)
    }

    pub fn i1(&self) -> &BigRational {
        &self.i1
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    pub fn i1_f64(&self) -> f64 {
        self.i1.to_f64().unwrap_or(f64::NAN)
    }

    /// `c = 6^(-1/3) i1`.
    pub fn c(&self) -> f64 {
        self.i1_f64() / 6f64.cbrt()
    }

    /// Enclosure of `c`, either at the point value of `i1` or over the whole
    /// uncertainty interval `i1 +- radius`.
    pub(crate) fn c_enclosure(&self, bits: u32, widened: bool) -> Interval {
        let i1 = if widened {
            Interval::new(&self.i1 - &self.radius, &self.i1 + &self.radius)
        } else {
            Interval::point(self.i1.clone())
        };
        &i1 * &Interval::from_int(6).root(3, bits).recip()
    }
}

/// `n^2 / (4 (2m - n))`, the leading term of the LS lower bound when `m`
/// grows slower than `n^2`.
pub fn ls_lower_asymptotic(shape: crate::SystemShape) -> f64 {
    let n = shape.n() as f64;
    n * n / (4.0 * shape.family_size() as f64)
}

/// Growth regimes of `m` in terms of `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AsymptoticFamily {
    /// `m = n + alpha`, `alpha > 0`.
    Additive { alpha: f64 },
    /// `m = beta n`, `beta > 1`.
    Proportional { beta: f64 },
    /// `m = n ln n`.
    NLogN,
    /// `m = n^(2 - gamma)`, `0 < gamma <= 1`; `gamma = 1` is the limit
    /// `m = n` of the formula.
    SubQuadratic { gamma: f64 },
}

/// Leading term of the LS lower bound for a growth regime.
pub fn ls_lower_asymptotic_case(family: AsymptoticFamily, n: u64) -> Result<f64> {
    let bad = |name, value: f64, range| {
        Err(Error::InvalidParameter {
            name,
            value: value.to_string(),
            range,
        })
    };
    if n == 0 {
        return bad("n", 0.0, "n >= 1");
    }
    let nf = n as f64;
    match family {
        AsymptoticFamily::Additive { alpha } if alpha > 0.0 && alpha.is_finite() => {
            Ok(nf / (4.0 * (1.0 + 2.0 * alpha / nf)))
        }
        AsymptoticFamily::Additive { alpha } => bad("alpha", alpha, "alpha > 0"),
        AsymptoticFamily::Proportional { beta } if beta > 1.0 && beta.is_finite() => {
            Ok(nf / (4.0 * (2.0 * beta - 1.0)))
        }
        AsymptoticFamily::Proportional { beta } => bad("beta", beta, "beta > 1"),
        AsymptoticFamily::NLogN if n >= 2 => Ok(nf / (4.0 * (2.0 * nf.ln() - 1.0))),
        AsymptoticFamily::NLogN => bad("n", nf, "n >= 2"),
        AsymptoticFamily::SubQuadratic { gamma } if gamma > 0.0 && gamma <= 1.0 => {
            Ok(nf.powf(gamma) / 8.0)
        }
        AsymptoticFamily::SubQuadratic { gamma } => bad("gamma", gamma, "0 < gamma <= 1"),
    }
}

/// All four bounds for one shape.
pub fn all_bounds(shape: crate::SystemShape, airy: &AiryConstant) -> [BoundOutcome; 4] {
    [
        kz_lower(shape),
        ls_lower(shape, airy),
        ls_upper(shape),
        l_upper(shape),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SystemShape;

    #[test]
    fn asymptotic_forms() {
        let s = SystemShape::new(512, 256).unwrap();
        assert!((ls_lower_asymptotic(s) - 21.3333).abs() < 1e-3);
        let s = SystemShape::new(2048, 256).unwrap();
        assert!((ls_lower_asymptotic(s) - 4.2667).abs() < 1e-3);

        let beta = ls_lower_asymptotic_case(AsymptoticFamily::Proportional { beta: 2.0 }, 1024).unwrap();
        assert!((beta - 1024.0 / 12.0).abs() < 1e-9);
        let gamma = ls_lower_asymptotic_case(AsymptoticFamily::SubQuadratic { gamma: 1.0 }, 256).unwrap();
        assert_eq!(gamma, 32.0);
        let alpha = ls_lower_asymptotic_case(AsymptoticFamily::Additive { alpha: 100.0 }, 512).unwrap();
        assert!((alpha - 92.0).abs() < 0.05);
        let log = ls_lower_asymptotic_case(AsymptoticFamily::NLogN, 1024).unwrap();
        assert!((log - 1024.0 / (4.0 * (2.0 * 1024f64.ln() - 1.0))).abs() < 1e-12);
    }

    #[test]
    fn asymptotic_cases_agree_with_general_form() {
        // the regimes are the general form with m substituted
        let n = 4096u64;
        let via = |m: u64| ls_lower_asymptotic(SystemShape::new(m, n).unwrap());
        let add = ls_lower_asymptotic_case(AsymptoticFamily::Additive { alpha: 100.0 }, n).unwrap();
        assert!((add - via(n + 100)).abs() < 1e-9);
        let prop = ls_lower_asymptotic_case(AsymptoticFamily::Proportional { beta: 3.0 }, n).unwrap();
        assert!((prop - via(3 * n)).abs() < 1e-9);
    }

    #[test]
    fn asymptotic_parameters_are_validated() {
        use AsymptoticFamily::*;
        assert!(ls_lower_asymptotic_case(Proportional { beta: 1.0 }, 64).is_err());
        assert!(ls_lower_asymptotic_case(Additive { alpha: 0.0 }, 64).is_err());
        assert!(ls_lower_asymptotic_case(SubQuadratic { gamma: 0.0 }, 64).is_err());
        assert!(ls_lower_asymptotic_case(SubQuadratic { gamma: 1.5 }, 64).is_err());
        assert!(ls_lower_asymptotic_case(NLogN, 1).is_err());
        assert!(ls_lower_asymptotic_case(NLogN, 0).is_err());
    }

    #[test]
    fn airy_constant_defaults_and_parsing() {
        let airy = AiryConstant::default();
        assert!((airy.c() - 1.85575).abs() < 1e-5);
        let parsed = AiryConstant::from_decimal("3.372134").unwrap();
        assert_eq!(parsed.radius(), &BigRational::new(1.into(), 2_000_000.into()));
        assert!(AiryConstant::from_decimal("-1").is_err());
        let c = airy.c_enclosure(64, true);
        let (lo, hi) = c.to_f64_bounds();
        assert!(lo < airy.c() && airy.c() < hi);
        assert!(hi - lo < 2e-5);
    }

    #[test]
    fn outcome_accessors() {
        let v = BoundOutcome::value(BoundKind::LsUpper, 10, Certification::ExactIntegerPredicate);
        assert_eq!(v.bound(), Some(10));
        assert!(v.admits(10) && !v.admits(11));
        let na = BoundOutcome::not_applicable(
            BoundKind::LUpper,
            NotApplicableReason::SexticMaxNegative,
            Certification::IntervalCertified,
        );
        assert_eq!(na.bound(), None);
        assert_eq!(na.reason(), Some(NotApplicableReason::SexticMaxNegative));
        assert_eq!(na.to_string(), "not applicable: sextic maximum is negative");
        let nb = BoundOutcome::near_boundary(BoundKind::LsLower, 5, 4);
        assert!(nb.admits(4) && !nb.admits(3));
        assert_eq!(nb.to_string(), "5? (or 4)");
    }

    #[test]
    #[should_panic]
    fn lower_bounds_cannot_be_missing() {
        BoundOutcome::not_applicable(
            BoundKind::KzLower,
            NotApplicableReason::NegativeDiscriminant,
            Certification::ExactIntegerPredicate,
        );
    }
}
