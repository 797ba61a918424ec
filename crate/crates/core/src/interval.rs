//! Closed intervals with exact rational endpoints.
//!
//! Used to certify signs of expressions involving square, cube and sixth
//! roots: every operation returns an interval guaranteed to contain the
//! exact result. Roots are enclosed on a dyadic grid of `2^-bits`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(x: i64) -> Self {
        Interval::point(BigRational::from_integer(x.into()))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Sign of every element, when they all agree (zero only for `[0, 0]`).
    pub fn sign(&self) -> Option<Ordering> {
        let zero = BigRational::zero();
        if self.lo > zero {
            Some(Ordering::Greater)
        } else if self.hi < zero {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn powi(&self, e: u32) -> Interval {
        let mut acc = Interval::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Enclosure of `1 / x`; panics when the interval contains zero.
    pub fn recip(&self) -> Interval {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Interval::new(self.hi.recip(), self.lo.recip())
    }

    /// Enclosure of the real `k`-th root of a non-negative interval.
    /// Endpoints that are perfect `k`-th powers of rationals stay exact.
    pub fn root(&self, k: u32, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "root of a negative interval");
        let lo = rational_root(&self.lo, k).unwrap_or_else(|| root_floor(&self.lo, k, bits));
        let hi = rational_root(&self.hi, k).unwrap_or_else(|| root_ceil(&self.hi, k, bits));
        Interval::new(lo, hi)
    }

    pub fn sqrt(&self, bits: u32) -> Interval {
        self.root(2, bits)
    }

    /// Widens the endpoints outward to multiples of `2^-bits`, keeping the
    /// numerators and denominators from growing without bound.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let scale = BigInt::one() << bits;
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_f64_bounds();
        write!(f, "[{lo}, {hi}]")
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let lo = products.iter().min().unwrap().clone();
        let hi = products.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Interval {
            type Output = Interval;
            fn $method(self, rhs: Interval) -> Interval {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Largest multiple of `2^-bits` whose `k`-th power is `<= x`, for `x >= 0`.
pub fn root_floor(x: &BigRational, k: u32, bits: u32) -> BigRational {
    assert!(!x.is_negative());
    let scaled = (x * BigRational::from_integer(BigInt::one() << (k * bits))).floor();
    let r = scaled.to_integer().nth_root(k);
    BigRational::new(r, BigInt::one() << bits)
}

/// Smallest multiple of `2^-bits` whose `k`-th power is `>= x`, for `x >= 0`.
pub fn root_ceil(x: &BigRational, k: u32, bits: u32) -> BigRational {
    let lower = root_floor(x, k, bits);
    if &lower.pow(k as i32) == x {
        lower
    } else {
        lower + BigRational::new(BigInt::one(), BigInt::one() << bits)
    }
}

/// Exact `k`-th root of a non-negative integer, if it is a perfect power.
pub fn exact_root(x: &BigInt, k: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(k);
    (r.pow(k) == *x).then_some(r)
}

/// Exact `k`-th root of a non-negative rational, if it is rational.
pub fn rational_root(x: &BigRational, k: u32) -> Option<BigRational> {
    let p = exact_root(x.numer(), k)?;
    let q = exact_root(x.denom(), k)?;
    Some(BigRational::new(p, q))
}

/// `ceil(sqrt(x))` for a non-negative integer.
pub fn ceil_sqrt(x: &BigInt) -> BigInt {
    let r = x.sqrt();
    if &(&r * &r) == x {
        r
    } else {
        r + 1
    }
}

/// Parses `p/q`, a decimal such as `3.37213`, or scientific notation such
/// as `1e-6` into an exact rational.
pub fn parse_rational(input: &str) -> Result<BigRational> {
    let err = || Error::ParseRational {
        input: input.to_string(),
    };
    let s = input.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err());
    }
    if !int_part
        .chars()
        .chain(frac_part.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let numer = BigInt::parse_bytes(all_digits.as_bytes(), 10).ok_or_else(err)?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(numer * ten.pow(scale as u32))
    } else {
        BigRational::new(numer, ten.pow((-scale) as u32))
    };
    if negative {
        value = -value;
    }
    Ok(value)
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign_of(x: &BigRational) -> Ordering {
    match x.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

/// Ceiling of a rational as a big integer.
pub fn ceil_int(x: &BigRational) -> BigInt {
    x.ceil().to_integer()
}

/// Floor of a rational as a big integer.
pub fn floor_int(x: &BigRational) -> BigInt {
    let (q, _) = x.numer().div_mod_floor(x.denom());
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn sqrt_two_enclosure() {
        let iv = Interval::from_int(2).sqrt(40);
        assert!(iv.lo() * iv.lo() <= rat(2, 1));
        assert!(iv.hi() * iv.hi() >= rat(2, 1));
        assert!(iv.width() <= rat(1, 1 << 39));
        let (lo, hi) = iv.to_f64_bounds();
        assert!(lo <= std::f64::consts::SQRT_2 && std::f64::consts::SQRT_2 <= hi);
    }

    #[test]
    fn perfect_roots_are_points() {
        let iv = Interval::from_int(27).root(3, 10);
        assert_eq!(iv, Interval::from_int(3));
        assert_eq!(exact_root(&BigInt::from(64), 6), Some(BigInt::from(2)));
        assert_eq!(exact_root(&BigInt::from(65), 6), None);
        assert_eq!(rational_root(&rat(8, 27), 3), Some(rat(2, 3)));
        assert_eq!(rational_root(&rat(2, 27), 3), None);
        assert_eq!(Interval::point(rat(4, 9)).sqrt(8), Interval::point(rat(2, 3)));
        assert_eq!(ceil_sqrt(&BigInt::from(16)), BigInt::from(4));
        assert_eq!(ceil_sqrt(&BigInt::from(17)), BigInt::from(5));
    }

    #[test]
    fn arithmetic_contains_results() {
        let a = Interval::new(rat(-1, 2), rat(3, 1));
        let b = Interval::new(rat(2, 1), rat(5, 2));
        let p = &a * &b;
        assert_eq!(p, Interval::new(rat(-5, 4), rat(15, 2)));
        assert_eq!(&a - &b, Interval::new(rat(-3, 1), rat(1, 1)));
        assert_eq!(b.recip(), Interval::new(rat(2, 5), rat(1, 2)));
        assert_eq!(a.sign(), None);
        assert_eq!(b.sign(), Some(Ordering::Greater));
        assert_eq!((-&b).sign(), Some(Ordering::Less));
    }

    #[test]
    fn round_outward_keeps_containment() {
        let x = rat(1, 3);
        let iv = Interval::point(x.clone()).round_outward(8);
        assert!(iv.contains(&x));
        assert!(iv.width() <= rat(1, 256));
    }

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3.37213").unwrap(), rat(337213, 100000));
        assert_eq!(parse_rational("1e-6").unwrap(), rat(1, 1_000_000));
        assert_eq!(parse_rational("2.5E2").unwrap(), rat(250, 1));
        assert_eq!(parse_rational("-7/14").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(floor_int(&rat(-7, 2)), BigInt::from(-4));
        assert_eq!(ceil_int(&rat(-7, 2)), BigInt::from(-3));
        assert_eq!(floor_int(&rat(7, 2)), BigInt::from(3));
    }
}
