//! Dense integer polynomials with exact rational and interval evaluation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::interval::{sign_of, Interval};

/// Polynomial with big-integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut p = IntPoly {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    /// The monomial `c x^d`.
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        IntPoly::new(coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i)),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        sign_of(&self.eval(x))
    }

    /// Horner evaluation over an interval; encloses the range of the
    /// polynomial on it.
    pub fn eval_interval(&self, x: &Interval) -> Interval {
        self.coeffs.iter().rev().fold(Interval::from_int(0), |acc, c| {
            &(&acc * x) + &Interval::point(BigRational::from_integer(c.clone()))
        })
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return IntPoly::new(Vec::<BigInt>::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigInt::zero();
        IntPoly::new((0..len).map(|i| {
            self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero)
        }))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match d {
                0 => write!(f, "{a}")?,
                1 if a == BigInt::from(1) => write!(f, "x")?,
                1 => write!(f, "{a}x")?,
                _ if a == BigInt::from(1) => write!(f, "x^{d}")?,
                _ => write!(f, "{a}x^{d}")?,
            }
        }
        Ok(())
    }
}

/// Discriminant of `a x^4 + b x^3 + c x^2 + d x + e`, coefficients given
/// lowest degree first.
pub fn quartic_discriminant(coeffs: [&BigInt; 5]) -> BigInt {
    let [e, d, c, b, a] = coeffs;
    let terms: [(i64, [u32; 5]); 16] = [
        // (coefficient, [a, b, c, d, e] exponents)
        (256, [3, 0, 0, 0, 3]),
        (-192, [2, 1, 0, 1, 2]),
        (-128, [2, 0, 2, 0, 2]),
        (144, [2, 0, 1, 2, 1]),
        (-27, [2, 0, 0, 4, 0]),
        (144, [1, 2, 1, 0, 2]),
        (-6, [1, 2, 0, 2, 1]),
        (-80, [1, 1, 2, 1, 1]),
        (18, [1, 1, 1, 3, 0]),
        (16, [1, 0, 4, 0, 1]),
        (-4, [1, 0, 3, 2, 0]),
        (-27, [0, 4, 0, 0, 2]),
        (18, [0, 3, 1, 1, 1]),
        (-4, [0, 3, 0, 3, 0]),
        (-4, [0, 2, 3, 0, 1]),
        (1, [0, 2, 2, 2, 0]),
    ];
    let vars = [a, b, c, d, e];
    terms
        .iter()
        .map(|(k, exps)| {
            vars.iter()
                .zip(exps)
                .fold(BigInt::from(*k), |acc, (v, &p)| acc * v.pow(p))
        })
        .sum()
}
