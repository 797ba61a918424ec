//! Binary Krawtchouk polynomials `K_k^N(t)`.
//!
//! Evaluation always goes through the three-term recurrence
//!
//! ```text
//! (k+1) K_(k+1)(t) = (N - 2t) K_k(t) - (N - k + 1) K_(k-1)(t),
//! K_0 = 1, K_1 = N - 2t,
//! ```
//!
//! which is the `r = 2` case of the general recurrence
//! `(k+1) K_(k+1) = (N(r-1) - k(r-2) - rt) K_k - (r-1)(N-k+1) K_(k-1)`.
//! The explicit alternating-sum definition is numerically useless and only
//! appears in the tests.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{binomial, coefficient, SystemShape};
use crate::{Error, Result};

/// Degree `k` member of the binary family of size `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KrawtchoukParams {
    family_size: u64,
    degree: u64,
}

impl KrawtchoukParams {
    pub fn new(family_size: u64, degree: u64) -> Result<Self> {
        if family_size == 0 {
            return Err(Error::EmptyFamily);
        }
        if degree > family_size {
            return Err(Error::IndexOutOfRange {
                index: degree,
                max: family_size,
            });
        }
        Ok(KrawtchoukParams {
            family_size,
            degree,
        })
    }

    pub fn family_size(&self) -> u64 {
        self.family_size
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, t: &BigRational) -> BigRational {
        general_recurrence(self.family_size, self.degree, 2, t)
    }

    /// Floating-point value; approximate, for plots and diagnostics only.
    ///
    /// The recurrence cancels heavily for large `k`, so it is carried out
    /// in compensated (double-f64) arithmetic and rounded once at the end.
    pub fn eval_real(&self, t: f64) -> f64 {
        let n = self.family_size as f64;
        let slope = Compensated::sum(n, -2.0 * t);
        let mut prev = Compensated::from(0.0);
        let mut cur = Compensated::from(1.0);
        for j in 0..self.degree {
            let damping = n - j as f64 + 1.0;
            let next = (slope.mul(cur) - prev.scale(damping)).div_int(j as f64 + 1.0);
            prev = cur;
            cur = next;
        }
        cur.hi + cur.lo
    }

    /// Exact sign of the value at a rational point.
    pub fn sign_at(&self, t: &BigRational) -> Ordering {
        scaled_values(self.family_size, self.degree, t)
            .last()
            .expect("at least K_0")
            .cmp(&BigInt::zero())
    }
}

/// Unevaluated sum `hi + lo` of two f64 with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Compensated {
    hi: f64,
    lo: f64,
}

impl From<f64> for Compensated {
    fn from(x: f64) -> Self {
        Compensated { hi: x, lo: 0.0 }
    }
}

impl Compensated {
    fn sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Compensated { hi: s, lo: err }
    }

    fn renormalize(hi: f64, lo: f64) -> Self {
        let s = hi + lo;
        Compensated {
            hi: s,
            lo: lo - (s - hi),
        }
    }

    fn mul(self, other: Compensated) -> Self {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p);
        Compensated::renormalize(p, err + self.hi * other.lo + self.lo * other.hi)
    }

    fn scale(self, c: f64) -> Self {
        self.mul(Compensated::from(c))
    }

    fn div_int(self, d: f64) -> Self {
        let q1 = self.hi / d;
        let r = (-q1).mul_add(d, self.hi);
        let q2 = (r + self.lo) / d;
        Compensated::renormalize(q1, q2)
    }
}

impl std::ops::Sub for Compensated {
    type Output = Compensated;
    fn sub(self, other: Compensated) -> Compensated {
        let s = Compensated::sum(self.hi, -other.hi);
        Compensated::renormalize(s.hi, s.lo + self.lo - other.lo)
    }
}

/// Krawtchouk recurrence for an arbitrary alphabet size `r >= 2`.
fn general_recurrence(n: u64, k: u64, r: u64, t: &BigRational) -> BigRational {
    let n_big = BigInt::from(n);
    let r_big = BigInt::from(r);
    let mut prev = BigRational::zero();
    let mut cur = BigRational::one();
    for j in 0..k {
        let j_big = BigInt::from(j);
        // N(r-1) - j(r-2) - r t
        let slope = BigRational::from_integer(&n_big * (&r_big - 1u32) - &j_big * (&r_big - 2u32))
            - t * BigRational::from_integer(r_big.clone());
        let damping = BigRational::from_integer((&r_big - 1u32) * (&n_big - &j_big + 1u32));
        let next = (slope * &cur - damping * &prev) / BigRational::from_integer(j_big + 1u32);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `j! q^j K_j(p/q)` for `j = 0..=k`, all integers with the signs of
/// `K_j(p/q)`.
///
/// With `L_j = j! q^j K_j` the recurrence becomes
/// `L_(j+1) = (Nq - 2p) L_j - j (N - j + 1) q^2 L_(j-1)`.
pub(crate) fn scaled_values(n: u64, k: u64, t: &BigRational) -> Vec<BigInt> {
    let p = t.numer();
    let q = t.denom();
    let slope = BigInt::from(n) * q - p * 2u32;
    let q2 = q * q;
    let mut out = Vec::with_capacity(k as usize + 1);
    out.push(BigInt::one());
    if k == 0 {
        return out;
    }
    out.push(slope.clone());
    for j in 1..k {
        let damping = BigInt::from(j) * (n - j + 1) * &q2;
        let next = &slope * &out[j as usize] - damping * &out[j as usize - 1];
        out.push(next);
    }
    out
}

/// `K_0^N(t), ..., K_N^N(t)` at an integer point `t`, all exact integers.
pub fn integer_values(n: u64, t: i64) -> Vec<BigInt> {
    let slope = BigInt::from(n as i64 - 2 * t);
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(BigInt::one());
    if n == 0 {
        return out;
    }
    out.push(slope.clone());
    for j in 1..n {
        let numer = &slope * &out[j as usize] - BigInt::from(n - j + 1) * &out[j as usize - 1];
        let (quot, rem) = numer.div_rem(&BigInt::from(j + 1));
        debug_assert!(rem.is_zero());
        out.push(quot);
    }
    out
}

/// Checks `(1 - z)^(m-n) (1 + z)^m = sum_k K_k^(2m-n)(m-n) z^k` coefficient
/// by coefficient for `k <= up_to`, comparing rational evaluation against
/// the Hilbert-series coefficient stream.
pub fn gf_identity_check(m: u64, n: u64, up_to: u64) -> Result<bool> {
    let shape = SystemShape::new(m, n)?;
    let family = shape.family_size();
    if up_to > family {
        return Err(Error::IndexOutOfRange {
            index: up_to,
            max: family,
        });
    }
    let t = BigRational::from_integer(shape.excess().into());
    for k in 0..=up_to {
        let value = KrawtchoukParams::new(family, k)?.eval_exact(&t);
        if !value.is_integer() || value.to_integer() != coefficient(shape, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks `sum_i K_l(i) K_k(i) C(N, i) = 2^N C(N, l) [l = k]` exactly.
pub fn orthogonality_check(n: u64, l: u64, k: u64) -> Result<bool> {
    KrawtchoukParams::new(n, l)?;
    KrawtchoukParams::new(n, k)?;
    let mut sum = BigInt::zero();
    for i in 0..=n {
        let values = integer_values(n, i as i64);
        sum += &values[l as usize] * &values[k as usize] * binomial(n, i as i64);
    }
    let expected = if l == k {
        (BigInt::one() << n) * binomial(n, l as i64)
    } else {
        BigInt::zero()
    };
    Ok(sum == expected)
}

/// Orthogonality for every pair `(l, k)` of a family at once, reusing one
/// table of integer values. Returns the first failing pair, if any.
pub fn orthogonality_sweep(n: u64) -> Result<Option<(u64, u64)>> {
    if n == 0 {
        return Err(Error::EmptyFamily);
    }
    let table: Vec<Vec<BigInt>> = (0..=n).map(|i| integer_values(n, i as i64)).collect();
    let weights: Vec<BigInt> = (0..=n).map(|i| binomial(n, i as i64)).collect();
    for l in 0..=n as usize {
        let weighted: Vec<BigInt> = (0..=n as usize)
            .map(|i| &table[i][l] * &weights[i])
            .collect();
        for k in l..=n as usize {
            let sum: BigInt = (0..=n as usize).map(|i| &weighted[i] * &table[i][k]).sum();
            let ok = if l == k {
                sum == (BigInt::one() << n) * &weights[l]
            } else {
                sum.is_zero()
            };
            if !ok {
                return Ok(Some((l as u64, k as u64)));
            }
        }
    }
    Ok(None)
}

/// `true` when the value is an integer; used by property checks.
pub fn is_integral(x: &BigRational) -> bool {
    x.is_integer()
}

/// Sign of `K_k^N(t)` at an integer point, from the exact integer table.
pub fn sign_at_integer(n: u64, k: u64, t: i64) -> Ordering {
    let values = integer_values(n, t);
    if values[k as usize].is_positive() {
        Ordering::Greater
    } else if values[k as usize].is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}
