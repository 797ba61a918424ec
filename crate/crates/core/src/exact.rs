//! Exact big-integer combinatorics and the Hilbert-series truncation.
//!
//! For a semi-regular system of `m` quadratic equations in `n` variables
//! the Hilbert series is `|(1 - z)^(m-n) (1 + z)^m|_+`, the power series
//! truncated right before its first non-positive coefficient. The degree of
//! regularity is the index of that first non-positive coefficient.
//!
//! Coefficients are produced by the binary Krawtchouk three-term recurrence
//! evaluated at the integer `t = m - n`, which needs `O(d)` big-integer
//! operations for the first `d` coefficients. The alternating convolution
//! sum is kept as a slow reference in [`convolution_coefficient`].

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Validated shape of an overdetermined quadratic system: `m` equations in
/// `n` variables with `m > n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemShape {
    m: u64,
    n: u64,
}

impl SystemShape {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if n == 0 || m <= n {
            return Err(Error::NotOverdetermined { m, n });
        }
        // 2m - n must fit in u64
        if m.checked_mul(2).is_none() {
            return Err(Error::InvalidParameter {
                name: "m",
                value: m.to_string(),
                range: "m < 2^63",
            });
        }
        Ok(SystemShape { m, n })
    }

    /// Number of equations.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Number of variables.
    pub fn n(&self) -> u64 {
        self.n
    }

    /// `N = 2m - n`, the size of the Krawtchouk family.
    pub fn family_size(&self) -> u64 {
        2 * self.m - self.n
    }

    /// `t = m - n`, the point at which the family is evaluated.
    pub fn excess(&self) -> u64 {
        self.m - self.n
    }
}

impl std::fmt::Display for SystemShape {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(m = {}, n = {})", self.m, self.n)
    }
}

/// Binomial coefficient `C(a, b)`, zero when `b` lies outside `[0, a]`.
pub fn binomial(a: u64, b: i64) -> BigInt {
    if b < 0 || b as u64 > a {
        return BigInt::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigInt::one();
    for i in 1..=b {
        // acc = C(a - b + i - 1, i - 1) here, so the division is exact
        acc *= a - b + i;
        acc /= i;
    }
    acc
}

/// Bounded, thread-safe memo for [`binomial`].
///
/// When the cache reaches its capacity it is cleared wholesale; sweeps tend
/// to revisit a small working set, so this is enough.
#[derive(Debug)]
pub struct BinomialCache {
    capacity: usize,
    entries: Mutex<HashMap<(u64, u64), BigInt>>,
}

impl BinomialCache {
    pub fn new(capacity: usize) -> Self {
        BinomialCache {
            capacity,
            entries: Mutex::new(HashMap::new()),
        }
    }

    pub fn get(&self, a: u64, b: i64) -> BigInt {
        if b < 0 || b as u64 > a {
            return BigInt::zero();
        }
        let key = (a, b as u64);
        if let Some(v) = self.entries.lock().unwrap().get(&key) {
            return v.clone();
        }
        let value = binomial(a, b);
        let mut entries = self.entries.lock().unwrap();
        if entries.len() >= self.capacity {
            entries.clear();
        }
        entries.insert(key, value.clone());
        value
    }

    pub fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Default for BinomialCache {
    fn default() -> Self {
        BinomialCache::new(4096)
    }
}

/// Streams `c_0, c_1, ..., c_N` where `c_k = [z^k] (1 - z)^(m-n) (1 + z)^m`.
///
/// Uses `(k+1) c_(k+1) = (N - 2t) c_k - (N - k + 1) c_(k-1)` with
/// `N = 2m - n`, `t = m - n`.
#[derive(Debug, Clone)]
pub struct Coefficients {
    family_size: u64,
    slope: BigInt,
    prev: BigInt,
    current: BigInt,
    next_index: u64,
}

impl Coefficients {
    pub fn new(shape: SystemShape) -> Self {
        let family_size = shape.family_size();
        Coefficients {
            family_size,
            // N - 2t = n
            slope: BigInt::from(shape.n()),
            prev: BigInt::zero(),
            current: BigInt::one(),
            next_index: 0,
        }
    }
}

impl Iterator for Coefficients {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let k = self.next_index;
        if k > self.family_size {
            return None;
        }
        self.next_index += 1;
        if k == 0 {
            return Some(self.current.clone());
        }
        // advance from c_(k-1) to c_k
        let j = k - 1;
        let numer = &self.slope * &self.current - (self.family_size - j + 1) * &self.prev;
        let (quot, rem) = numer.div_rem(&BigInt::from(k));
        assert!(rem.is_zero(), "recurrence left a remainder at k = {k}");
        self.prev = std::mem::replace(&mut self.current, quot);
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.family_size + 1).saturating_sub(self.next_index) as usize;
        (left, Some(left))
    }
}

/// Lazily extended list of Hilbert-series coefficients for one shape.
#[derive(Debug, Clone)]
pub struct CoefficientSeries {
    shape: SystemShape,
    coefficients: Vec<BigInt>,
    stream: Coefficients,
}

impl CoefficientSeries {
    pub fn new(shape: SystemShape) -> Self {
        CoefficientSeries {
            shape,
            coefficients: Vec::new(),
            stream: Coefficients::new(shape),
        }
    }

    pub fn shape(&self) -> SystemShape {
        self.shape
    }

    /// Coefficients materialized so far.
    pub fn materialized(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn get(&mut self, k: u64) -> Result<&BigInt> {
        let max = self.shape.family_size();
        if k > max {
            return Err(Error::IndexOutOfRange { index: k, max });
        }
        while self.coefficients.len() as u64 <= k {
            let c = self.stream.next().expect("stream covers 0..=N");
            self.coefficients.push(c);
        }
        Ok(&self.coefficients[k as usize])
    }
}

/// `c_k = [z^k] (1 - z)^(m-n) (1 + z)^m` by the three-term recurrence.
pub fn coefficient(shape: SystemShape, k: u64) -> Result<BigInt> {
    let max = shape.family_size();
    if k > max {
        return Err(Error::IndexOutOfRange { index: k, max });
    }
    Ok(Coefficients::new(shape).nth(k as usize).expect("k <= N"))
}

/// `c_k` by the alternating sum `sum_j (-1)^j C(m-n, j) C(m, k-j)`.
///
/// Quadratic in `k`; meant as an independent reference for the recurrence.
pub fn convolution_coefficient(shape: SystemShape, k: u64) -> Result<BigInt> {
    let max = shape.family_size();
    if k > max {
        return Err(Error::IndexOutOfRange { index: k, max });
    }
    let t = shape.excess();
    let mut sum = BigInt::zero();
    for j in 0..=k.min(t) {
        let term = binomial(t, j as i64) * binomial(shape.m(), (k - j) as i64);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

/// The truncated Hilbert series: the longest prefix `c_0, ..., c_d` whose
/// entries are all strictly positive.
pub fn hilbert_truncation(shape: SystemShape) -> Vec<BigInt> {
    Coefficients::new(shape)
        .take_while(|c| c.is_positive())
        .collect()
}

/// Degree of regularity: the index of the first non-positive coefficient of
/// `(1 - z)^(m-n) (1 + z)^m`, i.e. `1 + deg HS(z)`.
pub fn degree_of_regularity(shape: SystemShape) -> u64 {
    // The coefficients sum to zero at z = 1 and c_0 = 1, so some coefficient
    // is negative and the scan always stops inside 0..=N.
    Coefficients::new(shape)
        .position(|c| !c.is_positive())
        .expect("a non-positive coefficient exists") as u64
}

/// Default matrix-multiplication exponent used for the F5 cost estimate.
pub const DEFAULT_OMEGA: f64 = 2.373;

/// `log2(m * d * C(n + d - 1, d)^omega)`, the F5 cost bound for a
/// semi-regular system with degree of regularity `d`.
pub fn f5_cost_log2(shape: SystemShape, dreg: u64, omega: f64) -> Result<f64> {
    if dreg == 0 {
        return Err(Error::InvalidParameter {
            name: "dreg",
            value: dreg.to_string(),
            range: "dreg >= 1",
        });
    }
    let monomials = binomial(shape.n() + dreg - 1, dreg as i64);
    Ok((shape.m() as f64).log2() + (dreg as f64).log2() + omega * log2_big(&monomials))
}

/// Base-2 logarithm of a positive big integer, accurate to f64 precision.
pub fn log2_big(x: &BigInt) -> f64 {
    debug_assert!(x.is_positive());
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_f64().unwrap_or(f64::NAN);
    top.log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(m: u64, n: u64) -> SystemShape {
        SystemShape::new(m, n).unwrap()
    }

    fn pascal_row(a: usize) -> Vec<BigInt> {
        let mut row = vec![BigInt::one()];
        for _ in 0..a {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    // coefficients of (1 - z)^t (1 + z)^m by repeated multiplication
    fn expand(m: u64, t: u64) -> Vec<BigInt> {
        let mut poly = vec![BigInt::one()];
        let mul = |poly: &Vec<BigInt>, sign: i32| {
            let mut out = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                out[i] += c;
                out[i + 1] += c * sign;
            }
            out
        };
        for _ in 0..t {
            poly = mul(&poly, -1);
        }
        for _ in 0..m {
            poly = mul(&poly, 1);
        }
        poly
    }

    #[test]
    fn shape_rejects_non_overdetermined() {
        assert_eq!(
            SystemShape::new(12, 24),
            Err(Error::NotOverdetermined { m: 12, n: 24 })
        );
        assert!(SystemShape::new(5, 5).is_err());
        assert!(SystemShape::new(5, 0).is_err());
        let s = shape(24, 12);
        assert_eq!((s.family_size(), s.excess()), (36, 12));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(7, 0), BigInt::one());
        assert_eq!(binomial(7, -1), BigInt::zero());
        assert_eq!(binomial(7, 8), BigInt::zero());
        assert_eq!(pascal_row(36)[4], BigInt::from(58905));
        assert_eq!(binomial(36, 4), BigInt::from(58905));
    }

    #[test]
    fn binomial_matches_pascal() {
        for a in 0..40u64 {
            let row = pascal_row(a as usize);
            for b in 0..=a {
                assert_eq!(binomial(a, b as i64), row[b as usize], "C({a},{b})");
            }
        }
    }

    #[test]
    fn cache_is_bounded_and_consistent() {
        let cache = BinomialCache::new(3);
        for b in 0..10 {
            assert_eq!(cache.get(20, b), binomial(20, b));
            assert!(cache.len() <= 3);
        }
        assert_eq!(cache.get(3, 5), BigInt::zero());
    }

    #[test]
    fn coefficients_of_quartic_example() {
        let s = shape(24, 12);
        let expanded = expand(24, 12);
        assert_eq!(expanded[4], BigInt::from(-231));
        assert_eq!(coefficient(s, 0).unwrap(), BigInt::one());
        assert_eq!(coefficient(s, 1).unwrap(), BigInt::from(12));
        assert_eq!(coefficient(s, 4).unwrap(), BigInt::from(-231));
        for k in 0..=36 {
            assert_eq!(coefficient(s, k).unwrap(), expanded[k as usize]);
        }
        assert_eq!(
            coefficient(s, 37),
            Err(Error::IndexOutOfRange { index: 37, max: 36 })
        );
    }

    #[test]
    fn series_extends_lazily() {
        let mut series = CoefficientSeries::new(shape(24, 12));
        assert!(series.materialized().is_empty());
        assert_eq!(series.get(3).unwrap(), &BigInt::from(76));
        assert_eq!(series.materialized().len(), 4);
        assert_eq!(series.get(1).unwrap(), &BigInt::from(12));
        assert!(series.get(40).is_err());
    }

    #[test]
    fn truncation_examples() {
        let prefix = hilbert_truncation(shape(24, 12));
        let want: Vec<BigInt> = [1, 12, 54, 76].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(prefix, want);
        let small = hilbert_truncation(shape(2, 1));
        assert_eq!(small[..2], [BigInt::one(), BigInt::one()]);
        assert_eq!(hilbert_truncation(shape(512, 256)).len(), 29);
    }

    #[test]
    fn degree_of_regularity_examples() {
        assert_eq!(degree_of_regularity(shape(24, 12)), 4);
        assert_eq!(degree_of_regularity(shape(356, 256)), 48);
        assert_eq!(degree_of_regularity(shape(2048, 256)), 8);
        // (1 - z)(1 + z)^2 = 1 + z - z^2 - z^3
        assert_eq!(degree_of_regularity(shape(2, 1)), 2);
    }

    #[test]
    fn zero_coefficient_counts_as_non_positive() {
        // (1 - z)(1 + z)^3 = 1 + 2z - 2z^3 - z^4 has c_2 = 0
        let s = shape(3, 2);
        assert_eq!(coefficient(s, 2).unwrap(), BigInt::zero());
        assert_eq!(degree_of_regularity(s), 2);
        assert_eq!(hilbert_truncation(s).len(), 2);
    }

    #[test]
    fn f5_cost() {
        let s = shape(24, 12);
        // log2(96) + 2.373 log2(1365), evaluated independently
        let want = 96f64.log2() + 2.373 * 1365f64.log2();
        let got = f5_cost_log2(s, 4, DEFAULT_OMEGA).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 31.299010565).abs() < 1e-6);
        assert!((f5_cost_log2(s, 1, 1.0).unwrap() - (24.0f64 * 12.0).log2()).abs() < 1e-12);
        let big = f5_cost_log2(shape(512, 256), 29, DEFAULT_OMEGA).unwrap();
        assert!((big - 325.682927106).abs() < 1e-6, "{big}");
        assert!(f5_cost_log2(s, 0, 2.0).is_err());
    }

    #[test]
    fn log2_of_large_integers() {
        let x = BigInt::one() << 5000u32;
        assert!((log2_big(&x) - 5000.0).abs() < 1e-9);
        assert!((log2_big(&BigInt::from(3)) - 3f64.log2()).abs() < 1e-15);
    }
}
