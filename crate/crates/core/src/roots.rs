//! Certified localization of the smallest Krawtchouk roots `d_k^N(1)` and
//! of the largest eigenvalues `lambda_k` of the Golub-Kahan matrices.
//!
//! Both give exact characterizations of the degree of regularity:
//!
//! * `d_reg = 1 + max { k : d_k^(2m-n)(1) > m - n }`
//! * `d_reg = 1 + max { k : lambda_k^(2m-n) < n }`, with
//!   `lambda_k = N - 2 d_k^N(1)`.
//!
//! All enclosures come from bisection driven by exact rational signs, so
//! the integer answers are never affected by rounding.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exact::SystemShape;
use crate::krawtchouk::KrawtchoukParams;
use crate::{Error, Result};

/// Largest family size the cross-validation paths accept by default.
pub const DEFAULT_CEILING: u64 = 512;

/// Enclosure `[lo, hi]` of the smallest root of `K_k^N`.
///
/// Either `lo == hi` is the root itself, or `K_k(lo) > 0 > K_k(hi)` and the
/// root is the only one in `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    params: KrawtchoukParams,
    lo: BigRational,
    hi: BigRational,
}

impl RootInterval {
    pub fn params(&self) -> KrawtchoukParams {
        self.params
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

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    /// Position of the root relative to `x`, using the exact sign of `K_k`
    /// at `x` when the enclosure alone does not decide it.
    pub fn compare_root_with(&self, x: &BigRational) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(x);
        }
        if &self.lo >= x {
            return Ordering::Greater;
        }
        if &self.hi <= x {
            return Ordering::Less;
        }
        // K_k is positive left of the root and negative right of it
        self.params.sign_at(x)
    }

    /// One bisection step.
    fn halve(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = self.midpoint();
        match self.params.sign_at(&mid) {
            Ordering::Greater => self.lo = mid,
            Ordering::Less => self.hi = mid,
            Ordering::Equal => {
                self.lo = mid.clone();
                self.hi = mid;
            }
        }
    }

    /// Bisects until the width is at most `width` and the lower end has
    /// left zero (the root itself is always positive).
    fn refine_to(&mut self, width: &BigRational) {
        while !self.is_exact() && (&self.width() > width || self.lo.is_zero()) {
            self.halve();
        }
    }
}

/// The decreasing chain `d_1^N(1) > d_2^N(1) > ...`, built lazily.
///
/// Degree `k` is bracketed using the already certified enclosure of
/// `d_(k-1)(1)`: interlacing puts exactly one root of `K_k` below
/// `d_(k-1)(1)`, and `K_k(0) = C(N, k) > 0` fixes the sign on the left.
#[derive(Debug, Clone)]
pub struct SmallestRoots {
    family_size: u64,
    width: BigRational,
    roots: Vec<RootInterval>,
}

impl SmallestRoots {
    pub fn new(family_size: u64, width: BigRational) -> Result<Self> {
        if family_size == 0 {
            return Err(Error::EmptyFamily);
        }
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        Ok(SmallestRoots {
            family_size,
            width,
            roots: Vec::new(),
        })
    }

    pub fn family_size(&self) -> u64 {
        self.family_size
    }

    /// Enclosure of `d_k^N(1)` for `1 <= k <= N`.
    pub fn get(&mut self, k: u64) -> Result<&RootInterval> {
        if k == 0 || k > self.family_size {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                range: format!("1..={}", self.family_size),
            });
        }
        while (self.roots.len() as u64) < k {
            self.extend();
        }
        Ok(&self.roots[k as usize - 1])
    }

    fn extend(&mut self) {
        let k = self.roots.len() as u64 + 1;
        let params = KrawtchoukParams::new(self.family_size, k).expect("k <= N");
        if k == 1 {
            let half = BigRational::new(self.family_size.into(), 2.into());
            self.roots.push(RootInterval {
                params,
                lo: half.clone(),
                hi: half,
            });
            return;
        }
        let mut current = loop {
            let prev = self.roots.last_mut().expect("k >= 2");
            let below = RootInterval {
                params,
                lo: BigRational::zero(),
                hi: prev.lo.clone(),
            };
            if prev.is_exact() {
                // an exact d_(k-1)(1) lies strictly between d_k(1) and d_k(2)
                break below;
            }
            match params.sign_at(&prev.lo) {
                Ordering::Less => break below,
                Ordering::Equal => {
                    break RootInterval {
                        params,
                        lo: prev.lo.clone(),
                        hi: prev.lo.clone(),
                    }
                }
                Ordering::Greater => {
                    // d_k(1) lies in (prev.lo, d_(k-1)(1))
                    if params.sign_at(&prev.hi) == Ordering::Less {
                        break RootInterval {
                            params,
                            lo: prev.lo.clone(),
                            hi: prev.hi.clone(),
                        };
                    }
                    prev.halve();
                }
            }
        };
        current.refine_to(&self.width);
        self.roots.push(current);
    }

    /// Refines the enclosures of `d_k(1)` and `d_(k+1)(1)` until they are
    /// disjoint, certifying `d_(k+1)(1) < d_k(1)`. Gives up after
    /// `max_steps` bisections of each.
    pub fn certify_decrease(&mut self, k: u64, max_steps: usize) -> Result<bool> {
        self.get(k + 1)?;
        for _ in 0..=max_steps {
            let (left, right) = self.roots.split_at_mut(k as usize);
            let upper = &mut left[k as usize - 1];
            let lower = &mut right[0];
            let separated = match lower.hi.cmp(&upper.lo) {
                Ordering::Less => true,
                Ordering::Equal => !(lower.is_exact() && upper.is_exact()),
                Ordering::Greater => false,
            };
            if separated {
                return Ok(true);
            }
            if lower.is_exact() && upper.is_exact() {
                return Ok(false);
            }
            lower.halve();
            upper.halve();
        }
        Ok(false)
    }
}

/// Certified enclosure of `d_k^N(1)` of width at most `width`.
pub fn smallest_root(family_size: u64, k: u64, width: &BigRational) -> Result<RootInterval> {
    let mut chain = SmallestRoots::new(family_size, width.clone())?;
    Ok(chain.get(k)?.clone())
}

/// `d_reg = 1 + max { k : d_k(1) > m - n }` read off a chain of smallest
/// roots for `N = 2m - n`.
pub fn dreg_from_roots(chain: &mut SmallestRoots, shape: SystemShape) -> Result<u64> {
    assert_eq!(chain.family_size(), shape.family_size());
    let t = BigRational::from_integer(shape.excess().into());
    for k in 1..=shape.family_size() {
        if chain.get(k)?.compare_root_with(&t) != Ordering::Greater {
            return Ok(k);
        }
    }
    unreachable!("d_N(1) < m - n always holds for the last family member")
}

/// Enclosure of the largest eigenvalue of a Golub-Kahan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenEnclosure {
    lo: BigRational,
    hi: BigRational,
}

impl EigenEnclosure {
    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

/// The `k x k` symmetric tridiagonal matrix `A_k^N` with zero diagonal and
/// off-diagonal entries `sqrt((i+1)(N-i))`, together with an enclosure of
/// its largest eigenvalue.
#[derive(Debug, Clone)]
pub struct GolubKahanSpectrum {
    family_size: u64,
    degree: u64,
    squared_offdiagonals: Vec<u128>,
    lambda_max: EigenEnclosure,
}

impl GolubKahanSpectrum {
    pub fn new(family_size: u64, degree: u64, width: &BigRational) -> Result<Self> {
        KrawtchoukParams::new(family_size, degree)?;
        if degree == 0 {
            return Err(Error::DegreeOutOfRange {
                degree,
                range: format!("1..={family_size}"),
            });
        }
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        let squared_offdiagonals = golub_kahan_offdiagonals(family_size, degree);
        let lambda_max = bisect_largest(&squared_offdiagonals, family_size, width);
        Ok(GolubKahanSpectrum {
            family_size,
            degree,
            squared_offdiagonals,
            lambda_max,
        })
    }

    pub fn family_size(&self) -> u64 {
        self.family_size
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn squared_offdiagonals(&self) -> &[u128] {
        &self.squared_offdiagonals
    }

    pub fn lambda_max(&self) -> &EigenEnclosure {
        &self.lambda_max
    }

    /// Exact comparison of the largest eigenvalue with `x`.
    pub fn compare_largest_with(&self, x: &BigRational) -> Ordering {
        let e = &self.lambda_max;
        if e.is_exact() {
            return e.lo.cmp(x);
        }
        if &e.lo >= x {
            return Ordering::Greater;
        }
        if &e.hi <= x {
            return Ordering::Less;
        }
        let count = sturm_count(&self.squared_offdiagonals, x);
        if count.above > 0 {
            Ordering::Greater
        } else if count.at {
            Ordering::Equal
        } else {
            Ordering::Less
        }
    }
}

/// Squared off-diagonal entries `(i+1)(N-i)` for `i = 0..k-1`.
pub fn golub_kahan_offdiagonals(family_size: u64, degree: u64) -> Vec<u128> {
    (0..degree.saturating_sub(1))
        .map(|i| (i as u128 + 1) * (family_size as u128 - i as u128))
        .collect()
}

/// Result of a Sturm count at a point `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SturmCount {
    /// Number of eigenvalues strictly greater than `x`.
    pub above: usize,
    /// Whether `x` itself is an eigenvalue.
    pub at: bool,
}

/// Sturm count for a zero-diagonal symmetric tridiagonal matrix given by
/// its squared off-diagonal entries.
///
/// With `x = p/q`, the scaled leading minors `P_j = q^j det(x I - A_j)`
/// satisfy `P_j = p P_(j-1) - b_(j-1)^2 q^2 P_(j-2)` and are integers.
/// The number of sign changes in `P_0, ..., P_k` (zeros skipped) is the
/// number of eigenvalues above `x`.
pub fn sturm_count(squared_offdiagonals: &[u128], x: &BigRational) -> SturmCount {
    let p = x.numer();
    let q = x.denom();
    let q2 = q * q;
    let mut prev2 = BigInt::zero();
    let mut prev = BigInt::one();
    let mut changes = 0;
    let mut last_sign = Ordering::Greater;
    let k = squared_offdiagonals.len() + 1;
    for j in 1..=k {
        let coupling = if j >= 2 {
            BigInt::from(squared_offdiagonals[j - 2]) * &q2
        } else {
            BigInt::zero()
        };
        let next = p * &prev - coupling * &prev2;
        prev2 = std::mem::replace(&mut prev, next);
        let sign = prev.sign();
        let sign = match sign {
            num_bigint::Sign::Plus => Ordering::Greater,
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
        };
        if sign != Ordering::Equal {
            if sign != last_sign {
                changes += 1;
            }
            last_sign = sign;
        }
    }
    SturmCount {
        above: changes,
        at: prev.is_zero(),
    }
}

fn bisect_largest(offdiag: &[u128], family_size: u64, width: &BigRational) -> EigenEnclosure {
    let mut lo = BigRational::zero();
    let at_zero = sturm_count(offdiag, &lo);
    if at_zero.above == 0 {
        // only possible for the 1x1 zero matrix
        debug_assert!(at_zero.at);
        return EigenEnclosure {
            lo: lo.clone(),
            hi: lo,
        };
    }
    // every eigenvalue is below N + 1 (Gershgorin)
    let mut hi = BigRational::from_integer((family_size + 1).into());
    debug_assert_eq!(sturm_count(offdiag, &hi).above, 0);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / BigInt::from(2);
        let count = sturm_count(offdiag, &mid);
        if count.above > 0 {
            lo = mid;
        } else if count.at {
            return EigenEnclosure {
                lo: mid.clone(),
                hi: mid,
            };
        } else {
            hi = mid;
        }
    }
    EigenEnclosure { lo, hi }
}

/// Certified enclosure of the largest eigenvalue `lambda_k` of `A_k^N`.
pub fn largest_eigenvalue(family_size: u64, k: u64, width: &BigRational) -> Result<EigenEnclosure> {
    Ok(GolubKahanSpectrum::new(family_size, k, width)?
        .lambda_max
        .clone())
}

/// Settings for the two alternative characterizations of `d_reg`.
#[derive(Debug, Clone)]
pub struct CrossValidation {
    pub ceiling: u64,
    pub width: BigRational,
}

impl Default for CrossValidation {
    fn default() -> Self {
        CrossValidation {
            ceiling: DEFAULT_CEILING,
            width: BigRational::new(BigInt::one(), BigInt::from(1_000_000)),
        }
    }
}

impl CrossValidation {
    pub fn new(ceiling: u64, width: BigRational) -> Result<Self> {
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        Ok(CrossValidation { ceiling, width })
    }

    fn check_ceiling(&self, shape: SystemShape) -> Result<()> {
        if shape.family_size() > self.ceiling {
            return Err(Error::CeilingExceeded {
                family_size: shape.family_size(),
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }

    pub fn dreg_via_roots(&self, shape: SystemShape) -> Result<u64> {
        self.check_ceiling(shape)?;
        let mut chain = SmallestRoots::new(shape.family_size(), self.width.clone())?;
        dreg_from_roots(&mut chain, shape)
    }

    pub fn dreg_via_eigenvalues(&self, shape: SystemShape) -> Result<u64> {
        self.check_ceiling(shape)?;
        let n = BigRational::from_integer(shape.n().into());
        for k in 1..=shape.family_size() {
            let spectrum = GolubKahanSpectrum::new(shape.family_size(), k, &self.width)?;
            if spectrum.compare_largest_with(&n) != Ordering::Less {
                return Ok(k);
            }
        }
        unreachable!("lambda_N = N > n for the full matrix")
    }
}

/// `d_reg` through the smallest Krawtchouk roots, default ceiling.
pub fn dreg_via_roots(shape: SystemShape, width: &BigRational) -> Result<u64> {
    CrossValidation::new(DEFAULT_CEILING, width.clone())?.dreg_via_roots(shape)
}

/// `d_reg` through the largest Golub-Kahan eigenvalues, default ceiling.
pub fn dreg_via_eigenvalues(shape: SystemShape, width: &BigRational) -> Result<u64> {
    CrossValidation::new(DEFAULT_CEILING, width.clone())?.dreg_via_eigenvalues(shape)
}
