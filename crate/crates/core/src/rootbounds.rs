//! Certified real root isolation for `f(x) = F(x, 1)` and one-sided rational
//! enclosures of the root-separation constants
//!
//! ```text
//! A = min_{i != j} |a_i - a_j|
//! B = min_i prod_{j != i} |a_j - a_i|
//! C = K / ((1 - eps)^(n-1) B)
//! G = K^(1/n) / (eps A)
//! ```
//!
//! Every bound errs only in the safe direction: lower bounds for `A` and `B`,
//! upper bounds for `C`, `G` and the derived thresholds.

use crate::error::{Error, Result};
use crate::exact;
use crate::forms::BinaryForm;
use crate::numfmt;
use crate::poly::{self, Isolated};
use crate::quadfield::QuadraticField;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Default isolation width is `2^-DEFAULT_WIDTH_BITS`.
pub const DEFAULT_WIDTH_BITS: u32 = 64;

pub fn default_width() -> BigRational {
    width_from_bits(DEFAULT_WIDTH_BITS)
}

pub fn width_from_bits(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits as usize)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootInterval {
    #[serde(with = "numfmt::rational")]
    pub lo: BigRational,
    #[serde(with = "numfmt::rational")]
    pub hi: BigRational,
}

impl RootInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    fn as_isolated(&self) -> Isolated {
        Isolated {
            lo: self.lo.clone(),
            hi: self.hi.clone(),
        }
    }

    /// Enclosure of `alpha * b` for the root `alpha` inside this interval.
    pub fn scaled(&self, b: &BigInt) -> (BigRational, BigRational) {
        let b = BigRational::from_integer(b.clone());
        let x = &self.lo * &b;
        let y = &self.hi * &b;
        if x <= y {
            (x, y)
        } else {
            (y, x)
        }
    }
}

impl From<Isolated> for RootInterval {
    fn from(iv: Isolated) -> Self {
        RootInterval {
            lo: iv.lo,
            hi: iv.hi,
        }
    }
}

/// Isolating intervals for the `n` real roots plus enclosures of `A` and `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootData {
    pub form: BinaryForm,
    #[serde(with = "numfmt::rational")]
    pub width: BigRational,
    pub intervals: Vec<RootInterval>,
    #[serde(with = "numfmt::rational")]
    pub a_lower: BigRational,
    #[serde(with = "numfmt::rational")]
    pub a_upper: BigRational,
    #[serde(with = "numfmt::rational")]
    pub b_lower: BigRational,
    #[serde(with = "numfmt::rational")]
    pub b_upper: BigRational,
}

/// Isolates every root of an admissible form to the requested width.
///
/// Intervals come from a fixed dyadic bisection, so a smaller `width` always
/// yields intervals nested inside those for a larger one.
pub fn isolate_roots(form: &BinaryForm, width: &BigRational) -> Result<RootData> {
    form.check_admissible()?;
    if !width.is_positive() {
        return Err(Error::InvalidWidth(width.clone()));
    }
    let p = form.coeffs();
    let coarse = poly::isolate(p);
    let sep = separation_width(p, &coarse);
    let target = if &sep < width { sep } else { width.clone() };
    let intervals: Vec<RootInterval> = coarse
        .iter()
        .map(|iv| iv.refine(p, &target).into())
        .collect();
    Ok(RootData::from_intervals(
        form.clone(),
        width.clone(),
        intervals,
    ))
}

/// Largest power-of-two width at which all refined intervals are pairwise
/// disjoint. Depends only on the coarse isolation, not on the caller's width.
fn separation_width(p: &[BigInt], coarse: &[Isolated]) -> BigRational {
    let mut w = BigRational::one();
    let two = BigRational::from_integer(2.into());
    loop {
        let refined: Vec<Isolated> = coarse.iter().map(|iv| iv.refine(p, &w)).collect();
        if refined.windows(2).all(|pair| pair[0].hi < pair[1].lo) {
            return w;
        }
        w /= &two;
    }
}

impl RootData {
    fn from_intervals(form: BinaryForm, width: BigRational, intervals: Vec<RootInterval>) -> Self {
        let n = intervals.len();
        let mut a_lower: Option<BigRational> = None;
        let mut a_upper: Option<BigRational> = None;
        for i in 0..n {
            for j in (i + 1)..n {
                let lo = &intervals[j].lo - &intervals[i].hi;
                let hi = &intervals[j].hi - &intervals[i].lo;
                a_lower = Some(a_lower.map_or(lo.clone(), |a| a.min(lo)));
                a_upper = Some(a_upper.map_or(hi.clone(), |a| a.min(hi)));
            }
        }
        let mut b_lower: Option<BigRational> = None;
        let mut b_upper: Option<BigRational> = None;
        for i in 0..n {
            let mut lo = BigRational::one();
            let mut hi = BigRational::one();
            for j in (0..n).filter(|&j| j != i) {
                let (l, h) = gap(&intervals[i], &intervals[j]);
                lo *= l;
                hi *= h;
            }
            b_lower = Some(b_lower.map_or(lo.clone(), |b| b.min(lo)));
            b_upper = Some(b_upper.map_or(hi.clone(), |b| b.min(hi)));
        }
        RootData {
            form,
            width,
            intervals,
            a_lower: a_lower.unwrap_or_else(BigRational::zero),
            a_upper: a_upper.unwrap_or_else(BigRational::zero),
            b_lower: b_lower.unwrap_or_else(BigRational::zero),
            b_upper: b_upper.unwrap_or_else(BigRational::zero),
        }
    }

    pub fn degree(&self) -> usize {
        self.intervals.len()
    }

    /// Same roots at a finer width; intervals are nested in the current ones.
    pub fn refined(&self, width: &BigRational) -> Result<RootData> {
        if !width.is_positive() {
            return Err(Error::InvalidWidth(width.clone()));
        }
        let p = self.form.coeffs();
        let target = if width < &self.width {
            width
        } else {
            &self.width
        };
        let intervals = self
            .intervals
            .iter()
            .map(|iv| iv.as_isolated().refine(p, target).into())
            .collect();
        Ok(RootData::from_intervals(
            self.form.clone(),
            target.clone(),
            intervals,
        ))
    }

    /// Lower bound of `prod_{j != i} |a_j - a_i|` for a single root.
    pub fn root_product_lower(&self, i: usize) -> BigRational {
        let mut acc = BigRational::one();
        for j in (0..self.degree()).filter(|&j| j != i) {
            acc *= gap(&self.intervals[i], &self.intervals[j]).0;
        }
        acc
    }

    /// Bound `R` with `|a_j| <= R` for all roots.
    pub fn max_abs_upper(&self) -> BigRational {
        self.intervals
            .iter()
            .map(|iv| iv.lo.abs().max(iv.hi.abs()))
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Lower and upper bound of the distance between roots in two disjoint intervals.
fn gap(x: &RootInterval, y: &RootInterval) -> (BigRational, BigRational) {
    if x.hi <= y.lo {
        (&y.lo - &x.hi, &y.hi - &x.lo)
    } else {
        (&x.lo - &y.hi, &x.hi - &y.lo)
    }
}

/// `(K, eps)` together with certified upper bounds on `C` and `G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremConstants {
    pub degree: u32,
    #[serde(with = "numfmt::rational")]
    pub k: BigRational,
    #[serde(with = "numfmt::rational")]
    pub epsilon: BigRational,
    #[serde(with = "numfmt::rational")]
    pub a_lower: BigRational,
    #[serde(with = "numfmt::rational")]
    pub b_lower: BigRational,
    /// Upper bound on `K^(1/n)`.
    #[serde(with = "numfmt::rational")]
    pub k_root_upper: BigRational,
    #[serde(with = "numfmt::rational")]
    pub c_upper: BigRational,
    #[serde(with = "numfmt::rational")]
    pub g_upper: BigRational,
    pub bits: u32,
}

/// Rational upper bounds on the three `|y|` thresholds of the gated conclusions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Thresholds {
    #[serde(with = "numfmt::rational")]
    pub x12: BigRational,
    #[serde(with = "numfmt::rational")]
    pub i1: BigRational,
    #[serde(with = "numfmt::rational")]
    pub i2: BigRational,
}

pub fn validate_k(k: &BigRational) -> Result<()> {
    if k < &BigRational::one() {
        return Err(Error::InvalidBound(k.clone()));
    }
    Ok(())
}

pub fn validate_epsilon(eps: &BigRational) -> Result<()> {
    if !eps.is_positive() || eps >= &BigRational::one() {
        return Err(Error::InvalidEpsilon(eps.clone()));
    }
    Ok(())
}

pub fn constants(
    roots: &RootData,
    k: &BigRational,
    epsilon: &BigRational,
) -> Result<TheoremConstants> {
    validate_k(k)?;
    validate_epsilon(epsilon)?;
    let n = roots.degree() as u32;
    // dyadic precision of the irrational roots matches the isolation width
    let bits = roots.width.denom().bits().max(DEFAULT_WIDTH_BITS as u64) as u32;
    let k_root_upper = exact::nth_root_upper(k, n, bits);
    let one_minus = BigRational::one() - epsilon;
    let c_upper = k / (exact::pow(&one_minus, n - 1) * &roots.b_lower);
    let g_upper = &k_root_upper / (epsilon * &roots.a_lower);
    Ok(TheoremConstants {
        degree: n,
        k: k.clone(),
        epsilon: epsilon.clone(),
        a_lower: roots.a_lower.clone(),
        b_lower: roots.b_lower.clone(),
        k_root_upper,
        c_upper,
        g_upper,
        bits,
    })
}

impl TheoremConstants {
    fn norm_pow(norm_y: &BigInt, e: u32) -> BigRational {
        BigRational::from_integer(norm_y.pow(e))
    }

    /// `(s C_upper)^2`.
    fn sc_squared(&self, field: &QuadraticField) -> BigRational {
        let sc = &self.c_upper * BigRational::from_integer(field.s().into());
        &sc * &sc
    }

    /// Certified `|y| > G`: `|y|^(2n) (eps A_lower)^(2n) > K^2`.
    pub fn exceeds_g(&self, norm_y: &BigInt) -> bool {
        let n = self.degree;
        let ea = &self.epsilon * &self.a_lower;
        Self::norm_pow(norm_y, n) * exact::pow(&ea, 2 * n) > &self.k * &self.k
    }

    /// Certified `|y| >= G`.
    pub fn at_least_g(&self, norm_y: &BigInt) -> bool {
        let n = self.degree;
        let ea = &self.epsilon * &self.a_lower;
        Self::norm_pow(norm_y, n) * exact::pow(&ea, 2 * n) >= &self.k * &self.k
    }

    /// `|y| > max{G, (s C / sqrt m)^(1/(n-2))}`, decided on integer powers.
    pub fn x12_gate(&self, field: &QuadraticField, norm_y: &BigInt) -> bool {
        let m = BigRational::from_integer(field.m().into());
        self.exceeds_g(norm_y)
            && Self::norm_pow(norm_y, self.degree - 2) * m > self.sc_squared(field)
    }

    /// `|y| > max{G, (s C)^(1/(n-1))}`.
    pub fn i1_gate(&self, field: &QuadraticField, norm_y: &BigInt) -> bool {
        self.exceeds_g(norm_y) && Self::norm_pow(norm_y, self.degree - 1) > self.sc_squared(field)
    }

    /// `|y| > max{G, (s C / sqrt m)^(1/(n-1))}`.
    pub fn i2_gate(&self, field: &QuadraticField, norm_y: &BigInt) -> bool {
        let m = BigRational::from_integer(field.m().into());
        self.exceeds_g(norm_y)
            && Self::norm_pow(norm_y, self.degree - 1) * m > self.sc_squared(field)
    }

    /// Rational upper bounds on the thresholds, for reporting.
    pub fn thresholds(&self, field: &QuadraticField) -> Thresholds {
        let n = self.degree;
        let s = BigRational::from_integer(field.s().into());
        let sqrt_m_lower =
            exact::nth_root_lower(&BigRational::from_integer(field.m().into()), 2, self.bits);
        let sc = &s * &self.c_upper;
        let sc_over_root_m = &sc / &sqrt_m_lower;
        let x12 = exact::nth_root_upper(&sc_over_root_m, n - 2, self.bits);
        let i1 = exact::nth_root_upper(&sc, n - 1, self.bits);
        let i2 = exact::nth_root_upper(&sc_over_root_m, n - 1, self.bits);
        let g = &self.g_upper;
        Thresholds {
            x12: x12.max(g.clone()),
            i1: i1.max(g.clone()),
            i2: i2.max(g.clone()),
        }
    }
}
