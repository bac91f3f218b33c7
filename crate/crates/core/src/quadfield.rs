//! Exact arithmetic in the ring of integers of `Q(i sqrt(m))`.
//!
//! For `m = 3 (mod 4)` elements are `u1 + u2 w` with `w = (1 + i sqrt(m)) / 2`
//! and `s = 2`; otherwise they are `u1 + u2 i sqrt(m)` with `s = 1`. Both are
//! Z-bases of the ring, so any pair of integer coordinates is a valid element.

use crate::error::{Error, Result};
use crate::forms::{BinaryForm, IntegerPair};
use crate::numfmt;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticField {
    m: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct RingElement {
    #[serde(with = "numfmt::int")]
    pub u1: BigInt,
    #[serde(with = "numfmt::int")]
    pub u2: BigInt,
}

impl RingElement {
    pub fn new(u1: impl Into<BigInt>, u2: impl Into<BigInt>) -> Self {
        RingElement {
            u1: u1.into(),
            u2: u2.into(),
        }
    }

    pub fn zero() -> Self {
        RingElement::default()
    }

    pub fn one() -> Self {
        RingElement::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.u1.is_zero() && self.u2.is_zero()
    }

    pub fn scale(&self, k: &BigInt) -> RingElement {
        RingElement {
            u1: &self.u1 * k,
            u2: &self.u2 * k,
        }
    }
}

impl From<BigInt> for RingElement {
    fn from(v: BigInt) -> Self {
        RingElement {
            u1: v,
            u2: BigInt::zero(),
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        RingElement {
            u1: &self.u1 + &rhs.u1,
            u2: &self.u2 + &rhs.u2,
        }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        RingElement {
            u1: &self.u1 - &rhs.u1,
            u2: &self.u2 - &rhs.u2,
        }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement {
            u1: -&self.u1,
            u2: -&self.u2,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u1, self.u2)
    }
}

pub fn is_squarefree(m: u64) -> bool {
    if m == 0 {
        return false;
    }
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return false;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    true
}

impl QuadraticField {
    pub fn new(m: u64) -> Result<Self> {
        if !is_squarefree(m) {
            return Err(Error::InvalidField(m));
        }
        Ok(QuadraticField { m })
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    /// 2 when `m = 3 (mod 4)`, else 1.
    pub fn s(&self) -> u32 {
        if self.m % 4 == 3 {
            2
        } else {
            1
        }
    }

    fn m_big(&self) -> BigInt {
        BigInt::from(self.m)
    }

    /// `(1 + m) / 4`, the constant in `w^2 = w - (1 + m)/4`; only for `s = 2`.
    fn omega_shift(&self) -> BigInt {
        BigInt::from((1 + self.m) / 4)
    }

    pub fn mul(&self, z: &RingElement, w: &RingElement) -> RingElement {
        let (a, b, c, d) = (&z.u1, &z.u2, &w.u1, &w.u2);
        let bd = b * d;
        if self.s() == 2 {
            RingElement {
                u1: a * c - &bd * self.omega_shift(),
                u2: a * d + b * c + bd,
            }
        } else {
            RingElement {
                u1: a * c - bd * self.m_big(),
                u2: a * d + b * c,
            }
        }
    }

    pub fn pow(&self, z: &RingElement, e: usize) -> RingElement {
        let mut acc = RingElement::one();
        for _ in 0..e {
            acc = self.mul(&acc, z);
        }
        acc
    }

    /// `|z|^2`, always a nonnegative integer.
    pub fn norm(&self, z: &RingElement) -> BigInt {
        let (a, b) = (&z.u1, &z.u2);
        if self.s() == 2 {
            a * a + a * b + b * b * self.omega_shift()
        } else {
            a * a + b * b * self.m_big()
        }
    }

    /// Exact `F(x, y)` in the ring.
    pub fn evaluate(&self, form: &BinaryForm, x: &RingElement, y: &RingElement) -> RingElement {
        let n = form.degree();
        let mut x_pows = Vec::with_capacity(n + 1);
        let mut y_pows = Vec::with_capacity(n + 1);
        x_pows.push(RingElement::one());
        y_pows.push(RingElement::one());
        for k in 1..=n {
            x_pows.push(self.mul(&x_pows[k - 1], x));
            y_pows.push(self.mul(&y_pows[k - 1], y));
        }
        let mut acc = RingElement::zero();
        for (k, c) in form.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = self.mul(&x_pows[k], &y_pows[n - k]).scale(c);
            acc = &acc + &term;
        }
        acc
    }

    /// `norm(F(x, y))`, i.e. `|F(x, y)|^2`.
    pub fn value_norm(&self, form: &BinaryForm, x: &RingElement, y: &RingElement) -> BigInt {
        self.norm(&self.evaluate(form, x, y))
    }

    /// Splits `(x, y)` into the real-part pair
    /// `(s x1 + (s-1) x2, s y1 + (s-1) y2)` and the imaginary-part pair `(x2, y2)`.
    pub fn split_coordinates(
        &self,
        x: &RingElement,
        y: &RingElement,
    ) -> (IntegerPair, IntegerPair) {
        let s = BigInt::from(self.s());
        let t = BigInt::from(self.s() - 1);
        (
            IntegerPair {
                a: &s * &x.u1 + &t * &x.u2,
                b: &s * &y.u1 + &t * &y.u2,
            },
            IntegerPair {
                a: x.u2.clone(),
                b: y.u2.clone(),
            },
        )
    }

    /// Inverse of [`split_coordinates`](Self::split_coordinates) for one
    /// element: given `a = s u1 + (s-1) u2` and `u2`, returns the element when
    /// `u1` is integral.
    pub fn reconstruct(&self, a: &BigInt, u2: &BigInt) -> Option<RingElement> {
        if self.s() == 2 {
            let d = a - u2;
            if d.bit(0) {
                return None;
            }
            Some(RingElement {
                u1: d >> 1,
                u2: u2.clone(),
            })
        } else {
            Some(RingElement {
                u1: a.clone(),
                u2: u2.clone(),
            })
        }
    }

    /// Real and imaginary parts of `z` as floats (diagnostics only).
    pub fn to_complex_f64(&self, z: &RingElement) -> (f64, f64) {
        let u1 = big_to_f64(&z.u1);
        let u2 = big_to_f64(&z.u2);
        let sq = (self.m as f64).sqrt();
        if self.s() == 2 {
            (u1 + u2 / 2.0, u2 * sq / 2.0)
        } else {
            (u1, u2 * sq)
        }
    }
}

fn big_to_f64(v: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    v.to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for QuadraticField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i sqrt({}))", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(a: i64, b: i64) -> RingElement {
        RingElement::new(a, b)
    }

    #[test]
    fn field_parameters() {
        assert_eq!(QuadraticField::new(3).unwrap().s(), 2);
        assert_eq!(QuadraticField::new(7).unwrap().s(), 2);
        assert_eq!(QuadraticField::new(1).unwrap().s(), 1);
        assert_eq!(QuadraticField::new(2).unwrap().s(), 1);
        assert_eq!(QuadraticField::new(5).unwrap().s(), 1);
        assert_eq!(QuadraticField::new(4), Err(Error::InvalidField(4)));
        assert_eq!(QuadraticField::new(0), Err(Error::InvalidField(0)));
        assert!(QuadraticField::new(18).is_err());
        assert!(QuadraticField::new(163).is_ok());
    }

    #[test]
    fn multiplication_examples() {
        let k3 = QuadraticField::new(3).unwrap();
        assert_eq!(k3.mul(&el(0, 1), &el(0, 1)), el(-1, 1));
        let k1 = QuadraticField::new(1).unwrap();
        assert_eq!(k1.mul(&el(0, 1), &el(0, 1)), el(-1, 0));
        for k in [k1, k3, QuadraticField::new(2).unwrap()] {
            assert_eq!(k.mul(&el(1, 0), &el(5, -7)), el(5, -7));
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(QuadraticField::new(3).unwrap().norm(&el(0, 1)), 1.into());
        assert_eq!(QuadraticField::new(2).unwrap().norm(&el(3, 1)), 11.into());
        assert_eq!(QuadraticField::new(7).unwrap().norm(&el(0, 0)), 0.into());
    }

    #[test]
    fn evaluation_examples() {
        let f = BinaryForm::from_i64(&[0, -4, 0, 1]);
        let k3 = QuadraticField::new(3).unwrap();
        let v = k3.evaluate(&f, &el(0, 1), &el(0, 0));
        assert_eq!(v, el(-1, 0));
        assert_eq!(k3.norm(&v), 1.into());
        assert_eq!(k3.evaluate(&f, &el(4, 0), &el(2, 0)), el(0, 0));
        for m in [1, 2, 3, 7] {
            let k = QuadraticField::new(m).unwrap();
            assert_eq!(k.evaluate(&f, &el(1, 0), &el(0, 0)), el(1, 0));
        }
    }

    #[test]
    fn split_examples() {
        let k3 = QuadraticField::new(3).unwrap();
        let k1 = QuadraticField::new(1).unwrap();
        assert_eq!(
            k3.split_coordinates(&el(0, 1), &el(0, 0)),
            (IntegerPair::new(1, 0), IntegerPair::new(1, 0))
        );
        assert_eq!(
            k1.split_coordinates(&el(3, 2), &el(1, 5)),
            (IntegerPair::new(3, 1), IntegerPair::new(2, 5))
        );
        assert_eq!(
            k3.split_coordinates(&el(4, 0), &el(2, 0)),
            (IntegerPair::new(8, 4), IntegerPair::new(0, 0))
        );
    }

    #[test]
    fn reconstruct_inverts_split() {
        let k3 = QuadraticField::new(3).unwrap();
        assert_eq!(k3.reconstruct(&(-3).into(), &1.into()), Some(el(-2, 1)));
        assert_eq!(k3.reconstruct(&2.into(), &1.into()), None);
        assert_eq!(k3.reconstruct(&(-2).into(), &0.into()), Some(el(-1, 0)));
    }

    fn product_of_betas(
        k: &QuadraticField,
        f: &BinaryForm,
        x: &RingElement,
        y: &RingElement,
    ) -> (f64, f64) {
        // roots of x^3 - 3x - 1 in closed form: 2 cos(2 pi j / 9 + ...)
        let roots: Vec<f64> = (0..3)
            .map(|j| 2.0 * ((std::f64::consts::PI * (1.0 + 6.0 * j as f64)) / 9.0).cos())
            .collect();
        for r in &roots {
            assert!((r.powi(3) - 3.0 * r - 1.0).abs() < 1e-12);
        }
        assert_eq!(f.coeffs().len(), 4);
        let (xr, xi) = k.to_complex_f64(x);
        let (yr, yi) = k.to_complex_f64(y);
        let mut acc = (1.0f64, 0.0f64);
        for r in roots {
            let b = (xr - r * yr, xi - r * yi);
            acc = (acc.0 * b.0 - acc.1 * b.1, acc.0 * b.1 + acc.1 * b.0);
        }
        acc
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(m in prop::sample::select(vec![1u64, 2, 3, 5, 7, 11, 163]),
                                  a in -1000i64..1000, b in -1000i64..1000,
                                  c in -1000i64..1000, d in -1000i64..1000) {
            let k = QuadraticField::new(m).unwrap();
            let (z, w) = (el(a, b), el(c, d));
            prop_assert_eq!(k.norm(&k.mul(&z, &w)), k.norm(&z) * k.norm(&w));
            prop_assert_eq!(k.norm(&z).is_zero(), z.is_zero());
        }

        #[test]
        fn rational_coordinates_reduce_to_integer_evaluation(m in prop::sample::select(vec![1u64, 2, 5]),
                                                             a in -30i64..30, b in -30i64..30) {
            let k = QuadraticField::new(m).unwrap();
            let f = BinaryForm::from_i64(&[-1, -3, 0, 1]);
            let v = k.evaluate(&f, &el(a, 0), &el(b, 0));
            prop_assert_eq!(v, RingElement::from(f.evaluate_int(&IntegerPair::new(a, b))));
        }

        #[test]
        fn beta_product_matches_ring_evaluation(m in prop::sample::select(vec![1u64, 2, 3, 7]),
                                                a in -6i64..6, b in -6i64..6, c in -6i64..6, d in -6i64..6) {
            let k = QuadraticField::new(m).unwrap();
            let f = BinaryForm::from_i64(&[-1, -3, 0, 1]);
            let (x, y) = (el(a, b), el(c, d));
            let exact = k.to_complex_f64(&k.evaluate(&f, &x, &y));
            let approx = product_of_betas(&k, &f, &x, &y);
            let scale = 1.0 + exact.0.abs() + exact.1.abs();
            prop_assert!((exact.0 - approx.0).abs() < 1e-9 * scale);
            prop_assert!((exact.1 - approx.1).abs() < 1e-9 * scale);
        }
    }
}
