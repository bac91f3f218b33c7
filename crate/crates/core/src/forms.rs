//! Integer binary forms `F(x, y) = sum c_k x^k y^(n-k)`.

use crate::error::{Error, Inadmissible, Result};
use crate::numfmt;
use crate::poly::{self, SturmChain};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Binary form with ascending coefficients: `coeffs[k]` multiplies
/// `x^k y^(n-k)`, so `coeffs` is also the coefficient list of `f(x) = F(x, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryForm {
    #[serde(with = "numfmt::int_vec")]
    coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntegerPair {
    #[serde(with = "numfmt::int")]
    pub a: BigInt,
    #[serde(with = "numfmt::int")]
    pub b: BigInt,
}

impl IntegerPair {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        IntegerPair {
            a: a.into(),
            b: b.into(),
        }
    }
}

impl fmt::Display for IntegerPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl BinaryForm {
    /// Builds a form from ascending coefficients. Trailing zeros are kept, so
    /// `[.., 0]` is a non-monic form rather than a lower-degree one.
    pub fn new(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::parse("coeffs", "need at least two coefficients"));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        BinaryForm::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
            .expect("at least two coefficients")
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Exact `F(a, b)`.
    pub fn evaluate_int(&self, p: &IntegerPair) -> BigInt {
        self.eval(&p.a, &p.b)
    }

    pub fn eval(&self, a: &BigInt, b: &BigInt) -> BigInt {
        // Horner in x with y-powers carried alongside
        let mut acc = BigInt::zero();
        let mut b_pow = BigInt::one();
        for (i, c) in self.coeffs.iter().rev().enumerate() {
            if i == 0 {
                acc = c.clone();
            } else {
                b_pow *= b;
                acc = acc * a + c * &b_pow;
            }
        }
        acc
    }

    /// Monic, degree at least 3, squarefree, all roots real.
    pub fn check_admissible(&self) -> Result<(), Inadmissible> {
        let n = self.degree();
        if n < 3 {
            return Err(Inadmissible::DegreeTooSmall(n));
        }
        if !self.coeffs[n].is_one() {
            return Err(Inadmissible::NonMonic(self.coeffs[n].clone()));
        }
        let df = poly::derivative(&self.coeffs);
        if poly::gcd_degree(&self.coeffs, &df) != Some(0) {
            return Err(Inadmissible::RepeatedRoot);
        }
        let real = SturmChain::new(&self.coeffs).count_real();
        if real != n {
            return Err(Inadmissible::ComplexRoots { real, degree: n });
        }
        Ok(())
    }

    /// Integer roots `r` of `f`, ascending. For monic `f` these are all the
    /// rational roots, so the nontrivial integer zeros of `F` are `(r t, t)`.
    pub fn integer_roots(&self) -> Result<Vec<BigInt>> {
        self.check_admissible()?;
        let roots = poly::isolate(&self.coeffs);
        Ok(poly::integer_roots(&self.coeffs, &roots))
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for k in (0..=n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut mono = String::new();
            match k {
                0 => {}
                1 => mono.push('x'),
                _ => mono.push_str(&format!("x^{k}")),
            }
            match n - k {
                0 => {}
                1 => mono.push('y'),
                e => mono.push_str(&format!("y^{e}")),
            }
            if mono.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{mono}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
