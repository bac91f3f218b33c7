//! Height-bounded enumeration of the absolute Thue inequality
//! `|F(a, b)| <= K'` over `Z^2`.
//!
//! For `b != 0` let `i` minimise `|a - alpha_i b|`. Then
//! `|a - alpha_i b| <= K'^(1/n)`, and since `|a - alpha_j b| >= |alpha_j - alpha_i| |b| / 2`
//! for `j != i`,
//!
//! ```text
//! |a - alpha_i b| <= 2^(n-1) K' / (|b|^(n-1) prod_{j != i} |alpha_j - alpha_i|)
//! ```
//!
//! so every solution lies in a window around some `alpha_i b` whose radius
//! is the smaller of the two bounds. Windows are computed from certified root
//! enclosures and every candidate is checked by exact evaluation, so the
//! result is exactly the solution set with `|b| <= height`.

use crate::error::{Error, Result};
use crate::exact;
use crate::forms::{BinaryForm, IntegerPair};
use crate::numfmt;
use crate::rootbounds::{default_width, isolate_roots, RootData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsSolution {
    pub pair: IntegerPair,
    #[serde(with = "numfmt::int")]
    pub value: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsSolutionSet {
    #[serde(with = "numfmt::rational")]
    pub bound: BigRational,
    pub height: u64,
    /// Sorted by `(b, a)`.
    pub solutions: Vec<AbsSolution>,
    pub complete_within_height: bool,
}

impl AbsSolutionSet {
    pub fn pairs(&self) -> impl Iterator<Item = &IntegerPair> {
        self.solutions.iter().map(|s| &s.pair)
    }

    /// Solutions with `F(a, b) = k` exactly.
    pub fn with_value(&self, k: &BigInt) -> Vec<IntegerPair> {
        self.solutions
            .iter()
            .filter(|s| &s.value == k)
            .map(|s| s.pair.clone())
            .collect()
    }
}

/// Root data for one form, reusable across many bounds and heights.
#[derive(Debug, Clone)]
pub struct AbsSolver {
    form: BinaryForm,
    roots: RootData,
    /// Lower bounds of `prod_{j != i} |alpha_j - alpha_i|`, per root.
    products: Vec<BigRational>,
}

impl AbsSolver {
    pub fn new(form: &BinaryForm) -> Result<Self> {
        let roots = isolate_roots(form, &default_width())?;
        Ok(AbsSolver::from_roots(roots))
    }

    pub fn from_roots(roots: RootData) -> Self {
        let products = (0..roots.degree())
            .map(|i| roots.root_product_lower(i))
            .collect();
        AbsSolver {
            form: roots.form.clone(),
            roots,
            products,
        }
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn roots(&self) -> &RootData {
        &self.roots
    }

    /// All `(a, b)` with `|F(a, b)| <= kprime` and `|b| <= height`.
    pub fn solve(&self, kprime: &BigRational, height: u64) -> Result<AbsSolutionSet> {
        if kprime.is_negative() {
            return Err(Error::NegativeBound(kprime.clone()));
        }
        let n = self.form.degree() as u32;
        let root_bound = exact::nth_root_upper(kprime, n, 32);
        let h = height as i64;
        let mut solutions: Vec<AbsSolution> = (-h..=h)
            .into_par_iter()
            .flat_map_iter(|b| self.row(&BigInt::from(b), kprime, &root_bound))
            .collect();
        solutions.sort_by(|x, y| (&x.pair.b, &x.pair.a).cmp(&(&y.pair.b, &y.pair.a)));
        Ok(AbsSolutionSet {
            bound: kprime.clone(),
            height,
            solutions,
            complete_within_height: true,
        })
    }

    /// Solutions of `F(a, b) = k` with `|b| <= height`.
    pub fn solve_equation(&self, k: &BigInt, height: u64) -> Result<Vec<IntegerPair>> {
        let set = self.solve(&BigRational::from_integer(k.abs()), height)?;
        Ok(set.with_value(k))
    }

    /// Candidate `a` values for a fixed `b`, before exact filtering.
    pub fn candidates(
        &self,
        b: &BigInt,
        kprime: &BigRational,
        root_bound: &BigRational,
    ) -> BTreeSet<BigInt> {
        let mut out = BTreeSet::new();
        if b.is_zero() {
            // a^n <= K'
            let r = root_bound.floor().to_integer();
            let mut a = -r.clone();
            while a <= r {
                out.insert(a.clone());
                a += 1;
            }
            return out;
        }
        let n = self.form.degree() as u32;
        let b_abs = BigRational::from_integer(b.abs());
        let spread = BigRational::from_integer(BigInt::one() << (n as usize - 1));
        for (iv, prod) in self.roots.intervals.iter().zip(&self.products) {
            let by_separation = &spread * kprime / (exact::pow(&b_abs, n - 1) * prod);
            let radius = if &by_separation < root_bound {
                by_separation
            } else {
                root_bound.clone()
            };
            let (lo, hi) = iv.scaled(b);
            let mut a = (lo - &radius).ceil().to_integer();
            let last = (hi + &radius).floor().to_integer();
            while a <= last {
                out.insert(a.clone());
                a += 1;
            }
        }
        out
    }

    fn row(&self, b: &BigInt, kprime: &BigRational, root_bound: &BigRational) -> Vec<AbsSolution> {
        self.candidates(b, kprime, root_bound)
            .into_iter()
            .filter_map(|a| {
                let value = self.form.eval(&a, b);
                (BigRational::from_integer(value.abs()) <= *kprime).then(|| AbsSolution {
                    pair: IntegerPair { a, b: b.clone() },
                    value,
                })
            })
            .collect()
    }
}

pub fn solve_abs(form: &BinaryForm, kprime: &BigRational, height: u64) -> Result<AbsSolutionSet> {
    AbsSolver::new(form)?.solve(kprime, height)
}

pub fn solve_abs_equation(form: &BinaryForm, k: &BigInt, height: u64) -> Result<Vec<IntegerPair>> {
    AbsSolver::new(form)?.solve_equation(k, height)
}
