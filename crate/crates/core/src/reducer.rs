//! Reduction of `|F(x, y)| <= K` over the ring of integers to absolute Thue
//! problems over Z.
//!
//! Write `a = s x1 + (s-1) x2`, `b = s y1 + (s-1) y2` and `k1 = F(x2, y2)`.
//! Every solution has `|k1| <= s^n K / sqrt(m)^n`.
//!
//! * Case A (`k1 = 0`): `(x2, y2)` lies on a line `x2 = r y2` through an
//!   integer root `r` of `f` (or is `(0, 0)`), and `|F(a, b)| <= s^n K`.
//! * Case B (`k1 != 0`): `|k1 k2| <= s^(2n) K^2 / (2^n sqrt(m)^n)` with
//!   `k2 = F(a, b)`.
//!
//! In both cases `(x1, y1)` is recovered from `(a, b)` and `(x2, y2)` when
//! the division by `s` is exact, and each candidate is verified exactly.
//! All absolute enumeration is truncated at the caller's height bound.

use crate::abssolver::{AbsSolutionSet, AbsSolver};
use crate::error::Result;
use crate::exact;
use crate::forms::{BinaryForm, IntegerPair};
use crate::numfmt;
use crate::quadfield::{QuadraticField, RingElement};
use crate::rootbounds::{constants, validate_epsilon, validate_k, TheoremConstants};
use crate::theorem::{self, TheoremReport};
use log::debug;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// The integers `k1` with `|k1| <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K1Range {
    #[serde(with = "numfmt::int")]
    pub bound: BigInt,
}

impl K1Range {
    pub fn contains(&self, k: &BigInt) -> bool {
        k.abs() <= self.bound
    }

    pub fn values(&self) -> Vec<BigInt> {
        let mut out = Vec::new();
        let mut k = -self.bound.clone();
        while k <= self.bound {
            out.push(k.clone());
            k += 1;
        }
        out
    }

    pub fn is_zero_only(&self) -> bool {
        self.bound.is_zero()
    }
}

/// All `k1` with `k1^2 m^n <= s^(2n) K^2`.
pub fn k1_range(field: &QuadraticField, form: &BinaryForm, k: &BigRational) -> K1Range {
    let n = form.degree() as u32;
    let s2n = BigRational::from_integer(BigInt::from(field.s()).pow(2 * n));
    let mn = BigRational::from_integer(BigInt::from(field.m()).pow(n));
    K1Range {
        bound: exact::isqrt_floor(&(s2n * k * k / mn)),
    }
}

/// Largest `|k2|` with `k1^2 k2^2 2^(2n) m^n <= s^(4n) K^4`.
pub fn k2_bound(field: &QuadraticField, n: u32, k: &BigRational, k1: &BigInt) -> BigInt {
    let s4n = BigRational::from_integer(BigInt::from(field.s()).pow(4 * n));
    let k2 = k * k;
    let denom = BigInt::from(2).pow(2 * n) * BigInt::from(field.m()).pow(n) * k1 * k1;
    exact::isqrt_floor(&(s4n * &k2 * &k2 / BigRational::from_integer(denom)))
}

/// `x = r y` for all `y`, a line of zeros of `F` when `r` is an integer root.
/// The family is `base + Z step[0] + Z step[1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroFamily {
    #[serde(with = "numfmt::int")]
    pub root: BigInt,
    pub base: (RingElement, RingElement),
    pub steps: Vec<(RingElement, RingElement)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeSolution {
    pub x: RingElement,
    pub y: RingElement,
    /// `|F(x, y)|^2`.
    #[serde(with = "numfmt::int")]
    pub norm: BigInt,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelativeSolutionSet {
    pub field: QuadraticField,
    pub form: BinaryForm,
    #[serde(with = "numfmt::rational")]
    pub k: BigRational,
    #[serde(with = "numfmt::rational")]
    pub epsilon: BigRational,
    pub search_height: u64,
    pub k1_range: K1Range,
    /// Whether the trivial-zero-set shortcut (`x2 = y2 = 0`) was taken.
    pub over_z_path: bool,
    /// Nonzero `k1` in range with no `(x2, y2)` inside the height bound.
    #[serde(with = "numfmt::int_vec")]
    pub unrealized_k1: Vec<BigInt>,
    /// Sorted by `(norm(y), y1, y2, x1, x2)`.
    pub solutions: Vec<RelativeSolution>,
    pub families: Vec<ZeroFamily>,
}

impl RelativeSolutionSet {
    /// Solutions whose report fails an applicable conclusion, with the names
    /// of the failing checks.
    pub fn violations(&self) -> Vec<(usize, Vec<&'static str>)> {
        self.solutions
            .iter()
            .enumerate()
            .filter_map(|(i, s)| {
                let v = s.report.violations();
                (!v.is_empty()).then_some((i, v))
            })
            .collect()
    }

    pub fn quadruples(&self) -> Vec<[BigInt; 4]> {
        self.solutions
            .iter()
            .map(|s| {
                [
                    s.x.u1.clone(),
                    s.x.u2.clone(),
                    s.y.u1.clone(),
                    s.y.u2.clone(),
                ]
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Height bound for every absolute enumeration (`|b|` and `|y2|`).
    pub height: u64,
    /// Solve directly over Z when `k1 = 0` is forced and `F` has no
    /// nontrivial integer zeros.
    pub over_z_fast_path: bool,
}

impl SolveOptions {
    pub fn new(height: u64) -> Self {
        SolveOptions {
            height,
            over_z_fast_path: true,
        }
    }
}

/// Smallest height whose search covers every `y` with `|y1|, |y2| <= box_height`.
pub fn covering_height(field: &QuadraticField, box_height: u64) -> u64 {
    (2 * field.s() as u64 - 1) * box_height
}

pub type Candidate = (RingElement, RingElement);

/// Sort key `(norm(y), y1, y2, x1, x2)` shared with the oracle.
pub fn solution_order(
    field: &QuadraticField,
    x: &RingElement,
    y: &RingElement,
) -> (BigInt, BigInt, BigInt, BigInt, BigInt) {
    (
        field.norm(y),
        y.u1.clone(),
        y.u2.clone(),
        x.u1.clone(),
        x.u2.clone(),
    )
}

#[derive(Debug, Clone)]
pub struct Reducer {
    field: QuadraticField,
    form: BinaryForm,
    k: BigRational,
    consts: TheoremConstants,
    abs: AbsSolver,
    integer_roots: Vec<BigInt>,
}

impl Reducer {
    pub fn new(
        field: QuadraticField,
        form: BinaryForm,
        k: BigRational,
        epsilon: BigRational,
    ) -> Result<Self> {
        validate_k(&k)?;
        validate_epsilon(&epsilon)?;
        let abs = AbsSolver::new(&form)?;
        let consts = constants(abs.roots(), &k, &epsilon)?;
        let integer_roots = form.integer_roots()?;
        Ok(Reducer {
            field,
            form,
            k,
            consts,
            abs,
            integer_roots,
        })
    }

    pub fn field(&self) -> &QuadraticField {
        &self.field
    }

    pub fn form(&self) -> &BinaryForm {
        &self.form
    }

    pub fn constants(&self) -> &TheoremConstants {
        &self.consts
    }

    pub fn abs_solver(&self) -> &AbsSolver {
        &self.abs
    }

    pub fn integer_roots(&self) -> &[BigInt] {
        &self.integer_roots
    }

    pub fn k1_range(&self) -> K1Range {
        k1_range(&self.field, &self.form, &self.k)
    }

    /// `s^n K`, the bound on `|F(a, b)|`.
    fn real_pair_bound(&self) -> BigRational {
        let n = self.form.degree() as u32;
        BigRational::from_integer(BigInt::from(self.field.s()).pow(n)) * &self.k
    }

    /// Exact test of `|F(x, y)|^2 <= K^2`.
    pub fn is_solution(&self, x: &RingElement, y: &RingElement) -> bool {
        let norm = BigRational::from_integer(self.field.value_norm(&self.form, x, y));
        norm <= &self.k * &self.k
    }

    /// Integer zeros `(x2, y2)` of `F` with `|y2| <= height`.
    pub fn zero_set(&self, height: u64) -> Vec<IntegerPair> {
        let mut out = BTreeSet::new();
        out.insert(IntegerPair::new(0, 0));
        for r in &self.integer_roots {
            for t in 1..=height {
                for t in [BigInt::from(t), -BigInt::from(t)] {
                    out.insert(IntegerPair { a: r * &t, b: t });
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn families(&self) -> Vec<ZeroFamily> {
        let omega = RingElement::new(0, 1);
        self.integer_roots
            .iter()
            .map(|r| ZeroFamily {
                root: r.clone(),
                base: (RingElement::zero(), RingElement::zero()),
                steps: vec![
                    (RingElement::from(r.clone()), RingElement::one()),
                    (omega.scale(r), omega.clone()),
                ],
            })
            .collect()
    }

    /// Combine imaginary pairs with real pairs, keeping exact solutions.
    fn combine(&self, imag: &[IntegerPair], real: &AbsSolutionSet) -> Vec<Candidate> {
        // group real pairs by parity so only compatible ones are tried
        let s2 = self.field.s() == 2;
        let parity = |p: &IntegerPair| -> (bool, bool) {
            if s2 {
                (p.a.bit(0), p.b.bit(0))
            } else {
                (false, false)
            }
        };
        let mut by_parity: HashMap<(bool, bool), Vec<&IntegerPair>> = HashMap::new();
        for p in real.pairs() {
            by_parity.entry(parity(p)).or_default().push(p);
        }
        imag.par_iter()
            .flat_map_iter(|z| {
                let bucket = by_parity.get(&parity(z)).cloned().unwrap_or_default();
                bucket.into_iter().filter_map(move |ab| {
                    let x = self.field.reconstruct(&ab.a, &z.a)?;
                    let y = self.field.reconstruct(&ab.b, &z.b)?;
                    self.is_solution(&x, &y).then_some((x, y))
                })
            })
            .collect()
    }

    /// Solutions with `F(x2, y2) = 0`.
    pub fn case_a(&self, height: u64) -> Result<Vec<Candidate>> {
        let zeros = self.zero_set(height);
        let real = self.abs.solve(&self.real_pair_bound(), height)?;
        Ok(self.combine(&zeros, &real))
    }

    /// Solutions with `F(x2, y2) != 0`, plus the nonzero `k1` left unrealized.
    pub fn case_b(&self, height: u64) -> Result<(Vec<Candidate>, Vec<BigInt>)> {
        let range = self.k1_range();
        if range.is_zero_only() {
            return Ok((Vec::new(), Vec::new()));
        }
        let n = self.form.degree() as u32;
        let imag_all = self
            .abs
            .solve(&BigRational::from_integer(range.bound.clone()), height)?;
        let mut by_k1: BTreeMap<BigInt, Vec<IntegerPair>> = BTreeMap::new();
        for s in &imag_all.solutions {
            if !s.value.is_zero() {
                by_k1
                    .entry(s.value.clone())
                    .or_default()
                    .push(s.pair.clone());
            }
        }
        let mut unrealized = Vec::new();
        let mut real_cache: HashMap<BigInt, AbsSolutionSet> = HashMap::new();
        let mut out = Vec::new();
        for k1 in range.values().into_iter().filter(|k| !k.is_zero()) {
            let Some(imag) = by_k1.get(&k1) else {
                debug!("k1 = {k1} has no (x2, y2) with |y2| <= {height}; skipped");
                unrealized.push(k1);
                continue;
            };
            let k2max = k2_bound(&self.field, n, &self.k, &k1);
            if !real_cache.contains_key(&k2max) {
                let set = self
                    .abs
                    .solve(&BigRational::from_integer(k2max.clone()), height)?;
                real_cache.insert(k2max.clone(), set);
            }
            out.extend(self.combine(imag, &real_cache[&k2max]));
        }
        Ok((out, unrealized))
    }

    /// `x2 = y2 = 0` forced: the problem is `|F(x1, y1)| <= K` over Z.
    fn solve_over_z(&self, height: u64) -> Result<Vec<Candidate>> {
        let set = self.abs.solve(&self.k, height)?;
        Ok(set
            .pairs()
            .map(|p| {
                (
                    RingElement::from(p.a.clone()),
                    RingElement::from(p.b.clone()),
                )
            })
            .filter(|(x, y)| self.is_solution(x, y))
            .collect())
    }

    pub fn solve(&self, opts: SolveOptions) -> Result<RelativeSolutionSet> {
        let range = self.k1_range();
        let fast = opts.over_z_fast_path && range.is_zero_only() && self.integer_roots.is_empty();
        let (mut candidates, unrealized) = if fast {
            (self.solve_over_z(opts.height)?, Vec::new())
        } else {
            let mut a = self.case_a(opts.height)?;
            let (b, unrealized) = self.case_b(opts.height)?;
            a.extend(b);
            (a, unrealized)
        };
        candidates.sort_by_cached_key(|(x, y)| solution_order(&self.field, x, y));
        candidates.dedup();
        let solutions: Vec<RelativeSolution> = candidates
            .into_par_iter()
            .map(|(x, y)| RelativeSolution {
                norm: self.field.value_norm(&self.form, &x, &y),
                report: theorem::report(&self.field, &self.form, &self.consts, &x, &y),
                x,
                y,
            })
            .collect();
        Ok(RelativeSolutionSet {
            field: self.field,
            form: self.form.clone(),
            k: self.k.clone(),
            epsilon: self.consts.epsilon.clone(),
            search_height: opts.height,
            k1_range: range,
            over_z_path: fast,
            unrealized_k1: unrealized,
            solutions,
            families: self.families(),
        })
    }
}

/// Solves `|F(x, y)| <= K` with every absolute search truncated at `height`.
pub fn solve_relative(
    field: &QuadraticField,
    form: &BinaryForm,
    k: &BigRational,
    epsilon: &BigRational,
    height: u64,
) -> Result<RelativeSolutionSet> {
    Reducer::new(*field, form.clone(), k.clone(), epsilon.clone())?.solve(SolveOptions::new(height))
}
