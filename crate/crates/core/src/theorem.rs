//! Necessary conditions satisfied by every solution of `|F(x, y)| <= K` in
//! the ring of integers, written as exact predicates.
//!
//! With `a = s x1 + (s-1) x2`, `b = s y1 + (s-1) y2` every solution obeys
//!
//! ```text
//! |F(a, b)| <= s^n K
//! |F(x2, y2)| <= s^n K / sqrt(m)^n
//! |F(a, b)| |F(x2, y2)| <= s^(2n) K^2 / (2^n sqrt(m)^n)
//! ```
//!
//! and, once `|y|` passes the corresponding threshold, `x2 y1 = x1 y2`
//! (`x12`), `b = 0 => a = 0` (`i1`) and `y2 = 0 => x2 = 0` (`i2`).
//! All comparisons are squared so `sqrt(m)` never has to be evaluated.

use crate::exact;
use crate::forms::BinaryForm;
use crate::interval::Interval;
use crate::numfmt;
use crate::quadfield::{QuadraticField, RingElement};
use crate::rootbounds::{RootData, TheoremConstants};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// One exact inequality `lhs <= rhs`; `value` is the form value it is built from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    #[serde(with = "numfmt::int")]
    pub value: BigInt,
    #[serde(with = "numfmt::rational")]
    pub lhs: BigRational,
    #[serde(with = "numfmt::rational")]
    pub rhs: BigRational,
    pub pass: bool,
}

impl BoundCheck {
    fn new(value: BigInt, lhs: BigRational, rhs: BigRational) -> Self {
        let pass = lhs <= rhs;
        BoundCheck {
            value,
            lhs,
            rhs,
            pass,
        }
    }
}

/// A threshold-gated implication. `holds` is the conclusion evaluated
/// regardless of applicability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gated {
    pub applicable: bool,
    pub holds: bool,
}

impl Gated {
    pub fn violated(&self) -> bool {
        self.applicable && !self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub ineq_a_real: BoundCheck,
    pub ineq_a_imag: BoundCheck,
    pub ineq_aa: BoundCheck,
    pub x12: Gated,
    pub i1: Gated,
    pub i2: Gated,
}

impl TheoremReport {
    /// Names of the conclusions that fail; empty for every genuine solution.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.ineq_a_real.pass {
            out.push("a-real");
        }
        if !self.ineq_a_imag.pass {
            out.push("a-imag");
        }
        if !self.ineq_aa.pass {
            out.push("aa");
        }
        if self.x12.violated() {
            out.push("x12");
        }
        if self.i1.violated() {
            out.push("I1");
        }
        if self.i2.violated() {
            out.push("I2");
        }
        out
    }

    pub fn is_consistent(&self) -> bool {
        self.violations().is_empty()
    }
}

fn rat(v: BigInt) -> BigRational {
    BigRational::from_integer(v)
}

fn pow_int(base: u64, e: usize) -> BigInt {
    BigInt::from(base).pow(e as u32)
}

/// `|F(a, b)| <= s^n K` and `|F(x2, y2)| <= s^n K / sqrt(m)^n`.
pub fn check_a(
    field: &QuadraticField,
    form: &BinaryForm,
    x: &RingElement,
    y: &RingElement,
    k: &BigRational,
) -> (BoundCheck, BoundCheck) {
    let n = form.degree();
    let (re, im) = field.split_coordinates(x, y);
    let fr = form.evaluate_int(&re);
    let fi = form.evaluate_int(&im);
    let rhs = rat(pow_int(field.s() as u64, 2 * n)) * k * k;
    let real = BoundCheck::new(fr.clone(), rat(&fr * &fr), rhs.clone());
    let imag = BoundCheck::new(fi.clone(), rat(&fi * &fi * pow_int(field.m(), n)), rhs);
    (real, imag)
}

/// `|F(a, b)| |F(x2, y2)| <= s^(2n) K^2 / (2^n sqrt(m)^n)`, squared.
pub fn check_aa(
    field: &QuadraticField,
    form: &BinaryForm,
    x: &RingElement,
    y: &RingElement,
    k: &BigRational,
) -> BoundCheck {
    let n = form.degree();
    let (re, im) = field.split_coordinates(x, y);
    let prod = form.evaluate_int(&re) * form.evaluate_int(&im);
    let lhs = rat(&prod * &prod * pow_int(2, 2 * n) * pow_int(field.m(), n));
    let k2 = k * k;
    let rhs = rat(pow_int(field.s() as u64, 4 * n)) * &k2 * &k2;
    BoundCheck::new(prod, lhs, rhs)
}

pub fn check_x12(
    field: &QuadraticField,
    consts: &TheoremConstants,
    x: &RingElement,
    y: &RingElement,
) -> Gated {
    Gated {
        applicable: consts.x12_gate(field, &field.norm(y)),
        holds: &x.u2 * &y.u1 == &x.u1 * &y.u2,
    }
}

pub fn check_i1(
    field: &QuadraticField,
    consts: &TheoremConstants,
    x: &RingElement,
    y: &RingElement,
) -> Gated {
    let (re, _) = field.split_coordinates(x, y);
    Gated {
        applicable: re.b.is_zero() && consts.i1_gate(field, &field.norm(y)),
        holds: re.a.is_zero(),
    }
}

pub fn check_i2(
    field: &QuadraticField,
    consts: &TheoremConstants,
    x: &RingElement,
    y: &RingElement,
) -> Gated {
    Gated {
        applicable: y.u2.is_zero() && consts.i2_gate(field, &field.norm(y)),
        holds: x.u2.is_zero(),
    }
}

/// All five conclusions for one pair.
pub fn report(
    field: &QuadraticField,
    form: &BinaryForm,
    consts: &TheoremConstants,
    x: &RingElement,
    y: &RingElement,
) -> TheoremReport {
    let (ineq_a_real, ineq_a_imag) = check_a(field, form, x, y, &consts.k);
    TheoremReport {
        ineq_a_real,
        ineq_a_imag,
        ineq_aa: check_aa(field, form, x, y, &consts.k),
        x12: check_x12(field, consts, x, y),
        i1: check_i1(field, consts, x, y),
        i2: check_i2(field, consts, x, y),
    }
}

/// Enclosure of `beta_j = x - alpha_j y`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaEnclosure {
    pub re: Interval,
    pub im: Interval,
    pub abs_sq: Interval,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormProfile {
    pub betas: Vec<BetaEnclosure>,
    /// Index with the smallest enclosed `|beta_j|` (smallest upper bound,
    /// ties to the lowest index).
    pub i0: usize,
    /// True when the enclosures prove `|beta_i0| <= |beta_j|` for every `j`.
    pub i0_certified: bool,
    /// Certified `|y| >= G`.
    pub y_at_least_g: bool,
    /// `C^2 / |y|^(2(n-1))`, the squared bound on the smallest `|beta_j|`
    /// for solutions with `|y| >= G`.
    #[serde(with = "numfmt::opt_rational")]
    pub min_beta_bound_sq: Option<BigRational>,
    /// Whether the enclosures are compatible with that bound.
    pub min_beta_bound_holds: Option<bool>,
}

/// Enclosures of the linear factors `x - alpha_j y` of `F(x, y)`.
///
/// `bits` controls the dyadic precision of `sqrt(m)`; the roots are used at
/// whatever width `roots` carries.
pub fn beta_profile(
    roots: &RootData,
    consts: &TheoremConstants,
    field: &QuadraticField,
    x: &RingElement,
    y: &RingElement,
    bits: u32,
) -> LinearFormProfile {
    let (re_pair, im_pair) = field.split_coordinates(x, y);
    let inv_s = BigRational::new(BigInt::one(), BigInt::from(field.s()));
    let m = rat(BigInt::from(field.m()));
    let sqrt_m = Interval::new(
        exact::nth_root_lower(&m, 2, bits),
        exact::nth_root_upper(&m, 2, bits),
    );
    let im_scale = sqrt_m.scale(&inv_s);

    let betas: Vec<BetaEnclosure> = roots
        .intervals
        .iter()
        .map(|root| {
            let (lo, hi) = root.scaled(&re_pair.b);
            let re =
                (&Interval::point(rat(re_pair.a.clone())) - &Interval::new(lo, hi)).scale(&inv_s);
            let (lo, hi) = root.scaled(&im_pair.b);
            let im_lin = &Interval::point(rat(im_pair.a.clone())) - &Interval::new(lo, hi);
            let im = &im_lin * &im_scale;
            let abs_sq = &re.square() + &im.square();
            BetaEnclosure { re, im, abs_sq }
        })
        .collect();

    let mut i0 = 0;
    for (j, b) in betas.iter().enumerate().skip(1) {
        if b.abs_sq.hi < betas[i0].abs_sq.hi {
            i0 = j;
        }
    }
    let i0_certified = betas
        .iter()
        .enumerate()
        .all(|(j, b)| j == i0 || betas[i0].abs_sq.hi <= b.abs_sq.lo);

    let norm_y = field.norm(y);
    let y_at_least_g = !norm_y.is_zero() && consts.at_least_g(&norm_y);
    let (min_beta_bound_sq, min_beta_bound_holds) = if y_at_least_g {
        let bound = &consts.c_upper * &consts.c_upper / rat(norm_y.pow(consts.degree - 1));
        let smallest = betas.iter().map(|b| &b.abs_sq.lo).min().unwrap();
        let holds = smallest <= &bound;
        (Some(bound), Some(holds))
    } else {
        (None, None)
    };

    LinearFormProfile {
        betas,
        i0,
        i0_certified,
        y_at_least_g,
        min_beta_bound_sq,
        min_beta_bound_holds,
    }
}
