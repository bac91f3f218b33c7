//! Univariate polynomial helpers over Z and Q: exact evaluation, Euclidean
//! gcd, Sturm sequences and bisection-based real root isolation.
//!
//! Coefficient vectors are ascending (`c[k]` multiplies `x^k`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

type QPoly = Vec<BigRational>;

fn trim(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn to_q(p: &[BigInt]) -> QPoly {
    let mut q: QPoly = p.iter().cloned().map(BigRational::from_integer).collect();
    trim(&mut q);
    q
}

pub fn derivative(p: &[BigInt]) -> Vec<BigInt> {
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * BigInt::from(k))
        .collect()
}

/// Remainder of `a` divided by `b` over Q. `b` must be nonzero.
fn rem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead = b[db].clone();
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = r.last().unwrap() / &lead;
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] -= &factor * bk;
        }
        r.pop();
        trim(&mut r);
    }
    trim(&mut r);
    r
}

/// Degree of gcd(a, b) over Q; `None` when both are zero.
pub fn gcd_degree(a: &[BigInt], b: &[BigInt]) -> Option<usize> {
    let mut x = to_q(a);
    let mut y = to_q(b);
    while !y.is_empty() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    if x.is_empty() {
        None
    } else {
        Some(x.len() - 1)
    }
}

/// Exact value of an integer polynomial at a rational point.
pub fn eval_rational(p: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

pub fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Sign of `p(x)`, computed on the cleared-denominator numerator.
pub fn sign_at(p: &[BigInt], x: &BigRational) -> Ordering {
    let num = x.numer();
    let den = x.denom();
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    // sum c_k num^k den^(n-k), Horner from the top with running powers of den
    for (i, c) in p.iter().rev().enumerate() {
        if i == 0 {
            acc = c.clone();
        } else {
            den_pow *= den;
            acc = acc * num + c * &den_pow;
        }
    }
    acc.sign_ordering()
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl SignOrdering for BigRational {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigRational::zero())
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Debug, Clone)]
pub struct SturmChain {
    chain: Vec<QPoly>,
}

impl SturmChain {
    pub fn new(p: &[BigInt]) -> Self {
        let p0 = to_q(p);
        let p1 = to_q(&derivative(p));
        let mut chain = vec![p0];
        if !p1.is_empty() {
            chain.push(p1);
        }
        loop {
            let k = chain.len();
            if k < 2 {
                break;
            }
            let r = rem(&chain[k - 2], &chain[k - 1]);
            if r.is_empty() {
                break;
            }
            chain.push(r.into_iter().map(|c| -c).collect());
        }
        SturmChain { chain }
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let mut acc = BigRational::zero();
            for c in p.iter().rev() {
                acc = acc * x + c;
            }
            acc.sign_ordering()
        }))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lead = p.last().unwrap().sign_ordering();
            if positive || (p.len() - 1) % 2 == 0 {
                lead
            } else {
                lead.reverse()
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_real(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// A closed rational interval `[lo, hi]` holding exactly one real root.
///
/// Either `lo == hi` (the root is that rational), or `p(lo)` and `p(hi)` are
/// nonzero with opposite signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isolated {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Isolated {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halve until the width is at most `width`; nested in `self`.
    pub fn refine(&self, p: &[BigInt], width: &BigRational) -> Isolated {
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        if lo == hi {
            return self.clone();
        }
        let lo_sign = sign_at(p, &lo);
        let two = BigRational::from_integer(2.into());
        while &(&hi - &lo) > width {
            let mid = (&lo + &hi) / &two;
            match sign_at(p, &mid) {
                Ordering::Equal => {
                    return Isolated {
                        lo: mid.clone(),
                        hi: mid,
                    }
                }
                s if s == lo_sign => lo = mid,
                _ => hi = mid,
            }
        }
        Isolated { lo, hi }
    }
}

/// Power of two strictly exceeding every root modulus of a monic polynomial.
pub fn root_radius(p: &[BigInt]) -> BigInt {
    let n = p.len() - 1;
    let lead = p[n].abs();
    let max = p[..n]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // Cauchy: |root| < 1 + max|c_k| / |c_n|
    let bound = BigInt::one() + max.div_ceil(&lead);
    let mut r = BigInt::one();
    while r <= bound {
        r <<= 1;
    }
    r
}

/// Isolates all real roots of a squarefree polynomial with dyadic endpoints.
/// Output is sorted increasingly.
pub fn isolate(p: &[BigInt]) -> Vec<Isolated> {
    let sturm = SturmChain::new(p);
    let r = BigRational::from_integer(root_radius(p));
    let two = BigRational::from_integer(2.into());
    let mut out = Vec::new();
    let mut stack = vec![(-r.clone(), r)];
    while let Some((a, b)) = stack.pop() {
        match sturm.count_in(&a, &b) {
            0 => {}
            1 => out.push(finish_single(p, &sturm, a, b)),
            _ => {
                let mid = (&a + &b) / &two;
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Turns `(a, b]` with one root into an [`Isolated`] interval.
fn finish_single(p: &[BigInt], sturm: &SturmChain, mut a: BigRational, b: BigRational) -> Isolated {
    if sign_at(p, &b) == Ordering::Equal {
        return Isolated {
            lo: b.clone(),
            hi: b,
        };
    }
    let two = BigRational::from_integer(2.into());
    let mut b = b;
    // `a` may be a neighbouring root; shrink until it is not.
    while sign_at(p, &a) == Ordering::Equal {
        let mid = (&a + &b) / &two;
        if sign_at(p, &mid) == Ordering::Equal {
            return Isolated {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if sturm.count_in(&a, &mid) == 1 {
            b = mid;
        } else {
            a = mid;
        }
    }
    Isolated { lo: a, hi: b }
}

/// Integer roots of an integer polynomial among its isolated real roots.
pub fn integer_roots(p: &[BigInt], roots: &[Isolated]) -> Vec<BigInt> {
    let half = BigRational::new(1.into(), 2.into());
    roots
        .iter()
        .filter_map(|iv| {
            let iv = iv.refine(p, &half);
            let c = iv.lo.ceil().to_integer();
            (BigRational::from_integer(c.clone()) <= iv.hi && eval_int(p, &c).is_zero())
                .then_some(c)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sturm_counts() {
        // x^3 - 3x - 1
        let s = SturmChain::new(&ints(&[-1, -3, 0, 1]));
        assert_eq!(s.count_real(), 3);
        assert_eq!(s.count_in(&q(-1, 1), &q(0, 1)), 1);
        // x^3 + x
        assert_eq!(SturmChain::new(&ints(&[0, 1, 0, 1])).count_real(), 1);
    }

    #[test]
    fn gcd_with_derivative() {
        // (x-1)^2 (x+2)
        let p = ints(&[2, -3, 0, 1]);
        assert_eq!(gcd_degree(&p, &derivative(&p)), Some(1));
        let p = ints(&[-1, -3, 0, 1]);
        assert_eq!(gcd_degree(&p, &derivative(&p)), Some(0));
    }

    #[test]
    fn isolation_of_integer_roots() {
        let p = ints(&[0, -4, 0, 1]);
        let roots = isolate(&p);
        assert_eq!(roots.len(), 3);
        for (iv, r) in roots.iter().zip([-2, 0, 2]) {
            let r = q(r, 1);
            assert!(iv.lo <= r && r <= iv.hi);
        }
        assert_eq!(integer_roots(&p, &roots), ints(&[-2, 0, 2]));
    }

    #[test]
    fn refinement_nests_and_brackets() {
        let p = ints(&[-1, -3, 0, 1]);
        let w = q(1, 1 << 20);
        for iv in isolate(&p) {
            let r = iv.refine(&p, &w);
            assert!(r.width() <= w);
            assert!(r.lo >= iv.lo && r.hi <= iv.hi);
            assert_ne!(sign_at(&p, &r.lo), sign_at(&p, &r.hi));
        }
    }

    #[test]
    fn sign_matches_rational_eval() {
        let p = ints(&[-7, 3, -2, 5, 1]);
        for (n, d) in [(3, 7), (-11, 4), (0, 1), (5, 1), (-1, 1024)] {
            let x = q(n, d);
            assert_eq!(sign_at(&p, &x), eval_rational(&p, &x).sign_ordering());
        }
    }
}
