//! Brute-force ground truth: every `(x1, x2, y1, y2)` in `[-H, H]^4` with
//! `|F(x, y)|^2 <= K^2`, found by exact evaluation and nothing else.

use crate::forms::BinaryForm;
use crate::numfmt;
use crate::quadfield::{QuadraticField, RingElement};
use crate::reducer::solution_order;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSolution {
    pub x: RingElement,
    pub y: RingElement,
    #[serde(with = "numfmt::int")]
    pub norm: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub height: u64,
    /// Same order as the reducer: `(norm(y), y1, y2, x1, x2)`.
    pub solutions: Vec<OracleSolution>,
}

impl OracleResult {
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

pub fn brute_force(
    field: &QuadraticField,
    form: &BinaryForm,
    k: &BigRational,
    height: u64,
) -> OracleResult {
    let h = height as i64;
    let k2 = k * k;
    let mut solutions: Vec<OracleSolution> = (-h..=h)
        .into_par_iter()
        .flat_map_iter(|x1| {
            let mut found = Vec::new();
            for x2 in -h..=h {
                let x = RingElement::new(x1, x2);
                for y1 in -h..=h {
                    for y2 in -h..=h {
                        let y = RingElement::new(y1, y2);
                        let norm = field.value_norm(form, &x, &y);
                        if BigRational::from_integer(norm.clone()) <= k2 {
                            found.push(OracleSolution {
                                x: x.clone(),
                                y,
                                norm,
                            });
                        }
                    }
                }
            }
            found
        })
        .collect();
    solutions.sort_by_cached_key(|s| solution_order(field, &s.x, &s.y));
    OracleResult { height, solutions }
}

/// Whether every coordinate of `(x, y)` lies in `[-height, height]`.
pub fn in_box(x: &RingElement, y: &RingElement, height: u64) -> bool {
    let h = BigInt::from(height);
    [&x.u1, &x.u2, &y.u1, &y.u2]
        .iter()
        .all(|c| c.magnitude() <= h.magnitude())
}
