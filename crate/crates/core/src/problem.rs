//! Problem files: UTF-8 `key = value` lines, `#` starts a comment.
//!
//! ```text
//! # x^3 - 4 x y^2 over Q(i sqrt 3)
//! coeffs = 0 -4 0 1      # ascending: c0 (y^n) ... cn (x^n)
//! m = 3
//! K = 1                  # integer or p/q, at least 1
//! epsilon = 1/2          # optional, default 1/2
//! ymax = 100             # optional, default 100
//! oracle_height = 4      # optional, default 4
//! candidate = 0 1 0 0    # optional, repeatable: x1 x2 y1 y2
//! ```

use crate::error::{Error, Result};
use crate::forms::BinaryForm;
use crate::numfmt::{parse_int, parse_rational};
use crate::quadfield::QuadraticField;
use crate::rootbounds::{validate_epsilon, validate_k};
use num_bigint::BigInt;
use num_rational::BigRational;
use std::collections::HashSet;

pub const DEFAULT_YMAX: u64 = 100;
pub const DEFAULT_ORACLE_HEIGHT: u64 = 4;

pub fn default_epsilon() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProblemSpec {
    pub form: BinaryForm,
    pub field: QuadraticField,
    pub k: BigRational,
    pub epsilon: BigRational,
    pub ymax: u64,
    pub oracle_height: u64,
    pub candidates: Vec<[BigInt; 4]>,
}

pub fn parse_coeffs(value: &str) -> Result<BinaryForm> {
    let coeffs = value
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            parse_int(t).ok_or_else(|| Error::parse("coeffs", format!("{t:?} is not an integer")))
        })
        .collect::<Result<Vec<_>>>()?;
    let form = BinaryForm::new(coeffs)?;
    form.check_admissible()?;
    Ok(form)
}

pub fn parse_quadruple(field: &str, value: &str) -> Result<[BigInt; 4]> {
    let parts: Vec<BigInt> = value
        .split_whitespace()
        .map(|t| {
            parse_int(t).ok_or_else(|| Error::parse(field, format!("{t:?} is not an integer")))
        })
        .collect::<Result<_>>()?;
    parts
        .try_into()
        .map_err(|_| Error::parse(field, "expected four integers x1 x2 y1 y2"))
}

fn parse_u64(field: &str, value: &str) -> Result<u64> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::parse(field, format!("{value:?} is not a nonnegative integer")))
}

pub fn parse_k(value: &str) -> Result<BigRational> {
    let k = parse_rational(value)
        .ok_or_else(|| Error::parse("K", format!("{value:?} is not a rational")))?;
    validate_k(&k)?;
    Ok(k)
}

pub fn parse_epsilon(value: &str) -> Result<BigRational> {
    let e = parse_rational(value)
        .ok_or_else(|| Error::parse("epsilon", format!("{value:?} is not a rational")))?;
    validate_epsilon(&e)?;
    Ok(e)
}

impl ProblemSpec {
    pub fn parse(text: &str) -> Result<ProblemSpec> {
        let mut seen = HashSet::new();
        let mut form = None;
        let mut field = None;
        let mut k = None;
        let mut epsilon = None;
        let mut ymax = None;
        let mut oracle_height = None;
        let mut candidates = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::parse(format!("line {}", lineno + 1), "expected `key = value`")
            })?;
            let key = key.trim();
            let value = value.trim();
            let canonical = match key {
                "k" | "K" => "K",
                "height" | "oracle_height" => "oracle_height",
                other => other,
            };
            if canonical != "candidate" && !seen.insert(canonical.to_string()) {
                return Err(Error::parse(canonical, "given more than once"));
            }
            match canonical {
                "coeffs" => form = Some(parse_coeffs(value)?),
                "m" => {
                    let m = parse_u64("m", value)?;
                    field = Some(QuadraticField::new(m)?);
                }
                "K" => k = Some(parse_k(value)?),
                "epsilon" => epsilon = Some(parse_epsilon(value)?),
                "ymax" => ymax = Some(parse_u64("ymax", value)?),
                "oracle_height" => oracle_height = Some(parse_u64("oracle_height", value)?),
                "candidate" => candidates.push(parse_quadruple("candidate", value)?),
                other => return Err(Error::parse(other, "unknown key")),
            }
        }

        Ok(ProblemSpec {
            form: form.ok_or_else(|| Error::parse("coeffs", "missing"))?,
            field: field.ok_or_else(|| Error::parse("m", "missing"))?,
            k: k.ok_or_else(|| Error::parse("K", "missing"))?,
            epsilon: epsilon.unwrap_or_else(default_epsilon),
            ymax: ymax.unwrap_or(DEFAULT_YMAX),
            oracle_height: oracle_height.unwrap_or(DEFAULT_ORACLE_HEIGHT),
            candidates,
        })
    }
}

impl std::str::FromStr for ProblemSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProblemSpec::parse(s)
    }
}
