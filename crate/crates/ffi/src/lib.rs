//! C ABI over `relthue`.
//!
//! Handles are opaque and owned by the caller once returned; release them
//! with the matching `*_free` function. Every entry point returns an
//! [`RtStatus`]; on failure [`rt_last_error_message`] describes the error
//! for the calling thread. Strings returned through out-parameters are
//! NUL-terminated UTF-8 and must be released with [`rt_string_free`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use relthue::reducer::{Reducer, SolveOptions};
use relthue::rootbounds::{constants, isolate_roots, width_from_bits};
use relthue::{
    theorem, BinaryForm, Error, OracleResult, ProblemSpec, QuadraticField, RelativeSolutionSet,
    RingElement,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RtStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Inadmissible = 4,
    InvalidField = 5,
    InvalidParameter = 6,
    Overflow = 7,
    IndexOutOfRange = 8,
    Panic = 9,
}

/// A validated problem: form, field, bound, epsilon and default heights.
pub struct RtProblem {
    spec: ProblemSpec,
}

/// Solution quadruples with their norms, from the reducer or the oracle.
pub struct RtSolutions {
    rows: Vec<([BigInt; 4], BigInt)>,
    json: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure {
    status: RtStatus,
    message: String,
}

impl Failure {
    fn new(status: RtStatus, message: impl Into<String>) -> Self {
        Failure {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Inadmissible(_) => RtStatus::Inadmissible,
            Error::InvalidField(_) => RtStatus::InvalidField,
            Error::Parse { .. } => RtStatus::Parse,
            _ => RtStatus::InvalidParameter,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RtStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
            RtStatus::Ok
        }
        Ok(Err(fail)) => {
            set_error(&fail.message);
            fail.status
        }
        Err(_) => {
            set_error("internal panic");
            RtStatus::Panic
        }
    }
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure::new(
            RtStatus::NullPointer,
            format!("{what} is null"),
        ))
    } else {
        Ok(())
    }
}

unsafe fn problem_ref<'a>(p: *const RtProblem) -> Result<&'a RtProblem, Failure> {
    non_null(p, "problem")?;
    Ok(&*p)
}

unsafe fn c_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    non_null(s, what)?;
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure::new(RtStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::new(RtStatus::InvalidParameter, "string contains NUL"))
}

fn quad(x: &RingElement, y: &RingElement) -> [BigInt; 4] {
    [x.u1.clone(), x.u2.clone(), y.u1.clone(), y.u2.clone()]
}

impl RtSolutions {
    fn from_relative(set: &RelativeSolutionSet) -> Self {
        RtSolutions {
            rows: set
                .solutions
                .iter()
                .map(|s| (quad(&s.x, &s.y), s.norm.clone()))
                .collect(),
            json: serde_json::to_string(set).expect("serializable"),
        }
    }

    fn from_oracle(res: &OracleResult) -> Self {
        RtSolutions {
            rows: res
                .solutions
                .iter()
                .map(|s| (quad(&s.x, &s.y), s.norm.clone()))
                .collect(),
            json: serde_json::to_string(res).expect("serializable"),
        }
    }
}

/// Parses a problem file held in memory.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rt_problem_parse(
    text: *const c_char,
    out: *mut *mut RtProblem,
) -> RtStatus {
    guard(|| {
        non_null(out, "out")?;
        let spec = ProblemSpec::parse(c_str(text, "text")?)?;
        *out = Box::into_raw(Box::new(RtProblem { spec }));
        Ok(())
    })
}

/// Builds a problem from ascending coefficients `c0 .. cn` and `K = k_num / k_den`.
/// Epsilon is 1/2 and the heights take their defaults.
///
/// # Safety
/// `coeffs` must point to `len` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_problem_new(
    coeffs: *const i64,
    len: usize,
    m: u64,
    k_num: i64,
    k_den: i64,
    out: *mut *mut RtProblem,
) -> RtStatus {
    guard(|| {
        non_null(coeffs, "coeffs")?;
        non_null(out, "out")?;
        if k_den == 0 {
            return Err(Failure::new(
                RtStatus::InvalidParameter,
                "K has zero denominator",
            ));
        }
        let cs: Vec<BigInt> = std::slice::from_raw_parts(coeffs, len)
            .iter()
            .map(|&c| c.into())
            .collect();
        let form = BinaryForm::new(cs)?;
        form.check_admissible().map_err(Error::from)?;
        let field = QuadraticField::new(m)?;
        let k = BigRational::new(k_num.into(), k_den.into());
        relthue::rootbounds::validate_k(&k)?;
        let spec = ProblemSpec {
            form,
            field,
            k,
            epsilon: relthue::problem::default_epsilon(),
            ymax: relthue::problem::DEFAULT_YMAX,
            oracle_height: relthue::problem::DEFAULT_ORACLE_HEIGHT,
            candidates: Vec::new(),
        };
        *out = Box::into_raw(Box::new(RtProblem { spec }));
        Ok(())
    })
}

/// # Safety
/// `problem` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rt_problem_free(problem: *mut RtProblem) {
    if !problem.is_null() {
        drop(Box::from_raw(problem));
    }
}

/// Solves the problem with every absolute search truncated at `ymax`.
///
/// # Safety
/// `problem` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_solve(
    problem: *const RtProblem,
    ymax: u64,
    out: *mut *mut RtSolutions,
) -> RtStatus {
    guard(|| {
        let p = &problem_ref(problem)?.spec;
        non_null(out, "out")?;
        let set = Reducer::new(p.field, p.form.clone(), p.k.clone(), p.epsilon.clone())?
            .solve(SolveOptions::new(ymax))?;
        *out = Box::into_raw(Box::new(RtSolutions::from_relative(&set)));
        Ok(())
    })
}

/// Brute-force scan of `[-height, height]^4`.
///
/// # Safety
/// `problem` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_oracle(
    problem: *const RtProblem,
    height: u64,
    out: *mut *mut RtSolutions,
) -> RtStatus {
    guard(|| {
        let p = &problem_ref(problem)?.spec;
        non_null(out, "out")?;
        let res = relthue::brute_force(&p.field, &p.form, &p.k, height);
        *out = Box::into_raw(Box::new(RtSolutions::from_oracle(&res)));
        Ok(())
    })
}

/// Number of solutions; 0 for a null handle.
///
/// # Safety
/// `solutions` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn rt_solutions_len(solutions: *const RtSolutions) -> usize {
    if solutions.is_null() {
        0
    } else {
        (*solutions).rows.len()
    }
}

/// Writes `x1 x2 y1 y2 norm` of solution `index` into `out[0..5]`.
///
/// # Safety
/// `solutions` must be valid and `out` must hold five values.
#[no_mangle]
pub unsafe extern "C" fn rt_solutions_get(
    solutions: *const RtSolutions,
    index: usize,
    out: *mut i64,
) -> RtStatus {
    guard(|| {
        non_null(solutions, "solutions")?;
        non_null(out, "out")?;
        let rows = &(*solutions).rows;
        let (q, norm) = rows.get(index).ok_or_else(|| {
            Failure::new(
                RtStatus::IndexOutOfRange,
                format!("index {index} >= {}", rows.len()),
            )
        })?;
        let mut vals = [0i64; 5];
        for (slot, v) in vals.iter_mut().zip(q.iter().chain(std::iter::once(norm))) {
            *slot = v.to_i64().ok_or_else(|| {
                Failure::new(RtStatus::Overflow, format!("{v} does not fit in int64"))
            })?;
        }
        std::slice::from_raw_parts_mut(out, 5).copy_from_slice(&vals);
        Ok(())
    })
}

/// Full result as JSON (big integers as strings).
///
/// # Safety
/// `solutions` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_solutions_to_json(
    solutions: *const RtSolutions,
    out: *mut *mut c_char,
) -> RtStatus {
    guard(|| {
        non_null(solutions, "solutions")?;
        non_null(out, "out")?;
        *out = to_c_string((*solutions).json.clone())?;
        Ok(())
    })
}

/// # Safety
/// `solutions` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rt_solutions_free(solutions: *mut RtSolutions) {
    if !solutions.is_null() {
        drop(Box::from_raw(solutions));
    }
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn rt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn rt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Largest `|k1|` admitted for the problem.
///
/// # Safety
/// `problem` and `out_bound` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_k1_range(problem: *const RtProblem, out_bound: *mut i64) -> RtStatus {
    guard(|| {
        let p = &problem_ref(problem)?.spec;
        non_null(out_bound, "out_bound")?;
        let range = relthue::k1_range(&p.field, &p.form, &p.k);
        *out_bound = range
            .bound
            .to_i64()
            .ok_or_else(|| Failure::new(RtStatus::Overflow, "k1 bound does not fit in int64"))?;
        Ok(())
    })
}

/// Checks the candidate `x1 x2 y1 y2`: whether it solves the inequality and
/// whether every necessary condition is consistent with it.
///
/// # Safety
/// `quad` must hold four values; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_verify(
    problem: *const RtProblem,
    quad: *const i64,
    out_is_solution: *mut bool,
    out_consistent: *mut bool,
) -> RtStatus {
    guard(|| {
        let p = &problem_ref(problem)?.spec;
        non_null(quad, "quad")?;
        non_null(out_is_solution, "out_is_solution")?;
        non_null(out_consistent, "out_consistent")?;
        let v = std::slice::from_raw_parts(quad, 4);
        let x = RingElement::new(v[0], v[1]);
        let y = RingElement::new(v[2], v[3]);
        let roots = isolate_roots(&p.form, &relthue::rootbounds::default_width())?;
        let consts = constants(&roots, &p.k, &p.epsilon)?;
        let norm = p.field.value_norm(&p.form, &x, &y);
        *out_is_solution = BigRational::from_integer(norm) <= &p.k * &p.k;
        *out_consistent = theorem::report(&p.field, &p.form, &consts, &x, &y).is_consistent();
        Ok(())
    })
}

/// Root enclosures and derived constants as JSON, isolated to width `2^-width_bits`.
///
/// # Safety
/// `problem` and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rt_constants_json(
    problem: *const RtProblem,
    width_bits: u32,
    out: *mut *mut c_char,
) -> RtStatus {
    guard(|| {
        let p = &problem_ref(problem)?.spec;
        non_null(out, "out")?;
        let roots = isolate_roots(&p.form, &width_from_bits(width_bits))?;
        let consts = constants(&roots, &p.k, &p.epsilon)?;
        let report = relthue::cli::ConstantsReport {
            thresholds: consts.thresholds(&p.field),
            roots,
            constants: consts,
        };
        *out = to_c_string(serde_json::to_string(&report).expect("serializable"))?;
        Ok(())
    })
}
