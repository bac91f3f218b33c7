//! Command-line front end. Exit status: 0 on success, 1 on usage or
//! validation errors, 2 when a cross-check finds a discrepancy.

use crate::abssolver::AbsSolver;
use crate::error::{Error, Result};
use crate::numfmt::{fmt_decimal, fmt_rational};
use crate::oracle::{brute_force, in_box, OracleResult};
use crate::problem::{parse_coeffs, parse_epsilon, parse_quadruple, ProblemSpec};
use crate::quadfield::RingElement;
use crate::reducer::{covering_height, Reducer, RelativeSolutionSet, SolveOptions};
use crate::rootbounds::{
    constants, isolate_roots, width_from_bits, RootData, TheoremConstants, Thresholds,
};
use crate::theorem::{self, TheoremReport};
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DISCREPANCY: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "relthue",
    version,
    about = "Relative Thue inequalities over imaginary quadratic fields"
)]
struct Cli {
    /// Emit JSON instead of line-oriented text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve |F(x,y)| <= K over the ring of integers.
    Solve {
        problem: PathBuf,
        #[arg(long)]
        ymax: Option<u64>,
        #[arg(long)]
        epsilon: Option<String>,
        /// Also print the parametric zero families of a reducible form.
        #[arg(long)]
        families: bool,
    },
    /// Solve the absolute inequality |F(a,b)| <= K' with |b| <= ymax.
    Abs {
        /// Ascending coefficients c0 ... cn, e.g. "0 -4 0 1".
        #[arg(long, allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long)]
        kprime: String,
        #[arg(long, default_value_t = 10)]
        ymax: u64,
    },
    /// Print the root-separation constants and thresholds.
    Constants {
        problem: PathBuf,
        #[arg(long)]
        epsilon: Option<String>,
        /// Isolation width 2^-bits.
        #[arg(long, default_value_t = crate::rootbounds::DEFAULT_WIDTH_BITS)]
        width_bits: u32,
    },
    /// Evaluate every necessary condition on candidate quadruples.
    Verify {
        problem: PathBuf,
        /// File with one `x1 x2 y1 y2` per line; defaults to `candidate =` lines.
        #[arg(long)]
        candidates: Option<PathBuf>,
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Brute-force every quadruple in [-height, height]^4.
    Oracle {
        problem: PathBuf,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Run solve and oracle and compare them on the oracle box.
    Check {
        problem: PathBuf,
        #[arg(long)]
        ymax: Option<u64>,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long)]
        epsilon: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstantsReport {
    pub roots: RootData,
    pub constants: TheoremConstants,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyEntry {
    pub x: RingElement,
    pub y: RingElement,
    #[serde(with = "crate::numfmt::int")]
    pub norm: BigInt,
    pub is_solution: bool,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub matched: bool,
    pub height: u64,
    pub search_height: u64,
    pub oracle_count: usize,
    pub reducer_count_in_box: usize,
    pub reducer_count_total: usize,
    /// Oracle solutions the reducer missed.
    pub missing: Vec<[String; 4]>,
    /// Reducer solutions in the box the oracle does not have.
    pub extra: Vec<[String; 4]>,
    pub theorem_violations: usize,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.matched && self.theorem_violations == 0
    }
}

fn quad_strings(q: &[BigInt; 4]) -> [String; 4] {
    q.clone().map(|v| v.to_string())
}

/// Compares reducer output restricted to the box against the oracle.
pub fn compare(solved: &RelativeSolutionSet, oracle: &OracleResult) -> CheckReport {
    let in_box_quads: BTreeSet<[BigInt; 4]> = solved
        .solutions
        .iter()
        .filter(|s| in_box(&s.x, &s.y, oracle.height))
        .map(|s| {
            [
                s.x.u1.clone(),
                s.x.u2.clone(),
                s.y.u1.clone(),
                s.y.u2.clone(),
            ]
        })
        .collect();
    let oracle_quads: BTreeSet<[BigInt; 4]> = oracle.quadruples().into_iter().collect();
    let missing: Vec<[String; 4]> = oracle_quads
        .difference(&in_box_quads)
        .map(quad_strings)
        .collect();
    let extra: Vec<[String; 4]> = in_box_quads
        .difference(&oracle_quads)
        .map(quad_strings)
        .collect();
    CheckReport {
        matched: missing.is_empty() && extra.is_empty(),
        height: oracle.height,
        search_height: solved.search_height,
        oracle_count: oracle_quads.len(),
        reducer_count_in_box: in_box_quads.len(),
        reducer_count_total: solved.solutions.len(),
        missing,
        extra,
        theorem_violations: solved.violations().len(),
    }
}

fn read_problem(path: &Path) -> Result<ProblemSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse("problem", format!("cannot read {}: {e}", path.display())))?;
    ProblemSpec::parse(&text)
}

fn epsilon_or(spec: &ProblemSpec, flag: &Option<String>) -> Result<BigRational> {
    match flag {
        Some(e) => parse_epsilon(e),
        None => Ok(spec.epsilon.clone()),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            if code == EXIT_OK {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code;
        }
    };
    match dispatch(&cli, out).and_then(|code| out.flush().map(|_| code).map_err(Failure::Io)) {
        Ok(code) => code,
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
        Err(Failure::App(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    App(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::App(e)
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let io = Failure::Io;
    match &cli.command {
        Command::Solve {
            problem,
            ymax,
            epsilon,
            families,
        } => {
            let spec = read_problem(problem)?;
            let eps = epsilon_or(&spec, epsilon)?;
            let height = ymax.unwrap_or(spec.ymax);
            let set = Reducer::new(spec.field, spec.form.clone(), spec.k.clone(), eps)?
                .solve(SolveOptions::new(height))?;
            if cli.json {
                writeln!(out, "{}", to_json(&set)).map_err(io)?;
            } else {
                write_solutions(out, &set, *families).map_err(io)?;
            }
            Ok(if set.violations().is_empty() {
                EXIT_OK
            } else {
                EXIT_DISCREPANCY
            })
        }
        Command::Abs {
            coeffs,
            kprime,
            ymax,
        } => {
            let form = parse_coeffs(coeffs)?;
            let kp = crate::numfmt::parse_rational(kprime)
                .ok_or_else(|| Error::parse("kprime", format!("{kprime:?} is not a rational")))?;
            let set = AbsSolver::new(&form)?.solve(&kp, *ymax)?;
            if cli.json {
                writeln!(out, "{}", to_json(&set)).map_err(io)?;
            } else {
                writeln!(out, "# F = {form}").map_err(io)?;
                writeln!(
                    out,
                    "# K' = {}, height = {}",
                    fmt_rational(&set.bound),
                    set.height
                )
                .map_err(io)?;
                writeln!(out, "# solutions: {}", set.solutions.len()).map_err(io)?;
                for s in &set.solutions {
                    writeln!(out, "{} {} {}", s.pair.a, s.pair.b, s.value).map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Constants {
            problem,
            epsilon,
            width_bits,
        } => {
            let spec = read_problem(problem)?;
            let eps = epsilon_or(&spec, epsilon)?;
            let roots = isolate_roots(&spec.form, &width_from_bits(*width_bits))?;
            let consts = constants(&roots, &spec.k, &eps)?;
            let thresholds = consts.thresholds(&spec.field);
            let report = ConstantsReport {
                roots,
                constants: consts,
                thresholds,
            };
            if cli.json {
                writeln!(out, "{}", to_json(&report)).map_err(io)?;
            } else {
                write_constants(out, &spec, &report).map_err(io)?;
            }
            Ok(EXIT_OK)
        }
        Command::Verify {
            problem,
            candidates,
            epsilon,
        } => {
            let spec = read_problem(problem)?;
            let eps = epsilon_or(&spec, epsilon)?;
            let quads = match candidates {
                Some(path) => read_candidates(path)?,
                None => spec.candidates.clone(),
            };
            let roots = isolate_roots(&spec.form, &crate::rootbounds::default_width())?;
            let consts = constants(&roots, &spec.k, &eps)?;
            let k2 = &spec.k * &spec.k;
            let entries: Vec<VerifyEntry> = quads
                .iter()
                .map(|[x1, x2, y1, y2]| {
                    let x = RingElement::new(x1.clone(), x2.clone());
                    let y = RingElement::new(y1.clone(), y2.clone());
                    let norm = spec.field.value_norm(&spec.form, &x, &y);
                    let is_solution = BigRational::from_integer(norm.clone()) <= k2;
                    let report = theorem::report(&spec.field, &spec.form, &consts, &x, &y);
                    VerifyEntry {
                        x,
                        y,
                        norm,
                        is_solution,
                        report,
                    }
                })
                .collect();
            let bad = entries
                .iter()
                .any(|e| e.is_solution && !e.report.is_consistent());
            if cli.json {
                writeln!(out, "{}", to_json(&entries)).map_err(io)?;
            } else {
                for e in &entries {
                    write_verify_line(out, e).map_err(io)?;
                }
            }
            Ok(if bad { EXIT_DISCREPANCY } else { EXIT_OK })
        }
        Command::Oracle { problem, height } => {
            let spec = read_problem(problem)?;
            let h = height.unwrap_or(spec.oracle_height);
            let res = brute_force(&spec.field, &spec.form, &spec.k, h);
            if cli.json {
                writeln!(out, "{}", to_json(&res)).map_err(io)?;
            } else {
                writeln!(
                    out,
                    "# F = {}, m = {}, K = {}",
                    spec.form,
                    spec.field.m(),
                    fmt_rational(&spec.k)
                )
                .map_err(io)?;
                writeln!(
                    out,
                    "# box = [-{h}, {h}]^4, solutions: {}",
                    res.solutions.len()
                )
                .map_err(io)?;
                for s in &res.solutions {
                    writeln!(
                        out,
                        "{} {} {} {} {}",
                        s.x.u1, s.x.u2, s.y.u1, s.y.u2, s.norm
                    )
                    .map_err(io)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check {
            problem,
            ymax,
            height,
            epsilon,
        } => {
            let spec = read_problem(problem)?;
            let eps = epsilon_or(&spec, epsilon)?;
            let h = height.unwrap_or(spec.oracle_height);
            let search = ymax.unwrap_or_else(|| spec.ymax.max(covering_height(&spec.field, h)));
            let set = Reducer::new(spec.field, spec.form.clone(), spec.k.clone(), eps)?
                .solve(SolveOptions::new(search))?;
            let res = brute_force(&spec.field, &spec.form, &spec.k, h);
            let report = compare(&set, &res);
            if cli.json {
                writeln!(out, "{}", to_json(&report)).map_err(io)?;
            } else {
                writeln!(out, "{}", if report.matched { "MATCH" } else { "MISMATCH" })
                    .map_err(io)?;
                writeln!(
                    out,
                    "# oracle box [-{h}, {h}]^4: {} solutions; reducer (height {search}): {} in box, {} total",
                    report.oracle_count, report.reducer_count_in_box, report.reducer_count_total
                )
                .map_err(io)?;
                for q in &report.missing {
                    writeln!(out, "missing {}", q.join(" ")).map_err(io)?;
                }
                for q in &report.extra {
                    writeln!(out, "extra {}", q.join(" ")).map_err(io)?;
                }
                writeln!(out, "# theorem violations: {}", report.theorem_violations).map_err(io)?;
            }
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_DISCREPANCY
            })
        }
    }
}

fn read_candidates(path: &Path) -> Result<Vec<[BigInt; 4]>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::parse("candidates", format!("cannot read {}: {e}", path.display())))?;
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_quadruple("candidates", l))
        .collect()
}

fn write_solutions(
    out: &mut dyn Write,
    set: &RelativeSolutionSet,
    families: bool,
) -> std::io::Result<()> {
    writeln!(out, "# F = {}", set.form)?;
    writeln!(out, "# m = {}, s = {}", set.field.m(), set.field.s())?;
    writeln!(
        out,
        "# K = {}, epsilon = {}, height = {}",
        fmt_rational(&set.k),
        fmt_rational(&set.epsilon),
        set.search_height
    )?;
    writeln!(out, "# |k1| <= {}", set.k1_range.bound)?;
    if set.over_z_path {
        writeln!(out, "# x2 = y2 = 0 forced; solved over Z")?;
    }
    for k1 in &set.unrealized_k1 {
        writeln!(out, "# k1 = {k1} not realized within height")?;
    }
    writeln!(out, "# solutions: {}", set.solutions.len())?;
    for s in &set.solutions {
        writeln!(
            out,
            "{} {} {} {} {}",
            s.x.u1, s.x.u2, s.y.u1, s.y.u2, s.norm
        )?;
    }
    for (i, v) in set.violations() {
        let s = &set.solutions[i];
        writeln!(
            out,
            "# VIOLATION {} {} {} {}: {}",
            s.x.u1,
            s.x.u2,
            s.y.u1,
            s.y.u2,
            v.join(",")
        )?;
    }
    if families {
        for fam in &set.families {
            let steps: Vec<String> = fam
                .steps
                .iter()
                .map(|(x, y)| format!("({x}, {y})"))
                .collect();
            writeln!(
                out,
                "family root={} x = {}*y steps {}",
                fam.root,
                fam.root,
                steps.join(" ")
            )?;
        }
    }
    Ok(())
}

fn write_constants(
    out: &mut dyn Write,
    spec: &ProblemSpec,
    r: &ConstantsReport,
) -> std::io::Result<()> {
    let line = |out: &mut dyn Write, name: &str, v: &BigRational| -> std::io::Result<()> {
        writeln!(out, "{name} = {} ~ {}", fmt_rational(v), fmt_decimal(v, 12))
    };
    writeln!(
        out,
        "# F = {}, m = {}, s = {}",
        spec.form,
        spec.field.m(),
        spec.field.s()
    )?;
    writeln!(
        out,
        "# K = {}, epsilon = {}",
        fmt_rational(&r.constants.k),
        fmt_rational(&r.constants.epsilon)
    )?;
    for (i, iv) in r.roots.intervals.iter().enumerate() {
        writeln!(
            out,
            "root[{i}] in [{}, {}] ~ {}",
            fmt_rational(&iv.lo),
            fmt_rational(&iv.hi),
            fmt_decimal(&iv.lo, 12)
        )?;
    }
    line(out, "A_lower", &r.roots.a_lower)?;
    line(out, "A_upper", &r.roots.a_upper)?;
    line(out, "B_lower", &r.roots.b_lower)?;
    line(out, "B_upper", &r.roots.b_upper)?;
    line(out, "C_upper", &r.constants.c_upper)?;
    line(out, "G_upper", &r.constants.g_upper)?;
    line(out, "T_x12", &r.thresholds.x12)?;
    line(out, "T_I1", &r.thresholds.i1)?;
    line(out, "T_I2", &r.thresholds.i2)?;
    Ok(())
}

fn write_verify_line(out: &mut dyn Write, e: &VerifyEntry) -> std::io::Result<()> {
    let pf = |b: bool| if b { "pass" } else { "fail" };
    let gate = |g: &theorem::Gated| match (g.applicable, g.holds) {
        (false, _) => "n/a",
        (true, true) => "holds",
        (true, false) => "FAILS",
    };
    writeln!(
        out,
        "{} {} {} {} norm={} solution={} a-real={} a-imag={} aa={} x12={} I1={} I2={}",
        e.x.u1,
        e.x.u2,
        e.y.u1,
        e.y.u2,
        e.norm,
        if e.is_solution { "yes" } else { "no" },
        pf(e.report.ineq_a_real.pass),
        pf(e.report.ineq_a_imag.pass),
        pf(e.report.ineq_aa.pass),
        gate(&e.report.x12),
        gate(&e.report.i1),
        gate(&e.report.i2),
    )
}
