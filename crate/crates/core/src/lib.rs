//! Exact solver for relative Thue inequalities `|F(x, y)| <= K` with `x, y`
//! in the ring of integers of an imaginary quadratic field `Q(i sqrt(m))`.
//!
//! The solver reduces the relative problem to absolute Thue inequalities
//! over Z (see [`reducer`]), solves those inside an explicit height bound
//! ([`abssolver`]), and cross-checks every solution against the necessary
//! conditions in [`theorem`]. An independent brute-force scan lives in
//! [`oracle`].

pub mod abssolver;
pub mod cli;
pub mod error;
pub mod exact;
pub mod forms;
pub mod interval;
pub mod numfmt;
pub mod oracle;
pub mod poly;
pub mod problem;
pub mod quadfield;
pub mod reducer;
pub mod rootbounds;
pub mod theorem;

pub use abssolver::{solve_abs, solve_abs_equation, AbsSolutionSet, AbsSolver};
pub use error::{Error, Inadmissible, Result};
pub use forms::{BinaryForm, IntegerPair};
pub use oracle::{brute_force, OracleResult};
pub use problem::ProblemSpec;
pub use quadfield::{QuadraticField, RingElement};
pub use reducer::{k1_range, solve_relative, Reducer, RelativeSolutionSet, SolveOptions};
pub use rootbounds::{constants, isolate_roots, RootData, TheoremConstants};
pub use theorem::TheoremReport;
