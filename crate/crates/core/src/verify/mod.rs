//! Bounded-n verification suites with pass/fail reports and witnesses.

mod suites;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::exec::Execution;
use crate::polynomial::{MultiPoly, Var};
use crate::series_solver::{self, Mode, SolverOutput, SystemConfig};
use crate::tamari::{interval_statistics_with, IntervalRecord, TamariLattice, MAX_N_DEGREES, MAX_N_Q};

pub use suites::ORIENTATION_CANDIDATES;

/// Integer prefixes of the sequences the checks compare against.
pub struct ReferenceSequences;

impl ReferenceSequences {
    /// Tamari intervals, A000260 from n = 1.
    pub const INTERVALS: [u64; 8] = [1, 3, 13, 68, 399, 2530, 16965, 118668];
    /// Two-stack sortable permutations, A000139 from n = 1.
    pub const A000139: [u64; 7] = [1, 2, 6, 22, 91, 408, 1938];
    /// Rooted bicubic maps, A000257 from n = 0.
    pub const A000257: [u64; 6] = [1, 3, 12, 56, 288, 1584];
    /// Motzkin numbers, A001006 from n = 0.
    pub const A001006: [u64; 7] = [1, 1, 2, 4, 9, 21, 51];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    /// An interval of Tam_n, endpoints in bracket notation.
    Interval { n: usize, lo: String, hi: String, detail: String },
    /// A coefficient that differs between two routes.
    Coefficient { n: usize, monomial: String, expected: String, found: String },
    Mismatch { n: usize, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    pub n_range: (usize, usize),
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub details: Vec<String>,
    /// The checked statement is open, so a failure is a counterexample.
    pub conjectural: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Symmetry,
    XXbar,
    Triangle,
    Synchronous,
    Degrees,
    Distributions,
    Conjectures,
    RealRoots,
    Routes,
    Series,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Symmetry,
        Suite::XXbar,
        Suite::Triangle,
        Suite::Synchronous,
        Suite::Degrees,
        Suite::Distributions,
        Suite::Conjectures,
        Suite::RealRoots,
        Suite::Routes,
        Suite::Series,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Symmetry => "symmetry",
            Suite::XXbar => "x-xbar",
            Suite::Triangle => "triangle",
            Suite::Synchronous => "synchronous",
            Suite::Degrees => "degrees",
            Suite::Distributions => "distributions",
            Suite::Conjectures => "conjectures",
            Suite::RealRoots => "real-roots",
            Suite::Routes => "routes",
            Suite::Series => "series",
        }
    }

    /// Largest n the suite accepts; larger requests are clamped.
    pub fn max_n(self) -> usize {
        match self {
            Suite::Symmetry | Suite::XXbar => 8,
            Suite::Triangle => 6,
            Suite::Routes => MAX_N_DEGREES,
            Suite::Series => 3,
            _ => 7,
        }
    }

    pub fn conjectural(self) -> bool {
        matches!(self, Suite::XXbar | Suite::Conjectures | Suite::RealRoots)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Default)]
struct Caches {
    lattices: [OnceLock<TamariLattice>; MAX_N_DEGREES + 1],
    records: [OnceLock<Vec<IntervalRecord>>; MAX_N_DEGREES + 1],
    dd: [OnceLock<MultiPoly>; MAX_N_DEGREES + 1],
    series: Vec<(Mode, OnceLock<SolverOutput>)>,
}

/// Lazily computed lattices, interval records and `DD_n`, shared by every
/// suite. `with_dd_override` swaps in a different `DD_n`, which the suites
/// then treat as the brute-force value.
#[derive(Clone)]
pub struct VerifyContext {
    exec: Execution,
    caches: Arc<Caches>,
    overrides: BTreeMap<usize, MultiPoly>,
}

/// Truncation order used for the series routes: covers n up to 9.
const SERIES_ORDER: usize = MAX_N_DEGREES + 1;

impl VerifyContext {
    pub fn new(exec: Execution) -> Self {
        let caches = Caches {
            series: Mode::ALL.iter().map(|&m| (m, OnceLock::new())).collect(),
            ..Caches::default()
        };
        VerifyContext { exec, caches: Arc::new(caches), overrides: BTreeMap::new() }
    }

    pub fn with_dd_override(&self, n: usize, dd: MultiPoly) -> Self {
        let mut ctx = self.clone();
        ctx.overrides.insert(n, dd);
        ctx
    }

    pub fn exec(&self) -> Execution {
        self.exec
    }

    pub fn lattice(&self, n: usize) -> &TamariLattice {
        self.caches.lattices[n].get_or_init(|| TamariLattice::new(n).expect("n in range"))
    }

    /// Interval records; `q` is filled in when `n <= MAX_N_Q`.
    pub fn records(&self, n: usize) -> &[IntervalRecord] {
        self.caches.records[n].get_or_init(|| {
            interval_statistics_with(self.lattice(n), n <= MAX_N_Q, self.exec).expect("n in range")
        })
    }

    /// `DD_n(x, y, ybar, xbar)` of Tam_n.
    pub fn dd(&self, n: usize) -> &MultiPoly {
        if let Some(p) = self.overrides.get(&n) {
            return p;
        }
        self.caches.dd[n].get_or_init(|| self.lattice(n).poset().valence_poly_dd_with(self.exec))
    }

    /// `DD_n(x, y, ybar, 1)`.
    pub fn dd_xyy(&self, n: usize) -> MultiPoly {
        self.dd(n).specialize(&[(Var::Xbar, 1)]).expect("xbar in universe")
    }

    pub fn series(&self, mode: Mode) -> &SolverOutput {
        let cell = &self.caches.series.iter().find(|(m, _)| *m == mode).expect("all modes").1;
        cell.get_or_init(|| {
            let order = if mode == Mode::QAnalogue { MAX_N_Q + 1 } else { SERIES_ORDER };
            series_solver::solve(SystemConfig::new(mode, order)).expect("solver runs")
        })
    }
}

impl Default for VerifyContext {
    fn default() -> Self {
        VerifyContext::new(Execution::default())
    }
}

pub fn run_suite(ctx: &VerifyContext, suite: Suite, n_max: usize) -> CheckReport {
    let hi = n_max.min(suite.max_n());
    let start = Instant::now();
    let mut report = if hi == 0 {
        suites::skipped(suite)
    } else {
        match suite {
            Suite::Symmetry => suites::check_ternary_symmetry(ctx, hi),
            Suite::XXbar => suites::check_x_xbar(ctx, hi),
            Suite::Triangle => suites::check_support_triangle(ctx, hi),
            Suite::Synchronous => suites::check_synchronous(ctx, hi),
            Suite::Degrees => suites::check_degree_properties(ctx, hi),
            Suite::Distributions => suites::check_distributions(ctx, hi),
            Suite::Conjectures => suites::check_remaining_conjectures(ctx, hi),
            Suite::RealRoots => suites::check_real_roots(ctx, hi),
            Suite::Routes => suites::check_routes(ctx, hi),
            Suite::Series => suites::check_printed_series(ctx),
        }
    };
    if n_max > suite.max_n() {
        report.details.push(format!("n clamped to {}", suite.max_n()));
    }
    report.wall_ms = Some(start.elapsed().as_millis() as u64);
    debug_assert!(report.status != Status::Fail || report.witness.is_some());
    report
}

/// Runs the suites (concurrently under the parallel strategy); reports come
/// back in the order of `suites`. Wall times are dropped unless `timings`.
pub fn run_suites(ctx: &VerifyContext, suites: &[Suite], n_max: usize, timings: bool) -> Vec<CheckReport> {
    ctx.exec()
        .map_slice(suites, |&s| {
            let mut r = run_suite(ctx, s, n_max);
            if !timings {
                r.wall_ms = None;
            }
            r
        })
}

/// 0 when every non-skipped report passed, 1 otherwise.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    i32::from(reports.iter().any(|r| r.status == Status::Fail))
}

pub fn summary(reports: &[CheckReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = match (r.status, r.conjectural) {
            (Status::Pass, _) => "pass",
            (Status::Skipped, _) => "skipped",
            (Status::Fail, false) => "FAIL",
            (Status::Fail, true) => "FAIL (conjecture counterexample)",
        };
        out.push_str(&format!("{:<14} n={}..={} {status}\n", r.id, r.n_range.0, r.n_range.1));
        for d in &r.details {
            out.push_str(&format!("    {d}\n"));
        }
        if let Some(w) = &r.witness {
            out.push_str(&format!("    witness: {}\n", serde_json::to_string(w).expect("serializable")));
        }
    }
    out
}

#[cfg(test)]
mod tests;
