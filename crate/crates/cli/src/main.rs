use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tamari_valence::polynomial::{MultiPoly, Universe, Var};
use tamari_valence::series_solver::{
    self, check_alternative_phi, check_bridge, residual, AlgebraicEquation, Mode, SystemConfig,
};
use tamari_valence::tamari::{
    distribution, interval_statistics_with, write_statistics_csv, PlaneBinaryTree, Stat, TamariLattice,
    MAX_N_DEGREES, MAX_N_Q,
};
use tamari_valence::verify::{exit_code, run_suites, summary, Suite, VerifyContext};
use tamari_valence::Execution;

const MAX_ORDER: usize = 12;

#[derive(Parser)]
#[command(name = "tamval", version, about = "Interval-valence polynomials of Tamari lattices")]
struct Cli {
    /// Worker threads for the data-parallel maps (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write output to this file instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// DD_n(x, y, ybar, xbar) of Tam_n, optionally specialized.
    Poly {
        #[arg(long)]
        n: usize,
        /// Bindings such as `xbar=1` or `x=z`; repeatable or comma separated.
        #[arg(long, value_delimiter = ',')]
        spec: Vec<String>,
        /// D(a, abar) of the interval poset instead.
        #[arg(long)]
        two_var: bool,
    },
    /// Solve a functional equation to order N and run its identity checks.
    Series {
        #[arg(long, value_parser = parse_mode)]
        mode: Mode,
        #[arg(long = "N", default_value_t = SystemConfig::DEFAULT_ORDER)]
        order: usize,
    },
    /// Run verification suites.
    Verify {
        /// Suite id, or `all`; repeatable.
        #[arg(long, value_delimiter = ',', default_value = "all")]
        suite: Vec<String>,
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        /// Include per-suite wall times.
        #[arg(long)]
        timings: bool,
    },
    /// Distribution table of a pair of interval statistics, or a per-interval dump.
    Table {
        #[arg(long)]
        n: usize,
        /// Two of x, y, ybar, xbar, q, ll, rr.
        #[arg(long, value_parser = parse_pair, required_unless_present = "intervals")]
        pair: Option<(Stat, Stat)>,
        /// Every interval with its statistics.
        #[arg(long, conflicts_with = "pair")]
        intervals: bool,
    },
    /// List the trees of Tam_n, or inspect one tree.
    Trees {
        #[arg(long, required_unless_present = "inspect")]
        n: Option<usize>,
        /// A tree in bracket form, e.g. `((o o) o)`.
        #[arg(long, conflicts_with = "n")]
        inspect: Option<String>,
    },
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse()
}

fn parse_suites(ids: &[String]) -> Result<Vec<Suite>, CliError> {
    let mut suites = Vec::new();
    for id in ids {
        if id == "all" {
            suites.extend(Suite::ALL);
        } else {
            suites.push(id.parse().map_err(usage)?);
        }
    }
    suites.sort();
    suites.dedup();
    Ok(suites)
}

fn parse_pair(s: &str) -> Result<(Stat, Stat), String> {
    let (a, b) = s.split_once(',').ok_or("expected two statistics separated by a comma")?;
    let stat = |x: &str| Stat::parse(x.trim()).ok_or_else(|| format!("unknown statistic {x:?}"));
    Ok((stat(a)?, stat(b)?))
}

enum CliError {
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type Outcome = Result<bool, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(k) = cli.threads {
        if k == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .expect("global pool configured once");
    }
    let result = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => run(&cli, &mut BufWriter::new(f)),
            Err(e) => Err(CliError::Io(e)),
        },
        None => run(&cli, &mut io::stdout().lock()),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let ok = match &cli.command {
        Command::Poly { n, spec, two_var } => cmd_poly(out, cli.format, *n, spec, *two_var),
        Command::Series { mode, order } => cmd_series(out, cli.format, *mode, *order),
        Command::Verify { suite, max_n, timings } => {
            let suites = parse_suites(suite)?;
            cmd_verify(out, cli.format, &suites, *max_n, *timings)
        }
        Command::Table { n, pair, intervals } => cmd_table(out, cli.format, *n, *pair, *intervals),
        Command::Trees { n, inspect } => cmd_trees(out, cli.format, *n, inspect.as_deref()),
    }?;
    out.flush()?;
    Ok(ok)
}

fn check_n(n: usize, max: usize) -> Result<(), CliError> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!("n = {n} outside 1..={max}")))
    }
}

fn no_csv(format: Format, what: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        Err(usage(format!("{what} has no csv output")))
    } else {
        Ok(())
    }
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

enum Binding {
    Value(i64),
    Var(Var),
}

fn parse_spec(spec: &[String]) -> Result<Vec<(Var, Binding)>, CliError> {
    let dd_vars = [Var::X, Var::Y, Var::Ybar, Var::Xbar];
    let mut out: Vec<(Var, Binding)> = Vec::new();
    for item in spec.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let (lhs, rhs) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("bad binding {item:?}, expected var=value")))?;
        let var: Var = lhs.trim().parse().map_err(|_| usage(format!("unknown variable {lhs:?}")))?;
        if !dd_vars.contains(&var) {
            return Err(usage(format!("{var} is not one of x, y, ybar, xbar")));
        }
        if out.iter().any(|(v, _)| *v == var) {
            return Err(usage(format!("{var} bound twice")));
        }
        let rhs = rhs.trim();
        let b = match rhs.parse::<i64>() {
            Ok(k) => Binding::Value(k),
            Err(_) => Binding::Var(rhs.parse().map_err(|_| usage(format!("bad value {rhs:?}")))?),
        };
        out.push((var, b));
    }
    Ok(out)
}

fn specialize(dd: &MultiPoly, spec: &[(Var, Binding)]) -> Result<MultiPoly, CliError> {
    let mut target = dd.universe();
    for (v, b) in spec {
        target = target.without(*v);
        if let Binding::Var(w) = b {
            target = target.with(*w).map_err(|e| usage(e.to_string()))?;
        }
    }
    let bindings = spec
        .iter()
        .map(|(v, b)| {
            let p = match b {
                Binding::Value(k) => MultiPoly::constant(target, *k),
                Binding::Var(w) => MultiPoly::var(target, *w).expect("added to target"),
            };
            (*v, p)
        })
        .collect::<Vec<_>>();
    dd.substitute(&bindings, target).map_err(|e| usage(e.to_string()))
}

fn cmd_poly(out: &mut dyn Write, format: Format, n: usize, spec: &[String], two_var: bool) -> Outcome {
    no_csv(format, "poly")?;
    check_n(n, MAX_N_DEGREES)?;
    let spec = parse_spec(spec)?;
    if two_var && !spec.is_empty() {
        return Err(usage("--two-var takes no --spec"));
    }
    let lattice = TamariLattice::new(n).map_err(|e| usage(e.to_string()))?;
    let dd = lattice.poset().valence_poly_dd_with(Execution::default());
    let poly = if two_var {
        // D_{Int(P)}(a, abar) = DD_P(a, a, abar, abar)
        let target = Universe::of(&[Var::A, Var::Abar]);
        let (a, abar) = (MultiPoly::var(target, Var::A).unwrap(), MultiPoly::var(target, Var::Abar).unwrap());
        dd.substitute(
            &[(Var::X, a.clone()), (Var::Y, a), (Var::Ybar, abar.clone()), (Var::Xbar, abar)],
            target,
        )
        .expect("a, abar universe")
    } else {
        specialize(&dd, &spec)?
    };
    match format {
        Format::Json => write_json(out, &json!({ "n": n, "poly": poly }))?,
        _ => {
            writeln!(out, "{poly}")?;
            if two_var {
                for r in 0..n {
                    let row: Vec<String> = (0..n)
                        .map(|c| {
                            let k = poly.coeff(&[(Var::A, c as u8), (Var::Abar, (n - 1 - r) as u8)]);
                            if k == 0.into() { ".".to_owned() } else { k.to_string() }
                        })
                        .collect();
                    writeln!(out, "{}", row.join(" "))?;
                }
            }
        }
    }
    Ok(true)
}

fn cmd_series(out: &mut dyn Write, format: Format, mode: Mode, order: usize) -> Outcome {
    no_csv(format, "series")?;
    if !(1..=MAX_ORDER).contains(&order) {
        return Err(usage(format!("N = {order} outside 1..={MAX_ORDER}")));
    }
    let sol = series_solver::solve(SystemConfig::new(mode, order)).map_err(|e| usage(e.to_string()))?;
    let mut checks: Vec<(&str, bool)> = Vec::new();
    let fail = |e: series_solver::SolverError| CliError::Io(io::Error::other(e.to_string()));
    match mode {
        Mode::Full | Mode::QAnalogue => {
            checks.push(("alternative", check_alternative_phi(&sol).map_err(fail)?));
            checks.push(("bridge", check_bridge(&sol).map_err(fail)?));
        }
        Mode::SynchronousRestricted | Mode::BicubicRestricted => {
            let eq = if mode == Mode::SynchronousRestricted {
                AlgebraicEquation::synchronous_cubic()
            } else {
                AlgebraicEquation::bicubic_quadratic()
            };
            let r = residual(&sol.phi_11().map_err(fail)?, &eq).map_err(fail)?;
            checks.push(("residual", r.is_zero()));
        }
        Mode::Canopy => {
            let full = series_solver::solve(SystemConfig::new(Mode::Full, order)).map_err(fail)?;
            let target = Mode::Canopy.universe();
            let spec = full
                .phi_uu()
                .map_err(fail)?
                .map(target, |p| p.specialize(&[(Var::X, 1)])?.rename(&[(Var::Y, Var::LL), (Var::Ybar, Var::RR)]))
                .map_err(|e| fail(e.into()))?;
            checks.push(("full_specialization", spec == sol.phi));
        }
    }
    let phi11 = sol.phi_11().map_err(fail)?;
    match format {
        Format::Json => {
            let checks: serde_json::Map<String, serde_json::Value> =
                checks.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
            write_json(
                out,
                &json!({
                    "mode": mode.name(),
                    "N": order,
                    "phi": sol.phi,
                    "theta": sol.theta,
                    "phi_11": phi11,
                    "checks": checks,
                }),
            )?;
        }
        _ => {
            writeln!(out, "mode {mode}, N = {order}")?;
            for (name, s) in [("Phi", &sol.phi), ("Theta", &sol.theta), ("Phi(1,1)", &phi11)] {
                for k in 1..order {
                    writeln!(out, "[t^{k}]{name} = {}", s.coeff(k))?;
                }
            }
            for (name, ok) in &checks {
                let verdict = match (*name, ok) {
                    ("residual", true) => "residual 0".to_owned(),
                    (_, true) => format!("{name}: ok"),
                    (_, false) => format!("{name}: FAILED"),
                };
                writeln!(out, "{verdict}")?;
            }
        }
    }
    Ok(checks.iter().all(|c| c.1))
}

fn cmd_verify(out: &mut dyn Write, format: Format, suites: &[Suite], max_n: usize, timings: bool) -> Outcome {
    no_csv(format, "verify")?;
    let ctx = VerifyContext::new(Execution::default());
    let reports = run_suites(&ctx, suites, max_n, timings);
    match format {
        Format::Json => write_json(out, &serde_json::to_value(&reports).expect("serializable"))?,
        _ => write!(out, "{}", summary(&reports))?,
    }
    Ok(exit_code(&reports) == 0)
}

fn cmd_table(out: &mut dyn Write, format: Format, n: usize, pair: Option<(Stat, Stat)>, intervals: bool) -> Outcome {
    check_n(n, MAX_N_DEGREES)?;
    let needs_q = intervals && n <= MAX_N_Q || pair.is_some_and(|(a, b)| a == Stat::Q || b == Stat::Q);
    if needs_q && !intervals {
        check_n(n, MAX_N_Q)?;
    }
    let lattice = TamariLattice::new(n).map_err(|e| usage(e.to_string()))?;
    let records = interval_statistics_with(&lattice, needs_q, Execution::default()).map_err(|e| usage(e.to_string()))?;
    if intervals {
        if format != Format::Csv {
            return Err(usage("--intervals is written as csv; pass --format csv"));
        }
        write_statistics_csv(&mut *out, &lattice, &records)?;
        return Ok(true);
    }
    let (a, b) = pair.expect("clap requires --pair");
    let table = distribution(&records, a, b).expect("statistics recorded");
    match format {
        Format::Json => write_json(
            out,
            &json!({ "n": n, "pair": [a.name(), b.name()], "counts": table.counts }),
        )?,
        Format::Csv => {
            writeln!(out, "{},{},count", a.name(), b.name())?;
            for (i, row) in table.counts.iter().enumerate() {
                for (j, c) in row.iter().enumerate().filter(|(_, c)| **c > 0) {
                    writeln!(out, "{i},{j},{c}")?;
                }
            }
        }
        Format::Text => {
            writeln!(out, "rows: {}, columns: {}", a.name(), b.name())?;
            write!(out, "{table}")?;
        }
    }
    Ok(true)
}

fn tree_json(t: &PlaneBinaryTree) -> serde_json::Value {
    json!({
        "tree": t.to_string(),
        "dyck": t.dyck_word(),
        "canopy": t.canopy().to_string(),
        "composition": t.composition().0,
    })
}

fn cmd_trees(out: &mut dyn Write, format: Format, n: Option<usize>, inspect: Option<&str>) -> Outcome {
    if let Some(s) = inspect {
        no_csv(format, "trees --inspect")?;
        let t: PlaneBinaryTree = s.parse().map_err(|e: tamari_valence::tamari::TamariError| usage(e.to_string()))?;
        let size = t.size();
        check_n(size, TamariLattice::MAX_N)?;
        let lattice = TamariLattice::new(size).map_err(|e| usage(e.to_string()))?;
        let i = lattice.index_of(&t).map_err(|e| usage(e.to_string()))?;
        let p = lattice.poset();
        let up: Vec<String> = p.up_covers(i).iter().map(|&j| lattice.tree(j).to_string()).collect();
        let down: Vec<String> = p.down_covers(i).iter().map(|&j| lattice.tree(j).to_string()).collect();
        let above = p.up_set(i).count();
        match format {
            Format::Json => {
                let mut v = tree_json(&t);
                let obj = v.as_object_mut().expect("object");
                obj.insert("n".into(), json!(size));
                obj.insert("index".into(), json!(i));
                obj.insert("covers_up".into(), json!(up));
                obj.insert("covers_down".into(), json!(down));
                obj.insert("elements_above".into(), json!(above));
                write_json(out, &v)?;
            }
            _ => {
                writeln!(out, "tree        {t}")?;
                writeln!(out, "n           {size}")?;
                writeln!(out, "index       {i}")?;
                writeln!(out, "dyck        {}", t.dyck_word())?;
                writeln!(out, "canopy      {}", t.canopy())?;
                writeln!(out, "composition {:?}", t.composition().0)?;
                let list = |v: &[String]| if v.is_empty() { "-".to_owned() } else { v.join(" | ") };
                writeln!(out, "covers up   {}", list(&up))?;
                writeln!(out, "covers down {}", list(&down))?;
                writeln!(out, "above       {above}")?;
            }
        }
        return Ok(true);
    }
    let n = n.expect("clap requires --n");
    check_n(n, TamariLattice::MAX_N)?;
    let trees = PlaneBinaryTree::enumerate(n).map_err(|e| usage(e.to_string()))?;
    match format {
        Format::Json => write_json(out, &json!(trees.iter().map(tree_json).collect::<Vec<_>>()))?,
        Format::Csv => {
            writeln!(out, "index,tree,dyck,canopy")?;
            for (i, t) in trees.iter().enumerate() {
                writeln!(out, "{i},{t},{},{}", t.dyck_word(), t.canopy())?;
            }
        }
        Format::Text => {
            for (i, t) in trees.iter().enumerate() {
                writeln!(out, "{i:>5}  {:<w$}  {}  {}", t.to_string(), t.dyck_word(), t.canopy(), w = 4 * n + 1)?;
            }
        }
    }
    Ok(true)
}
