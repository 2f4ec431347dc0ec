//! The `seymour` command line.
//!
//! Exit codes: 0 success, 1 a mathematical check failed, 2 bad usage or input.

pub mod formats;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::certificate::{verify_all, CertificateReport};
use crate::csp::{adjust, check_csp_a, check_csp_b, eval_f, extract_assignment, ConstraintReport};
use crate::digraph::{OrientedDigraph, SeymourRatio};
use crate::field::{format_decimal, format_rational, parse_rational, rat, Rational, Scalar};
use crate::generators::{generate, random_oriented, Family, GenSpec};
use crate::search::{
    find_witness, scan_w, threshold, FloatConfig, Oracle, ScanResult, SearchError, ThresholdResult,
};
use formats::{assignment_json, parse_assignment, parse_edge_list, write_edge_list, AssignmentFile};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Lower bound on γ used where a rational stand-in is needed.
pub fn gamma_lower_bound() -> Rational {
    rat(715538, 1_000_000)
}

#[derive(Parser, Debug)]
#[command(name = "seymour", version, about = "Second-neighborhood bounds for oriented graphs: certificate, search, and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the unsatisfiability certificate exactly in Q(γ).
    VerifyCertificate {
        #[arg(long)]
        json: bool,
    },
    /// Degree statistics, best ratio, vertex selection and cell sizes of a digraph.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Fail (exit 1) unless some vertex has d⁺⁺ ≥ mu·d⁺.
        #[arg(long, value_parser = rational)]
        mu: Option<Rational>,
        #[arg(long, value_parser = rational, default_value = "1")]
        w: Rational,
        #[arg(long)]
        json: bool,
    },
    /// Write a digraph from one of the built-in families as an edge list.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check or adjust an assignment file.
    Csp {
        #[arg(value_enum)]
        action: CspAction,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Maximize F over the CSP-B region: thresholds in mu, scans in w, witnesses.
    Search {
        #[arg(value_enum)]
        action: SearchAction,
        /// Weight; for scan-w a comma-separated grid (default 1.05, 1.10, …, 1.45).
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_parser = rational, default_value = "13/20")]
        lo: Rational,
        #[arg(long, value_parser = rational, default_value = "4/5")]
        hi: Rational,
        #[arg(long, value_parser = rational, default_value = "1/1000")]
        tol: Rational,
        #[arg(long, value_parser = rational)]
        mu: Option<Rational>,
        /// Decide signs by exact face enumeration instead of float multistart.
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 32)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check the reduction's claims on seeded random digraphs.
    PropertyTest {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 20)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = rational, default_value = "56/45")]
        w: Rational,
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyArg {
    Cycle,
    CyclePower,
    BlowupCycle,
    Random,
    Tournament,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CspAction {
    CheckA,
    CheckB,
    Adjust,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SearchAction {
    Threshold,
    ScanW,
    Witness,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Outcome of a command: what to print and which code to exit with.
struct Done {
    text: String,
    code: i32,
}

impl Done {
    fn ok(text: String) -> Self {
        Done { text, code: 0 }
    }

    fn check(text: String, passed: bool) -> Self {
        Done { text, code: if passed { 0 } else { 1 } }
    }
}

/// An input or usage problem (exit 2).
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(done) => {
            let _ = out.write_all(done.text.as_bytes());
            done.code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

fn read(path: &PathBuf) -> Result<String, Usage> {
    std::fs::read_to_string(path).map_err(|e| Usage(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<Done, Usage> {
    match cmd {
        Command::VerifyCertificate { json } => Ok(verify_certificate(json)),
        Command::Analyze { input, mu, w, json } => {
            let g = parse_edge_list(&read(&input)?).map_err(|e| Usage(format!("{}: {e}", input.display())))?;
            analyze(&g, mu.as_ref(), &w, json)
        }
        Command::Gen { family, n, k, t, p, seed, out } => {
            let family = match family {
                FamilyArg::Cycle => Family::Cycle,
                FamilyArg::CyclePower => Family::CyclePower,
                FamilyArg::BlowupCycle => Family::BlowupCycle,
                FamilyArg::Random => Family::Random,
                FamilyArg::Tournament => Family::Tournament,
            };
            let g = generate(&GenSpec { family, n, k, t, p, seed })?;
            let text = write_edge_list(&g);
            match out {
                Some(path) => {
                    std::fs::write(&path, text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
                    Ok(Done::ok(String::new()))
                }
                None => Ok(Done::ok(text)),
            }
        }
        Command::Csp { action, input, json } => {
            let file = parse_assignment(&read(&input)?).map_err(|e| Usage(format!("{}: {e}", input.display())))?;
            Ok(csp(action, &file, json))
        }
        Command::Search { action, w, lo, hi, tol, mu, exact, starts, seed } => {
            let oracle = if exact {
                Oracle::Exact
            } else {
                Oracle::Float(FloatConfig { starts, seed, ..FloatConfig::default() })
            };
            search(action, w.as_deref(), &lo, &hi, &tol, mu.as_ref(), &oracle, seed)
        }
        Command::PropertyTest { trials, n, p, seed, w, json } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Usage(format!("--p must lie in [0, 1], got {p}")));
            }
            if w < rat(1, 1) {
                return Err(Usage("--w must be at least 1".into()));
            }
            let summary = property_test(trials, n, p, seed, &w)?;
            let passed = summary.failures.is_empty();
            let text = if json { to_json(&summary) } else { summary.render() };
            Ok(Done::check(text, passed))
        }
    }
}

fn verify_certificate(json: bool) -> Done {
    let r = verify_all();
    let text = if json {
        to_json(&json!({
            "tool": "seymour",
            "version": VERSION,
            "passed": r.passed,
            "checks": r.checks,
            "approximations": r.approximations.iter()
                .map(|(k, v)| json!({"name": k, "approx": v}))
                .collect::<Vec<_>>(),
            "conclusion": r.conclusion,
        }))
    } else {
        render_certificate(&r)
    };
    Done::check(text, r.passed)
}

fn render_certificate(r: &CertificateReport) -> String {
    let mut s = String::new();
    for c in &r.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        let kind = serde_json::to_value(c.kind).expect("serializable");
        write!(s, "{status}  [{}] {}", kind.as_str().unwrap_or(""), c.name).unwrap();
        if let Some(a) = &c.approx {
            write!(s, "  ≈ {a}").unwrap();
        }
        if let Some(d) = &c.detail {
            write!(s, "  ({d})").unwrap();
        }
        s.push('\n');
    }
    s.push_str("\napproximations (rounded half-to-even):\n");
    for (k, v) in &r.approximations {
        writeln!(s, "  {k:<32} {v}").unwrap();
    }
    writeln!(s, "\n{}", r.conclusion).unwrap();
    s
}

fn ratio_string(r: &SeymourRatio) -> String {
    match r {
        SeymourRatio::Finite(q) => format_rational(q),
        SeymourRatio::Infinite => "inf".into(),
    }
}

fn analyze(g: &OrientedDigraph, mu: Option<&Rational>, w: &Rational, json: bool) -> Result<Done, Usage> {
    if g.n() == 0 {
        return Err(Usage("the digraph has no vertices".into()));
    }
    let stats: Vec<_> = (0..g.n()).map(|v| g.stats(v)).collect::<Result<_, _>>()?;
    let (best_v, best) = g.best_seymour_ratio()?;
    let selection = match extract_assignment(g, w) {
        Ok((sel, x)) => Some((sel, x)),
        Err(crate::csp::CspError::Graph(crate::digraph::GraphError::ZeroOutDegree(_))) => None,
        Err(e) => return Err(Usage(e.to_string())),
    };
    let seymour_ok = mu.map(|m| best.at_least(m));
    let passed = seymour_ok.unwrap_or(true);
    let f_value = selection.as_ref().map(|(_, x)| eval_f(x, w));
    let text = if json {
        to_json(&json!({
            "tool": "seymour",
            "version": VERSION,
            "n": g.n(),
            "arcs": g.arc_count(),
            "min_out_degree": g.min_out_degree(),
            "stats": stats,
            "best_ratio": {"vertex": best_v, "ratio": ratio_string(&best)},
            "mu": mu.map(format_rational),
            "has_mu_seymour_vertex": seymour_ok,
            "w": format_rational(w),
            "selection": selection.as_ref().map(|(s, x)| json!({
                "u": s.u,
                "v": s.v,
                "counts": s.counts.cells,
                "x": assignment_json(x),
            })),
            "F": f_value.as_ref().map(format_rational),
        }))
    } else {
        let mut s = String::new();
        writeln!(s, "vertices: {}, arcs: {}", g.n(), g.arc_count()).unwrap();
        writeln!(s, "min out-degree: {}", g.min_out_degree().unwrap_or(0)).unwrap();
        writeln!(s, "best ratio d++/d+: {} at vertex {best_v}", ratio_string(&best)).unwrap();
        if let (Some(m), Some(ok)) = (mu, seymour_ok) {
            writeln!(s, "{}-Seymour vertex: {}", format_rational(m), if ok { "yes" } else { "NO" }).unwrap();
        }
        match &selection {
            Some((sel, x)) => {
                writeln!(s, "selection (w = {}): u = {}, v = {}", format_rational(w), sel.u, sel.v).unwrap();
                for (i, row) in sel.counts.cells.iter().enumerate() {
                    let cells: Vec<String> = row
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| !(i == 2 && j == 0))
                        .map(|(j, c)| format!("x{}{}={c}", i + 1, j + 1))
                        .collect();
                    writeln!(s, "  {}", cells.join(" ")).unwrap();
                }
                let f = eval_f(x, w);
                writeln!(s, "F = {} ≈ {}", format_rational(&f), format_decimal(&f, 6)).unwrap();
            }
            None => s.push_str("selection: none (a vertex has out-degree 0)\n"),
        }
        s
    };
    Ok(Done::check(text, passed))
}

fn report_json(r: &ConstraintReport<Rational>) -> serde_json::Value {
    json!({
        "system": r.system,
        "satisfied": r.satisfied(),
        "constraints": r.records.iter().map(|c| json!({
            "label": c.label,
            "name": c.name,
            "kind": c.kind,
            "satisfied": c.satisfied,
            "slack": format_rational(&c.slack),
        })).collect::<Vec<_>>(),
    })
}

fn report_text(r: &ConstraintReport<Rational>) -> String {
    let mut s = String::new();
    for c in &r.records {
        let status = if c.satisfied { "ok  " } else { "FAIL" };
        writeln!(s, "{status} {:<46} slack {}", c.name, format_rational(&c.slack)).unwrap();
    }
    writeln!(s, "{}: {}", r.system, if r.satisfied() { "satisfied" } else { "NOT satisfied" }).unwrap();
    s
}

fn csp(action: CspAction, file: &AssignmentFile, json: bool) -> Done {
    let p = &file.params;
    match action {
        CspAction::CheckA | CspAction::CheckB => {
            let r = match action {
                CspAction::CheckA => check_csp_a(&file.x, p),
                _ => check_csp_b(&file.x, p),
            };
            let text = if json { to_json(&report_json(&r)) } else { report_text(&r) };
            Done::check(text, r.satisfied())
        }
        CspAction::Adjust => match adjust(&file.x, p) {
            Ok(outcome) => {
                let trace: Vec<_> = outcome
                    .trace
                    .iter()
                    .map(|s| json!({
                        "step": s.step,
                        "deltas": s.deltas.iter().map(format_rational).collect::<Vec<_>>(),
                        "f_before": format_rational(&s.f_before),
                        "f_after": format_rational(&s.f_after),
                    }))
                    .collect();
                let text = to_json(&json!({
                    "mu": format_rational(&p.mu),
                    "w": format_rational(&p.w),
                    "x": assignment_json(&outcome.x),
                    "trace": trace,
                }));
                Done::ok(text)
            }
            Err(e) => Done::check(format!("adjust failed: {e}\n"), false),
        },
    }
}

fn default_grid() -> Vec<Rational> {
    (21..=29).map(|k| rat(k, 20)).collect()
}

#[allow(clippy::too_many_arguments)]
fn search(
    action: SearchAction,
    w: Option<&str>,
    lo: &Rational,
    hi: &Rational,
    tol: &Rational,
    mu: Option<&Rational>,
    oracle: &Oracle,
    seed: u64,
) -> Result<Done, Usage> {
    let single_w = || -> Result<Rational, Usage> {
        let s = w.ok_or_else(|| Usage("--w is required".into()))?;
        Ok(parse_rational(s)?)
    };
    let method = match oracle {
        Oracle::Exact => "exact_face_enumeration",
        Oracle::Float(_) => "float_multistart",
    };
    let sign_failure = |e: SearchError| match e {
        e @ SearchError::NoSignChange { .. } => Ok(Done::check(format!("{e}\n"), false)),
        e => Err(Usage(e.to_string())),
    };
    match action {
        SearchAction::Threshold => match threshold(&single_w()?, lo, hi, tol, oracle) {
            Ok(t) => Ok(Done::ok(to_json(&json!({
                "tool": "seymour",
                "version": VERSION,
                "method": method,
                "seed": seed,
                "threshold": t,
                "mu_star_approx": format_decimal(&t.mu_star, 6),
            })))),
            Err(e) => sign_failure(e),
        },
        SearchAction::ScanW => {
            let grid = match w {
                None => default_grid(),
                Some(s) => s.split(',').map(|p| parse_rational(p.trim())).collect::<Result<_, _>>()?,
            };
            match scan_w(&grid, lo, hi, tol, oracle) {
                Ok(ScanResult { thresholds, best }) => {
                    let rows: Vec<_> = thresholds
                        .iter()
                        .map(|t: &ThresholdResult| json!({
                            "w": format_rational(&t.w),
                            "mu_star": format_rational(&t.mu_star),
                            "mu_star_approx": format_decimal(&t.mu_star, 6),
                        }))
                        .collect();
                    Ok(Done::ok(to_json(&json!({
                        "tool": "seymour",
                        "version": VERSION,
                        "method": method,
                        "seed": seed,
                        "thresholds": rows,
                        "best_w": format_rational(&thresholds[best].w),
                        "best_mu_star": format_rational(&thresholds[best].mu_star),
                    }))))
                }
                Err(e) => sign_failure(e),
            }
        }
        SearchAction::Witness => {
            let w = single_w()?;
            let mu = mu.ok_or_else(|| Usage("--mu is required".into()))?;
            match find_witness(mu, &w)? {
                Some(wit) => Ok(Done::ok(to_json(&json!({
                    "mu": format_rational(mu),
                    "w": format_rational(&w),
                    "x": assignment_json(&wit.x),
                    "F": format_rational(&eval_f(&wit.x, &w)),
                    "max_F": format_rational(&wit.max_value),
                    "mix": format_rational(&wit.mix),
                    "certified": true,
                })))),
                None => Ok(Done::check(
                    format!("no CSP-B witness at mu = {}, w = {}\n", format_rational(mu), format_rational(&w)),
                    false,
                )),
            }
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct PropertySummary {
    pub trials: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub w: String,
    /// Trials with a vertex of out-degree 0 (no selection possible).
    pub skipped_zero_out_degree: usize,
    pub degree_bound_checked: usize,
    pub f_positivity_checked: usize,
    pub gamma_seymour_checked: usize,
    pub failures: Vec<String>,
}

impl PropertySummary {
    fn render(&self) -> String {
        let mut s = String::new();
        writeln!(s, "trials: {} (n = {}, p = {}, seed = {}, w = {})", self.trials, self.n, self.p, self.seed, self.w).unwrap();
        writeln!(s, "skipped (out-degree 0 present): {}", self.skipped_zero_out_degree).unwrap();
        writeln!(s, "x21 >= x12+x13+x14 checked: {}", self.degree_bound_checked).unwrap();
        writeln!(s, "x11 > 0 => F > 0 checked: {}", self.f_positivity_checked).unwrap();
        writeln!(s, "gamma-Seymour vertex checked: {}", self.gamma_seymour_checked).unwrap();
        if self.failures.is_empty() {
            s.push_str("all properties hold\n");
        } else {
            for f in &self.failures {
                writeln!(s, "FAIL {f}").unwrap();
            }
        }
        s
    }
}

/// Random digraphs with seeds `seed, seed+1, …`: cell identities, the
/// degree bound (4), F-positivity, and a γ-Seymour vertex.
pub fn property_test(trials: usize, n: usize, p: f64, seed: u64, w: &Rational) -> Result<PropertySummary, crate::digraph::GraphError> {
    let mut s = PropertySummary {
        trials,
        n,
        p,
        seed,
        w: format_rational(w),
        ..Default::default()
    };
    let gamma = gamma_lower_bound();
    for i in 0..trials {
        let trial_seed = seed.wrapping_add(i as u64);
        let g = random_oriented(n, p, trial_seed)?;
        let (_, ratio) = g.best_seymour_ratio()?;
        s.gamma_seymour_checked += 1;
        if !ratio.at_least(&gamma) {
            s.failures.push(format!("seed {trial_seed}: no vertex with d++ >= 0.715538 d+"));
        }
        if g.min_out_degree() == Some(0) {
            s.skipped_zero_out_degree += 1;
            continue;
        }
        let (sel, x) = match extract_assignment(&g, w) {
            Ok(v) => v,
            Err(e) => {
                s.failures.push(format!("seed {trial_seed}: {e}"));
                continue;
            }
        };
        let su = g.stats(sel.u)?;
        let sv = g.stats(sel.v)?;
        let c = &sel.counts;
        let identities = c.row_sum(1) == su.d1
            && c.row_sum(2) == su.d2
            && c.row_sum(3) == su.d3
            && c.get(1, 1) + c.get(2, 1) == sv.d1
            && c.get(1, 2) + c.get(2, 2) + c.get(3, 2) == sv.d2;
        if !identities {
            s.failures.push(format!("seed {trial_seed}: degree identities fail"));
        }
        s.degree_bound_checked += 1;
        if x.x21.clone() - x.x12.clone() - x.x13.clone() - x.x14.clone() < rat(0, 1) {
            s.failures.push(format!("seed {trial_seed}: x21 < x12+x13+x14"));
        }
        if x.x11 > rat(0, 1) {
            s.f_positivity_checked += 1;
            if eval_f(&x, w).sign() != crate::field::Sign::Positive {
                s.failures.push(format!("seed {trial_seed}: x11 > 0 but F <= 0"));
            }
        }
    }
    Ok(s)
}
