//! `specmatch`: analyze graphs, construct extremal families, check the
//! `q1` / fractional matching inequalities and hunt for counterexamples.
//!
//! Exit codes: 0 success, 1 violation or oracle disagreement, 2 parse or
//! parameter error, 3 I/O error, 4 capacity exceeded.

mod family;

use std::fmt::Write as _;
use std::io::Read;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use specmatch::graph::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use specmatch::matching::{
    brute_force_deficiency, brute_force_matching_number, extract_fractional_matching,
    fractional_matching_number, verify_fractional_matching, DeficiencyWitness, HalfInt,
    MatchingError, DEFAULT_BRUTE_CAP,
};
use specmatch::spectral::{
    eigenvalues_all, exact_signless_radius, signless_laplacian, signless_radius, SpectralError,
};
use specmatch::theorems::{
    bound_ratio, check_all, check_fpm_complement, check_fpm_complement_refined, check_fpm_q1,
    check_lemma_degree_bounds, check_subgraph_monotonicity, check_theorem_fm_lower, hunt,
    is_exception_graph, verify_b_member, BMembership, CheckConfig, Deletion, HuntConfig,
    HuntReport, TheoremError, TheoremId, TheoremReport, Verdict,
};
use specmatch::{Graph, GraphError};

const MATCHING_ORACLE_CAP: usize = 16;

#[derive(Parser)]
#[command(
    name = "specmatch",
    version,
    about = "Signless Laplacian radius versus fractional matching number"
)]
struct Cli {
    /// Width of the boundary band around every threshold
    #[arg(long, global = true, env = "SPECMATCH_EPSILON", default_value_t = 1e-8)]
    epsilon: f64,

    /// Largest order for brute-force deficiency enumeration
    #[arg(long, global = true, env = "SPECMATCH_BRUTE_CAP", default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: usize,

    /// Print a human-readable summary instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GraphInput {
    /// graph6 string, path to an edge-list or graph6 file, or `-` for stdin
    input: Option<String>,

    /// Build the graph from a family spec instead, e.g. `complete-bipartite:4,3`
    #[arg(long, value_name = "FAMILY:PARAMS", conflicts_with = "input")]
    construct: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    EdgeList,
}

#[derive(Subcommand)]
enum Command {
    /// Report invariants and every applicable check for one graph
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// Include the full signless Laplacian spectrum
        #[arg(long)]
        spectrum: bool,
        /// Also run the brute-force oracles (fails with exit 4 above the cap)
        #[arg(long)]
        oracle: bool,
    },
    /// Print a member of a named family
    Construct {
        /// complete:n, empty:n, cycle:n, path:n, complete-bipartite:a,b,
        /// b-family:delta,k,y, exception:delta,<complete|empty|path|cycle>,
        /// attached-clique:t
        spec: String,
        #[arg(long, value_enum, default_value = "graph6")]
        format: Format,
    },
    /// Run one checker and print its report
    Verify {
        #[command(flatten)]
        input: GraphInput,
        /// degree-bounds, subgraph-monotonicity, fm-lower, bound-ratio,
        /// fpm-q1, fpm-complement, fpm-complement-refined
        #[arg(long)]
        theorem: TheoremId,
        /// Parameter of fm-lower: a decimal or a fraction p/q in [0, n)
        #[arg(long)]
        k: Option<String>,
        /// Edge removed for subgraph-monotonicity
        #[arg(long, value_name = "U,V", conflicts_with = "delete_vertex")]
        delete_edge: Option<String>,
        /// Vertex removed for subgraph-monotonicity
        #[arg(long, value_name = "V")]
        delete_vertex: Option<usize>,
    },
    /// Check random connected graphs and list violations
    Hunt {
        /// Inclusive order range `a..b`, or a single order
        #[arg(long, default_value = "4..10")]
        n: String,
        /// Edge probability
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        /// Discard graphs with smaller minimum degree
        #[arg(long, default_value_t = 0)]
        min_degree: usize,
        /// Number of accepted graphs
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Worker threads
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Samples drawn before giving up (default 1000 * count)
        #[arg(long)]
        max_attempts: Option<usize>,
    },
    /// Compare the fast fractional matching number with brute-force oracles
    Oracle {
        #[command(flatten)]
        input: GraphInput,
    },
}

enum Failure {
    Parse(String),
    Io(String),
    Capacity(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Io(_) => 3,
            Failure::Capacity(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Parse(m) | Failure::Io(m) | Failure::Capacity(m) => m,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { .. } => Failure::Capacity(e.to_string()),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<SpectralError> for Failure {
    fn from(e: SpectralError) -> Self {
        match e {
            SpectralError::TooLarge { .. } | SpectralError::NoConvergence { .. } => {
                Failure::Capacity(e.to_string())
            }
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<MatchingError> for Failure {
    fn from(e: MatchingError) -> Self {
        match e {
            MatchingError::TooLarge { .. } => Failure::Capacity(e.to_string()),
            MatchingError::Graph(g) => g.into(),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

impl From<TheoremError> for Failure {
    fn from(e: TheoremError) -> Self {
        match e {
            TheoremError::Spectral(s) => s.into(),
            TheoremError::Matching(m) => m.into(),
            TheoremError::Graph(g) => g.into(),
            _ => Failure::Parse(e.to_string()),
        }
    }
}

/// Edge list when the first meaningful line holds two tokens, graph6
/// otherwise.
fn parse_text(text: &str) -> Result<Graph, GraphError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.split_whitespace().count() == 2 {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}

fn load(input: &GraphInput) -> Result<Graph, Failure> {
    if let Some(spec) = &input.construct {
        return Ok(family::construct(spec)?);
    }
    let Some(src) = &input.input else {
        return Err(Failure::Parse(
            "no input graph: pass a graph6 string, a file, `-`, or --construct".into(),
        ));
    };
    if src == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Io(format!("standard input: {e}")))?;
        return Ok(parse_text(&text)?);
    }
    // graph6 never contains '/' or '.', so such inputs must be paths
    if Path::new(src).exists() || src.contains(['/', '.']) {
        let text = std::fs::read_to_string(src).map_err(|e| Failure::Io(format!("{src}: {e}")))?;
        return Ok(parse_text(&text)?);
    }
    Ok(parse_graph6(src)?)
}

/// Exact rational from `p/q`, an integer, or a finite decimal.
fn parse_rational(s: &str) -> Result<num_rational::Rational64, Failure> {
    use num_rational::Rational64;
    let bad = || Failure::Parse(format!("`{s}` is not a rational number"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational64::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let whole: i64 = if int.is_empty() || int == "-" {
        0
    } else {
        int.parse().map_err(|_| bad())?
    };
    let scale = 10i64.pow(frac.len() as u32);
    let part: i64 = if frac.is_empty() {
        0
    } else {
        frac.parse().map_err(|_| bad())?
    };
    let numer = whole
        .checked_mul(scale)
        .and_then(|w| {
            if negative {
                w.checked_sub(part)
            } else {
                w.checked_add(part)
            }
        })
        .ok_or_else(bad)?;
    Ok(Rational64::new(numer, scale))
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Parse(format!("`{s}` is not an order range like 4..10"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.strip_prefix('=').unwrap_or(b))?)),
        None => num(s).map(|n| (n, n)),
    }
}

fn emit<T: Serialize>(value: &T, pretty: bool, summary: impl FnOnce() -> String) {
    if pretty {
        print!("{}", summary());
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        );
    }
}

fn fmt_half(h: HalfInt) -> String {
    if h.halves().is_multiple_of(2) {
        (h.halves() / 2).to_string()
    } else {
        format!("{}/2", h.halves())
    }
}

fn verdict_lines(out: &mut String, reports: &[TheoremReport]) {
    for r in reports {
        let k = r
            .witnesses
            .k
            .as_deref()
            .map(|k| format!(" (k = {k})"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:<24}{:<11}{}",
            r.theorem.as_str(),
            format!("{:?}", r.verdict).to_uppercase(),
            k
        );
        for flag in &r.flags {
            let _ = writeln!(out, "      note: {flag}");
        }
    }
}

#[derive(Serialize)]
struct AnalysisReport {
    graph6: String,
    n: usize,
    m: usize,
    min_degree: usize,
    avg_degree: String,
    max_degree: usize,
    connected: bool,
    bipartite: bool,
    q1: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    q1_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum: Option<Vec<f64>>,
    alpha_star: HalfInt,
    fpm: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    deficiency: Option<DeficiencyWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching_number: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_member: Option<BMembership>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exception_delta: Option<usize>,
    theorems: Vec<TheoremReport>,
    epsilon: f64,
}

fn analyze(
    g: &Graph,
    cfg: &CheckConfig,
    spectrum: bool,
    oracle: bool,
) -> Result<AnalysisReport, Failure> {
    let stats = g.degree_stats();
    let alpha = fractional_matching_number(g);
    let deficiency = match brute_force_deficiency(g, cfg.brute_cap) {
        Ok(w) => Some(w),
        Err(e) if oracle => return Err(e.into()),
        Err(_) => None,
    };
    let matching_number = if oracle {
        if g.n() > MATCHING_ORACLE_CAP {
            return Err(Failure::Capacity(format!(
                "graph order {} exceeds the matching oracle cap of {MATCHING_ORACLE_CAP}",
                g.n()
            )));
        }
        Some(brute_force_matching_number(g)?)
    } else {
        None
    };
    let spectrum = if spectrum {
        Some(eigenvalues_all(&signless_laplacian(g), &cfg.spectral)?.eigenvalues)
    } else {
        None
    };
    let b_member = verify_b_member(g, cfg)?;
    let mut ks = vec![num_rational::Rational64::from_integer(0)];
    if let Some(m) = &b_member {
        ks.push(num_rational::Rational64::from_integer(m.k as i64));
    }
    Ok(AnalysisReport {
        graph6: to_graph6(g),
        n: g.n(),
        m: g.m(),
        min_degree: stats.min,
        avg_degree: stats.avg.to_string(),
        max_degree: stats.max,
        connected: g.is_connected(),
        bipartite: g.is_bipartite(),
        q1: signless_radius(g, &cfg.spectral)?,
        q1_exact: exact_signless_radius(g).map(|q| q.to_string()),
        spectrum,
        alpha_star: alpha,
        fpm: alpha.halves() == g.n() as u64,
        deficiency,
        matching_number,
        b_member,
        exception_delta: is_exception_graph(g),
        theorems: check_all(g, &ks, cfg)?,
        epsilon: cfg.epsilon,
    })
}

fn analysis_summary(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph6     {}", r.graph6);
    let _ = writeln!(out, "order      n = {}, m = {}", r.n, r.m);
    let _ = writeln!(
        out,
        "degrees    min {}, avg {}, max {}",
        r.min_degree, r.avg_degree, r.max_degree
    );
    let _ = writeln!(
        out,
        "structure  connected: {}, bipartite: {}",
        r.connected, r.bipartite
    );
    let exact = r
        .q1_exact
        .as_deref()
        .map(|q| format!(" (exact {q})"))
        .unwrap_or_default();
    let _ = writeln!(out, "q1         {:.10}{exact}", r.q1);
    let _ = writeln!(
        out,
        "alpha'*    {} (fractional perfect matching: {})",
        fmt_half(r.alpha_star),
        r.fpm
    );
    if let Some(d) = &r.deficiency {
        let _ = writeln!(
            out,
            "deficiency {} with S = {:?}",
            d.deficiency,
            d.s.as_slice()
        );
    }
    if let Some(m) = &r.b_member {
        let _ = writeln!(
            out,
            "b-member   delta = {}, k = {}, d_y = {}",
            m.delta, m.k, m.d_y
        );
    }
    if let Some(d) = r.exception_delta {
        let _ = writeln!(out, "exception  delta = {d}");
    }
    let _ = writeln!(out, "checks");
    verdict_lines(&mut out, &r.theorems);
    out
}

#[derive(Serialize)]
struct OracleReport {
    graph6: String,
    n: usize,
    alpha_star: HalfInt,
    deficiency: DeficiencyWitness,
    /// `(n - max deficiency) / 2`
    alpha_from_deficiency: HalfInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching_number: Option<usize>,
    witness_total: HalfInt,
    witness_feasible: bool,
    agree: bool,
}

fn oracle(g: &Graph, cfg: &CheckConfig) -> Result<OracleReport, Failure> {
    let n = g.n();
    let deficiency = brute_force_deficiency(g, cfg.brute_cap)?;
    let alpha = fractional_matching_number(g);
    let from_def = HalfInt::from_halves((n - deficiency.deficiency) as u64);
    let matching_number = if n <= MATCHING_ORACLE_CAP {
        Some(brute_force_matching_number(g)?)
    } else {
        None
    };
    let (feasible, total) = verify_fractional_matching(g, &extract_fractional_matching(g))?;
    let matching_ok = matching_number.is_none_or(|m| 2 * m as u64 <= alpha.halves());
    Ok(OracleReport {
        graph6: to_graph6(g),
        n,
        alpha_star: alpha,
        alpha_from_deficiency: from_def,
        agree: from_def == alpha && feasible && total == alpha && matching_ok,
        deficiency,
        matching_number,
        witness_total: total,
        witness_feasible: feasible,
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    if !cli.epsilon.is_finite() || cli.epsilon < 0.0 {
        return Err(Failure::Parse(format!(
            "epsilon {} must be finite and non-negative",
            cli.epsilon
        )));
    }
    let cfg = CheckConfig {
        epsilon: cli.epsilon,
        brute_cap: cli.brute_cap,
        ..CheckConfig::default()
    };
    let pretty = cli.pretty;
    match cli.command {
        Command::Analyze {
            input,
            spectrum,
            oracle,
        } => {
            let g = load(&input)?;
            let report = analyze(&g, &cfg, spectrum, oracle)?;
            emit(&report, pretty, || analysis_summary(&report));
            let violated = report
                .theorems
                .iter()
                .any(|r| r.verdict == Verdict::Violation);
            Ok(violated as u8)
        }
        Command::Construct { spec, format } => {
            let g = family::construct(&spec)?;
            match format {
                Format::Graph6 => println!("{}", to_graph6(&g)),
                Format::EdgeList => print!("{}", to_edge_list(&g)),
            }
            Ok(0)
        }
        Command::Verify {
            input,
            theorem,
            k,
            delete_edge,
            delete_vertex,
        } => {
            let g = load(&input)?;
            let report = match theorem {
                TheoremId::DegreeBounds => check_lemma_degree_bounds(&g, &cfg)?,
                TheoremId::SubgraphMonotonicity => {
                    let deletion = match (delete_edge, delete_vertex) {
                        (Some(e), _) => {
                            let (u, v) = e
                                .split_once(',')
                                .and_then(|(u, v)| {
                                    Some((u.trim().parse().ok()?, v.trim().parse().ok()?))
                                })
                                .ok_or_else(|| {
                                    Failure::Parse(format!("`{e}` is not an edge U,V"))
                                })?;
                            Deletion::Edge(u, v)
                        }
                        (None, Some(v)) => Deletion::Vertex(v),
                        (None, None) => Deletion::None,
                    };
                    check_subgraph_monotonicity(&g, deletion, &cfg)?
                }
                TheoremId::FmLower => {
                    let k = k.ok_or_else(|| Failure::Parse("fm-lower needs --k".into()))?;
                    check_theorem_fm_lower(&g, parse_rational(&k)?, &cfg)?
                }
                TheoremId::BoundRatio => bound_ratio(&g, &cfg)?,
                TheoremId::FpmQ1 => check_fpm_q1(&g, &cfg)?,
                TheoremId::FpmComplement => check_fpm_complement(&g, &cfg)?,
                TheoremId::FpmComplementRefined => check_fpm_complement_refined(&g, &cfg)?,
            };
            emit(&report, pretty, || {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "hypothesis {:?} margin {:?}",
                    report.hypothesis.status, report.hypothesis.margin
                );
                let _ = writeln!(
                    out,
                    "conclusion {:?} margin {:?}",
                    report.conclusion.status, report.conclusion.margin
                );
                verdict_lines(&mut out, std::slice::from_ref(&report));
                out
            });
            Ok((report.verdict == Verdict::Violation) as u8)
        }
        Command::Hunt {
            n,
            p,
            min_degree,
            count,
            seed,
            jobs,
            max_attempts,
        } => {
            let (n_min, n_max) = parse_range(&n)?;
            let hunt_cfg = HuntConfig {
                n_min,
                n_max,
                p,
                min_degree,
                count,
                seed,
                jobs,
                max_attempts,
            };
            let report: HuntReport = hunt(&hunt_cfg, &cfg)?;
            emit(&report, pretty, || {
                let mut out = String::new();
                let _ = writeln!(out, "{} violations", report.violations.len());
                let _ = writeln!(
                    out,
                    "{} graphs accepted of {} sampled, {} reports",
                    report.accepted, report.sampled, report.reports
                );
                for (v, c) in &report.verdicts {
                    let _ = writeln!(out, "  {:<11}{c}", format!("{v:?}").to_uppercase());
                }
                for (flag, c) in &report.flags {
                    let _ = writeln!(out, "  note x{c}: {flag}");
                }
                verdict_lines(&mut out, &report.violations);
                out
            });
            if report.exhausted {
                eprintln!(
                    "warning: only {} of {} graphs passed the filter within the attempt budget",
                    report.accepted, count
                );
            }
            Ok(!report.violations.is_empty() as u8)
        }
        Command::Oracle { input } => {
            let g = load(&input)?;
            let report = oracle(&g, &cfg)?;
            emit(&report, pretty, || {
                format!(
                    "brute deficiency {}\nalpha'* {} (from deficiency {})\nagreement {}\n",
                    report.deficiency.deficiency,
                    fmt_half(report.alpha_star),
                    fmt_half(report.alpha_from_deficiency),
                    report.agree
                )
            });
            Ok(!report.agree as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
