use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use treeindex::enumeration::{
    enumerate_semiregular, find_minimizers, SearchOptions, SearchReport, DEFAULT_MAX_ORDER,
    DEFAULT_TIE_TOL,
};
use treeindex::spectral::{perron, spectral_radius, SpectralResult, DEFAULT_MAX_ITER, DEFAULT_TOL};
use treeindex::transforms::{
    lemma1_property_run, reduce_to_caterpillar, theorem1_witness, Lemma1Summary, Policy, StepKind,
    SwitchMove,
};
use treeindex::tree::families::caterpillar;
use treeindex::tree::format::{
    sig17, sig6, to_json_pretty, tree_from_json, tree_to_dot, tree_to_json,
};
use treeindex::{DegreeSequence, Tree};

/// Spectral radius of trees: minimizer search, reductions to the caterpillar
/// and their certificates.
#[derive(Parser)]
#[command(name = "treeindex", version)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Residual tolerance for power iteration.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Minimal,
    Any,
}

#[derive(Subcommand)]
enum Command {
    /// Print the caterpillar C(d, n).
    Caterpillar {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
    },
    /// Index, residual and Perron vector of a tree read from a JSON file.
    Mu { file: PathBuf },
    /// Check that C(d, n) is the unique minimizer over its semiregular class.
    VerifyTheorem1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// All trees of smallest index with a given degree sequence.
    Search {
        /// Degree sequence, e.g. `4^4,3^2,2,1^12`.
        #[arg(long)]
        pi: String,
        #[arg(long, default_value_t = DEFAULT_TIE_TOL)]
        tie_tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Refuse sequences with more vertices than this.
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: usize,
    },
    /// Reduce a semiregular tree to the caterpillar and report the trace.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "minimal")]
        policy: PolicyArg,
    },
    /// Randomized check of the switching inequality.
    CheckLemma1 {
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: usize,
    },
}

/// Rendered output and whether the command's check held.
struct Output {
    text: String,
    verified: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            verified: true,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Err(e) = emit(cli.out.as_deref(), &out.text) {
                report_error(&e);
                return ExitCode::from(2);
            }
            if out.verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            report_error(&e);
            ExitCode::from(2)
        }
    }
}

/// Print the error chain, skipping causes already quoted by their parent.
fn report_error(e: &anyhow::Error) {
    let mut line = String::from("error");
    let mut last = String::new();
    for cause in e.chain() {
        let msg = cause.to_string();
        if !last.contains(&msg) {
            line.push_str(": ");
            line.push_str(&msg);
        }
        last = msg;
    }
    eprintln!("{line}");
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        bail!("--tol must be positive, got {}", cli.tol);
    }
    match &cli.command {
        Command::Caterpillar { d, n } => {
            let t = caterpillar(*d, *n)?;
            Ok(Output::ok(render_tree(
                &t,
                cli.format.unwrap_or(Format::Json),
                "caterpillar",
            )))
        }
        Command::Mu { file } => {
            let t = read_tree(file)?;
            let r = spectral_radius(&t, cli.tol, DEFAULT_MAX_ITER)?;
            render_mu(&r, cli.format.unwrap_or(Format::Table)).map(Output::ok)
        }
        Command::VerifyTheorem1 { d, n, jobs } => {
            verify_theorem1(*d, *n, *jobs, cli.format.unwrap_or(Format::Table))
        }
        Command::Search {
            pi,
            tie_tol,
            jobs,
            max_order,
        } => {
            let pi: DegreeSequence = pi.parse()?;
            let options = SearchOptions {
                tie_tol: *tie_tol,
                jobs: *jobs,
                max_order: *max_order,
            };
            let report = find_minimizers(&pi, &options)?;
            Ok(Output::ok(render_search(
                &report,
                cli.format.unwrap_or(Format::Table),
            )))
        }
        Command::Reduce { file, policy } => reduce(
            &read_tree(file)?,
            *policy,
            cli.format.unwrap_or(Format::Table),
        ),
        Command::CheckLemma1 { seed, count } => {
            let s = lemma1_property_run(*seed, *count)?;
            let text = render_lemma1(&s, cli.format.unwrap_or(Format::Table))?;
            Ok(Output {
                text,
                verified: s.passed(),
            })
        }
    }
}

fn read_tree(path: &Path) -> Result<Tree> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    tree_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn unsupported(format: Format, what: &str) -> anyhow::Error {
    let name = format
        .to_possible_value()
        .map(|v| v.get_name().to_owned())
        .unwrap_or_default();
    anyhow::anyhow!("format {name} is not available for {what}")
}

fn render_tree(t: &Tree, format: Format, name: &str) -> String {
    match format {
        Format::Json => tree_to_json(t) + "\n",
        Format::Dot => tree_to_dot(t, name),
        Format::Csv => {
            let mut out = String::from("u,v\n");
            for (u, v) in t.edges() {
                let _ = writeln!(out, "{u},{v}");
            }
            out
        }
        Format::Table => {
            let mut out = format!("vertices {}\n", t.vertex_count());
            for (u, v) in t.edges() {
                let _ = writeln!(out, "{u:>4} -- {v}");
            }
            out
        }
    }
}

#[derive(Serialize)]
struct MuRecord<'a> {
    mu: f64,
    residual: f64,
    iterations: usize,
    perron: &'a [f64],
}

fn render_mu(r: &SpectralResult, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            to_json_pretty(&MuRecord {
                mu: r.mu,
                residual: r.residual,
                iterations: r.iterations,
                perron: r.perron.values(),
            }) + "\n"
        }
        Format::Csv => {
            let mut out = String::from("vertex,perron\n");
            for (v, x) in r.perron.values().iter().enumerate() {
                let _ = writeln!(out, "{v},{}", sig17(*x));
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "mu         {}\nresidual   {}\niterations {}\n\nvertex  perron\n",
                sig6(r.mu),
                sig6(r.residual),
                r.iterations
            );
            for (v, x) in r.perron.values().iter().enumerate() {
                let _ = writeln!(out, "{v:>6}  {}", sig6(*x));
            }
            out
        }
        Format::Dot => return Err(unsupported(format, "mu")),
    })
}

#[derive(Serialize)]
struct ClassRow {
    canonical: String,
    mu: f64,
    is_caterpillar: bool,
}

#[derive(Serialize)]
struct Theorem1Record {
    d: usize,
    n: usize,
    verified: bool,
    gap: Option<f64>,
    trees: Vec<ClassRow>,
}

fn verify_theorem1(d: usize, n: usize, jobs: usize, format: Format) -> Result<Output> {
    let class = enumerate_semiregular(d, n)?;
    let cat = caterpillar(d, n)?;
    let options = SearchOptions {
        jobs,
        max_order: n.max(DEFAULT_MAX_ORDER),
        ..SearchOptions::default()
    };
    let report = find_minimizers(&DegreeSequence::semiregular(d, n)?, &options)?;
    let verified = report.unique
        && report.minimizers[0].tree.is_isomorphic(&cat)
        && report.gap.is_none_or(|g| g > DEFAULT_TIE_TOL);
    let mut rows = Vec::with_capacity(class.len());
    for t in &class {
        rows.push(ClassRow {
            canonical: t.canonical_form().to_string(),
            mu: perron(t)?.mu,
            is_caterpillar: t.is_caterpillar(),
        });
    }
    rows.sort_by(|a, b| {
        a.mu.total_cmp(&b.mu)
            .then_with(|| a.canonical.cmp(&b.canonical))
    });
    let record = Theorem1Record {
        d,
        n,
        verified,
        gap: report.gap,
        trees: rows,
    };
    let text = match format {
        Format::Json => to_json_pretty(&record) + "\n",
        Format::Csv => {
            let mut out = String::from("canonical_code,mu,is_caterpillar\n");
            for r in &record.trees {
                let _ = writeln!(out, "{},{},{}", r.canonical, sig17(r.mu), r.is_caterpillar);
            }
            out
        }
        Format::Table => {
            let mut out = format!(
                "class T({d},{n}): {} trees\n\n{:>4}  {:<12}  {:<11}  canonical\n",
                record.trees.len(),
                "rank",
                "mu",
                "caterpillar"
            );
            for (i, r) in record.trees.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{:>4}  {:<12}  {:<11}  {}",
                    i + 1,
                    sig6(r.mu),
                    r.is_caterpillar,
                    r.canonical
                );
            }
            let gap = record.gap.map_or("none".to_owned(), sig6);
            let verdict = if verified { "verified" } else { "NOT verified" };
            let _ = writeln!(
                out,
                "\ngap to runner-up {gap}\ncaterpillar is the unique minimizer: {verdict}"
            );
            out
        }
        Format::Dot => return Err(unsupported(format, "verify-theorem1")),
    };
    Ok(Output { text, verified })
}

fn render_search(report: &SearchReport, format: Format) -> String {
    match format {
        Format::Json => to_json_pretty(report) + "\n",
        Format::Csv => report.to_csv(),
        Format::Dot => report
            .minimizers
            .iter()
            .enumerate()
            .map(|(i, m)| tree_to_dot(&m.tree, &format!("minimizer_{}", i + 1)))
            .collect(),
        Format::Table => {
            let mut out = format!(
                "degree sequence  {}\ntrees            {}\nmin mu           {}\nminimizers       {}\nrunner-up mu     {}\ngap              {}\n\n",
                report.pi,
                report.tree_count,
                sig6(report.min_mu),
                report.minimizers.len(),
                report.runner_up_mu.map_or("none".to_owned(), sig6),
                report.gap.map_or("none".to_owned(), sig6),
            );
            let _ = writeln!(
                out,
                "{:<12}  {:<11}  {:<15}  {:<14}  canonical",
                "mu", "caterpillar", "buds max degree", "trunk monotone"
            );
            for m in &report.minimizers {
                let o = m.observations;
                let _ = writeln!(
                    out,
                    "{:<12}  {:<11}  {:<15}  {:<14}  {}",
                    sig6(m.mu),
                    o.is_caterpillar,
                    o.buds_have_max_branch_degree,
                    o.trunk_degrees_monotone,
                    m.canonical
                );
            }
            out
        }
    }
}

#[derive(Serialize)]
struct ReduceRow {
    kind: StepKind,
    v_star: usize,
    #[serde(rename = "move")]
    mv: SwitchMove,
    fork_size: usize,
    rq_before: Option<f64>,
    rq_after: Option<f64>,
}

#[derive(Serialize)]
struct ReduceRecord {
    d: usize,
    steps: usize,
    mu_g: Option<f64>,
    mu_cat: Option<f64>,
    rq: Option<f64>,
    gap_ok: Option<bool>,
    trace: Vec<ReduceRow>,
}

/// With the minimal policy on a non-caterpillar the trace is the witness
/// replay, carrying Rayleigh quotients; otherwise it lists the forward
/// reductions alone.
fn reduce(g: &Tree, policy: PolicyArg, format: Format) -> Result<Output> {
    let policy = match policy {
        PolicyArg::Minimal => Policy::Minimal,
        PolicyArg::Any => Policy::Any,
    };
    let seq = reduce_to_caterpillar(g, policy)?;
    let mut record = ReduceRecord {
        d: seq.d,
        steps: seq.steps.len(),
        mu_g: None,
        mu_cat: None,
        rq: None,
        gap_ok: None,
        trace: seq
            .steps
            .iter()
            .map(|s| ReduceRow {
                kind: s.kind,
                v_star: s.reduction_point,
                mv: s.mv,
                fork_size: s.fork_size,
                rq_before: None,
                rq_after: None,
            })
            .collect(),
    };
    if policy == Policy::Minimal && !seq.steps.is_empty() {
        let w = theorem1_witness(g)?;
        record.mu_g = Some(w.mu_g);
        record.mu_cat = Some(w.mu_cat);
        record.rq = Some(w.rq);
        record.gap_ok = Some(w.gap_ok);
        record.trace = w
            .trace
            .iter()
            .map(|r| ReduceRow {
                kind: r.kind,
                v_star: r.v_star,
                mv: r.mv,
                fork_size: r.fork_size,
                rq_before: Some(r.rq_before),
                rq_after: Some(r.rq_after),
            })
            .collect();
    }
    let verified = record.gap_ok != Some(false);
    let opt = |x: Option<f64>, f: fn(f64) -> String| x.map_or(String::new(), f);
    let text = match format {
        Format::Json => to_json_pretty(&record) + "\n",
        Format::Csv => {
            let mut out = String::from("kind,v_star,u1,v1,u2,v2,fork_size,rq_before,rq_after\n");
            for r in &record.trace {
                let m = r.mv;
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    kind_name(r.kind),
                    r.v_star,
                    m.u1,
                    m.v1,
                    m.u2,
                    m.v2,
                    r.fork_size,
                    opt(r.rq_before, sig17),
                    opt(r.rq_after, sig17)
                );
            }
            out
        }
        Format::Table => {
            let mut out = format!("d {}, {} reduction step(s)\n", record.d, record.steps);
            if let (Some(mu_g), Some(mu_cat), Some(rq)) = (record.mu_g, record.mu_cat, record.rq) {
                let _ = writeln!(
                    out,
                    "mu(G) {}  R_G(f) {}  mu(caterpillar) {}",
                    sig6(mu_g),
                    sig6(rq),
                    sig6(mu_cat)
                );
            }
            if !record.trace.is_empty() {
                let _ = writeln!(
                    out,
                    "\n{:<24}  {:>6}  {:<18}  {:>4}  {:<12}  rq after",
                    "kind", "v*", "move u1 v1 u2 v2", "fork", "rq before"
                );
            }
            for r in &record.trace {
                let m = r.mv;
                let _ = writeln!(
                    out,
                    "{:<24}  {:>6}  {:<18}  {:>4}  {:<12}  {}",
                    kind_name(r.kind),
                    r.v_star,
                    format!("{} {} {} {}", m.u1, m.v1, m.u2, m.v2),
                    r.fork_size,
                    opt(r.rq_before, sig6),
                    opt(r.rq_after, sig6)
                );
            }
            if record.gap_ok == Some(false) {
                out.push_str("\nwitness check FAILED\n");
            }
            out
        }
        Format::Dot => return Err(unsupported(format, "reduce")),
    };
    Ok(Output { text, verified })
}

fn kind_name(k: StepKind) -> &'static str {
    match k {
        StepKind::BranchReduction => "branch_reduction",
        StepKind::InverseBranchReduction => "inverse_branch_reduction",
    }
}

fn render_lemma1(s: &Lemma1Summary, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => to_json_pretty(s) + "\n",
        Format::Csv => format!(
            "seed,instances,strict_instances,min_delta,max_closed_form_error,strictness_mismatches,unimodality_failures\n{},{},{},{},{},{},{}\n",
            s.seed,
            s.instances,
            s.strict_instances,
            sig17(s.min_delta),
            sig17(s.max_closed_form_error),
            s.strictness_mismatches,
            s.unimodality_failures
        ),
        Format::Table => format!(
            "seed                   {}\ninstances              {}\nstrict                 {}\nmin delta              {}\nclosed-form error      {}\nstrictness mismatches  {}\nunimodality failures   {}\nresult                 {}\n",
            s.seed,
            s.instances,
            s.strict_instances,
            sig6(s.min_delta),
            sig6(s.max_closed_form_error),
            s.strictness_mismatches,
            s.unimodality_failures,
            if s.passed() { "pass" } else { "FAIL" }
        ),
        Format::Dot => return Err(unsupported(format, "check-lemma1")),
    })
}
