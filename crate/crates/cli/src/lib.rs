//! Command-line adapter over the `multithreshold` library.
//!
//! Exit codes: 0 success, 1 verification or certification failure, 2 usage
//! or input error, 3 oracle budget exceeded.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use multithreshold::colorings::{certify_all, ColorTable, ViolationKind};
use multithreshold::constructions::construct;
use multithreshold::formulas::{theta, Family};
use multithreshold::graphs::{parse_representation, verify, GraphSpec, RepresentationFile, SumsFile, FORMAT_VERSION};
use multithreshold::oracle::{
    is_k_threshold, threshold_number, OracleAnswer, OracleConfig, OracleError, OracleReport, DEFAULT_BUDGET,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "multithreshold", version, about = "Exact multithreshold representations of clique families")]
pub struct Cli {
    /// Write machine output here instead of standard out.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Reserved.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Print progress and decimal approximations to the error stream.
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an optimal representation of a family graph.
    Construct(ConstructArgs),
    /// Check a representation file against its graph.
    Verify(VerifyArgs),
    /// Evaluate the threshold number formula.
    Theta(ThetaArgs),
    /// Decide k-threshold membership of a small graph by exhaustive search.
    Oracle(OracleArgs),
    /// Run the coloring checks on a representation file.
    Certify(CertifyArgs),
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    /// Also write the sorted edge and nonedge rank sums, to `<out>.sums.json`
    /// or after the representation on standard out.
    #[arg(long)]
    pub emit_sums: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub rep: PathBuf,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["family", "table"]))]
pub struct ThetaArgs {
    #[arg(long, requires = "n")]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<u64>,
    /// Print all four families for n = 1..=N as TSV.
    #[arg(long, value_name = "N", conflicts_with_all = ["family", "n"])]
    pub table: Option<u64>,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("target").required(true).args(["graph", "family"]))]
#[command(group = clap::ArgGroup::new("bound").required(true).args(["k", "max_k"]))]
pub struct OracleArgs {
    /// Graph file (graph JSON or representation file) or text such as
    /// `nk3:2`, `cliques:2x2`, `multipartite:2,2`.
    #[arg(long)]
    pub graph: Option<String>,
    #[arg(long, requires = "n")]
    pub family: Option<Family>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub max_k: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long)]
    pub deterministic: bool,
    #[arg(long)]
    pub no_prune: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    SameColorPair,
    IjjIllPair,
    ExtremeColorMultiplicity,
    MissingHalfTriangle,
}

impl CheckKind {
    fn matches(self, kind: ViolationKind) -> bool {
        matches!(
            (self, kind),
            (CheckKind::SameColorPair, ViolationKind::SameColorPair)
                | (CheckKind::IjjIllPair, ViolationKind::IjjIllPair)
                | (CheckKind::ExtremeColorMultiplicity, ViolationKind::ExtremeColorMultiplicity)
                | (CheckKind::MissingHalfTriangle, ViolationKind::MissingHalfTriangle)
        )
    }
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long)]
    pub rep: PathBuf,
    /// Restrict to these checks; all applicable checks by default.
    #[arg(long = "check", value_enum)]
    pub checks: Vec<CheckKind>,
}

/// Failure carrying its exit code and message.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.to_string(),
    }
}

struct Output<'a> {
    out: Option<&'a Path>,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    verbose: bool,
    buffer: String,
}

impl Output<'_> {
    fn line(&mut self, s: &str) {
        self.buffer.push_str(s);
        self.buffer.push('\n');
    }

    fn json<T: Serialize>(&mut self, value: &T) {
        let s = serde_json::to_string(value).expect("plain data serializes");
        self.line(&s);
    }

    fn note(&mut self, s: &str) {
        if self.verbose {
            let _ = writeln!(self.stderr, "{s}");
        }
    }

    fn flush(&mut self) -> Result<(), Failure> {
        match self.out {
            Some(path) => fs::write(path, &self.buffer).map_err(|e| usage(format!("{}: {e}", path.display()))),
            None => self.stdout.write_all(self.buffer.as_bytes()).map_err(usage),
        }
    }
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                let _ = stdout.write_all(text.as_bytes());
            } else {
                let _ = stderr.write_all(text.as_bytes());
            }
            return code;
        }
    };
    let mut out = Output {
        out: cli.out.as_deref(),
        stdout,
        stderr,
        verbose: cli.verbose,
        buffer: String::new(),
    };
    let result = match &cli.command {
        Command::Construct(a) => cmd_construct(a, cli.format, &mut out),
        Command::Verify(a) => cmd_verify(a, cli.format, &mut out),
        Command::Theta(a) => cmd_theta(a, cli.format, &mut out),
        Command::Oracle(a) => cmd_oracle(a, &mut out),
        Command::Certify(a) => cmd_certify(a, &mut out),
    };
    let flushed = out.flush();
    match result.and_then(|code| flushed.map(|_| code)) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(out.stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn read_representation(path: &Path) -> Result<(GraphSpec, multithreshold::graphs::Representation), Failure> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    parse_representation(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn cmd_construct(a: &ConstructArgs, format: OutputFormat, out: &mut Output) -> Result<u8, Failure> {
    let rep = construct(a.family, a.n).map_err(usage)?;
    let graph = GraphSpec::family(a.family, a.n).map_err(usage)?;
    out.note(&format!("{} n={} thresholds={}", a.family, a.n, rep.threshold_count()));
    match format {
        OutputFormat::Json => out.line(&RepresentationFile::new(&graph, &rep).to_json()),
        OutputFormat::Tsv => {
            out.line("kind\tindex\tvalue");
            for (i, r) in rep.ranks().iter().enumerate() {
                out.line(&format!("rank\t{i}\t{r}"));
            }
            for (i, t) in rep.thresholds().iter().enumerate() {
                out.line(&format!("threshold\t{i}\t{t}"));
            }
        }
    }
    if a.emit_sums {
        let sums = SumsFile::new(&graph, &rep).map_err(usage)?;
        let text = serde_json::to_string_pretty(&sums).expect("plain data serializes");
        match out.out {
            Some(path) => {
                let mut name = path.as_os_str().to_owned();
                name.push(".sums.json");
                fs::write(&name, text + "\n").map_err(|e| usage(format!("{}: {e}", Path::new(&name).display())))?;
            }
            None => out.line(&text),
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, format: OutputFormat, out: &mut Output) -> Result<u8, Failure> {
    let (graph, rep) = read_representation(&a.rep)?;
    let report = verify(&rep, &graph).map_err(usage)?;
    match format {
        OutputFormat::Json => out.json(&json!({
            "format_version": FORMAT_VERSION,
            "ok": report.ok,
            "threshold_count": rep.threshold_count(),
            "mismatches": report.mismatches,
        })),
        OutputFormat::Tsv => {
            out.line("u\tv\texpected_edge\tgot_edge\trank_sum");
            for m in &report.mismatches {
                out.line(&format!("{}\t{}\t{}\t{}\t{}", m.u, m.v, m.expected_edge, m.got_edge, m.rank_sum));
            }
        }
    }
    Ok(if report.ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_theta(a: &ThetaArgs, format: OutputFormat, out: &mut Output) -> Result<u8, Failure> {
    if let Some(limit) = a.table {
        let header: Vec<&str> = std::iter::once("n").chain(Family::ALL.iter().map(|f| f.name())).collect();
        out.line(&header.join("\t"));
        for n in 1..=limit {
            let mut row = vec![n.to_string()];
            for &f in &Family::ALL {
                row.push(theta(f, n).map_or_else(|_| "-".to_string(), |t| t.theta.to_string()));
            }
            out.line(&row.join("\t"));
        }
        return Ok(EXIT_OK);
    }
    let (family, n) = (a.family.expect("clap group"), a.n.expect("clap requires"));
    let t = theta(family, n).map_err(usage)?;
    match format {
        OutputFormat::Json => out.json(&json!({
            "format_version": FORMAT_VERSION,
            "family": family,
            "n": n,
            "theta": t.theta,
            "regime": t.regime,
            "m": t.m,
        })),
        OutputFormat::Tsv => {
            out.line("family\tn\ttheta\tregime\tm");
            let regime = serde_json::to_value(t.regime).expect("enum serializes");
            out.line(&format!("{family}\t{n}\t{}\t{}\t{}", t.theta, regime.as_str().unwrap_or(""), t.m));
        }
    }
    Ok(EXIT_OK)
}

fn oracle_graph(a: &OracleArgs) -> Result<GraphSpec, Failure> {
    if let Some(family) = a.family {
        return GraphSpec::family(family, a.n.expect("clap requires")).map_err(usage);
    }
    let text = a.graph.as_deref().expect("clap group");
    if Path::new(text).is_file() {
        let body = fs::read_to_string(text).map_err(|e| usage(format!("{text}: {e}")))?;
        if let Ok(file) = RepresentationFile::from_json(&body) {
            return Ok(file.graph);
        }
        return body.parse().map_err(|e| usage(format!("{text}: {e}")));
    }
    text.parse().map_err(usage)
}

fn report_json(report: &OracleReport, graph: &GraphSpec) -> Value {
    let mut v = json!({
        "assignments_checked": report.assignments_checked,
        "lps_solved": report.lps_solved,
    });
    match &report.answer {
        OracleAnswer::Yes(rep) => {
            v["answer"] = json!("yes");
            v["witness"] = serde_json::to_value(RepresentationFile::new(graph, rep)).expect("plain data serializes");
        }
        OracleAnswer::No => v["answer"] = json!("no"),
    }
    v
}

fn cmd_oracle(a: &OracleArgs, out: &mut Output) -> Result<u8, Failure> {
    let graph = oracle_graph(a)?;
    let cfg = OracleConfig {
        budget: a.budget,
        prune: !a.no_prune,
        deterministic: a.deterministic,
    };
    let budget_exceeded = |out: &mut Output, k: usize, budget: u64| {
        out.json(&json!({
            "format_version": FORMAT_VERSION,
            "k": k,
            "answer": "unknown",
            "budget": budget,
        }));
        Ok(EXIT_BUDGET)
    };
    if let Some(k) = a.k {
        return match is_k_threshold(&graph, k, &cfg) {
            Ok(report) => {
                let mut v = report_json(&report, &graph);
                v["format_version"] = json!(FORMAT_VERSION);
                v["k"] = json!(k);
                out.json(&v);
                Ok(EXIT_OK)
            }
            Err(OracleError::BudgetExceeded { budget }) => budget_exceeded(out, k, budget),
            Err(e) => Err(usage(e)),
        };
    }
    let max_k = a.max_k.expect("clap group");
    match threshold_number(&graph, max_k, &cfg) {
        Ok(t) => {
            let reports: Vec<Value> = t.reports.iter().map(|r| report_json(r, &graph)).collect();
            let mut v = json!({
                "format_version": FORMAT_VERSION,
                "max_k": max_k,
                "answer": if t.theta.is_some() { "yes" } else { "no" },
                "theta": t.theta,
                "reports": reports,
            });
            if let Some(rep) = &t.witness {
                v["witness"] = serde_json::to_value(RepresentationFile::new(&graph, rep)).expect("plain data serializes");
            }
            out.json(&v);
            Ok(EXIT_OK)
        }
        Err(OracleError::BudgetExceeded { budget }) => budget_exceeded(out, max_k, budget),
        Err(e) => Err(usage(e)),
    }
}

fn cmd_certify(a: &CertifyArgs, out: &mut Output) -> Result<u8, Failure> {
    let (graph, rep) = read_representation(&a.rep)?;
    let table = ColorTable::from_representation(&rep, &graph).map_err(usage)?;
    let violations: Vec<_> = certify_all(&table, &graph)
        .map_err(usage)?
        .into_iter()
        .filter(|v| a.checks.is_empty() || a.checks.iter().any(|c| c.matches(v.kind)))
        .collect();
    out.note(&format!("{} violations", violations.len()));
    for v in &violations {
        out.json(v);
    }
    Ok(if violations.is_empty() { EXIT_OK } else { EXIT_FAILED })
}
