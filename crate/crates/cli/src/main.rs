use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use symcomb::agtp::{enumerate_agtp, LhsMode};
use symcomb::ast::{ast_genfun, enumerate_ast, verify_ast_theorem};
use symcomb::closed_forms::{lhs_at_one, product_formula};
use symcomb::identities::IdentityReport;
use symcomb::lgv_paths::{enumerate_path_families, pp_pairs, FamilyMode, Parity, WMode};
use symcomb::rsk::{rsk_symmetric_forward, rsk_symmetric_inverse, verify_rsk_roundtrip, SymMatrix, SSYT};
use symcomb::schur_gt::enumerate_gt;
use symcomb::suite::{identity_ids, run_suite, verify_one, GridValue, SuiteConfig, DEFAULT_SUITE};

#[derive(Parser)]
#[command(name = "symcomb", version, about = "Exact verification of Littlewood-type identities and their combinatorial models")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write JSON output to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify one identity at one parameter point.
    Verify(VerifyArgs),
    /// List combinatorial objects.
    #[command(subcommand)]
    Enumerate(EnumerateCmd),
    /// Lattice path families.
    #[command(subcommand)]
    Paths(PathsCmd),
    /// Symmetric RSK.
    #[command(subcommand)]
    Rsk(RskCmd),
    /// Alternating sign triangles.
    #[command(subcommand)]
    Ast(AstCmd),
    /// Product formula at X = 1.
    Formula(FormulaArgs),
    /// Run a batch of verifications from a TOML config (built-in suite if omitted).
    Suite(SuiteArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id; see --list.
    id: Option<String>,
    #[arg(long)]
    list: bool,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    m: Option<i64>,
    #[arg(long)]
    degree: Option<i64>,
    /// Extra parameter, e.g. `w=0` or `flip=3`.
    #[arg(long = "bind", value_name = "KEY=VALUE")]
    bind: Vec<String>,
}

#[derive(Subcommand)]
enum EnumerateCmd {
    /// Arrowed patterns with a given bottom row.
    Agtp {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bottom: Vec<i64>,
        #[arg(long)]
        latex: bool,
    },
    /// Generalized patterns with a given bottom row.
    Gt {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bottom: Vec<i64>,
    },
    /// Plane-partition pairs.
    Pp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_enum, default_value = "odd")]
        parity: ParityArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Subcommand)]
enum PathsCmd {
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value = "signed")]
        mode: ModeArg,
        /// Numeric w (0 or 1); symbolic if omitted.
        #[arg(long)]
        w: Option<u8>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Signed,
    Below,
    Nonintersecting,
}

#[derive(Subcommand)]
enum RskCmd {
    /// Matrix (JSON rows) to tableau.
    Forward {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Tableau (JSON rows) to matrix.
    Inverse {
        #[arg(long)]
        tableau: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Exhaustive round trip over small symmetric matrices.
    Roundtrip {
        #[arg(long)]
        n: usize,
        #[arg(long = "max-entry")]
        max_entry: u32,
    },
}

#[derive(Subcommand)]
enum AstCmd {
    Count {
        #[arg(long)]
        n: usize,
    },
    Verify {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args)]
struct FormulaArgs {
    #[arg(long, allow_hyphen_values = true)]
    w: i64,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: i64,
    /// Also evaluate the generating function at X = 1.
    #[arg(long)]
    check: bool,
}

#[derive(Args)]
struct SuiteArgs {
    config: Option<PathBuf>,
    /// Print the built-in config and exit.
    #[arg(long)]
    print_default: bool,
}

/// Writes to stdout; a closed pipe is not an error.
fn say(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

/// Where and how results go.
struct Output<'a> {
    json: bool,
    out: Option<&'a Path>,
}

impl Output<'_> {
    fn emit(&self, value: &Value, text: impl FnOnce() -> String) -> Result<()> {
        let rendered = serde_json::to_string_pretty(value)?;
        if let Some(path) = self.out {
            std::fs::write(path, rendered + "\n").with_context(|| format!("writing {}", path.display()))?;
        } else if self.json {
            say(&(rendered + "\n"));
        }
        if !self.json {
            say(&text());
        }
        Ok(())
    }
}

fn report_line(r: &IdentityReport) -> String {
    let status = if r.verified() { "verified" } else { "FAILED" };
    let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let mut line = format!("{status:8} {} {}", r.identity, params.join(" "));
    if let Some(m) = &r.first_mismatch {
        line += &format!("  [{}: lhs {} rhs {}]", m.monomial, m.lhs, m.rhs);
    }
    line + "\n"
}

fn reports_value(reports: &[IdentityReport]) -> Result<Value> {
    Ok(if reports.len() == 1 { serde_json::to_value(&reports[0])? } else { serde_json::to_value(reports)? })
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        1
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(serde_json::from_str(&text)?)
}

/// Accepts either a bare array of rows or an object with the given field.
fn rows_of(v: Value, field: &str) -> Result<Vec<Vec<u32>>> {
    let rows = match v {
        Value::Object(mut o) => o.remove(field).ok_or_else(|| anyhow!("missing `{field}`"))?,
        other => other,
    };
    Ok(serde_json::from_value(rows)?)
}

fn verify(args: VerifyArgs, seed: Option<u64>, out: &Output) -> Result<u8> {
    if args.list {
        let ids = identity_ids();
        out.emit(&json!(ids), || ids.join("\n") + "\n")?;
        return Ok(0);
    }
    let id = args.id.ok_or_else(|| anyhow!("missing identity id (see --list)"))?;
    let mut p = BTreeMap::new();
    for (k, v) in [("n", args.n), ("m", args.m), ("degree", args.degree)] {
        if let Some(v) = v {
            p.insert(k.to_string(), v);
        }
    }
    for b in &args.bind {
        let (k, v) = b.split_once('=').ok_or_else(|| anyhow!("expected KEY=VALUE, got `{b}`"))?;
        p.insert(k.trim().to_string(), v.trim().parse().with_context(|| format!("value in `{b}`"))?);
    }
    if id == "lemma-limit" {
        if let Some(s) = seed {
            p.entry("seed".into()).or_insert(s as i64);
        }
    }
    let reports = verify_one(&id, &p)?;
    out.emit(&reports_value(&reports)?, || reports.iter().map(report_line).collect())?;
    Ok(status(reports.iter().all(|r| r.verified())))
}

fn enumerate(cmd: EnumerateCmd, out: &Output) -> Result<u8> {
    match cmd {
        EnumerateCmd::Agtp { bottom, latex } => {
            let list = enumerate_agtp(&bottom);
            let value: Value = list
                .iter()
                .map(|(a, w)| json!({"entries": a.rows, "decorations": a.decorations, "sign": a.sign(), "weight": w.to_string()}))
                .collect();
            out.emit(&value, || {
                let mut s = String::new();
                for (a, w) in &list {
                    if latex {
                        s += &format!("{}\n", a.to_latex());
                    } else {
                        s += &format!("{:?}  {w}\n", a.rows);
                    }
                }
                s + &format!("{} patterns\n", list.len())
            })?;
        }
        EnumerateCmd::Gt { bottom } => {
            let list = enumerate_gt(&bottom);
            let value: Value = list.iter().map(|(g, sign)| json!({"rows": g.rows, "sign": sign, "weight": g.weight().to_string()})).collect();
            out.emit(&value, || {
                list.iter().map(|(g, sign)| format!("{:?}  {sign:+}  {}\n", g.rows, g.weight())).collect::<String>()
                    + &format!("{} patterns\n", list.len())
            })?;
        }
        EnumerateCmd::Pp { n, l, parity } => {
            let parity = match parity {
                ParityArg::Odd => Parity::Odd,
                ParityArg::Even => Parity::Even,
            };
            let list = pp_pairs(n, l, parity);
            let value: Value = list.iter().map(|(pair, w)| json!({"pair": pair, "weight": w.to_string()})).collect();
            out.emit(&value, || format!("{} pairs\n", list.len()))?;
        }
    }
    Ok(0)
}

fn paths(cmd: PathsCmd, out: &Output) -> Result<u8> {
    let PathsCmd::Enumerate { n, m, mode, w } = cmd;
    let mode = match mode {
        ModeArg::Signed => FamilyMode::AllSigned,
        ModeArg::Below => FamilyMode::BelowDisjoint,
        ModeArg::Nonintersecting => FamilyMode::NonIntersecting,
    };
    let wmode = match w {
        None => WMode::Symbolic,
        Some(0) => WMode::Zero,
        Some(1) => WMode::One,
        Some(other) => bail!("w must be 0 or 1, got {other}"),
    };
    let list = enumerate_path_families(n, m, mode, wmode)?;
    let value: Value = list
        .iter()
        .map(|(f, wt)| {
            json!({
                "starts": f.paths.iter().map(|p| p.kind).collect::<Vec<_>>(),
                "sigma": f.sigma(),
                "paths": f.paths,
                "weight": wt.to_string(),
            })
        })
        .collect();
    out.emit(&value, || {
        list.iter().map(|(f, wt)| format!("sigma {:?}  {wt}\n", f.sigma())).collect::<String>() + &format!("{} families\n", list.len())
    })?;
    Ok(0)
}

fn rsk(cmd: RskCmd, out: &Output) -> Result<u8> {
    match cmd {
        RskCmd::Forward { matrix } => {
            let a = SymMatrix::new(rows_of(read_json(&matrix)?, "entries")?)?;
            let t = rsk_symmetric_forward(&a);
            out.emit(&json!(t.rows), || t.rows.iter().map(|r| format!("{r:?}\n")).collect())?;
        }
        RskCmd::Inverse { tableau, n } => {
            let t = SSYT { rows: rows_of(read_json(&tableau)?, "rows")? };
            let a = rsk_symmetric_inverse(&t, n)?;
            out.emit(&json!(a.entries), || a.entries.iter().map(|r| format!("{r:?}\n")).collect())?;
        }
        RskCmd::Roundtrip { n, max_entry } => {
            let r = verify_rsk_roundtrip(n, max_entry);
            out.emit(&serde_json::to_value(&r)?, || report_line(&r))?;
            return Ok(status(r.verified()));
        }
    }
    Ok(0)
}

fn ast(cmd: AstCmd, out: &Output) -> Result<u8> {
    match cmd {
        AstCmd::Count { n } => {
            let count = enumerate_ast(n).len();
            let gf = ast_genfun(n);
            out.emit(&json!({"n": n, "count": count, "generating_function": gf.to_string()}), || format!("{count}\n"))?;
            Ok(0)
        }
        AstCmd::Verify { n } => {
            let r = verify_ast_theorem(n);
            out.emit(&serde_json::to_value(&r)?, || report_line(&r))?;
            Ok(status(r.verified()))
        }
    }
}

fn formula(args: FormulaArgs, out: &Output) -> Result<u8> {
    let value = product_formula(args.w, args.n, args.m)?;
    let mut v = json!({"w": args.w, "n": args.n, "m": args.m, "value": value.to_string()});
    let mut ok = true;
    if args.check {
        let lhs = lhs_at_one(args.n, args.m, args.w, LhsMode::Normalized)?;
        ok = lhs == value;
        v["generating_function"] = json!(lhs.to_string());
        v["agrees"] = json!(ok);
    }
    out.emit(&v, || {
        if args.check {
            format!("{value}  ({})\n", if ok { "agrees" } else { "DIFFERS" })
        } else {
            format!("{value}\n")
        }
    })?;
    Ok(status(ok))
}

fn suite(args: SuiteArgs, cli_threads: Option<usize>, seed: Option<u64>, json: bool, out: Option<&Path>) -> Result<u8> {
    if args.print_default {
        say(DEFAULT_SUITE.trim_start());
        return Ok(0);
    }
    let mut config = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            SuiteConfig::parse(&text)?
        }
        None => SuiteConfig::default_suite(),
    };
    if cli_threads.is_some() {
        config.threads = cli_threads;
    }
    if let Some(s) = seed {
        for e in config.verify.iter_mut().filter(|e| e.identity == "lemma-limit") {
            e.grid.entry("seed".into()).or_insert(GridValue::Int(s as i64));
        }
    }
    let report = run_suite(&config)?;
    let target = out.map(Path::to_path_buf).or_else(|| config.out.clone());
    if let Some(path) = &target {
        std::fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
    } else if json {
        say(&(report.to_json() + "\n"));
    }
    if !json {
        for r in &report.reports {
            say(&report_line(r));
        }
        let s = &report.summary;
        say(&format!("{} checks: {} verified, {} failed, {} skipped\n", s.total, s.verified, s.failed, s.skipped));
    }
    Ok(report.exit_code() as u8)
}

fn run(cli: Cli) -> Result<u8> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    let out = Output { json: cli.json, out: cli.out.as_deref() };
    match cli.command {
        Command::Verify(a) => verify(a, cli.seed, &out),
        Command::Enumerate(c) => enumerate(c, &out),
        Command::Paths(c) => paths(c, &out),
        Command::Rsk(c) => rsk(c, &out),
        Command::Ast(c) => ast(c, &out),
        Command::Formula(a) => formula(a, &out),
        Command::Suite(a) => suite(a, cli.threads, cli.seed, cli.json, cli.out.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
