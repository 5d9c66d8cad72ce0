//! Command-line front end for `dmcurve`.
//!
//! [`run`] does all the work and returns the exit code together with the
//! captured output, so the binary is a thin wrapper and tests need no process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use dmcurve::bounds::{defect_report, dm_genus_bounds, general_genus_bound, ihara_bound, weil_interval};
use dmcurve::classify::{classify_counts, genus2_jacobian_classify};
use dmcurve::curves::{count_points_with, CountOptions, DEFAULT_BUDGET};
use dmcurve::ff::make_field;
use dmcurve::intpoly::{is_q_weil, is_weil_lpoly, IntPoly};
use dmcurve::json::int_value;
use dmcurve::search::{
    corpus_verify_with, genus2_dm_search_with, ihara_candidate_scan, prime_powers_up_to, scan_csv,
    shipped_corpus, Corpus, CorpusEntry, EntryStatus, SearchOptions, VerifyOptions,
};
use dmcurve::zeta::{lpoly_from_counts, zeta_report};
use dmcurve::Error;
use serde::Serialize;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "dmcurve", version, about = "Point counts, zeta functions and DM-curve checks over finite fields")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Override the enumeration budget (field size for counting, q for search).
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CurveArgs {
    /// Curve file: one corpus entry, or a corpus document together with --name.
    #[arg(long)]
    curve: PathBuf,
    /// Entry to pick when the file holds a whole corpus.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// N_k of a curve over F_{q^k}.
    Count {
        #[command(flatten)]
        curve: CurveArgs,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        ext: u32,
    },
    /// L-polynomial from N_1, .., N_g.
    Lpoly {
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Weil and Ihara bounds, and the DM-defect report when counts are given.
    Bounds {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        q: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        g: i64,
        #[arg(long, requires = "n2")]
        n1: Option<i64>,
        #[arg(long, requires = "n1")]
        n2: Option<i64>,
        /// L-coefficient c of (1 + cT + qT^2)^g for the DM genus bound.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<i64>,
    },
    /// DS / DM / Ihara / Weil flags for a count pair.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        q: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        g: i64,
        #[arg(long)]
        n1: i64,
        #[arg(long)]
        n2: i64,
    },
    /// Exact q-Weil test of a monic polynomial or an L-polynomial.
    Weilcheck {
        /// Integer coefficients, lowest degree first: "c0,c1,..".
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        q: i64,
    },
    /// Genus-2 Jacobian classification of (T^2 + aT + q)^2, q = p^n.
    Genus2 {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Couples (g, q) whose Ihara bound is an integer, as CSV.
    Scan {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        gmax: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(2..))]
        qmax: i64,
    },
    /// Genus-2 models over F_{p^n} with DM-defect 0.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Stop after this many hits.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Recount and reclassify every entry of a corpus.
    Verify {
        /// Corpus file; the bundled corpus when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::OddDegree(_) | Error::NonMonic | Error::Corpus(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Domain(e),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

/// Variant name of an error, for the structured error object.
fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_owned()
}

struct Out {
    json: bool,
    text: String,
    code: i32,
}

impl Out {
    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn value<T: Serialize>(&mut self, v: &T) {
        let s = serde_json::to_string_pretty(v).expect("serializable");
        self.line(s);
    }
}

/// Parse `argv` (including the program name) and execute it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Out { json: cli.json, text: String::new(), code: EXIT_OK };
    match execute(&cli, &mut out) {
        Ok(()) => Outcome { code: out.code, stdout: out.text, stderr: String::new() },
        Err(f) => {
            let (code, kind, message) = match f {
                Failure::Usage(m) => (EXIT_USAGE, "UsageError".to_owned(), m),
                Failure::Domain(e) => (EXIT_DOMAIN, error_kind(&e), e.to_string()),
            };
            let stderr = if cli.json {
                format!("{}\n", json!({"error": kind, "message": message}))
            } else {
                format!("error: {message}\n")
            };
            Outcome { code, stdout: String::new(), stderr }
        }
    }
}

fn execute(cli: &Cli, out: &mut Out) -> Res<()> {
    match &cli.command {
        Command::Count { curve, ext } => cmd_count(curve, *ext, cli.budget, out),
        Command::Lpoly { curve } => cmd_lpoly(curve, cli.budget, out),
        Command::Bounds { q, g, n1, n2, c } => cmd_bounds(*q, *g, n1.zip(*n2), *c, out),
        Command::Classify { q, g, n1, n2 } => cmd_classify(*q, *g, *n1, *n2, out),
        Command::Weilcheck { poly, q } => cmd_weilcheck(poly, *q, out),
        Command::Genus2 { p, n, a } => cmd_genus2(*p, *n, *a, out),
        Command::Scan { gmax, qmax } => cmd_scan(*gmax, *qmax, out),
        Command::Search { p, n, limit } => cmd_search(*p, *n, *limit, cli.budget, out),
        Command::Verify { corpus } => cmd_verify(corpus.as_deref(), cli.budget, out),
    }
}

fn read_json(path: &Path) -> Res<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_entry(args: &CurveArgs) -> Res<CorpusEntry> {
    let v = read_json(&args.curve)?;
    let is_corpus = v.is_array() || v.get("entries").is_some();
    match (&args.name, is_corpus) {
        (None, false) => Ok(CorpusEntry::from_json(&v)?),
        (Some(name), true) => {
            let corpus = Corpus::from_json(&v)?;
            if let Some((_, why)) = corpus.invalid.iter().find(|(n, _)| n == name) {
                return Err(Failure::Usage(format!("entry {name}: {why}")));
            }
            corpus
                .entry(name)
                .cloned()
                .ok_or_else(|| Failure::Usage(format!("no entry named {name:?}")))
        }
        (None, true) => Err(Failure::Usage("the file is a corpus; pick an entry with --name".into())),
        (Some(_), false) => Err(Failure::Usage("--name needs a corpus file".into())),
    }
}

fn count_options(budget: Option<u64>) -> CountOptions {
    CountOptions { budget: budget.unwrap_or(DEFAULT_BUDGET) }
}

fn modelled(entry: &CorpusEntry) -> Res<&dmcurve::curves::Curve> {
    entry
        .curve
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("entry {} has no model to count", entry.name)))
}

fn cmd_count(args: &CurveArgs, k: u32, budget: Option<u64>, out: &mut Out) -> Res<()> {
    let entry = load_entry(args)?;
    let n = count_points_with(modelled(&entry)?, k, &count_options(budget))?;
    if out.json {
        out.value(&json!({"name": entry.name, "field": entry.field, "k": k, "count": n}));
    } else {
        out.line(format!("{}: N_{k} = {n}", entry.name));
    }
    Ok(())
}

fn cmd_lpoly(args: &CurveArgs, budget: Option<u64>, out: &mut Out) -> Res<()> {
    let entry = load_entry(args)?;
    let curve = modelled(&entry)?;
    let opts = count_options(budget);
    let counts = (1..=entry.genus)
        .map(|k| count_points_with(curve, k, &opts))
        .collect::<dmcurve::Result<Vec<_>>>()?;
    let l = lpoly_from_counts(entry.q()?, entry.genus, &counts)?;
    let report = zeta_report(&l)?;
    if out.json {
        let mut v = serde_json::to_value(&report).expect("serializable");
        v["name"] = json!(entry.name);
        v["q"] = json!(l.q);
        v["g"] = json!(l.g);
        v["counts"] = json!(counts);
        out.value(&v);
    } else {
        out.line(format!("{}: q = {}, g = {}", entry.name, l.q, l.g));
        out.line(format!("counts  {counts:?}"));
        out.line(format!("L(T)    {}", report.lpoly));
        out.line(format!("#Jac    {}", report.jac_order));
        out.line(format!("tau     {}", report.tau));
        out.line(format!("E(alpha) {}  V(alpha) {}", report.alpha_mean, report.alpha_variance));
    }
    Ok(())
}

fn cmd_bounds(q: i64, g: i64, counts: Option<(i64, i64)>, c: Option<i64>, out: &mut Out) -> Res<()> {
    let genus = c.map(|c| dm_genus_bounds(q, c)).transpose()?;
    if let Some((n1, n2)) = counts {
        let rep = defect_report(q, g, n1, n2)?;
        if out.json {
            let mut v = serde_json::to_value(&rep).expect("serializable");
            if let Some(gb) = &genus {
                v["genus_bound"] = serde_json::to_value(gb).expect("serializable");
            }
            out.value(&v);
            return Ok(());
        }
        out.line(format!("q = {q}, g = {g}, N = ({n1}, {n2})"));
        out.line(format!("delta         {} (in range: {})", rep.delta, rep.delta_in_range));
        out.line(format!("Weil N_1      [{}, {}]", rep.weil_lo, rep.weil_hi));
        out.line(format!("Ihara N_1 <=  {} (D = {})", rep.ihara_floor, rep.ihara_d));
        out.line(format!("N_2 <=        {}", rep.dm_upper_n2));
        if let Some(lo) = &rep.dm_lower_n2 {
            out.line(format!("N_2 >=        {lo}"));
        }
        out.line(format!("#Jac <=       {}", rep.ahl_rhs));
    } else {
        let (lo, hi) = weil_interval(q, g);
        let ih = ihara_bound(q, g);
        if out.json {
            let mut v = json!({
                "q": q,
                "g": g,
                "weil_lo": int_value(&lo),
                "weil_hi": int_value(&hi),
                "ihara_d": int_value(&ih.d),
                "ihara_sqrt": ih.exact_root.as_ref().map(int_value),
                "ihara_floor": int_value(&ih.floor_bound),
                "general_genus_bound": int_value(&general_genus_bound(q)),
            });
            if let Some(gb) = &genus {
                v["genus_bound"] = serde_json::to_value(gb).expect("serializable");
            }
            out.value(&v);
            return Ok(());
        }
        out.line(format!("q = {q}, g = {g}"));
        out.line(format!("Weil N_1      [{lo}, {hi}]"));
        let root = ih.exact_root.map_or_else(|| "not a square".to_owned(), |s| format!("sqrt {s}"));
        out.line(format!("Ihara N_1 <=  {} (D = {}, {root})", ih.floor_bound, ih.d));
        out.line(format!("DM genus <=   {} (general)", general_genus_bound(q)));
    }
    if let Some(cb) = genus.and_then(|gb| gb.case) {
        out.line(format!("DM genus <=   {} ({:?})", cb.max_genus, cb.case));
    }
    Ok(())
}

fn cmd_classify(q: i64, g: i64, n1: i64, n2: i64, out: &mut Out) -> Res<()> {
    let v = classify_counts(q, g, n1, n2)?;
    if out.json {
        out.value(&v);
        return Ok(());
    }
    out.line(format!("ds         {}", v.ds));
    out.line(format!("dm         {}", v.dm));
    out.line(format!("ihara_max  {}", v.ihara_max));
    out.line(format!("weil_max   {}", v.weil_max));
    out.line(format!("weil_min   {}", v.weil_min));
    if let Some(t) = v.two_alpha {
        out.line(format!("two_alpha  {t}"));
    }
    if let Some(l) = &v.dm_lpoly {
        out.line(format!("L(T)       {l}"));
    }
    if !v.genus2_cases.is_empty() {
        out.line(format!("genus-2 cases {}", v.genus2_cases.join(", ")));
    }
    for n in &v.notes {
        out.line(format!("note: {n}"));
    }
    Ok(())
}

fn parse_poly(s: &str) -> Res<IntPoly> {
    let coeffs = s
        .split(',')
        .map(|t| t.trim().parse::<num_bigint::BigInt>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Usage(format!("bad coefficient list {s:?}: {e}")))?;
    if coeffs.is_empty() {
        return Err(Failure::Usage("empty polynomial".into()));
    }
    Ok(IntPoly::new(coeffs))
}

fn cmd_weilcheck(poly: &str, q: i64, out: &mut Out) -> Res<()> {
    let f = parse_poly(poly)?;
    // a non-monic input with constant term 1 is read as an L-polynomial
    let as_lpoly = !f.is_monic() && f.coeff(0) == num_bigint::BigInt::from(1);
    let cert = if as_lpoly { is_weil_lpoly(&f, q)? } else { is_q_weil(&f, q)? };
    if out.json {
        let mut v = serde_json::to_value(&cert).expect("serializable");
        v["input"] = json!(if as_lpoly { "lpoly" } else { "monic" });
        out.value(&v);
        return Ok(());
    }
    out.line(format!("{f} is {}q-Weil for q = {q}", if cert.is_weil { "" } else { "not " }));
    out.line(format!("functional equation  {}", cert.functional_equation));
    if let Some(h) = &cert.real_weil {
        out.line(format!("real Weil polynomial {h}"));
    }
    Ok(())
}

fn cmd_genus2(p: u64, n: u32, a: i64, out: &mut Out) -> Res<()> {
    make_field(p, 1, None)?;
    let class = genus2_jacobian_classify(p, n, a);
    if out.json {
        out.value(&class);
        return Ok(());
    }
    out.line(format!("(T^2 + {a}T + {p}^{n})^2: verdict {}", class.verdict));
    for c in &class.cases {
        out.line(format!("case {} ({})", c.label, serde_json::to_value(c.structure).expect("enum").as_str().unwrap_or("")));
    }
    Ok(())
}

fn cmd_scan(gmax: i64, qmax: i64, out: &mut Out) -> Res<()> {
    let rows = ihara_candidate_scan(gmax, &prime_powers_up_to(qmax));
    if out.json {
        out.value(&rows);
    } else {
        out.text.push_str(&scan_csv(&rows));
    }
    Ok(())
}

fn cmd_search(p: u64, n: u32, limit: Option<usize>, budget: Option<u64>, out: &mut Out) -> Res<()> {
    let field = make_field(p, n as usize, None)?;
    let opts = SearchOptions { max_q: budget.unwrap_or(SearchOptions::default().max_q), limit };
    let hits = genus2_dm_search_with(&field, &opts)?;
    for h in &hits {
        if out.json {
            out.line(h.to_json().to_string());
        } else {
            let model = h.curve.model.to_json(&h.curve.field);
            out.line(format!("N = ({}, {})  2alpha = {}  {}", h.n1, h.n2, h.two_alpha(), model));
        }
    }
    if !out.json {
        let _ = writeln!(out.text, "{} hits over {}", hits.len(), field);
    }
    Ok(())
}

fn cmd_verify(path: Option<&Path>, budget: Option<u64>, out: &mut Out) -> Res<()> {
    let owned;
    let corpus = match path {
        Some(p) => {
            owned = Corpus::from_json(&read_json(p)?)?;
            &owned
        }
        None => shipped_corpus(),
    };
    let mut opts = VerifyOptions::default();
    if let Some(b) = budget {
        opts.budget = b;
    }
    let report = corpus_verify_with(corpus, &opts);
    if !report.all_passed() || !corpus.invalid.is_empty() {
        out.code = EXIT_DOMAIN;
    }
    if out.json {
        out.value(&report);
        return Ok(());
    }
    for e in &report.entries {
        let status = match e.status {
            EntryStatus::Pass => "pass",
            EntryStatus::Fail => "FAIL",
            EntryStatus::Skipped => "skip",
        };
        let mut line = format!("{status} {}", e.name);
        if !e.skipped.is_empty() {
            let _ = write!(line, "  (skipped: {})", e.skipped.join(", "));
        }
        out.line(line);
        for d in &e.diffs {
            out.line(format!("    {d}"));
        }
    }
    for (name, why) in &corpus.invalid {
        out.line(format!("FAIL {name}  (invalid: {why})"));
    }
    out.line(format!("{} passed, {} failed, {} skipped", report.passed, report.failed, report.skipped));
    Ok(())
}
