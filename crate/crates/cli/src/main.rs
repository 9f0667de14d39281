//! `kproj`: algebras, string complexes, Hom spaces, hammocks, AR windows and spectrum
//! reports from the command line.
//!
//! JSON goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a failed
//! check or contract, 2 bad input.

use std::io::Write;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kproj_core::arquiver::{window_dot, window_json, ArCoordinate, Chart, Hammocks};
use kproj_core::complexes::StringComplex;
use kproj_core::gentle::{AlgebraParams, GentlePresentation};
use kproj_core::homlab::Oracle;
use kproj_core::linalg::backend;
use kproj_core::spectrum::{degree_span, derivative_report, strata, OpenSet};
use kproj_core::strings::{self, parse_word, WordDisplay};
use kproj_core::verify::{Session, VerifyConfig, CRITERIA, TEST_ALGEBRAS};
use kproj_core::Error;

#[derive(Parser)]
#[command(name = "kproj", version, about = "String complexes and Ziegler spectra of derived-discrete algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Setup {
    /// Algebra parameters `r,n,m`.
    #[arg(long, short = 'a', default_value = "2,3,1")]
    algebra: String,
    /// Linear algebra backend: `exact` or `prime[:p]`.
    #[arg(long, default_value = "exact")]
    field: String,
    /// Most window escalations the oracle may try.
    #[arg(long)]
    window_cap: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// The bound quiver.
    Algebra {
        #[command(subcommand)]
        command: AlgebraCommand,
    },
    /// Homotopy words.
    Strings {
        #[command(subcommand)]
        command: StringsCommand,
    },
    /// Hom space between two objects, each a coordinate such as `X:0:1:3` or a word
    /// with an optional `@degree` suffix.
    Hom {
        a: String,
        b: String,
        #[command(flatten)]
        setup: Setup,
    },
    /// Forward (or backward) Hom-hammock of a coordinate inside a window.
    Hammock {
        a: String,
        /// Index bound of the window.
        #[arg(long, default_value_t = 3)]
        window: i64,
        #[arg(long)]
        backward: bool,
        #[command(flatten)]
        setup: Setup,
    },
    /// AR quiver pictures.
    Ar {
        #[command(subcommand)]
        command: ArCommand,
    },
    /// Cantor-Bendixson analysis.
    Spectrum {
        #[command(subcommand)]
        command: SpectrumCommand,
    },
    /// The acceptance checks.
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Quiver, relations, global dimension and resolutions of the simples.
    Info {
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Subcommand)]
enum StringsCommand {
    /// Finite and one-sided words up to a number of letters, in canonical form.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        max_letters: usize,
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Subcommand)]
enum ArCommand {
    /// The coordinates with indices bounded by `--bound`.
    Window {
        #[arg(long, default_value_t = 2)]
        bound: i64,
        /// Graphviz output instead of JSON.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        #[arg(long)]
        json: bool,
        /// Shade the forward hammock of this coordinate.
        #[arg(long)]
        hammock: Option<String>,
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Subcommand)]
enum SpectrumCommand {
    /// Window points with rank and compactness.
    Strata {
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[command(flatten)]
        setup: Setup,
    },
    /// Points of the window where a functor `F_f` does not vanish, for every candidate
    /// map `f` from SOURCE to the sum of the targets.
    OpenSet {
        source: String,
        /// Comma-separated target coordinates.
        #[arg(long, value_delimiter = ',')]
        targets: Vec<String>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[command(flatten)]
        setup: Setup,
    },
    /// The stage-by-stage isolation of every window point.
    Report {
        #[arg(long, default_value_t = 2)]
        bound: i64,
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run the criteria and exit nonzero if any fails.
    All {
        /// Algebras to check (repeatable); all six test algebras by default.
        #[arg(long, short = 'a')]
        algebra: Vec<String>,
        /// Comma-separated criterion numbers; all by default.
        #[arg(long, value_delimiter = ',')]
        criteria: Vec<u8>,
        #[arg(long, default_value_t = 4)]
        bound: i64,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// The criteria and the default test algebras.
    List,
}

enum Failure {
    /// Bad input; usage goes to stderr.
    Input(String),
    /// The computation ran and something did not hold.
    Check(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parameter(_) | Error::Parse { .. } | Error::InvalidWord(_) | Error::UnknownBackend(_) => {
                Failure::Input(e.to_string())
            }
            other => Failure::Check(json!({ "error": kind(&other), "message": other.to_string() })),
        }
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parameter(_) => "parameter",
        Error::Parse { .. } => "parse",
        Error::InvalidWord(_) => "invalid-word",
        Error::Consistency(_) => "consistency",
        Error::Contract(_) => "contract",
        Error::UnstableWindow { .. } => "unstable-window",
        Error::UnknownBackend(_) => "unknown-backend",
    }
}

type Outcome = std::result::Result<Output, Failure>;

enum Output {
    Json(Value),
    Text(String),
}

struct Context {
    pres: Arc<GentlePresentation>,
    chart: Chart,
    oracle: Oracle,
}

impl Context {
    fn new(setup: &Setup) -> std::result::Result<Self, Failure> {
        let params = AlgebraParams::parse(&setup.algebra)?;
        let pres = Arc::new(GentlePresentation::build(params)?);
        let mut oracle = Oracle::with_backend(pres.clone(), backend(&setup.field)?);
        if let Some(cap) = setup.window_cap {
            let mut config = kproj_core::homlab::WindowConfig::for_period(params.ri());
            config.max_escalations = cap;
            oracle = oracle.with_config(config);
        }
        Ok(Self { chart: Chart::new(pres.clone()), oracle, pres })
    }

    fn coordinate(&self, text: &str) -> std::result::Result<ArCoordinate, Failure> {
        let c: ArCoordinate = text.parse()?;
        c.check(self.chart.r())?;
        if !self.chart.has_family(c.family) {
            return Err(Failure::Input(format!("{c} does not exist for {}", self.pres.params())));
        }
        Ok(c)
    }

    /// A coordinate, or a word with an optional `@degree`.
    fn object(&self, text: &str) -> std::result::Result<(String, StringComplex), Failure> {
        if text.len() > 2 && matches!(&text[..2], "X:" | "Y:" | "Z:") {
            let c = self.coordinate(text)?;
            return Ok((c.to_string(), self.chart.complex(&c)?));
        }
        let (word, degree) = match text.rsplit_once('@') {
            Some((w, d)) => (w, d.parse::<i64>().map_err(|_| Failure::Input(format!("bad degree `{d}`")))?),
            None => (text, 0),
        };
        let w = parse_word(&self.pres, word)?;
        let name = format!("{}@{degree}", WordDisplay(&self.pres, &w));
        Ok((name, StringComplex::realize(&self.pres, &w, degree)?))
    }
}

fn names(points: &[ArCoordinate]) -> Vec<String> {
    points.iter().map(ToString::to_string).collect()
}

fn algebra_info(setup: &Setup) -> Outcome {
    let cx = Context::new(setup)?;
    let pres = &cx.pres;
    let resolutions = pres
        .quiver()
        .vertices
        .iter()
        .map(|&v| pres.resolve_simple(v, 4 * pres.params().ri() as usize + 4))
        .collect::<kproj_core::Result<Vec<_>>>()?;
    Ok(Output::Json(json!({
        "schema": "kproj.algebra/v1",
        "presentation": pres.to_json(),
        "gldim": format!("{:?}", pres.gldim_class()),
        "chart": cx.chart.strategy().name(),
        "resolutions": resolutions,
    })))
}

fn strings_enumerate(setup: &Setup, max_letters: usize) -> Outcome {
    let cx = Context::new(setup)?;
    let words: Vec<Value> = strings::enumerate_words(&cx.pres, max_letters)
        .iter()
        .map(|w| {
            json!({
                "word": WordDisplay(&cx.pres, w).to_string(),
                "species": format!("{:?}", w.species()),
                "class": format!("{:?}", strings::classify(w)),
                "compact": strings::is_compact(&cx.pres, w),
            })
        })
        .collect();
    Ok(Output::Json(json!({ "schema": "kproj.words/v1", "algebra": cx.pres.params().to_string(), "words": words })))
}

fn hom(setup: &Setup, a: &str, b: &str) -> Outcome {
    let cx = Context::new(setup)?;
    let (na, ca) = cx.object(a)?;
    let (nb, cb) = cx.object(b)?;
    let report = cx.oracle.hom_dim(&ca, &cb)?;
    Ok(Output::Json(json!({
        "schema": "kproj.hom/v1",
        "algebra": cx.pres.params().to_string(),
        "field": cx.oracle.backend_name(),
        "source": na,
        "target": nb,
        "report": report,
    })))
}

fn hammock(setup: &Setup, a: &str, window: i64, backward: bool) -> Outcome {
    let cx = Context::new(setup)?;
    let c = cx.coordinate(a)?;
    let h = Hammocks::new(&cx.chart, &cx.oracle);
    let mut members = Vec::new();
    for n in cx.chart.window(window) {
        let inside = if backward { h.backward_member(&c, &n)? } else { h.forward_member(&c, &n)? };
        if inside {
            members.push(n);
        }
    }
    Ok(Output::Json(json!({
        "schema": "kproj.hammock/v1",
        "algebra": cx.pres.params().to_string(),
        "object": c.to_string(),
        "direction": if backward { "backward" } else { "forward" },
        "window": window,
        "members": names(&members),
    })))
}

fn ar_window(setup: &Setup, bound: i64, dot: bool, shade: Option<&str>) -> Outcome {
    let cx = Context::new(setup)?;
    let h = Hammocks::new(&cx.chart, &cx.oracle);
    let shading = match shade {
        Some(s) => Some((&h, cx.coordinate(s)?)),
        None => None,
    };
    if dot {
        Ok(Output::Text(window_dot(&cx.chart, bound, shading)?))
    } else {
        Ok(Output::Json(serde_json::to_value(window_json(&cx.chart, bound, shading)?).expect("serializable")))
    }
}

fn spectrum_strata(setup: &Setup, bound: i64) -> Outcome {
    let cx = Context::new(setup)?;
    let points: Vec<Value> = strata(&cx.chart, bound)
        .iter()
        .map(|p| json!({ "point": p.coordinate.to_string(), "component": p.component, "rank": p.rank, "compact": p.compact }))
        .collect();
    Ok(Output::Json(json!({
        "schema": "kproj.strata/v1",
        "algebra": cx.pres.params().to_string(),
        "bound": bound,
        "points": points,
    })))
}

fn spectrum_open_set(setup: &Setup, source: &str, targets: &[String], bound: i64) -> Outcome {
    let cx = Context::new(setup)?;
    let src = cx.coordinate(source)?;
    let targets = targets.iter().map(|t| cx.coordinate(t)).collect::<std::result::Result<Vec<_>, _>>()?;
    let window = cx.chart.window(bound);
    let span = degree_span(&cx.chart, &window)?;
    let functors = if targets.is_empty() {
        vec![OpenSet::representable(&cx.chart, src)?]
    } else {
        OpenSet::candidates(&cx.chart, &cx.oracle, src, &targets, span)?
    };
    let mut sets = Vec::new();
    for f in &functors {
        sets.push(names(&f.members(&cx.chart, &cx.oracle, &window)?));
    }
    Ok(Output::Json(json!({
        "schema": "kproj.open-set/v1",
        "algebra": cx.pres.params().to_string(),
        "source": src.to_string(),
        "targets": names(&targets),
        "bound": bound,
        "candidates": sets,
    })))
}

fn spectrum_report(setup: &Setup, bound: i64) -> Outcome {
    let cx = Context::new(setup)?;
    let report = derivative_report(&cx.chart, &cx.oracle, bound)?;
    eprintln!("{}: CB = {}", report.algebra, report.cb_rank.map_or("undetermined".into(), |r| r.to_string()));
    let value = json!({ "schema": "kproj.derivative/v1", "report": report });
    if report.ok() {
        Ok(Output::Json(value))
    } else {
        Err(Failure::Check(value))
    }
}

fn verify_all(algebras: &[String], criteria: &[u8], bound: i64, seed: Option<u64>) -> Outcome {
    let mut config = VerifyConfig { bound, ..VerifyConfig::default() };
    if let Some(s) = seed {
        config.seed = s;
    }
    if !algebras.is_empty() {
        config.algebras = algebras.iter().map(|a| AlgebraParams::parse(a)).collect::<kproj_core::Result<_>>()?;
    }
    for id in criteria {
        if !CRITERIA.iter().any(|c| c.0 == *id) {
            return Err(Failure::Input(format!("no criterion {id}")));
        }
    }
    let session = Session::new(config)?;
    let ids: Vec<u8> = if criteria.is_empty() { CRITERIA.iter().map(|c| c.0).collect() } else { criteria.to_vec() };
    let mut reports = Vec::new();
    for id in ids {
        let report = session.run(id);
        eprintln!("{report}");
        for note in &report.notes {
            eprintln!("    {note}");
        }
        reports.push(report);
    }
    let passed = reports.iter().all(|r| r.passed);
    let value = json!({ "schema": "kproj.verify/v1", "passed": passed, "criteria": reports });
    if passed {
        Ok(Output::Json(value))
    } else {
        Err(Failure::Check(value))
    }
}

fn verify_list() -> Outcome {
    let criteria: Vec<Value> = CRITERIA.iter().map(|(id, title)| json!({ "id": id, "title": title })).collect();
    let algebras: Vec<String> = TEST_ALGEBRAS.iter().map(|(r, n, m)| format!("{r},{n},{m}")).collect();
    Ok(Output::Json(json!({ "criteria": criteria, "algebras": algebras })))
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Algebra { command: AlgebraCommand::Info { setup } } => algebra_info(&setup),
        Command::Strings { command: StringsCommand::Enumerate { max_letters, setup } } => strings_enumerate(&setup, max_letters),
        Command::Hom { a, b, setup } => hom(&setup, &a, &b),
        Command::Hammock { a, window, backward, setup } => hammock(&setup, &a, window, backward),
        Command::Ar { command: ArCommand::Window { bound, dot, json: _, hammock, setup } } => {
            ar_window(&setup, bound, dot, hammock.as_deref())
        }
        Command::Spectrum { command } => match command {
            SpectrumCommand::Strata { bound, setup } => spectrum_strata(&setup, bound),
            SpectrumCommand::OpenSet { source, targets, bound, setup } => spectrum_open_set(&setup, &source, &targets, bound),
            SpectrumCommand::Report { bound, setup } => spectrum_report(&setup, bound),
        },
        Command::Verify { command } => match command {
            VerifyCommand::All { algebra, criteria, bound, seed } => verify_all(&algebra, &criteria, bound, seed),
            VerifyCommand::List => verify_list(),
        },
    }
}

// A closed pipe downstream is not an error worth reporting.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(Output::Json(v)) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            emit(&t);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `kproj --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Check(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
    }
}
