//! Command-line front end: evaluation, recognition, verification,
//! reproduction, and the discovery sweep.
//!
//! Exit codes: 0 success (or a clean "none" from recognition),
//! 1 refuted, 2 inconclusive, 3 usage error, 4 convergence/domain error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rrcf::catalog;
use rrcf::invariants::{self, InvariantKind};
use rrcf::precision::PrecisionCtx;
use rrcf::qseries::{self, QPoint};
use rrcf::real::Real;
use rrcf::recognition::{self, FnSource, LiteralSource, ValueSource};
use rrcf::surd::SurdArg;
use rrcf::verify::{self, TheoremId, Verdict};
use rrcf::{Error, Result};
use serde::Serialize;
use std::collections::HashSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_REFUTED: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_USAGE: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

#[derive(Parser)]
#[command(
    name = "rrcf",
    about = "High-precision evaluation, recognition, and certification for the Rogers-Ramanujan continued fraction",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunConfig,
}

#[derive(Args)]
struct RunConfig {
    /// Decimal digits of working precision
    #[arg(long, global = true, default_value_t = 300)]
    digits: u32,

    /// Guard digits carried internally
    #[arg(long, global = true, default_value_t = 50)]
    guard: u32,

    /// Emit machine-readable JSON
    #[arg(long, global = true)]
    json: bool,

    /// Write output to this file instead of stdout (appends for `search`)
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Parallel workers for sweeps and `reproduce all`
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Seed for randomized property sweeps
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

impl RunConfig {
    fn ctx(&self) -> Result<PrecisionCtx> {
        PrecisionCtx::new(self.digits, self.guard)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFn {
    #[value(name = "f")]
    F,
    #[value(name = "theta2")]
    Theta2,
    #[value(name = "theta3")]
    Theta3,
    #[value(name = "R")]
    R,
    #[value(name = "lambda-star")]
    LambdaStar,
    #[value(name = "lambda")]
    Lambda,
    #[value(name = "J")]
    J,
    #[value(name = "G")]
    G,
    #[value(name = "g")]
    SmallG,
}

impl EvalFn {
    fn name(self) -> &'static str {
        match self {
            EvalFn::F => "f",
            EvalFn::Theta2 => "theta2",
            EvalFn::Theta3 => "theta3",
            EvalFn::R => "R",
            EvalFn::LambdaStar => "lambda-star",
            EvalFn::Lambda => "lambda",
            EvalFn::J => "J",
            EvalFn::G => "G",
            EvalFn::SmallG => "g",
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function at r (argument convention: q = e^(-pi sqrt r))
    Eval {
        #[arg(value_enum)]
        function: EvalFn,
        /// r as "num/den" (denominator optional)
        arg: String,
    },
    /// Recognize a value as an exact algebraic number
    Recognize {
        /// Run the discovery pipeline at index n (q = e^(-2 pi sqrt(n/5)))
        #[arg(long, value_name = "N/D", conflicts_with_all = ["eval", "literal"])]
        yi: Option<String>,
        /// Recognize the value of FUNCTION at ARG
        #[arg(long, num_args = 2, value_names = ["FUNCTION", "ARG"], conflicts_with = "literal")]
        eval: Option<Vec<String>>,
        /// Recognize a decimal literal
        #[arg(long)]
        literal: Option<String>,
        /// Maximum degree of the minimal-polynomial sweep
        #[arg(long, default_value_t = 8)]
        degree: usize,
        /// Square-root basis for field recognition, e.g. "1,5,13,65"
        #[arg(long)]
        basis: Option<String>,
        /// Height cap in decimal digits (default: derived from precision)
        #[arg(long)]
        height: Option<u32>,
        /// Denominator cap for field recognition
        #[arg(long, default_value_t = 64)]
        denom_cap: u64,
    },
    /// Certify identity families numerically
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Reproduce the closed-form evaluations end to end
    Reproduce {
        /// thm2_26_5 | thm3_38_5 | lemma1 | thm4_48_5 | conj_16_15 | all
        id: String,
    },
    /// Sweep r = n/d through the discovery pipeline, appending JSONL results
    Search {
        /// Numerators to sweep, as "lo..hi" (inclusive)
        #[arg(long, value_name = "LO..HI")]
        nums: String,
        /// Denominators to sweep, comma separated
        #[arg(long, value_name = "D1,D2,...")]
        dens: String,
    },
    /// Print the versioned closed-form catalog as JSON
    Catalog,
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Companion identities and recursions over seeded random q
    Identities {
        #[arg(long, default_value_t = 20)]
        samples: usize,
    },
    /// The order-25 modular relation at n in {130, 190, 240}
    Order25 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![130u64, 190, 240])]
        n: Vec<u64>,
    },
    /// The icosahedral identity at tau = i sqrt(r/4), R by product
    Icosahedral {
        /// r as "num/den"
        #[arg(long)]
        r: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::InvalidArgument(_) => EXIT_USAGE,
                Error::Domain(_)
                | Error::Convergence(_)
                | Error::Precision(_)
                | Error::Singularity(_)
                | Error::RootMismatch(_) => EXIT_NUMERIC,
            };
            ExitCode::from(code)
        }
    }
}

struct Output {
    to: Option<PathBuf>,
    buffer: String,
}

impl Output {
    fn new(cfg: &RunConfig) -> Self {
        Self {
            to: cfg.out.clone(),
            buffer: String::new(),
        }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.buffer.push_str(s.as_ref());
        self.buffer.push('\n');
    }

    fn finish(self) -> Result<()> {
        match self.to {
            None => {
                print!("{}", self.buffer);
                Ok(())
            }
            Some(path) => std::fs::write(&path, self.buffer)
                .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let cfg = cli.run;
    match cli.command {
        Command::Eval { function, arg } => cmd_eval(function, &arg, &cfg),
        Command::Recognize {
            yi,
            eval,
            literal,
            degree,
            basis,
            height,
            denom_cap,
        } => cmd_recognize(yi, eval, literal, degree, basis, height, denom_cap, &cfg),
        Command::Verify { target } => cmd_verify(target, &cfg),
        Command::Reproduce { id } => cmd_reproduce(&id, &cfg),
        Command::Search { nums, dens } => cmd_search(&nums, &dens, &cfg),
        Command::Catalog => cmd_catalog(&cfg),
    }
}

fn eval_value(function: EvalFn, arg: &SurdArg, ctx: &PrecisionCtx) -> Result<Real> {
    let q = QPoint::Surd(*arg);
    match function {
        EvalFn::F => qseries::eval_f_neg_q(&q, ctx),
        EvalFn::Theta2 => qseries::eval_theta2(&q, ctx),
        EvalFn::Theta3 => qseries::eval_theta3(&q, ctx),
        EvalFn::R => qseries::eval_r_product(&q, ctx),
        EvalFn::LambdaStar => Ok(invariants::evaluate(InvariantKind::LambdaStar, arg, ctx)?.value),
        EvalFn::Lambda => Ok(invariants::evaluate(InvariantKind::Lambda, arg, ctx)?.value),
        EvalFn::J => Ok(invariants::evaluate(InvariantKind::KleinJ, arg, ctx)?.value),
        EvalFn::G => Ok(invariants::evaluate(InvariantKind::G, arg, ctx)?.value),
        EvalFn::SmallG => Ok(invariants::evaluate(InvariantKind::SmallG, arg, ctx)?.value),
    }
}

#[derive(Serialize)]
struct EvalOutput<'a> {
    #[serde(rename = "fn")]
    function: &'a str,
    arg: String,
    digits: u32,
    value: String,
}

fn cmd_eval(function: EvalFn, arg: &str, cfg: &RunConfig) -> Result<u8> {
    let ctx = cfg.ctx()?;
    let r: SurdArg = arg.parse()?;
    let value = eval_value(function, &r, &ctx)?;
    let shown = value.to_decimal_string(ctx.digits - ctx.guard);
    let mut out = Output::new(cfg);
    if cfg.json {
        out.line(serde_json::to_string(&EvalOutput {
            function: function.name(),
            arg: r.to_string(),
            digits: ctx.digits,
            value: shown,
        })
        .expect("serializes"));
    } else {
        out.line(format!("{}({}) = {}", function.name(), r, shown));
    }
    out.finish()?;
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct RecognizeOutput {
    source: String,
    degree_max: usize,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    candidate: Option<recognition::AlgebraicCandidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polynomial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<recognition::FieldElement>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_recognize(
    yi: Option<String>,
    eval: Option<Vec<String>>,
    literal: Option<String>,
    degree: usize,
    basis: Option<String>,
    height: Option<u32>,
    denom_cap: u64,
    cfg: &RunConfig,
) -> Result<u8> {
    let mut out = Output::new(cfg);

    if let Some(n_str) = yi {
        let n: SurdArg = n_str.parse()?;
        let ctx = cfg.ctx()?;
        let rec = recognition::yi_recognize(&n, &ctx)?;
        if cfg.json {
            out.line(serde_json::to_string(&rec).expect("serializes"));
        } else {
            out.line(format!("s({n}) = {}", rec.s_decimal));
            out.line(format!("a({n}) = {}", rec.a_decimal));
            match &rec.s_field {
                Some(el) => out.line(format!("s = {el}")),
                None => out.line("s: no field form found"),
            }
            match &rec.a_field {
                Some(el) => out.line(format!("a = {el}")),
                None => out.line("a: no field form found"),
            }
            match &rec.s_minpoly {
                Some(c) => out.line(format!("s minimal polynomial: {}", c.poly)),
                None => out.line("s minimal polynomial: none"),
            }
            match &rec.a_minpoly {
                Some(c) => out.line(format!("a minimal polynomial: {}", c.poly)),
                None => out.line("a minimal polynomial: none"),
            }
        }
        out.finish()?;
        return Ok(EXIT_OK);
    }

    // build the witness source
    let (source, label): (Box<dyn ValueSource>, String) = if let Some(parts) = eval {
        // exact match: G and g are different functions
        let function = EvalFn::from_str(&parts[0], false)
            .map_err(|_| Error::InvalidArgument(format!("unknown function {:?}", parts[0])))?;
        let arg: SurdArg = parts[1].parse()?;
        let label = format!("{}({})", function.name(), arg);
        let lbl = label.clone();
        (
            Box::new(FnSource::new(lbl, move |c: &PrecisionCtx| {
                eval_value(function, &arg, c)
            })),
            label,
        )
    } else if let Some(text) = literal {
        let src = LiteralSource::new(text.clone())?;
        (Box::new(src), format!("literal {text}"))
    } else {
        return Err(Error::InvalidArgument(
            "recognize needs one of --yi, --eval, --literal".into(),
        ));
    };

    // literals cannot support more digits than they carry
    let digits = match source.max_digits() {
        Some(m) => cfg.digits.min(m),
        None => cfg.digits,
    };
    let ctx = PrecisionCtx::new(digits, cfg.guard.min(digits / 2))?;

    let candidate = recognition::recognize_minpoly(source.as_ref(), degree, height, &ctx)?;
    let field = match &basis {
        Some(spec) => {
            let parsed: std::result::Result<Vec<u64>, _> =
                spec.split(',').map(|s| s.trim().parse::<u64>()).collect();
            let basis =
                parsed.map_err(|_| Error::InvalidArgument(format!("bad basis {spec:?}")))?;
            recognition::recognize_in_field(source.as_ref(), &basis, denom_cap, &ctx)?
                .map(|(el, _)| el)
        }
        None => None,
    };

    let verdict = if candidate.is_some() || field.is_some() {
        "recognized"
    } else {
        "none"
    };
    if cfg.json {
        out.line(
            serde_json::to_string(&RecognizeOutput {
                source: label,
                degree_max: degree,
                verdict: verdict.into(),
                polynomial: candidate.as_ref().map(|c| c.poly.to_string()),
                candidate,
                field,
            })
            .expect("serializes"),
        );
    } else {
        match &candidate {
            Some(c) => {
                out.line(format!("minimal polynomial: {}", c.poly));
                out.line(format!(
                    "root index {} (ascending real roots), confidence {:?}",
                    c.root_index, c.confidence
                ));
            }
            None => out.line("minimal polynomial: none"),
        }
        if let Some(el) = &field {
            out.line(format!("field form: {el}"));
        }
        out.line(format!("verdict: {verdict}"));
    }
    out.finish()?;
    Ok(EXIT_OK)
}

fn worst_exit(verdicts: impl IntoIterator<Item = Verdict>) -> u8 {
    let mut code = EXIT_OK;
    for v in verdicts {
        let c = match v {
            Verdict::Certified | Verdict::NumericallySupported => EXIT_OK,
            Verdict::Inconclusive => EXIT_INCONCLUSIVE,
            Verdict::Refuted => EXIT_REFUTED,
        };
        code = code.max(c);
    }
    code
}

fn emit_certificate(out: &mut Output, cert: &verify::Certificate, json: bool) {
    if json {
        out.line(cert.to_json_line());
    } else {
        out.line(format!(
            "{}: {} (residuals {} -> {} at {}/{} digits, {} ms)",
            cert.claim_id,
            cert.verdict,
            cert.residual_lo,
            cert.residual_hi,
            cert.digits_lo,
            cert.digits_hi,
            cert.wall_time_ms
        ));
    }
}

fn cmd_verify(target: VerifyTarget, cfg: &RunConfig) -> Result<u8> {
    let ctx = cfg.ctx()?;
    let mut out = Output::new(cfg);
    let mut verdicts = Vec::new();

    match target {
        VerifyTarget::Identities { samples } => {
            for q in verify::sample_rational_qs(cfg.seed, samples) {
                let point = QPoint::Exact(q);
                let c1 = verify::check_companion(&point, &ctx)?;
                verdicts.push(c1.verdict);
                emit_certificate(&mut out, &c1, cfg.json);
                let c2 = verify::check_recursions(&point, &ctx)?;
                verdicts.push(c2.verdict);
                emit_certificate(&mut out, &c2, cfg.json);
            }
        }
        VerifyTarget::Order25 { n } => {
            for n in n {
                let id: TheoremId = match n {
                    130 => TheoremId::Thm2_26_5,
                    190 => TheoremId::Thm3_38_5,
                    240 => TheoremId::Thm4_48_5,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "order-25 instances are configured for n in {{130, 190, 240}}, got {other}"
                        )))
                    }
                };
                let cert = verify::order25_certificate(id, &ctx)?;
                verdicts.push(cert.verdict);
                emit_certificate(&mut out, &cert, cfg.json);
            }
        }
        VerifyTarget::Icosahedral { r } => {
            let r_arg: SurdArg = r.parse()?;
            let quarter = r_arg.scaled(1, 4)?;
            let r_fn = move |c: &PrecisionCtx| -> Result<rug::Float> {
                Ok(qseries::eval_r_product(&QPoint::Surd(r_arg), c)?.into_value())
            };
            let lam_fn = move |c: &PrecisionCtx| -> Result<rug::Float> {
                Ok(invariants::lambda_of_tau(&quarter, c)?.into_value())
            };
            let cert = verify::check_icosahedral(
                &format!("icosahedral@r={r_arg}"),
                &r_fn,
                &lam_fn,
                &ctx,
            )?;
            verdicts.push(cert.verdict);
            emit_certificate(&mut out, &cert, cfg.json);
        }
    }

    out.finish()?;
    Ok(worst_exit(verdicts))
}

fn cmd_reproduce(id: &str, cfg: &RunConfig) -> Result<u8> {
    let ctx = cfg.ctx()?;
    let mut out = Output::new(cfg);
    let bundles = if id == "all" {
        verify::reproduce_all(&ctx, cfg.jobs)?
    } else {
        vec![verify::reproduce_theorem(id.parse()?, &ctx)?]
    };

    let mut verdicts = Vec::new();
    for bundle in &bundles {
        verdicts.push(bundle.verdict);
        if cfg.json {
            out.line(serde_json::to_string(bundle).expect("serializes"));
        } else {
            out.line(format!("== {} @ {} digits: {}", bundle.id, bundle.digits, bundle.verdict));
            for cert in &bundle.stages {
                emit_certificate(&mut out, cert, false);
            }
        }
    }
    out.finish()?;
    Ok(worst_exit(verdicts))
}

#[derive(Serialize)]
struct SearchRow {
    n: u64,
    d: u64,
    recognized: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    form: Option<recognition::YiRecognition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_search(nums: &str, dens: &str, cfg: &RunConfig) -> Result<u8> {
    let (lo, hi) = nums
        .split_once("..")
        .and_then(|(a, b)| Some((a.trim().parse::<u64>().ok()?, b.trim().parse::<u64>().ok()?)))
        .ok_or_else(|| Error::InvalidArgument(format!("bad numerator range {nums:?}")))?;
    if lo == 0 || hi < lo {
        return Err(Error::InvalidArgument(format!("bad numerator range {nums:?}")));
    }
    let den_set: Vec<u64> = dens
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidArgument(format!("bad denominator set {dens:?}")))?;
    if den_set.contains(&0) {
        return Err(Error::InvalidArgument("denominator 0".into()));
    }

    let path = cfg
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from("rrcf_search.jsonl"));

    // resumability: skip (n, d) pairs already present
    let mut seen: HashSet<(u64, u64)> = HashSet::new();
    if let Ok(file) = std::fs::File::open(&path) {
        for line in std::io::BufReader::new(file).lines().map_while(|l| l.ok()) {
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(&line) {
                if let (Some(n), Some(d)) = (v["n"].as_u64(), v["d"].as_u64()) {
                    seen.insert((n, d));
                }
            }
        }
    }

    // the sweep is over r = n/d; the pipeline index is 5r/4
    let mut work: Vec<(u64, u64)> = Vec::new();
    for d in &den_set {
        for n in lo..=hi {
            let r = SurdArg::new(n, *d)?;
            if seen.contains(&(r.num(), r.den())) || work.contains(&(r.num(), r.den())) {
                continue;
            }
            work.push((r.num(), r.den()));
        }
    }

    let ctx = cfg.ctx()?;
    let file = std::fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|e| Error::InvalidArgument(format!("cannot open {}: {e}", path.display())))?;
    let mut writer = std::io::BufWriter::new(file);

    let jobs = cfg.jobs.max(1);
    let (tx, rx) = std::sync::mpsc::channel::<(usize, SearchRow)>();
    let queue = std::sync::Mutex::new(work.iter().cloned().enumerate().collect::<Vec<_>>());

    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let item = queue.lock().expect("queue lock").pop();
                let Some((idx, (n, d))) = item else { break };
                let row = search_one(n, d, &ctx);
                if tx.send((idx, row)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        // single writer, ordered output
        let mut pending: Vec<Option<SearchRow>> = (0..work.len()).map(|_| None).collect();
        let mut next = 0usize;
        for (idx, row) in rx {
            pending[idx] = Some(row);
            while next < pending.len() {
                if let Some(row) = pending[next].take() {
                    let line = serde_json::to_string(&row).expect("serializes");
                    writeln!(writer, "{line}").expect("write results line");
                    next += 1;
                } else {
                    break;
                }
            }
        }
        writer.flush().expect("flush results");
    });

    println!(
        "search: {} new rows appended to {} ({} already present)",
        work.len(),
        path.display(),
        seen.len()
    );
    Ok(EXIT_OK)
}

fn search_one(n: u64, d: u64, ctx: &PrecisionCtx) -> SearchRow {
    // r = n/d, pipeline index 5r/4
    let result = SurdArg::new(n, d)
        .and_then(|r| r.scaled(5, 4))
        .and_then(|yi_n| recognition::yi_recognize(&yi_n, ctx));
    match result {
        Ok(rec) => SearchRow {
            n,
            d,
            recognized: rec.recognized(),
            form: Some(rec),
            error: None,
        },
        Err(e) => SearchRow {
            n,
            d,
            recognized: false,
            form: None,
            error: Some(e.to_string()),
        },
    }
}

fn cmd_catalog(cfg: &RunConfig) -> Result<u8> {
    let mut out = Output::new(cfg);
    out.line(catalog::builtin().to_json());
    out.finish()?;
    Ok(EXIT_OK)
}
