//! `hypercount`: point counts and verification campaigns from the command line.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use hypercount::curves::{brute_count, cor_1_4_count, cor_1_6_count, mt1_count, mt6_count, CurveParams, GPath};
use hypercount::field::{split_prime_power, DEFAULT_SIZE_CAP};
use hypercount::padic::{GnnEvaluator, GnnParams, Precision};
use hypercount::verify::{run_suite, FieldId, GMode, Status, Suite, VerificationReport, VerifyOptions};
use hypercount::{Error, FieldCtx};

const EXIT_FAIL: u8 = 1;
const EXIT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "hypercount", version, about = "Point counts on ay^2+bx^2+cxy=d+ex^2y^2+fx^3y over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count points on one curve by brute force and by every applicable formula.
    Count(CountArgs),
    /// Run verification suites over one or more fields.
    Verify(VerifyArgs),
    /// Evaluate G or 2G2[1/2,1/2;1/4,3/4] at field elements.
    Gfun(GfunArgs),
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Characteristic (with --r).
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, default_value_t = 1)]
    r: u32,
    /// Comma-separated field orders, e.g. 5,9,25.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Largest field order accepted.
    #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
    cap: u64,
}

impl FieldArgs {
    fn fields(&self) -> anyhow::Result<Vec<FieldCtx>> {
        let mut orders: Vec<(u64, u32)> = Vec::new();
        if let Some(p) = self.p {
            orders.push((p, self.r));
        }
        for &q in &self.q {
            let (p, r) = split_prime_power(q).ok_or_else(|| anyhow!("{q} is not an odd prime power"))?;
            orders.push((p, r));
        }
        if orders.is_empty() {
            bail!("give a field with --p [--r] or --q");
        }
        orders.sort_by_key(|&(p, r)| (p.pow(r), p));
        orders.dedup();
        orders
            .into_iter()
            .map(|(p, r)| FieldCtx::with_cap(p, r, self.cap).map_err(Into::into))
            .collect()
    }

    fn single(&self) -> anyhow::Result<FieldCtx> {
        let mut fields = self.fields()?;
        if fields.len() != 1 {
            bail!("this command takes exactly one field");
        }
        Ok(fields.remove(0))
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum PathArg {
    Fast,
    Padic,
    Both,
}

impl From<PathArg> for GMode {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Fast => GMode::Fast,
            PathArg::Padic => GMode::Padic,
            PathArg::Both => GMode::Both,
        }
    }
}

/// `auto`, `+k` (auto plus k digits) or a fixed M.
fn parse_precision(s: &str) -> Result<Precision, String> {
    let s = s.trim();
    if s == "auto" {
        return Ok(Precision::Auto);
    }
    if let Some(k) = s.strip_prefix('+') {
        return k.parse().map(Precision::AutoPlus).map_err(|_| format!("bad precision `{s}`"));
    }
    s.parse().map(Precision::Fixed).map_err(|_| format!("bad precision `{s}`"))
}

#[derive(Args)]
struct CountArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// a,b,c,d,e,f; integers or c0:c1:... coordinates.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    coeffs: Vec<String>,
    #[arg(long, value_enum, default_value = "both")]
    g_path: PathArg,
    #[arg(long, value_parser = parse_precision, default_value = "auto")]
    precision: Precision,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated suites, or `all`.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    families: Vec<String>,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_parser = parse_precision, default_value = "auto")]
    precision: Precision,
    /// Absolute tolerance for the complex identity suite.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "fast")]
    g_path: PathArg,
    /// Skip the recomputation at M + 4.
    #[arg(long)]
    no_stability_check: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Include wall-clock timings (makes output nondeterministic).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum GSet {
    /// [1/4, 3/4; 0, 1/2]
    G,
    /// [1/2, 1/2; 1/4, 3/4]
    Half,
}

#[derive(Args)]
struct GfunArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long = "set", value_enum, default_value = "g")]
    set: GSet,
    /// Arguments; every nonzero element when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    t: Vec<String>,
    #[arg(long, value_parser = parse_precision, default_value = "auto")]
    precision: Precision,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("HYPERCOUNT_LOG", "warn")).init();
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Count(a) => count(a),
        Command::Verify(a) => verify(a),
        Command::Gfun(a) => gfun(a),
    };
    match res {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> anyhow::Result<String> {
    // round trip through Value so object keys come out sorted
    let value: Value = serde_json::to_value(v)?;
    Ok(serde_json::to_string_pretty(&value)? + "\n")
}

#[derive(Serialize)]
struct CountOutput {
    field: FieldId,
    params: std::collections::BTreeMap<String, String>,
    brute: i64,
    formulas: std::collections::BTreeMap<String, Value>,
}

fn count(a: CountArgs) -> anyhow::Result<ExitCode> {
    let field = a.field.single()?;
    let coeffs: Vec<_> = a.coeffs.iter().map(|s| field.parse(s)).collect::<Result<_, _>>()?;
    let coeffs: [_; 6] = coeffs
        .try_into()
        .map_err(|v: Vec<_>| anyhow!("--coeffs takes six values, got {}", v.len()))?;
    let cp = CurveParams::new(coeffs)?;
    let brute = brute_count(&field, &cp) as i64;
    let mut formulas = std::collections::BTreeMap::new();
    let mut agree = true;
    let mut record = |name: &str, r: hypercount::Result<Value>, value: Option<i64>| {
        match r {
            Ok(v) => {
                agree &= value == Some(brute);
                formulas.insert(name.to_string(), v);
            }
            Err(Error::PreconditionViolated(_)) => {}
            Err(e) => {
                agree = false;
                formulas.insert(name.to_string(), json!({ "error": e.to_string() }));
            }
        }
    };
    if cp.af_eq_ce(&field) {
        let disc_zero = cp.disc(&field).is_zero();
        if !disc_zero {
            let ev = match a.g_path {
                PathArg::Fast => None,
                _ => Some(GnnEvaluator::new(&field, GnnParams::g_function(), a.precision, true)?),
            };
            let path = match (a.g_path, &ev) {
                (PathArg::Padic, Some(ev)) => GPath::Padic(ev),
                (PathArg::Both, Some(ev)) => GPath::Both(ev),
                _ => GPath::Fast,
            };
            let r = mt1_count(&field, &cp, path);
            let v = r.as_ref().ok().map(|f| f.count);
            record("mt1", r.map(|f| serde_json::to_value(f).unwrap()), v);
            let r = cor_1_4_count(&field, &cp);
            let v = r.as_ref().ok().copied();
            record("cor_1_4", r.map(Value::from), v);
        } else {
            let half = GnnEvaluator::new(&field, GnnParams::half(), a.precision, true)?;
            let r = mt6_count(&field, &cp, &half);
            let v = r.as_ref().ok().map(|f| f.count);
            record("mt6", r.map(|f| serde_json::to_value(f).unwrap()), v);
            let r = cor_1_6_count(&field, &cp);
            let v = r.as_ref().ok().copied();
            record("cor_1_6", r.map(Value::from), v);
        }
    }
    let out = CountOutput {
        field: FieldId::of(&field),
        params: cp.describe(&field).into_iter().collect(),
        brute,
        formulas,
    };
    let text = match a.format {
        Format::Json => to_json(&out)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["method", "count"])?;
            w.write_record(["brute", &brute.to_string()])?;
            for (name, v) in &out.formulas {
                let c = v.get("count").cloned().unwrap_or_else(|| v.clone());
                w.write_record([name.as_str(), &c.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!("F_{} {:?}\nbrute: {brute}\n", field.q(), out.params);
            if out.formulas.is_empty() {
                s.push_str("no formula applies (needs af = ce)\n");
            }
            for (name, v) in &out.formulas {
                match v.get("terms").and_then(Value::as_array) {
                    Some(terms) => {
                        s.push_str(&format!("{name}: {}\n", v["count"]));
                        for t in terms {
                            s.push_str(&format!("  {}: {}\n", t["name"].as_str().unwrap_or(""), t["value"]));
                        }
                    }
                    None => s.push_str(&format!("{name}: {v}\n")),
                }
            }
            s
        }
    };
    emit(None, &text)?;
    Ok(if agree { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn parse_suites(names: &[String]) -> anyhow::Result<Vec<Suite>> {
    let mut suites = Vec::new();
    for n in names {
        if n == "all" {
            suites.extend(Suite::all());
        } else {
            suites.push(n.parse::<Suite>()?);
        }
    }
    suites.sort();
    suites.dedup();
    Ok(suites)
}

#[derive(Serialize, Default)]
struct Summary {
    pass: usize,
    fail: usize,
    skipped: usize,
}

fn verify(a: VerifyArgs) -> anyhow::Result<ExitCode> {
    let fields = a.field.fields()?;
    let suites = parse_suites(&a.families)?;
    let opts = VerifyOptions {
        samples: a.samples,
        seed: a.seed,
        precision: a.precision,
        g_mode: a.g_path.into(),
        stability_check: !a.no_stability_check,
        tolerance: a.tolerance,
        timings: a.timings,
        ..Default::default()
    };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.jobs).build()?;
    let jobs: Vec<(usize, Suite)> = (0..fields.len())
        .flat_map(|i| suites.iter().map(move |&s| (i, s)))
        .collect();
    let results: Vec<(usize, Suite, Vec<VerificationReport>)> = pool.install(|| {
        jobs.par_iter()
            .map(|&(i, s)| {
                log::info!("F_{}: {}", fields[i].q(), s);
                (i, s, run_suite(&fields[i], s, &opts))
            })
            .collect()
    });

    let mut summary = Summary::default();
    let mut per_field: Vec<Vec<VerificationReport>> = vec![Vec::new(); fields.len()];
    for (i, _, reports) in results {
        for r in &reports {
            match r.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        per_field[i].extend(reports);
    }

    let text = match a.format {
        Format::Json => {
            let fields_json: Vec<Value> = fields
                .iter()
                .zip(&per_field)
                .map(|(f, checks)| {
                    let id = FieldId::of(f);
                    json!({ "p": id.p, "r": id.r, "modulus": id.modulus, "checks": checks })
                })
                .collect();
            let doc = json!({
                "meta": {
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": a.seed,
                    "config": {
                        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
                        "samples": opts.samples,
                        "precision": opts.precision,
                        "g_path": opts.g_mode,
                        "stability_check": opts.stability_check,
                        "tolerance": opts.tolerance,
                        "identity_samples": opts.identity_samples,
                    },
                },
                "fields": fields_json,
                "summary": summary,
            });
            to_json(&doc)?
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["p", "r", "family", "index", "status", "brute", "formula", "max_defect", "params", "reason"])?;
            for (f, checks) in fields.iter().zip(&per_field) {
                for c in checks {
                    let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    w.write_record([
                        f.p().to_string(),
                        f.r().to_string(),
                        c.family.clone(),
                        c.index.to_string(),
                        status_name(c.status).to_string(),
                        c.brute.map(|v| v.to_string()).unwrap_or_default(),
                        c.formula.map(|v| v.to_string()).unwrap_or_default(),
                        c.max_defect.map(|v| format!("{v:e}")).unwrap_or_default(),
                        params.join(" "),
                        c.reason.clone().unwrap_or_default(),
                    ])?;
                }
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = String::new();
            for (f, checks) in fields.iter().zip(&per_field) {
                for suite in &suites {
                    let mine: Vec<&VerificationReport> = checks.iter().filter(|c| c.family == suite.name()).collect();
                    let count = |st| mine.iter().filter(|c| c.status == st).count();
                    s.push_str(&format!(
                        "F_{:<5} {:<12} pass {:>4}  fail {:>4}  skipped {:>2}\n",
                        f.q(),
                        suite.name(),
                        count(Status::Pass),
                        count(Status::Fail),
                        count(Status::Skipped)
                    ));
                    for c in mine.iter().filter(|c| c.status != Status::Pass) {
                        let params: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
                        s.push_str(&format!(
                            "    {} #{} [{}]: {}\n",
                            status_name(c.status),
                            c.index,
                            params.join(" "),
                            c.reason.as_deref().unwrap_or("")
                        ));
                    }
                }
            }
            s.push_str(&format!("total: pass {}, fail {}, skipped {}\n", summary.pass, summary.fail, summary.skipped));
            s
        }
    };
    emit(a.out.as_ref(), &text)?;
    Ok(if summary.fail == 0 { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAIL) })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Skipped => "skipped",
    }
}

#[derive(Serialize)]
struct GfunRow {
    t: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw_mantissa: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    raw_valuation: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn gfun(a: GfunArgs) -> anyhow::Result<ExitCode> {
    let field = a.field.single()?;
    let params = match a.set {
        GSet::G => GnnParams::g_function(),
        GSet::Half => GnnParams::half(),
    };
    let ev = GnnEvaluator::new(&field, params.clone(), a.precision, true)?;
    let ts: Vec<_> = if a.t.is_empty() {
        field.units().collect()
    } else {
        a.t.iter().map(|s| field.parse(s)).collect::<Result<_, _>>()?
    };
    let mut failed = false;
    let rows: Vec<GfunRow> = ts
        .iter()
        .map(|&t| {
            let mut row = GfunRow {
                t: field.format(t),
                value: None,
                raw_mantissa: None,
                raw_valuation: None,
                error: None,
            };
            match ev.eval(t) {
                Ok(v) => row.value = Some(v.to_string()),
                Err(e) => {
                    failed = true;
                    if matches!(e, Error::RecognitionFailure(_)) {
                        if let Ok(raw) = ev.main().eval_raw(t) {
                            row.raw_mantissa = Some(raw.mantissa.coeffs().iter().map(|c| c.to_string()).collect());
                            row.raw_valuation = Some(raw.valuation);
                        }
                    }
                    row.error = Some(e.to_string());
                }
            }
            row
        })
        .collect();
    let text = match a.format {
        Format::Json => to_json(&json!({
            "field": FieldId::of(&field),
            "params": params.to_string(),
            "precision": ev.precision(),
            "values": rows,
        }))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["t", "value", "error"])?;
            for r in &rows {
                w.write_record([r.t.as_str(), r.value.as_deref().unwrap_or(""), r.error.as_deref().unwrap_or("")])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
        Format::Text => {
            let mut s = format!("{params} over F_{}, M = {}\n", field.q(), ev.precision());
            for r in &rows {
                match (&r.value, &r.raw_mantissa) {
                    (Some(v), _) => s.push_str(&format!("{:>8}  {v}\n", r.t)),
                    (None, Some(m)) => s.push_str(&format!(
                        "{:>8}  unrecognized: p^{} * [{}] ({})\n",
                        r.t,
                        r.raw_valuation.unwrap_or(0),
                        m.join(", "),
                        r.error.as_deref().unwrap_or("")
                    )),
                    (None, None) => s.push_str(&format!("{:>8}  error: {}\n", r.t, r.error.as_deref().unwrap_or(""))),
                }
            }
            s
        }
    };
    emit(None, &text)?;
    Ok(if failed { ExitCode::from(EXIT_FAIL) } else { ExitCode::SUCCESS })
}
