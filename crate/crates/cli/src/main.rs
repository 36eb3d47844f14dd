//! `ordfix`: command-line front end over the `ordfix` library.
//!
//! Exit codes: 0 all checks pass, 1 a checked property failed (the report is
//! still written), 2 input or usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use ordfix::compfn::{GaugeSpec, ScalarGauge};
use ordfix::contract::{check_contraction, ContractionVariant, MetricSpec, VariantSpec, VariantTag};
use ordfix::instances::{falsify, gen_theorem_instance, library_instance, GeneratorParams, InstanceSpec};
use ordfix::maia::{build_maia_metric, verify_maia_properties, DEFAULT_TOL};
use ordfix::oracle::{theorem_suite, TheoremId};
use ordfix::picard::run_picard;
use ordfix::schema::{export_instance, parse_instance};
use ordfix::spaces::AxiomMode;
use ordfix::{Error, Exec};

#[derive(Parser)]
#[command(name = "ordfix", version, about = "Fixed points on finite quasi-ordered metric spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Run without the thread pool.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Distance and order axioms, or one contraction variant with --variant.
    Check(CheckArgs),
    /// Picard iteration from one start, with a CSV trace.
    Solve(SolveArgs),
    /// Build the series metric and verify its properties.
    Maia(MaiaArgs),
    /// Hypothesis and conclusion suite of one theorem.
    Suite(SuiteArgs),
    /// Randomized counterexample campaign with one hypothesis disabled.
    Falsify(FalsifyArgs),
    /// Generate an instance satisfying a theorem's hypotheses.
    Gen(GenArgs),
}

#[derive(Args)]
struct Source {
    /// Instance JSON file.
    #[arg(long, value_name = "FILE")]
    instance: Option<PathBuf>,
    /// Built-in library entry.
    #[arg(long, value_name = "NAME")]
    library: Option<String>,
    /// Generator parameters, `k=v,...` or JSON.
    #[arg(long, value_name = "PARAMS")]
    gen: Option<String>,
    /// Overrides the instance's alpha (and its gauge, unless --gauge is given).
    #[arg(long)]
    alpha: Option<f64>,
    /// Gauge JSON, e.g. '{"family":"linear","alpha":0.5}'.
    #[arg(long, value_name = "JSON")]
    gauge: Option<String>,
    /// Report path; stdout when absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_name = "TAG")]
    variant: Option<String>,
    /// Evaluate the variant on the series metric instead of the base distance.
    #[arg(long)]
    maia: bool,
    #[arg(long, default_value_t = 0.0)]
    tol: f64,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, default_value_t = 0)]
    start: usize,
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// CSV trace path; defaults to the report path with extension .csv.
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct MaiaArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    src: Source,
    #[arg(long, value_name = "ID")]
    theorem: String,
    #[arg(long, value_name = "HYPOTHESIS")]
    drop: Option<String>,
}

#[derive(Args)]
struct FalsifyArgs {
    #[arg(long, value_name = "ID")]
    theorem: String,
    #[arg(long, value_name = "HYPOTHESIS")]
    drop: Option<String>,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Remaining generator parameters, `k=v,...` or JSON.
    #[arg(long, value_name = "PARAMS")]
    gen: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_name = "PARAMS")]
    gen: Option<String>,
    #[arg(long, value_name = "ID")]
    theorem: Option<String>,
    #[arg(long, value_name = "HYPOTHESIS")]
    drop: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Property(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Precondition(m) => Failure::Property(json!({ "error": m })),
            other => Failure::Usage(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(Value, bool), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn report<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn load(src: &Source) -> std::result::Result<InstanceSpec, Failure> {
    let given = [src.instance.is_some(), src.library.is_some(), src.gen.is_some()];
    if given.iter().filter(|g| **g).count() != 1 {
        return Err(usage("exactly one of --instance, --library, --gen is required"));
    }
    let mut spec = if let Some(path) = &src.instance {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("{}: {e}", path.display())))?;
        parse_instance(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?
    } else if let Some(name) = &src.library {
        library_instance(name)?
    } else {
        let params = GeneratorParams::parse(src.gen.as_deref().unwrap_or(""))?;
        gen_theorem_instance(&params)?
    };
    if let Some(a) = src.alpha {
        if !(a > 0.0 && a < 1.0) {
            return Err(usage(format!("--alpha must lie in (0, 1), got {a}")));
        }
        spec.alpha = Some(a);
        spec.gauge = Some(GaugeSpec::Linear { alpha: a });
    }
    if let Some(g) = &src.gauge {
        let g: GaugeSpec = serde_json::from_str(g).map_err(|e| usage(format!("--gauge: {e}")))?;
        ScalarGauge::from_spec(&g)?;
        spec.gauge = Some(g);
    }
    Ok(spec)
}

fn check(args: &CheckArgs) -> Outcome {
    let spec = load(&args.src)?;
    let space = &spec.space;
    let Some(tag) = &args.variant else {
        let metric_mode = if space.is_symmetric() {
            AxiomMode::Metric
        } else {
            AxiomMode::AlmostMetric
        };
        let metric = space.check_axioms(metric_mode);
        let order = space.check_axioms(AxiomMode::QuasiOrder);
        let pass = metric.all_pass() && order.all_pass();
        let bounds = space.check_bounds_and_directedness();
        return Ok((
            json!({ "metric": metric, "order": order, "bounds": bounds, "all_pass": pass }),
            pass,
        ));
    };
    let vspec = VariantSpec {
        tag: VariantTag::parse(tag)?,
        alpha: spec.alpha,
        gauge: spec.gauge.clone(),
        family: spec.family.clone(),
        metric: MetricSpec::Base,
    };
    let variant = ContractionVariant::from_spec(&vspec)?;
    let rep = if args.maia {
        let alpha = spec
            .alpha
            .ok_or_else(|| usage("--maia needs alpha on the instance or via --alpha"))?;
        let dm = build_maia_metric(space, alpha, None, DEFAULT_TOL)?;
        check_contraction(space, &dm, &variant, args.tol.max(dm.check_slack()))?
    } else {
        check_contraction(space, space, &variant, args.tol)?
    };
    let pass = rep.holds;
    Ok((report(&rep), pass))
}

fn solve(args: &SolveArgs) -> Outcome {
    let spec = load(&args.src)?;
    if args.start >= spec.space.len() {
        return Err(usage(format!(
            "--start {} is out of range for n = {}",
            args.start,
            spec.space.len()
        )));
    }
    let phi = spec
        .phi()?
        .ok_or_else(|| usage("solve needs a gauge: --gauge, --alpha, or one on the instance"))?;
    let res = run_picard(&spec.space, &spec.space, args.start, &phi, args.tol)?;
    let trace_path = args
        .trace
        .clone()
        .or_else(|| args.src.out.as_ref().map(|p| p.with_extension("csv")));
    if let Some(p) = trace_path {
        std::fs::write(&p, res.trace.to_csv()).map_err(|e| usage(format!("{}: {e}", p.display())))?;
    }
    let pass = res.converged && res.certificate.bound_respected;
    Ok((report(&res), pass))
}

fn maia(args: &MaiaArgs) -> Outcome {
    let spec = load(&args.src)?;
    let alpha = spec
        .alpha
        .ok_or_else(|| usage("maia needs alpha on the instance or via --alpha"))?;
    let dm = build_maia_metric(&spec.space, alpha, args.lambda, args.tol)?;
    let rep = verify_maia_properties(&dm)?;
    let pass = rep.all_pass();
    Ok((json!({ "metric": dm.to_doc(), "report": rep }), pass))
}

fn suite(args: &SuiteArgs) -> Outcome {
    let spec = load(&args.src)?;
    let theorem = TheoremId::parse(&args.theorem)?;
    let mut params = spec.suite_params(theorem)?;
    params.drop = args.drop.clone();
    let v = theorem_suite(&spec.space, theorem, &params)?;
    let pass = v.hypotheses_hold && v.conclusions_hold;
    Ok((report(&v), pass))
}

fn falsify_cmd(args: &FalsifyArgs, exec: Exec) -> Outcome {
    let mut base = GeneratorParams::parse(args.gen.as_deref().unwrap_or(""))?;
    base.target = TheoremId::parse(&args.theorem)?;
    base.drop = args.drop.clone();
    base.seed = args.seed;
    let rep = falsify(exec, &base, args.trials)?;
    // a counterexample with nothing dropped refutes the implication itself
    let pass = rep.drop.is_some() || rep.counterexample.is_none();
    Ok((report(&rep), pass))
}

fn gen(args: &GenArgs) -> Outcome {
    let mut p = GeneratorParams::parse(args.gen.as_deref().unwrap_or(""))?;
    if let Some(t) = &args.theorem {
        p.target = TheoremId::parse(t)?;
    }
    if args.drop.is_some() {
        p.drop = args.drop.clone();
    }
    if let Some(s) = args.seed {
        p.seed = s;
    }
    let spec = gen_theorem_instance(&p)?;
    let v: Value = serde_json::from_str(&export_instance(&spec)).expect("export is JSON");
    Ok((v, true))
}

fn summary(cmd: &str, v: &Value, pass: bool) -> String {
    let status = if pass { "PASS" } else { "FAIL" };
    let detail = match cmd {
        "solve" => format!("converged={} fixed_point={}", v["converged"], v["fixed_point"]),
        "suite" => format!(
            "theorem={} hypotheses_hold={} conclusions_hold={}",
            v["theorem"], v["hypotheses_hold"], v["conclusions_hold"]
        ),
        "falsify" => format!(
            "theorem={} drop={} counterexample_trial={}",
            v["theorem"], v["drop"], v["counterexample"]["trial"]
        ),
        "gen" => format!("n={}", v["n"]),
        _ => String::new(),
    };
    format!("{cmd}: {status} {detail}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let (name, out, result) = match &cli.command {
        Command::Check(a) => ("check", a.src.out.clone(), check(a)),
        Command::Solve(a) => ("solve", a.src.out.clone(), solve(a)),
        Command::Maia(a) => ("maia", a.src.out.clone(), maia(a)),
        Command::Suite(a) => ("suite", a.src.out.clone(), suite(a)),
        Command::Falsify(a) => ("falsify", a.out.clone(), falsify_cmd(a, exec)),
        Command::Gen(a) => ("gen", a.out.clone(), gen(a)),
    };
    let (value, pass) = match result {
        Ok(r) => r,
        Err(Failure::Property(v)) => (v, false),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("reports serialize");
    match out {
        Some(p) => {
            if let Err(e) = std::fs::write(&p, text + "\n") {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(2);
            }
            println!("{}", summary(name, &value, pass));
        }
        None => println!("{text}"),
    }
    ExitCode::from(if pass { 0 } else { 1 })
}
