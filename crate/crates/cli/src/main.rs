use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use funcut::coeff_file::{read_coeffs, write_coeffs};
use funcut::expr::{parse, Expr};
use funcut::transform::{fold_trig_for_chop, trig_degree_for_cutoff};
use funcut::{
    construct, double_length, sample_grid, standard_chop, standard_chop_abs, Basis, ChopResult,
    ConstructConfig, ConstructReport, Error, Fun, Interval, Sampler,
};
use serde_json::{json, Map, Value};

/// Adaptive Chebyshev and Fourier approximation from the command line.
#[derive(Parser)]
#[command(name = "funcut", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a series for an expression in `x` and report how it was chopped.
    Construct(ConstructArgs),
    /// Run the chopping rule on a coefficient file.
    Chop(ChopArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Expression in `x`, e.g. "3*exp(-1./(x+1))-(x+1)".
    expr: String,
    /// Relative tolerance.
    #[arg(long, default_value_t = f64::EPSILON)]
    eps: f64,
    /// Use a Fourier series on equispaced grids.
    #[arg(long)]
    trig: bool,
    /// Also build the series at twice the adaptively chosen degree.
    #[arg(long)]
    doublelength: bool,
    /// Interval endpoints.
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    /// Largest grid to try.
    #[arg(long, env = "FUNCUT_MAX_SAMPLES")]
    max_samples: Option<usize>,
    /// Write coefficients to this CSV file.
    #[arg(long)]
    coeffs: Option<PathBuf>,
    /// Compare against the expression at N equispaced points.
    #[arg(long, value_name = "N")]
    eval: Option<usize>,
    /// Write the comparison rows here instead of into the JSON output.
    #[arg(long, requires = "eval")]
    eval_out: Option<PathBuf>,
    /// Sample a single grid of N points and keep every coefficient.
    #[arg(long, value_name = "N", conflicts_with = "doublelength")]
    raw_grid: Option<usize>,
}

#[derive(Args)]
struct ChopArgs {
    /// Coefficient CSV with an `index,re,im` or `wavenumber,re,im` header.
    file: PathBuf,
    /// Relative tolerance.
    #[arg(long)]
    tol: f64,
    /// Include the normalized envelope in the output.
    #[arg(long)]
    envelope: bool,
}

/// Failure carrying the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn numeric(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFiniteSample { .. } => Failure::numeric(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => run_construct(&args),
        Command::Chop(args) => run_chop(&args),
    };
    match result {
        Ok(output) => {
            let text = serde_json::to_string_pretty(&output).expect("serializable");
            // A closed pipe downstream is not our failure.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn chop_json(chop: &ChopResult) -> Value {
    json!({
        "cutoff": chop.cutoff,
        "plateauPoint": chop.plateau_point,
        "happy": chop.happy,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// `dir/name_double.ext` for `dir/name.ext`.
fn doubled_path(path: &Path) -> PathBuf {
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    let name = match path.extension() {
        Some(ext) => format!("{stem}_double.{}", ext.to_string_lossy()),
        None => format!("{stem}_double"),
    };
    path.with_file_name(name)
}

fn config_from(args: &ConstructArgs) -> Result<ConstructConfig, Failure> {
    let mut config = ConstructConfig::default()
        .with_tol(args.eps)
        .with_trig(args.trig);
    if let Some(max) = args.max_samples {
        config = config.with_max_samples(max);
    }
    config.validate()?;
    Ok(config)
}

fn interval_from(args: &ConstructArgs) -> Result<Interval, Failure> {
    match args.interval.as_deref() {
        Some(&[a, b]) => Ok(Interval::new(a, b)?),
        Some(_) => Err(Failure::usage("--interval takes two numbers")),
        None => Ok(Interval::unit()),
    }
}

/// `(x, |f(x) - expr(x)|)` at `n` equispaced points.
fn error_rows(fun: &Fun, expr: &Expr, n: usize) -> Vec<(f64, f64)> {
    let iv = fun.interval();
    (0..n)
        .map(|i| {
            let x = if n == 1 {
                iv.a()
            } else if i == n - 1 {
                iv.b()
            } else {
                iv.a() + iv.width() * (i as f64 / (n - 1) as f64)
            };
            (x, (fun.eval(x) - expr.eval_real(x)).norm())
        })
        .collect()
}

fn run_construct(args: &ConstructArgs) -> Result<Value, Failure> {
    let expr = parse(&args.expr).map_err(|e| Failure::usage(format!("{}: {e}", args.expr)))?;
    let config = config_from(args)?;
    let interval = interval_from(args)?;
    let eval_expr = expr.clone();
    let sampler = Sampler::new(interval, move |x| eval_expr.eval_real(x));

    let mut out = Map::new();
    out.insert("expression".into(), json!(args.expr));
    out.insert(
        "basis".into(),
        json!(if args.trig { "fourier" } else { "chebyshev" }),
    );
    out.insert("interval".into(), json!([interval.a(), interval.b()]));
    out.insert("tol".into(), json!(config.effective_tol()));

    let fun = if let Some(n) = args.raw_grid {
        let (fun, chop) = sample_grid(&sampler, n, args.trig, config.effective_tol())?;
        out.insert("length".into(), json!(fun.len()));
        out.insert("happy".into(), json!(chop.happy));
        out.insert("cutoff".into(), json!(chop.cutoff));
        out.insert("plateauPoint".into(), json!(chop.plateau_point));
        out.insert("gridsTried".into(), json!([n]));
        out.insert("warning".into(), Value::Null);
        eprintln!(
            "{}: {} coefficients on one grid, cutoff {}, plateau point {}",
            args.expr,
            fun.len(),
            chop.cutoff,
            chop.plateau_point.map_or("none".into(), |p| p.to_string()),
        );
        fun
    } else {
        let (fun, report) = construct(&sampler, &config)?;
        describe_report(&mut out, &fun, &report);
        eprintln!(
            "{}: length {} ({}), grids {:?}",
            args.expr,
            fun.len(),
            if fun.is_happy() { "happy" } else { "unhappy" },
            report.grids_tried,
        );
        if let Some(w) = &report.warning {
            eprintln!("warning: {w}");
        }
        fun
    };
    out.insert("vscale".into(), json!(fun.vscale()));

    if let Some(path) = &args.coeffs {
        write_file(path, &write_coeffs(fun.basis(), fun.coeffs()))?;
        out.insert("coeffsFile".into(), json!(path.display().to_string()));
    }

    if args.doublelength {
        let doubled = double_length(&sampler, &fun)?;
        out.insert("doubleLength".into(), json!(doubled.len()));
        if let Some(path) = &args.coeffs {
            let target = doubled_path(path);
            write_file(&target, &write_coeffs(doubled.basis(), doubled.coeffs()))?;
            out.insert(
                "doubleCoeffsFile".into(),
                json!(target.display().to_string()),
            );
        }
    }

    if let Some(n) = args.eval {
        let rows = error_rows(&fun, &expr, n);
        let max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
        out.insert("maxError".into(), json!(max));
        match &args.eval_out {
            Some(path) => {
                let mut text = String::from("x,error\n");
                for (x, e) in &rows {
                    text.push_str(&format!("{x:?},{e:?}\n"));
                }
                write_file(path, &text)?;
                out.insert("evalFile".into(), json!(path.display().to_string()));
            }
            None => {
                out.insert(
                    "eval".into(),
                    json!(rows.iter().map(|r| [r.0, r.1]).collect::<Vec<_>>()),
                );
            }
        }
    }

    out.insert(
        "coefficients".into(),
        json!(fun
            .coeffs()
            .iter()
            .map(|c| [c.re, c.im])
            .collect::<Vec<_>>()),
    );
    Ok(Value::Object(out))
}

fn describe_report(out: &mut Map<String, Value>, fun: &Fun, report: &ConstructReport) {
    let last = report.per_grid.last();
    out.insert("length".into(), json!(fun.len()));
    out.insert("happy".into(), json!(fun.is_happy()));
    out.insert("cutoff".into(), json!(last.map(|c| c.cutoff)));
    out.insert(
        "plateauPoint".into(),
        json!(last.and_then(|c| c.plateau_point)),
    );
    out.insert("gridsTried".into(), json!(report.grids_tried));
    out.insert(
        "perGrid".into(),
        Value::Array(
            report
                .grids_tried
                .iter()
                .zip(&report.per_grid)
                .map(|(g, c)| {
                    let mut v = chop_json(c);
                    v["grid"] = json!(g);
                    v["sampleTestFailed"] = json!(report.sample_test_failed_grids.contains(g));
                    v
                })
                .collect(),
        ),
    );
    out.insert(
        "sampleTestFailures".into(),
        json!(report.sample_test_failures),
    );
    out.insert("warning".into(), json!(report.warning));
}

fn run_chop(args: &ChopArgs) -> Result<Value, Failure> {
    if args.tol.is_nan() || args.tol <= 0.0 {
        return Err(Failure::usage("--tol must be positive"));
    }
    let text = fs::read_to_string(&args.file)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.file.display())))?;
    let (basis, coeffs) =
        read_coeffs(&text).map_err(|e| Failure::usage(format!("{}: {e}", args.file.display())))?;
    let chop = match basis {
        Basis::Chebyshev => standard_chop(&coeffs, args.tol),
        Basis::Trigonometric => standard_chop_abs(&fold_trig_for_chop(&coeffs)?, args.tol),
    };
    eprintln!(
        "{}: {} coefficients, cutoff {}, plateau point {}, {}",
        args.file.display(),
        coeffs.len(),
        chop.cutoff,
        chop.plateau_point.map_or("none".into(), |p| p.to_string()),
        if chop.happy { "happy" } else { "unhappy" },
    );
    let mut out = Map::new();
    out.insert("file".into(), json!(args.file.display().to_string()));
    out.insert("basis".into(), json!(format!("{basis:?}").to_lowercase()));
    out.insert("length".into(), json!(coeffs.len()));
    out.insert("tol".into(), json!(args.tol));
    out.insert("cutoff".into(), json!(chop.cutoff));
    out.insert("plateauPoint".into(), json!(chop.plateau_point));
    out.insert("happy".into(), json!(chop.happy));
    if basis == Basis::Trigonometric && chop.happy {
        out.insert(
            "keptWavenumber".into(),
            json!(trig_degree_for_cutoff(chop.cutoff)),
        );
    }
    if args.envelope {
        let env = chop.envelope.as_ref().map(|e| e.values().to_vec());
        out.insert("envelope".into(), json!(env));
    }
    Ok(Value::Object(out))
}
