//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

#[path = "../../core/tests/support/chop_corpus.rs"]
mod chop_corpus;
#[path = "../../core/tests/support/standard_chop_reference.rs"]
mod reference;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use funcut::coeff_file::read_coeffs;
use funcut::expr::parse;
use funcut::transform::{coeffs_to_vals, trig_coeffs_to_vals, trig_vals_to_coeffs, vals_to_coeffs};
use funcut::{
    construct, cumsum, negate, sample_grid, standard_chop, ConstructConfig, ConstructReport, Fun,
    Interval, Sampler,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn build(src: &str, config: &ConstructConfig) -> (Fun, ConstructReport) {
    let e = parse(src).unwrap();
    construct(
        &Sampler::new(Interval::unit(), move |x| e.eval_real(x)),
        config,
    )
    .unwrap()
}

fn equispaced(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| {
        if i == n - 1 {
            1.0
        } else {
            -1.0 + 2.0 * i as f64 / (n - 1) as f64
        }
    })
}

fn oracle_equivalence() -> Outcome {
    let (mismatches, elapsed) = timed(|| {
        chop_corpus::corpus(1000, 7)
            .iter()
            .filter(|s| {
                let c: Vec<Complex64> = s.coeffs.iter().map(|&v| Complex64::new(v, 0.0)).collect();
                let r = standard_chop(&c, s.tol);
                (r.cutoff, r.plateau_point) != reference::reference_chop(&s.coeffs, s.tol)
            })
            .count()
    });
    check(
        mismatches == 0 && elapsed < Duration::from_secs(5),
        format!("{mismatches} mismatches in 1000 sequences, {elapsed:.2?}"),
    )
}

fn log_coefficients_on_129_grid() -> Outcome {
    let src = "log(1.1-x)";
    let tol = f64::EPSILON;
    let ((built, raw), elapsed) = timed(|| {
        let built = build(src, &ConstructConfig::default());
        let e = parse(src).unwrap();
        let s = Sampler::new(Interval::unit(), move |x| e.eval_real(x));
        (built, sample_grid(&s, 129, false, tol).unwrap())
    });
    let (_, report) = built;
    let (_, chop) = raw;
    let ladder: Vec<(usize, bool)> = report
        .grids_tried
        .iter()
        .zip(&report.per_grid)
        .map(|(g, c)| (*g, c.happy))
        .collect();
    let ladder_ok = ladder == [(17, false), (33, false), (65, false), (129, true)];
    let plateau = chop.plateau_point.unwrap_or(0);
    let near = plateau.abs_diff(71) <= 1 && chop.cutoff.abs_diff(75) <= 1;

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/log11x_129.csv");
    let (_, coeffs) = read_coeffs(&std::fs::read_to_string(path).unwrap()).unwrap();
    let fixed = standard_chop(&coeffs, tol);
    let exact = fixed.plateau_point == Some(71) && fixed.cutoff == 75;
    check(
        ladder_ok && near && exact && elapsed < Duration::from_secs(1),
        format!(
            "ladder {ladder:?}; computed plateauPoint {plateau} cutoff {}; \
             fixture plateauPoint {:?} cutoff {} (want 71/75); {elapsed:.2?}",
            chop.cutoff, fixed.plateau_point, fixed.cutoff
        ),
    )
}

const SMOOTH: &str = "3*exp(-1./(x+1))-(x+1)";

fn default_tolerance_example() -> Outcome {
    let (f, report) = build(SMOOTH, &ConstructConfig::default());
    let e = parse(SMOOTH).unwrap();
    let err = equispaced(1000)
        .map(|x| (f.eval(x) - e.eval_real(x)).norm())
        .fold(0.0, f64::max);
    let grid = report.grids_tried.last().copied();
    check(
        f.is_happy()
            && grid == Some(257)
            && f.len().abs_diff(166) <= 2
            && err <= 1e-14 * f.vscale(),
        format!(
            "happy {} on grid {grid:?}, length {} (want 166 +/- 2), max error {err:.2e} vs bound {:.2e}",
            f.is_happy(),
            f.len(),
            1e-14 * f.vscale()
        ),
    )
}

fn aliasing_caught() -> Outcome {
    let (f, report) = build("cos(128*acos(x))", &ConstructConfig::default());
    check(
        f.len() == 129 && report.sample_test_failed_grids == [17, 33, 65],
        format!(
            "length {}, sample test failed on {:?}",
            f.len(),
            report.sample_test_failed_grids
        ),
    )
}

fn loose_tolerance() -> Outcome {
    let (f, _) = build(SMOOTH, &ConstructConfig::default().with_tol(1e-6));
    check(
        f.len().abs_diff(51) <= 2,
        format!("length {} (want 51 +/- 2)", f.len()),
    )
}

fn scale_invariance() -> Outcome {
    let config = ConstructConfig::default();
    let (f, _) = build(SMOOTH, &config);
    let mut notes = Vec::new();
    let mut ok = true;
    for e in [500, -500] {
        let scale = 2f64.powi(e);
        let (g, _) = build(&format!("2.^({e})*({SMOOTH})"), &config);
        let same = g.len() == f.len()
            && f.coeffs()
                .iter()
                .zip(g.coeffs())
                .all(|(a, b)| a * scale == *b);
        ok &= same;
        notes.push(format!("2^{e}: length {} exact {same}", g.len()));
    }
    check(ok, format!("base length {}; {}", f.len(), notes.join(", ")))
}

fn cumsum_of_log() -> Outcome {
    let (f, _) = build("log(1.1-x)", &ConstructConfig::default());
    let g = cumsum(&f, f64::EPSILON).unwrap();
    let exact = |x: f64| {
        let (u, v) = (1.1 - x, 2.1f64);
        (v * v.ln() - v) - (u * u.ln() - u)
    };
    let err = equispaced(100)
        .map(|x| (g.eval(x).re - exact(x)).abs())
        .fold(0.0, f64::max);
    let bound = 1e-12 * g.vscale();
    check(
        g.len().abs_diff(70) <= 2 && err <= bound,
        format!(
            "length {} (want 70 +/- 2, input length {}), max error {err:.2e} vs bound {bound:.2e}",
            g.len(),
            f.len()
        ),
    )
}

fn negate_versus_reconstruct() -> Outcome {
    let (f, _) = build("sin(1./(x+.03i))", &ConstructConfig::default());
    let minus = negate(&f);
    let (rebuilt, _) = construct(
        &Sampler::new(Interval::unit(), |x| -f.eval(x)),
        &ConstructConfig::default(),
    )
    .unwrap();
    check(
        minus.len() == f.len() && rebuilt.len() < f.len(),
        format!(
            "f {}, negate {}, reconstructed {} (want strictly smaller)",
            f.len(),
            minus.len(),
            rebuilt.len()
        ),
    )
}

fn pseudonoise(x: f64) -> f64 {
    ChaCha8Rng::seed_from_u64(x.to_bits()).gen_range(-1.0..1.0)
}

fn noisy_exponential() -> Outcome {
    let s = Sampler::new(Interval::unit(), |x: f64| {
        Complex64::new(x.exp() + 1e-2 * pseudonoise(x), 0.0)
    });
    let ((default, loose), elapsed) = timed(|| {
        (
            construct(&s, &ConstructConfig::default()).unwrap(),
            construct(&s, &ConstructConfig::default().with_tol(1e-8)).unwrap(),
        )
    });
    let (f, report) = default;
    let (g, _) = loose;
    let first =
        !f.is_happy() && report.warning.is_some() && report.grids_tried.last() == Some(&65537);
    let second = g.is_happy() && g.len() < 40;
    check(
        first && second && elapsed < Duration::from_secs(10),
        format!(
            "default tol: happy {} last grid {:?} warning {}; tol 1e-8: happy {} length {} (want < 40); {elapsed:.2?}",
            f.is_happy(),
            report.grids_tried.last(),
            report.warning.is_some(),
            g.is_happy(),
            g.len()
        ),
    )
}

fn polynomial_chopping() -> Outcome {
    let lengths: Vec<usize> = ["x.^2 + x.^5", "x.^2 + 1e-14*x.^5", "x.^2 + 1e-16*x.^5"]
        .iter()
        .map(|src| build(src, &ConstructConfig::default()).0.len())
        .collect();
    check(lengths == [6, 6, 3], format!("lengths {lengths:?}"))
}

fn max_relative_error(a: &[Complex64], b: &[Complex64]) -> f64 {
    let scale = b.iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
        / scale
}

fn transform_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut random = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let mut worst: f64 = 0.0;
    for n in [2, 3, 16, 17, 100, 1000, 1024, 4096, 4097] {
        let v = random(n);
        worst = worst.max(max_relative_error(&coeffs_to_vals(&vals_to_coeffs(&v)), &v));
        if n % 2 == 0 {
            let back = trig_coeffs_to_vals(&trig_vals_to_coeffs(&v).unwrap()).unwrap();
            worst = worst.max(max_relative_error(&back, &v));
        }
    }
    let long = random(65537);
    let (c, elapsed) = timed(|| vals_to_coeffs(&long));
    check(
        worst <= 1e-14 && c.len() == 65537 && elapsed < Duration::from_secs(1),
        format!("worst relative error {worst:.2e}, 65537-point transform {elapsed:.2?}"),
    )
}

fn parser_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let alphabet = b"x0123456789.eEi+-*/^() ,piexpsincolgqrtab";
    for _ in 0..100_000 {
        let len = rng.gen_range(0..48);
        let bytes: Vec<u8> = (0..len)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    alphabet[rng.gen_range(0..alphabet.len())]
                } else {
                    rng.gen()
                }
            })
            .collect();
        let text = String::from_utf8_lossy(&bytes);
        if let Ok(e) = parse(&text) {
            let _ = e.eval_real(0.37);
        }
    }
    let sources = [
        "3*exp(-1./(x+1))-(x+1)",
        "2.^(500)*(3*exp(-1./(x+1))-(x+1))",
        "2.^(-500)*(3*exp(-1./(x+1))-(x+1))",
        "x",
        "exp(x)./(1+x.^2)",
        "sin(1./(x+.03i))",
        "log(1.1-x)",
    ];
    let bad: Vec<&str> = sources
        .iter()
        .copied()
        .filter(|src| match parse(src) {
            Ok(e) => equispaced(11).any(|x| {
                let v = e.eval_real(x);
                !(v.re.is_finite() && v.im.is_finite())
            }),
            Err(_) => true,
        })
        .collect();
    check(
        bad.is_empty(),
        format!(
            "100000 random inputs without panic; {} expressions, failing: {bad:?}",
            sources.len()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("chop matches reference transcription", oracle_equivalence),
        (
            "log(1.1-x) on the 129-point grid",
            log_coefficients_on_129_grid,
        ),
        ("smooth example at default tol", default_tolerance_example),
        ("aliased T_128 caught by sample test", aliasing_caught),
        ("smooth example at tol 1e-6", loose_tolerance),
        ("scaling by 2^500 and 2^-500", scale_invariance),
        ("cumsum of log(1.1-x)", cumsum_of_log),
        ("negate versus reconstruct", negate_versus_reconstruct),
        ("noisy exponential", noisy_exponential),
        ("polynomial chopping", polynomial_chopping),
        ("transform round trip", transform_round_trip),
        ("parser fuzz and example expressions", parser_fuzz),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} {:>2} {name}: {detail}", i + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
