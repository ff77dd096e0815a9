//! Adaptive construction: sample on nested grids until the chopper is happy
//! and the result survives an off-grid spot check.

use num_complex::Complex64;

use crate::chop::{standard_chop, standard_chop_abs, ChopResult};
use crate::error::Error;
use crate::series::{Basis, CoefficientSeries, ConstructConfig, Fun, Interval};
use crate::transform::{
    cheb_points, fold_trig_for_chop, trig_degree_for_cutoff, trig_reference_points,
    trig_vals_to_coeffs, vals_to_coeffs,
};

/// A function to be approximated, together with its interval.
///
/// The callback must be deterministic: the same `x` always yields the same
/// bits.
pub struct Sampler<F> {
    interval: Interval,
    func: F,
}

impl<F: Fn(f64) -> Complex64> Sampler<F> {
    pub fn new(interval: Interval, func: F) -> Self {
        Sampler { interval, func }
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        (self.func)(x)
    }

    fn eval_checked(&self, x: f64) -> Result<Complex64, Error> {
        let v = (self.func)(x);
        if v.re.is_finite() && v.im.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteSample { x })
        }
    }

    /// Samples at reference points `t`, mapped onto the interval.
    fn sample(&self, reference: &[f64]) -> Result<Vec<Complex64>, Error> {
        reference
            .iter()
            .map(|&t| self.eval_checked(self.interval.from_reference(t)))
            .collect()
    }
}

/// What happened on the way to a [`Fun`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConstructReport {
    /// Grid sizes in the order they were sampled.
    pub grids_tried: Vec<usize>,
    /// Chop decision on each grid, parallel to `grids_tried`.
    pub per_grid: Vec<ChopResult>,
    pub sample_test_failures: usize,
    /// Grids where the chopper was happy but the spot check failed.
    pub sample_test_failed_grids: Vec<usize>,
    /// Length chosen adaptively, before any doubling.
    pub adaptive_length: usize,
    pub warning: Option<String>,
}

/// Reference coordinates of the two spot-check points. Both are irrational,
/// so they never land on a Chebyshev or periodic grid point.
pub fn sample_test_points() -> [f64; 2] {
    [(5f64.sqrt() - 1.0) / 2.0, std::f64::consts::FRAC_1_PI]
}

/// Spot-checks `candidate` against `sampler` at two fixed off-grid points.
///
/// Passes when both discrepancies are at most `sqrt(tol) * max(vscale, tiny)`,
/// where `vscale` is the candidate's recorded vertical scale.
pub fn sample_test<F: Fn(f64) -> Complex64>(
    sampler: &Sampler<F>,
    candidate: &Fun,
    tol: f64,
) -> bool {
    let bound = tol.sqrt() * candidate.vscale().max(f64::MIN_POSITIVE);
    sample_test_points().iter().all(|&t| {
        let x = sampler.interval().from_reference(t);
        let exact = sampler.eval(x);
        let approx = candidate.eval(x);
        (exact - approx).norm() <= bound
    })
}

/// Next grid size in the refinement sequence: 17, 33, 65, ... for Chebyshev
/// grids, 16, 32, 64, ... for periodic ones.
pub fn next_grid(current: usize, trig: bool) -> usize {
    if trig {
        2 * current
    } else {
        2 * (current - 1) + 1
    }
}

fn first_grid(config: &ConstructConfig) -> usize {
    if config.trig {
        (config.min_samples - 1).next_power_of_two()
    } else {
        (config.min_samples - 1).next_power_of_two() + 1
    }
}

fn max_abs(values: &[Complex64]) -> f64 {
    values
        .iter()
        .map(|v| if v.im == 0.0 { v.re.abs() } else { v.norm() })
        .fold(0.0, f64::max)
}

/// Coefficients and their chop decision on one grid.
struct GridResult {
    coeffs: Vec<Complex64>,
    chop: ChopResult,
    vscale: f64,
}

fn analyse(values: &[Complex64], trig: bool, tol: f64) -> Result<GridResult, Error> {
    let vscale = max_abs(values);
    if trig {
        let coeffs = trig_vals_to_coeffs(values)?;
        let chop = standard_chop_abs(&fold_trig_for_chop(&coeffs)?, tol);
        Ok(GridResult {
            coeffs,
            chop,
            vscale,
        })
    } else {
        let coeffs = vals_to_coeffs(values);
        let chop = standard_chop(&coeffs, tol);
        Ok(GridResult {
            coeffs,
            chop,
            vscale,
        })
    }
}

/// Truncates grid coefficients to the chop decision.
fn truncate(coeffs: &[Complex64], cutoff: usize, trig: bool) -> Vec<Complex64> {
    if trig {
        let m = (coeffs.len() - 1) / 2;
        let keep = trig_degree_for_cutoff(cutoff).min(m);
        coeffs[m - keep..=m + keep].to_vec()
    } else {
        coeffs[..cutoff].to_vec()
    }
}

fn reference_grid(num_points: usize, trig: bool) -> Vec<f64> {
    if trig {
        trig_reference_points(num_points)
    } else {
        cheb_points(num_points - 1)
    }
}

/// Values on the grid of `num_points`, reusing the previous (half-size) grid
/// whose points sit at the even indices of the new one.
fn sample_nested<F: Fn(f64) -> Complex64>(
    sampler: &Sampler<F>,
    num_points: usize,
    trig: bool,
    previous: Option<&[Complex64]>,
) -> Result<Vec<Complex64>, Error> {
    let points = reference_grid(num_points, trig);
    let Some(prev) = previous else {
        return sampler.sample(&points);
    };
    let mut values = Vec::with_capacity(num_points);
    for (j, &t) in points.iter().enumerate() {
        if j % 2 == 0 {
            values.push(prev[j / 2]);
        } else {
            values.push(sampler.eval_checked(sampler.interval().from_reference(t))?);
        }
    }
    Ok(values)
}

/// Builds a [`Fun`] for `sampler` by adaptive refinement.
pub fn construct<F: Fn(f64) -> Complex64>(
    sampler: &Sampler<F>,
    config: &ConstructConfig,
) -> Result<(Fun, ConstructReport), Error> {
    config.validate()?;
    let tol = config.effective_tol();
    let trig = config.trig;
    let basis = if trig {
        Basis::Trigonometric
    } else {
        Basis::Chebyshev
    };
    let interval = sampler.interval();
    let mut report = ConstructReport::default();

    let mut num_points = first_grid(config);
    let mut previous: Option<Vec<Complex64>> = None;
    let mut last: Option<GridResult> = None;

    while num_points <= config.max_samples {
        let reuse = if config.resample {
            None
        } else {
            previous.as_deref()
        };
        let values = sample_nested(sampler, num_points, trig, reuse)?;
        let grid = analyse(&values, trig, tol)?;
        report.grids_tried.push(num_points);
        report.per_grid.push(grid.chop.clone());

        if grid.chop.happy {
            let kept = truncate(&grid.coeffs, grid.chop.cutoff, trig);
            let series = CoefficientSeries::new(basis, interval, kept)?;
            let candidate = Fun::new(series, grid.vscale, Some(grid.chop.clone()), true);
            if sample_test(sampler, &candidate, tol) {
                report.adaptive_length = candidate.len();
                if config.doublelength {
                    let doubled = double_length(sampler, &candidate)?;
                    return Ok((doubled, report));
                }
                return Ok((candidate, report));
            }
            report.sample_test_failures += 1;
            report.sample_test_failed_grids.push(num_points);
        }

        previous = Some(values);
        last = Some(grid);
        num_points = next_grid(num_points, trig);
    }

    let Some(grid) = last else {
        return Err(Error::InvalidConfig(format!(
            "max_samples {} admits no grid",
            config.max_samples
        )));
    };
    let tried = *report.grids_tried.last().unwrap_or(&0);
    report.warning = Some(format!(
        "function not resolved using {tried} points; returning the unchopped series"
    ));
    let series = CoefficientSeries::new(basis, interval, grid.coeffs)?;
    report.adaptive_length = series.len();
    let fun = Fun::new(series, grid.vscale, Some(grid.chop), false);
    Ok((fun, report))
}

/// Re-samples `sampler` at twice the length of `fun` without chopping.
///
/// A Chebyshev fun of length `L` (degree `L - 1`) becomes length `2L`; a
/// trigonometric fun of degree `m` becomes degree `2m`.
pub fn double_length<F: Fn(f64) -> Complex64>(
    sampler: &Sampler<F>,
    fun: &Fun,
) -> Result<Fun, Error> {
    let trig = fun.basis() == Basis::Trigonometric;
    let num_points = if trig {
        (4 * fun.series().degree()).max(2)
    } else {
        2 * fun.len()
    };
    let values = sampler.sample(&reference_grid(num_points, trig))?;
    let vscale = max_abs(&values);
    let coeffs = if trig {
        trig_vals_to_coeffs(&values)?
    } else {
        vals_to_coeffs(&values)
    };
    let series = CoefficientSeries::new(fun.basis(), fun.interval(), coeffs)?;
    Ok(Fun::new(
        series,
        vscale,
        fun.diagnostics().cloned(),
        fun.is_happy(),
    ))
}

/// Samples one grid of `num_points` and returns the full, unchopped series
/// together with the chop decision the grid would have produced.
pub fn sample_grid<F: Fn(f64) -> Complex64>(
    sampler: &Sampler<F>,
    num_points: usize,
    trig: bool,
    tol: f64,
) -> Result<(Fun, ChopResult), Error> {
    if num_points < 2 || (trig && !num_points.is_multiple_of(2)) {
        return Err(Error::InvalidGrid(num_points));
    }
    let values = sampler.sample(&reference_grid(num_points, trig))?;
    let grid = analyse(&values, trig, tol)?;
    let basis = if trig {
        Basis::Trigonometric
    } else {
        Basis::Chebyshev
    };
    let series = CoefficientSeries::new(basis, sampler.interval(), grid.coeffs)?;
    let fun = Fun::new(
        series,
        grid.vscale,
        Some(grid.chop.clone()),
        grid.chop.happy,
    );
    Ok((fun, grid.chop))
}
