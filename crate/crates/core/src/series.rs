//! Shared value types: intervals, coefficient series, funs and construction settings.

use num_complex::Complex64;

use crate::chop::ChopResult;
use crate::error::Error;

/// Closed, finite interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, Error> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidInterval { a, b });
        }
        Ok(Interval { a, b })
    }

    /// The reference interval `[-1, 1]`.
    pub const fn unit() -> Self {
        Interval { a: -1.0, b: 1.0 }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Affine map `[a, b] -> [-1, 1]`.
    pub fn to_reference(&self, x: f64) -> f64 {
        map_to_reference(x, *self)
    }

    /// Affine map `[-1, 1] -> [a, b]`.
    pub fn from_reference(&self, t: f64) -> f64 {
        map_from_reference(t, *self)
    }
}

impl Default for Interval {
    fn default() -> Self {
        Interval::unit()
    }
}

/// Maps `x` in `[a, b]` to `[-1, 1]`. Endpoints map exactly to `-1` and `1`.
pub fn map_to_reference(x: f64, interval: Interval) -> f64 {
    let (a, b) = (interval.a, interval.b);
    if x == a {
        return -1.0;
    }
    if x == b {
        return 1.0;
    }
    if a == -b {
        return x / b;
    }
    (2.0 * x - a - b) / (b - a)
}

/// Maps `t` in `[-1, 1]` to `[a, b]`. Endpoints map exactly to `a` and `b`.
pub fn map_from_reference(t: f64, interval: Interval) -> f64 {
    let (a, b) = (interval.a, interval.b);
    if t == -1.0 {
        return a;
    }
    if t == 1.0 {
        return b;
    }
    // Symmetric intervals are a pure scaling, so [-1, 1] samples the grid
    // points themselves.
    if a == -b {
        return b * t;
    }
    0.5 * ((1.0 - t) * a + (1.0 + t) * b)
}

/// Expansion basis of a coefficient series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// `sum a_k T_k(t)`, entry `k` holds the degree-`k` coefficient.
    Chebyshev,
    /// `sum c_k exp(i k pi t)`, stored in wavenumber order `c_{-m} .. c_m`.
    Trigonometric,
}

/// Ordered coefficients of a Chebyshev or trigonometric expansion on an interval.
///
/// Index conventions: for [`Basis::Chebyshev`] the stored (0-based) entry `i`
/// is the degree-`i` coefficient, which the chopping rule calls entry `i + 1`.
/// For [`Basis::Trigonometric`] the length is `2m + 1` and entry `i` holds
/// wavenumber `i - m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSeries {
    basis: Basis,
    interval: Interval,
    coeffs: Vec<Complex64>,
}

impl CoefficientSeries {
    pub fn new(basis: Basis, interval: Interval, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if basis == Basis::Trigonometric && coeffs.len().is_multiple_of(2) {
            return Err(Error::EvenTrigLength(coeffs.len()));
        }
        Ok(CoefficientSeries {
            basis,
            interval,
            coeffs,
        })
    }

    pub fn chebyshev(interval: Interval, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        Self::new(Basis::Chebyshev, interval, coeffs)
    }

    pub fn trigonometric(interval: Interval, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        Self::new(Basis::Trigonometric, interval, coeffs)
    }

    /// Chebyshev series from real coefficients.
    pub fn from_real(interval: Interval, coeffs: &[f64]) -> Result<Self, Error> {
        Self::chebyshev(
            interval,
            coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        )
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// Always false; a series holds at least one coefficient.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest wavenumber `m` of a trigonometric series, or the degree of a
    /// Chebyshev series.
    pub fn degree(&self) -> usize {
        match self.basis {
            Basis::Chebyshev => self.coeffs.len() - 1,
            Basis::Trigonometric => (self.coeffs.len() - 1) / 2,
        }
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Evaluates the series at `x` in the series interval.
    pub fn eval(&self, x: f64) -> Complex64 {
        let t = self.interval.to_reference(x);
        match self.basis {
            Basis::Chebyshev => crate::transform::clenshaw_eval(&self.coeffs, t),
            Basis::Trigonometric => {
                crate::transform::trig_eval(&self.coeffs, std::f64::consts::PI * t)
            }
        }
    }

    pub(crate) fn with_coeffs(&self, coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        CoefficientSeries {
            basis: self.basis,
            interval: self.interval,
            coeffs,
        }
    }
}

/// A single smooth piece: a chopped series plus the facts of its construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Fun {
    pub(crate) series: CoefficientSeries,
    pub(crate) vscale: f64,
    pub(crate) diagnostics: Option<ChopResult>,
    pub(crate) happy: bool,
}

impl Fun {
    /// Wraps an existing series; the vertical scale is the largest magnitude
    /// of the series on its own grid.
    pub fn from_series(series: CoefficientSeries) -> Self {
        let vscale = crate::calculus::vscale_from_coeffs(&series);
        Fun {
            series,
            vscale,
            diagnostics: None,
            happy: true,
        }
    }

    pub(crate) fn new(
        series: CoefficientSeries,
        vscale: f64,
        diagnostics: Option<ChopResult>,
        happy: bool,
    ) -> Self {
        Fun {
            series,
            vscale,
            diagnostics,
            happy,
        }
    }

    pub fn series(&self) -> &CoefficientSeries {
        &self.series
    }

    pub fn coeffs(&self) -> &[Complex64] {
        self.series.coeffs()
    }

    pub fn basis(&self) -> Basis {
        self.series.basis()
    }

    pub fn interval(&self) -> Interval {
        self.series.interval()
    }

    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Largest sampled magnitude seen on the accepting grid.
    pub fn vscale(&self) -> f64 {
        self.vscale
    }

    /// Chop decision on the accepting grid, if the fun came out of a construction.
    pub fn diagnostics(&self) -> Option<&ChopResult> {
        self.diagnostics.as_ref()
    }

    pub fn is_happy(&self) -> bool {
        self.happy
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        self.series.eval(x)
    }
}

/// Settings for adaptive construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructConfig {
    /// Relative tolerance in `(0, 1)`.
    pub tol: f64,
    /// Multiplier on `tol`, e.g. `vscale_global / vscale_local` for a piece
    /// of a larger function.
    pub tol_scale: f64,
    pub min_samples: usize,
    pub max_samples: usize,
    pub trig: bool,
    pub doublelength: bool,
    /// Re-evaluate every point on each refinement instead of reusing the
    /// coarse-grid values nested in the finer grid.
    pub resample: bool,
}

/// Machine epsilon, the default tolerance.
pub const DEFAULT_TOL: f64 = f64::EPSILON;
pub const DEFAULT_MIN_SAMPLES: usize = 17;
pub const DEFAULT_MAX_SAMPLES: usize = (1 << 16) + 1;

impl Default for ConstructConfig {
    fn default() -> Self {
        ConstructConfig {
            tol: DEFAULT_TOL,
            tol_scale: 1.0,
            min_samples: DEFAULT_MIN_SAMPLES,
            max_samples: DEFAULT_MAX_SAMPLES,
            trig: false,
            doublelength: false,
            resample: false,
        }
    }
}

impl ConstructConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_tol_scale(mut self, scale: f64) -> Self {
        self.tol_scale = scale;
        self
    }

    pub fn with_max_samples(mut self, max_samples: usize) -> Self {
        self.max_samples = max_samples;
        self
    }

    pub fn with_trig(mut self, trig: bool) -> Self {
        self.trig = trig;
        self
    }

    pub fn with_doublelength(mut self, doublelength: bool) -> Self {
        self.doublelength = doublelength;
        self
    }

    pub fn with_resample(mut self, resample: bool) -> Self {
        self.resample = resample;
        self
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(Error::InvalidConfig(format!(
                "tol must lie in (0, 1), got {:?}",
                self.tol
            )));
        }
        if !(self.tol_scale > 0.0 && self.tol_scale.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tol_scale must be positive and finite, got {:?}",
                self.tol_scale
            )));
        }
        if self.min_samples < DEFAULT_MIN_SAMPLES {
            return Err(Error::InvalidConfig(format!(
                "min_samples must be at least {}, got {}",
                DEFAULT_MIN_SAMPLES, self.min_samples
            )));
        }
        if self.max_samples < self.min_samples {
            return Err(Error::InvalidConfig(format!(
                "max_samples ({}) is below min_samples ({})",
                self.max_samples, self.min_samples
            )));
        }
        Ok(())
    }

    /// Tolerance handed to the chopper: `min(1 - ulp, tol * tol_scale)`.
    pub fn effective_tol(&self) -> f64 {
        (self.tol * self.tol_scale).min(1.0 - f64::EPSILON / 2.0)
    }
}
