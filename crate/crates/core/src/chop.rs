//! Plateau-based chopping of coefficient sequences.
//!
//! Indices in this module are 1-based: `cutoff` is the number of coefficients to keep and
//! `plateau_point` is the last 1-based index before the detected plateau.
//! For a Chebyshev series, 1-based entry `k` is the degree `k - 1` coefficient.

use num_complex::Complex64;

/// Shortest sequence the chopper will consider; anything shorter is reported
/// unhappy without inspection.
pub const MIN_CHOP_LENGTH: usize = 17;

/// Normalized upper envelope of a coefficient sequence.
///
/// Nonnegative and nonincreasing with a leading value of exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    values: Vec<f64>,
}

impl Envelope {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Envelope value at 1-based index `j`.
    fn at(&self, j: usize) -> f64 {
        self.values[j - 1]
    }
}

/// Outcome of [`standard_chop`].
#[derive(Debug, Clone, PartialEq)]
pub struct ChopResult {
    /// Number of entries to keep, in `[1, n]`.
    pub cutoff: usize,
    /// Last 1-based index before the plateau, when a plateau was found.
    pub plateau_point: Option<usize>,
    /// `cutoff < n`.
    pub happy: bool,
    /// Envelope the decision was based on; `None` for an all-zero input.
    pub envelope: Option<Envelope>,
    /// Set when `tol >= 1` short-circuited the decision to `cutoff = 1`.
    pub degenerate_tol: bool,
}

/// Running suffix maximum of `|coeffs|`, normalized by its first entry.
///
/// Returns `None` when the sequence is identically zero.
pub fn compute_envelope(coeffs: &[Complex64]) -> Option<Envelope> {
    envelope_of_magnitudes(coeffs.iter().map(|c| magnitude(*c)).collect())
}

fn magnitude(c: Complex64) -> f64 {
    if c.im == 0.0 {
        c.re.abs()
    } else {
        c.norm()
    }
}

fn envelope_of_magnitudes(mut m: Vec<f64>) -> Option<Envelope> {
    if m.is_empty() {
        return None;
    }
    for j in (0..m.len() - 1).rev() {
        m[j] = m[j].max(m[j + 1]);
    }
    let top = m[0];
    if top == 0.0 {
        return None;
    }
    m.iter_mut().for_each(|v| *v /= top);
    Some(Envelope { values: m })
}

/// Decides where to chop `coeffs` at relative tolerance `tol`.
pub fn standard_chop(coeffs: &[Complex64], tol: f64) -> ChopResult {
    standard_chop_magnitudes(coeffs.iter().map(|c| magnitude(*c)).collect(), tol)
}

/// [`standard_chop`] on a sequence of nonnegative magnitudes, such as the
/// folded profile of a Fourier series.
pub fn standard_chop_abs(magnitudes: &[f64], tol: f64) -> ChopResult {
    standard_chop_magnitudes(magnitudes.iter().map(|m| m.abs()).collect(), tol)
}

fn standard_chop_magnitudes(magnitudes: Vec<f64>, tol: f64) -> ChopResult {
    let n = magnitudes.len();
    let envelope = envelope_of_magnitudes(magnitudes);

    let unhappy = |envelope: Option<Envelope>| ChopResult {
        cutoff: n,
        plateau_point: None,
        happy: false,
        envelope,
        degenerate_tol: false,
    };

    if tol >= 1.0 {
        return ChopResult {
            cutoff: 1,
            plateau_point: None,
            happy: n > 1,
            envelope,
            degenerate_tol: true,
        };
    }
    if n < MIN_CHOP_LENGTH {
        return unhappy(envelope);
    }
    let Some(env) = envelope else {
        return ChopResult {
            cutoff: 1,
            plateau_point: None,
            happy: n > 1,
            envelope: None,
            degenerate_tol: false,
        };
    };

    // Step 2: first j whose envelope is low enough and flat enough over
    // [j, round(1.25 j + 5)].
    let log_tol = tol.ln();
    let mut found = None;
    for j in 2..=n {
        let j2 = plateau_end(j);
        if j2 > n {
            return unhappy(Some(env));
        }
        let e1 = env.at(j);
        let e2 = env.at(j2);
        let r = 3.0 * (1.0 - e1.ln() / log_tol);
        if e1 == 0.0 || e2 / e1 > r {
            found = Some((j - 1, j2));
            break;
        }
    }
    let Some((plateau_point, mut j2)) = found else {
        return unhappy(Some(env));
    };

    // Step 3: lowest point relative to a line tilted down by tol^(1/3)
    // over the stretch ending at j2.
    let cutoff = if env.at(plateau_point) == 0.0 {
        plateau_point
    } else {
        let floor = tol.powf(7.0 / 6.0);
        let j3 = env.values.iter().filter(|&&v| v >= floor).count();
        let mut tail = None;
        if j3 < j2 {
            j2 = j3 + 1;
            tail = Some(floor);
        }
        let tilt = linspace(0.0, (-1.0 / 3.0) * tol.log10(), j2);
        let mut best = f64::INFINITY;
        let mut d = 1;
        for i in 1..=j2 {
            let e = match tail {
                Some(v) if i == j2 => v,
                _ => env.at(i),
            };
            let cc = e.log10() + tilt[i - 1];
            // Strict comparison keeps the first minimum on ties.
            if cc < best {
                best = cc;
                d = i;
            }
        }
        d.saturating_sub(1).max(1)
    };

    ChopResult {
        cutoff,
        plateau_point: Some(plateau_point),
        happy: cutoff < n,
        envelope: Some(env),
        degenerate_tol: false,
    }
}

/// `round(1.25 j + 5)`, rounding halves away from zero.
fn plateau_end(j: usize) -> usize {
    (1.25 * j as f64 + 5.0).round() as usize
}

/// `count` evenly spaced points from `lo` to `hi`, computed as
/// `lo + (i * (hi - lo)) / (count - 1)` with the last point pinned to `hi`.
fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![hi];
    }
    let steps = (count - 1) as f64;
    let mut out: Vec<f64> = (0..count)
        .map(|i| lo + (i as f64 * (hi - lo)) / steps)
        .collect();
    out[count - 1] = hi;
    out
}

/// Keeps the first `cutoff` coefficients when the chop is happy, otherwise
/// returns the input unchanged.
pub fn chop_sequence(coeffs: &[Complex64], tol: f64) -> (Vec<Complex64>, ChopResult) {
    let result = standard_chop(coeffs, tol);
    let kept = if result.happy {
        coeffs[..result.cutoff].to_vec()
    } else {
        coeffs.to_vec()
    };
    (kept, result)
}
