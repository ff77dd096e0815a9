//! Grids, value/coefficient transforms and pointwise evaluation for both bases.
//!
//! Chebyshev values are always ordered by ascending abscissa, so entry `j` of an
//! `(n + 1)`-point sample vector belongs to `cos((n - j) pi / n)`.
//! Trigonometric values on `N` points belong to `t_j = pi (2j - N) / N`.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlannerScalar};

use crate::error::Error;

/// Grid family used by the constructor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    ChebyshevSecondKind,
    EquispacedPeriodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub kind: GridKind,
    pub num_points: usize,
}

impl GridSpec {
    pub fn new(kind: GridKind, num_points: usize) -> Result<Self, Error> {
        let ok = match kind {
            GridKind::ChebyshevSecondKind => num_points >= 2,
            GridKind::EquispacedPeriodic => num_points >= 2 && num_points.is_multiple_of(2),
        };
        if !ok {
            return Err(Error::InvalidGrid(num_points));
        }
        Ok(GridSpec { kind, num_points })
    }

    /// Abscissae in reference coordinates `[-1, 1]`.
    pub fn reference_points(&self) -> Vec<f64> {
        match self.kind {
            GridKind::ChebyshevSecondKind => cheb_points(self.num_points - 1),
            GridKind::EquispacedPeriodic => trig_reference_points(self.num_points),
        }
    }
}

thread_local! {
    static PLANNER: RefCell<FftPlannerScalar<f64>> = RefCell::new(FftPlannerScalar::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

fn fft_in_place(buf: &mut [Complex64], inverse: bool) {
    if buf.len() > 1 {
        plan(buf.len(), inverse).process(buf);
    }
}

fn all_real(v: &[Complex64]) -> bool {
    v.iter().all(|c| c.im == 0.0)
}

/// The `n + 1` Chebyshev points of the second kind in ascending order.
///
/// Computed as `sin(pi (2j - n) / (2n))`, so the grid is symmetric bitwise,
/// has exact endpoints and an exact zero for even `n`.
pub fn cheb_points(n: usize) -> Vec<f64> {
    assert!(n >= 1, "a Chebyshev grid needs at least two points");
    let mut x = vec![0.0; n + 1];
    let denom = (2 * n) as f64;
    for j in n.div_ceil(2)..=n {
        let k = (2 * j - n) as f64;
        let v = (PI * k / denom).sin();
        x[j] = v;
        x[n - j] = -v;
    }
    if n.is_multiple_of(2) {
        x[n / 2] = 0.0;
    }
    x[0] = -1.0;
    x[n] = 1.0;
    x
}

/// Chebyshev coefficients `a_0..a_n` of the interpolant through `values`
/// sampled at [`cheb_points`]`(n)`.
pub fn vals_to_coeffs(values: &[Complex64]) -> Vec<Complex64> {
    let np = values.len();
    if np <= 1 {
        return values.to_vec();
    }
    let real = all_real(values);
    let is_even = (0..np).all(|j| values[j] == values[np - 1 - j]);
    let is_odd = (0..np).all(|j| values[j] == -values[np - 1 - j]);

    // Even extension [v_{N-1}, ..., v_1, v_0, ..., v_{N-2}] of length 2(N-1).
    let m = 2 * (np - 1);
    let mut buf: Vec<Complex64> = Vec::with_capacity(m);
    buf.extend(values[1..].iter().rev());
    buf.extend(values[..np - 1].iter());
    fft_in_place(&mut buf, true);

    let scale = m as f64;
    let mut coeffs: Vec<Complex64> = buf[..np]
        .iter()
        .map(|c| {
            let c = c / scale;
            if real {
                Complex64::new(c.re, 0.0)
            } else {
                c
            }
        })
        .collect();
    for c in &mut coeffs[1..np - 1] {
        *c *= 2.0;
    }
    if is_even {
        coeffs
            .iter_mut()
            .skip(1)
            .step_by(2)
            .for_each(|c| *c = Complex64::new(0.0, 0.0));
    }
    if is_odd {
        coeffs
            .iter_mut()
            .step_by(2)
            .for_each(|c| *c = Complex64::new(0.0, 0.0));
    }
    coeffs
}

/// Values of `sum a_k T_k` at [`cheb_points`]`(n)` where `n + 1 = coeffs.len()`.
pub fn coeffs_to_vals(coeffs: &[Complex64]) -> Vec<Complex64> {
    let np = coeffs.len();
    if np <= 1 {
        return coeffs.to_vec();
    }
    let real = all_real(coeffs);
    let zero = Complex64::new(0.0, 0.0);
    let is_even = coeffs.iter().skip(1).step_by(2).all(|c| *c == zero);
    let is_odd = coeffs.iter().step_by(2).all(|c| *c == zero);

    let m = 2 * (np - 1);
    let mut buf: Vec<Complex64> = Vec::with_capacity(m);
    buf.push(coeffs[0]);
    buf.extend(coeffs[1..np - 1].iter().map(|c| c / 2.0));
    buf.push(coeffs[np - 1]);
    buf.extend(coeffs[1..np - 1].iter().rev().map(|c| c / 2.0));
    fft_in_place(&mut buf, false);

    let mut values: Vec<Complex64> = buf[..np]
        .iter()
        .rev()
        .map(|c| if real { Complex64::new(c.re, 0.0) } else { *c })
        .collect();
    if is_even {
        let flipped: Vec<Complex64> = values.iter().rev().copied().collect();
        for (v, f) in values.iter_mut().zip(flipped) {
            *v = (*v + f) / 2.0;
        }
    } else if is_odd {
        let flipped: Vec<Complex64> = values.iter().rev().copied().collect();
        for (v, f) in values.iter_mut().zip(flipped) {
            *v = (*v - f) / 2.0;
        }
    }
    values
}

/// Evaluates `sum a_k T_k(x)` by Clenshaw's backward recurrence.
pub fn clenshaw_eval(coeffs: &[Complex64], x: f64) -> Complex64 {
    let n = coeffs.len();
    match n {
        0 => return Complex64::new(0.0, 0.0),
        1 => return coeffs[0],
        _ => {}
    }
    let two_x = 2.0 * x;
    let mut b1 = Complex64::new(0.0, 0.0);
    let mut b2 = Complex64::new(0.0, 0.0);
    for c in coeffs[1..].iter().rev() {
        let b0 = c + b1 * two_x - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + b1 * x - b2
}

/// `N` equispaced points in `[-pi, pi)`.
pub fn trig_points(num_points: usize) -> Vec<f64> {
    assert!(
        num_points >= 2 && num_points.is_multiple_of(2),
        "periodic grids have an even, nonzero size"
    );
    let n = num_points as f64;
    (0..num_points)
        .map(|j| PI * (2.0 * j as f64 - n) / n)
        .collect()
}

/// [`trig_points`] divided by `pi`, i.e. `(2j - N) / N` in `[-1, 1)`.
pub fn trig_reference_points(num_points: usize) -> Vec<f64> {
    assert!(
        num_points >= 2 && num_points.is_multiple_of(2),
        "periodic grids have an even, nonzero size"
    );
    let n = num_points as f64;
    (0..num_points).map(|j| (2.0 * j as f64 - n) / n).collect()
}

/// Coefficients `c_{-N/2} .. c_{N/2}` of the trigonometric interpolant through
/// `N` values on [`trig_points`]. The Nyquist mode is split evenly between
/// `c_{-N/2}` and `c_{N/2}`, so real data gives a conjugate-symmetric list.
pub fn trig_vals_to_coeffs(values: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    let n = values.len();
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(n));
    }
    let half = n / 2;
    let real = all_real(values);
    let mut buf = values.to_vec();
    fft_in_place(&mut buf, false);
    let scale = n as f64;
    // t_j = -pi + 2 pi j / N contributes a factor (-1)^k to mode k.
    let mode = |k: isize| -> Complex64 {
        let c = buf[k.rem_euclid(n as isize) as usize] / scale;
        if k.rem_euclid(2) == 1 {
            -c
        } else {
            c
        }
    };
    let mut out = vec![Complex64::new(0.0, 0.0); n + 1];
    for k in -(half as isize) + 1..half as isize {
        out[(k + half as isize) as usize] = mode(k);
    }
    let nyquist = mode(half as isize) / 2.0;
    out[0] = nyquist;
    out[n] = nyquist;
    if real {
        out[half].im = 0.0;
        out[0].im = 0.0;
        out[n].im = 0.0;
        for k in 1..half {
            out[half - k] = out[half + k].conj();
        }
    }
    Ok(out)
}

/// Values at the `2m` points of [`trig_points`] for a `(2m + 1)`-term series.
pub fn trig_coeffs_to_vals(coeffs: &[Complex64]) -> Result<Vec<Complex64>, Error> {
    let len = coeffs.len();
    if len < 3 || len.is_multiple_of(2) {
        return Err(Error::EvenTrigLength(len));
    }
    let m = (len - 1) / 2;
    let n = 2 * m;
    let real = is_conjugate_symmetric(coeffs);
    let mut buf = vec![Complex64::new(0.0, 0.0); n];
    for (i, c) in coeffs.iter().enumerate() {
        let k = i as isize - m as isize;
        let signed = if k.rem_euclid(2) == 1 { -c } else { *c };
        buf[k.rem_euclid(n as isize) as usize] += signed;
    }
    fft_in_place(&mut buf, true);
    if real {
        buf.iter_mut().for_each(|v| v.im = 0.0);
    }
    Ok(buf)
}

fn is_conjugate_symmetric(coeffs: &[Complex64]) -> bool {
    let len = coeffs.len();
    (0..len).all(|i| coeffs[i] == coeffs[len - 1 - i].conj())
}

/// Evaluates `sum c_k exp(i k t)` for a series stored as `c_{-m} .. c_m`.
pub fn trig_eval(coeffs: &[Complex64], t: f64) -> Complex64 {
    let len = coeffs.len();
    let m = (len - 1) / 2;
    if is_conjugate_symmetric(coeffs) {
        let mut acc = 0.0;
        for k in (1..=m).rev() {
            acc += (coeffs[m + k] * Complex64::cis(k as f64 * t)).re;
        }
        return Complex64::new(coeffs[m].re + 2.0 * acc, 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, c) in coeffs.iter().enumerate().rev() {
        let k = i as f64 - m as f64;
        acc += c * Complex64::cis(k * t);
    }
    acc
}

/// Chopping profile of a `(2m + 1)`-term Fourier series:
/// `|c_0|, (|c_1| + |c_-1|)/2` twice, `(|c_2| + |c_-2|)/2` twice, and so on.
pub fn fold_trig_for_chop(coeffs: &[Complex64]) -> Result<Vec<f64>, Error> {
    let len = coeffs.len();
    if len.is_multiple_of(2) {
        return Err(Error::EvenTrigLength(len));
    }
    let m = (len - 1) / 2;
    let mut out = Vec::with_capacity(len);
    out.push(coeffs[m].norm());
    for k in 1..=m {
        let avg = (coeffs[m + k].norm() + coeffs[m - k].norm()) / 2.0;
        out.push(avg);
        out.push(avg);
    }
    Ok(out)
}

/// Number of wavenumbers kept when the folded profile is chopped to `cutoff`:
/// any wavenumber with at least one retained copy survives.
pub fn trig_degree_for_cutoff(cutoff: usize) -> usize {
    cutoff / 2
}

/// Direct `O(n^2)` transforms, kept as an independent reference for the fast path.
pub mod reference {
    use super::*;

    fn cos_multiple(jk: usize, n: usize) -> f64 {
        // cos(jk pi / n), reduced modulo 2n first
        let r = jk % (2 * n);
        (PI * r as f64 / n as f64).cos()
    }

    pub fn vals_to_coeffs(values: &[Complex64]) -> Vec<Complex64> {
        let np = values.len();
        if np <= 1 {
            return values.to_vec();
        }
        let n = np - 1;
        (0..np)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, v) in values.iter().enumerate() {
                    // ascending point j is cos((n - j) pi / n)
                    let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                    acc += v * (w * cos_multiple(k * (n - j), n));
                }
                let w = if k == 0 || k == n { 1.0 } else { 2.0 };
                acc * (w / n as f64)
            })
            .collect()
    }

    pub fn coeffs_to_vals(coeffs: &[Complex64]) -> Vec<Complex64> {
        let np = coeffs.len();
        if np <= 1 {
            return coeffs.to_vec();
        }
        let n = np - 1;
        (0..np)
            .map(|j| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * cos_multiple(k * (n - j), n))
                    .sum()
            })
            .collect()
    }

    pub fn trig_vals_to_coeffs(values: &[Complex64]) -> Vec<Complex64> {
        let n = values.len();
        let half = (n / 2) as isize;
        let t = trig_points(n);
        let mut out: Vec<Complex64> = (-half..=half)
            .map(|k| {
                values
                    .iter()
                    .zip(&t)
                    .map(|(v, &tj)| v * Complex64::cis(-(k as f64) * tj))
                    .sum::<Complex64>()
                    / n as f64
            })
            .collect();
        out[0] /= 2.0;
        out[n] /= 2.0;
        out
    }
}
