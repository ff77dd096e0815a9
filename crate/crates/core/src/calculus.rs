//! Operations carried out directly on coefficients: negation, sums, products,
//! indefinite integrals and tail trimming.

use num_complex::Complex64;

use crate::chop::{standard_chop, standard_chop_abs, ChopResult, MIN_CHOP_LENGTH};
use crate::error::Error;
use crate::series::{Basis, CoefficientSeries, Fun};
use crate::transform::{
    coeffs_to_vals, fold_trig_for_chop, trig_coeffs_to_vals, trig_degree_for_cutoff,
};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest magnitude of the series on its own grid.
pub(crate) fn vscale_from_coeffs(series: &CoefficientSeries) -> f64 {
    let c = series.coeffs();
    let values = match series.basis() {
        Basis::Chebyshev => coeffs_to_vals(c),
        Basis::Trigonometric if c.len() >= 3 => trig_coeffs_to_vals(c).expect("odd-length series"),
        Basis::Trigonometric => c.to_vec(),
    };
    values.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn derived(series: CoefficientSeries) -> Fun {
    let vscale = vscale_from_coeffs(&series);
    Fun::new(series, vscale, None, true)
}

fn check_compatible(f: &Fun, g: &Fun) -> Result<(), Error> {
    if f.basis() != g.basis() || f.interval() != g.interval() {
        return Err(Error::Mismatch);
    }
    Ok(())
}

/// `-f`, by negating every coefficient.
pub fn negate(f: &Fun) -> Fun {
    let coeffs = f.coeffs().iter().map(|c| -c).collect();
    Fun::new(
        f.series().with_coeffs(coeffs),
        f.vscale(),
        f.diagnostics().cloned(),
        f.is_happy(),
    )
}

/// Pads a coefficient list to `len` entries. Trigonometric lists grow
/// symmetrically so that wavenumbers stay aligned.
fn pad(coeffs: &[Complex64], basis: Basis, len: usize) -> Vec<Complex64> {
    let n = coeffs.len();
    debug_assert!(len >= n);
    match basis {
        Basis::Chebyshev => {
            let mut out = coeffs.to_vec();
            out.resize(len, ZERO);
            out
        }
        Basis::Trigonometric => {
            let side = (len - n) / 2;
            let mut out = vec![ZERO; len];
            out[side..side + n].copy_from_slice(coeffs);
            out
        }
    }
}

/// `f + g` by zero-padding the shorter series. No trimming is applied.
pub fn add(f: &Fun, g: &Fun) -> Result<Fun, Error> {
    check_compatible(f, g)?;
    let len = f.len().max(g.len());
    let a = pad(f.coeffs(), f.basis(), len);
    let b = pad(g.coeffs(), g.basis(), len);
    let sum = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    Ok(derived(f.series().with_coeffs(sum)))
}

/// [`add`] followed by [`simplify`].
pub fn add_simplified(f: &Fun, g: &Fun, tol: f64) -> Result<Fun, Error> {
    Ok(simplify(&add(f, g)?, tol))
}

/// `f - g`.
pub fn subtract(f: &Fun, g: &Fun) -> Result<Fun, Error> {
    add(f, &negate(g))
}

/// `f * g` in coefficient space, then [`simplify`] at `tol`.
///
/// Chebyshev products use `T_m T_n = (T_{m+n} + T_{|m-n|}) / 2`; Fourier
/// products convolve wavenumbers.
pub fn multiply(f: &Fun, g: &Fun, tol: f64) -> Result<Fun, Error> {
    check_compatible(f, g)?;
    let a = f.coeffs();
    let b = g.coeffs();
    let product = match f.basis() {
        Basis::Chebyshev => {
            let mut out = vec![ZERO; a.len() + b.len() - 1];
            for (m, x) in a.iter().enumerate() {
                if *x == ZERO {
                    continue;
                }
                for (n, y) in b.iter().enumerate() {
                    let half = x * y * 0.5;
                    out[m + n] += half;
                    out[m.abs_diff(n)] += half;
                }
            }
            out
        }
        Basis::Trigonometric => {
            let (ma, mb) = ((a.len() - 1) / 2, (b.len() - 1) / 2);
            let mut out = vec![ZERO; a.len() + b.len() - 1];
            // index i + j in the output carries wavenumber (i - ma) + (j - mb)
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            debug_assert_eq!((out.len() - 1) / 2, ma + mb);
            out
        }
    };
    Ok(simplify(&derived(f.series().with_coeffs(product)), tol))
}

/// Indefinite integral `F` with `F(a) = 0`, followed by [`simplify`] at `tol`.
///
/// With `c_n = c_{n+1} = 0` appended, the antiderivative coefficients on
/// `[-1, 1]` are `b_1 = c_0 - c_2 / 2`, `b_k = (c_{k-1} - c_{k+1}) / (2k)` for
/// `k >= 2`, and `b_0 = sum_{k>=1} (-1)^(k+1) b_k`. Everything is then scaled
/// by half the interval width.
pub fn cumsum(f: &Fun, tol: f64) -> Result<Fun, Error> {
    if f.basis() != Basis::Chebyshev {
        return Err(Error::NotChebyshev);
    }
    let n = f.len();
    let mut c = f.coeffs().to_vec();
    c.resize(n + 2, ZERO);
    let mut b = vec![ZERO; n + 1];
    b[1] = c[0] - c[2] / 2.0;
    for k in 2..=n {
        b[k] = (c[k - 1] - c[k + 1]) / (2.0 * k as f64);
    }
    let mut b0 = ZERO;
    for (k, bk) in b.iter().enumerate().skip(1) {
        if k % 2 == 1 {
            b0 += bk;
        } else {
            b0 -= bk;
        }
    }
    b[0] = b0;
    let half_width = f.interval().width() / 2.0;
    if half_width != 1.0 {
        b.iter_mut().for_each(|x| *x *= half_width);
    }
    Ok(simplify(&derived(f.series().with_coeffs(b)), tol))
}

/// Length the series is zero-padded to before re-chopping.
pub fn prolonged_length(n: usize) -> usize {
    MIN_CHOP_LENGTH.max((1.25 * n as f64).round() as usize)
}

/// Trims a negligible tail: zero-pads to [`prolonged_length`], chops at `tol`
/// and keeps the retained prefix. An unhappy chop leaves `f` unchanged.
pub fn simplify(f: &Fun, tol: f64) -> Fun {
    let n = f.len();
    let target = prolonged_length(n);
    let (chop, kept): (ChopResult, Option<Vec<Complex64>>) = match f.basis() {
        Basis::Chebyshev => {
            let padded = pad(f.coeffs(), Basis::Chebyshev, target);
            let chop = standard_chop(&padded, tol);
            let kept = chop.happy.then(|| padded[..chop.cutoff.min(n)].to_vec());
            (chop, kept)
        }
        Basis::Trigonometric => {
            let mut folded = fold_trig_for_chop(f.coeffs()).expect("odd-length series");
            folded.resize(target, 0.0);
            let chop = standard_chop_abs(&folded, tol);
            let kept = chop.happy.then(|| {
                let m = (n - 1) / 2;
                let keep = trig_degree_for_cutoff(chop.cutoff).min(m);
                f.coeffs()[m - keep..=m + keep].to_vec()
            });
            (chop, kept)
        }
    };
    match kept {
        Some(coeffs) => Fun::new(
            f.series().with_coeffs(coeffs),
            f.vscale(),
            Some(chop),
            f.is_happy(),
        ),
        None => f.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Interval;

    fn cheb(v: &[f64]) -> Fun {
        Fun::from_series(CoefficientSeries::from_real(Interval::unit(), v).unwrap())
    }

    fn re(f: &Fun) -> Vec<f64> {
        f.coeffs().iter().map(|c| c.re).collect()
    }

    #[test]
    fn negation_is_an_involution() {
        let f = cheb(&[1.0, -2.0, 0.5]);
        let g = negate(&f);
        assert_eq!(re(&g), vec![-1.0, 2.0, -0.5]);
        assert_eq!(negate(&g).coeffs(), f.coeffs());
        let z = cheb(&[0.0]);
        assert_eq!(negate(&z).len(), 1);
    }

    #[test]
    fn addition() {
        let sq = cheb(&[0.5, 0.0, 0.5]);
        let x = cheb(&[0.0, 1.0]);
        assert_eq!(re(&add(&sq, &x).unwrap()), vec![0.5, 1.0, 0.5]);
        assert_eq!(
            add(&sq, &x).unwrap().coeffs(),
            add(&x, &sq).unwrap().coeffs()
        );
        let zero = cheb(&[0.0]);
        assert_eq!(add(&sq, &zero).unwrap().coeffs(), sq.coeffs());
        let cancel = add(&sq, &negate(&sq)).unwrap();
        assert_eq!(re(&cancel), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn mismatched_operands() {
        let f = cheb(&[1.0]);
        let g = Fun::from_series(
            CoefficientSeries::from_real(Interval::new(0.0, 1.0).unwrap(), &[1.0]).unwrap(),
        );
        assert_eq!(add(&f, &g), Err(Error::Mismatch));
        assert_eq!(multiply(&f, &g, f64::EPSILON), Err(Error::Mismatch));
    }

    #[test]
    fn product_linearization() {
        let x = cheb(&[0.0, 1.0]);
        assert_eq!(
            re(&multiply(&x, &x, f64::EPSILON).unwrap()),
            vec![0.5, 0.0, 0.5]
        );
        let one = cheb(&[1.0]);
        let f = cheb(&[0.25, 0.5, -0.125]);
        assert_eq!(
            multiply(&f, &one, f64::EPSILON).unwrap().coeffs(),
            f.coeffs()
        );
    }

    #[test]
    fn trig_product_convolves() {
        let iv = Interval::unit();
        let c = |v: &[f64]| {
            Fun::from_series(
                CoefficientSeries::trigonometric(
                    iv,
                    v.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
                )
                .unwrap(),
            )
        };
        // cos(pi x)^2 = 1/2 + cos(2 pi x)/2
        let cosine = c(&[0.5, 0.0, 0.5]);
        let sq = multiply(&cosine, &cosine, f64::EPSILON).unwrap();
        assert_eq!(re(&sq), vec![0.25, 0.0, 0.5, 0.0, 0.25]);
    }

    #[test]
    fn integral_of_one() {
        let f = cumsum(&cheb(&[1.0]), f64::EPSILON).unwrap();
        assert_eq!(re(&f), vec![1.0, 1.0]);
        let g = Fun::from_series(
            CoefficientSeries::from_real(Interval::new(0.0, 4.0).unwrap(), &[1.0]).unwrap(),
        );
        // F(x) = x on [0, 4], i.e. 2 + 2t
        assert_eq!(re(&cumsum(&g, f64::EPSILON).unwrap()), vec![2.0, 2.0]);
    }

    #[test]
    fn integral_rejects_trig() {
        let f = Fun::from_series(
            CoefficientSeries::trigonometric(Interval::unit(), vec![Complex64::new(1.0, 0.0)])
                .unwrap(),
        );
        assert_eq!(cumsum(&f, f64::EPSILON), Err(Error::NotChebyshev));
    }

    #[test]
    fn simplify_zero_and_converged() {
        let z = simplify(&cheb(&[0.0; 5]), f64::EPSILON);
        assert_eq!(z.len(), 1);
        let f = cheb(&[1.0, 0.5, 0.25, 0.125]);
        assert_eq!(simplify(&f, f64::EPSILON).len(), 4);
        assert_eq!(prolonged_length(4), 17);
        assert_eq!(prolonged_length(76), 95);
    }
}
