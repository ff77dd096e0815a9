//! Synthetic coefficient sequences: geometric decay down to a noise floor.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sample {
    pub coeffs: Vec<f64>,
    pub tol: f64,
}

/// `count` sequences `10^(-k/s) + 10^(-p) * noise` with `s` in `[2, 100]`,
/// `p` in {8, 10, 13, 16} and lengths `17..=4097`. Tolerances cycle through
/// machine epsilon, 1e-10 and 1e-6.
pub fn corpus(count: usize, seed: u64) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let floors = [8, 10, 13, 16];
    let tols = [f64::EPSILON, 1e-10, 1e-6];
    (0..count)
        .map(|i| {
            let s: f64 = rng.gen_range(2.0..=100.0);
            let p = floors[rng.gen_range(0..floors.len())];
            // log-uniform lengths so short and long sequences both appear
            let n = (17.0 * (4097.0f64 / 17.0).powf(rng.gen::<f64>())).round() as usize;
            let floor = 10f64.powi(-p);
            let coeffs = (0..n)
                .map(|k| {
                    let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
                    sign * 10f64.powf(-(k as f64) / s) + floor * rng.gen_range(-1.0..1.0)
                })
                .collect();
            Sample {
                coeffs,
                tol: tols[i % tols.len()],
            }
        })
        .collect()
}
