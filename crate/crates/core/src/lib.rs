//! Adaptive Chebyshev and Fourier approximation of functions on an interval.
//!
//! A function is sampled on nested Chebyshev (or periodic) grids, converted
//! to series coefficients, and the series is chopped where its coefficients
//! reach a plateau of rounding noise.
//!
//! ```
//! use funcut::{construct, ConstructConfig, Interval, Sampler};
//! use num_complex::Complex64;
//!
//! let f = Sampler::new(Interval::unit(), |x: f64| Complex64::new(x.exp(), 0.0));
//! let (fun, report) = construct(&f, &ConstructConfig::default()).unwrap();
//! assert!(fun.is_happy());
//! assert_eq!(report.grids_tried, vec![17, 33]);
//! assert!((fun.eval(0.5).re - 0.5f64.exp()).abs() < 1e-15);
//! ```

pub mod calculus;
pub mod chop;
pub mod coeff_file;
pub mod construct;
mod error;
pub mod expr;
pub mod series;
pub mod transform;

pub use calculus::{add, add_simplified, cumsum, multiply, negate, simplify, subtract};
pub use chop::{
    chop_sequence, compute_envelope, standard_chop, standard_chop_abs, ChopResult, Envelope,
};
pub use construct::{construct, double_length, sample_grid, sample_test, ConstructReport, Sampler};
pub use error::Error;
pub use series::{
    map_from_reference, map_to_reference, Basis, CoefficientSeries, ConstructConfig, Fun, Interval,
};
