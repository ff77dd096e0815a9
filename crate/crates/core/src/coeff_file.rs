//! Plain-text coefficient files.
//!
//! UTF-8 CSV with a header of `index,re,im` (Chebyshev, index = degree from 0)
//! or `wavenumber,re,im` (Fourier, wavenumbers `-m..=m`). Numbers are written
//! in the shortest form that parses back to the same `f64`.

use std::fmt::Write as _;

use num_complex::Complex64;
use thiserror::Error;

use crate::series::Basis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("missing header; expected `index,re,im` or `wavenumber,re,im`")]
    MissingHeader,
    #[error("line {line}: {message}")]
    BadRow { line: usize, message: String },
    #[error("file holds no coefficients")]
    Empty,
}

/// Shortest round-trip decimal for `v`.
pub fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

pub fn write_coeffs(basis: Basis, coeffs: &[Complex64]) -> String {
    let mut out = String::new();
    let m = (coeffs.len() as isize - 1) / 2;
    match basis {
        Basis::Chebyshev => out.push_str("index,re,im\n"),
        Basis::Trigonometric => out.push_str("wavenumber,re,im\n"),
    }
    for (i, c) in coeffs.iter().enumerate() {
        let label = match basis {
            Basis::Chebyshev => i as isize,
            Basis::Trigonometric => i as isize - m,
        };
        let _ = writeln!(out, "{label},{},{}", format_f64(c.re), format_f64(c.im));
    }
    out
}

pub fn read_coeffs(text: &str) -> Result<(Basis, Vec<Complex64>), FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let header: Vec<&str> = header.split(',').map(str::trim).collect();
    let basis = match header.as_slice() {
        ["index", "re", "im"] => Basis::Chebyshev,
        ["wavenumber", "re", "im"] => Basis::Trigonometric,
        _ => return Err(FormatError::MissingHeader),
    };
    let mut rows: Vec<(isize, Complex64)> = Vec::new();
    for (line, row) in lines {
        let bad = |message: String| FormatError::BadRow { line, message };
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(bad(format!("expected 3 fields, found {}", fields.len())));
        }
        let label: isize = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad index {:?}", fields[0])))?;
        let re: f64 = fields[1]
            .parse()
            .map_err(|_| bad(format!("bad real part {:?}", fields[1])))?;
        let im: f64 = fields[2]
            .parse()
            .map_err(|_| bad(format!("bad imaginary part {:?}", fields[2])))?;
        if !re.is_finite() || !im.is_finite() {
            return Err(bad("coefficients must be finite".into()));
        }
        rows.push((label, Complex64::new(re, im)));
    }
    if rows.is_empty() {
        return Err(FormatError::Empty);
    }
    let first = match basis {
        Basis::Chebyshev => 0,
        Basis::Trigonometric => {
            if rows.len().is_multiple_of(2) {
                return Err(FormatError::BadRow {
                    line: 1,
                    message: "a Fourier series needs an odd number of rows".into(),
                });
            }
            -((rows.len() as isize - 1) / 2)
        }
    };
    for (k, (label, _)) in rows.iter().enumerate() {
        if *label != first + k as isize {
            return Err(FormatError::BadRow {
                line: k + 2,
                message: format!("expected index {}, found {label}", first + k as isize),
            });
        }
    }
    Ok((basis, rows.into_iter().map(|(_, c)| c).collect()))
}
