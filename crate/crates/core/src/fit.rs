//! Least-squares power-law fitting in log-log coordinates.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Result of a log-log linear regression `log y ≈ slope·log x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    /// Maximum absolute residual in log space.
    pub max_residual: f64,
}

/// Fit `y ≈ C·x^slope` through positive samples by ordinary least squares
/// on `(log x, log y)`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Result<PowerLawFit> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return Err(Error::InvalidParam {
            what: "power-law fit",
            detail: alloc::format!("need >= 2 paired samples, got {}/{}", xs.len(), ys.len()),
        });
    }
    let mut lx = Vec::with_capacity(xs.len());
    let mut ly = Vec::with_capacity(xs.len());
    for (&x, &y) in xs.iter().zip(ys) {
        if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::NonFinite {
                what: "power-law fit samples (must be positive finite)",
            });
        }
        lx.push(libm::log(x));
        ly.push(libm::log(y));
    }
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in lx.iter().zip(&ly) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if sxx == 0.0 {
        return Err(Error::InvalidParam {
            what: "power-law fit",
            detail: alloc::format!("all abscissae equal ({})", xs[0]),
        });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let mut max_residual: f64 = 0.0;
    for (&x, &y) in lx.iter().zip(&ly) {
        let r = y - (slope * x + intercept);
        max_residual = max_residual.max(r.abs());
    }
    Ok(PowerLawFit {
        slope,
        intercept,
        max_residual,
    })
}

/// Number of decades spanned by positive data.
pub fn decades(xs: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0_f64;
    for &x in xs {
        if x > 0.0 {
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    if hi > 0.0 && lo.is_finite() {
        libm::log10(hi / lo)
    } else {
        0.0
    }
}
