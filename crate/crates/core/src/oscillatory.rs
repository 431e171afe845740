//! Oscillatory kernel estimates: probes of the weighted kernel
//! `∫ e^{i(dξ + τΦ(ξ))} ρ_N²(ξ) |ξ|^{−2s} dξ`, power-law fits of its decay
//! in the separation `d`, and a van der Corput ratio check.
//!
//! The kernel is what controls the continuity of the time-sup operator on
//! weighted L²: its modulus should decay like `d^{−(1−2s)}` uniformly in the
//! truncation level N. [`kernel_probe`] measures the sup of the modulus over
//! an adversarial grid of time offsets τ, and [`decay_fit`] extracts the
//! decay exponent over a log grid of separations.

use alloc::vec::Vec;

use crate::bump::band_bump;
use crate::dd::Dd;
use crate::fit::{decades, fit_power_law, PowerLawFit};
use crate::quad::{integrate_adaptive_real, oscillatory_integral, OscOpts, C64};
use crate::symbol::DispersionSymbol;
use crate::{Error, Result};

/// Default split between the substituted near-zero region and the outer
/// region of the kernel integral.
const SPLIT: f64 = 1.0;

/// A measured kernel probe: the sup over time offsets of the kernel modulus
/// at one separation.
#[derive(Debug, Clone)]
pub struct KernelProbe {
    pub d: f64,
    pub n: f64,
    pub s: f64,
    /// `sup_τ |∫ e^{i(dξ+τΦ)} ρ_N² |ξ|^{−2s} dξ|`.
    pub sup: f64,
    /// The τ achieving the sup.
    pub tau_star: f64,
}

fn check_kernel_params(d: f64, n: f64, s: f64) -> Result<()> {
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::InvalidParam {
            what: "kernel separation",
            detail: alloc::format!("d must be positive finite, got {d}"),
        });
    }
    if !(n > 1.0 && n.is_finite()) {
        return Err(Error::InvalidParam {
            what: "kernel truncation",
            detail: alloc::format!("N must exceed 1, got {n}"),
        });
    }
    if !(0.25..0.5).contains(&s) {
        return Err(Error::InvalidParam {
            what: "kernel weight order",
            detail: alloc::format!("s must lie in [1/4, 1/2), got {s}"),
        });
    }
    Ok(())
}

/// The kernel integral `∫_ℝ e^{i(dξ + τΦ(ξ))} ρ_N²(ξ) |ξ|^{−2s} dξ` with
/// `ρ_N(ξ) = ρ(ξ/N)` (1 on |ξ| ≤ N, 0 on |ξ| ≥ 2N).
///
/// The integrable singularity `|ξ|^{−2s}` is removed on `|ξ| ≤ split` by the
/// substitution `ξ = u^{1/(1−2s)}`, whose Jacobian cancels the weight
/// exactly; the outer region is integrated directly. Any real `d` is
/// accepted here (the probe itself restricts to d > 0); `split` must lie in
/// (0, N].
pub fn kernel_integral(d: f64, tau: f64, n: f64, s: f64, split: f64) -> Result<C64> {
    check_kernel_params(libm::fabs(d).max(f64::MIN_POSITIVE), n, s)?;
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParam {
            what: "kernel time offset",
            detail: alloc::format!("tau must be positive finite, got {tau}"),
        });
    }
    if !(split > 0.0 && split <= n) {
        return Err(Error::InvalidParam {
            what: "kernel split point",
            detail: alloc::format!("split must lie in (0, N], got {split}"),
        });
    }
    let sym = DispersionSymbol::BOUSSINESQ;
    let p = 1.0 / (1.0 - 2.0 * s); // substitution power
    // Fine amplitude resolution: the |ξ|^{−2s} weight near the split point
    // is the stiffest amplitude feature and limits the panel interpolation.
    let opts = OscOpts {
        resolution: 0.0625,
        ..Default::default()
    };
    let mut acc = C64::new(0.0, 0.0);
    for &sign in &[1.0, -1.0] {
        // Inner: ∫₀^split f(ξ) ξ^{−2s} dξ = (1/(1−2s)) ∫₀^{split^{1−2s}} f(u^p) du.
        let u_hi = libm::pow(split, 1.0 - 2.0 * s);
        acc += oscillatory_integral(
            |u| {
                let xi = libm::pow(u, p);
                let r = band_bump(xi / n);
                C64::new(r * r * p, 0.0)
            },
            |u| {
                let xi = libm::pow(u, p);
                Dd::prod(sign * d, xi) + sym.phi_dd(xi) * tau
            },
            0.0,
            u_hi,
            &opts,
        )?;
        // Outer: [split, 2N] with the weight kept in the amplitude.
        acc += oscillatory_integral(
            |xi| {
                let r = band_bump(xi / n);
                C64::new(r * r * libm::pow(xi, -2.0 * s), 0.0)
            },
            |xi| Dd::prod(sign * d, xi) + sym.phi_dd(xi) * tau,
            split,
            2.0 * n,
            &opts,
        )?;
    }
    Ok(acc)
}

/// Adversarial time-offset grid: a log grid covering (10⁻⁶, 1/6) plus the
/// stationary-regime boundary values around `2d²`, clipped to the range.
pub fn adversarial_taus(d: f64, per_decade: usize) -> Vec<f64> {
    let per = per_decade.max(1) as f64;
    let mut taus = Vec::new();
    let mut k = 0.0;
    loop {
        let tau = 1e-6 * libm::pow(10.0, k / per);
        if tau >= 1.0 / 6.0 {
            break;
        }
        taus.push(tau);
        k += 1.0;
    }
    for &c in &[1.0, 2.0, 4.0] {
        let tau = c * d * d;
        if tau > 1e-6 && tau < 1.0 / 6.0 {
            taus.push(tau);
        }
    }
    taus
}

/// Probe the kernel at one separation: sup of the modulus over `tau_samples`.
pub fn kernel_probe(d: f64, tau_samples: &[f64], n: f64, s: f64) -> Result<KernelProbe> {
    check_kernel_params(d, n, s)?;
    if tau_samples.is_empty() || tau_samples.iter().any(|&t| !(t > 0.0 && t < 1.0 / 6.0)) {
        return Err(Error::InvalidParam {
            what: "kernel time offsets",
            detail: alloc::format!("need a nonempty subset of (0, 1/6), got {tau_samples:?}"),
        });
    }
    let mut sup = 0.0_f64;
    let mut tau_star = tau_samples[0];
    for &tau in tau_samples {
        let v = kernel_integral(d, tau, n, s, SPLIT)?.norm();
        if v > sup {
            sup = v;
            tau_star = tau;
        }
    }
    Ok(KernelProbe {
        d,
        n,
        s,
        sup,
        tau_star,
    })
}

/// Fit the probe decay `sup ≈ C·d^slope` over a log grid of separations.
///
/// Requires at least 8 probes spanning at least 2 decades of `d`.
pub fn decay_fit(probes: &[KernelProbe]) -> Result<PowerLawFit> {
    let ds: Vec<f64> = probes.iter().map(|p| p.d).collect();
    let sups: Vec<f64> = probes.iter().map(|p| p.sup).collect();
    if probes.len() < 8 || decades(&ds) < 2.0 {
        return Err(Error::InvalidParam {
            what: "kernel decay fit",
            detail: alloc::format!(
                "need >= 8 probes over >= 2 decades, got {} probes over {:.2} decades",
                probes.len(),
                decades(&ds)
            ),
        });
    }
    fit_power_law(&ds, &sups)
}

/// Measured module ceilings for the van der Corput ratio (order 1 and 2).
pub const C_VDC: [f64; 2] = [2.0, 8.0];

/// The van der Corput ratio
/// `|∫_I e^{iΦ}ψ| · γ^{1/order} / (|ψ(b)| + ∫_I |ψ'|)`.
///
/// `dphase` must be Φ′ for order 1 (required ≥ γ in modulus and monotone on
/// I) or Φ″ for order 2 (required ≥ γ in modulus); the hypotheses are
/// checked by dense sampling and a violation is reported as an error.
pub fn vdc_check(
    phase: impl Fn(f64) -> f64,
    dphase: impl Fn(f64) -> f64,
    amp: impl Fn(f64) -> f64,
    damp: impl Fn(f64) -> f64,
    interval: (f64, f64),
    gamma: f64,
    order: u8,
) -> Result<f64> {
    let (a, b) = interval;
    if !(b > a && a.is_finite() && b.is_finite() && gamma > 0.0) {
        return Err(Error::InvalidParam {
            what: "van der Corput instance",
            detail: alloc::format!("need a < b finite and gamma > 0, got [{a},{b}], {gamma}"),
        });
    }
    if !(order == 1 || order == 2) {
        return Err(Error::InvalidParam {
            what: "van der Corput order",
            detail: alloc::format!("order must be 1 or 2, got {order}"),
        });
    }
    // Hypothesis check by sampling.
    const SAMPLES: usize = 400;
    let mut prev = f64::NAN;
    let mut direction = 0.0_f64;
    for k in 0..=SAMPLES {
        let x = a + (b - a) * k as f64 / SAMPLES as f64;
        let v = dphase(x);
        if libm::fabs(v) < gamma * (1.0 - 1e-9) {
            return Err(Error::InvalidParam {
                what: "van der Corput hypothesis",
                detail: alloc::format!(
                    "|phase derivative| = {} below gamma = {gamma} at x = {x}",
                    libm::fabs(v)
                ),
            });
        }
        if order == 1 && k > 0 {
            let step = v - prev;
            if step * direction < 0.0 {
                return Err(Error::InvalidParam {
                    what: "van der Corput hypothesis",
                    detail: alloc::format!("phase derivative not monotone near x = {x}"),
                });
            }
            if step != 0.0 {
                direction = step;
            }
        }
        prev = v;
    }
    let numerator = oscillatory_integral(
        |x| C64::new(amp(x), 0.0),
        |x| Dd::from_f64(phase(x)),
        a,
        b,
        &OscOpts {
            resolution: (b - a) / 16.0,
            ..Default::default()
        },
    )?
    .norm();
    let denominator =
        libm::fabs(amp(b)) + integrate_adaptive_real(|x| libm::fabs(damp(x)), a, b, 1e-12);
    if denominator == 0.0 {
        return Ok(0.0);
    }
    Ok(numerator * libm::pow(gamma, 1.0 / order as f64) / denominator)
}
