//! The evolution operator `B_t` (Fourier multiplier `e^{itΦ(ξ)}`), its
//! Gaussian truncation `B_t^N` (`ψ(|ξ|/N)`, `ψ(r)=e^{−r²}`), a direct
//! quadrature oracle, and time-sup (maximal) scans.

use alloc::vec::Vec;
use num_complex::Complex;

use crate::fit::{fit_power_law, PowerLawFit};
use crate::grid::{SampledSignal, Spectrum};
use crate::quad::C64;
use crate::symbol::DispersionSymbol;
use crate::{Error, Result};

/// The Gaussian frequency cutoff ψ(r) = e^{−r²}.
#[inline]
pub fn gaussian_cutoff(r: f64) -> f64 {
    libm::exp(-r * r)
}

/// The full multiplier at frequency ξ: `e^{itΦ(ξ)}·ψ(|ξ|/N)`.
#[inline]
pub fn multiplier(sym: &DispersionSymbol, t: f64, trunc: Option<f64>, xi: f64) -> C64 {
    let mag = match trunc {
        Some(n) => gaussian_cutoff(xi / n),
        None => 1.0,
    };
    Complex::from_polar(mag, t * sym.phi(xi))
}

fn check_truncation(trunc: Option<f64>) -> Result<()> {
    if let Some(n) = trunc {
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::InvalidParam {
                what: "truncation level",
                detail: alloc::format!("N = {n}, requires N >= 1"),
            });
        }
    }
    Ok(())
}

/// Output of [`evolve`]: the evolved signal plus an aliasing diagnostic.
#[derive(Debug, Clone)]
pub struct Evolved {
    pub signal: SampledSignal,
    /// Fraction of spectral energy carried by the outermost coefficients;
    /// energy there wraps around the periodic grid under evolution.
    pub band_edge_fraction: f64,
    /// Set when `band_edge_fraction > 1e−8`.
    pub aliasing_warning: bool,
}

/// Apply `B_t` (optionally truncated at level N) on the grid: diagonal
/// multiplier in frequency, then the inverse transform.
pub fn evolve(
    spec: &Spectrum,
    sym: &DispersionSymbol,
    t: f64,
    trunc: Option<f64>,
) -> Result<Evolved> {
    if !t.is_finite() {
        return Err(Error::NonFinite { what: "time t" });
    }
    check_truncation(trunc)?;
    let n = spec.len();
    let mut out = spec.clone();
    for m in 0..n {
        out.coeffs[m] *= multiplier(sym, t, trunc, spec.xi(m));
    }
    let total: f64 = spec.coeffs.iter().map(|c| c.norm_sqr()).sum();
    let edge: f64 = [0usize, 1, n - 2, n - 1]
        .iter()
        .map(|&m| spec.coeffs[m].norm_sqr())
        .sum();
    let band_edge_fraction = if total > 0.0 { edge / total } else { 0.0 };
    Ok(Evolved {
        signal: out.inverse(),
        band_edge_fraction,
        aliasing_warning: band_edge_fraction > 1e-8,
    })
}

/// Evaluate `B_t f` at an arbitrary (off-grid) point by direct quadrature
/// of the inversion integral over the frequency grid:
/// `(1/X)·Σ_k f̂(ξ_k) e^{i(xξ_k + tΦ(ξ_k))} ψ(|ξ_k|/N)`.
///
/// This is exact for the periodic band-limited signal the grid represents,
/// making it the oracle for off-grid sup statistics.
pub fn eval_at(
    spec: &Spectrum,
    sym: &DispersionSymbol,
    t: f64,
    trunc: Option<f64>,
    x: f64,
) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for m in 0..spec.len() {
        let c = spec.coeffs[m];
        if c.norm_sqr() == 0.0 {
            continue;
        }
        let xi = spec.xi(m);
        acc += c * multiplier(sym, t, trunc, xi) * Complex::from_polar(1.0, x * xi);
    }
    acc / (2.0 * spec.half_width)
}

/// Direct continuum quadrature of
/// `(2π)^{−1} ∫ e^{i(xξ + tΦ(ξ))} ψ(|ξ|/N) f̂(ξ) dξ`
/// over `support`, with Gauss–Legendre panels sized so that no panel sees
/// more than π/2 of phase change.
///
/// Deliberately a *different* integration scheme from the Filon machinery
/// in [`crate::quad`], so the two paths cross-validate each other.
pub fn evolve_oracle<F: Fn(f64) -> C64>(
    fhat: &F,
    support: (f64, f64),
    sym: &DispersionSymbol,
    t: f64,
    trunc: Option<f64>,
    xs: &[f64],
) -> Result<Vec<C64>> {
    if !t.is_finite() {
        return Err(Error::NonFinite { what: "time t" });
    }
    check_truncation(trunc)?;
    let (lo, hi) = support;
    if !(hi > lo) {
        return Err(Error::InvalidParam {
            what: "oracle support",
            detail: alloc::format!("[{lo}, {hi}]"),
        });
    }
    let mut out = Vec::with_capacity(xs.len());
    for &x in xs {
        let mut panels_left: i64 = 2_000_000;
        let integrand = |xi: f64| {
            fhat(xi)
                * multiplier(sym, t, trunc, xi)
                * Complex::from_polar(1.0, x * xi)
        };
        // |d/dξ (xξ + tΦ)| = |x + tΦ'(ξ)|, maximal at panel endpoints
        // because Φ' is monotone on each half-line.
        let rate = |xi: f64| libm::fabs(x + t * sym.phi_prime(xi));
        let val = panel_integrate(&integrand, &rate, lo, hi, &mut panels_left)?;
        out.push(val / (2.0 * core::f64::consts::PI));
    }
    Ok(out)
}

/// Recursive π/2-phase-per-panel Gauss–Legendre integration.
fn panel_integrate<I, R>(
    integrand: &I,
    rate: &R,
    a: f64,
    b: f64,
    panels_left: &mut i64,
) -> Result<C64>
where
    I: Fn(f64) -> C64,
    R: Fn(f64) -> f64,
{
    *panels_left -= 1;
    if *panels_left <= 0 {
        return Err(Error::PanelBudget {
            panels_needed: 2_000_000,
            budget: 2_000_000,
        });
    }
    let h = b - a;
    let max_rate = rate(a).max(rate(b)).max(rate(0.5 * (a + b)));
    // Split on phase change > π/2, but never let a panel grow wider than
    // the amplitude-resolution scale even where the phase is slow.
    if (max_rate * h > core::f64::consts::FRAC_PI_2 || h > 1.0) && h > 1e-12 {
        let m = 0.5 * (a + b);
        let left = panel_integrate(integrand, rate, a, m, panels_left)?;
        let right = panel_integrate(integrand, rate, m, b, panels_left)?;
        return Ok(left + right);
    }
    Ok(crate::quad::integrate_gl(
        |xi| integrand(xi),
        a,
        b,
        16,
    ))
}

/// Pointwise time-sup of |B_t f| over a time grid.
#[derive(Debug, Clone)]
pub struct MaximalScan {
    /// The scanned time grid (sorted ascending).
    pub times: Vec<f64>,
    /// sup over the grid (after refinement) of |B_t f(x_j)|, per grid point.
    pub sup: Vec<f64>,
    /// Index into `times` of the coarse-grid argmax per point (ties broken
    /// toward the smaller time index).
    pub argmax: Vec<usize>,
    /// Largest increase any point received from the golden-section
    /// refinement pass — the documented residual-gap estimate.
    pub refinement_gain: f64,
}

/// A log-spaced time grid with `per_decade` points per decade over
/// [t_min, t_max].
pub fn log_time_grid(t_min: f64, t_max: f64, per_decade: usize) -> Vec<f64> {
    assert!(t_min > 0.0 && t_max > t_min && per_decade >= 1);
    let decades = libm::log10(t_max / t_min);
    let count = (libm::ceil(decades * per_decade as f64) as usize).max(1);
    let mut ts: Vec<f64> = (0..=count)
        .map(|k| t_min * libm::pow(10.0, decades * k as f64 / count as f64))
        .collect();
    *ts.last_mut().unwrap() = t_max;
    ts
}

/// Pointwise maximum of |B_t f| over the time grid, with one golden-section
/// refinement pass per spatial point around the coarse argmax.
pub fn maximal_scan(
    spec: &Spectrum,
    sym: &DispersionSymbol,
    times: &[f64],
    trunc: Option<f64>,
) -> Result<MaximalScan> {
    if times.is_empty() {
        return Err(Error::InvalidParam {
            what: "maximal scan time grid",
            detail: alloc::string::String::from("empty"),
        });
    }
    let n = spec.len();
    let mut sup = alloc::vec![0.0_f64; n];
    let mut argmax = alloc::vec![0usize; n];
    for (ti, &t) in times.iter().enumerate() {
        let ev = evolve(spec, sym, t, trunc)?;
        for j in 0..n {
            let v = ev.signal.values[j].norm();
            if v > sup[j] {
                sup[j] = v;
                argmax[j] = ti;
            }
        }
    }
    // Golden-section refinement between the argmax's neighbors.
    let mut refinement_gain = 0.0_f64;
    for j in 0..n {
        let ti = argmax[j];
        let lo = if ti > 0 { times[ti - 1] } else { times[ti] };
        let hi = if ti + 1 < times.len() {
            times[ti + 1]
        } else {
            times[ti]
        };
        if hi <= lo {
            continue;
        }
        let x = -spec.half_width + j as f64 * (2.0 * spec.half_width / n as f64);
        let g = |t: f64| eval_at(spec, sym, t, trunc, x).norm();
        let refined = golden_max(g, lo, hi, 40);
        if refined > sup[j] {
            refinement_gain = refinement_gain.max(refined - sup[j]);
            sup[j] = refined;
        }
    }
    Ok(MaximalScan {
        times: times.to_vec(),
        sup,
        argmax,
        refinement_gain,
    })
}

/// Golden-section maximization of `g` on [a, b].
pub fn golden_max<G: Fn(f64) -> f64>(g: G, mut a: f64, mut b: f64, iters: usize) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut gc = g(c);
    let mut gd = g(d);
    let mut best = gc.max(gd).max(g(a)).max(g(b));
    for _ in 0..iters {
        if gc > gd {
            b = d;
            d = c;
            gd = gc;
            c = b - INV_PHI * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + INV_PHI * (b - a);
            gd = g(d);
        }
        best = best.max(gc).max(gd);
    }
    best
}

/// Sup-errors `sup_x |B_t f − f|` along a time sequence decreasing to 0.
#[derive(Debug, Clone)]
pub struct ConvergenceProfile {
    pub times: Vec<f64>,
    pub sup_errors: Vec<f64>,
    /// Power-law fit of error vs t (absent when any error is 0).
    pub fit: Option<PowerLawFit>,
}

/// For each t in the (strictly decreasing) sequence, the sup over the probe
/// window of |B_t f − f|, plus a fitted decay rate.
pub fn convergence_profile(
    spec: &Spectrum,
    sym: &DispersionSymbol,
    times: &[f64],
    probe_interval: Option<(f64, f64)>,
) -> Result<ConvergenceProfile> {
    for w in times.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::InvalidParam {
                what: "convergence time sequence",
                detail: alloc::string::String::from("must be strictly decreasing"),
            });
        }
    }
    let base = spec.inverse();
    let mut sup_errors = Vec::with_capacity(times.len());
    for &t in times {
        let ev = evolve(spec, sym, t, None)?;
        let mut sup = 0.0_f64;
        for j in 0..base.len() {
            let x = base.x(j);
            if let Some((a, b)) = probe_interval {
                if x < a || x > b {
                    continue;
                }
            }
            sup = sup.max((ev.signal.values[j] - base.values[j]).norm());
        }
        sup_errors.push(sup);
    }
    let fit = if times.iter().all(|&t| t > 0.0) && sup_errors.iter().all(|&e| e > 0.0) {
        fit_power_law(times, &sup_errors).ok()
    } else {
        None
    };
    Ok(ConvergenceProfile {
        times: times.to_vec(),
        sup_errors,
        fit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;

    const B: DispersionSymbol = DispersionSymbol::BOUSSINESQ;

    /// A smooth rapidly decaying spectrum: a few Gaussian bumps with centers
    /// in |ξ| ≤ 4. Spatial decay is Gaussian, so periodization on a wide
    /// grid is negligible.
    fn gaussian_profile(seed: u64) -> impl Fn(f64) -> C64 {
        let rng = CounterRng::new(seed);
        let mut bumps = [(0.0_f64, 0.0_f64, 0.0_f64); 4];
        for (i, b) in bumps.iter_mut().enumerate() {
            let k = i as u64;
            *b = (
                rng.uniform_in(3 * k, -4.0, 4.0),
                rng.uniform_in(3 * k + 1, 0.5, 1.5),
                rng.uniform_in(3 * k + 2, -1.0, 1.0),
            );
        }
        move |xi: f64| {
            let mut acc = C64::new(0.0, 0.0);
            for &(c, w, a) in &bumps {
                let g = libm::exp(-((xi - c) / w) * ((xi - c) / w));
                acc += C64::new(a * g, 0.3 * a * g);
            }
            // High-pass: flatten f̂ to 8th order at ξ=0. The phase's |ξ|
            // kink there would otherwise give the evolved signal a slow
            // ~t/x² spatial tail, which periodizes onto any finite grid.
            // The factor is analytic so both quadrature paths stay sharp.
            let hp = 1.0 - libm::exp(-(xi / 0.6) * (xi / 0.6));
            acc * (hp * hp * hp * hp)
        }
    }

    fn profile_on_grid(seed: u64, half_width: f64, n: usize) -> Spectrum {
        let f = gaussian_profile(seed);
        Spectrum::from_fn(half_width, n, |xi| f(xi)).unwrap()
    }

    #[test]
    fn time_zero_is_identity() {
        let spec = profile_on_grid(1, 32.0, 512);
        let ev = evolve(&spec, &B, 0.0, None).unwrap();
        let direct = spec.inverse();
        for (a, b) in ev.signal.values.iter().zip(&direct.values) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn single_mode_gets_unimodular_phase() {
        // Mode at ξ=1 evolves by e^{itΦ(1)} = e^{i√2} at t=1.
        let n = 64;
        let sig = SampledSignal::from_fn(PI, n, |x| C64::from_polar(1.0, x)).unwrap();
        let spec = sig.transform();
        let ev = evolve(&spec, &B, 1.0, None).unwrap();
        let rot = C64::from_polar(1.0, core::f64::consts::SQRT_2);
        for j in 0..n {
            let expect = sig.values[j] * rot;
            assert!((ev.signal.values[j] - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn unitarity_and_group_property() {
        let spec = profile_on_grid(2, 32.0, 512);
        let f0 = spec.inverse();
        for &t in &[0.01, 0.3, 1.0, 5.0] {
            let ev = evolve(&spec, &B, t, None).unwrap();
            assert_relative_eq!(ev.signal.l2_norm(), f0.l2_norm(), max_relative = 1e-10);
        }
        let s = 0.4;
        let t = 0.35;
        let step1 = evolve(&spec, &B, s, None).unwrap().signal.transform();
        let two_step = evolve(&step1, &B, t, None).unwrap();
        let direct = evolve(&spec, &B, s + t, None).unwrap();
        for (a, b) in two_step.signal.values.iter().zip(&direct.signal.values) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn truncation_error_shrinks_with_level() {
        let spec = profile_on_grid(3, 32.0, 512);
        let t = 0.7;
        let full = evolve(&spec, &B, t, None).unwrap();
        let mut prev = f64::INFINITY;
        let mut first = f64::INFINITY;
        for &level in &[8.0, 16.0, 32.0, 64.0] {
            let cut = evolve(&spec, &B, t, Some(level)).unwrap();
            let mut sup = 0.0_f64;
            for (a, b) in cut.signal.values.iter().zip(&full.signal.values) {
                sup = sup.max((a - b).norm());
            }
            assert!(sup < prev, "N={level}: {sup} !< {prev}");
            if level == 8.0 {
                first = sup;
            }
            prev = sup;
        }
        // 1 − ψ(ξ/N) ≈ (ξ/N)² on the band, so errors fall ~quadratically in N.
        assert!(prev < first / 30.0, "N=64 residual {prev} vs N=8 {first}");
    }

    #[test]
    fn oracle_matches_grid_evolution() {
        // The phase kink at ξ=0 gives evolved signals only polynomial
        // spatial decay, so the periodization error of the grid is pushed
        // down with a wide domain before comparing against the whole-line
        // oracle. 3 random signals at unit-test scale.
        for seed in 0..3 {
            let half_width = 64.0;
            let n = 4096;
            let fhat = gaussian_profile(seed);
            let spec = profile_on_grid(seed, half_width, n);
            for &t in &[0.01, 0.1, 1.0] {
                let ev = evolve(&spec, &B, t, None).unwrap();
                // Sampled relative L² over a deterministic point subset in
                // the central half of the domain; near the edges the grid's
                // periodized dispersive tail (~1e−7 of peak) is not a fair
                // comparison against the whole-line oracle.
                let idx: Vec<usize> = (0..48).map(|k| n / 4 + (k * 41 + 13) % (n / 2)).collect();
                let xs: Vec<f64> = idx.iter().map(|&j| ev.signal.x(j)).collect();
                let oracle =
                    evolve_oracle(&fhat, (-24.0, 24.0), &B, t, None, &xs).unwrap();
                let mut num = 0.0;
                let mut den = 0.0;
                for (i, &j) in idx.iter().enumerate() {
                    num += (ev.signal.values[j] - oracle[i]).norm_sqr();
                    den += oracle[i].norm_sqr();
                }
                let rel = libm::sqrt(num / den.max(1e-300));
                assert!(rel <= 1e-6, "seed {seed}, t={t}: rel {rel:.3e}");
            }
        }
    }

    #[test]
    fn oracle_reproduces_inverse_transform_at_t0() {
        let fhat = gaussian_profile(9);
        let spec = profile_on_grid(9, 32.0, 2048);
        let direct = spec.inverse();
        let xs = [0.0, 0.5, -3.25, 7.0];
        let got = evolve_oracle(&fhat, (-24.0, 24.0), &B, 0.0, None, &xs).unwrap();
        for (i, &x) in xs.iter().enumerate() {
            let j = ((x + 32.0) / direct.dx()) as usize;
            assert!((direct.x(j) - x).abs() < 1e-9, "x={x} not on grid");
            assert!(
                (got[i] - direct.values[j]).norm() < 1e-8,
                "x={x}: {:?} vs {:?}",
                got[i],
                direct.values[j]
            );
        }
    }

    #[test]
    fn oracle_indicator_closed_form() {
        // f̂ = χ_{[1,2]}, x=0, t=0 → (2π)^{−1}·∫₁²dξ = 1/(2π).
        let fhat = |_xi: f64| C64::new(1.0, 0.0);
        let got = evolve_oracle(&fhat, (1.0, 2.0), &B, 0.0, None, &[0.0]).unwrap();
        assert_relative_eq!(got[0].re, 1.0 / (2.0 * PI), max_relative = 1e-12);
        assert!(got[0].im.abs() < 1e-14);
    }

    #[test]
    fn eval_at_agrees_with_grid_on_grid_points() {
        let spec = profile_on_grid(4, 32.0, 512);
        let t = 0.3;
        let ev = evolve(&spec, &B, t, None).unwrap();
        for &j in &[0usize, 100, 255, 400] {
            let x = ev.signal.x(j);
            let v = eval_at(&spec, &B, t, None, x);
            assert!((v - ev.signal.values[j]).norm() < 1e-10);
        }
    }

    #[test]
    fn maximal_scan_singleton_and_refinement() {
        let spec = profile_on_grid(5, 32.0, 256);
        let t = 0.2;
        let single = maximal_scan(&spec, &B, &[t], None).unwrap();
        let ev = evolve(&spec, &B, t, None).unwrap();
        for j in 0..spec.len() {
            assert!(single.sup[j] >= ev.signal.values[j].norm() - 1e-14);
            assert_eq!(single.argmax[j], 0);
        }
        // Refining the grid never decreases any pointwise value.
        let coarse_grid = log_time_grid(1e-2, 1.0, 8);
        let fine_grid = log_time_grid(1e-2, 1.0, 16);
        let coarse = maximal_scan(&spec, &B, &coarse_grid, None).unwrap();
        let fine = maximal_scan(&spec, &B, &fine_grid, None).unwrap();
        for j in 0..spec.len() {
            // Golden refinement can lift the coarse scan slightly above the
            // fine grid's unrefined values, but never by more than its own
            // reported gain.
            assert!(
                fine.sup[j] >= coarse.sup[j] - coarse.refinement_gain - 1e-12,
                "j={j}"
            );
        }
        assert!(maximal_scan(&spec, &B, &[], None).is_err());
    }

    #[test]
    fn convergence_profile_band_limited_bound() {
        // sup|B_t f − f| ≤ t·Φ(K)·‖f̂‖_{L¹}/(2π) for f̂ supported in |ξ|≤K.
        let spec = profile_on_grid(6, 32.0, 512);
        let band = 8.0; // gaussian_profile is ~0 beyond |ξ| = 8
        let l1: f64 = spec
            .coeffs
            .iter()
            .map(|c| c.norm())
            .sum::<f64>()
            * spec.dxi();
        let times: Vec<f64> = (0..17).map(|k| libm::pow(2.0, -(k as f64))).collect();
        let prof = convergence_profile(&spec, &B, &times, None).unwrap();
        for (i, &t) in times.iter().enumerate() {
            let bound = t * B.phi(band) * l1 / (2.0 * PI);
            assert!(
                prof.sup_errors[i] <= bound,
                "t={t}: {} > {}",
                prof.sup_errors[i],
                bound
            );
        }
        // Small-t errors scale like t (multiplier linearization); fit only
        // the regime t·Φ(K) ≲ 1 where the phase has not wrapped.
        let small = crate::fit::fit_power_law(&times[7..], &prof.sup_errors[7..]).unwrap();
        assert!(small.slope > 0.9 && small.slope < 1.1, "slope {}", small.slope);
        // A {0}-prefixed sequence reports exactly 0 at t=0.
        let with_zero = convergence_profile(&spec, &B, &[0.5, 0.0], None).unwrap();
        assert!(with_zero.sup_errors[1] < 1e-13);
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        let spec = profile_on_grid(8, 32.0, 256);
        assert!(evolve(&spec, &B, f64::NAN, None).is_err());
        assert!(evolve(&spec, &B, 0.1, Some(0.5)).is_err());
        assert!(convergence_profile(&spec, &B, &[0.1, 0.2], None).is_err());
    }
}
