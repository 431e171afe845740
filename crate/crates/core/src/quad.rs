//! Quadrature: Gauss–Legendre rules and a Filon-type integrator for
//! highly oscillatory integrals `∫ A(ξ) e^{iF(ξ)} dξ`.
//!
//! The Filon integrator factors each panel's phase as
//! `F(ξ) = F(a) + λ·(ξ−a) + G(ξ)` with λ the chord slope; panels are split
//! until the residual `G` stays below a fraction of a radian, the slow part
//! `A·e^{iG}` is interpolated by a degree-7 polynomial, and the linear
//! oscillation is integrated exactly through moment recurrences. Panel count
//! is therefore governed by phase *curvature*, not phase magnitude: a phase
//! rising by 10⁹ radians linearly costs a handful of panels. Phases are
//! supplied as [`Dd`] double-doubles so that chord slopes and residuals
//! survive catastrophic cancellation.

use alloc::vec::Vec;
use num_complex::Complex;

use crate::dd::Dd;
use crate::{Error, Result};

pub type C64 = Complex<f64>;

// ---------------------------------------------------------------------------
// Gauss–Legendre
// ---------------------------------------------------------------------------

/// Nodes and weights of the n-point Gauss–Legendre rule on [−1, 1],
/// found by Newton iteration on the Legendre polynomial.
pub fn gl_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n {
        // Tricomi initial guess, then Newton.
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if libm::fabs(dx) < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        nodes.push(-x); // ascending order
        weights.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order Gauss–Legendre over [a, b] for a complex integrand.
pub fn integrate_gl<F: FnMut(f64) -> C64>(mut f: F, a: f64, b: f64, order: usize) -> C64 {
    let (xs, ws) = gl_nodes(order);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut acc = C64::new(0.0, 0.0);
    for (x, w) in xs.iter().zip(&ws) {
        acc += f(mid + half * x) * *w;
    }
    acc * half
}

/// Adaptive Gauss–Legendre for smooth (non-oscillatory) complex integrands:
/// a panel is accepted when one GL-15 pass agrees with its two halves.
pub fn integrate_adaptive<F: FnMut(f64) -> C64>(f: &mut F, a: f64, b: f64, tol: f64) -> C64 {
    fn recurse<F: FnMut(f64) -> C64>(
        f: &mut F,
        a: f64,
        b: f64,
        whole: C64,
        tol: f64,
        depth: u32,
    ) -> C64 {
        let m = 0.5 * (a + b);
        let left = integrate_gl(&mut *f, a, m, 15);
        let right = integrate_gl(&mut *f, m, b, 15);
        let err = (left + right - whole).norm();
        if err < tol || depth >= 40 {
            left + right
        } else {
            recurse(f, a, m, left, 0.5 * tol, depth + 1)
                + recurse(f, m, b, right, 0.5 * tol, depth + 1)
        }
    }
    let whole = integrate_gl(&mut *f, a, b, 15);
    recurse(f, a, b, whole, tol, 0)
}

/// Adaptive quadrature of a real integrand.
pub fn integrate_adaptive_real<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> f64 {
    integrate_adaptive(&mut |x| C64::new(f(x), 0.0), a, b, tol).re
}

// ---------------------------------------------------------------------------
// Filon oscillatory integration
// ---------------------------------------------------------------------------

/// Options for [`oscillatory_integral`].
#[derive(Debug, Clone, Copy)]
pub struct OscOpts {
    /// Maximum initial panel width; must resolve every *amplitude* feature
    /// (phase features are found by the adaptive splitting).
    pub resolution: f64,
    /// Largest admissible deviation (radians) of the panel phase from its
    /// linear chord before the panel is split.
    pub slow_tol: f64,
    /// Hard cap on the number of accepted panels.
    pub max_panels: usize,
}

impl Default for OscOpts {
    fn default() -> Self {
        OscOpts {
            resolution: f64::INFINITY,
            slow_tol: 0.5,
            max_panels: 1_000_000,
        }
    }
}

const NODES: usize = 8; // degree-7 interpolation per panel

/// Panel nodes in [0, 1]: Chebyshev extrema (including endpoints), which keep
/// the values→coefficients map well conditioned.
fn panel_nodes() -> [f64; NODES] {
    let mut t = [0.0_f64; NODES];
    for (j, slot) in t.iter_mut().enumerate() {
        *slot = 0.5
            * (1.0 - libm::cos(core::f64::consts::PI * j as f64 / (NODES - 1) as f64));
    }
    t[0] = 0.0;
    t[NODES - 1] = 1.0;
    t
}

/// `∫_a^b amp(ξ)·e^{i·phase(ξ)} dξ` by adaptive Filon panels.
///
/// `phase` must return the phase in double-double precision; amplitudes are
/// ordinary `f64`-valued complex. The result is deterministic (panels are
/// processed left to right).
pub fn oscillatory_integral<A, P>(amp: A, phase: P, a: f64, b: f64, opts: &OscOpts) -> Result<C64>
where
    A: Fn(f64) -> C64,
    P: Fn(f64) -> Dd,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::NonFinite {
            what: "oscillatory integral endpoints",
        });
    }
    if a == b {
        return Ok(C64::new(0.0, 0.0));
    }
    let tau = panel_nodes();
    let inv = vandermonde_inverse(&tau);
    let mut w = FilonWorker {
        amp: &amp,
        phase: &phase,
        tau: &tau,
        inv: &inv,
        panels_used: 0,
        max_panels: opts.max_panels,
        slow_tol: opts.slow_tol,
        acc: C64::new(0.0, 0.0),
    };
    let width = b - a;
    let initial = if opts.resolution.is_finite() && opts.resolution > 0.0 {
        (libm::ceil(width / opts.resolution) as usize).max(NODES)
    } else {
        NODES
    };
    for k in 0..initial {
        let pa = a + width * k as f64 / initial as f64;
        let pb = a + width * (k + 1) as f64 / initial as f64;
        w.panel(pa, pb, 0)?;
    }
    Ok(w.acc)
}

struct FilonWorker<'a, A, P> {
    amp: &'a A,
    phase: &'a P,
    tau: &'a [f64; NODES],
    inv: &'a [[f64; NODES]; NODES],
    panels_used: usize,
    max_panels: usize,
    slow_tol: f64,
    acc: C64,
}

impl<A, P> FilonWorker<'_, A, P>
where
    A: Fn(f64) -> C64,
    P: Fn(f64) -> Dd,
{
    fn panel(&mut self, a: f64, b: f64, depth: u32) -> Result<()> {
        self.panels_used += 1;
        if self.panels_used > self.max_panels {
            return Err(Error::PanelBudget {
                panels_needed: self.panels_used,
                budget: self.max_panels,
            });
        }
        let h = b - a;
        let mut fdd = [Dd::ZERO; NODES];
        for (j, slot) in fdd.iter_mut().enumerate() {
            let x = a + h * self.tau[j];
            *slot = (self.phase)(x);
        }
        let f0 = fdd[0];
        let chord = fdd[NODES - 1] - f0; // total phase change across the panel
        let mut g = [0.0_f64; NODES];
        let mut dev = 0.0_f64;
        for j in 1..NODES - 1 {
            let gj = (fdd[j] - f0 - chord * self.tau[j]).to_f64();
            g[j] = gj;
            dev = dev.max(libm::fabs(gj));
        }
        let theta = chord.to_f64();
        // Split on curved phase. Linear phase of any magnitude is handled
        // exactly by the moments (e^{iθ} is built from the dd-reduced chord),
        // so only the chord *deviation* forces subdivision.
        let tiny = h <= 1e-13 * (libm::fabs(a) + libm::fabs(b) + 1.0);
        if dev > self.slow_tol && !tiny && depth < 52 {
            let m = 0.5 * (a + b);
            self.panel(a, m, depth + 1)?;
            self.panel(m, b, depth + 1)?;
            return Ok(());
        }
        // Accept: interpolate amp·e^{iG} by degree-7 polynomial in τ=(ξ−a)/h.
        let mut c = [C64::new(0.0, 0.0); NODES];
        for j in 0..NODES {
            let x = a + h * self.tau[j];
            c[j] = (self.amp)(x) * C64::from_polar(1.0, g[j]);
        }
        let moments = linear_phase_moments(theta, chord.rem_2pi());
        let mut sum = C64::new(0.0, 0.0);
        for k in 0..NODES {
            let mut ak = C64::new(0.0, 0.0);
            for j in 0..NODES {
                ak += c[j] * self.inv[k][j];
            }
            sum += ak * moments[k];
        }
        self.acc += sum * h * C64::from_polar(1.0, f0.rem_2pi());
        Ok(())
    }
}

/// Moments `M_k = ∫₀¹ τ^k e^{iθτ} dτ`, k = 0..8.
///
/// `theta_mod` is θ reduced mod 2π at full precision, used for `e^{iθ}`.
fn linear_phase_moments(theta: f64, theta_mod: f64) -> [C64; NODES] {
    let mut m = [C64::new(0.0, 0.0); NODES];
    if libm::fabs(theta) <= 8.0 {
        // Maclaurin series: M_k = Σ_m (iθ)^m / (m! (k+m+1)).
        let it = C64::new(0.0, theta);
        for (k, slot) in m.iter_mut().enumerate() {
            let mut term = C64::new(1.0, 0.0); // (iθ)^m / m!
            let mut acc = C64::new(0.0, 0.0);
            for mm in 0..60 {
                acc += term / (k as f64 + mm as f64 + 1.0);
                term = term * it / (mm as f64 + 1.0);
                if term.norm() < 1e-20 {
                    break;
                }
            }
            *slot = acc;
        }
    } else {
        // Downward-stable recurrence in k for large |θ|.
        let eith = C64::from_polar(1.0, theta_mod);
        let it = C64::new(0.0, theta);
        m[0] = (eith - 1.0) / it;
        for k in 1..NODES {
            m[k] = (eith - m[k - 1] * k as f64) / it;
        }
    }
    m
}

/// Inverse of the Vandermonde matrix at the panel nodes, so that
/// coefficients `a_k = Σ_j inv[k][j]·f(τ_j)` give the interpolating
/// polynomial `Σ a_k τ^k`.
fn vandermonde_inverse(tau: &[f64; NODES]) -> [[f64; NODES]; NODES] {
    let mut v = [[0.0_f64; NODES]; NODES];
    for j in 0..NODES {
        let t = tau[j];
        let mut p = 1.0;
        for k in 0..NODES {
            v[j][k] = p;
            p *= t;
        }
    }
    // Gauss–Jordan inversion of the small fixed matrix, then transpose the
    // row/column roles to map values → coefficients.
    let mut aug = [[0.0_f64; 2 * NODES]; NODES];
    for i in 0..NODES {
        aug[i][..NODES].copy_from_slice(&v[i]);
        aug[i][NODES + i] = 1.0;
    }
    for col in 0..NODES {
        let mut piv = col;
        for r in col + 1..NODES {
            if libm::fabs(aug[r][col]) > libm::fabs(aug[piv][col]) {
                piv = r;
            }
        }
        aug.swap(col, piv);
        let d = aug[col][col];
        for x in aug[col].iter_mut() {
            *x /= d;
        }
        for r in 0..NODES {
            if r != col {
                let factor = aug[r][col];
                for k in 0..2 * NODES {
                    aug[r][k] -= factor * aug[col][k];
                }
            }
        }
    }
    // (V^{-1})[k][j]: row k of the inverse maps values to coefficient k.
    let mut inv = [[0.0_f64; NODES]; NODES];
    for k in 0..NODES {
        for j in 0..NODES {
            inv[k][j] = aug[k][NODES + j];
        }
    }
    inv
}

/// Subintervals of [a, b] on which `|rate| ≤ cap`, located by sampling at
/// `samples` points and bisecting each sign change of `|rate| − cap`.
///
/// Used to clip an oscillatory integral to the region where its phase
/// derivative is manageable; the discarded tail is bounded analytically by
/// the caller (first-derivative van der Corput with γ = cap).
pub fn subintervals_below_rate<R: Fn(f64) -> f64>(
    rate: R,
    a: f64,
    b: f64,
    cap: f64,
    samples: usize,
) -> Vec<(f64, f64)> {
    let n = samples.max(8);
    let grid: Vec<f64> = (0..=n).map(|k| a + (b - a) * k as f64 / n as f64).collect();
    let inside: Vec<bool> = grid.iter().map(|&x| libm::fabs(rate(x)) <= cap).collect();
    let refine = |mut lo: f64, mut hi: f64| {
        // rate crosses the cap between lo and hi; return the crossing.
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if (libm::fabs(rate(mid)) <= cap) == (libm::fabs(rate(lo)) <= cap) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    let mut out = Vec::new();
    let mut start: Option<f64> = None;
    for k in 0..=n {
        match (start, inside[k]) {
            (None, true) => {
                start = Some(if k == 0 { a } else { refine(grid[k - 1], grid[k]) });
            }
            (Some(s), false) => {
                out.push((s, refine(grid[k - 1], grid[k])));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, b));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn gl_nodes_integrate_polynomials_exactly() {
        // n-point GL is exact through degree 2n−1.
        let v = integrate_gl(|x| C64::new(x * x * x - 2.0 * x + 1.0, 0.0), 0.0, 1.0, 2);
        assert!((v.re - (0.25 - 1.0 + 1.0)).abs() < 1e-14);
        let e = integrate_gl(|x| C64::new(libm::exp(x), 0.0), -1.0, 1.0, 20);
        assert!((e.re - (libm::exp(1.0) - libm::exp(-1.0))).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let v = integrate_adaptive_real(|x| 1.0 / (1e-4 + x * x), -1.0, 1.0, 1e-10);
        let exact = 2.0 / 1e-2 * libm::atan(1.0 / 1e-2);
        assert!((v - exact).abs() / exact < 1e-9);
    }

    fn linear_phase_exact(lam: f64) -> C64 {
        // ∫₀¹ e^{iλξ} dξ
        if lam == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            (C64::from_polar(1.0, lam % (2.0 * PI)) - 1.0) / C64::new(0.0, lam)
        }
    }

    #[test]
    fn filon_linear_phase_all_magnitudes() {
        for &lam in &[0.0, 0.1, 3.0, 10.0, 1e4, 1e6] {
            let got = oscillatory_integral(
                |_| C64::new(1.0, 0.0),
                |x| Dd::prod(lam, x),
                0.0,
                1.0,
                &OscOpts::default(),
            )
            .unwrap();
            let want = linear_phase_exact(lam);
            assert!(
                (got - want).norm() < 1e-12,
                "λ={lam}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn filon_gaussian_with_linear_phase() {
        // ∫ e^{−ξ²} e^{iλξ} dξ = √π e^{−λ²/4}
        for &lam in &[1.0, 5.0] {
            let got = oscillatory_integral(
                |x| C64::new(libm::exp(-x * x), 0.0),
                |x| Dd::prod(lam, x),
                -10.0,
                10.0,
                &OscOpts {
                    resolution: 0.25,
                    ..Default::default()
                },
            )
            .unwrap();
            let want = libm::sqrt(PI) * libm::exp(-lam * lam / 4.0);
            assert!(
                (got.re - want).abs() < 1e-11 && got.im.abs() < 1e-11,
                "λ={lam}: got {got}, want {want}"
            );
        }
    }

    #[test]
    fn filon_fresnel_quadratic_phase() {
        // ∫₀^X e^{iξ²} dξ = (√π/2)e^{iπ/4} + e^{iX²}/(2iX) + O(X⁻³)
        let x_end = 50.0;
        let got = oscillatory_integral(
            |_| C64::new(1.0, 0.0),
            |x| Dd::prod(x, x),
            0.0,
            x_end,
            &OscOpts::default(),
        )
        .unwrap();
        let want = C64::from_polar(libm::sqrt(PI) / 2.0, PI / 4.0)
            + C64::from_polar(1.0, (Dd::prod(x_end, x_end)).rem_2pi())
                / C64::new(0.0, 2.0 * x_end);
        assert!((got - want).norm() < 1e-5, "got {got}, want {want}");
    }

    #[test]
    fn filon_huge_linear_phase_uses_dd_reduction() {
        // λ = 10¹⁵: the closed form is only meaningful if λ mod 2π is exact.
        let lam = 1e15;
        let got = oscillatory_integral(
            |_| C64::new(1.0, 0.0),
            |x| Dd::prod(lam, x),
            0.0,
            1.0,
            &OscOpts::default(),
        )
        .unwrap();
        let lam_mod = Dd::from_f64(lam).rem_2pi();
        let want = (C64::from_polar(1.0, lam_mod) - 1.0) / C64::new(0.0, lam);
        assert!((got - want).norm() < 1e-11, "got {got}, want {want}");
    }

    #[test]
    fn filon_matches_plain_gl_on_mild_oscillation() {
        // Cross-method check: amp = 1/(1+ξ²), phase = 7ξ + sin-free curvature.
        let amp = |x: f64| C64::new(1.0 / (1.0 + x * x), 0.0);
        let phase_f = |x: f64| 7.0 * x + 0.3 * x * x;
        let got = oscillatory_integral(
            amp,
            |x| Dd::prod(7.0, x) + Dd::prod(0.3 * x, x),
            -4.0,
            4.0,
            &OscOpts {
                resolution: 0.25,
                ..Default::default()
            },
        )
        .unwrap();
        let want = integrate_adaptive(
            &mut |x: f64| amp(x) * C64::from_polar(1.0, phase_f(x)),
            -4.0,
            4.0,
            1e-13,
        );
        assert!((got - want).norm() < 1e-11, "got {got}, want {want}");
    }

    #[test]
    fn moment_series_and_recurrence_agree_at_seam() {
        for &th in &[7.9, 8.1] {
            let a = linear_phase_moments(th, th % (2.0 * PI));
            // Independent check: numerical integration of each moment.
            for k in 0..NODES {
                let want = integrate_gl(
                    |t| C64::from_polar(libm::pow(t, k as f64), th * t),
                    0.0,
                    1.0,
                    40,
                );
                assert!(
                    (a[k] - want).norm() < 1e-12,
                    "θ={th}, k={k}: {:?} vs {:?}",
                    a[k],
                    want
                );
            }
        }
    }

    #[test]
    fn rate_windows_found() {
        // rate(x) = x² − 4 ≤ 1 in |x| ≤ √5... windows of |x²−4| ≤ 1 are
        // [−√5,−√3] ∪ [√3,√5].
        let w = subintervals_below_rate(|x| x * x - 4.0, -3.0, 3.0, 1.0, 300);
        assert_eq!(w.len(), 2);
        assert!((w[0].0 + libm::sqrt(5.0)).abs() < 1e-9);
        assert!((w[0].1 + libm::sqrt(3.0)).abs() < 1e-9);
        assert!((w[1].0 - libm::sqrt(3.0)).abs() < 1e-9);
        assert!((w[1].1 - libm::sqrt(5.0)).abs() < 1e-9);
    }

    #[test]
    fn panel_budget_is_enforced() {
        let r = oscillatory_integral(
            |_| C64::new(1.0, 0.0),
            |x| Dd::prod(1e6 * x, x),
            0.0,
            1000.0,
            &OscOpts {
                max_panels: 100,
                ..Default::default()
            },
        );
        assert!(matches!(r, Err(Error::PanelBudget { .. })));
    }
}
