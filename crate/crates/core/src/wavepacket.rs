//! Modulated wave packets `f_v(x) = e^{−ix/v²} ǧ(x/v)` and their evolution
//! under the propagator, evaluated off-grid by Filon quadrature.
//!
//! The packet profile ǧ is the compactly supported bump `exp(−1/(1−x²))`;
//! its transform `g` is tabulated once by quadrature ([`make_bump`]) together
//! with the constants the divergence construction needs: the tail threshold
//! `L`, the mass constant `c₀ = |∫g|/4`, and the scale ceiling `v₀ = 1/(2L)`.
//!
//! In the frequency variable η = vξ + 1/v the evolved packet is
//!
//! ```text
//! B_t f_v(x) = (2π)^{−1} ∫ g(η) · e^{iF(η)} dη,
//! F(η) = (x/v)(η − 1/v) + t·Φ((η − 1/v)/v),
//! ```
//!
//! a single oscillatory integral whose phase can reach ~10¹⁹ radians for
//! deep packet cascades. The phase is assembled in double-double arithmetic
//! ([`Precision::Extended`]) or plain doubles with a guarded magnitude
//! budget ([`Precision::Double`]), and the integration domain is clipped to
//! the region where `|F'|` stays below a cap chosen so the discarded tail is
//! bounded by the requested tolerance (first-derivative van der Corput, valid
//! because `F'` is nondecreasing for t ≥ 0).

use alloc::vec::Vec;

use crate::bump::compact_bump;
use crate::dd::Dd;
use crate::quad::{
    integrate_adaptive_real, integrate_gl, oscillatory_integral, subintervals_below_rate, OscOpts,
    C64,
};
#[cfg(test)]
use crate::quad::integrate_adaptive;
use crate::symbol::DispersionSymbol;
use crate::{Error, Result};

use core::f64::consts::PI;

/// Tabulation range of `g`: the table covers [0, XI_MAX] (g is even).
const XI_MAX: f64 = 200.0;
/// Table step.
const DR: f64 = 1.0 / 256.0;

/// Phase-assembly precision for [`packet_evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    /// Plain `f64` phases; rejected once the phase magnitude exceeds 10¹²
    /// (≈10⁻⁴ rad reduction error).
    Double,
    /// Double-double phases; good to ~10²⁶ radians.
    Extended,
}

impl Precision {
    /// Largest phase magnitude (radians) this precision reduces mod 2π with
    /// at most ~10⁻⁴ rad of error.
    pub fn phase_budget(self) -> f64 {
        match self {
            Precision::Double => 1e12,
            Precision::Extended => 1e26,
        }
    }
}

/// Quadrature controls for packet evolution.
#[derive(Debug, Clone, Copy)]
pub struct PacketQuad {
    pub precision: Precision,
    /// Absolute tolerance for the clipped oscillatory tails.
    pub tol: f64,
}

impl Default for PacketQuad {
    fn default() -> Self {
        PacketQuad {
            precision: Precision::Extended,
            tol: 1e-6,
        }
    }
}

/// The packet profile transform `g = ǧ^` tabulated on [0, XI_MAX], plus the
/// derived constants of the divergence construction.
#[derive(Debug, Clone)]
pub struct BumpProfile {
    table: Vec<f64>,
    /// Signed `∫_ℝ g` over the tabulated range (tail bounded separately).
    pub integral: f64,
    /// `∫_ℝ |g|`, including the certified tail bound.
    pub abs_integral: f64,
    /// Certified bound on `∫_{|ξ| > XI_MAX} |g|` (geometric-envelope
    /// extrapolation from the last tabulated blocks).
    pub tail_bound: f64,
    /// `max |g| = g(0)`.
    pub max_abs: f64,
    /// Total variation `∫ |g'|` over ℝ (from table differences).
    pub variation: f64,
    /// Smallest tabulated threshold with `∫_{|ξ| ≥ L} |g| ≤ |∫g|/100`.
    pub l: f64,
    /// Mass constant `c₀ = |∫g|/4`.
    pub c0: f64,
    /// Scale ceiling `v₀ = 1/(2L)`.
    pub v0: f64,
}

impl BumpProfile {
    /// Tabulation range of the transform.
    pub fn xi_max(&self) -> f64 {
        XI_MAX
    }

    /// `g(ξ)` by cubic interpolation of the table (even in ξ; 0 beyond the
    /// tabulated range, an error bounded by `tail_bound`'s integrand).
    pub fn g_at(&self, xi: f64) -> f64 {
        let a = libm::fabs(xi);
        if a >= XI_MAX {
            return 0.0;
        }
        let u = a / DR;
        let n = self.table.len();
        // 4-point Lagrange stencil centred on u.
        let i = (libm::floor(u) as usize).min(n - 2);
        let i0 = i.saturating_sub(1).min(n - 4);
        let t = u - i0 as f64;
        let mut acc = 0.0;
        for j in 0..4 {
            let mut lj = self.table[i0 + j];
            for m in 0..4 {
                if m != j {
                    lj *= (t - m as f64) / (j as f64 - m as f64);
                }
            }
            acc += lj;
        }
        acc
    }

    /// The space-side profile ǧ.
    pub fn profile(&self, x: f64) -> f64 {
        compact_bump(x)
    }

    /// The focusing floor `c₀/(2π)`: `|B_{t(x)} f_v(x)|` stays above this for
    /// admissible scales and offsets.
    pub fn focusing_floor(&self) -> f64 {
        self.c0 / (2.0 * PI)
    }

    /// The witness floor `c₀/(4π)`: what survives of the focusing floor after
    /// subtracting the off-scale terms of a packet sum.
    pub fn witness_floor(&self) -> f64 {
        self.c0 / (4.0 * PI)
    }

    /// van der Corput amplitude constant `2(max|g| + ∫|g'|)`: with phase
    /// slope ≥ γ throughout a monotone-slope region, the oscillatory
    /// integral of `g` over it is at most this constant divided by γ.
    fn vdc_const(&self) -> f64 {
        2.0 * (self.max_abs + self.variation)
    }
}

/// Tabulate `g(ξ) = 2∫₀¹ cos(xξ) ǧ(x) dx` and derive the packet constants.
pub fn make_bump() -> BumpProfile {
    let n = (XI_MAX / DR) as usize; // even number of intervals
    let mut table = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let xi = k as f64 * DR;
        table.push(g_by_quadrature(xi));
    }

    // Simpson over [0, XI_MAX] for the signed integral.
    let simpson = |f: &dyn Fn(usize) -> f64| {
        let mut acc = f(0) + f(n);
        for k in 1..n {
            acc += f(k) * if k % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc * DR / 3.0
    };
    let half_integral = simpson(&|k| table[k]);
    let half_abs = simpson(&|k| libm::fabs(table[k]));

    // Tail beyond the table: the envelope of |g| decays super-polynomially;
    // bound it geometrically from the last two 10-wide blocks.
    let block = (10.0 / DR) as usize;
    let max_in = |lo: usize, hi: usize| {
        let mut m = 0.0_f64;
        for k in lo..hi {
            m = m.max(libm::fabs(table[k]));
        }
        m
    };
    let m1 = max_in(n - 2 * block, n - block);
    let m2 = max_in(n - block, n + 1);
    let rho = m2 / m1;
    let tail_bound = if rho < 1.0 {
        2.0 * 10.0 * m2 * rho / (1.0 - rho)
    } else {
        f64::INFINITY
    };

    let integral = 2.0 * half_integral;
    let abs_integral = 2.0 * half_abs + tail_bound;

    // Smallest tabulated threshold L with ∫_{|ξ|≥L} |g| ≤ |∫g|/100. The
    // cumulative tail is accumulated right-to-left by Simpson pairs, so L
    // lands on an even table index.
    let target = libm::fabs(integral) / 100.0;
    let mut tail = tail_bound / 2.0; // one-sided
    let mut l = XI_MAX;
    let mut k = n;
    while k >= 2 {
        tail += DR / 3.0
            * (libm::fabs(table[k]) + 4.0 * libm::fabs(table[k - 1]) + libm::fabs(table[k - 2]));
        k -= 2;
        if 2.0 * tail <= target {
            l = k as f64 * DR;
        } else {
            break;
        }
    }

    let mut variation = 0.0;
    for k in 1..=n {
        variation += libm::fabs(table[k] - table[k - 1]);
    }
    variation *= 2.0;

    let max_abs = table[0];
    let c0 = libm::fabs(integral) / 4.0;
    BumpProfile {
        table,
        integral,
        abs_integral,
        tail_bound,
        max_abs,
        variation,
        l,
        c0,
        v0: 1.0 / (2.0 * l),
    }
}

/// `g(ξ) = 2∫₀¹ cos(xξ) ǧ(x) dx` by composite Gauss–Legendre with panels
/// short enough that each sees at most ~6 radians of oscillation.
fn g_by_quadrature(xi: f64) -> f64 {
    let panels = (libm::ceil(xi / 6.0) as usize).max(8);
    let mut acc = 0.0;
    for p in 0..panels {
        let a = p as f64 / panels as f64;
        let b = (p + 1) as f64 / panels as f64;
        acc += integrate_gl(
            |x| C64::new(libm::cos(x * xi) * compact_bump(x), 0.0),
            a,
            b,
            16,
        )
        .re;
    }
    2.0 * acc
}

fn check_scale(v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::InvalidParam {
            what: "packet scale",
            detail: alloc::format!("v must lie in (0,1), got {v}"),
        });
    }
    Ok(())
}

/// The packet itself: `f_v(x) = e^{−ix/v²} ǧ(x/v)` (supported on |x| ≤ v).
pub fn packet_space(bump: &BumpProfile, v: f64, x: f64) -> Result<C64> {
    check_scale(v)?;
    let amp = bump.profile(x / v);
    if amp == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let inv_v = Dd::from_f64(v).recip();
    let phase = (Dd::from_f64(-x) * inv_v * inv_v).rem_2pi();
    Ok(C64::from_polar(amp, phase))
}

/// The packet's Fourier transform: `f̂_v(ξ) = v·g(vξ + 1/v)` (real-valued).
pub fn packet_spectrum(bump: &BumpProfile, v: f64, xi: f64) -> Result<f64> {
    check_scale(v)?;
    Ok(v * bump.g_at(v * xi + 1.0 / v))
}

/// Evolve a packet and evaluate at one point: `B_t f_v(x)`.
///
/// The returned value carries an absolute error of at most a few times
/// `quad.tol` (clipped van der Corput tails) plus the Filon panel error.
pub fn packet_evolve(
    bump: &BumpProfile,
    v: f64,
    x: f64,
    t: f64,
    quad: &PacketQuad,
) -> Result<C64> {
    check_scale(v)?;
    if !(x.is_finite() && t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParam {
            what: "packet evolution point",
            detail: alloc::format!("need finite x and t >= 0, got x={x}, t={t}"),
        });
    }
    let sym = DispersionSymbol::BOUSSINESQ;
    let iv = 1.0 / v;

    // Clip to where the phase slope is manageable. F'(η) = x/v + (t/v)·Φ'(b)
    // is nondecreasing in η (Φ'' ≥ 0 and the kink jump at η = 1/v is upward),
    // so outside the windows the discarded mass obeys the van der Corput
    // bound vdc_const/cap ≤ 2·tol per side.
    let cap = (bump.vdc_const() / quad.tol).max(1.0);
    let rate = |eta: f64| x * iv + t * iv * sym.phi_prime((eta - iv) * iv);
    let windows = subintervals_below_rate(rate, -XI_MAX, XI_MAX, cap, 1024);
    if windows.is_empty() {
        return Ok(C64::new(0.0, 0.0));
    }

    // Phase magnitude budget, checked only on the windows actually
    // integrated (|F| ≤ |x/v|·|d| + t·Φ(b), both pieces extremal at window
    // endpoints).
    let mag_at = |eta: f64| {
        let d = eta - iv;
        libm::fabs(x * iv * d) + t * sym.phi(d * iv)
    };
    let mut mag = 0.0_f64;
    for &(a, b) in &windows {
        mag = mag.max(mag_at(a)).max(mag_at(b));
    }
    let budget = quad.precision.phase_budget();
    if mag > budget {
        return Err(Error::PhasePrecision {
            magnitude: mag,
            budget,
        });
    }

    let inv_v = Dd::from_f64(v).recip();
    let lam = Dd::from_f64(x) * inv_v;
    let phase_dd = |eta: f64| {
        let d = Dd::from_f64(eta) - inv_v;
        lam * d + sym.phi_of_dd(d * inv_v) * t
    };
    let phase_f64 = |eta: f64| {
        let d = eta - iv;
        Dd::from_f64(x * iv * d + t * sym.phi(d * iv))
    };
    let opts = OscOpts {
        resolution: 0.25,
        slow_tol: 0.5,
        max_panels: 4_000_000,
    };
    let amp = |eta: f64| C64::new(bump.g_at(eta), 0.0);
    let mut acc = C64::new(0.0, 0.0);
    for &(a, b) in &windows {
        // Split at the phase corner η = 1/v (Φ's kink) so every Filon panel
        // sees a smooth phase.
        let mut cuts = [a, b, b];
        if iv > a && iv < b {
            cuts = [a, iv, b];
        }
        for w in 0..2 {
            let (wa, wb) = (cuts[w], cuts[w + 1]);
            if wa >= wb {
                continue;
            }
            acc += match quad.precision {
                Precision::Extended => oscillatory_integral(amp, phase_dd, wa, wb, &opts)?,
                Precision::Double => oscillatory_integral(amp, phase_f64, wa, wb, &opts)?,
            };
        }
    }
    Ok(acc / (2.0 * PI))
}

/// `‖f_v‖_{H^s}` in the convention `‖f‖²_{H^s} = ∫(1+ξ²)^s |f̂(ξ)|² dξ`
/// (so s = 0 gives `√(2π)·‖f‖_{L²}`), computed by adaptive quadrature in
/// the packet frequency variable.
pub fn packet_hs_norm(bump: &BumpProfile, v: f64, s: f64) -> Result<f64> {
    check_scale(v)?;
    if !s.is_finite() {
        return Err(Error::NonFinite {
            what: "Sobolev exponent",
        });
    }
    let iv = 1.0 / v;
    let integrand = |eta: f64| {
        let g = bump.g_at(eta);
        let xi = (eta - iv) * iv;
        libm::pow(1.0 + xi * xi, s) * g * g
    };
    // Tolerance relative to the inner integral's own magnitude ~ (1/v⁴)^s.
    let rough = libm::pow(1.0 + iv * iv * iv * iv, s) * 0.3;
    let sq = v * integrate_adaptive_real(integrand, -XI_MAX, XI_MAX, rough * 1e-10);
    Ok(libm::sqrt(sq))
}

/// The largest dyadic offset ceiling δ ≤ 1/4 for which the focusing floor
/// `|B_{t(x)} f_v(x)| ≥ c₀/(2π)` holds on a probe grid of scales
/// {v₀/2, v₀/4, v₀/8} and offsets x ∈ (0, δ].
pub fn calibrate_delta(bump: &BumpProfile, quad: &PacketQuad) -> Result<f64> {
    let sym = DispersionSymbol::BOUSSINESQ;
    let floor = bump.focusing_floor();
    'candidates: for k in 2..=6 {
        let delta = libm::pow(2.0, -(k as f64));
        for j in 1..=3 {
            let v = bump.v0 * libm::pow(2.0, -(j as f64));
            for i in 1..=6 {
                let x = delta * i as f64 / 6.0;
                let t = sym.focusing_time(x, v)?;
                let b = packet_evolve(bump, v, x, t, quad)?;
                if b.norm() < floor {
                    continue 'candidates;
                }
            }
        }
        return Ok(delta);
    }
    Err(Error::InvalidParam {
        what: "offset ceiling calibration",
        detail: alloc::string::String::from(
            "focusing floor fails for every dyadic delta down to 2^-6",
        ),
    })
}

/// Suite of the three packet constants measured over probe grids:
/// the `H^s` scaling ratio, the dispersive-decay ratio `|B|√t/v`, and the
/// small-time arrival ratio `|B|v⁴/t` (both evaluated off the packet
/// support, x ∈ (0, δ)).
#[derive(Debug, Clone)]
pub struct SuiteReport {
    /// `max_v ‖f_v‖_{H^s} / v^{1/2−2s}`.
    pub hs_ratio: f64,
    /// `max_{v,t,x} |B_t f_v(x)|·√t/v` with its argmax.
    pub dispersion: f64,
    pub dispersion_at: (f64, f64, f64),
    /// `max_{v,t,x} |B_t f_v(x)|·v⁴/t` with its argmax.
    pub arrival: f64,
    pub arrival_at: (f64, f64, f64),
}

#[allow(clippy::too_many_arguments)]
pub fn packet_bound_suite(
    bump: &BumpProfile,
    s: f64,
    delta: f64,
    v_grid: &[f64],
    t_grid: &[f64],
    x_grid: &[f64],
    quad: &PacketQuad,
) -> Result<SuiteReport> {
    if !(s > 0.0 && s < 0.25) {
        return Err(Error::InvalidParam {
            what: "suite regularity",
            detail: alloc::format!("s must lie in (0, 1/4), got {s}"),
        });
    }
    let v_cap = bump.v0.min(delta / 4.0);
    if v_grid.is_empty()
        || v_grid.iter().any(|&v| !(v > 0.0 && v < v_cap))
        || t_grid.is_empty()
        || t_grid.iter().any(|&t| !(t > 0.0))
        || x_grid.is_empty()
        || x_grid.iter().any(|&x| !(x > 0.0 && x < delta))
    {
        return Err(Error::InvalidParam {
            what: "suite grids",
            detail: alloc::format!(
                "need v in (0, {v_cap}), t > 0, x in (0, {delta}), all nonempty"
            ),
        });
    }
    let mut hs_ratio = 0.0_f64;
    let mut dispersion = 0.0_f64;
    let mut dispersion_at = (0.0, 0.0, 0.0);
    let mut arrival = 0.0_f64;
    let mut arrival_at = (0.0, 0.0, 0.0);
    for &v in v_grid {
        let norm = packet_hs_norm(bump, v, s)?;
        hs_ratio = hs_ratio.max(norm / libm::pow(v, 0.5 - 2.0 * s));
        for &t in t_grid {
            for &x in x_grid {
                let b = packet_evolve(bump, v, x, t, quad)?.norm();
                let disp = b * libm::sqrt(t) / v;
                if disp > dispersion {
                    dispersion = disp;
                    dispersion_at = (v, t, x);
                }
                let arr = b * v * v * v * v / t;
                if arr > arrival {
                    arrival = arr;
                    arrival_at = (v, t, x);
                }
            }
        }
    }
    Ok(SuiteReport {
        hs_ratio,
        dispersion,
        dispersion_at,
        arrival,
        arrival_at,
    })
}

/// Parameters of the divergent packet cascade.
#[derive(Debug, Clone, Copy)]
pub struct CascadeSpec {
    /// Sobolev regularity; must lie in (0, 1/4).
    pub s: f64,
    /// First scale; must lie in (0, min(v₀, δ/4)).
    pub v1: f64,
    /// Number of packets K.
    pub depth: usize,
    /// Offset ceiling (witness offsets live in (δ/2, δ)).
    pub delta: f64,
}

/// The built cascade: scales `v_k = 2^{−k} v_{k−1}²`, their `H^s` norms, and
/// the summability certificate.
#[derive(Debug, Clone)]
pub struct Cascade {
    pub spec: CascadeSpec,
    /// Scales v₁..v_K.
    pub v: Vec<f64>,
    /// `‖f_{v_k}‖_{H^s}`.
    pub norms: Vec<f64>,
    /// `Σ_k ‖f_{v_k}‖_{H^s}` (finite ⇒ the packet sum lies in H^s).
    pub total_norm: f64,
    /// `max_k norms[k]·2^{k(1/2−2s)}`: bounds the norms by a convergent
    /// geometric sequence.
    pub cert_bound: f64,
}

pub fn build_cascade(bump: &BumpProfile, spec: CascadeSpec) -> Result<Cascade> {
    if !(spec.s > 0.0 && spec.s < 0.25) {
        return Err(Error::InvalidParam {
            what: "cascade regularity",
            detail: alloc::format!("s must lie in (0, 1/4), got {}", spec.s),
        });
    }
    if !(spec.delta > 0.0 && spec.delta <= 0.25) {
        return Err(Error::InvalidParam {
            what: "cascade offset ceiling",
            detail: alloc::format!("delta must lie in (0, 1/4], got {}", spec.delta),
        });
    }
    let v_cap = bump.v0.min(spec.delta / 4.0);
    if !(spec.v1 > 0.0 && spec.v1 < v_cap) {
        return Err(Error::InvalidParam {
            what: "cascade first scale",
            detail: alloc::format!("v1 must lie in (0, {v_cap}), got {}", spec.v1),
        });
    }
    if spec.depth == 0 {
        return Err(Error::InvalidParam {
            what: "cascade depth",
            detail: alloc::string::String::from("depth must be at least 1"),
        });
    }
    let mut v = Vec::with_capacity(spec.depth);
    v.push(spec.v1);
    for k in 2..=spec.depth {
        let prev = v[k - 2];
        v.push(libm::pow(2.0, -(k as f64)) * prev * prev);
    }
    let decay = 0.5 - 2.0 * spec.s;
    let mut norms = Vec::with_capacity(spec.depth);
    let mut total = 0.0;
    let mut cert = 0.0_f64;
    for (i, &vk) in v.iter().enumerate() {
        let norm = packet_hs_norm(bump, vk, spec.s)?;
        total += norm;
        cert = cert.max(norm * libm::pow(2.0, (i + 1) as f64 * decay));
        norms.push(norm);
    }
    Ok(Cascade {
        spec,
        v,
        norms,
        total_norm: total,
        cert_bound: cert,
    })
}

/// One focusing level of the witness scan.
#[derive(Debug, Clone)]
pub struct WitnessRow {
    /// Which packet focuses (1-based).
    pub k: usize,
    /// `min_x |Σ_j B_{t_k(x)} f_{v_j}(x)|` over the probed offsets.
    pub min_value: f64,
    /// `max_x Σ_{j<k} |B_{t_k} f_{v_j}(x)|` (coarser packets: gone by
    /// support).
    pub early_max: f64,
    /// `max_x Σ_{j>k} |B_{t_k} f_{v_j}(x)|` (finer packets: dispersed).
    pub late_max: f64,
    /// min_value ≥ witness floor.
    pub pass: bool,
}

/// The witness scan: at each packet's focusing times the whole sum stays
/// above `c₀/(4π)`, which forces divergence of `sup_t |B_t f|` as k → ∞.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    pub floor: f64,
    /// Probed offsets, in (δ/2, δ).
    pub xs: Vec<f64>,
    pub rows: Vec<WitnessRow>,
    /// `values[k−1][i] = |Σ_j B_{t_k(x_i)} f_{v_j}(x_i)|`.
    pub values: Vec<Vec<f64>>,
    /// Smallest k from which every deeper row passes.
    pub k0: Option<usize>,
}

pub fn divergence_witness(
    bump: &BumpProfile,
    cascade: &Cascade,
    x_count: usize,
    quad: &PacketQuad,
) -> Result<WitnessReport> {
    if x_count == 0 {
        return Err(Error::InvalidParam {
            what: "witness offsets",
            detail: alloc::string::String::from("x_count must be at least 1"),
        });
    }
    let sym = DispersionSymbol::BOUSSINESQ;
    let delta = cascade.spec.delta;
    let floor = bump.witness_floor();
    let xs: Vec<f64> = (0..x_count)
        .map(|i| delta * (0.5 + 0.5 * (i as f64 + 0.5) / x_count as f64))
        .collect();
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for k in 1..=cascade.v.len() {
        let mut min_value = f64::INFINITY;
        let mut early_max = 0.0_f64;
        let mut late_max = 0.0_f64;
        let mut row_values = Vec::with_capacity(xs.len());
        for &x in &xs {
            let t = sym.focusing_time(x, cascade.v[k - 1])?;
            let mut total = C64::new(0.0, 0.0);
            let mut early = 0.0;
            let mut late = 0.0;
            for (j, &vj) in cascade.v.iter().enumerate() {
                let b = packet_evolve(bump, vj, x, t, quad)?;
                total += b;
                if j + 1 < k {
                    early += b.norm();
                } else if j + 1 > k {
                    late += b.norm();
                }
            }
            min_value = min_value.min(total.norm());
            early_max = early_max.max(early);
            late_max = late_max.max(late);
            row_values.push(total.norm());
        }
        rows.push(WitnessRow {
            k,
            min_value,
            early_max,
            late_max,
            pass: min_value >= floor,
        });
        values.push(row_values);
    }
    let k0 = (1..=rows.len()).find(|&k| rows[k - 1..].iter().all(|r| r.pass));
    Ok(WitnessReport {
        floor,
        xs,
        rows,
        values,
        k0,
    })
}
