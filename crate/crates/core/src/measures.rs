//! Fractal (α-dimensional) measures on [−1, 1]: Cantor-type atom families,
//! the growth constant `c_α(μ) = sup r^{−α} μ(B(x,r))`, the α-energy
//! `I_α(μ)`, a dyadic energy majorant, the μ-weighted maximal ratio, and the
//! lower-bound scaling scan.
//!
//! All measures are finite atom collections; below the resolution floor
//! (the minimal pair distance) a discrete measure cannot represent continuum
//! scaling, so ball scans stop there.

use alloc::vec::Vec;

use crate::fit::{fit_power_law, PowerLawFit};
use crate::grid::{SobolevParams, Spectrum};
use crate::propagator::eval_at;
use crate::quad::C64;
use crate::symbol::DispersionSymbol;
use crate::{Error, Result};

/// How a measure was generated (serialization metadata).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MeasureKind {
    Cantor { ratio: f64, depth: u32 },
    Uniform { count: usize },
    Custom,
}

/// A purely atomic measure supported in [−1, 1].
#[derive(Debug, Clone)]
pub struct DiscreteMeasure {
    pub atoms: Vec<f64>,
    pub weights: Vec<f64>,
    pub kind: MeasureKind,
    /// Atoms sorted ascending with cumulative weights, for O(log) ball mass.
    sorted: Vec<(f64, f64)>,
    prefix: Vec<f64>,
}

impl DiscreteMeasure {
    /// Build from raw atoms/weights. Requires atoms in [−1,1] and positive
    /// weights; the total mass is *not* forced to 1 (scaling constructions
    /// use non-probability mass), but the named generators all produce
    /// probability measures.
    pub fn from_parts(atoms: Vec<f64>, weights: Vec<f64>, kind: MeasureKind) -> Result<Self> {
        if atoms.is_empty() || atoms.len() != weights.len() {
            return Err(Error::InvalidParam {
                what: "discrete measure",
                detail: alloc::format!(
                    "need matching nonempty atom/weight lists, got {}/{}",
                    atoms.len(),
                    weights.len()
                ),
            });
        }
        for (&x, &w) in atoms.iter().zip(&weights) {
            if !((-1.0..=1.0).contains(&x) && w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParam {
                    what: "discrete measure",
                    detail: alloc::format!("atom {x} (weight {w}) outside [-1,1] x (0,inf)"),
                });
            }
        }
        let mut sorted: Vec<(f64, f64)> = atoms.iter().copied().zip(weights.iter().copied()).collect();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut prefix = Vec::with_capacity(sorted.len() + 1);
        prefix.push(0.0);
        let mut acc = 0.0;
        for &(_, w) in &sorted {
            acc += w;
            prefix.push(acc);
        }
        Ok(DiscreteMeasure {
            atoms,
            weights,
            kind,
            sorted,
            prefix,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn total_mass(&self) -> f64 {
        *self.prefix.last().unwrap()
    }

    /// Mass of the closed ball B(x, r).
    pub fn ball_mass(&self, x: f64, r: f64) -> f64 {
        let lo = self.sorted.partition_point(|&(a, _)| a < x - r);
        let hi = self.sorted.partition_point(|&(a, _)| a <= x + r);
        self.prefix[hi] - self.prefix[lo]
    }

    /// Smallest distance between distinct atoms (the resolution floor).
    pub fn min_pair_distance(&self) -> f64 {
        let mut best = f64::INFINITY;
        for w in self.sorted.windows(2) {
            let d = w[1].0 - w[0].0;
            if d > 0.0 {
                best = best.min(d);
            }
        }
        best
    }

    /// Equal-weight atomization of the uniform probability measure dx/2.
    pub fn uniform(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::InvalidParam {
                what: "uniform measure",
                detail: alloc::string::String::from("count must be positive"),
            });
        }
        let atoms: Vec<f64> = (0..count)
            .map(|i| -1.0 + (2.0 * i as f64 + 1.0) / count as f64)
            .collect();
        let weights = alloc::vec![1.0 / count as f64; count];
        Self::from_parts(atoms, weights, MeasureKind::Uniform { count })
    }
}

/// Equal-weight atoms at the centers of the depth-level construction
/// intervals of the ratio-Cantor set, affinely mapped onto [−1, 1].
///
/// The natural dimension of this family is `α = log 2 / log(1/ratio)`.
pub fn cantor_measure(ratio: f64, depth: u32) -> Result<DiscreteMeasure> {
    if !(ratio > 0.0 && ratio <= 0.5) {
        return Err(Error::InvalidParam {
            what: "Cantor ratio",
            detail: alloc::format!("must lie in (0, 1/2], got {ratio}"),
        });
    }
    if depth > 20 {
        return Err(Error::InvalidParam {
            what: "Cantor depth",
            detail: alloc::format!("must be <= 20, got {depth}"),
        });
    }
    let count = 1usize << depth;
    let mut atoms = Vec::with_capacity(count);
    for code in 0..count {
        // Left endpoint on [0,1]: each set bit chooses the right child.
        let mut left = 0.0;
        let mut scale = 1.0;
        for level in 0..depth {
            if code >> level & 1 == 1 {
                left += scale * (1.0 - ratio);
            }
            scale *= ratio;
        }
        let center = left + scale / 2.0;
        atoms.push(2.0 * center - 1.0);
    }
    let weights = alloc::vec![1.0 / count as f64; count];
    DiscreteMeasure::from_parts(atoms, weights, MeasureKind::Cantor { ratio, depth })
}

/// The natural exponent of a Cantor measure, `log 2 / log(1/ratio)`.
pub fn cantor_alpha(ratio: f64) -> f64 {
    libm::log(2.0) / libm::log(1.0 / ratio)
}

/// Measured scaling statistics of a measure.
#[derive(Debug, Clone, Copy)]
pub struct MeasureStats {
    pub alpha: f64,
    /// `max` over atoms x and dyadic radii r ∈ [r_min, 2] of `r^{−α} μ(B(x,r))`.
    pub c_alpha: f64,
    /// `Σ_{i≠j} w_i w_j |x_i − x_j|^{−α}`.
    pub i_alpha: f64,
    /// Validity floor of the ball scan.
    pub r_min: f64,
}

pub fn measure_stats(mu: &DiscreteMeasure, alpha: f64, r_min: f64) -> Result<MeasureStats> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::InvalidParam {
            what: "measure exponent",
            detail: alloc::format!("alpha must lie in (0, 1], got {alpha}"),
        });
    }
    if !(r_min > 0.0 && r_min <= 2.0) {
        return Err(Error::InvalidParam {
            what: "ball-scan floor",
            detail: alloc::format!("r_min must lie in (0, 2], got {r_min}"),
        });
    }
    let mut c_alpha = 0.0_f64;
    let mut r = r_min;
    while r <= 2.0 {
        let ra = libm::pow(r, -alpha);
        for &(x, _) in &mu.sorted {
            c_alpha = c_alpha.max(ra * mu.ball_mass(x, r));
        }
        r *= 2.0;
    }
    Ok(MeasureStats {
        alpha,
        c_alpha,
        i_alpha: energy(mu, alpha),
        r_min,
    })
}

/// The α-energy double sum with self-pairs excluded.
fn energy(mu: &DiscreteMeasure, alpha: f64) -> f64 {
    let n = mu.sorted.len();
    let mut acc = 0.0;
    for i in 0..n {
        let (xi, wi) = mu.sorted[i];
        for j in i + 1..n {
            let (xj, wj) = mu.sorted[j];
            let d = xj - xi;
            if d > 0.0 {
                acc += 2.0 * wi * wj * libm::pow(d, -alpha);
            }
        }
    }
    acc
}

/// The direct (1−2s)-energy next to its dyadic majorant
/// `∬ Σ_j 2^{(j+1)(1−2s)} μ(B(y, 2^{−j}) \ {y}) dμ(y)`.
#[derive(Debug, Clone, Copy)]
pub struct DyadicEnergy {
    pub direct: f64,
    pub majorant: f64,
}

/// Compare the (1−2s)-energy against its dyadic-decomposition majorant.
/// Requires `α > 1−2s` (the regime where the energy is controlled by
/// `c_α`) and `s ∈ [1/4, 1/2]`.
pub fn dyadic_energy_bound(mu: &DiscreteMeasure, s: f64, alpha: f64) -> Result<DyadicEnergy> {
    if !(0.25..=0.5).contains(&s) {
        return Err(Error::InvalidParam {
            what: "energy regularity",
            detail: alloc::format!("s must lie in [1/4, 1/2], got {s}"),
        });
    }
    let sigma = 1.0 - 2.0 * s;
    if !(alpha > sigma) {
        return Err(Error::InvalidParam {
            what: "energy exponent regime",
            detail: alloc::format!("need alpha > 1-2s, got alpha={alpha}, 1-2s={sigma}"),
        });
    }
    let direct = energy(mu, sigma);
    // Dyadic majorant: a pair at distance ρ ∈ (2^{−j−1}, 2^{−j}] contributes
    // ρ^{−σ} ≤ 2^{(j+1)σ} and is contained in the radius-2^{−j} ball, so
    // summing 2^{(j+1)σ}·(ball mass less the self atom) over j = −1..J with
    // 2^{−J} below the minimal pair distance dominates every pair.
    let j_max = libm::ceil(-libm::log2(mu.min_pair_distance())) as i32;
    let mut majorant = 0.0;
    for j in -1..=j_max {
        let r = libm::pow(2.0, -j as f64);
        let factor = libm::pow(2.0, (j + 1) as f64 * sigma);
        for &(x, w) in &mu.sorted {
            majorant += w * factor * (mu.ball_mass(x, r) - w);
        }
    }
    Ok(DyadicEnergy { direct, majorant })
}

/// The measured LHS/RHS ratio of the μ-weighted maximal inequality:
/// `Σ_i w_i · max_{t∈ts, N∈ns} |B_t^N f(x_i)| / (√c_α(μ) · ‖f‖_{H^s})`.
///
/// Atom evaluations go through the direct spectral sum ([`eval_at`]), never
/// grid interpolation.
pub fn mu_maximal_ratio(
    f: &Spectrum,
    mu: &DiscreteMeasure,
    stats: &MeasureStats,
    sym: &DispersionSymbol,
    t_sequence: &[f64],
    n_set: &[f64],
    s: f64,
) -> Result<f64> {
    if t_sequence.is_empty() || n_set.is_empty() {
        return Err(Error::InvalidParam {
            what: "maximal-ratio scan",
            detail: alloc::format!(
                "need nonempty t sequence and N set, got {}/{}",
                t_sequence.len(),
                n_set.len()
            ),
        });
    }
    let norm = f.sobolev_norm(&SobolevParams::inhomogeneous(s))?;
    if norm == 0.0 {
        return Ok(0.0);
    }
    let mut numerator = 0.0;
    for &(x, w) in &mu.sorted {
        let mut sup = 0.0_f64;
        for &t in t_sequence {
            for &n in n_set {
                sup = sup.max(eval_at(f, sym, t, Some(n), x).norm());
            }
        }
        numerator += w * sup;
    }
    Ok(numerator / (libm::sqrt(stats.c_alpha) * norm))
}

/// One row of the lower-bound scaling scan.
#[derive(Debug, Clone, Copy)]
pub struct LowerBoundRow {
    pub n: f64,
    /// `Σ_i w_i sup_t |B_t^N f(x_i)|` for the focusing construction.
    pub lhs: f64,
    /// `√c_α(μ_N) · ‖f_N‖_{H^s}`.
    pub rhs: f64,
}

/// The scan result: per-N rows plus log-log fits of both sides.
#[derive(Debug, Clone)]
pub struct LowerBoundScan {
    pub rows: Vec<LowerBoundRow>,
    pub lhs_fit: PowerLawFit,
    pub rhs_fit: PowerLawFit,
    /// `‖f_N‖_{H^s}` alone, for the s+1/2 slope check.
    pub norm_fit: PowerLawFit,
}

/// Scaling scan of the focusing construction: `f̂_N = χ_{[−N,N]}`,
/// `μ_N` = the uniform probability measure on [−1/N, 1/N] (the natural-scale
/// `N·χ` measure divided by its mass 2, which shifts both sides by the same
/// constant), evaluated at times `t ∈ (0,1)` including the focusing value
/// `N^{−2}`.
///
/// LHS should grow like N (slope ≥ 1−ε) while the norm grows like
/// `N^{s+1/2}` and `√c_α` like `N^{α/2}`, so the ratio blows up whenever
/// `α < 1 − 2s`.
pub fn lower_bound_scan(
    n_list: &[f64],
    alpha: f64,
    s: f64,
    half_width: f64,
    grid_len: usize,
    atoms_per_measure: usize,
) -> Result<LowerBoundScan> {
    if n_list.len() < 4 {
        return Err(Error::InvalidParam {
            what: "lower-bound scan",
            detail: alloc::format!("need >= 4 truncation levels, got {}", n_list.len()),
        });
    }
    let sym = DispersionSymbol::BOUSSINESQ;
    let mut rows = Vec::with_capacity(n_list.len());
    let mut norms = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let band = Spectrum::from_fn(half_width, grid_len, |xi| {
            C64::new(if libm::fabs(xi) <= n { 1.0 } else { 0.0 }, 0.0)
        })?;
        let grid_max = band.xi(grid_len - 1);
        if n > grid_max {
            return Err(Error::NyquistViolation {
                band_edge: n,
                grid_max,
            });
        }
        let m = atoms_per_measure.max(4);
        let atoms: Vec<f64> = (0..m)
            .map(|i| (-1.0 + (2.0 * i as f64 + 1.0) / m as f64) / n)
            .collect();
        let weights = alloc::vec![1.0 / m as f64; m];
        let mu = DiscreteMeasure::from_parts(atoms, weights, MeasureKind::Custom)?;
        let stats = measure_stats(&mu, alpha, mu.min_pair_distance())?;
        // Times: a coarse log grid of (0,1) plus the focusing time N^{−2}.
        let mut ts = alloc::vec![1.0 / (n * n)];
        for k in 0..8 {
            ts.push(libm::pow(10.0, -(k as f64) - 0.5));
        }
        let mut lhs = 0.0;
        for &(x, w) in &mu.sorted {
            let mut sup = 0.0_f64;
            for &t in &ts {
                sup = sup.max(eval_at(&band, &sym, t, Some(n), x).norm());
            }
            lhs += w * sup;
        }
        let norm = band.sobolev_norm(&SobolevParams::inhomogeneous(s))?;
        norms.push(norm);
        rows.push(LowerBoundRow {
            n,
            lhs,
            rhs: libm::sqrt(stats.c_alpha) * norm,
        });
    }
    let ns: Vec<f64> = rows.iter().map(|r| r.n).collect();
    let lhs: Vec<f64> = rows.iter().map(|r| r.lhs).collect();
    let rhs: Vec<f64> = rows.iter().map(|r| r.rhs).collect();
    let lhs_fit = fit_power_law(&ns, &lhs)?;
    let rhs_fit = fit_power_law(&ns, &rhs)?;
    let norm_fit = fit_power_law(&ns, &norms)?;
    Ok(LowerBoundScan {
        rows,
        lhs_fit,
        rhs_fit,
        norm_fit,
    })
}
