//! Uniform-grid signals, their Fourier transforms, Sobolev norms, and the
//! low/high frequency band split.
//!
//! Conventions: `f̂(ξ) = ∫ e^{−ixξ} f(x) dx` and
//! `f(x) = (2π)^{−1} ∫ e^{ixξ} f̂(ξ) dξ`, so Parseval reads
//! `∫|f|² dx = (2π)^{−1} ∫|f̂|² dξ`. A signal lives at
//! `x_j = −X/2 + jΔx` (Δx = X/N) and its spectrum at `ξ_k = 2πk/X`,
//! `k = −N/2 … N/2−1`, stored in ascending-ξ order.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex;

use crate::bump::band_bump;
use crate::quad::C64;
use crate::{Error, Result};

/// A complex-valued function sampled on a uniform symmetric grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    /// Half of the domain length X.
    pub half_width: f64,
    /// Samples at `x_j = −X/2 + jΔx`.
    pub values: Vec<C64>,
}

/// Fourier coefficients on the dual grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    /// Half of the *spatial* domain length X (the grids are dual).
    pub half_width: f64,
    /// Coefficients at `ξ_k = 2πk/X`, k = −N/2 … N/2−1, ascending.
    pub coeffs: Vec<C64>,
}

/// Sobolev norm parameters: order `s` with inhomogeneous weight
/// `(1+ξ²)^s` or homogeneous weight `|ξ|^{2s}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevParams {
    pub s: f64,
    pub homogeneous: bool,
}

impl SobolevParams {
    pub fn inhomogeneous(s: f64) -> Self {
        SobolevParams {
            s,
            homogeneous: false,
        }
    }
    pub fn homogeneous(s: f64) -> Self {
        SobolevParams {
            s,
            homogeneous: true,
        }
    }

    /// The frequency weight w(ξ).
    pub fn weight(&self, xi: f64) -> f64 {
        if self.homogeneous {
            libm::pow(libm::fabs(xi), 2.0 * self.s)
        } else {
            libm::pow(1.0 + xi * xi, self.s)
        }
    }
}

fn check_len(len: usize) -> Result<()> {
    if len < 8 || !len.is_power_of_two() {
        Err(Error::BadGridLength { len })
    } else {
        Ok(())
    }
}

fn check_finite(values: &[C64], what: &'static str) -> Result<()> {
    if values.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite { what })
    }
}

impl SampledSignal {
    pub fn new(half_width: f64, values: Vec<C64>) -> Result<Self> {
        check_len(values.len())?;
        check_finite(&values, "signal samples")?;
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::InvalidParam {
                what: "signal half-width",
                detail: alloc::format!("{half_width}"),
            });
        }
        Ok(SampledSignal { half_width, values })
    }

    /// Sample a function of x on the grid.
    pub fn from_fn<F: FnMut(f64) -> C64>(half_width: f64, n: usize, mut f: F) -> Result<Self> {
        check_len(n)?;
        let dx = 2.0 * half_width / n as f64;
        let values = (0..n)
            .map(|j| f(-half_width + j as f64 * dx))
            .collect::<Vec<_>>();
        SampledSignal::new(half_width, values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn dx(&self) -> f64 {
        2.0 * self.half_width / self.len() as f64
    }

    /// Grid point x_j.
    pub fn x(&self, j: usize) -> f64 {
        -self.half_width + j as f64 * self.dx()
    }

    /// Discrete L² norm `(Σ|f_j|²Δx)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.values.iter().map(|z| z.norm_sqr()).sum();
        libm::sqrt(s * self.dx())
    }

    /// Forward transform to the dual frequency grid.
    pub fn transform(&self) -> Spectrum {
        let n = self.len();
        let mut buf = self.values.clone();
        fft_in_place(&mut buf, -1.0);
        // f̂(ξ_k) = Δx·(−1)^k·DFT_k with DFT index k mod N.
        let dx = self.dx();
        let mut coeffs = vec![C64::new(0.0, 0.0); n];
        for (m, slot) in coeffs.iter_mut().enumerate() {
            let k = m as isize - (n / 2) as isize;
            let idx = k.rem_euclid(n as isize) as usize;
            let sign = if k & 1 == 0 { 1.0 } else { -1.0 };
            *slot = buf[idx] * (dx * sign);
        }
        Spectrum {
            half_width: self.half_width,
            coeffs,
        }
    }
}

impl Spectrum {
    pub fn new(half_width: f64, coeffs: Vec<C64>) -> Result<Self> {
        check_len(coeffs.len())?;
        check_finite(&coeffs, "spectrum coefficients")?;
        Ok(Spectrum { half_width, coeffs })
    }

    /// Sample a function of ξ on the dual grid.
    pub fn from_fn<F: FnMut(f64) -> C64>(half_width: f64, n: usize, mut f: F) -> Result<Self> {
        check_len(n)?;
        let dxi = core::f64::consts::PI / half_width;
        let coeffs = (0..n)
            .map(|m| f((m as isize - (n / 2) as isize) as f64 * dxi))
            .collect::<Vec<_>>();
        Spectrum::new(half_width, coeffs)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Frequency spacing Δξ = 2π/X.
    pub fn dxi(&self) -> f64 {
        core::f64::consts::PI / self.half_width
    }

    /// Grid frequency ξ_m (m is the storage index, ascending).
    pub fn xi(&self, m: usize) -> f64 {
        (m as isize - (self.len() / 2) as isize) as f64 * self.dxi()
    }

    /// Discrete `(∫|f̂|²dξ)^{1/2}`.
    pub fn l2_norm(&self) -> f64 {
        let s: f64 = self.coeffs.iter().map(|z| z.norm_sqr()).sum();
        libm::sqrt(s * self.dxi())
    }

    /// Inverse transform back to the spatial grid.
    pub fn inverse(&self) -> SampledSignal {
        let n = self.len();
        // f(x_j) = (1/X)·Σ_k (−1)^k f̂_k e^{+2πijk/N}
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for (m, &c) in self.coeffs.iter().enumerate() {
            let k = m as isize - (n / 2) as isize;
            let idx = k.rem_euclid(n as isize) as usize;
            let sign = if k & 1 == 0 { 1.0 } else { -1.0 };
            buf[idx] = c * sign;
        }
        fft_in_place(&mut buf, 1.0);
        let x = 2.0 * self.half_width;
        for z in buf.iter_mut() {
            *z /= x;
        }
        SampledSignal {
            half_width: self.half_width,
            values: buf,
        }
    }

    /// Sobolev norm `(∫ w(ξ)|f̂(ξ)|² dξ)^{1/2}` by the trapezoid rule.
    pub fn sobolev_norm(&self, params: &SobolevParams) -> Result<f64> {
        let zero_idx = self.len() / 2;
        if params.homogeneous && params.s < 0.0 && self.coeffs[zero_idx].norm_sqr() != 0.0 {
            return Err(Error::InvalidParam {
                what: "homogeneous Sobolev norm",
                detail: alloc::format!(
                    "s = {} < 0 requires a vanishing ξ=0 coefficient, got |c| = {}",
                    params.s,
                    self.coeffs[zero_idx].norm()
                ),
            });
        }
        let n = self.len();
        let mut acc = 0.0;
        for (m, c) in self.coeffs.iter().enumerate() {
            let p = c.norm_sqr();
            if p == 0.0 {
                continue; // avoids 0·∞ at ξ=0 for homogeneous weights
            }
            let w = params.weight(self.xi(m));
            let trap = if m == 0 || m == n - 1 { 0.5 } else { 1.0 };
            acc += trap * w * p;
        }
        Ok(libm::sqrt(acc * self.dxi()))
    }

    /// Split into low (`f̂·φ`) and high (`f̂·(1−φ)`) parts with the smooth
    /// band bump φ (1 on |ξ|≤1, 0 on |ξ|≥2). The parts sum to the input
    /// exactly, coefficient by coefficient.
    pub fn band_split(&self) -> (Spectrum, Spectrum) {
        let mut low = self.clone();
        let mut high = self.clone();
        for m in 0..self.len() {
            let phi = band_bump(self.xi(m));
            low.coeffs[m] = self.coeffs[m] * phi;
            high.coeffs[m] = self.coeffs[m] - low.coeffs[m];
        }
        (low, high)
    }
}

/// In-place radix-2 Cooley–Tukey FFT; `sign` is the exponent sign
/// (−1 forward, +1 inverse, no normalization).
fn fft_in_place(buf: &mut [C64], sign: f64) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * core::f64::consts::PI / len as f64;
        let wlen = Complex::from_polar(1.0, ang);
        let mut i = 0;
        while i < n {
            let mut w = C64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = buf[i + k];
                let v = buf[i + k + len / 2] * w;
                buf[i + k] = u + v;
                buf[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::CounterRng;
    use approx::assert_relative_eq;
    use core::f64::consts::PI;
    use proptest::prelude::*;

    fn random_signal(seed: u64, half_width: f64, n: usize) -> SampledSignal {
        let rng = CounterRng::new(seed);
        SampledSignal::new(
            half_width,
            (0..n)
                .map(|j| C64::new(rng.normal(2 * j as u64), rng.normal(2 * j as u64 + 1)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn constant_signal_concentrates_at_zero() {
        let sig = SampledSignal::from_fn(PI, 8, |_| C64::new(1.0, 0.0)).unwrap();
        let spec = sig.transform();
        for m in 0..8 {
            let expect = if spec.xi(m) == 0.0 { 2.0 * PI } else { 0.0 };
            assert!(
                (spec.coeffs[m] - expect).norm() < 1e-12,
                "m={m}: {:?}",
                spec.coeffs[m]
            );
        }
    }

    #[test]
    fn single_mode_lands_on_its_frequency() {
        // e^{ix} on X=2π → coefficient 2π at ξ=1, zero elsewhere; the
        // oracle is the Riemann sum of the defining integral, which the
        // transform reproduces exactly on the grid.
        let n = 64;
        let sig = SampledSignal::from_fn(PI, n, |x| C64::from_polar(1.0, x)).unwrap();
        let spec = sig.transform();
        for m in 0..n {
            // Riemann-sum oracle of ∫e^{−ixξ_m}e^{ix}dx over the grid.
            let mut oracle = C64::new(0.0, 0.0);
            for j in 0..n {
                let x = sig.x(j);
                oracle += C64::from_polar(1.0, x * (1.0 - spec.xi(m))) * sig.dx();
            }
            assert!(
                (spec.coeffs[m] - oracle).norm() < 1e-10,
                "m={m}: fft {:?} vs oracle {:?}",
                spec.coeffs[m],
                oracle
            );
            let expect = if (spec.xi(m) - 1.0).abs() < 1e-12 {
                2.0 * PI
            } else {
                0.0
            };
            assert!((spec.coeffs[m] - expect).norm() < 1e-9, "m={m}");
        }
    }

    #[test]
    fn roundtrip_and_parseval_on_random_signals() {
        for seed in 0..100 {
            let sig = random_signal(seed, 4.0, 128);
            let spec = sig.transform();
            let back = spec.inverse();
            let mut max_err = 0.0_f64;
            let mut max_val = 0.0_f64;
            for (a, b) in sig.values.iter().zip(&back.values) {
                max_err = max_err.max((a - b).norm());
                max_val = max_val.max(a.norm());
            }
            assert!(max_err <= 1e-12 * max_val.max(1.0), "seed {seed}");
            // Parseval in the fixed convention.
            let space = sig.l2_norm();
            let freq = spec.l2_norm() / libm::sqrt(2.0 * PI);
            assert_relative_eq!(space, freq, max_relative = 1e-10);
        }
    }

    #[test]
    fn sobolev_indicator_closed_form() {
        // f̂ = χ_{[1,2]}, s=1/4 homogeneous: norm² = ∫₁²ξ^{1/2}dξ = (2^{3/2}−1)/(3/2).
        let exact = libm::sqrt((libm::pow(2.0, 1.5) - 1.0) / 1.5);
        assert_relative_eq!(exact, 1.10406, max_relative = 1e-5);
        let half_width = 256.0 * PI; // Δξ = 1/256
        let n = 4096;
        // Trapezoid-consistent indicator: boundary samples at 1/√2 so the
        // trapezoid rule sees exactly ∫₁² of the weight.
        let spec = Spectrum::from_fn(half_width, n, |xi| {
            if (1.0..=2.0).contains(&xi) {
                if xi == 1.0 || xi == 2.0 {
                    C64::new(1.0 / libm::sqrt(2.0), 0.0)
                } else {
                    C64::new(1.0, 0.0)
                }
            } else {
                C64::new(0.0, 0.0)
            }
        })
        .unwrap();
        let norm = spec
            .sobolev_norm(&SobolevParams::homogeneous(0.25))
            .unwrap();
        assert_relative_eq!(norm, exact, max_relative = 1e-4);
        // The strict indicator agrees to the trapezoid's O(Δξ) boundary error.
        let strict = Spectrum::from_fn(half_width, n, |xi| {
            C64::new(if (1.0..=2.0).contains(&xi) { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let norm2 = strict
            .sobolev_norm(&SobolevParams::homogeneous(0.25))
            .unwrap();
        assert_relative_eq!(norm2, exact, max_relative = 1e-2);
    }

    #[test]
    fn sobolev_zero_order_is_l2_and_homogeneity() {
        // Band-limit the spectrum so the trapezoid end-weights are inert.
        let mut spec = random_signal(7, 8.0, 256).transform();
        let n = spec.len();
        for m in 0..n {
            if m < n / 4 || m >= 3 * n / 4 {
                spec.coeffs[m] = C64::new(0.0, 0.0);
            }
        }
        let s0 = spec.sobolev_norm(&SobolevParams::homogeneous(0.0)).unwrap();
        assert_relative_eq!(s0, spec.l2_norm(), max_relative = 1e-10);
        let mut tripled = spec.clone();
        for c in tripled.coeffs.iter_mut() {
            *c *= 3.0;
        }
        let s = SobolevParams::inhomogeneous(0.37);
        assert_relative_eq!(
            tripled.sobolev_norm(&s).unwrap(),
            3.0 * spec.sobolev_norm(&s).unwrap(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn sobolev_rejects_nonzero_mean_for_negative_homogeneous() {
        let spec = Spectrum::from_fn(4.0, 16, |_| C64::new(1.0, 0.0)).unwrap();
        assert!(spec.sobolev_norm(&SobolevParams::homogeneous(-0.3)).is_err());
        // With the mean removed it is accepted.
        let mut ok = spec;
        let mid = ok.len() / 2;
        ok.coeffs[mid] = C64::new(0.0, 0.0);
        assert!(ok.sobolev_norm(&SobolevParams::homogeneous(-0.3)).is_ok());
    }

    #[test]
    fn band_split_partition_and_plateaus() {
        let half_width = 16.0 * PI; // Δξ = 1/16, band edge at ξ=±8... plenty
        let n = 512;
        // Supported inside |ξ|≤1 → high ≡ 0.
        let low_only = Spectrum::from_fn(half_width, n, |xi| {
            C64::new(if xi.abs() <= 1.0 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let (_, high) = low_only.band_split();
        assert!(high.coeffs.iter().all(|c| c.norm() == 0.0));
        // Supported in |ξ|≥2 → low ≡ 0.
        let high_only = Spectrum::from_fn(half_width, n, |xi| {
            C64::new(if xi.abs() >= 2.0 { 1.0 } else { 0.0 }, 0.0)
        })
        .unwrap();
        let (low, _) = high_only.band_split();
        assert!(low.coeffs.iter().all(|c| c.norm() == 0.0));
        // Exact partition on a constant spectrum.
        let ones = Spectrum::from_fn(half_width, n, |_| C64::new(1.0, 0.0)).unwrap();
        let (lo, hi) = ones.band_split();
        for m in 0..n {
            assert_eq!(lo.coeffs[m] + hi.coeffs[m], ones.coeffs[m]);
        }
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(matches!(
            SampledSignal::new(1.0, vec![C64::new(1.0, 0.0); 12]),
            Err(Error::BadGridLength { len: 12 })
        ));
        assert!(SampledSignal::new(1.0, vec![C64::new(f64::NAN, 0.0); 8]).is_err());
        assert!(SampledSignal::new(-1.0, vec![C64::new(1.0, 0.0); 8]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn band_split_is_linear(seed_a in 0u64..1000, seed_b in 0u64..1000,
                                a in -3.0f64..3.0, b in -3.0f64..3.0) {
            let f = random_signal(seed_a, 8.0, 64).transform();
            let g = random_signal(seed_b, 8.0, 64).transform();
            let mut combo = f.clone();
            for m in 0..combo.len() {
                combo.coeffs[m] = f.coeffs[m] * a + g.coeffs[m] * b;
            }
            let (cl, ch) = combo.band_split();
            let (fl, fh) = f.band_split();
            let (gl, gh) = g.band_split();
            for m in 0..combo.len() {
                let scale = combo.coeffs[m].norm().max(1.0);
                prop_assert!((cl.coeffs[m] - (fl.coeffs[m]*a + gl.coeffs[m]*b)).norm() <= 1e-14*scale);
                prop_assert!((ch.coeffs[m] - (fh.coeffs[m]*a + gh.coeffs[m]*b)).norm() <= 1e-14*scale);
            }
        }

        #[test]
        fn roundtrip_identity_property(seed in 0u64..10_000) {
            let sig = random_signal(seed, 2.0, 32);
            let back = sig.transform().inverse();
            for (a, b) in sig.values.iter().zip(&back.values) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
