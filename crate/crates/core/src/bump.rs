//! Smooth compactly supported cutoff functions.
//!
//! All cutoffs here are built from the C^∞ seed `e(x) = exp(−1/x)` for
//! `x > 0` (0 otherwise), so every bump is genuinely smooth rather than a
//! polynomial surrogate — the decay measurements downstream are sensitive
//! to cutoff smoothness.

/// `exp(−1/x)` for x > 0, else 0.
#[inline]
fn seed(x: f64) -> f64 {
    if x > 0.0 {
        libm::exp(-1.0 / x)
    } else {
        0.0
    }
}

/// Smooth monotone step: 0 for u ≤ 0, 1 for u ≥ 1.
#[inline]
pub fn smooth_step(u: f64) -> f64 {
    let a = seed(u);
    let b = seed(1.0 - u);
    if a == 0.0 {
        0.0
    } else if b == 0.0 {
        1.0
    } else {
        a / (a + b)
    }
}

/// Smooth band cutoff: 1 on |ξ| ≤ 1, 0 on |ξ| ≥ 2.
#[inline]
pub fn band_bump(xi: f64) -> f64 {
    smooth_step(2.0 - libm::fabs(xi))
}

/// The band cutoff rescaled to level N: 1 on |ξ| ≤ N, 0 on |ξ| ≥ 2N.
#[inline]
pub fn band_bump_at(xi: f64, n: f64) -> f64 {
    band_bump(xi / n)
}

/// Smooth annulus bump: support [1,2], identically 1 on [5/4, 7/4].
#[inline]
pub fn annulus_bump(r: f64) -> f64 {
    smooth_step((r - 1.0) * 4.0) * smooth_step((2.0 - r) * 4.0)
}

/// The compactly supported profile `exp(−1/(1−x²))` on (−1,1), 0 outside.
#[inline]
pub fn compact_bump(x: f64) -> f64 {
    let t = 1.0 - x * x;
    if t > 0.0 {
        libm::exp(-1.0 / t)
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_endpoints_and_symmetry() {
        assert_eq!(smooth_step(-0.5), 0.0);
        assert_eq!(smooth_step(0.0), 0.0);
        assert_eq!(smooth_step(1.0), 1.0);
        assert_eq!(smooth_step(2.0), 1.0);
        assert!((smooth_step(0.5) - 0.5).abs() < 1e-15);
        for k in 1..10 {
            let u = k as f64 / 10.0;
            assert!((smooth_step(u) + smooth_step(1.0 - u) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn band_bump_plateau_and_support() {
        assert_eq!(band_bump(0.0), 1.0);
        assert_eq!(band_bump(1.0), 1.0);
        assert_eq!(band_bump(-0.7), 1.0);
        assert_eq!(band_bump(2.0), 0.0);
        assert_eq!(band_bump(-3.0), 0.0);
        let mid = band_bump(1.5);
        assert!(mid > 0.0 && mid < 1.0);
        assert_eq!(band_bump_at(30.0, 32.0), 1.0);
        assert_eq!(band_bump_at(65.0, 32.0), 0.0);
    }

    #[test]
    fn annulus_bump_shape() {
        assert_eq!(annulus_bump(0.9), 0.0);
        assert_eq!(annulus_bump(1.0), 0.0);
        assert_eq!(annulus_bump(1.25), 1.0);
        assert_eq!(annulus_bump(1.75), 1.0);
        assert_eq!(annulus_bump(2.0), 0.0);
        assert!(annulus_bump(1.1) > 0.0 && annulus_bump(1.1) < 1.0);
    }

    #[test]
    fn compact_bump_values() {
        assert!((compact_bump(0.0) - libm::exp(-1.0)).abs() < 1e-16);
        assert_eq!(compact_bump(1.0), 0.0);
        assert_eq!(compact_bump(-1.2), 0.0);
        assert!((compact_bump(0.5) - compact_bump(-0.5)).abs() == 0.0);
    }
}
