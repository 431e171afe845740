//! Double-double ("compensated") arithmetic for oscillatory phases.
//!
//! Phases like `(x/v)(ξ−1/v) + tΦ((1/v)|ξ−1/v|)` reach magnitudes around
//! 10¹⁹ radians for deep packet recursions. Reducing such a phase mod 2π in
//! plain `f64` loses every significant digit, so phases are accumulated as
//! unevaluated sums `hi + lo` of two doubles (~31 significant digits) and
//! reduced mod 2π with a multi-pass rounded-quotient scheme.

use core::f64::consts::PI;
use core::ops::{Add, Mul, Neg, Sub};

/// 2π to double-double precision.
const TWO_PI: Dd = Dd {
    hi: 6.283185307179586,
    lo: 2.4492935982947064e-16,
};

/// A double-double number: the value is `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

/// Error-free sum of two doubles (Knuth two-sum).
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Error-free sum assuming `|a| ≥ |b|`.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let err = b - (s - a);
    (s, err)
}

/// Error-free product via fused multiply-add.
#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let err = libm::fma(a, b, -p);
    (p, err)
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    #[inline]
    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// The exact product of two doubles, as a double-double.
    #[inline]
    pub fn prod(a: f64, b: f64) -> Dd {
        let (hi, lo) = two_prod(a, b);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    /// Double-double square root (one Newton step on the f64 seed).
    pub fn sqrt(self) -> Dd {
        if self.hi <= 0.0 {
            return Dd::ZERO;
        }
        let s = libm::sqrt(self.hi);
        // r = s + (x − s²)/(2s), with x − s² computed error-free.
        let s2 = Dd::prod(s, s);
        let diff = self - s2;
        let corr = diff.to_f64() / (2.0 * s);
        let (hi, lo) = quick_two_sum(s, corr);
        Dd { hi, lo }
    }

    /// Double-double reciprocal (one Newton refinement of the f64 seed).
    pub fn recip(self) -> Dd {
        let q0 = 1.0 / self.hi;
        // r = 1 − self·q0, computed without cancellation loss.
        let r = (Dd::from_f64(1.0) - self * q0).to_f64();
        let q1 = r * q0;
        let (hi, lo) = quick_two_sum(q0, q1);
        Dd { hi, lo }
    }

    /// Reduce mod 2π into (−π, π], accurate to ~|self|·10⁻³² radians.
    ///
    /// Each pass subtracts `round(hi/2π) · 2π` in double-double arithmetic.
    /// For arguments ≫ 2^53 the rounded quotient is not an exact integer,
    /// which only means the first pass leaves a remainder of up to
    /// ~|self|·ε radians; subsequent passes finish the reduction.
    pub fn rem_2pi(self) -> f64 {
        let mut r = self;
        for _ in 0..3 {
            let q = libm::round(r.hi / TWO_PI.hi);
            if q == 0.0 {
                break;
            }
            r = r - TWO_PI * q;
        }
        let mut x = r.to_f64();
        // Final nudge into (−π, π].
        while x > PI {
            x -= 2.0 * PI;
        }
        while x <= -PI {
            x += 2.0 * PI;
        }
        x
    }
}

impl Add for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let e = e + self.lo + rhs.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn add(self, rhs: f64) -> Dd {
        let (s, e) = two_sum(self.hi, rhs);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn sub(self, rhs: f64) -> Dd {
        self + (-rhs)
    }
}

impl Neg for Dd {
    type Output = Dd;
    #[inline]
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + self.hi * rhs.lo + self.lo * rhs.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    #[inline]
    fn mul(self, rhs: f64) -> Dd {
        let (p, e) = two_prod(self.hi, rhs);
        let e = e + self.lo * rhs;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_product_splits() {
        // (1 + 2⁻³⁰)(1 − 2⁻³⁰) = 1 − 2⁻⁶⁰ exactly; hi rounds to 1 and lo
        // must carry the −2⁻⁶⁰ that a plain f64 product would lose.
        let eps = (2.0_f64).powi(-30);
        let p = Dd::prod(1.0 + eps, 1.0 - eps);
        assert_eq!(p.hi, 1.0);
        assert_eq!(p.lo, -(2.0_f64).powi(-60));
    }

    #[test]
    fn sum_keeps_small_terms() {
        let s = Dd::from_f64(1e16) + 1.0 - 1e16;
        assert_eq!(s.to_f64(), 1.0);
    }

    #[test]
    fn sqrt_two_is_accurate() {
        let r = Dd::from_f64(2.0).sqrt();
        let err = r * r - 2.0;
        assert!(err.to_f64().abs() < 1e-30);
    }

    #[test]
    fn recip_refines_past_f64() {
        for &x in &[3.0, 1.0 / 3.0, 1.7e-10, 8.5e11] {
            let r = Dd::from_f64(x).recip();
            let resid = (r * x - 1.0).to_f64().abs();
            assert!(resid < 1e-30, "x={x}: residual {resid}");
        }
    }

    #[test]
    fn rem_2pi_small_arguments() {
        assert!((Dd::from_f64(PI / 3.0).rem_2pi() - PI / 3.0).abs() < 1e-15);
        assert!((Dd::from_f64(2.0 * PI + 0.25).rem_2pi() - 0.25).abs() < 1e-14);
        assert!((Dd::from_f64(-0.25).rem_2pi() + 0.25).abs() < 1e-15);
    }

    #[test]
    fn rem_2pi_huge_argument() {
        // 2^60 + 0.5 radians: build it exactly in dd, reduce, compare with a
        // reduction done by exact integer arithmetic on 2^60 mod 2π.
        let big = Dd::from_f64((1u64 << 60) as f64) + 0.5;
        let got = big.rem_2pi();
        // 2^60 mod 2π computed with 128-bit rational arithmetic offline:
        // 2^60 = q·2π + r with r = 4.121865314039859 (accurate to 1e−12).
        let expect = {
            let r = 4.121865314039859_f64 + 0.5;
            if r > PI {
                r - 2.0 * PI
            } else {
                r
            }
        };
        assert!(
            (got - expect).abs() < 1e-9,
            "got {got}, expected {expect}"
        );
    }

    #[test]
    fn rem_2pi_consistent_under_shift() {
        // Adding an exact multiple of 2π (in dd) must not change the residue.
        let x = Dd::from_f64(1.0e19) + 0.7;
        let shifted = x + TWO_PI * 1024.0;
        assert!((x.rem_2pi() - shifted.rem_2pi()).abs() < 1e-10);
    }
}
