//! The dispersion phase `Φ(ξ) = |ξ|√(1+ξ²)` (and the `|ξ|²` comparison
//! symbol), derivatives, stationary points, and packet focusing times.

use crate::dd::Dd;
use crate::{Error, Result};

/// Which dispersion relation a propagator uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymbolKind {
    /// `Φ(ξ) = |ξ|√(1+ξ²)`.
    Boussinesq,
    /// `Φ(ξ) = |ξ|²` (comparison symbol).
    Schrodinger,
}

/// A dispersion symbol with closed-form derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DispersionSymbol {
    pub kind: SymbolKind,
}

impl DispersionSymbol {
    pub const BOUSSINESQ: DispersionSymbol = DispersionSymbol {
        kind: SymbolKind::Boussinesq,
    };
    pub const SCHRODINGER: DispersionSymbol = DispersionSymbol {
        kind: SymbolKind::Schrodinger,
    };

    /// Φ(ξ), extended evenly to ξ < 0.
    #[inline]
    pub fn phi(&self, xi: f64) -> f64 {
        let a = libm::fabs(xi);
        match self.kind {
            SymbolKind::Boussinesq => a * libm::sqrt(1.0 + a * a),
            SymbolKind::Schrodinger => a * a,
        }
    }

    /// Φ'(ξ); odd extension (Φ'(−ξ) = −Φ'(ξ)).
    #[inline]
    pub fn phi_prime(&self, xi: f64) -> f64 {
        let a = libm::fabs(xi);
        let v = match self.kind {
            SymbolKind::Boussinesq => (1.0 + 2.0 * a * a) / libm::sqrt(1.0 + a * a),
            SymbolKind::Schrodinger => 2.0 * a,
        };
        if xi < 0.0 {
            -v
        } else {
            v
        }
    }

    /// Φ''(ξ); even extension.
    #[inline]
    pub fn phi_second(&self, xi: f64) -> f64 {
        let a = libm::fabs(xi);
        match self.kind {
            SymbolKind::Boussinesq => {
                let w = 1.0 + a * a;
                (3.0 * a + 2.0 * a * a * a) / (w * libm::sqrt(w))
            }
            SymbolKind::Schrodinger => 2.0,
        }
    }

    /// Φ(ξ) in double-double precision, for oscillatory phase assembly.
    pub fn phi_dd(&self, xi: f64) -> Dd {
        let a = libm::fabs(xi);
        let a_dd = Dd::from_f64(a);
        match self.kind {
            SymbolKind::Boussinesq => {
                let sq = (Dd::prod(a, a) + 1.0).sqrt();
                a_dd * sq
            }
            SymbolKind::Schrodinger => Dd::prod(a, a),
        }
    }

    /// Φ applied to a double-double argument, for phases whose *argument*
    /// already needs compensated precision (e.g. `(ξ − 1/v)/v` with tiny v).
    pub fn phi_of_dd(&self, b: Dd) -> Dd {
        let a = b.abs();
        match self.kind {
            SymbolKind::Boussinesq => a * ((a * a) + 1.0).sqrt(),
            SymbolKind::Schrodinger => a * a,
        }
    }

    /// All three values at once.
    pub fn eval(&self, xi: f64) -> (f64, f64, f64) {
        (self.phi(xi), self.phi_prime(xi), self.phi_second(xi))
    }

    /// The unique ξ₀ ≥ 0 with Φ'(ξ₀) = slope (group-velocity inversion).
    ///
    /// For the Boussinesq symbol Φ' maps [0,∞) onto [1,∞) monotonically, so
    /// slopes below 1 have no stationary point and are rejected.
    pub fn stationary_point(&self, slope: f64) -> Result<f64> {
        if !slope.is_finite() {
            return Err(Error::NonFinite {
                what: "stationary point slope",
            });
        }
        let min_slope = match self.kind {
            SymbolKind::Boussinesq => 1.0,
            SymbolKind::Schrodinger => 0.0,
        };
        if slope < min_slope {
            return Err(Error::NoStationaryPoint { slope });
        }
        if self.kind == SymbolKind::Schrodinger {
            return Ok(slope / 2.0);
        }
        // Newton with a bisection safeguard on [0, hi]; Φ'(ξ) ≥ 2ξ for the
        // Boussinesq symbol, so ξ₀ ≤ slope/2 ≤ max(1, slope).
        let mut lo = 0.0_f64;
        let mut hi = slope.max(1.0);
        let mut x = 0.5 * hi;
        for _ in 0..200 {
            let f = self.phi_prime(x) - slope;
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let df = self.phi_second(x);
            let mut next = if df > 0.0 { x - f / df } else { 0.5 * (lo + hi) };
            if !(next > lo && next < hi) {
                next = 0.5 * (lo + hi);
            }
            if libm::fabs(next - x) <= 1e-15 * (1.0 + x) {
                x = next;
                break;
            }
            x = next;
        }
        Ok(x)
    }

    /// The packet focusing time `t(x) = x / Φ'(1/v²)`.
    ///
    /// Returned from the closed form `x·v²·√(v⁴+1)/(v⁴+2)`; the quotient
    /// form is checked against it in tests.
    pub fn focusing_time(&self, x: f64, v: f64) -> Result<f64> {
        if !(x > 0.0 && v > 0.0) {
            return Err(Error::InvalidParam {
                what: "focusing time",
                detail: alloc::format!("requires x>0, v>0 (got x={x}, v={v})"),
            });
        }
        match self.kind {
            SymbolKind::Boussinesq => {
                let v2 = v * v;
                let v4 = v2 * v2;
                Ok(x * v2 * libm::sqrt(v4 + 1.0) / (v4 + 2.0))
            }
            SymbolKind::Schrodinger => Ok(x / self.phi_prime(1.0 / (v * v))),
        }
    }
}
