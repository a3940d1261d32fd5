//! Compatibility domain of a [`SpinMap`].
//!
//! The map fixes only the part `a⊥` of `a = ⟨ΣΞ₁⟩` perpendicular to the axis
//! `ẑ` of `W₁⁻¹W₂`. A mean spin `sv` is in the domain when some `a_z` makes
//! `r₁,₂ = (sv ± a)/2` a valid state, i.e. `|r₁| + |r₂| ≤ 1`. In the plane of
//! constant `s_z = sv·ẑ` this is the ellipse
//!
//! ```text
//! d₁ + d₂ ≤ 2√(1 − s_z²)
//! ```
//!
//! with `d₁`, `d₂` the distances from the in-plane projection of `sv` to the
//! foci `±a⊥`. Equivalently `|r₁⊥| + |r₂⊥| ≤ √(1 − (z₁ + z₂)²)` with
//! `|r⊥| = √(|r|² − z²)`.

use super::{SpinMap, BOUNDARY_SLACK};
use crate::rotor::ThreeVector;

/// Grid resolution of [`exists_state_oracle`].
pub const ORACLE_GRID_POINTS: usize = 2001;

/// Closed-form (ellipse) membership test. Degenerate maps accept the whole
/// unit ball.
pub fn compat_check(m: &SpinMap, sv: ThreeVector) -> bool {
    if !sv.is_finite() || sv.norm() > 1.0 + BOUNDARY_SLACK {
        return false;
    }
    let Some(z) = m.z_axis() else {
        return true;
    };
    let s_z = sv.dot(&z);
    let sv_perp = sv.reject_from(&z);
    let a_perp = m.correlation_perp();
    let d1 = (sv_perp - a_perp).norm();
    let d2 = (sv_perp + a_perp).norm();
    d1 + d2 <= 2.0 * (1.0 - s_z * s_z).max(0.0).sqrt() + BOUNDARY_SLACK
}

/// Brute-force membership test: scans `a_z ∈ [−1, 1]` on a uniform grid plus
/// the analytic minimizer of `|r₁| + |r₂|` and reports whether any choice
/// gives a valid state.
pub fn exists_state_oracle(sv: ThreeVector, a_perp: ThreeVector, z: ThreeVector) -> bool {
    debug_assert!(
        a_perp.dot(&z).abs() < 1e-10,
        "a_perp must be perpendicular to z"
    );
    let total = |a_z: f64| {
        let a = a_perp + z * a_z;
        ((sv + a) * 0.5).norm() + ((sv - a) * 0.5).norm()
    };
    let admissible = |a_z: f64| total(a_z) <= 1.0 + BOUNDARY_SLACK;

    let s_z = sv.dot(&z);
    let sv_perp = sv.reject_from(&z);
    let d1 = (sv_perp - a_perp).norm();
    let d2 = (sv_perp + a_perp).norm();
    let analytic = if d1 + d2 > 0.0 {
        s_z * (d2 - d1) / (d1 + d2)
    } else {
        0.0
    };
    if admissible(analytic.clamp(-1.0, 1.0)) {
        return true;
    }
    let step = 2.0 / (ORACLE_GRID_POINTS - 1) as f64;
    (0..ORACLE_GRID_POINTS).any(|i| admissible(-1.0 + step * i as f64))
}

/// The quantities entering the domain inequality for the state
/// reconstructed from `sv` and the map's full `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainQuantities {
    pub r1_len: f64,
    pub r2_len: f64,
    pub z1: f64,
    pub z2: f64,
}

impl DomainQuantities {
    /// `r₁,₂ = (sv ± a)/2`, `z₁,₂ = ẑ·r₁,₂`. `None` for degenerate maps.
    pub fn of(m: &SpinMap, sv: ThreeVector) -> Option<Self> {
        let z = m.z_axis()?;
        let r1 = (sv + m.correlation()) * 0.5;
        let r2 = (sv - m.correlation()) * 0.5;
        Some(Self {
            r1_len: r1.norm(),
            r2_len: r2.norm(),
            z1: r1.dot(&z),
            z2: r2.dot(&z),
        })
    }

    /// `√(|r₁|² − z₁²) + √(|r₂|² − z₂²)`.
    pub fn lhs(&self) -> f64 {
        (self.r1_len.powi(2) - self.z1.powi(2)).max(0.0).sqrt()
            + (self.r2_len.powi(2) - self.z2.powi(2)).max(0.0).sqrt()
    }

    /// `√(1 − (z₁ + z₂)²)`.
    pub fn rhs(&self) -> f64 {
        (1.0 - (self.z1 + self.z2).powi(2)).max(0.0).sqrt()
    }

    pub fn satisfied(&self) -> bool {
        self.lhs() <= self.rhs() + BOUNDARY_SLACK
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.r1_len - other.r1_len)
            .abs()
            .max((self.r2_len - other.r2_len).abs())
            .max((self.z1 - other.z1).abs())
            .max((self.z2 - other.z2).abs())
    }
}
