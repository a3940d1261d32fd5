//! Spin density matrices of a particle whose momentum takes two values, and
//! the map a Lorentz boost induces on them.
//!
//! The spin state is split by momentum value as
//!
//! ```text
//! ρ  = ρ̃₁ + ρ̃₂
//! ρ̃₁ = ½(q + r₁·Σ)      ρ̃₂ = ½(1 − q + r₂·Σ)
//! ```
//!
//! so `⟨Σ⟩ = r₁ + r₂` and the spin-momentum correlation is `⟨ΣΞ₁⟩ = r₁ − r₂`.
//! A boost rotates `r₁` by `W₁ = W(Λ, p₁)` and `r₂` by `W₂ = W(Λ, p₂)`. On the
//! level of the mean spin alone this is the affine map of [`SpinMap`], which
//! is only defined on a compatibility domain ([`domain`]) and is completely
//! positive only in special cases ([`cp`]).

pub mod cp;
pub mod domain;

use nalgebra::Matrix2;
use num_complex::Complex64;
use thiserror::Error;

use crate::kinematics::{wigner_halpern, Boost, KinematicsError, MomentumSpec};
use crate::rotor::{pauli, Rotation, ThreeVector};

pub use cp::{choi_cp_oracle, choi_matrix, choi_min_eigenvalue, is_cp_criterion};
pub use domain::{compat_check, exists_state_oracle, DomainQuantities};

/// Additive slack on every positivity and domain inequality.
pub const BOUNDARY_SLACK: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpinMapError {
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("|a| = {0} exceeds 1")]
    CorrelationTooLarge(f64),
    #[error("spin vector {0:.6} lies outside the compatibility domain of the map")]
    DomainError(ThreeVector),
    #[error("|r1| = {0} exceeds 1/2")]
    RadiusTooLarge(f64),
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
}

/// A 2×2 Hermitian matrix `½(w·I + r·Σ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2 {
    m: Matrix2<Complex64>,
}

impl DensityMatrix2 {
    pub fn from_bloch(weight: f64, r: ThreeVector) -> Self {
        let [s1, s2, s3] = pauli();
        let m = (Matrix2::identity() * Complex64::from(weight)
            + s1 * Complex64::from(r.x)
            + s2 * Complex64::from(r.y)
            + s3 * Complex64::from(r.z))
            * Complex64::from(0.5);
        Self { m }
    }

    pub fn from_matrix(m: Matrix2<Complex64>) -> Self {
        Self { m }
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        (self.m[(0, 0)] + self.m[(1, 1)]).re
    }

    /// `Tr(Σ ρ)`.
    pub fn bloch(&self) -> ThreeVector {
        let [s1, s2, s3] = pauli();
        let tr = |s: Matrix2<Complex64>| (s * self.m).trace().re;
        ThreeVector::new(tr(s1), tr(s2), tr(s3))
    }

    pub fn hermiticity_error(&self) -> f64 {
        (self.m - self.m.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Eigenvalues of the Hermitian part, ascending, from trace and
    /// determinant.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let a = self.m[(0, 0)].re;
        let d = self.m[(1, 1)].re;
        let b = 0.5 * (self.m[(0, 1)] + self.m[(1, 0)].conj());
        let mean = 0.5 * (a + d);
        let rad = (0.5 * (a - d)).hypot(b.norm());
        [mean - rad, mean + rad]
    }

    /// `|r| ≤ w`, up to [`BOUNDARY_SLACK`].
    pub fn is_positive(&self) -> bool {
        self.bloch().norm() <= self.trace() + BOUNDARY_SLACK
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.m - other.m)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

/// `(q, r₁, r₂, p₁, p₂)`: the spin state split over two momentum values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoMomentumSpinState {
    q: f64,
    r1: ThreeVector,
    r2: ThreeVector,
    p1: MomentumSpec,
    p2: MomentumSpec,
}

impl TwoMomentumSpinState {
    /// Checks `0 ≤ q ≤ 1`, `|r₁| ≤ q` and `|r₂| ≤ 1 − q`.
    pub fn new(
        q: f64,
        r1: ThreeVector,
        r2: ThreeVector,
        p1: MomentumSpec,
        p2: MomentumSpec,
    ) -> Result<Self, SpinMapError> {
        if !(q.is_finite() && (0.0..=1.0).contains(&q)) {
            return Err(SpinMapError::InvalidState(format!(
                "q = {q} is outside [0, 1]"
            )));
        }
        if !r1.is_finite() || !r2.is_finite() {
            return Err(SpinMapError::InvalidState(
                "non-finite Bloch component".into(),
            ));
        }
        if r1.norm() > q + BOUNDARY_SLACK {
            return Err(SpinMapError::InvalidState(format!(
                "|r1| = {} exceeds q = {q}",
                r1.norm()
            )));
        }
        if r2.norm() > 1.0 - q + BOUNDARY_SLACK {
            return Err(SpinMapError::InvalidState(format!(
                "|r2| = {} exceeds 1 - q = {}",
                r2.norm(),
                1.0 - q
            )));
        }
        Ok(Self { q, r1, r2, p1, p2 })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r1(&self) -> ThreeVector {
        self.r1
    }

    pub fn r2(&self) -> ThreeVector {
        self.r2
    }

    pub fn p1(&self) -> MomentumSpec {
        self.p1
    }

    pub fn p2(&self) -> MomentumSpec {
        self.p2
    }

    /// `(ρ̃₁, ρ̃₂)`.
    pub fn rho_tilde_pair(&self) -> (DensityMatrix2, DensityMatrix2) {
        (
            DensityMatrix2::from_bloch(self.q, self.r1),
            DensityMatrix2::from_bloch(1.0 - self.q, self.r2),
        )
    }

    /// `ρ = ρ̃₁ + ρ̃₂`.
    pub fn spin_density(&self) -> DensityMatrix2 {
        let (a, b) = self.rho_tilde_pair();
        DensityMatrix2::from_matrix(a.matrix() + b.matrix())
    }

    /// `⟨Σ⟩ = r₁ + r₂`.
    pub fn mean_spin(&self) -> ThreeVector {
        self.r1 + self.r2
    }

    /// `⟨ΣΞ₁⟩ = r₁ − r₂`.
    pub fn correlation(&self) -> ThreeVector {
        self.r1 - self.r2
    }
}

/// The affine map `⟨Σ⟩ ↦ ½[W₁ + W₂]⟨Σ⟩ + ½[W₁ − W₂]a` with `a = ⟨ΣΞ₁⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMap {
    w1: Rotation,
    w2: Rotation,
    a: ThreeVector,
    rel: Rotation,
    /// Axis of `W₁⁻¹W₂`; `None` when the map is degenerate.
    z_axis: Option<ThreeVector>,
}

impl SpinMap {
    pub fn new(w1: Rotation, w2: Rotation, a: ThreeVector) -> Result<Self, SpinMapError> {
        if !a.is_finite() || a.norm() > 1.0 + BOUNDARY_SLACK {
            return Err(SpinMapError::CorrelationTooLarge(a.norm()));
        }
        let rel = w1.inverse().compose(&w2);
        let z_axis = (!rel.is_identity()).then(|| rel.axis());
        Ok(Self {
            w1,
            w2,
            a,
            rel,
            z_axis,
        })
    }

    pub fn w1(&self) -> Rotation {
        self.w1
    }

    pub fn w2(&self) -> Rotation {
        self.w2
    }

    pub fn correlation(&self) -> ThreeVector {
        self.a
    }

    /// `W₁⁻¹W₂`.
    pub fn relative_rotation(&self) -> Rotation {
        self.rel
    }

    /// True when `W₁⁻¹W₂` is the identity (angle below 1e-12).
    pub fn is_degenerate(&self) -> bool {
        self.z_axis.is_none()
    }

    /// `ẑ`, the unit axis of `W₁⁻¹W₂`.
    pub fn z_axis(&self) -> Option<ThreeVector> {
        self.z_axis
    }

    /// `ẑ′ = W₁(ẑ)`, which is also `W₂(ẑ)` and the axis of `W₁W₂⁻¹`.
    pub fn transported_axis(&self) -> Option<ThreeVector> {
        self.z_axis.map(|z| self.w1.apply(z))
    }

    /// Part of `a` perpendicular to `ẑ`; zero for a degenerate map.
    pub fn correlation_perp(&self) -> ThreeVector {
        match self.z_axis {
            Some(z) => self.a.reject_from(&z),
            None => ThreeVector::ZERO,
        }
    }

    /// Same rotations with a different fixed vector.
    pub fn with_correlation(&self, a: ThreeVector) -> Result<Self, SpinMapError> {
        if !a.is_finite() || a.norm() > 1.0 + BOUNDARY_SLACK {
            return Err(SpinMapError::CorrelationTooLarge(a.norm()));
        }
        Ok(Self { a, ..*self })
    }

    /// Maps a mean spin inside the compatibility domain.
    pub fn apply(&self, sv: ThreeVector) -> Result<ThreeVector, SpinMapError> {
        if !compat_check(self, sv) {
            return Err(SpinMapError::DomainError(sv));
        }
        Ok(self.apply_unchecked(sv))
    }

    /// The affine formula without the domain check. The `a` term is dropped
    /// exactly for degenerate maps.
    pub fn apply_unchecked(&self, sv: ThreeVector) -> ThreeVector {
        let mean = (self.w1.apply(sv) + self.w2.apply(sv)) * 0.5;
        if self.is_degenerate() {
            return mean;
        }
        mean + (self.w1.apply(self.a) - self.w2.apply(self.a)) * 0.5
    }

    /// The map back from the transformed state: `(W₁⁻¹, W₂⁻¹, a′)` with
    /// `a′ = W₁(r₁) − W₂(r₂)`, where `r₁,₂ = (sv ± a)/2` reconstruct the
    /// state that `sv` came from. The inverse map's axis is oriented along
    /// `ẑ′`.
    pub fn inverse(&self, sv: ThreeVector) -> Result<SpinMap, SpinMapError> {
        if !compat_check(self, sv) {
            return Err(SpinMapError::DomainError(sv));
        }
        let r1 = (sv + self.a) * 0.5;
        let r2 = (sv - self.a) * 0.5;
        let a_prime = self.w1.apply(r1) - self.w2.apply(r2);
        let mut inv = SpinMap::new(self.w1.inverse(), self.w2.inverse(), a_prime)?;
        if let (Some(z_inv), Some(z_prime)) = (inv.z_axis, self.transported_axis()) {
            inv.z_axis = Some(if z_inv.dot(&z_prime) < 0.0 {
                -z_inv
            } else {
                z_inv
            });
        }
        Ok(inv)
    }
}

/// `W₁ = W(Λ, p₁)`, `W₂ = W(Λ, p₂)` and `a = r₁ − r₂`.
pub fn build_map(b: &Boost, s: &TwoMomentumSpinState) -> Result<SpinMap, SpinMapError> {
    let (w1, _) = wigner_halpern(b, &s.p1);
    let (w2, _) = wigner_halpern(b, &s.p2);
    SpinMap::new(w1, w2, s.correlation())
}

/// The boosted state: `q` kept, `r₁ → W₁r₁`, `r₂ → W₂r₂`, momenta moved to
/// `Λp₁`, `Λp₂`.
pub fn transform_state(
    b: &Boost,
    s: &TwoMomentumSpinState,
) -> Result<TwoMomentumSpinState, SpinMapError> {
    let (w1, _) = wigner_halpern(b, &s.p1);
    let (w2, _) = wigner_halpern(b, &s.p2);
    let lambda = b.matrix();
    let p1 = MomentumSpec::from_four_vector(&lambda.apply(&s.p1.four_momentum()))?;
    let p2 = MomentumSpec::from_four_vector(&lambda.apply(&s.p2.four_momentum()))?;
    Ok(TwoMomentumSpinState {
        q: s.q,
        r1: w1.apply(s.r1),
        r2: w2.apply(s.r2),
        p1,
        p2,
    })
}

/// `ρ^Λ = D(W₁)ρ̃₁D(W₁)† + D(W₂)ρ̃₂D(W₂)†`.
pub fn transform_density(b: &Boost, s: &TwoMomentumSpinState) -> DensityMatrix2 {
    let (_, d1) = wigner_halpern(b, &s.p1);
    let (_, d2) = wigner_halpern(b, &s.p2);
    let (t1, t2) = s.rho_tilde_pair();
    DensityMatrix2::from_matrix(d1.conjugate(t1.matrix()) + d2.conjugate(t2.matrix()))
}

/// `W₁(r₁) − W₂(r₁)`: the mean spin a boost produces from the unpolarized
/// state with `r₂ = −r₁`, and which the inverse boost erases again.
pub fn erasable_polarization(
    b: &Boost,
    p1: &MomentumSpec,
    p2: &MomentumSpec,
    r1: ThreeVector,
) -> Result<ThreeVector, SpinMapError> {
    let len = r1.norm();
    if !r1.is_finite() || len > 0.5 + BOUNDARY_SLACK {
        return Err(SpinMapError::RadiusTooLarge(len));
    }
    let (w1, _) = wigner_halpern(b, p1);
    let (w2, _) = wigner_halpern(b, p2);
    Ok(w1.apply(r1) - w2.apply(r1))
}

/// `|r₁ + W₁⁻¹W₂ r₂|` for coplanar vectors and rotations about a common axis:
/// `√(r₁² + r₂² + 2r₁r₂cos(χ + φ₂ − φ₁))`, where `χ` is the angle of the
/// rotation about that axis carrying `r₁` to the direction of `r₂`.
pub fn coplanar_magnitude(r1: f64, r2: f64, chi: f64, phi1: f64, phi2: f64) -> f64 {
    debug_assert!(r1 >= 0.0 && r2 >= 0.0, "lengths must be nonnegative");
    (r1 * r1 + r2 * r2 + 2.0 * r1 * r2 * (chi + phi2 - phi1).cos())
        .max(0.0)
        .sqrt()
}

/// Signed angle of the rotation about `axis` that carries the direction of
/// `from` to the direction of `to`, in the rotation convention of
/// [`crate::rotor`]. Both vectors must be perpendicular to `axis`.
pub fn signed_angle_between(axis: &ThreeVector, from: &ThreeVector, to: &ThreeVector) -> f64 {
    // clockwise about the axis counts positive
    let sin = to.cross(from).dot(axis);
    let cos = from.dot(to);
    sin.atan2(cos)
}
