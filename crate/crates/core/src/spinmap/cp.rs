//! Complete positivity of the spin map.
//!
//! The map is completely positive exactly when `W₁(a) = W₂(a)`, i.e. when `a`
//! has no component perpendicular to the axis of `W₁⁻¹W₂`. The Choi-matrix
//! test below checks the same thing from scratch.

use nalgebra::{Matrix2, Matrix3, Matrix4, SymmetricEigen};
use num_complex::Complex64;

use super::SpinMap;
use crate::rotor::pauli;

/// Tolerance on `|W₁(a) − W₂(a)|`.
pub const CP_CRITERION_TOL: f64 = 1e-10;
/// Smallest Choi eigenvalue still counted as nonnegative.
pub const CHOI_EIGEN_TOL: f64 = -1e-10;

/// `W₁(a) = W₂(a)` within [`CP_CRITERION_TOL`]; always true for degenerate
/// maps.
pub fn is_cp_criterion(m: &SpinMap) -> bool {
    if m.is_degenerate() {
        return true;
    }
    let a = m.correlation();
    (m.w1().apply(a) - m.w2().apply(a)).norm() <= CP_CRITERION_TOL
}

/// Choi matrix `Σᵢⱼ Eᵢⱼ ⊗ Φ(Eᵢⱼ)` of the trace-preserving linear extension
///
/// ```text
/// Φ(x₀I + x·Σ) = x₀I + [½(W₁+W₂)x + x₀·½(W₁−W₂)a⊥]·Σ
/// ```
///
/// which reproduces the spin map on density matrices `½(I + sv·Σ)`.
pub fn choi_matrix(m: &SpinMap) -> Matrix4<Complex64> {
    let w1 = m.w1().matrix();
    let w2 = m.w2().matrix();
    let mix: Matrix3<f64> = (w1 + w2) * 0.5;
    let a = m.correlation_perp();
    let shift_vec = (w1 - w2) * nalgebra::Vector3::new(a.x, a.y, a.z) * 0.5;
    let sigma = pauli();

    let phi = |x: &Matrix2<Complex64>| -> Matrix2<Complex64> {
        let x0 = x.trace() * 0.5;
        let xs: [Complex64; 3] = std::array::from_fn(|k| (sigma[k] * x).trace() * 0.5);
        let mut out = Matrix2::identity() * x0;
        for (k, s) in sigma.iter().enumerate() {
            let mut coeff = x0 * shift_vec[k];
            for (l, xl) in xs.iter().enumerate() {
                coeff += *xl * mix[(k, l)];
            }
            out += s * coeff;
        }
        out
    };

    let mut choi = Matrix4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let mut unit = Matrix2::zeros();
            unit[(i, j)] = Complex64::new(1.0, 0.0);
            let block = phi(&unit);
            for k in 0..2 {
                for l in 0..2 {
                    choi[(2 * i + k, 2 * j + l)] = block[(k, l)];
                }
            }
        }
    }
    choi
}

pub fn choi_min_eigenvalue(m: &SpinMap) -> f64 {
    let c = choi_matrix(m);
    // symmetrize away rounding before the Hermitian eigensolver
    let c = (c + c.adjoint()) * Complex64::new(0.5, 0.0);
    SymmetricEigen::new(c).eigenvalues.min()
}

/// Complete positivity from the sign of the Choi spectrum.
pub fn choi_cp_oracle(m: &SpinMap) -> bool {
    choi_min_eigenvalue(m) >= CHOI_EIGEN_TOL
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotor::{Rotation, ThreeVector};

    fn rotations() -> (Rotation, Rotation) {
        (
            Rotation::from_axis_angle(ThreeVector::new(1.0, 2.0, 0.5), 0.9).unwrap(),
            Rotation::from_axis_angle(ThreeVector::new(-0.3, 0.2, 1.0), -1.4).unwrap(),
        )
    }

    #[test]
    fn zero_correlation_is_cp() {
        let (w1, w2) = rotations();
        let m = SpinMap::new(w1, w2, ThreeVector::ZERO).unwrap();
        assert!(is_cp_criterion(&m));
        assert!(choi_cp_oracle(&m));
    }

    #[test]
    fn axial_correlation_is_cp() {
        let (w1, w2) = rotations();
        let m = SpinMap::new(w1, w2, ThreeVector::ZERO).unwrap();
        let m = m.with_correlation(m.z_axis().unwrap() * 0.7).unwrap();
        assert!(is_cp_criterion(&m));
        assert!(choi_cp_oracle(&m));
    }

    #[test]
    fn perpendicular_correlation_is_not_cp() {
        let w1 = Rotation::from_axis_angle(ThreeVector::Z, 0.5).unwrap();
        let w2 = w1.inverse();
        let m = SpinMap::new(w1, w2, ThreeVector::new(0.4, 0.0, 0.0)).unwrap();
        assert!(!is_cp_criterion(&m));
        assert!(!choi_cp_oracle(&m));
    }

    #[test]
    fn degenerate_is_cp() {
        let (w1, _) = rotations();
        let m = SpinMap::new(w1, w1, ThreeVector::new(0.5, 0.5, 0.0)).unwrap();
        assert!(is_cp_criterion(&m));
        assert!(choi_cp_oracle(&m));
    }

    #[test]
    fn choi_is_trace_preserving() {
        let (w1, w2) = rotations();
        let m = SpinMap::new(w1, w2, ThreeVector::new(0.1, 0.2, 0.3)).unwrap();
        let c = choi_matrix(&m);
        assert!((c.trace() - Complex64::new(2.0, 0.0)).norm() < 1e-14);
        // partial trace over the output factor is the identity
        for i in 0..2 {
            for j in 0..2 {
                let pt = c[(2 * i, 2 * j)] + c[(2 * i + 1, 2 * j + 1)];
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((pt - Complex64::new(target, 0.0)).norm() < 1e-14);
            }
        }
    }
}
