//! Rotations of Bloch vectors and their spin-1/2 representatives.
//!
//! # Conventions
//!
//! A [`Rotation`] is stored as a unit axis `n` and an angle `θ` in `(−π, π]`.
//! Its spinor representative is
//!
//! ```text
//! D = cos(θ/2)·I + i·sin(θ/2)·(n·Σ)
//! ```
//!
//! and the rotation acts on vectors so that `D† Σ_j D = Σ_k W_jk Σ_k`. Written
//! as an ordinary right-handed rotation matrix this is `W = R(n, −θ)`: the
//! angle is counted clockwise when looking down the axis. With this choice
//! `D ρ D†` carries the Bloch vector `r` to `W r`, and the Wigner rotations
//! produced by [`crate::kinematics`] plug in without any extra sign.
//!
//! Composition goes through the spinor parts `(cos θ/2, sin θ/2·n)`; the
//! axis-angle pair is what callers see.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix3};
use num_complex::Complex64;
use thiserror::Error;

/// Angles below this magnitude are treated as the identity rotation.
pub const IDENTITY_ANGLE_TOL: f64 = 1e-12;

const ZERO_AXIS_TOL: f64 = 1e-15;
const SPECIAL_UNITARY_TOL: f64 = 1e-9;
const ORTHOGONAL_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RotorError {
    #[error("rotation axis has zero length but the angle is not a multiple of 2π")]
    ZeroAxis,
    #[error("non-finite component in {0}")]
    NonFinite(&'static str),
    #[error("matrix is not special unitary (deviation {0:.3e})")]
    NotSpecialUnitary(f64),
    #[error("matrix is not a proper rotation (deviation {0:.3e})")]
    NotARotation(f64),
}

/// A real 3-vector: Bloch vectors, unit directions, rotation axes.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ThreeVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ThreeVector {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0);
    pub const X: Self = Self::new(1.0, 0.0, 0.0);
    pub const Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Like [`ThreeVector::new`] but rejects NaN and infinite components.
    pub fn try_new(x: f64, y: f64, z: f64) -> Result<Self, RotorError> {
        let v = Self::new(x, y, z);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(RotorError::NonFinite("three-vector"))
        }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y).hypot(self.z)
    }

    /// Unit vector along `self`, or `None` for a (numerically) zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n < ZERO_AXIS_TOL || !n.is_finite() {
            None
        } else {
            Some(*self / n)
        }
    }

    /// Component of `self` orthogonal to the unit vector `axis`.
    pub fn reject_from(&self, axis: &Self) -> Self {
        *self - *axis * self.dot(axis)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }
}

impl From<[f64; 3]> for ThreeVector {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl fmt::Display for ThreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.p$} {:.p$} {:.p$}", self.x, self.y, self.z, p = p),
            None => write!(f, "{} {} {}", self.x, self.y, self.z),
        }
    }
}

impl Add for ThreeVector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for ThreeVector {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for ThreeVector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for ThreeVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ThreeVector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<ThreeVector> for f64 {
    type Output = ThreeVector;
    fn mul(self, v: ThreeVector) -> ThreeVector {
        v * self
    }
}

impl Div<f64> for ThreeVector {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.x / s, self.y / s, self.z / s)
    }
}

/// An element of SO(3) in axis-angle form. See the module docs for the sign
/// convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation {
    axis: ThreeVector,
    angle: f64,
}

impl Default for Rotation {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Rotation {
    pub const IDENTITY: Self = Self {
        axis: ThreeVector::Z,
        angle: 0.0,
    };

    /// Builds a rotation from any nonzero axis and finite angle. The axis is
    /// normalized and the angle reduced to `(−π, π]`.
    pub fn from_axis_angle(axis: ThreeVector, angle: f64) -> Result<Self, RotorError> {
        if !angle.is_finite() || !axis.is_finite() {
            return Err(RotorError::NonFinite("axis-angle"));
        }
        let angle = reduce_angle(angle);
        if angle.abs() < IDENTITY_ANGLE_TOL {
            return Ok(Self::IDENTITY);
        }
        let axis = axis.normalized().ok_or(RotorError::ZeroAxis)?;
        Ok(Self { axis, angle })
    }

    /// Rotation whose spinor representative is `w·I + i·(s·Σ)`. The pair need
    /// not be normalized; the sign is chosen so that `w ≥ 0`.
    pub fn from_spinor_parts(w: f64, s: ThreeVector) -> Self {
        let norm = w.hypot(s.norm());
        let (mut w, mut s) = (w / norm, s / norm);
        if w < 0.0 {
            w = -w;
            s = -s;
        }
        let sin_half = s.norm();
        let angle = 2.0 * sin_half.atan2(w);
        if angle < IDENTITY_ANGLE_TOL {
            return Self::IDENTITY;
        }
        Self {
            axis: s / sin_half,
            angle,
        }
    }

    pub fn axis(&self) -> ThreeVector {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn is_identity(&self) -> bool {
        self.angle == 0.0
    }

    /// `(cos θ/2, sin θ/2 · n)`.
    pub fn spinor_parts(&self) -> (f64, ThreeVector) {
        let half = 0.5 * self.angle;
        (half.cos(), self.axis * half.sin())
    }

    /// `self ∘ first`: applies `first`, then `self`.
    pub fn compose(&self, first: &Rotation) -> Rotation {
        let (wa, sa) = self.spinor_parts();
        let (wb, sb) = first.spinor_parts();
        let w = wa * wb - sa.dot(&sb);
        let s = sb * wa + sa * wb - sa.cross(&sb);
        Self::from_spinor_parts(w, s)
    }

    pub fn inverse(&self) -> Rotation {
        if self.is_identity() {
            return *self;
        }
        Self {
            axis: self.axis,
            angle: reduce_angle(-self.angle),
        }
    }

    pub fn apply(&self, v: ThreeVector) -> ThreeVector {
        let (w, s) = self.spinor_parts();
        let sv = s.cross(&v);
        v - sv * (2.0 * w) + s.cross(&sv) * 2.0
    }

    /// The 3×3 matrix `W` with `apply(v) = W v`.
    pub fn matrix(&self) -> Matrix3<f64> {
        let cols = [
            self.apply(ThreeVector::X),
            self.apply(ThreeVector::Y),
            self.apply(ThreeVector::Z),
        ];
        Matrix3::from_fn(|i, j| cols[j].to_array()[i])
    }

    /// Inverse of [`Rotation::matrix`]. Fails if `m` is not orthogonal with
    /// determinant +1 within 1e-9.
    pub fn from_matrix(m: &Matrix3<f64>) -> Result<Self, RotorError> {
        let dev = (m.transpose() * m - Matrix3::identity()).abs().max();
        let det = m.determinant();
        if !dev.is_finite() || dev > ORTHOGONAL_TOL || (det - 1.0).abs() > ORTHOGONAL_TOL {
            return Err(RotorError::NotARotation(dev.max((det - 1.0).abs())));
        }
        // Shepperd's method for the right-handed quaternion (w, u) of m; the
        // spinor vector part is then -u.
        let tr = m.trace();
        let (w, u) = if tr >= m[(0, 0)] && tr >= m[(1, 1)] && tr >= m[(2, 2)] {
            let r = (1.0 + tr).sqrt();
            let f = 0.5 / r;
            (
                0.5 * r,
                ThreeVector::new(
                    (m[(2, 1)] - m[(1, 2)]) * f,
                    (m[(0, 2)] - m[(2, 0)]) * f,
                    (m[(1, 0)] - m[(0, 1)]) * f,
                ),
            )
        } else if m[(0, 0)] >= m[(1, 1)] && m[(0, 0)] >= m[(2, 2)] {
            let r = (1.0 + m[(0, 0)] - m[(1, 1)] - m[(2, 2)]).sqrt();
            let f = 0.5 / r;
            (
                (m[(2, 1)] - m[(1, 2)]) * f,
                ThreeVector::new(
                    0.5 * r,
                    (m[(0, 1)] + m[(1, 0)]) * f,
                    (m[(0, 2)] + m[(2, 0)]) * f,
                ),
            )
        } else if m[(1, 1)] >= m[(2, 2)] {
            let r = (1.0 + m[(1, 1)] - m[(0, 0)] - m[(2, 2)]).sqrt();
            let f = 0.5 / r;
            (
                (m[(0, 2)] - m[(2, 0)]) * f,
                ThreeVector::new(
                    (m[(0, 1)] + m[(1, 0)]) * f,
                    0.5 * r,
                    (m[(1, 2)] + m[(2, 1)]) * f,
                ),
            )
        } else {
            let r = (1.0 + m[(2, 2)] - m[(0, 0)] - m[(1, 1)]).sqrt();
            let f = 0.5 / r;
            (
                (m[(1, 0)] - m[(0, 1)]) * f,
                ThreeVector::new(
                    (m[(0, 2)] + m[(2, 0)]) * f,
                    (m[(1, 2)] + m[(2, 1)]) * f,
                    0.5 * r,
                ),
            )
        };
        Ok(Self::from_spinor_parts(w, -u))
    }

    /// Angle of `self ∘ other⁻¹`, in `[0, π]`. Computed directly from the
    /// spinor parts so that tiny distances are not snapped to zero.
    pub fn distance(&self, other: &Rotation) -> f64 {
        let (wa, sa) = self.spinor_parts();
        let (wb, sb) = other.spinor_parts();
        let w = wa * wb + sa.dot(&sb);
        let s = sa * wb - sb * wa + sa.cross(&sb);
        2.0 * s.norm().atan2(w.abs())
    }

    /// Signed angle about the unit direction `d`, for a rotation whose axis is
    /// along `±d`.
    pub fn signed_angle_about(&self, d: &ThreeVector) -> f64 {
        if self.is_identity() {
            0.0
        } else {
            self.angle * self.axis.dot(d)
        }
    }
}

impl fmt::Display for Rotation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(9);
        write!(
            f,
            "axis = {:.p$}, angle = {:.p$}",
            self.axis,
            self.angle,
            p = p
        )
    }
}

/// Reduces an angle to `(−π, π]`.
fn reduce_angle(angle: f64) -> f64 {
    use std::f64::consts::{PI, TAU};
    let mut a = angle - TAU * (angle / TAU).round();
    if a <= -PI {
        a += TAU;
    }
    if a > PI {
        a -= TAU;
    }
    a
}

/// The Pauli matrices `Σ1, Σ2, Σ3`.
pub fn pauli() -> [Matrix2<Complex64>; 3] {
    let o = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    [
        Matrix2::new(o, one, one, o),
        Matrix2::new(o, -i, i, o),
        Matrix2::new(one, o, o, -one),
    ]
}

/// A 2×2 special unitary matrix `D(W)` acting on spin states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinorRotation {
    m: Matrix2<Complex64>,
}

impl SpinorRotation {
    pub fn identity() -> Self {
        Self {
            m: Matrix2::identity(),
        }
    }

    /// `D = cos(θ/2)·I + i·sin(θ/2)·(n·Σ)`; the real part of the trace is
    /// nonnegative for every angle in `(−π, π]`.
    pub fn from_rotation(r: &Rotation) -> Self {
        let (w, s) = r.spinor_parts();
        Self {
            m: Matrix2::new(
                Complex64::new(w, s.z),
                Complex64::new(s.y, s.x),
                Complex64::new(-s.y, s.x),
                Complex64::new(w, -s.z),
            ),
        }
    }

    /// Wraps a raw matrix after checking unitarity and unit determinant.
    pub fn from_matrix(m: Matrix2<Complex64>) -> Result<Self, RotorError> {
        let unitarity = (m.adjoint() * m - Matrix2::identity())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let det = (m.determinant() - Complex64::new(1.0, 0.0)).norm();
        let dev = unitarity.max(det);
        if !dev.is_finite() || dev > SPECIAL_UNITARY_TOL {
            return Err(RotorError::NotSpecialUnitary(dev));
        }
        Ok(Self { m })
    }

    /// The rotation `W` with `D† Σ D = W(Σ)`. `D` and `−D` give the same `W`.
    pub fn to_rotation(&self) -> Rotation {
        let m = &self.m;
        let w = 0.5 * (m[(0, 0)] + m[(1, 1)]).re;
        let s = ThreeVector::new(
            0.5 * (m[(0, 1)] + m[(1, 0)]).im,
            0.5 * (m[(0, 1)] - m[(1, 0)]).re,
            0.5 * (m[(0, 0)] - m[(1, 1)]).im,
        );
        Rotation::from_spinor_parts(w, s)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.m
    }

    pub fn adjoint(&self) -> Self {
        Self {
            m: self.m.adjoint(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            m: self.m * other.m,
        }
    }

    /// `D X D†`.
    pub fn conjugate(&self, x: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        self.m * x * self.m.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn rodrigues_rh(n: ThreeVector, t: f64) -> Matrix3<f64> {
        let k = Matrix3::new(0.0, -n.z, n.y, n.z, 0.0, -n.x, -n.y, n.x, 0.0);
        Matrix3::identity() + k * t.sin() + k * k * (1.0 - t.cos())
    }

    #[test]
    fn identity_from_zero_angle() {
        let r = Rotation::from_axis_angle(ThreeVector::Z, 0.0).unwrap();
        assert_eq!(r, Rotation::IDENTITY);
        // any axis is fine at zero angle, even a zero one
        assert_eq!(
            Rotation::from_axis_angle(ThreeVector::ZERO, 2.0 * PI).unwrap(),
            Rotation::IDENTITY
        );
    }

    #[test]
    fn axis_normalized_and_angle_reduced() {
        let r = Rotation::from_axis_angle(ThreeVector::new(0.0, 0.0, 2.0), 3.0 * PI).unwrap();
        assert_eq!(r.axis(), ThreeVector::Z);
        assert!((r.angle() - PI).abs() < 1e-12);
        let r = Rotation::from_axis_angle(ThreeVector::X, -PI).unwrap();
        assert_eq!(r.angle(), PI);
    }

    #[test]
    fn zero_axis_rejected() {
        assert_eq!(
            Rotation::from_axis_angle(ThreeVector::ZERO, 0.5),
            Err(RotorError::ZeroAxis)
        );
        assert!(matches!(
            Rotation::from_axis_angle(ThreeVector::X, f64::NAN),
            Err(RotorError::NonFinite(_))
        ));
    }

    #[test]
    fn quarter_turn_is_clockwise() {
        let r = Rotation::from_axis_angle(ThreeVector::Z, FRAC_PI_2).unwrap();
        let v = r.apply(ThreeVector::X);
        assert!(v.max_abs_diff(&ThreeVector::new(0.0, -1.0, 0.0)) < 1e-15);
    }

    #[test]
    fn apply_matches_rodrigues() {
        let r = Rotation::from_axis_angle(ThreeVector::X, 0.7).unwrap();
        let expect = rodrigues_rh(ThreeVector::X, -0.7) * nalgebra::Vector3::new(0.0, 1.0, 0.0);
        let got = r.apply(ThreeVector::Y);
        assert!((got.x - expect.x).abs() < 1e-15);
        assert!((got.y - expect.y).abs() < 1e-15);
        assert!((got.z - expect.z).abs() < 1e-15);
    }

    #[test]
    fn same_axis_angles_add() {
        let q = Rotation::from_axis_angle(ThreeVector::Z, FRAC_PI_2).unwrap();
        let h = q.compose(&q);
        assert!(h.distance(&Rotation::from_axis_angle(ThreeVector::Z, PI).unwrap()) < 1e-15);
        assert_eq!(Rotation::IDENTITY.compose(&q), q);
    }

    #[test]
    fn inverse_negates_angle() {
        let r = Rotation::from_axis_angle(ThreeVector::Z, 0.3).unwrap();
        let inv = r.inverse();
        assert_eq!(inv.axis(), ThreeVector::Z);
        assert_eq!(inv.angle(), -0.3);
        assert!(r.compose(&inv).is_identity());
        assert_eq!(Rotation::IDENTITY.inverse(), Rotation::IDENTITY);
    }

    #[test]
    fn half_turn_spinor_is_i_sigma3() {
        let r = Rotation::from_axis_angle(ThreeVector::Z, PI).unwrap();
        let d = SpinorRotation::from_rotation(&r);
        let i_s3 = pauli()[2] * Complex64::new(0.0, 1.0);
        assert!((d.matrix() - i_s3).iter().all(|z| z.norm() < 1e-15));
        let back = d.to_rotation();
        assert_eq!(back.axis(), ThreeVector::Z);
        assert!((back.angle() - PI).abs() < 1e-15);
        assert_eq!(
            SpinorRotation::from_rotation(&Rotation::IDENTITY),
            SpinorRotation::identity()
        );
        assert!(SpinorRotation::identity().to_rotation().is_identity());
    }

    #[test]
    fn non_unitary_rejected() {
        let m = Matrix2::new(
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.5, 0.0),
        );
        assert!(matches!(
            SpinorRotation::from_matrix(m),
            Err(RotorError::NotSpecialUnitary(_))
        ));
        // unitary but det = -1
        assert!(SpinorRotation::from_matrix(pauli()[2]).is_err());
    }

    #[test]
    fn matrix_round_trip_near_half_turn() {
        let r = Rotation::from_axis_angle(ThreeVector::new(1.0, -2.0, 0.5), PI - 1e-9).unwrap();
        let back = Rotation::from_matrix(&r.matrix()).unwrap();
        assert!(back.distance(&r) < 1e-12);
    }

    #[test]
    fn from_matrix_rejects_reflection() {
        let m = Matrix3::from_diagonal(&nalgebra::Vector3::new(1.0, 1.0, -1.0));
        assert!(Rotation::from_matrix(&m).is_err());
    }
}
