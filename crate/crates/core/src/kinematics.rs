//! Four-momenta, boosts, general Lorentz matrices, and the Wigner rotation.
//!
//! Units are `m = c = 1`. Boosts and momenta are parametrized by rapidity.
//!
//! The Wigner rotation is available two ways:
//!
//! * [`wigner_halpern`]: closed form in terms of the boost rapidity `α`, the
//!   momentum rapidity `β` and the two directions `ê`, `f̂`;
//! * [`wigner_oracle`]: the 4×4 composition `L(Λp)⁻¹ Λ L(p)` with `L` the
//!   rotation-free standard boost.
//!
//! The matrix route cancels entries of size `cosh α · cosh β · cosh β′` down
//! to O(1), so [`LorentzMatrix`] keeps its entries in double-double precision.
//! Boosts are built from `sinh α` with `cosh α = √(1 + sinh²α)` evaluated in
//! the same precision, which keeps every constructed matrix on the Lorentz
//! group to far below `f64` resolution.

use std::fmt;

use nalgebra::Matrix3;
use thiserror::Error;
use twofloat::TwoFloat;

use crate::rotor::{Rotation, RotorError, SpinorRotation, ThreeVector};

/// Largest accepted rapidity. `cosh` overflows near 710.
pub const MAX_RAPIDITY: f64 = 300.0;

const ON_SHELL_TOL: f64 = 1e-6;
const METRIC_TOL: f64 = 1e-9;
const COMPOSE_METRIC_TOL: f64 = 1e-8;
const TIME_BLOCK_TOL: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KinematicsError {
    #[error("rapidity {0} is outside [0, {MAX_RAPIDITY}]")]
    RapidityOutOfRange(f64),
    #[error("velocity {0} is outside [0, 1)")]
    VelocityOutOfRange(f64),
    #[error("direction must be a finite nonzero vector")]
    InvalidDirection,
    #[error("four-vector is off the unit mass shell (residual {0:.3e})")]
    OffShell(f64),
    #[error("matrix violates the Minkowski metric invariant (residual {0:.3e})")]
    MetricViolation(f64),
    #[error("matrix is not proper orthochronous")]
    NotProperOrthochronous,
    #[error("Wigner composition does not fix the rest frame (deviation {0:.3e})")]
    NotARotation(f64),
    #[error(transparent)]
    Rotor(#[from] RotorError),
}

/// `(t, x, y, z)` in units of the particle mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const REST: Self = Self::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub fn spatial(&self) -> ThreeVector {
        ThreeVector::new(self.x, self.y, self.z)
    }

    /// `t² − x² − y² − z²`.
    pub fn minkowski_norm_sq(&self) -> f64 {
        self.t * self.t - self.spatial().norm_squared()
    }

    /// `|t² − |p|² − 1|`, relative to `t²` once `t > 1`.
    pub fn on_shell_residual(&self) -> f64 {
        (self.minkowski_norm_sq() - 1.0).abs() / (self.t * self.t).max(1.0)
    }

    pub fn is_on_shell(&self) -> bool {
        self.t > 0.0 && self.on_shell_residual() <= ON_SHELL_TOL
    }

    pub fn is_finite(&self) -> bool {
        self.t.is_finite() && self.spatial().is_finite()
    }
}

/// A particle momentum `p = (cosh β, sinh β · f̂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumSpec {
    rapidity: f64,
    direction: ThreeVector,
}

impl MomentumSpec {
    /// `direction` is normalized. A zero direction is accepted only at rest,
    /// where it defaults to the 3 axis.
    pub fn new(rapidity: f64, direction: ThreeVector) -> Result<Self, KinematicsError> {
        let rapidity = check_rapidity(rapidity)?;
        let direction = match direction.normalized() {
            Some(d) if direction.is_finite() => d,
            _ if rapidity == 0.0 && direction == ThreeVector::ZERO => ThreeVector::Z,
            _ => return Err(KinematicsError::InvalidDirection),
        };
        Ok(Self {
            rapidity,
            direction,
        })
    }

    pub fn at_rest() -> Self {
        Self {
            rapidity: 0.0,
            direction: ThreeVector::Z,
        }
    }

    /// Recovers rapidity and direction from the spatial part of `p`.
    pub fn from_four_vector(p: &FourVector) -> Result<Self, KinematicsError> {
        if !p.is_finite() || !p.is_on_shell() {
            return Err(KinematicsError::OffShell(p.on_shell_residual()));
        }
        let spatial = p.spatial();
        let magnitude = spatial.norm();
        match spatial.normalized() {
            Some(d) => Self::new(magnitude.asinh(), d),
            None => Ok(Self::at_rest()),
        }
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn direction(&self) -> ThreeVector {
        self.direction
    }

    /// `|p| / m = sinh β`.
    pub fn momentum_magnitude(&self) -> f64 {
        self.rapidity.sinh()
    }

    pub fn four_momentum(&self) -> FourVector {
        let s = self.direction * self.rapidity.sinh();
        FourVector::new(self.rapidity.cosh(), s.x, s.y, s.z)
    }
}

/// A pure boost with rapidity `α ≥ 0` along `ê`; velocity `v = tanh α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    rapidity: f64,
    direction: ThreeVector,
}

impl Boost {
    pub fn new(rapidity: f64, direction: ThreeVector) -> Result<Self, KinematicsError> {
        let rapidity = check_rapidity(rapidity)?;
        let direction = match direction.normalized() {
            Some(d) if direction.is_finite() => d,
            _ if rapidity == 0.0 && direction == ThreeVector::ZERO => ThreeVector::Z,
            _ => return Err(KinematicsError::InvalidDirection),
        };
        Ok(Self {
            rapidity,
            direction,
        })
    }

    pub fn from_velocity(velocity: f64, direction: ThreeVector) -> Result<Self, KinematicsError> {
        if !(0.0..1.0).contains(&velocity) {
            return Err(KinematicsError::VelocityOutOfRange(velocity));
        }
        Self::new(velocity.atanh(), direction)
    }

    pub fn identity() -> Self {
        Self {
            rapidity: 0.0,
            direction: ThreeVector::Z,
        }
    }

    pub fn rapidity(&self) -> f64 {
        self.rapidity
    }

    pub fn direction(&self) -> ThreeVector {
        self.direction
    }

    pub fn velocity(&self) -> f64 {
        self.rapidity.tanh()
    }

    /// Same rapidity, opposite direction.
    pub fn inverse(&self) -> Self {
        Self {
            rapidity: self.rapidity,
            direction: -self.direction,
        }
    }

    pub fn matrix(&self) -> LorentzMatrix {
        boost_matrix(self)
    }
}

fn check_rapidity(r: f64) -> Result<f64, KinematicsError> {
    if r.is_finite() && (0.0..=MAX_RAPIDITY).contains(&r) {
        // normalize -0.0
        Ok(r + 0.0)
    } else {
        Err(KinematicsError::RapidityOutOfRange(r))
    }
}

type Dd = TwoFloat;
type Block4 = [[Dd; 4]; 4];

fn dd(x: f64) -> Dd {
    Dd::from(x)
}

fn dd_zero() -> Dd {
    Dd::from(0.0)
}

fn dd_f64(x: Dd) -> f64 {
    f64::from(x)
}

/// Quotient to full double-double accuracy. `TwoFloat`'s own division is only
/// accurate to about one `f64` ulp, which is not enough here.
fn dd_div(a: Dd, b: Dd) -> Dd {
    let q1 = a.hi() / b.hi();
    let r = a - b * q1;
    let q2 = r.hi() / b.hi();
    let r = r - b * q2;
    let q3 = r.hi() / b.hi();
    Dd::new_add(q1, q2) + q3
}

fn dd_identity() -> Block4 {
    let mut m = [[dd_zero(); 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = dd(1.0);
    }
    m
}

fn dd_mul(a: &Block4, b: &Block4) -> Block4 {
    let mut out = [[dd_zero(); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            let mut acc = dd_zero();
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            *entry = acc;
        }
    }
    out
}

fn dd_unit(v: &ThreeVector) -> [Dd; 3] {
    let c = [dd(v.x), dd(v.y), dd(v.z)];
    let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
    [dd_div(c[0], n), dd_div(c[1], n), dd_div(c[2], n)]
}

/// Pure boost with spatial part `sinh·ê` and `cosh = √(1 + sinh²)`.
fn dd_boost(sinh: Dd, e: [Dd; 3]) -> Block4 {
    let s2 = sinh * sinh;
    let cosh = (dd(1.0) + s2).sqrt();
    // cosh − 1 without cancellation
    let cm1 = dd_div(s2, dd(1.0) + cosh);
    let mut m = dd_identity();
    m[0][0] = cosh;
    for i in 0..3 {
        m[0][i + 1] = sinh * e[i];
        m[i + 1][0] = sinh * e[i];
        for j in 0..3 {
            m[i + 1][j + 1] += cm1 * e[i] * e[j];
        }
    }
    m
}

/// Rotation-free boost taking the rest frame to the momentum with spatial
/// part `p`.
fn dd_standard_boost(p: [Dd; 3]) -> Block4 {
    let p2 = p[0] * p[0] + p[1] * p[1] + p[2] * p[2];
    let energy = (dd(1.0) + p2).sqrt();
    let mut m = dd_identity();
    m[0][0] = energy;
    let denom = dd(1.0) + energy;
    for i in 0..3 {
        m[0][i + 1] = p[i];
        m[i + 1][0] = p[i];
        for j in 0..3 {
            m[i + 1][j + 1] += dd_div(p[i] * p[j], denom);
        }
    }
    m
}

fn dd_apply(m: &Block4, v: [Dd; 4]) -> [Dd; 4] {
    let mut out = [dd_zero(); 4];
    for (i, o) in out.iter_mut().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            *o += m[i][k] * *vk;
        }
    }
    out
}

/// On-shell double-double four-vector built from the spatial part of `p`.
fn dd_on_shell(spatial: [Dd; 3]) -> [Dd; 4] {
    let p2 = spatial[0] * spatial[0] + spatial[1] * spatial[1] + spatial[2] * spatial[2];
    [(dd(1.0) + p2).sqrt(), spatial[0], spatial[1], spatial[2]]
}

const ETA: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A proper orthochronous Lorentz transformation.
#[derive(Clone, Copy, PartialEq)]
pub struct LorentzMatrix {
    m: Block4,
}

impl fmt::Debug for LorentzMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LorentzMatrix")
            .field("rows", &self.to_rows())
            .finish()
    }
}

impl LorentzMatrix {
    pub fn identity() -> Self {
        Self { m: dd_identity() }
    }

    /// Accepts a plain `f64` matrix if it preserves the metric within 1e-9
    /// entrywise and is proper orthochronous.
    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self, KinematicsError> {
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(KinematicsError::MetricViolation(f64::INFINITY));
        }
        let m = Self {
            m: rows.map(|r| r.map(dd)),
        };
        let res = m.metric_residual();
        if res > METRIC_TOL {
            return Err(KinematicsError::MetricViolation(res));
        }
        if !m.is_proper_orthochronous() {
            return Err(KinematicsError::NotProperOrthochronous);
        }
        Ok(m)
    }

    /// Embeds a spatial rotation; `apply` on the spatial part equals
    /// [`Rotation::apply`].
    pub fn from_rotation(r: &Rotation) -> Self {
        let (w, s) = r.spinor_parts();
        // right-handed quaternion (w, u) with u = -s, renormalized
        let (w, u) = (dd(w), [dd(-s.x), dd(-s.y), dd(-s.z)]);
        let n = (w * w + u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
        let (w, u) = (dd_div(w, n), u.map(|x| dd_div(x, n)));
        let uu = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        let diag = w * w - uu;
        let mut m = dd_identity();
        // R = (w² − u·u) I + 2 u uᵀ + 2 w [u]×
        let cross = [
            [dd_zero(), -u[2], u[1]],
            [u[2], dd_zero(), -u[0]],
            [-u[1], u[0], dd_zero()],
        ];
        for i in 0..3 {
            for j in 0..3 {
                let mut e = dd(2.0) * u[i] * u[j] + dd(2.0) * w * cross[i][j];
                if i == j {
                    e += diag;
                }
                m[i + 1][j + 1] = e;
            }
        }
        Self { m }
    }

    pub fn entry(&self, row: usize, col: usize) -> f64 {
        dd_f64(self.m[row][col])
    }

    pub fn to_rows(&self) -> [[f64; 4]; 4] {
        self.m.map(|r| r.map(dd_f64))
    }

    /// Largest entry of `|MᵀηM − η|`, divided by `max(1, max|Mᵢⱼ|²)`.
    #[allow(clippy::needless_range_loop)]
    pub fn metric_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut scale = 1.0f64;
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = dd_zero();
                for k in 0..4 {
                    acc += dd(ETA[k]) * self.m[k][i] * self.m[k][j];
                }
                let target = if i == j { ETA[i] } else { 0.0 };
                worst = worst.max(dd_f64(acc - dd(target)).abs());
                scale = scale.max(dd_f64(self.m[i][j]).powi(2));
            }
        }
        worst / scale
    }

    fn is_proper_orthochronous(&self) -> bool {
        let s = |i: usize, j: usize| self.m[i + 1][j + 1];
        let det3 = s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1))
            - s(0, 1) * (s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0))
            + s(0, 2) * (s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0));
        // for a Lorentz matrix, sign(det) = sign(det of the spatial block)
        dd_f64(self.m[0][0]) >= 1.0 - METRIC_TOL && dd_f64(det3) > 0.0
    }

    pub fn is_lorentz(&self) -> bool {
        self.metric_residual() <= METRIC_TOL && self.is_proper_orthochronous()
    }

    /// `self · first`: `first` acts first. Fails if the product drifts off
    /// the metric invariant by more than 1e-8.
    pub fn compose(&self, first: &LorentzMatrix) -> Result<LorentzMatrix, KinematicsError> {
        let out = Self {
            m: dd_mul(&self.m, &first.m),
        };
        let res = out.metric_residual();
        if res > COMPOSE_METRIC_TOL {
            return Err(KinematicsError::MetricViolation(res));
        }
        Ok(out)
    }

    /// `η Mᵀ η`.
    pub fn inverse(&self) -> LorentzMatrix {
        let mut m = [[dd_zero(); 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = dd(ETA[i] * ETA[j]) * self.m[j][i];
            }
        }
        Self { m }
    }

    pub fn apply(&self, p: &FourVector) -> FourVector {
        let v = dd_apply(&self.m, [dd(p.t), dd(p.x), dd(p.y), dd(p.z)]);
        FourVector::new(dd_f64(v[0]), dd_f64(v[1]), dd_f64(v[2]), dd_f64(v[3]))
    }
}

/// The symmetric pure boost of `b`.
pub fn boost_matrix(b: &Boost) -> LorentzMatrix {
    LorentzMatrix {
        m: dd_boost(dd(b.rapidity.sinh()), dd_unit(&b.direction)),
    }
}

/// `L(p)`: the rotation-free boost taking `(1, 0, 0, 0)` to `p`.
pub fn standard_boost(p: &FourVector) -> Result<LorentzMatrix, KinematicsError> {
    if !p.is_finite() || !p.is_on_shell() {
        return Err(KinematicsError::OffShell(p.on_shell_residual()));
    }
    Ok(LorentzMatrix {
        m: dd_standard_boost([dd(p.x), dd(p.y), dd(p.z)]),
    })
}

/// Wigner rotation `W = L(Λp)⁻¹ Λ L(p)` by explicit 4×4 composition.
///
/// Accepts any proper orthochronous `m`. The time component of `p` is
/// recomputed from its spatial part, so `p` only needs to be on shell within
/// 1e-6.
#[allow(clippy::needless_range_loop)]
pub fn wigner_oracle(m: &LorentzMatrix, p: &FourVector) -> Result<Rotation, KinematicsError> {
    if !p.is_finite() || !p.is_on_shell() {
        return Err(KinematicsError::OffShell(p.on_shell_residual()));
    }
    let spatial = [dd(p.x), dd(p.y), dd(p.z)];
    let lp = dd_standard_boost(spatial);
    let moved = dd_apply(&m.m, dd_on_shell(spatial));
    let back = dd_standard_boost([-moved[1], -moved[2], -moved[3]]);
    let w = dd_mul(&back, &dd_mul(&m.m, &lp));

    let mut dev = dd_f64(w[0][0] - dd(1.0)).abs();
    for k in 1..4 {
        dev = dev.max(dd_f64(w[0][k]).abs()).max(dd_f64(w[k][0]).abs());
    }
    if dev > TIME_BLOCK_TOL {
        return Err(KinematicsError::NotARotation(dev));
    }
    let block = Matrix3::from_fn(|i, j| dd_f64(w[i + 1][j + 1]));
    Ok(Rotation::from_matrix(&block)?)
}

/// Closed-form Wigner rotation for a pure boost acting on a momentum:
///
/// ```text
/// cos(φ/2)    = [cosh(α/2)cosh(β/2) + sinh(α/2)sinh(β/2)(ê·f̂)] / N
/// sin(φ/2) n̂ =  sinh(α/2)sinh(β/2)(ê×f̂) / N
/// N² = ½ + ½cosh α cosh β + ½sinh α sinh β (ê·f̂)
/// ```
///
/// Returns the rotation with axis `n̂` and angle `φ` together with
/// `D = cos(φ/2) + i sin(φ/2)(Σ·n̂)`.
pub fn wigner_halpern(b: &Boost, spec: &MomentumSpec) -> (Rotation, SpinorRotation) {
    let (alpha, beta) = (b.rapidity, spec.rapidity);
    if alpha == 0.0 || beta == 0.0 {
        return (Rotation::IDENTITY, SpinorRotation::identity());
    }
    let e = b.direction;
    let f = spec.direction;
    let ef = e.dot(&f);
    let (ca, sa) = ((0.5 * alpha).cosh(), (0.5 * alpha).sinh());
    let (cb, sb) = ((0.5 * beta).cosh(), (0.5 * beta).sinh());
    let norm =
        (0.5 + 0.5 * alpha.cosh() * beta.cosh() + 0.5 * alpha.sinh() * beta.sinh() * ef).sqrt();
    let cos_half = (ca * cb + sa * sb * ef) / norm;
    let sin_axis = e.cross(&f) * (sa * sb / norm);
    let rot = Rotation::from_spinor_parts(cos_half, sin_axis);
    (rot, SpinorRotation::from_rotation(&rot))
}
