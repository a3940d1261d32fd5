#![allow(dead_code)]

use lorentz_spin::{Boost, MomentumSpec, Rotation, ThreeVector};
use nalgebra::{Matrix3, Vector3};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn unit(rng: &mut impl Rng) -> ThreeVector {
    loop {
        let v = ThreeVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

/// Uniform in the ball of the given radius.
pub fn in_ball(rng: &mut impl Rng, radius: f64) -> ThreeVector {
    unit(rng) * (radius * rng.gen_range(0.0f64..1.0).cbrt())
}

pub fn rotation(rng: &mut impl Rng) -> Rotation {
    Rotation::from_axis_angle(unit(rng), rng.gen_range(-PI..PI)).unwrap()
}

pub fn boost(rng: &mut impl Rng, max_rapidity: f64) -> Boost {
    Boost::new(rng.gen_range(0.0..max_rapidity), unit(rng)).unwrap()
}

pub fn momentum(rng: &mut impl Rng, max_rapidity: f64) -> MomentumSpec {
    MomentumSpec::new(rng.gen_range(0.0..max_rapidity), unit(rng)).unwrap()
}

/// Right-handed Rodrigues matrix `I + sin t K + (1 − cos t) K²`.
pub fn rodrigues(n: ThreeVector, t: f64) -> Matrix3<f64> {
    let k = Matrix3::new(0.0, -n.z, n.y, n.z, 0.0, -n.x, -n.y, n.x, 0.0);
    Matrix3::identity() + k * t.sin() + k * k * (1.0 - t.cos())
}

/// The matrix a `Rotation` is documented to act by: clockwise about its axis.
pub fn expected_matrix(r: &Rotation) -> Matrix3<f64> {
    rodrigues(r.axis(), -r.angle())
}

pub fn mat_apply(m: &Matrix3<f64>, v: ThreeVector) -> ThreeVector {
    let w = m * Vector3::new(v.x, v.y, v.z);
    ThreeVector::new(w.x, w.y, w.z)
}
