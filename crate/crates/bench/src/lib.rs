//! Deterministic inputs shared by the benchmarks.

use lorentz_spin::{Boost, MomentumSpec, Rotation, SpinMap, ThreeVector};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn unit(rng: &mut ChaCha8Rng) -> ThreeVector {
    loop {
        let v = ThreeVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if let Some(u) = v.normalized() {
            return u;
        }
    }
}

/// `n` boost/momentum pairs with rapidities in `[0, 5]`.
pub fn boost_momentum_pairs(n: usize) -> Vec<(Boost, MomentumSpec)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    (0..n)
        .map(|_| {
            let b = Boost::new(rng.gen_range(0.0..5.0), unit(&mut rng)).unwrap();
            let p = MomentumSpec::new(rng.gen_range(0.0..5.0), unit(&mut rng)).unwrap();
            (b, p)
        })
        .collect()
}

/// `n` spin maps with random rotations and correlation vectors in the unit ball.
pub fn spin_maps(n: usize) -> Vec<SpinMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    (0..n)
        .map(|_| {
            let w1 = Rotation::from_axis_angle(unit(&mut rng), rng.gen_range(-3.0..3.0)).unwrap();
            let w2 = Rotation::from_axis_angle(unit(&mut rng), rng.gen_range(-3.0..3.0)).unwrap();
            let a = unit(&mut rng) * rng.gen_range(0.0..1.0);
            SpinMap::new(w1, w2, a).unwrap()
        })
        .collect()
}
