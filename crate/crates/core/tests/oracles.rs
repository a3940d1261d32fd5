//! Library paths checked against independently built references.

mod common;

use common::*;
use lorentz_spin::spinmap::choi_min_eigenvalue;
use lorentz_spin::*;
use nalgebra::Matrix3;
use num_complex::Complex64;
use rand::Rng;

#[test]
fn apply_matches_rodrigues_matrix() {
    let mut rng = rng(1);
    for _ in 0..500 {
        let r = rotation(&mut rng);
        let v = in_ball(&mut rng, 2.0);
        let expect = mat_apply(&expected_matrix(&r), v);
        assert!(r.apply(v).max_abs_diff(&expect) < 1e-14);
    }
}

#[test]
fn compose_matches_matrix_product() {
    let mut rng = rng(2);
    for _ in 0..500 {
        let a = rotation(&mut rng);
        let b = rotation(&mut rng);
        let product = expected_matrix(&a) * expected_matrix(&b);
        let c = a.compose(&b);
        let v = unit(&mut rng);
        assert!(c.apply(v).max_abs_diff(&mat_apply(&product, v)) < 1e-14);
        assert!((expected_matrix(&c) - product).abs().max() < 1e-14);
    }
}

#[test]
fn inverse_composes_to_identity() {
    let mut rng = rng(3);
    for _ in 0..500 {
        let r = rotation(&mut rng);
        assert!(r.compose(&r.inverse()).distance(&Rotation::IDENTITY) < 1e-12);
        assert!(r.inverse().compose(&r).distance(&Rotation::IDENTITY) < 1e-12);
    }
}

/// Coefficients `c_jk = ½ Tr(Σ_k D† Σ_j D)`.
fn conjugation_matrix(d: &SpinorRotation) -> Matrix3<f64> {
    let s = pauli();
    let m = d.matrix();
    Matrix3::from_fn(|j, k| {
        let conj = m.adjoint() * s[j] * m;
        (s[k] * conj).trace().re * 0.5
    })
}

#[test]
fn conjugation_identity_reproduces_rotation_matrix() {
    let mut rng = rng(4);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let r = rotation(&mut rng);
        let d = SpinorRotation::from_rotation(&r);
        worst = worst.max((conjugation_matrix(&d) - expected_matrix(&r)).abs().max());
        // nonnegative real trace
        assert!(d.matrix().trace().re >= 0.0);
    }
    assert!(worst < 1e-12, "worst {worst:e}");
}

#[test]
fn spinor_round_trip_up_to_sign() {
    let mut rng = rng(5);
    for _ in 0..500 {
        let r = rotation(&mut rng);
        let d = SpinorRotation::from_rotation(&r);
        let back = SpinorRotation::from_matrix(*d.matrix())
            .unwrap()
            .to_rotation();
        assert!(back.distance(&r) < 1e-10);
        let again = SpinorRotation::from_rotation(&back);
        let plus = (again.matrix() - d.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let minus = (again.matrix() + d.matrix())
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        assert!(plus.min(minus) < 1e-10);
    }
}

#[test]
fn spinor_product_is_composition() {
    let mut rng = rng(6);
    for _ in 0..500 {
        let a = rotation(&mut rng);
        let b = rotation(&mut rng);
        let da = SpinorRotation::from_rotation(&a);
        let db = SpinorRotation::from_rotation(&b);
        let prod = da.mul(&db).to_rotation();
        assert!(prod.distance(&a.compose(&b)) < 1e-10);
    }
}

#[test]
fn mass_shell_of_random_momenta() {
    let mut rng = rng(7);
    for _ in 0..500 {
        let p = momentum(&mut rng, 5.0).four_momentum();
        assert!(p.on_shell_residual() < 1e-12);
    }
}

#[test]
fn boosts_preserve_metric_and_norm() {
    let mut rng = rng(8);
    for _ in 0..500 {
        let m = boost(&mut rng, 5.0).matrix();
        assert!(m.metric_residual() < 1e-10);
        assert!(m.is_lorentz());
        let p = momentum(&mut rng, 5.0).four_momentum();
        let q = m.apply(&p);
        assert!((q.minkowski_norm_sq() - 1.0).abs() / q.t.powi(2) < 1e-9);
        let other = boost(&mut rng, 5.0).matrix();
        assert!(m.compose(&other).unwrap().is_lorentz());
    }
}

#[test]
fn standard_boost_takes_rest_to_momentum() {
    let mut rng = rng(9);
    for _ in 0..500 {
        let p = momentum(&mut rng, 5.0).four_momentum();
        let l = standard_boost(&p).unwrap();
        let q = l.apply(&FourVector::REST);
        let scale = p.t;
        assert!((q.t - p.t).abs() / scale < 1e-10);
        assert!(q.spatial().max_abs_diff(&p.spatial()) / scale < 1e-10);
        let rows = l.to_rows();
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, rows[j][i]);
            }
        }
    }
}

#[test]
fn halpern_matches_oracle_for_perpendicular_boosts() {
    let mut rng = rng(10);
    for _ in 0..200 {
        let spec = momentum(&mut rng, 5.0);
        let f = spec.direction();
        let e = unit(&mut rng).reject_from(&f).normalized().unwrap();
        let b = Boost::new(rng.gen_range(0.1..5.0), e).unwrap();
        let (h, _) = wigner_halpern(&b, &spec);
        let o = wigner_oracle(&b.matrix(), &spec.four_momentum()).unwrap();
        assert!(h.distance(&o) < 1e-9);
        let axis = e.cross(&f);
        assert!(
            h.axis()
                .max_abs_diff(&axis)
                .min(h.axis().max_abs_diff(&-axis))
                < 1e-10
        );
    }
}

#[test]
fn oracle_accepts_rotations_and_boost_products() {
    // W(R, p) for a pure rotation R is R itself
    let mut rng = rng(11);
    for _ in 0..200 {
        let r = rotation(&mut rng);
        let p = momentum(&mut rng, 4.0).four_momentum();
        let w = wigner_oracle(&LorentzMatrix::from_rotation(&r), &p).unwrap();
        assert!(w.distance(&r) < 1e-12);
    }
}

#[test]
fn density_paths_agree() {
    let mut rng = rng(12);
    for _ in 0..500 {
        let q = rng.gen_range(0.0..1.0);
        let s = TwoMomentumSpinState::new(
            q,
            in_ball(&mut rng, q),
            in_ball(&mut rng, 1.0 - q),
            momentum(&mut rng, 4.0),
            momentum(&mut rng, 4.0),
        )
        .unwrap();
        let b = boost(&mut rng, 4.0);
        let matrix_path = transform_density(&b, &s);
        let bloch_path = transform_state(&b, &s).unwrap().spin_density();
        assert!(matrix_path.max_abs_diff(&bloch_path) < 1e-12);
        assert!((matrix_path.trace() - 1.0).abs() < 1e-12);
        assert!(matrix_path.hermiticity_error() < 1e-12);
    }
}

#[test]
fn rho_tilde_eigenvalues_nonnegative() {
    let mut rng = rng(13);
    for _ in 0..500 {
        let q = rng.gen_range(0.0..1.0);
        let s = TwoMomentumSpinState::new(
            q,
            unit(&mut rng) * q,
            unit(&mut rng) * (1.0 - q),
            momentum(&mut rng, 1.0),
            momentum(&mut rng, 1.0),
        )
        .unwrap();
        let (a, b) = s.rho_tilde_pair();
        for m in [a, b] {
            // eigenvalues of a 2×2 Hermitian matrix from its characteristic polynomial
            let x = m.matrix();
            let tr = (x[(0, 0)] + x[(1, 1)]).re;
            let det = (x[(0, 0)] * x[(1, 1)] - x[(0, 1)] * x[(1, 0)]).re;
            let disc = (tr * tr - 4.0 * det).max(0.0).sqrt();
            assert!(0.5 * (tr - disc) >= -1e-12);
            assert!(m.is_positive());
        }
    }
}

#[test]
fn mean_spin_is_pauli_trace() {
    let mut rng = rng(14);
    let s = pauli();
    for _ in 0..200 {
        let st = TwoMomentumSpinState::new(
            0.5,
            in_ball(&mut rng, 0.5),
            in_ball(&mut rng, 0.5),
            momentum(&mut rng, 1.0),
            momentum(&mut rng, 1.0),
        )
        .unwrap();
        let rho = st.spin_density();
        let traced = ThreeVector::new(
            (s[0] * rho.matrix()).trace().re,
            (s[1] * rho.matrix()).trace().re,
            (s[2] * rho.matrix()).trace().re,
        );
        assert!(traced.max_abs_diff(&st.mean_spin()) < 1e-14);
        assert!((rho.matrix().trace() - Complex64::from(1.0)).norm() < 1e-14);
    }
}

#[test]
fn compat_check_matches_brute_force() {
    let mut rng = rng(15);
    let mut checked = 0;
    for _ in 0..4000 {
        let w1 = rotation(&mut rng);
        let w2 = rotation(&mut rng);
        let m = SpinMap::new(w1, w2, in_ball(&mut rng, 1.0)).unwrap();
        let z = m.z_axis().unwrap();
        let sv = in_ball(&mut rng, 1.0);
        let closed = compat_check(&m, sv);
        let brute = exists_state_oracle(sv, m.correlation_perp(), z);
        // distance from the ellipse boundary in the plane of constant s_z
        let s_z = sv.dot(&z);
        let perp = sv.reject_from(&z);
        let a = m.correlation_perp();
        let gap = (perp - a).norm() + (perp + a).norm() - 2.0 * (1.0 - s_z * s_z).sqrt();
        if gap.abs() > 1e-3 {
            assert_eq!(closed, brute, "sv {sv:?}");
            checked += 1;
        }
    }
    assert!(checked > 3500);
}

#[test]
fn choi_agrees_with_criterion() {
    let mut rng = rng(16);
    for i in 0..500 {
        let w1 = rotation(&mut rng);
        let w2 = rotation(&mut rng);
        let base = SpinMap::new(w1, w2, ThreeVector::ZERO).unwrap();
        let a = if i % 2 == 0 {
            in_ball(&mut rng, 1.0)
        } else {
            base.z_axis().unwrap() * rng.gen_range(-1.0..1.0)
        };
        let m = base.with_correlation(a).unwrap();
        assert_eq!(
            is_cp_criterion(&m),
            choi_cp_oracle(&m),
            "min eig {:e}",
            choi_min_eigenvalue(&m)
        );
        assert_eq!(is_cp_criterion(&m), i % 2 == 1);
    }
}

#[test]
fn erasure_is_undone_by_inverse_boost() {
    let mut rng = rng(17);
    for _ in 0..200 {
        let r1 = in_ball(&mut rng, 0.5);
        let s = TwoMomentumSpinState::new(
            0.5,
            r1,
            -r1,
            momentum(&mut rng, 5.0),
            momentum(&mut rng, 5.0),
        )
        .unwrap();
        let b = boost(&mut rng, 5.0);
        let produced = erasable_polarization(&b, &s.p1(), &s.p2(), r1).unwrap();
        let moved = transform_state(&b, &s).unwrap();
        assert!(moved.mean_spin().max_abs_diff(&produced) < 1e-14);
        let back = transform_state(&b.inverse(), &moved).unwrap();
        assert!(back.mean_spin().norm() < 1e-12);
    }
}
