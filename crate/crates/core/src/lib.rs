//! Lorentz transformations of the spin of a massive spin-1/2 particle.
//!
//! * [`rotor`]: SO(3) rotations and their SU(2) representatives.
//! * [`kinematics`]: four-momenta, boosts, Lorentz matrices and the Wigner
//!   rotation (closed form and 4×4 oracle).
//! * [`spinmap`]: states with two momentum values, the induced map of spin
//!   density matrices, its compatibility domain, complete positivity,
//!   inverse maps and erasable polarization.

pub mod kinematics;
pub mod rotor;
pub mod spinmap;

pub use kinematics::{
    boost_matrix, standard_boost, wigner_halpern, wigner_oracle, Boost, FourVector,
    KinematicsError, LorentzMatrix, MomentumSpec,
};
pub use rotor::{pauli, Rotation, RotorError, SpinorRotation, ThreeVector};
pub use spinmap::{
    build_map, choi_cp_oracle, compat_check, coplanar_magnitude, erasable_polarization,
    exists_state_oracle, is_cp_criterion, signed_angle_between, transform_density, transform_state,
    DensityMatrix2, DomainQuantities, SpinMap, SpinMapError, TwoMomentumSpinState,
};
