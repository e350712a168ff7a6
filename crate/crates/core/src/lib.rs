//! Numerical kernels for five- and six-dimensional relativistic dynamics with
//! an invariant evolution parameter τ.
//!
//! - [`clifford`]: the Clifford algebra Cl(1,3), blade metric and the
//!   six-blade M(2,4) embedding.
//! - [`adm`]: 4+1 split of a 5-metric, extrinsic curvature, constraints,
//!   finite-difference curvature.
//! - [`particle`]: mass shells, worldline actions, geodesics and the
//!   integrated constraints sourced by a point particle.
//! - [`fields`]: reduction of the light-cone Klein–Gordon equation to
//!   Stueckelberg evolution on periodic lattices.
//! - [`wdw`]: τ-evolution of a wave function on minisuperspace.
//!
//! Floating-point code is generic over [`Real`] (`f32`, `f64`); the Clifford
//! algebra also works over exact rationals.

pub mod adm;
pub mod clifford;
pub mod error;
pub mod fields;
pub mod linalg;
pub mod particle;
pub mod scalar;
pub mod wdw;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;
pub use num_rational::Rational64;

pub type Multivector64 = clifford::Multivector<f64>;
pub type Multivector32 = clifford::Multivector<f32>;
pub type MultivectorQ = clifford::Multivector<Rational64>;
pub type MultivectorI = clifford::Multivector<i64>;

pub type AdmSample64 = adm::AdmSample<f64>;
pub type MetricFamily64 = adm::MetricFamily<f64>;
pub type Lattice4 = adm::Lattice<f64, 4>;
pub type Lattice5 = adm::Lattice<f64, 5>;

pub type Worldline5 = particle::Worldline<f64, 5>;
pub type Worldline6 = particle::Worldline<f64, 6>;

pub type LatticeField64 = fields::LatticeField<f64>;
pub type LatticeField32 = fields::LatticeField<f32>;

pub type Wavepacket64 = wdw::Wavepacket<f64>;
pub type MinisuperspaceConfig64 = wdw::MinisuperspaceConfig<f64>;
