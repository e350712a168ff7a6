//! Six-dimensional Klein–Gordon fields reduced to Stueckelberg evolution in τ.

pub mod dispersion;
pub mod evolve;
pub mod lattice;
pub mod observables;

pub use dispersion::{coupled_dispersion_check, kg6_dispersion_residual, reduce_ansatz, PlaneWave6, ReducedData, ReductionParams};
pub use evolve::{kg6_evolve_lightcone, stueckelberg_evolve, LightConeEvolver, StueckelbergEvolver};
pub use lattice::{minkowski_square, LatticeField, ModeSpectrum, Periodic};
pub use observables::{observables, read_snapshot, write_snapshot, Observables};
