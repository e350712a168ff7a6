//! τ-evolution of a wave function on a one-dimensional slice of
//! minisuperspace, plus the companion constraint checks.

pub mod checks;
pub mod evolve;
pub mod hamiltonian;

pub use checks::{momentum_constraint_quantum_check, particle_sector_solve, MomentumConstraintReport, SectorRow};
pub use evolve::{commutator_expectation, evolve_tau, EvolutionSummary, MidpointStepper, Wavepacket, LEAKAGE_THRESHOLD};
pub use hamiltonian::{reduced_hamiltonian, BetaGrid, MinisuperspaceConfig, ReducedHamiltonian};
