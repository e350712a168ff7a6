//! 4+1 decomposition: curvature, lattices, lapse/shift metrics, extrinsic
//! curvature and the constraint densities.

pub mod constraints;
pub mod extrinsic;
pub mod geometry;
pub mod grid;
pub mod metric;

pub use constraints::{
    constraints_at, dewitt_supermetric, gauss_law, hamiltonian_constraint, kinetic_identity_check, momentum_constraint,
    momentum_constraint_grid, ConstraintValues, DeWittSupermetric, GaussLaw, HamiltonianValue,
};
pub use extrinsic::{canonical_momenta, extrinsic_curvature, ExtrinsicData};
pub use geometry::{Curvature, FnMetric, MetricField, MetricJet};
pub use grid::{Boundary, ConstantMetric, Connection, Lattice, MetricGrid, SymTensorGrid};
pub use metric::{minkowski, AdmProvider, AdmSample, FnProvider, MetricFamily, SliceMetric};
