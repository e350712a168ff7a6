//! Classical relativistic point particle in five and six dimensions.

pub mod action;
pub mod geodesic;
pub mod shell;
pub mod worldline;
pub mod zero_mode;

pub use action::{action_einbein, action_howe_tucker, action_nambu, extra_boundary_term};
pub use geodesic::{geodesic_integrate, rk4_step, GeodesicOptions};
pub use shell::{
    gauge_fixed_residual, mass_shell_residual_5d, mass_shell_split, shell_residual, ExtraBlock, MassSplit,
};
pub use worldline::{Worldline, WorldlineState};
pub use zero_mode::{
    deposit_point_source, fourier_zero_mode_reduce, zero_mode_constraints, zero_mode_from_contravariant, Bump,
    DensityGrid, ZeroMode, ZeroModePair,
};
