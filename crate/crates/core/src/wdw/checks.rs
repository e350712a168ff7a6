//! Companion constraints of the minisuperspace state: the quantum momentum
//! constraint and the particle mass shell on a constant diagonal metric.

use std::fmt::Write;

use num_complex::Complex;

use crate::adm::{momentum_constraint, FnMetric};
use crate::error::{Error, Result};
use crate::linalg;
use crate::particle::gauge_fixed_residual;
use crate::Real;

use super::hamiltonian::MinisuperspaceConfig;

/// Both sides of `(2/κ)∫d⁴x D_ν(−i δΨ/δg_μν) = −i ∂Ψ/∂X^μ` in the
/// truncation.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumConstraintReport<T> {
    pub lhs: [T; 4],
    pub rhs: [T; 4],
    pub text: String,
}

/// Evaluates the quantum momentum constraint for a homogeneous state whose
/// dependence on the particle position is `∂Ψ/∂X^μ = x_gradient`.
///
/// The left side is computed by differentiating the (constant) density
/// `(1/V)∂Ψ/∂g_μν` on the (constant) metric; any non-zero `x_gradient` puts
/// the state outside the truncation.
pub fn momentum_constraint_quantum_check<T: Real>(
    config: &MinisuperspaceConfig<T>,
    x_gradient: &[Complex<T>; 4],
) -> Result<MomentumConstraintReport<T>> {
    config.validate()?;
    if x_gradient.iter().any(|c| c.norm() != T::zero()) {
        return Err(Error::OutsideTruncation);
    }
    let g = config.metric(T::zero());
    let uu: T = config.direction.iter().map(|u| *u * *u).sum();
    let density = linalg::diag(std::array::from_fn(|a| {
        config.direction[a] / (uu * T::lit(2.0) * g[a][a] * config.volume)
    }));
    let metric = FnMetric { f: move |_: &[T; 4]| g };
    let div = momentum_constraint(|_: &[T; 4]| density, &metric, &[T::zero(); 4], T::lit(1e-3))?;
    let factor = config.volume / config.kappa;
    let lhs = div.map(|d| if config.kappa.is_finite() { factor * d } else { T::zero() });
    let rhs = x_gradient.map(|c| (Complex::new(T::zero(), -T::one()) * c).norm());
    let mut text = String::new();
    let _ = writeln!(text, "quantum momentum constraint: lhs = {lhs:?}, rhs = {rhs:?}");
    let _ = writeln!(
        text,
        "trivially satisfied in the homogeneous truncation: D_nu of spatially constant moduli vanishes \
         and the state carries no X^mu dependence; the check is non-trivial only beyond minisuperspace"
    );
    let _ = writeln!(text, "curvature potential: R(4) = 0 on constant diagonal metrics");
    Ok(MomentumConstraintReport { lhs, rhs, text })
}

/// One admissible or inadmissible point of the particle mass shell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SectorRow<T> {
    pub p5: T,
    pub p_spatial: [T; 3],
    /// `P₀² = e^{2β₀}(M² − P₅² + Σe^{−2β_i}P_i²)`.
    pub p0_sq: T,
    /// Positive root when `P₀² ≥ 0`.
    pub p0: Option<T>,
    /// `g^{μν}P_μP_ν + P₅² − M²` at `P₀ = +√P₀²`.
    pub residual: T,
}

/// Solves `g^{μν}P_μP_ν + P₅² = M²` for `P₀` on the metric at `β̄`, for every
/// `P₅` in `p5_grid` and spatial momentum in `spatial`.
pub fn particle_sector_solve<T: Real>(
    config: &MinisuperspaceConfig<T>,
    mass: T,
    p5_grid: &[T],
    spatial: &[[T; 3]],
) -> Result<Vec<SectorRow<T>>> {
    let g = config.metric(T::zero());
    let g_inv = linalg::inverse(&g).ok_or(Error::SingularMetric)?;
    let mut rows = Vec::with_capacity(p5_grid.len() * spatial.len());
    for &p5 in p5_grid {
        for &pv in spatial {
            let mut rest = mass * mass - p5 * p5;
            for i in 0..3 {
                rest = rest - g_inv[i + 1][i + 1] * pv[i] * pv[i];
            }
            let p0_sq = rest / g_inv[0][0];
            let p0 = (p0_sq >= T::zero()).then(|| p0_sq.sqrt());
            let residual = match p0 {
                Some(p0) => gauge_fixed_residual(&g_inv, &[p0, pv[0], pv[1], pv[2]], p5, mass),
                None => T::nan(),
            };
            rows.push(SectorRow { p5, p_spatial: pv, p0_sq, p0, residual });
        }
    }
    Ok(rows)
}
