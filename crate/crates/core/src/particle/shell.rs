//! Mass shells in five and six dimensions and the split of a 6D mass into a
//! 4D mass plus extra-dimension momenta.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// Metric block on the extra coordinates `(x⁵, x⁶)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ExtraBlock {
    /// Off-diagonal block, `G^{56} = G^{65} = −1`.
    #[default]
    LightCone,
    /// `G^{55} = −1`, `G^{66} = +1`.
    Diagonal,
}

impl ExtraBlock {
    /// Inverse metric `G^{M̄N̄}` on the extra block.
    pub fn inverse<T: Real>(self) -> Mat<T, 2> {
        let (z, o) = (T::zero(), T::one());
        match self {
            ExtraBlock::LightCone => [[z, -o], [-o, z]],
            ExtraBlock::Diagonal => [[-o, z], [z, o]],
        }
    }

    /// The full 6D inverse metric with `g^{μν}` in the first four slots.
    pub fn inverse_6d<T: Real>(self, g_inv: &Mat<T, 4>) -> Mat<T, 6> {
        let mut big = linalg::zeros::<T, 6>();
        for mu in 0..4 {
            for nu in 0..4 {
                big[mu][nu] = g_inv[mu][nu];
            }
        }
        let extra = self.inverse::<T>();
        for a in 0..2 {
            for b in 0..2 {
                big[4 + a][4 + b] = extra[a][b];
            }
        }
        big
    }
}

/// Result of splitting a 6D mass shell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MassSplit<T> {
    /// `m² = P^μ P_μ`.
    pub m2: T,
    pub tachyonic: bool,
}

/// `m² = M² − G^{M̄N̄} P_M̄ P_N̄`. Negative values are returned with the
/// tachyonic flag set.
pub fn mass_shell_split<T: Real>(p5: T, p6: T, mass6: T, block: ExtraBlock) -> MassSplit<T> {
    let g = block.inverse::<T>();
    let p = [p5, p6];
    let mut extra = T::zero();
    for a in 0..2 {
        for b in 0..2 {
            extra = extra + g[a][b] * p[a] * p[b];
        }
    }
    let m2 = mass6 * mass6 - extra;
    MassSplit { m2, tachyonic: m2 < T::zero() }
}

/// `G^{MN} P_M P_N − M²` for any dimension.
pub fn shell_residual<T: Real, const D: usize>(g_inv: &Mat<T, D>, p: &[T; D], mass: T) -> T {
    let mut s = T::zero();
    for a in 0..D {
        for b in 0..D {
            s = s + g_inv[a][b] * (p[a] * p[b]);
        }
    }
    s - mass * mass
}

/// Gauge-fixed 5D shell `g^{μν}P_μP_ν + P₅P₅ − M²` (unit lapse, zero shift).
pub fn gauge_fixed_residual<T: Real>(g_inv: &Mat<T, 4>, p: &[T; 4], p5: T, mass: T) -> T {
    let mut s = T::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            s = s + g_inv[mu][nu] * (p[mu] * p[nu]);
        }
    }
    s + p5 * p5 - mass * mass
}

/// 5D mass-shell residual at a lapse/shift sample: `G^{MN}P_MP_N − M²` with
/// `P = (P₅, P_μ)` in the `(τ, x^μ)` ordering.
pub fn mass_shell_residual_5d<T: Real>(inv_5d: &Mat<T, 5>, p: &[T; 5], mass: T) -> T {
    shell_residual(inv_5d, p, mass)
}

/// Rejects non-finite momenta.
pub fn check_finite<T: Real>(p: &[T]) -> Result<()> {
    match p.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::NonFinite(i)),
        None => Ok(()),
    }
}
