//! Minisuperspace reduction of the gravitational τ-Hamiltonian to a line in
//! the space of constant diagonal metrics.
//!
//! The metric is `g = diag(e^{2β₀}, −e^{2β₁}, −e^{2β₂}, −e^{2β₃})` with
//! `β = β̄ + s u`. On homogeneous fields `δ/δg_μν → (1/V)∂/∂g_μν`, and with
//! `∂/∂g_AA = (1/2g_AA)∂/∂β_A` the supermetric term becomes
//! `C(s) ∂_s²` where `C = C^{AB}w_Aw_B`, `w = u/|u|²` and
//! `C^{AB} = (1/3 − δ_AB)/(4√−g)`.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// Constant diagonal metrics along one direction in β-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MinisuperspaceConfig<T> {
    /// `β̄`, the point at `s = 0`.
    pub base: [T; 4],
    /// `u`; `s` is the coordinate along it.
    pub direction: [T; 4],
    /// `κ = 16π𝒢`. `+∞` switches the Hamiltonian off.
    pub kappa: T,
    /// Coordinate 4-volume of the periodic box.
    pub volume: T,
}

impl<T: Real> MinisuperspaceConfig<T> {
    /// The overall scale mode `u = (1, 1, 1, 1)` through `β = 0`.
    pub fn iso(kappa: T, volume: T) -> Self {
        Self { base: [T::zero(); 4], direction: [T::one(); 4], kappa, volume }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.kappa > T::zero()) {
            return Err(Error::InvalidParameter(format!("kappa must be positive, got {}", self.kappa)));
        }
        if !(self.volume > T::zero()) || !self.volume.is_finite() {
            return Err(Error::InvalidParameter(format!("volume must be positive, got {}", self.volume)));
        }
        let uu: T = self.direction.iter().map(|u| *u * *u).sum();
        if !(uu > T::zero()) || !uu.is_finite() {
            return Err(Error::DegenerateModuli("direction must be a non-zero vector".into()));
        }
        if self.direction_weight().abs() <= T::lit(1e-12) * uu {
            return Err(Error::DegenerateModuli(
                "direction is null for the supermetric, e.g. the purely spatial scale mode".into(),
            ));
        }
        Ok(())
    }

    /// `(Σu)²/3 − Σu²`; zero for null directions.
    fn direction_weight(&self) -> T {
        let s: T = self.direction.iter().copied().sum();
        let q: T = self.direction.iter().map(|u| *u * *u).sum();
        s * s / T::lit(3.0) - q
    }

    pub fn beta(&self, s: T) -> [T; 4] {
        std::array::from_fn(|a| self.base[a] + s * self.direction[a])
    }

    pub fn metric(&self, s: T) -> Mat<T, 4> {
        let two = T::lit(2.0);
        let b = self.beta(s);
        linalg::diag(std::array::from_fn(|a| {
            let v = (two * b[a]).exp();
            if a == 0 {
                v
            } else {
                -v
            }
        }))
    }

    /// `C(s) = 𝒢_{μναβ}v^{μν}v^{αβ}` with `v^{AA} = w_A/(2g_AA)`.
    pub fn coefficient(&self, s: T) -> T {
        let uu: T = self.direction.iter().map(|u| *u * *u).sum();
        let sqrt_g = self.beta(s).iter().copied().sum::<T>().exp();
        self.direction_weight() / (T::lit(4.0) * sqrt_g * uu * uu)
    }

    /// `1/(κV)`.
    pub fn prefactor(&self) -> T {
        T::one() / (self.kappa * self.volume)
    }

    /// Coefficient `a(s) = −C(s)/(κV)` of `∂_s(a ∂_s)` in the Hamiltonian.
    pub fn kinetic_coefficient(&self, s: T) -> T {
        -self.prefactor() * self.coefficient(s)
    }
}

/// Uniform grid `s_j = lo + j h`, `j = 0..n`, with `ψ = 0` one step outside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BetaGrid<T> {
    pub lo: T,
    pub hi: T,
    pub n: usize,
}

impl<T: Real> BetaGrid<T> {
    pub fn new(lo: T, hi: T, n: usize) -> Result<Self> {
        if n < 3 || !(hi > lo) || !lo.is_finite() || !hi.is_finite() {
            return Err(Error::DegenerateModuli(format!("grid [{lo}, {hi}] with {n} points")));
        }
        Ok(Self { lo, hi, n })
    }

    pub fn h(&self) -> T {
        (self.hi - self.lo) / T::from_usize_lossy(self.n - 1)
    }

    pub fn point(&self, j: usize) -> T {
        self.lo + self.h() * T::from_usize_lossy(j)
    }

    /// Signed position for ghost points at `j = −1` and `j = n`.
    fn point_signed(&self, j: isize) -> T {
        self.lo + self.h() * T::from_isize(j).unwrap_or(T::zero())
    }

    pub fn points(&self) -> Vec<T> {
        (0..self.n).map(|j| self.point(j)).collect()
    }
}

/// Real symmetric tridiagonal discretization of
/// `H = −(1/κV) ∂_s(C ∂_s)` with `C_{j±½}` averaged from neighbours.
/// The curvature potential vanishes on constant metrics.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedHamiltonian<T> {
    pub grid: BetaGrid<T>,
    pub diag: Vec<T>,
    /// `H_{j,j+1} = H_{j+1,j}`.
    pub off: Vec<T>,
    pub potential_vanishes: bool,
}

pub fn reduced_hamiltonian<T: Real>(config: &MinisuperspaceConfig<T>, grid: BetaGrid<T>) -> Result<ReducedHamiltonian<T>> {
    config.validate()?;
    let h = grid.h();
    let scale = config.prefactor() / (h * h);
    let half = T::lit(0.5);
    let n = grid.n as isize;
    // C at j + ½ for j = −1..n
    let faces: Vec<T> = (-1..n)
        .map(|j| half * (config.coefficient(grid.point_signed(j)) + config.coefficient(grid.point_signed(j + 1))))
        .collect();
    let diag = (0..grid.n).map(|j| scale * (faces[j] + faces[j + 1])).collect();
    let off = (0..grid.n - 1).map(|j| -scale * faces[j + 1]).collect();
    Ok(ReducedHamiltonian { grid, diag, off, potential_vanishes: true })
}

impl<T: Real> ReducedHamiltonian<T> {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `y = H x` for any scalar type that can be scaled by `T`.
    pub fn apply<C>(&self, x: &[C]) -> Vec<C>
    where
        C: Copy + std::ops::Add<Output = C> + std::ops::Mul<T, Output = C>,
    {
        let n = self.len();
        (0..n)
            .map(|j| {
                let mut y = x[j] * self.diag[j];
                if j > 0 {
                    y = y + x[j - 1] * self.off[j - 1];
                }
                if j + 1 < n {
                    y = y + x[j + 1] * self.off[j];
                }
                y
            })
            .collect()
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let n = self.len();
        let mut m = vec![vec![T::zero(); n]; n];
        for j in 0..n {
            m[j][j] = self.diag[j];
            if j + 1 < n {
                m[j][j + 1] = self.off[j];
                m[j + 1][j] = self.off[j];
            }
        }
        m
    }

    /// Gershgorin bound on the spectral radius.
    pub fn spectral_bound(&self) -> T {
        (0..self.len()).fold(T::zero(), |m, j| {
            let mut r = self.diag[j].abs();
            if j > 0 {
                r = r + self.off[j - 1].abs();
            }
            if j < self.off.len() {
                r = r + self.off[j].abs();
            }
            m.max(r)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn iso_coefficient_at_origin() {
        let c = MinisuperspaceConfig::<f64>::iso(1.0, 1.0);
        assert!((c.coefficient(0.0) - 1.0 / 48.0).abs() < 1e-16);
        assert!((c.kinetic_coefficient(0.0) + 1.0 / 48.0).abs() < 1e-16);
        assert!((c.coefficient(0.5) - (-2.0f64).exp() / 48.0).abs() < 1e-16);
    }

    #[test]
    fn spatial_scale_mode_is_null() {
        let mut c = MinisuperspaceConfig::<f64>::iso(1.0, 1.0);
        c.direction = [0.0, 1.0, 1.0, 1.0];
        assert!(matches!(c.validate(), Err(Error::DegenerateModuli(_))));
    }

    #[test]
    fn kappa_and_volume_scale_the_operator() {
        let grid = BetaGrid::new(-2.0, 2.0, 17).unwrap();
        let base = reduced_hamiltonian(&MinisuperspaceConfig::iso(1.0, 1.0), grid).unwrap();
        let k2 = reduced_hamiltonian(&MinisuperspaceConfig::iso(2.0, 1.0), grid).unwrap();
        let v2 = reduced_hamiltonian(&MinisuperspaceConfig::iso(1.0, 2.0), grid).unwrap();
        for j in 0..17 {
            assert_eq!(k2.diag[j], 0.5 * base.diag[j]);
            assert_eq!(v2.diag[j], 0.5 * base.diag[j]);
        }
    }

    #[test]
    fn infinite_kappa_switches_off() {
        let grid = BetaGrid::new(-1.0, 1.0, 5).unwrap();
        let h = reduced_hamiltonian(&MinisuperspaceConfig::iso(f64::INFINITY, 1.0), grid).unwrap();
        assert!(h.diag.iter().chain(&h.off).all(|v| *v == 0.0));
    }

    #[test]
    fn degenerate_grids() {
        assert!(BetaGrid::new(1.0, 1.0, 10).is_err());
        assert!(BetaGrid::new(0.0, 1.0, 2).is_err());
    }
}
