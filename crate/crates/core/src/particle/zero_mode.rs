//! Integrated constraints sourced by a point particle: the zero-mode values
//! `H`, `H_μ` and the regularized volume integral of the Hamiltonian density.
//!
//! Five-dimensional vectors are ordered `(τ, x⁰, x¹, x², x³)`, so `p[0]` is
//! `P₅`.

use crate::adm::{AdmProvider, AdmSample, Lattice};
use crate::error::{Error, Result};
use crate::linalg;
use crate::Real;

use super::worldline::Worldline;

/// Integrated constraints `H = ∫d⁴x 𝓗` and `H_μ = ∫d⁴x 𝓗_μ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroMode<T> {
    pub h: T,
    pub h_mu: [T; 4],
}

impl<T: Real> ZeroMode<T> {
    pub fn max_abs_diff(&self, other: &Self) -> T {
        (0..4).fold((self.h - other.h).abs(), |m, i| m.max((self.h_mu[i] - other.h_mu[i]).abs()))
    }
}

/// From covariant momenta: `H = −κ(P₅ − N^μP_μ)/N`, `H_μ = κP_μ`.
pub fn zero_mode_constraints<T: Real>(p: &[T; 5], adm: &AdmSample<T>, kappa: T) -> Result<ZeroMode<T>> {
    if !(adm.lapse > T::zero()) {
        return Err(Error::NonPositiveLapse(adm.lapse.as_f64()));
    }
    let up = adm.shift_upper()?;
    let mut np = T::zero();
    for mu in 0..4 {
        np = np + up[mu] * p[mu + 1];
    }
    Ok(ZeroMode {
        h: -kappa * (p[0] - np) / adm.lapse,
        h_mu: std::array::from_fn(|mu| kappa * p[mu + 1]),
    })
}

/// From contravariant momenta: `H = −κNP⁵`, `H_μ = κg_μν(P^ν + N^νP⁵)`.
pub fn zero_mode_from_contravariant<T: Real>(p_up: &[T; 5], adm: &AdmSample<T>, kappa: T) -> Result<ZeroMode<T>> {
    if !(adm.lapse > T::zero()) {
        return Err(Error::NonPositiveLapse(adm.lapse.as_f64()));
    }
    let up = adm.shift_upper()?;
    let v: [T; 4] = std::array::from_fn(|nu| p_up[nu + 1] + up[nu] * p_up[0]);
    let lowered = linalg::matvec(&adm.g, &v);
    Ok(ZeroMode { h: -kappa * adm.lapse * p_up[0], h_mu: lowered.map(|c| kappa * c) })
}

/// `P^M = G^{MN}P_N`.
pub fn raise<T: Real>(p: &[T; 5], adm: &AdmSample<T>) -> Result<[T; 5]> {
    Ok(linalg::matvec(&adm.invert_5d()?, p))
}

/// `P_M = G_MN P^N`.
pub fn lower<T: Real>(p_up: &[T; 5], adm: &AdmSample<T>) -> Result<[T; 5]> {
    Ok(linalg::matvec(&adm.compose_5d()?, p_up))
}

/// A scalar density sampled on a five-dimensional `(τ, x^μ)` lattice.
#[derive(Clone, Debug)]
pub struct DensityGrid<T> {
    pub lattice: Lattice<T, 5>,
    pub values: Vec<T>,
}

impl<T: Real> DensityGrid<T> {
    pub fn zeros(lattice: Lattice<T, 5>) -> Self {
        let n = lattice.len();
        Self { lattice, values: vec![T::zero(); n] }
    }

    /// `∫d⁵x 𝓗` as a cell sum.
    pub fn integral(&self) -> T {
        self.lattice.cell_volume() * self.values.iter().copied().sum::<T>()
    }
}

/// Discretely normalized Gaussian bump standing in for `δ⁵(x − X)`.
#[derive(Clone, Copy, Debug)]
pub struct Bump<T> {
    /// Standard deviation in grid cells.
    pub width_cells: T,
    /// Truncation radius in standard deviations.
    pub cutoff: T,
}

impl<T: Real> Default for Bump<T> {
    fn default() -> Self {
        Self { width_cells: T::lit(3.0), cutoff: T::lit(3.0) }
    }
}

/// Per-axis stencil of a bump centred at `x`: first index and weights whose
/// sum times the spacing is one.
type AxisStencil<T> = (isize, Vec<T>);

impl<T: Real> Bump<T> {
    fn radius(&self) -> isize {
        (self.width_cells * self.cutoff).ceil().to_isize().unwrap_or(0)
    }

    fn stencils(&self, lattice: &Lattice<T, 5>, x: &[T; 5]) -> [AxisStencil<T>; 5] {
        let r = self.radius();
        std::array::from_fn(|a| {
            let h = lattice.spacing[a];
            let sigma = self.width_cells * h;
            let u = (x[a] - lattice.origin[a]) / h;
            let centre = u.round().to_isize().unwrap_or(0);
            let mut w: Vec<T> = (-r..=r)
                .map(|j| {
                    let d = (T::from_isize(centre + j).unwrap_or(T::zero()) * h + lattice.origin[a]) - x[a];
                    (-(d * d) / (T::lit(2.0) * sigma * sigma)).exp()
                })
                .collect();
            let total: T = w.iter().copied().sum();
            for v in &mut w {
                *v = *v / (total * h);
            }
            (centre - r, w)
        })
    }

    /// Visits `(flat index, weight)` for every cell of the window; periodic
    /// axes wrap, others must contain the window.
    fn deposit(&self, lattice: &Lattice<T, 5>, x: &[T; 5], sample: usize, mut f: impl FnMut(usize, T)) -> Result<()> {
        let stencils = self.stencils(lattice, x);
        let mut axes: [Vec<(usize, T)>; 5] = Default::default();
        for a in 0..5 {
            let (start, ref w) = stencils[a];
            let n = lattice.shape[a] as isize;
            for (j, &wj) in w.iter().enumerate() {
                let i = start + j as isize;
                let idx = match lattice.boundary[a] {
                    crate::adm::Boundary::Periodic => i.rem_euclid(n),
                    crate::adm::Boundary::Strict if (0..n).contains(&i) => i,
                    crate::adm::Boundary::Strict => return Err(Error::WorldlineExitsGrid(sample)),
                };
                axes[a].push((idx as usize, wj));
            }
        }
        for &(i0, w0) in &axes[0] {
            for &(i1, w1) in &axes[1] {
                let w01 = w0 * w1;
                for &(i2, w2) in &axes[2] {
                    let w012 = w01 * w2;
                    for &(i3, w3) in &axes[3] {
                        let w0123 = w012 * w3;
                        for &(i4, w4) in &axes[4] {
                            f(lattice.flat(&[i0, i1, i2, i3, i4]), w0123 * w4);
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Trapezoid weights `α dσ` along the worldline.
fn trapezoid<T: Real, const D: usize>(wl: &Worldline<T, D>) -> Vec<T> {
    let n = wl.len();
    let half = T::lit(0.5);
    wl.states
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let end = if n > 1 && (k == 0 || k == n - 1) { half } else { T::one() };
            end * wl.h * s.alpha
        })
        .collect()
}

fn inside<T: Real>(lattice: &Lattice<T, 5>, x: &[T; 5]) -> bool {
    (0..5).all(|a| {
        let lo = lattice.origin[a];
        let hi = lo + lattice.spacing[a] * T::from_usize_lossy(lattice.shape[a] - 1);
        x[a] >= lo && x[a] <= hi
    })
}

/// `(N, P⁵)` at each worldline sample.
fn source_terms<T: Real, P: AdmProvider<T>>(wl: &Worldline<T, 5>, provider: &P) -> Result<Vec<(T, T)>> {
    wl.states
        .iter()
        .map(|s| {
            let adm = provider.sample(s.x[0], &[s.x[1], s.x[2], s.x[3], s.x[4]]);
            Ok((adm.lapse, raise(&s.p, &adm)?[0]))
        })
        .collect()
}

/// Builds the regularized source density
/// `𝓗(x) = −κ Σ_k α_k dσ N(x) (P⁵_k)² B(x − X_k)`.
///
/// The lapse is evaluated at the field point, so the volume integral differs
/// from the worldline sum by `O(w²)` when `N` varies.
pub fn deposit_point_source<T: Real, P: AdmProvider<T>>(
    lattice: Lattice<T, 5>,
    wl: &Worldline<T, 5>,
    provider: &P,
    kappa: T,
    bump: Bump<T>,
) -> Result<DensityGrid<T>> {
    let weights = trapezoid(wl);
    let terms = source_terms(wl, provider)?;
    let mut grid = DensityGrid::zeros(lattice);
    let lapse: Vec<T> = (0..grid.lattice.len())
        .map(|f| {
            let y = grid.lattice.coords(&grid.lattice.unflat(f));
            provider.sample(y[0], &[y[1], y[2], y[3], y[4]]).lapse
        })
        .collect();
    for (k, s) in wl.states.iter().enumerate() {
        if !inside(&grid.lattice, &s.x) {
            return Err(Error::WorldlineExitsGrid(k));
        }
        let (_, p5) = terms[k];
        let amp = -kappa * weights[k] * p5 * p5;
        let values = &mut grid.values;
        bump.deposit(&grid.lattice, &s.x, k, |f, w| values[f] = values[f] + amp * lapse[f] * w)?;
    }
    Ok(grid)
}

/// Both sides of the integrated Hamiltonian constraint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroModePair<T> {
    /// `∫d⁵x 𝓗`.
    pub lhs: T,
    /// `−κ ∫α dσ N (P⁵)²` along the worldline.
    pub rhs: T,
}

impl<T: Real> ZeroModePair<T> {
    pub fn difference(&self) -> T {
        (self.lhs - self.rhs).abs()
    }
}

/// Evaluates the volume integral of `field` and the worldline integral it
/// should equal.
pub fn fourier_zero_mode_reduce<T: Real, P: AdmProvider<T>>(
    field: &DensityGrid<T>,
    wl: &Worldline<T, 5>,
    provider: &P,
    kappa: T,
) -> Result<ZeroModePair<T>> {
    if let Some(k) = wl.states.iter().position(|s| !inside(&field.lattice, &s.x)) {
        return Err(Error::WorldlineExitsGrid(k));
    }
    let weights = trapezoid(wl);
    let rhs = source_terms(wl, provider)?
        .iter()
        .zip(&weights)
        .fold(T::zero(), |acc, (&(n, p5), &w)| acc - kappa * w * n * p5 * p5);
    Ok(ZeroModePair { lhs: field.integral(), rhs })
}
