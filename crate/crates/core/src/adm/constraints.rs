//! Hamiltonian and momentum constraints, the DeWitt supermetric, and the
//! discrete divergence theorem for the momentum density.

use rayon::prelude::*;

use super::extrinsic::{self, lower_both, raise_both, volume_factor, ExtrinsicData};
use super::geometry::MetricField;
use super::grid::{box_indices, Connection, SymTensorGrid};
use super::metric::{AdmProvider, SliceMetric};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// `K² − K^{μν}K_μν`.
pub fn kinetic_from_k<T: Real, const N: usize>(k_lower: &Mat<T, N>, g: &Mat<T, N>) -> Result<T> {
    let g_inv = linalg::inverse(g).ok_or(Error::SingularMetric)?;
    let k = linalg::frobenius_dot(&g_inv, k_lower);
    let k_up = raise_both(k_lower, &g_inv);
    Ok(k * k - linalg::frobenius_dot(&k_up, k_lower))
}

/// `(1/|g|)(p²/(D−1) − p^{μν}p_μν)` with `D = N`.
pub fn kinetic_from_p<T: Real, const N: usize>(p_upper: &Mat<T, N>, g: &Mat<T, N>) -> Result<T> {
    let det = linalg::determinant(g).abs();
    if det == T::zero() {
        return Err(Error::SingularMetric);
    }
    let p = linalg::frobenius_dot(g, p_upper);
    let p_low = lower_both(p_upper, g);
    let d_minus_one = T::from_usize_lossy(N - 1);
    Ok((p * p / d_minus_one - linalg::frobenius_dot(p_upper, &p_low)) / det)
}

/// Recovers `K_μν` from `p^{μν}` by inverting the momentum map.
pub fn k_from_momenta<T: Real, const N: usize>(p_upper: &Mat<T, N>, g: &Mat<T, N>) -> Result<Mat<T, N>> {
    let s = volume_factor(g)?;
    let trace_p = linalg::frobenius_dot(g, p_upper);
    let k = trace_p / (s * T::from_usize_lossy(N - 1));
    let g_inv = linalg::inverse(g).ok_or(Error::SingularMetric)?;
    let mut k_up = linalg::zeros::<T, N>();
    for a in 0..N {
        for b in 0..N {
            k_up[a][b] = k * g_inv[a][b] - p_upper[a][b] / s;
        }
    }
    Ok(lower_both(&k_up, g))
}

/// `|K² − K^{μν}K_μν − (1/−g)(p²/(D−1) − p^{μν}p_μν)|`, with `K` reconstructed
/// from `p`.
pub fn kinetic_identity_check<T: Real, const N: usize>(p_upper: &Mat<T, N>, g: &Mat<T, N>) -> Result<T> {
    let k = k_from_momenta(p_upper, g)?;
    Ok((kinetic_from_k(&k, g)? - kinetic_from_p(p_upper, g)?).abs())
}

/// `|p − √−g (D−1) K|` for momenta built from `K`.
pub fn trace_law_residual<T: Real, const N: usize>(ex: &ExtrinsicData<T, N>, g: &Mat<T, N>) -> Result<T> {
    let p = linalg::frobenius_dot(g, &ex.p_upper);
    let s = volume_factor(g)?;
    Ok((p - s * T::from_usize_lossy(N - 1) * ex.k_trace).abs())
}

/// DeWitt supermetric `𝒢_{μναβ}`, stored as `[μ][ν][α][β]`.
#[derive(Clone, Copy, Debug)]
pub struct DeWittSupermetric<T, const N: usize> {
    pub components: [[[[T; N]; N]; N]; N],
}

impl<T: Real, const N: usize> DeWittSupermetric<T, N> {
    pub fn get(&self, mu: usize, nu: usize, al: usize, be: usize) -> T {
        self.components[mu][nu][al][be]
    }

    /// `𝒢_{μναβ} a^{μν} b^{αβ}`.
    pub fn contract(&self, a: &Mat<T, N>, b: &Mat<T, N>) -> T {
        let mut s = T::zero();
        for mu in 0..N {
            for nu in 0..N {
                if a[mu][nu] == T::zero() {
                    continue;
                }
                for al in 0..N {
                    for be in 0..N {
                        s = s + self.components[mu][nu][al][be] * a[mu][nu] * b[al][be];
                    }
                }
            }
        }
        s
    }
}

/// `𝒢_{μναβ} = (1/√−g)[g_μν g_αβ/(D−1) − ½(g_μα g_νβ + g_μβ g_να)]`, `D = N`.
pub fn dewitt_supermetric<T: Real, const N: usize>(g: &Mat<T, N>) -> Result<DeWittSupermetric<T, N>> {
    let s = volume_factor(g)?;
    let d_minus_one = T::from_usize_lossy(N - 1);
    let half = T::lit(0.5);
    let mut c = [[[[T::zero(); N]; N]; N]; N];
    for mu in 0..N {
        for nu in 0..N {
            for al in 0..N {
                for be in 0..N {
                    let trace = g[mu][nu] * g[al][be] / d_minus_one;
                    let sym = half * (g[mu][al] * g[nu][be] + g[mu][be] * g[nu][al]);
                    c[mu][nu][al][be] = (trace - sym) / s;
                }
            }
        }
    }
    Ok(DeWittSupermetric { components: c })
}

/// `√−g (R + K² − K^{μν}K_μν)`.
pub fn hamiltonian_k_form<T: Real, const N: usize>(k_lower: &Mat<T, N>, g: &Mat<T, N>, scalar_curvature: T) -> Result<T> {
    Ok(volume_factor(g)? * (scalar_curvature + kinetic_from_k(k_lower, g)?))
}

/// `𝒢_{μναβ} p^{μν} p^{αβ} + √−g R`.
pub fn hamiltonian_p_form<T: Real, const N: usize>(p_upper: &Mat<T, N>, g: &Mat<T, N>, scalar_curvature: T) -> Result<T> {
    let sm = dewitt_supermetric(g)?;
    Ok(sm.contract(p_upper, p_upper) + volume_factor(g)? * scalar_curvature)
}

/// The Hamiltonian constraint evaluated along two independent algebraic routes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianValue<T> {
    pub k_form: T,
    pub p_form: T,
    pub scalar_curvature: T,
}

impl<T: Real> HamiltonianValue<T> {
    pub fn value(&self) -> T {
        self.k_form
    }

    pub fn disagreement(&self) -> T {
        (self.k_form - self.p_form).abs()
    }
}

/// `𝓗` from extrinsic data and a slice curvature.
pub fn hamiltonian_from_parts<T: Real, const N: usize>(
    ex: &ExtrinsicData<T, N>,
    g: &Mat<T, N>,
    scalar_curvature: T,
) -> Result<HamiltonianValue<T>> {
    Ok(HamiltonianValue {
        k_form: hamiltonian_k_form(&ex.k_lower, g, scalar_curvature)?,
        p_form: hamiltonian_p_form(&ex.p_upper, g, scalar_curvature)?,
        scalar_curvature,
    })
}

/// `𝓗` at `(τ, x)` of an analytic provider.
pub fn hamiltonian_constraint<T: Real, P: AdmProvider<T>>(provider: &P, tau: T, x: &[T; 4]) -> Result<HamiltonianValue<T>> {
    let ex = extrinsic::extrinsic_curvature(provider, tau, x)?;
    let r = extrinsic::slice_scalar_curvature(provider, tau, x)?;
    hamiltonian_from_parts(&ex, &provider.sample(tau, x).g, r)
}

/// `2(∂_ν p^{μν} + Γ^μ_{νλ} p^{νλ})` given the density's Christoffel part and
/// its divergence.
fn covariant_divergence<T: Real>(div: [T; 4], gamma: &[[[T; 4]; 4]; 4], p: &Mat<T, 4>) -> [T; 4] {
    let two = T::lit(2.0);
    std::array::from_fn(|mu| {
        let mut c = div[mu];
        for nu in 0..4 {
            for l in 0..4 {
                c = c + gamma[mu][nu][l] * p[nu][l];
            }
        }
        two * c
    })
}

/// `𝓗^μ = 2 D_ν p^{μν}` for an analytic density `p(x)` by central
/// differences of step `step`.
///
/// `p` is a tensor density of weight one, so the trace terms of its covariant
/// derivative cancel and only `Γ^μ_{νλ}p^{νλ}` survives.
pub fn momentum_constraint<T: Real, M: MetricField<T, 4>>(
    p: impl Fn(&[T; 4]) -> Mat<T, 4>,
    metric: &M,
    x: &[T; 4],
    step: T,
) -> Result<[T; 4]> {
    let two = T::lit(2.0);
    let mut div = [T::zero(); 4];
    for nu in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[nu] = xp[nu] + step;
        xm[nu] = xm[nu] - step;
        let pp = p(&xp);
        let pm = p(&xm);
        for mu in 0..4 {
            div[mu] = div[mu] + (pp[mu][nu] - pm[mu][nu]) / (two * step);
        }
    }
    let gamma = metric.christoffel(x)?;
    Ok(covariant_divergence(div, &gamma, &p(x)))
}

/// `∂_ν p^{μν}` at a lattice point by second-order central differences.
pub fn grid_divergence<T: Real>(p: &SymTensorGrid<T>, idx: &[usize; 4]) -> Result<[T; 4]> {
    let lat = &p.lattice;
    let two = T::lit(2.0);
    let mut div = [T::zero(); 4];
    for nu in 0..4 {
        let up = lat.neighbor(idx, nu, 1)?;
        let dn = lat.neighbor(idx, nu, -1)?;
        let h = lat.spacing[nu];
        for (mu, d) in div.iter_mut().enumerate() {
            *d = *d + (p.component(&up, mu, nu) - p.component(&dn, mu, nu)) / (two * h);
        }
    }
    Ok(div)
}

/// `𝓗^μ` at every stencil-valid lattice point, row-major over `[lo, hi)` of
/// [`super::grid::Lattice::interior`].
pub fn momentum_constraint_grid<T: Real, C: Connection<T, 4>>(p: &SymTensorGrid<T>, metric: &C) -> Result<Vec<[T; 4]>> {
    p.lattice.check_min_points(3)?;
    let (lo, hi) = p.lattice.interior(1);
    let points: Vec<[usize; 4]> = box_indices(lo, hi).collect();
    points
        .par_iter()
        .map(|idx| {
            let div = grid_divergence(p, idx)?;
            Ok(covariant_divergence(div, &metric.christoffel_at(idx)?, &p.at(idx)))
        })
        .collect()
}

/// Both sides of the discrete divergence theorem on a box of cells.
#[derive(Clone, Copy, Debug)]
pub struct GaussLaw<T> {
    /// `∫_Ω ∂_ν p^{μν} d⁴x` as a cell sum.
    pub volume: [T; 4],
    /// `∮_B p^{μν} dΣ_ν` with face values averaged across each face.
    pub flux: [T; 4],
}

impl<T: Real> GaussLaw<T> {
    pub fn max_mismatch(&self) -> T {
        (0..4).fold(T::zero(), |m, i| m.max((self.volume[i] - self.flux[i]).abs()))
    }
}

/// Compares the cell sum of the central-difference divergence over `[lo, hi)`
/// with the flux through the box faces. Central differences telescope to
/// face averages, so the two agree up to rounding.
pub fn gauss_law<T: Real>(p: &SymTensorGrid<T>, lo: [usize; 4], hi: [usize; 4]) -> Result<GaussLaw<T>> {
    let lat = &p.lattice;
    for a in 0..4 {
        if lo[a] >= hi[a] || hi[a] > lat.shape[a] {
            return Err(Error::Shape(format!("empty or oversized box on axis {a}")));
        }
    }
    let cell = lat.cell_volume();
    let cells: Vec<[usize; 4]> = box_indices(lo, hi).collect();
    let partial: Vec<[T; 4]> = cells.par_iter().map(|idx| grid_divergence(p, idx)).collect::<Result<_>>()?;
    let mut volume = [T::zero(); 4];
    for d in &partial {
        for mu in 0..4 {
            volume[mu] = volume[mu] + d[mu] * cell;
        }
    }

    let half = T::lit(0.5);
    let mut flux = [T::zero(); 4];
    for nu in 0..4 {
        let face = cell / lat.spacing[nu];
        let mut face_lo = lo;
        let mut face_hi = hi;
        face_hi[nu] = lo[nu] + 1;
        let lower: Vec<[usize; 4]> = box_indices(face_lo, face_hi).collect();
        face_lo[nu] = hi[nu] - 1;
        face_hi[nu] = hi[nu];
        let upper: Vec<[usize; 4]> = box_indices(face_lo, face_hi).collect();
        for mu in 0..4 {
            let mut f = T::zero();
            for idx in &upper {
                let out = lat.neighbor(idx, nu, 1)?;
                f = f + half * (p.component(idx, mu, nu) + p.component(&out, mu, nu)) * face;
            }
            for idx in &lower {
                let out = lat.neighbor(idx, nu, -1)?;
                f = f - half * (p.component(idx, mu, nu) + p.component(&out, mu, nu)) * face;
            }
            flux[mu] = flux[mu] + f;
        }
    }
    Ok(GaussLaw { volume, flux })
}

/// Hamiltonian and momentum constraints at one point of a provider.
#[derive(Clone, Copy, Debug)]
pub struct ConstraintValues<T> {
    pub h: HamiltonianValue<T>,
    pub h_mu: [T; 4],
    pub kinetic_residual: T,
    pub trace_residual: T,
}

/// Evaluates every constraint at `(τ, x)`. The momentum constraint
/// differentiates momenta that are themselves finite differences, so it uses
/// a coarser outer step (`1e-3·scale`).
pub fn constraints_at<T: Real, P: AdmProvider<T>>(provider: &P, tau: T, x: &[T; 4]) -> Result<ConstraintValues<T>> {
    let ex = extrinsic::extrinsic_curvature(provider, tau, x)?;
    let g = provider.sample(tau, x).g;
    let r = extrinsic::slice_scalar_curvature(provider, tau, x)?;
    let h = hamiltonian_from_parts(&ex, &g, r)?;
    let slice = SliceMetric { provider, tau };
    let outer = T::lit(1e-3) * provider.scale();
    let p_at = |y: &[T; 4]| {
        extrinsic::extrinsic_curvature(provider, tau, y)
            .map(|e| e.p_upper)
            .unwrap_or([[T::nan(); 4]; 4])
    };
    let h_mu = momentum_constraint(p_at, &slice, x, outer)?;
    Ok(ConstraintValues {
        h,
        h_mu,
        kinetic_residual: kinetic_identity_check(&ex.p_upper, &g)?,
        trace_residual: trace_law_residual(&ex, &g)?,
    })
}
