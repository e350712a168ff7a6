//! Extrinsic curvature of the `τ = const` slices and the momenta conjugate to
//! the 4-metric.
//!
//! The algebraic routines are generic over the slice dimension `N`, which
//! plays the role of `D = g_μν g^{μν}` in the trace identities.

use super::geometry::{self, MetricField};
use super::metric::{AdmProvider, SliceMetric};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// Extrinsic curvature with its trace and the conjugate momentum density.
#[derive(Clone, Copy, Debug)]
pub struct ExtrinsicData<T, const N: usize> {
    pub k_lower: Mat<T, N>,
    pub k_trace: T,
    /// `p^{μν}`.
    pub p_upper: Mat<T, N>,
}

/// `√|det g|`; for a Lorentzian 4-metric this is `√−g`.
pub fn volume_factor<T: Real, const N: usize>(g: &Mat<T, N>) -> Result<T> {
    let det = linalg::determinant(g);
    if det == T::zero() || !det.is_finite() {
        return Err(Error::SingularMetric);
    }
    Ok(det.abs().sqrt())
}

/// `A^{μν} = g^{μα} g^{νβ} A_αβ`.
pub fn raise_both<T: Real, const N: usize>(a: &Mat<T, N>, g_inv: &Mat<T, N>) -> Mat<T, N> {
    linalg::matmul(&linalg::matmul(g_inv, a), g_inv)
}

/// `A_μν = g_μα g_νβ A^{αβ}`.
pub fn lower_both<T: Real, const N: usize>(a: &Mat<T, N>, g: &Mat<T, N>) -> Mat<T, N> {
    linalg::matmul(&linalg::matmul(g, a), g)
}

/// `p^{μν} = √−g (K g^{μν} − K^{μν})`.
pub fn canonical_momenta<T: Real, const N: usize>(k_lower: &Mat<T, N>, g: &Mat<T, N>) -> Result<Mat<T, N>> {
    let g_inv = linalg::inverse(g).ok_or(Error::SingularMetric)?;
    let s = volume_factor(g)?;
    let k = linalg::frobenius_dot(&g_inv, k_lower);
    let k_up = raise_both(k_lower, &g_inv);
    let mut p = linalg::zeros();
    for a in 0..N {
        for b in 0..N {
            p[a][b] = s * (k * g_inv[a][b] - k_up[a][b]);
        }
    }
    Ok(p)
}

/// Packages `K_μν` with its trace and momenta.
pub fn extrinsic_from_k<T: Real, const N: usize>(k_lower: Mat<T, N>, g: &Mat<T, N>) -> Result<ExtrinsicData<T, N>> {
    let g_inv = linalg::inverse(g).ok_or(Error::SingularMetric)?;
    Ok(ExtrinsicData {
        k_lower,
        k_trace: linalg::frobenius_dot(&g_inv, &k_lower),
        p_upper: canonical_momenta(&k_lower, g)?,
    })
}

/// `K_μν = (1/2N)(D_ν N_μ + D_μ N_ν − ∂_τ g_μν)` by central differences.
pub fn extrinsic_curvature<T: Real, P: AdmProvider<T>>(
    provider: &P,
    tau: T,
    x: &[T; 4],
) -> Result<ExtrinsicData<T, 4>> {
    let here = provider.sample(tau, x);
    here.validate()?;
    let h = T::lit(1e-5) * provider.scale();
    let two = T::lit(2.0);

    let later = provider.sample(tau + h, x).g;
    let earlier = provider.sample(tau - h, x).g;

    // ∂_ν N_μ stored as dshift[ν][μ]
    let mut dshift = [[T::zero(); 4]; 4];
    for nu in 0..4 {
        let mut xp = *x;
        let mut xm = *x;
        xp[nu] = xp[nu] + h;
        xm[nu] = xm[nu] - h;
        let sp = provider.sample(tau, &xp).shift;
        let sm = provider.sample(tau, &xm).shift;
        for mu in 0..4 {
            dshift[nu][mu] = (sp[mu] - sm[mu]) / (two * h);
        }
    }
    let slice = SliceMetric { provider, tau };
    let gamma = slice.christoffel(x)?;

    let mut cov = [[T::zero(); 4]; 4];
    for nu in 0..4 {
        for mu in 0..4 {
            let mut c = dshift[nu][mu];
            for l in 0..4 {
                c = c - gamma[l][nu][mu] * here.shift[l];
            }
            cov[nu][mu] = c;
        }
    }
    let mut k = linalg::zeros::<T, 4>();
    for mu in 0..4 {
        for nu in 0..4 {
            let dg_tau = (later[mu][nu] - earlier[mu][nu]) / (two * h);
            k[mu][nu] = (cov[nu][mu] + cov[mu][nu] - dg_tau) / (two * here.lapse);
        }
    }
    extrinsic_from_k(linalg::symmetrize(&k), &here.g)
}

/// Scalar curvature of the slice metric at `(τ, x)`.
pub fn slice_scalar_curvature<T: Real, P: AdmProvider<T>>(provider: &P, tau: T, x: &[T; 4]) -> Result<T> {
    Ok(geometry::curvature(&SliceMetric { provider, tau }.jet(x))?.scalar)
}

#[cfg(test)]
mod tests {
    use super::super::metric::{minkowski, AdmSample, FnProvider, MetricFamily};
    use super::*;

    #[test]
    fn static_metric_zero_shift_has_no_extrinsic_curvature() {
        let fam = MetricFamily::<f64>::Conformal { amplitude: 0.2, wavenumber: 1.0 };
        let ex = extrinsic_curvature(&fam, 0.3, &[0.1, 0.4, -0.2, 0.0]).unwrap();
        assert!(ex.k_lower.iter().flatten().all(|k| k.abs() < 1e-12));
    }

    #[test]
    fn linear_tau_growth_gives_minus_half() {
        let fam = MetricFamily::<f64>::TauDiagonal { rate: 1.0 };
        let ex = extrinsic_curvature(&fam, 0.5, &[0.0; 4]).unwrap();
        for mu in 0..4 {
            for nu in 0..4 {
                let expected = if (mu, nu) == (0, 0) { -0.5 } else { 0.0 };
                assert!((ex.k_lower[mu][nu] - expected).abs() < 1e-9, "{mu}{nu}");
            }
        }
    }

    #[test]
    fn constant_shift_on_flat_slices_is_inert() {
        let fam = MetricFamily::<f64>::Flat { lapse: 1.3, shift: [0.2, -0.4, 0.1, 0.3] };
        let ex = extrinsic_curvature(&fam, 0.0, &[1.0, 2.0, 3.0, 4.0]).unwrap();
        assert!(ex.k_lower.iter().flatten().all(|k| k.abs() < 1e-12));
    }

    #[test]
    fn linear_shift_produces_symmetrized_gradient() {
        // N_μ = (0, c x⁰, 0, 0) on flat slices: K_01 = K_10 = c/2N
        let c = 0.6;
        let lapse = 2.0;
        let p = FnProvider {
            f: move |_tau: f64, x: &[f64; 4]| AdmSample::new(lapse, [0.0, c * x[0], 0.0, 0.0], minkowski()),
        };
        let ex = extrinsic_curvature(&p, 0.0, &[0.3, 0.0, 0.0, 0.0]).unwrap();
        assert!((ex.k_lower[0][1] - c / (2.0 * lapse)).abs() < 1e-9);
        assert!((ex.k_lower[1][0] - c / (2.0 * lapse)).abs() < 1e-9);
    }

    #[test]
    fn momenta_for_k_equal_g() {
        let g = minkowski::<f64>();
        let s = 1.0;
        let p = canonical_momenta(&g, &g).unwrap();
        let g_inv = linalg::inverse(&g).unwrap();
        for a in 0..4 {
            for b in 0..4 {
                assert!((p[a][b] - 3.0 * s * g_inv[a][b]).abs() < 1e-15);
            }
        }
        assert!((linalg::frobenius_dot(&g, &p) - 12.0).abs() < 1e-14);
    }

    #[test]
    fn zero_k_zero_momenta() {
        let g = minkowski::<f64>();
        assert_eq!(canonical_momenta(&linalg::zeros(), &g).unwrap(), linalg::zeros());
    }
}
