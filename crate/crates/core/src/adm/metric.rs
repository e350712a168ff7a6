//! 4+1 split of a five-dimensional metric into lapse, shift and 4-metric.
//!
//! Five-dimensional indices are ordered `(τ, x⁰, x¹, x², x³)`: index 0 is the
//! evolution coordinate `τ ≡ x⁵`, indices `1..=4` are spacetime.

use super::geometry::{self, MetricField};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// Minkowski metric `diag(+1, −1, −1, −1)`.
pub fn minkowski<T: Real>() -> Mat<T, 4> {
    linalg::diag([T::one(), -T::one(), -T::one(), -T::one()])
}

/// Lapse, covariant shift and 4-metric at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdmSample<T> {
    pub lapse: T,
    /// `N_μ`.
    pub shift: [T; 4],
    pub g: Mat<T, 4>,
}

impl<T: Real> AdmSample<T> {
    pub fn new(lapse: T, shift: [T; 4], g: Mat<T, 4>) -> Self {
        Self { lapse, shift, g }
    }

    /// Unit lapse, zero shift.
    pub fn slice(g: Mat<T, 4>) -> Self {
        Self::new(T::one(), [T::zero(); 4], g)
    }

    /// Checks `N > 0` and `det g < 0`.
    pub fn validate(&self) -> Result<()> {
        if !(self.lapse > T::zero()) {
            return Err(Error::NonPositiveLapse(self.lapse.as_f64()));
        }
        let det = linalg::determinant(&self.g);
        if !(det < T::zero()) {
            return Err(Error::NotLorentzian(det.as_f64()));
        }
        Ok(())
    }

    pub fn g_inv(&self) -> Result<Mat<T, 4>> {
        linalg::inverse(&self.g).ok_or(Error::SingularMetric)
    }

    /// `N^μ = g^{μν} N_ν`.
    pub fn shift_upper(&self) -> Result<[T; 4]> {
        Ok(linalg::matvec(&self.g_inv()?, &self.shift))
    }

    /// `G_MN = [[N_μN^μ + N², N_ν], [N_μ, g_μν]]`.
    pub fn compose_5d(&self) -> Result<Mat<T, 5>> {
        let up = self.shift_upper()?;
        let mut big = linalg::zeros::<T, 5>();
        let mut nn = T::zero();
        for mu in 0..4 {
            nn = nn + self.shift[mu] * up[mu];
        }
        big[0][0] = nn + self.lapse * self.lapse;
        for mu in 0..4 {
            big[0][mu + 1] = self.shift[mu];
            big[mu + 1][0] = self.shift[mu];
            for nu in 0..4 {
                big[mu + 1][nu + 1] = self.g[mu][nu];
            }
        }
        Ok(big)
    }

    /// Closed-form inverse of [`Self::compose_5d`]:
    /// `G^{ττ} = 1/N²`, `G^{τμ} = −N^μ/N²`, `G^{μν} = g^{μν} + N^μN^ν/N²`.
    pub fn invert_5d(&self) -> Result<Mat<T, 5>> {
        let g_inv = self.g_inv()?;
        let up = linalg::matvec(&g_inv, &self.shift);
        let n2 = self.lapse * self.lapse;
        let mut inv = linalg::zeros::<T, 5>();
        inv[0][0] = T::one() / n2;
        for mu in 0..4 {
            inv[0][mu + 1] = -up[mu] / n2;
            inv[mu + 1][0] = -up[mu] / n2;
            for nu in 0..4 {
                inv[mu + 1][nu + 1] = g_inv[mu][nu] + up[mu] * up[nu] / n2;
            }
        }
        Ok(inv)
    }

    /// Splits a 5-metric back into lapse, shift and 4-metric.
    pub fn from_5d(big: &Mat<T, 5>) -> Result<Self> {
        let inv = linalg::inverse(big).ok_or(Error::SingularMetric)?;
        let lapse = lapse_from_inverse(&inv)?;
        let mut g = linalg::zeros();
        let mut shift = [T::zero(); 4];
        for mu in 0..4 {
            shift[mu] = big[0][mu + 1];
            for nu in 0..4 {
                g[mu][nu] = big[mu + 1][nu + 1];
            }
        }
        Ok(Self { lapse, shift, g })
    }
}

/// `N = 1/√(G^{ττ})`.
pub fn lapse_from_inverse<T: Real>(inv: &Mat<T, 5>) -> Result<T> {
    if !(inv[0][0] > T::zero()) {
        return Err(Error::NonPositiveLapse(inv[0][0].as_f64()));
    }
    Ok(T::one() / inv[0][0].sqrt())
}

/// A lapse/shift/4-metric field over `(τ, x^μ)`.
pub trait AdmProvider<T: Real>: Sync {
    fn sample(&self, tau: T, x: &[T; 4]) -> AdmSample<T>;

    /// Coordinate scale multiplying the `1e-5` derivative step.
    fn scale(&self) -> T {
        T::one()
    }
}

/// Built-in metric families used by the CLI and the checks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MetricFamily<T> {
    /// Constant lapse and shift over Minkowski space.
    Flat { lapse: T, shift: [T; 4] },
    /// Static `g = a(x)² η` with `a = 1 + ε sin(k x¹)`, unit lapse, zero shift.
    Conformal { amplitude: T, wavenumber: T },
    /// `g = diag(1 + r τ, −1, −1, −1)`, unit lapse, zero shift.
    TauDiagonal { rate: T },
    /// `g = diag(τ^{2p₀}, −τ^{2p₁}, −τ^{2p₂}, −τ^{2p₃})`, unit lapse, zero shift.
    /// Ricci-flat in five dimensions when `Σp = Σp² = 1`.
    Kasner5 { exponents: [T; 4] },
}

impl<T: Real> MetricFamily<T> {
    /// Conformal factor `a(x¹)` of the conformal family.
    fn conformal_factor(amplitude: T, wavenumber: T, x1: T) -> T {
        T::one() + amplitude * (wavenumber * x1).sin()
    }

    /// The full 5-metric as a field over `(τ, x^μ)`.
    pub fn metric_5d(&self, y: &[T; 5]) -> Mat<T, 5> {
        let x = [y[1], y[2], y[3], y[4]];
        self.sample(y[0], &x).compose_5d().expect("built-in families are non-degenerate")
    }
}

impl<T: Real> AdmProvider<T> for MetricFamily<T> {
    fn sample(&self, tau: T, x: &[T; 4]) -> AdmSample<T> {
        match *self {
            MetricFamily::Flat { lapse, shift } => AdmSample::new(lapse, shift, minkowski()),
            MetricFamily::Conformal { amplitude, wavenumber } => {
                let a = Self::conformal_factor(amplitude, wavenumber, x[1]);
                let eta = minkowski::<T>();
                AdmSample::slice(eta.map(|row| row.map(|v| v * a * a)))
            }
            MetricFamily::TauDiagonal { rate } => {
                let mut g = minkowski::<T>();
                g[0][0] = T::one() + rate * tau;
                AdmSample::slice(g)
            }
            MetricFamily::Kasner5 { exponents } => {
                let two = T::lit(2.0);
                let d = std::array::from_fn(|a| {
                    let v = tau.powf(two * exponents[a]);
                    if a == 0 {
                        v
                    } else {
                        -v
                    }
                });
                AdmSample::slice(linalg::diag(d))
            }
        }
    }
}

impl<T: Real> MetricFamily<T> {
    /// Exact `∂_c G_ab` of the 5-metric, `[c][a][b]`.
    pub fn gradient_5d(&self, y: &[T; 5]) -> [Mat<T, 5>; 5] {
        let mut dg = [linalg::zeros::<T, 5>(); 5];
        let two = T::lit(2.0);
        match *self {
            MetricFamily::Flat { .. } => {}
            MetricFamily::Conformal { amplitude, wavenumber } => {
                let a = Self::conformal_factor(amplitude, wavenumber, y[2]);
                let da = amplitude * wavenumber * (wavenumber * y[2]).cos();
                let eta = minkowski::<T>();
                for mu in 0..4 {
                    dg[2][mu + 1][mu + 1] = two * a * da * eta[mu][mu];
                }
            }
            MetricFamily::TauDiagonal { rate } => dg[0][1][1] = rate,
            MetricFamily::Kasner5 { exponents } => {
                let tau = y[0];
                for (a, &p) in exponents.iter().enumerate() {
                    let v = two * p * tau.powf(two * p - T::one());
                    dg[0][a + 1][a + 1] = if a == 0 { v } else { -v };
                }
            }
        }
        dg
    }
}

impl<T: Real> MetricField<T, 5> for MetricFamily<T> {
    fn metric(&self, y: &[T; 5]) -> Mat<T, 5> {
        self.metric_5d(y)
    }

    fn christoffel(&self, y: &[T; 5]) -> Result<geometry::Christoffel<T, 5>> {
        let g_inv = linalg::inverse(&self.metric_5d(y)).ok_or(Error::SingularMetric)?;
        Ok(geometry::christoffel(&g_inv, &self.gradient_5d(y)))
    }
}

/// The 4-metric of an [`AdmProvider`] on the slice `τ = const`.
pub struct SliceMetric<'a, P, T> {
    pub provider: &'a P,
    pub tau: T,
}

impl<T: Real, P: AdmProvider<T>> MetricField<T, 4> for SliceMetric<'_, P, T> {
    fn metric(&self, x: &[T; 4]) -> Mat<T, 4> {
        self.provider.sample(self.tau, x).g
    }

    fn step(&self) -> T {
        T::lit(1e-5) * self.provider.scale()
    }
}

/// Wraps a closure `(τ, x) -> AdmSample`.
pub struct FnProvider<F> {
    pub f: F,
}

impl<T: Real, F: Fn(T, &[T; 4]) -> AdmSample<T> + Sync> AdmProvider<T> for FnProvider<F> {
    fn sample(&self, tau: T, x: &[T; 4]) -> AdmSample<T> {
        (self.f)(tau, x)
    }
}
