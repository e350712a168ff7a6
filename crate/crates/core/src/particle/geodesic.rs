//! Classical RK4 geodesic integration `Ẍ^a = −Γ^a_{bc} Ẋ^b Ẋ^c`.

use crate::adm::MetricField;
use crate::error::{Error, Result};
use crate::linalg;
use crate::Real;

use super::worldline::{Worldline, WorldlineState};

#[derive(Clone, Copy, Debug)]
pub struct GeodesicOptions<T> {
    pub steps: usize,
    pub h: T,
    /// Einbein used to convert velocities to momenta, `P_M = G_MN Ẋ^N / α`.
    pub alpha: T,
    /// Rescale `Ẋ(0)` to `|Ẋ·Ẋ| = 1` unless null.
    pub normalize: bool,
}

impl<T: Real> GeodesicOptions<T> {
    pub fn new(steps: usize, h: T) -> Self {
        Self { steps, h, alpha: T::one(), normalize: true }
    }
}

fn acceleration<T: Real, const D: usize, M: MetricField<T, D>>(metric: &M, x: &[T; D], v: &[T; D]) -> Result<[T; D]> {
    let gamma = metric.christoffel(x)?;
    let mut acc = [T::zero(); D];
    for (a, out) in acc.iter_mut().enumerate() {
        let mut s = T::zero();
        for b in 0..D {
            for c in 0..D {
                s = s + gamma[a][b][c] * v[b] * v[c];
            }
        }
        *out = -s;
    }
    Ok(acc)
}

fn axpy<T: Real, const D: usize>(x: &[T; D], k: T, d: &[T; D]) -> [T; D] {
    std::array::from_fn(|i| x[i] + k * d[i])
}

/// One RK4 step of the first-order system `(X, V)`.
pub fn rk4_step<T: Real, const D: usize, M: MetricField<T, D>>(
    metric: &M,
    x: &[T; D],
    v: &[T; D],
    h: T,
) -> Result<([T; D], [T; D])> {
    let half = T::lit(0.5) * h;
    let a1 = acceleration(metric, x, v)?;
    let (x2, v2) = (axpy(x, half, v), axpy(v, half, &a1));
    let a2 = acceleration(metric, &x2, &v2)?;
    let (x3, v3) = (axpy(x, half, &v2), axpy(v, half, &a2));
    let a3 = acceleration(metric, &x3, &v3)?;
    let (x4, v4) = (axpy(x, h, &v3), axpy(v, h, &a3));
    let a4 = acceleration(metric, &x4, &v4)?;
    let two = T::lit(2.0);
    let sixth = h / T::lit(6.0);
    let x_new = std::array::from_fn(|i| x[i] + sixth * (v[i] + two * v2[i] + two * v3[i] + v4[i]));
    let v_new = std::array::from_fn(|i| v[i] + sixth * (a1[i] + two * a2[i] + two * a3[i] + a4[i]));
    Ok((x_new, v_new))
}

fn momenta<T: Real, const D: usize, M: MetricField<T, D>>(metric: &M, x: &[T; D], v: &[T; D], alpha: T) -> [T; D] {
    linalg::matvec(&metric.metric(x), v).map(|p| p / alpha)
}

/// Integrates a geodesic from `(x0, v0)`; returns `steps + 1` samples.
pub fn geodesic_integrate<T: Real, const D: usize, M: MetricField<T, D>>(
    metric: &M,
    x0: [T; D],
    v0: [T; D],
    opts: GeodesicOptions<T>,
) -> Result<Worldline<T, D>> {
    if linalg::inverse(&metric.metric(&x0)).is_none() {
        return Err(Error::SingularMetric);
    }
    let mut v = v0;
    let g0 = metric.metric(&x0);
    let norm: T = (0..D).flat_map(|a| (0..D).map(move |b| (a, b))).map(|(a, b)| g0[a][b] * v0[a] * v0[b]).sum();
    if opts.normalize && norm != T::zero() {
        let s = norm.abs().sqrt();
        v = v.map(|c| c / s);
    }
    let mut x = x0;
    let mut states = Vec::with_capacity(opts.steps + 1);
    let alpha = opts.alpha;
    let p0 = momenta(metric, &x, &v, alpha);
    states.push(WorldlineState { x, p: p0, alpha, sigma: T::zero() });
    for n in 1..=opts.steps {
        let (xn, vn) = rk4_step(metric, &x, &v, opts.h)?;
        if xn.iter().chain(vn.iter()).any(|c| !c.is_finite()) {
            return Err(Error::NonFinite(n));
        }
        x = xn;
        v = vn;
        let p = momenta(metric, &x, &v, alpha);
        states.push(WorldlineState { x, p, alpha, sigma: opts.h * T::from_usize_lossy(n) });
    }
    let g_inv0 = linalg::inverse(&metric.metric(&x0)).ok_or(Error::SingularMetric)?;
    let mass_sq = super::shell::shell_residual(&g_inv0, &p0, T::zero());
    Worldline::new(states, opts.h, mass_sq)
}
