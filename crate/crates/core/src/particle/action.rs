//! Discretized worldline actions. Every integral is a midpoint sum over the
//! intervals of a [`Worldline`], so the forms agree to `O(h²)`.

use crate::adm::MetricField;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

use super::worldline::{Worldline, WorldlineState};

struct Interval<T, const D: usize> {
    mid: [T; D],
    vel: [T; D],
    p: [T; D],
    alpha: T,
}

fn intervals<T: Real, const D: usize>(wl: &Worldline<T, D>) -> impl Iterator<Item = Interval<T, D>> + '_ {
    let half = T::lit(0.5);
    wl.states.windows(2).map(move |w| {
        let (a, b): (&WorldlineState<T, D>, &WorldlineState<T, D>) = (&w[0], &w[1]);
        Interval {
            mid: std::array::from_fn(|i| half * (a.x[i] + b.x[i])),
            vel: std::array::from_fn(|i| (b.x[i] - a.x[i]) / wl.h),
            p: std::array::from_fn(|i| half * (a.p[i] + b.p[i])),
            alpha: half * (a.alpha + b.alpha),
        }
    })
}

fn quad<T: Real, const D: usize>(g: &Mat<T, D>, u: &[T; D], v: &[T; D]) -> T {
    let mut s = T::zero();
    for a in 0..D {
        for b in 0..D {
            s = s + g[a][b] * u[a] * v[b];
        }
    }
    s
}

/// `∫dσ [P_M Ẋ^M − (α/2)(G^{MN}P_MP_N − M²)]`.
pub fn action_einbein<T: Real, const D: usize, M: MetricField<T, D>>(wl: &Worldline<T, D>, metric: &M, mass: T) -> Result<T> {
    let half = T::lit(0.5);
    let mut total = T::zero();
    for iv in intervals(wl) {
        let g_inv = linalg::inverse(&metric.metric(&iv.mid)).ok_or(Error::SingularMetric)?;
        let pv: T = (0..D).map(|a| iv.p[a] * iv.vel[a]).sum();
        total = total + wl.h * (pv - half * iv.alpha * (quad(&g_inv, &iv.p, &iv.p) - mass * mass));
    }
    Ok(total)
}

/// `M∫dσ √|G_MN Ẋ^M Ẋ^N|`.
pub fn action_nambu<T: Real, const D: usize, M: MetricField<T, D>>(wl: &Worldline<T, D>, metric: &M, mass: T) -> T {
    intervals(wl).map(|iv| wl.h * mass * quad(&metric.metric(&iv.mid), &iv.vel, &iv.vel).abs().sqrt()).sum()
}

/// `½∫dσ (Ẋ^μẊ_μ/α + α m²)` over the first `split` coordinates.
pub fn action_howe_tucker<T: Real, const D: usize, M: MetricField<T, D>>(
    wl: &Worldline<T, D>,
    metric: &M,
    split: usize,
    m2: T,
) -> T {
    let half = T::lit(0.5);
    intervals(wl)
        .map(|iv| {
            let g = metric.metric(&iv.mid);
            let mut v2 = T::zero();
            for a in 0..split {
                for b in 0..split {
                    v2 = v2 + g[a][b] * iv.vel[a] * iv.vel[b];
                }
            }
            wl.h * half * (v2 / iv.alpha + iv.alpha * m2)
        })
        .sum()
}

/// `[P_M̄ X^M̄]` between the endpoints, summed over coordinates `split..D`:
/// what remains of `∫P_M̄Ẋ^M̄` once `Ṗ_M̄ = 0`.
pub fn extra_boundary_term<T: Real, const D: usize>(wl: &Worldline<T, D>, split: usize) -> T {
    match (wl.states.first(), wl.states.last()) {
        (Some(a), Some(b)) => (split..D).map(|i| b.p[i] * b.x[i] - a.p[i] * a.x[i]).sum(),
        _ => T::zero(),
    }
}
