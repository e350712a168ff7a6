//! Sampled particle worldlines.

use crate::adm::MetricField;
use crate::error::{Error, Result};
use crate::linalg;
use crate::Real;

use super::shell::shell_residual;

/// One sample `(X^M, P_M, α, σ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WorldlineState<T, const D: usize> {
    pub x: [T; D],
    /// Covariant momenta `P_M`.
    pub p: [T; D],
    pub alpha: T,
    pub sigma: T,
}

/// Samples at uniformly spaced, increasing `σ`.
#[derive(Clone, Debug)]
pub struct Worldline<T, const D: usize> {
    pub states: Vec<WorldlineState<T, D>>,
    pub h: T,
    /// Declared shell value `G^{MN}P_MP_N`, i.e. `M²` for timelike lines.
    pub mass_sq: T,
}

impl<T: Real, const D: usize> Worldline<T, D> {
    /// Checks that `σ` increases in steps of `h` (to a relative `1e-9`).
    pub fn new(states: Vec<WorldlineState<T, D>>, h: T, mass_sq: T) -> Result<Self> {
        if !(h > T::zero()) {
            return Err(Error::InvalidParameter(format!("step must be positive, got {h}")));
        }
        let tol = T::lit(1e-9) * h;
        for (i, w) in states.windows(2).enumerate() {
            if ((w[1].sigma - w[0].sigma) - h).abs() > tol {
                return Err(Error::Shape(format!("non-uniform sigma step at sample {}", i + 1)));
            }
        }
        Ok(Self { states, h, mass_sq })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// `G^{MN}P_MP_N − M²` at every sample.
    pub fn shell_residuals<M: MetricField<T, D>>(&self, metric: &M) -> Result<Vec<T>> {
        self.states
            .iter()
            .map(|s| {
                let g_inv = linalg::inverse(&metric.metric(&s.x)).ok_or(Error::SingularMetric)?;
                Ok(shell_residual(&g_inv, &s.p, T::zero()) - self.mass_sq)
            })
            .collect()
    }

    /// Largest `|Ẋ^M − αP^M|` with `Ẋ` from central differences over
    /// interior samples.
    pub fn velocity_momentum_mismatch<M: MetricField<T, D>>(&self, metric: &M) -> Result<T> {
        let two = T::lit(2.0);
        let mut worst = T::zero();
        for w in self.states.windows(3) {
            let s = &w[1];
            let g_inv = linalg::inverse(&metric.metric(&s.x)).ok_or(Error::SingularMetric)?;
            let up = linalg::matvec(&g_inv, &s.p);
            for a in 0..D {
                let v = (w[2].x[a] - w[0].x[a]) / (two * self.h);
                worst = worst.max((v - s.alpha * up[a]).abs());
            }
        }
        Ok(worst)
    }
}
