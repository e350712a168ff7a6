//! Christoffel symbols and Ricci curvature in any dimension, built from a
//! metric and its first and second partial derivatives at a point.

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// `Γ^a_{bc}` stored as `[a][b][c]`.
pub type Christoffel<T, const D: usize> = [[[T; D]; D]; D];

/// Metric with its derivatives at one point.
///
/// `dg[c][a][b] = ∂_c g_ab` and `ddg[c][d][a][b] = ∂_c ∂_d g_ab`.
#[derive(Clone, Copy, Debug)]
pub struct MetricJet<T, const D: usize> {
    pub g: Mat<T, D>,
    pub dg: [Mat<T, D>; D],
    pub ddg: [[Mat<T, D>; D]; D],
}

#[derive(Clone, Copy, Debug)]
pub struct Curvature<T, const D: usize> {
    pub christoffel: Christoffel<T, D>,
    pub ricci: Mat<T, D>,
    pub scalar: T,
}

impl<T: Real, const D: usize> Curvature<T, D> {
    /// `max |R_ab|`.
    pub fn ricci_max_abs(&self) -> T {
        self.ricci.iter().flatten().fold(T::zero(), |m, &r| m.max(r.abs()))
    }
}

/// `Γ^a_{bc} = ½ g^{ad}(∂_b g_dc + ∂_c g_db − ∂_d g_bc)`.
pub fn christoffel<T: Real, const D: usize>(g_inv: &Mat<T, D>, dg: &[Mat<T, D>; D]) -> Christoffel<T, D> {
    let half = T::lit(0.5);
    let mut lowered = [[[T::zero(); D]; D]; D];
    for d in 0..D {
        for b in 0..D {
            for c in 0..D {
                lowered[d][b][c] = dg[b][d][c] + dg[c][d][b] - dg[d][b][c];
            }
        }
    }
    let mut gamma = [[[T::zero(); D]; D]; D];
    for a in 0..D {
        for b in 0..D {
            for c in 0..D {
                let mut s = T::zero();
                for d in 0..D {
                    s = s + g_inv[a][d] * lowered[d][b][c];
                }
                gamma[a][b][c] = half * s;
            }
        }
    }
    gamma
}

/// Christoffel symbols, Ricci tensor and Ricci scalar from a metric jet.
pub fn curvature<T: Real, const D: usize>(jet: &MetricJet<T, D>) -> Result<Curvature<T, D>> {
    let g_inv = linalg::inverse(&jet.g).ok_or(Error::SingularMetric)?;
    let gamma = christoffel(&g_inv, &jet.dg);
    let half = T::lit(0.5);

    // ∂_e g^{ad} = −g^{ap} ∂_e g_pq g^{qd}
    let mut dg_inv = [[[T::zero(); D]; D]; D];
    for e in 0..D {
        let tmp = linalg::matmul(&linalg::matmul(&g_inv, &jet.dg[e]), &g_inv);
        for a in 0..D {
            for d in 0..D {
                dg_inv[e][a][d] = -tmp[a][d];
            }
        }
    }

    // dgamma[e][a][b][c] = ∂_e Γ^a_{bc}
    let mut dgamma = [[[[T::zero(); D]; D]; D]; D];
    for e in 0..D {
        for b in 0..D {
            for c in 0..D {
                let mut s = [T::zero(); D];
                let mut ds = [T::zero(); D];
                for d in 0..D {
                    s[d] = jet.dg[b][d][c] + jet.dg[c][d][b] - jet.dg[d][b][c];
                    ds[d] = jet.ddg[e][b][d][c] + jet.ddg[e][c][d][b] - jet.ddg[e][d][b][c];
                }
                for a in 0..D {
                    let mut acc = T::zero();
                    for d in 0..D {
                        acc = acc + dg_inv[e][a][d] * s[d] + g_inv[a][d] * ds[d];
                    }
                    dgamma[e][a][b][c] = half * acc;
                }
            }
        }
    }

    // R_bd = ∂_a Γ^a_bd − ∂_d Γ^a_ab + Γ^a_ae Γ^e_bd − Γ^a_de Γ^e_ab
    let mut ricci = linalg::zeros::<T, D>();
    for b in 0..D {
        for d in 0..D {
            let mut r = T::zero();
            for a in 0..D {
                r = r + dgamma[a][a][b][d] - dgamma[d][a][a][b];
                for e in 0..D {
                    r = r + gamma[a][a][e] * gamma[e][b][d] - gamma[a][d][e] * gamma[e][a][b];
                }
            }
            ricci[b][d] = r;
        }
    }
    let ricci = linalg::symmetrize(&ricci);
    let scalar = linalg::frobenius_dot(&g_inv, &ricci);
    Ok(Curvature { christoffel: gamma, ricci, scalar })
}

/// A metric given as a function of coordinates.
pub trait MetricField<T: Real, const D: usize>: Sync {
    fn metric(&self, x: &[T; D]) -> Mat<T, D>;

    /// Finite-difference step used for derivatives; providers with a natural
    /// length scale may override it.
    fn step(&self) -> T {
        T::lit(1e-5)
    }

    /// Metric jet by central differences: step `h` for first derivatives,
    /// `10h` for second derivatives (which are roundoff-limited otherwise).
    fn jet(&self, x: &[T; D]) -> MetricJet<T, D> {
        let h = self.step();
        let h2 = h * T::lit(10.0);
        let g = self.metric(x);
        let shifted = |offsets: &[(usize, T)]| {
            let mut y = *x;
            for &(axis, dx) in offsets {
                y[axis] = y[axis] + dx;
            }
            self.metric(&y)
        };
        let mut dg = [linalg::zeros(); D];
        for c in 0..D {
            let p = shifted(&[(c, h)]);
            let m = shifted(&[(c, -h)]);
            for a in 0..D {
                for b in 0..D {
                    dg[c][a][b] = (p[a][b] - m[a][b]) / (h + h);
                }
            }
        }
        let mut ddg = [[linalg::zeros(); D]; D];
        for c in 0..D {
            for d in c..D {
                let val = if c == d {
                    let p = shifted(&[(c, h2)]);
                    let m = shifted(&[(c, -h2)]);
                    let mut out = linalg::zeros::<T, D>();
                    for a in 0..D {
                        for b in 0..D {
                            out[a][b] = (p[a][b] - g[a][b] - g[a][b] + m[a][b]) / (h2 * h2);
                        }
                    }
                    out
                } else {
                    let pp = shifted(&[(c, h2), (d, h2)]);
                    let pm = shifted(&[(c, h2), (d, -h2)]);
                    let mp = shifted(&[(c, -h2), (d, h2)]);
                    let mm = shifted(&[(c, -h2), (d, -h2)]);
                    let four = T::lit(4.0);
                    let mut out = linalg::zeros::<T, D>();
                    for a in 0..D {
                        for b in 0..D {
                            out[a][b] = (pp[a][b] - pm[a][b] - mp[a][b] + mm[a][b]) / (four * h2 * h2);
                        }
                    }
                    out
                };
                ddg[c][d] = val;
                ddg[d][c] = val;
            }
        }
        MetricJet { g, dg, ddg }
    }

    fn christoffel(&self, x: &[T; D]) -> Result<Christoffel<T, D>> {
        let jet = self.jet(x);
        let g_inv = linalg::inverse(&jet.g).ok_or(Error::SingularMetric)?;
        Ok(christoffel(&g_inv, &jet.dg))
    }

    fn curvature(&self, x: &[T; D]) -> Result<Curvature<T, D>> {
        curvature(&self.jet(x))
    }
}

/// Wraps a closure as a [`MetricField`].
pub struct FnMetric<F> {
    pub f: F,
}

impl<T: Real, const D: usize, F: Fn(&[T; D]) -> Mat<T, D> + Sync> MetricField<T, D> for FnMetric<F> {
    fn metric(&self, x: &[T; D]) -> Mat<T, D> {
        (self.f)(x)
    }
}
