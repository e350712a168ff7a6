//! Uniform lattices and finite-difference curvature on sampled metrics.

use rayon::prelude::*;

use super::geometry::{self, Christoffel, Curvature, MetricJet};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Real;

/// What a stencil does when it reaches past the last sample on an axis.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Boundary {
    /// Indices wrap around.
    #[default]
    Periodic,
    /// Leaving the grid is an error.
    Strict,
}

/// Geometry of a uniform grid in `D` dimensions, row-major with the last
/// axis fastest.
#[derive(Clone, Copy, Debug)]
pub struct Lattice<T, const D: usize> {
    pub shape: [usize; D],
    pub spacing: [T; D],
    pub origin: [T; D],
    pub boundary: [Boundary; D],
}

impl<T: Real, const D: usize> Lattice<T, D> {
    pub fn new(shape: [usize; D], spacing: [T; D], origin: [T; D]) -> Self {
        Self { shape, spacing, origin, boundary: [Boundary::Periodic; D] }
    }

    pub fn with_boundary(mut self, boundary: [Boundary; D]) -> Self {
        self.boundary = boundary;
        self
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn cell_volume(&self) -> T {
        self.spacing.iter().fold(T::one(), |v, &h| v * h)
    }

    pub fn flat(&self, idx: &[usize; D]) -> usize {
        let mut f = 0;
        for a in 0..D {
            f = f * self.shape[a] + idx[a];
        }
        f
    }

    pub fn unflat(&self, mut f: usize) -> [usize; D] {
        let mut idx = [0; D];
        for a in (0..D).rev() {
            idx[a] = f % self.shape[a];
            f /= self.shape[a];
        }
        idx
    }

    pub fn coords(&self, idx: &[usize; D]) -> [T; D] {
        let mut x = self.origin;
        for a in 0..D {
            x[a] = x[a] + self.spacing[a] * T::from_usize_lossy(idx[a]);
        }
        x
    }

    /// Index displaced by `offset` along `axis`, honouring the boundary policy.
    pub fn neighbor(&self, idx: &[usize; D], axis: usize, offset: isize) -> Result<[usize; D]> {
        let n = self.shape[axis] as isize;
        let target = idx[axis] as isize + offset;
        let mut out = *idx;
        out[axis] = match self.boundary[axis] {
            Boundary::Periodic => target.rem_euclid(n) as usize,
            Boundary::Strict if (0..n).contains(&target) => target as usize,
            Boundary::Strict => return Err(Error::StencilOutOfBounds { axis, index: idx[axis] }),
        };
        Ok(out)
    }

    /// Index range on which a stencil of half-width `margin` stays inside the grid.
    pub fn interior(&self, margin: usize) -> ([usize; D], [usize; D]) {
        let mut lo = [0; D];
        let mut hi = self.shape;
        for a in 0..D {
            if self.boundary[a] == Boundary::Strict {
                lo[a] = margin.min(self.shape[a]);
                hi[a] = self.shape[a].saturating_sub(margin).max(lo[a]);
            }
        }
        (lo, hi)
    }

    pub fn check_min_points(&self, need: usize) -> Result<()> {
        for a in 0..D {
            if self.shape[a] < need {
                return Err(Error::GridTooSmall { axis: a, len: self.shape[a], need });
            }
        }
        Ok(())
    }
}

/// Iterates the multi-indices of a box `[lo, hi)` in row-major order.
pub fn box_indices<const D: usize>(lo: [usize; D], hi: [usize; D]) -> impl Iterator<Item = [usize; D]> {
    let empty = (0..D).any(|a| lo[a] >= hi[a]);
    let mut cur = if empty { None } else { Some(lo) };
    std::iter::from_fn(move || {
        let out = cur?;
        let mut next = out;
        let mut a = D;
        loop {
            if a == 0 {
                cur = None;
                break;
            }
            a -= 1;
            next[a] += 1;
            if next[a] < hi[a] {
                cur = Some(next);
                break;
            }
            next[a] = lo[a];
        }
        Some(out)
    })
}

/// A symmetric rank-2 metric sampled on every lattice point.
#[derive(Clone, Debug)]
pub struct MetricGrid<T, const D: usize> {
    pub lattice: Lattice<T, D>,
    pub samples: Vec<Mat<T, D>>,
}

/// Ricci tensor and scalar on the stencil-valid region `[lo, hi)` of a grid.
#[derive(Clone, Debug)]
pub struct RicciField<T, const D: usize> {
    pub lo: [usize; D],
    pub hi: [usize; D],
    pub ricci: Vec<Mat<T, D>>,
    pub scalar: Vec<T>,
}

impl<T: Real, const D: usize> RicciField<T, D> {
    pub fn max_abs_ricci(&self) -> T {
        self.ricci.iter().flatten().flatten().fold(T::zero(), |m, &r| m.max(r.abs()))
    }
}

impl<T: Real, const D: usize> MetricGrid<T, D> {
    pub fn from_fn(lattice: Lattice<T, D>, f: impl Fn(&[T; D]) -> Mat<T, D> + Sync) -> Self {
        let samples = (0..lattice.len())
            .into_par_iter()
            .map(|i| f(&lattice.coords(&lattice.unflat(i))))
            .collect();
        Self { lattice, samples }
    }

    pub fn at(&self, idx: &[usize; D]) -> &Mat<T, D> {
        &self.samples[self.lattice.flat(idx)]
    }

    fn sample_offset(&self, idx: &[usize; D], moves: &[(usize, isize)]) -> Result<&Mat<T, D>> {
        let mut cur = *idx;
        for &(axis, off) in moves {
            cur = self.lattice.neighbor(&cur, axis, off)?;
        }
        Ok(self.at(&cur))
    }

    /// Second-order central-difference metric jet.
    pub fn jet_at(&self, idx: &[usize; D]) -> Result<MetricJet<T, D>> {
        self.lattice.check_min_points(3)?;
        let g = *self.at(idx);
        let two = T::lit(2.0);
        let four = T::lit(4.0);
        let mut dg = [linalg::zeros(); D];
        let mut ddg = [[linalg::zeros(); D]; D];
        for c in 0..D {
            let h = self.lattice.spacing[c];
            let p = self.sample_offset(idx, &[(c, 1)])?;
            let m = self.sample_offset(idx, &[(c, -1)])?;
            for a in 0..D {
                for b in 0..D {
                    dg[c][a][b] = (p[a][b] - m[a][b]) / (two * h);
                    ddg[c][c][a][b] = (p[a][b] - two * g[a][b] + m[a][b]) / (h * h);
                }
            }
            for d in c + 1..D {
                let k = self.lattice.spacing[d];
                let pp = self.sample_offset(idx, &[(c, 1), (d, 1)])?;
                let pm = self.sample_offset(idx, &[(c, 1), (d, -1)])?;
                let mp = self.sample_offset(idx, &[(c, -1), (d, 1)])?;
                let mm = self.sample_offset(idx, &[(c, -1), (d, -1)])?;
                for a in 0..D {
                    for b in 0..D {
                        let v = (pp[a][b] - pm[a][b] - mp[a][b] + mm[a][b]) / (four * h * k);
                        ddg[c][d][a][b] = v;
                        ddg[d][c][a][b] = v;
                    }
                }
            }
        }
        Ok(MetricJet { g, dg, ddg })
    }

    pub fn curvature_at(&self, idx: &[usize; D]) -> Result<Curvature<T, D>> {
        geometry::curvature(&self.jet_at(idx)?)
    }

    /// Finite-difference Ricci tensor and scalar over the stencil-valid region.
    ///
    /// Points are independent, so the sweep is parallel; every point is
    /// computed by the same sequential arithmetic, hence the result does not
    /// depend on how the work is split.
    pub fn ricci_fd(&self) -> Result<RicciField<T, D>> {
        self.lattice.check_min_points(3)?;
        let (lo, hi) = self.lattice.interior(1);
        let points: Vec<[usize; D]> = box_indices(lo, hi).collect();
        let curv: Vec<Curvature<T, D>> =
            points.par_iter().map(|idx| self.curvature_at(idx)).collect::<Result<_>>()?;
        Ok(RicciField {
            lo,
            hi,
            ricci: curv.iter().map(|c| c.ricci).collect(),
            scalar: curv.iter().map(|c| c.scalar).collect(),
        })
    }
}

/// Source of Christoffel symbols at lattice points.
pub trait Connection<T: Real, const D: usize>: Sync {
    fn christoffel_at(&self, idx: &[usize; D]) -> Result<Christoffel<T, D>>;
}

impl<T: Real, const D: usize> Connection<T, D> for MetricGrid<T, D> {
    fn christoffel_at(&self, idx: &[usize; D]) -> Result<Christoffel<T, D>> {
        let jet = self.jet_at(idx)?;
        let g_inv = linalg::inverse(&jet.g).ok_or(Error::SingularMetric)?;
        Ok(geometry::christoffel(&g_inv, &jet.dg))
    }
}

/// A position-independent metric; its connection vanishes identically.
#[derive(Clone, Copy, Debug)]
pub struct ConstantMetric<T, const D: usize>(pub Mat<T, D>);

impl<T: Real, const D: usize> Connection<T, D> for ConstantMetric<T, D> {
    fn christoffel_at(&self, _idx: &[usize; D]) -> Result<Christoffel<T, D>> {
        Ok([[[T::zero(); D]; D]; D])
    }
}

/// Symmetric 4×4 tensor field stored packed (10 components per point).
#[derive(Clone, Debug)]
pub struct SymTensorGrid<T> {
    pub lattice: Lattice<T, 4>,
    packed: Vec<[T; 10]>,
}

const PACK: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 4, 5, 6], [2, 5, 7, 8], [3, 6, 8, 9]];

impl<T: Real> SymTensorGrid<T> {
    /// Samples `f`, symmetrizing its output.
    pub fn from_fn(lattice: Lattice<T, 4>, f: impl Fn(&[T; 4]) -> Mat<T, 4> + Sync) -> Self {
        let packed = (0..lattice.len())
            .into_par_iter()
            .map(|i| pack(&linalg::symmetrize(&f(&lattice.coords(&lattice.unflat(i))))))
            .collect();
        Self { lattice, packed }
    }

    pub fn at(&self, idx: &[usize; 4]) -> Mat<T, 4> {
        unpack(&self.packed[self.lattice.flat(idx)])
    }

    /// Component `(μ, ν)` at a lattice point.
    pub fn component(&self, idx: &[usize; 4], mu: usize, nu: usize) -> T {
        self.packed[self.lattice.flat(idx)][PACK[mu][nu]]
    }
}

fn pack<T: Real>(m: &Mat<T, 4>) -> [T; 10] {
    let mut out = [T::zero(); 10];
    for a in 0..4 {
        for b in a..4 {
            out[PACK[a][b]] = m[a][b];
        }
    }
    out
}

fn unpack<T: Real>(p: &[T; 10]) -> Mat<T, 4> {
    let mut m = linalg::zeros();
    for a in 0..4 {
        for b in 0..4 {
            m[a][b] = p[PACK[a][b]];
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_and_unflat_round_trip() {
        let lat = Lattice::<f64, 3>::new([3, 4, 5], [1.0; 3], [0.0; 3]);
        for f in 0..lat.len() {
            assert_eq!(lat.flat(&lat.unflat(f)), f);
        }
        assert_eq!(box_indices([0, 0, 0], [3, 4, 5]).count(), 60);
        assert_eq!(box_indices([1, 1, 1], [1, 4, 5]).count(), 0);
    }

    #[test]
    fn periodic_wraps_strict_errors() {
        let lat = Lattice::<f64, 2>::new([4, 4], [1.0; 2], [0.0; 2])
            .with_boundary([Boundary::Periodic, Boundary::Strict]);
        assert_eq!(lat.neighbor(&[0, 1], 0, -1).unwrap(), [3, 1]);
        assert_eq!(
            lat.neighbor(&[0, 3], 1, 1),
            Err(Error::StencilOutOfBounds { axis: 1, index: 3 })
        );
    }

    #[test]
    fn too_small_grid_is_rejected() {
        let lat = Lattice::<f64, 2>::new([2, 8], [1.0; 2], [0.0; 2]);
        let grid = MetricGrid::from_fn(lat, |_| linalg::diag([1.0, -1.0]));
        assert!(matches!(grid.ricci_fd(), Err(Error::GridTooSmall { axis: 0, .. })));
    }

    #[test]
    fn flat_grid_has_zero_ricci() {
        let lat = Lattice::<f64, 3>::new([5, 5, 5], [0.1; 3], [0.0; 3]);
        let grid = MetricGrid::from_fn(lat, |_| linalg::diag([1.0, -1.0, -1.0]));
        assert_eq!(grid.ricci_fd().unwrap().max_abs_ricci(), 0.0);
    }

    #[test]
    fn singular_sample_is_reported() {
        let lat = Lattice::<f64, 2>::new([4, 4], [0.1; 2], [0.0; 2]);
        let grid = MetricGrid::from_fn(lat, |_| linalg::zeros());
        assert_eq!(grid.ricci_fd().unwrap_err(), Error::SingularMetric);
    }
}
