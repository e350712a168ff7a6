//! Complex fields on periodic lattices and their unitary discrete Fourier
//! transform.

use num_complex::Complex;
use rayon::prelude::*;
use rustfft::{FftDirection, FftPlanner};

use crate::error::{Error, Result};
use crate::Real;

/// Shape and box lengths of a periodic lattice with `1 ≤ d ≤ 4` axes.
/// Axis 0 is the time-like coordinate; coordinates run over `[−L/2, L/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Periodic<T> {
    pub shape: Vec<usize>,
    pub lengths: Vec<T>,
}

impl<T: Real> Periodic<T> {
    pub fn new(shape: Vec<usize>, lengths: Vec<T>) -> Result<Self> {
        if shape.is_empty() || shape.len() > 4 {
            return Err(Error::Shape(format!("lattice dimension {} outside 1..=4", shape.len())));
        }
        if shape.len() != lengths.len() {
            return Err(Error::Shape("shape and lengths differ in dimension".into()));
        }
        if shape.contains(&0) || lengths.iter().any(|l| !(*l > T::zero())) {
            return Err(Error::Shape("empty axis or non-positive length".into()));
        }
        Ok(Self { shape, lengths })
    }

    pub fn dim(&self) -> usize {
        self.shape.len()
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> T {
        self.lengths[axis] / T::from_usize_lossy(self.shape[axis])
    }

    pub fn cell_volume(&self) -> T {
        (0..self.dim()).map(|a| self.spacing(a)).fold(T::one(), |p, h| p * h)
    }

    /// Row-major multi-index of a flat index.
    pub fn unflat(&self, mut f: usize) -> Vec<usize> {
        let mut idx = vec![0; self.dim()];
        for a in (0..self.dim()).rev() {
            idx[a] = f % self.shape[a];
            f /= self.shape[a];
        }
        idx
    }

    pub fn coordinate(&self, axis: usize, i: usize) -> T {
        T::from_usize_lossy(i) * self.spacing(axis) - T::lit(0.5) * self.lengths[axis]
    }

    /// Signed integer mode number of FFT bin `i` on `axis`.
    pub fn mode_number(&self, axis: usize, i: usize) -> isize {
        let n = self.shape[axis];
        if i <= n / 2 {
            i as isize
        } else {
            i as isize - n as isize
        }
    }

    /// Covariant wave vector `k_μ = 2π n_μ / L_μ` of a flat mode index.
    pub fn wavevector(&self, f: usize) -> Vec<T> {
        let idx = self.unflat(f);
        (0..self.dim())
            .map(|a| {
                let n = T::from_isize(self.mode_number(a, idx[a])).unwrap_or(T::zero());
                T::TAU() * n / self.lengths[a]
            })
            .collect()
    }

    fn stride(&self, axis: usize) -> usize {
        self.shape[axis + 1..].iter().product()
    }
}

/// `p^μ p_μ = k₀² − Σ k_i²` for the metric `diag(+1, −1, …)`.
pub fn minkowski_square<T: Real>(k: &[T]) -> T {
    k.iter().enumerate().fold(T::zero(), |s, (a, &c)| if a == 0 { s + c * c } else { s - c * c })
}

/// Applies a 1D transform to every line along every axis.
pub(crate) fn transform_lines<T: Real>(
    grid: &Periodic<T>,
    data: &mut [Complex<T>],
    line: &(dyn Fn(usize, &mut [Complex<T>]) + Sync),
) {
    for axis in (0..grid.dim()).rev() {
        let n = grid.shape[axis];
        let stride = grid.stride(axis);
        if stride == 1 {
            data.par_chunks_mut(n).for_each(|chunk| line(axis, chunk));
            continue;
        }
        let block = n * stride;
        for blk in data.chunks_mut(block) {
            let lines: Vec<Vec<Complex<T>>> = (0..stride)
                .into_par_iter()
                .map(|off| {
                    let mut buf: Vec<Complex<T>> = (0..n).map(|j| blk[off + j * stride]).collect();
                    line(axis, &mut buf);
                    buf
                })
                .collect();
            for (off, buf) in lines.iter().enumerate() {
                for (j, b) in buf.iter().enumerate() {
                    blk[off + j * stride] = *b;
                }
            }
        }
    }
}

fn fft_nd<T: Real>(grid: &Periodic<T>, data: &mut [Complex<T>], direction: FftDirection) {
    let mut planner = FftPlanner::<T>::new();
    let plans: Vec<_> = grid.shape.iter().map(|&n| planner.plan_fft(n, direction)).collect();
    transform_lines(grid, data, &|axis, line| plans[axis].process(line));
    let scale = T::one() / T::from_usize_lossy(grid.len()).sqrt();
    data.par_iter_mut().for_each(|c| *c = *c * scale);
}

/// A complex field on a periodic lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField<T> {
    pub grid: Periodic<T>,
    pub values: Vec<Complex<T>>,
}

impl<T: Real> LatticeField<T> {
    pub fn zeros(grid: Periodic<T>) -> Self {
        let n = grid.len();
        Self { grid, values: vec![Complex::new(T::zero(), T::zero()); n] }
    }

    pub fn from_fn(grid: Periodic<T>, f: impl Fn(&[T]) -> Complex<T> + Sync) -> Self {
        let values = (0..grid.len())
            .into_par_iter()
            .map(|i| {
                let idx = grid.unflat(i);
                let x: Vec<T> = idx.iter().enumerate().map(|(a, &j)| grid.coordinate(a, j)).collect();
                f(&x)
            })
            .collect();
        Self { grid, values }
    }

    /// Gaussian packet `exp(−Σ(x−c)²/(4w²) + i k·x)` normalized to unit norm.
    pub fn gaussian(grid: Periodic<T>, centre: &[T], width: &[T], k: &[T]) -> Result<Self> {
        let d = grid.dim();
        if centre.len() != d || width.len() != d || k.len() != d {
            return Err(Error::Shape(format!("gaussian parameters must have {d} components")));
        }
        if width.iter().any(|w| !(*w > T::zero())) {
            return Err(Error::InvalidParameter("gaussian width must be positive".into()));
        }
        let four = T::lit(4.0);
        let mut field = Self::from_fn(grid, |x| {
            let mut re = T::zero();
            let mut phase = T::zero();
            for a in 0..d {
                let u = x[a] - centre[a];
                re = re - u * u / (four * width[a] * width[a]);
                phase = phase + k[a] * x[a];
            }
            Complex::from_polar(re.exp(), phase)
        });
        let n = field.norm();
        let s = T::one() / n.sqrt();
        field.values.iter_mut().for_each(|v| *v = *v * s);
        Ok(field)
    }

    /// `∫dᵈx |ψ|²`.
    pub fn norm(&self) -> T {
        self.grid.cell_volume() * self.values.iter().map(|v| v.norm_sqr()).sum::<T>()
    }

    pub fn conj(&self) -> Self {
        Self { grid: self.grid.clone(), values: self.values.iter().map(|v| v.conj()).collect() }
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.values.iter().zip(&other.values).fold(T::zero(), |m, (a, b)| m.max((*a - *b).norm()))
    }

    /// Unitary forward transform.
    pub fn spectrum(&self) -> ModeSpectrum<T> {
        let mut coeffs = self.values.clone();
        fft_nd(&self.grid, &mut coeffs, FftDirection::Forward);
        ModeSpectrum { grid: self.grid.clone(), coeffs }
    }
}

/// Mode amplitudes indexed in FFT order.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeSpectrum<T> {
    pub grid: Periodic<T>,
    pub coeffs: Vec<Complex<T>>,
}

impl<T: Real> ModeSpectrum<T> {
    /// Unitary inverse transform.
    pub fn field(&self) -> LatticeField<T> {
        let mut values = self.coeffs.clone();
        fft_nd(&self.grid, &mut values, FftDirection::Inverse);
        LatticeField { grid: self.grid.clone(), values }
    }

    /// Norm evaluated in mode space; equals [`LatticeField::norm`].
    pub fn norm(&self) -> T {
        self.grid.cell_volume() * self.coeffs.iter().map(|v| v.norm_sqr()).sum::<T>()
    }
}
