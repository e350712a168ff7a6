//! Exact spectral τ-evolution of the Stueckelberg equation, and an
//! independent per-mode solution of the light-cone 6D Klein–Gordon equation.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::particle::{shell_residual, ExtraBlock};
use crate::Real;

use super::dispersion::ReductionParams;
use super::lattice::{minkowski_square, transform_lines, LatticeField, ModeSpectrum, Periodic};

/// Evolves `i∂_τψ = (1/2Λ)(∂^μ∂_μ + M²)ψ` by multiplying each Fourier mode
/// with `e^{−iE(p)τ}`.
#[derive(Clone, Debug)]
pub struct StueckelbergEvolver<T> {
    pub params: ReductionParams<T>,
    initial: LatticeField<T>,
    spectrum: ModeSpectrum<T>,
    energies: Vec<T>,
}

impl<T: Real> StueckelbergEvolver<T> {
    pub fn new(psi0: LatticeField<T>, params: ReductionParams<T>) -> Result<Self> {
        params.validate()?;
        let spectrum = psi0.spectrum();
        let energies = (0..psi0.grid.len())
            .map(|f| params.energy(minkowski_square(&psi0.grid.wavevector(f))))
            .collect();
        Ok(Self { params, initial: psi0, spectrum, energies })
    }

    pub fn initial(&self) -> &LatticeField<T> {
        &self.initial
    }

    /// τ-frequency of each mode in FFT order.
    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    /// Spectrum at `τ`.
    pub fn spectrum_at(&self, tau: T) -> ModeSpectrum<T> {
        let coeffs = self
            .spectrum
            .coeffs
            .par_iter()
            .zip(self.energies.par_iter())
            .map(|(c, &e)| *c * Complex::from_polar(T::one(), -e * tau))
            .collect();
        ModeSpectrum { grid: self.spectrum.grid.clone(), coeffs }
    }

    /// `ψ(τ)`; `τ = 0` returns the initial field unchanged.
    pub fn evolve_to(&self, tau: T) -> LatticeField<T> {
        if tau == T::zero() {
            return self.initial.clone();
        }
        self.spectrum_at(tau).field()
    }

    /// Calls `observer(n, τ_n, ψ(τ_n))` for `τ_n = n·span/steps`, `n = 0..=steps`.
    /// Each frame is computed from the initial data, so errors do not
    /// accumulate with the number of steps.
    pub fn trajectory(
        &self,
        span: T,
        steps: usize,
        mut observer: impl FnMut(usize, T, &LatticeField<T>) -> Result<()>,
    ) -> Result<()> {
        if steps == 0 {
            return observer(0, T::zero(), &self.initial);
        }
        let dt = span / T::from_usize_lossy(steps);
        for n in 0..=steps {
            let tau = dt * T::from_usize_lossy(n);
            observer(n, tau, &self.evolve_to(tau))?;
        }
        Ok(())
    }
}

/// `stueckelberg_evolve(psi0, params, span, steps)` collecting every frame.
pub fn stueckelberg_evolve<T: Real>(
    psi0: LatticeField<T>,
    params: ReductionParams<T>,
    span: T,
    steps: usize,
) -> Result<Vec<LatticeField<T>>> {
    let ev = StueckelbergEvolver::new(psi0, params)?;
    let mut out = Vec::with_capacity(steps + 1);
    ev.trajectory(span, steps, |_, _, f| {
        out.push(f.clone());
        Ok(())
    })?;
    Ok(out)
}

/// Direct DFT as a dense matrix-vector product per line, with the unitary
/// forward and inverse matrices tabulated once per axis.
#[derive(Clone, Debug)]
struct NaiveDft<T> {
    forward: Vec<Vec<Complex<T>>>,
    inverse: Vec<Vec<Complex<T>>>,
}

impl<T: Real> NaiveDft<T> {
    fn new(grid: &Periodic<T>) -> Self {
        let table = |n: usize, sign: T| {
            let nn = T::from_usize_lossy(n);
            let scale = T::one() / nn.sqrt();
            let roots: Vec<Complex<T>> =
                (0..n).map(|j| Complex::from_polar(scale, sign * T::TAU() * T::from_usize_lossy(j) / nn)).collect();
            (0..n * n).map(|jk| roots[(jk / n) * (jk % n) % n]).collect::<Vec<_>>()
        };
        Self {
            forward: grid.shape.iter().map(|&n| table(n, -T::one())).collect(),
            inverse: grid.shape.iter().map(|&n| table(n, T::one())).collect(),
        }
    }

    fn apply(&self, grid: &Periodic<T>, data: &mut [Complex<T>], inverse: bool) {
        let tables = if inverse { &self.inverse } else { &self.forward };
        let line = |axis: usize, buf: &mut [Complex<T>]| {
            let n = buf.len();
            let m = &tables[axis];
            let out: Vec<Complex<T>> = m
                .chunks_exact(n)
                .map(|row| row.iter().zip(buf.iter()).fold(Complex::new(T::zero(), T::zero()), |s, (w, x)| s + *w * *x))
                .collect();
            buf.copy_from_slice(&out);
        };
        transform_lines(grid, data, &line);
    }
}

/// Single-`λ`-mode solution of `(−g^{μν}∂_μ∂_ν + 2∂₅∂₆ − M²)φ = 0` with
/// `φ = e^{iΛλ}ψ(τ, x)`. Each lattice mode is advanced by `e^{iP₅τ}`, where
/// `P₅` solves the 6D mass shell `G^{MN}P_MP_N = M²` at `P₆ = Λ`.
#[derive(Clone, Debug)]
pub struct LightConeEvolver<T> {
    pub params: ReductionParams<T>,
    grid: Periodic<T>,
    modes: Vec<Complex<T>>,
    p5: Vec<T>,
    dft: NaiveDft<T>,
}

impl<T: Real> LightConeEvolver<T> {
    pub fn new(phi0: &LatticeField<T>, params: ReductionParams<T>) -> Result<Self> {
        params.validate()?;
        let grid = phi0.grid.clone();
        let dft = NaiveDft::new(&grid);
        let mut modes = phi0.values.clone();
        dft.apply(&grid, &mut modes, false);
        let mut g_inv: Mat<T, 4> = linalg::zeros();
        for (a, row) in g_inv.iter_mut().enumerate() {
            row[a] = if a == 0 { T::one() } else { -T::one() };
        }
        let g6 = ExtraBlock::LightCone.inverse_6d(&g_inv);
        let p5 = (0..grid.len())
            .map(|f| {
                let k = grid.wavevector(f);
                let mut p = [T::zero(); 6];
                p[..k.len()].copy_from_slice(&k);
                p[5] = params.lambda;
                // the shell is linear in P₅ because G^{55} = 0
                let r0 = shell_residual(&g6, &p, params.mass6);
                p[4] = T::one();
                let slope = shell_residual(&g6, &p, params.mass6) - r0;
                if slope == T::zero() {
                    return Err(Error::ZeroLambda);
                }
                Ok(-r0 / slope)
            })
            .collect::<Result<_>>()?;
        Ok(Self { params, grid, modes, p5, dft })
    }

    /// `P₅` of each mode in FFT order.
    pub fn p5(&self) -> &[T] {
        &self.p5
    }

    /// `ψ(τ, x) = φ(τ, λ = 0, x)`.
    pub fn evolve_to(&self, tau: T) -> LatticeField<T> {
        let mut values: Vec<Complex<T>> = self
            .modes
            .iter()
            .zip(&self.p5)
            .map(|(c, &p5)| *c * Complex::from_polar(T::one(), p5 * tau))
            .collect();
        self.dft.apply(&self.grid, &mut values, true);
        LatticeField { grid: self.grid.clone(), values }
    }
}

/// `kg6_evolve_lightcone(phi0, params, span, steps)` collecting every frame.
pub fn kg6_evolve_lightcone<T: Real>(
    phi0: &LatticeField<T>,
    params: ReductionParams<T>,
    span: T,
    steps: usize,
) -> Result<Vec<LatticeField<T>>> {
    let ev = LightConeEvolver::new(phi0, params)?;
    let n = steps.max(1);
    let dt = span / T::from_usize_lossy(n);
    Ok((0..=steps).map(|i| ev.evolve_to(dt * T::from_usize_lossy(i))).collect())
}
