//! Plane-wave dispersion relations and the reduction of 6D plane waves to
//! Stueckelberg initial data.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::Real;

use super::lattice::{minkowski_square, LatticeField, Periodic};

/// `Λ` (eigenvalue of the momentum conjugate to `λ ≡ x⁶`) and the 6D mass.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReductionParams<T> {
    pub lambda: T,
    pub mass6: T,
}

impl<T: Real> ReductionParams<T> {
    pub fn new(lambda: T, mass6: T) -> Result<Self> {
        let p = Self { lambda, mass6 };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda == T::zero() || !self.lambda.is_finite() {
            return Err(Error::ZeroLambda);
        }
        if !(self.mass6 >= T::zero()) {
            return Err(Error::InvalidParameter(format!("6D mass must be non-negative, got {}", self.mass6)));
        }
        Ok(())
    }

    /// τ-frequency `E(p) = (M² − p^μp_μ)/(2Λ)` of the mode `e^{ik·x}`.
    pub fn energy(&self, p_squared: T) -> T {
        (self.mass6 * self.mass6 - p_squared) / (T::lit(2.0) * self.lambda)
    }
}

/// Plane-wave residual of the light-cone Klein–Gordon operator,
/// `p^μp_μ − 2P₅P₆ − M²`, with `p` covariant in the reduced Minkowski block.
pub fn kg6_dispersion_residual<T: Real>(p: &[T], p5: T, p6: T, mass6: T) -> T {
    minkowski_square(p) - T::lit(2.0) * p5 * p6 - mass6 * mass6
}

/// Substitutes `Ψ = e^{i(P·X + P₅τ)}` into
/// `(g^{μν}∂_μ∂_ν + ∂_τ² + M²)Ψ` and returns minus the resulting symbol,
/// which is `g^{μν}P_μP_ν + P₅² − M²`.
pub fn coupled_dispersion_check<T: Real>(g_inv: &Mat<T, 4>, p: &[T; 4], p5: T, mass: T) -> T {
    let i = Complex::new(T::zero(), T::one());
    let mut sym = T::zero();
    for mu in 0..4 {
        for nu in 0..4 {
            sym = sym + g_inv[mu][nu] * ((i * p[mu]) * (i * p[nu])).re;
        }
    }
    sym = sym + ((i * p5) * (i * p5)).re;
    sym = sym + mass * mass;
    -sym
}

/// A 6D plane wave `a e^{i(k·x + P₅τ + P₆λ)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneWave6<T> {
    pub amplitude: Complex<T>,
    /// Covariant `k_μ` on the reduced lattice.
    pub k: Vec<T>,
    pub p5: T,
    pub p6: T,
}

/// Stueckelberg data obtained by stripping `e^{iΛλ}`.
#[derive(Clone, Debug)]
pub struct ReducedData<T> {
    pub psi0: LatticeField<T>,
    pub params: ReductionParams<T>,
    /// `E(p)` for each input wave.
    pub energies: Vec<T>,
}

/// Builds `ψ(τ=0, x) = Σ a e^{ik·x}` from on-shell 6D plane waves sharing
/// `P₆ = Λ`. Wave vectors must be lattice modes.
pub fn reduce_ansatz<T: Real>(waves: &[PlaneWave6<T>], grid: Periodic<T>, mass6: T) -> Result<ReducedData<T>> {
    let first = waves.first().ok_or_else(|| Error::InvalidParameter("no plane waves".into()))?;
    let params = ReductionParams::new(first.p6, mass6)?;
    let tol = T::lit(1e-10);
    let mut energies = Vec::with_capacity(waves.len());
    for (index, w) in waves.iter().enumerate() {
        if w.p6 != first.p6 {
            return Err(Error::MixedP6(first.p6.as_f64(), w.p6.as_f64()));
        }
        if w.k.len() != grid.dim() {
            return Err(Error::Shape(format!("wave {index} has {} components, lattice has {}", w.k.len(), grid.dim())));
        }
        for (a, &k) in w.k.iter().enumerate() {
            let n = k * grid.lengths[a] / T::TAU();
            if (n - n.round()).abs() > T::lit(1e-9) {
                return Err(Error::InvalidParameter(format!("wave {index} is not periodic along axis {a}")));
            }
        }
        let residual = kg6_dispersion_residual(&w.k, w.p5, w.p6, mass6);
        let scale = T::one().max(minkowski_square(&w.k).abs()).max(mass6 * mass6);
        if residual.abs() > tol * scale {
            return Err(Error::OffShell { index, residual: residual.as_f64() });
        }
        energies.push(params.energy(minkowski_square(&w.k)));
    }
    let psi0 = LatticeField::from_fn(grid, |x| {
        waves.iter().fold(Complex::new(T::zero(), T::zero()), |acc, w| {
            let phase = w.k.iter().zip(x).fold(T::zero(), |s, (k, x)| s + *k * *x);
            acc + w.amplitude * Complex::from_polar(T::one(), phase)
        })
    });
    Ok(ReducedData { psi0, params, energies })
}
