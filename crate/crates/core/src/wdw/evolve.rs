//! Implicit-midpoint (Crank–Nicolson) τ-evolution on the β-grid.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::Real;

use super::hamiltonian::{BetaGrid, ReducedHamiltonian};

/// Boundary-to-peak amplitude ratio above which a run is flagged.
pub const LEAKAGE_THRESHOLD: f64 = 1e-8;

/// Wave function on the β-grid at time `τ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Wavepacket<T> {
    pub grid: BetaGrid<T>,
    pub psi: Vec<Complex<T>>,
    pub tau: T,
}

impl<T: Real> Wavepacket<T> {
    /// `exp(−(s−c)²/(4w²) + i k s)`, unit norm.
    pub fn gaussian(grid: BetaGrid<T>, centre: T, width: T, k: T) -> Result<Self> {
        if !(width > T::zero()) {
            return Err(Error::InvalidParameter("packet width must be positive".into()));
        }
        let four = T::lit(4.0);
        let psi = grid
            .points()
            .into_iter()
            .map(|s| {
                let u = s - centre;
                Complex::from_polar((-(u * u) / (four * width * width)).exp(), k * s)
            })
            .collect();
        let mut p = Self { grid, psi, tau: T::zero() };
        p.normalize()?;
        Ok(p)
    }

    pub fn from_values(grid: BetaGrid<T>, psi: Vec<Complex<T>>) -> Result<Self> {
        if psi.len() != grid.n {
            return Err(Error::Shape(format!("{} values for a {}-point grid", psi.len(), grid.n)));
        }
        Ok(Self { grid, psi, tau: T::zero() })
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if !(n > T::zero()) || !n.is_finite() {
            return Err(Error::InvalidParameter("wave function has zero or non-finite norm".into()));
        }
        let s = T::one() / n.sqrt();
        self.psi.iter_mut().for_each(|v| *v = *v * s);
        Ok(())
    }

    /// `h Σ|ψ|²`.
    pub fn norm(&self) -> T {
        self.grid.h() * self.psi.iter().map(|v| v.norm_sqr()).sum::<T>()
    }

    /// `h Σ f(s_j)|ψ_j|² / norm`.
    pub fn expectation(&self, f: impl Fn(T) -> T) -> T {
        let h = self.grid.h();
        let total: T = self.psi.iter().enumerate().map(|(j, v)| f(self.grid.point(j)) * v.norm_sqr()).sum();
        h * total / self.norm()
    }

    /// `⟨−i∂_s⟩` with central differences and zero ghosts.
    pub fn momentum(&self) -> T {
        let n = self.psi.len();
        let zero = Complex::new(T::zero(), T::zero());
        let h = self.grid.h();
        let mut acc = zero;
        for j in 0..n {
            let up = if j + 1 < n { self.psi[j + 1] } else { zero };
            let dn = if j > 0 { self.psi[j - 1] } else { zero };
            let d = (up - dn) / (T::lit(2.0) * h);
            acc = acc + self.psi[j].conj() * Complex::new(d.im, -d.re);
        }
        h * acc.re / self.norm()
    }

    /// `max(|ψ_0|, |ψ_{n−1}|) / max|ψ|`.
    pub fn leakage(&self) -> T {
        let peak = self.psi.iter().fold(T::zero(), |m, v| m.max(v.norm()));
        if peak == T::zero() {
            return T::zero();
        }
        let edge = self.psi[0].norm().max(self.psi[self.psi.len() - 1].norm());
        edge / peak
    }

    pub fn leaking(&self) -> bool {
        self.leakage() > T::lit(LEAKAGE_THRESHOLD)
    }
}

/// `⟨ψ|i[H, S]|ψ⟩ h` for a diagonal real operator `S = diag(s_j)`; equals
/// `−2 h Im⟨Hψ|Sψ⟩`.
pub fn commutator_expectation<T: Real>(ham: &ReducedHamiltonian<T>, s: &[T], psi: &[Complex<T>]) -> T {
    let hpsi = ham.apply(psi);
    let mut acc = Complex::new(T::zero(), T::zero());
    for j in 0..psi.len() {
        acc = acc + hpsi[j].conj() * psi[j] * s[j];
    }
    -T::lit(2.0) * ham.grid.h() * acc.im
}

/// Pre-factored implicit-midpoint stepper
/// `(1 + i dt H/2) ψ_{n+1} = (1 − i dt H/2) ψ_n`.
#[derive(Clone, Debug)]
pub struct MidpointStepper<T> {
    pub ham: ReducedHamiltonian<T>,
    pub dt: T,
    /// Modified super-diagonal of the Thomas factorization.
    upper: Vec<Complex<T>>,
    /// Reciprocal pivots.
    pivot: Vec<Complex<T>>,
    lower: Vec<Complex<T>>,
}

impl<T: Real> MidpointStepper<T> {
    pub fn new(ham: ReducedHamiltonian<T>, dt: T) -> Result<Self> {
        if !(dt > T::zero()) || !dt.is_finite() {
            return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
        }
        let n = ham.len();
        let a = T::lit(0.5) * dt;
        let one = Complex::new(T::one(), T::zero());
        let lower: Vec<Complex<T>> = ham.off.iter().map(|&e| Complex::new(T::zero(), a * e)).collect();
        let mut upper = vec![Complex::new(T::zero(), T::zero()); n.saturating_sub(1)];
        let mut pivot = vec![one; n];
        for j in 0..n {
            let mut d = Complex::new(T::one(), a * ham.diag[j]);
            if j > 0 {
                d = d - lower[j - 1] * upper[j - 1];
            }
            if d == Complex::new(T::zero(), T::zero()) {
                return Err(Error::SingularMetric);
            }
            pivot[j] = one / d;
            if j + 1 < n {
                upper[j] = lower[j] * pivot[j];
            }
        }
        Ok(Self { ham, dt, upper, pivot, lower })
    }

    /// `dt·√(⟨Hψ|Hψ⟩/⟨ψ|ψ⟩)`, the phase advance per step of the state's
    /// energy spread. Errors when it exceeds `limit`.
    pub fn check_step(&self, psi: &Wavepacket<T>, limit: T) -> Result<T> {
        let hpsi = self.ham.apply(&psi.psi);
        let num: T = hpsi.iter().map(|v| v.norm_sqr()).sum();
        let den: T = psi.psi.iter().map(|v| v.norm_sqr()).sum();
        let ratio = self.dt * (num / den).sqrt();
        if ratio > limit || !ratio.is_finite() {
            return Err(Error::StepTooLarge { ratio: ratio.as_f64(), limit: limit.as_f64() });
        }
        Ok(ratio)
    }

    pub fn step(&self, packet: &mut Wavepacket<T>) {
        let n = packet.psi.len();
        let a = T::lit(0.5) * self.dt;
        let hpsi = self.ham.apply(&packet.psi);
        let i = Complex::new(T::zero(), T::one());
        let rhs: Vec<Complex<T>> = packet.psi.iter().zip(&hpsi).map(|(p, hp)| *p - i * *hp * a).collect();
        let mut y = vec![Complex::new(T::zero(), T::zero()); n];
        for j in 0..n {
            let mut v = rhs[j];
            if j > 0 {
                v = v - self.lower[j - 1] * y[j - 1];
            }
            y[j] = v * self.pivot[j];
        }
        for j in (0..n.saturating_sub(1)).rev() {
            y[j] = y[j] - self.upper[j] * y[j + 1];
        }
        packet.psi = y;
        packet.tau = packet.tau + self.dt;
    }

    /// Takes `steps` steps, calling `observer(n, packet)` after each one and
    /// once before the first.
    pub fn run(
        &self,
        packet: &mut Wavepacket<T>,
        steps: usize,
        mut observer: impl FnMut(usize, &Wavepacket<T>) -> Result<()>,
    ) -> Result<()> {
        observer(0, packet)?;
        for n in 1..=steps {
            self.step(packet);
            if packet.psi.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
                return Err(Error::NonFinite(n));
            }
            observer(n, packet)?;
        }
        Ok(())
    }
}

/// Summary of an [`evolve_tau`] run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionSummary<T> {
    pub norm_drift: T,
    pub max_leakage: T,
    pub leaked: bool,
}

/// Evolves `packet` in place for `steps` steps of size `dt` after checking the
/// step against `limit`.
pub fn evolve_tau<T: Real>(
    packet: &mut Wavepacket<T>,
    ham: ReducedHamiltonian<T>,
    dt: T,
    steps: usize,
    limit: T,
) -> Result<EvolutionSummary<T>> {
    let stepper = MidpointStepper::new(ham, dt)?;
    stepper.check_step(packet, limit)?;
    let n0 = packet.norm();
    let mut drift = T::zero();
    let mut leak = T::zero();
    stepper.run(packet, steps, |_, p| {
        drift = drift.max((p.norm() - n0).abs());
        leak = leak.max(p.leakage());
        Ok(())
    })?;
    Ok(EvolutionSummary { norm_drift: drift, max_leakage: leak, leaked: leak > T::lit(LEAKAGE_THRESHOLD) })
}
