//! Moments of a lattice field and binary field snapshots.
//!
//! Snapshot layout, all little-endian: `u32` number of axes `d`, `d × u64`
//! axis sizes, `f64` τ, then the values in row-major order as interleaved
//! `f64` real and imaginary parts.

use std::io::{self, Read, Write};

use num_complex::Complex;

use crate::Real;

use super::lattice::{LatticeField, Periodic};

/// Norm and first moments of `|ψ|²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Observables<T> {
    pub norm: T,
    /// `⟨x⁰⟩`.
    pub mean_t: T,
    /// `⟨x¹⟩`, zero on one-dimensional lattices.
    pub mean_x: T,
    /// Standard deviation of `x¹`.
    pub spread: T,
}

pub fn observables<T: Real>(field: &LatticeField<T>) -> Observables<T> {
    let grid = &field.grid;
    let (mut w, mut t, mut x, mut xx) = (T::zero(), T::zero(), T::zero(), T::zero());
    for (f, v) in field.values.iter().enumerate() {
        let p = v.norm_sqr();
        let idx = grid.unflat(f);
        let ct = grid.coordinate(0, idx[0]);
        let cx = if grid.dim() > 1 { grid.coordinate(1, idx[1]) } else { T::zero() };
        w = w + p;
        t = t + p * ct;
        x = x + p * cx;
        xx = xx + p * cx * cx;
    }
    let norm = w * grid.cell_volume();
    if w == T::zero() {
        return Observables { norm, mean_t: T::zero(), mean_x: T::zero(), spread: T::zero() };
    }
    let (mt, mx) = (t / w, x / w);
    Observables { norm, mean_t: mt, mean_x: mx, spread: (xx / w - mx * mx).max(T::zero()).sqrt() }
}

pub fn write_snapshot<T: Real, W: Write>(out: &mut W, field: &LatticeField<T>, tau: T) -> io::Result<()> {
    out.write_all(&(field.grid.dim() as u32).to_le_bytes())?;
    for &n in &field.grid.shape {
        out.write_all(&(n as u64).to_le_bytes())?;
    }
    out.write_all(&tau.as_f64().to_le_bytes())?;
    for v in &field.values {
        out.write_all(&v.re.as_f64().to_le_bytes())?;
        out.write_all(&v.im.as_f64().to_le_bytes())?;
    }
    Ok(())
}

/// Reads a snapshot back as `(shape, τ, values)`.
pub fn read_snapshot<R: Read>(input: &mut R) -> io::Result<(Vec<usize>, f64, Vec<Complex<f64>>)> {
    let mut b4 = [0u8; 4];
    let mut b8 = [0u8; 8];
    input.read_exact(&mut b4)?;
    let d = u32::from_le_bytes(b4) as usize;
    if d == 0 || d > 4 {
        return Err(io::Error::new(io::ErrorKind::InvalidData, format!("bad dimension {d}")));
    }
    let mut shape = Vec::with_capacity(d);
    for _ in 0..d {
        input.read_exact(&mut b8)?;
        shape.push(u64::from_le_bytes(b8) as usize);
    }
    input.read_exact(&mut b8)?;
    let tau = f64::from_le_bytes(b8);
    let n: usize = shape.iter().product();
    let mut values = Vec::with_capacity(n);
    for _ in 0..n {
        input.read_exact(&mut b8)?;
        let re = f64::from_le_bytes(b8);
        input.read_exact(&mut b8)?;
        values.push(Complex::new(re, f64::from_le_bytes(b8)));
    }
    Ok((shape, tau, values))
}

/// Builds a field from snapshot contents with the given box lengths.
pub fn field_from_snapshot(shape: Vec<usize>, lengths: Vec<f64>, values: Vec<Complex<f64>>) -> crate::Result<LatticeField<f64>> {
    let grid = Periodic::new(shape, lengths)?;
    if grid.len() != values.len() {
        return Err(crate::Error::Shape("snapshot size mismatch".into()));
    }
    Ok(LatticeField { grid, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snapshot_round_trip() {
        let grid = Periodic::new(vec![3, 4], vec![1.0, 2.0]).unwrap();
        let f = LatticeField::from_fn(grid, |x| Complex::new(x[0], -x[1]));
        let mut buf = Vec::new();
        write_snapshot(&mut buf, &f, 0.25).unwrap();
        assert_eq!(buf.len(), 4 + 2 * 8 + 8 + 12 * 16);
        let (shape, tau, values) = read_snapshot(&mut buf.as_slice()).unwrap();
        assert_eq!((shape, tau), (vec![3, 4], 0.25));
        assert_eq!(values, f.values);
    }

    #[test]
    fn centred_packet_moments() {
        let grid = Periodic::<f64>::new(vec![128, 128], vec![40.0, 40.0]).unwrap();
        let f = LatticeField::gaussian(grid, &[1.0, -2.0], &[1.0, 1.5], &[0.0, 0.0]).unwrap();
        let o = observables(&f);
        assert!((o.norm - 1.0).abs() < 1e-12);
        assert!((o.mean_t - 1.0).abs() < 1e-9 && (o.mean_x + 2.0).abs() < 1e-9, "{o:?}");
        assert!((o.spread - 1.5).abs() < 1e-9);
    }
}
