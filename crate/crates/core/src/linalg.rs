//! Fixed-size dense matrices as nested arrays.
//!
//! Everything here is small (N <= 6), so plain Gauss-Jordan with partial
//! pivoting is both adequate and predictable.

use crate::Real;

pub type Mat<T, const N: usize> = [[T; N]; N];

pub fn zeros<T: Real, const N: usize>() -> Mat<T, N> {
    [[T::zero(); N]; N]
}

pub fn identity<T: Real, const N: usize>() -> Mat<T, N> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

pub fn diag<T: Real, const N: usize>(d: [T; N]) -> Mat<T, N> {
    let mut m = zeros();
    for i in 0..N {
        m[i][i] = d[i];
    }
    m
}

pub fn matmul<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> Mat<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] = out[i][j] + aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec<T: Real, const N: usize>(a: &Mat<T, N>, v: &[T; N]) -> [T; N] {
    let mut out = [T::zero(); N];
    for i in 0..N {
        for j in 0..N {
            out[i] = out[i] + a[i][j] * v[j];
        }
    }
    out
}

pub fn transpose<T: Real, const N: usize>(a: &Mat<T, N>) -> Mat<T, N> {
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[j][i] = a[i][j];
        }
    }
    out
}

pub fn max_abs_diff<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> T {
    let mut worst = T::zero();
    for i in 0..N {
        for j in 0..N {
            worst = worst.max((a[i][j] - b[i][j]).abs());
        }
    }
    worst
}

/// Symmetrized copy `(a + aᵀ)/2`.
pub fn symmetrize<T: Real, const N: usize>(a: &Mat<T, N>) -> Mat<T, N> {
    let half = T::lit(0.5);
    let mut out = zeros();
    for i in 0..N {
        for j in 0..N {
            out[i][j] = half * (a[i][j] + a[j][i]);
        }
    }
    out
}

/// `Σ_ij a_ij b_ij`.
pub fn frobenius_dot<T: Real, const N: usize>(a: &Mat<T, N>, b: &Mat<T, N>) -> T {
    let mut s = T::zero();
    for i in 0..N {
        for j in 0..N {
            s = s + a[i][j] * b[i][j];
        }
    }
    s
}

/// LU determinant with partial pivoting.
pub fn determinant<T: Real, const N: usize>(a: &Mat<T, N>) -> T {
    let mut m = *a;
    let mut det = T::one();
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[pivot][col] == T::zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det = det * m[col][col];
        for row in col + 1..N {
            let f = m[row][col] / m[col][col];
            for k in col..N {
                m[row][k] = m[row][k] - f * m[col][k];
            }
        }
    }
    det
}

/// Gauss-Jordan inverse; `None` when a pivot vanishes.
pub fn inverse<T: Real, const N: usize>(a: &Mat<T, N>) -> Option<Mat<T, N>> {
    let mut m = *a;
    let mut inv = identity::<T, N>();
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        let p = m[pivot][col];
        if p == T::zero() || !p.is_finite() {
            return None;
        }
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let scale = T::one() / m[col][col];
        for k in 0..N {
            m[col][k] = m[col][k] * scale;
            inv[col][k] = inv[col][k] * scale;
        }
        for row in 0..N {
            if row == col {
                continue;
            }
            let f = m[row][col];
            if f == T::zero() {
                continue;
            }
            for k in 0..N {
                m[row][k] = m[row][k] - f * m[col][k];
                inv[row][k] = inv[row][k] - f * inv[col][k];
            }
        }
    }
    Some(inv)
}
