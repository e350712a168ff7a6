//! The Clifford algebra Cl(1,3) over its 16-blade basis.
//!
//! Blades are stored as 4-bit masks: bit `b` set means the basis vector `γ_b`
//! is a factor. Factors are always kept in ascending index order, so `γ₁γ₀`
//! is represented as `-γ₀₁`. The vector metric is `η = diag(+1, -1, -1, -1)`.
//!
//! Coefficients only need to form a ring, so the same code runs over `i64`,
//! exact rationals, `f64` and complex numbers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

use crate::error::{Error, Result};

/// Number of basis vectors.
pub const VECTORS: usize = 4;
/// Number of blades (`2^4`).
pub const BLADES: usize = 16;
/// Diagonal of the vector metric.
pub const ETA: [i8; VECTORS] = [1, -1, -1, -1];

/// Ring of multivector coefficients.
pub trait Coefficient: Copy + Num + Neg<Output = Self> {}
impl<T: Copy + Num + Neg<Output = T>> Coefficient for T {}

/// A basis blade `γ_{μ₁…μ_r}` with ascending indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub fn new(mask: u8) -> Option<Self> {
        (usize::from(mask) < BLADES).then_some(Blade(mask))
    }

    /// The basis vector `γ_i`.
    pub fn vector(i: usize) -> Self {
        assert!(i < VECTORS, "vector index {i} out of range");
        Blade(1 << i)
    }

    /// Product `γ_{i₁}γ_{i₂}…` of distinct vectors, reordered canonically.
    /// Returns the orientation sign and the canonical blade.
    pub fn from_indices(indices: &[usize]) -> Option<(i8, Self)> {
        let mut sign = 1i8;
        let mut blade = Blade::SCALAR;
        for &i in indices {
            if i >= VECTORS || blade.0 & (1 << i) != 0 {
                return None;
            }
            let (s, b) = blade.product(Blade::vector(i));
            sign *= s;
            blade = b;
        }
        Some((sign, blade))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn index(self) -> usize {
        usize::from(self.0)
    }

    pub fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..VECTORS).filter(move |b| self.0 & (1 << b) != 0)
    }

    pub fn all() -> impl Iterator<Item = Blade> {
        (0..BLADES as u8).map(Blade)
    }

    /// Geometric product of two basis blades: `γ_A γ_B = sign · γ_{A△B}`.
    ///
    /// The sign counts the transpositions needed to bring the concatenated
    /// factors into ascending order, times `η_ii` for every repeated index.
    pub fn product(self, other: Blade) -> (i8, Blade) {
        let mut swaps = 0u32;
        for b in self.indices() {
            // each factor of `self` must hop over the lower factors of `other`
            swaps += (other.0 & ((1u8 << b) - 1)).count_ones();
        }
        let mut sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        for b in 0..VECTORS {
            if self.0 & other.0 & (1 << b) != 0 {
                sign *= ETA[b];
            }
        }
        (sign, Blade(self.0 ^ other.0))
    }

    /// `(-1)^{r(r-1)/2}` for grade `r`.
    pub fn reverse_sign(self) -> i8 {
        let r = self.grade();
        if (r * r.saturating_sub(1) / 2).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// `∏_{i∈S} η_ii`: the norm of the blade under `⟨γ_M‡γ_M⟩₀`.
    pub fn norm_sign(self) -> i8 {
        self.indices().map(|i| ETA[i]).product()
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        write!(f, "g")?;
        for i in self.indices() {
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// A general element of Cl(1,3): one coefficient per blade, indexed by mask.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Multivector<T> {
    pub coeffs: [T; BLADES],
}

impl<T: Coefficient> Multivector<T> {
    pub fn zero() -> Self {
        Self { coeffs: [T::zero(); BLADES] }
    }

    pub fn scalar(s: T) -> Self {
        Self::blade(Blade::SCALAR, s)
    }

    /// `c · γ_B`.
    pub fn blade(b: Blade, c: T) -> Self {
        let mut m = Self::zero();
        m.coeffs[b.index()] = c;
        m
    }

    pub fn basis(b: Blade) -> Self {
        Self::blade(b, T::one())
    }

    /// Vector `Σ v^μ γ_μ`.
    pub fn vector(v: [T; VECTORS]) -> Self {
        let mut m = Self::zero();
        for (i, &c) in v.iter().enumerate() {
            m.coeffs[Blade::vector(i).index()] = c;
        }
        m
    }

    pub fn get(&self, b: Blade) -> T {
        self.coeffs[b.index()]
    }

    pub fn scale(&self, s: T) -> Self {
        Self { coeffs: self.coeffs.map(|c| c * s) }
    }

    /// Grade projection `⟨a⟩_r`.
    pub fn grade(&self, r: usize) -> Self {
        let mut out = *self;
        for b in Blade::all() {
            if b.grade() != r {
                out.coeffs[b.index()] = T::zero();
            }
        }
        out
    }

    /// `⟨a⟩₀`.
    pub fn scalar_part(&self) -> T {
        self.coeffs[0]
    }

    /// Reversion `a‡`.
    pub fn reverse(&self) -> Self {
        let mut out = *self;
        for b in Blade::all() {
            if b.reverse_sign() < 0 {
                out.coeffs[b.index()] = -out.coeffs[b.index()];
            }
        }
        out
    }

    pub fn geometric_product(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for a in Blade::all() {
            let ca = self.coeffs[a.index()];
            if ca == T::zero() {
                continue;
            }
            for b in Blade::all() {
                let cb = other.coeffs[b.index()];
                if cb == T::zero() {
                    continue;
                }
                let (sign, c) = a.product(b);
                let term = ca * cb;
                let slot = &mut out.coeffs[c.index()];
                *slot = if sign > 0 { *slot + term } else { *slot - term };
            }
        }
        out
    }

    /// Clifford scalar product `a‡ * b = ⟨a‡ b⟩₀`.
    pub fn scalar_product(&self, other: &Self) -> T {
        self.reverse().geometric_product(other).scalar_part()
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(T) -> U) -> Multivector<U> {
        Multivector { coeffs: self.coeffs.map(f) }
    }
}

impl<T: Coefficient> Add for Multivector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *o = *o + r;
        }
        out
    }
}

impl<T: Coefficient> Sub for Multivector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut out = self;
        for (o, r) in out.coeffs.iter_mut().zip(rhs.coeffs) {
            *o = *o - r;
        }
        out
    }
}

impl<T: Coefficient> Neg for Multivector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c)
    }
}

impl<T: Coefficient> Mul for Multivector<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.geometric_product(&rhs)
    }
}

pub fn geometric_product<T: Coefficient>(a: &Multivector<T>, b: &Multivector<T>) -> Multivector<T> {
    a.geometric_product(b)
}

pub fn reverse<T: Coefficient>(a: &Multivector<T>) -> Multivector<T> {
    a.reverse()
}

pub fn scalar_part<T: Coefficient>(a: &Multivector<T>) -> T {
    a.scalar_part()
}

/// Diagonal metric of Clifford space, `G_MN = ⟨γ_M‡ γ_N⟩₀`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CliffordMetric {
    pub diag: [i8; BLADES],
    pub signature: (usize, usize),
}

impl CliffordMetric {
    pub fn from_diag(diag: [i8; BLADES]) -> Self {
        let plus = diag.iter().filter(|&&s| s > 0).count();
        Self { diag, signature: (plus, BLADES - plus) }
    }

    pub fn sign(&self, b: Blade) -> i8 {
        self.diag[b.index()]
    }
}

/// Full 16×16 Gram matrix `⟨γ_M‡ γ_N⟩₀` evaluated with exact integers.
pub fn gram_matrix() -> [[i64; BLADES]; BLADES] {
    let mut g = [[0i64; BLADES]; BLADES];
    for m in Blade::all() {
        let rm = Multivector::<i64>::basis(m).reverse();
        for n in Blade::all() {
            g[m.index()][n.index()] = rm.geometric_product(&Multivector::basis(n)).scalar_part();
        }
    }
    g
}

/// Builds the Clifford-space metric from explicit blade products.
pub fn clifford_metric() -> CliffordMetric {
    let g = gram_matrix();
    let mut diag = [0i8; BLADES];
    for (i, d) in diag.iter_mut().enumerate() {
        *d = g[i][i] as i8;
    }
    CliffordMetric::from_diag(diag)
}

/// Six blades spanning a copy of `M_{2,4}` inside Clifford space, with the
/// induced diagonal metric.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct M24Embedding {
    pub blades: [Blade; 6],
    pub metric: [i8; 6],
}

impl M24Embedding {
    pub fn signature(&self) -> (usize, usize) {
        let plus = self.metric.iter().filter(|&&s| s > 0).count();
        (plus, 6 - plus)
    }

    /// Reorders the blades so that the metric reads `(+,-,-,-,-,+)`: the four
    /// spacetime directions first, then the two extra ones with the
    /// negative-norm extra direction before the positive one.
    pub fn spacetime_first(&self) -> Self {
        let mut idx: Vec<usize> = (0..6).collect();
        let is_vector = |b: Blade| b.grade() == 1;
        idx.sort_by_key(|&i| {
            let b = self.blades[i];
            match (is_vector(b), self.metric[i] > 0) {
                (true, true) => (0, b),
                (true, false) => (1, b),
                (false, false) => (2, b),
                (false, true) => (3, b),
            }
        });
        Self {
            blades: std::array::from_fn(|k| self.blades[idx[k]]),
            metric: std::array::from_fn(|k| self.metric[idx[k]]),
        }
    }
}

/// Default blade selection `{1, γ₀, γ₁, γ₂, γ₃, γ₀₁₂₃}`.
pub const DEFAULT_M24_BLADES: [Blade; 6] = [
    Blade(0),
    Blade(0b0001),
    Blade(0b0010),
    Blade(0b0100),
    Blade(0b1000),
    Blade(0b1111),
];

/// Identifies `M_{2,4}` with a 6-blade subspace; `None` selects the default.
pub fn m24_embedding(subset: Option<[Blade; 6]>) -> Result<M24Embedding> {
    let blades = subset.unwrap_or(DEFAULT_M24_BLADES);
    for i in 0..6 {
        if blades[i + 1..].contains(&blades[i]) {
            return Err(Error::DuplicateBlade);
        }
    }
    let metric_table = clifford_metric();
    let emb = M24Embedding { blades, metric: blades.map(|b| metric_table.sign(b)) };
    let (plus, minus) = emb.signature();
    if (plus, minus) != (2, 4) {
        return Err(Error::WrongSignature { plus, minus });
    }
    Ok(emb)
}
