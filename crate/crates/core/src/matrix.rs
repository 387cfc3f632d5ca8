//! Dense complex matrices, Hermitian eigendecomposition, entropy and
//! vectorization primitives.
//!
//! Storage is row-major, which makes [`ComplexMatrix::vectorize`] the
//! row-stacking map `vec(m)[m*d + n] = m[(m,n)]`. The swap operator and the
//! complement block assembly depend on this ordering.

use nalgebra::DMatrix;
use num_complex::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Absolute tolerance on `max |m - m^dagger|` before a matrix is rejected as
/// non-Hermitian. All constructions in this crate are exact to roundoff for
/// d <= 32, so a tight fixed bound is safe.
pub const HERMITICITY_TOL: f64 = 1e-10;

/// Eigenvalues below this magnitude are treated as exactly zero inside
/// entropies, so `0 log 0 = 0` survives roundoff into small negatives.
pub const EIGENVALUE_ZERO_TOL: f64 = 1e-12;

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<C64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    /// Matrix unit E_{ij} = |i><j| in dimension d.
    pub fn basis(d: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(d, d);
        m.set(i, j, C64::new(1.0, 0.0));
        m
    }

    pub fn diagonal(entries: &[C64]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, &v) in entries.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            data: entries.iter().map(|&r| C64::new(r, 0.0)).collect(),
        }
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> C64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: C64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace requires a square matrix");
        (0..self.rows).map(|i| self.get(i, i)).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.conj()).collect(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn scale_re(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zeros(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(i * other.rows + k, j * other.cols + l, a * other.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Max-entry norm of `m - m^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..=i {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_defect() <= tol
    }

    /// Max-entry norm of `U^dagger U - I`.
    pub fn unitarity_defect(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.rows))
    }

    /// Row-stacking vectorization of a square matrix: the component at flat
    /// index `m*d + n` is the entry `(m, n)`.
    pub fn vectorize(&self) -> Self {
        assert!(self.is_square(), "vectorize expects a square matrix");
        Self {
            rows: self.rows * self.cols,
            cols: 1,
            data: self.data.clone(),
        }
    }

    /// Inverse of [`vectorize`](Self::vectorize) for a d^2-component column.
    pub fn unvectorize(v: &Self, d: usize) -> Self {
        assert_eq!(v.cols, 1);
        assert_eq!(v.rows, d * d);
        Self {
            rows: d,
            cols: d,
            data: v.data.clone(),
        }
    }

    /// Partial trace over the second factor of a (d*d)-dimensional square
    /// matrix regarded as acting on C^d (x) C^d.
    pub fn partial_trace_second(&self, d: usize) -> Self {
        assert_eq!(self.rows, d * d);
        assert_eq!(self.cols, d * d);
        let mut out = Self::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.get(i * d + k, j * d + k);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Partial trace over the first factor.
    pub fn partial_trace_first(&self, d: usize) -> Self {
        assert_eq!(self.rows, d * d);
        assert_eq!(self.cols, d * d);
        let mut out = Self::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                let mut s = C64::new(0.0, 0.0);
                for k in 0..d {
                    s += self.get(k * d + i, k * d + j);
                }
                out.set(i, j, s);
            }
        }
        out
    }

    /// Transpose the second tensor factor of a (d*d)-dimensional matrix.
    pub fn partial_transpose_second(&self, d: usize) -> Self {
        assert_eq!(self.rows, d * d);
        assert_eq!(self.cols, d * d);
        let mut out = Self::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for l in 0..d {
                        out.set(i * d + l, j * d + k, self.get(i * d + k, j * d + l));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn to_na(&self) -> DMatrix<C64> {
        DMatrix::from_row_slice(self.rows, self.cols, &self.data)
    }

    pub(crate) fn from_na(m: &DMatrix<C64>) -> Self {
        let mut out = Self::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                out.set(i, j, m[(i, j)]);
            }
        }
        out
    }
}

impl std::ops::Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, other)
    }
}

impl std::ops::Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, other: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, other)
    }
}

impl std::ops::Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, other: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(other)
    }
}

// JSON form: array of rows, each row an array of [re, im] pairs.
impl Serialize for ComplexMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<[f64; 2]>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| [self.get(i, j).re, self.get(i, j).im]).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<[f64; 2]>> = Vec::deserialize(deserializer)?;
        let nrows = rows.len();
        if nrows == 0 {
            return Err(D::Error::custom("matrix must have at least one row"));
        }
        let ncols = rows[0].len();
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(D::Error::custom("ragged rows in matrix"));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&[re, im]| C64::new(re, im)))
            .collect();
        Ok(ComplexMatrix::new(nrows, ncols, data))
    }
}

/// The d^2 x d^2 permutation matrix with `S |m,n> = |n,m>`.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let mut s = ComplexMatrix::zeros(d * d, d * d);
    for m in 0..d {
        for n in 0..d {
            s.set(n * d + m, m * d + n, C64::new(1.0, 0.0));
        }
    }
    s
}

/// Real eigenvalues of a Hermitian matrix, sorted descending, plus the
/// eigenvector matrix. Rejects non-square and non-Hermitian input and checks
/// the reconstruction residual `max |m - V L V^dagger|`.
fn hermitian_eigen_checked(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix)> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let defect = m.hermiticity_defect();
    if defect > HERMITICITY_TOL {
        return Err(Error::NotHermitian {
            defect,
            tol: HERMITICITY_TOL,
        });
    }
    let eig = m.to_na().symmetric_eigen();
    let n = m.rows;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &k) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, eig.eigenvectors[(row, k)]);
        }
    }
    // reconstruction residual check
    let lambda = ComplexMatrix::diagonal(&values.iter().map(|&v| C64::new(v, 0.0)).collect::<Vec<_>>());
    let recon = vectors.matmul(&lambda).matmul(&vectors.adjoint());
    let residual = recon.max_abs_diff(m);
    if residual > 1e-9 {
        return Err(Error::NotHermitian {
            defect: residual,
            tol: 1e-9,
        });
    }
    Ok((values, vectors))
}

/// Eigenvalues of a Hermitian matrix, descending, without multiplicity
/// grouping.
pub fn hermitian_eigenvalues_raw(m: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eigen_checked(m).map(|(v, _)| v)
}

/// Eigenvalues of a Hermitian matrix grouped into a [`Spectrum`].
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    Ok(Spectrum::from_values(&hermitian_eigenvalues_raw(m)?, 1e-9))
}

/// Unitary `exp(i t H)` of a Hermitian matrix via its eigendecomposition.
pub fn hermitian_exp_i(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    let (values, vectors) = hermitian_eigen_checked(h)?;
    let phases: Vec<C64> = values
        .iter()
        .map(|&v| C64::new(0.0, t * v).exp())
        .collect();
    let d = ComplexMatrix::diagonal(&phases);
    Ok(vectors.matmul(&d).matmul(&vectors.adjoint()))
}

pub(crate) fn xlog2(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.log2()
    }
}

/// Shannon entropy in bits of a set of eigenvalues, clamping magnitudes below
/// [`EIGENVALUE_ZERO_TOL`] to zero.
pub fn entropy_of_eigenvalues(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .map(|&v| if v.abs() < EIGENVALUE_ZERO_TOL { 0.0 } else { xlog2(v) })
        .sum::<f64>()
}

/// Base-2 von Neumann entropy of a density matrix.
///
/// Requires Hermitian input with unit trace and eigenvalues >= -1e-10; small
/// negative eigenvalues from roundoff are clamped to zero.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let values = hermitian_eigenvalues_raw(rho)?;
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
        return Err(Error::NotDensityMatrix {
            reason: format!("trace {:.12} + {:.3e}i is not 1", trace.re, trace.im),
        });
    }
    if let Some(&v) = values.iter().find(|&&v| v < -1e-10) {
        return Err(Error::NotDensityMatrix {
            reason: format!("negative eigenvalue {:.3e}", v),
        });
    }
    Ok(entropy_of_eigenvalues(&values))
}

/// Eigenvalue multiset with multiplicities, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl Spectrum {
    /// Group raw eigenvalues into (value, multiplicity) pairs; values within
    /// `group_tol` of each other collapse onto their first representative.
    pub fn from_values(values: &[f64], group_tol: f64) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let mut eigenvalues = Vec::new();
        let mut multiplicities: Vec<usize> = Vec::new();
        for v in sorted {
            match eigenvalues.last() {
                Some(&last) if last - v <= group_tol => {
                    *multiplicities.last_mut().unwrap() += 1;
                }
                _ => {
                    eigenvalues.push(v);
                    multiplicities.push(1);
                }
            }
        }
        Self {
            eigenvalues,
            multiplicities,
        }
    }

    /// Exact closed-form constructor: pairs are taken verbatim (descending
    /// order enforced).
    pub fn from_pairs(pairs: &[(f64, usize)]) -> Self {
        let mut pairs: Vec<(f64, usize)> = pairs.iter().filter(|&&(_, m)| m > 0).copied().collect();
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
        Self {
            eigenvalues: pairs.iter().map(|p| p.0).collect(),
            multiplicities: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.multiplicities.iter().sum()
    }

    /// Full eigenvalue multiset, descending.
    pub fn expand(&self) -> Vec<f64> {
        self.eigenvalues
            .iter()
            .zip(&self.multiplicities)
            .flat_map(|(&v, &m)| std::iter::repeat(v).take(m))
            .collect()
    }

    pub fn entropy_bits(&self) -> f64 {
        entropy_of_eigenvalues(&self.expand())
    }

    /// Max distance between the two full multisets, both sorted.
    pub fn max_multiset_diff(&self, other: &Spectrum) -> f64 {
        let a = self.expand();
        let b = other.expand();
        if a.len() != b.len() {
            return f64::INFINITY;
        }
        a.iter()
            .zip(&b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }
}
