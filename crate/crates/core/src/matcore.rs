//! Dense complex linear algebra for the small matrices used throughout the
//! crate (qubit pairs, their environments and superoperators, so dimension 16
//! at most).
//!
//! Basis convention: for a single qubit, index 0 is the excited state and
//! index 1 the ground state. Two-qubit states are ordered |00>, |01>, |10>,
//! |11> and tensor products use Kronecker ordering, `row = i_a * dim_b + i_b`.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Hermiticity tolerance accepted by the eigensolver.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues in `[-CLIP_TOL, 0)` are treated as numerical noise and set to 0.
pub const CLIP_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 100;

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| {
                    let z = self[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; `entries.len()` must be a
    /// perfect square.
    pub fn from_vec(entries: Vec<C64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim * dim != entries.len() || dim == 0 {
            return Err(Error::NotSquare {
                rows: entries.len(),
                cols: 1,
            });
        }
        Ok(Self { dim, data: entries })
    }

    pub fn from_rows(rows: &[Vec<C64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let mut m = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    /// |v><v|
    pub fn outer(v: &[C64]) -> Self {
        Self::from_fn(v.len(), |i, j| v[i] * v[j].conj())
    }

    /// Single matrix unit |i><j|.
    pub fn unit(dim: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(i, j)] = C64::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on different dims");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// max |M - M^dagger| over all entries.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.dim {
            for j in i..self.dim {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    /// (M + M^dagger) / 2
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim, |i, j| (self[(i, j)] + self[(j, i)].conj()) * 0.5)
    }

    fn norm1(&self) -> f64 {
        (0..self.dim)
            .map(|j| (0..self.dim).map(|i| self[(i, j)].norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "matmul on different dims");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.dim, v.len(), "mul_vec dimension");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    /// A rho A^dagger
    pub fn sandwich(&self, rho: &Self) -> Self {
        self.matmul(rho).matmul(&self.adjoint())
    }

    /// Column-stacked vectorization: `vec[i + dim * j] = M[i][j]`.
    pub fn vectorize(&self) -> Vec<C64> {
        let n = self.dim;
        let mut v = vec![C64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                v[i + n * j] = self[(i, j)];
            }
        }
        v
    }

    /// Inverse of [`ComplexMatrix::vectorize`].
    pub fn unvectorize(v: &[C64]) -> Result<Self> {
        let n = (v.len() as f64).sqrt().round() as usize;
        if n * n != v.len() {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: v.len(),
            });
        }
        Ok(Self::from_fn(n, |i, j| v[i + n * j]))
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
                .unwrap_or(col);
            if a[(pivot, col)].norm() <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].inv();
            for j in 0..n {
                a[(col, j)] *= p;
                inv[(col, j)] *= p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let (ac, ic) = (a[(col, j)], inv[(col, j)]);
                    a[(r, j)] -= f * ac;
                    inv[(r, j)] -= f * ic;
                }
            }
        }
        Ok(inv)
    }

    /// Basis of the kernel `{x : M x = 0}`, found by reduced row echelon
    /// form. Pivots smaller than `tol` times the largest entry count as zero.
    pub fn null_space(&self, tol: f64) -> Vec<Vec<C64>> {
        let n = self.dim;
        let mut a = self.clone();
        let thresh = tol * self.max_abs().max(1.0);
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let best = (row..n)
                .max_by(|&r, &s| a[(r, col)].norm().total_cmp(&a[(s, col)].norm()))
                .unwrap_or(row);
            if a[(best, col)].norm() <= thresh {
                continue;
            }
            a.swap_rows(row, best);
            let p = a[(row, col)].inv();
            for j in 0..n {
                a[(row, j)] *= p;
            }
            for r in 0..n {
                if r == row {
                    continue;
                }
                let f = a[(r, col)];
                if f == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let v = a[(row, j)];
                    a[(r, j)] -= f * v;
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![C64::new(0.0, 0.0); n];
                x[fc] = C64::new(1.0, 0.0);
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    x[pc] = -a[(r, fc)];
                }
                x
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let n = self.dim;
        for j in 0..n {
            self.data.swap(a * n + j, b * n + j);
        }
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "add on different dims");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "sub on different dims");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (na, nb) = (a.dim, b.dim);
    ComplexMatrix::from_fn(na * nb, |r, c| a[(r / nb, c / nb)] * b[(r % nb, c % nb)])
}

/// Traces out the second factor of a `dim_a * dim_b` dimensional operator.
pub fn partial_trace_second(
    m: &ComplexMatrix,
    dim_a: usize,
    dim_b: usize,
) -> Result<ComplexMatrix> {
    if m.dim != dim_a * dim_b {
        return Err(Error::DimensionMismatch {
            expected: dim_a * dim_b,
            actual: m.dim,
        });
    }
    Ok(ComplexMatrix::from_fn(dim_a, |i, j| {
        (0..dim_b).map(|k| m[(i * dim_b + k, j * dim_b + k)]).sum()
    }))
}

/// Eigenvalues (ascending) and matching eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// `vectors[k]` is the normalized eigenvector for `values[k]`.
    pub vectors: Vec<Vec<C64>>,
}

/// Cyclic complex Jacobi eigensolver.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let deviation = m.hermitian_deviation();
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    let n = m.dim;
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let tau = (a[(q, q)].re - a[(p, p)].re) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // J = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on (p, q); A <- J^dagger A J.
                let sp = phase * s;
                let spc = sp.conj();
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * spc;
                    a[(k, q)] = akp * sp + akq * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * sp;
                    a[(q, k)] = apk * spc + aqk * c;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * c - vkq * spc;
                    v[(k, q)] = vkp * sp + vkq * c;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    Ok(HermitianEigen {
        values: order.iter().map(|&i| a[(i, i)].re).collect(),
        vectors: order
            .iter()
            .map(|&k| (0..n).map(|i| v[(i, k)]).collect())
            .collect(),
    })
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Sets eigenvalues in `[-CLIP_TOL, 0)` to zero; anything more negative is an
/// error.
pub fn clip_spectrum(values: &[f64]) -> Result<Vec<f64>> {
    values
        .iter()
        .map(|&x| {
            if x >= 0.0 {
                Ok(x)
            } else if x >= -CLIP_TOL {
                Ok(0.0)
            } else {
                Err(Error::NegativeEigenvalue(x))
            }
        })
        .collect()
}

/// `exp(m * t)` by scaling and squaring of a truncated Taylor series.
pub fn matrix_exp(m: &ComplexMatrix, t: f64) -> ComplexMatrix {
    let n = m.dim;
    let a = m.scale_real(t);
    let norm = a.norm1();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let a = a.scale_real(0.5f64.powi(squarings));

    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=30 {
        term = term.matmul(&a).scale_real(1.0 / k as f64);
        result = &result + &term;
        if term.max_abs() <= 1e-18 * result.max_abs() {
            break;
        }
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub const HERMITIAN_TOL: f64 = 1e-12;
    pub const TRACE_TOL: f64 = 1e-12;

    /// Validates `matrix` and stores its Hermitian part.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermitian_deviation();
        if deviation > Self::HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > Self::TRACE_TOL || tr.im.abs() > Self::TRACE_TOL {
            return Err(Error::BadTrace {
                re: tr.re,
                im: tr.im,
            });
        }
        let matrix = matrix.hermitian_part();
        let min = hermitian_eigenvalues(&matrix)?
            .first()
            .copied()
            .unwrap_or(0.0);
        if min < -CLIP_TOL {
            return Err(Error::NegativeEigenvalue(min));
        }
        Ok(Self { matrix })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            matrix: ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64),
        }
    }

    /// Projector onto `psi / |psi|`.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::BadTrace { re: 0.0, im: 0.0 });
        }
        let unit: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit))
    }

    pub fn diagonal(probabilities: &[f64]) -> Result<Self> {
        Self::new(ComplexMatrix::diag_real(probabilities))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Clipped spectrum, ascending.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        clip_spectrum(&hermitian_eigenvalues(&self.matrix)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn tensor_examples() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(tensor(&i2, &i2), ComplexMatrix::identity(4));

        let k = 0.3f64;
        let d = ComplexMatrix::diag_real(&[k, 1.0]);
        let expected = ComplexMatrix::diag_real(&[k * k, k, k, 1.0]);
        assert_eq!(tensor(&d, &d), expected);

        let p0 = ComplexMatrix::unit(2, 0, 0);
        let p1 = ComplexMatrix::unit(2, 1, 1);
        assert_eq!(tensor(&p0, &p1), ComplexMatrix::unit(4, 1, 1));
    }

    #[test]
    fn partial_trace_examples() {
        let psi = [c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)];
        let bell = ComplexMatrix::outer(&psi);
        let reduced = partial_trace_second(&bell, 2, 2).unwrap();
        assert!(reduced.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);

        let traced = partial_trace_second(&ComplexMatrix::identity(4), 2, 2).unwrap();
        assert_eq!(traced, ComplexMatrix::identity(2).scale_real(2.0));

        assert!(matches!(
            partial_trace_second(&ComplexMatrix::identity(4), 2, 3),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn eigenvalue_examples() {
        let quarter = ComplexMatrix::diag_real(&[0.25; 4]);
        assert_eq!(hermitian_eigenvalues(&quarter).unwrap(), vec![0.25; 4]);

        let sx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).unwrap();
        let ev = hermitian_eigenvalues(&sx).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);

        let sy = ComplexMatrix::from_rows(&[
            vec![c(0.0), C64::new(0.0, -1.0)],
            vec![C64::new(0.0, 1.0), c(0.0)],
        ])
        .unwrap();
        let e = hermitian_eigen(&sy).unwrap();
        for (val, vec) in e.values.iter().zip(&e.vectors) {
            let mv = sy.mul_vec(vec);
            for (a, b) in mv.iter().zip(vec) {
                assert!((a - b * val).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn non_hermitian_rejected() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(
            hermitian_eigenvalues(&m),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn clipping() {
        assert_eq!(clip_spectrum(&[-5e-11, 0.5]).unwrap(), vec![0.0, 0.5]);
        assert!(matches!(
            clip_spectrum(&[-1e-8]),
            Err(Error::NegativeEigenvalue(_))
        ));
    }

    #[test]
    fn exp_examples() {
        let z = ComplexMatrix::zeros(3);
        assert_eq!(matrix_exp(&z, 2.0), ComplexMatrix::identity(3));

        let d = ComplexMatrix::diag_real(&[-1.5, 0.7]);
        let e = matrix_exp(&d, 3.0);
        assert!((e[(0, 0)].re - (-4.5f64).exp()).abs() < 1e-14);
        assert!((e[(1, 1)].re / 2.1f64.exp() - 1.0).abs() < 1e-13);
        assert!(e[(0, 1)].norm() == 0.0);
    }

    #[test]
    fn exp_matches_eigendecomposition_for_hermitian() {
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0), C64::new(0.5, -2.0), c(0.1)],
            vec![C64::new(0.5, 2.0), c(-3.0), C64::new(0.0, 0.4)],
            vec![c(0.1), C64::new(0.0, -0.4), c(2.5)],
        ])
        .unwrap();
        let t = 1.3;
        let eig = hermitian_eigen(&h).unwrap();
        let mut reference = ComplexMatrix::zeros(3);
        for (val, vec) in eig.values.iter().zip(&eig.vectors) {
            let proj = ComplexMatrix::outer(vec).scale_real((val * t).exp());
            reference = &reference + &proj;
        }
        let got = matrix_exp(&h, t);
        assert!(got.max_abs_diff(&reference) <= 1e-10 * reference.max_abs());
    }

    #[test]
    fn inverse_and_null_space() {
        let m = ComplexMatrix::from_rows(&[vec![c(2.0), C64::new(0.0, 1.0)], vec![c(1.0), c(3.0)]])
            .unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.matmul(&inv).max_abs_diff(&ComplexMatrix::identity(2)) < 1e-15);

        let singular = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]).unwrap();
        assert!(matches!(singular.inverse(), Err(Error::Singular)));
        let ns = singular.null_space(1e-12);
        assert_eq!(ns.len(), 1);
        let r = singular.mul_vec(&ns[0]);
        assert!(r.iter().all(|z| z.norm() < 1e-15));
    }

    #[test]
    fn vectorization_roundtrip() {
        let m = ComplexMatrix::from_fn(3, |i, j| C64::new(i as f64, j as f64));
        let v = m.vectorize();
        assert_eq!(v[1], m[(1, 0)]);
        assert_eq!(v[3], m[(0, 1)]);
        assert_eq!(ComplexMatrix::unvectorize(&v).unwrap(), m);
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::diagonal(&[0.5, 0.5]).is_ok());
        assert!(matches!(
            DensityMatrix::diagonal(&[0.6, 0.5]),
            Err(Error::BadTrace { .. })
        ));
        assert!(matches!(
            DensityMatrix::diagonal(&[1.5, -0.5]),
            Err(Error::NegativeEigenvalue(_))
        ));
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(matches!(
            DensityMatrix::new(m),
            Err(Error::NotHermitian { .. })
        ));
    }
}
