//! Correlated two-qubit decay generator and its damping-basis solution.
//!
//! The generator drives `|00> -> |11>` (both qubits relax together) at rate
//! `alpha`:
//!
//! ```text
//! L rho = -alpha/2 [ P rho + rho P - 2 J rho J^dagger ],  J = s ⊗ s,  P = J^dagger J
//! ```
//!
//! with `s` the single-qubit lowering operator. Superoperators act on
//! column-stacked vectors, so `vec(A rho B^dagger) = (conj(B) ⊗ A) vec(rho)`.
//!
//! Its exponential is the correlated Kraus pair at damping angle
//! `chi = acos(exp(-alpha t / 2))`.

use serde::Serialize;

use crate::channels::{correlated_kraus, KrausChannel};
use crate::error::{Error, Result};
use crate::matcore::{matrix_exp, tensor, ComplexMatrix, DensityMatrix, C64};

const NULL_SPACE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LindbladParams {
    alpha: f64,
    t: f64,
}

impl LindbladParams {
    pub fn new(alpha: f64, t: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("t", t)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    value: v,
                    min: 0.0,
                    max: f64::INFINITY,
                });
            }
        }
        Ok(Self { alpha, t })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Damping angle of the equivalent correlated Kraus pair.
    pub fn damping_angle(&self) -> f64 {
        (-self.alpha * self.t / 2.0).exp().clamp(0.0, 1.0).acos()
    }

    pub fn kraus_equivalent(&self) -> Result<KrausChannel> {
        correlated_kraus(self.damping_angle())
    }
}

/// `(sigma_x - i sigma_y) / 2`; maps index 0 (excited) to index 1 (ground).
pub fn lowering() -> ComplexMatrix {
    let sx = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("2x2");
    let sy = ComplexMatrix::from_rows(&[
        vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0)],
        vec![C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
    ])
    .expect("2x2");
    (&sx - &sy.scale(C64::new(0.0, 1.0))).scale_real(0.5)
}

fn jump() -> ComplexMatrix {
    let s = lowering();
    tensor(&s, &s)
}

/// `L rho` evaluated directly on a 4x4 operator.
pub fn apply_generator(alpha: f64, rho: &ComplexMatrix) -> ComplexMatrix {
    let j = jump();
    let p = j.adjoint().matmul(&j);
    let anti = &p.matmul(rho) + &rho.matmul(&p);
    let jump_term = j.sandwich(rho).scale_real(2.0);
    (&anti - &jump_term).scale_real(-alpha / 2.0)
}

/// 16x16 generator on column-stacked density matrices.
pub fn build_superoperator(alpha: f64) -> ComplexMatrix {
    let j = jump();
    let p = j.adjoint().matmul(&j);
    let id = ComplexMatrix::identity(4);
    let left = tensor(&id, &p);
    let right = tensor(&p.transpose(), &id);
    let jump_term = tensor(&j.conj(), &j).scale_real(2.0);
    (&(&left + &right) - &jump_term).scale_real(-alpha / 2.0)
}

/// `exp(L t)` as a 16x16 matrix.
pub fn propagator(params: LindbladParams) -> ComplexMatrix {
    matrix_exp(&build_superoperator(params.alpha), params.t)
}

/// `exp(L t)` applied to an arbitrary 4x4 operator.
pub fn evolve_operator(params: LindbladParams, m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if m.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            actual: m.dim(),
        });
    }
    ComplexMatrix::unvectorize(&propagator(params).mul_vec(&m.vectorize()))
}

pub fn evolve(params: LindbladParams, rho: &DensityMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(evolve_operator(params, rho.matrix())?.hermitian_part())
}

/// Right and left eigen-operators of the generator, paired so that
/// `Tr(left[i] right[j]) = delta_ij`.
#[derive(Debug, Clone)]
pub struct DampingBasis {
    pub eigenvalues: Vec<C64>,
    pub right: Vec<ComplexMatrix>,
    pub left: Vec<ComplexMatrix>,
}

impl DampingBasis {
    /// Matrix of `Tr(left[i] right[j])`.
    pub fn duality_matrix(&self) -> ComplexMatrix {
        let n = self.right.len();
        ComplexMatrix::from_fn(n, |i, j| self.left[i].matmul(&self.right[j]).trace())
    }

    /// `sum_i Tr(left_i rho) exp(lambda_i t) right_i`.
    pub fn reconstruct(&self, rho: &ComplexMatrix, t: f64) -> ComplexMatrix {
        self.eigenvalues
            .iter()
            .zip(&self.right)
            .zip(&self.left)
            .fold(ComplexMatrix::zeros(4), |acc, ((lambda, r), l)| {
                let weight = l.matmul(rho).trace() * (lambda * t).exp();
                &acc + &r.scale(weight)
            })
    }
}

/// The generator's spectrum is `{0, -alpha/2, -alpha}`; for each eigenvalue
/// the right and left eigenspaces are found as kernels and biorthonormalized.
pub fn damping_basis(alpha: f64) -> Result<DampingBasis> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            min: f64::MIN_POSITIVE,
            max: f64::INFINITY,
        });
    }
    let gen = build_superoperator(alpha);
    let n = gen.dim();
    let mut basis = DampingBasis {
        eigenvalues: Vec::with_capacity(n),
        right: Vec::with_capacity(n),
        left: Vec::with_capacity(n),
    };
    for lambda in [0.0, -alpha / 2.0, -alpha] {
        let shifted = &gen - &ComplexMatrix::identity(n).scale_real(lambda);
        let rights = shifted.null_space(NULL_SPACE_TOL);
        let lefts = shifted.transpose().null_space(NULL_SPACE_TOL);
        if rights.len() != lefts.len() {
            return Err(Error::Defective {
                found: rights.len().min(lefts.len()),
                dim: n,
            });
        }
        let k = rights.len();
        // overlap[a][b] = y_a . x_b; left rows are replaced by overlap^{-1} y.
        let overlap = ComplexMatrix::from_fn(k, |a, b| {
            lefts[a].iter().zip(&rights[b]).map(|(y, x)| y * x).sum()
        });
        let inv = overlap
            .inverse()
            .map_err(|_| Error::Defective { found: 0, dim: n })?;
        for a in 0..k {
            let y: Vec<C64> = (0..n)
                .map(|idx| (0..k).map(|b| inv[(a, b)] * lefts[b][idx]).sum())
                .collect();
            basis.eigenvalues.push(C64::new(lambda, 0.0));
            basis.right.push(ComplexMatrix::unvectorize(&rights[a])?);
            // Tr(L rho) = y . vec(rho) requires L = unvec(y)^T.
            basis.left.push(ComplexMatrix::unvectorize(&y)?.transpose());
        }
    }
    if basis.right.len() != n {
        return Err(Error::Defective {
            found: basis.right.len(),
            dim: n,
        });
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{choi_matrix, kraus_from_choi};
    use crate::matcore::{hermitian_eigenvalues, partial_trace_second};
    use crate::optimize::random_density_matrix;

    const ALPHA: f64 = 0.8;

    fn lp(t: f64) -> LindbladParams {
        LindbladParams::new(ALPHA, t).unwrap()
    }

    #[test]
    fn lowering_operator_decays_excited_level() {
        assert!(lowering().max_abs_diff(&ComplexMatrix::unit(2, 1, 0)) < 1e-16);
    }

    #[test]
    fn zero_rate_gives_zero_generator() {
        assert_eq!(build_superoperator(0.0).max_abs(), 0.0);
    }

    #[test]
    fn superoperator_matches_direct_generator() {
        let gen = build_superoperator(ALPHA);
        for seed in 0..10 {
            let rho = random_density_matrix(4, seed).unwrap();
            let direct = apply_generator(ALPHA, rho.matrix());
            let vectorized =
                ComplexMatrix::unvectorize(&gen.mul_vec(&rho.matrix().vectorize())).unwrap();
            assert!(direct.max_abs_diff(&vectorized) < 1e-15);
        }
    }

    #[test]
    fn generator_is_traceless() {
        for seed in 0..50 {
            let rho = random_density_matrix(4, 100 + seed).unwrap();
            assert!(apply_generator(ALPHA, rho.matrix()).trace().norm() < 1e-15);
        }
    }

    #[test]
    fn doubly_excited_population_rate() {
        let out = apply_generator(ALPHA, &ComplexMatrix::unit(4, 0, 0));
        assert!((out[(0, 0)].re + ALPHA).abs() < 1e-15);
        assert!((out[(3, 3)].re - ALPHA).abs() < 1e-15);
    }

    #[test]
    fn evolve_endpoints() {
        let rho = random_density_matrix(4, 7).unwrap();
        let same = evolve(lp(0.0), &rho).unwrap();
        assert!(same.matrix().max_abs_diff(rho.matrix()) < 1e-15);

        let excited = DensityMatrix::new(ComplexMatrix::unit(4, 0, 0)).unwrap();
        let late = evolve(lp(40.0 / ALPHA), &excited).unwrap();
        assert!(late.matrix()[(0, 0)].re.abs() <= 1e-15);
    }

    #[test]
    fn damping_angle_recovered_from_population() {
        let excited = DensityMatrix::new(ComplexMatrix::unit(4, 0, 0)).unwrap();
        for &t in &[0.1, 0.5, 1.0, 2.0, 5.0] {
            let prm = lp(t / ALPHA);
            let pop = evolve(prm, &excited).unwrap().matrix()[(0, 0)].re;
            let chi = pop.sqrt().acos();
            assert!((chi.cos() - (-ALPHA * prm.t() / 2.0).exp()).abs() < 1e-10);
            assert!((chi - prm.damping_angle()).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_correlated_kraus_on_matrix_units() {
        for &t in &[0.1, 1.0, 5.0] {
            let prm = lp(t / ALPHA);
            let kraus = prm.kraus_equivalent().unwrap();
            for i in 0..4 {
                for j in 0..4 {
                    let e = ComplexMatrix::unit(4, i, j);
                    let a = evolve_operator(prm, &e).unwrap();
                    let b = kraus.apply_operator(&e).unwrap();
                    assert!(a.max_abs_diff(&b) < 1e-12);
                }
            }
        }
    }

    #[test]
    fn damping_basis_properties() {
        let basis = damping_basis(ALPHA).unwrap();
        assert_eq!(basis.eigenvalues.len(), 16);
        let gen = build_superoperator(ALPHA);
        for (lambda, r) in basis.eigenvalues.iter().zip(&basis.right) {
            let lr = ComplexMatrix::unvectorize(&gen.mul_vec(&r.vectorize())).unwrap();
            assert!(lr.max_abs_diff(&r.scale(*lambda)) < 1e-9);
        }
        assert!(
            basis
                .duality_matrix()
                .max_abs_diff(&ComplexMatrix::identity(16))
                < 1e-9
        );

        // Some zero-eigenvalue operator is a valid stationary state.
        let stationary = basis
            .eigenvalues
            .iter()
            .zip(&basis.right)
            .filter(|(l, _)| l.norm() < 1e-12)
            .map(|(_, r)| r)
            .find(|r| r.trace().norm() > 1e-6)
            .expect("stationary operator");
        let state = stationary.scale(stationary.trace().inv());
        assert!(DensityMatrix::new(state.hermitian_part()).is_ok());

        for &t in &[0.1, 1.0, 5.0] {
            let rho = random_density_matrix(4, 3).unwrap();
            let a = basis.reconstruct(rho.matrix(), t / ALPHA);
            let b = evolve_operator(lp(t / ALPHA), rho.matrix()).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-8);
        }
    }

    #[test]
    fn damping_basis_needs_positive_rate() {
        assert!(damping_basis(0.0).is_err());
    }

    #[test]
    fn propagator_is_cptp_with_two_kraus_operators() {
        for &t in &[0.1, 0.5, 2.0] {
            let prm = lp(t / ALPHA);
            let choi = choi_matrix(4, |m| evolve_operator(prm, m)).unwrap();
            let min = hermitian_eigenvalues(&choi.hermitian_part()).unwrap()[0];
            assert!(min >= -1e-9);
            // Trace preservation: tracing out the output factor leaves I.
            let input_marginal = partial_trace_second(&choi, 4, 4).unwrap();
            assert!(input_marginal.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-12);
            assert!(kraus_from_choi(&choi, 4, 1e-9).unwrap().len() <= 2);
        }
    }
}
