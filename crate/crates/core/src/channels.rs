//! Kraus representations of the single-use amplitude-damping channel and of
//! its two-use version with Markov memory.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{hermitian_eigen, tensor, ComplexMatrix, DensityMatrix, C64};

/// Tolerance on `sum_i A_i^dagger A_i = I`.
pub const COMPLETENESS_TOL: f64 = 1e-12;

/// Grid and CLI arithmetic may overshoot a range boundary by this much; such
/// values are clamped instead of rejected.
pub(crate) const RANGE_SLACK: f64 = 1e-12;

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if !value.is_finite() || value < min - RANGE_SLACK || value > max + RANGE_SLACK {
        return Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        });
    }
    Ok(value.clamp(min, max))
}

/// Damping angle `chi` in radians and memory probability `mu`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    chi: f64,
    mu: f64,
}

impl ChannelParams {
    pub fn new(chi: f64, mu: f64) -> Result<Self> {
        Ok(Self {
            chi: check_range("chi", chi, 0.0, FRAC_PI_2)?,
            mu: check_range("mu", mu, 0.0, 1.0)?,
        })
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

/// CPTP map given by Kraus operators. Mixing weights are folded into the
/// operators as `sqrt(w) * A`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    operators: Vec<ComplexMatrix>,
    input_dim: usize,
}

impl KrausChannel {
    pub fn new(operators: Vec<ComplexMatrix>) -> Result<Self> {
        let input_dim = operators
            .first()
            .map(ComplexMatrix::dim)
            .ok_or(Error::Config(
                "a Kraus channel needs at least one operator".into(),
            ))?;
        if let Some(bad) = operators.iter().find(|op| op.dim() != input_dim) {
            return Err(Error::DimensionMismatch {
                expected: input_dim,
                actual: bad.dim(),
            });
        }
        let channel = Self {
            operators,
            input_dim,
        };
        let dev = channel.completeness_deviation();
        if dev > COMPLETENESS_TOL {
            return Err(Error::Incomplete(dev));
        }
        Ok(channel)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            operators: vec![ComplexMatrix::identity(dim)],
            input_dim: dim,
        }
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    /// max entry of `|sum A^dagger A - I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.input_dim);
        for op in &self.operators {
            sum = &sum + &op.adjoint().matmul(op);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.input_dim))
    }

    /// `sum_i A_i m A_i^dagger` on an arbitrary operator (no state checks).
    pub fn apply_operator(&self, m: &ComplexMatrix) -> Result<ComplexMatrix> {
        if m.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                actual: m.dim(),
            });
        }
        let mut out = ComplexMatrix::zeros(self.input_dim);
        for op in &self.operators {
            out = &out + &op.sandwich(m);
        }
        Ok(out)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let out = self.apply_operator(rho.matrix())?;
        DensityMatrix::new(out.hermitian_part())
    }

    /// Superoperator acting on column-stacked vectors:
    /// `vec(A rho A^dagger) = (conj(A) ⊗ A) vec(rho)`.
    pub fn superoperator(&self) -> ComplexMatrix {
        let d = self.input_dim;
        let mut s = ComplexMatrix::zeros(d * d);
        for op in &self.operators {
            s = &s + &tensor(&op.conj(), op);
        }
        s
    }

    /// Kraus set `B_i = sum_j u[i][j] A_j` for a unitary `u`; describes the
    /// same channel.
    pub fn remix(&self, u: &ComplexMatrix) -> Result<Self> {
        if u.dim() != self.operators.len() {
            return Err(Error::DimensionMismatch {
                expected: self.operators.len(),
                actual: u.dim(),
            });
        }
        let operators = (0..u.dim())
            .map(|i| {
                self.operators
                    .iter()
                    .enumerate()
                    .fold(ComplexMatrix::zeros(self.input_dim), |acc, (j, op)| {
                        &acc + &op.scale(u[(i, j)])
                    })
            })
            .collect();
        Self::new(operators)
    }
}

/// Single-use amplitude damping: `A0 = diag(cos chi, 1)`, `A1 = sin chi |1><0|`.
/// Index 0 is the excited level.
pub fn amplitude_damping_kraus(chi: f64) -> Result<KrausChannel> {
    let chi = check_range("chi", chi, 0.0, FRAC_PI_2)?;
    let (s, c) = chi.sin_cos();
    let a0 = ComplexMatrix::diag_real(&[c, 1.0]);
    let mut a1 = ComplexMatrix::zeros(2);
    a1[(1, 0)] = C64::new(s, 0.0);
    KrausChannel::new(vec![a0, a1])
}

/// Two-use amplitude damping with independent noise, operators ordered
/// `[A0⊗A0, A0⊗A1, A1⊗A0, A1⊗A1]`.
pub fn uncorrelated_kraus(chi: f64) -> Result<KrausChannel> {
    let single = amplitude_damping_kraus(chi)?;
    let ops = single.operators();
    let mut out = Vec::with_capacity(4);
    for a in ops {
        for b in ops {
            out.push(tensor(a, b));
        }
    }
    KrausChannel::new(out)
}

/// Fully correlated two-use damping: both qubits decay together,
/// `|00> -> |11>` with amplitude `sin chi`.
pub fn correlated_kraus(chi: f64) -> Result<KrausChannel> {
    let chi = check_range("chi", chi, 0.0, FRAC_PI_2)?;
    let (s, c) = chi.sin_cos();
    let a00 = ComplexMatrix::diag_real(&[c, 1.0, 1.0, 1.0]);
    let mut a11 = ComplexMatrix::zeros(4);
    a11[(3, 0)] = C64::new(s, 0.0);
    KrausChannel::new(vec![a00, a11])
}

/// Memory channel mixing uncorrelated noise (weight `1 - mu`) and correlated
/// noise (weight `mu`). Operator order is fixed: `[u00, u01, u10, u11, c00,
/// c11]`; zero-weight operators are kept.
pub fn memory_channel(params: ChannelParams) -> Result<KrausChannel> {
    let wu = (1.0 - params.mu()).sqrt();
    let wc = params.mu().sqrt();
    let mut ops: Vec<ComplexMatrix> = uncorrelated_kraus(params.chi())?
        .operators()
        .iter()
        .map(|op| op.scale_real(wu))
        .collect();
    ops.extend(
        correlated_kraus(params.chi())?
            .operators()
            .iter()
            .map(|op| op.scale_real(wc)),
    );
    KrausChannel::new(ops)
}

/// Unnormalized Choi matrix `sum_ij |i><j| ⊗ map(|i><j|)` (input factor
/// first).
pub fn choi_matrix(
    dim: usize,
    mut map: impl FnMut(&ComplexMatrix) -> Result<ComplexMatrix>,
) -> Result<ComplexMatrix> {
    let mut choi = ComplexMatrix::zeros(dim * dim);
    for i in 0..dim {
        for j in 0..dim {
            let image = map(&ComplexMatrix::unit(dim, i, j))?;
            if image.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: image.dim(),
                });
            }
            choi = &choi + &tensor(&ComplexMatrix::unit(dim, i, j), &image);
        }
    }
    Ok(choi)
}

/// Kraus operators recovered from a Choi matrix: one per eigenvalue above
/// `tol`. Fails if the Choi matrix has an eigenvalue below `-tol`.
pub fn kraus_from_choi(choi: &ComplexMatrix, dim: usize, tol: f64) -> Result<Vec<ComplexMatrix>> {
    if choi.dim() != dim * dim {
        return Err(Error::DimensionMismatch {
            expected: dim * dim,
            actual: choi.dim(),
        });
    }
    let eig = hermitian_eigen(&choi.hermitian_part())?;
    if let Some(&min) = eig.values.first() {
        if min < -tol {
            return Err(Error::NegativeEigenvalue(min));
        }
    }
    Ok(eig
        .values
        .iter()
        .zip(&eig.vectors)
        .filter(|(val, _)| **val > tol)
        .map(|(val, vec)| {
            let w = val.sqrt();
            ComplexMatrix::from_fn(dim, |out, inp| vec[inp * dim + out] * w)
        })
        .collect())
}
