//! Capacities of the two-use memory channel.
//!
//! Every quantity has two evaluation routes:
//!
//! * closed form: analytic eigenvalue expressions plugged into Shannon
//!   entropies (`ce2`, `cp2`, `ce_lim`, ...);
//! * pipeline: explicit density matrices pushed through the Kraus channel and
//!   diagonalized (`*_pipeline`). This route is independent of the analytic
//!   spectra and serves as their oracle.
//!
//! The two routes coincide for the output spectrum everywhere, and for the
//! environment spectra when `mu` is 0 or 1 or when no entanglement is shared.
//! For `0 < mu < 1` the closed-form environment spectra omit the coherence
//! between the uncorrelated and correlated branches, so closed-form `ce2` and
//! `ce_lim` exceed their pipeline values there.

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::channels::{check_range, memory_channel, ChannelParams};
use crate::entropy::{
    entropy_exchange, quantum_mutual_information, shannon_entropy_bits, von_neumann_entropy,
    ProbabilityVector,
};
use crate::error::Result;
use crate::matcore::{partial_trace_second, tensor, ComplexMatrix, DensityMatrix, C64};

/// Angles of the partially entangled pairs shared before transmission.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementAnsatz {
    theta1: f64,
    theta2: f64,
}

impl EntanglementAnsatz {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        Ok(Self {
            theta1: check_range("theta1", theta1, 0.0, FRAC_PI_4)?,
            theta2: check_range("theta2", theta2, 0.0, FRAC_PI_4)?,
        })
    }

    /// Two maximally entangled pairs.
    pub fn maximal() -> Self {
        Self {
            theta1: FRAC_PI_4,
            theta2: FRAC_PI_4,
        }
    }

    /// No shared entanglement.
    pub fn product() -> Self {
        Self {
            theta1: 0.0,
            theta2: 0.0,
        }
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }
}

fn pv(values: Vec<f64>) -> ProbabilityVector {
    // Closed forms are sums of products of non-negative terms, except for
    // rounding at the boundary of the domain.
    ProbabilityVector::new(values.into_iter().map(|x| x.max(0.0)).collect())
        .expect("closed-form spectra are non-negative")
}

fn cos2_sin2(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    (c * c, s * s)
}

/// Eigenvalues of the channel output for the maximally mixed input.
pub fn output_spectrum_closed(params: ChannelParams) -> ProbabilityVector {
    let (c2, _) = cos2_sin2(params.chi());
    let mu = params.mu();
    let w1 = 0.25 * ((1.0 - mu) * c2 * c2 + mu * c2);
    let w2 = 0.25 * ((1.0 - mu) * c2 * (2.0 - c2) + mu);
    let w4 = -0.25 * (2.0 - c2) * ((1.0 - mu) * c2 + mu - 2.0);
    pv(vec![w1, w2, w2, w4])
}

/// Analytic environment eigenvalues for the maximally mixed input.
pub fn environment_spectrum_closed(params: ChannelParams) -> ProbabilityVector {
    let (_, s2) = cos2_sin2(params.chi());
    let mu = params.mu();
    let e1 = 0.25 * ((1.0 - mu) * s2 * s2 + mu * s2);
    let e2 = 0.25 * (1.0 - mu) * (2.0 - s2) * s2;
    let e4 = 0.25 * ((1.0 - mu) * (2.0 - s2).powi(2) + mu * (4.0 - s2));
    pv(vec![e1, e2, e2, e4])
}

/// Entanglement-assisted classical capacity for two uses (bits).
pub fn ce2(params: ChannelParams) -> f64 {
    2.0 + shannon_entropy_bits(&output_spectrum_closed(params))
        - shannon_entropy_bits(&environment_spectrum_closed(params))
}

/// Entanglement-assisted quantum capacity for two uses (qubits).
pub fn qe2(params: ChannelParams) -> f64 {
    ce2(params) / 2.0
}

/// Eigenvalues shared by the four ansatz input states.
pub fn input_spectrum_closed(ansatz: EntanglementAnsatz) -> ProbabilityVector {
    let (c1, s1) = cos2_sin2(ansatz.theta1);
    let (c2, s2) = cos2_sin2(ansatz.theta2);
    pv(vec![c1 * c2, c1 * s2, s1 * c2, s1 * s2])
}

/// `cos t |a> + sin t |b>` or `sin t |a> - cos t |b>` on two qubits; `j` in
/// 1..=4 picks one of the four orthogonal ansatz states.
fn ansatz_vector(theta: f64, j: usize) -> [C64; 4] {
    let (s, c) = theta.sin_cos();
    let z = C64::new(0.0, 0.0);
    let r = |x: f64| C64::new(x, 0.0);
    match j {
        1 => [r(c), z, z, r(s)],
        2 => [r(s), z, z, r(-c)],
        3 => [z, r(c), r(s), z],
        4 => [z, r(s), r(-c), z],
        _ => unreachable!("ansatz index {j}"),
    }
}

/// Sender-side reduced state of shared pair `j` with angle `theta`.
fn sender_marginal(theta: f64, j: usize) -> ComplexMatrix {
    let pair = ComplexMatrix::outer(&ansatz_vector(theta, j));
    partial_trace_second(&pair, 2, 2).expect("two-qubit pair")
}

/// Channel input for pair indices `(j, k)` of the two shared ensembles.
pub fn ansatz_pair_state(ansatz: EntanglementAnsatz, j: usize, k: usize) -> Result<DensityMatrix> {
    DensityMatrix::new(tensor(
        &sender_marginal(ansatz.theta1, j),
        &sender_marginal(ansatz.theta2, k),
    ))
}

/// The four distinct channel inputs, built by tracing the receiver's halves
/// out of the shared pairs `(j, k) = (1,1), (1,2), (2,1), (2,2)`. Pairs 3 and
/// 4 have the same marginals as 1 and 2, so the full 16-pair ensemble is these
/// four states with multiplicity four each.
pub fn ansatz_states(ansatz: EntanglementAnsatz) -> Result<[DensityMatrix; 4]> {
    Ok([
        ansatz_pair_state(ansatz, 1, 1)?,
        ansatz_pair_state(ansatz, 1, 2)?,
        ansatz_pair_state(ansatz, 2, 1)?,
        ansatz_pair_state(ansatz, 2, 2)?,
    ])
}

/// Analytic environment eigenvalues for each ansatz input, grouped per state.
pub fn limited_exchange_spectra_closed(
    params: ChannelParams,
    ansatz: EntanglementAnsatz,
) -> [ProbabilityVector; 4] {
    let (cc, ss) = cos2_sin2(params.chi());
    let mu = params.mu();
    let nu = 1.0 - mu;
    let (c1, s1) = cos2_sin2(ansatz.theta1);
    let (c2, s2) = cos2_sin2(ansatz.theta2);
    // Survival weights of one qubit prepared with excited population cos^2 or sin^2.
    let a1 = c1 * cc + s1;
    let a2 = c2 * cc + s2;
    let b1 = c1 + cc * s1;
    let b2 = c2 + cc * s2;
    let tail = ss * (nu * ss + mu);
    [
        pv(vec![
            nu * a1 * a2 + mu * (s1 + c1 * a2),
            nu * c2 * a1 * ss,
            nu * c1 * a2 * ss,
            c1 * c2 * tail,
        ]),
        pv(vec![
            nu * a1 * b2 + mu * (s1 + c1 * b2),
            nu * s2 * a1 * ss,
            nu * c1 * b2 * ss,
            c1 * s2 * tail,
        ]),
        pv(vec![
            nu * b1 * a2 + mu * (c1 + s1 * a2),
            nu * c2 * b1 * ss,
            nu * s1 * a2 * ss,
            c2 * s1 * tail,
        ]),
        pv(vec![
            nu * b1 * b2 + mu * (c1 + s1 * b2),
            nu * s2 * b1 * ss,
            nu * s1 * b2 * ss,
            s1 * s2 * tail,
        ]),
    ]
}

/// Environment eigenvalues for the four computational basis inputs.
pub fn product_exchange_spectra_closed(params: ChannelParams) -> [ProbabilityVector; 4] {
    let (cc, ss) = cos2_sin2(params.chi());
    let mu = params.mu();
    let nu = 1.0 - mu;
    [
        pv(vec![
            nu * cc * cc + mu * cc,
            nu * cc * ss,
            nu * cc * ss,
            nu * ss * ss + mu * ss,
        ]),
        pv(vec![nu * cc + mu, 0.0, nu * ss, 0.0]),
        pv(vec![nu * cc + mu, nu * ss, 0.0, 0.0]),
        pv(vec![1.0, 0.0, 0.0, 0.0]),
    ]
}

fn mean_entropy(blocks: &[ProbabilityVector; 4]) -> f64 {
    blocks.iter().map(shannon_entropy_bits).sum::<f64>() / 4.0
}

/// Classical capacity with limited shared entanglement, equiprobable inputs
/// (bits per two uses).
pub fn ce_lim(params: ChannelParams, ansatz: EntanglementAnsatz) -> f64 {
    shannon_entropy_bits(&input_spectrum_closed(ansatz))
        + shannon_entropy_bits(&output_spectrum_closed(params))
        - mean_entropy(&limited_exchange_spectra_closed(params, ansatz))
}

/// Product-state classical capacity (bits per two uses).
pub fn cp2(params: ChannelParams) -> f64 {
    shannon_entropy_bits(&output_spectrum_closed(params))
        - mean_entropy(&product_exchange_spectra_closed(params))
}

pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy_bits(&pv(vec![p, 1.0 - p]))
}

/// Entanglement carried by one ansatz state, in bits (0 to 2).
pub fn entanglement_consumed(ansatz: EntanglementAnsatz) -> f64 {
    binary_entropy(ansatz.theta1.cos().powi(2)) + binary_entropy(ansatz.theta2.cos().powi(2))
}

/// Sorted eigenvalues of the channel output on `I/4`.
pub fn output_spectrum_pipeline(params: ChannelParams) -> Result<Vec<f64>> {
    memory_channel(params)?
        .apply(&DensityMatrix::maximally_mixed(4))?
        .spectrum()
}

/// Sorted spectrum of the 6x6 exchange matrix on `I/4`.
pub fn environment_spectrum_pipeline(params: ChannelParams) -> Result<Vec<f64>> {
    let (_, spectrum) =
        entropy_exchange(&memory_channel(params)?, &DensityMatrix::maximally_mixed(4))?;
    Ok(spectrum.sorted())
}

/// Mutual information of the maximally mixed input evaluated on explicit
/// matrices.
pub fn ce2_pipeline(params: ChannelParams) -> Result<f64> {
    quantum_mutual_information(&memory_channel(params)?, &DensityMatrix::maximally_mixed(4))
}

/// `sum p_i S(rho_i) + S(N(sum p_i rho_i)) - sum p_i S_e(rho_i)` over the four
/// explicit ansatz states with `p_i = 1/4`.
pub fn ce_lim_pipeline(params: ChannelParams, ansatz: EntanglementAnsatz) -> Result<f64> {
    let ch = memory_channel(params)?;
    let states = ansatz_states(ansatz)?;
    let mut mixture = ComplexMatrix::zeros(4);
    let mut input_entropy = 0.0;
    let mut exchange = 0.0;
    for rho in &states {
        mixture = &mixture + &rho.matrix().scale_real(0.25);
        input_entropy += 0.25 * von_neumann_entropy(rho)?;
        exchange += 0.25 * entropy_exchange(&ch, rho)?.0;
    }
    let output = ch.apply(&DensityMatrix::new(mixture)?)?;
    Ok(input_entropy + von_neumann_entropy(&output)? - exchange)
}

pub fn cp2_pipeline(params: ChannelParams) -> Result<f64> {
    ce_lim_pipeline(params, EntanglementAnsatz::product())
}

/// Pipeline values attached to a report when verification is requested.
#[derive(Debug, Clone, Serialize)]
pub struct PipelineCheck {
    pub ce2: f64,
    pub cp2: f64,
    pub omega: Vec<f64>,
    pub environment: Vec<f64>,
    /// max |closed - pipeline| over the sorted output spectrum.
    pub omega_deviation: f64,
    /// max |closed - pipeline| over the environment spectrum, after padding
    /// the closed form with zeros to six entries.
    pub environment_deviation: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityReport {
    pub params: ChannelParams,
    /// Bits per two uses.
    pub ce2: f64,
    /// Qubits per two uses.
    pub qe2: f64,
    /// Bits per two uses.
    pub cp2: f64,
    pub omega: ProbabilityVector,
    pub omega_tilde: ProbabilityVector,
    pub ce_per_use: f64,
    pub qe_per_use: f64,
    pub cp_per_use: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<PipelineCheck>,
}

impl CapacityReport {
    pub fn compute(params: ChannelParams, verify: bool) -> Result<Self> {
        let (ce2, cp2) = (ce2(params), cp2(params));
        let qe2 = ce2 / 2.0;
        let omega = output_spectrum_closed(params);
        let omega_tilde = environment_spectrum_closed(params);
        let pipeline = if verify {
            let om = output_spectrum_pipeline(params)?;
            let env = environment_spectrum_pipeline(params)?;
            let mut closed_env = omega_tilde.sorted();
            closed_env.splice(0..0, std::iter::repeat_n(0.0, env.len() - closed_env.len()));
            Some(PipelineCheck {
                ce2: ce2_pipeline(params)?,
                cp2: cp2_pipeline(params)?,
                omega_deviation: max_deviation(&om, &omega.sorted()),
                environment_deviation: max_deviation(&env, &closed_env),
                omega: om,
                environment: env,
            })
        } else {
            None
        };
        Ok(Self {
            params,
            ce2,
            qe2,
            cp2,
            omega,
            omega_tilde,
            ce_per_use: ce2 / 2.0,
            qe_per_use: qe2 / 2.0,
            cp_per_use: cp2 / 2.0,
            pipeline,
        })
    }
}

pub(crate) fn max_deviation(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
