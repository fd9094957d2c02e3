//! Entanglement trade-off maximization and randomized input sampling.

use std::f64::consts::FRAC_PI_4;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::capacities::{binary_entropy, ce_lim, entanglement_consumed, EntanglementAnsatz};
use crate::channels::{memory_channel, ChannelParams};
use crate::entropy::quantum_mutual_information;
use crate::error::{Error, Result};
use crate::matcore::{matrix_exp, ComplexMatrix, DensityMatrix, C64};

/// Minimum coarse-grid resolution per angle.
pub const MIN_RESOLUTION: usize = 64;
/// Golden-section stopping width, radians.
pub const GOLDEN_TOL: f64 = 1e-6;
/// Slack on the entanglement budget when filtering grid points.
pub const BUDGET_SLACK: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct TradeoffQuery {
    pub params: ChannelParams,
    /// Entanglement budgets in bits, each in `[0, 2]`, non-decreasing.
    pub budgets: Vec<f64>,
    pub resolution: usize,
}

impl TradeoffQuery {
    pub fn new(params: ChannelParams, budgets: Vec<f64>, resolution: usize) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::Config(format!(
                "grid resolution {resolution} below minimum {MIN_RESOLUTION}"
            )));
        }
        for &p in &budgets {
            if !(0.0..=2.0).contains(&p) {
                return Err(Error::OutOfRange {
                    name: "budget",
                    value: p,
                    min: 0.0,
                    max: 2.0,
                });
            }
        }
        if budgets.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Config("budgets must be non-decreasing".into()));
        }
        Ok(Self {
            params,
            budgets,
            resolution,
        })
    }

    /// `points` budgets evenly spaced over `[0, 2]`.
    pub fn uniform(params: ChannelParams, points: usize, resolution: usize) -> Result<Self> {
        let budgets = match points {
            0 => Vec::new(),
            1 => vec![0.0],
            n => (0..n).map(|i| 2.0 * i as f64 / (n - 1) as f64).collect(),
        };
        Self::new(params, budgets, resolution)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffPoint {
    pub budget: f64,
    pub theta1: f64,
    pub theta2: f64,
    /// Bits per two uses.
    pub capacity: f64,
    /// Entanglement actually used by the chosen angles.
    pub entanglement: f64,
}

/// Maximizes `f` on `[a, b]`. The bracket endpoints are also evaluated, so a
/// monotone `f` returns an endpoint exactly.
pub fn golden_section_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (lo + hi);
    [(a, f(a)), (b, f(b)), (mid, f(mid))].into_iter().fold(
        (mid, f64::NEG_INFINITY),
        |best, cand| if cand.1 > best.1 { cand } else { best },
    )
}

/// Largest angle in `[0, pi/4]` whose pair entanglement `h2(cos^2 theta)`
/// stays within `budget` bits.
pub fn max_angle_for_budget(budget: f64) -> f64 {
    if budget >= 1.0 {
        return FRAC_PI_4;
    }
    if budget <= 0.0 {
        return 0.0;
    }
    let h = |t: f64| binary_entropy(t.cos().powi(2));
    let (mut lo, mut hi) = (0.0, FRAC_PI_4);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) <= budget {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    lo
}

fn ansatz(t1: f64, t2: f64) -> EntanglementAnsatz {
    EntanglementAnsatz::new(t1.clamp(0.0, FRAC_PI_4), t2.clamp(0.0, FRAC_PI_4))
        .expect("clamped angles are in range")
}

fn evaluate(params: ChannelParams, budget: f64, t1: f64, t2: f64) -> TradeoffPoint {
    let a = ansatz(t1, t2);
    TradeoffPoint {
        budget,
        theta1: a.theta1(),
        theta2: a.theta2(),
        capacity: ce_lim(params, a),
        entanglement: entanglement_consumed(a),
    }
}

fn best_for_budget(params: ChannelParams, budget: f64, resolution: usize) -> TradeoffPoint {
    let step = FRAC_PI_4 / (resolution - 1) as f64;
    let mut best = evaluate(params, budget, 0.0, 0.0);
    for i in 0..resolution {
        for j in 0..resolution {
            let (t1, t2) = (step * i as f64, step * j as f64);
            let a = ansatz(t1, t2);
            if entanglement_consumed(a) > budget + BUDGET_SLACK {
                continue;
            }
            let cap = ce_lim(params, a);
            if cap > best.capacity {
                best = evaluate(params, budget, t1, t2);
            }
        }
    }
    if best.entanglement >= budget - BUDGET_SLACK {
        return best;
    }

    // Golden section along the budget boundary, parametrized by theta1, near
    // the grid winner.
    let h = |t: f64| binary_entropy(t.cos().powi(2));
    let partner = |t1: f64| max_angle_for_budget(budget - h(t1));
    let t1_max = max_angle_for_budget(budget);
    let lo = (best.theta1 - 2.0 * step).max(0.0);
    let hi = (best.theta1 + 2.0 * step).min(t1_max);
    if hi > lo {
        let objective = |t1: f64| ce_lim(params, ansatz(t1, partner(t1)));
        let (t1, _) = golden_section_max(objective, lo, hi, GOLDEN_TOL);
        let refined = evaluate(params, budget, t1, partner(t1));
        if refined.capacity > best.capacity && refined.entanglement <= budget + BUDGET_SLACK {
            best = refined;
        }
    }
    best
}

/// Maximal limited-entanglement capacity for each budget of the query.
pub fn tradeoff_curve(query: &TradeoffQuery) -> Vec<TradeoffPoint> {
    let mut out: Vec<TradeoffPoint> = Vec::with_capacity(query.budgets.len());
    for &budget in &query.budgets {
        let mut point = best_for_budget(query.params, budget, query.resolution);
        if let Some(prev) = out.last() {
            if prev.capacity > point.capacity {
                point = TradeoffPoint { budget, ..*prev };
            }
        }
        out.push(point);
    }
    out
}

/// Mutual information of an arbitrary two-qubit input through the memory
/// channel, evaluated on explicit matrices.
pub fn mutual_information(params: ChannelParams, rho: &DensityMatrix) -> Result<f64> {
    quantum_mutual_information(&memory_channel(params)?, rho)
}

fn gaussian_matrix<R: Rng>(dim: usize, rng: &mut R) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

/// `G G^dagger / Tr(G G^dagger)` with Gaussian `G` drawn from `rng`.
pub fn random_density_matrix_from<R: Rng>(dim: usize, rng: &mut R) -> Result<DensityMatrix> {
    if dim < 2 {
        return Err(Error::Config(format!("random state dimension {dim} < 2")));
    }
    let g = gaussian_matrix(dim, rng);
    let gram = g.matmul(&g.adjoint());
    let tr = gram.trace().re;
    DensityMatrix::new(gram.scale_real(1.0 / tr))
}

pub fn random_density_matrix(dim: usize, seed: u64) -> Result<DensityMatrix> {
    random_density_matrix_from(dim, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `exp(i H)` for a random Hermitian `H`.
pub fn random_unitary(dim: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = gaussian_matrix(dim, &mut rng).hermitian_part();
    matrix_exp(&h.scale(C64::new(0.0, 1.0)), 1.0)
}

/// Outcome of sampling random inputs against the maximally mixed one.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DominanceResult {
    pub params: ChannelParams,
    pub samples: usize,
    /// Mutual information of `I/4`.
    pub baseline: f64,
    pub best_sample: f64,
    /// `best_sample - baseline`; positive means some sample beat `I/4`.
    pub excess: f64,
}

/// Samples `samples` Hilbert-Schmidt random inputs from stream `stream` of
/// `seed` and records the largest mutual information found. This gathers
/// evidence only; it cannot prove `I/4` optimal.
pub fn dominance_check(
    params: ChannelParams,
    samples: usize,
    seed: u64,
    stream: u64,
) -> Result<DominanceResult> {
    let ch = memory_channel(params)?;
    let baseline = quantum_mutual_information(&ch, &DensityMatrix::maximally_mixed(4))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut best = f64::NEG_INFINITY;
    for _ in 0..samples {
        let rho = random_density_matrix_from(4, &mut rng)?;
        best = best.max(quantum_mutual_information(&ch, &rho)?);
    }
    Ok(DominanceResult {
        params,
        samples,
        baseline,
        best_sample: best,
        excess: best - baseline,
    })
}
