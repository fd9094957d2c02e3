//! Self-consistency checks over a parameter grid.
//!
//! Every check compares two independent computations, or tests an invariant,
//! and records the largest violation against a fixed tolerance.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::capacities::{
    ce2, ce_lim, cp2, cp2_pipeline, environment_spectrum_closed, environment_spectrum_pipeline,
    input_spectrum_closed, limited_exchange_spectra_closed, max_deviation, output_spectrum_closed,
    output_spectrum_pipeline, product_exchange_spectra_closed, EntanglementAnsatz,
};
use crate::channels::{memory_channel, ChannelParams};
use crate::error::Result;
use crate::lindblad::{damping_basis, evolve, LindbladParams};
use crate::matcore::ComplexMatrix;
use crate::optimize::{dominance_check, random_density_matrix_from, tradeoff_curve, TradeoffQuery};
use crate::sweep::{grid_point, with_jobs};

pub const SPECTRAL_TOL: f64 = 1e-10;
pub const NORMALIZATION_TOL: f64 = 1e-12;
pub const COMPLETENESS_TOL: f64 = 1e-12;
pub const MONOTONE_TOL: f64 = 1e-12;
pub const LINDBLAD_TOL: f64 = 1e-9;
pub const RECONSTRUCTION_TOL: f64 = 1e-8;
pub const DUALITY_TOL: f64 = 1e-9;
/// Smallest memory at which `ce2` must be strictly positive.
pub const POSITIVITY_MIN_MU: f64 = 0.05;
pub const TRADEOFF_TOL: f64 = 1e-8;
pub const DOMINANCE_TOL: f64 = 1e-9;
/// Relative size of the hidden perturbation applied to the first output
/// eigenvalue when [`VerifyConfig::perturb_omega`] is set.
pub const PERTURBATION: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Points per axis of the `(chi, mu)` grid.
    pub grid: usize,
    pub seed: u64,
    /// Random inputs per dominance point.
    pub samples: usize,
    pub perturb_omega: bool,
    pub jobs: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: 21,
            seed: 42,
            samples: 10_000,
            perturb_omega: false,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    /// Largest violation found, in the units of the check.
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, deviation: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name,
            passed: deviation <= tolerance,
            deviation,
            tolerance,
            detail,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<26} max_dev={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.deviation,
            self.tolerance
        )?;
        if !self.detail.is_empty() {
            write!(f, "  {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} checks passed", self.checks.len())
    }
}

/// The nine `(chi, mu)` points sampled by the dominance check.
pub fn dominance_points() -> Vec<ChannelParams> {
    let mut out = Vec::new();
    for chi in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2] {
        for mu in [0.0, 0.5, 1.0] {
            out.push(ChannelParams::new(chi, mu).expect("grid point in range"));
        }
    }
    out
}

struct Worst {
    value: f64,
    at: Option<ChannelParams>,
}

impl Worst {
    fn new() -> Self {
        Self {
            value: 0.0,
            at: None,
        }
    }

    fn merge(self, other: Self) -> Self {
        if other.value > self.value {
            other
        } else {
            self
        }
    }

    fn describe(&self) -> String {
        match self.at {
            Some(p) => format!("at chi={:.6} mu={:.6}", p.chi(), p.mu()),
            None => String::new(),
        }
    }
}

fn grid(n: usize) -> Vec<ChannelParams> {
    let n = n.max(2);
    (0..n * n)
        .map(|k| {
            ChannelParams::new(grid_point(k / n, n, FRAC_PI_2), grid_point(k % n, n, 1.0))
                .expect("grid point in range")
        })
        .collect()
}

fn worst_over<F>(points: &[ChannelParams], f: F) -> Result<Worst>
where
    F: Fn(ChannelParams) -> Result<f64> + Sync,
{
    points
        .par_iter()
        .map(|&p| f(p).map(|value| Worst { value, at: Some(p) }))
        .try_reduce(Worst::new, |a, b| Ok(a.merge(b)))
}

fn grid_check<F>(name: &'static str, points: &[ChannelParams], tol: f64, f: F) -> Result<Check>
where
    F: Fn(ChannelParams) -> Result<f64> + Sync,
{
    let w = worst_over(points, f)?;
    Ok(Check::new(name, w.value, tol, w.describe()))
}

fn padded(closed: Vec<f64>, len: usize) -> Vec<f64> {
    let mut v = vec![0.0; len.saturating_sub(closed.len())];
    v.extend(closed);
    v
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

fn sample_ansatze(n: usize) -> Vec<EntanglementAnsatz> {
    let n = n.max(2);
    let step = std::f64::consts::FRAC_PI_4 / (n - 1) as f64;
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| EntanglementAnsatz::new(i as f64 * step, j as f64 * step).expect("in range"))
        .collect()
}

fn largest_decrease(values: &[f64]) -> f64 {
    values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max)
}

pub fn run_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    with_jobs(config.jobs, || run_checks(config))?
}

fn run_checks(config: &VerifyConfig) -> Result<VerifyReport> {
    let points = grid(config.grid);
    let ansatze = sample_ansatze(5);
    let mut checks = Vec::new();

    checks.push(grid_check(
        "completeness",
        &points,
        COMPLETENESS_TOL,
        |p| Ok(memory_channel(p)?.completeness_deviation()),
    )?);

    let perturb = config.perturb_omega;
    checks.push(grid_check("output_spectrum", &points, SPECTRAL_TOL, |p| {
        let mut closed = output_spectrum_closed(p).values().to_vec();
        if perturb {
            closed[0] *= 1.0 + PERTURBATION;
        }
        Ok(max_deviation(
            &sorted(closed),
            &output_spectrum_pipeline(p)?,
        ))
    })?);

    checks.push(grid_check(
        "environment_spectrum",
        &points,
        SPECTRAL_TOL,
        |p| {
            let oracle = environment_spectrum_pipeline(p)?;
            let closed = padded(environment_spectrum_closed(p).sorted(), oracle.len());
            Ok(max_deviation(&closed, &oracle))
        },
    )?);

    checks.push(grid_check(
        "normalization",
        &points,
        NORMALIZATION_TOL,
        |p| {
            let mut worst = (output_spectrum_closed(p).sum() - 1.0)
                .abs()
                .max((environment_spectrum_closed(p).sum() - 1.0).abs());
            for block in product_exchange_spectra_closed(p) {
                worst = worst.max((block.sum() - 1.0).abs());
            }
            for &a in &ansatze {
                worst = worst.max((input_spectrum_closed(a).sum() - 1.0).abs());
                for block in limited_exchange_spectra_closed(p, a) {
                    worst = worst.max((block.sum() - 1.0).abs());
                }
            }
            Ok(worst)
        },
    )?);

    checks.push(grid_check(
        "product_capacity_routes",
        &points,
        SPECTRAL_TOL,
        |p| Ok((cp2(p) - cp2_pipeline(p)?).abs()),
    )?);

    checks.push(grid_check(
        "reduction_identities",
        &points,
        SPECTRAL_TOL,
        |p| {
            let full = (ce_lim(p, EntanglementAnsatz::maximal()) - ce2(p)).abs();
            let none = (ce_lim(p, EntanglementAnsatz::product()) - cp2(p)).abs();
            Ok(full.max(none))
        },
    )?);

    checks.push(monotonicity(config.grid));
    checks.push(entanglement_monotonicity(&points, config.grid));
    checks.push(positivity(config.grid));

    checks.push(grid_check("assistance_gain", &points, MONOTONE_TOL, |p| {
        Ok((cp2(p) - ce2(p)).max(0.0))
    })?);

    checks.push(lindblad_correspondence(config.seed)?);
    checks.extend(damping_checks(config.seed)?);
    checks.push(tradeoff_consistency()?);
    checks.push(dominance(config)?);

    Ok(VerifyReport { checks })
}

fn monotonicity(n: usize) -> Check {
    let n = n.max(2);
    let mut worst = Worst::new();
    for i in 0..n {
        let chi = grid_point(i, n, FRAC_PI_2);
        let row: Vec<ChannelParams> = (0..n)
            .map(|j| ChannelParams::new(chi, grid_point(j, n, 1.0)).expect("in range"))
            .collect();
        for f in [ce2 as fn(ChannelParams) -> f64, cp2] {
            let values: Vec<f64> = row.iter().map(|&p| f(p)).collect();
            worst = worst.merge(Worst {
                value: largest_decrease(&values),
                at: Some(row[0]),
            });
        }
    }
    Check::new(
        "memory_monotonicity",
        worst.value,
        MONOTONE_TOL,
        worst.describe(),
    )
}

/// `ce_lim` along each angle with the other held fixed, at a subsample of
/// the grid.
fn entanglement_monotonicity(points: &[ChannelParams], n: usize) -> Check {
    let steps = n.max(2);
    let angle = |k: usize| k as f64 / (steps - 1) as f64 * std::f64::consts::FRAC_PI_4;
    let stride = (points.len() / 25).max(1);
    let mut worst = Worst::new();
    for &p in points.iter().step_by(stride) {
        for fixed in 0..steps {
            let along_first: Vec<f64> = (0..steps)
                .map(|k| {
                    ce_lim(
                        p,
                        EntanglementAnsatz::new(angle(k), angle(fixed)).expect("in range"),
                    )
                })
                .collect();
            let along_second: Vec<f64> = (0..steps)
                .map(|k| {
                    ce_lim(
                        p,
                        EntanglementAnsatz::new(angle(fixed), angle(k)).expect("in range"),
                    )
                })
                .collect();
            let value = largest_decrease(&along_first).max(largest_decrease(&along_second));
            worst = worst.merge(Worst { value, at: Some(p) });
        }
    }
    Check::new(
        "entanglement_monotonicity",
        worst.value,
        MONOTONE_TOL,
        worst.describe(),
    )
}

/// `ce2 > 0` for every grid point with `mu >= 0.05`, reported as the
/// smallest value found.
fn positivity(n: usize) -> Check {
    let n = n.max(2);
    let mut min = f64::INFINITY;
    let mut at = None;
    for i in 0..n {
        for j in 0..n {
            let mu = grid_point(j, n, 1.0);
            if mu < POSITIVITY_MIN_MU {
                continue;
            }
            let p = ChannelParams::new(grid_point(i, n, FRAC_PI_2), mu).expect("in range");
            let v = ce2(p);
            if v < min {
                min = v;
                at = Some(p);
            }
        }
    }
    let worst = Worst { value: min, at };
    Check {
        name: "positivity",
        passed: min > 0.0,
        deviation: if min > 0.0 { 0.0 } else { -min },
        tolerance: 0.0,
        detail: format!("min ce2 {min:.6e} {}", worst.describe()),
    }
}

fn lindblad_correspondence(seed: u64) -> Result<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for (alpha, t) in [0.5, 2.0]
        .into_iter()
        .flat_map(|a| [0.1, 0.5, 1.0, 2.0, 5.0].map(|s| (a, s / a)))
    {
        let params = LindbladParams::new(alpha, t)?;
        let kraus = params.kraus_equivalent()?;
        for _ in 0..50 {
            let rho = random_density_matrix_from(4, &mut rng)?;
            let a = evolve(params, &rho)?;
            let b = kraus.apply(&rho)?;
            worst = worst.max(a.matrix().max_abs_diff(b.matrix()));
        }
    }
    Ok(Check::new(
        "lindblad_correspondence",
        worst,
        LINDBLAD_TOL,
        "alpha in {0.5, 2}, alpha t in {0.1, 0.5, 1, 2, 5}, 50 states each".into(),
    ))
}

fn damping_checks(seed: u64) -> Result<[Check; 2]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (mut duality, mut reconstruction): (f64, f64) = (0.0, 0.0);
    for alpha in [0.5, 1.0, 3.0] {
        let basis = damping_basis(alpha)?;
        let eye = ComplexMatrix::identity(basis.right.len());
        duality = duality.max(basis.duality_matrix().max_abs_diff(&eye));
        for t in [0.0, 0.7, 2.0] {
            let rho = random_density_matrix_from(4, &mut rng)?;
            let direct = evolve(LindbladParams::new(alpha, t)?, &rho)?;
            reconstruction = reconstruction.max(
                basis
                    .reconstruct(rho.matrix(), t)
                    .max_abs_diff(direct.matrix()),
            );
        }
    }
    Ok([
        Check::new("damping_duality", duality, DUALITY_TOL, String::new()),
        Check::new(
            "damping_reconstruction",
            reconstruction,
            RECONSTRUCTION_TOL,
            String::new(),
        ),
    ])
}

fn tradeoff_consistency() -> Result<Check> {
    let mut worst: f64 = 0.0;
    for (chi, mu) in [(FRAC_PI_6, 0.0), (FRAC_PI_3, 0.5), (FRAC_PI_3, 1.0)] {
        let params = ChannelParams::new(chi, mu)?;
        let curve = tradeoff_curve(&TradeoffQuery::uniform(params, 11, 64)?);
        let caps: Vec<f64> = curve.iter().map(|p| p.capacity).collect();
        worst = worst.max(largest_decrease(&caps));
        let first = curve.first().expect("non-empty curve");
        let last = curve.last().expect("non-empty curve");
        worst = worst.max((first.capacity - cp2(params)).abs());
        worst = worst.max((last.capacity - ce2(params)).abs());
    }
    Ok(Check::new(
        "tradeoff_endpoints",
        worst,
        TRADEOFF_TOL,
        String::new(),
    ))
}

fn dominance(config: &VerifyConfig) -> Result<Check> {
    let results = dominance_points()
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| dominance_check(p, config.samples, config.seed, i as u64))
        .collect::<Result<Vec<_>>>()?;
    let worst = results
        .iter()
        .max_by(|a, b| a.excess.total_cmp(&b.excess))
        .expect("nine points");
    let beaten = results.iter().filter(|r| r.excess > DOMINANCE_TOL).count();
    Ok(Check::new(
        "dominance",
        worst.excess.max(0.0),
        DOMINANCE_TOL,
        format!(
            "{beaten}/{} points beaten, worst at chi={:.6} mu={:.6}",
            results.len(),
            worst.params.chi(),
            worst.params.mu()
        ),
    ))
}
