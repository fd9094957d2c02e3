use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::process::ExitCode;

use rayon::prelude::*;

use memcap::capacities::{
    environment_spectrum_closed, environment_spectrum_pipeline, output_spectrum_closed,
    output_spectrum_pipeline,
};
use memcap::lindblad::{damping_basis, evolve, LindbladParams};
use memcap::optimize::{
    dominance_check, random_density_matrix_from, tradeoff_curve, TradeoffQuery,
};
use memcap::sweep::{grid_point, run_sweep, write_sweep, Quantity, SweepConfig};
use memcap::verify::{dominance_points, run_verify, VerifyConfig};
use memcap::{ce2, ce_lim, cp2, ChannelParams, ComplexMatrix, EntanglementAnsatz, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const GRID: usize = 21;
const SPECTRAL_TOL: f64 = 1e-10;
const ENDPOINT_TOL: f64 = 1e-7;
const REDUCTION_TOL: f64 = 1e-10;
const MONOTONE_TOL: f64 = 1e-12;
const LINDBLAD_TOL: f64 = 1e-9;
const RECONSTRUCTION_TOL: f64 = 1e-8;
const DUALITY_TOL: f64 = 1e-9;
const DOMINANCE_TOL: f64 = 1e-9;
const DOMINANCE_SAMPLES: usize = 10_000;
const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Result<Outcome> {
    Ok(Outcome { passed, detail })
}

fn grid() -> Vec<ChannelParams> {
    (0..GRID * GRID)
        .map(|k| {
            ChannelParams::new(
                grid_point(k / GRID, GRID, FRAC_PI_2),
                grid_point(k % GRID, GRID, 1.0),
            )
            .unwrap()
        })
        .collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn largest_decrease(values: &[f64]) -> f64 {
    values.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max)
}

fn spectral_agreement() -> Result<Outcome> {
    let devs = grid()
        .par_iter()
        .map(|&p| {
            let omega = max_diff(
                &output_spectrum_closed(p).sorted(),
                &output_spectrum_pipeline(p)?,
            );
            let oracle = environment_spectrum_pipeline(p)?;
            let mut closed = vec![0.0; oracle.len() - 4];
            closed.extend(environment_spectrum_closed(p).sorted());
            Ok((omega, max_diff(&closed, &oracle), p))
        })
        .collect::<Result<Vec<_>>>()?;
    let omega = devs.iter().map(|d| d.0).fold(0.0, f64::max);
    let worst = devs.iter().max_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
    let failing = devs.iter().filter(|d| d.1 > SPECTRAL_TOL).count();
    outcome(
        omega <= SPECTRAL_TOL && worst.1 <= SPECTRAL_TOL,
        format!(
            "omega max dev {omega:.2e}; omega-tilde max dev {:.2e} at chi={:.4} mu={:.2}, {failing}/{} points over tol",
            worst.1,
            worst.2.chi(),
            worst.2.mu(),
            devs.len()
        ),
    )
}

/// Per-use value of `f` along `chi = 0` and at the two `chi = pi/2` corners.
fn endpoints(f: fn(ChannelParams) -> f64, at_zero: f64, corners: [f64; 2]) -> Result<Outcome> {
    let mut edge: f64 = 0.0;
    for j in 0..GRID {
        edge =
            edge.max((f(ChannelParams::new(0.0, grid_point(j, GRID, 1.0))?) / 2.0 - at_zero).abs());
    }
    let got = [
        f(ChannelParams::new(FRAC_PI_2, 0.0)?) / 2.0,
        f(ChannelParams::new(FRAC_PI_2, 1.0)?) / 2.0,
    ];
    let worst = edge.max(max_diff(&got, &corners));
    outcome(
        worst <= ENDPOINT_TOL,
        format!(
            "chi=0: {at_zero} within {edge:.1e} for {GRID} mu; (pi/2,0)={:.7}; (pi/2,1)={:.7}; max dev {worst:.2e}",
            got[0], got[1]
        ),
    )
}

fn endpoint_capacities() -> Result<Outcome> {
    endpoints(ce2, 2.0, [0.0, 1.3443609])
}

fn product_endpoints() -> Result<Outcome> {
    endpoints(cp2, 1.0, [0.0, 0.75])
}

fn reduction_identities() -> Result<Outcome> {
    let (mut full, mut none): (f64, f64) = (0.0, 0.0);
    for p in grid() {
        full = full.max((ce_lim(p, EntanglementAnsatz::maximal()) - ce2(p)).abs());
        none = none.max((ce_lim(p, EntanglementAnsatz::product()) - cp2(p)).abs());
    }
    outcome(
        full <= REDUCTION_TOL && none <= REDUCTION_TOL,
        format!("max |ce_lim(pi/4) - ce2| {full:.2e}, max |ce_lim(0) - cp2| {none:.2e}"),
    )
}

fn monotonicity() -> Result<Outcome> {
    let mut memory: f64 = 0.0;
    for i in 0..GRID {
        let chi = grid_point(i, GRID, FRAC_PI_2);
        let row: Vec<ChannelParams> = (0..GRID)
            .map(|j| ChannelParams::new(chi, grid_point(j, GRID, 1.0)).unwrap())
            .collect();
        for f in [ce2 as fn(ChannelParams) -> f64, cp2] {
            memory = memory.max(largest_decrease(
                &row.iter().map(|&p| f(p)).collect::<Vec<_>>(),
            ));
        }
    }

    let steps = 11;
    let angle = |k: usize| k as f64 / (steps - 1) as f64 * FRAC_PI_4;
    let mut entanglement: f64 = 0.0;
    for p in grid() {
        for fixed in 0..steps {
            let first: Vec<f64> = (0..steps)
                .map(|k| ce_lim(p, EntanglementAnsatz::new(angle(k), angle(fixed)).unwrap()))
                .collect();
            let second: Vec<f64> = (0..steps)
                .map(|k| ce_lim(p, EntanglementAnsatz::new(angle(fixed), angle(k)).unwrap()))
                .collect();
            entanglement = entanglement
                .max(largest_decrease(&first))
                .max(largest_decrease(&second));
        }
    }

    let mut tradeoff: f64 = 0.0;
    for (chi, mu) in [
        (0.3, 0.0),
        (0.8, 0.25),
        (1.1, 0.5),
        (1.3, 0.9),
        (FRAC_PI_2, 1.0),
    ] {
        let curve = tradeoff_curve(&TradeoffQuery::uniform(
            ChannelParams::new(chi, mu)?,
            21,
            64,
        )?);
        let caps: Vec<f64> = curve.iter().map(|c| c.capacity).collect();
        tradeoff = tradeoff.max(largest_decrease(&caps));
    }

    let positive = grid()
        .into_iter()
        .filter(|p| p.mu() >= 0.05)
        .map(ce2)
        .fold(f64::INFINITY, f64::min);

    outcome(
        memory <= MONOTONE_TOL
            && entanglement <= MONOTONE_TOL
            && tradeoff <= MONOTONE_TOL
            && positive > 0.0,
        format!(
            "largest decrease: in mu {memory:.1e}, in theta {entanglement:.1e}, in P {tradeoff:.1e}; min ce2 at mu>=0.05 {positive:.4}"
        ),
    )
}

fn lindblad() -> Result<Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut kraus_dev: f64 = 0.0;
    for alpha in [0.5, 1.0, 2.0] {
        for scaled in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let params = LindbladParams::new(alpha, scaled / alpha)?;
            let kraus = params.kraus_equivalent()?;
            for _ in 0..50 {
                let rho = random_density_matrix_from(4, &mut rng)?;
                let a = evolve(params, &rho)?;
                let b = kraus.apply(&rho)?;
                kraus_dev = kraus_dev.max(a.matrix().max_abs_diff(b.matrix()));
            }
        }
    }
    let (mut recon, mut duality): (f64, f64) = (0.0, 0.0);
    for alpha in [0.5, 1.0, 2.0] {
        let basis = damping_basis(alpha)?;
        duality = duality.max(
            basis
                .duality_matrix()
                .max_abs_diff(&ComplexMatrix::identity(16)),
        );
        for scaled in [0.0, 0.1, 0.5, 1.0, 2.0, 5.0] {
            let t = scaled / alpha;
            let rho = random_density_matrix_from(4, &mut rng)?;
            let direct = evolve(LindbladParams::new(alpha, t)?, &rho)?;
            recon = recon.max(
                basis
                    .reconstruct(rho.matrix(), t)
                    .max_abs_diff(direct.matrix()),
            );
        }
    }
    outcome(
        kraus_dev <= LINDBLAD_TOL && recon <= RECONSTRUCTION_TOL && duality <= DUALITY_TOL,
        format!(
            "kraus vs exp(Lt) {kraus_dev:.2e}; basis expansion {recon:.2e}; duality {duality:.2e}"
        ),
    )
}

fn dominance() -> Result<Outcome> {
    let results = dominance_points()
        .into_par_iter()
        .enumerate()
        .map(|(i, p)| dominance_check(p, DOMINANCE_SAMPLES, SEED, i as u64))
        .collect::<Result<Vec<_>>>()?;
    let beaten: Vec<String> = results
        .iter()
        .filter(|r| r.excess > DOMINANCE_TOL)
        .map(|r| {
            format!(
                "(chi={:.4}, mu={}) by {:.4}",
                r.params.chi(),
                r.params.mu(),
                r.excess
            )
        })
        .collect();
    let worst = results
        .iter()
        .map(|r| r.excess)
        .fold(f64::NEG_INFINITY, f64::max);
    outcome(
        beaten.is_empty(),
        format!(
            "max excess over I/4 {worst:.3e}; beaten at {}/{}{}{}",
            beaten.len(),
            results.len(),
            if beaten.is_empty() { "" } else { ": " },
            beaten.join(", ")
        ),
    )
}

fn sweep_bytes(jobs: Option<usize>) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    for quantity in [Quantity::Ce2, Quantity::Cp2] {
        let config = SweepConfig {
            chi_points: GRID,
            mu_points: GRID,
            quantity,
            jobs,
            ..SweepConfig::default()
        };
        write_sweep(&mut out, &config, &run_sweep(&config)?, 12)?;
    }
    Ok(out)
}

fn verify_text(jobs: Option<usize>) -> Result<String> {
    Ok(run_verify(&VerifyConfig {
        jobs,
        ..VerifyConfig::default()
    })?
    .to_string())
}

fn determinism() -> Result<Outcome> {
    let sweeps = [
        sweep_bytes(Some(1))?,
        sweep_bytes(Some(4))?,
        sweep_bytes(None)?,
    ];
    let reports = [verify_text(Some(1))?, verify_text(Some(4))?];
    let sweep_same = sweeps.iter().all(|s| *s == sweeps[0]);
    let verify_same = reports[0] == reports[1];
    outcome(
        sweep_same && verify_same,
        format!(
            "sweep serial/parallel identical: {sweep_same}; verify serial/parallel identical: {verify_same}"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("closed-form vs oracle spectra", spectral_agreement),
        ("endpoint capacities per use", endpoint_capacities),
        ("product-state endpoints per use", product_endpoints),
        ("reduction identities", reduction_identities),
        ("monotonicity suite", monotonicity),
        ("lindblad correspondence", lindblad),
        ("dominance of I/4", dominance),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (passed, detail) = match run() {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {} {:<32} {}  {detail}",
            i + 1,
            name,
            if passed { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
