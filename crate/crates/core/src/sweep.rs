//! Parameter sweeps over `(chi, mu)` and their CSV / JSON serialization.

use std::f64::consts::FRAC_PI_2;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::capacities::{
    ce2, ce2_pipeline, ce_lim, ce_lim_pipeline, cp2, cp2_pipeline, qe2, EntanglementAnsatz,
};
use crate::channels::ChannelParams;
use crate::error::{Error, Result};
use crate::optimize::TradeoffPoint;

/// Environment variable overriding the number of significant digits written.
pub const PRECISION_ENV: &str = "MEMCAP_PRECISION";
pub const DEFAULT_PRECISION: usize = 12;
pub const DEFAULT_GRID: usize = 51;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Ce2,
    Qe2,
    Cp2,
    CeLim,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Ce2 => "ce2",
            Quantity::Qe2 => "qe2",
            Quantity::Cp2 => "cp2",
            Quantity::CeLim => "ce_lim",
        }
    }
}

/// Which evaluation route produces the values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Analytic spectra.
    Closed,
    /// Explicit density matrices through the Kraus channel.
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub chi_points: usize,
    pub mu_points: usize,
    pub quantity: Quantity,
    /// Required for [`Quantity::CeLim`], ignored otherwise.
    pub ansatz: Option<EntanglementAnsatz>,
    pub per_use: bool,
    pub route: Route,
    pub format: Format,
    /// Worker threads; `Some(1)` evaluates serially.
    pub jobs: Option<usize>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            chi_points: DEFAULT_GRID,
            mu_points: DEFAULT_GRID,
            quantity: Quantity::Ce2,
            ansatz: None,
            per_use: true,
            route: Route::Closed,
            format: Format::Csv,
            jobs: None,
        }
    }
}

impl SweepConfig {
    fn validate(&self) -> Result<()> {
        if self.chi_points < 2 || self.mu_points < 2 {
            return Err(Error::Config(
                "sweep grids need at least 2 points per axis".into(),
            ));
        }
        if self.quantity == Quantity::CeLim && self.ansatz.is_none() {
            return Err(Error::Config("ce_lim sweeps need theta1 and theta2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub chi: f64,
    pub mu: f64,
    pub value: f64,
}

/// `i`-th of `n` points spread evenly over `[0, max]`, endpoints exact.
pub fn grid_point(i: usize, n: usize, max: f64) -> f64 {
    if i + 1 == n {
        max
    } else {
        i as f64 / (n - 1) as f64 * max
    }
}

/// Two-use value of `quantity` at `params`.
pub fn evaluate(
    quantity: Quantity,
    route: Route,
    params: ChannelParams,
    ansatz: Option<EntanglementAnsatz>,
) -> Result<f64> {
    let need_ansatz = || ansatz.ok_or_else(|| Error::Config("ce_lim needs an ansatz".into()));
    Ok(match (route, quantity) {
        (Route::Closed, Quantity::Ce2) => ce2(params),
        (Route::Closed, Quantity::Qe2) => qe2(params),
        (Route::Closed, Quantity::Cp2) => cp2(params),
        (Route::Closed, Quantity::CeLim) => ce_lim(params, need_ansatz()?),
        (Route::Pipeline, Quantity::Ce2) => ce2_pipeline(params)?,
        (Route::Pipeline, Quantity::Qe2) => ce2_pipeline(params)? / 2.0,
        (Route::Pipeline, Quantity::Cp2) => cp2_pipeline(params)?,
        (Route::Pipeline, Quantity::CeLim) => ce_lim_pipeline(params, need_ansatz()?)?,
    })
}

/// Runs `f` on a dedicated pool of `jobs` threads, or on the global pool.
pub fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

/// Evaluates the grid in `(chi index, mu index)` order.
pub fn run_sweep(config: &SweepConfig) -> Result<Vec<SweepRow>> {
    config.validate()?;
    let (nc, nm) = (config.chi_points, config.mu_points);
    let scale = if config.per_use { 0.5 } else { 1.0 };
    with_jobs(config.jobs, || {
        (0..nc * nm)
            .into_par_iter()
            .map(|k| {
                let chi = grid_point(k / nm, nc, FRAC_PI_2);
                let mu = grid_point(k % nm, nm, 1.0);
                let params = ChannelParams::new(chi, mu)?;
                let value = evaluate(config.quantity, config.route, params, config.ansatz)?;
                Ok(SweepRow {
                    chi,
                    mu,
                    value: value * scale,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?
}

/// Significant digits for output, from [`PRECISION_ENV`] when set to 1..=17.
pub fn output_precision() -> Result<usize> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_PRECISION),
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(d) if (1..=17).contains(&d) => Ok(d),
            _ => Err(Error::Config(format!(
                "{PRECISION_ENV}={raw} is not in 1..=17"
            ))),
        },
    }
}

/// `%.{digits}g`-style formatting: `digits` significant digits, trailing
/// zeros removed, exponent notation outside `[1e-5, 10^digits)`.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = trim_zeros(mantissa);
        return format!("{m}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    trim_zeros(&format!("{:.*}", decimals, x)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Value as it reads back from its formatted text.
fn rounded(x: f64, digits: usize) -> f64 {
    format_sig(x, digits).parse().unwrap_or(x)
}

pub fn write_sweep<W: Write>(
    out: W,
    config: &SweepConfig,
    rows: &[SweepRow],
    digits: usize,
) -> Result<()> {
    match config.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["chi", "mu", "value"])?;
            for r in rows {
                w.write_record([
                    format_sig(r.chi, digits),
                    format_sig(r.mu, digits),
                    format_sig(r.value, digits),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let data: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "chi": rounded(r.chi, digits),
                        "mu": rounded(r.mu, digits),
                        "value": rounded(r.value, digits),
                    })
                })
                .collect();
            let doc = json!({
                "metadata": {
                    "quantity": config.quantity,
                    "per_use": config.per_use,
                    "route": config.route,
                    "chi_points": config.chi_points,
                    "mu_points": config.mu_points,
                    "ansatz": config.ansatz,
                    "significant_digits": digits,
                    "version": env!("CARGO_PKG_VERSION"),
                },
                "data": data,
            });
            write_json(out, &doc)?;
        }
    }
    Ok(())
}

/// Writes trade-off points with columns `P,theta1,theta2,capacity`.
pub fn write_tradeoff<W: Write>(
    out: W,
    format: Format,
    params: ChannelParams,
    points: &[TradeoffPoint],
    per_use: bool,
    digits: usize,
) -> Result<()> {
    let scale = if per_use { 0.5 } else { 1.0 };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["P", "theta1", "theta2", "capacity"])?;
            for p in points {
                w.write_record([
                    format_sig(p.budget, digits),
                    format_sig(p.theta1, digits),
                    format_sig(p.theta2, digits),
                    format_sig(p.capacity * scale, digits),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let data: Vec<_> = points
                .iter()
                .map(|p| {
                    json!({
                        "P": rounded(p.budget, digits),
                        "theta1": rounded(p.theta1, digits),
                        "theta2": rounded(p.theta2, digits),
                        "capacity": rounded(p.capacity * scale, digits),
                    })
                })
                .collect();
            let doc = json!({
                "metadata": {
                    "quantity": "ce_lim_tradeoff",
                    "params": params,
                    "per_use": per_use,
                    "significant_digits": digits,
                    "version": env!("CARGO_PKG_VERSION"),
                },
                "data": data,
            });
            write_json(out, &doc)?;
        }
    }
    Ok(())
}

pub fn write_json<W: Write, T: Serialize>(mut out: W, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}
