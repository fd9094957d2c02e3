// Builds the two-use memory channel and compares the analytic output and
// environment spectra with direct diagonalization.

use std::f64::consts::FRAC_PI_3;

use memcap::capacities::{
    environment_spectrum_closed, environment_spectrum_pipeline, output_spectrum_closed,
    output_spectrum_pipeline,
};
use memcap::entropy::exchange_matrix;
use memcap::{memory_channel, ChannelParams, DensityMatrix, Result};

pub fn run_example() -> Result<()> {
    for mu in [0.0, 0.5, 1.0] {
        let params = ChannelParams::new(FRAC_PI_3, mu)?;
        let channel = memory_channel(params)?;
        println!("chi = pi/3, mu = {mu}");
        println!("  kraus operators      {}", channel.operators().len());
        println!(
            "  completeness error   {:.2e}",
            channel.completeness_deviation()
        );

        let output = channel.apply(&DensityMatrix::maximally_mixed(4))?;
        println!("  output trace         {:.15}", output.matrix().trace().re);
        println!(
            "  omega  closed        {:?}",
            output_spectrum_closed(params).sorted()
        );
        println!(
            "  omega  pipeline      {:?}",
            output_spectrum_pipeline(params)?
        );

        let w = exchange_matrix(&channel, &DensityMatrix::maximally_mixed(4))?;
        println!("  exchange matrix      {}x{}", w.dim(), w.dim());
        println!(
            "  env    closed        {:?}",
            environment_spectrum_closed(params).sorted()
        );
        println!(
            "  env    pipeline      {:?}",
            environment_spectrum_pipeline(params)?
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
