// Classical capacity with partially entangled pairs: the closed form against
// explicit ensembles, and the entanglement each ansatz consumes.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use memcap::capacities::{ce_lim_pipeline, entanglement_consumed};
use memcap::{ce2, ce_lim, cp2, ChannelParams, EntanglementAnsatz, Result};

pub fn run_example() -> Result<()> {
    let angles = [0.0, FRAC_PI_8, FRAC_PI_4];
    for mu in [0.0, 0.5, 1.0] {
        let params = ChannelParams::new(1.0, mu)?;
        println!(
            "chi = 1, mu = {mu}: cp2 = {:.6}, ce2 = {:.6}",
            cp2(params),
            ce2(params)
        );
        for &t1 in &angles {
            for &t2 in &angles {
                let ansatz = EntanglementAnsatz::new(t1, t2)?;
                println!(
                    "  theta=({t1:.4}, {t2:.4})  ebits {:.4}  closed {:.6}  pipeline {:.6}",
                    entanglement_consumed(ansatz),
                    ce_lim(params, ansatz),
                    ce_lim_pipeline(params, ansatz)?,
                );
            }
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
