// Best limited-entanglement capacity for each entanglement budget.

use std::f64::consts::FRAC_PI_3;

use memcap::optimize::{tradeoff_curve, TradeoffQuery};
use memcap::{ChannelParams, Result};

pub fn run_example() -> Result<()> {
    let params = ChannelParams::new(FRAC_PI_3, 0.5)?;
    let curve = tradeoff_curve(&TradeoffQuery::uniform(params, 9, 64)?);
    println!(
        "{:>6} {:>9} {:>9} {:>9} {:>9}",
        "P", "theta1", "theta2", "ebits", "C"
    );
    for p in &curve {
        println!(
            "{:6.3} {:9.5} {:9.5} {:9.5} {:9.5}",
            p.budget, p.theta1, p.theta2, p.entanglement, p.capacity
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
