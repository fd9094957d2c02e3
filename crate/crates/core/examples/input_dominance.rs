// Random two-qubit inputs against the maximally mixed input. A positive
// excess means a sampled state carried more mutual information than I/4.

use memcap::optimize::dominance_check;
use memcap::verify::dominance_points;
use memcap::Result;

pub fn run_example() -> Result<()> {
    for (i, params) in dominance_points().into_iter().enumerate() {
        let r = dominance_check(params, 500, 42, i as u64)?;
        println!(
            "chi={:.4} mu={:.1}  I(I/4)={:.6}  best sample={:.6}  excess={:+.2e}",
            params.chi(),
            params.mu(),
            r.baseline,
            r.best_sample,
            r.excess
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
