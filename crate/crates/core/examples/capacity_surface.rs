// Per-use capacities over a coarse (chi, mu) grid, printed as a table.

use memcap::sweep::{run_sweep, Quantity, SweepConfig};
use memcap::Result;

pub fn run_example() -> Result<()> {
    for quantity in [Quantity::Ce2, Quantity::Qe2, Quantity::Cp2] {
        let config = SweepConfig {
            chi_points: 5,
            mu_points: 5,
            quantity,
            ..SweepConfig::default()
        };
        let rows = run_sweep(&config)?;
        println!("{} per use (rows: chi, columns: mu)", quantity.name());
        for row in rows.chunks(config.mu_points) {
            let cells: Vec<String> = row.iter().map(|r| format!("{:7.4}", r.value)).collect();
            println!("  chi={:.4}  {}", row[0].chi, cells.join(" "));
        }
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
