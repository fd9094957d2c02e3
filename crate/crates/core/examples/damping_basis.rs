// Correlated decay as a Lindblad generator: its damping basis, and the
// agreement of the evolved state with the correlated Kraus pair.

use memcap::lindblad::{damping_basis, evolve, LindbladParams};
use memcap::optimize::random_density_matrix;
use memcap::{ComplexMatrix, Result};

pub fn run_example() -> Result<()> {
    let alpha = 1.0;
    let basis = damping_basis(alpha)?;
    let duality = basis
        .duality_matrix()
        .max_abs_diff(&ComplexMatrix::identity(16));
    println!(
        "eigenvalues  {:?}",
        basis.eigenvalues.iter().map(|l| l.re).collect::<Vec<_>>()
    );
    println!("duality error {duality:.2e}");

    let rho = random_density_matrix(4, 7)?;
    for t in [0.0, 0.5, 1.0, 2.0, 8.0] {
        let params = LindbladParams::new(alpha, t)?;
        let lindblad = evolve(params, &rho)?;
        let kraus = params.kraus_equivalent()?.apply(&rho)?;
        let expanded = basis.reconstruct(rho.matrix(), t);
        println!(
            "t={t:4.1}  chi={:.6}  p(11)={:.6}  |kraus - exp(Lt)|={:.1e}  |basis - exp(Lt)|={:.1e}",
            params.damping_angle(),
            lindblad.matrix()[(3, 3)].re,
            kraus.matrix().max_abs_diff(lindblad.matrix()),
            expanded.max_abs_diff(lindblad.matrix()),
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
