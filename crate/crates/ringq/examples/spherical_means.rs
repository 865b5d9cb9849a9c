//! Spherical means of weights: analytic radial kinds, deterministic product
//! rules in low dimension, and seeded antithetic Monte Carlo above.
//!
//! Run with: cargo run --release -p ringq --example spherical_means

use ringq::qfield::{spherical_mean, spherical_mean_detailed, QField, QuadratureSpec, SphereRule};
use ringq::{Dimension, Result};

fn main() -> Result<()> {
    let n2 = Dimension::new(2)?;
    let spec2 = QuadratureSpec::default_for(n2);

    // radial kinds never touch quadrature
    let q = QField::power_law(2.0, 1.0, vec![0.0, 0.0])?;
    println!("q(x) = 2|x| about the origin:");
    for r in [0.5, 1.0, 8.0] {
        println!(
            "  mean over |x| = {r}: {}",
            spherical_mean(&q, r, n2, &spec2)?
        );
    }

    // a non-radial weight: |x| + x_1 has mean r on every sphere because the
    // odd part cancels
    let skewed = QField::general(
        |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>().sqrt() + x[0],
        vec![0.0, 0.0],
    )?;
    println!("\nQ(x) = |x| + x_1 (non-radial), product rule on the circle:");
    for r in [1.0, 3.0] {
        println!(
            "  mean over |x| = {r}: {}",
            spherical_mean(&skewed, r, n2, &spec2)?
        );
    }

    // in dimension 5 the default rule is antithetic Monte Carlo with a
    // counter-based stream per sample: fixed seed means bit-identical runs,
    // and the odd part still cancels exactly thanks to the antithetic pairs
    let n5 = Dimension::new(5)?;
    let mc = QuadratureSpec::new(
        SphereRule::MonteCarlo {
            samples: 20_000,
            seed: 42,
        },
        1e-10,
        10_000,
    )?;
    let skewed5 = QField::general(
        |x: &[f64]| x.iter().map(|t| t * t).sum::<f64>().sqrt() + x[0],
        vec![0.0; 5],
    )?;
    let first = spherical_mean_detailed(&skewed5, 2.0, n5, &mc)?;
    let second = spherical_mean_detailed(&skewed5, 2.0, n5, &mc)?;
    println!("\nsame weight in dimension 5, Monte Carlo (20000 samples, seed 42):");
    println!(
        "  run 1: {} (std err {:.2e})",
        first.value,
        first.std_error.unwrap()
    );
    println!(
        "  run 2: {} (bit-identical: {})",
        second.value,
        first.value.to_bits() == second.value.to_bits()
    );

    // a genuinely anisotropic weight needs the estimator to work
    let aniso = QField::general(|x: &[f64]| 1.0 + x[0] * x[0], vec![0.0; 5])?;
    let est = spherical_mean_detailed(&aniso, 1.0, n5, &mc)?;
    println!("\nQ(x) = 1 + x_1^2 on the unit sphere of R^5:");
    println!(
        "  Monte Carlo mean {} +/- {:.2e} (exact value 1.2)",
        est.value,
        est.std_error.unwrap()
    );
    Ok(())
}
