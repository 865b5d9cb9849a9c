//! Ring p-modulus: the closed form, the discrete extremal-density solver
//! that double-checks it, and the scaling law connecting rescaled rings.
//!
//! Run with: cargo run --release -p ringq --example ring_modulus

use ringq::modulus::{ring_modulus_exact, ring_modulus_grid};
use ringq::{Dimension, Exponent, Result, SphericalRing};

fn main() -> Result<()> {
    let n = Dimension::new(2)?;
    let p = Exponent::new(4.0, n)?;
    let ring = SphericalRing::origin(n, 1.0, 16.0)?;

    let exact = ring_modulus_exact(&ring, p, n)?;
    println!("ring A(0, 1, 16) in the plane, p = 4");
    println!("  closed form:          {:.12e}", exact.value);

    for grid_points in [1_000usize, 10_000, 100_000] {
        let grid = ring_modulus_grid(&ring, p, n, grid_points)?;
        println!(
            "  grid solver ({grid_points:>6} nodes): {:.12e}   rel. deviation {:.2e}",
            grid.value,
            (grid.value - exact.value).abs() / exact.value
        );
    }

    // the modulus carries dimensions length^{n-p}: rescaling the ring by
    // lambda multiplies it by lambda^{n-p}
    println!("\nscaling law (n - p = {}):", n.as_f64() - p.get());
    for lambda in [0.5, 2.0, 10.0] {
        let scaled = ring_modulus_exact(&ring.scaled(lambda)?, p, n)?.value;
        println!(
            "  lambda = {lambda:>4}: modulus {:.6e}, lambda^(n-p) x base = {:.6e}",
            scaled,
            lambda.powf(n.as_f64() - p.get()) * exact.value
        );
    }

    // thin rings carry huge modulus, thick rings almost none
    println!("\nmonotonicity in the outer radius:");
    for r2 in [1.5, 4.0, 64.0, 1024.0] {
        let value = ring_modulus_exact(&SphericalRing::origin(n, 1.0, r2)?, p, n)?.value;
        println!("  A(0, 1, {r2:>6}): {value:.6e}");
    }
    Ok(())
}
