//! Condenser capacity from plate volumes: the lower bound is tight for
//! concentric balls, where it reproduces the separating ring's modulus.
//!
//! Run with: cargo run --release -p ringq --example capacity

use ringq::bounds::capacity_lower_bound;
use ringq::modulus::ring_modulus_exact;
use ringq::{BallCondenser, Dimension, Exponent, Result};

fn main() -> Result<()> {
    println!("condenser (B(0,R), closed B(0,r0)): capacity bound vs ring modulus\n");
    println!(
        "{:>3} {:>5} {:>6} {:>6} {:>22} {:>22}",
        "n", "p", "r0", "R", "capacity bound", "ring modulus"
    );
    for (nn, pp, r0, outer) in [
        (2u32, 3.0, 1.0, 2.0),
        (2, 4.0, 1.0, 16.0),
        (3, 5.0, 1.0, 2.0),
        (4, 6.0, 0.5, 3.0),
        (5, 8.0, 0.25, 4.0),
    ] {
        let n = Dimension::new(nn)?;
        let p = Exponent::new(pp, n)?;
        let condenser = BallCondenser::origin(n, r0, outer)?;
        let (vol_outer, vol_inner) = condenser.volumes(n)?;
        let capacity = capacity_lower_bound(vol_outer, vol_inner, p, n)?;
        let modulus = ring_modulus_exact(&condenser.separating_ring(), p, n)?.value;
        println!("{nn:>3} {pp:>5} {r0:>6} {outer:>6} {capacity:>22.15e} {modulus:>22.15e}");
    }

    // the bound blows up as the plates approach each other
    println!("\nplates approaching (n=3, p=5, r0 = 1):");
    let n = Dimension::new(3)?;
    let p = Exponent::new(5.0, n)?;
    for outer in [2.0, 1.25, 1.03125, 1.0009765625] {
        let condenser = BallCondenser::origin(n, 1.0, outer)?;
        let (va, vc) = condenser.volumes(n)?;
        println!(
            "  R = {outer:<14}: bound {:.6e}",
            capacity_lower_bound(va, vc, p, n)?
        );
    }
    Ok(())
}
