//! Growth bounds under a power-law majorant on the spherical means: the
//! finite-radius distortion bound, the image-volume bound it is equivalent
//! to, and the asymptotic constants in both regimes.
//!
//! Run with: cargo run --release -p ringq --example growth_bounds

use ringq::bounds::{
    asymptotic_constant, growth_lower_bound_finite, volume_lower_bound, GrowthRegime,
    PowerLawMajorant,
};
use ringq::{unit_ball_volume, Dimension, Exponent, Result};

fn main() -> Result<()> {
    let n = Dimension::new(2)?;
    let p = Exponent::new(4.0, n)?;

    // power regime: alpha < p - n
    let maj = PowerLawMajorant::new(2.0, 1.0, 1.0)?;
    let bound = asymptotic_constant(&maj, p, n, GrowthRegime::Power)?;
    println!("majorant q(t) <= 2 t (power regime), n = 2, p = 4:");
    println!(
        "  asymptotic bound: liminf L(R)/{} >= {}",
        bound.normalizer, bound.constant
    );
    println!("\n  finite-radius distortion bound and its approach to the asymptote:");
    for radius in [2.0, 10.0, 100.0, 1e4, 1e8] {
        let finite = growth_lower_bound_finite(radius, &maj, p, n, GrowthRegime::Power)?;
        let normalized = finite / bound.normalizer.evaluate(radius);
        println!(
            "    R = {radius:>10}: bound {finite:>14.6e}   bound/normalizer = {normalized:.9}"
        );
    }

    // the image-volume bound is the unit-ball volume times the n-th power of
    // the distortion bound
    println!("\n  image-volume bound vs distortion bound (identity check):");
    for radius in [4.0, 64.0] {
        let vol = volume_lower_bound(radius, &maj, p, n)?;
        let growth = growth_lower_bound_finite(radius, &maj, p, n, GrowthRegime::Power)?;
        println!(
            "    R = {radius:>4}: volume bound {vol:.9e}, Omega_n x growth^n = {:.9e}",
            unit_ball_volume(n) * growth * growth
        );
    }

    // logarithmic regime: alpha = p - n
    let log_maj = PowerLawMajorant::new(1.0, 2.0, 1.0)?;
    let log_bound = asymptotic_constant(&log_maj, p, n, GrowthRegime::Logarithmic)?;
    println!("\nmajorant q(t) <= t^2 (log regime):");
    println!(
        "  asymptotic bound: liminf L(R)/{} >= {}",
        log_bound.normalizer, log_bound.constant
    );
    for radius in [10.0, 1e4, 1e8] {
        let finite = growth_lower_bound_finite(radius, &log_maj, p, n, GrowthRegime::Logarithmic)?;
        println!("    R = {radius:>10}: bound {finite:.6e}");
    }

    // alpha beyond p - n carries no bound at all
    let outside = PowerLawMajorant::new(1.0, 3.0, 1.0)?;
    println!("\nalpha = 3 > p - n = 2:");
    match asymptotic_constant(&outside, p, n, GrowthRegime::Power) {
        Err(e) => println!("  rejected as expected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
