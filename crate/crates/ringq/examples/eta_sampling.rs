//! Randomized ring-inequality checking: draw admissible piecewise-constant
//! test functions and confirm the image modulus never beats the weighted
//! test integral. The optimal test function turns the integral into the
//! bound itself.
//!
//! Run with: cargo run --release -p ringq --example eta_sampling

use ringq::bounds::PowerLawMajorant;
use ringq::maps::{image_ring, RadialProfile};
use ringq::modulus::ring_modulus_exact;
use ringq::qfield::{
    eta_weighted_integral_fn, modulus_bound_integral, modulus_upper_bound,
    ring_inequality_sample_check, QField, QuadratureSpec,
};
use ringq::{Dimension, Exponent, Result, SphericalRing};

fn main() -> Result<()> {
    let n = Dimension::new(2)?;
    let p = Exponent::new(4.0, n)?;
    let spec = QuadratureSpec::default_for(n);

    let maj = PowerLawMajorant::new(2.0, 1.0, 1.0)?;
    let profile = RadialProfile::extremal_power(&maj, p, n)?;
    let q = QField::power_law(2.0, 1.0, vec![0.0, 0.0])?;
    let ring = SphericalRing::origin(n, 1.0, 16.0)?;

    let lhs = ring_modulus_exact(&image_ring(&profile, &ring)?, p, n)?.value;
    let bound = modulus_upper_bound(&q, &ring, p, n, &spec)?;
    println!("config: q(r) = 2r on A(0, 1, 16), extremal power map, p = 4");
    println!("  image modulus (lhs):  {lhs:.12e}");
    println!("  weighted bound:       {bound:.12e}");

    let report = ring_inequality_sample_check(&q, &ring, p, n, lhs, 200, 42)?;
    println!("\n200 random admissible test functions (seed 42):");
    println!("  smallest rhs:         {:.12e}", report.rhs);
    println!("  worst slack:          {:.12e}", report.slack);
    println!("  all trials pass:      {}", report.verdict);
    println!(
        "  sampled infimum stays above the bound: {}",
        report.rhs > bound
    );

    // the optimal test function eta*(r) ~ r^{-(n-1)/(p-1)} q(r)^{-1/(p-1)}
    // attains the bound
    let total = modulus_bound_integral(&q, ring.r1(), ring.r2(), p, n, &spec)?;
    let inv = 1.0 / (p.get() - 1.0);
    let eta_star = move |r: f64| (r.powf(n.as_f64() - 1.0) * 2.0 * r).powf(-inv) / total;
    let attained = eta_weighted_integral_fn(&q, &ring, p, n, eta_star, &spec)?;
    println!("\noptimal test function:");
    println!("  rhs at eta*:          {attained:.12e}");
    println!(
        "  relative gap to bound: {:.2e}",
        (attained - bound).abs() / bound
    );
    Ok(())
}
