//! The weighted modulus upper bound: its radial integral, analytic fast
//! paths against adaptive quadrature, and the divergent-integral case that
//! certifies a vanishing modulus.
//!
//! Run with: cargo run --release -p ringq --example weighted_bounds

use ringq::modulus::ring_modulus_exact;
use ringq::qfield::{
    modulus_bound_integral, modulus_bound_integral_quadrature, modulus_upper_bound, QField,
    QuadratureSpec,
};
use ringq::{Dimension, Exponent, Result, SphericalRing};

fn main() -> Result<()> {
    let n = Dimension::new(2)?;
    let p = Exponent::new(4.0, n)?;
    let spec = QuadratureSpec::default_for(n);
    let origin = vec![0.0, 0.0];

    // unit weight: the bound collapses to the plain ring modulus
    let ring = SphericalRing::origin(n, 1.0, 8.0)?;
    let unit = QField::constant(1.0, origin.clone())?;
    let integral = modulus_bound_integral(&unit, 1.0, 8.0, p, n, &spec)?;
    println!("unit weight on A(0, 1, 8), p = 4:");
    println!("  radial integral:   {integral}   (analytic value 4.5)");
    println!(
        "  upper bound:       {}",
        modulus_upper_bound(&unit, &ring, p, n, &spec)?
    );
    println!(
        "  plain modulus:     {}",
        ring_modulus_exact(&ring, p, n)?.value
    );

    // the analytic power-law path against forced adaptive quadrature
    let q = QField::power_law(2.0, 1.0, origin.clone())?;
    let fast = modulus_bound_integral(&q, 1.0, 16.0, p, n, &spec)?;
    let slow = modulus_bound_integral_quadrature(&q, 1.0, 16.0, p, n, &spec)?;
    println!("\nq(r) = 2r on A(0, 1, 16):");
    println!("  analytic path:     {fast}");
    println!(
        "  adaptive path:     {slow}   rel. diff {:.2e}",
        (fast - slow).abs() / fast
    );

    // exponent alpha = p - n hits the logarithmic antiderivative
    let log_q = QField::power_law(1.0, 2.0, origin.clone())?;
    let li = modulus_bound_integral(&log_q, 1.0, 100.0, p, n, &spec)?;
    println!("\nq(r) = r^2 (the log branch):");
    println!("  integral over (1, 100): {li}");
    println!("  ln(100) for comparison: {}", 100f64.ln());

    // a weight that vanishes on an interval makes the integral diverge and
    // the bound drop to zero: a vanishing-modulus certificate
    let pinched =
        QField::tabulated_radial(vec![1.0, 2.0, 3.0, 4.0], vec![1.0, 0.0, 0.0, 1.0], origin)?;
    let divergent = modulus_bound_integral(&pinched, 1.0, 4.0, p, n, &spec)?;
    let ring14 = SphericalRing::origin(n, 1.0, 4.0)?;
    println!("\nweight vanishing on [2, 3]:");
    println!("  integral: {divergent}");
    println!(
        "  bound:    {}",
        modulus_upper_bound(&pinched, &ring14, p, n, &spec)?
    );
    Ok(())
}
