//! The two extremal radial maps: the power profile for majorants with
//! alpha < p - n and the log profile for alpha = p - n. Both turn the
//! weighted modulus bound into an equality, which the verification harness
//! measures as a sharpness residual.
//!
//! Run with: cargo run --release -p ringq --example extremal_maps

use ringq::bounds::PowerLawMajorant;
use ringq::maps::{apply, sup_distortion, verify_ring_q, RadialProfile};
use ringq::qfield::QField;
use ringq::{Dimension, Exponent, Result, SphericalRing};

fn main() -> Result<()> {
    let n = Dimension::new(2)?;
    let p = Exponent::new(4.0, n)?;

    // power regime: rho(t) = 2 sqrt(t) for (K, alpha) = (2, 1)
    let maj = PowerLawMajorant::new(2.0, 1.0, 1.0)?;
    let f1 = RadialProfile::extremal_power(&maj, p, n)?;
    println!("power-regime extremal map for q(t) <= 2t, n = 2, p = 4:");
    println!("  profile: {:?}", f1.kind());
    println!("  f(4, 0) = {:?}", apply(&f1, &[4.0, 0.0], &[0.0, 0.0])?);
    println!("  L(0, f, 100) = {}", sup_distortion(&f1, 100.0)?);

    let q = QField::power_law(2.0, 1.0, vec![0.0, 0.0])?;
    let rings: Vec<SphericalRing> = [(1.0, 2.0), (1.0, 16.0), (3.0, 81.0)]
        .iter()
        .map(|&(a, b)| SphericalRing::origin(n, a, b))
        .collect::<Result<_>>()?;
    println!("\n  ring inequality (image modulus <= weighted bound):");
    for (ring, report) in rings
        .iter()
        .zip(verify_ring_q(&f1, &q, &rings, p, n, 1e-9)?)
    {
        println!(
            "    A(0, {:>2}, {:>2}): lhs {:.9e} rhs {:.9e} residual {:.2e} -> {}",
            ring.r1(),
            ring.r2(),
            report.lhs,
            report.rhs,
            report.relative_residual(),
            if report.verdict { "ok" } else { "VIOLATED" }
        );
    }

    // log regime: rho(t) = (2/3)^{3/2} (ln t)^{3/2} for K = 1, alpha = 2
    let log_maj = PowerLawMajorant::new(1.0, 2.0, 1.0)?;
    let f2 = RadialProfile::extremal_log(&log_maj, p, n)?;
    println!("\nlog-regime extremal map for q(t) <= t^2:");
    println!("  profile: {:?}", f2.kind());
    println!(
        "  rho(1) = {}, rho(e) = {}",
        f2.value(1.0)?,
        f2.value(std::f64::consts::E)?
    );

    let log_q = QField::power_law(1.0, 2.0, vec![0.0, 0.0])?;
    let log_rings: Vec<SphericalRing> = [(3.0, 9.0), (3.0, 100.0)]
        .iter()
        .map(|&(a, b)| SphericalRing::origin(n, a, b))
        .collect::<Result<_>>()?;
    for (ring, report) in log_rings
        .iter()
        .zip(verify_ring_q(&f2, &log_q, &log_rings, p, n, 1e-9)?)
    {
        println!(
            "    A(0, {:>3}, {:>3}): residual {:.2e} -> {}",
            ring.r1(),
            ring.r2(),
            report.relative_residual(),
            if report.verdict { "ok" } else { "VIOLATED" }
        );
    }

    // the log profile collapses the unit sphere, so rings must stay outside
    println!("\n  ring A(0, 1, 4) degenerates under the log map:");
    match verify_ring_q(
        &f2,
        &log_q,
        &[SphericalRing::origin(n, 1.0, 4.0)?],
        p,
        n,
        1e-9,
    ) {
        Err(e) => println!("    {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
