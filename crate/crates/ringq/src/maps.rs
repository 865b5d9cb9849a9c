//! Radial maps f(x) = x0 + ρ(|x−x0|)(x−x0)/|x−x0|: profile construction,
//! the extremal profiles attaining the growth bounds, distortion
//! measurement, and the ring-inequality verification harness.

use serde::Serialize;

use crate::bounds::{
    asymptotic_constant, growth_lower_bound_finite, BoundReport, Direction, GrowthRegime,
    PowerLawMajorant,
};
use crate::error::{Error, Result};
use crate::geometry::{ball_volume, Dimension, Exponent, SphericalRing};
use crate::modulus::ring_modulus_exact;
use crate::qfield::{modulus_upper_bound, QField, QuadratureSpec};

/// One power segment ρ(t) = coeff · t^exponent on [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSegment {
    pub lo: f64,
    pub hi: f64,
    pub coeff: f64,
    pub exponent: f64,
}

/// Shape of a strictly increasing radial profile ρ.
#[derive(Debug, Clone, PartialEq)]
pub enum ProfileKind {
    /// ρ(t) = coeff · t^exponent for t ≥ 0.
    Power { coeff: f64, exponent: f64 },
    /// ρ(t) = coeff · (ln t)^exponent for t ≥ 1.
    LogPower { coeff: f64, exponent: f64 },
    /// Contiguous power segments.
    Piecewise(Vec<ProfileSegment>),
    /// Strictly increasing samples, interpolated linearly in log–log space
    /// (exact on power-law data).
    Tabulated { radii: Vec<f64>, values: Vec<f64> },
}

/// A strictly increasing radial profile with its domain threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    kind: ProfileKind,
    domain_min: f64,
}

impl RadialProfile {
    pub fn power(coeff: f64, exponent: f64) -> Result<Self> {
        if !(coeff > 0.0 && coeff.is_finite()) {
            return Err(Error::domain(format!(
                "profile coefficient must be positive, got {coeff}"
            )));
        }
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::domain(format!(
                "power profile exponent must be positive for a strictly increasing map, got {exponent}"
            )));
        }
        Ok(Self {
            kind: ProfileKind::Power { coeff, exponent },
            domain_min: 0.0,
        })
    }

    pub fn log_power(coeff: f64, exponent: f64) -> Result<Self> {
        if !(coeff > 0.0 && coeff.is_finite()) {
            return Err(Error::domain(format!(
                "profile coefficient must be positive, got {coeff}"
            )));
        }
        if !(exponent > 0.0 && exponent.is_finite()) {
            return Err(Error::domain(format!(
                "log profile exponent must be positive, got {exponent}"
            )));
        }
        Ok(Self {
            kind: ProfileKind::LogPower { coeff, exponent },
            domain_min: 1.0,
        })
    }

    pub fn piecewise(segments: Vec<ProfileSegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::domain(
                "piecewise profile needs at least one segment",
            ));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.lo > 0.0 && s.hi > s.lo && s.hi.is_finite()) {
                return Err(Error::domain(format!(
                    "segment {i} has invalid interval [{}, {}]",
                    s.lo, s.hi
                )));
            }
            if !(s.coeff > 0.0 && s.exponent > 0.0 && s.coeff.is_finite() && s.exponent.is_finite())
            {
                return Err(Error::domain(format!(
                    "segment {i} must describe a strictly increasing power"
                )));
            }
        }
        for w in segments.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::domain(
                    "piecewise profile segments must be contiguous",
                ));
            }
            let left = w[0].coeff * w[0].hi.powf(w[0].exponent);
            let right = w[1].coeff * w[1].lo.powf(w[1].exponent);
            if (left - right).abs() > 1e-12 * left.abs().max(right.abs()) {
                return Err(Error::domain(
                    "piecewise profile must be continuous across segments",
                ));
            }
        }
        let domain_min = segments[0].lo;
        Ok(Self {
            kind: ProfileKind::Piecewise(segments),
            domain_min,
        })
    }

    pub fn tabulated(radii: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if radii.len() < 2 || radii.len() != values.len() {
            return Err(Error::domain(
                "tabulated profile needs matching grids of at least two nodes",
            ));
        }
        if radii.iter().chain(values.iter()).any(|v| !v.is_finite()) {
            return Err(Error::domain("tabulated profile entries must be finite"));
        }
        if radii[0] <= 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "tabulated radii must be positive and strictly increasing",
            ));
        }
        if values[0] <= 0.0 || values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "tabulated values must be positive and strictly increasing",
            ));
        }
        let domain_min = radii[0];
        Ok(Self {
            kind: ProfileKind::Tabulated { radii, values },
            domain_min,
        })
    }

    /// The identity map's profile ρ(t) = t.
    pub fn identity() -> Self {
        Self {
            kind: ProfileKind::Power {
                coeff: 1.0,
                exponent: 1.0,
            },
            domain_min: 0.0,
        }
    }

    /// The power-regime extremal profile
    /// ρ(t) = K^{1/(n−p)} ((p−n)/(p−n−α))^{(p−1)/(p−n)} t^{(p−n−α)/(p−n)},
    /// which attains the power-regime growth bound with equality.
    pub fn extremal_power(maj: &PowerLawMajorant, p: Exponent, n: Dimension) -> Result<Self> {
        match GrowthRegime::classify(maj, p, n)? {
            GrowthRegime::Power => {}
            GrowthRegime::Logarithmic => {
                return Err(Error::regime(format!(
                    "alpha={} equals p-n; use the logarithmic extremal profile",
                    maj.alpha
                )));
            }
        }
        let bound = asymptotic_constant(maj, p, n, GrowthRegime::Power)?;
        let pf = p.get();
        let nf = n.as_f64();
        Self::power(bound.constant, (pf - nf - maj.alpha) / (pf - nf))
    }

    /// The log-regime extremal profile
    /// ρ(t) = K^{1/(n−p)} ((p−n)/(p−1))^{(p−1)/(p−n)} (ln t)^{(p−1)/(p−n)},
    /// defined for t ≥ 1; requires α = p − n.
    pub fn extremal_log(maj: &PowerLawMajorant, p: Exponent, n: Dimension) -> Result<Self> {
        match GrowthRegime::classify(maj, p, n)? {
            GrowthRegime::Logarithmic => {}
            GrowthRegime::Power => {
                return Err(Error::regime(format!(
                    "alpha={} is below p-n; use the power extremal profile",
                    maj.alpha
                )));
            }
        }
        let bound = asymptotic_constant(maj, p, n, GrowthRegime::Logarithmic)?;
        let pf = p.get();
        let nf = n.as_f64();
        Self::log_power(bound.constant, (pf - 1.0) / (pf - nf))
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn domain_min(&self) -> f64 {
        self.domain_min
    }

    /// ρ(t). Errors below the domain threshold (power profiles accept any
    /// t ≥ 0 with ρ(0) = 0).
    pub fn value(&self, t: f64) -> Result<f64> {
        if !t.is_finite() {
            return Err(Error::domain(format!(
                "profile argument must be finite, got {t}"
            )));
        }
        match &self.kind {
            ProfileKind::Power { coeff, exponent } => {
                if t < 0.0 {
                    return Err(Error::domain(format!("power profile needs t ≥ 0, got {t}")));
                }
                Ok(coeff * t.powf(*exponent))
            }
            ProfileKind::LogPower { coeff, exponent } => {
                if t < 1.0 {
                    return Err(Error::domain(format!(
                        "log profile is only defined for t ≥ 1, got {t}"
                    )));
                }
                Ok(coeff * t.ln().powf(*exponent))
            }
            ProfileKind::Piecewise(segs) => {
                if t < self.domain_min || t > segs[segs.len() - 1].hi {
                    return Err(Error::domain(format!(
                        "argument {t} outside piecewise profile domain"
                    )));
                }
                for s in segs {
                    if t >= s.lo && t <= s.hi {
                        return Ok(s.coeff * t.powf(s.exponent));
                    }
                }
                unreachable!("contiguous segments cover the domain");
            }
            ProfileKind::Tabulated { radii, values } => {
                let last = radii[radii.len() - 1];
                if t < self.domain_min || t > last {
                    return Err(Error::domain(format!(
                        "argument {t} outside tabulated profile domain"
                    )));
                }
                let i = match radii.binary_search_by(|x| x.partial_cmp(&t).unwrap()) {
                    Ok(i) => return Ok(values[i]),
                    Err(i) => i - 1,
                };
                let s = (values[i + 1] / values[i]).ln() / (radii[i + 1] / radii[i]).ln();
                Ok(values[i] * (t / radii[i]).powf(s))
            }
        }
    }
}

/// Applies the radial map defined by `profile` about `x0` to the point `x`.
pub fn apply(profile: &RadialProfile, x: &[f64], x0: &[f64]) -> Result<Vec<f64>> {
    if x.len() != x0.len() || x.is_empty() {
        return Err(Error::domain(
            "point and center must share a positive dimension",
        ));
    }
    let t = x
        .iter()
        .zip(x0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    if t == 0.0 {
        return match &profile.kind {
            ProfileKind::Power { .. } => Ok(x0.to_vec()),
            _ => Err(Error::domain("profile is not defined at the center point")),
        };
    }
    let scale = profile.value(t)? / t;
    Ok(x.iter().zip(x0).map(|(a, b)| b + scale * (a - b)).collect())
}

/// L(x0, f, R): the sup of |f(x) − f(x0)| over the closed ball of radius R.
/// For a strictly increasing profile the sup sits on the boundary sphere, so
/// this is ρ(R).
pub fn sup_distortion(profile: &RadialProfile, radius: f64) -> Result<f64> {
    if radius < profile.domain_min {
        return Err(Error::domain(format!(
            "radius {radius} below the profile domain threshold {}",
            profile.domain_min
        )));
    }
    profile.value(radius)
}

/// Image of a concentric ring under the radial map: same center, radii
/// (ρ(r1), ρ(r2)). Errors when the image degenerates (ρ(r1) = ρ(r2) or a
/// collapsed inner sphere).
pub fn image_ring(profile: &RadialProfile, ring: &SphericalRing) -> Result<SphericalRing> {
    if ring.r1() < profile.domain_min {
        return Err(Error::domain(format!(
            "ring inner radius {} below the profile domain threshold {}",
            ring.r1(),
            profile.domain_min
        )));
    }
    let rho1 = profile.value(ring.r1())?;
    let rho2 = profile.value(ring.r2())?;
    if !(rho1 > 0.0 && rho2 > rho1) {
        return Err(Error::domain(format!(
            "image ring degenerate: profile maps ({}, {}) to ({rho1}, {rho2})",
            ring.r1(),
            ring.r2()
        )));
    }
    SphericalRing::new(ring.center().to_vec(), rho1, rho2)
}

/// Image-ball volume m(fB(x0, R)) = Ω_n ρ(R)ⁿ for the radial map.
pub fn image_ball_volume(profile: &RadialProfile, radius: f64, n: Dimension) -> Result<f64> {
    ball_volume(sup_distortion(profile, radius)?, n)
}

/// Checks, ring by ring, that the modulus of the image curve family stays
/// below the weighted upper bound: ring_modulus(image) ≤ bound(q) · (1+tol).
///
/// For an extremal profile built from the same majorant as `q` the two sides
/// agree, so [`BoundReport::relative_residual`] doubles as a sharpness
/// measurement.
pub fn verify_ring_q(
    profile: &RadialProfile,
    q: &QField,
    rings: &[SphericalRing],
    p: Exponent,
    n: Dimension,
    tol: f64,
) -> Result<Vec<BoundReport>> {
    verify_ring_q_with(profile, q, rings, p, n, tol, &QuadratureSpec::default_for(n))
}

/// [`verify_ring_q`] with an explicit quadrature configuration; needed when
/// the weight's bound requires non-default tolerances.
pub fn verify_ring_q_with(
    profile: &RadialProfile,
    q: &QField,
    rings: &[SphericalRing],
    p: Exponent,
    n: Dimension,
    tol: f64,
    quad_spec: &QuadratureSpec,
) -> Result<Vec<BoundReport>> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if rings.is_empty() {
        return Err(Error::domain("verification needs at least one ring"));
    }
    let mut reports = Vec::with_capacity(rings.len());
    for ring in rings {
        let image = image_ring(profile, ring)?;
        let lhs = ring_modulus_exact(&image, p, n)?.value;
        let rhs = modulus_upper_bound(q, ring, p, n, quad_spec)?;
        reports.push(BoundReport::new(lhs, rhs, Direction::LhsLeqRhs, tol));
    }
    Ok(reports)
}

/// One row of a growth sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SweepRow {
    pub radius: f64,
    /// L(x0, f, R) = ρ(R).
    pub sup_distortion: f64,
    /// Regime normalizer evaluated at R.
    pub normalizer: f64,
    /// sup_distortion / normalizer; the quantity whose liminf the growth
    /// bound controls.
    pub ratio: f64,
    /// Finite-R lower bound on the distortion.
    pub finite_bound: f64,
}

/// Distortion growth measured over an increasing radius grid, with the
/// asymptotic constant for reference.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthSweep {
    rows: Vec<SweepRow>,
    constant: f64,
}

impl GrowthSweep {
    /// Assembles a sweep from precomputed rows (synthetic sweeps included).
    pub fn from_rows(rows: Vec<SweepRow>, constant: f64) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::domain("sweep needs at least one row"));
        }
        if rows
            .iter()
            .any(|r| !(r.radius.is_finite() && r.normalizer > 0.0 && r.ratio.is_finite()))
        {
            return Err(Error::domain(
                "sweep rows must be finite with positive normalizers",
            ));
        }
        if rows.windows(2).any(|w| w[1].radius <= w[0].radius) {
            return Err(Error::domain("sweep radii must be strictly increasing"));
        }
        Ok(Self { rows, constant })
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }
}

/// Evaluates distortion, normalizer, ratio, and finite bound over `r_grid`.
pub fn growth_sweep(
    profile: &RadialProfile,
    maj: &PowerLawMajorant,
    p: Exponent,
    n: Dimension,
    r_grid: &[f64],
) -> Result<GrowthSweep> {
    if r_grid.is_empty() {
        return Err(Error::domain("sweep radius grid is empty"));
    }
    if r_grid.iter().any(|r| !r.is_finite()) {
        return Err(Error::domain("sweep radius grid must be finite"));
    }
    if r_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain(
            "sweep radius grid must be strictly increasing",
        ));
    }
    let floor = maj.r0.max(profile.domain_min());
    if r_grid[0] <= floor {
        return Err(Error::domain(format!(
            "sweep radii must exceed max(majorant r0, profile domain) = {floor}, got {}",
            r_grid[0]
        )));
    }
    let regime = GrowthRegime::classify(maj, p, n)?;
    let bound = asymptotic_constant(maj, p, n, regime)?;
    let rows = r_grid
        .iter()
        .map(|&radius| -> Result<SweepRow> {
            let sup = sup_distortion(profile, radius)?;
            let normalizer = bound.normalizer.evaluate(radius);
            let finite_bound = growth_lower_bound_finite(radius, maj, p, n, regime)?;
            Ok(SweepRow {
                radius,
                sup_distortion: sup,
                normalizer,
                ratio: sup / normalizer,
                finite_bound,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    GrowthSweep::from_rows(rows, bound.constant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::liminf_estimate;
    use crate::geometry::unit_sphere_area;
    use crate::util::{log_spaced, pow_diff, rel_err};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dims(n: u32, p: f64) -> (Dimension, Exponent) {
        let d = Dimension::new(n).unwrap();
        (d, Exponent::new(p, d).unwrap())
    }

    fn f1_setup() -> (Dimension, Exponent, PowerLawMajorant, RadialProfile) {
        let (n, p) = dims(2, 4.0);
        let maj = PowerLawMajorant::new(2.0, 1.0, 1.0).unwrap();
        let profile = RadialProfile::extremal_power(&maj, p, n).unwrap();
        (n, p, maj, profile)
    }

    #[test]
    fn extremal_power_profile_parameters() {
        let (_, _, _, profile) = f1_setup();
        match profile.kind() {
            ProfileKind::Power { coeff, exponent } => {
                assert!(rel_err(*coeff, 2.0) < 1e-14);
                assert!(rel_err(*exponent, 0.5) < 1e-15);
            }
            other => panic!("expected power profile, got {other:?}"),
        }
        // α = 0, K = 1 collapses to the identity
        let (n, p) = dims(2, 4.0);
        let flat = PowerLawMajorant::new(1.0, 0.0, 1.0).unwrap();
        let ident = RadialProfile::extremal_power(&flat, p, n).unwrap();
        assert!(rel_err(ident.value(7.3).unwrap(), 7.3) < 1e-14);
        // log-regime majorant rejected
        let log_maj = PowerLawMajorant::new(1.0, 2.0, 1.0).unwrap();
        assert!(RadialProfile::extremal_power(&log_maj, p, n).is_err());
    }

    #[test]
    fn extremal_power_maps_rings_to_rings() {
        let (n, p, maj, profile) = f1_setup();
        let bound = asymptotic_constant(&maj, p, n, GrowthRegime::Power).unwrap();
        let c = bound.constant;
        let beta = 0.5;
        let ring = SphericalRing::origin(n, 3.0, 81.0).unwrap();
        let img = image_ring(&profile, &ring).unwrap();
        assert!(rel_err(img.r1(), c * 3f64.powf(beta)) < 1e-14);
        assert!(rel_err(img.r2(), c * 81f64.powf(beta)) < 1e-14);
    }

    #[test]
    fn extremal_log_profile_parameters() {
        let (n, p) = dims(2, 4.0);
        let maj = PowerLawMajorant::new(1.0, 2.0, 1.0).unwrap();
        let profile = RadialProfile::extremal_log(&maj, p, n).unwrap();
        let c = (2.0f64 / 3.0).powf(1.5);
        match profile.kind() {
            ProfileKind::LogPower { coeff, exponent } => {
                assert!(rel_err(*coeff, c) < 1e-14);
                assert!(rel_err(*exponent, 1.5) < 1e-15);
            }
            other => panic!("expected log profile, got {other:?}"),
        }
        assert_eq!(profile.value(1.0).unwrap(), 0.0);
        assert!(rel_err(profile.value(std::f64::consts::E).unwrap(), c) < 1e-14);
        assert!(profile.value(0.5).is_err());
        // power-regime majorant rejected
        let power_maj = PowerLawMajorant::new(1.0, 1.0, 1.0).unwrap();
        assert!(RadialProfile::extremal_log(&power_maj, p, n).is_err());
    }

    #[test]
    fn apply_is_radial() {
        let (_, _, _, profile) = f1_setup();
        let y = apply(&profile, &[4.0, 0.0], &[0.0, 0.0]).unwrap();
        assert!(rel_err(y[0], 4.0) < 1e-14);
        assert!(y[1].abs() < 1e-14);

        let ident = RadialProfile::identity();
        let x = [1.0, -2.5, 3.0];
        let y = apply(&ident, &x, &[0.0; 3]).unwrap();
        for (a, b) in x.iter().zip(&y) {
            assert!(rel_err(*a, *b) < 1e-15);
        }

        // |f(x) − x0| = ρ(|x − x0|), with an off-origin center
        let x0 = [1.0, 2.0];
        let x = [4.0, 6.0]; // distance 5
        let y = apply(&profile, &x, &x0).unwrap();
        let dist = ((y[0] - x0[0]).powi(2) + (y[1] - x0[1]).powi(2)).sqrt();
        assert!(rel_err(dist, profile.value(5.0).unwrap()) < 1e-14);

        // center handling
        assert_eq!(
            apply(&profile, &[0.0, 0.0], &[0.0, 0.0]).unwrap(),
            vec![0.0, 0.0]
        );
        let log_profile = RadialProfile::log_power(1.0, 1.5).unwrap();
        assert!(apply(&log_profile, &[0.0, 0.0], &[0.0, 0.0]).is_err());
        assert!(apply(&log_profile, &[0.5, 0.0], &[0.0, 0.0]).is_err());
    }

    #[test]
    fn apply_is_injective_on_samples() {
        let (_, _, _, profile) = f1_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut images: Vec<Vec<f64>> = Vec::new();
        for _ in 0..200 {
            let x = [rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0)];
            let y = apply(&profile, &x, &[0.0, 0.0]).unwrap();
            for prior in &images {
                let d: f64 = prior.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
                assert!(d.sqrt() > 1e-9);
            }
            images.push(y);
        }
    }

    #[test]
    fn sup_distortion_values() {
        let (_, _, _, profile) = f1_setup();
        assert!(rel_err(sup_distortion(&profile, 100.0).unwrap(), 20.0) < 1e-14);
        assert_eq!(sup_distortion(&profile, 0.0).unwrap(), 0.0);
        let log_profile = RadialProfile::log_power(1.0, 1.5).unwrap();
        assert_eq!(sup_distortion(&log_profile, 1.0).unwrap(), 0.0);
        assert!(sup_distortion(&log_profile, 0.99).is_err());
    }

    #[test]
    fn image_volume_matches_distortion_power() {
        let (n, _, _, profile) = f1_setup();
        for radius in [1.0, 4.0, 100.0] {
            let vol = image_ball_volume(&profile, radius, n).unwrap();
            let expected = crate::geometry::unit_ball_volume(n)
                * sup_distortion(&profile, radius).unwrap().powi(2);
            assert!(rel_err(vol, expected) < 1e-14);
        }
    }

    #[test]
    fn image_ring_formula_matches_weighted_bound() {
        // the modulus of the image ring under the extremal power profile
        // equals ω_{n−1} K ((p−n−α)/(p−1))^{p−1} (r2^{e'} − r1^{e'})^{1−p}
        let (n, p, maj, profile) = f1_setup();
        for (r1, r2) in [(1.0, 2.0), (1.0, 16.0), (3.0, 81.0), (0.2, 900.0)] {
            let ring = SphericalRing::origin(n, r1, r2).unwrap();
            let img = image_ring(&profile, &ring).unwrap();
            let lhs = ring_modulus_exact(&img, p, n).unwrap().value;
            let eprime = (p.get() - n.as_f64() - maj.alpha) / (p.get() - 1.0);
            let expected = unit_sphere_area(n)
                * maj.coeff
                * ((p.get() - n.as_f64() - maj.alpha) / (p.get() - 1.0)).powf(p.get() - 1.0)
                * pow_diff(r1, r2, eprime).powf(1.0 - p.get());
            assert!(rel_err(lhs, expected) < 1e-12, "ring ({r1},{r2})");
        }
    }

    #[test]
    fn verify_extremal_power_is_sharp() {
        let (n, p, _, profile) = f1_setup();
        let q = QField::power_law(2.0, 1.0, vec![0.0, 0.0]).unwrap();
        let rings: Vec<SphericalRing> = [(1.0, 2.0), (1.0, 16.0), (3.0, 81.0)]
            .iter()
            .map(|&(a, b)| SphericalRing::origin(n, a, b).unwrap())
            .collect();
        let reports = verify_ring_q(&profile, &q, &rings, p, n, 1e-9).unwrap();
        for r in &reports {
            assert!(r.verdict);
            assert!(
                r.relative_residual() < 1e-10,
                "residual {}",
                r.relative_residual()
            );
        }
    }

    #[test]
    fn verify_identity_with_unit_weight() {
        let (n, p) = dims(3, 5.0);
        let q = QField::constant(1.0, vec![0.0; 3]).unwrap();
        let rings = vec![SphericalRing::origin(n, 1.0, 7.0).unwrap()];
        let reports = verify_ring_q(&RadialProfile::identity(), &q, &rings, p, n, 1e-9).unwrap();
        assert!(reports[0].verdict);
        assert!(reports[0].relative_residual() < 1e-12);
    }

    #[test]
    fn verify_extremal_log_map() {
        let (n, p) = dims(2, 4.0);
        let maj = PowerLawMajorant::new(1.0, 2.0, 1.0).unwrap();
        let profile = RadialProfile::extremal_log(&maj, p, n).unwrap();
        let q = QField::power_law(1.0, 2.0, vec![0.0, 0.0]).unwrap();
        let e = std::f64::consts::E;
        let rings: Vec<SphericalRing> = [(e, e * e), (e, 20.0), (3.0, 100.0)]
            .iter()
            .map(|&(a, b)| SphericalRing::origin(n, a, b).unwrap())
            .collect();
        let reports = verify_ring_q(&profile, &q, &rings, p, n, 1e-9).unwrap();
        for r in &reports {
            assert!(r.verdict);
            assert!(r.relative_residual() < 1e-10);
        }
        // a ring touching the collapsed inner sphere degenerates
        let bad = vec![SphericalRing::origin(n, 1.0, 4.0).unwrap()];
        assert!(verify_ring_q(&profile, &q, &bad, p, n, 1e-9).is_err());
        // and below the domain the profile is undefined
        let below = vec![SphericalRing::origin(n, 0.5, 2.0).unwrap()];
        assert!(verify_ring_q(&profile, &q, &below, p, n, 1e-9).is_err());
    }

    #[test]
    fn verify_randomized_majorants() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for trial in 0..1000 {
            let nn = rng.gen_range(2..=4u32);
            let (n, p) = dims(nn, nn as f64 + rng.gen_range(0.6..3.0));
            let gap = p.get() - n.as_f64();
            let maj = PowerLawMajorant::new(
                rng.gen_range(0.2..4.0),
                rng.gen_range(0.0..gap * 0.9),
                rng.gen_range(0.1..2.0),
            )
            .unwrap();
            let profile = RadialProfile::extremal_power(&maj, p, n).unwrap();
            let q = QField::power_law(maj.coeff, maj.alpha, vec![0.0; nn as usize]).unwrap();
            let r1 = rng.gen_range(0.05..5.0);
            let r2 = r1 * rng.gen_range(1.2..60.0);
            let rings = vec![SphericalRing::origin(n, r1, r2).unwrap()];
            let reports = verify_ring_q(&profile, &q, &rings, p, n, 1e-9).unwrap();
            assert!(reports[0].verdict, "trial {trial} failed: {:?}", reports[0]);
        }
    }

    #[test]
    fn growth_sweep_power_regime() {
        let (n, p, maj, profile) = f1_setup();
        let grid = log_spaced(10.0, 1e6, 30);
        let sweep = growth_sweep(&profile, &maj, p, n, &grid).unwrap();
        for row in sweep.rows() {
            assert!((row.ratio - sweep.constant()).abs() < 1e-12);
            assert!(row.finite_bound < row.sup_distortion);
        }
        assert!(rel_err(liminf_estimate(&sweep).unwrap(), 2.0) < 1e-12);
    }

    #[test]
    fn growth_sweep_log_regime() {
        let (n, p) = dims(2, 4.0);
        let maj = PowerLawMajorant::new(1.0, 2.0, 1.0).unwrap();
        let profile = RadialProfile::extremal_log(&maj, p, n).unwrap();
        let grid = log_spaced(100.0, 1e8, 25);
        let sweep = growth_sweep(&profile, &maj, p, n, &grid).unwrap();
        let c = (2.0f64 / 3.0).powf(1.5);
        for row in sweep.rows() {
            assert!((row.ratio - c).abs() < 1e-9);
            // with r0 = 1 the finite bound coincides with the distortion
            assert!(row.finite_bound <= row.sup_distortion * (1.0 + 1e-12));
        }
        // r0 > 1 keeps the bound strictly below and converging upward
        let maj_above = PowerLawMajorant::new(1.0, 2.0, 1.5).unwrap();
        let sweep = growth_sweep(&profile, &maj_above, p, n, &grid).unwrap();
        let normalized: Vec<f64> = sweep
            .rows()
            .iter()
            .map(|r| r.finite_bound / r.normalizer)
            .collect();
        assert!(normalized.windows(2).all(|w| w[1] > w[0]));
        for row in sweep.rows() {
            assert!(row.finite_bound < row.sup_distortion);
        }
    }

    #[test]
    fn growth_sweep_identity_ratio_is_one() {
        let (n, p) = dims(2, 4.0);
        let maj = PowerLawMajorant::new(1.0, 0.0, 1.0).unwrap();
        let grid = log_spaced(2.0, 2e4, 15);
        let sweep = growth_sweep(&RadialProfile::identity(), &maj, p, n, &grid).unwrap();
        for row in sweep.rows() {
            assert!(rel_err(row.ratio, 1.0) < 1e-14);
        }
    }

    #[test]
    fn growth_sweep_validation() {
        let (n, p, maj, profile) = f1_setup();
        assert!(growth_sweep(&profile, &maj, p, n, &[]).is_err());
        assert!(growth_sweep(&profile, &maj, p, n, &[2.0, 2.0]).is_err());
        assert!(growth_sweep(&profile, &maj, p, n, &[0.5, 2.0]).is_err());
    }

    #[test]
    fn piecewise_and_tabulated_profiles() {
        // two contiguous power segments, continuous at the joint
        let segs = vec![
            ProfileSegment {
                lo: 1.0,
                hi: 4.0,
                coeff: 1.0,
                exponent: 1.0,
            },
            ProfileSegment {
                lo: 4.0,
                hi: 100.0,
                coeff: 2.0,
                exponent: 0.5,
            },
        ];
        let profile = RadialProfile::piecewise(segs).unwrap();
        assert!(rel_err(profile.value(2.0).unwrap(), 2.0) < 1e-15);
        assert!(rel_err(profile.value(9.0).unwrap(), 6.0) < 1e-15);
        assert!(profile.value(0.5).is_err());

        // discontinuous joint rejected
        let broken = vec![
            ProfileSegment {
                lo: 1.0,
                hi: 4.0,
                coeff: 1.0,
                exponent: 1.0,
            },
            ProfileSegment {
                lo: 4.0,
                hi: 100.0,
                coeff: 5.0,
                exponent: 0.5,
            },
        ];
        assert!(RadialProfile::piecewise(broken).is_err());

        // log-log interpolation reproduces a power law exactly between nodes
        let radii = log_spaced(1.0, 64.0, 7);
        let values: Vec<f64> = radii.iter().map(|t| 2.0 * t.powf(0.5)).collect();
        let tab = RadialProfile::tabulated(radii, values).unwrap();
        for t in [1.3, 2.9, 17.0, 50.0] {
            assert!(rel_err(tab.value(t).unwrap(), 2.0 * t.powf(0.5)) < 1e-12);
        }
        assert!(tab.value(0.5).is_err());
        assert!(tab.value(100.0).is_err());
        assert!(RadialProfile::tabulated(vec![1.0, 2.0], vec![2.0, 1.0]).is_err());
    }

    #[test]
    fn profile_validation() {
        assert!(RadialProfile::power(0.0, 1.0).is_err());
        assert!(RadialProfile::power(1.0, 0.0).is_err());
        assert!(RadialProfile::power(1.0, -1.0).is_err());
        assert!(RadialProfile::log_power(1.0, 0.0).is_err());
        assert!(RadialProfile::piecewise(vec![]).is_err());
    }
}
