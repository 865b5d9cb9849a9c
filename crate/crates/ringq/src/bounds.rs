//! Lower bounds: condenser capacity from plate volumes, image-volume and
//! distortion growth bounds under a power-law majorant on the spherical
//! means, and the asymptotic growth constants with their normalizers.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, Dimension, Exponent};
use crate::maps::GrowthSweep;
use crate::util::pow_diff;

/// Tolerance at which α is treated as equal to p − n (the logarithmic
/// regime); the power formulas are numerically singular there.
pub const REGIME_TOL: f64 = 1e-12;

/// Power-law majorant q(t) ≤ K t^α for t ≥ r0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawMajorant {
    pub coeff: f64,
    pub alpha: f64,
    pub r0: f64,
}

impl PowerLawMajorant {
    pub fn new(coeff: f64, alpha: f64, r0: f64) -> Result<Self> {
        if !(coeff > 0.0 && coeff.is_finite()) {
            return Err(Error::domain(format!(
                "majorant coefficient must be positive, got {coeff}"
            )));
        }
        if !(alpha >= 0.0 && alpha.is_finite()) {
            return Err(Error::domain(format!(
                "majorant exponent must be nonnegative, got {alpha}"
            )));
        }
        if !(r0 > 0.0 && r0.is_finite()) {
            return Err(Error::domain(format!(
                "majorant threshold radius must be positive, got {r0}"
            )));
        }
        Ok(Self { coeff, alpha, r0 })
    }
}

/// Which growth regime a majorant falls into relative to (p, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthRegime {
    /// α < p − n: distortion grows like a power of R.
    Power,
    /// α = p − n: distortion grows like a power of ln R.
    Logarithmic,
}

impl GrowthRegime {
    /// Classify a majorant; α > p − n has no growth bound and is rejected.
    pub fn classify(maj: &PowerLawMajorant, p: Exponent, n: Dimension) -> Result<Self> {
        let gap = p.get() - n.as_f64() - maj.alpha;
        if gap.abs() < REGIME_TOL {
            Ok(GrowthRegime::Logarithmic)
        } else if gap > 0.0 {
            Ok(GrowthRegime::Power)
        } else {
            Err(Error::regime(format!(
                "majorant exponent alpha={} exceeds p-n={}; no growth bound applies",
                maj.alpha,
                p.get() - n.as_f64()
            )))
        }
    }
}

fn check_regime(
    maj: &PowerLawMajorant,
    p: Exponent,
    n: Dimension,
    requested: GrowthRegime,
) -> Result<()> {
    let actual = GrowthRegime::classify(maj, p, n)?;
    if actual != requested {
        return Err(Error::regime(format!(
            "majorant alpha={} is in the {actual:?} regime, not {requested:?}",
            maj.alpha
        )));
    }
    Ok(())
}

/// Direction of the inequality a [`BoundReport`] certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    LhsLeqRhs,
    RhsLeqLhs,
}

/// Structured record of one inequality check.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    /// Margin in the favorable direction: rhs − lhs for [`Direction::LhsLeqRhs`],
    /// lhs − rhs otherwise. Negative slack within tolerance still passes.
    pub slack: f64,
    pub direction: Direction,
    pub verdict: bool,
    pub tolerance: f64,
}

impl BoundReport {
    pub fn new(lhs: f64, rhs: f64, direction: Direction, tolerance: f64) -> Self {
        let slack = match direction {
            Direction::LhsLeqRhs => rhs - lhs,
            Direction::RhsLeqLhs => lhs - rhs,
        };
        let scale = lhs.abs().max(rhs.abs());
        let verdict = slack >= -tolerance * scale;
        Self {
            lhs,
            rhs,
            slack,
            direction,
            verdict,
            tolerance,
        }
    }

    /// |lhs − rhs| / |rhs|; the sharpness residual when the inequality is an
    /// equality in exact arithmetic.
    pub fn relative_residual(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(f64::MIN_POSITIVE)
    }
}

/// Lower bound on cap_p(A, C) from the plate volumes alone:
///
/// n Ω_n^{p/n} ((p−n)/(p−1))^{p−1} [m(A)^{(p−n)/(n(p−1))} − m(C)^{(p−n)/(n(p−1))}]^{1−p}.
pub fn capacity_lower_bound(
    vol_outer: f64,
    vol_inner: f64,
    p: Exponent,
    n: Dimension,
) -> Result<f64> {
    if !(vol_inner > 0.0 && vol_inner.is_finite()) {
        return Err(Error::domain(format!(
            "inner plate volume must be positive, got {vol_inner}"
        )));
    }
    if !(vol_outer > vol_inner && vol_outer.is_finite()) {
        return Err(Error::domain(format!(
            "outer volume must exceed inner volume, got outer={vol_outer}, inner={vol_inner}"
        )));
    }
    let pf = p.get();
    let nf = n.as_f64();
    let ee = (pf - nf) / (nf * (pf - 1.0));
    let bracket = pow_diff(vol_inner, vol_outer, ee);
    Ok(nf
        * unit_ball_volume(n).powf(pf / nf)
        * ((pf - nf) / (pf - 1.0)).powf(pf - 1.0)
        * bracket.powf(1.0 - pf))
}

/// Power-regime lower bound on the image-ball volume m(fB(x0, R)):
///
/// Ω_n K^{n/(n−p)} ((p−n)/(p−n−α))^{n(p−1)/(p−n)} (R^{e'} − r0^{e'})^{n(p−1)/(p−n)}
/// with e' = (p−n−α)/(p−1).
pub fn volume_lower_bound(
    radius: f64,
    maj: &PowerLawMajorant,
    p: Exponent,
    n: Dimension,
) -> Result<f64> {
    check_regime(maj, p, n, GrowthRegime::Power)?;
    if !(radius > maj.r0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "radius must exceed the majorant threshold r0={}, got {radius}",
            maj.r0
        )));
    }
    let pf = p.get();
    let nf = n.as_f64();
    let eprime = (pf - nf - maj.alpha) / (pf - 1.0);
    let outer = nf * (pf - 1.0) / (pf - nf);
    Ok(unit_ball_volume(n)
        * maj.coeff.powf(nf / (nf - pf))
        * ((pf - nf) / (pf - nf - maj.alpha)).powf(outer)
        * pow_diff(maj.r0, radius, eprime).powf(outer))
}

/// Finite-R lower bound on the distortion L(x0, f, R) in the given regime.
pub fn growth_lower_bound_finite(
    radius: f64,
    maj: &PowerLawMajorant,
    p: Exponent,
    n: Dimension,
    regime: GrowthRegime,
) -> Result<f64> {
    check_regime(maj, p, n, regime)?;
    if !(radius >= maj.r0 && radius.is_finite()) {
        return Err(Error::domain(format!(
            "radius must be at least the majorant threshold r0={}, got {radius}",
            maj.r0
        )));
    }
    let pf = p.get();
    let nf = n.as_f64();
    let outer = (pf - 1.0) / (pf - nf);
    let value = match regime {
        GrowthRegime::Power => {
            if radius == maj.r0 {
                return Ok(0.0);
            }
            let eprime = (pf - nf - maj.alpha) / (pf - 1.0);
            maj.coeff.powf(1.0 / (nf - pf))
                * ((pf - nf) / (pf - nf - maj.alpha)).powf(outer)
                * pow_diff(maj.r0, radius, eprime).powf(outer)
        }
        GrowthRegime::Logarithmic => {
            maj.coeff.powf(1.0 / (nf - pf))
                * ((pf - nf) / (pf - 1.0)).powf(outer)
                * (radius / maj.r0).ln().powf(outer)
        }
    };
    Ok(value)
}

/// How the distortion is normalized before taking the limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Normalizer {
    /// R^exponent
    PowerOfRadius { exponent: f64 },
    /// (ln R)^exponent
    LogPower { exponent: f64 },
}

impl Normalizer {
    pub fn evaluate(&self, radius: f64) -> f64 {
        match self {
            Normalizer::PowerOfRadius { exponent } => radius.powf(*exponent),
            Normalizer::LogPower { exponent } => radius.ln().powf(*exponent),
        }
    }
}

impl fmt::Display for Normalizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Normalizer::PowerOfRadius { exponent } => write!(f, "R^{exponent}"),
            Normalizer::LogPower { exponent } => write!(f, "(ln R)^{exponent}"),
        }
    }
}

/// The asymptotic growth bound: liminf of L / normalizer is at least
/// `constant`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticBound {
    pub normalizer: Normalizer,
    pub constant: f64,
}

/// Normalizer and constant of the asymptotic growth bound for the majorant's
/// regime.
pub fn asymptotic_constant(
    maj: &PowerLawMajorant,
    p: Exponent,
    n: Dimension,
    regime: GrowthRegime,
) -> Result<AsymptoticBound> {
    check_regime(maj, p, n, regime)?;
    let pf = p.get();
    let nf = n.as_f64();
    let outer = (pf - 1.0) / (pf - nf);
    let bound = match regime {
        GrowthRegime::Power => AsymptoticBound {
            normalizer: Normalizer::PowerOfRadius {
                exponent: (pf - nf - maj.alpha) / (pf - nf),
            },
            constant: maj.coeff.powf(1.0 / (nf - pf))
                * ((pf - nf) / (pf - nf - maj.alpha)).powf(outer),
        },
        GrowthRegime::Logarithmic => AsymptoticBound {
            normalizer: Normalizer::LogPower { exponent: outer },
            constant: maj.coeff.powf(1.0 / (nf - pf)) * ((pf - nf) / (pf - 1.0)).powf(outer),
        },
    };
    Ok(bound)
}

/// Numerical surrogate for the liminf of the normalized ratio: the minimum
/// of the ratio column over the sweep's last decade of radii.
///
/// Requires at least 10 rows spanning at least two decades.
pub fn liminf_estimate(sweep: &GrowthSweep) -> Result<f64> {
    let rows = sweep.rows();
    if rows.len() < 10 {
        return Err(Error::domain(format!(
            "liminf estimate needs at least 10 sweep rows, got {}",
            rows.len()
        )));
    }
    let first = rows[0].radius;
    let last = rows[rows.len() - 1].radius;
    if last / first < 100.0 * (1.0 - 1e-12) {
        return Err(Error::domain(format!(
            "liminf estimate needs the sweep to span at least two decades, got {first}..{last}"
        )));
    }
    let cutoff = last / 10.0 * (1.0 - 1e-12);
    Ok(rows
        .iter()
        .filter(|r| r.radius >= cutoff)
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min))
}
