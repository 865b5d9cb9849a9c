//! Measurable weights Q: ℝⁿ → [0, ∞], their spherical means about a center
//! point, and the modulus upper bound they induce on ring curve families.
//!
//! Radial weight kinds (constant, power law, piecewise power, tabulated) are
//! evaluated analytically; only the `General` point-function kind needs
//! quadrature over spheres. Monte Carlo sphere quadrature uses one
//! counter-based random stream per sample index, so results do not depend on
//! evaluation order or thread count.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{BoundReport, Direction};
use crate::error::{Error, Result};
use crate::geometry::{unit_sphere_area, Dimension, Exponent, SphericalRing};
use crate::quad;
use crate::util::pow_diff;

/// Tolerance at which a power-law exponent is routed to the logarithmic
/// antiderivative branch (the power branch is singular there).
pub const LOG_BRANCH_TOL: f64 = 1e-12;

/// Relative tolerance used for the pass/fail verdicts of the η-sampling
/// check.
const SAMPLE_CHECK_TOL: f64 = 1e-9;

pub type PointFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// One radial segment q(r) = coeff · r^exponent for r in [lo, hi].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSegment {
    pub lo: f64,
    pub hi: f64,
    pub coeff: f64,
    pub exponent: f64,
}

/// The supported weight shapes.
#[derive(Clone)]
pub enum QKind {
    Constant(f64),
    PowerLaw { coeff: f64, exponent: f64 },
    PiecewisePower(Vec<PowerSegment>),
    TabulatedRadial { radii: Vec<f64>, values: Vec<f64> },
    General(Arc<PointFn>),
}

impl fmt::Debug for QKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QKind::Constant(c) => write!(f, "Constant({c})"),
            QKind::PowerLaw { coeff, exponent } => write!(f, "PowerLaw({coeff} * r^{exponent})"),
            QKind::PiecewisePower(segs) => write!(f, "PiecewisePower({} segments)", segs.len()),
            QKind::TabulatedRadial { radii, .. } => {
                write!(f, "TabulatedRadial({} nodes)", radii.len())
            }
            QKind::General(_) => write!(f, "General(<point function>)"),
        }
    }
}

/// A weight together with the center its spherical means are taken about.
#[derive(Debug, Clone)]
pub struct QField {
    kind: QKind,
    center: Vec<f64>,
}

fn check_center(center: &[f64]) -> Result<()> {
    if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
        return Err(Error::domain(
            "weight center must be a nonempty finite point",
        ));
    }
    Ok(())
}

impl QField {
    pub fn constant(c: f64, center: Vec<f64>) -> Result<Self> {
        check_center(&center)?;
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::domain(format!(
                "constant weight must be positive, got {c}"
            )));
        }
        Ok(Self {
            kind: QKind::Constant(c),
            center,
        })
    }

    pub fn power_law(coeff: f64, exponent: f64, center: Vec<f64>) -> Result<Self> {
        check_center(&center)?;
        if !(coeff > 0.0 && coeff.is_finite()) {
            return Err(Error::domain(format!(
                "power-law coefficient must be positive, got {coeff}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::domain("power-law exponent must be finite"));
        }
        Ok(Self {
            kind: QKind::PowerLaw { coeff, exponent },
            center,
        })
    }

    pub fn piecewise_power(segments: Vec<PowerSegment>, center: Vec<f64>) -> Result<Self> {
        check_center(&center)?;
        if segments.is_empty() {
            return Err(Error::domain("piecewise weight needs at least one segment"));
        }
        for (i, s) in segments.iter().enumerate() {
            if !(s.lo > 0.0 && s.hi > s.lo && s.hi.is_finite()) {
                return Err(Error::domain(format!(
                    "segment {i} has invalid interval [{}, {}]",
                    s.lo, s.hi
                )));
            }
            if !(s.coeff > 0.0 && s.coeff.is_finite() && s.exponent.is_finite()) {
                return Err(Error::domain(format!("segment {i} has invalid parameters")));
            }
        }
        if segments.windows(2).any(|w| w[0].hi != w[1].lo) {
            return Err(Error::domain("piecewise segments must be contiguous"));
        }
        Ok(Self {
            kind: QKind::PiecewisePower(segments),
            center,
        })
    }

    pub fn tabulated_radial(radii: Vec<f64>, values: Vec<f64>, center: Vec<f64>) -> Result<Self> {
        check_center(&center)?;
        if radii.len() < 2 || radii.len() != values.len() {
            return Err(Error::domain(
                "tabulated weight needs matching grids of at least two nodes",
            ));
        }
        if radii.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("tabulated radii must be finite"));
        }
        if radii[0] <= 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::domain(
                "tabulated radii must be positive and strictly increasing",
            ));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) {
            return Err(Error::domain(
                "tabulated values must be finite and nonnegative",
            ));
        }
        Ok(Self {
            kind: QKind::TabulatedRadial { radii, values },
            center,
        })
    }

    pub fn general<F>(f: F, center: Vec<f64>) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_center(&center)?;
        Ok(Self {
            kind: QKind::General(Arc::new(f)),
            center,
        })
    }

    pub fn kind(&self) -> &QKind {
        &self.kind
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn is_radial(&self) -> bool {
        !matches!(self.kind, QKind::General(_))
    }

    /// The spherical mean at radius `r` for radial kinds, evaluated
    /// analytically.
    pub(crate) fn radial_value(&self, r: f64) -> Result<f64> {
        match &self.kind {
            QKind::Constant(c) => Ok(*c),
            QKind::PowerLaw { coeff, exponent } => Ok(coeff * r.powf(*exponent)),
            QKind::PiecewisePower(segs) => {
                for s in segs {
                    if r >= s.lo && r <= s.hi {
                        return Ok(s.coeff * r.powf(s.exponent));
                    }
                }
                Err(Error::domain(format!(
                    "radius {r} outside piecewise weight coverage"
                )))
            }
            QKind::TabulatedRadial { radii, values } => {
                if r < radii[0] || r > radii[radii.len() - 1] {
                    return Err(Error::domain(format!(
                        "radius {r} outside tabulated weight coverage"
                    )));
                }
                let i = match radii.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
                    Ok(i) => return Ok(values[i]),
                    Err(i) => i - 1,
                };
                let (r0, r1) = (radii[i], radii[i + 1]);
                let (v0, v1) = (values[i], values[i + 1]);
                if v0 > 0.0 && v1 > 0.0 {
                    // log-log linear: exact on power-law data
                    let s = (v1 / v0).ln() / (r1 / r0).ln();
                    Ok(v0 * (r / r0).powf(s))
                } else {
                    // fall back to linear interpolation near zero values
                    let t = (r - r0) / (r1 - r0);
                    Ok(v0 + t * (v1 - v0))
                }
            }
            QKind::General(_) => Err(Error::domain("general weight has no analytic radial value")),
        }
    }

    /// Radial coverage interval for radial kinds, `None` when unlimited.
    fn coverage(&self) -> Option<(f64, f64)> {
        match &self.kind {
            QKind::PiecewisePower(segs) => Some((segs[0].lo, segs[segs.len() - 1].hi)),
            QKind::TabulatedRadial { radii, .. } => Some((radii[0], radii[radii.len() - 1])),
            _ => None,
        }
    }

    fn check_coverage(&self, r1: f64, r2: f64) -> Result<()> {
        if let Some((lo, hi)) = self.coverage() {
            if r1 < lo || r2 > hi {
                return Err(Error::domain(format!(
                    "weight only defined on [{lo}, {hi}], requested [{r1}, {r2}]"
                )));
            }
        }
        Ok(())
    }
}

/// Sphere integration rule for non-radial weights.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SphereRule {
    /// Tensor-product rule (trapezoid on the circle for n=2, Gauss–Legendre ×
    /// trapezoid for n=3). Not available for n ≥ 4.
    Product { order: usize },
    /// Antithetic Monte Carlo with a dedicated counter-based stream per
    /// sample.
    MonteCarlo { samples: usize, seed: u64 },
}

/// Quadrature configuration: a sphere rule plus the adaptive radial rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub sphere_rule: SphereRule,
    /// Relative tolerance of the adaptive radial quadrature, in (0, 1e-2].
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl QuadratureSpec {
    pub fn new(sphere_rule: SphereRule, rel_tol: f64, max_subdivisions: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol <= 1e-2) {
            return Err(Error::domain(format!(
                "rel_tol must lie in (0, 1e-2], got {rel_tol}"
            )));
        }
        if max_subdivisions == 0 {
            return Err(Error::domain("max_subdivisions must be positive"));
        }
        match sphere_rule {
            SphereRule::Product { order } if order < 4 => {
                return Err(Error::domain(format!(
                    "product rule order must be at least 4, got {order}"
                )));
            }
            SphereRule::MonteCarlo { samples, .. } if samples < 1_000 => {
                return Err(Error::domain(format!(
                    "Monte Carlo needs at least 1000 samples, got {samples}"
                )));
            }
            _ => {}
        }
        Ok(Self {
            sphere_rule,
            rel_tol,
            max_subdivisions,
        })
    }

    /// Product rule for n ≤ 3, Monte Carlo beyond; radial tolerance 1e-10.
    pub fn default_for(n: Dimension) -> Self {
        let sphere_rule = if n.get() <= 3 {
            SphereRule::Product { order: 64 }
        } else {
            SphereRule::MonteCarlo {
                samples: 100_000,
                seed: 42,
            }
        };
        Self {
            sphere_rule,
            rel_tol: 1e-10,
            max_subdivisions: 10_000,
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self.sphere_rule {
            SphereRule::MonteCarlo { seed, .. } => Some(seed),
            SphereRule::Product { .. } => None,
        }
    }
}

/// A spherical mean with its Monte Carlo standard error, when one exists.
#[derive(Debug, Clone, Copy)]
pub struct MeanEstimate {
    pub value: f64,
    pub std_error: Option<f64>,
}

enum SphereNodes {
    /// (direction, weight) pairs; weights sum to 1.
    Weighted(Vec<(Vec<f64>, f64)>),
    /// Monte Carlo directions; evaluated antithetically in pairs (u, -u).
    Antithetic(Vec<Vec<f64>>),
}

/// One standard-normal direction on the unit sphere of ℝⁿ, drawn from the
/// stream dedicated to sample `index`. Depends only on (seed, index).
fn unit_direction(seed: u64, index: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index.wrapping_add(1));
    loop {
        let mut v = Vec::with_capacity(n + 1);
        while v.len() < n {
            let u1: f64 = rng.gen();
            let u2: f64 = rng.gen();
            let radius = (-2.0 * (1.0 - u1).ln()).sqrt();
            let angle = 2.0 * std::f64::consts::PI * u2;
            v.push(radius * angle.cos());
            v.push(radius * angle.sin());
        }
        v.truncate(n);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            for x in &mut v {
                *x /= norm;
            }
            return v;
        }
    }
}

fn sphere_nodes(n: Dimension, rule: SphereRule) -> Result<SphereNodes> {
    match rule {
        SphereRule::Product { order } => match n.get() {
            2 => {
                let m = order;
                let nodes = (0..m)
                    .map(|j| {
                        let theta = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                        (vec![theta.cos(), theta.sin()], 1.0 / m as f64)
                    })
                    .collect();
                Ok(SphereNodes::Weighted(nodes))
            }
            3 => {
                let (t, wt) = quad::gauss_legendre(order);
                let m = 2 * order;
                let mut nodes = Vec::with_capacity(order * m);
                for (tk, wk) in t.iter().zip(&wt) {
                    let s = (1.0 - tk * tk).max(0.0).sqrt();
                    for j in 0..m {
                        let phi = 2.0 * std::f64::consts::PI * j as f64 / m as f64;
                        nodes.push((
                            vec![s * phi.cos(), s * phi.sin(), *tk],
                            wk / (2.0 * m as f64),
                        ));
                    }
                }
                Ok(SphereNodes::Weighted(nodes))
            }
            d => Err(Error::domain(format!(
                "product sphere rule only available for n = 2 or 3, got n = {d}; use Monte Carlo"
            ))),
        },
        SphereRule::MonteCarlo { samples, seed } => {
            let dims = n.get() as usize;
            let dirs: Vec<Vec<f64>> = (0..samples as u64)
                .into_par_iter()
                .map(|i| unit_direction(seed, i, dims))
                .collect();
            Ok(SphereNodes::Antithetic(dirs))
        }
    }
}

fn mean_on_sphere(q: &PointFn, center: &[f64], r: f64, nodes: &SphereNodes) -> MeanEstimate {
    let point = |u: &[f64], sign: f64| -> Vec<f64> {
        center
            .iter()
            .zip(u)
            .map(|(c, ui)| c + sign * r * ui)
            .collect()
    };
    match nodes {
        SphereNodes::Weighted(list) => {
            // deterministic order; cheap enough sequentially
            let value = list.iter().map(|(u, w)| w * q(&point(u, 1.0))).sum();
            MeanEstimate {
                value,
                std_error: None,
            }
        }
        SphereNodes::Antithetic(dirs) => {
            let vals: Vec<f64> = dirs
                .par_iter()
                .map(|u| 0.5 * (q(&point(u, 1.0)) + q(&point(u, -1.0))))
                .collect();
            // sequential reduction keeps the sum identical for any thread count
            let m = vals.len() as f64;
            let mean = vals.iter().sum::<f64>() / m;
            let var =
                vals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (m - 1.0).max(1.0);
            MeanEstimate {
                value: mean,
                std_error: Some((var / m).sqrt()),
            }
        }
    }
}

fn check_alignment(q: &QField, center: &[f64], n: Dimension) -> Result<()> {
    if q.dim() != n.get() as usize {
        return Err(Error::domain(format!(
            "weight center has dimension {}, expected {}",
            q.dim(),
            n.get()
        )));
    }
    if center.len() != q.dim() || center != q.center() {
        return Err(Error::domain("weight and ring must share the same center"));
    }
    Ok(())
}

/// Integral mean of Q over the sphere of radius `r` about the weight's
/// center. Radial kinds bypass quadrature entirely.
pub fn spherical_mean(q: &QField, r: f64, n: Dimension, quad_spec: &QuadratureSpec) -> Result<f64> {
    spherical_mean_detailed(q, r, n, quad_spec).map(|m| m.value)
}

/// [`spherical_mean`] plus the Monte Carlo standard error when the mean was
/// estimated stochastically.
pub fn spherical_mean_detailed(
    q: &QField,
    r: f64,
    n: Dimension,
    quad_spec: &QuadratureSpec,
) -> Result<MeanEstimate> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::domain(format!(
            "sphere radius must be positive, got {r}"
        )));
    }
    if q.dim() != n.get() as usize {
        return Err(Error::domain(format!(
            "weight center has dimension {}, expected {}",
            q.dim(),
            n.get()
        )));
    }
    match &q.kind {
        QKind::General(f) => {
            let nodes = sphere_nodes(n, quad_spec.sphere_rule)?;
            Ok(mean_on_sphere(f.as_ref(), q.center(), r, &nodes))
        }
        _ => Ok(MeanEstimate {
            value: q.radial_value(r)?,
            std_error: None,
        }),
    }
}

/// Analytic antiderivative of r^{-(n-1)/(p-1)} q^{-1/(p-1)} for
/// q(r) = coeff · r^exponent over [a, b].
fn power_branch_integral(coeff: f64, exponent: f64, a: f64, b: f64, pf: f64, nf: f64) -> f64 {
    let kpow = coeff.powf(-1.0 / (pf - 1.0));
    let gap = pf - nf - exponent;
    if gap.abs() < LOG_BRANCH_TOL {
        kpow * (b / a).ln()
    } else {
        let eprime = gap / (pf - 1.0);
        kpow * pow_diff(a, b, eprime) / eprime
    }
}

/// The reciprocal-weight radial integral
/// ∫_{r1}^{r2} dr / (r^{(n−1)/(p−1)} q^{1/(p−1)}(r))
/// whose (1−p)-th power scales the modulus upper bound.
///
/// Radial power shapes integrate analytically (per segment for piecewise and
/// tabulated weights); the general kind goes through adaptive quadrature of
/// spherical means. A weight vanishing on a set of positive measure makes the
/// integral diverge; that is reported as `+∞`, not as an error.
pub fn modulus_bound_integral(
    q: &QField,
    r1: f64,
    r2: f64,
    p: Exponent,
    n: Dimension,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    check_integral_range(q, r1, r2, n)?;
    let pf = p.get();
    let nf = n.as_f64();
    match &q.kind {
        QKind::Constant(c) => Ok(power_branch_integral(*c, 0.0, r1, r2, pf, nf)),
        QKind::PowerLaw { coeff, exponent } => {
            Ok(power_branch_integral(*coeff, *exponent, r1, r2, pf, nf))
        }
        QKind::PiecewisePower(segs) => {
            let mut total = 0.0;
            for s in segs {
                let (a, b) = (s.lo.max(r1), s.hi.min(r2));
                if b > a {
                    total += power_branch_integral(s.coeff, s.exponent, a, b, pf, nf);
                }
            }
            Ok(total)
        }
        QKind::TabulatedRadial { radii, values } => {
            let mut total = 0.0;
            for i in 0..radii.len() - 1 {
                let (a, b) = (radii[i].max(r1), radii[i + 1].min(r2));
                if b <= a {
                    continue;
                }
                let (v0, v1) = (values[i], values[i + 1]);
                if v0 == 0.0 && v1 == 0.0 {
                    // q vanishes on the whole interval: divergent integral
                    return Ok(f64::INFINITY);
                }
                if v0 > 0.0 && v1 > 0.0 {
                    let s = (v1 / v0).ln() / (radii[i + 1] / radii[i]).ln();
                    let coeff = v0 / radii[i].powf(s);
                    total += power_branch_integral(coeff, s, a, b, pf, nf);
                } else {
                    let r = integrand_quadrature(q, a, b, pf, nf, quad_spec, None)?;
                    if r.is_infinite() {
                        return Ok(f64::INFINITY);
                    }
                    total += r;
                }
            }
            Ok(total)
        }
        QKind::General(f) => {
            let nodes = sphere_nodes(n, quad_spec.sphere_rule)?;
            integrand_quadrature(q, r1, r2, pf, nf, quad_spec, Some((f.as_ref(), nodes)))
        }
    }
}

/// Same integral, forced through the adaptive radial quadrature for every
/// weight kind. Exists so the analytic paths have an independent check.
pub fn modulus_bound_integral_quadrature(
    q: &QField,
    r1: f64,
    r2: f64,
    p: Exponent,
    n: Dimension,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    check_integral_range(q, r1, r2, n)?;
    match &q.kind {
        QKind::General(f) => {
            let nodes = sphere_nodes(n, quad_spec.sphere_rule)?;
            integrand_quadrature(
                q,
                r1,
                r2,
                p.get(),
                n.as_f64(),
                quad_spec,
                Some((f.as_ref(), nodes)),
            )
        }
        _ => integrand_quadrature(q, r1, r2, p.get(), n.as_f64(), quad_spec, None),
    }
}

fn check_integral_range(q: &QField, r1: f64, r2: f64, n: Dimension) -> Result<()> {
    if !(r1 > 0.0 && r2 > r1 && r2.is_finite()) {
        return Err(Error::domain(format!(
            "integral range must satisfy 0 < r1 < r2 < ∞, got [{r1}, {r2}]"
        )));
    }
    if q.dim() != n.get() as usize {
        return Err(Error::domain(format!(
            "weight center has dimension {}, expected {}",
            q.dim(),
            n.get()
        )));
    }
    q.check_coverage(r1, r2)
}

fn integrand_quadrature(
    q: &QField,
    a: f64,
    b: f64,
    pf: f64,
    nf: f64,
    quad_spec: &QuadratureSpec,
    sphere: Option<(&PointFn, SphereNodes)>,
) -> Result<f64> {
    let inv = 1.0 / (pf - 1.0);
    let mean = |r: f64| -> f64 {
        match &sphere {
            Some((f, nodes)) => mean_on_sphere(*f, q.center(), r, nodes).value,
            None => q.radial_value(r).unwrap_or(f64::NAN),
        }
    };
    let integrand = move |r: f64| {
        let m = mean(r);
        if m < 0.0 {
            return f64::NAN;
        }
        1.0 / (r.powf((nf - 1.0) * inv) * m.powf(inv))
    };
    let result = quad::integrate(
        &integrand,
        a,
        b,
        quad_spec.rel_tol,
        quad_spec.max_subdivisions,
    )?;
    Ok(result.value)
}

/// Upper bound ω_{n−1} / I^{p−1} on the p-modulus of the curve family
/// joining the boundary spheres of the image of `ring`, where I is
/// [`modulus_bound_integral`].
///
/// A divergent integral certifies a vanishing modulus, so the bound is then
/// exactly 0; otherwise it is positive and finite.
pub fn modulus_upper_bound(
    q: &QField,
    ring: &SphericalRing,
    p: Exponent,
    n: Dimension,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    check_alignment(q, ring.center(), n)?;
    let integral = modulus_bound_integral(q, ring.r1(), ring.r2(), p, n, quad_spec)?;
    if integral.is_infinite() {
        return Ok(0.0);
    }
    if !(integral > 0.0 && integral.is_finite()) {
        return Err(Error::domain(format!(
            "bound integral must be positive, got {integral}"
        )));
    }
    Ok(unit_sphere_area(n) * integral.powf(1.0 - p.get()))
}

/// A nonnegative test function η on (r1, r2) with unit integral, piecewise
/// constant on equal-width pieces.
#[derive(Debug, Clone)]
pub struct PiecewiseEta {
    r1: f64,
    r2: f64,
    heights: Vec<f64>,
}

impl PiecewiseEta {
    /// Builds the function and rescales the heights to unit integral.
    pub fn new(r1: f64, r2: f64, heights: Vec<f64>) -> Result<Self> {
        if !(r1 > 0.0 && r2 > r1 && r2.is_finite()) {
            return Err(Error::domain(format!(
                "η interval must satisfy 0 < r1 < r2 < ∞, got [{r1}, {r2}]"
            )));
        }
        if heights.is_empty() || heights.iter().any(|h| !(h.is_finite() && *h >= 0.0)) {
            return Err(Error::domain(
                "η heights must be nonempty, finite, and nonnegative",
            ));
        }
        let width = (r2 - r1) / heights.len() as f64;
        let mass: f64 = heights.iter().sum::<f64>() * width;
        if mass <= 0.0 {
            return Err(Error::domain("η must have positive mass"));
        }
        let heights = heights.into_iter().map(|h| h / mass).collect();
        Ok(Self { r1, r2, heights })
    }

    fn random(rng: &mut ChaCha8Rng, r1: f64, r2: f64) -> Self {
        let pieces = rng.gen_range(8..=64);
        let heights: Vec<f64> = (0..pieces)
            .map(|_| -(1.0 - rng.gen::<f64>()).ln()) // Exp(1) heights
            .collect();
        Self::new(r1, r2, heights).expect("random η construction is always valid")
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn value(&self, r: f64) -> f64 {
        if r < self.r1 || r >= self.r2 {
            return 0.0;
        }
        let width = (self.r2 - self.r1) / self.heights.len() as f64;
        let idx = (((r - self.r1) / width) as usize).min(self.heights.len() - 1);
        self.heights[idx]
    }

    /// Trapezoid-free exact integral of η over (r1, r2); 1 after
    /// normalization, up to rounding.
    pub fn mass(&self) -> f64 {
        let width = (self.r2 - self.r1) / self.heights.len() as f64;
        self.heights.iter().sum::<f64>() * width
    }
}

/// ∫ q(r) r^{n−1} dr over [a, b], analytic for pure power shapes and
/// adaptive otherwise.
fn weight_moment(q: &QField, a: f64, b: f64, nf: f64, quad_spec: &QuadratureSpec) -> Result<f64> {
    let analytic = |coeff: f64, exponent: f64, a: f64, b: f64| -> f64 {
        let e = exponent + nf;
        if e.abs() < LOG_BRANCH_TOL {
            coeff * (b / a).ln()
        } else {
            coeff * pow_diff(a, b, e) / e
        }
    };
    match &q.kind {
        QKind::Constant(c) => Ok(analytic(*c, 0.0, a, b)),
        QKind::PowerLaw { coeff, exponent } => Ok(analytic(*coeff, *exponent, a, b)),
        _ => {
            let integrand = |r: f64| q.radial_value(r).unwrap_or(f64::NAN) * r.powf(nf - 1.0);
            Ok(quad::integrate(
                &integrand,
                a,
                b,
                quad_spec.rel_tol,
                quad_spec.max_subdivisions,
            )?
            .value)
        }
    }
}

/// The weighted test integral ω_{n−1} ∫ q(r) η^p(r) r^{n−1} dr for a
/// piecewise-constant η. This is ∫_A Q η^p dm evaluated through the radial
/// mean of Q.
pub fn eta_weighted_integral(
    q: &QField,
    ring: &SphericalRing,
    p: Exponent,
    n: Dimension,
    eta: &PiecewiseEta,
    quad_spec: &QuadratureSpec,
) -> Result<f64> {
    check_alignment(q, ring.center(), n)?;
    if eta.r1 != ring.r1() || eta.r2 != ring.r2() {
        return Err(Error::domain("η must live on the ring's radial interval"));
    }
    if !q.is_radial() {
        // fall back to the generic quadrature route for point functions
        let eta = eta.clone();
        return eta_weighted_integral_fn(q, ring, p, n, move |r| eta.value(r), quad_spec);
    }
    q.check_coverage(ring.r1(), ring.r2())?;
    let nf = n.as_f64();
    let pf = p.get();
    let width = (ring.r2() - ring.r1()) / eta.heights.len() as f64;
    let mut total = 0.0;
    for (j, h) in eta.heights.iter().enumerate() {
        if *h == 0.0 {
            continue;
        }
        let a = ring.r1() + width * j as f64;
        let b = if j + 1 == eta.heights.len() {
            ring.r2()
        } else {
            a + width
        };
        total += h.powf(pf) * weight_moment(q, a, b, nf, quad_spec)?;
    }
    Ok(unit_sphere_area(n) * total)
}

/// The same weighted test integral for an arbitrary η given as a function,
/// through adaptive quadrature.
pub fn eta_weighted_integral_fn<F>(
    q: &QField,
    ring: &SphericalRing,
    p: Exponent,
    n: Dimension,
    eta: F,
    quad_spec: &QuadratureSpec,
) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    check_alignment(q, ring.center(), n)?;
    q.check_coverage(ring.r1(), ring.r2())?;
    let nf = n.as_f64();
    let pf = p.get();
    let sphere = match &q.kind {
        QKind::General(f) => Some((f.clone(), sphere_nodes(n, quad_spec.sphere_rule)?)),
        _ => None,
    };
    let integrand = |r: f64| {
        let m = match &sphere {
            Some((f, nodes)) => mean_on_sphere(f.as_ref(), q.center(), r, nodes).value,
            None => q.radial_value(r).unwrap_or(f64::NAN),
        };
        m * eta(r).powf(pf) * r.powf(nf - 1.0)
    };
    let result = quad::integrate(
        &integrand,
        ring.r1(),
        ring.r2(),
        quad_spec.rel_tol,
        quad_spec.max_subdivisions,
    )?;
    Ok(unit_sphere_area(n) * result.value)
}

/// Draws `trials` random admissible test functions η and checks the ring
/// inequality `lhs_modulus ≤ ω_{n−1} ∫ q η^p r^{n−1} dr` for each one.
///
/// The returned report carries the smallest right-hand side encountered, so
/// `slack` is the worst margin over all trials. The seed is a required
/// argument: the draw must be reproducible.
pub fn ring_inequality_sample_check(
    q: &QField,
    ring: &SphericalRing,
    p: Exponent,
    n: Dimension,
    lhs_modulus: f64,
    trials: usize,
    seed: u64,
) -> Result<BoundReport> {
    if !(lhs_modulus >= 0.0 && lhs_modulus.is_finite()) {
        return Err(Error::domain(format!(
            "lhs modulus must be finite and nonnegative, got {lhs_modulus}"
        )));
    }
    if trials == 0 {
        return Err(Error::domain("sample check needs at least one trial"));
    }
    check_alignment(q, ring.center(), n)?;
    let quad_spec = QuadratureSpec::default_for(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst_rhs = f64::INFINITY;
    for _ in 0..trials {
        let eta = PiecewiseEta::random(&mut rng, ring.r1(), ring.r2());
        let rhs = eta_weighted_integral(q, ring, p, n, &eta, &quad_spec)?;
        if rhs < worst_rhs {
            worst_rhs = rhs;
        }
    }
    Ok(BoundReport::new(
        lhs_modulus,
        worst_rhs,
        Direction::LhsLeqRhs,
        SAMPLE_CHECK_TOL,
    ))
}
