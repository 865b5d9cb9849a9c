//! Dimensions, exponents, spherical rings, ball condensers, and the unit
//! sphere/ball constants they depend on.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Largest supported ambient dimension. Quadrature cost grows quickly with n
/// and nothing in the toolkit needs more.
pub const MAX_DIMENSION: u32 = 16;

/// Ambient dimension n of ℝⁿ, with 2 ≤ n ≤ [`MAX_DIMENSION`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!(
                "dimension must be at least 2, got {n}"
            )));
        }
        if n > MAX_DIMENSION {
            return Err(Error::domain(format!(
                "dimension must be at most {MAX_DIMENSION}, got {n}"
            )));
        }
        Ok(Self(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0)
    }
}

/// Integrability exponent p, validated against a dimension so that p > n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent(f64);

impl Exponent {
    pub fn new(p: f64, n: Dimension) -> Result<Self> {
        if !p.is_finite() {
            return Err(Error::domain(format!("exponent p must be finite, got {p}")));
        }
        if p <= n.as_f64() {
            return Err(Error::UnsupportedExponent { p, n: n.get() });
        }
        Ok(Self(p))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

fn check_center(center: &[f64]) -> Result<()> {
    if center.is_empty() {
        return Err(Error::domain(
            "center point must have at least one coordinate",
        ));
    }
    if center.iter().any(|c| !c.is_finite()) {
        return Err(Error::domain("center coordinates must be finite"));
    }
    Ok(())
}

/// Open concentric ring { x : r1 < |x - center| < r2 } with 0 < r1 < r2 < ∞.
#[derive(Debug, Clone, PartialEq)]
pub struct SphericalRing {
    center: Vec<f64>,
    r1: f64,
    r2: f64,
}

impl SphericalRing {
    pub fn new(center: Vec<f64>, r1: f64, r2: f64) -> Result<Self> {
        check_center(&center)?;
        if !(r1 > 0.0 && r1.is_finite()) {
            return Err(Error::domain(format!(
                "inner radius must satisfy 0 < r1 < ∞, got {r1}"
            )));
        }
        if !(r2 > r1 && r2.is_finite()) {
            return Err(Error::domain(format!(
                "outer radius must satisfy r1 < r2 < ∞, got r1={r1}, r2={r2}"
            )));
        }
        Ok(Self { center, r1, r2 })
    }

    /// Ring centered at the origin of ℝⁿ.
    pub fn origin(n: Dimension, r1: f64, r2: f64) -> Result<Self> {
        Self::new(vec![0.0; n.get() as usize], r1, r2)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn r1(&self) -> f64 {
        self.r1
    }

    pub fn r2(&self) -> f64 {
        self.r2
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// Concentric rescale: same center, both radii multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::domain(format!(
                "scale factor must be positive, got {lambda}"
            )));
        }
        Self::new(self.center.clone(), self.r1 * lambda, self.r2 * lambda)
    }
}

/// Condenser made of an open ball and a closed concentric ball inside it.
#[derive(Debug, Clone, PartialEq)]
pub struct BallCondenser {
    center: Vec<f64>,
    r_inner: f64,
    r_outer: f64,
}

impl BallCondenser {
    pub fn new(center: Vec<f64>, r_inner: f64, r_outer: f64) -> Result<Self> {
        check_center(&center)?;
        if !(r_inner > 0.0 && r_inner.is_finite()) {
            return Err(Error::domain(format!(
                "inner radius must be positive, got {r_inner}"
            )));
        }
        if !(r_outer > r_inner && r_outer.is_finite()) {
            return Err(Error::domain(format!(
                "outer radius must exceed inner radius, got inner={r_inner}, outer={r_outer}"
            )));
        }
        Ok(Self {
            center,
            r_inner,
            r_outer,
        })
    }

    pub fn origin(n: Dimension, r_inner: f64, r_outer: f64) -> Result<Self> {
        Self::new(vec![0.0; n.get() as usize], r_inner, r_outer)
    }

    pub fn center(&self) -> &[f64] {
        &self.center
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    /// The ring separating the plates, A(center, r_inner, r_outer).
    pub fn separating_ring(&self) -> SphericalRing {
        SphericalRing {
            center: self.center.clone(),
            r1: self.r_inner,
            r2: self.r_outer,
        }
    }

    /// Lebesgue volumes (outer ball, inner ball).
    pub fn volumes(&self, n: Dimension) -> Result<(f64, f64)> {
        Ok((ball_volume(self.r_outer, n)?, ball_volume(self.r_inner, n)?))
    }
}

/// Γ(m/2) by the exact recurrence from Γ(1/2) = √π and Γ(1) = 1.
///
/// Only half-integer arguments ever occur here, so the recurrence is both
/// exact (to rounding) and cheaper than a general Lanczos evaluation.
fn gamma_half(twice_x: u32) -> f64 {
    debug_assert!(twice_x >= 1);
    let integer_arg = twice_x.is_multiple_of(2);
    let mut g = if integer_arg { 1.0 } else { PI.sqrt() };
    let mut k = if integer_arg { 2 } else { 1 };
    while k < twice_x {
        g *= k as f64 / 2.0;
        k += 2;
    }
    g
}

/// Surface area ω_{n−1} = 2 π^{n/2} / Γ(n/2) of the unit sphere in ℝⁿ.
pub fn unit_sphere_area(n: Dimension) -> f64 {
    2.0 * PI.powf(n.as_f64() / 2.0) / gamma_half(n.get())
}

/// Volume Ω_n = π^{n/2} / Γ(n/2 + 1) of the unit ball in ℝⁿ.
pub fn unit_ball_volume(n: Dimension) -> f64 {
    PI.powf(n.as_f64() / 2.0) / gamma_half(n.get() + 2)
}

/// Volume Ω_n Rⁿ of a ball of radius R in ℝⁿ.
pub fn ball_volume(radius: f64, n: Dimension) -> Result<f64> {
    if radius.is_nan() || radius < 0.0 {
        return Err(Error::domain(format!(
            "ball radius must be nonnegative, got {radius}"
        )));
    }
    Ok(unit_ball_volume(n) * radius.powi(n.get() as i32))
}
