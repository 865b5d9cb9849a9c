//! Numerical toolkit for p-moduli of spherical-ring curve families,
//! condenser capacity lower bounds, and the growth of radial maps whose
//! spherical weight means obey a power-law majorant.
//!
//! Everything is organized around one geometric input, the concentric ring
//! A(x0, r1, r2), and one analytic input, a measurable weight Q with its
//! spherical means about x0. For exponents p > n the toolkit computes:
//!
//! - the exact p-modulus of the curves joining the ring's boundary spheres,
//!   with an independent discrete extremal-density solver as a numerical
//!   oracle ([`modulus`]);
//! - spherical means of Q and the weighted upper bound they induce on image
//!   curve-family moduli, plus a randomized test-function harness for the
//!   ring inequality ([`qfield`]);
//! - capacity lower bounds from plate volumes and finite-radius /
//!   asymptotic growth bounds on the distortion L(x0, f, R) ([`bounds`]);
//! - radial maps, including the two extremal profiles that attain the
//!   growth bounds with equality, and sweep machinery to measure sharpness
//!   ([`maps`]).
//!
//! # Example
//!
//! ```
//! use ringq::{Dimension, Exponent, SphericalRing};
//! use ringq::modulus::ring_modulus_exact;
//!
//! let n = Dimension::new(2)?;
//! let p = Exponent::new(4.0, n)?;
//! let ring = SphericalRing::origin(n, 1.0, 16.0)?;
//! let modulus = ring_modulus_exact(&ring, p, n)?.value;
//! assert!((modulus - 1.216021170167572e-2).abs() < 1e-15);
//! # Ok::<(), ringq::Error>(())
//! ```
//!
//! The `ringq` binary exposes the `modulus`, `verify`, and `sweep`
//! subcommands on top of this library; `examples/` holds one runnable
//! program per capability.

pub mod bounds;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod maps;
pub mod modulus;
pub mod qfield;
pub mod quad;

mod util;

pub use error::{Error, Result};
pub use geometry::{
    ball_volume, unit_ball_volume, unit_sphere_area, BallCondenser, Dimension, Exponent,
    SphericalRing,
};
