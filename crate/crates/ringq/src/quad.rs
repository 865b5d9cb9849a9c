//! Adaptive one-dimensional quadrature: 15-point Gauss–Kronrod panels with
//! recursive bisection, plus Gauss–Legendre node generation for the sphere
//! product rules.

use crate::error::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (positive half; symmetric).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

// 7-point Gauss weights (embedded rule).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

// 15-point Kronrod weights.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    /// Integral estimate; `+∞` signals a divergent integrand (the integrand
    /// evaluated to `+∞` somewhere in the panel tree).
    pub value: f64,
    /// Accumulated absolute error estimate over the accepted panels.
    pub abs_error: f64,
    /// Number of bisections performed.
    pub subdivisions: usize,
    /// Number of integrand evaluations.
    pub evaluations: usize,
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    budget: f64,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64, bool)> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let mut divergent = false;
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x);
        if v.is_nan() {
            return Err(Error::domain(format!("integrand returned NaN at {x}")));
        }
        if v.is_infinite() {
            divergent = true;
            return Ok(0.0);
        }
        Ok(v)
    };

    let fc = eval(center)?;
    let mut res_gauss = fc * WG[3];
    let mut res_kronrod = fc * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let fsum = f1 + f2;
        if j % 2 != 0 {
            res_gauss += WG[j / 2] * fsum;
        }
        res_kronrod += WGK[j] * fsum;
    }
    let value = res_kronrod * half;
    let error = ((res_kronrod - res_gauss) * half).abs();
    Ok((value, error, divergent))
}

/// Integrate `f` over `[a, b]` to relative tolerance `rel_tol`.
///
/// Panels whose Gauss/Kronrod discrepancy exceeds their share of the error
/// budget are bisected, up to `max_subdivisions` bisections. An integrand
/// value of `+∞` marks the integral divergent: the result carries
/// `value = +∞` rather than an error, so callers can treat divergence as a
/// legitimate outcome.
pub fn integrate<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult> {
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::domain(format!(
            "integration bounds must satisfy a < b, got [{a}, {b}]"
        )));
    }
    if !(rel_tol > 0.0 && rel_tol.is_finite()) {
        return Err(Error::domain(format!(
            "relative tolerance must be positive, got {rel_tol}"
        )));
    }

    let (v0, e0, div0) = gk15(f, a, b)?;
    if div0 {
        return Ok(QuadResult {
            value: f64::INFINITY,
            abs_error: f64::INFINITY,
            subdivisions: 0,
            evaluations: 15,
        });
    }

    let budget = rel_tol * v0.abs().max(f64::MIN_POSITIVE);
    let mut stack = vec![Panel {
        a,
        b,
        value: v0,
        error: e0,
        budget,
    }];
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut subdivisions = 0usize;
    let mut evaluations = 15usize;

    while let Some(p) = stack.pop() {
        let width_floor = 8.0 * f64::EPSILON * p.a.abs().max(p.b.abs());
        if p.error <= p.budget || (p.b - p.a) <= width_floor {
            total += p.value;
            total_err += p.error;
            continue;
        }
        if subdivisions >= max_subdivisions {
            return Err(Error::Convergence {
                context: format!("adaptive quadrature on [{a}, {b}]"),
                last: total + p.value + stack.iter().map(|q| q.value).sum::<f64>(),
            });
        }
        subdivisions += 1;
        let mid = 0.5 * (p.a + p.b);
        let (lv, le, ld) = gk15(f, p.a, mid)?;
        let (rv, re, rd) = gk15(f, mid, p.b)?;
        evaluations += 30;
        if ld || rd {
            return Ok(QuadResult {
                value: f64::INFINITY,
                abs_error: f64::INFINITY,
                subdivisions,
                evaluations,
            });
        }
        let half_budget = 0.5 * p.budget;
        stack.push(Panel {
            a: p.a,
            b: mid,
            value: lv,
            error: le,
            budget: half_budget,
        });
        stack.push(Panel {
            a: mid,
            b: p.b,
            value: rv,
            error: re,
            budget: half_budget,
        });
    }

    Ok(QuadResult {
        value: total,
        abs_error: total_err,
        subdivisions,
        evaluations,
    })
}

/// Gauss–Legendre nodes and weights of the given order on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to ~1 ulp for the
/// orders used here.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 2, "Gauss-Legendre order must be at least 2");
    let n = order;
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) by upward recurrence
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::rel_err;

    #[test]
    fn integrates_polynomial_exactly() {
        // GK15 is exact for polynomials up to degree 22; no subdivision needed
        let f = |x: f64| 7.0 * x.powi(4) + 2.0 * x.powi(3) - 11.0 * x * x + 15.0 * x + 1.0;
        let exact = |x: f64| {
            7.0 * x.powi(5) / 5.0 + x.powi(4) / 2.0 - 11.0 * x.powi(3) / 3.0 + 7.5 * x * x + x
        };
        let r = integrate(&f, -3.0, 10.0, 1e-12, 100).unwrap();
        assert!(rel_err(r.value, exact(10.0) - exact(-3.0)) < 1e-14);
        assert_eq!(r.subdivisions, 0);
    }

    #[test]
    fn integrates_negative_power() {
        // ∫_1^8 t^{-1/3} dt = (3/2)(8^{2/3} - 1) = 4.5
        let r = integrate(&|t: f64| t.powf(-1.0 / 3.0), 1.0, 8.0, 1e-12, 10_000).unwrap();
        assert!(rel_err(r.value, 4.5) < 1e-12);
    }

    #[test]
    fn resolves_kink_with_subdivision() {
        // ∫_0^2 |t - 1| dt = 1
        let r = integrate(&|t: f64| (t - 1.0f64).abs(), 0.0, 2.0, 1e-10, 10_000).unwrap();
        assert!(rel_err(r.value, 1.0) < 1e-10);
        assert!(r.subdivisions > 0);
    }

    #[test]
    fn divergent_integrand_yields_infinity() {
        let r = integrate(&|t: f64| 1.0 / (t * 0.0), 0.5, 1.0, 1e-10, 100).unwrap();
        assert!(r.value.is_infinite());
    }

    #[test]
    fn nan_integrand_is_an_error() {
        assert!(integrate(&|_t: f64| f64::NAN, 0.0, 1.0, 1e-10, 100).is_err());
    }

    #[test]
    fn subdivision_cap_reports_convergence_failure() {
        // highly oscillatory with a hard budget of 1 subdivision
        let f = |t: f64| (1000.0 * t).sin() / (t + 1e-3);
        match integrate(&f, 0.0, 1.0, 1e-13, 1) {
            Err(Error::Convergence { .. }) => {}
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn invalid_bounds_rejected() {
        assert!(integrate(&|t: f64| t, 1.0, 1.0, 1e-10, 10).is_err());
        assert!(integrate(&|t: f64| t, 2.0, 1.0, 1e-10, 10).is_err());
        assert!(integrate(&|t: f64| t, 0.0, 1.0, 0.0, 10).is_err());
    }

    #[test]
    fn gauss_legendre_integrates_high_degree() {
        // order m is exact for degree 2m-1
        let (x, w) = gauss_legendre(8);
        let val: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(14)).sum();
        assert!(rel_err(val, 2.0 / 15.0) < 1e-14);
        let total: f64 = w.iter().sum();
        assert!(rel_err(total, 2.0) < 1e-14);
    }

    #[test]
    fn gauss_legendre_odd_order_has_center_node() {
        let (x, w) = gauss_legendre(7);
        assert_eq!(x[3], 0.0);
        // exact for degree 13: ∫ x^12 = 2/13
        let val: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(12)).sum();
        assert!(rel_err(val, 2.0 / 13.0) < 1e-14);
    }
}
