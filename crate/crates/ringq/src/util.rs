//! Small numeric helpers shared across modules.

/// `r2^e - r1^e` evaluated as `r1^e * expm1(e * ln(r2/r1))`.
///
/// Algebraically identical to the naive difference but stays accurate when
/// `e` is tiny, where `r2^e` and `r1^e` are both within an ulp of 1 and the
/// naive subtraction cancels catastrophically.
pub(crate) fn pow_diff(r1: f64, r2: f64, e: f64) -> f64 {
    debug_assert!(r1 > 0.0 && r2 > 0.0);
    (e * r1.ln()).exp() * (e * (r2.ln() - r1.ln())).exp_m1()
}

/// Relative difference |a - b| / |b|.
pub(crate) fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// `count` logarithmically spaced points from `a` to `b` inclusive.
pub(crate) fn log_spaced(a: f64, b: f64, count: usize) -> Vec<f64> {
    debug_assert!(a > 0.0 && b > a && count >= 2);
    let (la, lb) = (a.ln(), b.ln());
    let step = (lb - la) / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count).map(|i| (la + step * i as f64).exp()).collect();
    // pin the endpoints exactly
    out[0] = a;
    out[count - 1] = b;
    out
}

/// `count` linearly spaced points from `a` to `b` inclusive.
pub(crate) fn lin_spaced(a: f64, b: f64, count: usize) -> Vec<f64> {
    debug_assert!(b > a && count >= 2);
    let step = (b - a) / (count - 1) as f64;
    let mut out: Vec<f64> = (0..count).map(|i| a + step * i as f64).collect();
    out[0] = a;
    out[count - 1] = b;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pow_diff_matches_naive_for_moderate_exponents() {
        let naive = 16f64.powf(2.0 / 3.0) - 1.0;
        assert!(rel_err(pow_diff(1.0, 16.0, 2.0 / 3.0), naive) < 1e-15);
    }

    #[test]
    fn pow_diff_stable_for_tiny_exponent() {
        // exp(a) - exp(b) = (a-b)(1 + (a+b)/2 + O((a+b)^2)) with a = e ln r2,
        // b = e ln r1; second order suffices at this magnitude
        let e = 3.3e-10;
        let (l1, l2) = (2f64.ln(), 8f64.ln());
        let expected = e * (l2 - l1) * (1.0 + e * (l1 + l2) / 2.0);
        assert!(rel_err(pow_diff(2.0, 8.0, e), expected) < 1e-12);
        // the naive difference has already lost ~7 digits here
        let naive = 8f64.powf(e) - 2f64.powf(e);
        assert!(rel_err(naive, expected) > 1e-9);
    }

    #[test]
    fn spacing_endpoints_exact() {
        let g = log_spaced(0.3, 700.0, 97);
        assert_eq!(g[0], 0.3);
        assert_eq!(g[96], 700.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let l = lin_spaced(-1.0, 3.0, 11);
        assert_eq!(l[0], -1.0);
        assert_eq!(l[10], 3.0);
    }
}
