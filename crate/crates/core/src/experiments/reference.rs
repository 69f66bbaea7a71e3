//! Limit curves and constants that the experiments compare against.

use std::f64::consts::PI;

/// Mean local time of a standard Brownian excursion at level `u`:
/// `4u e^{-2u²}`.
pub fn ell_mean(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else {
        4.0 * u * (-2.0 * u * u).exp()
    }
}

/// Limit of `x ↦ E n^{-1/2} L_n(x n^{1/2})` (and of the scaled distance
/// profile): `(σ/2) ℓ̄(σx/2)`.
pub fn profile_mean_density(x: f64, sigma: f64) -> f64 {
    0.5 * sigma * ell_mean(0.5 * sigma * x)
}

/// Exact average of [`profile_mean_density`] over `[x0, x1]`.
pub fn profile_bin_average(x0: f64, x1: f64, sigma: f64) -> f64 {
    let cdf = |x: f64| {
        if x <= 0.0 {
            0.0
        } else {
            let u = 0.5 * sigma * x;
            1.0 - (-2.0 * u * u).exp()
        }
    };
    (cdf(x1) - cdf(x0)) / (x1 - x0)
}

/// `E W = √(π/2)` for the excursion; scaled width limit `σ √(π/2)`.
pub fn width_mean(sigma: f64) -> f64 {
    sigma * (PI / 2.0).sqrt()
}

/// Limit of `n^{-5/2} E Wiener(T_n)`: `(1/σ) · ½ √(π/2)`.
pub fn wiener_limit(sigma: f64) -> f64 {
    0.5 * (PI / 2.0).sqrt() / sigma
}

/// Large-frequency behaviour `48 η^{-4}` of `E|Γ̂(η)|²`.
pub fn fourier_tail(eta: f64) -> f64 {
    48.0 / eta.powi(4)
}

/// `E|Γ̂(η)|²` for the standard excursion, from the three-point
/// representation `192 ∫ ψ(s) s e^{-2s²} ds` with
/// `ψ(s) = (2 − 2cos(ηs) − ηs sin(ηs)) / (2η⁴)`, by composite Simpson.
pub fn fourier_second_moment(eta: f64) -> f64 {
    let eta = eta.abs();
    let psi = |s: f64| {
        let u = eta * s;
        if u < 1e-2 {
            // series to avoid cancellation: s⁴/24 − η² s⁶/360
            s.powi(4) / 24.0 - eta * eta * s.powi(6) / 360.0
        } else {
            (2.0 - 2.0 * u.cos() - u * u.sin()) / (2.0 * eta.powi(4))
        }
    };
    let f = |s: f64| psi(s) * s * (-2.0 * s * s).exp();
    let (b, m) = (7.0, 40_000);
    let h = b / m as f64;
    let mut acc = f(0.0) + f(b);
    for i in 1..m {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    192.0 * acc * h / 3.0
}

/// Fourier transform of the triangle `τ`: `(sin(t/2)/(t/2))²`.
pub fn triangle_hat(t: f64) -> f64 {
    if t.abs() < 1e-8 {
        1.0
    } else {
        let s = (0.5 * t).sin() / (0.5 * t);
        s * s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tagged_values() {
        assert!((ell_mean(0.5) - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
        assert!((ell_mean(0.5) - 1.21306).abs() < 5e-6);
        assert_eq!(profile_mean_density(0.0, 2f64.sqrt()), 0.0);
        assert!((profile_mean_density(0.5, 2f64.sqrt()) - 0.7788).abs() < 5e-5);
        assert!((width_mean(1.0) - 1.25331).abs() < 5e-6);
        assert!((width_mean(2f64.sqrt()) - 1.77245).abs() < 5e-6);
        assert!((wiener_limit(1.0) - 0.62666).abs() < 5e-6);
        // 0.62666/√2 = 0.443113
        assert!((wiener_limit(2f64.sqrt()) - 0.443113).abs() < 5e-6);
    }

    #[test]
    fn wiener_constant_by_quadrature() {
        // ∫_0^∞ x · 4x e^{-2x²} dx by composite Simpson
        let (a, b, m) = (0.0, 8.0, 20000);
        let h = (b - a) / m as f64;
        let f = |x: f64| x * ell_mean(x);
        let mut s = f(a) + f(b);
        for i in 1..m {
            let x = a + i as f64 * h;
            s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(x);
        }
        assert!((s * h / 3.0 - wiener_limit(1.0)).abs() < 1e-10);
    }

    #[test]
    fn bin_average_matches_quadrature() {
        let sigma = 0.7;
        let (x0, x1) = (0.3, 0.4);
        let m = 1000;
        let h = (x1 - x0) / m as f64;
        let mid: f64 = (0..m)
            .map(|i| profile_mean_density(x0 + (i as f64 + 0.5) * h, sigma))
            .sum::<f64>()
            * h;
        assert!((mid / (x1 - x0) - profile_bin_average(x0, x1, sigma)).abs() < 1e-7);
    }

    #[test]
    fn fourier_second_moment_limits() {
        assert!((fourier_second_moment(0.0) - 1.0).abs() < 1e-9);
        // leading term 48η⁻⁴ with an O(η⁻⁶) correction
        let big = fourier_second_moment(64.0) * 64f64.powi(4);
        assert!((big - 48.0).abs() < 0.2);
        // frozen values
        assert!((fourier_second_moment(1.0) - 0.905164239).abs() < 1e-8);
        assert!((fourier_second_moment(5.0) * 625.0 - 68.317022).abs() < 1e-5);
    }

    #[test]
    fn triangle_transform() {
        assert_eq!(triangle_hat(0.0), 1.0);
        assert!(triangle_hat(2.0 * PI).abs() < 1e-30);
    }
}
