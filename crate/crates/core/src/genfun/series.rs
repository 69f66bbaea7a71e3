//! Truncated power series over `f64` or `Complex64`.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::fft;

/// Above this order products switch from Kahan-summed schoolbook to FFT.
const SCHOOLBOOK_ORDER: usize = 96;

/// Scalar field of a series.
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + PartialEq
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn norm(self) -> f64;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn fft_convolve(a: &[Self], b: &[Self], out_len: usize) -> Vec<Self>;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn norm(self) -> f64 {
        self.abs()
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn fft_convolve(a: &[Self], b: &[Self], out_len: usize) -> Vec<Self> {
        fft::convolve_real(a, b, out_len)
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn fft_convolve(a: &[Self], b: &[Self], out_len: usize) -> Vec<Self> {
        fft::convolve_complex(a, b, out_len)
    }
}

/// Coefficients `c_0..=c_N`; every operation is exact modulo `z^{N+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedSeries<T: Scalar = f64> {
    coeffs: Vec<T>,
}

pub type Series = TruncatedSeries<f64>;
pub type ComplexSeries = TruncatedSeries<Complex64>;

impl<T: Scalar> TruncatedSeries<T> {
    pub fn zeros(order: usize) -> Self {
        Self {
            coeffs: vec![T::zero(); order + 1],
        }
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zeros(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `z`.
    pub fn z(order: usize) -> Self {
        let mut s = Self::zeros(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Pads or truncates `c` to the given order.
    pub fn from_coeffs(mut c: Vec<T>, order: usize) -> Self {
        c.resize(order + 1, T::zero());
        Self { coeffs: c }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    /// Same series at another order (truncating or zero-padding).
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|x| x * c)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] + o.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] - o.coeffs[k]).collect(),
        }
    }

    pub fn add_scalar(&self, c: T) -> Self {
        let mut s = self.clone();
        s.coeffs[0] += c;
        s
    }

    /// Multiplication by `z^k`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        if k <= n {
            c[k..].copy_from_slice(&self.coeffs[..=n - k]);
        }
        Self { coeffs: c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let a = &self.coeffs[..=n];
        let b = &o.coeffs[..=n];
        let coeffs = if n <= SCHOOLBOOK_ORDER {
            kahan_product(a, b, n + 1)
        } else {
            T::fft_convolve(a, b, n + 1)
        };
        Self { coeffs }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// `f^k` for a small integer `k`.
    pub fn powi(&self, k: usize) -> Self {
        let mut acc = Self::constant(T::one(), self.order());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        for k in 1..=n {
            c[k - 1] = self.coeffs[k] * T::from_f64(k as f64);
        }
        Self { coeffs: c }
    }

    /// Antiderivative with constant term `c0`.
    pub fn integral(&self, c0: T) -> Self {
        let n = self.order();
        let mut c = vec![T::zero(); n + 1];
        c[0] = c0;
        for k in 1..=n {
            c[k] = self.coeffs[k - 1] / T::from_f64(k as f64);
        }
        Self { coeffs: c }
    }

    /// `1/f`; needs `f_0 ≠ 0`.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        assert!(self.coeffs[0].norm() > 0.0, "inverse of a series with zero constant term");
        if n <= SCHOOLBOOK_ORDER {
            let inv0 = T::one() / self.coeffs[0];
            let mut g = vec![T::zero(); n + 1];
            g[0] = inv0;
            for k in 1..=n {
                let mut acc = Kahan::new();
                for i in 1..=k {
                    acc.add(self.coeffs[i] * g[k - i]);
                }
                g[k] = -acc.sum() * inv0;
            }
            return Self { coeffs: g };
        }
        // Newton: g ← g (2 − f g), doubling the precision
        let mut g = Self::constant(T::one() / self.coeffs[0], 0);
        let mut m = 0;
        while m < n {
            m = (2 * m + 1).min(n);
            let f = self.with_order(m);
            let g_m = g.with_order(m);
            let fg = f.mul(&g_m);
            let corr = fg.scale(-T::one()).add_scalar(T::from_f64(2.0));
            g = g_m.mul(&corr);
        }
        g
    }

    /// `log f`; needs `f_0 ≠ 0` (principal branch at the constant term).
    pub fn log(&self) -> Self {
        let c0 = self.coeffs[0].ln();
        self.derivative().mul(&self.inverse()).integral(c0)
    }

    /// `exp f`.
    pub fn exp(&self) -> Self {
        let n = self.order();
        let e0 = self.coeffs[0].exp();
        if n <= SCHOOLBOOK_ORDER {
            // k g_k = Σ_{j=1}^k j f_j g_{k-j}
            let mut g = vec![T::zero(); n + 1];
            g[0] = e0;
            for k in 1..=n {
                let mut acc = Kahan::new();
                for j in 1..=k {
                    acc.add(self.coeffs[j] * T::from_f64(j as f64) * g[k - j]);
                }
                g[k] = acc.sum() / T::from_f64(k as f64);
            }
            return Self { coeffs: g };
        }
        // Newton on log g = f with f_0 removed, g ← g (1 − log g + f)
        let mut f0 = self.clone();
        f0.coeffs[0] = T::zero();
        let mut g = Self::constant(T::one(), 0);
        let mut m = 0;
        while m < n {
            m = (2 * m + 1).min(n);
            let g_m = g.with_order(m);
            let corr = f0
                .with_order(m)
                .sub(&g_m.log())
                .add_scalar(T::one());
            g = g_m.mul(&corr);
        }
        g.scale(e0)
    }

    /// `f^α` through `exp(α log f)`; needs `f_0` off the branch cut.
    pub fn pow(&self, alpha: f64) -> Self {
        let c0 = self.coeffs[0];
        let unit = self.scale(T::one() / c0);
        let mut p = unit.log().scale(T::from_f64(alpha)).exp();
        let lead = (c0.ln() * T::from_f64(alpha)).exp();
        p = p.scale(lead);
        p
    }

    /// Largest coefficient modulus.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Series {
    /// Promotion to complex coefficients.
    pub fn to_complex(&self) -> ComplexSeries {
        ComplexSeries::from_coeffs(
            self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
            self.order(),
        )
    }
}

impl ComplexSeries {
    pub fn re(&self) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|c| c.re).collect(), self.order())
    }
}

struct Kahan<T: Scalar> {
    sum: T,
    comp: T,
}

impl<T: Scalar> Kahan<T> {
    fn new() -> Self {
        Self {
            sum: T::zero(),
            comp: T::zero(),
        }
    }
    fn add(&mut self, x: T) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
    fn sum(&self) -> T {
        self.sum
    }
}

fn kahan_product<T: Scalar>(a: &[T], b: &[T], out_len: usize) -> Vec<T> {
    (0..out_len)
        .map(|k| {
            let mut acc = Kahan::new();
            for i in 0..=k.min(a.len() - 1) {
                if k - i < b.len() {
                    acc.add(a[i] * b[k - i]);
                }
            }
            acc.sum()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * (1.0 + b.abs())
    }

    #[test]
    fn inverse_of_one_minus_z() {
        for n in [10, 300] {
            let f = Series::from_coeffs(vec![1.0, -1.0], n);
            let g = f.inverse();
            assert!(g.coeffs().iter().all(|&c| close(c, 1.0, 1e-12)));
        }
    }

    #[test]
    fn exp_log_round_trip() {
        for n in [20, 400] {
            let f = Series::from_coeffs(vec![0.3, 0.5, -0.2, 0.1], n);
            let g = f.exp().log();
            for k in 0..=n {
                assert!(close(g.coeff(k), f.coeff(k), 1e-11), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn exp_of_z_is_factorial_series() {
        let e = Series::z(200).exp();
        let mut fact = 1.0;
        for k in 0..30 {
            if k > 0 {
                fact *= k as f64;
            }
            assert!(close(e.coeff(k), 1.0 / fact, 1e-12));
        }
    }

    #[test]
    fn sqrt_via_pow() {
        // (1 − z)^{1/2} = 1 − z/2 − z²/8 − z³/16 ...
        for n in [10, 200] {
            let f = Series::from_coeffs(vec![1.0, -1.0], n).pow(0.5);
            let want = [1.0, -0.5, -0.125, -0.0625];
            for (k, w) in want.iter().enumerate() {
                assert!(close(f.coeff(k), *w, 1e-12));
            }
        }
    }

    #[test]
    fn complex_product_matches_schoolbook() {
        let n = 300;
        let a = ComplexSeries::from_coeffs(
            (0..=n)
                .map(|k| Complex64::new((k as f64).sin(), (k as f64 * 0.3).cos()))
                .collect(),
            n,
        );
        let b = a.map(|c| c.conj());
        let fast = a.mul(&b);
        let slow = kahan_product(a.coeffs(), b.coeffs(), n + 1);
        for k in 0..=n {
            assert!((fast.coeff(k) - slow[k]).norm() < 1e-9);
        }
    }

    #[test]
    fn truncation_is_causal() {
        let a = Series::from_coeffs(vec![1.0, 2.0, 3.0, 4.0], 3);
        let b = Series::from_coeffs(vec![5.0, 6.0, 7.0, 8.0], 3);
        let ab = a.mul(&b);
        let a2 = Series::from_coeffs(vec![1.0, 2.0, 3.0, 99.0], 3);
        let ab2 = a2.mul(&b);
        for k in 0..3 {
            assert_eq!(ab.coeff(k), ab2.coeff(k));
        }
    }
}
