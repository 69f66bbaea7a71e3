//! Floating-point convolution through a thread-local FFT planner.

use std::cell::RefCell;

use num_complex::Complex64;
use rustfft::FftPlanner;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn transform(buf: &mut [Complex64], inverse: bool) {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        let plan = if inverse {
            p.plan_fft_inverse(buf.len())
        } else {
            p.plan_fft_forward(buf.len())
        };
        plan.process(buf);
    });
}

/// Transform length for a full linear convolution.
pub fn fft_len(la: usize, lb: usize) -> usize {
    (la + lb - 1).next_power_of_two()
}

/// Linear convolution of complex sequences, first `out_len` terms.
pub fn convolve_complex(a: &[Complex64], b: &[Complex64], out_len: usize) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() || out_len == 0 {
        return vec![Complex64::new(0.0, 0.0); out_len];
    }
    let a = &a[..a.len().min(out_len)];
    let b = &b[..b.len().min(out_len)];
    let len = fft_len(a.len(), b.len());
    let mut fa = vec![Complex64::new(0.0, 0.0); len];
    fa[..a.len()].copy_from_slice(a);
    transform(&mut fa, false);
    if std::ptr::eq(a, b) {
        for x in fa.iter_mut() {
            *x = *x * *x;
        }
    } else {
        let mut fb = vec![Complex64::new(0.0, 0.0); len];
        fb[..b.len()].copy_from_slice(b);
        transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x *= y;
        }
    }
    transform(&mut fa, true);
    let scale = 1.0 / len as f64;
    let mut out: Vec<Complex64> = fa.into_iter().take(out_len).map(|x| x * scale).collect();
    out.resize(out_len, Complex64::new(0.0, 0.0));
    out
}

/// Linear convolution of real sequences, first `out_len` terms. Both inputs
/// share one transform (`a + i b`).
pub fn convolve_real(a: &[f64], b: &[f64], out_len: usize) -> Vec<f64> {
    if a.is_empty() || b.is_empty() || out_len == 0 {
        return vec![0.0; out_len];
    }
    let a = &a[..a.len().min(out_len)];
    let b = &b[..b.len().min(out_len)];
    let len = fft_len(a.len(), b.len());
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate() {
        buf[i].re = x;
    }
    for (i, &y) in b.iter().enumerate() {
        buf[i].im = y;
    }
    transform(&mut buf, false);
    // A_k = (X_k + conj X_{-k}) / 2, B_k = (X_k − conj X_{-k}) / 2i,
    // A_k B_k = (X_k² − conj(X_{-k})²) / 4i
    let mut prod = vec![Complex64::new(0.0, 0.0); len];
    for k in 0..len {
        let x = buf[k];
        let y = buf[(len - k) % len].conj();
        prod[k] = (x * x - y * y) * Complex64::new(0.0, -0.25);
    }
    transform(&mut prod, true);
    let scale = 1.0 / len as f64;
    let mut out: Vec<f64> = prod.into_iter().take(out_len).map(|x| x.re * scale).collect();
    out.resize(out_len, 0.0);
    out
}

/// Discrete Fourier transform of a real sequence, forward sign.
pub fn dft_real(a: &[f64], len: usize) -> Vec<Complex64> {
    let mut buf = vec![Complex64::new(0.0, 0.0); len];
    for (i, &x) in a.iter().enumerate() {
        buf[i % len].re += x;
    }
    transform(&mut buf, false);
    buf
}

/// Inverse transform, normalized by `1/len`.
pub fn idft(mut buf: Vec<Complex64>) -> Vec<Complex64> {
    let len = buf.len();
    transform(&mut buf, true);
    let s = 1.0 / len as f64;
    for x in buf.iter_mut() {
        *x *= s;
    }
    buf
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn real_convolution_small() {
        let c = convolve_real(&[1.0, 2.0, 3.0], &[4.0, 5.0], 4);
        let want = [4.0, 13.0, 22.0, 15.0];
        for (x, y) in c.iter().zip(want) {
            assert!((x - y).abs() < 1e-12);
        }
        let c = convolve_real(&[1.0, 1.0], &[1.0, 1.0], 2);
        assert!((c[0] - 1.0).abs() < 1e-12 && (c[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn complex_convolution_small() {
        let i = Complex64::new(0.0, 1.0);
        let one = Complex64::new(1.0, 0.0);
        let c = convolve_complex(&[one, i], &[one, i], 3);
        assert!((c[0] - one).norm() < 1e-12);
        assert!((c[1] - 2.0 * i).norm() < 1e-12);
        assert!((c[2] + one).norm() < 1e-12);
    }
}
