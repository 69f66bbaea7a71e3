//! Generating functions of conditioned trees and their profiles.
//!
//! With `A(z) = zΦ(A(z))` the size generating function of a GW tree,
//! `G = zΦ'(A)` and `Φj = zΦ^{(j)}(A)`, the profile series are
//!
//! * `B(z,x) = A / (1 − xG)`, so `[x^k]B = A G^k`;
//! * `D(z,x) = (x²Φ2 B² + 2xG B + A) / (1 − G)`,
//!
//! and `[z^n x^k]B / a_n = E L_n(k)`, `[z^n x^k]D / a_n = E Λ_n(k)`.
//! Second moments of the Fourier transforms come from the series `C`, `E`,
//! `F` evaluated on `y = x̄`, where `xy = 1` is substituted before any
//! division.

pub mod bivariate;
pub mod series;

use num_complex::Complex64;

pub use bivariate::BivariateSeries;
pub use series::{ComplexSeries, Scalar, Series, TruncatedSeries};

use crate::error::{Error, Result};
use crate::fft;
use crate::weights::{Family, OffspringDistribution, WeightSequence};

fn rising(m: f64, j: usize) -> f64 {
    (0..j).fold(1.0, |acc, i| acc * (m + i as f64))
}

fn factorial(j: usize) -> f64 {
    (1..=j).fold(1.0, |acc, i| acc * i as f64)
}

/// `Φ^{(j)}(A(z))` for a weight family, using its functional form.
pub fn compose_derivative(f: &Family, j: usize, a: &Series) -> Result<Series> {
    let n = a.order();
    let one_minus = |r: f64| a.scale(-r).add_scalar(1.0);
    Ok(match *f {
        Family::Geometric { scale, ratio } => {
            let inv = one_minus(ratio).inverse();
            inv.powi(j + 1).scale(scale * ratio.powi(j as i32) * factorial(j))
        }
        Family::NegativeBinomial {
            scale,
            ratio,
            shape,
        } => {
            let e = shape + j as f64;
            let base = one_minus(ratio);
            let p = if e.fract() == 0.0 && e <= 64.0 {
                base.inverse().powi(e as usize)
            } else {
                base.pow(-e)
            };
            p.scale(scale * ratio.powi(j as i32) * rising(shape, j))
        }
        Family::Poisson { scale, rate } => a
            .scale(rate)
            .exp()
            .scale(scale * rate.powi(j as i32)),
        Family::Logarithmic { scale, ratio } => {
            if j == 0 {
                one_minus(ratio).log().scale(-scale)
            } else {
                one_minus(ratio)
                    .inverse()
                    .powi(j)
                    .scale(scale * ratio.powi(j as i32) * factorial(j - 1))
            }
        }
        Family::Factorial { .. } => return Err(Error::RadiusZero),
        Family::Table { ref coeffs } => {
            let mut acc = Series::zeros(n);
            for k in (j..coeffs.len()).rev() {
                let falling = (0..j).fold(1.0, |t, i| t * (k - i) as f64);
                acc = acc.mul(a).add_scalar(falling * coeffs[k]);
            }
            acc
        }
    })
}

/// Solves `A = zΦ(A)` through order `n` by Newton iteration on the
/// weights' own generating function (not necessarily a probability law).
pub fn solve_fixed_point(f: &Family, n: usize) -> Result<Series> {
    let phi0 = f.coefficient(0);
    let mut a = Series::from_coeffs(vec![0.0, phi0], n.max(1));
    if n <= 1 {
        return Ok(a.with_order(n));
    }
    let mut m = 1;
    let mut last = false;
    loop {
        if m == n {
            last = true;
        }
        let cur = a.with_order(m);
        let phi = compose_derivative(f, 0, &cur)?.shift(1);
        let dphi = compose_derivative(f, 1, &cur)?.shift(1);
        // A ← A − (A − zΦ(A)) / (1 − zΦ'(A))
        let num = cur.sub(&phi);
        let den = dphi.scale(-1.0).add_scalar(1.0);
        a = cur.sub(&num.mul(&den.inverse()));
        if last {
            break;
        }
        m = (2 * m + 1).min(n);
    }
    Ok(a)
}

/// `a_n = P(|GW| = n)` for `n ≤ order`.
#[allow(non_snake_case)]
pub fn solve_A(p: &OffspringDistribution, order: usize) -> Result<Series> {
    solve_fixed_point(&p.law().family, order)
}

/// The univariate pieces shared by every profile series.
#[derive(Clone, Debug)]
pub struct ProfileSystem {
    /// `A(z)`.
    pub a: Series,
    /// `zΦ'(A)`, `zΦ''(A)`, ... as `phi[j] = zΦ^{(j)}(A)`; `phi[0] = A`.
    pub phi: Vec<Series>,
    /// `1/(1 − zΦ'(A))`.
    pub h: Series,
}

impl ProfileSystem {
    /// Builds the system through order `n` with derivatives up to `jmax`.
    pub fn new(p: &OffspringDistribution, n: usize, jmax: usize) -> Result<Self> {
        p.require_critical()?;
        for j in 1..=jmax {
            if !p.pgf_derivative(j, 1.0).is_finite() {
                return Err(Error::MomentDiverges(format!(
                    "offspring law lacks a finite moment of order {j}"
                )));
            }
        }
        let a = solve_A(p, n)?;
        let f = &p.law().family;
        let mut phi = vec![a.clone()];
        for j in 1..=jmax {
            phi.push(compose_derivative(f, j, &a)?.shift(1));
        }
        let h = phi[1].scale(-1.0).add_scalar(1.0).inverse();
        Ok(Self { a, phi, h })
    }

    pub fn order(&self) -> usize {
        self.a.order()
    }

    fn g(&self) -> &Series {
        &self.phi[1]
    }
}

fn require_reachable(a: &Series, n: usize) -> Result<f64> {
    let an = a.coeff(n);
    if !(an > 0.0) || an < 1e-300 {
        return Err(Error::Infeasible {
            n,
            reason: "P(|GW| = n) is zero for this offspring law".to_string(),
        });
    }
    Ok(an)
}

/// `B(z,x)` through orders `(n_order, k_order)`.
pub fn series_b(p: &OffspringDistribution, n_order: usize, k_order: usize) -> Result<BivariateSeries> {
    let sys = ProfileSystem::new(p, n_order, 1)?;
    Ok(b_rows(&sys, k_order))
}

fn b_rows(sys: &ProfileSystem, k_order: usize) -> BivariateSeries {
    let mut rows = Vec::with_capacity(k_order + 1);
    let mut u = sys.a.clone();
    for _ in 0..=k_order {
        rows.push(u.clone());
        u = u.mul(sys.g());
    }
    BivariateSeries::from_rows(rows)
}

/// `D(z,x)` through orders `(n_order, k_order)`, from the closed-form rows
/// `[x^0]D = A/(1−G)` and `[x^k]D = ((k−1)Φ2 A² G^{k−2} + 2AG^k)/(1−G)`.
pub fn series_d(p: &OffspringDistribution, n_order: usize, k_order: usize) -> Result<BivariateSeries> {
    let sys = ProfileSystem::new(p, n_order, 2)?;
    let b = b_rows(&sys, k_order);
    let v = sys.h.mul(&sys.phi[2]).mul(&sys.a);
    let mut rows = Vec::with_capacity(k_order + 1);
    for k in 0..=k_order {
        let mut r = b.row(k).mul(&sys.h).scale(if k == 0 { 1.0 } else { 2.0 });
        if k >= 2 {
            r = r.add(&v.mul(b.row(k - 2)).scale((k - 1) as f64));
        }
        rows.push(r);
    }
    Ok(BivariateSeries::from_rows(rows))
}

/// Exact expected profiles of the conditioned tree of size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactProfileMoments {
    pub n: usize,
    pub a_n: f64,
    /// `E L_n(k)` for `k = 0..len`.
    pub el: Vec<f64>,
    /// `E Λ_n(k)` for `k = 0..len`.
    pub elambda: Vec<f64>,
}

/// `E L_n(k)` and `E Λ_n(k)` for `k ≤ k_max` (default `n − 1`).
///
/// Only coefficient `n` of each row is extracted, so every row costs one
/// series product for `A G^k` plus two dot products.
pub fn exact_profile_moments(
    p: &OffspringDistribution,
    n: usize,
    k_max: Option<usize>,
) -> Result<ExactProfileMoments> {
    if n == 0 {
        return Err(Error::invalid_arg("n", "size must be at least 1"));
    }
    let sys = ProfileSystem::new(p, n, 2)?;
    let a_n = require_reachable(&sys.a, n)?;
    let k_max = k_max.unwrap_or(n - 1).min(n - 1);
    let v = sys.h.mul(&sys.phi[2]).mul(&sys.a);
    // g̃ = G/z; ũ_k = A G^k / z^k truncated at order n − k
    let g_t: Vec<f64> = sys.g().coeffs()[1..].to_vec();
    let g_t = Series::from_coeffs(g_t, n - 1);
    let dot = |s: &Series, u: &Series, shift: usize| -> f64 {
        // [z^n] s · z^shift ũ
        let mut acc = 0.0;
        let mut c = 0.0;
        for (j, &x) in u.coeffs().iter().enumerate() {
            if j + shift > n {
                break;
            }
            let y = s.coeff(n - shift - j) * x - c;
            let t = acc + y;
            c = (t - acc) - y;
            acc = t;
        }
        acc
    };
    let mut el = Vec::with_capacity(k_max + 1);
    let mut elambda = Vec::with_capacity(k_max + 1);
    let mut hist: Vec<Series> = Vec::with_capacity(3);
    let mut u = sys.a.clone();
    for k in 0..=k_max {
        if k > 0 {
            let ord = n - k;
            u = u.with_order(ord).mul(&g_t.with_order(ord));
        }
        el.push(u.coeff(n - k) / a_n);
        let mut d = dot(&sys.h, &u, k) * if k == 0 { 1.0 } else { 2.0 };
        if k >= 2 {
            d += (k - 1) as f64 * dot(&v, &hist[hist.len() - 2], k - 2);
        }
        elambda.push(d / a_n);
        hist.push(u.clone());
        if hist.len() > 2 {
            hist.remove(0);
        }
    }
    Ok(ExactProfileMoments {
        n,
        a_n,
        el,
        elambda,
    })
}

/// `C`, `E(x,y)`, `E(y,x)` and `F` on the circle `y = x̄`.
#[derive(Clone, Debug)]
pub struct CefSeries {
    pub c: ComplexSeries,
    pub e_xy: ComplexSeries,
    pub e_yx: ComplexSeries,
    pub f: ComplexSeries,
}

/// Evaluates the `C`, `E`, `F` series at `(x, x̄)` with `|x| = 1`.
pub fn series_cef_at(p: &OffspringDistribution, x: Complex64, order: usize) -> Result<CefSeries> {
    if (x.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::invalid_arg("x", "must lie on the unit circle"));
    }
    let sys = ProfileSystem::new(p, order, 4)?;
    Ok(cef_from_system(&sys, x))
}

fn cef_from_system(sys: &ProfileSystem, x: Complex64) -> CefSeries {
    let y = x.conj();
    let c = |v: f64| Complex64::new(v, 0.0);
    let a = sys.a.to_complex();
    let g = sys.phi[1].to_complex();
    let p2 = sys.phi[2].to_complex();
    let p3 = sys.phi[3].to_complex();
    let p4 = sys.phi[4].to_complex();
    let h = sys.h.to_complex();
    let inv_1m = |t: Complex64| g.scale(-t).add_scalar(c(1.0)).inverse();
    let ix = inv_1m(x);
    let iy = inv_1m(y);
    let bx = a.mul(&ix);
    let by = a.mul(&iy);
    let bxby = bx.mul(&by);
    let bx2 = bx.square();
    let by2 = by.square();
    let d_of = |t: Complex64, b: &ComplexSeries, b2: &ComplexSeries| {
        p2.mul(b2)
            .scale(t * t)
            .add(&g.mul(b).scale(t * 2.0))
            .add(&a)
            .mul(&h)
    };
    let dx = d_of(x, &bx, &bx2);
    let dy = d_of(y, &by, &by2);
    let cc = p2.mul(&bxby).add(&bx).add(&by).sub(&a).mul(&h);
    let p2bxby = p2.mul(&bxby);
    // E(x,y): the sum over (1 − yG)
    let e_of = |s: Complex64,
                t: Complex64,
                ds: &ComplexSeries,
                bs: &ComplexSeries,
                bt: &ComplexSeries,
                bs2: &ComplexSeries,
                it: &ComplexSeries| {
        p2.mul(ds)
            .mul(bt)
            .scale(t)
            .add(&p2.mul(&cc).mul(bs).scale(s * 2.0))
            .add(&p3.mul(bs2).mul(bt).scale(s))
            .add(&g.mul(&cc).scale(c(2.0)))
            .add(&p2bxby.scale(c(2.0)))
            .add(&g.mul(bt).scale(t))
            .add(ds)
            .mul(it)
    };
    let e_xy = e_of(x, y, &dx, &bx, &by, &bx2, &iy);
    let e_yx = e_of(y, x, &dy, &by, &bx, &by2, &ix);
    let two = c(2.0);
    let four = c(4.0);
    let f = p2
        .mul(&dx)
        .mul(&dy)
        .add(&p2.mul(&e_xy).mul(&by).scale(two * y * y))
        .add(&p3.mul(&dx).mul(&by2).scale(y * y))
        .add(&g.mul(&e_xy).scale(two * y))
        .add(&p2.mul(&dx).mul(&by).scale(two * y))
        .add(&p2.mul(&e_yx).mul(&bx).scale(two * x * x))
        .add(&p3.mul(&bx2).mul(&dy).scale(x * x))
        .add(&p3.mul(&cc).mul(&bxby).scale(four))
        .add(&p2.mul(&cc.square()).scale(two))
        .add(&p4.mul(&bx2).mul(&by2))
        .add(&p2.mul(&cc).mul(&bx).scale(four * x))
        .add(&p3.mul(&bx2).mul(&by).scale(two * x))
        .add(&g.mul(&e_yx).scale(two * x))
        .add(&p2.mul(&dy).mul(&bx).scale(two * x))
        .add(&p2.mul(&cc).mul(&by).scale(four * y))
        .add(&p3.mul(&bx).mul(&by2).scale(two * y))
        .add(&g.mul(&cc).scale(four))
        .add(&p2bxby.scale(four))
        .add(&dx)
        .add(&dy)
        .sub(&a)
        .mul(&h);
    CefSeries {
        c: cc,
        e_xy,
        e_yx,
        f,
    }
}

/// Exact Fourier second moments at one frequency.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourierMoments {
    pub n: usize,
    pub xi: f64,
    /// `E|Σ_k L_n(k) e^{iξk}|²`.
    pub el2hat: f64,
    /// `E|Σ_k Λ_n(k) e^{iξk}|²`.
    pub elambda2hat: f64,
    /// Largest imaginary part seen; the exact values are real.
    pub imag_residual: f64,
}

/// Lattice Fourier second moments for every `ξ` in `xis` at size `n`.
pub fn exact_fourier_moments(
    p: &OffspringDistribution,
    n: usize,
    xis: &[f64],
) -> Result<Vec<FourierMoments>> {
    let sys = ProfileSystem::new(p, n, 4)?;
    let a_n = require_reachable(&sys.a, n)?;
    Ok(xis
        .iter()
        .map(|&xi| {
            let cef = cef_from_system(&sys, Complex64::from_polar(1.0, xi));
            let c = cef.c.coeff(n) / a_n;
            let f = cef.f.coeff(n) / a_n;
            FourierMoments {
                n,
                xi,
                el2hat: c.re,
                elambda2hat: f.re,
                imag_residual: (c.im.abs() / c.re.abs().max(1e-300))
                    .max(f.im.abs() / f.re.abs().max(1e-300)),
            }
        })
        .collect())
}

/// `P(S_m = j)` for `j = 0..=j_max`, where `S_m` is a sum of `m` i.i.d.
/// draws from `p`.
///
/// The bulk comes from the characteristic function `p̂^m` on an FFT grid
/// long enough to make aliasing negligible; the first coefficients are
/// recomputed from the truncated power `Φ(z)^m`, which keeps them
/// accurate far out in the lower tail.
pub fn sum_distribution(p: &OffspringDistribution, m: usize, j_max: usize) -> Vec<f64> {
    let probs = p.probs();
    if m == 0 {
        let mut v = vec![0.0; j_max + 1];
        v[0] = 1.0;
        return v;
    }
    let need = 2 * m.max(j_max) + probs.len() + 64;
    let len = need.next_power_of_two();
    let hat = fft::dft_real(probs, len);
    let pow: Vec<Complex64> = hat.into_iter().map(|c| c.powu(m as u32)).collect();
    let back = fft::idft(pow);
    let mut out: Vec<f64> = back
        .iter()
        .take(j_max + 1)
        .map(|c| c.re.max(0.0))
        .collect();
    out.resize(j_max + 1, 0.0);
    let small = j_max.min(96);
    let base = Series::from_coeffs(probs.iter().take(small + 1).copied().collect(), small);
    let exact = base.powi(m);
    for (j, o) in out.iter_mut().enumerate().take(small + 1) {
        *o = exact.coeff(j).max(0.0);
    }
    out
}

/// `P(|F_k| = n)` for a GW forest of `k` trees: `(k/n) P(S_n = n − k)`.
pub fn exact_dwass_size_prob(p: &OffspringDistribution, n: usize, k: usize) -> f64 {
    if k == 0 || k > n {
        return if k == 0 && n == 0 { 1.0 } else { 0.0 };
    }
    let s = sum_distribution(p, n, n - k);
    k as f64 / n as f64 * s[n - k]
}

/// Relative mismatch of two quantities that may both vanish.
fn rel(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

/// Total labelled-tree weights `b_n = Σ_T Π w_{d(v)}` for `n ≤ 7` by
/// enumeration (`b_1 = w_0`).
pub fn labelled_weight_totals(w: &WeightSequence, n_max: usize) -> Result<Vec<f64>> {
    let mut b = vec![0.0; n_max + 1];
    if n_max >= 1 {
        b[1] = w.coefficient(0);
    }
    for (n, bn) in b.iter_mut().enumerate().skip(2) {
        *bn = crate::oracle::enumerate_labelled(n)?
            .iter()
            .map(|t| t.degrees().iter().map(|&d| w.coefficient(d)).product::<f64>())
            .sum();
    }
    Ok(b)
}

/// Residual report of the unrooted identities `B' = Ψ(A)` and
/// `2zB' − 2B = A²`, with `B(z) = Σ b_n z^n / n!`.
#[derive(Clone, Debug, PartialEq)]
pub struct UnrootedGfCheck {
    pub order: usize,
    /// Coefficients of `B` through `order`.
    pub b: Vec<f64>,
    /// Largest relative residual of `B' = Ψ(A)`.
    pub residual_ba: f64,
    /// Largest relative residual of `2zB' − 2B = A²`.
    pub residual_baa: f64,
}

impl UnrootedGfCheck {
    pub fn max_residual(&self) -> f64 {
        self.residual_ba.max(self.residual_baa)
    }
}

/// Checks both unrooted identities through order `order`. `B` is seeded by
/// enumeration for `n ≤ 7` and extended by integrating `Ψ(A)`.
pub fn unrooted_gf_check(w: &WeightSequence, order: usize) -> Result<UnrootedGfCheck> {
    w.require_unrooted()?;
    let (phi, phi0) = crate::weights::unrooted_to_rooted(w)?;
    let n = order.max(1);
    let a = solve_fixed_point(&phi.family, n)?;
    let psi = compose_derivative(&phi0.family, 0, &a)?;
    let seeds = labelled_weight_totals(w, order.min(7))?;
    let mut b = vec![0.0; n + 1];
    for k in 1..=n {
        b[k] = if k < seeds.len() {
            seeds[k] / factorial(k)
        } else {
            psi.coeff(k - 1) / k as f64
        };
    }
    let a2 = a.square();
    let mut residual_ba: f64 = 0.0;
    let mut residual_baa: f64 = 0.0;
    for k in 0..=order {
        if k >= 1 {
            residual_ba = residual_ba.max(rel(k as f64 * b[k], psi.coeff(k - 1)));
        }
        let lhs = 2.0 * (k as f64 - 1.0) * b[k];
        residual_baa = residual_baa.max(rel(lhs, a2.coeff(k)));
    }
    b.truncate(order + 1);
    Ok(UnrootedGfCheck {
        order,
        b,
        residual_ba,
        residual_baa,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geo() -> OffspringDistribution {
        OffspringDistribution::geometric(0.5).unwrap()
    }

    fn binary() -> OffspringDistribution {
        OffspringDistribution::binary(0.5).unwrap()
    }

    #[test]
    fn size_law_geometric_and_binary() {
        let a = solve_A(&geo(), 6).unwrap();
        let want = [0.0, 0.5, 0.125, 0.0625, 0.0390625];
        for (k, w) in want.iter().enumerate() {
            assert!((a.coeff(k) - w).abs() < 1e-15, "k={k}");
        }
        let a = solve_A(&binary(), 4).unwrap();
        assert!((a.coeff(1) - 0.25).abs() < 1e-15);
        assert!((a.coeff(2) - 0.125).abs() < 1e-15);
        assert!((a.coeff(3) - 5.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn newton_matches_fft_regime() {
        // closed form 1 − √(1 − z) for the geometric law
        let a = solve_A(&geo(), 500).unwrap();
        let mut c = 0.5;
        for k in 1..=500 {
            assert!((a.coeff(k) - c).abs() <= 1e-10 * c, "k={k}");
            c *= (k as f64 - 0.5) / (k as f64 + 1.0);
        }
    }

    #[test]
    fn small_profile_moments() {
        let m = exact_profile_moments(&geo(), 3, None).unwrap();
        assert!((m.el[1] - 1.5).abs() < 1e-14);
        assert!((m.el[2] - 0.5).abs() < 1e-14);
        assert!((m.elambda[0] - 3.0).abs() < 1e-14);
        assert!((m.elambda[1] - 4.0).abs() < 1e-14);
        assert!((m.elambda[2] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn closed_form_d_rows_match_bivariate_product() {
        let p = binary();
        let (n, k) = (20, 12);
        let sys = ProfileSystem::new(&p, n, 2).unwrap();
        let b = b_rows(&sys, k);
        let g = BivariateSeries::from_z(sys.g(), k);
        let lhs = b
            .mul(&b)
            .mul_z(&sys.phi[2])
            .shift_x(2)
            .add(&g.mul(&b).shift_x(1).scale(2.0))
            .add(&BivariateSeries::from_z(&sys.a, k))
            .mul_z(&sys.h);
        let d = series_d(&p, n, k).unwrap();
        for kk in 0..=k {
            for nn in 0..=n {
                assert!((lhs.coeff(nn, kk) - d.coeff(nn, kk)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn row_sums_are_conserved() {
        for n in [5usize, 40, 300] {
            let m = exact_profile_moments(&binary(), n, None).unwrap();
            let sl: f64 = m.el.iter().sum();
            let sd: f64 = m.elambda.iter().sum();
            assert!((sl - n as f64).abs() < 1e-9 * n as f64);
            assert!((sd - (n * n) as f64).abs() < 1e-9 * (n * n) as f64);
        }
    }

    #[test]
    fn fourier_at_zero_frequency() {
        let n = 30;
        let f = exact_fourier_moments(&geo(), n, &[0.0]).unwrap();
        assert!((f[0].el2hat - (n * n) as f64).abs() < 1e-8 * (n * n) as f64);
        let n4 = (n as f64).powi(4);
        assert!((f[0].elambda2hat - n4).abs() < 1e-8 * n4);
    }

    #[test]
    fn dwass_small_cases() {
        let p = geo();
        let a = solve_A(&p, 10).unwrap();
        assert!((exact_dwass_size_prob(&p, 7, 1) - a.coeff(7)).abs() < 1e-15);
        assert!((exact_dwass_size_prob(&p, 6, 6) - 0.5f64.powi(6)).abs() < 1e-17);
        assert!((exact_dwass_size_prob(&p, 4, 2) - 5.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn dwass_matches_powers_of_a_in_fft_regime() {
        let p = OffspringDistribution::poisson(1.0).unwrap();
        let n = 400;
        let a = solve_A(&p, n).unwrap();
        let mut ak = a.clone();
        for k in 1..6 {
            let want = ak.coeff(n);
            let got = exact_dwass_size_prob(&p, n, k);
            assert!((got - want).abs() < 1e-12 * want.max(1e-3), "k={k}");
            ak = ak.mul(&a);
        }
    }

    #[test]
    fn fourier_moments_match_enumeration() {
        use crate::oracle::{exact_conditioned_law, exact_expectation};
        use crate::tree::{distance_profile_naive, height_profile};
        let hat = |c: &[u64], xi: f64| {
            let z: Complex64 = c
                .iter()
                .enumerate()
                .map(|(k, &x)| Complex64::from_polar(x as f64, xi * k as f64))
                .sum();
            z.norm_sqr()
        };
        for p in [geo(), binary()] {
            for n in 1..=7 {
                let ens = exact_conditioned_law(&p, n).unwrap();
                let got = exact_fourier_moments(&p, n, &[1.0, 2.5]).unwrap();
                for g in got {
                    let want = exact_expectation(&ens, |t| {
                        vec![
                            hat(&height_profile(t).counts, g.xi),
                            hat(&distance_profile_naive(t).counts, g.xi),
                        ]
                    });
                    assert!((g.el2hat - want[0]).abs() < 1e-10 * want[0], "n={n}");
                    assert!((g.elambda2hat - want[1]).abs() < 1e-10 * want[1], "n={n} {} {}", g.elambda2hat, want[1]);
                    assert!(g.imag_residual < 1e-10);
                }
            }
        }
    }
}
