//! Decay of the Fourier transforms of the scaled profiles.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::reference::{fourier_second_moment, fourier_tail, triangle_hat};
use super::stats::{fmt, EstimateWithError, Table};
use super::{default_weights, replicate, ExperimentOutput, Model, SamplerKind, ShapeSampler};
use crate::distprofile::distance_profile_fast;
use crate::error::{Error, Result};
use crate::genfun::exact_fourier_moments;
use crate::tree::height_profile;
use crate::weights::WeightSpec;

use super::profiles::{check_distance, check_height};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourierMode {
    Exact,
    Montecarlo,
    Both,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FourierDecayConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default = "FourierDecayConfig::default_mode")]
    pub mode: FourierMode,
    #[serde(default = "FourierDecayConfig::default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "FourierDecayConfig::default_xis")]
    pub xis: Vec<f64>,
    /// Allowed excess over the constant fitted on the smallest `n`.
    #[serde(default = "FourierDecayConfig::default_shape_slack")]
    pub shape_slack: f64,
    #[serde(default = "FourierDecayConfig::default_mc_n")]
    pub mc_n: usize,
    #[serde(default = "FourierDecayConfig::default_mc_xis")]
    pub mc_xis: Vec<f64>,
    #[serde(default = "FourierDecayConfig::default_mc_reps")]
    pub mc_reps: usize,
    #[serde(default = "FourierDecayConfig::default_z_tol")]
    pub z_tol: f64,
    #[serde(default = "FourierDecayConfig::default_scaled_n")]
    pub scaled_n: usize,
    #[serde(default = "FourierDecayConfig::default_scaled_etas")]
    pub scaled_etas: Vec<f64>,
    #[serde(default = "FourierDecayConfig::default_scaled_rel_tol")]
    pub scaled_rel_tol: f64,
}

impl FourierDecayConfig {
    fn default_mode() -> FourierMode {
        FourierMode::Both
    }
    fn default_ns() -> Vec<usize> {
        vec![64, 128, 256, 512, 1024]
    }
    fn default_xis() -> Vec<f64> {
        vec![0.5, 1.0, 2.0, 3.0, 4.0, 6.0, 8.0]
    }
    fn default_shape_slack() -> f64 {
        1.0
    }
    fn default_mc_n() -> usize {
        512
    }
    fn default_mc_xis() -> Vec<f64> {
        vec![2.0]
    }
    fn default_mc_reps() -> usize {
        4_000
    }
    fn default_z_tol() -> f64 {
        3.0
    }
    fn default_scaled_n() -> usize {
        2048
    }
    fn default_scaled_etas() -> Vec<f64> {
        vec![4.0, 5.0, 6.0, 7.0, 8.0]
    }
    fn default_scaled_rel_tol() -> f64 {
        0.25
    }
}

/// Exact normalized transforms at `(n, ξ)`, lattice frequency `ξ/√n`, with
/// the triangle factor applied.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct FourierExactRow {
    pub n: usize,
    pub xi: f64,
    /// `E|Λ̂_n|² / n⁴`.
    pub lambda: f64,
    /// `E|L̂_n|² / n²`.
    pub height: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourierMcRow {
    pub n: usize,
    pub xi: f64,
    pub lambda: EstimateWithError,
    pub height: EstimateWithError,
    pub exact_lambda: f64,
    pub exact_height: f64,
}

impl FourierMcRow {
    pub fn max_abs_z(&self) -> f64 {
        self.lambda
            .z_score(self.exact_lambda)
            .abs()
            .max(self.height.z_score(self.exact_height).abs())
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScaledRow {
    pub eta: f64,
    /// `η⁴ E|Γ̂_n(η)|²`, to be compared with 48.
    pub normalized: f64,
    /// `η⁴ E|Γ̂(η)|²` of the limit.
    pub limit: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FourierDecayReport {
    pub exact: Vec<FourierExactRow>,
    /// Constants fitted on the smallest `n`: `(C_Λ, C_L)`.
    pub fitted: Option<(f64, f64)>,
    /// Largest shape ratio seen over the whole grid: `(Λ, L)`.
    pub worst_shape: Option<(f64, f64)>,
    pub montecarlo: Vec<FourierMcRow>,
    pub scaled: Vec<ScaledRow>,
    pub shape_slack: f64,
    pub z_tol: f64,
    pub scaled_rel_tol: f64,
}

fn lambda_shape(xi: f64) -> f64 {
    xi.powi(-4).min(1.0)
}

fn height_shape(xi: f64) -> f64 {
    xi.powi(-2).min(1.0)
}

impl FourierDecayReport {
    pub fn shape_passes(&self) -> bool {
        match (self.fitted, self.worst_shape) {
            (Some(f), Some(w)) => {
                let k = 1.0 + self.shape_slack;
                w.0 <= k * f.0 * (1.0 + 1e-12) && w.1 <= k * f.1 * (1.0 + 1e-12)
            }
            _ => true,
        }
    }

    pub fn montecarlo_passes(&self) -> bool {
        self.montecarlo.iter().all(|r| r.max_abs_z() <= self.z_tol)
    }

    pub fn scaled_passes(&self) -> bool {
        self.scaled
            .iter()
            .all(|r| (r.normalized - 48.0).abs() <= self.scaled_rel_tol * 48.0)
    }

    pub fn passes(&self) -> bool {
        self.shape_passes() && self.montecarlo_passes() && self.scaled_passes()
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["kind", "n", "xi", "lambda", "lambda_stderr", "height", "height_stderr"]);
        for r in &self.exact {
            t.push(vec!["exact".into(), r.n.to_string(), fmt(r.xi), fmt(r.lambda), "0".into(), fmt(r.height), "0".into()]);
        }
        for r in &self.montecarlo {
            t.push(vec![
                "montecarlo".into(),
                r.n.to_string(),
                fmt(r.xi),
                fmt(r.lambda.value),
                fmt(r.lambda.stderr),
                fmt(r.height.value),
                fmt(r.height.stderr),
            ]);
        }
        let mut rt = Table::new(&["eta", "eta4_times_value", "eta4_times_limit", "tail_constant"]);
        for r in &self.scaled {
            rt.push(vec![
                fmt(r.eta),
                fmt(r.normalized),
                fmt(r.limit),
                fmt(fourier_tail(r.eta) * r.eta.powi(4)),
            ]);
        }
        ExperimentOutput {
            name: "fourier_decay".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "shape_pass": self.shape_passes(),
                "montecarlo_pass": self.montecarlo_passes(),
                "scaled_pass": self.scaled_passes(),
                "fitted": self.fitted,
                "worst_shape": self.worst_shape,
            }),
        }
    }
}

fn exact_rows(model: &Model, n: usize, xis: &[f64]) -> Result<Vec<FourierExactRow>> {
    let sn = (n as f64).sqrt();
    let ts: Vec<f64> = xis.iter().map(|x| x / sn).collect();
    let nf = n as f64;
    Ok(exact_fourier_moments(&model.p, n, &ts)?
        .into_iter()
        .zip(xis)
        .map(|(m, &xi)| {
            let tri = triangle_hat(m.xi).powi(2);
            FourierExactRow {
                n,
                xi,
                lambda: tri * m.elambda2hat / nf.powi(4),
                height: tri * m.el2hat / (nf * nf),
            }
        })
        .collect())
}

/// `|Σ_k c_k e^{itk}|²`.
fn lattice_power(counts: &[u64], t: f64) -> f64 {
    let step = Complex64::from_polar(1.0, t);
    let mut z = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    for &c in counts {
        s += z * c as f64;
        z *= step;
    }
    s.norm_sqr()
}

/// Exact and Monte Carlo Fourier second moments with bound-shape and
/// scaled-limit checks.
pub fn exp_fourier_decay(c: &FourierDecayConfig, seed: u64) -> Result<FourierDecayReport> {
    let model = Model::from_specs(&c.weights, None)?;
    if !model.p.has_moment(4) {
        return Err(Error::invalid_arg("weights", "a finite fourth moment is required"));
    }
    let mut exact = Vec::new();
    let mut fitted = None;
    let mut worst_shape = None;
    if c.mode != FourierMode::Montecarlo {
        if c.ns.is_empty() || c.xis.is_empty() {
            return Err(Error::invalid_arg("ns", "empty grid"));
        }
        for &n in &c.ns {
            exact.extend(exact_rows(&model, n, &c.xis)?);
        }
        let ratio = |r: &FourierExactRow| (r.lambda / lambda_shape(r.xi), r.height / height_shape(r.xi));
        let n0 = c.ns[0];
        let mut f = (0.0f64, 0.0f64);
        let mut w = (0.0f64, 0.0f64);
        for r in &exact {
            let (a, b) = ratio(r);
            if r.n == n0 {
                f = (f.0.max(a), f.1.max(b));
            }
            w = (w.0.max(a), w.1.max(b));
        }
        fitted = Some(f);
        worst_shape = Some(w);
    }
    let mut montecarlo = Vec::new();
    if c.mode != FourierMode::Exact && !c.mc_xis.is_empty() {
        let n = c.mc_n;
        let ex = exact_rows(&model, n, &c.mc_xis)?;
        let sampler = ShapeSampler::new(&model, SamplerKind::Rooted, n)?;
        let sn = (n as f64).sqrt();
        let nf = n as f64;
        let per_rep = replicate(seed, 0, c.mc_reps, |rng| {
            let t = sampler.sample(rng)?;
            let l = height_profile(&t);
            check_height(&l, n)?;
            let d = distance_profile_fast(&t);
            check_distance(&d, n)?;
            Ok(c.mc_xis
                .iter()
                .map(|xi| {
                    let t = xi / sn;
                    let tri = triangle_hat(t).powi(2);
                    (
                        tri * lattice_power(&d.counts, t) / nf.powi(4),
                        tri * lattice_power(&l.counts, t) / (nf * nf),
                    )
                })
                .collect::<Vec<_>>())
        })?;
        for (k, e) in ex.iter().enumerate() {
            let a: Vec<f64> = per_rep.iter().map(|v| v[k].0).collect();
            let b: Vec<f64> = per_rep.iter().map(|v| v[k].1).collect();
            montecarlo.push(FourierMcRow {
                n,
                xi: e.xi,
                lambda: EstimateWithError::from_samples(&a, seed)?,
                height: EstimateWithError::from_samples(&b, seed)?,
                exact_lambda: e.lambda,
                exact_height: e.height,
            });
        }
    }
    let mut scaled = Vec::new();
    if c.mode != FourierMode::Montecarlo && !c.scaled_etas.is_empty() {
        // n^{-2} Λ̂_n(ξ/√n) → Γ̂(2ξ/σ), so η corresponds to ξ = ησ/2
        let sigma = model.sigma();
        let xis: Vec<f64> = c.scaled_etas.iter().map(|e| e * sigma / 2.0).collect();
        for (r, &eta) in exact_rows(&model, c.scaled_n, &xis)?.iter().zip(&c.scaled_etas) {
            scaled.push(ScaledRow {
                eta,
                normalized: eta.powi(4) * r.lambda,
                limit: eta.powi(4) * fourier_second_moment(eta),
            });
        }
    }
    Ok(FourierDecayReport {
        exact,
        fitted,
        worst_shape,
        montecarlo,
        scaled,
        shape_slack: c.shape_slack,
        z_tol: c.z_tol,
        scaled_rel_tol: c.scaled_rel_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_power_at_zero_is_squared_total() {
        assert_eq!(lattice_power(&[4, 6, 4, 2], 0.0), 256.0);
    }

    #[test]
    fn exact_at_zero_frequency_is_one() {
        let model = Model::from_specs(&default_weights(), None).unwrap();
        let rows = exact_rows(&model, 64, &[0.0]).unwrap();
        assert!((rows[0].lambda - 1.0).abs() < 1e-10);
        assert!((rows[0].height - 1.0).abs() < 1e-10);
    }
}
