//! Experiments on height and distance profiles and their functionals.

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::reference;
use super::stats::{bootstrap_ratio, fmt, BinnedDensity, EstimateWithError, Normalization, Table};
use super::{default_weights, replicate, ExperimentOutput, Model, SamplerKind, ShapeSampler};
use crate::distprofile::distance_profile_fast;
use crate::error::{Error, Result};
use crate::tree::{height_profile, wiener_from_sizes, DistanceProfileCounts, ProfileCounts};
use crate::weights::WeightSpec;

/// Unrooted weights whose critical pair is `(geometric(1/2), logarithmic)`.
pub(crate) fn default_unrooted_weights() -> WeightSpec {
    WeightSpec::from_json(r#"{"kind":"factorial_unrooted","params":{"scale":1.0,"ratio":0.5,"shift":1}}"#)
        .expect("static spec")
}

pub(crate) fn check_height(l: &ProfileCounts, n: usize) -> Result<()> {
    if l.total() != n as u64 || l.counts[0] != 1 {
        return Err(Error::Numerical(format!(
            "height profile conservation failed: sum {} for n = {n}",
            l.total()
        )));
    }
    Ok(())
}

pub(crate) fn check_distance(d: &DistanceProfileCounts, n: usize) -> Result<()> {
    let n = n as u64;
    if d.total() != n * n || d.counts[0] != n {
        return Err(Error::Numerical(format!(
            "distance profile conservation failed: sum {}, Λ(0) = {} for n = {n}",
            d.total(),
            d.counts[0]
        )));
    }
    Ok(())
}

fn default_delta() -> f64 {
    0.1
}

/// Gate applied to binned mean curves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinGate {
    /// Bins whose reference value is below this are reported, not gated.
    pub min_reference: f64,
    pub k_stderr: f64,
    pub rel_tol: f64,
}

impl Default for BinGate {
    fn default() -> Self {
        Self {
            min_reference: 0.05,
            k_stderr: 4.0,
            rel_tol: 0.05,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BinEstimate {
    pub x0: f64,
    pub x1: f64,
    pub estimate: EstimateWithError,
    pub reference: f64,
}

impl BinEstimate {
    pub fn z(&self) -> f64 {
        self.estimate.z_score(self.reference)
    }

    /// `|est − ref| ≤ max(k·stderr, rel·ref)`.
    pub fn within(&self, g: &BinGate) -> bool {
        let d = (self.estimate.value - self.reference).abs();
        d <= (g.k_stderr * self.estimate.stderr).max(g.rel_tol * self.reference)
    }
}

/// Binned Monte Carlo mean of a scaled profile against the limit curve.
#[derive(Clone, Debug, Serialize)]
pub struct BinnedMeanReport {
    pub statistic: String,
    pub sampler: SamplerKind,
    pub n: usize,
    pub reps: usize,
    pub sigma: f64,
    pub gate: BinGate,
    pub bins: Vec<BinEstimate>,
    /// First-bin average divided by its midpoint, against `σ²`.
    pub small_x_slope: f64,
}

impl BinnedMeanReport {
    pub fn gated(&self) -> impl Iterator<Item = (usize, &BinEstimate)> {
        self.bins
            .iter()
            .enumerate()
            .filter(|(_, b)| b.reference >= self.gate.min_reference)
    }

    /// Indices of gated bins outside tolerance.
    pub fn failures(&self) -> Vec<usize> {
        self.gated()
            .filter(|(_, b)| !b.within(&self.gate))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn passes(&self) -> bool {
        self.failures().is_empty()
    }

    fn push_rows(&self, t: &mut Table) {
        for b in &self.bins {
            t.push(vec![
                self.statistic.clone(),
                format!("{:?}", self.sampler).to_lowercase(),
                self.n.to_string(),
                fmt(b.x0),
                fmt(b.x1),
                fmt(b.estimate.value),
                fmt(b.estimate.stderr),
                fmt(b.reference),
                fmt(b.z()),
                (b.reference >= self.gate.min_reference).to_string(),
                b.within(&self.gate).to_string(),
            ]);
        }
    }

    fn header() -> Table {
        Table::new(&[
            "statistic", "sampler", "n", "x0", "x1", "mean", "stderr", "reference", "z", "gated",
            "within",
        ])
    }

    fn reference_table(&self) -> Table {
        let mut t = Table::new(&["x0", "x1", "reference"]);
        for b in &self.bins {
            t.push(vec![fmt(b.x0), fmt(b.x1), fmt(b.reference)]);
        }
        t
    }

    fn summary(&self) -> serde_json::Value {
        json!({
            "sampler": self.sampler,
            "n": self.n,
            "reps": self.reps,
            "pass": self.passes(),
            "failed_bins": self.failures(),
            "max_abs_z": self.gated().map(|(_, b)| b.z().abs()).fold(0.0, f64::max),
            "small_x_slope": self.small_x_slope,
            "slope_reference": self.sigma * self.sigma,
        })
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Self::header();
        self.push_rows(&mut t);
        ExperimentOutput {
            name: self.statistic.clone(),
            results: t,
            reference: self.reference_table(),
            summary: self.summary(),
        }
    }
}

fn bins_for(sigma: f64, delta: f64, x_max: Option<f64>) -> usize {
    // the limit density is below 1e-7 beyond u = 3
    let x_max = x_max.unwrap_or(6.0 / sigma);
    (x_max / delta).ceil() as usize
}

fn binned_report(
    statistic: &str,
    sampler: SamplerKind,
    n: usize,
    sigma: f64,
    delta: f64,
    per_rep: &[Vec<f64>],
    seed: u64,
) -> Result<BinnedMeanReport> {
    let nb = per_rep[0].len();
    let mut bins = Vec::with_capacity(nb);
    for j in 0..nb {
        let xs: Vec<f64> = per_rep.iter().map(|v| v[j]).collect();
        let (x0, x1) = (j as f64 * delta, (j + 1) as f64 * delta);
        bins.push(BinEstimate {
            x0,
            x1,
            estimate: EstimateWithError::from_samples(&xs, seed)?,
            reference: reference::profile_bin_average(x0, x1, sigma),
        });
    }
    let small_x_slope = bins[0].estimate.value / (0.5 * delta);
    Ok(BinnedMeanReport {
        statistic: statistic.to_string(),
        sampler,
        n,
        reps: per_rep.len(),
        sigma,
        gate: BinGate::default(),
        bins,
        small_x_slope,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileMeanConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "ProfileMeanConfig::default_sampler")]
    pub sampler: SamplerKind,
    #[serde(default = "ProfileMeanConfig::default_n")]
    pub n: usize,
    #[serde(default = "ProfileMeanConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub x_max: Option<f64>,
}

impl ProfileMeanConfig {
    fn default_sampler() -> SamplerKind {
        SamplerKind::Rooted
    }
    fn default_n() -> usize {
        10_000
    }
    fn default_reps() -> usize {
        20_000
    }
}

/// Binned mean of `x ↦ n^{-1/2} L_n(x n^{1/2})`.
pub fn exp_profile_mean(c: &ProfileMeanConfig, seed: u64) -> Result<BinnedMeanReport> {
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let sigma = model.sigma();
    let sampler = ShapeSampler::new(&model, c.sampler, c.n)?;
    let nb = bins_for(sigma, c.delta, c.x_max);
    let sn = (c.n as f64).sqrt();
    let per_rep = replicate(seed, 0, c.reps, |rng| {
        let t = sampler.sample(rng)?;
        let l = height_profile(&t);
        check_height(&l, c.n)?;
        let b = BinnedDensity::from_profile(&l.counts, sn, sn, 0.0, c.delta, nb, Normalization::Density);
        Ok(b.mass)
    })?;
    binned_report("profile_mean", c.sampler, c.n, sigma, c.delta, &per_rep, seed)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceProfileMeanConfig {
    #[serde(default = "default_unrooted_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "DistanceProfileMeanConfig::default_samplers")]
    pub samplers: Vec<SamplerKind>,
    #[serde(default = "ProfileMeanConfig::default_n")]
    pub n: usize,
    #[serde(default = "ProfileMeanConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub x_max: Option<f64>,
}

impl DistanceProfileMeanConfig {
    fn default_samplers() -> Vec<SamplerKind> {
        vec![SamplerKind::Rooted, SamplerKind::Unrooted, SamplerKind::Modified]
    }
}

/// One binned curve per sampler plus the largest pairwise binwise
/// `|difference| / joint stderr`.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceProfileReport {
    pub curves: Vec<BinnedMeanReport>,
    pub pair_max_z: Vec<(SamplerKind, SamplerKind, f64)>,
}

impl DistanceProfileReport {
    pub fn passes(&self) -> bool {
        self.curves.iter().all(|c| c.passes())
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = BinnedMeanReport::header();
        for c in &self.curves {
            c.push_rows(&mut t);
        }
        ExperimentOutput {
            name: "distance_profile_mean".into(),
            results: t,
            reference: self.curves[0].reference_table(),
            summary: json!({
                "pass": self.passes(),
                "curves": self.curves.iter().map(|c| c.summary()).collect::<Vec<_>>(),
                "pair_max_z": self.pair_max_z,
            }),
        }
    }
}

/// Binned mean of `x ↦ n^{-3/2} Λ_n(x n^{1/2})` for each sampler.
pub fn exp_distance_profile_mean(c: &DistanceProfileMeanConfig, seed: u64) -> Result<DistanceProfileReport> {
    if c.samplers.is_empty() {
        return Err(Error::invalid_arg("samplers", "at least one sampler is needed"));
    }
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let sigma = model.sigma();
    let nb = bins_for(sigma, c.delta, c.x_max);
    let sn = (c.n as f64).sqrt();
    let mut curves = Vec::new();
    for (g, &kind) in c.samplers.iter().enumerate() {
        let sampler = ShapeSampler::new(&model, kind, c.n)?;
        let per_rep = replicate(seed, g, c.reps, |rng| {
            let t = sampler.sample(rng)?;
            let d = distance_profile_fast(&t);
            check_distance(&d, c.n)?;
            let b = BinnedDensity::from_profile(&d.counts, sn, sn * c.n as f64, 0.0, c.delta, nb, Normalization::Density);
            Ok(b.mass)
        })?;
        curves.push(binned_report("distance_profile_mean", kind, c.n, sigma, c.delta, &per_rep, seed)?);
    }
    let mut pair_max_z = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let z = curves[i]
                .bins
                .iter()
                .zip(&curves[j].bins)
                .filter(|(a, _)| a.reference >= curves[i].gate.min_reference)
                .map(|(a, b)| {
                    let se = a.estimate.stderr.hypot(b.estimate.stderr);
                    (a.estimate.value - b.estimate.value).abs() / se
                })
                .fold(0.0, f64::max);
            pair_max_z.push((curves[i].sampler, curves[j].sampler, z));
        }
    }
    Ok(DistanceProfileReport { curves, pair_max_z })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WidthConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "ProfileMeanConfig::default_sampler")]
    pub sampler: SamplerKind,
    #[serde(default = "WidthConfig::default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "WidthConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "WidthConfig::default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "WidthConfig::default_max_ratio")]
    pub max_ratio: f64,
}

impl WidthConfig {
    fn default_ns() -> Vec<usize> {
        vec![1_000, 10_000, 100_000]
    }
    fn default_reps() -> usize {
        10_000
    }
    fn default_rel_tol() -> f64 {
        0.05
    }
    fn default_max_ratio() -> f64 {
        1.5
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthRow {
    pub n: usize,
    /// `n^{-1/2} W`.
    pub mean: EstimateWithError,
    /// `n^{-1} W²`.
    pub second: EstimateWithError,
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub sampler: SamplerKind,
    pub reference: f64,
    pub rows: Vec<WidthRow>,
    pub rel_tol: f64,
    pub max_ratio: f64,
}

impl WidthReport {
    /// Relative error of the mean at the largest size.
    pub fn rel_error(&self) -> f64 {
        self.rows.last().expect("non-empty grid").mean.rel_error(self.reference)
    }

    /// max/min of `n^{-1} E W²` across the grid.
    pub fn second_moment_ratio(&self) -> f64 {
        let v: Vec<f64> = self.rows.iter().map(|r| r.second.value).collect();
        v.iter().cloned().fold(f64::MIN, f64::max) / v.iter().cloned().fold(f64::MAX, f64::min)
    }

    pub fn passes(&self) -> bool {
        self.rel_error() <= self.rel_tol && self.second_moment_ratio() <= self.max_ratio
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["n", "mean_w", "stderr_w", "mean_w2", "stderr_w2", "reference_w"]);
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                fmt(r.mean.value),
                fmt(r.mean.stderr),
                fmt(r.second.value),
                fmt(r.second.stderr),
                fmt(self.reference),
            ]);
        }
        let mut rt = Table::new(&["quantity", "value"]);
        rt.push(vec!["sigma_sqrt_pi_over_2".into(), fmt(self.reference)]);
        ExperimentOutput {
            name: "width".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "rel_error": self.rel_error(),
                "second_moment_ratio": self.second_moment_ratio(),
            }),
        }
    }
}

/// `n^{-1/2} E W` and `n^{-1} E W²` over a grid of sizes.
pub fn exp_width(c: &WidthConfig, seed: u64) -> Result<WidthReport> {
    if c.ns.is_empty() {
        return Err(Error::invalid_arg("ns", "empty size grid"));
    }
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let mut rows = Vec::new();
    for (g, &n) in c.ns.iter().enumerate() {
        let sampler = ShapeSampler::new(&model, c.sampler, n)?;
        let w = replicate(seed, g, c.reps, |rng| {
            let t = sampler.sample(rng)?;
            let l = height_profile(&t);
            check_height(&l, n)?;
            Ok(l.width() as f64)
        })?;
        let sn = (n as f64).sqrt();
        let a: Vec<f64> = w.iter().map(|x| x / sn).collect();
        let b: Vec<f64> = w.iter().map(|x| x * x / n as f64).collect();
        rows.push(WidthRow {
            n,
            mean: EstimateWithError::from_samples(&a, seed)?,
            second: EstimateWithError::from_samples(&b, seed)?,
        });
    }
    Ok(WidthReport {
        sampler: c.sampler,
        reference: reference::width_mean(model.sigma()),
        rows,
        rel_tol: c.rel_tol,
        max_ratio: c.max_ratio,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WienerConfig {
    #[serde(default = "default_unrooted_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "WienerConfig::default_sampler")]
    pub sampler: SamplerKind,
    #[serde(default = "WienerConfig::default_n")]
    pub n: usize,
    #[serde(default = "WidthConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "WidthConfig::default_rel_tol")]
    pub rel_tol: f64,
}

impl WienerConfig {
    fn default_sampler() -> SamplerKind {
        SamplerKind::Unrooted
    }
    fn default_n() -> usize {
        100_000
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WienerReport {
    pub sampler: SamplerKind,
    pub n: usize,
    /// `n^{-5/2} Wiener`.
    pub estimate: EstimateWithError,
    pub reference: f64,
    pub rel_tol: f64,
}

impl WienerReport {
    pub fn passes(&self) -> bool {
        self.estimate.rel_error(self.reference) <= self.rel_tol
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["n", "mean", "stderr", "reference", "rel_error", "z"]);
        t.push(vec![
            self.n.to_string(),
            fmt(self.estimate.value),
            fmt(self.estimate.stderr),
            fmt(self.reference),
            fmt(self.estimate.rel_error(self.reference)),
            fmt(self.estimate.z_score(self.reference)),
        ]);
        let mut rt = Table::new(&["quantity", "value"]);
        rt.push(vec!["wiener_limit".into(), fmt(self.reference)]);
        ExperimentOutput {
            name: "wiener".into(),
            results: t,
            reference: rt,
            summary: json!({"pass": self.passes(), "rel_error": self.estimate.rel_error(self.reference)}),
        }
    }
}

/// `n^{-5/2} E Wiener(T_n)`; the index is computed from subtree sizes.
pub fn exp_wiener(c: &WienerConfig, seed: u64) -> Result<WienerReport> {
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let sampler = ShapeSampler::new(&model, c.sampler, c.n)?;
    let scale = (c.n as f64).powf(2.5);
    let xs = replicate(seed, 0, c.reps, |rng| {
        let t = sampler.sample(rng)?;
        if t.len() != c.n {
            return Err(Error::Numerical(format!("sampled size {} ≠ {}", t.len(), c.n)));
        }
        Ok(wiener_from_sizes(&t) as f64 / scale)
    })?;
    Ok(WienerReport {
        sampler: c.sampler,
        n: c.n,
        estimate: EstimateWithError::from_samples(&xs, seed)?,
        reference: reference::wiener_limit(model.sigma()),
        rel_tol: c.rel_tol,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentBoundsConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "ProfileMeanConfig::default_sampler")]
    pub sampler: SamplerKind,
    #[serde(default = "MomentBoundsConfig::default_rs")]
    pub rs: Vec<u32>,
    #[serde(default = "MomentBoundsConfig::default_ns")]
    pub ns: Vec<usize>,
    /// Distances probed are `i = round(m √n)` for each multiplier `m`.
    #[serde(default = "MomentBoundsConfig::default_multipliers")]
    pub multipliers: Vec<f64>,
    #[serde(default = "MomentBoundsConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "MomentBoundsConfig::default_max_ratio")]
    pub max_ratio: f64,
}

impl MomentBoundsConfig {
    fn default_rs() -> Vec<u32> {
        vec![1, 2]
    }
    fn default_ns() -> Vec<usize> {
        vec![256, 1024, 4096]
    }
    fn default_multipliers() -> Vec<f64> {
        (1..=8).map(|m| m as f64).collect()
    }
    fn default_reps() -> usize {
        4_000
    }
    fn default_max_ratio() -> f64 {
        2.0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentRow {
    pub r: u32,
    pub n: usize,
    pub i: usize,
    /// `E Λ_n(i)^r`.
    pub lambda: EstimateWithError,
    /// `E L_n(i)^r`.
    pub height: EstimateWithError,
}

/// Sup-ratios per `(r, n)`.
#[derive(Clone, Debug, Serialize)]
pub struct MomentSup {
    pub r: u32,
    pub n: usize,
    /// `sup_i E Λ(i)^r / (i^r n^r)`.
    pub poly: f64,
    /// `sup_i E Λ(i)^r / (n^{3r/2} e^{-ĉ i²/n})`.
    pub gauss: f64,
    /// `sup_i E L(i)^r / (i^r)`.
    pub height_poly: f64,
    /// `sup_i E L(i)^r / (n^{r/2} e^{-ĉ_L i²/n})`.
    pub height_gauss: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct MomentBoundsReport {
    pub rows: Vec<MomentRow>,
    /// Fitted decay rates per `r` for `Λ` and `L`, from the smallest `n`.
    pub c_hat: Vec<(u32, f64, f64)>,
    pub sups: Vec<MomentSup>,
    pub max_ratio: f64,
}

impl MomentBoundsReport {
    /// max/min across `n` of each sup, per `r`: `(r, poly, gauss)`.
    pub fn stability(&self) -> Vec<(u32, f64, f64)> {
        let mut out = Vec::new();
        for &(r, _, _) in &self.c_hat {
            let s: Vec<&MomentSup> = self.sups.iter().filter(|s| s.r == r).collect();
            let ratio = |f: &dyn Fn(&MomentSup) -> f64| {
                let v: Vec<f64> = s.iter().map(|x| f(x)).collect();
                v.iter().cloned().fold(f64::MIN, f64::max) / v.iter().cloned().fold(f64::MAX, f64::min)
            };
            out.push((r, ratio(&|x| x.poly), ratio(&|x| x.gauss)));
        }
        out
    }

    pub fn passes(&self) -> bool {
        self.sups.iter().all(|s| s.poly.is_finite() && s.gauss.is_finite() && s.poly > 0.0 && s.gauss > 0.0)
            && self
                .stability()
                .iter()
                .all(|&(_, a, b)| a <= self.max_ratio && b <= self.max_ratio)
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["r", "n", "i", "e_lambda_r", "stderr_lambda", "e_l_r", "stderr_l"]);
        for r in &self.rows {
            t.push(vec![
                r.r.to_string(),
                r.n.to_string(),
                r.i.to_string(),
                fmt(r.lambda.value),
                fmt(r.lambda.stderr),
                fmt(r.height.value),
                fmt(r.height.stderr),
            ]);
        }
        let mut rt = Table::new(&["r", "n", "sup_poly", "sup_gauss", "sup_height_poly", "sup_height_gauss"]);
        for s in &self.sups {
            rt.push(vec![
                s.r.to_string(),
                s.n.to_string(),
                fmt(s.poly),
                fmt(s.gauss),
                fmt(s.height_poly),
                fmt(s.height_gauss),
            ]);
        }
        ExperimentOutput {
            name: "moment_bounds".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "c_hat": self.c_hat,
                "stability": self.stability(),
            }),
        }
    }
}

/// Half the least-squares decay rate of `log y` against `t`, using only
/// entries with a positive estimate and relative stderr below 1/2.
fn fit_gauss_rate(points: &[(f64, &EstimateWithError)]) -> f64 {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, e)| e.value > 0.0 && e.stderr < 0.5 * e.value)
        .map(|(t, e)| (*t, e.value.ln()))
        .collect();
    if pts.len() < 2 {
        return 0.0;
    }
    let m = pts.len() as f64;
    let tx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let ty = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - tx) * (p.1 - ty)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - tx) * (p.0 - tx)).sum();
    (-0.5 * sxy / sxx).max(0.0)
}

/// Moments `E Λ_n(i)^r`, `E L_n(i)^r` on a grid, with the sup-ratios of the
/// polynomial and Gaussian bounds. The Gaussian rate is fitted once on the
/// smallest `n` and reused for the others.
pub fn exp_moment_bounds(c: &MomentBoundsConfig, seed: u64) -> Result<MomentBoundsReport> {
    if c.ns.is_empty() || c.rs.is_empty() || c.multipliers.is_empty() {
        return Err(Error::invalid_arg("ns", "empty grid"));
    }
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let mut rows = Vec::new();
    for (g, &n) in c.ns.iter().enumerate() {
        let sampler = ShapeSampler::new(&model, c.sampler, n)?;
        let is: Vec<usize> = c
            .multipliers
            .iter()
            .map(|m| ((m * (n as f64).sqrt()).round() as usize).max(1))
            .collect();
        let per_rep = replicate(seed, g, c.reps, |rng| {
            let t = sampler.sample(rng)?;
            let l = height_profile(&t);
            check_height(&l, n)?;
            let d = distance_profile_fast(&t);
            check_distance(&d, n)?;
            let at = |v: &[u64], i: usize| v.get(i).copied().unwrap_or(0) as f64;
            Ok(is.iter().map(|&i| (at(&d.counts, i), at(&l.counts, i))).collect::<Vec<_>>())
        })?;
        for &r in &c.rs {
            for (k, &i) in is.iter().enumerate() {
                let lam: Vec<f64> = per_rep.iter().map(|v| v[k].0.powi(r as i32)).collect();
                let hl: Vec<f64> = per_rep.iter().map(|v| v[k].1.powi(r as i32)).collect();
                rows.push(MomentRow {
                    r,
                    n,
                    i,
                    lambda: EstimateWithError::from_samples(&lam, seed)?,
                    height: EstimateWithError::from_samples(&hl, seed)?,
                });
            }
        }
    }
    let n0 = c.ns[0];
    let mut c_hat = Vec::new();
    for &r in &c.rs {
        let sel: Vec<&MomentRow> = rows.iter().filter(|x| x.r == r && x.n == n0).collect();
        let nf = n0 as f64;
        let lam: Vec<(f64, &EstimateWithError)> =
            sel.iter().map(|x| ((x.i * x.i) as f64 / nf, &x.lambda)).collect();
        let hl: Vec<(f64, &EstimateWithError)> =
            sel.iter().map(|x| ((x.i * x.i) as f64 / nf, &x.height)).collect();
        c_hat.push((r, fit_gauss_rate(&lam), fit_gauss_rate(&hl)));
    }
    let mut sups = Vec::new();
    for &(r, cl, ch) in &c_hat {
        for &n in &c.ns {
            let nf = n as f64;
            let rf = r as f64;
            let mut s = MomentSup { r, n, poly: 0.0, gauss: 0.0, height_poly: 0.0, height_gauss: 0.0 };
            for x in rows.iter().filter(|x| x.r == r && x.n == n) {
                let i = x.i as f64;
                let t = i * i / nf;
                s.poly = s.poly.max(x.lambda.value / (i.powf(rf) * nf.powf(rf)));
                s.gauss = s.gauss.max(x.lambda.value / (nf.powf(1.5 * rf) * (-cl * t).exp()));
                s.height_poly = s.height_poly.max(x.height.value / i.powf(rf));
                s.height_gauss = s.height_gauss.max(x.height.value / (nf.powf(0.5 * rf) * (-ch * t).exp()));
            }
            sups.push(s);
        }
    }
    Ok(MomentBoundsReport { rows, c_hat, sups, max_ratio: c.max_ratio })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HolderConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default)]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "ProfileMeanConfig::default_sampler")]
    pub sampler: SamplerKind,
    #[serde(default = "HolderConfig::default_alpha")]
    pub alpha: f64,
    #[serde(default = "WidthConfig::default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "HolderConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "WidthConfig::default_max_ratio")]
    pub max_ratio: f64,
    #[serde(default = "HolderConfig::default_resamples")]
    pub bootstrap_resamples: usize,
}

impl HolderConfig {
    fn default_alpha() -> f64 {
        0.9
    }
    fn default_reps() -> usize {
        400
    }
    fn default_resamples() -> usize {
        1_000
    }
}

/// Squared Hölder seminorm of `x ↦ f(x)`, `f(k/√n) = n^{-3/2} Λ(k)`,
/// extended by zero; for a piecewise linear function the supremum is
/// attained at lattice points.
pub fn holder_seminorm_sq(counts: &[u64], n: usize, alpha: f64) -> f64 {
    let nf = n as f64;
    let scale = nf.powf(-1.5);
    let mut f: Vec<f64> = counts.iter().map(|&c| c as f64 * scale).collect();
    f.push(0.0);
    // |x_k − x_j|^{2α} = ((k − j)/√n)^{2α}
    let pow: Vec<f64> = (0..f.len()).map(|d| (d as f64 / nf.sqrt()).powf(2.0 * alpha)).collect();
    let mut best: f64 = 0.0;
    for j in 0..f.len() {
        for k in j + 1..f.len() {
            let d = f[k] - f[j];
            best = best.max(d * d / pow[k - j]);
        }
    }
    best
}

/// `n^{-1} max_k |Λ(k+1) − Λ(k)|`.
pub fn lipschitz_statistic(counts: &[u64], n: usize) -> f64 {
    let mut best = counts.last().copied().unwrap_or(0) as f64;
    for w in counts.windows(2) {
        best = best.max((w[1] as f64 - w[0] as f64).abs());
    }
    best / n as f64
}

#[derive(Clone, Debug, Serialize)]
pub struct HolderRow {
    pub n: usize,
    pub seminorm: EstimateWithError,
    pub lipschitz: EstimateWithError,
    #[serde(skip)]
    samples: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HolderReport {
    pub alpha: f64,
    pub rows: Vec<HolderRow>,
    /// Largest ratio of means between any two sizes, with its bootstrap stderr.
    pub max_ratio_observed: (f64, f64),
    pub max_ratio: f64,
}

impl HolderReport {
    pub fn passes(&self) -> bool {
        self.max_ratio_observed.0 <= self.max_ratio
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["n", "alpha", "seminorm_sq", "stderr", "lipschitz", "lipschitz_stderr"]);
        for r in &self.rows {
            t.push(vec![
                r.n.to_string(),
                fmt(self.alpha),
                fmt(r.seminorm.value),
                fmt(r.seminorm.stderr),
                fmt(r.lipschitz.value),
                fmt(r.lipschitz.stderr),
            ]);
        }
        let mut rt = Table::new(&["quantity", "value"]);
        rt.push(vec!["max_ratio".into(), fmt(self.max_ratio)]);
        ExperimentOutput {
            name: "holder".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "ratio_of_means": self.max_ratio_observed.0,
                "ratio_bootstrap_stderr": self.max_ratio_observed.1,
            }),
        }
    }
}

/// Mean squared Hölder seminorm of the scaled distance profile across sizes,
/// with the Lipschitz statistic reported alongside.
pub fn exp_holder_statistic(c: &HolderConfig, seed: u64) -> Result<HolderReport> {
    if !(c.alpha > 0.0 && c.alpha < 1.0) {
        return Err(Error::invalid_arg("alpha", "need 0 < α < 1"));
    }
    if c.ns.is_empty() {
        return Err(Error::invalid_arg("ns", "empty size grid"));
    }
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let mut rows = Vec::new();
    for (g, &n) in c.ns.iter().enumerate() {
        let sampler = ShapeSampler::new(&model, c.sampler, n)?;
        let v = replicate(seed, g, c.reps, |rng| {
            let t = sampler.sample(rng)?;
            let d = distance_profile_fast(&t);
            check_distance(&d, n)?;
            Ok((holder_seminorm_sq(&d.counts, n, c.alpha), lipschitz_statistic(&d.counts, n)))
        })?;
        let s: Vec<f64> = v.iter().map(|x| x.0).collect();
        let l: Vec<f64> = v.iter().map(|x| x.1).collect();
        rows.push(HolderRow {
            n,
            seminorm: EstimateWithError::from_samples(&s, seed)?,
            lipschitz: EstimateWithError::from_samples(&l, seed)?,
            samples: s,
        });
    }
    let mut worst = (1.0, 0.0);
    for a in &rows {
        for b in &rows {
            if a.seminorm.value >= b.seminorm.value && a.n != b.n {
                let r = bootstrap_ratio(&a.samples, &b.samples, c.bootstrap_resamples, seed);
                if r.0 > worst.0 {
                    worst = r;
                }
            }
        }
    }
    Ok(HolderReport {
        alpha: c.alpha,
        rows,
        max_ratio_observed: worst,
        max_ratio: c.max_ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seminorm_of_constant_is_zero_inside_support() {
        // constant profile padded by zero at the end only contributes the drop
        let n = 4;
        let flat = [16u64];
        let s = holder_seminorm_sq(&flat, n, 0.5);
        // drop of 16/8 = 2 over distance 1/2: 4 / (1/2)
        assert!((s - 8.0).abs() < 1e-12);
    }

    #[test]
    fn lipschitz_of_path() {
        // path on 4 vertices: Λ = (4, 6, 4, 2)
        assert_eq!(lipschitz_statistic(&[4, 6, 4, 2], 4), 0.5);
    }

    #[test]
    fn gauss_rate_recovers_slope() {
        let es: Vec<EstimateWithError> = (0..5)
            .map(|k| EstimateWithError {
                value: (-3.0 * k as f64).exp(),
                stderr: 0.0,
                reps: 2,
                seed: 0,
            })
            .collect();
        let pts: Vec<(f64, &EstimateWithError)> = es.iter().enumerate().map(|(k, e)| (k as f64, e)).collect();
        assert!((fit_gauss_rate(&pts) - 1.5).abs() < 1e-12);
    }

    #[test]
    fn small_profile_mean_runs() {
        let c: ProfileMeanConfig = serde_json::from_str(r#"{"n": 200, "reps": 50}"#).unwrap();
        let r = exp_profile_mean(&c, 3).unwrap();
        // half of the root's triangle lies below x = 0
        let mass: f64 = r.bins.iter().map(|b| b.estimate.value * 0.1).sum();
        assert!((mass + 0.5 / 200.0 - 1.0).abs() < 1e-3);
        let again = exp_profile_mean(&c, 3).unwrap();
        assert_eq!(r.output().results.to_csv(), again.output().results.to_csv());
    }

    #[test]
    fn unknown_config_field_is_rejected() {
        assert!(serde_json::from_str::<WidthConfig>(r#"{"nn": 3}"#).is_err());
    }
}
