//! Experiments on discrete laws: the root degree, the mass outside the
//! largest branch, and the leaf-biased marking.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::profiles::default_unrooted_weights;
use super::stats::{fmt, mean_sd, percentile, Table};
use super::{default_weights, replicate, ExperimentOutput, Model};
use crate::error::{Error, Result};
use crate::genfun::solve_A;
use crate::oracle::{chi_square_compare, exact_leafbiased_law, exact_unrooted_law, ChiSquare};
use crate::rng::RngStream;
use crate::sampler::{Marking, ModifiedSampler, SizeSplitter, UnrootedSampler};
use crate::tree::{distance_profile_naive, wiener_from_sizes, wiener_index, OrderedTree, TreeLike};
use crate::weights::{root_degree_limit, WeightSpec};

fn poisson_one() -> Option<WeightSpec> {
    Some(WeightSpec::from_json(r#"{"kind":"poisson","params":{"lambda":1.0}}"#).expect("static spec"))
}

fn default_p_min() -> f64 {
    1e-3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootDegreeConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default = "poisson_one")]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "RootDegreeConfig::default_n")]
    pub n: usize,
    #[serde(default = "RootDegreeConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "default_p_min")]
    pub p_min: f64,
    #[serde(default = "RootDegreeConfig::default_domination")]
    pub domination: f64,
}

impl RootDegreeConfig {
    fn default_n() -> usize {
        10_000
    }
    fn default_reps() -> usize {
        10_000
    }
    fn default_domination() -> f64 {
        2.5
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDegreeReport {
    pub n: usize,
    pub reps: usize,
    pub counts: Vec<u64>,
    /// `k p°_k / μ(p°)`.
    pub limit: Vec<f64>,
    /// Exact root-degree law at size `n`.
    pub exact: Vec<f64>,
    pub chi_limit: ChiSquare,
    pub chi_exact: ChiSquare,
    /// Largest `P̂(d = k) / limit_k` over cells expecting at least 5.
    pub max_domination: f64,
    pub p_min: f64,
    pub domination: f64,
}

impl RootDegreeReport {
    pub fn passes(&self) -> bool {
        self.chi_limit.p_value > self.p_min && self.max_domination <= self.domination
    }

    pub fn output(&self) -> ExperimentOutput {
        let len = self.counts.len().max(self.limit.len());
        let mut t = Table::new(&["k", "count", "freq", "limit", "exact_n"]);
        let mut rt = Table::new(&["k", "limit"]);
        for k in 0..len {
            let c = self.counts.get(k).copied().unwrap_or(0);
            let l = self.limit.get(k).copied().unwrap_or(0.0);
            if c == 0 && l < 1e-12 {
                continue;
            }
            t.push(vec![
                k.to_string(),
                c.to_string(),
                fmt(c as f64 / self.reps as f64),
                fmt(l),
                fmt(self.exact.get(k).copied().unwrap_or(0.0)),
            ]);
            rt.push(vec![k.to_string(), fmt(l)]);
        }
        ExperimentOutput {
            name: "root_degree".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "chi_limit": {"statistic": self.chi_limit.statistic, "p_value": self.chi_limit.p_value, "dof": self.chi_limit.dof},
                "chi_exact": {"statistic": self.chi_exact.statistic, "p_value": self.chi_exact.p_value, "dof": self.chi_exact.dof},
                "max_domination": self.max_domination,
            }),
        }
    }
}

fn pad(v: &mut Vec<f64>, len: usize) {
    if v.len() < len {
        v.resize(len, 0.0);
    }
}

/// Root degree of the modified tree against its limit law.
pub fn exp_root_degree(c: &RootDegreeConfig, seed: u64) -> Result<RootDegreeReport> {
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let p0 = model
        .p0
        .as_ref()
        .ok_or_else(|| Error::invalid_arg("root_weights", "required"))?;
    let sampler = ModifiedSampler::new(&model.p, p0, c.n)?;
    let degs = replicate(seed, 0, c.reps, |rng| {
        let code = sampler.outdegrees(rng)?;
        if code.len() != c.n {
            return Err(Error::Numerical("sampled tree has the wrong size".into()));
        }
        Ok(code[0])
    })?;
    let kmax = degs.iter().copied().max().unwrap_or(0);
    let mut counts = vec![0u64; kmax + 1];
    for d in degs {
        counts[d] += 1;
    }
    let mut limit = root_degree_limit(p0)?;
    let mut exact = sampler.root_degree_law().to_vec();
    let len = limit.len().max(exact.len()).max(counts.len());
    pad(&mut limit, len);
    pad(&mut exact, len);
    let mut obs = counts.clone();
    obs.resize(len, 0);
    let chi_limit = chi_square_compare(&limit, &obs)?;
    let chi_exact = chi_square_compare(&exact, &obs)?;
    let r = c.reps as f64;
    let max_domination = limit
        .iter()
        .zip(&obs)
        .filter(|(&l, _)| l * r >= 5.0)
        .map(|(&l, &o)| o as f64 / r / l)
        .fold(0.0, f64::max);
    Ok(RootDegreeReport {
        n: c.n,
        reps: c.reps,
        counts,
        limit,
        exact,
        chi_limit,
        chi_exact,
        max_domination,
        p_min: c.p_min,
        domination: c.domination,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BranchConstruction {
    /// Conditioned forest of `m` trees; the components are the trees.
    Forest,
    /// Modified tree; the components are the root branches.
    Modified,
    /// Edge-marked unrooted tree; the components are the two sides of the
    /// marked edge.
    EdgeMarked,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BigBranchConfig {
    #[serde(default = "default_weights")]
    pub weights: WeightSpec,
    #[serde(default = "poisson_one")]
    pub root_weights: Option<WeightSpec>,
    #[serde(default = "BigBranchConfig::default_constructions")]
    pub constructions: Vec<BranchConstruction>,
    #[serde(default = "BigBranchConfig::default_m")]
    pub m: usize,
    #[serde(default = "BigBranchConfig::default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "RootDegreeConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "BigBranchConfig::default_quantile")]
    pub quantile: f64,
    #[serde(default = "BigBranchConfig::default_max_ratio")]
    pub max_ratio: f64,
    #[serde(default = "default_p_min")]
    pub p_min: f64,
    /// Last single-size cell of the small-side test against `a_k`; sizes
    /// above it form one tail cell. Defaults to `⌊√n⌋`.
    #[serde(default)]
    pub small_side_cells: Option<usize>,
}

impl BigBranchConfig {
    fn default_constructions() -> Vec<BranchConstruction> {
        vec![
            BranchConstruction::Forest,
            BranchConstruction::Modified,
            BranchConstruction::EdgeMarked,
        ]
    }
    fn default_m() -> usize {
        3
    }
    fn default_ns() -> Vec<usize> {
        vec![1_000, 10_000]
    }
    fn default_quantile() -> f64 {
        0.99
    }
    fn default_max_ratio() -> f64 {
        1.5
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DeficitRow {
    pub construction: BranchConstruction,
    pub n: usize,
    pub mean: f64,
    pub median: f64,
    pub p90: f64,
    /// The configured quantile.
    pub pq: f64,
    pub max: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BigBranchReport {
    pub rows: Vec<DeficitRow>,
    pub quantile: f64,
    /// Quantile at the largest `n` over the quantile at the smallest.
    pub ratios: Vec<(BranchConstruction, f64)>,
    /// Small side of the marked edge against `a_k`, at the largest `n`.
    pub small_side_chi: Option<ChiSquare>,
    /// Same counts against the exact law at that `n`.
    pub small_side_chi_exact: Option<ChiSquare>,
    pub max_ratio: f64,
    pub p_min: f64,
}

impl BigBranchReport {
    pub fn ratio_passes(&self) -> bool {
        self.ratios.iter().all(|&(_, r)| r <= self.max_ratio)
    }

    pub fn small_side_passes(&self) -> bool {
        self.small_side_chi.is_none_or(|c| c.p_value > self.p_min)
    }

    pub fn passes(&self) -> bool {
        self.ratio_passes() && self.small_side_passes()
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["construction", "n", "mean", "median", "p90", "quantile", "value", "max"]);
        for r in &self.rows {
            t.push(vec![
                format!("{:?}", r.construction).to_lowercase(),
                r.n.to_string(),
                fmt(r.mean),
                fmt(r.median),
                fmt(r.p90),
                fmt(self.quantile),
                fmt(r.pq),
                fmt(r.max),
            ]);
        }
        let mut rt = Table::new(&["construction", "quantile_ratio", "max_ratio"]);
        for (c, r) in &self.ratios {
            rt.push(vec![format!("{c:?}").to_lowercase(), fmt(*r), fmt(self.max_ratio)]);
        }
        let chi = |c: &Option<ChiSquare>| c.map(|c| json!({"statistic": c.statistic, "p_value": c.p_value, "dof": c.dof}));
        ExperimentOutput {
            name: "big_branch".into(),
            results: t,
            reference: rt,
            summary: json!({
                "pass": self.passes(),
                "ratio_pass": self.ratio_passes(),
                "small_side_pass": self.small_side_passes(),
                "ratios": self.ratios,
                "small_side_chi": chi(&self.small_side_chi),
                "small_side_chi_exact": chi(&self.small_side_chi_exact),
            }),
        }
    }
}

fn branch_sizes(t: &OrderedTree) -> Vec<usize> {
    let s = t.subtree_sizes();
    t.children(0).iter().map(|&c| s[c]).collect()
}

/// `n` minus the largest component for the forest, modified and
/// edge-marked constructions.
pub fn exp_big_branch(c: &BigBranchConfig, seed: u64) -> Result<BigBranchReport> {
    if c.ns.is_empty() || c.constructions.is_empty() {
        return Err(Error::invalid_arg("ns", "empty grid"));
    }
    if !(c.quantile > 0.0 && c.quantile <= 1.0) {
        return Err(Error::invalid_arg("quantile", "need 0 < q ≤ 1"));
    }
    let model = Model::from_specs(&c.weights, c.root_weights.as_ref())?;
    let mut rows = Vec::new();
    let mut ratios = Vec::new();
    let mut small_side = None;
    let mut grid = 0;
    for &kind in &c.constructions {
        let mut qs = Vec::new();
        for &n in &c.ns {
            grid += 1;
            let deficits: Vec<usize> = match kind {
                BranchConstruction::Forest => {
                    let sp = SizeSplitter::new(&model.p, n, c.m)?;
                    replicate(seed, grid, c.reps, |rng| {
                        let sizes = sp.split(n, c.m, rng)?;
                        Ok(n - sizes.iter().max().copied().unwrap_or(0))
                    })?
                }
                BranchConstruction::Modified => {
                    let p0 = model
                        .p0
                        .as_ref()
                        .ok_or_else(|| Error::invalid_arg("root_weights", "required"))?;
                    let s = ModifiedSampler::new(&model.p, p0, n)?;
                    replicate(seed, grid, c.reps, |rng| {
                        let t = s.sample(rng)?;
                        Ok(n - branch_sizes(&t).into_iter().max().unwrap_or(0))
                    })?
                }
                BranchConstruction::EdgeMarked => {
                    let s = UnrootedSampler::from_laws(&model.p, &model.p, n, Marking::Edge)?;
                    replicate(seed, grid, c.reps, |rng| {
                        let t = s.sample_shape(rng)?;
                        // the second tree hangs below the root's last child
                        let last = *branch_sizes(&t).last().expect("n ≥ 2");
                        Ok(last.min(n - last))
                    })?
                }
            };
            let xs: Vec<f64> = deficits.iter().map(|&d| d as f64).collect();
            let pq = percentile(&xs, c.quantile);
            qs.push(pq);
            rows.push(DeficitRow {
                construction: kind,
                n,
                mean: mean_sd(&xs).0,
                median: percentile(&xs, 0.5),
                p90: percentile(&xs, 0.9),
                pq,
                max: xs.iter().cloned().fold(0.0, f64::max),
            });
            if kind == BranchConstruction::EdgeMarked && n == *c.ns.last().unwrap() {
                small_side = Some((n, deficits));
            }
        }
        let first = qs[0].max(1.0);
        ratios.push((kind, qs.last().unwrap() / first));
    }
    let (small_side_chi, small_side_chi_exact) = match small_side {
        None => (None, None),
        Some((n, d)) => {
            let a = solve_A(&model.p, n)?;
            let half = n / 2;
            let mut obs = vec![0u64; half + 2];
            for k in d {
                obs[k] += 1;
            }
            // limit cells k = 1..=K and one tail cell; the limit gives mass
            // to k > n/2, which the small side cannot reach
            let kc = c
                .small_side_cells
                .unwrap_or((n as f64).sqrt() as usize)
                .clamp(1, half);
            let mut limit: Vec<f64> = (0..=kc).map(|k| if k == 0 { 0.0 } else { a.coeff(k) }).collect();
            limit.push((1.0 - limit.iter().sum::<f64>()).max(0.0));
            let mut lim_obs = obs[..=kc].to_vec();
            lim_obs.push(obs[kc + 1..].iter().sum());
            let mut exact: Vec<f64> = (0..=half)
                .map(|k| {
                    if k == 0 {
                        0.0
                    } else {
                        let m = if 2 * k == n { 1.0 } else { 2.0 };
                        m * a.coeff(k) * a.coeff(n - k)
                    }
                })
                .collect();
            exact.push(0.0);
            (
                Some(chi_square_compare(&limit, &lim_obs)?),
                Some(chi_square_compare(&exact, &obs)?),
            )
        }
    };
    Ok(BigBranchReport {
        rows,
        quantile: c.quantile,
        ratios,
        small_side_chi,
        small_side_chi_exact,
        max_ratio: c.max_ratio,
        p_min: c.p_min,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeafbiasConfig {
    #[serde(default = "default_unrooted_weights")]
    pub weights: WeightSpec,
    #[serde(default = "LeafbiasConfig::default_ns")]
    pub ns: Vec<usize>,
    #[serde(default = "LeafbiasConfig::default_reps")]
    pub reps: usize,
    #[serde(default = "LeafbiasConfig::default_bins")]
    pub bins: usize,
    #[serde(default = "LeafbiasConfig::default_exact_ns")]
    pub exact_ns: Vec<usize>,
    #[serde(default = "LeafbiasConfig::default_exact_reps")]
    pub exact_reps: usize,
    #[serde(default = "LeafbiasConfig::default_resamples")]
    pub bootstrap_resamples: usize,
    #[serde(default = "LeafbiasConfig::default_z_tol")]
    pub z_tol: f64,
}

impl LeafbiasConfig {
    fn default_ns() -> Vec<usize> {
        vec![1_000, 10_000, 100_000]
    }
    fn default_reps() -> usize {
        2_000
    }
    fn default_bins() -> usize {
        10
    }
    fn default_exact_ns() -> Vec<usize> {
        vec![4, 5, 6]
    }
    fn default_exact_reps() -> usize {
        100_000
    }
    fn default_resamples() -> usize {
        200
    }
    fn default_z_tol() -> f64 {
        3.0
    }
}

/// Binned TV proxies for one size.
#[derive(Clone, Debug, Serialize)]
pub struct LeafbiasRow {
    pub n: usize,
    /// `(statistic, TV(leaf, edge), TV(edge, independent edge))`.
    pub tv: Vec<(String, f64, f64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactTvRow {
    pub n: usize,
    pub exact: f64,
    pub estimate: f64,
    pub stderr: f64,
}

impl ExactTvRow {
    pub fn within(&self, z: f64) -> bool {
        (self.estimate - self.exact).abs() <= z * self.stderr.max(1e-12)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeafbiasReport {
    pub rows: Vec<LeafbiasRow>,
    pub exact: Vec<ExactTvRow>,
    pub z_tol: f64,
}

impl LeafbiasReport {
    pub fn passes(&self) -> bool {
        self.exact.iter().all(|r| r.within(self.z_tol))
    }

    /// `TV(leaf, edge) − TV(edge, edge')` per statistic and size; values
    /// near zero mean the difference is below the sampling noise.
    pub fn excess(&self) -> Vec<(String, Vec<(usize, f64)>)> {
        let Some(first) = self.rows.first() else {
            return Vec::new();
        };
        (0..first.tv.len())
            .map(|j| {
                (
                    first.tv[j].0.clone(),
                    self.rows.iter().map(|r| (r.n, r.tv[j].1 - r.tv[j].2)).collect(),
                )
            })
            .collect()
    }

    pub fn output(&self) -> ExperimentOutput {
        let mut t = Table::new(&["n", "statistic", "tv_leaf_edge", "tv_null"]);
        for r in &self.rows {
            for (s, a, b) in &r.tv {
                t.push(vec![r.n.to_string(), s.clone(), fmt(*a), fmt(*b)]);
            }
        }
        let mut rt = Table::new(&["n", "exact_tv", "estimate", "stderr"]);
        for r in &self.exact {
            rt.push(vec![r.n.to_string(), fmt(r.exact), fmt(r.estimate), fmt(r.stderr)]);
        }
        ExperimentOutput {
            name: "leafbias_proximity".into(),
            results: t,
            reference: rt,
            summary: json!({"pass": self.passes(), "excess": self.excess()}),
        }
    }
}

/// `½ Σ |p − q|` of two empirical samples on bins cut at the quantiles of
/// their union.
pub fn binned_tv(a: &[f64], b: &[f64], bins: usize) -> f64 {
    let mut all: Vec<f64> = a.iter().chain(b).copied().collect();
    all.sort_by(f64::total_cmp);
    let mut cuts: Vec<f64> = (1..bins)
        .map(|j| all[(j * all.len() / bins).min(all.len() - 1)])
        .collect();
    cuts.dedup();
    let hist = |v: &[f64]| {
        let mut h = vec![0.0; cuts.len() + 1];
        for &x in v {
            h[cuts.partition_point(|&c| c <= x)] += 1.0 / v.len() as f64;
        }
        h
    };
    let (ha, hb) = (hist(a), hist(b));
    0.5 * ha.iter().zip(&hb).map(|(x, y)| (x - y).abs()).sum::<f64>()
}

fn tv_keyed<K: Ord + Clone>(p: &BTreeMap<K, f64>, q: &BTreeMap<K, f64>) -> f64 {
    let mut keys: Vec<&K> = p.keys().chain(q.keys()).collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .into_iter()
        .map(|k| (p.get(k).unwrap_or(&0.0) - q.get(k).unwrap_or(&0.0)).abs())
        .sum::<f64>()
}

fn shape_key<T: TreeLike>(t: &T) -> (usize, u64) {
    let adj = t.adjacency();
    (adj.diameter(), wiener_index(&distance_profile_naive(t)))
}

fn width_from(t: &OrderedTree, root: usize) -> usize {
    let d = t.adjacency().bfs(root);
    let mut c = vec![0usize; d.iter().max().unwrap() + 1];
    for x in d {
        c[x] += 1;
    }
    c.into_iter().max().unwrap()
}

/// Diameter, Wiener index and width from a uniform root, each scaled.
fn large_stats(t: &OrderedTree, rng: &mut RngStream) -> [f64; 3] {
    let n = t.len() as f64;
    let adj = t.adjacency();
    [
        adj.diameter() as f64 / n.sqrt(),
        wiener_from_sizes(t) as f64 / n.powf(2.5),
        width_from(t, rng.below(t.len())) as f64 / n.sqrt(),
    ]
}

/// Leaf-marked against edge-marked laws: exact total variation for small
/// `n` with a Monte Carlo check, and binned TV proxies at large `n`.
pub fn exp_leafbias_proximity(c: &LeafbiasConfig, seed: u64) -> Result<LeafbiasReport> {
    let model = Model::from_specs(&c.weights, None)?;
    let w = model
        .w
        .as_ref()
        .ok_or_else(|| Error::invalid_arg("weights", "unrooted weights are required"))?;
    let p0 = model.p0.as_ref().expect("unrooted model has a root law");
    let mut grid = 0;
    let mut exact = Vec::new();
    for &n in &c.exact_ns {
        let leaf_law = exact_leafbiased_law(w, n)?.law_by(shape_key);
        let edge_law = exact_unrooted_law(w, n)?.law_by(shape_key);
        let tv = tv_keyed(&leaf_law, &edge_law);
        let mut draws = Vec::new();
        for m in [Marking::Leaf, Marking::Edge] {
            grid += 1;
            let s = UnrootedSampler::from_laws(&model.p, p0, n, m)?;
            draws.push(replicate(seed, grid, c.exact_reps, |rng| Ok(shape_key(&s.sample_shape(rng)?)))?);
        }
        let freq = |v: &[(usize, u64)], idx: &mut dyn Iterator<Item = usize>| {
            let mut m: BTreeMap<(usize, u64), f64> = BTreeMap::new();
            let mut cnt = 0.0;
            for i in idx {
                *m.entry(v[i]).or_default() += 1.0;
                cnt += 1.0;
            }
            m.values_mut().for_each(|x| *x /= cnt);
            m
        };
        let (a, b) = (&draws[0], &draws[1]);
        let estimate = tv_keyed(&freq(a, &mut (0..a.len())), &freq(b, &mut (0..b.len())));
        let mut rng = RngStream::new(seed, u64::MAX - n as u64);
        let boots: Vec<f64> = (0..c.bootstrap_resamples)
            .map(|_| {
                let ia: Vec<usize> = (0..a.len()).map(|_| rng.below(a.len())).collect();
                let ib: Vec<usize> = (0..b.len()).map(|_| rng.below(b.len())).collect();
                tv_keyed(&freq(a, &mut ia.into_iter()), &freq(b, &mut ib.into_iter()))
            })
            .collect();
        exact.push(ExactTvRow {
            n,
            exact: tv,
            estimate,
            stderr: mean_sd(&boots).1,
        });
    }
    let names = ["diameter", "wiener", "width_random_root"];
    let mut rows = Vec::new();
    for &n in &c.ns {
        let mut samples = Vec::new();
        for m in [Marking::Leaf, Marking::Edge, Marking::Edge] {
            grid += 1;
            let s = UnrootedSampler::from_laws(&model.p, p0, n, m)?;
            samples.push(replicate(seed, grid, c.reps, |rng| {
                let t = s.sample_shape(rng)?;
                Ok(large_stats(&t, rng))
            })?);
        }
        let col = |k: usize, j: usize| samples[k].iter().map(|v| v[j]).collect::<Vec<f64>>();
        let tv = (0..3)
            .map(|j| {
                (
                    names[j].to_string(),
                    binned_tv(&col(0, j), &col(1, j), c.bins),
                    binned_tv(&col(2, j), &col(1, j), c.bins),
                )
            })
            .collect();
        rows.push(LeafbiasRow { n, tv });
    }
    Ok(LeafbiasReport {
        rows,
        exact,
        z_tol: c.z_tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binned_tv_extremes() {
        let a: Vec<f64> = (0..100).map(|x| x as f64).collect();
        let b: Vec<f64> = (1000..1100).map(|x| x as f64).collect();
        assert_eq!(binned_tv(&a, &a, 10), 0.0);
        assert!((binned_tv(&a, &b, 10) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn leafbias_at_three_is_zero() {
        // one unrooted shape on three vertices
        let c: LeafbiasConfig =
            serde_json::from_str(r#"{"ns": [], "exact_ns": [3], "exact_reps": 200, "bootstrap_resamples": 20}"#).unwrap();
        let r = exp_leafbias_proximity(&c, 1).unwrap();
        assert_eq!(r.exact[0].exact, 0.0);
        assert_eq!(r.exact[0].estimate, 0.0);
    }

    #[test]
    fn forest_with_one_tree_has_no_deficit() {
        let c: BigBranchConfig =
            serde_json::from_str(r#"{"constructions": ["forest"], "m": 1, "ns": [50, 100], "reps": 20}"#).unwrap();
        let r = exp_big_branch(&c, 2).unwrap();
        assert!(r.rows.iter().all(|x| x.max == 0.0));
    }
}
