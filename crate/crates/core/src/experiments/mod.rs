//! Reproducible Monte Carlo experiments and exact cross-checks.
//!
//! Replication `i` draws from stream `i` of the run seed (grids offset the
//! stream by `grid_index << 32`), and per-replication results are merged in
//! index order, so outputs do not depend on the number of workers.

pub mod fourier;
pub mod laws;
pub mod profiles;
pub mod reference;
pub mod stats;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::sampler::{ConditionedSampler, Marking, ModifiedSampler, UnrootedSampler};
use crate::tree::OrderedTree;
use crate::weights::{
    criticalize, unrooted_critical, Model as WeightModel, OffspringDistribution, WeightSequence,
    WeightSpec,
};

pub use fourier::*;
pub use laws::*;
pub use profiles::*;
pub use stats::{BinnedDensity, EstimateWithError, Normalization, Table};

/// Resolved laws of an experiment: the critical offspring law `p`, the
/// root law `p°` when there is one, and the unrooted weights when the
/// model came from them.
#[derive(Clone, Debug)]
pub struct Model {
    pub p: OffspringDistribution,
    pub p0: Option<OffspringDistribution>,
    pub w: Option<WeightSequence>,
}

impl Model {
    /// Rooted weights are criticalized; unrooted weights give `(p, p°)`
    /// through vertex marking. `root` overrides `p°` and is normalized as
    /// given.
    pub fn from_specs(weights: &WeightSpec, root: Option<&WeightSpec>) -> Result<Self> {
        let mut m = match weights.to_model()? {
            WeightModel::Rooted(ws) => Model {
                p: criticalize(&ws)?.0,
                p0: None,
                w: None,
            },
            WeightModel::Unrooted(w) => {
                let (p, p0) = unrooted_critical(&w)?;
                Model {
                    p,
                    p0: Some(p0),
                    w: Some(w),
                }
            }
        };
        if let Some(r) = root {
            let ws = match r.to_model()? {
                WeightModel::Rooted(ws) => ws,
                WeightModel::Unrooted(_) => {
                    return Err(Error::invalid_arg("root_weights", "must be rooted weights"))
                }
            };
            m.p0 = Some(OffspringDistribution::from_weights(&ws)?);
        }
        Ok(m)
    }

    pub fn sigma(&self) -> f64 {
        self.p.sigma()
    }

    fn root_law(&self) -> Result<&OffspringDistribution> {
        self.p0
            .as_ref()
            .ok_or_else(|| Error::invalid_arg("root_weights", "this sampler needs a root law"))
    }
}

/// Which random tree an experiment draws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerKind {
    /// Conditioned GW tree.
    Rooted,
    /// GW tree with root offspring from `p°`.
    Modified,
    /// Unrooted tree by edge marking (exact law).
    Unrooted,
    /// Unrooted tree by vertex marking (exact law).
    UnrootedVertex,
    /// Leaf-marked tree (biased by the leaf count).
    UnrootedLeaf,
}

/// A sampler of tree shapes at a fixed size.
#[derive(Clone, Debug)]
pub enum ShapeSampler {
    Rooted(ConditionedSampler, usize),
    Modified(ModifiedSampler),
    Unrooted(UnrootedSampler),
}

impl ShapeSampler {
    pub fn new(model: &Model, kind: SamplerKind, n: usize) -> Result<Self> {
        let unrooted = |m: Marking| -> Result<Self> {
            Ok(ShapeSampler::Unrooted(UnrootedSampler::from_laws(
                &model.p,
                model.root_law()?,
                n,
                m,
            )?))
        };
        match kind {
            SamplerKind::Rooted => {
                let s = ConditionedSampler::new(&model.p)?;
                s.check_feasible(n, 1)?;
                Ok(ShapeSampler::Rooted(s, n))
            }
            SamplerKind::Modified => Ok(ShapeSampler::Modified(ModifiedSampler::new(
                &model.p,
                model.root_law()?,
                n,
            )?)),
            SamplerKind::Unrooted => unrooted(Marking::Edge),
            SamplerKind::UnrootedVertex => unrooted(Marking::Vertex),
            SamplerKind::UnrootedLeaf => unrooted(Marking::Leaf),
        }
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<OrderedTree> {
        match self {
            ShapeSampler::Rooted(s, n) => s.sample(*n, rng),
            ShapeSampler::Modified(s) => s.sample(rng),
            ShapeSampler::Unrooted(s) => s.sample_shape(rng),
        }
    }
}

/// Stream id of replication `rep` at grid position `grid`.
pub fn stream_id(grid: usize, rep: usize) -> u64 {
    ((grid as u64) << 32) | rep as u64
}

/// Runs `reps` replications in parallel, returning results in index order.
pub fn replicate<T, F>(seed: u64, grid: usize, reps: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&mut RngStream) -> Result<T> + Sync,
{
    (0..reps)
        .into_par_iter()
        .map(|i| {
            let mut rng = RngStream::new(seed, stream_id(grid, i));
            f(&mut rng)
        })
        .collect()
}

/// Geometric offspring law with `q = 1/2`.
pub fn default_weights() -> WeightSpec {
    WeightSpec::from_json(r#"{"kind":"geometric","params":{"q":0.5}}"#).expect("static spec")
}

/// Configurations default to the values of an empty JSON object.
macro_rules! serde_default {
    ($($t:ty),* $(,)?) => {
        $(impl Default for $t {
            fn default() -> Self {
                serde_json::from_str("{}").expect("every field has a default")
            }
        })*
    };
}

serde_default!(
    ProfileMeanConfig,
    DistanceProfileMeanConfig,
    WidthConfig,
    WienerConfig,
    MomentBoundsConfig,
    HolderConfig,
    RootDegreeConfig,
    BigBranchConfig,
    LeafbiasConfig,
    FourierDecayConfig,
);

/// Result of an experiment in tabular form.
#[derive(Clone, Debug, Serialize)]
pub struct ExperimentOutput {
    pub name: String,
    pub results: Table,
    pub reference: Table,
    /// Headline numbers and pass flags.
    pub summary: serde_json::Value,
}

/// Experiment names accepted by [`run_named`].
pub const EXPERIMENTS: &[&str] = &[
    "profile_mean",
    "distance_profile_mean",
    "width",
    "wiener",
    "root_degree",
    "big_branch",
    "moment_bounds",
    "fourier_decay",
    "holder",
    "leafbias_proximity",
];

/// A parsed experiment configuration.
#[derive(Clone, Debug)]
pub enum ExperimentConfig {
    ProfileMean(ProfileMeanConfig),
    DistanceProfileMean(DistanceProfileMeanConfig),
    Width(WidthConfig),
    Wiener(WienerConfig),
    RootDegree(RootDegreeConfig),
    BigBranch(BigBranchConfig),
    MomentBounds(MomentBoundsConfig),
    FourierDecay(FourierDecayConfig),
    Holder(HolderConfig),
    Leafbias(LeafbiasConfig),
}

/// Parses the JSON config of experiment `name`; an empty text means all
/// defaults. Returns the config with defaults filled in, as JSON, too.
pub fn parse_config(name: &str, text: &str) -> Result<(serde_json::Value, ExperimentConfig)> {
    fn parse<C: for<'de> Deserialize<'de> + Serialize>(s: &str) -> Result<(serde_json::Value, C)> {
        let text = if s.trim().is_empty() { "{}" } else { s };
        let c: C = serde_json::from_str(text).map_err(|e| Error::invalid_arg("config", e.to_string()))?;
        Ok((serde_json::to_value(&c)?, c))
    }
    use ExperimentConfig as E;
    Ok(match name {
        "profile_mean" => parse(text).map(|(e, c)| (e, E::ProfileMean(c)))?,
        "distance_profile_mean" => parse(text).map(|(e, c)| (e, E::DistanceProfileMean(c)))?,
        "width" => parse(text).map(|(e, c)| (e, E::Width(c)))?,
        "wiener" => parse(text).map(|(e, c)| (e, E::Wiener(c)))?,
        "root_degree" => parse(text).map(|(e, c)| (e, E::RootDegree(c)))?,
        "big_branch" => parse(text).map(|(e, c)| (e, E::BigBranch(c)))?,
        "moment_bounds" => parse(text).map(|(e, c)| (e, E::MomentBounds(c)))?,
        "fourier_decay" => parse(text).map(|(e, c)| (e, E::FourierDecay(c)))?,
        "holder" => parse(text).map(|(e, c)| (e, E::Holder(c)))?,
        "leafbias_proximity" => parse(text).map(|(e, c)| (e, E::Leafbias(c)))?,
        other => {
            return Err(Error::invalid_arg(
                "experiment",
                format!("unknown experiment `{other}`; known: {}", EXPERIMENTS.join(", ")),
            ))
        }
    })
}

/// Runs a parsed configuration.
pub fn run_config(c: &ExperimentConfig, seed: u64) -> Result<ExperimentOutput> {
    use ExperimentConfig as E;
    Ok(match c {
        E::ProfileMean(c) => exp_profile_mean(c, seed)?.output(),
        E::DistanceProfileMean(c) => exp_distance_profile_mean(c, seed)?.output(),
        E::Width(c) => exp_width(c, seed)?.output(),
        E::Wiener(c) => exp_wiener(c, seed)?.output(),
        E::RootDegree(c) => exp_root_degree(c, seed)?.output(),
        E::BigBranch(c) => exp_big_branch(c, seed)?.output(),
        E::MomentBounds(c) => exp_moment_bounds(c, seed)?.output(),
        E::FourierDecay(c) => exp_fourier_decay(c, seed)?.output(),
        E::Holder(c) => exp_holder_statistic(c, seed)?.output(),
        E::Leafbias(c) => exp_leafbias_proximity(c, seed)?.output(),
    })
}

/// Parses and runs experiment `name`, returning the config echo and output.
pub fn run_named(name: &str, config: &str, seed: u64) -> Result<(serde_json::Value, ExperimentOutput)> {
    let (echo, c) = parse_config(name, config)?;
    Ok((echo, run_config(&c, seed)?))
}
