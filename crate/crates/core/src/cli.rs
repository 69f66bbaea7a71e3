//! Command-line front end.
//!
//! Every subcommand prints CSV (or JSON with `--format json`) to stdout, or
//! with `--out DIR` writes `manifest.json` first and then its result files
//! into `DIR`. Exit codes: 0 success, 1 usage error, 2 numerical or
//! feasibility error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::distprofile::distance_profile_fast;
use crate::error::{Error, Result};
use crate::experiments::stats::{fmt, BinnedDensity, EstimateWithError, Normalization, Table};
use crate::experiments::{self, replicate, Model, SamplerKind, ShapeSampler};
use crate::genfun::{exact_fourier_moments, exact_profile_moments};
use crate::oracle::{self, ordered_key};
use crate::rng::RngStream;
use crate::sampler::random_labelling;
use crate::tree::{
    distance_profile_naive, height_profile, wiener_from_sizes, wiener_index, LabelledTree,
    OrderedTree,
};
use crate::weights::{Model as WeightModel, WeightSpec};

pub const SEED_ENV: &str = "TREEPROFILE_SEED";
const DEFAULT_SEED: u64 = 1;

#[derive(Parser, Debug)]
#[command(name = "treeprofile", version, about = "Random trees and their height and distance profiles")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Common {
    /// Seed; falls back to $TREEPROFILE_SEED, then 1.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads (results do not depend on it).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output directory; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerArg {
    Rooted,
    Modified,
    Unrooted,
    UnrootedVertex,
    UnrootedLeaf,
}

impl From<SamplerArg> for SamplerKind {
    fn from(s: SamplerArg) -> Self {
        match s {
            SamplerArg::Rooted => SamplerKind::Rooted,
            SamplerArg::Modified => SamplerKind::Modified,
            SamplerArg::Unrooted => SamplerKind::Unrooted,
            SamplerArg::UnrootedVertex => SamplerKind::UnrootedVertex,
            SamplerArg::UnrootedLeaf => SamplerKind::UnrootedLeaf,
        }
    }
}

/// Where trees come from: a file, or a sampler.
#[derive(Args, Debug, Clone, Serialize)]
pub struct TreeSource {
    /// Tree file: a parenthesis string, or `u,v` edge lines.
    #[arg(long)]
    pub tree: Option<PathBuf>,
    /// Weight specification (JSON file).
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Root weights for the modified sampler (JSON file).
    #[arg(long)]
    pub root_weights: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    #[arg(long, value_enum, default_value_t = SamplerArg::Rooted)]
    pub sampler: SamplerArg,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Draw random trees.
    Sample {
        #[command(flatten)]
        src: TreeSource,
        #[command(flatten)]
        common: Common,
    },
    /// Height profile `L(k)`, raw or binned on the scaled axis.
    Profile {
        #[command(flatten)]
        src: TreeSource,
        /// Root label for edge-list input.
        #[arg(long, default_value_t = 1)]
        root: u32,
        /// Bin width on the scaled axis `k/√n`; averages over replications.
        #[arg(long)]
        bins: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Distance profile `Λ(k)` over ordered pairs.
    DistProfile {
        #[command(flatten)]
        src: TreeSource,
        #[arg(long)]
        bins: Option<f64>,
        /// Use the quadratic all-sources algorithm.
        #[arg(long)]
        naive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Wiener index.
    Wiener {
        #[command(flatten)]
        src: TreeSource,
        #[command(flatten)]
        common: Common,
    },
    /// Exact `E L_n(k)` and `E Λ_n(k)` from generating functions.
    Exact {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k_max: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Exact lattice Fourier second moments at frequencies `ξ/√n`.
    FourierExact {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        n: usize,
        /// Comma-separated scaled frequencies.
        #[arg(long, value_delimiter = ',', default_value = "0,0.5,1,2,4,8")]
        xi: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// All trees of size `n` with their probabilities.
    Enumerate {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        root_weights: Option<PathBuf>,
        #[arg(long)]
        n: usize,
        /// Law for unrooted weights: the unrooted law or the leaf-biased one.
        #[arg(long)]
        leaf_biased: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Timing of the distance-profile algorithms on sampled trees.
    Bench {
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Comma-separated sizes.
        #[arg(long, value_delimiter = ',', default_value = "1000,2000,4000,8000,16000")]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        reps: usize,
        /// Also time the quadratic algorithm (sizes up to 20000).
        #[arg(long)]
        naive: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Run a named experiment.
    Experiment {
        /// One of the names listed by `--list`.
        name: Option<String>,
        /// JSON configuration; defaults apply to missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        common: Common,
    },
}

/// Echo of a run, written to `manifest.json` before any result.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub seed: u64,
    pub jobs: Option<usize>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub weights: Option<WeightSpec>,
    pub options: serde_json::Value,
    pub version: &'static str,
}

fn resolve_seed(c: &Common) -> Result<u64> {
    if let Some(s) = c.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid_arg(SEED_ENV, format!("`{v}` is not an unsigned integer"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn read_spec(path: &Path) -> Result<WeightSpec> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid_arg("weights", format!("{}: {e}", path.display())))?;
    WeightSpec::from_json(&text).map_err(|e| Error::invalid_arg("weights", e.to_string()))
}

enum InputTree {
    Ordered(OrderedTree),
    Labelled(LabelledTree),
}

fn read_tree(path: &Path) -> Result<InputTree> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::invalid_arg("tree", format!("{}: {e}", path.display())))?;
    if text.trim_start().starts_with('(') {
        Ok(InputTree::Ordered(OrderedTree::from_parens(text.trim())?))
    } else {
        Ok(InputTree::Labelled(LabelledTree::from_csv(&text)?))
    }
}

type ProfileFn = fn(&OrderedTree) -> Vec<u64>;

/// Output sink: stdout, or files under `--out` after the manifest.
struct Sink {
    out: Option<PathBuf>,
    format: Format,
}

impl Sink {
    fn new(common: &Common, manifest: &RunConfig) -> Result<Self> {
        if let Some(dir) = &common.out {
            fs::create_dir_all(dir)?;
            let m = serde_json::to_string_pretty(manifest)?;
            fs::write(dir.join("manifest.json"), m + "\n")?;
        }
        Ok(Self {
            out: common.out.clone(),
            format: common.format,
        })
    }

    fn table(&self, stem: &str, t: &Table) -> Result<()> {
        let (text, ext) = match self.format {
            Format::Csv => (t.to_csv(), "csv"),
            Format::Json => (serde_json::to_string_pretty(&t.to_json())? + "\n", "json"),
        };
        match &self.out {
            Some(dir) => fs::write(dir.join(format!("{stem}.{ext}")), text)?,
            None => {
                let mut o = std::io::stdout().lock();
                o.write_all(text.as_bytes())?;
            }
        }
        Ok(())
    }

    fn json(&self, stem: &str, v: &serde_json::Value) -> Result<()> {
        let text = serde_json::to_string_pretty(v)? + "\n";
        match &self.out {
            Some(dir) => fs::write(dir.join(format!("{stem}.json")), text)?,
            None => eprint!("{text}"),
        }
        Ok(())
    }
}

/// Trees to process: the input file, or `reps` samples.
enum Trees {
    File(InputTree),
    Sampled(Vec<OrderedTree>),
}

fn gather(src: &TreeSource, seed: u64) -> Result<(Trees, Option<WeightSpec>)> {
    if let Some(path) = &src.tree {
        if src.weights.is_some() {
            return Err(Error::invalid_arg("tree", "give either --tree or --weights, not both"));
        }
        return Ok((Trees::File(read_tree(path)?), None));
    }
    let (model, spec, n) = sampling_model(src)?;
    let sampler = ShapeSampler::new(&model, src.sampler.into(), n)?;
    let trees = replicate(seed, 0, src.reps, |rng| sampler.sample(rng))?;
    Ok((Trees::Sampled(trees), Some(spec)))
}

fn sampling_model(src: &TreeSource) -> Result<(Model, WeightSpec, usize)> {
    let wpath = src
        .weights
        .as_ref()
        .ok_or_else(|| Error::invalid_arg("weights", "required unless --tree is given"))?;
    let n = src.n.ok_or_else(|| Error::invalid_arg("n", "required when sampling"))?;
    if src.reps == 0 {
        return Err(Error::invalid_arg("reps", "must be positive"));
    }
    let spec = read_spec(wpath)?;
    let root = src.root_weights.as_deref().map(read_spec).transpose()?;
    Ok((Model::from_specs(&spec, root.as_ref())?, spec, n))
}

fn edge_string(t: &LabelledTree) -> String {
    t.edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn manifest(command: &str, common: &Common, seed: u64, weights: Option<WeightSpec>, options: serde_json::Value) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        seed,
        jobs: common.jobs,
        out: common.out.clone(),
        format: common.format,
        weights,
        options,
        version: env!("CARGO_PKG_VERSION"),
    }
}

/// Binned scaled density averaged over replications.
fn binned_table(profiles: &[Vec<u64>], n: usize, delta: f64, distance: bool) -> Result<Table> {
    if !(delta > 0.0) {
        return Err(Error::invalid_arg("bins", "bin width must be positive"));
    }
    let sn = (n as f64).sqrt();
    let y = if distance { sn * n as f64 } else { sn };
    let longest = profiles.iter().map(|p| p.len()).max().unwrap_or(1);
    let nb = ((longest as f64 / sn) / delta).ceil() as usize + 1;
    let per: Vec<Vec<f64>> = profiles
        .iter()
        .map(|p| BinnedDensity::from_profile(p, sn, y, 0.0, delta, nb, Normalization::Density).mass)
        .collect();
    let mut t = Table::new(&["x0", "x1", "mean", "stderr"]);
    for j in 0..nb {
        let xs: Vec<f64> = per.iter().map(|v| v[j]).collect();
        let (m, se) = if xs.len() >= 2 {
            let e = EstimateWithError::from_samples(&xs, 0)?;
            (e.value, e.stderr)
        } else {
            (xs[0], f64::NAN)
        };
        t.push(vec![fmt(j as f64 * delta), fmt((j + 1) as f64 * delta), fmt(m), fmt(se)]);
    }
    Ok(t)
}

fn counts_table(profiles: &[Vec<u64>], single: bool) -> Table {
    if single {
        let mut t = Table::new(&["k", "count"]);
        for (k, c) in profiles[0].iter().enumerate() {
            t.push(vec![k.to_string(), c.to_string()]);
        }
        t
    } else {
        let mut t = Table::new(&["rep", "k", "count"]);
        for (r, p) in profiles.iter().enumerate() {
            for (k, c) in p.iter().enumerate() {
                t.push(vec![r.to_string(), k.to_string(), c.to_string()]);
            }
        }
        t
    }
}

fn run_command(cmd: Command) -> Result<()> {
    match cmd {
        Command::Sample { src, common } => {
            let seed = resolve_seed(&common)?;
            if src.tree.is_some() {
                return Err(Error::invalid_arg("tree", "sample draws trees; use --weights"));
            }
            let (model, spec, n) = sampling_model(&src)?;
            let m = manifest("sample", &common, seed, Some(spec), json!({"n": n, "reps": src.reps, "sampler": src.sampler}));
            let sink = Sink::new(&common, &m)?;
            let kind: SamplerKind = src.sampler.into();
            let sampler = ShapeSampler::new(&model, kind, n)?;
            let labelled = matches!(
                kind,
                SamplerKind::Unrooted | SamplerKind::UnrootedVertex | SamplerKind::UnrootedLeaf
            );
            let rows = replicate(seed, 0, src.reps, |rng| {
                let t = sampler.sample(rng)?;
                if labelled {
                    Ok(edge_string(&random_labelling(&t, rng)?))
                } else {
                    Ok(t.to_parens())
                }
            })?;
            let mut t = Table::new(&["rep", "tree"]);
            for (i, r) in rows.into_iter().enumerate() {
                t.push(vec![i.to_string(), r]);
            }
            sink.table("samples", &t)
        }
        Command::Profile { src, root, bins, common } => {
            let seed = resolve_seed(&common)?;
            let (trees, spec) = gather(&src, seed)?;
            let m = manifest("profile", &common, seed, spec, json!({"n": src.n, "reps": src.reps, "sampler": src.sampler, "root": root, "bins": bins, "tree": src.tree}));
            let sink = Sink::new(&common, &m)?;
            let (profiles, n, single) = match trees {
                Trees::File(InputTree::Ordered(t)) => (vec![height_profile(&t).counts], t.len(), true),
                Trees::File(InputTree::Labelled(t)) => {
                    let o = t.rooted_at(root)?;
                    (vec![height_profile(&o).counts], o.len(), true)
                }
                Trees::Sampled(ts) => {
                    let n = ts[0].len();
                    (ts.iter().map(|t| height_profile(t).counts).collect(), n, false)
                }
            };
            match bins {
                Some(d) => sink.table("profile", &binned_table(&profiles, n, d, false)?),
                None => sink.table("profile", &counts_table(&profiles, single)),
            }
        }
        Command::DistProfile { src, bins, naive, common } => {
            let seed = resolve_seed(&common)?;
            let (trees, spec) = gather(&src, seed)?;
            let m = manifest("dist-profile", &common, seed, spec, json!({"n": src.n, "reps": src.reps, "sampler": src.sampler, "bins": bins, "naive": naive, "tree": src.tree}));
            let sink = Sink::new(&common, &m)?;
            let dp = |t: &OrderedTree| {
                if naive {
                    distance_profile_naive(t).counts
                } else {
                    distance_profile_fast(t).counts
                }
            };
            let (profiles, n, single) = match trees {
                Trees::File(InputTree::Ordered(t)) => (vec![dp(&t)], t.len(), true),
                Trees::File(InputTree::Labelled(t)) => {
                    let c = if naive {
                        distance_profile_naive(&t).counts
                    } else {
                        distance_profile_fast(&t).counts
                    };
                    (vec![c], t.len(), true)
                }
                Trees::Sampled(ts) => {
                    let n = ts[0].len();
                    (ts.iter().map(dp).collect(), n, false)
                }
            };
            match bins {
                Some(d) => sink.table("dist_profile", &binned_table(&profiles, n, d, true)?),
                None => sink.table("dist_profile", &counts_table(&profiles, single)),
            }
        }
        Command::Wiener { src, common } => {
            let seed = resolve_seed(&common)?;
            let (trees, spec) = gather(&src, seed)?;
            let m = manifest("wiener", &common, seed, spec, json!({"n": src.n, "reps": src.reps, "sampler": src.sampler, "tree": src.tree}));
            let sink = Sink::new(&common, &m)?;
            let mut t = Table::new(&["rep", "n", "wiener"]);
            match trees {
                Trees::File(InputTree::Ordered(o)) => t.push(vec!["0".into(), o.len().to_string(), wiener_from_sizes(&o).to_string()]),
                Trees::File(InputTree::Labelled(l)) => {
                    let w = wiener_index(&distance_profile_fast(&l));
                    t.push(vec!["0".into(), l.len().to_string(), w.to_string()]);
                }
                Trees::Sampled(ts) => {
                    for (i, o) in ts.iter().enumerate() {
                        t.push(vec![i.to_string(), o.len().to_string(), wiener_from_sizes(o).to_string()]);
                    }
                }
            }
            sink.table("wiener", &t)
        }
        Command::Exact { weights, n, k_max, common } => {
            let seed = resolve_seed(&common)?;
            let spec = read_spec(&weights)?;
            let model = Model::from_specs(&spec, None)?;
            let m = manifest("exact", &common, seed, Some(spec), json!({"n": n, "k_max": k_max}));
            let sink = Sink::new(&common, &m)?;
            let e = exact_profile_moments(&model.p, n, k_max)?;
            let mut t = Table::new(&["n", "k", "EL", "ELambda"]);
            for (k, (l, d)) in e.el.iter().zip(&e.elambda).enumerate() {
                t.push(vec![n.to_string(), k.to_string(), fmt(*l), fmt(*d)]);
            }
            sink.table("exact", &t)
        }
        Command::FourierExact { weights, n, xi, common } => {
            let seed = resolve_seed(&common)?;
            let spec = read_spec(&weights)?;
            let model = Model::from_specs(&spec, None)?;
            let m = manifest("fourier-exact", &common, seed, Some(spec), json!({"n": n, "xi": xi}));
            let sink = Sink::new(&common, &m)?;
            let sn = (n as f64).sqrt();
            let ts: Vec<f64> = xi.iter().map(|x| x / sn).collect();
            let mut t = Table::new(&["n", "xi", "t", "EL2hat", "ELambda2hat"]);
            for (r, x) in exact_fourier_moments(&model.p, n, &ts)?.iter().zip(&xi) {
                t.push(vec![n.to_string(), fmt(*x), fmt(r.xi), fmt(r.el2hat), fmt(r.elambda2hat)]);
            }
            sink.table("fourier_exact", &t)
        }
        Command::Enumerate { weights, root_weights, n, leaf_biased, common } => {
            let seed = resolve_seed(&common)?;
            let spec = read_spec(&weights)?;
            let root = root_weights.as_deref().map(read_spec).transpose()?;
            let m = manifest("enumerate", &common, seed, Some(spec.clone()), json!({"n": n, "leaf_biased": leaf_biased, "root_weights": root}));
            let sink = Sink::new(&common, &m)?;
            let mut t = Table::new(&["tree", "probability"]);
            match spec.to_model()? {
                WeightModel::Unrooted(w) => {
                    let ens = if leaf_biased {
                        oracle::exact_leafbiased_law(&w, n)?
                    } else {
                        oracle::exact_unrooted_law(&w, n)?
                    };
                    for (tr, p) in &ens.items {
                        t.push(vec![edge_string(tr), fmt(p / ens.total)]);
                    }
                }
                WeightModel::Rooted(_) => {
                    let model = Model::from_specs(&spec, root.as_ref())?;
                    let ens = match (&root, &model.p0) {
                        (Some(_), Some(p0)) => oracle::exact_modified_law(&model.p, p0, n)?,
                        _ => oracle::exact_conditioned_law(&model.p, n)?,
                    };
                    for (tr, p) in &ens.items {
                        t.push(vec![ordered_key(tr), fmt(p / ens.total)]);
                    }
                }
            }
            sink.table("trees", &t)
        }
        Command::Bench { weights, sizes, reps, naive, common } => {
            let seed = resolve_seed(&common)?;
            let spec = match &weights {
                Some(p) => read_spec(p)?,
                None => experiments::default_weights(),
            };
            let model = Model::from_specs(&spec, None)?;
            let m = manifest("bench", &common, seed, Some(spec), json!({"sizes": sizes, "reps": reps, "naive": naive}));
            let sink = Sink::new(&common, &m)?;
            let mut t = Table::new(&["n", "algorithm", "wall_ms", "checksum"]);
            for (g, &n) in sizes.iter().enumerate() {
                let sampler = ShapeSampler::new(&model, SamplerKind::Rooted, n)?;
                for r in 0..reps.max(1) {
                    let mut rng = RngStream::new(seed, experiments::stream_id(g, r));
                    let tree = sampler.sample(&mut rng)?;
                    let mut algos: Vec<(&str, ProfileFn)> =
                        vec![("fast", |t| distance_profile_fast(t).counts)];
                    if naive && n <= 20_000 {
                        algos.push(("naive", |t| distance_profile_naive(t).counts));
                    }
                    for (name, f) in algos {
                        let start = Instant::now();
                        let c = f(&tree);
                        let ms = start.elapsed().as_secs_f64() * 1e3;
                        let checksum: u128 = c.iter().enumerate().map(|(k, &x)| k as u128 * x as u128).sum();
                        t.push(vec![n.to_string(), name.into(), format!("{ms:.3}"), checksum.to_string()]);
                    }
                }
            }
            sink.table("bench", &t)
        }
        Command::Experiment { name, config, list, common } => {
            if list {
                let mut o = std::io::stdout().lock();
                for e in experiments::EXPERIMENTS {
                    if writeln!(o, "{e}").is_err() {
                        break;
                    }
                }
                return Ok(());
            }
            let name = name.ok_or_else(|| Error::invalid_arg("name", "experiment name required (see --list)"))?;
            let seed = resolve_seed(&common)?;
            let text = match &config {
                Some(p) => fs::read_to_string(p)
                    .map_err(|e| Error::invalid_arg("config", format!("{}: {e}", p.display())))?,
                None => String::new(),
            };
            // parse before touching the output directory
            let (echo, _) = experiments::parse_config(&name, &text)?;
            let m = manifest("experiment", &common, seed, None, json!({"name": name, "config": echo}));
            let sink = Sink::new(&common, &m)?;
            let (_, out) = experiments::run_named(&name, &text, seed)?;
            sink.table("results", &out.results)?;
            if common.out.is_some() {
                sink.table("reference", &out.reference)?;
            }
            sink.json("summary", &out.summary)
        }
    }
}

fn jobs_of(cmd: &Command) -> Option<usize> {
    match cmd {
        Command::Sample { common, .. }
        | Command::Profile { common, .. }
        | Command::DistProfile { common, .. }
        | Command::Wiener { common, .. }
        | Command::Exact { common, .. }
        | Command::FourierExact { common, .. }
        | Command::Enumerate { common, .. }
        | Command::Bench { common, .. }
        | Command::Experiment { common, .. } => common.jobs,
    }
}

/// Parses `argv` and runs the subcommand, mapping errors to exit codes.
pub fn run<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(j) = jobs_of(&cli.command) {
        if j == 0 {
            eprintln!("error: invalid argument `jobs`: must be positive");
            return ExitCode::from(1);
        }
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    match run_command(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
