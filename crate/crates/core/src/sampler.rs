//! Exact-size samplers.
//!
//! A conditioned GW tree is drawn by rejection on the offspring counts and
//! the cycle lemma. Instead of drawing `n` offspring values one by one, each
//! attempt draws the vector of counts `(N_0, N_1, …)` of a multinomial with
//! `n` trials and cell probabilities `p_k` (sequential binomials), rejects
//! unless `Σ k N_k = n − 1`, and only then lays out and shuffles the `n`
//! values. Conditionally on the counts the shuffled sequence is uniform
//! over its arrangements, so the law is that of `n` i.i.d. draws
//! conditioned on their sum, while a rejected attempt costs `O(|support|)`
//! rather than `O(n)`.

use rand::seq::SliceRandom;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::genfun::{self, Series};
use crate::rng::RngStream;
use crate::tree::{LabelledTree, OrderedTree};
use crate::weights::{unrooted_critical, OffspringDistribution, WeightSequence};

/// Attempts allowed before the size conditioning gives up.
pub const RETRY_CAP: u64 = 10_000_000;

/// Largest forest for which tree sizes are split with powers of `A(z)`;
/// bigger forests use the cycle lemma on the whole forest code.
pub const MAX_SPLIT_TREES: usize = 64;

/// Index drawn from unnormalized nonnegative weights.
fn draw_index(weights: &[f64], total: f64, rng: &mut RngStream) -> usize {
    let u = rng.uniform() * total;
    let mut acc = 0.0;
    for (i, &w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return i;
        }
    }
    weights.iter().rposition(|&w| w > 0.0).unwrap_or(0)
}

/// Cumulative table for repeated draws.
#[derive(Clone, Debug)]
pub(crate) struct Discrete {
    cdf: Vec<f64>,
}

impl Discrete {
    pub(crate) fn new(weights: &[f64]) -> Option<Self> {
        let mut cdf = Vec::with_capacity(weights.len());
        let mut acc = 0.0;
        for &w in weights {
            acc += w.max(0.0);
            cdf.push(acc);
        }
        if acc > 0.0 {
            Some(Self { cdf })
        } else {
            None
        }
    }

    pub(crate) fn sample(&self, rng: &mut RngStream) -> usize {
        let total = *self.cdf.last().unwrap();
        let u = rng.uniform() * total;
        let i = self.cdf.partition_point(|&c| c <= u);
        i.min(self.cdf.len() - 1)
    }
}

/// Conditioned GW sampler for one offspring law.
#[derive(Clone, Debug)]
pub struct ConditionedSampler {
    p: OffspringDistribution,
    probs: Vec<f64>,
}

impl ConditionedSampler {
    pub fn new(p: &OffspringDistribution) -> Result<Self> {
        p.require_critical()?;
        if p.law().radius() == 0.0 {
            return Err(Error::RadiusZero);
        }
        Ok(Self {
            p: p.clone(),
            probs: p.probs().to_vec(),
        })
    }

    pub fn law(&self) -> &OffspringDistribution {
        &self.p
    }

    /// Checks that a forest of `k` trees with `n` vertices can exist.
    pub fn check_feasible(&self, n: usize, k: usize) -> Result<()> {
        if k == 0 || k > n {
            return Err(Error::Infeasible {
                n,
                reason: format!("a forest of {k} trees cannot have {n} vertices"),
            });
        }
        let span = self.p.span();
        if !(n - k).is_multiple_of(span) {
            return Err(Error::Infeasible {
                n,
                reason: format!(
                    "offspring span is {span}; feasible sizes satisfy n ≡ {k} (mod {span})"
                ),
            });
        }
        let max_deg = self.probs.len() - 1;
        if self.probs[0] == 0.0 || (n - k) > n * max_deg {
            return Err(Error::Infeasible {
                n,
                reason: "offspring support cannot produce this size".to_string(),
            });
        }
        Ok(())
    }

    /// Offspring counts `N_k` with `Σ N_k = n` and `Σ k N_k = target`.
    fn counts(&self, n: usize, target: usize, rng: &mut RngStream) -> Result<Vec<u64>> {
        let mut counts = vec![0u64; self.probs.len()];
        for _ in 0..RETRY_CAP {
            let mut left = n as u64;
            let mut mass = 1.0f64;
            let mut sum = 0usize;
            let mut ok = true;
            for (k, &pk) in self.probs.iter().enumerate() {
                if left == 0 {
                    counts[k] = 0;
                    continue;
                }
                let c = if k + 1 == self.probs.len() || pk >= mass {
                    left
                } else if pk <= 0.0 {
                    0
                } else {
                    let q = (pk / mass).clamp(0.0, 1.0);
                    Binomial::new(left, q)
                        .map_err(|e| Error::Numerical(e.to_string()))?
                        .sample(rng)
                };
                counts[k] = c;
                left -= c;
                mass -= pk;
                sum += k * c as usize;
                if sum > target {
                    ok = false;
                    break;
                }
            }
            if ok && sum == target {
                return Ok(counts);
            }
        }
        Err(Error::RetryCapExceeded { n, cap: RETRY_CAP })
    }

    /// I.i.d. offspring sequence of length `n` conditioned on summing to
    /// `n − k`.
    fn conditioned_sequence(&self, n: usize, k: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
        self.check_feasible(n, k)?;
        let counts = self.counts(n, n - k, rng)?;
        let mut seq = Vec::with_capacity(n);
        for (d, &c) in counts.iter().enumerate() {
            seq.extend(std::iter::repeat_n(d, c as usize));
        }
        seq.shuffle(rng);
        Ok(seq)
    }

    /// Depth-first out-degree sequence of a conditioned tree.
    pub fn outdegrees(&self, n: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
        let seq = self.conditioned_sequence(n, 1, rng)?;
        Ok(cycle_lemma_rotation(&seq, 0))
    }

    pub fn sample(&self, n: usize, rng: &mut RngStream) -> Result<OrderedTree> {
        OrderedTree::from_outdegrees(&self.outdegrees(n, rng)?)
    }

    /// Concatenated codes of a forest of `k` trees with `n` vertices in
    /// total, by the cycle lemma for forests: among the `k` rotations that
    /// give a valid forest code one is chosen uniformly.
    pub fn forest_outdegrees(&self, n: usize, k: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
        let seq = self.conditioned_sequence(n, k, rng)?;
        let j = if k == 1 { 0 } else { rng.below(k) };
        Ok(cycle_lemma_rotation(&seq, j))
    }
}

/// Rotation of an offspring sequence with walk ending at `−k` that starts
/// right after the first visit of level `min + j` (`j < k`). With `j = 0`
/// this is the unique rotation whose walk stays nonnegative until the last
/// step.
pub fn cycle_lemma_rotation(seq: &[usize], j: usize) -> Vec<usize> {
    let n = seq.len();
    let mut walk: i64 = 0;
    let mut min = 0i64;
    for &d in seq {
        walk += d as i64 - 1;
        min = min.min(walk);
    }
    let level = min + j as i64;
    debug_assert!(level <= -1);
    let mut walk = 0i64;
    let mut cut = n;
    for (i, &d) in seq.iter().enumerate() {
        walk += d as i64 - 1;
        if walk == level {
            cut = i + 1;
            break;
        }
    }
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&seq[cut % n..]);
    out.extend_from_slice(&seq[..cut % n]);
    out
}

/// Splits a forest code into the codes of its trees.
pub fn split_forest_code(code: &[usize]) -> Vec<&[usize]> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut walk = 0i64;
    for (i, &d) in code.iter().enumerate() {
        walk += d as i64 - 1;
        if walk == -1 {
            out.push(&code[start..=i]);
            start = i + 1;
            walk = 0;
        }
    }
    out
}

/// Draws `GW_n`.
pub fn sample_conditioned_gw(p: &OffspringDistribution, n: usize, rng: &mut RngStream) -> Result<OrderedTree> {
    ConditionedSampler::new(p)?.sample(n, rng)
}

/// Splits a total size among `m` trees with probability `∝ Π a_{n_i}`,
/// using the coefficients of `A(z)^j`.
#[derive(Clone, Debug)]
pub struct SizeSplitter {
    /// `powers[j] = A^j` for `j = 0..=m_max`.
    powers: Vec<Series>,
}

impl SizeSplitter {
    pub fn new(p: &OffspringDistribution, n: usize, m_max: usize) -> Result<Self> {
        let a = genfun::solve_A(p, n)?;
        let mut powers = vec![Series::constant(1.0, n)];
        for j in 1..=m_max {
            let next = powers[j - 1].mul(&a);
            powers.push(next);
        }
        Ok(Self { powers })
    }

    pub fn max_trees(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn max_size(&self) -> usize {
        self.powers[0].order()
    }

    /// `[z^n] A(z)^m`.
    pub fn forest_prob(&self, n: usize, m: usize) -> f64 {
        self.powers[m].coeff(n)
    }

    /// Sizes `(n_1, …, n_m)` in order.
    pub fn split(&self, n: usize, m: usize, rng: &mut RngStream) -> Result<Vec<usize>> {
        if m == 0 || m > n || m > self.max_trees() || n > self.max_size() {
            return Err(Error::Infeasible {
                n,
                reason: format!("cannot split {n} vertices into {m} trees"),
            });
        }
        let a = &self.powers[1];
        let mut sizes = Vec::with_capacity(m);
        let mut left = n;
        for j in (1..=m).rev() {
            if j == 1 {
                sizes.push(left);
                break;
            }
            let rest = &self.powers[j - 1];
            let w: Vec<f64> = (1..=left - (j - 1))
                .map(|s| (a.coeff(s) * rest.coeff(left - s)).max(0.0))
                .collect();
            let total: f64 = w.iter().sum();
            if !(total > 0.0) {
                return Err(Error::Infeasible {
                    n,
                    reason: format!("no feasible size split into {m} trees"),
                });
            }
            let s = draw_index(&w, total, rng) + 1;
            sizes.push(s);
            left -= s;
        }
        Ok(sizes)
    }
}

/// Draws the conditioned forest `GW_{n,m}`.
pub fn sample_forest(
    p: &OffspringDistribution,
    n: usize,
    m: usize,
    rng: &mut RngStream,
) -> Result<Vec<OrderedTree>> {
    let cond = ConditionedSampler::new(p)?;
    cond.check_feasible(n, m)?;
    if m > MAX_SPLIT_TREES {
        let code = cond.forest_outdegrees(n, m, rng)?;
        return split_forest_code(&code)
            .into_iter()
            .map(OrderedTree::from_outdegrees)
            .collect();
    }
    let splitter = SizeSplitter::new(p, n, m)?;
    splitter
        .split(n, m, rng)?
        .into_iter()
        .map(|s| cond.sample(s, rng))
        .collect()
}

/// Modified GW sampler at a fixed size: root offspring from `p°`, all other
/// vertices from `p`.
#[derive(Clone, Debug)]
pub struct ModifiedSampler {
    cond: ConditionedSampler,
    n: usize,
    root: Option<Discrete>,
    root_law: Vec<f64>,
    splitter: Option<SizeSplitter>,
}

impl ModifiedSampler {
    pub fn new(p: &OffspringDistribution, p0: &OffspringDistribution, n: usize) -> Result<Self> {
        let cond = ConditionedSampler::new(p)?;
        if n == 0 {
            return Err(Error::invalid_arg("n", "size must be at least 1"));
        }
        if n == 1 {
            if p0.p(0) <= 0.0 {
                return Err(Error::Infeasible {
                    n,
                    reason: "root law gives no mass to 0 children".to_string(),
                });
            }
            return Ok(Self {
                cond,
                n,
                root: None,
                root_law: vec![1.0],
                splitter: None,
            });
        }
        let m = n - 1;
        let kmax = m.min(p0.probs().len().saturating_sub(1));
        let s = genfun::sum_distribution(p, m, m);
        let mut law = vec![0.0; kmax + 1];
        for (k, l) in law.iter_mut().enumerate().skip(1) {
            *l = p0.p(k) * k as f64 / m as f64 * s[m - k];
        }
        let total: f64 = law.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Infeasible {
                n,
                reason: "no root degree is feasible".to_string(),
            });
        }
        for l in law.iter_mut() {
            *l /= total;
        }
        // powers of A only up to the root degrees that carry real mass
        let mut acc = 0.0;
        let mut kcut = 0;
        for (k, &l) in law.iter().enumerate() {
            acc += l;
            kcut = k;
            if acc >= 1.0 - 1e-12 {
                break;
            }
        }
        let kcut = kcut.clamp(1, MAX_SPLIT_TREES);
        let splitter = SizeSplitter::new(p, m, kcut)?;
        Ok(Self {
            cond,
            n,
            root: Discrete::new(&law),
            root_law: law,
            splitter: Some(splitter),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Exact root-degree law at this size, indexed by `k`.
    pub fn root_degree_law(&self) -> &[f64] {
        &self.root_law
    }

    pub fn outdegrees(&self, rng: &mut RngStream) -> Result<Vec<usize>> {
        if self.n == 1 {
            return Ok(vec![0]);
        }
        let k = self.root.as_ref().expect("n > 1").sample(rng);
        let m = self.n - 1;
        let mut code = Vec::with_capacity(self.n);
        code.push(k);
        let splitter = self.splitter.as_ref().expect("n > 1");
        if k <= splitter.max_trees() {
            for s in splitter.split(m, k, rng)? {
                code.extend(self.cond.outdegrees(s, rng)?);
            }
        } else {
            code.extend(self.cond.forest_outdegrees(m, k, rng)?);
        }
        Ok(code)
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<OrderedTree> {
        OrderedTree::from_outdegrees(&self.outdegrees(rng)?)
    }
}

/// Draws `GW^{p,p°}_n`.
pub fn sample_modified_gw(
    p: &OffspringDistribution,
    p0: &OffspringDistribution,
    n: usize,
    rng: &mut RngStream,
) -> Result<OrderedTree> {
    ModifiedSampler::new(p, p0, n)?.sample(rng)
}

/// Uniform labelling of an ordered tree by a Fisher–Yates permutation.
pub fn random_labelling(t: &OrderedTree, rng: &mut RngStream) -> Result<LabelledTree> {
    let mut labels: Vec<u32> = (1..=t.len() as u32).collect();
    labels.shuffle(rng);
    t.to_labelled(&labels)
}

/// The three reductions of unrooted trees to rooted ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Marking {
    Vertex,
    Edge,
    /// Leaf-biased: the law is tilted by the number of leaves.
    Leaf,
}

/// Unrooted simply generated tree sampler at a fixed size. Shapes are
/// returned as ordered trees rooted at an arbitrary vertex; only the
/// underlying unrooted tree is meaningful.
#[derive(Clone, Debug)]
pub struct UnrootedSampler {
    marking: Marking,
    n: usize,
    cond: ConditionedSampler,
    modified: Option<ModifiedSampler>,
    edge_split: Option<Discrete>,
}

impl UnrootedSampler {
    pub fn new(w: &WeightSequence, n: usize, marking: Marking) -> Result<Self> {
        let (p, p0) = unrooted_critical(w)?;
        Self::from_laws(&p, &p0, n, marking)
    }

    /// Builds from the critical pair `(p, p°)` of the weights.
    pub fn from_laws(
        p: &OffspringDistribution,
        p0: &OffspringDistribution,
        n: usize,
        marking: Marking,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid_arg("n", "size must be at least 1"));
        }
        if marking != Marking::Vertex && n < 2 {
            return Err(Error::invalid_arg("n", "this marking needs n ≥ 2"));
        }
        let cond = ConditionedSampler::new(p)?;
        let mut s = Self {
            marking,
            n,
            cond,
            modified: None,
            edge_split: None,
        };
        match marking {
            Marking::Vertex => s.modified = Some(ModifiedSampler::new(p, p0, n)?),
            Marking::Edge => {
                let a = genfun::solve_A(p, n)?;
                let w: Vec<f64> = (1..n).map(|m| a.coeff(m) * a.coeff(n - m)).collect();
                s.edge_split = Some(Discrete::new(&w).ok_or_else(|| Error::Infeasible {
                    n,
                    reason: "no size split of the marked edge is feasible".to_string(),
                })?);
            }
            Marking::Leaf => s.cond.check_feasible(n - 1, 1)?,
        }
        Ok(s)
    }

    pub fn marking(&self) -> Marking {
        self.marking
    }

    /// Rooted out-degree code of the sampled shape.
    pub fn outdegrees(&self, rng: &mut RngStream) -> Result<Vec<usize>> {
        match self.marking {
            Marking::Vertex => self.modified.as_ref().unwrap().outdegrees(rng),
            Marking::Edge => {
                let m = self.edge_split.as_ref().unwrap().sample(rng) + 1;
                let mut code = self.cond.outdegrees(m, rng)?;
                code[0] += 1;
                code.extend(self.cond.outdegrees(self.n - m, rng)?);
                Ok(code)
            }
            Marking::Leaf => {
                let mut code = vec![1];
                code.extend(self.cond.outdegrees(self.n - 1, rng)?);
                Ok(code)
            }
        }
    }

    pub fn sample_shape(&self, rng: &mut RngStream) -> Result<OrderedTree> {
        OrderedTree::from_outdegrees(&self.outdegrees(rng)?)
    }

    pub fn sample(&self, rng: &mut RngStream) -> Result<LabelledTree> {
        let t = self.sample_shape(rng)?;
        random_labelling(&t, rng)
    }
}

pub fn sample_unrooted_vertexmark(w: &WeightSequence, n: usize, rng: &mut RngStream) -> Result<LabelledTree> {
    UnrootedSampler::new(w, n, Marking::Vertex)?.sample(rng)
}

pub fn sample_unrooted_edgemark(w: &WeightSequence, n: usize, rng: &mut RngStream) -> Result<LabelledTree> {
    UnrootedSampler::new(w, n, Marking::Edge)?.sample(rng)
}

/// Leaf-biased sampler: the law is `∝ N_0(T) w(T)`, not the unrooted law.
pub fn sample_unrooted_leafmark(w: &WeightSequence, n: usize, rng: &mut RngStream) -> Result<LabelledTree> {
    UnrootedSampler::new(w, n, Marking::Leaf)?.sample(rng)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotation_gives_valid_codes() {
        let seq = [0, 2, 0, 1, 1];
        let r = cycle_lemma_rotation(&seq, 0);
        assert!(OrderedTree::from_outdegrees(&r).is_ok());
        // forest with walk ending at −2: both choices decode into 2 trees
        let seq = [0, 0, 1, 0, 2, 0, 2];
        for j in 0..2 {
            let r = cycle_lemma_rotation(&seq, j);
            assert_eq!(split_forest_code(&r).len(), 2);
        }
    }

    #[test]
    fn singletons_and_forced_shapes() {
        let p = OffspringDistribution::geometric(0.5).unwrap();
        let mut rng = RngStream::new(1, 0);
        assert_eq!(sample_conditioned_gw(&p, 1, &mut rng).unwrap().len(), 1);
        let f = sample_forest(&p, 5, 5, &mut rng).unwrap();
        assert!(f.iter().all(|t| t.len() == 1));
        let t = sample_modified_gw(&p, &p, 2, &mut rng).unwrap();
        assert_eq!(t.outdegrees(), vec![1, 0]);
    }

    #[test]
    fn span_is_enforced() {
        let p = OffspringDistribution::from_probabilities(vec![0.5, 0.0, 0.5]).unwrap();
        let mut rng = RngStream::new(1, 0);
        assert!(matches!(
            sample_conditioned_gw(&p, 4, &mut rng),
            Err(Error::Infeasible { .. })
        ));
        assert_eq!(sample_conditioned_gw(&p, 5, &mut rng).unwrap().len(), 5);
    }

    #[test]
    fn geometric_split_law() {
        let p = OffspringDistribution::geometric(0.5).unwrap();
        let s = SizeSplitter::new(&p, 4, 2).unwrap();
        let mut rng = RngStream::new(3, 0);
        let mut c = [0u32; 4];
        for _ in 0..20000 {
            c[s.split(4, 2, &mut rng).unwrap()[0]] += 1;
        }
        let f = |x: u32| x as f64 / 20000.0;
        assert!((f(c[1]) - 0.4).abs() < 0.02);
        assert!((f(c[2]) - 0.2).abs() < 0.02);
        assert!((f(c[3]) - 0.4).abs() < 0.02);
    }
}
