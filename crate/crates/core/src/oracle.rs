//! Brute-force exact laws on small trees.
//!
//! Everything here enumerates the whole space, so sizes are capped: ordered
//! trees up to 12 vertices (Catalan(11) = 58786 trees) and labelled trees up
//! to 8 vertices (8⁶ = 262144 Prüfer codes).

use std::collections::BTreeMap;

use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};
use crate::tree::{
    distance_profile_naive, height_profile, wiener_index, LabelledTree, OrderedTree, PointedTree,
    TreeLike,
};
use crate::weights::{OffspringDistribution, WeightSequence};

pub const ORDERED_CAP: usize = 12;
pub const LABELLED_CAP: usize = 8;

/// All ordered trees with `n` vertices, in lexicographic order of their
/// out-degree sequences.
pub fn enumerate_ordered(n: usize) -> Result<Vec<OrderedTree>> {
    if n == 0 {
        return Err(Error::invalid_arg("n", "size must be at least 1"));
    }
    if n > ORDERED_CAP {
        return Err(Error::TooLarge { n, cap: ORDERED_CAP });
    }
    let mut out = Vec::new();
    let mut deg = Vec::with_capacity(n);
    // `open` = number of vertices still waiting to be visited
    fn rec(n: usize, open: usize, deg: &mut Vec<usize>, out: &mut Vec<OrderedTree>) {
        let left = n - deg.len();
        if left == 0 {
            if open == 0 {
                out.push(OrderedTree::from_outdegrees(deg).expect("valid code"));
            }
            return;
        }
        if open == 0 {
            return;
        }
        // the remaining `left` vertices must absorb the open slots
        for d in 0..left {
            let next_open = open - 1 + d;
            if next_open > left - 1 {
                break;
            }
            deg.push(d);
            rec(n, next_open, deg, out);
            deg.pop();
        }
    }
    rec(n, 1, &mut deg, &mut out);
    Ok(out)
}

/// All labelled trees on `{1..n}`, decoded from Prüfer codes in
/// lexicographic order.
pub fn enumerate_labelled(n: usize) -> Result<Vec<LabelledTree>> {
    if n == 0 {
        return Err(Error::invalid_arg("n", "size must be at least 1"));
    }
    if n > LABELLED_CAP {
        return Err(Error::TooLarge { n, cap: LABELLED_CAP });
    }
    if n == 1 {
        return Ok(vec![LabelledTree::new(1, Vec::new())?]);
    }
    let len = n - 2;
    let total = n.pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut code = vec![0usize; len];
    for idx in 0..total {
        let mut r = idx;
        for c in code.iter_mut().rev() {
            *c = r % n;
            r /= n;
        }
        out.push(prufer_decode(n, &code)?);
    }
    Ok(out)
}

/// Decodes a Prüfer code over `0..n` into a tree on labels `1..=n`.
pub fn prufer_decode(n: usize, code: &[usize]) -> Result<LabelledTree> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf as u32 + 1, c as u32 + 1));
        degree[leaf] = 0;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0] as u32 + 1, rest[1] as u32 + 1));
    LabelledTree::new(n, edges)
}

/// Trees with nonnegative weights.
#[derive(Clone, Debug)]
pub struct WeightedEnsemble<T> {
    pub items: Vec<(T, f64)>,
    pub total: f64,
}

impl<T> WeightedEnsemble<T> {
    pub fn new(items: Vec<(T, f64)>) -> Result<Self> {
        if items.iter().any(|(_, w)| !(*w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidWeights("ensemble weights must be finite and ≥ 0".into()));
        }
        let total = items.iter().map(|(_, w)| w).sum();
        Ok(Self { items, total })
    }

    /// Rescales weights to probabilities.
    pub fn normalized(mut self) -> Result<Self> {
        if !(self.total > 0.0) {
            return Err(Error::InvalidWeights("total weight is zero".into()));
        }
        let t = self.total;
        for (_, w) in self.items.iter_mut() {
            *w /= t;
        }
        self.total = 1.0;
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Probabilities keyed by `key`, merging items with equal keys.
    pub fn law_by<K: Ord>(&self, key: impl Fn(&T) -> K) -> BTreeMap<K, f64> {
        let mut m = BTreeMap::new();
        for (t, w) in &self.items {
            *m.entry(key(t)).or_insert(0.0) += w / self.total;
        }
        m
    }
}

/// `Π_v p_{outdeg(v)}` with the root's factor taken from `root` when given.
fn ordered_weight(t: &OrderedTree, p: &OffspringDistribution, root: Option<&OffspringDistribution>) -> f64 {
    (0..t.len())
        .map(|v| {
            let d = t.outdegree(v);
            match (v, root) {
                (0, Some(r)) => r.p(d),
                _ => p.p(d),
            }
        })
        .product()
}

/// Exact law of the conditioned GW tree with `n` vertices.
pub fn exact_conditioned_law(p: &OffspringDistribution, n: usize) -> Result<WeightedEnsemble<OrderedTree>> {
    let items = enumerate_ordered(n)?
        .into_iter()
        .map(|t| {
            let w = ordered_weight(&t, p, None);
            (t, w)
        })
        .collect();
    WeightedEnsemble::new(items)?.normalized()
}

/// Exact law of the modified GW tree (root offspring from `p0`).
pub fn exact_modified_law(
    p: &OffspringDistribution,
    p0: &OffspringDistribution,
    n: usize,
) -> Result<WeightedEnsemble<OrderedTree>> {
    let items = enumerate_ordered(n)?
        .into_iter()
        .map(|t| {
            let w = ordered_weight(&t, p, Some(p0));
            (t, w)
        })
        .collect();
    WeightedEnsemble::new(items)?.normalized()
}

fn labelled_weight(t: &LabelledTree, w: &WeightSequence) -> f64 {
    t.degrees().iter().map(|&d| w.coefficient(d)).product()
}

/// Exact law of the unrooted simply generated tree: `∝ Π_v w_{d(v)}`.
pub fn exact_unrooted_law(w: &WeightSequence, n: usize) -> Result<WeightedEnsemble<LabelledTree>> {
    let items = enumerate_labelled(n)?
        .into_iter()
        .map(|t| {
            let x = labelled_weight(&t, w);
            (t, x)
        })
        .collect();
    WeightedEnsemble::new(items)?.normalized()
}

/// Leaf-biased law: `∝ N_0(T) Π_v w_{d(v)}` with `N_0` the leaf count.
pub fn exact_leafbiased_law(w: &WeightSequence, n: usize) -> Result<WeightedEnsemble<LabelledTree>> {
    let items = enumerate_labelled(n)?
        .into_iter()
        .map(|t| {
            let x = labelled_weight(&t, w) * t.leaf_count() as f64;
            (t, x)
        })
        .collect();
    WeightedEnsemble::new(items)?.normalized()
}

/// Statistics of ordered trees with exact expectations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    HeightProfile,
    DistanceProfile,
    Width,
    Height,
    Diameter,
    Wiener,
    RootDegree,
    /// Size of the largest branch at the root.
    LargestBranch,
}

impl Statistic {
    /// Value of the statistic on one tree; profiles are vectors.
    pub fn eval(self, t: &OrderedTree) -> Vec<f64> {
        match self {
            Statistic::HeightProfile => height_profile(t).counts.iter().map(|&c| c as f64).collect(),
            Statistic::DistanceProfile => distance_profile_naive(t)
                .counts
                .iter()
                .map(|&c| c as f64)
                .collect(),
            Statistic::Width => vec![height_profile(t).width() as f64],
            Statistic::Height => vec![height_profile(t).height() as f64],
            Statistic::Diameter => vec![t.adjacency().diameter() as f64],
            Statistic::Wiener => vec![wiener_index(&distance_profile_naive(t)) as f64],
            Statistic::RootDegree => vec![t.outdegree(0) as f64],
            Statistic::LargestBranch => {
                let s = t.subtree_sizes();
                vec![t.children(0).iter().map(|&c| s[c]).max().unwrap_or(0) as f64]
            }
        }
    }
}

/// Exact expectation of a vector-valued statistic; shorter vectors are
/// padded with zeros.
pub fn exact_expectation<T>(ens: &WeightedEnsemble<T>, f: impl Fn(&T) -> Vec<f64>) -> Vec<f64> {
    let mut acc: Vec<f64> = Vec::new();
    for (t, w) in &ens.items {
        let v = f(t);
        if v.len() > acc.len() {
            acc.resize(v.len(), 0.0);
        }
        for (a, x) in acc.iter_mut().zip(v) {
            *a += w * x;
        }
    }
    let total = ens.total;
    acc.iter().map(|a| a / total).collect()
}

/// Exact moments of a named statistic under an ordered-tree ensemble.
pub fn exact_moments(ens: &WeightedEnsemble<OrderedTree>, stat: Statistic) -> Vec<f64> {
    exact_expectation(ens, |t| stat.eval(t))
}

/// Key compared by [`check_reroot_preservation`]: size of `T^v`, depth of
/// the mark, the fringe subtree at the mark and the full height profile.
type RerootKey = (usize, usize, String, Vec<u64>);

fn reroot_key(pt: &PointedTree) -> RerootKey {
    (
        pt.trunk_size(),
        pt.mark_depth(),
        pt.tree.fringe(pt.mark).to_parens(),
        height_profile(&pt.tree).counts,
    )
}

/// Pushes the pointed-tree measure `P•((T,v)) = P(GW = T)` restricted to
/// `|T| ≤ n_max` through [`crate::tree::reroot_transform`] and returns the
/// largest absolute discrepancy between the laws of [`RerootKey`] before
/// and after.
pub fn check_reroot_preservation(p: &OffspringDistribution, n_max: usize) -> Result<f64> {
    let mut before: BTreeMap<RerootKey, f64> = BTreeMap::new();
    let mut after: BTreeMap<RerootKey, f64> = BTreeMap::new();
    for n in 1..=n_max {
        for t in enumerate_ordered(n)? {
            let w = ordered_weight(&t, p, None);
            for v in 0..n {
                let pt = PointedTree::new(t.clone(), v)?;
                *before.entry(reroot_key(&pt)).or_insert(0.0) += w;
                let img = crate::tree::reroot_transform(&pt);
                if img.tree.len() != n || img.tree.fringe(img.mark) != t.fringe(v) {
                    return Ok(f64::INFINITY);
                }
                *after.entry(reroot_key(&img)).or_insert(0.0) += w;
            }
        }
    }
    let mut worst: f64 = 0.0;
    for (k, &b) in &before {
        worst = worst.max((b - after.get(k).copied().unwrap_or(0.0)).abs());
    }
    for (k, &a) in &after {
        if !before.contains_key(k) {
            worst = worst.max(a);
        }
    }
    Ok(worst)
}

/// Pearson goodness-of-fit result.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct ChiSquare {
    pub statistic: f64,
    pub p_value: f64,
    pub dof: usize,
    pub cells: usize,
}

/// Minimum expected count per pooled cell.
pub const MIN_EXPECTED: f64 = 5.0;

/// Pearson test of `observed` counts against cell probabilities `probs`.
///
/// Cells are pooled smallest-expected-first until each pooled cell expects
/// at least 5 observations. Observations in a zero-probability cell give
/// an infinite statistic.
pub fn chi_square_compare(probs: &[f64], observed: &[u64]) -> Result<ChiSquare> {
    if probs.len() != observed.len() {
        return Err(Error::invalid_arg("observed", "length differs from the law"));
    }
    let total: u64 = observed.iter().sum();
    if total == 0 {
        return Err(Error::invalid_arg("observed", "no observations"));
    }
    let mass: f64 = probs.iter().sum();
    let nt = total as f64;
    let mut cells: Vec<(f64, u64)> = Vec::new();
    for (&p, &o) in probs.iter().zip(observed) {
        if p <= 0.0 {
            if o > 0 {
                return Ok(ChiSquare {
                    statistic: f64::INFINITY,
                    p_value: 0.0,
                    dof: 0,
                    cells: 0,
                });
            }
            continue;
        }
        cells.push((p / mass * nt, o));
    }
    cells.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut pooled: Vec<(f64, u64)> = Vec::new();
    let mut cur = (0.0, 0u64);
    for c in cells {
        cur.0 += c.0;
        cur.1 += c.1;
        if cur.0 >= MIN_EXPECTED {
            pooled.push(cur);
            cur = (0.0, 0);
        }
    }
    if cur.0 > 0.0 || cur.1 > 0 {
        match pooled.last_mut() {
            Some(last) => {
                last.0 += cur.0;
                last.1 += cur.1;
            }
            None => pooled.push(cur),
        }
    }
    if pooled.len() < 2 {
        return Err(Error::Numerical(
            "fewer than two cells remain after pooling".into(),
        ));
    }
    let statistic: f64 = pooled
        .iter()
        .map(|&(e, o)| {
            let d = o as f64 - e;
            d * d / e
        })
        .sum();
    let dof = pooled.len() - 1;
    let dist = ChiSquared::new(dof as f64).map_err(|e| Error::Numerical(e.to_string()))?;
    Ok(ChiSquare {
        statistic,
        p_value: dist.sf(statistic),
        dof,
        cells: pooled.len(),
    })
}

/// [`chi_square_compare`] on keyed laws; observed keys missing from the
/// law count as zero-probability cells.
pub fn chi_square_keyed<K: Ord>(law: &BTreeMap<K, f64>, observed: &BTreeMap<K, u64>) -> Result<ChiSquare> {
    let mut probs = Vec::new();
    let mut obs = Vec::new();
    for (k, &p) in law {
        probs.push(p);
        obs.push(observed.get(k).copied().unwrap_or(0));
    }
    for (k, &o) in observed {
        if !law.contains_key(k) {
            probs.push(0.0);
            obs.push(o);
        }
    }
    chi_square_compare(&probs, &obs)
}

/// Canonical key of an ordered tree.
pub fn ordered_key(t: &OrderedTree) -> String {
    t.to_parens()
}

/// Canonical key of a labelled tree: its sorted edge list.
pub fn labelled_key(t: &LabelledTree) -> Vec<(u32, u32)> {
    t.edges().to_vec()
}
