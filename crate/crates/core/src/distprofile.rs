//! Exact distance profiles in `O(n log² n)` by centroid decomposition.
//!
//! At a centroid `c` of a component, every pair of vertices lying in
//! different branches at `c` (or with one endpoint at `c`) is counted by
//! convolving depth-count vectors: `h ⊛ h − Σ_s h_s ⊛ h_s`. The component is
//! then split at `c` and each branch is processed on its own.

use crate::fft;
use crate::tree::{Adjacency, DistanceProfileCounts, TreeLike};

/// Below this length on the shorter side the schoolbook product is used.
const SCHOOLBOOK_MIN: usize = 48;

/// Exact integer convolution.
///
/// Large inputs go through a floating-point FFT whose result is rounded;
/// the transform is used only when `max_coeff · len · 2⁻⁵³ < 0.25`, where
/// `max_coeff` bounds every output coefficient. Otherwise the schoolbook
/// product is used, so the result is always exact.
pub fn convolve_counts(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= SCHOOLBOOK_MIN || !fft_is_exact(a, b) {
        return schoolbook(a, b);
    }
    let af: Vec<f64> = a.iter().map(|&x| x as f64).collect();
    let bf: Vec<f64> = b.iter().map(|&x| x as f64).collect();
    let out_len = a.len() + b.len() - 1;
    fft::convolve_real(&af, &bf, out_len)
        .into_iter()
        .map(|x| x.round().max(0.0) as u64)
        .collect()
}

/// Rounding guard for [`convolve_counts`].
pub fn fft_is_exact(a: &[u64], b: &[u64]) -> bool {
    let ma = *a.iter().max().unwrap() as f64;
    let mb = *b.iter().max().unwrap() as f64;
    let max_coeff = ma * mb * a.len().min(b.len()) as f64;
    let len = fft::fft_len(a.len(), b.len()) as f64;
    max_coeff * len * f64::EPSILON * 0.5 < 0.25
}

fn schoolbook(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// One node of the centroid decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidNode {
    pub centroid: usize,
    pub size: usize,
    pub children: Vec<CentroidNode>,
}

impl CentroidNode {
    pub fn depth(&self) -> usize {
        1 + self.children.iter().map(|c| c.depth()).max().unwrap_or(0)
    }
}

/// Flat record of a processed component: `(centroid, size, parent record)`.
type Record = (usize, usize, Option<usize>);

struct Workspace<'a> {
    adj: &'a Adjacency,
    removed: Vec<bool>,
    parent: Vec<usize>,
    size: Vec<usize>,
    maxchild: Vec<usize>,
    order: Vec<usize>,
    depth: Vec<usize>,
    h: Vec<u64>,
    hs: Vec<u64>,
    unordered: Vec<u64>,
}

impl<'a> Workspace<'a> {
    fn new(adj: &'a Adjacency) -> Self {
        let n = adj.len();
        Self {
            adj,
            removed: vec![false; n],
            parent: vec![usize::MAX; n],
            size: vec![0; n],
            maxchild: vec![0; n],
            order: Vec::with_capacity(n),
            depth: vec![0; n],
            h: Vec::new(),
            hs: Vec::new(),
            unordered: vec![0; 2 * n + 1],
        }
    }

    /// Collects the component of `s` into `order`, fills sizes and returns
    /// its centroid (lowest index among valid centroids).
    fn centroid(&mut self, s: usize) -> usize {
        self.order.clear();
        self.order.push(s);
        self.parent[s] = usize::MAX;
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            for &w in self.adj.neighbors(v) {
                if w != self.parent[v] && !self.removed[w] {
                    self.parent[w] = v;
                    self.order.push(w);
                }
            }
        }
        for &v in &self.order {
            self.size[v] = 1;
            self.maxchild[v] = 0;
        }
        for i in (1..self.order.len()).rev() {
            let v = self.order[i];
            let p = self.parent[v];
            self.size[p] += self.size[v];
            self.maxchild[p] = self.maxchild[p].max(self.size[v]);
        }
        let total = self.order.len();
        let mut best = usize::MAX;
        for &v in &self.order {
            let part = self.maxchild[v].max(total - self.size[v]);
            if 2 * part <= total && v < best {
                best = v;
            }
        }
        best
    }

    /// Depth counts of the branch entered through `u` from `c`, written to
    /// `hs` (index = distance from `c`).
    fn branch_depths(&mut self, c: usize, u: usize) {
        self.hs.clear();
        self.order.clear();
        self.order.push(u);
        self.parent[u] = c;
        self.depth[u] = 1;
        let mut head = 0;
        while head < self.order.len() {
            let v = self.order[head];
            head += 1;
            let d = self.depth[v];
            if d >= self.hs.len() {
                self.hs.resize(d + 1, 0);
            }
            self.hs[d] += 1;
            for &w in self.adj.neighbors(v) {
                if w != self.parent[v] && !self.removed[w] {
                    self.parent[w] = v;
                    self.depth[w] = d + 1;
                    self.order.push(w);
                }
            }
        }
    }

    fn run(&mut self, mut records: Option<&mut Vec<Record>>) {
        if self.adj.is_empty() {
            return;
        }
        let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
        while let Some((s, parent_rec)) = stack.pop() {
            let c = self.centroid(s);
            let total = self.order.len();
            let rec_idx = records.as_mut().map(|r| {
                r.push((c, total, parent_rec));
                r.len() - 1
            });
            self.removed[c] = true;
            if total == 1 {
                continue;
            }
            self.h.clear();
            self.h.push(1);
            let neighbors = self.adj.neighbors(c);
            for &u in neighbors {
                if self.removed[u] {
                    continue;
                }
                self.branch_depths(c, u);
                if self.hs.len() > self.h.len() {
                    self.h.resize(self.hs.len(), 0);
                }
                for (i, &x) in self.hs.iter().enumerate() {
                    self.h[i] += x;
                }
                // pairs inside one branch are subtracted here
                let own = convolve_counts(&self.hs, &self.hs);
                for (i, &x) in own.iter().enumerate() {
                    self.unordered[i] = self.unordered[i].wrapping_sub(x);
                }
                stack.push((u, rec_idx));
            }
            let all = convolve_counts(&self.h, &self.h);
            for (i, &x) in all.iter().enumerate().skip(1) {
                self.unordered[i] = self.unordered[i].wrapping_add(x);
            }
        }
    }
}

fn finish(unordered: &[u64], n: usize) -> DistanceProfileCounts {
    // accumulated values are ordered-pair counts of cross pairs, i.e.
    // twice the unordered counts
    let mut counts: Vec<u64> = unordered.to_vec();
    counts[0] = n as u64;
    while counts.len() > 1 && *counts.last().unwrap() == 0 {
        counts.pop();
    }
    DistanceProfileCounts { counts }
}

/// Distance profile `Λ` by centroid decomposition; equals
/// [`crate::tree::distance_profile_naive`] exactly.
pub fn distance_profile_fast<T: TreeLike + ?Sized>(t: &T) -> DistanceProfileCounts {
    distance_profile_adjacency(&t.adjacency())
}

/// [`distance_profile_fast`] on a prebuilt adjacency.
pub fn distance_profile_adjacency(adj: &Adjacency) -> DistanceProfileCounts {
    let mut ws = Workspace::new(adj);
    ws.run(None);
    finish(&ws.unordered, adj.len())
}

/// Wiener index `½ Σ i Λ(i)` from the fast profile.
pub fn wiener_fast<T: TreeLike + ?Sized>(t: &T) -> u64 {
    crate::tree::wiener_index(&distance_profile_fast(t))
}

/// The centroid decomposition as a tree of components.
pub fn centroid_decomposition<T: TreeLike + ?Sized>(t: &T) -> CentroidNode {
    let adj = t.adjacency();
    let mut ws = Workspace::new(&adj);
    let mut recs: Vec<Record> = Vec::new();
    ws.run(Some(&mut recs));
    let mut kids: Vec<Vec<usize>> = vec![Vec::new(); recs.len()];
    for (i, r) in recs.iter().enumerate() {
        if let Some(p) = r.2 {
            kids[p].push(i);
        }
    }
    fn build(i: usize, recs: &[Record], kids: &[Vec<usize>]) -> CentroidNode {
        let mut children: Vec<CentroidNode> =
            kids[i].iter().map(|&k| build(k, recs, kids)).collect();
        children.sort_by_key(|c| c.centroid);
        CentroidNode {
            centroid: recs[i].0,
            size: recs[i].1,
            children,
        }
    }
    build(0, &recs, &kids)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{distance_profile_naive, LabelledTree, OrderedTree};

    #[test]
    fn convolve_examples() {
        assert_eq!(convolve_counts(&[1, 1], &[1, 1]), vec![1, 2, 1]);
        assert_eq!(convolve_counts(&[1, 0, 2], &[3]), vec![3, 0, 6]);
        assert!(convolve_counts(&[], &[3]).is_empty());
    }

    #[test]
    fn fft_path_is_exact_against_schoolbook() {
        let a: Vec<u64> = (0..1000u64).map(|i| (i * 7919) % 1013).collect();
        let b: Vec<u64> = (0..700u64).map(|i| (i * 104729) % 997).collect();
        assert!(fft_is_exact(&a, &b));
        assert_eq!(convolve_counts(&a, &b), schoolbook(&a, &b));
    }

    #[test]
    fn guard_rejects_huge_coefficients() {
        let a = vec![1u64 << 24; 2000];
        assert!(!fft_is_exact(&a, &a));
        assert_eq!(convolve_counts(&a, &a), schoolbook(&a, &a));
    }

    #[test]
    fn small_trees() {
        let path4 = LabelledTree::from_csv("1,2\n2,3\n3,4").unwrap();
        assert_eq!(distance_profile_fast(&path4).counts, vec![4, 6, 4, 2]);
        let star = OrderedTree::from_outdegrees(&[3, 0, 0, 0]).unwrap();
        assert_eq!(distance_profile_fast(&star).counts, vec![4, 6, 6]);
        assert_eq!(wiener_fast(&path4), 10);
        assert_eq!(wiener_fast(&star), 9);
        assert_eq!(
            distance_profile_fast(&OrderedTree::singleton()).counts,
            vec![1]
        );
    }

    #[test]
    fn long_path_and_broom() {
        let n = 3000;
        let mut d = vec![1; n];
        d[n - 1] = 0;
        let p = OrderedTree::from_outdegrees(&d).unwrap();
        assert_eq!(distance_profile_fast(&p), distance_profile_naive(&p));
        let mut d = vec![1; 1500];
        d.push(1500);
        d.extend(std::iter::repeat_n(0, 1500));
        let b = OrderedTree::from_outdegrees(&d).unwrap();
        assert_eq!(distance_profile_fast(&b), distance_profile_naive(&b));
    }

    #[test]
    fn decomposition_halves_components() {
        let n = 1000;
        let mut d = vec![1; n];
        d[n - 1] = 0;
        let p = OrderedTree::from_outdegrees(&d).unwrap();
        let root = centroid_decomposition(&p);
        fn check(node: &CentroidNode) -> usize {
            let mut total = 1;
            for c in &node.children {
                assert!(2 * c.size <= node.size);
                total += check(c);
            }
            assert_eq!(total, node.size);
            total
        }
        assert_eq!(check(&root), n);
        assert!(root.depth() <= (n as f64).log2() as usize + 1);
    }
}
