//! Tree representations, profiles by definition, the Wiener index and the
//! rerooting transformation on pointed trees.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Parent entry of the root.
pub const NO_PARENT: usize = usize::MAX;

/// Rooted ordered tree with vertices numbered `0..n` in depth-first order.
///
/// Children of `v` are stored contiguously, so the fringe subtree at `v`
/// occupies the index range `v..v + size(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedTree {
    parent: Vec<usize>,
    offsets: Vec<usize>,
    children: Vec<usize>,
}

impl OrderedTree {
    /// Single vertex.
    pub fn singleton() -> Self {
        Self {
            parent: vec![NO_PARENT],
            offsets: vec![0, 0],
            children: Vec::new(),
        }
    }

    /// Builds a tree from the depth-first sequence of out-degrees, rejecting
    /// sequences whose Łukasiewicz walk is not a valid tree code.
    pub fn from_outdegrees(deg: &[usize]) -> Result<Self> {
        let n = deg.len();
        if n == 0 {
            return Err(Error::InvalidTree("empty degree sequence".into()));
        }
        let mut walk: i64 = 0;
        for (i, &d) in deg.iter().enumerate() {
            walk += d as i64 - 1;
            if walk < 0 && i + 1 < n {
                return Err(Error::InvalidTree(format!(
                    "Łukasiewicz walk hits -1 at position {i} before the end"
                )));
            }
        }
        if walk != -1 {
            return Err(Error::InvalidTree(format!(
                "out-degrees sum to {} but need n-1 = {}",
                walk + n as i64,
                n - 1
            )));
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for &d in deg {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut parent = vec![NO_PARENT; n];
        let mut children = vec![0; n - 1];
        let mut fill: Vec<usize> = offsets[..n].to_vec();
        // stack of vertices that still expect children
        let mut stack: Vec<usize> = Vec::new();
        if deg[0] > 0 {
            stack.push(0);
        }
        for v in 1..n {
            let &u = stack.last().expect("validated walk");
            parent[v] = u;
            children[fill[u]] = v;
            fill[u] += 1;
            if fill[u] == offsets[u + 1] {
                stack.pop();
            }
            if deg[v] > 0 {
                stack.push(v);
            }
        }
        Ok(Self {
            parent,
            offsets,
            children,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        let p = self.parent[v];
        (p != NO_PARENT).then_some(p)
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    /// Depth-first out-degree sequence; identifies the ordered shape.
    pub fn outdegrees(&self) -> Vec<usize> {
        (0..self.len()).map(|v| self.outdegree(v)).collect()
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut d = vec![0; self.len()];
        for v in 1..self.len() {
            d[v] = d[self.parent[v]] + 1;
        }
        d
    }

    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut s = vec![1; self.len()];
        for v in (1..self.len()).rev() {
            s[self.parent[v]] += s[v];
        }
        s
    }

    /// Fringe subtree `T_v` as an ordered tree.
    pub fn fringe(&self, v: usize) -> OrderedTree {
        let size = self.subtree_sizes()[v];
        let deg: Vec<usize> = (v..v + size).map(|u| self.outdegree(u)).collect();
        OrderedTree::from_outdegrees(&deg).expect("fringe of a valid tree")
    }

    /// Balanced-parenthesis encoding, one matched pair per vertex.
    pub fn to_parens(&self) -> String {
        let n = self.len();
        let sizes = self.subtree_sizes();
        let mut closes = vec![0usize; n];
        for v in 0..n {
            closes[v + sizes[v] - 1] += 1;
        }
        let mut s = String::with_capacity(2 * n);
        for &c in &closes {
            s.push('(');
            for _ in 0..c {
                s.push(')');
            }
        }
        s
    }

    pub fn from_parens(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut deg: Vec<usize> = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '(' => {
                    if stack.is_empty() && !deg.is_empty() {
                        return Err(Error::Parse(format!(
                            "second root at position {i} in parenthesis string"
                        )));
                    }
                    if let Some(&p) = stack.last() {
                        deg[p] += 1;
                    }
                    stack.push(deg.len());
                    deg.push(0);
                }
                ')' => {
                    if stack.pop().is_none() {
                        return Err(Error::Parse(format!("unmatched ')' at position {i}")));
                    }
                }
                c => return Err(Error::Parse(format!("unexpected character {c:?} at {i}"))),
            }
        }
        if !stack.is_empty() || deg.is_empty() {
            return Err(Error::Parse("unbalanced parenthesis string".into()));
        }
        Self::from_outdegrees(&deg)
    }

    /// Undirected edges `(parent, child)`, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (1..self.len()).map(|v| (self.parent[v], v)).collect()
    }

    /// Forgets root and order and labels vertex `v` with `labels[v]`
    /// (a permutation of `1..=n`).
    pub fn to_labelled(&self, labels: &[u32]) -> Result<LabelledTree> {
        if labels.len() != self.len() {
            return Err(Error::InvalidTree("label count differs from n".into()));
        }
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| (labels[u], labels[v]))
            .collect();
        LabelledTree::new(self.len(), edges)
    }

    /// Number of leaves, i.e. vertices with no children.
    pub fn leaf_count(&self) -> usize {
        (0..self.len()).filter(|&v| self.outdegree(v) == 0).count()
    }
}

/// Unrooted tree on labels `1..=n`, stored as a sorted canonical edge list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledTree {
    n: usize,
    edges: Vec<(u32, u32)>,
}

fn find(uf: &mut [usize], mut x: usize) -> usize {
    while uf[x] != x {
        uf[x] = uf[uf[x]];
        x = uf[x];
    }
    x
}

impl LabelledTree {
    /// Validates that the edges form a spanning tree of `1..=n`.
    pub fn new(n: usize, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges given, a tree on {n} vertices has {}",
                edges.len(),
                n - 1
            )));
        }
        let mut uf: Vec<usize> = (0..n).collect();
        let mut canon = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let (a, b) = (u.min(v), u.max(v));
            if a == 0 || b as usize > n || a == b {
                return Err(Error::InvalidTree(format!("bad edge ({u},{v}) for n={n}")));
            }
            let (ra, rb) = (find(&mut uf, a as usize - 1), find(&mut uf, b as usize - 1));
            if ra == rb {
                return Err(Error::InvalidTree(format!("edge ({u},{v}) closes a cycle")));
            }
            uf[ra] = rb;
            canon.push((a, b));
        }
        canon.sort_unstable();
        Ok(Self { n, edges: canon })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree of each label, indexed by `label - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u as usize - 1] += 1;
            d[v as usize - 1] += 1;
        }
        d
    }

    /// Number of degree-one vertices.
    pub fn leaf_count(&self) -> usize {
        self.degrees().into_iter().filter(|&d| d == 1).count()
    }

    /// Ordered tree rooted at `label`, children in ascending label order.
    pub fn rooted_at(&self, label: u32) -> Result<OrderedTree> {
        if label == 0 || label as usize > self.n {
            return Err(Error::invalid_arg("root", format!("label {label} not in 1..={}", self.n)));
        }
        let adj = self.adjacency();
        let mut deg = Vec::with_capacity(self.n);
        let mut stack = vec![(label as usize - 1, NO_PARENT)];
        while let Some((v, p)) = stack.pop() {
            let kids: Vec<usize> = adj.neighbors(v).iter().copied().filter(|&w| w != p).collect();
            deg.push(kids.len());
            // neighbors are sorted ascending; push in reverse for preorder
            for &w in kids.iter().rev() {
                stack.push((w, v));
            }
        }
        OrderedTree::from_outdegrees(&deg)
    }

    /// `u,v` per line, 1-based labels.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u},{v}");
        }
        s
    }

    /// Parses `u,v` lines; blank lines and a `u,v` header are skipped.
    /// The vertex count is the largest label seen (1 for an empty list).
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut n = 1usize;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.eq_ignore_ascii_case("u,v") {
                continue;
            }
            let mut it = line.split(',');
            let parse = |x: Option<&str>| -> Result<u32> {
                x.map(str::trim)
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| Error::Parse(format!("line {}: expected `u,v`", i + 1)))
            };
            let u = parse(it.next())?;
            let v = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse(format!("line {}: too many fields", i + 1)));
            }
            n = n.max(u as usize).max(v as usize);
            edges.push((u, v));
        }
        Self::new(n, edges)
    }
}

/// Compressed undirected adjacency on `0..n`, neighbors sorted ascending.
#[derive(Clone, Debug)]
pub struct Adjacency {
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl Adjacency {
    pub fn from_edges(n: usize, edges: impl Iterator<Item = (usize, usize)> + Clone) -> Self {
        let mut deg = vec![0usize; n + 1];
        for (u, v) in edges.clone() {
            deg[u + 1] += 1;
            deg[v + 1] += 1;
        }
        for i in 0..n {
            deg[i + 1] += deg[i];
        }
        let offsets = deg;
        let mut fill = offsets.clone();
        let mut targets = vec![0; offsets[n]];
        for (u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        Self { offsets, targets }
    }

    pub fn len(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Distances from `s` by breadth-first search.
    pub fn bfs(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut q = VecDeque::new();
        dist[s] = 0;
        q.push_back(s);
        while let Some(v) = q.pop_front() {
            for &w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Longest path length, by two breadth-first searches.
    pub fn diameter(&self) -> usize {
        let d0 = self.bfs(0);
        let far = (0..self.len()).max_by_key(|&v| (d0[v], usize::MAX - v)).unwrap();
        *self.bfs(far).iter().max().unwrap()
    }
}

/// Anything with an underlying unrooted tree.
pub trait TreeLike {
    fn vertex_count(&self) -> usize;
    fn adjacency(&self) -> Adjacency;
}

impl TreeLike for OrderedTree {
    fn vertex_count(&self) -> usize {
        self.len()
    }
    fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(self.len(), (1..self.len()).map(|v| (self.parent[v], v)))
    }
}

impl TreeLike for LabelledTree {
    fn vertex_count(&self) -> usize {
        self.n
    }
    fn adjacency(&self) -> Adjacency {
        Adjacency::from_edges(
            self.n,
            self.edges
                .iter()
                .map(|&(u, v)| (u as usize - 1, v as usize - 1)),
        )
    }
}

/// `τ(x) = max(1 − |x|, 0)`.
pub fn tau(x: f64) -> f64 {
    (1.0 - x.abs()).max(0.0)
}

/// Piecewise-linear interpolation `Σ c_i τ(x − i)`.
pub fn interpolate_counts(counts: &[u64], x: f64) -> f64 {
    if !(x > -1.0) || x >= counts.len() as f64 {
        return 0.0;
    }
    let i0 = x.floor();
    let f = x - i0;
    let at = |i: f64| -> f64 {
        if i < 0.0 || i >= counts.len() as f64 {
            0.0
        } else {
            counts[i as usize] as f64
        }
    };
    (1.0 - f) * at(i0) + f * at(i0 + 1.0)
}

/// Exact running integral `t ↦ ∫_{-1}^t Σ c_i τ(s − i) ds` of an
/// interpolated profile.
#[derive(Clone, Debug)]
pub struct CumulativeProfile {
    counts: Vec<f64>,
    prefix: Vec<f64>,
}

impl CumulativeProfile {
    pub fn new(counts: &[u64]) -> Self {
        Self::from_values(counts.iter().map(|&c| c as f64).collect())
    }

    /// Same integral for a real-valued sequence, e.g. an expected profile.
    pub fn from_values(counts: Vec<f64>) -> Self {
        let mut prefix = Vec::with_capacity(counts.len() + 1);
        prefix.push(0.0);
        for &c in &counts {
            prefix.push(prefix.last().unwrap() + c);
        }
        Self { counts, prefix }
    }

    pub fn at(&self, t: f64) -> f64 {
        let len = self.counts.len() as f64;
        if t <= -1.0 {
            return 0.0;
        }
        if t >= len {
            return *self.prefix.last().unwrap();
        }
        let i0 = t.floor();
        let f = t - i0;
        let c = |i: f64| -> f64 {
            if i < 0.0 || i >= len {
                0.0
            } else {
                self.counts[i as usize]
            }
        };
        let full = if i0 <= 0.0 {
            0.0
        } else {
            self.prefix[i0 as usize]
        };
        full + c(i0) * (1.0 - 0.5 * (1.0 - f) * (1.0 - f)) + c(i0 + 1.0) * 0.5 * f * f
    }
}

/// Height profile `L(i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileCounts {
    pub counts: Vec<u64>,
}

/// Distance profile `Λ(i)` over ordered pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceProfileCounts {
    pub counts: Vec<u64>,
}

impl ProfileCounts {
    pub fn height(&self) -> usize {
        self.counts.len() - 1
    }
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
    pub fn width(&self) -> u64 {
        *self.counts.iter().max().unwrap_or(&0)
    }
    pub fn interpolate(&self, x: f64) -> f64 {
        interpolate_counts(&self.counts, x)
    }
}

impl DistanceProfileCounts {
    pub fn diameter(&self) -> usize {
        self.counts.len() - 1
    }
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
    pub fn interpolate(&self, x: f64) -> f64 {
        interpolate_counts(&self.counts, x)
    }
    /// Vertex count recovered from `Λ(0)`.
    pub fn n(&self) -> u64 {
        self.counts[0]
    }
}

pub fn height_profile(t: &OrderedTree) -> ProfileCounts {
    let mut counts: Vec<u64> = Vec::new();
    for d in t.depths() {
        if d >= counts.len() {
            counts.resize(d + 1, 0);
        }
        counts[d] += 1;
    }
    ProfileCounts { counts }
}

/// `Λ` by breadth-first search from every vertex; quadratic.
pub fn distance_profile_naive<T: TreeLike + ?Sized>(t: &T) -> DistanceProfileCounts {
    let adj = t.adjacency();
    let n = adj.len();
    let mut counts: Vec<u64> = vec![0];
    let mut dist = vec![usize::MAX; n];
    let mut queue = Vec::with_capacity(n);
    for s in 0..n {
        queue.clear();
        dist[s] = 0;
        queue.push(s);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            let d = dist[v];
            if d >= counts.len() {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
            for &w in adj.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = d + 1;
                    queue.push(w);
                }
            }
        }
        for &v in &queue {
            dist[v] = usize::MAX;
        }
    }
    DistanceProfileCounts { counts }
}

/// `½ Σ i Λ(i)`.
pub fn wiener_index(dp: &DistanceProfileCounts) -> u64 {
    let s: u128 = dp
        .counts
        .iter()
        .enumerate()
        .map(|(i, &c)| i as u128 * c as u128)
        .sum();
    u64::try_from(s / 2).expect("Wiener index fits in 64 bits")
}

/// Wiener index in `O(n)`: every edge is crossed by `s (n − s)` unordered
/// pairs, where `s` is the size of the fringe subtree below it.
pub fn wiener_from_sizes(t: &OrderedTree) -> u64 {
    let n = t.len() as u128;
    let s: u128 = t
        .subtree_sizes()
        .iter()
        .skip(1)
        .map(|&x| x as u128 * (n - x as u128))
        .sum();
    u64::try_from(s).expect("Wiener index fits in 64 bits")
}

/// Sum of the height profiles of all rootings.
pub fn distance_profile_from_rootings(t: &LabelledTree) -> DistanceProfileCounts {
    let mut counts: Vec<u64> = Vec::new();
    for label in 1..=t.len() as u32 {
        let h = height_profile(&t.rooted_at(label).expect("label in range"));
        if h.counts.len() > counts.len() {
            counts.resize(h.counts.len(), 0);
        }
        for (i, c) in h.counts.iter().enumerate() {
            counts[i] += c;
        }
    }
    DistanceProfileCounts { counts }
}

/// `(width, height, diameter)`.
pub fn width_height_diameter(t: &OrderedTree) -> (u64, usize, usize) {
    let h = height_profile(t);
    (h.width(), h.height(), t.adjacency().diameter())
}

/// Ordered tree with a marked vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointedTree {
    pub tree: OrderedTree,
    pub mark: usize,
}

impl PointedTree {
    pub fn new(tree: OrderedTree, mark: usize) -> Result<Self> {
        if mark >= tree.len() {
            return Err(Error::invalid_arg("mark", format!("{mark} ≥ n = {}", tree.len())));
        }
        Ok(Self { tree, mark })
    }

    /// Depth of the mark.
    pub fn mark_depth(&self) -> usize {
        let mut d = 0;
        let mut v = self.mark;
        while let Some(p) = self.tree.parent(v) {
            d += 1;
            v = p;
        }
        d
    }

    /// Size of `T^v`, the tree with the fringe at the mark cut off
    /// (keeping `v` itself).
    pub fn trunk_size(&self) -> usize {
        self.tree.len() - self.tree.subtree_sizes()[self.mark] + 1
    }
}

/// Rerooting at the parent of the mark: cut `v` from `pr(v)`, hang it as
/// the last child of the old root and make `pr(v)` the new root. The mark
/// keeps its fringe subtree.
pub fn reroot_transform(pt: &PointedTree) -> PointedTree {
    let t = &pt.tree;
    let v = pt.mark;
    let Some(u) = t.parent(v) else {
        return pt.clone();
    };
    let n = t.len();
    // vertices on the path from u up to the old root; their parent turns
    // into a child
    let mut on_path = vec![false; n];
    let mut x = u;
    on_path[x] = true;
    while let Some(p) = t.parent(x) {
        on_path[p] = true;
        x = p;
    }
    let new_children = |x: usize| -> Vec<usize> {
        let mut kids: Vec<usize> = t
            .children(x)
            .iter()
            .copied()
            .filter(|&c| c != v && !(on_path[c] && on_path[x]))
            .collect();
        if on_path[x] {
            if let Some(p) = t.parent(x) {
                kids.push(p);
            }
        }
        if x == 0 {
            kids.push(v);
        }
        kids
    };
    let mut deg = Vec::with_capacity(n);
    let mut new_index = vec![0; n];
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        new_index[x] = deg.len();
        let kids = new_children(x);
        deg.push(kids.len());
        for &c in kids.iter().rev() {
            stack.push(c);
        }
    }
    let tree = OrderedTree::from_outdegrees(&deg).expect("rerooting keeps a tree");
    PointedTree {
        tree,
        mark: new_index[v],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> OrderedTree {
        let mut d = vec![1; n];
        d[n - 1] = 0;
        OrderedTree::from_outdegrees(&d).unwrap()
    }

    fn star(leaves: usize) -> OrderedTree {
        let mut d = vec![0; leaves + 1];
        d[0] = leaves;
        OrderedTree::from_outdegrees(&d).unwrap()
    }

    #[test]
    fn height_profile_examples() {
        assert_eq!(height_profile(&path(3)).counts, vec![1, 1, 1]);
        assert_eq!(height_profile(&star(3)).counts, vec![1, 3]);
        assert_eq!(height_profile(&OrderedTree::singleton()).counts, vec![1]);
    }

    #[test]
    fn interpolation_examples() {
        let p = height_profile(&path(3));
        let s = height_profile(&star(3));
        assert_eq!(p.interpolate(0.5), 1.0);
        assert_eq!(s.interpolate(0.5), 2.0);
        assert_eq!(p.interpolate(-1.0), 0.0);
        assert_eq!(s.interpolate(-0.5), 0.5);
        assert_eq!(s.interpolate(2.0), 0.0);
        assert_eq!(s.interpolate(1.0), 3.0);
    }

    #[test]
    fn cumulative_integral_matches_total() {
        let s = height_profile(&star(3));
        let c = CumulativeProfile::new(&s.counts);
        assert!((c.at(10.0) - 4.0).abs() < 1e-15);
        assert!((c.at(-0.5) - 0.125).abs() < 1e-15);
        assert!((c.at(0.0) - 0.5).abs() < 1e-15);
        // ∫_{-1}^{1} τ(s) + 3 τ(s − 1) ds = 1 + 1.5
        assert!((c.at(1.0) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn naive_distance_profile_examples() {
        assert_eq!(distance_profile_naive(&path(3)).counts, vec![3, 4, 2]);
        assert_eq!(distance_profile_naive(&path(4)).counts, vec![4, 6, 4, 2]);
        assert_eq!(distance_profile_naive(&star(3)).counts, vec![4, 6, 6]);
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener_index(&distance_profile_naive(&path(4))), 10);
        assert_eq!(wiener_index(&distance_profile_naive(&star(3))), 9);
        assert_eq!(wiener_index(&distance_profile_naive(&OrderedTree::singleton())), 0);
    }

    #[test]
    fn rootings_sum_to_distance_profile() {
        let l = path(3).to_labelled(&[1, 2, 3]).unwrap();
        assert_eq!(distance_profile_from_rootings(&l).counts, vec![3, 4, 2]);
        let l = star(3).to_labelled(&[2, 4, 1, 3]).unwrap();
        assert_eq!(distance_profile_from_rootings(&l).counts, vec![4, 6, 6]);
    }

    #[test]
    fn width_height_diameter_examples() {
        assert_eq!(width_height_diameter(&path(3)), (1, 2, 2));
        assert_eq!(width_height_diameter(&star(3)), (3, 1, 2));
        assert_eq!(width_height_diameter(&OrderedTree::singleton()), (1, 0, 0));
    }

    #[test]
    fn parens_round_trip() {
        let t = OrderedTree::from_outdegrees(&[2, 1, 0, 0]).unwrap();
        assert_eq!(t.to_parens(), "((())())");
        assert_eq!(OrderedTree::from_parens("((())())").unwrap(), t);
        assert_eq!(OrderedTree::singleton().to_parens(), "()");
        assert!(OrderedTree::from_parens("()()").is_err());
        assert!(OrderedTree::from_parens("(()").is_err());
    }

    #[test]
    fn labelled_validation_and_csv() {
        assert!(LabelledTree::new(3, vec![(1, 2), (2, 1)]).is_err());
        assert!(LabelledTree::new(3, vec![(1, 2)]).is_err());
        let t = LabelledTree::from_csv("1,2\n2,3\n3,4\n").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(LabelledTree::from_csv(&t.to_csv()).unwrap(), t);
        let r = t.rooted_at(2).unwrap();
        assert_eq!(r.outdegrees(), vec![2, 0, 1, 0]);
    }

    #[test]
    fn reroot_examples() {
        let pt = PointedTree::new(star(3), 0).unwrap();
        assert_eq!(reroot_transform(&pt), pt);

        let pt = PointedTree::new(path(3), 2).unwrap();
        let r = reroot_transform(&pt);
        // new root is old vertex 1, which has children: old root 0; the
        // old root then carries v
        assert_eq!(r.tree.outdegrees(), vec![1, 1, 0]);
        assert_eq!(r.tree.fringe(r.mark).len(), 1);
        assert_eq!(r.mark, 2);
    }

    #[test]
    fn reroot_keeps_fringe_and_degree_multiset() {
        let t = OrderedTree::from_outdegrees(&[2, 2, 0, 1, 0, 1, 0]).unwrap();
        for v in 0..t.len() {
            let pt = PointedTree::new(t.clone(), v).unwrap();
            let r = reroot_transform(&pt);
            assert_eq!(r.tree.fringe(r.mark), t.fringe(v));
            let mut a = t.outdegrees();
            let mut b = r.tree.outdegrees();
            a.sort();
            b.sort();
            assert_eq!(a, b);
            assert_eq!(r.trunk_size(), pt.trunk_size());
        }
    }
}
