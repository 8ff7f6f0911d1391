//! Simple undirected graphs on at most 64 vertices, stored as adjacency bit rows.
//!
//! Row `v` is the neighbourhood indicator of vertex `v`. Vertices are labelled
//! `0..n`; 1-based labels only appear in rendered output.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::{full_mask, iter_bits};
use crate::error::{check_cap, Error, Result};

/// Largest order for the exhaustive path searches (even paths, odd cycles).
pub const PATH_SEARCH_LIMIT: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    pub const MAX_ORDER: usize = 64;

    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("a graph needs at least one vertex".into()));
        }
        check_cap("Graph", Self::MAX_ORDER, n)?;
        Ok(Graph { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Parameter(format!("edge {{{u},{v}}} out of range for n = {n}")));
            }
            if u == v {
                return Err(Error::Parameter(format!("self-loop at vertex {u}")));
            }
            g.set_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from adjacency rows, checking symmetry and the absence of loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        Self::empty(n)?;
        let g = Graph { n, rows };
        let all = full_mask(n);
        for v in 0..n {
            if g.rows[v] & !all != 0 {
                return Err(Error::Parameter(format!("row {v} has bits beyond n = {n}")));
            }
            if g.rows[v] >> v & 1 == 1 {
                return Err(Error::Parameter(format!("self-loop at vertex {v}")));
            }
            for u in iter_bits(g.rows[v]) {
                if g.rows[u] >> v & 1 == 0 {
                    return Err(Error::Parameter(format!("adjacency not symmetric at {{{u},{v}}}")));
                }
            }
        }
        Ok(g)
    }

    /// Labelled graph whose edge set is given by `mask` over the pairs in graph6
    /// order: bit `j(j-1)/2 + i` stands for the edge `{i, j}`, `i < j`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        let pairs = n * n.saturating_sub(1) / 2;
        check_cap("edge-mask graphs", 11, n)?;
        if pairs < 64 && mask >> pairs != 0 {
            return Err(Error::Parameter(format!("edge mask has bits beyond {pairs} pairs")));
        }
        let mut g = Self::empty(n)?;
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.set_edge(i, j);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    pub(crate) fn set_edge(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.rows[v]
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Edges `(u, v)` with `u < v`, ordered by `u` then `v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in iter_bits(self.rows[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::Parameter("permutation length differs from the order".into()));
        }
        let mut seen = 0u64;
        for &p in perm {
            if p >= self.n || seen >> p & 1 == 1 {
                return Err(Error::Parameter("not a permutation".into()));
            }
            seen |= 1 << p;
        }
        let mut g = Self::empty(self.n)?;
        for (u, v) in self.edges() {
            g.set_edge(perm[u], perm[v]);
        }
        Ok(g)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        check_cap("Graph", Self::MAX_ORDER, n)?;
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.n));
        Ok(Graph { n, rows })
    }

    /// Subgraph induced by `mask`, relabelled to `0..popcount(mask)` in ascending order.
    pub fn induced(&self, mask: u64) -> Result<Self> {
        let mask = mask & self.vertex_mask();
        let verts: Vec<usize> = iter_bits(mask).collect();
        let mut g = Self::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j);
                }
            }
        }
        Ok(g)
    }

    /// Vertices reachable from `start` within the vertex set `allowed`.
    fn reach(&self, start: usize, allowed: u64) -> u64 {
        let mut seen = 1u64 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & allowed & !seen;
            seen |= frontier;
        }
        seen
    }

    /// Connected components as vertex masks, sorted by least vertex.
    pub fn components(&self) -> Vec<u64> {
        let mut left = self.vertex_mask();
        let mut out = Vec::new();
        while left != 0 {
            let comp = self.reach(left.trailing_zeros() as usize, self.vertex_mask());
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[src] = Some(0);
        let mut seen = 1u64 << src;
        let mut frontier = seen;
        let mut d = 0;
        while frontier != 0 {
            d += 1;
            let mut next = 0;
            for v in iter_bits(frontier) {
                next |= self.rows[v];
            }
            frontier = next & !seen;
            seen |= frontier;
            for v in iter_bits(frontier) {
                dist[v] = Some(d);
            }
        }
        dist
    }

    /// Number of vertex triples inducing a triangle.
    pub fn triangle_count(&self) -> u64 {
        let mut t = 0u64;
        for (u, v) in self.edges() {
            let above = !full_mask(v + 1);
            t += (self.rows[u] & self.rows[v] & above).count_ones() as u64;
        }
        t
    }

    /// Diameter via all-pairs BFS; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut diam = 0;
        for s in 0..self.n {
            for d in self.distances_from(s) {
                diam = diam.max(d?);
            }
        }
        Some(diam)
    }

    pub fn stats(&self) -> GraphStats {
        let degrees: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        GraphStats {
            order: self.n,
            edges: self.edge_count(),
            min_degree: degrees.iter().copied().min().unwrap_or(0),
            max_degree: degrees.iter().copied().max().unwrap_or(0),
            triangles: self.triangle_count(),
            diameter: self.diameter(),
        }
    }

    /// Proper 2-colouring test.
    pub fn is_bipartite(&self) -> bool {
        for comp in self.components() {
            let root = comp.trailing_zeros() as usize;
            let dist = self.distances_from(root);
            for (u, v) in self.edges() {
                if comp >> u & 1 == 1 && dist[u].map(|d| d % 2) == dist[v].map(|d| d % 2) {
                    return false;
                }
            }
        }
        true
    }

    /// BFS tree rooted at vertex 0: `parent[v]` and depth per vertex.
    fn bfs_tree(&self) -> Result<(Vec<Option<usize>>, Vec<usize>)> {
        if !self.is_connected() {
            return Err(Error::Disconnected("the spanning-tree construction"));
        }
        let mut parent = vec![None; self.n];
        let mut depth = vec![0; self.n];
        let mut seen = 1u64;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for w in iter_bits(self.rows[v] & !seen) {
                seen |= 1 << w;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            }
        }
        Ok((parent, depth))
    }

    /// 2-colouring of the BFS spanning tree rooted at vertex 0 by depth parity.
    ///
    /// This is a colouring of the tree only; for non-bipartite graphs some
    /// graph edges join vertices of the same class.
    pub fn spanning_tree_bipartition(&self) -> Result<Bipartition> {
        let (parent, depth) = self.bfs_tree()?;
        let mut color_a = 0u64;
        for (v, &d) in depth.iter().enumerate() {
            if d % 2 == 0 {
                color_a |= 1 << v;
            }
        }
        Ok(Bipartition {
            color_a,
            color_b: self.vertex_mask() & !color_a,
            tree_edges: parent
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|p| (p.min(v), p.max(v))))
                .collect(),
        })
    }

    /// Every same-coloured pair of the BFS spanning tree together with its
    /// tree path, which always has even length.
    pub fn tree_even_pairs(&self) -> Result<Vec<TreePair>> {
        let (parent, depth) = self.bfs_tree()?;
        let bip = self.spanning_tree_bipartition()?;
        let mut out = Vec::new();
        for class in [bip.color_a, bip.color_b] {
            let verts: Vec<usize> = iter_bits(class).collect();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    out.push(TreePair { u, v, path: tree_path(&parent, &depth, u, v) });
                }
            }
        }
        out.sort_by_key(|p| (p.u, p.v));
        Ok(out)
    }

    /// Shortest path of even length between `u` and `v` with distinct vertices,
    /// lexicographically smallest among those of minimal length.
    ///
    /// Exhaustive iterative deepening; limited to `PATH_SEARCH_LIMIT` vertices.
    pub fn shortest_even_path(&self, u: usize, v: usize) -> Result<Option<Vec<usize>>> {
        check_cap("shortest_even_path", PATH_SEARCH_LIMIT, self.n)?;
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::Parameter(format!("need two distinct vertices, got {u} and {v}")));
        }
        let to_target = self.distances_from(v);
        if to_target[u].is_none() {
            return Ok(None);
        }
        let mut path = vec![u];
        for len in (2..self.n).step_by(2) {
            if self.even_path_dfs(&mut path, 1 << u, v, len, &to_target) {
                return Ok(Some(path));
            }
        }
        Ok(None)
    }

    fn even_path_dfs(
        &self,
        path: &mut Vec<usize>,
        used: u64,
        target: usize,
        len: usize,
        to_target: &[Option<usize>],
    ) -> bool {
        let cur = *path.last().unwrap();
        let steps_left = len + 1 - path.len();
        if steps_left == 1 {
            if self.has_edge(cur, target) {
                path.push(target);
                return true;
            }
            return false;
        }
        for w in iter_bits(self.rows[cur] & !used & !(1 << target)) {
            match to_target[w] {
                Some(d) if d < steps_left => {}
                _ => continue,
            }
            path.push(w);
            if self.even_path_dfs(path, used | 1 << w, target, len, to_target) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// A shortest odd cycle as a vertex sequence starting at its least vertex,
    /// or `None` for bipartite graphs. A shortest odd cycle has no chord, so its
    /// vertex set induces an odd cycle.
    pub fn shortest_odd_cycle(&self) -> Result<Option<Vec<usize>>> {
        check_cap("shortest_odd_cycle", PATH_SEARCH_LIMIT, self.n)?;
        let mut len = 3;
        while len <= self.n {
            for s in 0..self.n {
                let allowed = self.vertex_mask() & !full_mask(s + 1);
                let mut path = vec![s];
                if self.closed_walk_dfs(&mut path, 1 << s, allowed, len) {
                    return Ok(Some(path));
                }
            }
            len += 2;
        }
        Ok(None)
    }

    fn closed_walk_dfs(&self, path: &mut Vec<usize>, used: u64, allowed: u64, len: usize) -> bool {
        let cur = *path.last().unwrap();
        if path.len() == len {
            return self.has_edge(cur, path[0]);
        }
        for w in iter_bits(self.rows[cur] & allowed & !used) {
            path.push(w);
            if self.closed_walk_dfs(path, used | 1 << w, allowed, len) {
                return true;
            }
            path.pop();
        }
        false
    }

    /// Every vertex set that induces a cycle of odd length, in ascending mask order.
    pub fn induced_odd_cycles(&self) -> Result<Vec<u64>> {
        check_cap("induced_odd_cycles", PATH_SEARCH_LIMIT, self.n)?;
        let mut out = Vec::new();
        for mask in 1..=self.vertex_mask() {
            let k = mask.count_ones();
            if k < 3 || k % 2 == 0 {
                continue;
            }
            if iter_bits(mask).all(|v| (self.rows[v] & mask).count_ones() == 2)
                && self.reach(mask.trailing_zeros() as usize, mask) == mask
            {
                out.push(mask);
            }
        }
        Ok(out)
    }
}

fn tree_path(parent: &[Option<usize>], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut head = vec![a];
    let mut tail = vec![b];
    while depth[a] > depth[b] {
        a = parent[a].unwrap();
        head.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b].unwrap();
        tail.push(b);
    }
    while a != b {
        a = parent[a].unwrap();
        b = parent[b].unwrap();
        head.push(a);
        tail.push(b);
    }
    tail.pop();
    head.extend(tail.into_iter().rev());
    head
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub order: usize,
    pub edges: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub triangles: u64,
    /// `None` when the graph is disconnected.
    pub diameter: Option<usize>,
}

/// Colour classes of a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    pub color_a: u64,
    pub color_b: u64,
    pub tree_edges: Vec<(usize, usize)>,
}

impl Bipartition {
    pub fn a(&self) -> usize {
        self.color_a.count_ones() as usize
    }

    pub fn b(&self) -> usize {
        self.color_b.count_ones() as usize
    }
}

/// A same-coloured pair of the spanning tree and the tree path joining them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePair {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
}

/// The named graph families with closed-form counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "snake_case")]
pub enum FamilySpec {
    Complete(usize),
    CompleteBipartite(usize, usize),
    CompleteMultipartite(Vec<usize>),
    Path(usize),
    Cycle(usize),
    /// Two adjacent centres carrying `a` and `b` pendant leaves.
    DoubleStar(usize, usize),
    Edgeless(usize),
}

impl FamilySpec {
    pub fn order(&self) -> usize {
        match self {
            FamilySpec::Complete(n) | FamilySpec::Path(n) | FamilySpec::Cycle(n) | FamilySpec::Edgeless(n) => *n,
            FamilySpec::CompleteBipartite(a, b) => a + b,
            FamilySpec::CompleteMultipartite(parts) => parts.iter().sum(),
            FamilySpec::DoubleStar(a, b) => a + b + 2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |what: &str, x: usize| {
            if x == 0 {
                Err(Error::Parameter(format!("{what} must be at least 1")))
            } else {
                Ok(())
            }
        };
        match self {
            FamilySpec::Complete(n) | FamilySpec::Path(n) | FamilySpec::Edgeless(n) => positive("order", *n)?,
            FamilySpec::Cycle(n) => {
                if *n < 3 {
                    return Err(Error::Parameter(format!("a cycle needs at least 3 vertices, got {n}")));
                }
            }
            FamilySpec::CompleteBipartite(a, b) | FamilySpec::DoubleStar(a, b) => {
                positive("class size", *a)?;
                positive("class size", *b)?;
            }
            FamilySpec::CompleteMultipartite(parts) => {
                if parts.is_empty() {
                    return Err(Error::Parameter("multipartite graph needs at least one class".into()));
                }
                for &p in parts {
                    positive("class size", p)?;
                }
            }
        }
        check_cap("Graph", Graph::MAX_ORDER, self.order())
    }

    /// Constructs the family member. Multipartite classes are consecutive
    /// blocks; path and cycle vertices follow the sequence order.
    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        let n = self.order();
        let mut g = Graph::empty(n)?;
        match self {
            FamilySpec::Complete(_) => {
                for u in 0..n {
                    for v in u + 1..n {
                        g.set_edge(u, v);
                    }
                }
            }
            FamilySpec::CompleteBipartite(a, b) => return FamilySpec::CompleteMultipartite(vec![*a, *b]).build(),
            FamilySpec::CompleteMultipartite(parts) => {
                let mut class = Vec::with_capacity(n);
                for (i, &p) in parts.iter().enumerate() {
                    class.extend(std::iter::repeat_n(i, p));
                }
                for u in 0..n {
                    for v in u + 1..n {
                        if class[u] != class[v] {
                            g.set_edge(u, v);
                        }
                    }
                }
            }
            FamilySpec::Path(_) => {
                for v in 1..n {
                    g.set_edge(v - 1, v);
                }
            }
            FamilySpec::Cycle(_) => {
                for v in 1..n {
                    g.set_edge(v - 1, v);
                }
                g.set_edge(0, n - 1);
            }
            FamilySpec::DoubleStar(a, b) => {
                g.set_edge(0, 1);
                for leaf in 2..2 + a {
                    g.set_edge(0, leaf);
                }
                for leaf in 2 + a..2 + a + b {
                    g.set_edge(1, leaf);
                }
            }
            FamilySpec::Edgeless(_) => {}
        }
        Ok(g)
    }
}

pub fn build_family(spec: &FamilySpec) -> Result<Graph> {
    spec.build()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            FamilySpec::Complete(n) => write!(f, "complete:{n}"),
            FamilySpec::CompleteBipartite(a, b) => write!(f, "bipartite:{a},{b}"),
            FamilySpec::CompleteMultipartite(p) => write!(f, "multipartite:{}", join(p)),
            FamilySpec::Path(n) => write!(f, "path:{n}"),
            FamilySpec::Cycle(n) => write!(f, "cycle:{n}"),
            FamilySpec::DoubleStar(a, b) => write!(f, "doublestar:{a},{b}"),
            FamilySpec::Edgeless(n) => write!(f, "edgeless:{n}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses `name:params`, e.g. `path:5`, `bipartite:2,3`, `multipartite:2,1,1`,
    /// `doublestar:3,4`. `star:n` is shorthand for `bipartite:1,n-1`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { offset: 0, message: msg };
        let (name, params) = s
            .split_once(':')
            .ok_or_else(|| bad(format!("expected name:params, got {s:?}")))?;
        let nums = params
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| bad(format!("bad number {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<usize>>>()?;
        let arity = |k: usize| {
            if nums.len() == k {
                Ok(())
            } else {
                Err(bad(format!("{name} takes {k} parameter(s), got {}", nums.len())))
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "complete" | "k" => {
                arity(1)?;
                FamilySpec::Complete(nums[0])
            }
            "bipartite" | "complete_bipartite" => {
                arity(2)?;
                FamilySpec::CompleteBipartite(nums[0], nums[1])
            }
            "star" => {
                arity(1)?;
                if nums[0] < 2 {
                    return Err(Error::Parameter("a star needs at least 2 vertices".into()));
                }
                FamilySpec::CompleteBipartite(1, nums[0] - 1)
            }
            "multipartite" | "complete_multipartite" => FamilySpec::CompleteMultipartite(nums),
            "path" => {
                arity(1)?;
                FamilySpec::Path(nums[0])
            }
            "cycle" => {
                arity(1)?;
                FamilySpec::Cycle(nums[0])
            }
            "doublestar" | "double_star" => {
                arity(2)?;
                FamilySpec::DoubleStar(nums[0], nums[1])
            }
            "edgeless" | "empty" => {
                arity(1)?;
                FamilySpec::Edgeless(nums[0])
            }
            other => return Err(bad(format!("unknown family {other:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}
