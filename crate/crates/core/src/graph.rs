//! Immutable simple graphs over dense vertex ids `0..n`, with the bitset
//! vertex-set primitives the rest of the crate is built on.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("sets must be disjoint (both contain vertex {0})")]
    NotDisjoint(usize),
    #[error("edge list parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Subset of `0..capacity`, stored as a fixed-width bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    capacity: usize,
}

impl VertexSet {
    pub fn new(capacity: usize) -> Self {
        VertexSet {
            words: vec![0; capacity.div_ceil(64)],
            capacity,
        }
    }

    pub fn full(capacity: usize) -> Self {
        let mut s = Self::new(capacity);
        for v in 0..capacity {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(capacity: usize, vs: I) -> Self {
        let mut s = Self::new(capacity);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn singleton(capacity: usize, v: usize) -> Self {
        Self::from_iter(capacity, [v])
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.capacity, "vertex {} out of range {}", v, self.capacity);
        self.words[v / 64] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.capacity {
            self.words[v / 64] &= !(1u64 << (v % 64));
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn min_vertex(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn union_in_place(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn subtract_in_place(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.capacity, other.capacity);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// First vertex both sets contain, if any.
    pub fn common_vertex(&self, other: &VertexSet) -> Option<usize> {
        self.intersection(other).min_vertex()
    }

    fn zip_words(&self, other: &VertexSet, f: impl Fn(u64, u64) -> u64) -> VertexSet {
        debug_assert_eq!(self.capacity, other.capacity);
        VertexSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
            capacity: self.capacity,
        }
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    /// Lexicographic order on the sorted member lists; used for deterministic
    /// tie-breaking wherever a "choose any" appears.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

/// Finite simple graph: symmetric irreflexive adjacency over vertices `0..n`.
/// Immutable after construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    pub fn edgeless(n: usize) -> Graph {
        Graph {
            n,
            adj: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::edgeless(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge_unchecked(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3);
        let mut g = Graph::edgeless(n);
        for v in 0..n {
            g.add_edge_unchecked(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::edgeless(n);
        for v in 1..n {
            g.add_edge_unchecked(v - 1, v);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::edgeless(n);
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            assert_ne!(u, v, "self-loops are not allowed");
            g.add_edge_unchecked(u, v);
        }
        Ok(g)
    }

    fn add_edge_unchecked(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in self.adj[u].iter() {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::edgeless(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge_unchecked(u, v);
                }
            }
        }
        g
    }

    /// Subgraph induced on `x`. The returned map sends new ids to old ids
    /// (new ids follow the ascending order of `x`).
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if x.capacity() != self.n {
            if let Some(v) = x.iter().find(|&v| v >= self.n) {
                return Err(GraphError::VertexOutOfRange(v, self.n));
            }
        }
        let map: Vec<usize> = x.iter().collect();
        let mut inv = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            inv[old] = new;
        }
        let mut g = Graph::edgeless(map.len());
        for (new_u, &old_u) in map.iter().enumerate() {
            for old_v in self.adj[old_u].intersection(x).iter() {
                if old_u < old_v {
                    g.add_edge_unchecked(new_u, inv[old_v]);
                }
            }
        }
        Ok((g, map))
    }

    /// `N(X)`: vertices outside `x` with a neighbour in `x`.
    pub fn open_nbhd(&self, x: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in x.iter() {
            out.union_in_place(&self.adj[v]);
        }
        out.subtract_in_place(x);
        out
    }

    /// `N[X] = N(X) ∪ X`.
    pub fn closed_nbhd(&self, x: &VertexSet) -> VertexSet {
        if x.is_empty() {
            return VertexSet::new(self.n);
        }
        let mut out = x.clone();
        for v in x.iter() {
            out.union_in_place(&self.adj[v]);
        }
        out
    }

    pub fn is_complete_pair(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = a.common_vertex(b) {
            return Err(GraphError::NotDisjoint(v));
        }
        Ok(a.iter().all(|u| b.is_subset(&self.adj[u])))
    }

    pub fn is_anticomplete_pair(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = a.common_vertex(b) {
            return Err(GraphError::NotDisjoint(v));
        }
        Ok(a.iter().all(|u| self.adj[u].is_disjoint(b)))
    }

    /// `a` covers `b`: every vertex of `b` has a neighbour in `a`.
    /// Vacuously true when `b` is empty; false when `a` is empty and `b` is not.
    pub fn covers(&self, a: &VertexSet, b: &VertexSet) -> Result<bool, GraphError> {
        if let Some(v) = a.common_vertex(b) {
            return Err(GraphError::NotDisjoint(v));
        }
        Ok(b.iter().all(|v| !self.adj[v].is_disjoint(a)))
    }

    /// Distance classes from `u`: layer `i` holds the vertices at distance
    /// exactly `i`. Vertices in other components are returned separately.
    pub fn bfs_layers(&self, u: usize) -> (Vec<VertexSet>, VertexSet) {
        assert!(u < self.n);
        let mut layers = vec![VertexSet::singleton(self.n, u)];
        let mut seen = VertexSet::singleton(self.n, u);
        loop {
            let frontier = layers.last().unwrap();
            let mut next = self.open_nbhd(frontier);
            next.subtract_in_place(&seen);
            if next.is_empty() {
                break;
            }
            seen.union_in_place(&next);
            layers.push(next);
        }
        let mut unreached = VertexSet::full(self.n);
        unreached.subtract_in_place(&seen);
        (layers, unreached)
    }

    /// Distances from `u`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, u: usize) -> Vec<Option<usize>> {
        let (layers, _) = self.bfs_layers(u);
        let mut dist = vec![None; self.n];
        for (d, layer) in layers.iter().enumerate() {
            for v in layer.iter() {
                dist[v] = Some(d);
            }
        }
        dist
    }

    /// Whether `G[x]` is connected; empty and singleton sets count as connected.
    pub fn is_connected_set(&self, x: &VertexSet) -> bool {
        let Some(start) = x.min_vertex() else { return true };
        let mut seen = VertexSet::singleton(self.n, start);
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = self.open_nbhd(&frontier);
            next.subtract_in_place(&seen);
            let mut next = next.intersection(x);
            next.subtract_in_place(&seen);
            seen.union_in_place(&next);
            frontier = next;
        }
        x.is_subset(&seen)
    }

    /// Checks that `seq` is an induced path: consecutive vertices adjacent,
    /// all other pairs non-adjacent, no repeats.
    pub fn is_induced_path(&self, seq: &[usize]) -> bool {
        let distinct = VertexSet::from_iter(self.n, seq.iter().copied());
        if distinct.len() != seq.len() {
            return false;
        }
        for i in 0..seq.len() {
            for j in (i + 1)..seq.len() {
                let adjacent = self.has_edge(seq[i], seq[j]);
                if adjacent != (j == i + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Checks that `seq` (closed implicitly) is an induced cycle of length
    /// `seq.len()`.
    pub fn is_induced_cycle(&self, seq: &[usize]) -> bool {
        if seq.len() < 3 {
            return false;
        }
        let distinct = VertexSet::from_iter(self.n, seq.iter().copied());
        if distinct.len() != seq.len() {
            return false;
        }
        let k = seq.len();
        for i in 0..k {
            for j in (i + 1)..k {
                let adjacent = self.has_edge(seq[i], seq[j]);
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                if adjacent != consecutive {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edge_count())
    }
}

/// Parses the shared edge-list format: a header line `n m`, then `m` lines
/// `u v` with `0 <= u < v < n`. Lines starting with `#` are comments.
/// Duplicate edges are rejected.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line_no, header) = lines.next().ok_or(GraphError::Parse {
        line: 0,
        msg: "empty input".into(),
    })?;
    let mut parts = header.split_whitespace();
    let parse_num = |s: Option<&str>, line: usize| -> Result<usize, GraphError> {
        s.and_then(|t| t.parse().ok()).ok_or(GraphError::Parse {
            line,
            msg: "expected an integer".into(),
        })
    };
    let n = parse_num(parts.next(), line_no)?;
    let m = parse_num(parts.next(), line_no)?;

    let mut g = Graph::edgeless(n);
    let mut count = 0;
    for (line, l) in lines {
        let mut parts = l.split_whitespace();
        let u = parse_num(parts.next(), line)?;
        let v = parse_num(parts.next(), line)?;
        if u >= n || v >= n {
            return Err(GraphError::Parse {
                line,
                msg: format!("vertex out of range (n = {n})"),
            });
        }
        if u >= v {
            return Err(GraphError::Parse {
                line,
                msg: "edges must satisfy u < v".into(),
            });
        }
        if g.has_edge(u, v) {
            return Err(GraphError::Parse {
                line,
                msg: format!("duplicate edge {u} {v}"),
            });
        }
        g.add_edge_unchecked(u, v);
        count += 1;
    }
    if count != m {
        return Err(GraphError::Parse {
            line: 0,
            msg: format!("header declared {m} edges, found {count}"),
        });
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
