//! Simple undirected graphs on at most 64 vertices, stored as one adjacency
//! word per vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 64;

#[inline]
fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Iterates the set bits of a word, lowest first.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    edges: usize,
}

/// Graphs with a fixed vertex layout; the star center is always vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedGraph {
    Complete,
    Star,
    /// `K_{1,n-1}` plus the edge between leaves 1 and 2.
    StarPlusEdge,
    Path,
    Cycle,
}

impl FromStr for NamedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "complete" => Ok(NamedGraph::Complete),
            "star" => Ok(NamedGraph::Star),
            "star_plus_edge" | "star-plus-edge" | "star_plus" => Ok(NamedGraph::StarPlusEdge),
            "path" => Ok(NamedGraph::Path),
            "cycle" => Ok(NamedGraph::Cycle),
            other => Err(Error::Parse {
                line: 0,
                msg: format!("unknown graph kind {other:?}"),
            }),
        }
    }
}

/// Small fixed graphs whose (not necessarily induced) containment drives
/// the matching-number case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternId {
    FourK2,
    ThreeK12,
    K3,
    K3PlusTwoK2,
    P5,
    TwoK2,
}

impl PatternId {
    pub const ALL: [PatternId; 6] = [
        PatternId::FourK2,
        PatternId::ThreeK12,
        PatternId::K3,
        PatternId::K3PlusTwoK2,
        PatternId::P5,
        PatternId::TwoK2,
    ];

    pub fn graph(self) -> Graph {
        let (n, edges): (usize, &[(usize, usize)]) = match self {
            PatternId::FourK2 => (8, &[(0, 1), (2, 3), (4, 5), (6, 7)]),
            PatternId::ThreeK12 => (9, &[(0, 1), (0, 2), (3, 4), (3, 5), (6, 7), (6, 8)]),
            PatternId::K3 => (3, &[(0, 1), (1, 2), (0, 2)]),
            PatternId::K3PlusTwoK2 => (7, &[(0, 1), (1, 2), (0, 2), (3, 4), (5, 6)]),
            PatternId::P5 => (5, &[(0, 1), (1, 2), (2, 3), (3, 4)]),
            PatternId::TwoK2 => (4, &[(0, 1), (2, 3)]),
        };
        Graph::new(n, edges).expect("pattern graphs are valid")
    }
}

impl Graph {
    /// Builds a graph from an edge list. Repeated edges are dropped.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            if g.adj[u] & bit(v) == 0 {
                g.adj[u] |= bit(v);
                g.adj[v] |= bit(u);
                g.edges += 1;
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::TooSmall("a graph needs at least one vertex".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
            edges: 0,
        })
    }

    /// Builds a graph directly from adjacency rows. Rows must be symmetric
    /// and loop-free.
    pub fn from_rows(rows: Vec<u64>) -> Result<Graph> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::TooSmall("a graph needs at least one vertex".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let full = if n == 64 { u64::MAX } else { bit(n) - 1 };
        let mut deg_sum = 0usize;
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: (row & !full).trailing_zeros() as usize,
                    n,
                });
            }
            if row & bit(u) != 0 {
                return Err(Error::LoopEdge(u));
            }
            for v in Bits(row) {
                if rows[v] & bit(u) == 0 {
                    return Err(Error::InvalidSpec(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
            deg_sum += row.count_ones() as usize;
        }
        Ok(Graph {
            n,
            adj: rows,
            edges: deg_sum / 2,
        })
    }

    pub fn named(kind: NamedGraph, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::TooSmall("named graphs need n >= 1".into()));
        }
        let mut edges = Vec::new();
        match kind {
            NamedGraph::Complete => {
                for u in 0..n {
                    for v in u + 1..n {
                        edges.push((u, v));
                    }
                }
            }
            NamedGraph::Star => edges.extend((1..n).map(|v| (0, v))),
            NamedGraph::StarPlusEdge => {
                if n < 3 {
                    return Err(Error::TooSmall("star_plus_edge needs n >= 3".into()));
                }
                edges.extend((1..n).map(|v| (0, v)));
                edges.push((1, 2));
            }
            NamedGraph::Path => edges.extend((1..n).map(|v| (v - 1, v))),
            NamedGraph::Cycle => {
                if n < 3 {
                    return Err(Error::TooSmall("cycles need n >= 3".into()));
                }
                edges.extend((1..n).map(|v| (v - 1, v)));
                edges.push((n - 1, 0));
            }
        }
        Graph::new(n, &edges)
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    #[inline]
    pub fn row(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        Bits(self.adj[v])
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for u in 0..self.n {
            for v in Bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    pub fn is_regular(&self, r: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == r)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph {
            n,
            adj,
            edges: self.edges + other.edges,
        })
    }

    pub fn remove_edges(&self, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = self.clone();
        for &(u, v) in edges {
            if !g.has_edge(u, v) {
                return Err(Error::NotAnEdge(u, v));
            }
            g.adj[u] &= !bit(v);
            g.adj[v] &= !bit(u);
            g.edges -= 1;
        }
        Ok(g)
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::LoopEdge(u));
        }
        if self.has_edge(u, v) {
            return Err(Error::AlreadyEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u] |= bit(v);
        g.adj[v] |= bit(u);
        g.edges += 1;
        Ok(g)
    }

    /// Appends a vertex adjacent to the vertices in `nbrs`.
    pub fn with_new_vertex(&self, nbrs: u64) -> Result<Graph> {
        let n = self.n + 1;
        if n > MAX_ORDER {
            return Err(Error::TooLarge(n));
        }
        if nbrs >> self.n != 0 {
            return Err(Error::VertexOutOfRange {
                vertex: (nbrs >> self.n).trailing_zeros() as usize + self.n,
                n: self.n,
            });
        }
        let mut adj = self.adj.clone();
        for v in Bits(nbrs) {
            adj[v] |= bit(self.n);
        }
        adj.push(nbrs);
        Ok(Graph {
            n,
            adj,
            edges: self.edges + nbrs.count_ones() as usize,
        })
    }

    /// Subgraph induced on `vertices`, relabeled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut rows = vec![0u64; vertices.len()];
        for (i, &u) in vertices.iter().enumerate() {
            self.check_vertex(u)?;
            for (j, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= bit(j);
                }
            }
        }
        Graph::from_rows(rows)
    }

    /// Relabels so that vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in Bits(self.adj[u]) {
                adj[perm[u]] |= bit(perm[v]);
            }
        }
        Graph {
            n: self.n,
            adj,
            edges: self.edges,
        }
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn component_sets(&self) -> Vec<u64> {
        let full = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        let mut seen = 0u64;
        let mut out = Vec::new();
        while seen != full {
            let start = (!seen & full).trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for v in Bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<Graph> {
        self.component_sets()
            .into_iter()
            .map(|set| {
                let verts: Vec<usize> = Bits(set).collect();
                self.induced(&verts).expect("component vertices are in range")
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_sets().len() == 1
    }

    /// Vertices whose removal leaves the rest connected.
    pub fn non_cut_vertices(&self) -> u64 {
        if self.n == 1 {
            return 1;
        }
        let full = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        let mut out = 0u64;
        for v in 0..self.n {
            let alive = full & !bit(v);
            let start = alive.trailing_zeros() as usize;
            let mut comp = bit(start);
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0u64;
                for u in Bits(frontier) {
                    next |= self.adj[u];
                }
                next &= alive;
                frontier = next & !comp;
                comp |= next;
            }
            if comp == alive {
                out |= bit(v);
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.edges + 1 == self.n && self.is_connected()
    }

    /// Size of a maximum matching, by branch and bound on the lowest
    /// vertex of positive degree: match it to a neighbor or delete it.
    pub fn max_matching(&self) -> usize {
        let full = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        let mut best = self.greedy_matching();
        matching_rec(&self.adj, full, 0, &mut best);
        best
    }

    fn greedy_matching(&self) -> usize {
        let mut used = 0u64;
        let mut size = 0;
        for u in 0..self.n {
            if used & bit(u) != 0 {
                continue;
            }
            if let Some(v) = Bits(self.adj[u] & !used).next() {
                used |= bit(u) | bit(v);
                size += 1;
            }
        }
        size
    }

    /// True iff some subgraph (not necessarily induced) is isomorphic to
    /// the pattern.
    pub fn contains_pattern(&self, pattern: PatternId) -> bool {
        self.contains_subgraph(&pattern.graph())
    }

    pub fn contains_subgraph(&self, pattern: &Graph) -> bool {
        if pattern.n > self.n || pattern.edges > self.edges {
            return false;
        }
        let order = search_order(pattern);
        let mut images = vec![usize::MAX; pattern.n];
        subgraph_rec(self, pattern, &order, 0, 0, &mut images)
    }

    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 { u64::MAX } else { bit(self.n) - 1 };
        let adj: Vec<u64> = (0..self.n).map(|v| !self.adj[v] & full & !bit(v)).collect();
        let edges = self.n * (self.n - 1) / 2 - self.edges;
        Graph { n: self.n, adj, edges }
    }

    /// Parses the edge-list text format: a header line `n m` followed by
    /// `m` lines `u v` (0-based).
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header line \"n m\"".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            edges.push(parse_pair(line, l)?);
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges);
        for (u, v) in self.edges() {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            msg: format!("missing {what}"),
        })?;
        tok.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("{tok:?} is not a nonnegative integer"),
        })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(Error::Parse {
            line,
            msg: "expected exactly two fields".into(),
        });
    }
    Ok((a, b))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

fn matching_rec(adj: &[u64], alive: u64, cur: usize, best: &mut usize) {
    let mut active = 0u64;
    for v in Bits(alive) {
        if adj[v] & alive != 0 {
            active |= bit(v);
        }
    }
    if active == 0 {
        *best = (*best).max(cur);
        return;
    }
    if cur + active.count_ones() as usize / 2 <= *best {
        return;
    }
    let v = active.trailing_zeros() as usize;
    for u in Bits(adj[v] & alive) {
        matching_rec(adj, alive & !bit(u) & !bit(v), cur + 1, best);
    }
    matching_rec(adj, alive & !bit(v), cur, best);
}

/// Orders pattern vertices so each one has as many earlier neighbors as
/// possible.
fn search_order(p: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(p.n);
    let mut placed = 0u64;
    while order.len() < p.n {
        let v = (0..p.n)
            .filter(|&v| placed & bit(v) == 0)
            .max_by_key(|&v| ((p.adj[v] & placed).count_ones(), p.degree(v), usize::MAX - v))
            .expect("unplaced vertex exists");
        placed |= bit(v);
        order.push(v);
    }
    order
}

fn subgraph_rec(
    g: &Graph,
    p: &Graph,
    order: &[usize],
    depth: usize,
    used: u64,
    images: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let pv = order[depth];
    let full = if g.n == 64 { u64::MAX } else { bit(g.n) - 1 };
    let mut cand = full & !used;
    for pu in Bits(p.adj[pv]) {
        if images[pu] != usize::MAX {
            cand &= g.adj[images[pu]];
        }
    }
    let need = p.degree(pv);
    for c in Bits(cand) {
        if g.degree(c) < need {
            continue;
        }
        images[pv] = c;
        if subgraph_rec(g, p, order, depth + 1, used | bit(c), images) {
            return true;
        }
    }
    images[pv] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Graph {
        Graph::named(NamedGraph::Complete, 2).unwrap()
    }

    fn four_k2() -> Graph {
        let g = k2();
        g.disjoint_union(&g).unwrap().disjoint_union(&g).unwrap().disjoint_union(&g).unwrap()
    }

    #[test]
    fn build_examples() {
        let k3 = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(k3.edge_count(), 3);
        assert!(k3.is_regular(2));
        assert_eq!(Graph::new(2, &[]).unwrap().edge_count(), 0);
        let g = Graph::new(4, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.components().len(), 3);
    }

    #[test]
    fn build_errors() {
        assert_eq!(Graph::new(3, &[(0, 3)]), Err(Error::VertexOutOfRange { vertex: 3, n: 3 }));
        assert_eq!(Graph::new(3, &[(1, 1)]), Err(Error::LoopEdge(1)));
        assert_eq!(Graph::new(65, &[]), Err(Error::TooLarge(65)));
        assert!(matches!(Graph::new(0, &[]), Err(Error::TooSmall(_))));
    }

    #[test]
    fn named_examples() {
        let s = Graph::named(NamedGraph::Star, 6).unwrap();
        assert_eq!(s.degrees(), vec![5, 1, 1, 1, 1, 1]);
        let sp = Graph::named(NamedGraph::StarPlusEdge, 5).unwrap();
        assert_eq!(sp.edge_count(), 5);
        let mut d = sp.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        assert_eq!(d, vec![4, 2, 2, 1, 1]);
        assert_eq!(Graph::named(NamedGraph::Complete, 4).unwrap().edge_count(), 6);
        assert!(matches!(Graph::named(NamedGraph::StarPlusEdge, 2), Err(Error::TooSmall(_))));
        let c = Graph::named(NamedGraph::Cycle, 5).unwrap();
        assert!(c.is_regular(2));
        assert!(Graph::named(NamedGraph::Path, 5).unwrap().is_tree());
    }

    #[test]
    fn unions() {
        let g = k2().disjoint_union(&k2()).unwrap();
        assert_eq!((g.n(), g.edge_count(), g.components().len()), (4, 2, 2));
        let g4 = four_k2();
        assert_eq!((g4.n(), g4.edge_count()), (8, 4));
        let big = Graph::empty(40).unwrap();
        assert_eq!(big.disjoint_union(&big), Err(Error::TooLarge(80)));
    }

    #[test]
    fn edge_removal() {
        let k3 = Graph::named(NamedGraph::Complete, 3).unwrap();
        let p3 = k3.remove_edges(&[(0, 2)]).unwrap();
        assert_eq!(p3.edges(), vec![(0, 1), (1, 2)]);
        let sp = Graph::named(NamedGraph::StarPlusEdge, 5).unwrap();
        assert_eq!(sp.remove_edges(&[(1, 2)]).unwrap(), Graph::named(NamedGraph::Star, 5).unwrap());
        let s = Graph::named(NamedGraph::Star, 6).unwrap();
        let cut = s.remove_edges(&[(0, 5)]).unwrap();
        let comps = cut.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], Graph::named(NamedGraph::Star, 5).unwrap());
        assert_eq!(comps[1].n(), 1);
        assert_eq!(s.remove_edges(&[(1, 2)]), Err(Error::NotAnEdge(1, 2)));
    }

    #[test]
    fn matching_examples() {
        assert_eq!(four_k2().max_matching(), 4);
        for n in 4..12 {
            assert_eq!(Graph::named(NamedGraph::StarPlusEdge, n).unwrap().max_matching(), 2);
        }
        assert_eq!(Graph::named(NamedGraph::Path, 7).unwrap().max_matching(), 3);
        assert_eq!(Graph::named(NamedGraph::Complete, 9).unwrap().max_matching(), 4);
        assert_eq!(Graph::empty(5).unwrap().max_matching(), 0);
    }

    #[test]
    fn pattern_examples() {
        assert!(four_k2().contains_pattern(PatternId::FourK2));
        assert!(Graph::named(NamedGraph::StarPlusEdge, 9).unwrap().contains_pattern(PatternId::K3));
        assert!(!Graph::named(NamedGraph::Star, 8).unwrap().contains_pattern(PatternId::TwoK2));
        assert!(Graph::named(NamedGraph::Path, 5).unwrap().contains_pattern(PatternId::P5));
        assert!(!Graph::named(NamedGraph::Path, 4).unwrap().contains_pattern(PatternId::P5));
        assert!(Graph::named(NamedGraph::Path, 9).unwrap().contains_pattern(PatternId::ThreeK12));
        assert!(!Graph::named(NamedGraph::Path, 8).unwrap().contains_pattern(PatternId::ThreeK12));
    }

    #[test]
    fn components_examples() {
        let k3 = Graph::named(NamedGraph::Complete, 3).unwrap();
        let g = k2().disjoint_union(&k3).unwrap();
        assert_eq!(g.components(), vec![k2(), k3.clone()]);
        assert_eq!(k3.components(), vec![k3]);
        let e5 = Graph::empty(5).unwrap();
        assert_eq!(e5.components().len(), 5);
        assert!(e5.components().iter().all(|c| c.n() == 1));
    }

    #[test]
    fn non_cut_vertices_of_path() {
        let p = Graph::named(NamedGraph::Path, 5).unwrap();
        assert_eq!(p.non_cut_vertices(), 0b10001);
        let c = Graph::named(NamedGraph::Cycle, 5).unwrap();
        assert_eq!(c.non_cut_vertices(), 0b11111);
    }

    #[test]
    fn edge_list_parsing() {
        let g = Graph::parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(
            Graph::parse_edge_list("3 2\n0 1\n3 x\n"),
            Err(Error::Parse {
                line: 3,
                msg: "\"x\" is not a nonnegative integer".into()
            })
        );
        assert!(matches!(Graph::parse_edge_list("3 2\n0 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn bipartite_detection() {
        assert!(Graph::named(NamedGraph::Cycle, 6).unwrap().is_bipartite());
        assert!(!Graph::named(NamedGraph::Cycle, 5).unwrap().is_bipartite());
    }
}
