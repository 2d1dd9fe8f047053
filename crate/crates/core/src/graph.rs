//! Bitset-backed simple graphs on at most [`MAX_VERTICES`] vertices.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 32;

/// A set of vertices stored as a bitmask; bit `v` is vertex `v`.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

/// Serialized as the sorted list of vertices.
impl serde::Serialize for VertexSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> serde::Deserialize<'de> for VertexSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let vs = Vec::<usize>::deserialize(d)?;
        if let Some(&v) = vs.iter().find(|&&v| v >= MAX_VERTICES) {
            return Err(serde::de::Error::custom(format!("vertex {v} out of range")));
        }
        Ok(VertexSet::from_vertices(vs))
    }
}

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    /// All vertices `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vs: I) -> Self {
        VertexSet(vs.into_iter().fold(0, |m, v| m | (1 << v)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn with(self, v: usize) -> Self {
        VertexSet(self.0 | 1 << v)
    }

    pub fn without(self, v: usize) -> Self {
        VertexSet(self.0 & !(1 << v))
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Lowest vertex, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: Self) -> Self {
        VertexSet(self.0 | rhs.0)
    }
}

impl BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: Self) -> Self {
        VertexSet(self.0 & rhs.0)
    }
}

impl Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: Self) -> Self {
        VertexSet(self.0 & !rhs.0)
    }
}

impl Not for VertexSet {
    type Output = VertexSet;
    fn not(self) -> Self {
        VertexSet(!self.0)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;
    fn into_iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
pub struct VertexIter(u32);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for VertexIter {}

/// Immutable simple graph on vertices `0..n`.
///
/// Rows past `n` are always zero, so the derived equality and hashing agree
/// with equality of labeled graphs.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: u8,
    adj: [u32; MAX_VERTICES],
}

impl Graph {
    pub fn edgeless(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Graph {
            n: n as u8,
            adj: [0; MAX_VERTICES],
        })
    }

    /// Builds a graph from an edge list. Duplicate edges collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            g.adj[i] |= 1 << j;
            g.adj[j] |= 1 << i;
        }
        Ok(g)
    }

    /// Builds a graph from neighbor bitmasks, validating symmetry, loops and range.
    pub fn from_adjacency(rows: &[u32]) -> Result<Self> {
        let n = rows.len();
        let mut g = Graph::edgeless(n)?;
        let mask = VertexSet::full(n).0;
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let bad = (row & !mask).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: bad, n });
            }
            if row >> v & 1 == 1 {
                return Err(Error::SelfLoop(v));
            }
            g.adj[v] = row;
        }
        for v in 0..n {
            for w in VertexSet(rows[v]) {
                if rows[w] >> v & 1 == 0 {
                    return Err(Error::Asymmetric(v, w));
                }
            }
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::edgeless(n)?;
        let all = VertexSet::full(n).0;
        for v in 0..n {
            g.adj[v] = all & !(1 << v);
        }
        Ok(g)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`, `n >= 3`.
    pub fn cycle(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        if n >= 3 {
            edges.push((n - 1, 0));
        }
        Graph::from_edges(n, &edges)
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    /// Neighbor rows `0..n`.
    pub fn rows(&self) -> &[u32] {
        &self.adj[..self.n()]
    }

    pub fn edge_count(&self) -> usize {
        self.rows().iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for i in 0..self.n() {
            for j in VertexSet(self.adj[i] & !((2u64 << i) - 1) as u32) {
                out.push((i, j));
            }
        }
        out
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        (0..self.n()).map(|v| self.degree(v)).collect()
    }

    pub fn is_independent(&self, s: VertexSet) -> bool {
        s.iter().all(|v| self.adj[v] & s.0 == 0)
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s.0 & !(1 << v)) & !self.adj[v] == 0)
    }

    pub fn is_vertex_cover(&self, c: VertexSet) -> bool {
        self.is_independent(self.vertices() - c)
    }

    /// Vertices with no neighbors.
    pub fn isolated(&self) -> VertexSet {
        VertexSet::from_vertices((0..self.n()).filter(|&v| self.adj[v] == 0))
    }

    /// Induced subgraph on `s`, relabeled to `0..|s|` in increasing original
    /// order. The returned map sends new labels to original vertices.
    pub fn induced_subgraph(&self, s: VertexSet) -> (Graph, Vec<usize>) {
        let keep = s & self.vertices();
        let map = keep.to_vec();
        (self.induced_by_list(&map), map)
    }

    /// Induced subgraph without the relabeling map.
    pub fn induced(&self, s: VertexSet) -> Graph {
        self.induced_subgraph(s).0
    }

    fn induced_by_list(&self, map: &[usize]) -> Graph {
        let mut g = Graph {
            n: map.len() as u8,
            adj: [0; MAX_VERTICES],
        };
        for (i, &vi) in map.iter().enumerate() {
            let mut row = 0;
            for (j, &vj) in map.iter().enumerate() {
                if self.adj[vi] >> vj & 1 == 1 {
                    row |= 1 << j;
                }
            }
            g.adj[i] = row;
        }
        g
    }

    /// `G \ v`.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        self.induced(self.vertices().without(v))
    }

    /// `G \ N[v]`.
    pub fn remove_closed_neighborhood(&self, v: usize) -> Graph {
        self.induced(self.vertices() - self.closed_neighbors(v))
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for v in VertexSet(frontier) {
                next |= self.adj[v];
            }
            next &= within.0 & !seen;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.reach(0, self.vertices()) == self.vertices()
    }

    /// Vertex sets of the connected components, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut left = self.vertices();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let c = self.reach(v, left);
            out.push(c);
            left = left - c;
        }
        out
    }

    /// Whether deleting `v` leaves the remaining vertices connected.
    pub fn is_cut_vertex(&self, v: usize) -> bool {
        let rest = self.vertices().without(v);
        match rest.first() {
            None => false,
            Some(s) => self.reach(s, rest) != rest,
        }
    }

    /// A vertex whose neighborhood is a clique.
    pub fn is_simplicial(&self, v: usize) -> bool {
        self.is_clique(self.neighbors(v))
    }

    pub fn complement(&self) -> Graph {
        let mut g = *self;
        let all = self.vertices().0;
        for v in 0..self.n() {
            g.adj[v] = all & !self.adj[v] & !(1 << v);
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n());
        let mut g = Graph {
            n: self.n,
            adj: [0; MAX_VERTICES],
        };
        for v in 0..self.n() {
            let mut row = 0;
            for w in self.neighbors(v) {
                row |= 1 << perm[w];
            }
            g.adj[perm[v]] = row;
        }
        g
    }

    /// Adds vertex `n` adjacent to `nbrs`.
    pub fn with_new_vertex(&self, nbrs: VertexSet) -> Result<Graph> {
        let n = self.n();
        if n + 1 > MAX_VERTICES {
            return Err(Error::TooManyVertices(n + 1));
        }
        let mut g = *self;
        g.n += 1;
        g.adj[n] = nbrs.0 & self.vertices().0;
        for w in VertexSet(g.adj[n]) {
            g.adj[w] |= 1 << n;
        }
        Ok(g)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}; ", self.n)?;
        let edges: Vec<String> = self.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
        write!(f, "{})", edges.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(g.degree_sequence(), vec![1, 1]);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edgeless_and_duplicates() {
        let g = Graph::from_edges(3, &[]).unwrap();
        assert_eq!(g.degree_sequence(), vec![0, 0, 0]);
        let h = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(h.edges(), vec![(0, 1)]);
    }

    #[test]
    fn path_degrees() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.degree_sequence(), vec![1, 2, 2, 1]);
        assert_eq!(g, Graph::path(4).unwrap());
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
        assert!(matches!(Graph::from_edges(3, &[(1, 1)]), Err(Error::SelfLoop(1))));
        assert!(matches!(Graph::edgeless(33), Err(Error::TooManyVertices(33))));
        assert!(matches!(
            Graph::from_adjacency(&[0b10, 0]),
            Err(Error::Asymmetric(0, 1))
        ));
        assert!(matches!(Graph::from_adjacency(&[0b1]), Err(Error::SelfLoop(0))));
    }

    #[test]
    fn induced_subgraphs() {
        let c5 = Graph::cycle(5).unwrap();
        let (p3, map) = c5.induced_subgraph(VertexSet::from_vertices([0, 1, 2]));
        assert_eq!(p3, Graph::path(3).unwrap());
        assert_eq!(map, vec![0, 1, 2]);

        let k4 = Graph::complete(4).unwrap();
        for drop in 0..4 {
            assert_eq!(k4.remove_vertex(drop), Graph::complete(3).unwrap());
        }

        let p4 = Graph::path(4).unwrap();
        let (h, map) = p4.induced_subgraph(VertexSet::from_vertices([0, 3]));
        assert_eq!(h, Graph::edgeless(2).unwrap());
        assert_eq!(map, vec![0, 3]);

        let (empty, map) = p4.induced_subgraph(VertexSet::EMPTY);
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());

        let (same, map) = c5.induced_subgraph(c5.vertices());
        assert_eq!(same, c5);
        assert_eq!(map, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn connectivity() {
        assert!(Graph::complete(2).unwrap().is_connected());
        assert!(!Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap().is_connected());
        assert!(Graph::edgeless(1).unwrap().is_connected());
        assert!(Graph::edgeless(0).unwrap().is_connected());
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            g.components(),
            vec![
                VertexSet::from_vertices([0, 1]),
                VertexSet::from_vertices([2, 3]),
                VertexSet::singleton(4)
            ]
        );
    }

    #[test]
    fn cut_vertices_and_simplicial() {
        let p3 = Graph::path(3).unwrap();
        assert!(p3.is_cut_vertex(1));
        assert!(!p3.is_cut_vertex(0));
        assert!(p3.is_simplicial(0));
        assert!(!p3.is_simplicial(1));
    }

    #[test]
    fn permutation_and_extension() {
        let p3 = Graph::path(3).unwrap();
        let q = p3.permuted(&[1, 0, 2]);
        assert!(q.has_edge(1, 0) && q.has_edge(0, 2) && !q.has_edge(1, 2));
        let k3 = Graph::complete(2).unwrap().with_new_vertex(VertexSet(0b11)).unwrap();
        assert_eq!(k3, Graph::complete(3).unwrap());
        assert_eq!(Graph::cycle(4).unwrap().complement().edges(), vec![(0, 2), (1, 3)]);
    }
}
