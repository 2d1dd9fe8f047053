//! Chordal graphs: perfect elimination orderings and the two depth routes
//! that are exact for chordal graphs (the simplicial-vertex recursion and the
//! largest minimal vertex cover).

use dashmap::DashMap;

use crate::canon::{canonical_form, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::independence::{independence_number, max_minimal_vertex_cover};

/// A perfect elimination ordering. `order[0]` is eliminated first, so it is
/// simplicial in the whole graph, and in general the later neighbors of
/// `order[i]` form a clique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationOrdering {
    pub order: Vec<usize>,
}

impl EliminationOrdering {
    /// The vertex eliminated first; simplicial in the whole graph.
    pub fn head(&self) -> Option<usize> {
        self.order.first().copied()
    }
}

/// Whether `order` is a perfect elimination ordering of `g`.
pub fn is_peo(g: &Graph, order: &[usize]) -> bool {
    if order.len() != g.n() {
        return false;
    }
    let mut later = g.vertices();
    for &v in order {
        if !later.contains(v) {
            return false;
        }
        later = later.without(v);
        if !g.is_clique(g.neighbors(v) & later) {
            return false;
        }
    }
    true
}

/// Maximum cardinality search; the reverse visit order is a perfect
/// elimination ordering iff `g` is chordal, which is checked directly.
pub fn find_peo(g: &Graph) -> Option<EliminationOrdering> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut unvisited = g.vertices();
    let mut visit = Vec::with_capacity(n);
    while !unvisited.is_empty() {
        let v = unvisited
            .iter()
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited is non-empty");
        visit.push(v);
        unvisited = unvisited.without(v);
        for w in g.neighbors(v) & unvisited {
            weight[w] += 1;
        }
    }
    visit.reverse();
    is_peo(g, &visit).then_some(EliminationOrdering { order: visit })
}

pub fn is_chordal(g: &Graph) -> bool {
    find_peo(g).is_some()
}

/// Vertices that can head a perfect elimination ordering of a chordal graph.
pub fn simplicial_vertices(g: &Graph) -> VertexSet {
    VertexSet::from_vertices((0..g.n()).filter(|&v| g.is_simplicial(v)))
}

/// `max(dim(G \ N[v]) + 1, dim(G \ v))`, which equals `dim G` for every graph
/// and every vertex.
pub fn dim_recursion(g: &Graph, v: usize) -> Result<usize> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let with_v = independence_number(&g.remove_closed_neighborhood(v)) + 1;
    let without_v = independence_number(&g.remove_vertex(v));
    Ok(with_v.max(without_v))
}

/// Projective dimension of `S/I(G)` for chordal `G` as the largest minimal
/// vertex cover.
pub fn chordal_pdim_cover(g: &Graph) -> Result<usize> {
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    Ok(max_minimal_vertex_cover(g).0)
}

/// Depth via `n - pdim` on the vertex-cover route.
pub fn chordal_depth_cover(g: &Graph) -> Result<usize> {
    Ok(g.n() - chordal_pdim_cover(g)?)
}

/// Depth of `S/I(G)` for chordal `G` by the simplicial-vertex recursion,
/// with a fresh memo table.
pub fn chordal_depth_recursive(g: &Graph) -> Result<usize> {
    ChordalDepth::new().depth(g)
}

/// Subgraphs smaller than this are not worth canonizing for the memo.
const MEMO_MIN_VERTICES: usize = 5;

/// Memoized depth recursion for chordal graphs. The memo is keyed by
/// canonical form and can be shared across threads and graphs.
#[derive(Default)]
pub struct ChordalDepth {
    memo: DashMap<CanonicalForm, usize>,
}

impl ChordalDepth {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Depth of `S/I(G)`. The empty graph has depth 0, an isolated vertex
    /// contributes 1, and depth adds over connected components.
    pub fn depth(&self, g: &Graph) -> Result<usize> {
        let mut total = 0;
        for comp in g.components() {
            total += if comp.len() == 1 {
                1
            } else {
                self.connected_depth(&g.induced(comp))?
            };
        }
        Ok(total)
    }

    fn connected_depth(&self, h: &Graph) -> Result<usize> {
        let key = (h.n() >= MEMO_MIN_VERTICES).then(|| canonical_form(h));
        if let Some(k) = &key {
            if let Some(d) = self.memo.get(k) {
                return Ok(*d);
            }
        }
        let peo = find_peo(h).ok_or(Error::NotChordal)?;
        let head = peo.head().expect("connected piece has at least two vertices");
        let d = self.step(h, head)?;
        if let Some(k) = key {
            self.memo.insert(k, d);
        }
        Ok(d)
    }

    /// `1 + min(depth(G \\ N[w]))` over `w` in `N[v]`, for simplicial `v`.
    ///
    /// A minimal vertex cover misses at most one vertex `w` of the clique
    /// `N[v]`, and then contains every neighbor of `w`; what remains is a
    /// minimal cover of `G \\ N[w]`.
    fn step(&self, g: &Graph, v: usize) -> Result<usize> {
        let mut best = usize::MAX;
        for w in g.closed_neighbors(v) {
            best = best.min(self.depth(&g.remove_closed_neighborhood(w))?);
        }
        Ok(best + 1)
    }

    /// The two-branch step `min(depth(G \\ N[v]) + 1, depth(G \\ v))` with
    /// exact depths on both branches. This is only a lower bound for the
    /// depth: on the path `0-1-2-3` it gives 1 at either leaf, while the
    /// depth is 2.
    pub fn two_branch_step(&self, g: &Graph, v: usize) -> Result<usize> {
        validate_head(g, v)?;
        let with_v = self.depth(&g.remove_closed_neighborhood(v))? + 1;
        let without_v = self.depth(&g.remove_vertex(v))?;
        Ok(with_v.min(without_v))
    }

    /// One exact recursion step at a caller-chosen simplicial, non-isolated
    /// vertex.
    pub fn depth_at_head(&self, g: &Graph, v: usize) -> Result<usize> {
        validate_head(g, v)?;
        self.step(g, v)
    }
}

fn validate_head(g: &Graph, v: usize) -> Result<()> {
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if !is_chordal(g) {
        return Err(Error::NotChordal);
    }
    if g.degree(v) == 0 {
        return Err(Error::IsolatedVertex(v));
    }
    if !g.is_simplicial(v) {
        return Err(Error::NotSimplicial(v));
    }
    Ok(())
}
