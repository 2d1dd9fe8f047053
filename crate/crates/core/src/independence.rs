//! Independent sets and vertex covers.
//!
//! `dim S/I(G)` is the independence number, and minimal vertex covers are
//! exactly the complements of maximal independent sets.

use crate::graph::{Graph, VertexSet};

/// Size of a largest independent set, i.e. the Krull dimension of `S/I(G)`.
pub fn independence_number(g: &Graph) -> usize {
    maximum_independent_set(g).len()
}

/// One maximum independent set, found by branch and bound with a greedy
/// clique-cover bound.
pub fn maximum_independent_set(g: &Graph) -> VertexSet {
    let mut search = MaxIndependent {
        g,
        best: VertexSet::EMPTY,
    };
    search.branch(g.vertices(), VertexSet::EMPTY);
    search.best
}

struct MaxIndependent<'a> {
    g: &'a Graph,
    best: VertexSet,
}

impl MaxIndependent<'_> {
    fn branch(&mut self, cand: VertexSet, chosen: VertexSet) {
        if cand.is_empty() {
            if chosen.len() > self.best.len() {
                self.best = chosen;
            }
            return;
        }
        if chosen.len() + clique_cover_bound(self.g, cand) <= self.best.len() {
            return;
        }
        // Vertices with no neighbor in `cand` belong to some optimum; take
        // them all. Otherwise branch on a vertex of maximum degree.
        let mut free = VertexSet::EMPTY;
        let mut pivot = None;
        let mut pivot_deg = 0;
        for v in cand {
            let d = (self.g.neighbors(v) & cand).len();
            if d == 0 {
                free = free.with(v);
            } else if d > pivot_deg {
                pivot_deg = d;
                pivot = Some(v);
            }
        }
        if !free.is_empty() {
            self.branch(cand - free, chosen | free);
            return;
        }
        let v = pivot.expect("non-empty candidate set without isolated vertex has a pivot");
        self.branch(cand - self.g.closed_neighbors(v), chosen.with(v));
        self.branch(cand.without(v), chosen);
    }
}

/// Number of cliques in a greedy clique cover of `within`; an upper bound on
/// the independence number of the induced subgraph.
fn clique_cover_bound(g: &Graph, within: VertexSet) -> usize {
    let mut left = within;
    let mut count = 0;
    while let Some(u) = left.first() {
        let mut clique = VertexSet::singleton(u);
        let mut cand = g.neighbors(u) & left;
        while let Some(w) = cand.first() {
            clique = clique.with(w);
            cand = cand.without(w) & g.neighbors(w);
        }
        left = left - clique;
        count += 1;
    }
    count
}

/// Calls `visit` once for every maximal independent set (Bron–Kerbosch with
/// pivoting, run on the complement adjacency).
pub fn for_each_maximal_independent_set<F: FnMut(VertexSet)>(g: &Graph, mut visit: F) {
    let all = g.vertices();
    let non_adj: Vec<VertexSet> = (0..g.n()).map(|v| all - g.closed_neighbors(v)).collect();
    bron_kerbosch(&non_adj, VertexSet::EMPTY, all, VertexSet::EMPTY, &mut visit);
}

fn bron_kerbosch<F: FnMut(VertexSet)>(non_adj: &[VertexSet], r: VertexSet, p: VertexSet, x: VertexSet, visit: &mut F) {
    if p.is_empty() {
        if x.is_empty() {
            visit(r);
        }
        return;
    }
    let pivot = (p | x)
        .iter()
        .max_by_key(|&u| ((p & non_adj[u]).len(), std::cmp::Reverse(u)))
        .expect("p is non-empty");
    let mut p = p;
    let mut x = x;
    for v in p - non_adj[pivot] {
        bron_kerbosch(non_adj, r.with(v), p & non_adj[v], x & non_adj[v], visit);
        p = p.without(v);
        x = x.with(v);
    }
}

/// All maximal independent sets, sorted by bitmask.
pub fn maximal_independent_sets(g: &Graph) -> Vec<VertexSet> {
    let mut out = Vec::new();
    for_each_maximal_independent_set(g, |s| out.push(s));
    out.sort();
    out
}

/// Largest size of a minimal vertex cover, with one such cover (the complement
/// of a smallest maximal independent set; ties go to the smallest bitmask).
pub fn max_minimal_vertex_cover(g: &Graph) -> (usize, VertexSet) {
    let mut best: Option<VertexSet> = None;
    for_each_maximal_independent_set(g, |w| {
        let better = match best {
            None => true,
            Some(b) => (w.len(), std::cmp::Reverse(w.0)) < (b.len(), std::cmp::Reverse(b.0)),
        };
        if better {
            best = Some(w);
        }
    });
    let w = best.unwrap_or(VertexSet::EMPTY);
    let cover = g.vertices() - w;
    (cover.len(), cover)
}

/// All minimal vertex covers, sorted by bitmask.
pub fn minimal_vertex_covers(g: &Graph) -> Vec<VertexSet> {
    let all = g.vertices();
    let mut out: Vec<_> = maximal_independent_sets(g).into_iter().map(|w| all - w).collect();
    out.sort();
    out
}
