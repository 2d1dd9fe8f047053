//! Isomorph-free generation of connected graphs and connected chordal graphs
//! by canonical augmentation.
//!
//! A graph on `n` vertices is built from a canonical parent on `n - 1`
//! vertices by adding one vertex. The child is kept iff the new vertex lies
//! in the orbit of the child's canonical deletion vertex: among deletable
//! vertices of minimum degree, the one with the largest canonical position.
//! For connected graphs a vertex is deletable when it is not a cut vertex,
//! for chordal graphs when it is simplicial; deleting it stays in the class.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::canon::{canonical_labeling, same_orbit, CanonicalForm};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, VertexSet};

/// Largest `n` the generator accepts.
pub const MAX_N: usize = 9;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphClass {
    /// Every connected graph.
    #[default]
    All,
    /// Connected chordal graphs.
    Chordal,
}

impl GraphClass {
    pub fn name(self) -> &'static str {
        match self {
            GraphClass::All => "all",
            GraphClass::Chordal => "chordal",
        }
    }

    pub fn contains(self, g: &Graph) -> bool {
        g.is_connected() && (self == GraphClass::All || crate::chordal::is_chordal(g))
    }

    fn deletable(self, g: &Graph) -> VertexSet {
        let test = |v: usize| match self {
            GraphClass::All => !g.is_cut_vertex(v),
            GraphClass::Chordal => g.is_simplicial(v),
        };
        VertexSet::from_vertices(g.vertices().iter().filter(|&v| test(v)))
    }

    /// Neighborhoods a new vertex may get, in increasing bitmask order.
    fn extensions(self, parent: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
        (1u32..1 << parent.n())
            .map(VertexSet)
            .filter(move |&s| self == GraphClass::All || parent.is_clique(s))
    }
}

impl std::str::FromStr for GraphClass {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "all" => Ok(GraphClass::All),
            "chordal" => Ok(GraphClass::Chordal),
            other => Err(format!("unknown graph class {other:?}, expected all or chordal")),
        }
    }
}

impl std::fmt::Display for GraphClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

fn check_n(n: usize) -> Result<()> {
    if (2..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedN(n, "2..=9"))
    }
}

/// The canonical form of `child` if its last vertex passes the canonical
/// deletion test.
fn accept(child: &Graph, class: GraphClass) -> Option<CanonicalForm> {
    let new = child.n() - 1;
    let deletable = class.deletable(child);
    let min_degree = deletable.iter().map(|v| child.degree(v)).min()?;
    if child.degree(new) != min_degree {
        return None;
    }
    let candidates: Vec<usize> = deletable.iter().filter(|&v| child.degree(v) == min_degree).collect();
    let labeling = canonical_labeling(child);
    if candidates.len() == 1 {
        return Some(labeling.form);
    }
    let pos = labeling.positions();
    let chosen = *candidates
        .iter()
        .max_by_key(|&&v| pos[v])
        .expect("new vertex is a candidate");
    let keep = chosen == new || labeling.known_same_orbit(new, chosen) || same_orbit(child, new, chosen);
    keep.then_some(labeling.form)
}

/// Canonical children of a canonical parent, one per isomorphism class, in
/// the order their first neighborhood appears.
pub fn children(parent: &Graph, class: GraphClass) -> Vec<Graph> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in class.extensions(parent) {
        let child = parent.with_new_vertex(s).expect("parent has room for one more vertex");
        if let Some(form) = accept(&child, class) {
            if seen.insert(form) {
                out.push(*form.graph());
            }
        }
    }
    out
}

/// All canonical graphs of the class on `n` vertices, in generation order.
pub fn connected_graphs(n: usize, class: GraphClass) -> Result<Vec<Graph>> {
    connected_graphs_with(n, class, Exec::default())
}

pub fn connected_graphs_with(n: usize, class: GraphClass, exec: Exec) -> Result<Vec<Graph>> {
    check_n(n)?;
    Ok(level(n, class, exec))
}

fn level(n: usize, class: GraphClass, exec: Exec) -> Vec<Graph> {
    let mut current = vec![Graph::edgeless(1).expect("one vertex")];
    for _ in 1..n {
        current = exec.flat_map(&current, |p| children(p, class));
    }
    current
}

/// Every graph on `n` vertices up to isomorphism, connected or not, built as
/// multisets of connected components. Each graph is in canonical form.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_N).contains(&n) {
        return Err(Error::UnsupportedN(n, "1..=9"));
    }
    let by_size: Vec<Vec<Graph>> = (0..=n)
        .map(|k| {
            if k == 0 {
                Vec::new()
            } else {
                level(k, GraphClass::All, Exec::default())
            }
        })
        .collect();
    // components are chosen in non-increasing (size, index) order
    fn rec(by_size: &[Vec<Graph>], left: usize, last: (usize, usize), parts: &mut Vec<Graph>, out: &mut Vec<Graph>) {
        if left == 0 {
            out.push(*crate::canon::canonical_form(&disjoint_union(parts)).graph());
            return;
        }
        for k in (1..=left.min(last.0)).rev() {
            let top = if k == last.0 { last.1 + 1 } else { by_size[k].len() };
            for i in (0..top).rev() {
                parts.push(by_size[k][i]);
                rec(by_size, left - k, (k, i), parts, out);
                parts.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&by_size, n, (n, by_size[n].len() - 1), &mut Vec::new(), &mut out);
    Ok(out)
}

fn disjoint_union(parts: &[Graph]) -> Graph {
    let n = parts.iter().map(Graph::n).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for p in parts {
        edges.extend(p.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
        offset += p.n();
    }
    Graph::from_edges(n, &edges).expect("parts fit")
}

/// Graphs of one level produced lazily, a batch of parents at a time. The
/// order matches [`connected_graphs`] regardless of the executor.
pub struct GraphStream {
    parents: Vec<Graph>,
    next_parent: usize,
    parents_per_batch: usize,
    buffer: VecDeque<Graph>,
    class: GraphClass,
    exec: Exec,
}

impl GraphStream {
    pub fn new(n: usize, class: GraphClass, exec: Exec) -> Result<Self> {
        check_n(n)?;
        Ok(GraphStream {
            parents: level(n - 1, class, exec),
            next_parent: 0,
            parents_per_batch: 64,
            buffer: VecDeque::new(),
            class,
            exec,
        })
    }

    pub fn parent_count(&self) -> usize {
        self.parents.len()
    }

    /// Children of the next batch of parents, or `None` once exhausted.
    pub fn next_batch(&mut self) -> Option<Vec<Graph>> {
        if !self.buffer.is_empty() {
            return Some(self.buffer.drain(..).collect());
        }
        if self.next_parent >= self.parents.len() {
            return None;
        }
        let end = (self.next_parent + self.parents_per_batch).min(self.parents.len());
        let class = self.class;
        let batch = self
            .exec
            .flat_map(&self.parents[self.next_parent..end], |p| children(p, class));
        self.next_parent = end;
        Some(batch)
    }
}

impl Iterator for GraphStream {
    type Item = Graph;
    fn next(&mut self) -> Option<Graph> {
        while self.buffer.is_empty() {
            let batch = self.next_batch()?;
            self.buffer.extend(batch);
        }
        self.buffer.pop_front()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;
    use std::collections::BTreeSet;

    /// Every labeled graph on `n` vertices, filtered and deduplicated.
    fn brute_force(n: usize, class: GraphClass) -> BTreeSet<CanonicalForm> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        let mut out = BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, e)| *e)
                .collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if class.contains(&g) {
                out.insert(canonical_form(&g));
            }
        }
        out
    }

    fn forms(gs: &[Graph]) -> BTreeSet<CanonicalForm> {
        gs.iter().map(canonical_form).collect()
    }

    #[test]
    fn small_counts() {
        let all: Vec<usize> = (2..=7)
            .map(|n| connected_graphs(n, GraphClass::All).unwrap().len())
            .collect();
        assert_eq!(all, [1, 2, 6, 21, 112, 853]);
        let chordal: Vec<usize> = (2..=7)
            .map(|n| connected_graphs(n, GraphClass::Chordal).unwrap().len())
            .collect();
        assert_eq!(chordal, [1, 2, 5, 15, 58, 272]);
    }

    #[test]
    fn matches_labeled_brute_force() {
        for n in 2..=6 {
            for class in [GraphClass::All, GraphClass::Chordal] {
                let gs = connected_graphs(n, class).unwrap();
                let f = forms(&gs);
                assert_eq!(f.len(), gs.len(), "duplicates at n={n} {class}");
                assert_eq!(f, brute_force(n, class), "n={n} {class}");
            }
        }
    }

    #[test]
    fn chordal_is_the_chordal_subset() {
        for n in 2..=7 {
            let all = connected_graphs(n, GraphClass::All).unwrap();
            let filtered: BTreeSet<_> = all
                .iter()
                .filter(|g| GraphClass::Chordal.contains(g))
                .map(canonical_form)
                .collect();
            assert_eq!(filtered, forms(&connected_graphs(n, GraphClass::Chordal).unwrap()));
        }
    }

    #[test]
    fn four_vertex_chordal_excludes_c4() {
        let gs = connected_graphs(4, GraphClass::Chordal).unwrap();
        let c4 = canonical_form(&Graph::cycle(4).unwrap());
        assert_eq!(gs.len(), 5);
        assert!(!forms(&gs).contains(&c4));
    }

    #[test]
    fn emitted_graphs_are_canonical_and_in_class() {
        for class in [GraphClass::All, GraphClass::Chordal] {
            for g in connected_graphs(6, class).unwrap() {
                assert!(class.contains(&g));
                assert_eq!(*canonical_form(&g).graph(), g);
            }
        }
    }

    #[test]
    fn stream_matches_levels_and_executors_agree() {
        for class in [GraphClass::All, GraphClass::Chordal] {
            let par = connected_graphs_with(7, class, Exec::Parallel).unwrap();
            let seq = connected_graphs_with(7, class, Exec::Sequential).unwrap();
            assert_eq!(par, seq);
            let streamed: Vec<Graph> = GraphStream::new(7, class, Exec::Parallel).unwrap().collect();
            assert_eq!(streamed, par);
        }
    }

    #[test]
    fn all_graph_counts() {
        let counts: Vec<usize> = (1..=7).map(|n| all_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 2, 4, 11, 34, 156, 1044]);
        for n in 1..=5 {
            let mut brute = BTreeSet::new();
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0u64..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, e)| *e)
                    .collect();
                brute.insert(canonical_form(&Graph::from_edges(n, &edges).unwrap()));
            }
            assert_eq!(forms(&all_graphs(n).unwrap()), brute);
        }
        assert!(all_graphs(0).is_err());
    }

    #[test]
    fn range_is_enforced() {
        assert!(matches!(
            connected_graphs(1, GraphClass::All),
            Err(Error::UnsupportedN(1, _))
        ));
        assert!(matches!(
            connected_graphs(10, GraphClass::All),
            Err(Error::UnsupportedN(10, _))
        ));
        assert!(GraphStream::new(10, GraphClass::Chordal, Exec::Sequential).is_err());
    }

    #[test]
    fn class_names_round_trip() {
        for c in [GraphClass::All, GraphClass::Chordal] {
            assert_eq!(c.name().parse::<GraphClass>().unwrap(), c);
            assert_eq!(serde_json::to_string(&c).unwrap(), format!("\"{}\"", c.name()));
        }
        assert!("trees".parse::<GraphClass>().is_err());
    }
}
