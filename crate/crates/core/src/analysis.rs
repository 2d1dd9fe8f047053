//! One-stop invariants of a single graph.

use serde::{Deserialize, Serialize};

use crate::chordal::find_peo;
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::{Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::homology::{depth_with, DepthPolicy, Field};
use crate::independence::{max_minimal_vertex_cover, maximum_independent_set};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphAnalysis {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub dim: usize,
    pub depth: usize,
    pub pdim: usize,
    pub chordal: bool,
    pub cohen_macaulay: bool,
    /// A maximum independent set; its size is `dim`.
    pub independent_set: VertexSet,
    /// A minimal vertex cover of largest size. For chordal graphs its size
    /// is `pdim`, in general it is a lower bound.
    pub cover: VertexSet,
    pub field: Field,
}

pub fn analyze(g: &Graph, field: Field, policy: DepthPolicy) -> Result<GraphAnalysis> {
    analyze_with(g, field, policy, Exec::default())
}

pub fn analyze_with(g: &Graph, field: Field, policy: DepthPolicy, exec: Exec) -> Result<GraphAnalysis> {
    let independent_set = maximum_independent_set(g);
    let (_, cover) = max_minimal_vertex_cover(g);
    let depth = depth_with(g, policy, field, exec)?;
    let dim = independent_set.len();
    Ok(GraphAnalysis {
        graph6: emit_graph6(g),
        n: g.n(),
        edges: g.edge_count(),
        dim,
        depth,
        pdim: g.n() - depth,
        chordal: find_peo(g).is_some(),
        cohen_macaulay: depth == dim,
        independent_set,
        cover,
        field,
    })
}

/// `(depth, dim)` only, without witnesses.
pub fn depth_dim(g: &Graph, field: Field, policy: DepthPolicy, exec: Exec) -> Result<(usize, usize)> {
    Ok((
        depth_with(g, policy, field, exec)?,
        crate::independence::independence_number(g),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph6::parse_graph6;

    #[test]
    fn triangle() {
        let a = analyze(&parse_graph6("Bw").unwrap(), Field::GF2, DepthPolicy::Auto).unwrap();
        assert_eq!((a.n, a.dim, a.depth, a.pdim), (3, 1, 1, 2));
        assert!(a.chordal && a.cohen_macaulay);
        assert_eq!(a.cover.len(), 2);
        assert_eq!(a.graph6, "Bw");
    }

    #[test]
    fn pentagon() {
        let c5 = Graph::cycle(5).unwrap();
        for policy in [DepthPolicy::Auto, DepthPolicy::Hochster, DepthPolicy::Paranoid] {
            let a = analyze(&c5, Field::GF2, policy).unwrap();
            assert_eq!((a.dim, a.depth, a.pdim), (2, 2, 3));
            assert!(!a.chordal && a.cohen_macaulay);
            assert!(c5.is_independent(a.independent_set));
            assert!(c5.is_vertex_cover(a.cover));
        }
    }

    #[test]
    fn json_shape() {
        let a = analyze(&Graph::path(3).unwrap(), Field::GF2, DepthPolicy::Auto).unwrap();
        let v: serde_json::Value = serde_json::to_value(&a).unwrap();
        assert_eq!(v["independent_set"], serde_json::json!([0, 2]));
        assert_eq!(v["field"], 2);
        assert_eq!(v["cohen_macaulay"], false);
    }
}
