//! Depth and projective dimension of `S/I(G)` for arbitrary graphs from the
//! reduced homology of induced independence complexes:
//! `pdim = max { |σ| - j - 1 : H̃_j(Ind(G[σ]); k) != 0 }`, `depth = n - pdim`.

mod linalg;

pub use linalg::{rank_gf2, rank_mod_p, Field};

use serde::{Deserialize, Serialize};

use crate::chordal::{chordal_depth_cover, find_peo, ChordalDepth};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::{Graph, VertexSet};
use crate::graph6::emit_graph6;
use crate::independence::independence_number;

/// The independence complex of a graph: faces are its independent sets.
/// Faces are enumerated on demand, never stored for the whole complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IndependenceComplex {
    graph: Graph,
}

impl IndependenceComplex {
    pub fn new(graph: Graph) -> Self {
        IndependenceComplex { graph }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }

    /// `α(G) - 1`; `-1` for the complex `{∅}` on no vertices.
    pub fn dimension(&self) -> isize {
        independence_number(&self.graph) as isize - 1
    }

    pub fn is_face(&self, s: VertexSet) -> bool {
        s.is_subset(self.graph.vertices()) && self.graph.is_independent(s)
    }

    /// Faces grouped by size `0..=max_size`, each group sorted by bitmask.
    pub fn faces_by_size(&self, max_size: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); max_size + 1];
        self.extend(0, self.graph.vertices().0, 0, max_size, &mut out);
        for level in &mut out {
            level.sort_unstable();
        }
        while out.len() > 1 && out.last().is_some_and(Vec::is_empty) {
            out.pop();
        }
        out
    }

    fn extend(&self, face: u32, cand: u32, size: usize, max_size: usize, out: &mut [Vec<u32>]) {
        out[size].push(face);
        if size == max_size {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let next = c & !self.graph.neighbors(v).0;
            self.extend(face | 1 << v, next, size + 1, max_size, out);
        }
    }
}

/// Rank of the boundary map from faces of size `s` to faces of size `s - 1`.
fn boundary_rank(upper: &[u32], lower: &[u32], field: Field) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index = |f: u32| lower.binary_search(&f).expect("boundary face is a face");
    if field == Field::GF2 {
        let words = lower.len().div_ceil(64);
        let mut rows: Vec<Vec<u64>> = upper
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; words];
                for v in VertexSet(f) {
                    let k = index(f & !(1 << v));
                    row[k / 64] |= 1 << (k % 64);
                }
                row
            })
            .collect();
        rank_gf2(&mut rows)
    } else {
        let p = field.characteristic() as u64;
        let rows: Vec<Vec<u64>> = upper
            .iter()
            .map(|&f| {
                let mut row = vec![0u64; lower.len()];
                for (i, v) in VertexSet(f).iter().enumerate() {
                    row[index(f & !(1 << v))] = if i % 2 == 0 { 1 } else { p - 1 };
                }
                row
            })
            .collect();
        rank_mod_p(rows, p)
    }
}

/// Reduced Betti numbers `b̃_j` for `j = -1..=max_degree` over `field`.
fn reduced_bettis(k: &IndependenceComplex, max_degree: isize, field: Field) -> Vec<usize> {
    if max_degree < -1 {
        return Vec::new();
    }
    // b̃_j needs faces of sizes j+1 and j+2
    let top = (max_degree + 2) as usize;
    let faces = k.faces_by_size(top);
    let level = |s: usize| faces.get(s).map_or(&[][..], Vec::as_slice);
    let rank_down = |s: usize| {
        if s == 0 {
            0
        } else {
            boundary_rank(level(s), level(s - 1), field)
        }
    };
    let mut out = Vec::new();
    let mut below = rank_down(0);
    for s in 0..=top - 1 {
        let above = rank_down(s + 1);
        out.push(level(s).len() - below - above);
        below = above;
    }
    out
}

/// Dimension of `H̃_j(K; GF(p))`. `H̃_{-1}` is 1 for the complex on no
/// vertices and 0 otherwise; degrees outside `-1..=dim K` give 0.
pub fn reduced_betti(k: &IndependenceComplex, j: isize, field: Field) -> usize {
    if j < -1 || j > k.dimension().max(-1) {
        return 0;
    }
    reduced_bettis(k, j, field)[(j + 1) as usize]
}

/// Smallest `j` in `0..=max_degree` with `H̃_j != 0`, and that Betti number.
fn lowest_nonzero_degree(k: &IndependenceComplex, max_degree: isize, field: Field) -> Option<(isize, usize)> {
    let max_degree = max_degree.min(k.dimension());
    if max_degree < 0 {
        return None;
    }
    reduced_bettis(k, max_degree, field)
        .into_iter()
        .enumerate()
        .skip(1)
        .find(|&(_, b)| b != 0)
        .map(|(i, b)| (i as isize - 1, b))
}

/// A subset and homological degree attaining the projective dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyWitness {
    pub subset: Vec<usize>,
    pub degree: isize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyProfile {
    pub n: usize,
    pub pdim: usize,
    pub depth: usize,
    pub witnesses: Vec<HomologyWitness>,
    pub field: Field,
}

#[derive(Clone, Copy, Debug)]
pub struct HochsterOptions {
    /// Skip subsets whose induced subgraph has an isolated vertex (its
    /// independence complex is a cone, hence acyclic).
    pub cone_pruning: bool,
    /// Ignore contributions below the lower bound
    /// `max(max degree, n - α)`; falls back to a full scan if nothing reaches it.
    pub bound_pruning: bool,
    pub exec: Exec,
}

impl Default for HochsterOptions {
    fn default() -> Self {
        HochsterOptions {
            cone_pruning: true,
            bound_pruning: true,
            exec: Exec::Parallel,
        }
    }
}

pub fn hochster_profile(g: &Graph, field: Field) -> HomologyProfile {
    hochster_profile_with(g, field, HochsterOptions::default())
}

pub fn hochster_profile_with(g: &Graph, field: Field, opts: HochsterOptions) -> HomologyProfile {
    let floor = if opts.bound_pruning {
        g.max_degree().max(g.n() - independence_number(g))
    } else {
        0
    };
    scan(g, field, opts, floor).unwrap_or_else(|| scan(g, field, opts, 0).expect("the empty subset always contributes"))
}

/// Subsets are scanned by decreasing size; a subset of size `s` contributes
/// at most `s - 1`, so the scan stops once that drops below the best found.
fn scan(g: &Graph, field: Field, opts: HochsterOptions, floor: usize) -> Option<HomologyProfile> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut witnesses: Vec<HomologyWitness> = Vec::new();
    for s in (1..=n).rev() {
        let cutoff = best.unwrap_or(0).max(floor);
        if s - 1 < cutoff {
            break;
        }
        let max_degree = (s - 1 - cutoff) as isize;
        let subsets: Vec<VertexSet> = subsets_of_size(n, s)
            .filter(|&sub| !opts.cone_pruning || g.induced(sub).isolated().is_empty())
            .collect();
        let found = opts.exec.map(&subsets, |&sub| {
            let k = IndependenceComplex::new(g.induced(sub));
            lowest_nonzero_degree(&k, max_degree, field)
        });
        for (sub, hit) in subsets.into_iter().zip(found) {
            let Some((j, betti)) = hit else { continue };
            let c = s - 1 - j as usize;
            match best {
                Some(b) if c < b => continue,
                Some(b) if c == b => {}
                _ => {
                    best = Some(c);
                    witnesses.clear();
                }
            }
            witnesses.push(HomologyWitness {
                subset: sub.to_vec(),
                degree: j,
                betti,
            });
        }
    }
    if best.is_none() && floor == 0 {
        // only the empty subset: H̃_{-1}({∅}) = k
        best = Some(0);
        witnesses.push(HomologyWitness {
            subset: Vec::new(),
            degree: -1,
            betti: 1,
        });
    }
    let pdim = best?;
    Some(HomologyProfile {
        n,
        pdim,
        depth: n - pdim,
        witnesses,
        field,
    })
}

/// Subsets of `0..n` with `k` elements in increasing bitmask order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexSet> {
    let limit = 1u64 << n;
    let mut cur = if k > n { limit } else { (1u64 << k) - 1 };
    std::iter::from_fn(move || {
        if cur >= limit {
            return None;
        }
        let out = VertexSet(cur as u32);
        if cur == 0 {
            cur = limit;
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            cur = (((r ^ cur) >> 2) / c) | r;
        }
        Some(out)
    })
}

/// Which depth routes to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DepthPolicy {
    /// Vertex-cover route for chordal graphs, homology otherwise.
    #[default]
    Auto,
    /// Always the homology route.
    Hochster,
    /// Compute twice by independent routes and require agreement: every
    /// chordal route on chordal graphs, homology with and without bound
    /// pruning otherwise.
    Paranoid,
}

/// Depth of `S/I(G)` over GF(2).
pub fn depth(g: &Graph, policy: DepthPolicy) -> Result<usize> {
    depth_over(g, policy, Field::GF2)
}

pub fn depth_over(g: &Graph, policy: DepthPolicy, field: Field) -> Result<usize> {
    depth_with(g, policy, field, Exec::Parallel)
}

pub(crate) fn depth_with(g: &Graph, policy: DepthPolicy, field: Field, exec: Exec) -> Result<usize> {
    let opts = HochsterOptions {
        exec,
        ..HochsterOptions::default()
    };
    let chordal = find_peo(g).is_some();
    match policy {
        DepthPolicy::Auto if chordal => chordal_depth_cover(g),
        DepthPolicy::Paranoid if chordal => {
            let cover = chordal_depth_cover(g)?;
            let recursive = ChordalDepth::new().depth(g)?;
            let homology = hochster_profile_with(g, field, opts).depth;
            if cover == recursive && cover == homology {
                Ok(cover)
            } else {
                Err(Error::OracleDisagreement {
                    graph6: emit_graph6(g),
                    detail: format!(
                        "cover route {cover}, recursion {recursive}, homology over GF({}) {homology}",
                        field.characteristic()
                    ),
                })
            }
        }
        DepthPolicy::Paranoid => {
            let pruned = hochster_profile_with(g, field, opts).depth;
            let plain = hochster_profile_with(
                g,
                field,
                HochsterOptions {
                    bound_pruning: false,
                    ..opts
                },
            )
            .depth;
            if pruned == plain {
                Ok(pruned)
            } else {
                Err(Error::OracleDisagreement {
                    graph6: emit_graph6(g),
                    detail: format!("homology with bound pruning {pruned}, without {plain}"),
                })
            }
        }
        _ => Ok(hochster_profile_with(g, field, opts).depth),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every subset, every degree, no pruning of any kind.
    fn brute_pdim(g: &Graph, field: Field) -> usize {
        let mut best = 0isize;
        for mask in 0u32..1 << g.n() {
            let sub = VertexSet(mask);
            let k = IndependenceComplex::new(g.induced(sub));
            for j in -1..=sub.len() as isize {
                if reduced_betti(&k, j, field) != 0 {
                    best = best.max(sub.len() as isize - j - 1);
                }
            }
        }
        best as usize
    }

    #[test]
    fn betti_examples() {
        let k2 = IndependenceComplex::new(Graph::complete(2).unwrap());
        assert_eq!(reduced_betti(&k2, 0, Field::GF2), 1);
        assert_eq!(reduced_betti(&k2, -1, Field::GF2), 0);
        let c4 = IndependenceComplex::new(Graph::cycle(4).unwrap());
        assert_eq!(reduced_betti(&c4, 0, Field::GF2), 1);
        assert_eq!(reduced_betti(&c4, 1, Field::GF2), 0);
        // Ind(C5) is a pentagon
        let c5 = IndependenceComplex::new(Graph::cycle(5).unwrap());
        assert_eq!(
            c5.faces_by_size(3).iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 5, 5]
        );
        assert_eq!(reduced_betti(&c5, 0, Field::GF2), 0);
        assert_eq!(reduced_betti(&c5, 1, Field::GF2), 1);
        assert_eq!(reduced_betti(&c5, 1, Field::GF32003), 1);
        let empty = IndependenceComplex::new(Graph::edgeless(0).unwrap());
        assert_eq!(reduced_betti(&empty, -1, Field::GF2), 1);
        let point = IndependenceComplex::new(Graph::edgeless(1).unwrap());
        assert_eq!(reduced_betti(&point, -1, Field::GF2), 0);
        assert_eq!(reduced_betti(&point, 0, Field::GF2), 0);
        assert_eq!(reduced_betti(&c5, 7, Field::GF2), 0);
    }

    #[test]
    fn euler_characteristic_matches() {
        // sum (-1)^j b̃_j = sum (-1)^j f_j over j >= -1
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 0), (0, 3)]).unwrap();
        let k = IndependenceComplex::new(g);
        let faces = k.faces_by_size(7);
        let chi_faces: isize = faces
            .iter()
            .enumerate()
            .map(|(s, f)| {
                if s % 2 == 1 {
                    f.len() as isize
                } else {
                    -(f.len() as isize)
                }
            })
            .sum();
        let bettis = reduced_bettis(&k, k.dimension(), Field::GF2);
        let chi_betti: isize = bettis
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 1 { b as isize } else { -(b as isize) })
            .sum();
        assert_eq!(chi_faces, chi_betti);
    }

    #[test]
    fn profile_examples() {
        let k2 = hochster_profile(&Graph::complete(2).unwrap(), Field::GF2);
        assert_eq!((k2.pdim, k2.depth), (1, 1));
        assert_eq!(
            k2.witnesses,
            vec![HomologyWitness {
                subset: vec![0, 1],
                degree: 0,
                betti: 1
            }]
        );

        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(brute_pdim(&c4, Field::GF2), 3);
        let p = hochster_profile(&c4, Field::GF2);
        assert_eq!((p.pdim, p.depth), (3, 1));

        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(brute_pdim(&c5, Field::GF2), 3);
        let p = hochster_profile(&c5, Field::GF2);
        assert_eq!((p.pdim, p.depth), (3, 2));
        assert_eq!(independence_number(&c5), 2);

        let e = hochster_profile(&Graph::edgeless(3).unwrap(), Field::GF2);
        assert_eq!((e.pdim, e.depth), (0, 3));
        assert_eq!(e.witnesses[0].degree, -1);
        let z = hochster_profile(&Graph::edgeless(0).unwrap(), Field::GF2);
        assert_eq!((z.pdim, z.depth), (0, 0));
    }

    #[test]
    fn profile_witness_invariants() {
        for g in [
            Graph::cycle(6).unwrap(),
            Graph::path(6).unwrap(),
            Graph::cycle(7).unwrap(),
        ] {
            let p = hochster_profile(&g, Field::GF2);
            assert_eq!(p.depth + p.pdim, g.n());
            assert!(!p.witnesses.is_empty());
            for w in &p.witnesses {
                assert_eq!(w.subset.len() as isize - w.degree - 1, p.pdim as isize);
                let k = IndependenceComplex::new(g.induced(VertexSet::from_vertices(w.subset.iter().copied())));
                assert_eq!(reduced_betti(&k, w.degree, Field::GF2), w.betti);
            }
        }
    }

    #[test]
    fn pruning_variants_agree_on_all_graphs_up_to_five() {
        let variants = [
            HochsterOptions {
                cone_pruning: false,
                bound_pruning: false,
                exec: Exec::Sequential,
            },
            HochsterOptions {
                cone_pruning: true,
                bound_pruning: false,
                exec: Exec::Sequential,
            },
            HochsterOptions {
                cone_pruning: false,
                bound_pruning: true,
                exec: Exec::Parallel,
            },
            HochsterOptions::default(),
        ];
        for n in 0..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let expected = brute_pdim(&g, Field::GF2);
                for o in variants {
                    assert_eq!(hochster_profile_with(&g, Field::GF2, o).pdim, expected, "{g:?}");
                }
            }
        }
    }

    #[test]
    fn depth_dispatch() {
        for m in 1..=6 {
            let star = Graph::star(m).unwrap();
            for policy in [DepthPolicy::Auto, DepthPolicy::Hochster, DepthPolicy::Paranoid] {
                assert_eq!(depth(&star, policy).unwrap(), 1);
            }
        }
        assert_eq!(depth(&Graph::cycle(5).unwrap(), DepthPolicy::Auto).unwrap(), 2);
        assert_eq!(depth(&Graph::cycle(5).unwrap(), DepthPolicy::Paranoid).unwrap(), 2);
        assert_eq!(
            depth_over(&Graph::cycle(5).unwrap(), DepthPolicy::Hochster, Field::GF32003).unwrap(),
            2
        );
    }

    #[test]
    fn gosper_subsets() {
        let v: Vec<u32> = subsets_of_size(4, 2).map(|s| s.0).collect();
        assert_eq!(v, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(subsets_of_size(5, 0).count(), 1);
        assert_eq!(subsets_of_size(5, 5).count(), 1);
        assert_eq!(subsets_of_size(3, 4).count(), 0);
        assert_eq!(subsets_of_size(10, 4).count(), 210);
    }
}
