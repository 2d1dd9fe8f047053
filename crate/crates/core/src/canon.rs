//! Canonical labeling by equitable partition refinement and an
//! individualization search tree pruned with discovered automorphisms.
//!
//! The canonical graph is the lexicographically largest relabeled adjacency
//! (row by row) over all leaves of the search tree. Pruning only skips
//! subtrees that are images of explored ones under an automorphism fixing the
//! current path, so the maximum is unaffected.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, VertexSet};
use crate::graph6;

/// Isomorphism-class identifier: the graph relabeled by its canonical labeling.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Graph);

impl CanonicalForm {
    pub fn graph(&self) -> &Graph {
        &self.0
    }

    /// graph6 encoding of the canonical graph; the byte-string form used in
    /// checkpoints.
    pub fn to_graph6(&self) -> String {
        graph6::emit_graph6(&self.0)
    }

    /// Reinterprets a graph already in canonical labeling (e.g. read back
    /// from a checkpoint) as a form, without recomputation.
    pub fn from_canonical_graph_unchecked(g: Graph) -> Self {
        CanonicalForm(g)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_graph6())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_graph6())
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_graph6())
    }
}

impl<'de> Deserialize<'de> for CanonicalForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        graph6::parse_graph6(&s)
            .map(CanonicalForm)
            .map_err(serde::de::Error::custom)
    }
}

/// Result of a canonical labeling run.
#[derive(Clone, Debug)]
pub struct Labeling {
    /// `order[i]` is the original vertex placed at canonical position `i`.
    pub order: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms discovered during the search, as vertex maps. They need
    /// not generate the whole group; any orbit they join is a true orbit.
    pub automorphisms: Vec<Vec<usize>>,
}

impl Labeling {
    /// Canonical position of each original vertex.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Whether the discovered automorphisms already map `x` to `y`.
    pub fn known_same_orbit(&self, x: usize, y: usize) -> bool {
        let mut uf = UnionFind::new(self.order.len());
        for a in &self.automorphisms {
            for (v, &w) in a.iter().enumerate() {
                uf.union(v, w);
            }
        }
        uf.find(x) == uf.find(y)
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

pub fn canonical_labeling(g: &Graph) -> Labeling {
    let cells = if g.n() == 0 { Vec::new() } else { vec![g.vertices().0] };
    Search::run(g, cells)
}

/// Canonical labeling respecting an ordered vertex coloring: vertices of color
/// `c` always precede those of larger colors. Two colored graphs get the same
/// form iff an isomorphism preserves colors.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Labeling {
    assert_eq!(colors.len(), g.n());
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let cells = palette
        .iter()
        .map(|&c| VertexSet::from_vertices((0..g.n()).filter(|&v| colors[v] == c)).0)
        .collect();
    Search::run(g, cells)
}

/// Whether some automorphism of `g` maps `x` to `y`.
pub fn same_orbit(g: &Graph, x: usize, y: usize) -> bool {
    if x == y {
        return true;
    }
    if g.degree(x) != g.degree(y) {
        return false;
    }
    let mark = |v: usize| -> Vec<u32> { (0..g.n()).map(|w| u32::from(w != v)).collect() };
    canonical_labeling_colored(g, &mark(x)).form == canonical_labeling_colored(g, &mark(y)).form
}

/// Splits cells until the partition is equitable. Cells are split by the number
/// of neighbors in a splitter cell; fragments are ordered by that count, so the
/// result depends only on the graph structure and the input cell order.
fn refine(g: &Graph, cells: &mut Vec<u32>) {
    let mut splitter = 0;
    while splitter < cells.len() {
        let w = cells[splitter];
        let mut split_any = false;
        let mut xi = 0;
        while xi < cells.len() {
            let x = cells[xi];
            if x.count_ones() == 1 {
                xi += 1;
                continue;
            }
            let mut buckets: [u32; 33] = [0; 33];
            let mut used: u64 = 0;
            for v in VertexSet(x) {
                let c = (g.neighbors(v).0 & w).count_ones() as usize;
                buckets[c] |= 1 << v;
                used |= 1 << c;
            }
            if used.count_ones() > 1 {
                let frags: Vec<u32> = (0..33).filter(|&c| used >> c & 1 == 1).map(|c| buckets[c]).collect();
                let k = frags.len();
                cells.splice(xi..=xi, frags);
                xi += k;
                split_any = true;
            } else {
                xi += 1;
            }
        }
        // Any split can change counts against earlier splitters; restart.
        splitter = if split_any { 0 } else { splitter + 1 };
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    first: Option<(Vec<usize>, Vec<u32>)>,
    best: Option<(Vec<usize>, Vec<u32>)>,
    automorphisms: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn run(g: &'a Graph, cells: Vec<u32>) -> Labeling {
        let n = g.n();
        if n == 0 {
            return Labeling {
                order: Vec::new(),
                form: CanonicalForm(*g),
                automorphisms: Vec::new(),
            };
        }
        let mut s = Search {
            g,
            n,
            first: None,
            best: None,
            automorphisms: Vec::new(),
        };
        let mut path = Vec::new();
        s.visit(cells, &mut path);
        let (order, rows) = s.best.take().expect("search reaches a leaf");
        let form = Graph::from_adjacency(&rows).expect("relabeling preserves validity");
        Labeling {
            order,
            form: CanonicalForm(form),
            automorphisms: s.automorphisms,
        }
    }

    fn visit(&mut self, mut cells: Vec<u32>, path: &mut Vec<usize>) {
        refine(self.g, &mut cells);
        if cells.len() == self.n {
            let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
            self.leaf(order);
            return;
        }
        let (ti, target) = cells
            .iter()
            .enumerate()
            .find(|(_, c)| c.count_ones() > 1)
            .map(|(i, &c)| (i, c))
            .expect("non-discrete partition has a non-singleton cell");
        let mut explored: Vec<usize> = Vec::new();
        for v in VertexSet(target) {
            if !explored.is_empty() && self.pruned(path, &explored, v) {
                continue;
            }
            explored.push(v);
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..ti]);
            child.push(1 << v);
            child.push(target & !(1 << v));
            child.extend_from_slice(&cells[ti + 1..]);
            path.push(v);
            self.visit(child, path);
            path.pop();
        }
    }

    /// Whether `v` is in the orbit of an explored sibling under the group
    /// generated by known automorphisms that fix `path` pointwise.
    fn pruned(&self, path: &[usize], explored: &[usize], v: usize) -> bool {
        let mut uf = UnionFind::new(self.n);
        let mut any = false;
        for a in &self.automorphisms {
            if path.iter().all(|&p| a[p] == p) {
                any = true;
                for (x, &y) in a.iter().enumerate() {
                    uf.union(x, y);
                }
            }
        }
        any && explored.iter().any(|&w| uf.find(w) == uf.find(v))
    }

    fn relabeled_rows(&self, order: &[usize]) -> Vec<u32> {
        let mut pos = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        order
            .iter()
            .map(|&v| self.g.neighbors(v).iter().fold(0u32, |r, w| r | 1 << pos[w]))
            .collect()
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let rows = self.relabeled_rows(&order);
        let Some((first_order, first_rows)) = &self.first else {
            self.first = Some((order.clone(), rows.clone()));
            self.best = Some((order, rows));
            return;
        };
        if rows == *first_rows {
            let auto = compose_to(first_order, &order, self.n);
            self.automorphisms.push(auto);
            return;
        }
        let (best_order, best_rows) = self.best.as_ref().expect("best set with first");
        match rows.cmp(best_rows) {
            std::cmp::Ordering::Equal => {
                let auto = compose_to(best_order, &order, self.n);
                self.automorphisms.push(auto);
            }
            std::cmp::Ordering::Greater => self.best = Some((order, rows)),
            std::cmp::Ordering::Less => {}
        }
    }
}

/// The automorphism sending `from[i]` to `to[i]` for every position `i`.
fn compose_to(from: &[usize], to: &[usize], n: usize) -> Vec<usize> {
    let mut a = vec![0; n];
    for (&x, &y) in from.iter().zip(to) {
        a[x] = y;
    }
    a
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        fn rec(cur: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left.is_empty() {
                out.push(cur.clone());
                return;
            }
            for i in 0..left.len() {
                let v = left.remove(i);
                cur.push(v);
                rec(cur, left, out);
                cur.pop();
                left.insert(i, v);
            }
        }
        let mut out = Vec::new();
        rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
        out
    }

    /// Brute-force class key: the maximum relabeled graph over all permutations.
    fn brute_key(g: &Graph, perms: &[Vec<usize>]) -> Graph {
        perms.iter().map(|p| g.permuted(p)).max().unwrap()
    }

    fn paw() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn path_reversal_same_form() {
        let p4 = Graph::path(4).unwrap();
        let rev = p4.permuted(&[3, 2, 1, 0]);
        assert_eq!(canonical_form(&p4), canonical_form(&rev));
        assert_ne!(canonical_form(&p4), canonical_form(&Graph::cycle(4).unwrap()));
    }

    #[test]
    fn paw_all_labelings_one_form() {
        let perms = permutations(4);
        let forms: std::collections::HashSet<_> = perms.iter().map(|p| canonical_form(&paw().permuted(p))).collect();
        assert_eq!(forms.len(), 1);
        // the canonical graph is isomorphic to the input
        let keys: std::collections::HashSet<_> = forms.iter().map(|f| brute_key(f.graph(), &perms)).collect();
        assert_eq!(keys, [brute_key(&paw(), &perms)].into_iter().collect());
    }

    #[test]
    fn forms_agree_with_brute_force_up_to_five() {
        for n in 1..=5usize {
            let perms = permutations(n);
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
            let mut by_brute = std::collections::HashMap::new();
            for mask in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let f = canonical_form(&g);
                let k = brute_key(&g, &perms);
                let prev = by_brute.entry(k).or_insert(f);
                assert_eq!(*prev, f, "isomorphic graphs got different forms: {g:?}");
            }
            let distinct: std::collections::HashSet<_> = by_brute.values().collect();
            assert_eq!(distinct.len(), by_brute.len(), "non-isomorphic graphs share a form");
        }
    }

    #[test]
    fn highly_symmetric_graphs_are_fast_and_correct() {
        for n in 1..=16 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(canonical_form(&k).graph(), &k);
            let e = Graph::edgeless(n).unwrap();
            assert_eq!(canonical_form(&e).graph(), &e);
        }
        let c = Graph::cycle(12).unwrap();
        let shifted = c.permuted(&(0..12).map(|i| (i * 5) % 12).collect::<Vec<_>>());
        assert_eq!(canonical_form(&c), canonical_form(&shifted));
    }

    #[test]
    fn orbits() {
        let p4 = Graph::path(4).unwrap();
        assert!(same_orbit(&p4, 0, 3));
        assert!(same_orbit(&p4, 1, 2));
        assert!(!same_orbit(&p4, 0, 1));
        let paw = paw();
        assert!(same_orbit(&paw, 0, 1));
        assert!(!same_orbit(&paw, 0, 2));
        let lab = canonical_labeling(&Graph::cycle(6).unwrap());
        assert!(lab.known_same_orbit(0, 3) || same_orbit(&Graph::cycle(6).unwrap(), 0, 3));
    }

    #[test]
    fn labeling_reproduces_form() {
        let g = paw();
        let lab = canonical_labeling(&g);
        let relabeled = g.permuted(&lab.positions());
        assert_eq!(&relabeled, lab.form.graph());
        for a in &lab.automorphisms {
            assert_eq!(g.permuted(a), g);
        }
    }
}
