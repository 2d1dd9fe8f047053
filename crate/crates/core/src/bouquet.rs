//! Bouquets (stars inside a graph) and the two flower-count maximizations:
//! strongly disjoint families bound the projective dimension from below, and
//! for chordal graphs the semi-strongly disjoint maximum equals it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// A star with center `root` and leaves `flowers`; stems are the edges
/// `{root, z}` for `z` in `flowers`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bouquet {
    pub root: usize,
    pub flowers: VertexSet,
}

impl Bouquet {
    pub fn vertices(&self) -> VertexSet {
        self.flowers.with(self.root)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BouquetMode {
    /// Some choice of one stem per bouquet is an induced matching.
    StronglyDisjoint,
    /// The roots form an independent set.
    SemiStronglyDisjoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BouquetFamily {
    pub bouquets: Vec<Bouquet>,
    pub mode: BouquetMode,
}

impl BouquetFamily {
    pub fn empty(mode: BouquetMode) -> Self {
        BouquetFamily {
            bouquets: Vec::new(),
            mode,
        }
    }

    /// `F(B)`.
    pub fn flowers(&self) -> VertexSet {
        self.bouquets.iter().fold(VertexSet::EMPTY, |s, b| s | b.flowers)
    }

    /// `R(B)`.
    pub fn roots(&self) -> VertexSet {
        VertexSet::from_vertices(self.bouquets.iter().map(|b| b.root))
    }

    pub fn flower_count(&self) -> usize {
        self.bouquets.iter().map(|b| b.flowers.len()).sum()
    }
}

/// Why a family fails validation.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyViolation {
    #[error("vertex {0} is outside the graph")]
    OutOfRange(usize),
    #[error("bouquet rooted at {0} has no flowers")]
    NoFlowers(usize),
    #[error("root {0} is also one of its flowers")]
    RootIsFlower(usize),
    #[error("flower {flower} is not adjacent to root {root}")]
    NotAdjacent { root: usize, flower: usize },
    #[error("bouquets rooted at {0} and {1} share a vertex")]
    Overlap(usize, usize),
    #[error("roots {0} and {1} are adjacent")]
    RootsAdjacent(usize, usize),
    #[error("no choice of stems forms an induced matching")]
    NoInducedMatching,
}

pub fn validate_family(g: &Graph, fam: &BouquetFamily) -> Result<(), FamilyViolation> {
    let all = g.vertices();
    for b in &fam.bouquets {
        if !all.contains(b.root) {
            return Err(FamilyViolation::OutOfRange(b.root));
        }
        if let Some(v) = (b.flowers - all).first() {
            return Err(FamilyViolation::OutOfRange(v));
        }
        if b.flowers.is_empty() {
            return Err(FamilyViolation::NoFlowers(b.root));
        }
        if b.flowers.contains(b.root) {
            return Err(FamilyViolation::RootIsFlower(b.root));
        }
        if let Some(z) = (b.flowers - g.neighbors(b.root)).first() {
            return Err(FamilyViolation::NotAdjacent {
                root: b.root,
                flower: z,
            });
        }
    }
    for (i, x) in fam.bouquets.iter().enumerate() {
        for y in &fam.bouquets[i + 1..] {
            if !(x.vertices() & y.vertices()).is_empty() {
                return Err(FamilyViolation::Overlap(x.root, y.root));
            }
            if g.has_edge(x.root, y.root) {
                return Err(FamilyViolation::RootsAdjacent(x.root, y.root));
            }
        }
    }
    if fam.mode == BouquetMode::StronglyDisjoint && induced_stems(g, &fam.bouquets).is_none() {
        return Err(FamilyViolation::NoInducedMatching);
    }
    Ok(())
}

/// One stem `(root, flower)` per bouquet such that the stems form an induced
/// matching, found by backtracking.
pub fn induced_stems(g: &Graph, bouquets: &[Bouquet]) -> Option<Vec<(usize, usize)>> {
    fn rec(
        g: &Graph,
        bouquets: &[Bouquet],
        used: VertexSet,
        touched: VertexSet,
        out: &mut Vec<(usize, usize)>,
    ) -> bool {
        let Some(b) = bouquets.first() else { return true };
        if touched.contains(b.root) || used.contains(b.root) {
            return false;
        }
        for z in b.flowers {
            if touched.contains(z) || used.contains(z) {
                continue;
            }
            out.push((b.root, z));
            let stem = VertexSet::singleton(b.root).with(z);
            let reach = g.neighbors(b.root) | g.neighbors(z);
            if rec(g, &bouquets[1..], used | stem, touched | reach, out) {
                return true;
            }
            out.pop();
        }
        false
    }
    // `touched` collects neighbors of chosen stems; a later stem may not use them
    let mut out = Vec::new();
    rec(g, bouquets, VertexSet::EMPTY, VertexSet::EMPTY, &mut out).then_some(out)
}

/// Non-empty independent sets of `g`, sorted by decreasing `|N(R)|` and then
/// by increasing bitmask.
fn root_candidates(g: &Graph) -> Vec<(usize, VertexSet)> {
    fn rec(g: &Graph, cur: VertexSet, cand: VertexSet, out: &mut Vec<(usize, VertexSet)>) {
        for v in cand {
            let next = cur.with(v);
            let nbrs = next.iter().fold(VertexSet::EMPTY, |s, r| s | g.neighbors(r));
            out.push((nbrs.len(), next));
            let rest = VertexSet(cand.0 & !((2u64 << v) - 1) as u32) - g.neighbors(v);
            rec(g, next, rest, out);
        }
    }
    let mut out = Vec::new();
    rec(g, VertexSet::EMPTY, g.vertices(), &mut out);
    out.sort_by_key(|&(value, r)| (std::cmp::Reverse(value), r.0));
    out
}

fn neighborhood(g: &Graph, r: VertexSet) -> VertexSet {
    r.iter().fold(VertexSet::EMPTY, |s, v| s | g.neighbors(v))
}

/// Gives every vertex of `N(R)` not already placed to its lowest adjacent root.
fn complete_family(g: &Graph, mut bouquets: Vec<Bouquet>, mode: BouquetMode) -> BouquetFamily {
    let roots = VertexSet::from_vertices(bouquets.iter().map(|b| b.root));
    let placed = bouquets.iter().fold(VertexSet::EMPTY, |s, b| s | b.flowers);
    for z in neighborhood(g, roots) - placed {
        let r = (g.neighbors(z) & roots).first().expect("z is adjacent to a root");
        let b = bouquets.iter_mut().find(|b| b.root == r).expect("root has a bouquet");
        b.flowers = b.flowers.with(z);
    }
    bouquets.sort_by_key(|b| b.root);
    BouquetFamily { bouquets, mode }
}

/// Largest `|F(B)|` over strongly disjoint families, with a witness. This is a
/// lower bound for `pdim S/I(G)`.
///
/// For a fixed root set `R` every vertex of `N(R)` can be a flower, so the
/// optimum is the largest `|N(R)|` over independent `R` admitting stems that
/// form an induced matching.
pub fn max_strongly_disjoint_flowers(g: &Graph) -> (usize, BouquetFamily) {
    for (value, roots) in root_candidates(g) {
        let stars: Vec<Bouquet> = roots
            .iter()
            .map(|r| Bouquet {
                root: r,
                flowers: g.neighbors(r),
            })
            .collect();
        if let Some(stems) = induced_stems(g, &stars) {
            let seeds = stems
                .into_iter()
                .map(|(r, z)| Bouquet {
                    root: r,
                    flowers: VertexSet::singleton(z),
                })
                .collect();
            let fam = complete_family(g, seeds, BouquetMode::StronglyDisjoint);
            debug_assert_eq!(fam.flower_count(), value);
            return (value, fam);
        }
    }
    (0, BouquetFamily::empty(BouquetMode::StronglyDisjoint))
}

/// Largest `|F(B)|` over semi-strongly disjoint families, with a witness. For
/// chordal graphs this equals `pdim S/I(G)`.
///
/// For a fixed independent root set `R` the optimum is `|N(R)|` when the
/// roots can be matched to distinct neighbors, so each bouquet gets a flower.
pub fn max_semi_strongly_disjoint_flowers(g: &Graph) -> (usize, BouquetFamily) {
    for (value, roots) in root_candidates(g) {
        if let Some(matching) = saturating_matching(g, roots) {
            let seeds = matching
                .into_iter()
                .map(|(r, z)| Bouquet {
                    root: r,
                    flowers: VertexSet::singleton(z),
                })
                .collect();
            let fam = complete_family(g, seeds, BouquetMode::SemiStronglyDisjoint);
            debug_assert_eq!(fam.flower_count(), value);
            return (value, fam);
        }
    }
    (0, BouquetFamily::empty(BouquetMode::SemiStronglyDisjoint))
}

/// A matching of every root to a distinct neighbor (Kuhn's augmenting paths).
fn saturating_matching(g: &Graph, roots: VertexSet) -> Option<Vec<(usize, usize)>> {
    let mut owner: [Option<usize>; 32] = [None; 32];
    fn augment(g: &Graph, r: usize, seen: &mut VertexSet, owner: &mut [Option<usize>; 32]) -> bool {
        for z in g.neighbors(r) - *seen {
            *seen = seen.with(z);
            if owner[z].is_none_or(|other| augment(g, other, seen, owner)) {
                owner[z] = Some(r);
                return true;
            }
        }
        false
    }
    for r in roots {
        let mut seen = VertexSet::EMPTY;
        if !augment(g, r, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut out: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(z, o)| o.map(|r| (r, z)))
        .collect();
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chordal::chordal_pdim_cover;
    use crate::pairsets::chordal_witness;

    fn fam(mode: BouquetMode, parts: &[(usize, &[usize])]) -> BouquetFamily {
        BouquetFamily {
            bouquets: parts
                .iter()
                .map(|&(root, fl)| Bouquet {
                    root,
                    flowers: VertexSet::from_vertices(fl.iter().copied()),
                })
                .collect(),
            mode,
        }
    }

    #[test]
    fn validation_examples() {
        let star = Graph::star(3).unwrap();
        let whole = fam(BouquetMode::StronglyDisjoint, &[(0, &[1, 2, 3])]);
        assert_eq!(validate_family(&star, &whole), Ok(()));

        let p4 = Graph::path(4).unwrap();
        for mode in [BouquetMode::StronglyDisjoint, BouquetMode::SemiStronglyDisjoint] {
            let f = fam(mode, &[(1, &[0]), (2, &[3])]);
            assert_eq!(validate_family(&p4, &f), Err(FamilyViolation::RootsAdjacent(1, 2)));
        }

        let c5 = Graph::cycle(5).unwrap();
        let strong = fam(BouquetMode::StronglyDisjoint, &[(0, &[4]), (2, &[3])]);
        assert_eq!(validate_family(&c5, &strong), Err(FamilyViolation::NoInducedMatching));
        let semi = fam(BouquetMode::SemiStronglyDisjoint, &[(0, &[4]), (2, &[3])]);
        assert_eq!(validate_family(&c5, &semi), Ok(()));
    }

    #[test]
    fn validation_reasons() {
        let p4 = Graph::path(4).unwrap();
        let m = BouquetMode::SemiStronglyDisjoint;
        assert_eq!(
            validate_family(&p4, &fam(m, &[(0, &[])])),
            Err(FamilyViolation::NoFlowers(0))
        );
        assert_eq!(
            validate_family(&p4, &fam(m, &[(0, &[2])])),
            Err(FamilyViolation::NotAdjacent { root: 0, flower: 2 })
        );
        assert_eq!(
            validate_family(&p4, &fam(m, &[(1, &[1])])),
            Err(FamilyViolation::RootIsFlower(1))
        );
        assert_eq!(
            validate_family(&p4, &fam(m, &[(4, &[3])])),
            Err(FamilyViolation::OutOfRange(4))
        );
        assert_eq!(
            validate_family(&p4, &fam(m, &[(0, &[1]), (2, &[1])])),
            Err(FamilyViolation::Overlap(0, 2))
        );
    }

    #[test]
    fn strong_maximum_examples() {
        for m in 1..=7 {
            let (v, f) = max_strongly_disjoint_flowers(&Graph::star(m).unwrap());
            assert_eq!(v, m);
            assert_eq!(f.bouquets.len(), 1);
        }
        let c5 = Graph::cycle(5).unwrap();
        let (v, f) = max_strongly_disjoint_flowers(&c5);
        assert_eq!(v, 2);
        assert_eq!(validate_family(&c5, &f), Ok(()));
        assert_eq!(max_strongly_disjoint_flowers(&Graph::complete(2).unwrap()).0, 1);
        assert_eq!(max_strongly_disjoint_flowers(&Graph::edgeless(3).unwrap()).0, 0);
    }

    /// Exhaustive oracle for C5: every pair of disjoint bouquets with stems
    /// forming an induced matching.
    #[test]
    fn c5_has_no_two_bouquet_strong_family() {
        let c5 = Graph::cycle(5).unwrap();
        let edges = c5.edges();
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                let disjoint = [a, b].iter().all(|x| *x != c && *x != d);
                let touching = [a, b].iter().any(|&x| [c, d].iter().any(|&y| c5.has_edge(x, y)));
                assert!(!disjoint || touching);
            }
        }
    }

    #[test]
    fn semi_maximum_examples() {
        let (v, f) = max_semi_strongly_disjoint_flowers(&Graph::complete(4).unwrap());
        assert_eq!(v, 3);
        assert_eq!(f.bouquets.len(), 1);
        for m in 1..=7 {
            assert_eq!(max_semi_strongly_disjoint_flowers(&Graph::star(m).unwrap()).0, m);
        }
        let w = chordal_witness(5, 2, 3).unwrap();
        let (v, f) = max_semi_strongly_disjoint_flowers(&w);
        assert_eq!(v, 3);
        assert_eq!(v, chordal_pdim_cover(&w).unwrap());
        assert_eq!(validate_family(&w, &f), Ok(()));
    }

    #[test]
    fn ties_prefer_smallest_root_mask() {
        // C4: every non-empty independent set has two neighbors
        let (v, f) = max_semi_strongly_disjoint_flowers(&Graph::cycle(4).unwrap());
        assert_eq!(v, 2);
        assert_eq!(f.roots(), VertexSet::singleton(0));
        assert_eq!(f.flowers(), VertexSet::from_vertices([1, 3]));
    }

    #[test]
    fn witnesses_validate_and_sandwich() {
        for g in [
            Graph::cycle(6).unwrap(),
            Graph::path(7).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ] {
            let (s, sf) = max_strongly_disjoint_flowers(&g);
            let (t, tf) = max_semi_strongly_disjoint_flowers(&g);
            assert!(s <= t);
            assert_eq!(validate_family(&g, &sf), Ok(()));
            assert_eq!(validate_family(&g, &tf), Ok(()));
            assert_eq!(sf.flower_count(), s);
            assert_eq!(tf.flower_count(), t);
            let as_semi = BouquetFamily {
                mode: BouquetMode::SemiStronglyDisjoint,
                ..sf
            };
            assert_eq!(validate_family(&g, &as_semi), Ok(()));
        }
    }
}
