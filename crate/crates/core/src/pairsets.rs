//! Sets of (depth, dim) pairs: the closed-form regions `C*(n)`, `C⁻(n)`,
//! `C'(n)`, the margin function, the chordal witness construction, and a
//! witness search over graph streams.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_graph6};
use crate::homology::{depth, DepthPolicy};
use crate::independence::independence_number;

/// A (depth, dim) pair `(a, b)`.
pub type Pair = (usize, usize);

fn check_pair(n: usize, a: usize, b: usize) -> Result<()> {
    if 1 <= a && a <= b && b < n {
        Ok(())
    } else {
        Err(Error::PairOutOfRange { n, a, b })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::UnsupportedN(n, "n >= 2"));
    }
    Ok(())
}

/// `b + 1 - ceil(b / (n - b)) - a`; non-negative exactly on `C*(n)`.
pub fn f_value(n: usize, a: usize, b: usize) -> Result<i64> {
    check_pair(n, a, b)?;
    let ceil = b.div_ceil(n - b) as i64;
    Ok(b as i64 + 1 - ceil - a as i64)
}

/// Finite set of (depth, dim) pairs for graphs on `n` vertices, optionally
/// with one witness graph per pair. Iteration is ordered by `(b, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSet {
    n: usize,
    // keyed (b, a) so iteration runs dim-major
    pairs: BTreeSet<(usize, usize)>,
    witnesses: BTreeMap<(usize, usize), Graph>,
}

impl PairSet {
    pub fn new(n: usize) -> Self {
        PairSet {
            n,
            pairs: BTreeSet::new(),
            witnesses: BTreeMap::new(),
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = Pair>>(n: usize, pairs: I) -> Result<Self> {
        let mut s = PairSet::new(n);
        for (a, b) in pairs {
            s.insert(a, b)?;
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn insert(&mut self, a: usize, b: usize) -> Result<bool> {
        check_pair(self.n, a, b)?;
        Ok(self.pairs.insert((b, a)))
    }

    /// Inserts the pair and keeps `g` as its witness unless one is present.
    pub fn insert_with_witness(&mut self, a: usize, b: usize, g: Graph) -> Result<()> {
        self.insert(a, b)?;
        self.witnesses.entry((b, a)).or_insert(g);
        Ok(())
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.pairs.contains(&(b, a))
    }

    pub fn witness(&self, a: usize, b: usize) -> Option<&Graph> {
        self.witnesses.get(&(b, a))
    }

    /// Pairs `(a, b)` ordered by dim, then depth.
    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().map(|&(b, a)| (a, b))
    }

    pub fn to_vec(&self) -> Vec<Pair> {
        self.iter().collect()
    }

    fn same_n(&self, other: &PairSet) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::MismatchedN(self.n, other.n))
        }
    }

    pub fn union(&self, other: &PairSet) -> Result<PairSet> {
        self.same_n(other)?;
        let mut out = self.clone();
        out.pairs.extend(other.pairs.iter().copied());
        for (k, g) in &other.witnesses {
            out.witnesses.entry(*k).or_insert(*g);
        }
        Ok(out)
    }

    pub fn difference(&self, other: &PairSet) -> Result<PairSet> {
        self.same_n(other)?;
        let pairs: BTreeSet<_> = self.pairs.difference(&other.pairs).copied().collect();
        let witnesses = self
            .witnesses
            .iter()
            .filter(|(k, _)| pairs.contains(k))
            .map(|(k, g)| (*k, *g))
            .collect();
        Ok(PairSet {
            n: self.n,
            pairs,
            witnesses,
        })
    }

    pub fn intersection(&self, other: &PairSet) -> Result<PairSet> {
        self.same_n(other)?;
        let pairs: BTreeSet<_> = self.pairs.intersection(&other.pairs).copied().collect();
        let witnesses = self
            .witnesses
            .iter()
            .filter(|(k, _)| pairs.contains(k))
            .map(|(k, g)| (*k, *g))
            .collect();
        Ok(PairSet {
            n: self.n,
            pairs,
            witnesses,
        })
    }

    /// Equality of the pair sets, ignoring witnesses.
    pub fn same_pairs(&self, other: &PairSet) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.pairs == other.pairs)
    }

    pub fn is_subset(&self, other: &PairSet) -> Result<bool> {
        self.same_n(other)?;
        Ok(self.pairs.is_subset(&other.pairs))
    }

    /// Staircase table: one row per dim `b` (largest first), one column per
    /// depth `a`; `#` marks members and `.` non-members with `a <= b`.
    pub fn render_table(&self) -> String {
        render_staircase(self.n, |a, b| if self.contains(a, b) { '#' } else { '.' })
    }

    /// One `a,b` row per pair, with a header.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("a,b\n");
        for (a, b) in self.iter() {
            let _ = writeln!(s, "{a},{b}");
        }
        s
    }

    pub fn to_json(&self) -> PairSetJson {
        PairSetJson {
            n: self.n,
            pairs: self.iter().map(|(a, b)| [a, b]).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|(&(b, a), g)| (format!("{a},{b}"), emit_graph6(g)))
                .collect(),
        }
    }

    pub fn from_json(j: &PairSetJson) -> Result<Self> {
        let mut s = PairSet::new(j.n);
        for &[a, b] in &j.pairs {
            s.insert(a, b)?;
        }
        for (key, g6) in &j.witnesses {
            let (a, b) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.trim().parse().ok()?, b.trim().parse().ok()?)))
                .ok_or(Error::PairOutOfRange { n: j.n, a: 0, b: 0 })?;
            if !s.contains(a, b) {
                return Err(Error::PairOutOfRange { n: j.n, a, b });
            }
            s.witnesses.insert((b, a), parse_graph6(g6)?);
        }
        Ok(s)
    }
}

/// Serialized form: `{"n": .., "pairs": [[a,b],..], "witnesses": {"a,b": graph6}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSetJson {
    pub n: usize,
    pub pairs: Vec<[usize; 2]>,
    #[serde(default)]
    pub witnesses: BTreeMap<String, String>,
}

impl Serialize for PairSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = PairSetJson::deserialize(d)?;
        PairSet::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Draws the `1 <= a <= b <= n-1` staircase with a caller-supplied marker.
pub fn render_staircase<F: Fn(usize, usize) -> char>(n: usize, mark: F) -> String {
    let width = n.to_string().len().max(2);
    let mut s = String::new();
    let _ = writeln!(s, "dim\\depth");
    for b in (1..n).rev() {
        let _ = write!(s, "{b:>width$} |");
        for a in 1..=b {
            let _ = write!(s, " {:>w$}", mark(a, b), w = width);
        }
        s.push('\n');
    }
    let _ = write!(s, "{:>width$} +", "");
    for a in 1..n {
        let _ = write!(s, " {a:>width$}");
    }
    s.push('\n');
    s
}

/// `C*(n)`: pairs with `1 <= a <= b <= n-1` and `f(a, b) >= 0`.
pub fn cstar(n: usize) -> Result<PairSet> {
    check_n(n)?;
    let mut s = PairSet::new(n);
    for b in 1..n {
        for a in 1..=b {
            if f_value(n, a, b)? >= 0 {
                s.insert(a, b)?;
            }
        }
    }
    Ok(s)
}

/// `C⁻(n) = {(1, n-1)} ∪ {(a, b) : 1 <= a <= b, a <= floor(n/2), b <= n-2}`.
pub fn cminus(n: usize) -> Result<PairSet> {
    check_n(n)?;
    let mut s = PairSet::new(n);
    s.insert(1, n - 1)?;
    for b in 1..n.saturating_sub(1) {
        for a in 1..=b.min(n / 2) {
            s.insert(a, b)?;
        }
    }
    Ok(s)
}

/// `C'(n) = {(a, b) : 1 <= a < b <= n-2} \ C*(n)`.
pub fn cprime(n: usize) -> Result<PairSet> {
    check_n(n)?;
    let star = cstar(n)?;
    let mut s = PairSet::new(n);
    for b in 1..n.saturating_sub(1) {
        for a in 1..b {
            if !star.contains(a, b) {
                s.insert(a, b)?;
            }
        }
    }
    Ok(s)
}

/// The chordal graph with `(depth, dim) = (a, b)` for `a + b <= n`.
///
/// Vertices `0..n-b` are `u_1..u_{n-b}` (a clique), vertices `n-b..n` are
/// `w_1..w_b` (independent). Edges: `u_i w_i` for `i < a`, and `u_j w_k` for
/// `a <= j <= n-b`, `a <= k <= b`. Eliminating all `w` before the `u`
/// vertices is a perfect elimination ordering.
pub fn chordal_witness(n: usize, a: usize, b: usize) -> Result<Graph> {
    check_pair(n, a, b)?;
    if a + b > n {
        return Err(Error::WitnessRegion { n, a, b });
    }
    let m = n - b;
    let u = |i: usize| i - 1;
    let w = |k: usize| m + k - 1;
    let mut edges = Vec::new();
    for i in 1..=m {
        for j in i + 1..=m {
            edges.push((u(i), u(j)));
        }
    }
    for i in 1..a {
        edges.push((u(i), w(i)));
    }
    for j in a..=m {
        for k in a..=b {
            edges.push((u(j), w(k)));
        }
    }
    Graph::from_edges(n, &edges)
}

/// First graph in `source` with `(depth, dim) = (a, b)`.
pub fn witness_search<I>(n: usize, a: usize, b: usize, source: I) -> Result<Option<Graph>>
where
    I: IntoIterator<Item = Graph>,
{
    check_pair(n, a, b)?;
    for g in source {
        if g.n() != n || independence_number(&g) != b {
            continue;
        }
        if depth(&g, DepthPolicy::Auto)? == a {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

/// Randomized hunt for a connected graph with `(depth, dim) = (a, b)`.
///
/// Samples a random independent set of size `b` plus random edges elsewhere;
/// no completeness claim is made.
pub fn random_witness_hunt(n: usize, a: usize, b: usize, tries: usize, seed: u64) -> Result<Option<Graph>> {
    check_pair(n, a, b)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = n - b;
    for _ in 0..tries {
        let density: f64 = rng.gen_range(0.1..0.9);
        let mut edges = Vec::new();
        // vertices 0..m are the complement of the planted independent set
        for i in 0..m {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::from_edges(n, &edges)?;
        if !g.is_connected() || independence_number(&g) != b {
            continue;
        }
        if depth(&g, DepthPolicy::Auto)? == a {
            return Ok(Some(g));
        }
    }
    Ok(None)
}
