//! The acceptance suite: one exact check per criterion, each returning a
//! pass/fail outcome with a short detail line. Shared by the `check`
//! subcommand and the acceptance test target.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bouquet::{max_semi_strongly_disjoint_flowers, max_strongly_disjoint_flowers};
use crate::canon::canonical_form;
use crate::chordal::{
    chordal_depth_cover, chordal_depth_recursive, dim_recursion, find_peo, is_chordal, simplicial_vertices,
    ChordalDepth,
};
use crate::enumerate::{all_graphs, connected_graphs_with, GraphClass};
use crate::error::Result;
use crate::exec::Exec;
use crate::graph::Graph;
use crate::graph6::{emit_graph6, parse_edge_list, parse_graph6, Graph6Error};
use crate::homology::{hochster_profile_with, Field, HochsterOptions};
use crate::independence::{independence_number, max_minimal_vertex_cover};
use crate::pairsets::{chordal_witness, cminus, cprime, cstar, Pair, PairSet};
use crate::survey::{survey, SurveyOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}. {}: {}", self.id, self.title, self.detail)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct CheckOptions {
    pub exec: Exec,
    /// Include the all-graphs survey at `n = 9` in check 2.
    pub stretch: bool,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            exec: Exec::default(),
            stretch: true,
        }
    }
}

pub const CHECK_COUNT: u8 = 9;

pub fn run_all(opts: CheckOptions) -> Vec<CheckOutcome> {
    (1..=CHECK_COUNT).map(|id| run_one(id, opts)).collect()
}

pub fn run_one(id: u8, opts: CheckOptions) -> CheckOutcome {
    let start = Instant::now();
    let (title, result) = match id {
        1 => ("Closed-form pair tables", pair_tables()),
        2 => ("All-graph survey equals C*(n)", all_graph_survey(opts)),
        3 => ("Chordal survey equals C*(n), n <= 9", chordal_survey(opts)),
        4 => ("Chordal witness construction, n <= 12", witness_suite()),
        5 => (
            "Four pdim oracles agree on connected chordal graphs, n <= 8",
            oracle_agreement(opts),
        ),
        6 => ("Bound suites over connected graphs, n <= 7", bound_suites(opts)),
        7 => ("Simplicial recursions, n <= 7", recursion_suites()),
        8 => ("Enumeration counts", enumeration_counts(opts)),
        9 => ("graph6 codec", codec()),
        _ => ("unknown check", Ok(Err(format!("no check with id {id}")))),
    };
    let (passed, detail) = match result {
        Ok(Ok(detail)) => (true, detail),
        Ok(Err(detail)) => (false, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    CheckOutcome {
        id,
        title: title.to_string(),
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis() as u64,
    }
}

/// `Ok(Ok(detail))` passes, `Ok(Err(detail))` fails, `Err` is an internal error.
type Verdict = Result<std::result::Result<String, String>>;

fn pairs(n: usize, ps: &[Pair]) -> Result<PairSet> {
    PairSet::from_pairs(n, ps.iter().copied())
}

fn show(ps: &[Pair]) -> String {
    let items: Vec<String> = ps.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", items.join(","))
}

/// Reference tables: `C'(n)` for `7 <= n <= 13`, and the pairs of `C*(n)`
/// outside `C-(n)` for `n` in 9, 11, 12.
const CPRIME_TABLE: &[(usize, &[Pair])] = &[
    (7, &[(4, 5)]),
    (8, &[(5, 6)]),
    (9, &[(5, 7), (6, 7)]),
    (10, &[(6, 7), (6, 8), (7, 8)]),
    (11, &[(6, 9), (7, 8), (7, 9), (8, 9)]),
    (12, &[(7, 10), (8, 9), (8, 10), (9, 10)]),
    (13, &[(7, 11), (8, 9), (8, 10), (8, 11), (9, 10), (9, 11), (10, 11)]),
];
const CSTAR_EXTRAS_TABLE: &[(usize, &[Pair])] = &[
    (9, &[(5, 6)]),
    (11, &[(6, 6), (6, 7), (6, 8)]),
    (12, &[(7, 8), (7, 9), (8, 9)]),
];

fn pair_tables() -> Verdict {
    let mut bad = Vec::new();
    for n in 2..=6 {
        let c = cprime(n)?;
        if !c.is_empty() {
            bad.push(format!("C'({n}) = {} is not empty", show(&c.to_vec())));
        }
    }
    for &(n, expected) in CPRIME_TABLE {
        let got = cprime(n)?;
        if !got.same_pairs(&pairs(n, expected)?)? {
            bad.push(format!("C'({n}) = {}, table {}", show(&got.to_vec()), show(expected)));
        }
    }
    for n in (2..=8).chain([10]) {
        if !cstar(n)?.same_pairs(&cminus(n)?)? {
            bad.push(format!("C*({n}) != C-({n})"));
        }
    }
    for &(n, extras) in CSTAR_EXTRAS_TABLE {
        let stated = cminus(n)?.union(&pairs(n, extras)?)?;
        let star = cstar(n)?;
        if !star.same_pairs(&stated)? {
            let computed = star.difference(&cminus(n)?)?.to_vec();
            let not_in_cstar = stated.difference(&star)?.to_vec();
            bad.push(format!(
                "C*({n}) = C-({n}) u {}, table says u {}; {} violate a <= b+1-ceil(b/(n-b))",
                show(&computed),
                show(extras),
                show(&not_in_cstar)
            ));
        }
    }
    Ok(if bad.is_empty() {
        Ok("C'(2..=13) and the C*/C- relations for n = 2..=12 match".into())
    } else {
        Err(bad.join("; "))
    })
}

fn survey_range(class: GraphClass, range: std::ops::RangeInclusive<usize>, exec: Exec) -> Result<Vec<String>> {
    let opts = SurveyOptions {
        exec,
        ..SurveyOptions::default()
    };
    let mut bad = Vec::new();
    for n in range {
        let r = survey(n, class, &opts)?;
        let d = r.compare(&cstar(n)?)?;
        if !d.extra.is_empty() || !d.missing.is_empty() {
            bad.push(format!("n={n}: extra {} missing {}", show(&d.extra), show(&d.missing)));
        }
    }
    Ok(bad)
}

fn all_graph_survey(opts: CheckOptions) -> Verdict {
    let top = if opts.stretch { 9 } else { 8 };
    let bad = survey_range(GraphClass::All, 2..=top, opts.exec)?;
    Ok(if !bad.is_empty() {
        Err(bad.join("; "))
    } else if opts.stretch {
        Ok("equal for n = 2..=9, including all 261080 classes at n = 9".into())
    } else {
        Ok("equal for n = 2..=8; n = 9 stretch run SKIPPED".into())
    })
}

fn chordal_survey(opts: CheckOptions) -> Verdict {
    let bad = survey_range(GraphClass::Chordal, 2..=9, opts.exec)?;
    Ok(if bad.is_empty() {
        Ok("equal for n = 2..=9".into())
    } else {
        Err(bad.join("; "))
    })
}

fn witness_suite() -> Verdict {
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=12 {
        for b in 1..n {
            for a in 1..=b.min(n - b) {
                let g = chordal_witness(n, a, b)?;
                let recursive = chordal_depth_recursive(&g)?;
                let cover = chordal_depth_cover(&g)?;
                let ok = g.is_connected()
                    && find_peo(&g).is_some()
                    && independence_number(&g) == b
                    && recursive == a
                    && cover == a
                    && max_minimal_vertex_cover(&g).0 == n - a;
                checked += 1;
                if !ok {
                    bad.push(format!("W({n},{a},{b}) = {}", emit_graph6(&g)));
                }
            }
        }
    }
    Ok(if bad.is_empty() {
        Ok(format!(
            "{checked} witnesses: connected, chordal, dim = b, depth = a, pdim = n - a"
        ))
    } else {
        Err(bad.join("; "))
    })
}

fn oracle_agreement(opts: CheckOptions) -> Verdict {
    let mut count = 0;
    for n in 2..=8 {
        let graphs = connected_graphs_with(n, GraphClass::Chordal, opts.exec)?;
        let rows = opts.exec.map(&graphs, |g| -> Result<[usize; 4]> {
            let h = hochster_profile_with(
                g,
                Field::GF2,
                HochsterOptions {
                    exec: Exec::Sequential,
                    ..Default::default()
                },
            );
            Ok([
                h.pdim,
                max_minimal_vertex_cover(g).0,
                g.n() - chordal_depth_recursive(g)?,
                max_semi_strongly_disjoint_flowers(g).0,
            ])
        });
        for (g, row) in graphs.iter().zip(rows) {
            let row = row?;
            if row.iter().any(|&x| x != row[0]) {
                return Ok(Err(format!(
                    "{}: homology, cover, recursion, bouquets give {row:?}",
                    emit_graph6(g)
                )));
            }
            count += 1;
        }
    }
    Ok(Ok(format!("{count} graphs, all four routes agree")))
}

fn bound_suites(opts: CheckOptions) -> Verdict {
    let mut count = 0;
    for n in 2..=7 {
        let graphs = connected_graphs_with(n, GraphClass::All, opts.exec)?;
        let found = opts.exec.map(&graphs, bound_violation);
        for (g, v) in graphs.iter().zip(found) {
            if let Some(v) = v {
                return Ok(Err(format!("{}: {v}", emit_graph6(g))));
            }
            count += 1;
        }
    }
    Ok(Ok(format!(
        "{count} graphs: deg <= pdim, strong bouquets <= pdim, CM => dim <= n/2, dim = n-1 => depth 1, chordal staircase bound"
    )))
}

fn bound_violation(g: &Graph) -> Option<String> {
    let n = g.n();
    let pdim = hochster_profile_with(
        g,
        Field::GF2,
        HochsterOptions {
            exec: Exec::Sequential,
            ..Default::default()
        },
    )
    .pdim;
    let depth = n - pdim;
    let dim = independence_number(g);
    if g.max_degree() > pdim {
        return Some(format!("max degree {} > pdim {pdim}", g.max_degree()));
    }
    let strong = max_strongly_disjoint_flowers(g).0;
    if strong > pdim {
        return Some(format!("strongly disjoint flowers {strong} > pdim {pdim}"));
    }
    if depth == dim && 2 * dim > n {
        return Some(format!("Cohen-Macaulay with dim {dim} > n/2"));
    }
    if dim == n - 1 && depth != 1 {
        return Some(format!("dim n-1 with depth {depth}"));
    }
    if is_chordal(g) && dim > (n - dim) * (dim - depth + 1) {
        return Some(format!("chordal (a,b) = ({depth},{dim}) violates b <= (n-b)(b-a+1)"));
    }
    None
}

fn recursion_suites() -> Verdict {
    let mut graphs_seen = 0;
    for n in 1..=7 {
        for g in all_graphs(n)? {
            graphs_seen += 1;
            let alpha = independence_number(&g);
            for v in 0..n {
                if dim_recursion(&g, v)? != alpha {
                    return Ok(Err(format!("dim recursion fails on {} at {v}", emit_graph6(&g))));
                }
            }
        }
    }
    let cd = ChordalDepth::new();
    let (mut heads, mut exact_ok) = (0, 0);
    let mut failures: Vec<String> = Vec::new();
    let mut failure_count = 0;
    for n in 2..=7 {
        for g in connected_graphs_with(n, GraphClass::Chordal, Exec::Sequential)? {
            let expected = chordal_depth_cover(&g)?;
            for v in simplicial_vertices(&g) {
                heads += 1;
                if cd.depth_at_head(&g, v)? == expected {
                    exact_ok += 1;
                }
                let got = cd.two_branch_step(&g, v)?;
                if got != expected {
                    failure_count += 1;
                    if failures.len() < 3 {
                        failures.push(format!("{} at {v}: {got} vs {expected}", emit_graph6(&g)));
                    }
                }
            }
        }
    }
    let mut detail = format!("dim recursion holds on all {graphs_seen} graphs and every vertex; ");
    if failure_count == 0 {
        let _ = write!(
            detail,
            "two-branch depth step matches the cover route at all {heads} heads"
        );
        Ok(Ok(detail))
    } else {
        let _ = write!(
            detail,
            "two-branch depth step min(depth(G-N[v])+1, depth(G-v)) differs from the cover route at {failure_count} of {heads} heads, e.g. {} (the exact step 1+min over w in N[v] of depth(G-N[w]) matches at {exact_ok} of {heads})",
            failures.join(", ")
        );
        Ok(Err(detail))
    }
}

fn enumeration_counts(opts: CheckOptions) -> Verdict {
    const EXPECTED: [usize; 7] = [1, 2, 6, 21, 112, 853, 11117];
    let got: Vec<usize> = (2..=8)
        .map(|n| connected_graphs_with(n, GraphClass::All, opts.exec).map(|v| v.len()))
        .collect::<Result<_>>()?;
    if got != EXPECTED {
        return Ok(Err(format!("counts {got:?}, expected {EXPECTED:?}")));
    }
    for n in 2..=6 {
        let mut generated: Vec<_> = connected_graphs_with(n, GraphClass::All, opts.exec)?
            .iter()
            .map(canonical_form)
            .collect();
        generated.sort();
        let mut brute = labeled_connected_classes(n);
        brute.sort();
        if generated != brute {
            return Ok(Err(format!("n={n}: generator and labeled brute force differ")));
        }
    }
    Ok(Ok(format!(
        "{got:?} for n = 2..=8; labeled brute force agrees for n <= 6"
    )))
}

fn labeled_connected_classes(n: usize) -> Vec<crate::canon::CanonicalForm> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..1 << slots.len() {
        let edges: Vec<_> = slots
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        let g = Graph::from_edges(n, &edges).expect("edges in range");
        if g.is_connected() {
            seen.insert(canonical_form(&g));
        }
    }
    seen.into_iter().collect()
}

fn codec() -> Verdict {
    let mut count = 0;
    for n in 2..=6 {
        for g in connected_graphs_with(n, GraphClass::All, Exec::Sequential)? {
            let text = emit_graph6(&g);
            if parse_graph6(&text) != Ok(g) {
                return Ok(Err(format!("round trip fails on {text}")));
            }
            count += 1;
        }
    }
    type Case = (&'static str, fn(&Graph6Error) -> bool);
    let cases: [Case; 8] = [
        ("", |e| *e == Graph6Error::Empty),
        ("A\u{7f}", |e| matches!(e, Graph6Error::OutOfAlphabet { .. })),
        ("~??", |e| *e == Graph6Error::BadHeader),
        ("~?Bo", |e| matches!(e, Graph6Error::TooLarge(_))),
        ("Bw?", |e| matches!(e, Graph6Error::BadLength { .. })),
        ("B", |e| matches!(e, Graph6Error::BadLength { .. })),
        ("Aa", |e| *e == Graph6Error::TrailingBits),
        ("`", |e| matches!(e, Graph6Error::TooLarge(_))),
    ];
    for (text, ok) in cases {
        match parse_graph6(text) {
            Err(e) if ok(&e) => {}
            other => return Ok(Err(format!("{text:?} gave {other:?}"))),
        }
    }
    for text in ["3; 0-3", "3; 0-0", "x; 0-1", "3; 0-1-2"] {
        if parse_edge_list(text).is_ok() {
            return Ok(Err(format!("edge list {text:?} was accepted")));
        }
    }
    Ok(Ok(format!("{count} graphs round-trip; 12 malformed inputs rejected")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_checks() {
        let opts = CheckOptions {
            exec: Exec::Sequential,
            stretch: false,
        };
        for id in [4, 8, 9] {
            let o = run_one(id, opts);
            assert!(o.passed, "{o}");
        }
    }

    #[test]
    fn table_check_pinpoints_the_inconsistent_rows() {
        let o = run_one(1, CheckOptions::default());
        assert!(!o.passed);
        assert!(
            o.detail.contains("C*(11)") && o.detail.contains("C*(12)"),
            "{}",
            o.detail
        );
        assert!(!o.detail.contains("C'("), "{}", o.detail);
        assert!(
            o.detail.contains("{(6,6)}") && o.detail.contains("{(8,9)}"),
            "{}",
            o.detail
        );
    }

    #[test]
    fn unknown_id_fails() {
        assert!(!run_one(42, CheckOptions::default()).passed);
    }

    #[test]
    fn display_line() {
        let o = CheckOutcome {
            id: 3,
            title: "t".into(),
            passed: true,
            detail: "d".into(),
            elapsed_ms: 0,
        };
        assert_eq!(o.to_string(), "[PASS] 3. t: d");
    }
}
