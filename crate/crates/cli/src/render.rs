use std::fmt::Write as _;

use edgedepth::analysis::GraphAnalysis;
use edgedepth::bouquet::BouquetFamily;
use edgedepth::pairsets::Pair;
use edgedepth::VertexSet;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = edgedepth::survey::SCHEMA_VERSION;

/// Wraps a JSON payload with the schema version.
#[derive(Serialize)]
pub struct Versioned<T: Serialize> {
    pub schema: u32,
    #[serde(flatten)]
    pub body: T,
}

pub fn json<T: Serialize>(body: T) -> String {
    serde_json::to_string(&Versioned {
        schema: SCHEMA_VERSION,
        body,
    })
    .expect("serializable")
        + "\n"
}

pub fn set(s: VertexSet) -> String {
    let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

pub fn pairs(ps: &[Pair]) -> String {
    let items: Vec<String> = ps.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", items.join(","))
}

pub fn analysis_table(a: &GraphAnalysis) -> String {
    let rows = [
        ("graph6", a.graph6.clone()),
        ("n", a.n.to_string()),
        ("edges", a.edges.to_string()),
        ("dim", a.dim.to_string()),
        ("depth", a.depth.to_string()),
        ("pdim", a.pdim.to_string()),
        ("chordal", a.chordal.to_string()),
        ("cohen_macaulay", a.cohen_macaulay.to_string()),
        ("independent_set", set(a.independent_set)),
        ("cover", set(a.cover)),
    ];
    let mut s = String::new();
    for (k, v) in rows {
        let _ = writeln!(s, "{k:<16}{v}");
    }
    s
}

pub const ANALYSIS_CSV_HEADER: &str = "graph6,n,edges,dim,depth,pdim,chordal,cohen_macaulay,independent_set,cover\n";

pub fn analysis_csv_row(a: &GraphAnalysis) -> String {
    let join = |s: VertexSet| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    format!(
        "{},{},{},{},{},{},{},{},{},{}\n",
        a.graph6,
        a.n,
        a.edges,
        a.dim,
        a.depth,
        a.pdim,
        a.chordal,
        a.cohen_macaulay,
        join(a.independent_set),
        join(a.cover)
    )
}

pub fn family(f: &BouquetFamily) -> String {
    let mut s = String::new();
    for b in &f.bouquets {
        let _ = writeln!(s, "  root {}: flowers {}", b.root, set(b.flowers));
    }
    s
}
