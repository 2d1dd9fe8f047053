//! graph6 codec and the `n; i-j,i-j,...` edge-list fallback.
//!
//! graph6: the vertex count is encoded in 63-offset bytes (`~` introduces a
//! three-byte count), followed by the upper triangle of the adjacency matrix
//! in column-major order (`(0,1), (0,2), (1,2), (0,3), ...`), packed into
//! 6-bit groups, zero padded, each offset by 63.

use thiserror::Error;

use crate::graph::{Graph, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 alphabet")]
    OutOfAlphabet { byte: u8, offset: usize },
    #[error("malformed vertex-count header")]
    BadHeader,
    #[error("graph6 vertex count {0} exceeds the supported maximum")]
    TooLarge(usize),
    #[error("expected {expected} data bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("padding bits are not zero")]
    TrailingBits,
    #[error("malformed edge list: {0}")]
    EdgeList(String),
}

const HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        // unreachable with MAX_VERTICES = 32, kept for format completeness
        out.push(126);
        out.extend([(n >> 12) as u8 + 63, ((n >> 6) & 63) as u8 + 63, (n & 63) as u8 + 63]);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let s = line.trim_end_matches(['\n', '\r']);
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::OutOfAlphabet { byte, offset });
        }
    }
    let (n, body) = if bytes[0] != 126 {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        if bytes.len() < 8 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, &bytes[8..])
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n < 63 {
            return Err(Graph6Error::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::BadLength {
            expected,
            found: body.len(),
        });
    }
    let pad = expected * 6 - nbits;
    if pad > 0 && (body[expected - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(Graph6Error::TrailingBits);
    }
    let mut rows = [0u32; MAX_VERTICES];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                rows[i] |= 1 << j;
                rows[j] |= 1 << i;
            }
            k += 1;
        }
    }
    Ok(Graph::from_adjacency(&rows[..n]).expect("decoded rows are symmetric and loop-free"))
}

/// Parses `n; i-j,i-j,...` (whitespace tolerant; `n;` alone is edgeless).
pub fn parse_edge_list(text: &str) -> Result<Graph, Graph6Error> {
    let err = |m: &str| Graph6Error::EdgeList(m.to_string());
    let (head, tail) = text.split_once(';').ok_or_else(|| err("missing ';'"))?;
    let n: usize = head.trim().parse().map_err(|_| err("vertex count is not an integer"))?;
    let mut edges = Vec::new();
    for tok in tail.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (a, b) = tok
            .split_once('-')
            .ok_or_else(|| err(&format!("edge {tok:?} lacks '-'")))?;
        let a: usize = a.trim().parse().map_err(|_| err(&format!("bad vertex in {tok:?}")))?;
        let b: usize = b.trim().parse().map_err(|_| err(&format!("bad vertex in {tok:?}")))?;
        edges.push((a, b));
    }
    Graph::from_edges(n, &edges).map_err(|e| Graph6Error::EdgeList(e.to_string()))
}

/// Edge-list text for `g`, the inverse of [`parse_edge_list`].
pub fn emit_edge_list(g: &Graph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(i, j)| format!("{i}-{j}")).collect();
    format!("{}; {}", g.n(), edges.join(","))
}

/// Accepts either format: anything containing `;` is an edge list.
pub fn parse_graph_text(text: &str) -> Result<Graph, Graph6Error> {
    let t = text.trim();
    if t.contains(';') {
        parse_edge_list(t)
    } else {
        parse_graph6(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_encodings() {
        assert_eq!(parse_graph6("A_").unwrap(), Graph::complete(2).unwrap());
        assert_eq!(parse_graph6("Bw").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph6("B?").unwrap(), Graph::edgeless(3).unwrap());
        assert_eq!(emit_graph6(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(emit_graph6(&Graph::edgeless(2).unwrap()), "A?");
        assert_eq!(emit_graph6(&Graph::complete(3).unwrap()), "Bw");
        assert_eq!(emit_graph6(&Graph::edgeless(0).unwrap()), "?");
        // petgraph's fixture: edges A-C, A-E, B-D, D-E on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
    }

    #[test]
    fn header_and_newline_tolerated() {
        assert_eq!(parse_graph6(">>graph6<<Bw\n").unwrap(), Graph::complete(3).unwrap());
    }

    #[test]
    fn rejections() {
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
        assert!(matches!(
            parse_graph6("A "),
            Err(Graph6Error::OutOfAlphabet { byte: b' ', offset: 1 })
        ));
        assert!(matches!(
            parse_graph6("Bw\u{7f}"),
            Err(Graph6Error::OutOfAlphabet { .. })
        ));
        assert_eq!(parse_graph6("~?"), Err(Graph6Error::BadHeader));
        assert_eq!(parse_graph6("~???"), Err(Graph6Error::BadHeader));
        assert_eq!(parse_graph6("~??~"), Err(Graph6Error::TooLarge(63)));
        assert_eq!(parse_graph6("~?Bo"), Err(Graph6Error::TooLarge(240)));
        assert_eq!(parse_graph6("B"), Err(Graph6Error::BadLength { expected: 1, found: 0 }));
        assert_eq!(
            parse_graph6("Bw?"),
            Err(Graph6Error::BadLength { expected: 1, found: 2 })
        );
        // K2 needs one data bit; 'a' = 63 + 0b100010 sets a padding bit
        assert_eq!(parse_graph6("Aa"), Err(Graph6Error::TrailingBits));
        assert_eq!(parse_graph6("`"), Err(Graph6Error::TooLarge(33)));
        assert_eq!(
            parse_graph6("_"),
            Err(Graph6Error::BadLength { expected: 83, found: 0 })
        );
    }

    #[test]
    fn edge_lists() {
        assert_eq!(parse_edge_list("4; 0-1,1-2,2-3").unwrap(), Graph::path(4).unwrap());
        assert_eq!(parse_edge_list("3;").unwrap(), Graph::edgeless(3).unwrap());
        assert!(parse_edge_list("3 0-1").is_err());
        assert!(parse_edge_list("3; 0-3").is_err());
        assert!(parse_edge_list("3; 0:1").is_err());
        assert!(parse_edge_list("x; 0-1").is_err());
        let p = Graph::path(5).unwrap();
        assert_eq!(parse_edge_list(&emit_edge_list(&p)).unwrap(), p);
        assert_eq!(parse_graph_text(" Bw ").unwrap(), Graph::complete(3).unwrap());
        assert_eq!(parse_graph_text("2; 0-1").unwrap(), Graph::complete(2).unwrap());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..=MAX_VERTICES).prop_flat_map(|n| {
            let m = n * n.saturating_sub(1) / 2;
            proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
                let mut edges = Vec::new();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            edges.push((i, j));
                        }
                        k += 1;
                    }
                }
                Graph::from_edges(n, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph()) {
            let s = emit_graph6(&g);
            prop_assert_eq!(parse_graph6(&s).unwrap(), g);
            prop_assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        }
    }
}
