//! graph6 short form (orders 0..=62).
//!
//! The header byte is `n + 63`; the upper triangle is then packed column
//! by column (`(0,1), (0,2), (1,2), (0,3), ...`) six bits per byte, most
//! significant bit first, each byte offset by 63, zero-padded at the end.

use std::io::BufRead;

use super::{Graph, GraphError};

const SHORT_FORM_MAX: usize = 62;

fn err(offset: usize, reason: impl Into<String>) -> GraphError {
    GraphError::Graph6 {
        offset,
        reason: reason.into(),
    }
}

impl Graph {
    pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        let Some(&head) = bytes.first() else {
            return Err(err(0, "empty input"));
        };
        if head == b'~' {
            return Err(err(0, "long-form header (order above 62) is not supported"));
        }
        if !(63..=63 + SHORT_FORM_MAX as u8).contains(&head) {
            return Err(err(0, format!("invalid header byte 0x{head:02x}")));
        }
        let n = (head - 63) as usize;
        let bits = n * n.saturating_sub(1) / 2;
        let expected = 1 + bits.div_ceil(6);
        if bytes.len() != expected {
            return Err(err(
                bytes.len().min(expected),
                format!(
                    "expected {expected} bytes for order {n}, found {}",
                    bytes.len()
                ),
            ));
        }
        let mut g = Graph::empty(n);
        let mut k = 0;
        for (offset, &b) in bytes.iter().enumerate().skip(1) {
            if !(63..=126).contains(&b) {
                return Err(err(offset, format!("invalid data byte 0x{b:02x}")));
            }
            let chunk = b - 63;
            for shift in (0..6).rev() {
                let set = chunk >> shift & 1 == 1;
                if k < bits {
                    if set {
                        let (u, v) = edge_at(k);
                        g.add_edge(u, v);
                    }
                } else if set {
                    return Err(err(offset, "nonzero padding bits"));
                }
                k += 1;
            }
        }
        Ok(g)
    }

    /// Encodes in graph6 short form. Panics for orders above 62.
    pub fn to_graph6(&self) -> String {
        let n = self.order();
        assert!(
            n <= SHORT_FORM_MAX,
            "graph6 short form holds at most 62 vertices"
        );
        let mut out = String::with_capacity(1 + (n * n) / 12 + 1);
        out.push((n as u8 + 63) as char);
        let mut chunk = 0u8;
        let mut filled = 0;
        for v in 1..n {
            for u in 0..v {
                chunk = chunk << 1 | self.has_edge(u, v) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((chunk + 63) as char);
                    chunk = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((chunk << (6 - filled)) + 63) as char);
        }
        out
    }
}

/// Position `k` in column-major upper-triangle order.
fn edge_at(k: usize) -> (usize, usize) {
    let mut v = 1;
    let mut start = 0;
    while start + v <= k {
        start += v;
        v += 1;
    }
    (k - start, v)
}

/// One parsed corpus line, with its 1-based line number.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub line: usize,
    pub graph: Graph,
}

/// Reads one graph per line; blank lines and lines starting with `#` are
/// skipped. An optional `>>graph6<<` header is accepted on each line.
pub fn read_graph6_corpus<R: BufRead>(reader: R) -> Result<Vec<CorpusEntry>, (usize, GraphError)> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line.map_err(|e| (line_no, err(0, e.to_string())))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
        let graph = Graph::parse_graph6(body).map_err(|e| (line_no, e))?;
        out.push(CorpusEntry {
            line: line_no,
            graph,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_all_graphs;

    #[test]
    fn known_encodings() {
        assert_eq!(Graph::parse_graph6("A_").unwrap(), Graph::complete(2));
        assert_eq!(Graph::empty(1).to_graph6(), "@");
        assert_eq!(Graph::empty(0).to_graph6(), "?");
        // petgraph's documented example: edges a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(g.to_graph6(), "DQc");
        assert_eq!(Graph::complete(4).to_graph6(), "C~");
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            Graph::parse_graph6(""),
            Err(GraphError::Graph6 { offset: 0, .. })
        ));
        assert!(matches!(
            Graph::parse_graph6("~?@~"),
            Err(GraphError::Graph6 { offset: 0, .. })
        ));
        assert!(matches!(
            Graph::parse_graph6("A"),
            Err(GraphError::Graph6 { .. })
        ));
        assert!(matches!(
            Graph::parse_graph6("A_?"),
            Err(GraphError::Graph6 { .. })
        ));
        // 'A' carries one bit; '`' sets a padding bit
        assert!(matches!(
            Graph::parse_graph6("A`"),
            Err(GraphError::Graph6 { offset: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_graph6("C\x7f"),
            Err(GraphError::Graph6 { offset: 1, .. })
        ));
    }

    #[test]
    fn round_trip_all_small_orders() {
        for n in 1..=6 {
            for g in enumerate_all_graphs(n).unwrap() {
                let s = g.to_graph6();
                assert_eq!(Graph::parse_graph6(&s).unwrap(), g);
                assert_eq!(Graph::parse_graph6(&s).unwrap().to_graph6(), s);
            }
        }
    }

    #[test]
    fn corpus_reader_skips_comments() {
        let text = "# header\n\nA_\n>>graph6<<A?\n";
        let entries = read_graph6_corpus(text.as_bytes()).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].line, 3);
        assert_eq!(entries[1].graph, Graph::empty(2));
        let (line, _) = read_graph6_corpus("A_\nzz\n".as_bytes()).unwrap_err();
        assert_eq!(line, 2);
    }

    proptest::proptest! {
        #[test]
        fn random_graphs_round_trip(n in 0usize..=20, seed in proptest::collection::vec(proptest::bool::ANY, 190)) {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if seed[k] { g.add_edge(u, v); }
                    k += 1;
                }
            }
            proptest::prop_assert_eq!(Graph::parse_graph6(&g.to_graph6()).unwrap(), g);
        }
    }
}
