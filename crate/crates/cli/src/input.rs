use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use dgs_core::graph::{read_graph6_corpus, Graph};

use crate::Failure;

/// A graph with the input line it came from (1 for inline input).
pub struct Numbered {
    pub line: usize,
    pub graph: Graph,
}

pub fn read_corpus(path: &Path) -> Result<Vec<Numbered>, Failure> {
    let file = File::open(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let entries = read_graph6_corpus(BufReader::new(file))
        .map_err(|(line, e)| Failure::Usage(format!("{}:{line}: {e}", path.display())))?;
    Ok(entries
        .into_iter()
        .map(|e| Numbered {
            line: e.line,
            graph: e.graph,
        })
        .collect())
}

/// An inline adjacency matrix (`0110;1001;...`) or a graph6 string.
pub fn parse_graph_arg(s: &str) -> Result<Graph, Failure> {
    let parsed = if s.contains(';') {
        Graph::from_matrix_str(s)
    } else {
        Graph::parse_graph6(s)
    };
    parsed.map_err(|e| Failure::Usage(format!("{s}: {e}")))
}

/// Graphs from a file or an inline matrix; exactly one must be given.
pub fn graphs_from(file: Option<&Path>, matrix: Option<&str>) -> Result<Vec<Numbered>, Failure> {
    match (file, matrix) {
        (Some(path), None) => read_corpus(path),
        (None, Some(m)) => {
            let graph =
                Graph::from_matrix_str(m).map_err(|e| Failure::Usage(format!("--matrix: {e}")))?;
            Ok(vec![Numbered { line: 1, graph }])
        }
        _ => Err(Failure::Usage("give a graph6 file or --matrix".into())),
    }
}
