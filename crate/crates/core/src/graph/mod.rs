//! Simple undirected graphs on at most 64 vertices.

mod enumerate;
mod graph6;
mod iso;
mod twins;

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::linalg::{char_poly, IntMatrix};

pub use enumerate::{enumerate_all_graphs, MAX_ENUMERATION_ORDER};
pub use graph6::{read_graph6_corpus, CorpusEntry};
pub use iso::{is_isomorphic, MAX_ISOMORPHISM_ORDER};
pub use twins::{find_twins, TwinInfo};

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("matrix parse error: {0}")]
    Matrix(String),
    #[error("graph orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("order {n} exceeds the limit {limit} for {what}")]
    Scale {
        what: &'static str,
        n: usize,
        limit: usize,
    },
    #[error("more than one twin pair: {0:?} and {1:?}")]
    MultipleTwins((usize, usize), (usize, usize)),
}

/// A simple graph stored as one neighbour bitset per vertex. Vertices are
/// `0..n` internally; reports print them 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "at most {MAX_ORDER} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn complete(n: usize) -> Self {
        Self::empty(n).complement()
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::path(n);
        if n > 2 {
            g.add_edge(n - 1, 0);
        }
        g
    }

    /// Parses rows of `0`/`1` separated by `;` (whitespace ignored).
    pub fn from_matrix_str(s: &str) -> Result<Self, GraphError> {
        let rows: Vec<Vec<bool>> = s
            .split(';')
            .map(|r| r.chars().filter(|c| !c.is_whitespace()).collect::<String>())
            .filter(|r| !r.is_empty())
            .map(|r| {
                r.chars()
                    .map(|c| match c {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        other => Err(GraphError::Matrix(format!(
                            "unexpected character {other:?}"
                        ))),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;
        let n = rows.len();
        if n > MAX_ORDER {
            return Err(GraphError::Scale {
                what: "adjacency matrices",
                n,
                limit: MAX_ORDER,
            });
        }
        let mut g = Self::empty(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GraphError::Matrix(format!(
                    "row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if row[i] {
                return Err(GraphError::Matrix(format!("self-loop at vertex {}", i + 1)));
            }
            for (j, &x) in row.iter().enumerate() {
                if x != rows[j][i] {
                    return Err(GraphError::Matrix(format!(
                        "not symmetric at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
                if x {
                    g.adj[i] |= 1 << j;
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u != v && u < self.n && v < self.n,
            "invalid edge ({u}, {v})"
        );
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.adj[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn complement(&self) -> Graph {
        let full = if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        };
        Graph {
            n: self.n,
            adj: (0..self.n)
                .map(|v| !self.adj[v] & full & !(1 << v))
                .collect(),
        }
    }

    /// The graph whose vertex `perm[v]` plays the role of `v` in `self`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n, self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_edge(u, v) {
                    a[(u, v)] = 1.into();
                }
            }
        }
        a
    }

    /// Reads a graph from a symmetric 0/1 integer matrix with zero diagonal.
    pub fn from_adjacency(a: &IntMatrix) -> Option<Graph> {
        if !a.is_square() || a.rows() > MAX_ORDER {
            return None;
        }
        let n = a.rows();
        let one = BigInt::from(1);
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in 0..n {
                let x = &a[(i, j)];
                if *x != a[(j, i)] {
                    return None;
                }
                if *x == one {
                    if i == j {
                        return None;
                    }
                    g.adj[i] |= 1 << j;
                } else if *x != BigInt::default() {
                    return None;
                }
            }
        }
        Some(g)
    }

    /// The generalized spectrum as exact characteristic polynomials of the
    /// graph and of its complement.
    pub fn generalized_spectrum(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let p = char_poly(&self.adjacency_matrix()).expect("adjacency matrices are square");
        let q = char_poly(&self.complement().adjacency_matrix()).expect("square");
        (p, q)
    }
}

/// Whether `g` and `h` share the spectrum and so do their complements.
pub fn generalized_cospectral(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.order() != h.order() {
        return Err(GraphError::OrderMismatch(g.order(), h.order()));
    }
    Ok(g.generalized_spectrum() == h.generalized_spectrum())
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_graph6())
    }
}
