//! Isomorph-free enumeration of all graphs of a small order.
//!
//! Each graph is encoded as the bit string of its upper triangle (graph6
//! order); the representative of an isomorphism class is the graph whose
//! code is minimal over all `n!` relabellings. At order 6 this is about
//! 2.4 * 10^7 relabellings; order 7 would be three orders of magnitude
//! more, so larger catalogues must be read from graph6 files.

use rayon::prelude::*;

use super::{Graph, GraphError};

pub const MAX_ENUMERATION_ORDER: usize = 6;

fn edge_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// ordered by code.
pub fn enumerate_all_graphs(n: usize) -> Result<Vec<Graph>, GraphError> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(GraphError::Scale {
            what: "built-in enumeration (read a graph6 catalogue instead)",
            n,
            limit: MAX_ENUMERATION_ORDER,
        });
    }
    let m = n * n.saturating_sub(1) / 2;
    let edges: Vec<(usize, usize)> = (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    // edge k maps to edge images[p][k] under permutation p; identity skipped
    let images: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .skip(1)
        .map(|p| edges.iter().map(|&(u, v)| edge_index(p[u], p[v])).collect())
        .collect();

    let canonical: Vec<u32> = (0u32..1 << m)
        .into_par_iter()
        .filter(|&code| {
            images.iter().all(|img| {
                let mut image = 0u32;
                let mut bits = code;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    image |= 1 << img[k];
                    bits &= bits - 1;
                }
                image >= code
            })
        })
        .collect();

    Ok(canonical
        .into_iter()
        .map(|code| {
            let mut g = Graph::empty(n);
            for (k, &(u, v)) in edges.iter().enumerate() {
                if code >> k & 1 == 1 {
                    g.add_edge(u, v);
                }
            }
            g
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_isomorphic;

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..=6)
            .map(|n| enumerate_all_graphs(n).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
    }

    #[test]
    fn order_seven_refused() {
        assert!(matches!(
            enumerate_all_graphs(7),
            Err(GraphError::Scale { .. })
        ));
    }

    #[test]
    fn representatives_pairwise_non_isomorphic() {
        let gs = enumerate_all_graphs(5).unwrap();
        for (i, g) in gs.iter().enumerate() {
            for h in &gs[i + 1..] {
                assert!(is_isomorphic(g, h).unwrap().is_none());
            }
        }
    }
}
