use super::{Graph, GraphError};

/// Isomorphism testing is only used as an oracle on small catalogues.
pub const MAX_ISOMORPHISM_ORDER: usize = 12;

fn vertex_signature(g: &Graph, v: usize) -> (u32, Vec<u32>) {
    let mut nd: Vec<u32> = (0..g.order())
        .filter(|&u| g.has_edge(v, u))
        .map(|u| g.degree(u))
        .collect();
    nd.sort_unstable();
    (g.degree(v), nd)
}

/// Finds `map` with `g.has_edge(i, j) == h.has_edge(map[i], map[j])`, i.e.
/// the permutation matrix `P[i][map[i]] = 1` satisfies `P^T A(g) P = A(h)`.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>, GraphError> {
    let n = g.order();
    if n != h.order() {
        return Err(GraphError::OrderMismatch(n, h.order()));
    }
    if n > MAX_ISOMORPHISM_ORDER {
        return Err(GraphError::Scale {
            what: "the isomorphism oracle",
            n,
            limit: MAX_ISOMORPHISM_ORDER,
        });
    }
    if g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let sg: Vec<_> = (0..n).map(|v| vertex_signature(g, v)).collect();
    let sh: Vec<_> = (0..n).map(|v| vertex_signature(h, v)).collect();
    let mut a = sg.clone();
    let mut b = sh.clone();
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }

    // map high-degree vertices first so adjacency constraints bite early
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let found = extend(g, h, &sg, &sh, &order, 0, &mut map, &mut used);
    Ok(found.then_some(map))
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    sg: &[(u32, Vec<u32>)],
    sh: &[(u32, Vec<u32>)],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..h.order() {
        if used[w] || sg[v] != sh[w] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, sg, sh, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}
