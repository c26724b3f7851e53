//! Whole-catalogue passes: family census and generalized-cospectral mate
//! scans. Work is split per graph; results come back in input order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::engine::{almost_controllable_solutions, controllable_q, EngineError};
use crate::graph::{enumerate_all_graphs, find_twins, is_isomorphic, Graph, GraphError};
use crate::linalg::rank_rational;
use crate::walk::walk_matrix;

/// Counts of almost controllable graphs in a catalogue of one order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusRow {
    pub n: usize,
    pub total_graphs: usize,
    pub h_n: usize,
    pub h_n_asym: usize,
    pub h_n_sym: usize,
}

fn common_order(graphs: &[Graph]) -> Result<usize, GraphError> {
    let n = graphs.first().map_or(0, Graph::order);
    match graphs.iter().find(|g| g.order() != n) {
        Some(g) => Err(GraphError::OrderMismatch(n, g.order())),
        None => Ok(n),
    }
}

/// Census of a catalogue whose graphs all have the same order. The
/// catalogue is assumed isomorph-free.
pub fn census(graphs: &[Graph]) -> Result<CensusRow, EngineError> {
    let n = common_order(graphs)?;
    // None: not almost controllable; Some(sym): almost controllable
    let kinds = graphs
        .par_iter()
        .map(|g| -> Result<Option<bool>, EngineError> {
            if n == 0 || rank_rational(&walk_matrix(g)) + 1 != n {
                return Ok(None);
            }
            Ok(Some(find_twins(g)?.is_some()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let h_n_sym = kinds.iter().filter(|k| **k == Some(true)).count();
    let h_n_asym = kinds.iter().filter(|k| **k == Some(false)).count();
    Ok(CensusRow {
        n,
        total_graphs: graphs.len(),
        h_n: h_n_sym + h_n_asym,
        h_n_asym,
        h_n_sym,
    })
}

/// Census over the built-in enumeration of all graphs of order `n <= 6`.
pub fn census_of_order(n: usize) -> Result<CensusRow, EngineError> {
    let graphs = enumerate_all_graphs(n)?;
    let mut row = census(&graphs)?;
    row.n = n;
    Ok(row)
}

/// Two catalogue entries that are generalized cospectral but not
/// isomorphic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatePair {
    pub first: usize,
    pub second: usize,
    /// levels of the rational orthogonal matrices from `first` to
    /// `second`, when `first` is controllable (one matrix, reported twice)
    /// or almost controllable (two matrices)
    pub levels: Option<(BigInt, BigInt)>,
}

/// All generalized-cospectral, non-isomorphic pairs `(i, j)` with `i < j`.
pub fn mate_scan(graphs: &[Graph]) -> Result<Vec<MatePair>, EngineError> {
    let n = common_order(graphs)?;
    let spectra: Vec<_> = graphs.par_iter().map(Graph::generalized_spectrum).collect();
    let mut groups: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    for (i, s) in spectra.into_iter().enumerate() {
        groups.entry(s).or_default().push(i);
    }
    let candidates: Vec<(usize, usize)> = groups
        .values()
        .flat_map(|ix| {
            ix.iter()
                .enumerate()
                .flat_map(move |(k, &i)| ix[k + 1..].iter().map(move |&j| (i, j)))
        })
        .collect();
    let mut pairs = candidates
        .par_iter()
        .map(|&(i, j)| -> Result<Option<MatePair>, EngineError> {
            let (g, h) = (&graphs[i], &graphs[j]);
            if is_isomorphic(g, h)?.is_some() {
                return Ok(None);
            }
            let rank = rank_rational(&walk_matrix(g));
            let levels = if rank == n {
                let l = controllable_q(g, h)?.denominator_lcm();
                Some((l.clone(), l))
            } else if rank + 1 == n {
                let s = almost_controllable_solutions(g, h)?;
                Some((s.level0, s.level1))
            } else {
                None
            };
            Ok(Some(MatePair {
                first: i,
                second: j,
                levels,
            }))
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    pairs.sort_by_key(|p| (p.first, p.second));
    Ok(pairs)
}
