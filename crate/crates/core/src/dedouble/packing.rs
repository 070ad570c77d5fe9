//! Maximum sets of pairwise independent non-duplicated cycles.
//!
//! Cycles that share a marker couple conflict. Each couple lies in at most two elements, so
//! this is a 2-frequency set packing, solved exactly by branch and bound or greedily.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::adjacency::AdjacencyGraph;
use crate::par::{self, Execution};

pub const DEFAULT_CYCLE_CAP: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PackingMode {
    #[default]
    Exact,
    Greedy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PackingSolution {
    /// Element indices of the chosen cycles, ascending.
    pub chosen: Vec<usize>,
    pub size: usize,
    pub mode: PackingMode,
}

/// Conflict masks over the candidate cycles.
fn conflicts(ag: &AdjacencyGraph, cand: &[usize]) -> Vec<u32> {
    (0..cand.len())
        .map(|i| (0..cand.len()).filter(|&j| ag.intersect(cand[i], cand[j])).fold(0u32, |m, j| m | (1 << j)))
        .collect()
}

fn branch(conf: &[u32], free: u32, size: u32, chosen: u32, best: &mut (u32, u32)) {
    if free == 0 {
        if size > best.0 {
            *best = (size, chosen);
        }
        return;
    }
    if size + free.count_ones() <= best.0 {
        return;
    }
    let v = free.trailing_zeros() as usize;
    let bit = 1u32 << v;
    branch(conf, free & !bit & !conf[v], size + 1, chosen | bit, best);
    if conf[v] & free != 0 {
        branch(conf, free & !bit, size, chosen, best);
    }
}

/// Maximum independent set of the conflict graph, split over root branches: branch `v` takes
/// `v` as the lowest chosen vertex.
/// Below this many candidates the root branches are searched on one thread.
const PARALLEL_MIN_CANDIDATES: usize = 16;

fn exact_mask(conf: &[u32], exec: Execution) -> u32 {
    let k = conf.len();
    let exec = if k < PARALLEL_MIN_CANDIDATES { Execution::Sequential } else { exec };
    let roots: Vec<usize> = (0..k).collect();
    let all = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let results = par::map(exec, &roots, |&v| {
        let bit = 1u32 << v;
        let above = all & !((bit << 1).wrapping_sub(1));
        let mut best = (0, 0);
        branch(conf, above & !conf[v], 1, bit, &mut best);
        best
    });
    results.into_iter().max_by_key(|&(s, m)| (s, std::cmp::Reverse(m))).map_or(0, |(_, m)| m)
}

/// Repeatedly take the candidate of minimum remaining degree, then improve by swapping one
/// chosen cycle for two.
fn greedy_mask(conf: &[u32]) -> u32 {
    let k = conf.len();
    let mut free: u32 = if k == 0 { 0 } else { u32::MAX >> (32 - k) };
    let mut chosen = 0u32;
    while free != 0 {
        let v = (0..k).filter(|&v| free & (1 << v) != 0).min_by_key(|&v| ((conf[v] & free).count_ones(), v)).unwrap();
        chosen |= 1 << v;
        free &= !(1 << v) & !conf[v];
    }
    loop {
        let mut improved = false;
        'swap: for out in (0..k).filter(|&v| chosen & (1 << v) != 0) {
            let rest = chosen & !(1 << out);
            let open: Vec<usize> =
                (0..k).filter(|&w| rest & (1 << w) == 0 && w != out && conf[w] & rest == 0).collect();
            for (i, &a) in open.iter().enumerate() {
                for &b in &open[i + 1..] {
                    if conf[a] & (1 << b) == 0 {
                        chosen = rest | (1 << a) | (1 << b);
                        improved = true;
                        break 'swap;
                    }
                }
            }
        }
        if !improved {
            return chosen;
        }
    }
}

/// Pack the non-duplicated cycles of `ag`. Exact mode refuses more than `cap` candidates.
pub fn max_independent_cycles(
    ag: &AdjacencyGraph,
    mode: PackingMode,
    cap: usize,
    exec: Execution,
) -> Result<PackingSolution> {
    let cand = ag.candidate_cycles();
    let limit = cap.min(32);
    if cand.len() > limit {
        return match mode {
            PackingMode::Exact => {
                Err(Error::CapExceeded(format!("{} candidate cycles exceed the exact packing cap {limit}", cand.len())))
            }
            PackingMode::Greedy => Ok(greedy_large(ag, &cand)),
        };
    }
    let conf = conflicts(ag, &cand);
    let mask = match mode {
        PackingMode::Exact => exact_mask(&conf, exec),
        PackingMode::Greedy => greedy_mask(&conf),
    };
    let chosen: Vec<usize> = (0..cand.len()).filter(|&i| mask & (1 << i) != 0).map(|i| cand[i]).collect();
    Ok(PackingSolution { size: chosen.len(), chosen, mode })
}

/// Greedy packing without the bitmask limit.
fn greedy_large(ag: &AdjacencyGraph, cand: &[usize]) -> PackingSolution {
    let k = cand.len();
    let nbrs: Vec<Vec<usize>> = (0..k).map(|i| (0..k).filter(|&j| ag.intersect(cand[i], cand[j])).collect()).collect();
    let mut free = vec![true; k];
    let mut chosen = Vec::new();
    loop {
        let pick = (0..k).filter(|&v| free[v]).min_by_key(|&v| (nbrs[v].iter().filter(|&&w| free[w]).count(), v));
        let Some(v) = pick else { break };
        chosen.push(cand[v]);
        free[v] = false;
        for &w in &nbrs[v] {
            free[w] = false;
        }
    }
    chosen.sort_unstable();
    PackingSolution { size: chosen.len(), chosen, mode: PackingMode::Greedy }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::Genome;

    fn solve(text: &str, mode: PackingMode) -> PackingSolution {
        let g: Genome = text.parse().unwrap();
        let ag = AdjacencyGraph::new(&g).unwrap();
        max_independent_cycles(&ag, mode, DEFAULT_CYCLE_CAP, Execution::Sequential).unwrap()
    }

    #[test]
    fn dedoubled_genome_packs_every_couple() {
        let s = solve("[ 1 1' -2 -2' 3' 3 ]", PackingMode::Exact);
        assert_eq!(s.size, 3);
    }

    #[test]
    fn chosen_cycles_are_independent() {
        let g: Genome = "[ 4 2' -1' -3 -1 2 -4' ] [ 5' -3' 6 5 6' 7 8 8' 7' ]".parse().unwrap();
        let ag = AdjacencyGraph::new(&g).unwrap();
        for mode in [PackingMode::Exact, PackingMode::Greedy] {
            let s = max_independent_cycles(&ag, mode, DEFAULT_CYCLE_CAP, Execution::Sequential).unwrap();
            for (i, &a) in s.chosen.iter().enumerate() {
                assert!(!ag.elements[a].duplicated && ag.elements[a].cycle);
                for &b in &s.chosen[i + 1..] {
                    assert!(!ag.intersect(a, b));
                }
            }
        }
    }

    #[test]
    fn exact_masks_agree_across_modes() {
        let conf = vec![0b0110, 0b1001, 0b1001, 0b0110];
        assert_eq!(exact_mask(&conf, Execution::Parallel).count_ones(), 2);
        assert_eq!(exact_mask(&conf, Execution::Sequential), exact_mask(&conf, Execution::Parallel));
    }

    #[test]
    fn swap_improves_a_star() {
        // A centre conflicting with three leaves: min-degree picks leaves directly.
        let conf = vec![0b1110, 0b0001, 0b0001, 0b0001];
        assert_eq!(greedy_mask(&conf).count_ones(), 3);
    }

    #[test]
    fn cap_is_enforced() {
        let g: Genome = "[ 1 1' 2 2' 3 3' ]".parse().unwrap();
        let ag = AdjacencyGraph::new(&g).unwrap();
        let err = max_independent_cycles(&ag, PackingMode::Exact, 2, Execution::Sequential).unwrap_err();
        assert!(err.is_refusal());
        let s = max_independent_cycles(&ag, PackingMode::Greedy, 2, Execution::Sequential).unwrap();
        assert_eq!(s.size, 3);
    }
}
