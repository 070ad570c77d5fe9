//! Breakpoint graph of a unilinear permutation against the identity, and the breakpoint distance.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Genome};

/// Cycle decomposition of the breakpoint graph of an unsigned permutation of `1..=n`.
///
/// Gap `g` sits between positions `g-1` and `g`; value `i` links the gap after `i`
/// (gap 0 for `i = 0`) to the gap before `i + 1` (gap `n` for `i = n`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BreakpointGraph {
    pub n: usize,
    /// Successor gap of each gap.
    pub next: Vec<usize>,
    /// Cycles as lists of gaps, in order of their smallest gap.
    pub cycles: Vec<Vec<usize>>,
}

impl BreakpointGraph {
    pub fn new(perm: &[u32]) -> Result<BreakpointGraph> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n + 2];
        for (i, &v) in perm.iter().enumerate() {
            let v = v as usize;
            if v == 0 || v > n || pos[v] != usize::MAX {
                return Err(Error::Precondition(format!("not a permutation of 1..={n}")));
            }
            pos[v] = i;
        }
        let before = |v: usize| if v == n + 1 { n } else { pos[v] };
        let next: Vec<usize> = (0..=n)
            .map(|gap| {
                let left = if gap == 0 { 0 } else { perm[gap - 1] as usize };
                before(left + 1)
            })
            .collect();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for s in 0..=n {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = next[x];
            }
            cycles.push(cyc);
        }
        Ok(BreakpointGraph { n, next, cycles })
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// Block-interchange distance to the identity.
    pub fn bi_distance(&self) -> usize {
        (self.n + 1 - self.cycle_count()) / 2
    }
}

/// Weight given to a shared or broken telomere.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TelomereWeight {
    /// Every adjacency of the target absent from the source counts 1.
    #[default]
    Full,
    /// `n - A - T/2` with `A` shared adjacencies and `T` shared telomeres.
    Half,
}

/// Breakpoint distance between two genomes on the same set of single-copy markers.
pub fn breakpoint_distance(a: &Genome, b: &Genome, weight: TelomereWeight) -> Result<f64> {
    if a.copy_counts().values().any(|&c| c != 1) || b.copy_counts().values().any(|&c| c != 1) {
        return Err(Error::Precondition("breakpoint distance needs non-duplicated genomes".into()));
    }
    if a.genes() != b.genes() {
        return Err(Error::Precondition("genomes have different marker sets".into()));
    }
    let sa: HashSet<Adjacency> = a.adjacencies().into_iter().collect();
    let sb: Vec<Adjacency> = b.adjacencies();
    Ok(match weight {
        TelomereWeight::Full => sb.iter().filter(|x| !sa.contains(x)).count() as f64,
        TelomereWeight::Half => {
            let shared = sb.iter().filter(|x| sa.contains(x));
            let (mut adj, mut tel) = (0usize, 0usize);
            for x in shared {
                if x.is_telomeric() {
                    tel += 1;
                } else {
                    adj += 1;
                }
            }
            a.size() as f64 - adj as f64 - tel as f64 / 2.0
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_n_plus_one_cycles() {
        let bg = BreakpointGraph::new(&[1, 2, 3, 4]).unwrap();
        assert_eq!(bg.cycle_count(), 5);
        assert_eq!(bg.bi_distance(), 0);
    }

    #[test]
    fn rejects_non_permutation() {
        assert!(BreakpointGraph::new(&[1, 1, 3]).is_err());
        assert!(BreakpointGraph::new(&[0, 1]).is_err());
    }

    #[test]
    fn breakpoint_is_symmetric_under_half_weight() {
        let a: Genome = "[ 1 -3 2 ] ( 4 5 )".parse().unwrap();
        let b: Genome = "[ 1 2 3 4 5 ]".parse().unwrap();
        let x = breakpoint_distance(&a, &b, TelomereWeight::Half).unwrap();
        let y = breakpoint_distance(&b, &a, TelomereWeight::Half).unwrap();
        assert_eq!(x, y);
    }
}
