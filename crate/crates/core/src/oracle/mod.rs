//! Exhaustive search for ground-truth distances on small genomes.

pub mod neighbors;
pub mod orbit;
pub mod state;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classify;
use crate::error::{Error, Result};
use crate::genome::Genome;

pub use neighbors::{neighbors, scenario_from_distance};
pub use orbit::{canonical_code, OrbitTable};
pub use state::{Layout, State};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    Dcj,
    Reversal,
    Bi,
    BdDcj,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Goal {
    /// The unilinear identity over first copies.
    Sorted,
    Perfect,
    /// A 1-tandem duplicated genome.
    Tandem,
    Dedoubled,
    /// A dedoubled genome made of one linear chromosome.
    DedoubledLinear,
    /// Duplicated markers gathered into one 1-tandem run of a linear chromosome.
    GatheredTandem,
}

impl Goal {
    pub fn holds(&self, s: &State, families: usize, n_ext: usize) -> bool {
        match self {
            Goal::Sorted => s.is_identity(families),
            Goal::Perfect => s.is_perfect(n_ext),
            Goal::Tandem => s.is_tandem(n_ext),
            Goal::Dedoubled => s.is_dedoubled(families),
            Goal::DedoubledLinear => s.is_dedoubled(families) && s.is_unilinear(n_ext),
            Goal::GatheredTandem => s.is_gathered_tandem(n_ext),
        }
    }

    pub fn holds_for(&self, g: &Genome) -> bool {
        match self {
            Goal::Sorted => {
                let n = g.size() as u32;
                classify::is_non_duplicated(g) && g.same_as(&Genome::identity(n))
            }
            Goal::Perfect => classify::is_perfectly_duplicated(g),
            Goal::Tandem => classify::is_1tandem(g),
            Goal::Dedoubled => classify::is_dedoubled(g),
            Goal::DedoubledLinear => classify::is_dedoubled(g) && g.is_unilinear(),
            Goal::GatheredTandem => classify::is_gathered_tandem(g),
        }
    }
}

/// Limits on exhaustive search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cap {
    pub families: usize,
    pub states: usize,
}

impl Default for Cap {
    fn default() -> Cap {
        Cap { families: 6, states: 5_000_000 }
    }
}

impl Cap {
    /// Reads `RKIT_ORACLE_CAP` as `states` or `families:states`.
    pub fn from_env() -> Cap {
        let mut cap = Cap::default();
        if let Ok(v) = std::env::var("RKIT_ORACLE_CAP") {
            let parts: Vec<&str> = v.split(':').collect();
            match parts.as_slice() {
                [s] => {
                    if let Ok(s) = s.trim().parse() {
                        cap.states = s;
                    }
                }
                [f, s] => {
                    if let (Ok(f), Ok(s)) = (f.trim().parse(), s.trim().parse()) {
                        cap.families = f;
                        cap.states = s;
                    }
                }
                _ => {}
            }
        }
        cap.families = cap.families.min(state::MAX_FAMILIES);
        cap
    }
}

/// Minimum number of operations of `model` turning `g` into a genome satisfying `goal`.
pub fn bfs_distance(g: &Genome, goal: Goal, model: Model, cap: Cap) -> Result<usize> {
    let layout = Layout::of(g)?;
    if layout.families() > cap.families {
        return Err(Error::CapExceeded(format!("{} marker families, cap {}", layout.families(), cap.families)));
    }
    let (f, n_ext) = (layout.families(), layout.n_ext());
    let start = layout.encode(g);
    if goal.holds(&start, f, n_ext) {
        return Ok(0);
    }
    let mut seen: HashSet<State> = HashSet::new();
    seen.insert(start);
    let mut frontier = vec![start];
    let mut buf = Vec::new();
    let mut depth = 0;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for s in &frontier {
            buf.clear();
            s.moves(model, n_ext, &mut buf)?;
            for t in &buf {
                if seen.insert(*t) {
                    if goal.holds(t, f, n_ext) {
                        return Ok(depth);
                    }
                    next.push(*t);
                }
            }
            if seen.len() > cap.states {
                return Err(Error::CapExceeded(format!("more than {} states", cap.states)));
            }
        }
        frontier = next;
    }
    Err(Error::Refused(format!("no genome satisfying {goal:?} is reachable")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn goal_at_start_is_zero() {
        let x = g("[ 1 2 3 1' 2' 3' ]");
        assert_eq!(bfs_distance(&x, Goal::Tandem, Model::Dcj, Cap::default()).unwrap(), 0);
    }

    #[test]
    fn halving_example_needs_three() {
        let x = g("[ 1 4' 1' -2 2' 3 -4 3' ]");
        assert_eq!(bfs_distance(&x, Goal::Perfect, Model::Dcj, Cap::default()).unwrap(), 3);
    }

    #[test]
    fn small_permutations_by_block_interchange() {
        let x = g("[ 4 5 3 2 1 ]");
        let d = bfs_distance(&x, Goal::Sorted, Model::Bi, Cap::default()).unwrap();
        assert_eq!(d, crate::classic::bi_distance(&x).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let x = g("[ 1 2 3 4 5 6 7 ]");
        assert!(matches!(bfs_distance(&x, Goal::Perfect, Model::Dcj, Cap::default()), Err(Error::CapExceeded(_))));
        let tiny = Cap { families: 6, states: 10 };
        let y = g("[ 1 4' 1' -2 2' 3 -4 3' ]");
        assert!(bfs_distance(&y, Goal::Perfect, Model::Dcj, tiny).unwrap_err().is_refusal());
    }
}
