//! Genome halving and single tandem halving.

pub mod disrupted;
pub mod shapeshift;
pub mod tandem_bi;
pub mod tandem_dcj;

use serde::Serialize;

use crate::classify::{is_perfectly_duplicated, is_totally_duplicated};
use crate::error::{Error, Result};
use crate::genome::{Genome, Point};
use crate::graphs::natural::natural_graph;
use crate::graphs::ParalogGraph;
use crate::ops::{Dcj, Operation, Scenario};

pub use disrupted::{disrupted_tandem_heuristic, DisruptedBounds, DisruptedResult};
pub use shapeshift::{Rule, ShapeState};
pub use tandem_bi::{tandem_bi_distance, tandem_bi_scenario};
pub use tandem_dcj::{tandem_dcj_distance, tandem_dcj_scenario, TandemDcjResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HalvingResult {
    pub distance: usize,
    pub scenario: Scenario,
    pub goal: Genome,
}

pub(crate) fn require_total(g: &Genome) -> Result<()> {
    if !is_totally_duplicated(g) {
        return Err(Error::Precondition("genome is not totally duplicated".into()));
    }
    Ok(())
}

pub(crate) fn dp(g: &Genome) -> usize {
    let c = natural_graph(g).census();
    g.families() - c.ec - c.op / 2
}

/// DCJ halving distance `n - EC - floor(OP / 2)`.
pub fn halving_distance(g: &Genome) -> Result<usize> {
    require_total(g)?;
    Ok(dp(g))
}

fn mirror_joins(g: &Genome) -> Vec<Dcj> {
    let partners = g.partners();
    let present: std::collections::HashSet<_> = g.adjacencies().into_iter().collect();
    let mut out = Vec::new();
    for a in g.adjacencies() {
        let m = a.mirror();
        if present.contains(&m) || m.is_empty() {
            continue;
        }
        out.extend(Dcj::joining(&partners, m.0, m.1));
    }
    out
}

fn odd_merges(g: &Genome, ng: &ParalogGraph) -> Vec<Dcj> {
    let partners = g.partners();
    let odd: Vec<Vec<Point>> = ng
        .components
        .iter()
        .filter(|c| !c.is_even())
        .map(|c| c.vertices.iter().flat_map(|&v| ng.vertices[v].points()).filter(|p| !p.is_tel()).collect())
        .collect();
    let mut out = Vec::new();
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            for &p in &odd[i] {
                for &q in &odd[j] {
                    out.extend(Dcj::joining(&partners, p, q));
                }
            }
        }
    }
    out
}

/// A DCJ lowering the halving distance by one, with its result.
pub(crate) fn sorting_dcj(g: &Genome) -> Result<(Dcj, Genome)> {
    let d = dp(g);
    let accept = |dcj: &Dcj| -> Option<Genome> {
        let h = dcj.apply(g).ok()?;
        (dp(&h) + 1 == d).then_some(h)
    };
    for dcj in mirror_joins(g) {
        if let Some(h) = accept(&dcj) {
            return Ok((dcj, h));
        }
    }
    for dcj in odd_merges(g, &natural_graph(g)) {
        if let Some(h) = accept(&dcj) {
            return Ok((dcj, h));
        }
    }
    for dcj in crate::oracle::neighbors::all_dcjs(g) {
        if let Some(h) = accept(&dcj) {
            return Ok((dcj, h));
        }
    }
    Err(Error::Inconsistent(format!("no sorting DCJ at halving distance {d}")))
}

/// Optimal DCJ scenario to a perfectly duplicated genome.
pub fn halving_scenario(g: &Genome) -> Result<HalvingResult> {
    require_total(g)?;
    let distance = dp(g);
    let mut cur = g.clone();
    let mut ops = Vec::with_capacity(distance);
    while dp(&cur) > 0 {
        let (dcj, h) = sorting_dcj(&cur)?;
        ops.push(Operation::Dcj(dcj));
        cur = h;
    }
    debug_assert!(is_perfectly_duplicated(&cur));
    Ok(HalvingResult { distance, scenario: Scenario::new(ops), goal: cur })
}
