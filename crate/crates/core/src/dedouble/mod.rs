//! Genome dedoubling: rebuild a doublet `(x x')` or `(x' x)` for every marker couple with as
//! few DCJs or reversals as possible.
//!
//! Every sorting step splits one cycle of a maximum set of independent non-duplicated cycles
//! of the dedoubled adjacency graph, so the distance is `n - C_i`. For a single linear
//! chromosome that must stay linear, the `m` cycles outside the set are first merged into the
//! path, giving `n - C + 2m`.

pub mod bd;
pub mod packing;
pub mod reversal;

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::classify::{is_dedoubled, is_totally_duplicated};
use crate::error::{Error, Result};
use crate::genome::{Gene, Genome, Paralog, Point, Side};
use crate::graphs::adjacency::AdjacencyGraph;
use crate::graphs::overlap::OverlapGraph;
use crate::graphs::EdgeKind;
use crate::ops::{Dcj, Operation, Scenario};
use crate::par::Execution;
use crate::reduce::totalize;

pub use bd::{lift_to_bd, BdLift};
pub use packing::{max_independent_cycles, PackingMode, PackingSolution, DEFAULT_CYCLE_CAP};
pub use reversal::dedouble_reversal;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DedoubleOptions {
    pub mode: PackingMode,
    /// Largest candidate-cycle count the exact packing accepts.
    pub cap: usize,
    pub exec: Execution,
}

impl Default for DedoubleOptions {
    fn default() -> Self {
        DedoubleOptions { mode: PackingMode::Exact, cap: DEFAULT_CYCLE_CAP, exec: Execution::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DedoubleResult {
    /// Scenario length; exact in exact mode, an upper bound otherwise.
    pub distance: usize,
    pub c_i: usize,
    /// Cycles of the adjacency graph.
    pub cycles: usize,
    /// Cycles merged into the path first (linear variants only).
    pub m: usize,
    pub mode: PackingMode,
    /// The totally duplicated genome the scenario starts from.
    pub start: Genome,
    pub scenario: Scenario,
    pub goal: Genome,
}

/// An edge of the adjacency graph, named by its marker couple and kind.
pub(crate) type Label = (u32, EdgeKind);

pub(crate) fn labels(ag: &AdjacencyGraph, el: usize) -> BTreeSet<Label> {
    let comp = &ag.graph.components[ag.elements[el].component];
    comp.edges.iter().map(|&e| (ag.graph.edges[e].family, ag.graph.edges[e].kind)).collect()
}

/// The DCJ closing edge `label` into a doublet: `(x x')` for a forward edge, `(x' x)` otherwise.
pub(crate) fn doublet_dcj(g: &Genome, (id, kind): Label) -> Result<Dcj> {
    let x = Gene::new(id, Paralog::First);
    let (a, b) = match kind {
        EdgeKind::Forward => (x.ext(Side::Right), x.paralog().ext(Side::Left)),
        _ => (x.paralog().ext(Side::Right), x.ext(Side::Left)),
    };
    Dcj::joining(&g.partners(), Point::Ext(a), Point::Ext(b))
}

fn has_doublet(g: &Genome, id: u32) -> bool {
    let x = Gene::new(id, Paralog::First);
    let p = g.partners();
    p[&x.ext(Side::Right)] == Point::Ext(x.paralog().ext(Side::Left))
        || p[&x.ext(Side::Left)] == Point::Ext(x.paralog().ext(Side::Right))
}

/// The chosen cycles, each kept as its edge set so it can be found again after every step.
#[derive(Clone, Debug)]
pub(crate) struct Chosen {
    pub sets: Vec<BTreeSet<Label>>,
}

impl Chosen {
    fn couples(&self) -> BTreeSet<u32> {
        self.sets.iter().flatten().map(|l| l.0).collect()
    }

    /// A sorting move for couple `id`: its doublet edge and the updated sets. A move splits a
    /// chosen cycle, or extracts a couple no chosen cycle holds.
    pub fn moves(&self, id: u32) -> Vec<(Label, Chosen)> {
        let mut out = Vec::new();
        for kind in [EdgeKind::Forward, EdgeKind::Backward] {
            let label = (id, kind);
            if let Some(i) = self.sets.iter().position(|s| s.contains(&label)) {
                if self.sets[i].len() > 1 {
                    let mut next = self.clone();
                    next.sets[i].remove(&label);
                    next.sets.push([label].into());
                    out.push((label, next));
                }
            }
        }
        if out.is_empty() && !self.couples().contains(&id) {
            for kind in [EdgeKind::Forward, EdgeKind::Backward] {
                let mut next = self.clone();
                next.sets.push([(id, kind)].into());
                out.push(((id, kind), next));
            }
        }
        out
    }
}

struct Prepared {
    g: Genome,
    ag: AdjacencyGraph,
    packing: PackingSolution,
}

fn prepare(g: &Genome, opts: DedoubleOptions) -> Result<Prepared> {
    let g = if is_totally_duplicated(g) { g.clone() } else { totalize(g) };
    if g.families() == 0 {
        return Err(Error::Precondition("dedoubling needs at least one duplicated marker".into()));
    }
    let ag = AdjacencyGraph::new(&g)?;
    let packing = max_independent_cycles(&ag, opts.mode, opts.cap, opts.exec)?;
    Ok(Prepared { g, ag, packing })
}

/// Dedouble by DCJ: `n - C_i` steps, each creating one doublet.
pub fn dedouble_dcj(g: &Genome, opts: DedoubleOptions) -> Result<DedoubleResult> {
    let Prepared { g, ag, packing } = prepare(g, opts)?;
    let mut chosen = Chosen { sets: packing.chosen.iter().map(|&el| labels(&ag, el)).collect() };
    let mut cur = g.clone();
    let mut ops = Vec::new();
    for id in g.duplicated_ids() {
        if has_doublet(&cur, id) {
            continue;
        }
        let (label, next) = chosen
            .moves(id)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent(format!("no sorting move for couple {id}")))?;
        let dcj = doublet_dcj(&cur, label)?;
        cur = dcj.apply(&cur)?;
        ops.push(Operation::Dcj(dcj));
        chosen = next;
    }
    finish(g, ag.cycle_count(), packing, 0, ops, cur)
}

fn finish(
    start: Genome,
    cycles: usize,
    packing: PackingSolution,
    m: usize,
    ops: Vec<Operation>,
    goal: Genome,
) -> Result<DedoubleResult> {
    if !is_dedoubled(&goal) {
        return Err(Error::Inconsistent("scenario does not reach a dedoubled genome".into()));
    }
    Ok(DedoubleResult {
        distance: ops.len(),
        c_i: packing.size,
        cycles,
        m,
        mode: packing.mode,
        start,
        scenario: Scenario::new(ops),
        goal,
    })
}

/// Merge every cycle outside `chosen` into the path with reversals. With `keep_oriented`, the
/// breakpoints are picked so that the overlap graph stays oriented.
pub(crate) fn merge_unchosen(g: &Genome, chosen: &Chosen, keep_oriented: bool) -> Result<(Genome, Vec<Operation>)> {
    let mut cur = g.clone();
    let mut ops = Vec::new();
    loop {
        let ag = AdjacencyGraph::new(&cur)?;
        let path = ag.path().ok_or_else(|| Error::Precondition("genome is not unilinear".into()))?;
        let stray = (0..ag.elements.len()).find(|&el| ag.elements[el].cycle && !chosen.sets.contains(&labels(&ag, el)));
        let Some(el) = stray else { return Ok((cur, ops)) };
        let cycle = &ag.graph.components[ag.elements[el].component].vertices;
        let path = &ag.graph.components[ag.elements[path].component].vertices;
        let mut found = None;
        'search: for &u in cycle {
            for &v in path {
                let op = Operation::reversal_at(&cur, 0, u.min(v), u.max(v))?;
                let h = op.apply(&cur)?;
                if !keep_oriented || OverlapGraph::new(&h)?.is_oriented() {
                    found = Some((op, h));
                    break 'search;
                }
            }
        }
        let (op, h) =
            found.ok_or_else(|| Error::Unoriented("every merging reversal leaves an unoriented component".into()))?;
        cur = h;
        ops.push(op);
    }
}

/// Dedouble a single linear chromosome by DCJ into a single linear chromosome.
pub fn dedouble_dcj_linear(g: &Genome, opts: DedoubleOptions) -> Result<DedoubleResult> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("linear dedoubling needs a unilinear genome".into()));
    }
    let Prepared { g, ag, packing } = prepare(g, opts)?;
    let chosen = Chosen { sets: packing.chosen.iter().map(|&el| labels(&ag, el)).collect() };
    let m = ag.cycle_count() - packing.size;
    let (merged, mut ops) = merge_unchosen(&g, &chosen, false)?;
    let held = chosen.couples();
    let todo = chosen.sets.iter().map(|s| s.len() - 1).sum::<usize>()
        + g.duplicated_ids().into_iter().filter(|id| !held.contains(id)).count();
    let mut dead = HashSet::new();
    let tail = split_linear(&merged, &chosen, todo, &mut dead)?
        .ok_or_else(|| Error::Inconsistent("no linear splitting order found".into()))?;
    let mut cur = merged;
    for op in &tail {
        cur = op.apply(&cur)?;
    }
    ops.extend(tail);
    if !cur.is_unilinear() {
        return Err(Error::Inconsistent("linear dedoubling left several chromosomes".into()));
    }
    finish(g, ag.cycle_count(), packing, m, ops, cur)
}

/// Depth-first search over doublet-creating splits that ends on one linear chromosome.
/// Splits that fuse a circle back are tried first, then reversals, then excisions.
fn split_linear(
    g: &Genome,
    chosen: &Chosen,
    left: usize,
    dead: &mut HashSet<Genome>,
) -> Result<Option<Vec<Operation>>> {
    if left == 0 {
        return Ok(g.is_unilinear().then(Vec::new));
    }
    if g.circular_count() > left || dead.contains(g) {
        return Ok(None);
    }
    let mut cands = Vec::new();
    for id in g.duplicated_ids() {
        if has_doublet(g, id) {
            continue;
        }
        for (label, next) in chosen.moves(id) {
            let dcj = doublet_dcj(g, label)?;
            let h = dcj.apply(g)?;
            let circles = h.circular_count() as isize - g.circular_count() as isize;
            cands.push((circles, dcj, h, next));
        }
    }
    cands.sort_by_key(|c| c.0);
    for (circles, dcj, h, next) in cands {
        if let Some(mut rest) = split_linear(&h, &next, left - 1, dead)? {
            let op = if circles == 0 && h.chromosomes.len() == g.chromosomes.len() && g.is_unilinear() {
                Operation::Reversal(dcj)
            } else {
                Operation::Dcj(dcj)
            };
            rest.insert(0, op);
            return Ok(Some(rest));
        }
    }
    dead.insert(g.clone());
    Ok(None)
}

/// `n - C + 2m` for a unilinear genome, with `m = C - C_i`.
pub fn linear_distance(g: &Genome, opts: DedoubleOptions) -> Result<usize> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("linear dedoubling needs a unilinear genome".into()));
    }
    let Prepared { ag, packing, .. } = prepare(g, opts)?;
    let c = ag.cycle_count();
    Ok(ag.n() + c - 2 * packing.size)
}

/// `n - C_i`.
pub fn dcj_distance(g: &Genome, opts: DedoubleOptions) -> Result<usize> {
    let Prepared { ag, packing, .. } = prepare(g, opts)?;
    Ok(ag.n() - packing.size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    fn exact_ci(g: &Genome) -> usize {
        let ag = AdjacencyGraph::new(g).unwrap();
        max_independent_cycles(&ag, PackingMode::Exact, 32, Execution::Sequential).unwrap().size
    }

    const FIG: &str = "[ 4 2' -1' -3 -1 2 -4' ] [ 5' -3' 6 5 6' 7 8 8' 7' ]";

    #[test]
    fn adjacency_figure() {
        let r = dedouble_dcj(&g(FIG), DedoubleOptions::default()).unwrap();
        assert_eq!(r.c_i, 2);
        assert_eq!(r.cycles, 3);
        assert_eq!(r.distance, 6);
        assert!(is_dedoubled(&r.goal));
    }

    #[test]
    fn every_step_gains_one_independent_cycle() {
        let x = g(FIG);
        let r = dedouble_dcj(&x, DedoubleOptions::default()).unwrap();
        let mut cur = x;
        let mut ci = exact_ci(&cur);
        for op in &r.scenario.ops {
            cur = op.apply(&cur).unwrap();
            let next = exact_ci(&cur);
            assert_eq!(next, ci + 1);
            ci = next;
        }
        assert_eq!(ci, 8);
    }

    #[test]
    fn dedoubled_input_is_fixed() {
        let r = dedouble_dcj(&g("[ 1 1' -2 -2' ] ( 3' 3 )"), DedoubleOptions::default()).unwrap();
        assert_eq!(r.distance, 0);
        assert!(r.scenario.is_empty());
    }

    #[test]
    fn partial_input_is_totalized() {
        let r = dedouble_dcj(&g("[ 1 5 6 2 1' 2' ]"), DedoubleOptions::default()).unwrap();
        assert_eq!(r.start.families(), 3);
        assert!(is_dedoubled(&r.goal));
    }

    #[test]
    fn linear_same_signed_pair() {
        let x = g("[ 1 2 1' 2' ]");
        let r = dedouble_dcj_linear(&x, DedoubleOptions::default()).unwrap();
        assert_eq!(r.distance, 2);
        assert_eq!(linear_distance(&x, DedoubleOptions::default()).unwrap(), 2);
        assert!(r.goal.is_unilinear() && is_dedoubled(&r.goal));
    }

    #[test]
    fn linear_merges_intersecting_cycle() {
        // Two cycles share couple 1, so one must be merged into the path.
        let x = g("[ 2 1 -3 1' 3' -2' ]");
        let ag = AdjacencyGraph::new(&x).unwrap();
        let opts = DedoubleOptions::default();
        let r = dedouble_dcj_linear(&x, opts).unwrap();
        assert_eq!(r.c_i + r.m, ag.cycle_count());
        assert_eq!(r.distance, linear_distance(&x, opts).unwrap());
        assert!(r.goal.is_unilinear() && is_dedoubled(&r.goal));
    }

    #[test]
    fn greedy_never_beats_exact() {
        let x = g(FIG);
        let exact = dcj_distance(&x, DedoubleOptions::default()).unwrap();
        let greedy = dcj_distance(&x, DedoubleOptions { mode: PackingMode::Greedy, ..Default::default() }).unwrap();
        assert!(greedy >= exact);
    }
}
