//! Disrupted single tandem halving: a greedy heuristic with lower and upper bounds.
//!
//! Non-duplicated markers split the duplicated content into segments. The gathering phase joins
//! segments with DCJs cutting only path endpoints of the natural graph, favouring those that keep
//! the lower bound tight. The tandem phase then runs single tandem halving on the gathered run.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::classify::is_gathered_tandem;
use crate::error::{Error, Result};
use crate::genome::{Adjacency, Genome, Point};
use crate::graphs::natural::natural_graph;
use crate::graphs::Census;
use crate::ops::{Dcj, Operation, Scenario};

use super::tandem_dcj::tandem_dcj_scenario;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DisruptedBounds {
    pub lower: usize,
    pub upper: usize,
    pub achieved: usize,
    /// Even cycles created while gathering.
    pub c_h: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DisruptedResult {
    pub bounds: DisruptedBounds,
    pub scenario: Scenario,
    pub goal: Genome,
    /// Operations spent gathering.
    pub gathering: usize,
}

/// Census of the natural graph restricted to components holding an edge.
fn dup_census(g: &Genome) -> Census {
    let ng = natural_graph(g);
    let mut c = Census::default();
    for comp in ng.components.iter().filter(|c| !c.is_empty()) {
        match (comp.cycle, comp.is_even()) {
            (true, true) => c.ec += 1,
            (true, false) => c.oc += 1,
            (false, true) => c.ep += 1,
            (false, false) => c.op += 1,
        }
    }
    c
}

fn lower_bound(n: usize, c: &Census) -> usize {
    (n + c.op.div_ceil(2)).saturating_sub(c.ec + 1)
}

/// Maximal runs of duplicated markers, over all chromosomes.
fn segments(g: &Genome, dup: &dyn Fn(u32) -> bool) -> usize {
    let mut count = 0;
    for c in &g.chromosomes {
        let k = c.len();
        let flags: Vec<bool> = c.markers.iter().map(|m| dup(m.id)).collect();
        let prev = |i: usize| if i > 0 { flags[i - 1] } else { !c.is_linear() && flags[k - 1] };
        let starts = (0..k).filter(|&i| flags[i] && !prev(i)).count();
        count += if starts == 0 && k > 0 && flags[0] { 1 } else { starts };
    }
    count
}

/// Duplicated markers all lie on one linear chromosome.
fn dup_on_one_line(g: &Genome, dup: &dyn Fn(u32) -> bool) -> bool {
    let holders: Vec<_> = g.chromosomes.iter().filter(|c| c.markers.iter().any(|m| dup(m.id))).collect();
    holders.len() == 1 && holders[0].is_linear()
}

fn endpoint_adjacencies(g: &Genome, dup: &dyn Fn(u32) -> bool) -> Vec<Adjacency> {
    let is_dup = |p: Point| p.ext().is_some_and(|e| dup(e.id));
    g.adjacencies().into_iter().filter(|a| is_dup(a.0) != is_dup(a.1)).collect()
}

struct Gathered {
    ops: Vec<Operation>,
    genome: Genome,
}

fn gather(g: &Genome, n: usize, dup: &dyn Fn(u32) -> bool) -> Result<Gathered> {
    let mut cur = g.clone();
    let mut ops = Vec::new();
    while segments(&cur, dup) > 1 {
        let segs = segments(&cur, dup);
        let ends = endpoint_adjacencies(&cur, dup);
        let mut best: Option<(usize, Dcj, Genome)> = None;
        for i in 0..ends.len() {
            for j in i + 1..ends.len() {
                for dcj in [Dcj::straight(ends[i], ends[j]), Dcj::crossed(ends[i], ends[j])].into_iter().flatten() {
                    let Ok(h) = dcj.apply(&cur) else { continue };
                    if segments(&h, dup) + 1 != segs || !dup_on_one_line(&h, dup) {
                        continue;
                    }
                    let lb = lower_bound(n, &dup_census(&h));
                    if best.as_ref().is_none_or(|b| lb < b.0) {
                        best = Some((lb, dcj, h));
                    }
                }
            }
        }
        let (_, dcj, h) = best.ok_or_else(|| Error::Inconsistent("no gathering operation".into()))?;
        ops.push(Operation::Dcj(dcj));
        cur = h;
    }
    Ok(Gathered { ops, genome: cur })
}

/// Run single tandem halving on the duplicated run and replay it in place.
fn tandem_phase(g: &Genome, dup: &dyn Fn(u32) -> bool) -> Result<Vec<Operation>> {
    let line = g.chromosomes.iter().find(|c| c.markers.iter().any(|m| dup(m.id))).expect("gathered run");
    let idx: Vec<usize> = (0..line.len()).filter(|&i| dup(line.markers[i].id)).collect();
    let (a, b) = (idx[0], idx[idx.len() - 1]);
    let core = Genome::new(vec![crate::genome::Chromosome::linear(line.markers[a..=b].to_vec())])?;
    let left = line.gap(a).0;
    let right = line.gap(b + 1).1;
    let mut flank: HashMap<Point, Point> = HashMap::new();
    flank.insert(Point::Ext(line.markers[a].head()), left);
    flank.insert(Point::Ext(line.markers[b].tail()), right);
    let r = tandem_dcj_scenario(&core)?;
    let mut out = Vec::with_capacity(r.result.scenario.len());
    for op in &r.result.scenario.ops {
        let Operation::Dcj(d) = op else {
            return Err(Error::Inconsistent("expected a DCJ".into()));
        };
        let tel_cuts: Vec<Adjacency> = d.cut.iter().copied().filter(|c| c.is_telomeric()).collect();
        match tel_cuts.as_slice() {
            [] => out.push(Operation::Dcj(*d)),
            [c] => {
                let s = if c.0.is_tel() { c.1 } else { c.0 };
                let f = flank.remove(&s).ok_or_else(|| Error::Inconsistent(format!("no flank for {s}")))?;
                let swap = |x: Adjacency| -> Adjacency {
                    if x.is_telomeric() {
                        Adjacency(if x.0.is_tel() { x.1 } else { x.0 }, f).canonical()
                    } else {
                        x
                    }
                };
                for j in d.join {
                    if j.is_telomeric() {
                        flank.insert(if j.0.is_tel() { j.1 } else { j.0 }, f);
                    }
                }
                out.push(Operation::Dcj(Dcj::new(d.cut.map(swap), d.join.map(swap))?));
            }
            _ => return Err(Error::Inconsistent("tandem step cuts both telomeres".into())),
        }
    }
    Ok(out)
}

/// Gather the duplicated markers, then halve them into a tandem.
pub fn disrupted_tandem_heuristic(g: &Genome) -> Result<DisruptedResult> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("the disrupted heuristic needs a unilinear genome".into()));
    }
    let counts: BTreeMap<u32, usize> = g.copy_counts();
    let dup = |id: u32| counts.get(&id) == Some(&2);
    let n = counts.values().filter(|&&c| c == 2).count();
    if n == 0 {
        let bounds = DisruptedBounds::default();
        return Ok(DisruptedResult { bounds, scenario: Scenario::default(), goal: g.clone(), gathering: 0 });
    }
    let start = dup_census(g);
    let lower = lower_bound(n, &start);
    let gathered = gather(g, n, &dup)?;
    let c_h = dup_census(&gathered.genome).ec.saturating_sub(start.ec);
    let upper = (n + start.op + start.ep).saturating_sub(start.ec + 1 + c_h);
    let mut ops = gathered.ops;
    let gathering = ops.len();
    ops.extend(tandem_phase(&gathered.genome, &dup)?);
    let scenario = Scenario::new(ops);
    let goal = scenario.replay(g)?;
    if !is_gathered_tandem(&goal) {
        return Err(Error::Inconsistent(format!("heuristic ended at {goal}")));
    }
    let bounds = DisruptedBounds { lower, upper, achieved: scenario.len(), c_h };
    Ok(DisruptedResult { bounds, scenario, goal, gathering })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn no_breaks_matches_tandem_halving() {
        let x = g("[ 1 -4 5 2' -3 2 1' 4' 5' 3' ]");
        let r = disrupted_tandem_heuristic(&x).unwrap();
        assert_eq!(r.gathering, 0);
        assert_eq!(r.bounds.achieved, crate::halving::tandem_dcj_distance(&x).unwrap());
    }

    #[test]
    fn one_break() {
        let x = g("[ 1 2 9 1' 2' ]");
        let r = disrupted_tandem_heuristic(&x).unwrap();
        assert_eq!(r.gathering, 1);
        assert!(r.bounds.lower <= r.bounds.achieved && r.bounds.achieved <= r.bounds.upper);
        assert!(is_gathered_tandem(&r.goal));
    }

    #[test]
    fn no_duplicates() {
        let r = disrupted_tandem_heuristic(&g("[ 1 2 3 ]")).unwrap();
        assert_eq!(r.bounds.achieved, 0);
    }

    #[test]
    fn segment_count() {
        let dup = |id: u32| id < 5;
        assert_eq!(segments(&g("[ 1 2 9 1' 2' ]"), &dup), 2);
        assert_eq!(segments(&g("[ 9 1 2 1' 2' 8 ]"), &dup), 1);
        assert_eq!(segments(&g("( 1 9 2 8 )"), &dup), 2);
        assert_eq!(segments(&g("( 1 2 1' 2' )"), &dup), 1);
        assert_eq!(segments(&g("( 1 2 9 1' 2' )"), &dup), 1);
    }
}
