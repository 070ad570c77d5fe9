//! From a dedoubling scenario to a scenario of breakpoint duplications.
//!
//! Reading a scenario `G -> D` backwards gives `D -> G`. Collapsing the doublets of `D` gives a
//! non-duplicated ancestor `A`. A doublet is materialized by the first operation that cuts it;
//! until then its outer second-copy extremity is read as the matching extremity of the first
//! copy. Doublets that are never cut stay collapsed, so the target is `G` with those couples
//! read as single markers.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Extremity, Gene, Genome, Paralog, Point, Side};
use crate::ops::{Dcj, Duplication, Operation, Scenario};

use super::DedoubleResult;

#[derive(Clone, Debug, Serialize)]
pub struct BdLift {
    pub ancestor: Genome,
    pub scenario: Scenario,
    /// The genome the scenario reaches from the ancestor.
    pub target: Genome,
}

/// Remove the second copy of each listed couple, joining its neighbours.
fn collapse(g: &Genome, ids: &[u32]) -> Result<Genome> {
    let mut h = g.clone();
    for &id in ids {
        let d = Duplication { ext: Gene::new(id, Paralog::First).ext(Side::Right) };
        h = d.undo(&h)?;
    }
    Ok(h)
}

/// The extremity of `x` inside its doublet in `g`.
fn doublet_side(g: &Genome, id: u32) -> Option<Extremity> {
    let x = Gene::new(id, Paralog::First);
    let p = g.partners();
    if p[&x.ext(Side::Right)] == Point::Ext(x.paralog().ext(Side::Left)) {
        Some(x.ext(Side::Right))
    } else if p[&x.ext(Side::Left)] == Point::Ext(x.paralog().ext(Side::Right)) {
        Some(x.ext(Side::Left))
    } else {
        None
    }
}

fn doublet_adjacency(side: Extremity) -> Adjacency {
    Adjacency::new(side, side.paralog().opposite()).canonical()
}

/// Rename the outer extremities of collapsed doublets to their first copy.
fn collapsed(dcj: &Dcj, sides: &BTreeMap<u32, Extremity>, pending: &[u32]) -> Result<Dcj> {
    let point = |p: Point| match p {
        Point::Ext(e) if e.gene().copy == Paralog::Second && pending.contains(&e.gene().id) => {
            Point::Ext(sides[&e.gene().id])
        }
        _ => p,
    };
    let adj = |a: Adjacency| Adjacency(point(a.0), point(a.1));
    Dcj::new(dcj.cut.map(adj), dcj.join.map(adj))
}

/// Turn a dedoubling result into a BD scenario of the same length from `A = D^R`.
pub fn lift_to_bd(r: &DedoubleResult) -> Result<BdLift> {
    let d = r.goal.clone();
    let ids = d.duplicated_ids();
    let mut sides: BTreeMap<u32, Extremity> = BTreeMap::new();
    for &id in &ids {
        let e = doublet_side(&d, id).ok_or_else(|| Error::Precondition(format!("couple {id} is not a doublet")))?;
        sides.insert(id, e);
    }
    let mut pending: Vec<u32> = ids.clone();
    let mut world = d.clone();
    let mut ops = Vec::with_capacity(r.scenario.len());
    for op in r.scenario.ops.iter().rev() {
        let [dcj] = op.dcjs()[..] else {
            return Err(Error::Precondition("only DCJ and reversal scenarios can be lifted".into()));
        };
        let back = dcj.inverse();
        let fresh: Vec<u32> =
            pending.iter().copied().filter(|id| back.cut.contains(&doublet_adjacency(sides[id]))).collect();
        pending.retain(|id| !fresh.contains(id));
        let duplicate = fresh.iter().map(|id| Duplication { ext: sides[id] }).collect();
        let reversal = matches!(op, Operation::Reversal(_));
        ops.push(Operation::Bd { duplicate, dcj: collapsed(&back, &sides, &pending)?, reversal });
        world = op.undo(&world)?;
    }
    let ancestor = collapse(&d, &ids)?;
    let target = collapse(&world, &pending)?;
    Ok(BdLift { ancestor, scenario: Scenario::new(ops), target })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedouble::{dedouble_dcj, dedouble_reversal, DedoubleOptions};

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn replay_reaches_target() {
        for text in ["[ 4 2' -1' -3 -1 2 -4' ] [ 5' -3' 6 5 6' 7 8 8' 7' ]", "[ 1 2 1' 2' ]", "( 1 -2 2' 1' )"] {
            let x = g(text);
            let r = dedouble_dcj(&x, DedoubleOptions::default()).unwrap();
            let lift = lift_to_bd(&r).unwrap();
            assert_eq!(lift.scenario.len(), r.scenario.len());
            assert!(lift.ancestor.duplicated_ids().is_empty());
            let end = lift.scenario.replay(&lift.ancestor).unwrap();
            assert!(end.same_as(&lift.target), "{end} vs {}", lift.target);
            if lift.target.families() == x.families() && lift.target.duplicated_ids().len() == x.families() {
                assert!(end.same_as(&x));
            }
        }
    }

    #[test]
    fn worked_table() {
        let a = g("[ 1 2 3 4 5 ]");
        let d = g("[ 1 1' 2' 2 3' 3 4' 4 5' 5 ]");
        let b = g("[ 1 -4' 2 3' -5' -2' -1' 4 -3 5 ]");
        let mut cur = d.clone();
        let mut forward = Vec::new();
        for (i, j) in [(1, 7), (2, 5), (5, 8), (4, 9)] {
            let op = Operation::reversal_at(&cur, 0, i, j).unwrap();
            cur = op.apply(&cur).unwrap();
            forward.push(op);
        }
        assert!(cur.same_as(&b));
        let dedouble = DedoubleResult {
            distance: 4,
            c_i: 0,
            cycles: 0,
            m: 0,
            mode: crate::dedouble::PackingMode::Exact,
            start: b.clone(),
            scenario: Scenario::new(
                forward.iter().rev().map(|op| Operation::Reversal(op.dcjs()[0].inverse())).collect(),
            ),
            goal: d,
        };
        let lift = lift_to_bd(&dedouble).unwrap();
        assert!(lift.ancestor.same_as(&a));
        let dups: Vec<Vec<u32>> = lift
            .scenario
            .ops
            .iter()
            .map(|op| match op {
                Operation::Bd { duplicate, reversal: true, .. } => duplicate.iter().map(|x| x.ext.gene().id).collect(),
                _ => panic!("not a BD reversal"),
            })
            .collect();
        assert_eq!(dups, vec![vec![1, 4], vec![2], vec![], vec![3, 5]]);
        assert!(lift.scenario.replay(&a).unwrap().same_as(&b));
    }

    #[test]
    fn reversal_scenarios_lift() {
        let b = g("[ 1 -4' 2 3' -5' -2' -1' 4 -3 5 ]");
        let r = dedouble_reversal(&b, DedoubleOptions::default()).unwrap();
        let lift = lift_to_bd(&r).unwrap();
        assert_eq!(lift.scenario.len(), r.distance);
        assert!(lift.scenario.replay(&lift.ancestor).unwrap().same_as(&lift.target));
    }

    #[test]
    fn empty_scenario_keeps_goal() {
        let r = dedouble_dcj(&g("[ 1 1' 2' 2 ]"), DedoubleOptions::default()).unwrap();
        let lift = lift_to_bd(&r).unwrap();
        assert!(lift.scenario.is_empty());
        assert!(lift.ancestor.same_as(&g("[ 1 2 ]")));
    }
}
