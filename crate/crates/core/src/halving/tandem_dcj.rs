//! Single tandem halving by DCJ.
//!
//! Circularizing a unilinear genome turns 1-tandem targets into unicircular perfectly duplicated
//! ones. An optimal perfectly duplicated target is shapeshifted toward one chromosome, sorted to
//! by DCJ, and the scenario is replayed on the linear genome by tracking which adjacency of the
//! circular genome stands for the two telomeres.

use serde::Serialize;

use crate::classic::dcj_sort;
use crate::classify::{is_1tandem, is_perfectly_duplicated};
use crate::error::{Error, Result};
use crate::genome::{Adjacency, Genome, Point};
use crate::graphs::natural::natural_graph;
use crate::graphs::Census;
use crate::ops::{Dcj, Operation, Scenario};

use super::shapeshift::{shapeshift, ShapeState, Shift};
use super::{halving_scenario, require_total, HalvingResult};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TandemDcjResult {
    pub result: HalvingResult,
    /// Census of the natural graph of the input.
    pub census: Census,
    /// Roster of the first optimal perfectly duplicated genome found for the circularized input.
    pub shape: ShapeState,
    /// One extra operation is needed beyond the circular halving distance.
    pub extra: bool,
    pub shifts: Vec<Shift>,
}

fn require_unilinear(g: &Genome) -> Result<()> {
    require_total(g)?;
    if !g.is_unilinear() {
        return Err(Error::Precondition("tandem halving needs a unilinear genome".into()));
    }
    Ok(())
}

struct Plan {
    gc: Genome,
    census: Census,
    shape: ShapeState,
    extra: bool,
}

fn plan(g: &Genome) -> Result<Plan> {
    require_unilinear(g)?;
    let gc = g.circularize()?;
    let census = natural_graph(g).census();
    let h = halving_scenario(&gc)?.goal;
    let shape = ShapeState::of(&h);
    let odd_c = natural_graph(&gc).census().oc;
    let extra = shape.doubled.is_multiple_of(2) && odd_c == 0;
    Ok(Plan { gc, census, shape, extra })
}

/// `n - EC - EP + f`, where `f` is one when the circularized genome has no odd cycle and its
/// optimal perfectly duplicated genomes have an even number of doubled chromosomes.
pub fn tandem_dcj_distance(g: &Genome) -> Result<usize> {
    let p = plan(g)?;
    Ok(g.families() - p.census.ec - p.census.ep + p.extra as usize)
}

/// Merge two paralogous single circles into one doubled circle.
fn fuse(h: &Genome) -> Result<Genome> {
    let c = &h.chromosomes[0];
    let a = c.adjacencies()[0];
    let m = a.mirror();
    let dcj = Dcj::new([a, m], [Adjacency(a.0, m.1), Adjacency(m.0, a.1)])?;
    dcj.apply(h)
}

/// Replay circular DCJs on the linear genome; `theta` is the adjacency standing for the telomeres.
fn linearize(g: &Genome, mut theta: Adjacency, circular: &Scenario) -> Result<Scenario> {
    let mut ops = Vec::with_capacity(circular.len());
    for op in &circular.ops {
        let Operation::Dcj(d) = op else {
            return Err(Error::Inconsistent("expected a DCJ".into()));
        };
        if !d.cut.contains(&theta) {
            ops.push(Operation::Dcj(*d));
            continue;
        }
        let other = if d.cut[0] == theta { d.cut[1] } else { d.cut[0] };
        let (s, t) = (theta.0, theta.1);
        let (j1, j2) = if d.join[0].contains(s) { (d.join[0], d.join[1]) } else { (d.join[1], d.join[0]) };
        let v = j1.other(s);
        let w = other.other(v);
        let lin = Dcj::new([Adjacency(s, Point::Tel), other], [j1, Adjacency(w, Point::Tel)])?;
        ops.push(Operation::Dcj(lin));
        debug_assert!(j2.contains(t) && j2.contains(w));
        theta = j2;
    }
    let scen = Scenario::new(ops);
    scen.replay(g)?;
    Ok(scen)
}

pub fn tandem_dcj_scenario(g: &Genome) -> Result<TandemDcjResult> {
    let p = plan(g)?;
    let distance = g.families() - p.census.ec - p.census.ep + p.extra as usize;
    let h = halving_scenario(&p.gc)?.goal;
    let (mut target, shifts) = shapeshift(&p.gc, &h)?;
    if target.chromosomes.len() == 2 {
        target = fuse(&target)?;
    }
    if target.chromosomes.len() != 1 || !is_perfectly_duplicated(&target) {
        return Err(Error::Inconsistent(format!("shapeshifting ended at {target}")));
    }
    let (d, circular) = dcj_sort(&p.gc, &target)?;
    if d != distance {
        return Err(Error::Inconsistent(format!("sorted in {d} DCJs, expected {distance}")));
    }
    let s = &g.chromosomes[0].markers;
    let theta = Adjacency::new(s[s.len() - 1].tail(), s[0].head()).canonical();
    let scenario = linearize(g, theta, &circular)?;
    let goal = scenario.replay(g)?;
    if !is_1tandem(&goal) {
        return Err(Error::Inconsistent(format!("scenario ended at {goal}")));
    }
    Ok(TandemDcjResult {
        result: HalvingResult { distance, scenario, goal },
        census: p.census,
        shape: p.shape,
        extra: p.extra,
        shifts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn natural_graph_example() {
        let x = g("[ 1 -4 5 2' -3 2 1' 4' 5' 3' ]");
        let c = natural_graph(&x).census();
        assert_eq!((c.op, c.ep, c.oc, c.ec), (1, 0, 1, 1));
        assert_eq!(tandem_dcj_distance(&x).unwrap(), 4);
        let r = tandem_dcj_scenario(&x).unwrap();
        assert_eq!(r.result.scenario.len(), 4);
        assert!(is_1tandem(&r.result.goal));
    }

    #[test]
    fn tandem_input() {
        let x = g("[ 1 -2 3 1' -2' 3' ]");
        assert_eq!(tandem_dcj_distance(&x).unwrap(), 0);
        assert!(tandem_dcj_scenario(&x).unwrap().result.scenario.is_empty());
    }

    #[test]
    fn needs_unilinear() {
        assert!(tandem_dcj_distance(&g("[ 1 1' ] ( 2 2' )")).is_err());
    }
}
