//! Single tandem halving by block interchange.

use crate::classify::is_1tandem;
use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::graphs::intervals::{interval_type, intervals, mirror_dcj, Interval, IntervalType};
use crate::graphs::natural::natural_graph;
use crate::ops::{Operation, Scenario};
use crate::oracle::{neighbors, Model};
use crate::reduce::reduce;

use super::{dp, require_total, HalvingResult};

fn require_same_signed(g: &Genome) -> Result<()> {
    require_total(g)?;
    if !g.is_unilinear() {
        return Err(Error::Precondition("block interchange halving needs a unilinear genome".into()));
    }
    let signs: std::collections::HashMap<u32, bool> = g.markers().map(|m| (m.id, m.is_plus())).collect();
    if g.markers().any(|m| signs[&m.id] != m.is_plus()) {
        return Err(Error::Precondition("paralogous copies must carry the same sign".into()));
    }
    Ok(())
}

/// `floor((n - C) / 2)` with `C` the number of cycles of the natural graph.
pub fn tandem_bi_distance(g: &Genome) -> Result<usize> {
    require_same_signed(g)?;
    let c = natural_graph(g).census().cycles();
    Ok((g.families() - c) / 2)
}

/// The block interchange made of the mirror DCJs of two compatible intervals.
fn compatible_bi(g: &Genome, ivs: &[Interval]) -> Option<(Operation, Genome)> {
    let d = dp(g);
    let mut firsts: Vec<&Interval> = ivs.iter().filter(|iv| !iv.is_empty()).collect();
    firsts.sort_by_key(|iv| (iv.len(), iv.start));
    for first in firsts {
        if interval_type(g, first).ok()? == IntervalType::Two {
            continue;
        }
        let excision = mirror_dcj(&g.partners(), first).ok()?;
        let mid = excision.apply(g).ok()?;
        for second in ivs.iter().filter(|iv| first.compatible(iv)) {
            let Ok(reintegration) = mirror_dcj(&mid.partners(), second) else { continue };
            let op = Operation::Bi { excision, reintegration };
            if let Ok(h) = op.apply(g) {
                if dp(&h) + 2 == d {
                    return Some((op, h));
                }
            }
        }
    }
    None
}

/// A block interchange found by search on the reduced genome, for when no compatible pair exists.
fn searched_bi(g: &Genome) -> Result<(Operation, Genome)> {
    let (r, map) = reduce(g);
    let d = tandem_bi_distance(&r)?;
    let op = neighbors(&r, Model::Bi)?
        .into_iter()
        .find(|(_, h)| tandem_bi_distance(h).is_ok_and(|e| e + 1 == d))
        .map(|(op, _)| op)
        .ok_or_else(|| Error::Inconsistent(format!("no sorting block interchange from {g}")))?;
    let lifted = map.lift_op(&op);
    let h = lifted.apply(g)?;
    Ok((lifted, h))
}

/// Pairs of sorting DCJs on compatible intervals, then one closing block interchange.
pub fn tandem_bi_scenario(g: &Genome) -> Result<HalvingResult> {
    let distance = tandem_bi_distance(g)?;
    let mut cur = g.clone();
    let mut ops = Vec::with_capacity(distance);
    while !is_1tandem(&cur) {
        let (op, h) = match compatible_bi(&cur, &intervals(&cur)?) {
            Some(step) => step,
            None => searched_bi(&cur)?,
        };
        ops.push(op);
        cur = h;
    }
    if ops.len() != distance {
        return Err(Error::Inconsistent(format!("{} block interchanges for distance {distance}", ops.len())));
    }
    Ok(HalvingResult { distance, scenario: Scenario::new(ops), goal: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halving::tandem_dcj_distance;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let x = g("[ 1' 2' 3 3' 5 4 1 2 4' 5' ]");
        assert_eq!(dp(&x), 4);
        assert_eq!(tandem_bi_distance(&x).unwrap(), 2);
        let r = tandem_bi_scenario(&x).unwrap();
        assert_eq!(r.scenario.len(), 2);
        assert!(is_1tandem(&r.goal));
        let mut cur = x.clone();
        let mut d = tandem_dcj_distance(&cur).unwrap();
        assert_eq!(d, 4);
        for op in &r.scenario.ops {
            let Operation::Bi { excision, reintegration } = op else { panic!("not a block interchange") };
            let mid = excision.apply(&cur).unwrap();
            assert_eq!(mid.chromosomes.len(), 2);
            cur = reintegration.apply(&mid).unwrap();
            let next = tandem_dcj_distance(&cur).unwrap();
            assert_eq!(next + 2, d, "{op}");
            d = next;
        }
        assert_eq!(d, 0);
    }

    #[test]
    fn two_marker_cases() {
        for text in ["[ 1 2 2' 1' ]", "[ 1 1' 2 2' ]"] {
            let x = g(text);
            let r = tandem_bi_scenario(&x).unwrap();
            assert_eq!(r.distance, 1);
            assert_eq!(r.scenario.len(), 1);
            assert!(is_1tandem(&r.goal));
        }
    }

    #[test]
    fn tandem_input() {
        let x = g("[ 1 2 1' 2' ]");
        assert_eq!(tandem_bi_distance(&x).unwrap(), 0);
        assert!(tandem_bi_scenario(&x).unwrap().scenario.is_empty());
    }

    #[test]
    fn rejects_mixed_signs() {
        assert!(tandem_bi_distance(&g("[ 1 -1' ]")).is_err());
    }
}
