//! Dedoubling an oriented single linear chromosome by reversals.

use crate::error::{Error, Result};
use crate::genome::Genome;
use crate::graphs::adjacency::AdjacencyGraph;
use crate::graphs::overlap::{rev_joining, OverlapGraph};
use crate::graphs::EdgeKind;
use crate::ops::Operation;

use super::{finish, has_doublet, labels, merge_unchosen, prepare, Chosen, DedoubleOptions, DedoubleResult, Prepared};

/// One reversal of the sorting loop together with the overlap graph it leaves.
#[derive(Clone, Debug)]
pub struct RevStep {
    pub op: Operation,
    pub overlap: OverlapGraph,
}

/// Merge the unchosen cycles, then repeatedly join the copies of a maximum-score oriented
/// couple, splitting its chosen cycle when it has one. Unoriented inputs are refused.
pub fn dedouble_reversal(g: &Genome, opts: DedoubleOptions) -> Result<DedoubleResult> {
    dedouble_reversal_steps(g, opts).map(|(r, _)| r)
}

/// As [`dedouble_reversal`], also returning the overlap graph maintained after each sorting
/// reversal by local complementation.
pub fn dedouble_reversal_steps(g: &Genome, opts: DedoubleOptions) -> Result<(DedoubleResult, Vec<RevStep>)> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("reversal dedoubling needs a unilinear genome".into()));
    }
    let Prepared { g, ag, packing } = prepare(g, opts)?;
    if !OverlapGraph::new(&g)?.is_oriented() {
        return Err(Error::Unoriented("the overlap graph has an unoriented component".into()));
    }
    let mut chosen = Chosen { sets: packing.chosen.iter().map(|&el| labels(&ag, el)).collect() };
    let m = ag.cycle_count() - packing.size;
    let (mut cur, mut ops) = merge_unchosen(&g, &chosen, true)?;
    let mut overlap = OverlapGraph::new(&cur)?;
    let mut steps = Vec::new();
    while cur.duplicated_ids().into_iter().any(|id| !has_doublet(&cur, id)) {
        let v = overlap.best_vertex().ok_or_else(|| Error::Unoriented("no oriented couple left".into()))?;
        let id = overlap.ids[v];
        let (label, next) = chosen
            .moves(id)
            .into_iter()
            .next()
            .ok_or_else(|| Error::Inconsistent(format!("no sorting reversal for couple {id}")))?;
        let op = rev_joining(&cur, id, label.1 == EdgeKind::Forward)?;
        cur = op.apply(&cur)?;
        overlap = overlap.complemented(v);
        overlap.mark_doublets(&cur);
        chosen = next;
        ops.push(op.clone());
        steps.push(RevStep { op, overlap: overlap.clone() });
    }
    let cycles = AdjacencyGraph::new(&g)?.cycle_count();
    Ok((finish(g, cycles, packing, m, ops, cur)?, steps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::is_dedoubled;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn printed_reversal() {
        let x = g("[ 1 3 1' -2' -4 -3' 2 -4' ]");
        let op = rev_joining(&x, 3, true).unwrap();
        assert!(op.apply(&x).unwrap().same_as(&g("[ 1 3 3' 4 2' -1' 2 -4' ]")));
        let op = rev_joining(&x, 3, false).unwrap();
        assert!(op.apply(&x).unwrap().same_as(&g("[ 1 4 2' -1' -3 -3' 2 -4' ]")));
    }

    #[test]
    fn oriented_genome_sorts() {
        let x = g("[ 1 3 1' -2' -4 -3' 2 -4' ]");
        let (r, steps) = dedouble_reversal_steps(&x, DedoubleOptions::default()).unwrap();
        assert!(is_dedoubled(&r.goal) && r.goal.is_unilinear());
        assert_eq!(r.distance, 4 + r.cycles - 2 * r.c_i);
        let mut cur = x;
        let merges = r.scenario.len() - steps.len();
        for op in &r.scenario.ops[..merges] {
            cur = op.apply(&cur).unwrap();
        }
        for s in &steps {
            cur = s.op.apply(&cur).unwrap();
            assert_eq!(s.overlap, OverlapGraph::new(&cur).unwrap());
        }
    }

    #[test]
    fn unoriented_is_refused() {
        let err = dedouble_reversal(&g("[ 1 2 1' 2' ]"), DedoubleOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Unoriented(_)));
        assert!(err.is_refusal());
    }
}
