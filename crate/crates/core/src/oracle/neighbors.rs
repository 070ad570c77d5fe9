//! Genome-level neighborhoods and scenario reconstruction from a distance function.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Genome, Point};
use crate::ops::{Dcj, Duplication, Operation, Scenario};

use super::Model;

/// Largest genome, in markers, whose neighborhood is enumerated.
pub const MAX_NEIGHBOR_SIZE: usize = 64;

fn cut_pairs(adjs: &[Adjacency]) -> Vec<(Adjacency, Adjacency)> {
    let mut out = Vec::new();
    for i in 0..adjs.len() {
        for j in i + 1..adjs.len() {
            out.push((adjs[i], adjs[j]));
        }
        if !adjs[i].is_empty() {
            out.push((adjs[i], Adjacency::EMPTY));
        }
    }
    out
}

fn both_joins(a: Adjacency, b: Adjacency) -> impl Iterator<Item = Dcj> {
    [Dcj::straight(a, b), Dcj::crossed(a, b)].into_iter().flatten()
}

/// Every DCJ applicable to `g`, including fissions through an empty chromosome.
pub(crate) fn all_dcjs(g: &Genome) -> Vec<Dcj> {
    cut_pairs(&g.adjacencies()).into_iter().flat_map(|(a, b)| both_joins(a, b)).collect()
}

fn dcj_ops(g: &Genome) -> Vec<Operation> {
    all_dcjs(g).into_iter().map(Operation::Dcj).collect()
}

fn reversal_ops(g: &Genome) -> Vec<Operation> {
    let mut out = Vec::new();
    for (c, chrom) in g.chromosomes.iter().enumerate() {
        let k = chrom.len();
        for i in 0..k {
            for j in i + 1..=k {
                if i == 0 && j == k {
                    continue;
                }
                out.extend(Operation::reversal_at(g, c, i, j));
            }
        }
    }
    out
}

fn bi_ops(g: &Genome) -> Vec<Operation> {
    let mut out = Vec::new();
    for (c, chrom) in g.chromosomes.iter().enumerate() {
        if !chrom.is_linear() {
            continue;
        }
        let k = chrom.len();
        for i in 0..k {
            for j in i + 1..=k {
                for m in j..k {
                    for l in m + 1..=k {
                        out.extend(Operation::bi_at(g, c, i, j, m, l));
                    }
                }
            }
        }
    }
    out
}

fn bd_ops(g: &Genome) -> Vec<Operation> {
    let mut out = dcj_ops(g);
    let counts = g.copy_counts();
    let partners = g.partners();
    let single: Vec<_> = partners.keys().copied().filter(|e| counts[&e.id] == 1).collect();
    let adjs = g.adjacencies();
    let owner = |e| Adjacency(Point::Ext(e), partners[&e]).canonical();
    for &e in &single {
        let d = Duplication { ext: e };
        if d.apply(g).is_err() {
            continue;
        }
        let doublet = Adjacency::new(e, e.paralog().opposite()).canonical();
        for &other in adjs.iter().filter(|&&a| a != owner(e)) {
            for dcj in both_joins(doublet, other) {
                out.push(Operation::Bd { duplicate: vec![d], dcj, reversal: false });
            }
        }
    }
    for (i, &e) in single.iter().enumerate() {
        for &f in &single[i + 1..] {
            if e.id == f.id || owner(e) == owner(f) {
                continue;
            }
            let de = Adjacency::new(e, e.paralog().opposite()).canonical();
            let df = Adjacency::new(f, f.paralog().opposite()).canonical();
            for dcj in both_joins(de, df) {
                let duplicate = vec![Duplication { ext: e }, Duplication { ext: f }];
                out.push(Operation::Bd { duplicate, dcj, reversal: false });
            }
        }
    }
    out
}

/// Every distinct genome one operation of `model` away from `g`, with an operation reaching it.
pub fn neighbors(g: &Genome, model: Model) -> Result<Vec<(Operation, Genome)>> {
    if g.size() > MAX_NEIGHBOR_SIZE {
        return Err(Error::CapExceeded(format!("{} markers, cap {MAX_NEIGHBOR_SIZE}", g.size())));
    }
    let ops = match model {
        Model::Dcj => dcj_ops(g),
        Model::Reversal => reversal_ops(g),
        Model::Bi => bi_ops(g),
        Model::BdDcj => bd_ops(g),
    };
    let start = g.canonical();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for op in ops {
        let Ok(h) = op.apply(g) else { continue };
        let h = h.canonical();
        if h != start && seen.insert(h.clone()) {
            out.push((op, h));
        }
    }
    Ok(out)
}

/// Follow neighbors that lower `dist` by one until it reaches zero.
pub fn scenario_from_distance<F>(g: &Genome, model: Model, mut dist: F) -> Result<Scenario>
where
    F: FnMut(&Genome) -> Result<usize>,
{
    let mut cur = g.clone();
    let mut d = dist(&cur)?;
    let mut ops = Vec::with_capacity(d);
    while d > 0 {
        let mut step = None;
        for (op, h) in neighbors(&cur, model)? {
            if dist(&h)? + 1 == d {
                step = Some((op, h));
                break;
            }
        }
        let (op, h) = step.ok_or_else(|| Error::Inconsistent(format!("no neighbor at distance {}", d - 1)))?;
        ops.push(op);
        cur = h;
        d -= 1;
    }
    Ok(Scenario::new(ops))
}
