//! Reshaping an optimal perfectly duplicated genome without losing optimality.
//!
//! A shapeshifter is an adjacency `(x y)` whose markers lie on different chromosomes of the
//! current target `H` and that some optimal halving scenario can build. Building it and its
//! mirror in `H` merges or regroups chromosomes while keeping `H` optimal.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::classic::dcj_distance;
use crate::classify::is_perfectly_duplicated;
use crate::error::{Error, Result};
use crate::genome::{Adjacency, Gene, Genome, Point};
use crate::graphs::natural::natural_graph;
use crate::ops::Dcj;

/// Chromosome roster of a perfectly duplicated genome.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ShapeState {
    /// Chromosomes holding both copies of their markers.
    pub doubled: usize,
    /// Chromosomes holding one copy, each paired with a paralog chromosome.
    pub single: usize,
}

impl ShapeState {
    pub fn of(h: &Genome) -> ShapeState {
        let mut s = ShapeState::default();
        for c in &h.chromosomes {
            let ids: HashSet<u32> = c.markers.iter().map(|m| m.id).collect();
            if ids.len() < c.len() {
                s.doubled += 1;
            } else {
                s.single += 1;
            }
        }
        s
    }

    pub fn chromosomes(&self) -> usize {
        self.doubled + self.single
    }

    pub fn parity(&self) -> usize {
        self.doubled % 2
    }
}

/// Rewriting rules on chromosome rosters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    /// 2 single + doubled -> doubled.
    One,
    /// 2 doubled -> 2 single.
    Two,
    /// 4 single -> 2 single.
    ThreeA,
    /// 2 single -> 2 doubled.
    ThreeB,
    /// 2 single -> 2 single.
    ThreeC,
    /// 2 single -> doubled.
    ThreeD,
}

impl Rule {
    pub fn apply(self, s: ShapeState) -> Option<ShapeState> {
        let (d, c) = (s.doubled, s.single);
        let (d, c) = match self {
            Rule::One if c >= 2 && d >= 1 => (d, c - 2),
            Rule::Two if d >= 2 => (d - 2, c + 2),
            Rule::ThreeA if c >= 4 => (d, c - 2),
            Rule::ThreeB if c >= 2 => (d + 2, c - 2),
            Rule::ThreeC if c >= 2 => (d, c),
            Rule::ThreeD if c >= 2 => (d + 1, c - 2),
            _ => return None,
        };
        Some(ShapeState { doubled: d, single: c })
    }

    /// The rule matching a step, from the kinds of the two chromosomes touched and the rosters.
    pub fn classify(x_doubled: bool, y_doubled: bool, before: ShapeState, after: ShapeState) -> Rule {
        match (x_doubled, y_doubled) {
            (true, true) => Rule::Two,
            (true, false) | (false, true) => Rule::One,
            (false, false) => match (after.doubled as isize - before.doubled as isize, after.single < before.single) {
                (2, _) => Rule::ThreeB,
                (1, _) => Rule::ThreeD,
                (_, true) => Rule::ThreeA,
                _ => Rule::ThreeC,
            },
        }
    }
}

/// One applied shapeshifter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shift {
    pub adjacency: Adjacency,
    pub rule: Rule,
    pub before: ShapeState,
    pub after: ShapeState,
}

fn chromosome_of(h: &Genome) -> HashMap<Gene, usize> {
    h.chromosome_of()
}

fn candidates(gc: &Genome, h: &Genome) -> Vec<Adjacency> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut push = |a: Adjacency| {
        let a = a.canonical();
        if !a.is_telomeric() && seen.insert(a) {
            out.push(a);
        }
    };
    for a in gc.adjacencies() {
        push(a);
        push(a.mirror());
    }
    for a in gc.adjacencies().into_iter().chain(h.adjacencies()) {
        push(Adjacency(a.0, a.1.paralog()));
        push(Adjacency(a.0.paralog(), a.1));
    }
    let ng = natural_graph(gc);
    let odd: Vec<Vec<Point>> = ng
        .cycles()
        .filter(|c| !c.is_even())
        .map(|c| c.vertices.iter().flat_map(|&v| ng.vertices[v].points()).collect())
        .collect();
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            for &p in &odd[i] {
                for &q in &odd[j] {
                    push(Adjacency(p, q));
                }
            }
        }
    }
    out
}

/// Build `a` and its mirror in `h`.
fn build(h: &Genome, a: Adjacency) -> Option<(Vec<Dcj>, Genome)> {
    let first = Dcj::joining(&h.partners(), a.0, a.1).ok()?;
    let h1 = first.apply(h).ok()?;
    let m = a.mirror();
    if h1.has_adjacency(m) {
        return Some((vec![first], h1));
    }
    let second = Dcj::joining(&h1.partners(), m.0, m.1).ok()?;
    let h2 = second.apply(&h1).ok()?;
    Some((vec![first, second], h2))
}

/// What the next shapeshifter must achieve.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Want {
    /// Fewer chromosomes, keeping the doubled parity.
    Shrink,
    /// Fewer chromosomes by any rule.
    ShrinkAny,
    /// Two doubled chromosomes traded for two single ones.
    Split,
}

fn step(gc: &Genome, h: &Genome, dpc: usize, want: Want) -> Option<(Shift, Genome)> {
    let before = ShapeState::of(h);
    let chrom = chromosome_of(h);
    let doubled: Vec<bool> =
        h.chromosomes.iter().map(|c| c.markers.iter().map(|m| m.id).collect::<HashSet<_>>().len() < c.len()).collect();
    for a in candidates(gc, h) {
        let (Some(x), Some(y)) = (a.0.ext(), a.1.ext()) else { continue };
        let (cx, cy) = (chrom[&x.gene()], chrom[&y.gene()]);
        if cx == cy {
            continue;
        }
        let Some((_, h2)) = build(h, a) else { continue };
        let after = ShapeState::of(&h2);
        let ok = match want {
            Want::Shrink => after.chromosomes() < before.chromosomes() && after.parity() == before.parity(),
            Want::ShrinkAny => after.chromosomes() < before.chromosomes(),
            Want::Split => after.doubled + 2 == before.doubled && after.single == before.single + 2,
        };
        if !ok || !is_perfectly_duplicated(&h2) || dcj_distance(gc, &h2).ok()? != dpc {
            continue;
        }
        let rule = Rule::classify(doubled[cx], doubled[cy], before, after);
        return Some((Shift { adjacency: a, rule, before, after }, h2));
    }
    None
}

/// Shapeshift `h`, an optimal perfectly duplicated genome for the unicircular `gc`, down to one
/// doubled chromosome, or to two single chromosomes when the doubled parity forbids it.
pub fn shapeshift(gc: &Genome, h: &Genome) -> Result<(Genome, Vec<Shift>)> {
    let dpc = dcj_distance(gc, h)?;
    let odd = natural_graph(gc).census().oc > 0;
    let mut cur = h.clone();
    let mut shifts = Vec::new();
    loop {
        let s = ShapeState::of(&cur);
        let wants: &[Want] = match (s.chromosomes(), s.doubled) {
            (1, _) => break,
            (2, 2) => &[Want::Split],
            (2, _) if odd => &[Want::ShrinkAny],
            (2, _) => break,
            _ => &[Want::Shrink, Want::ShrinkAny, Want::Split],
        };
        let found = wants.iter().find_map(|&w| step(gc, &cur, dpc, w));
        let (shift, next) = found.ok_or_else(|| Error::Inconsistent(format!("no shapeshifter from {s:?}")))?;
        shifts.push(shift);
        cur = next;
    }
    Ok((cur, shifts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_under_rules() {
        let s = ShapeState { doubled: 3, single: 4 };
        for rule in [Rule::One, Rule::Two, Rule::ThreeA, Rule::ThreeB, Rule::ThreeC] {
            assert_eq!(rule.apply(s).unwrap().parity(), s.parity());
        }
        assert_ne!(Rule::ThreeD.apply(s).unwrap().parity(), s.parity());
        assert_eq!(Rule::One.apply(ShapeState { doubled: 0, single: 2 }), None);
    }

    #[test]
    fn roster_of_genome() {
        let h: Genome = "( 1 2 1' 2' ) ( 3 4 ) ( 3' 4' )".parse().unwrap();
        assert_eq!(ShapeState::of(&h), ShapeState { doubled: 1, single: 2 });
    }
}
