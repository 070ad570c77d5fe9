//! Intervals of a unilinear totally duplicated genome.
//!
//! For an inner adjacency `(u v)`, the mirror DCJ joins `u'` to `v'` and excises the segment
//! between them as a circle. That segment is the interval of `(u v)`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Extremity, Gene, Genome, Marker, Point};
use crate::ops::Dcj;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Interval {
    /// Gap of `(u v)`: `u` sits at `gap - 1` and `v` at `gap`.
    pub gap: usize,
    pub u: Marker,
    pub v: Marker,
    /// Inclusive marker range; meaningless when `empty`.
    pub start: usize,
    pub end: usize,
    /// `(u v)` is a double adjacency.
    pub empty: bool,
}

impl Interval {
    pub fn len(&self) -> usize {
        if self.empty {
            0
        } else {
            self.end + 1 - self.start
        }
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    pub fn contains(&self, other: &Interval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    /// Intersecting, and neither contains the other.
    pub fn overlaps(&self, other: &Interval) -> bool {
        if self.empty || other.empty {
            return false;
        }
        let meet = self.start <= other.end && other.start <= self.end;
        meet && !self.contains(other) && !other.contains(self)
    }

    /// Overlapping, and the second DCJ does not undo the cycle made by the first.
    pub fn compatible(&self, other: &Interval) -> bool {
        self.overlaps(other) && other.u.gene() != self.u.gene().paralog() && other.v.gene() != self.v.gene().paralog()
    }
}

/// Outcome of excising an interval, by where the paralogs of each side's adjacencies lie.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntervalType {
    /// Every circular adjacency has its paralogs on the line and conversely.
    One,
    /// Every adjacency keeps its paralogs on its own side.
    Two,
    /// The circle can be reintegrated by a sorting DCJ.
    Other,
}

fn unilinear(g: &Genome) -> Result<&[Marker]> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("intervals need a unilinear genome".into()));
    }
    Ok(&g.chromosomes[0].markers)
}

/// The `2n - 1` intervals of the inner adjacencies, left to right.
pub fn intervals(g: &Genome) -> Result<Vec<Interval>> {
    let s = unilinear(g)?;
    let pos: HashMap<Gene, usize> = s.iter().enumerate().map(|(i, m)| (m.gene(), i)).collect();
    let mut out = Vec::with_capacity(s.len().saturating_sub(1));
    for gap in 1..s.len() {
        let (u, v) = (s[gap - 1], s[gap]);
        let (Some(&pu), Some(&pv)) = (pos.get(&u.gene().paralog()), pos.get(&v.gene().paralog())) else {
            return Err(Error::Precondition("intervals need a totally duplicated genome".into()));
        };
        let (start, end, empty) = if pu < pv { (pu + 1, pv.saturating_sub(1), pu + 1 == pv) } else { (pv, pu, false) };
        out.push(Interval { gap, u, v, start, end, empty });
    }
    Ok(out)
}

/// The DCJ that creates the mirror of `(u v)`.
pub fn mirror_dcj(partners: &HashMap<Extremity, Point>, iv: &Interval) -> Result<Dcj> {
    let a = Adjacency::between(iv.u, iv.v).mirror();
    let (p, q) = (iv.u.tail().paralog(), iv.v.head().paralog());
    debug_assert!(a.contains(Point::Ext(p)) && a.contains(Point::Ext(q)));
    Dcj::joining(partners, Point::Ext(p), Point::Ext(q))
}

pub fn interval_type(g: &Genome, iv: &Interval) -> Result<IntervalType> {
    if iv.empty {
        return Ok(IntervalType::Other);
    }
    let a = mirror_dcj(&g.partners(), iv)?.apply(g)?;
    let on_circle: HashMap<Gene, bool> =
        a.chromosomes.iter().flat_map(|c| c.markers.iter().map(move |m| (m.gene(), !c.is_linear()))).collect();
    let (mut one, mut two) = (true, true);
    for c in &a.chromosomes {
        for adj in c.adjacencies() {
            if adj.is_telomeric() {
                continue;
            }
            let here = !c.is_linear();
            for p in adj.points() {
                let there = on_circle[&p.ext().expect("inner adjacency").gene().paralog()];
                if there == here {
                    one = false;
                } else {
                    two = false;
                }
            }
        }
    }
    Ok(if two {
        IntervalType::Two
    } else if one {
        IntervalType::One
    } else {
        IntervalType::Other
    })
}
