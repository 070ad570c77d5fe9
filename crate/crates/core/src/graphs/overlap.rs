//! Dedoubled overlap graph of a genome made of linear chromosomes.
//!
//! Each marker family is a vertex whose segment spans both copies. Two vertices are linked
//! when their segments overlap without nesting. A vertex is oriented when its copies have
//! opposite signs.

use serde::Serialize;

use crate::classify::is_totally_duplicated;
use crate::error::{Error, Result};
use crate::genome::{Adjacency, Gene, Genome, Paralog, Point, Side};
use crate::ops::Operation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapGraph {
    /// Marker family of each vertex, ascending.
    pub ids: Vec<u32>,
    pub oriented: Vec<bool>,
    /// The two copies form the adjacency `(x x')` or `(x' x)`.
    pub doublet: Vec<bool>,
    adj: Vec<Vec<bool>>,
}

impl OverlapGraph {
    pub fn new(g: &Genome) -> Result<OverlapGraph> {
        if !is_totally_duplicated(g) {
            return Err(Error::Precondition("overlap graph needs a totally duplicated genome".into()));
        }
        if g.circular_count() > 0 {
            return Err(Error::Precondition("overlap graph needs linear chromosomes".into()));
        }
        let pos = g.positions();
        let ids: Vec<u32> = g.duplicated_ids();
        let mut seg = Vec::with_capacity(ids.len());
        let mut oriented = Vec::with_capacity(ids.len());
        let mut doublet = Vec::with_capacity(ids.len());
        for &id in &ids {
            let a = pos[&Gene::new(id, Paralog::First)];
            let b = pos[&Gene::new(id, Paralog::Second)];
            if a.0 != b.0 {
                return Err(Error::Precondition(format!("copies of {id} lie on different chromosomes")));
            }
            let (i, j) = (a.1.min(b.1), a.1.max(b.1));
            let c = &g.chromosomes[a.0];
            let (mi, mj) = (c.markers[i], c.markers[j]);
            seg.push((a.0, i, j));
            oriented.push(mi.sign != mj.sign);
            doublet.push(j == i + 1 && mi.sign == mj.sign);
        }
        let n = ids.len();
        let mut adj = vec![vec![false; n]; n];
        for u in 0..n {
            for v in u + 1..n {
                let (cu, a, b) = seg[u];
                let (cv, c, d) = seg[v];
                let hit = cu == cv && ((a < c && c < b && b < d) || (c < a && a < d && d < b));
                adj[u][v] = hit;
                adj[v][u] = hit;
            }
        }
        Ok(OverlapGraph { ids, oriented, doublet, adj })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertex(&self, id: u32) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.adj[v][w]).collect()
    }

    /// Edges as pairs of marker families.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for u in 0..self.len() {
            for v in u + 1..self.len() {
                if self.adj[u][v] {
                    out.push((self.ids[u], self.ids[v]));
                }
            }
        }
        out
    }

    pub fn oriented_count(&self) -> usize {
        self.oriented.iter().filter(|&&o| o).count()
    }

    /// Graph after a reversal joining the copies of vertex `v`: the closed neighborhood of `v`
    /// is complemented and its orientations flipped. The doublet flag of `v` is set; doublets
    /// formed incidentally are picked up by [`OverlapGraph::mark_doublets`].
    pub fn complemented(&self, v: usize) -> OverlapGraph {
        let mut out = self.clone();
        let mut hood = self.neighbors(v);
        hood.push(v);
        for (k, &a) in hood.iter().enumerate() {
            out.oriented[a] = !self.oriented[a];
            for &b in &hood[k + 1..] {
                out.adj[a][b] = !self.adj[a][b];
                out.adj[b][a] = !self.adj[b][a];
            }
        }
        out.doublet[v] = true;
        out
    }

    /// Set the doublet flags from `g`, which must have the same couples.
    pub fn mark_doublets(&mut self, g: &Genome) {
        let p = g.partners();
        for (k, &id) in self.ids.iter().enumerate() {
            let x = Gene::new(id, Paralog::First);
            self.doublet[k] = p[&x.ext(Side::Right)] == Point::Ext(x.paralog().ext(Side::Left))
                || p[&x.ext(Side::Left)] == Point::Ext(x.paralog().ext(Side::Right));
        }
    }

    /// Number of oriented vertices left after joining the copies of oriented vertex `v`.
    pub fn score(&self, v: usize) -> usize {
        let hood = self.neighbors(v);
        let flipped_on = hood.iter().filter(|&&w| !self.oriented[w]).count();
        let flipped_off = hood.len() - flipped_on + 1;
        self.oriented_count() + flipped_on - flipped_off
    }

    /// Oriented vertex of maximum score, lowest family on ties.
    pub fn best_vertex(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for v in 0..self.len() {
            if !self.oriented[v] {
                continue;
            }
            let s = self.score(v);
            if best.is_none_or(|(bs, _)| s > bs) {
                best = Some((s, v));
            }
        }
        best.map(|(_, v)| v)
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                k += 1;
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Every component holding a non-doublet vertex holds an oriented vertex.
    pub fn is_oriented(&self) -> bool {
        self.components().iter().all(|c| c.iter().all(|&v| self.doublet[v]) || c.iter().any(|&v| self.oriented[v]))
    }
}

/// Reversal that makes the copies of `id` adjacent, as `(x x')` when `first_left` is set and as
/// `(x' x)` otherwise. The copies must lie on the same linear chromosome with opposite signs.
pub fn rev_joining(g: &Genome, id: u32, first_left: bool) -> Result<Operation> {
    let pos = g.positions();
    let x = Gene::new(id, Paralog::First);
    let (Some(&a), Some(&b)) = (pos.get(&x), pos.get(&x.paralog())) else {
        return Err(Error::Precondition(format!("{id} is not duplicated")));
    };
    if a.0 != b.0 || !g.chromosomes[a.0].is_linear() {
        return Err(Error::Precondition(format!("copies of {id} are not on one linear chromosome")));
    }
    let c = &g.chromosomes[a.0];
    let (i, j) = (a.1.min(b.1), a.1.max(b.1));
    if c.markers[i].sign == c.markers[j].sign {
        return Err(Error::Precondition(format!("couple {id} is unoriented")));
    }
    let target = if first_left {
        Adjacency::new(x.ext(Side::Right), x.paralog().ext(Side::Left)).canonical()
    } else {
        Adjacency::new(x.paralog().ext(Side::Right), x.ext(Side::Left)).canonical()
    };
    if Adjacency::between(c.markers[i], -c.markers[j]) == target {
        Operation::reversal_at(g, a.0, i + 1, j + 1)
    } else {
        Operation::reversal_at(g, a.0, i, j)
    }
}
