//! Classification predicates for duplicated genomes.

use std::collections::HashSet;

use serde::Serialize;

use crate::genome::{Adjacency, Genome, Paralog, Point, Side};
use crate::reduce::reduce;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Classes {
    pub non_duplicated: bool,
    pub duplicated: bool,
    pub totally_duplicated: bool,
    pub dedoubled: bool,
    pub loosely_dedoubled: bool,
    pub perfectly_duplicated: bool,
    pub k_tandem: Option<usize>,
}

impl Classes {
    pub fn flags(&self) -> Vec<String> {
        let mut out = Vec::new();
        let named = [
            (self.non_duplicated, "non_duplicated"),
            (self.duplicated, "duplicated"),
            (self.totally_duplicated, "totally_duplicated"),
            (self.dedoubled, "dedoubled"),
            (self.loosely_dedoubled, "loosely_dedoubled"),
            (self.perfectly_duplicated, "perfectly_duplicated"),
        ];
        for (on, name) in named {
            if on {
                out.push(name.to_string());
            }
        }
        if let Some(k) = self.k_tandem {
            out.push(format!("k_tandem({k})"));
        }
        out
    }
}

pub fn classify(g: &Genome) -> Classes {
    Classes {
        non_duplicated: is_non_duplicated(g),
        duplicated: is_duplicated(g),
        totally_duplicated: is_totally_duplicated(g),
        dedoubled: is_dedoubled(g),
        loosely_dedoubled: is_loosely_dedoubled(g),
        perfectly_duplicated: is_perfectly_duplicated(g),
        k_tandem: k_tandem(g),
    }
}

pub fn is_non_duplicated(g: &Genome) -> bool {
    g.copy_counts().values().all(|&c| c == 1)
}

/// At least one marker has both copies.
pub fn is_duplicated(g: &Genome) -> bool {
    g.copy_counts().values().any(|&c| c == 2)
}

pub fn is_totally_duplicated(g: &Genome) -> bool {
    let counts = g.copy_counts();
    !counts.is_empty() && counts.values().all(|&c| c == 2)
}

/// The mirror of the adjacency is present and it is not of the form `(x -x')`.
pub fn is_double_adjacency(set: &HashSet<Adjacency>, a: Adjacency) -> bool {
    !a.is_self_mirror() && !a.is_empty() && set.contains(&a.mirror())
}

pub fn is_perfectly_duplicated(g: &Genome) -> bool {
    if !is_totally_duplicated(g) {
        return false;
    }
    let adjs: HashSet<Adjacency> = g.adjacencies().into_iter().collect();
    adjs.iter().all(|&a| is_double_adjacency(&adjs, a))
}

/// Every marker sits next to its paralog as `(x x')` or `(x' x)`.
pub fn is_dedoubled(g: &Genome) -> bool {
    if !is_totally_duplicated(g) {
        return false;
    }
    let partners = g.partners();
    g.markers().filter(|m| m.copy == Paralog::First).all(|m| {
        let x = m.gene();
        let xr = x.ext(Side::Right);
        let xl = x.ext(Side::Left);
        partners[&xr] == Point::Ext(xl.paralog()) || partners[&xl] == Point::Ext(xr.paralog())
    })
}

/// Unilinear, and every marker is adjacent to its paralog in some orientation.
pub fn is_loosely_dedoubled(g: &Genome) -> bool {
    if !g.is_unilinear() || !is_totally_duplicated(g) {
        return false;
    }
    let s = &g.chromosomes[0].markers;
    let mut ok: HashSet<u32> = HashSet::new();
    for w in s.windows(2) {
        if w[0].id == w[1].id {
            ok.insert(w[0].id);
        }
    }
    ok.len() == g.families()
}

/// Unilinear, and the second half is the paralog image of the first half.
pub fn is_1tandem(g: &Genome) -> bool {
    if !g.is_unilinear() || !is_totally_duplicated(g) {
        return false;
    }
    let s = &g.chromosomes[0].markers;
    let n = s.len() / 2;
    (0..n).all(|i| s[n + i] == s[i].paralog())
}

/// All duplicated markers form one contiguous 1-tandem run of a linear chromosome.
pub fn is_gathered_tandem(g: &Genome) -> bool {
    let counts = g.copy_counts();
    let mut found = false;
    for c in &g.chromosomes {
        let idx: Vec<usize> = (0..c.len()).filter(|&i| counts[&c.markers[i].id] == 2).collect();
        let (Some(&a), Some(&b)) = (idx.first(), idx.last()) else { continue };
        if found || !c.is_linear() || b + 1 - a != idx.len() {
            return false;
        }
        found = true;
        let run = &c.markers[a..=b];
        let h = run.len() / 2;
        if !(0..h).all(|i| run[h + i] == run[i].paralog()) {
            return false;
        }
    }
    true
}

/// The `k` for which the reduced genome is a unilinear dedoubled genome of `k` distinct markers.
pub fn k_tandem(g: &Genome) -> Option<usize> {
    if !g.is_unilinear() || !is_totally_duplicated(g) {
        return None;
    }
    let (r, _) = reduce(g);
    if r.is_unilinear() && is_dedoubled(&r) {
        Some(r.families())
    } else {
        None
    }
}
