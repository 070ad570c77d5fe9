//! Distance tables over symmetry classes of totally duplicated genomes.
//!
//! Relabeling families, swapping the two copies of a family and reversing both copies of a
//! family map DCJs, reversals and block interchanges to operations of the same kind, and keep
//! every goal of [`Goal`]. Distances are therefore constant on each class, and one breadth-first
//! search over classes answers every genome of a given size.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::Result;
use crate::genome::Genome;

use super::state::{Layout, Seq, State};
use super::{Goal, Model};

/// Canonical code of a state's symmetry class.
pub type Code = Vec<u8>;

#[derive(Clone, Copy)]
struct Relabel {
    /// Per family: assigned index and side of the first occurrence, or `u8::MAX`.
    idx: [u8; 8],
    side: [u8; 8],
    next: u8,
}

impl Relabel {
    fn new() -> Relabel {
        Relabel { idx: [u8::MAX; 8], side: [0; 8], next: 0 }
    }

    fn code(&mut self, head: u8) -> u8 {
        let f = (head >> 2) as usize;
        let s = head & 1;
        if self.idx[f] == u8::MAX {
            self.idx[f] = self.next;
            self.side[f] = s;
            self.next += 1;
        }
        2 * self.idx[f] + (s ^ self.side[f])
    }
}

fn readings(chrom: &Seq) -> Vec<Vec<u8>> {
    let (circular, seq) = chrom;
    let k = seq.len();
    let fwd = seq.clone();
    let back: Vec<u8> = seq.iter().rev().map(|h| h ^ 1).collect();
    if !*circular {
        return vec![fwd, back];
    }
    let mut out = Vec::with_capacity(2 * k);
    for base in [fwd, back] {
        for r in 0..k {
            let mut v = base.clone();
            v.rotate_left(r);
            out.push(v);
        }
    }
    out
}

fn search(chroms: &[(u8, Vec<Vec<u8>>)], used: u32, relabel: Relabel, prefix: &mut Code, best: &mut Option<Code>) {
    if used.count_ones() as usize == chroms.len() {
        if best.as_ref().is_none_or(|b| *prefix < *b) {
            *best = Some(prefix.clone());
        }
        return;
    }
    let header = chroms.iter().enumerate().filter(|(i, _)| used & (1 << i) == 0).map(|(_, c)| c.0).min().unwrap();
    let mut min_seg: Option<Vec<u8>> = None;
    let mut ties: Vec<(usize, Relabel)> = Vec::new();
    for (i, (h, reads)) in chroms.iter().enumerate() {
        if used & (1 << i) != 0 || *h != header {
            continue;
        }
        for r in reads {
            let mut rl = relabel;
            let seg: Vec<u8> = r.iter().map(|&x| rl.code(x)).collect();
            match &min_seg {
                Some(m) if seg > *m => continue,
                Some(m) if seg == *m => ties.push((i, rl)),
                _ => {
                    min_seg = Some(seg);
                    ties.clear();
                    ties.push((i, rl));
                }
            }
        }
    }
    let seg = min_seg.unwrap();
    let len = prefix.len();
    prefix.push(header);
    prefix.extend_from_slice(&seg);
    if best.as_ref().is_none_or(|b| b[..prefix.len().min(b.len())] >= prefix[..]) {
        for (i, rl) in ties {
            search(chroms, used | (1 << i), rl, prefix, best);
        }
    }
    prefix.truncate(len);
}

/// Smallest code over all readings of the chromosomes.
pub fn canonical_code(seqs: &[Seq]) -> Code {
    let chroms: Vec<(u8, Vec<Vec<u8>>)> =
        seqs.iter().map(|c| ((c.1.len() as u8) << 1 | c.0 as u8, readings(c))).collect();
    let mut best = None;
    search(&chroms, 0, Relabel::new(), &mut Vec::new(), &mut best);
    best.unwrap_or_default()
}

/// A representative state of the class with this code.
pub fn decode_code(code: &[u8]) -> State {
    let mut seqs: Vec<Seq> = Vec::new();
    let mut seen = [false; 8];
    let mut i = 0;
    while i < code.len() {
        let header = code[i];
        let (len, circular) = ((header >> 1) as usize, header & 1 == 1);
        let mut seq = Vec::with_capacity(len);
        for &x in &code[i + 1..i + 1 + len] {
            let f = x >> 1;
            let copy = if seen[f as usize] { 1 } else { 0 };
            seen[f as usize] = true;
            seq.push(4 * f + 2 * copy + (x & 1));
        }
        seqs.push((circular, seq));
        i += 1 + len;
    }
    State::from_seqs(&seqs)
}

/// Class graph of all genomes reachable from the seeds under one model.
pub struct OrbitTable {
    pub families: usize,
    pub model: Model,
    index: HashMap<Code, u32>,
    reps: Vec<State>,
    edges: Vec<Vec<u32>>,
}

impl OrbitTable {
    pub fn build(families: usize, model: Model, seeds: &[State]) -> Result<OrbitTable> {
        let n_ext = 4 * families;
        let mut t = OrbitTable { families, model, index: HashMap::new(), reps: Vec::new(), edges: Vec::new() };
        let mut queue = VecDeque::new();
        for s in seeds {
            let (id, fresh) = t.intern(s, n_ext);
            if fresh {
                queue.push_back(id);
            }
        }
        let mut buf = Vec::new();
        while let Some(id) = queue.pop_front() {
            buf.clear();
            t.reps[id as usize].moves(model, n_ext, &mut buf)?;
            let mut out: Vec<u32> = Vec::with_capacity(buf.len());
            for s in &buf {
                let (nid, fresh) = t.intern(s, n_ext);
                if fresh {
                    queue.push_back(nid);
                }
                out.push(nid);
            }
            out.sort_unstable();
            out.dedup();
            t.edges[id as usize] = out;
        }
        Ok(t)
    }

    fn intern(&mut self, s: &State, n_ext: usize) -> (u32, bool) {
        let code = canonical_code(&s.seqs(n_ext));
        if let Some(&id) = self.index.get(&code) {
            return (id, false);
        }
        let id = self.reps.len() as u32;
        self.reps.push(decode_code(&code));
        self.index.insert(code, id);
        self.edges.push(Vec::new());
        (id, true)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, s: &State) -> Option<u32> {
        self.index.get(&canonical_code(&s.seqs(4 * self.families))).copied()
    }

    /// Distance of every class to the nearest class satisfying `goal`; `u32::MAX` if unreachable.
    pub fn distances(&self, goal: Goal) -> Vec<u32> {
        let n_ext = 4 * self.families;
        let mut dist = vec![u32::MAX; self.len()];
        let mut queue = VecDeque::new();
        for (i, s) in self.reps.iter().enumerate() {
            if goal.holds(s, self.families, n_ext) {
                dist[i] = 0;
                queue.push_back(i as u32);
            }
        }
        // Moves are invertible, so class edges are symmetric.
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            for &w in &self.edges[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }
}

/// Distance of `g` read from a precomputed table.
pub fn table_distance(table: &OrbitTable, dist: &[u32], g: &Genome) -> Option<u32> {
    let l = Layout::of(g).ok()?;
    if l.families() != table.families {
        return None;
    }
    let id = table.class_of(&l.encode(g))?;
    let d = dist[id as usize];
    (d != u32::MAX).then_some(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seqs(text: &str) -> Vec<Seq> {
        let g: Genome = text.parse().unwrap();
        let l = Layout::of(&g).unwrap();
        l.encode(&g).seqs(l.n_ext())
    }

    #[test]
    fn symmetric_genomes_share_codes() {
        let a = canonical_code(&seqs("[ 1 2 -1' 2' ]"));
        let b = canonical_code(&seqs("[ 2 1 -2' 1' ]"));
        let c = canonical_code(&seqs("[ -2' 1 -2 -1' ]"));
        assert_eq!(a, b);
        assert_eq!(a, c);
        let d = canonical_code(&seqs("[ 1 2 1' 2' ]"));
        assert_ne!(a, d);
    }

    #[test]
    fn circular_rotation_and_order() {
        let a = canonical_code(&seqs("( 1 2 ) [ 1' ] ( 2' )"));
        let b = canonical_code(&seqs("( 2' ) ( -1 -2 ) [ 1' ]"));
        assert_eq!(a, b);
    }

    #[test]
    fn decode_is_in_class() {
        for text in ["( 1 2 -1' ) [ 2' 3 ] ( 3' )", "[ 1 1' ]", "[ -2 1 2' -1' ]"] {
            let s = seqs(text);
            let code = canonical_code(&s);
            let rep = decode_code(&code);
            let n_ext = 4 * Layout::of(&text.parse().unwrap()).unwrap().families();
            assert_eq!(canonical_code(&rep.seqs(n_ext)), code);
        }
    }
}
