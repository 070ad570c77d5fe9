//! Compact genome states for exhaustive search.
//!
//! Extremity `4f + 2c + s` is side `s` (0 left, 1 right) of copy `c` of family `f`. A state maps
//! every extremity to its partner, to [`TEL`] at a chromosome end, or to [`ABSENT`] when the copy
//! is missing. A marker inside a chromosome is written as the extremity met first.

use crate::error::{Error, Result};
use crate::genome::{Chromosome, Extremity, Genome, Marker, Paralog, Side, Sign};

pub const TEL: u8 = 255;
pub const ABSENT: u8 = 254;
pub const MAX_FAMILIES: usize = 8;

/// A chromosome as its circularity and the head extremity of each marker.
pub type Seq = (bool, Vec<u8>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub p: [u8; 4 * MAX_FAMILIES],
}

#[inline]
pub fn mirror(e: u8) -> u8 {
    e ^ 2
}

impl State {
    pub fn empty() -> State {
        State { p: [ABSENT; 4 * MAX_FAMILIES] }
    }

    pub fn from_seqs(seqs: &[Seq]) -> State {
        let mut s = State::empty();
        for (circular, seq) in seqs {
            let k = seq.len();
            for i in 0..k {
                let tail = seq[i] ^ 1;
                let next = if i + 1 < k {
                    seq[i + 1]
                } else if *circular {
                    seq[0]
                } else {
                    TEL
                };
                s.p[tail as usize] = next;
                if next != TEL {
                    s.p[next as usize] = tail;
                }
            }
            if !*circular {
                s.p[seq[0] as usize] = TEL;
            }
        }
        s
    }

    /// Chromosomes, linear ones first, each read from its smallest telomeric extremity.
    pub fn seqs(&self, n_ext: usize) -> Vec<Seq> {
        let mut seen = [false; 4 * MAX_FAMILIES];
        let mut out = Vec::new();
        for start in 0..n_ext {
            if self.p[start] != TEL || seen[start] {
                continue;
            }
            let mut seq = Vec::new();
            let mut e = start as u8;
            loop {
                seen[e as usize] = true;
                seen[(e ^ 1) as usize] = true;
                seq.push(e);
                let q = self.p[(e ^ 1) as usize];
                if q == TEL {
                    break;
                }
                e = q;
            }
            out.push((false, seq));
        }
        for start in (0..n_ext).step_by(2) {
            if self.p[start] == ABSENT || seen[start] {
                continue;
            }
            let mut seq = Vec::new();
            let mut e = start as u8;
            while !seen[e as usize] {
                seen[e as usize] = true;
                seen[(e ^ 1) as usize] = true;
                seq.push(e);
                e = self.p[(e ^ 1) as usize];
            }
            out.push((true, seq));
        }
        out
    }

    fn set(&mut self, a: u8, b: u8) {
        if a != TEL {
            self.p[a as usize] = b;
        }
        if b != TEL {
            self.p[b as usize] = a;
        }
    }

    /// Adjacencies as point pairs, followed by the empty adjacency.
    pub fn adjacencies(&self, n_ext: usize) -> Vec<(u8, u8)> {
        let mut adj = Vec::with_capacity(n_ext);
        for e in 0..n_ext as u8 {
            let q = self.p[e as usize];
            if q == ABSENT {
                continue;
            }
            if q == TEL || e < q {
                adj.push((e, q));
            }
        }
        adj.push((TEL, TEL));
        adj
    }

    pub fn dcj_moves(&self, n_ext: usize, out: &mut Vec<State>) {
        let adj = self.adjacencies(n_ext);
        for a in 0..adj.len() {
            for b in a + 1..adj.len() {
                let (w, x) = adj[a];
                let (y, z) = adj[b];
                for (j1, j2) in [((w, y), (x, z)), ((w, z), (x, y))] {
                    let mut t = *self;
                    t.set(j1.0, j1.1);
                    t.set(j2.0, j2.1);
                    if t != *self {
                        out.push(t);
                    }
                }
            }
        }
    }

    pub fn reversal_moves(&self, n_ext: usize, out: &mut Vec<State>) {
        let seqs = self.seqs(n_ext);
        for c in 0..seqs.len() {
            let k = seqs[c].1.len();
            for i in 0..k {
                for j in i + 1..=k {
                    if j - i == k {
                        continue;
                    }
                    let mut next = seqs.clone();
                    let s = &mut next[c].1;
                    s[i..j].reverse();
                    for h in &mut s[i..j] {
                        *h ^= 1;
                    }
                    out.push(State::from_seqs(&next));
                }
            }
        }
    }

    pub fn bi_moves(&self, n_ext: usize, out: &mut Vec<State>) {
        let seqs = self.seqs(n_ext);
        for c in 0..seqs.len() {
            let (circular, seq) = &seqs[c];
            if *circular {
                continue;
            }
            let k = seq.len();
            for i in 0..k {
                for j in i + 1..=k {
                    for m in j..k {
                        for l in m + 1..=k {
                            let mut s = Vec::with_capacity(k);
                            s.extend_from_slice(&seq[..i]);
                            s.extend_from_slice(&seq[m..l]);
                            s.extend_from_slice(&seq[j..m]);
                            s.extend_from_slice(&seq[i..j]);
                            s.extend_from_slice(&seq[l..]);
                            let mut next = seqs.clone();
                            next[c].1 = s;
                            let t = State::from_seqs(&next);
                            if t != *self {
                                out.push(t);
                            }
                        }
                    }
                }
            }
        }
    }

    pub fn moves(&self, model: super::Model, n_ext: usize, out: &mut Vec<State>) -> Result<()> {
        match model {
            super::Model::Dcj => self.dcj_moves(n_ext, out),
            super::Model::Reversal => self.reversal_moves(n_ext, out),
            super::Model::Bi => self.bi_moves(n_ext, out),
            super::Model::BdDcj => {
                return Err(Error::Precondition("BD moves are only generated on genomes".into()));
            }
        }
        Ok(())
    }

    /// Totally duplicated, every adjacency mirrored and none of the form `(x -x')`.
    pub fn is_perfect(&self, n_ext: usize) -> bool {
        (0..n_ext).all(|e| {
            let q = self.p[e];
            if q == ABSENT {
                return false;
            }
            let m = mirror(e as u8);
            if q == m {
                return false;
            }
            let mq = if q == TEL { TEL } else { mirror(q) };
            self.p[m as usize] == mq
        })
    }

    pub fn is_dedoubled(&self, families: usize) -> bool {
        (0..families).all(|f| {
            let b = 4 * f;
            self.p[b + 1] == (b + 2) as u8 || self.p[b] == (b + 3) as u8
        })
    }

    pub fn is_unilinear(&self, n_ext: usize) -> bool {
        let ends = (0..n_ext).filter(|&e| self.p[e] == TEL).count();
        if ends != 2 {
            return false;
        }
        let present = (0..n_ext).filter(|&e| self.p[e] != ABSENT).count() / 2;
        let start = (0..n_ext).find(|&e| self.p[e] == TEL).unwrap() as u8;
        let mut e = start;
        let mut count = 1;
        loop {
            let q = self.p[(e ^ 1) as usize];
            if q == TEL {
                break;
            }
            e = q;
            count += 1;
        }
        count == present
    }

    /// Unilinear, and the second half is the paralog image of the first half.
    pub fn is_tandem(&self, n_ext: usize) -> bool {
        if !self.is_unilinear(n_ext) {
            return false;
        }
        let seqs = self.seqs(n_ext);
        let s = &seqs[0].1;
        if !s.len().is_multiple_of(2) {
            return false;
        }
        let h = s.len() / 2;
        (0..h).all(|i| s[h + i] == mirror(s[i]))
    }

    /// All markers present in two copies form one contiguous 1-tandem run of a linear chromosome.
    pub fn is_gathered_tandem(&self, n_ext: usize) -> bool {
        let dup = |h: u8| {
            let b = 4 * (h as usize >> 2);
            self.p[b] != ABSENT && self.p[b + 2] != ABSENT
        };
        let mut found = false;
        for (circular, s) in self.seqs(n_ext) {
            let idx: Vec<usize> = (0..s.len()).filter(|&i| dup(s[i])).collect();
            let (Some(&a), Some(&b)) = (idx.first(), idx.last()) else { continue };
            if found || circular || b + 1 - a != idx.len() {
                return false;
            }
            found = true;
            let run = &s[a..=b];
            let h = run.len() / 2;
            if !(0..h).all(|i| run[h + i] == mirror(run[i])) {
                return false;
            }
        }
        true
    }

    /// The unilinear identity over first copies `1..=n`, read either way.
    pub fn is_identity(&self, families: usize) -> bool {
        (0..families).all(|f| {
            let l = 4 * f;
            let r = l + 1;
            let left_ok = if f == 0 { self.p[l] == TEL } else { self.p[l] == (4 * (f - 1) + 1) as u8 };
            let right_ok = if f + 1 == families { self.p[r] == TEL } else { self.p[r] == (4 * (f + 1)) as u8 };
            left_ok && right_ok
        })
    }
}

/// Translation between genomes and states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    /// Marker id of each family index.
    pub ids: Vec<u32>,
}

impl Layout {
    pub fn of(g: &Genome) -> Result<Layout> {
        let ids: Vec<u32> = g.copy_counts().keys().copied().collect();
        if ids.len() > MAX_FAMILIES {
            return Err(Error::CapExceeded(format!("{} marker families, at most {MAX_FAMILIES}", ids.len())));
        }
        Ok(Layout { ids })
    }

    /// Families `1..=n`.
    pub fn first(n: usize) -> Layout {
        Layout { ids: (1..=n as u32).collect() }
    }

    pub fn families(&self) -> usize {
        self.ids.len()
    }

    pub fn n_ext(&self) -> usize {
        4 * self.ids.len()
    }

    pub fn index(&self, e: Extremity) -> u8 {
        let f = self.ids.binary_search(&e.id).expect("extremity outside the layout");
        let c = match e.copy {
            Paralog::First => 0,
            Paralog::Second => 1,
        };
        let s = match e.side {
            Side::Left => 0,
            Side::Right => 1,
        };
        (4 * f + 2 * c + s) as u8
    }

    pub fn extremity(&self, i: u8) -> Extremity {
        let f = (i >> 2) as usize;
        let copy = if (i >> 1) & 1 == 0 { Paralog::First } else { Paralog::Second };
        let side = if i & 1 == 0 { Side::Left } else { Side::Right };
        Extremity { id: self.ids[f], copy, side }
    }

    pub fn marker(&self, head: u8) -> Marker {
        let e = self.extremity(head);
        let sign = if e.side == Side::Left { Sign::Plus } else { Sign::Minus };
        Marker::new(e.id, e.copy, sign)
    }

    pub fn encode(&self, g: &Genome) -> State {
        let seqs: Vec<Seq> = g
            .chromosomes
            .iter()
            .map(|c| (!c.is_linear(), c.markers.iter().map(|m| self.index(m.head())).collect()))
            .collect();
        State::from_seqs(&seqs)
    }

    pub fn decode(&self, s: &State) -> Genome {
        let chromosomes = s
            .seqs(self.n_ext())
            .into_iter()
            .map(|(circular, seq)| {
                let markers: Vec<Marker> = seq.iter().map(|&h| self.marker(h)).collect();
                if circular {
                    Chromosome::circular(markers)
                } else {
                    Chromosome::linear(markers)
                }
            })
            .collect();
        Genome { chromosomes }.canonical()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn round_trip() {
        for text in ["[ 1 -2 1' ] ( 2' 3 -3' )", "[ 2 1 ]", "( 1 1' )"] {
            let x = g(text);
            let l = Layout::of(&x).unwrap();
            assert!(l.decode(&l.encode(&x)).same_as(&x));
        }
    }

    #[test]
    fn goals_match_classifiers() {
        for text in ["( 1 2 1' 2' )", "[ 1 2 -2' -1' ]", "[ 1 1' -2 -2' ] ( 3' 3 )", "[ 1 2 1' 2' ]", "[ 1 2 2' 1' ]"] {
            let x = g(text);
            let l = Layout::of(&x).unwrap();
            let s = l.encode(&x);
            assert_eq!(s.is_perfect(l.n_ext()), classify::is_perfectly_duplicated(&x), "{text}");
            assert_eq!(s.is_dedoubled(l.families()), classify::is_dedoubled(&x), "{text}");
            assert_eq!(s.is_tandem(l.n_ext()), classify::is_1tandem(&x), "{text}");
        }
    }

    #[test]
    fn single_marker_dcj_neighbors() {
        let x = g("[ 1 ]");
        let l = Layout::of(&x).unwrap();
        let mut out = Vec::new();
        l.encode(&x).dcj_moves(l.n_ext(), &mut out);
        out.sort();
        out.dedup();
        let gs: Vec<Genome> = out.iter().map(|s| l.decode(s)).collect();
        assert_eq!(gs.len(), 1);
        assert!(gs[0].same_as(&g("( 1 )")));
    }

    #[test]
    fn identity_goal() {
        let l = Layout::first(3);
        assert!(l.encode(&g("[ 1 2 3 ]")).is_identity(3));
        assert!(l.encode(&g("[ -3 -2 -1 ]")).is_identity(3));
        assert!(!l.encode(&g("[ 1 3 2 ]")).is_identity(3));
    }
}
