//! Reduction of double-adjacency runs, and totalization of mixed genomes.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::classify::is_double_adjacency;
use crate::genome::{Adjacency, Chromosome, Gene, Genome, Marker, Paralog, Point, Shape, Side};
use crate::ops::{Dcj, Duplication, Operation};

/// Maps each fresh marker of a reduced genome to the run of original markers it stands for,
/// read in its positive orientation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReduceMap {
    pub runs: BTreeMap<Gene, Vec<Marker>>,
}

impl ReduceMap {
    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn lift_ext(&self, e: crate::genome::Extremity) -> crate::genome::Extremity {
        match self.runs.get(&e.gene()) {
            None => e,
            Some(run) => match e.side {
                Side::Left => run[0].head(),
                Side::Right => run[run.len() - 1].tail(),
            },
        }
    }

    pub fn lift_point(&self, p: Point) -> Point {
        match p {
            Point::Ext(e) => Point::Ext(self.lift_ext(e)),
            Point::Tel => Point::Tel,
        }
    }

    pub fn lift_adjacency(&self, a: Adjacency) -> Adjacency {
        Adjacency(self.lift_point(a.0), self.lift_point(a.1)).canonical()
    }

    pub fn lift_dcj(&self, d: &Dcj) -> Dcj {
        Dcj { cut: d.cut.map(|a| self.lift_adjacency(a)), join: d.join.map(|a| self.lift_adjacency(a)) }
    }

    pub fn lift_op(&self, op: &Operation) -> Operation {
        match op {
            Operation::Dcj(d) => Operation::Dcj(self.lift_dcj(d)),
            Operation::Reversal(d) => Operation::Reversal(self.lift_dcj(d)),
            Operation::Bi { excision, reintegration } => {
                Operation::Bi { excision: self.lift_dcj(excision), reintegration: self.lift_dcj(reintegration) }
            }
            Operation::Bd { duplicate, dcj, reversal } => Operation::Bd {
                duplicate: duplicate.iter().map(|d| Duplication { ext: self.lift_ext(d.ext) }).collect(),
                dcj: self.lift_dcj(dcj),
                reversal: *reversal,
            },
        }
    }

    /// Replace every fresh marker by its run.
    pub fn expand(&self, g: &Genome) -> Genome {
        let chromosomes = g
            .chromosomes
            .iter()
            .map(|c| {
                let mut markers = Vec::new();
                for m in &c.markers {
                    match self.runs.get(&m.gene()) {
                        None => markers.push(*m),
                        Some(run) if m.is_plus() => markers.extend(run.iter().copied()),
                        Some(run) => markers.extend(run.iter().rev().map(|&x| -x)),
                    }
                }
                Chromosome { shape: c.shape, markers }
            })
            .collect();
        Genome { chromosomes }.canonical()
    }
}

/// Rewrite each maximal run of double-adjacencies, and its paralogous run, as one fresh marker pair.
pub fn reduce(g: &Genome) -> (Genome, ReduceMap) {
    let g = g.canonical();
    let adjs: HashSet<Adjacency> = g.adjacencies().into_iter().collect();
    let double = |a: Marker, b: Marker| is_double_adjacency(&adjs, Adjacency::between(a, b));

    let mut runs: Vec<(usize, Vec<Marker>)> = Vec::new();
    for (ci, c) in g.chromosomes.iter().enumerate() {
        let n = c.len();
        let mut seq = c.markers.clone();
        if c.shape == Shape::Circular {
            if let Some(start) = (0..n).find(|&i| !double(seq[(i + n - 1) % n], seq[i])) {
                seq.rotate_left(start);
            }
        }
        let mut cur: Vec<Marker> = vec![seq[0]];
        for w in seq.windows(2) {
            let (a, b) = (w[0], w[1]);
            let clash = cur.iter().any(|m| m.id == b.id);
            if double(a, b) && !clash {
                cur.push(b);
            } else {
                runs.push((ci, std::mem::take(&mut cur)));
                cur.push(b);
            }
        }
        runs.push((ci, cur));
    }

    // Pair each multi-marker run with its paralogous run.
    let index: HashMap<Gene, usize> =
        runs.iter().enumerate().flat_map(|(r, (_, run))| run.iter().map(move |m| (m.gene(), r))).collect();
    let mut partner: Vec<Option<(usize, bool)>> = vec![None; runs.len()];
    for r in 0..runs.len() {
        let run = &runs[r].1;
        if run.len() < 2 {
            continue;
        }
        let Some(&s) = index.get(&run[0].gene().paralog()) else { continue };
        let other = &runs[s].1;
        if other.len() != run.len() {
            continue;
        }
        let image: Vec<Marker> = run.iter().map(|m| m.paralog()).collect();
        let reflected: Vec<Marker> = image.iter().rev().map(|&m| -m).collect();
        if *other == image {
            partner[r] = Some((s, true));
        } else if *other == reflected {
            partner[r] = Some((s, false));
        }
    }

    let mut next = g.max_id() + 1;
    let mut replacement: Vec<Option<Marker>> = vec![None; runs.len()];
    let mut map = ReduceMap::default();
    for r in 0..runs.len() {
        if replacement[r].is_some() {
            continue;
        }
        let Some((s, same)) = partner[r] else { continue };
        if partner[s].map(|p| p.0) != Some(r) {
            continue;
        }
        let lead_first = |x: usize| runs[x].1[0].copy == Paralog::First;
        let (fwd, back) = if lead_first(r) || !lead_first(s) { (r, s) } else { (s, r) };
        let x = Marker::new(next, Paralog::First, crate::genome::Sign::Plus);
        next += 1;
        replacement[fwd] = Some(x);
        replacement[back] = Some(if same { x.paralog() } else { -x.paralog() });
        map.runs.insert(x.gene(), runs[fwd].1.clone());
        let image: Vec<Marker> = runs[fwd].1.iter().map(|m| m.paralog()).collect();
        map.runs.insert(x.gene().paralog(), image);
    }

    let mut chromosomes: Vec<Chromosome> =
        g.chromosomes.iter().map(|c| Chromosome { shape: c.shape, markers: Vec::new() }).collect();
    for (r, (ci, run)) in runs.iter().enumerate() {
        match replacement[r] {
            Some(m) => chromosomes[*ci].markers.push(m),
            None => chromosomes[*ci].markers.extend(run.iter().copied()),
        }
    }
    (Genome { chromosomes }.canonical(), map)
}

/// Replace every maximal run of single-copy markers starting with `x` by the doublet `x x'`.
pub fn totalize(g: &Genome) -> Genome {
    let counts = g.copy_counts();
    let single = |m: &Marker| counts[&m.id] == 1;
    let chromosomes = g
        .chromosomes
        .iter()
        .map(|c| {
            let n = c.len();
            let mut seq = c.markers.clone();
            if c.shape == Shape::Circular {
                if let Some(start) = (0..n).find(|&i| !single(&seq[i]) && single(&seq[(i + 1) % n])) {
                    seq.rotate_left((start + 1) % n);
                }
            }
            let mut out = Vec::new();
            let mut i = 0;
            while i < n {
                if single(&seq[i]) {
                    let head = seq[i];
                    out.push(head);
                    out.push(head.paralog());
                    while i < n && single(&seq[i]) {
                        i += 1;
                    }
                } else {
                    out.push(seq[i]);
                    i += 1;
                }
            }
            Chromosome { shape: c.shape, markers: out }
        })
        .collect();
    Genome { chromosomes }.canonical()
}
