//! Rearrangement operations and scenarios.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Extremity, Gene, Genome, Point, Shape};

/// Double cut and join: remove the two `cut` adjacencies and add the two `join` adjacencies
/// over the same four points. A cut equal to [`Adjacency::EMPTY`] stands for an empty linear
/// chromosome, which makes fissions expressible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dcj {
    pub cut: [Adjacency; 2],
    pub join: [Adjacency; 2],
}

impl Dcj {
    pub fn new(cut: [Adjacency; 2], join: [Adjacency; 2]) -> Result<Dcj> {
        let cut = [cut[0].canonical(), cut[1].canonical()];
        let join = [join[0].canonical(), join[1].canonical()];
        let mut a: Vec<Point> = cut.iter().flat_map(|x| x.points()).collect();
        let mut b: Vec<Point> = join.iter().flat_map(|x| x.points()).collect();
        a.sort();
        b.sort();
        if a != b {
            return Err(Error::InvalidOperation("join does not reuse the cut points".into()));
        }
        if cut[0].is_empty() && cut[1].is_empty() {
            return Err(Error::InvalidOperation("both cuts are empty".into()));
        }
        if cut[0] == cut[1] {
            return Err(Error::InvalidOperation("the same adjacency is cut twice".into()));
        }
        Ok(Dcj { cut, join })
    }

    /// Cut `(p q)` and `(r s)`, then join `(p r)` and `(q s)`.
    pub fn straight(c1: Adjacency, c2: Adjacency) -> Result<Dcj> {
        Dcj::new([c1, c2], [Adjacency(c1.0, c2.0), Adjacency(c1.1, c2.1)])
    }

    /// Cut `(p q)` and `(r s)`, then join `(p s)` and `(q r)`.
    pub fn crossed(c1: Adjacency, c2: Adjacency) -> Result<Dcj> {
        Dcj::new([c1, c2], [Adjacency(c1.0, c2.1), Adjacency(c1.1, c2.0)])
    }

    /// The DCJ that makes `a` and `b` adjacent, joining their former partners together.
    pub fn joining(partners: &HashMap<Extremity, Point>, a: Point, b: Point) -> Result<Dcj> {
        let cut_of = |p: Point| -> Result<Adjacency> {
            match p {
                Point::Ext(e) => partners
                    .get(&e)
                    .map(|q| Adjacency(p, *q).canonical())
                    .ok_or_else(|| Error::MissingAdjacency(e.to_string())),
                Point::Tel => Ok(Adjacency::EMPTY),
            }
        };
        let ca = cut_of(a)?;
        let cb = cut_of(b)?;
        if ca == cb && !ca.is_empty() {
            return Err(Error::InvalidOperation(format!("{a} and {b} are already adjacent")));
        }
        if ca.is_empty() && cb.is_empty() {
            return Err(Error::InvalidOperation("cannot join two telomeres".into()));
        }
        let pa = if ca.is_empty() { Point::Tel } else { ca.other(a) };
        let pb = if cb.is_empty() { Point::Tel } else { cb.other(b) };
        Dcj::new([ca, cb], [Adjacency(a, b), Adjacency(pa, pb)])
    }

    pub fn inverse(&self) -> Dcj {
        Dcj { cut: self.join, join: self.cut }
    }

    pub fn apply(&self, g: &Genome) -> Result<Genome> {
        let mut adjs = g.adjacencies();
        for c in self.cut {
            if c.is_empty() {
                continue;
            }
            match adjs.iter().position(|a| *a == c) {
                Some(i) => {
                    adjs.swap_remove(i);
                }
                None => return Err(Error::MissingAdjacency(c.to_string())),
            }
        }
        adjs.extend(self.join.iter().filter(|a| !a.is_empty()));
        Genome::from_adjacencies(&adjs)
    }
}

impl fmt::Display for Dcj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cut {} {} join {} {}", self.cut[0], self.cut[1], self.join[0], self.join[1])
    }
}

/// Insert the paralog of the marker owning `ext` right next to it, on the `ext` side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Duplication {
    pub ext: Extremity,
}

impl Duplication {
    pub fn apply(&self, g: &Genome) -> Result<Genome> {
        let e = self.ext;
        let twin = e.paralog();
        if g.genes().contains(&twin.gene()) {
            return Err(Error::InvalidOperation(format!("{} is already duplicated", e.gene())));
        }
        let partners = g.partners();
        let old = *partners.get(&e).ok_or_else(|| Error::MissingAdjacency(e.to_string()))?;
        let cut = Adjacency(Point::Ext(e), old).canonical();
        let mut adjs = g.adjacencies();
        let i = adjs.iter().position(|a| *a == cut).expect("partner adjacency present");
        adjs.swap_remove(i);
        adjs.push(Adjacency::new(e, twin.opposite()).canonical());
        adjs.push(Adjacency(Point::Ext(twin), old).canonical());
        Genome::from_adjacencies(&adjs)
    }

    /// Remove the marker added by this duplication, wherever it now sits.
    pub fn undo(&self, g: &Genome) -> Result<Genome> {
        let twin = self.ext.paralog();
        let partners = g.partners();
        let a = Point::Ext(twin);
        let b = Point::Ext(twin.opposite());
        let pa = *partners.get(&twin).ok_or_else(|| Error::MissingAdjacency(twin.to_string()))?;
        let pb = partners[&twin.opposite()];
        let mut adjs: Vec<Adjacency> =
            g.adjacencies().into_iter().filter(|x| !x.contains(a) && !x.contains(b)).collect();
        if pa == b {
            return Err(Error::InvalidOperation("marker forms a circle on its own".into()));
        }
        let joined = Adjacency(pa, pb).canonical();
        if !joined.is_empty() {
            adjs.push(joined);
        }
        Genome::from_adjacencies(&adjs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Operation {
    Dcj(Dcj),
    Reversal(Dcj),
    /// Block interchange as an excision followed by a reintegration.
    Bi {
        excision: Dcj,
        reintegration: Dcj,
    },
    /// Duplicate markers, then perform a DCJ (a reversal when `reversal` is set).
    Bd {
        duplicate: Vec<Duplication>,
        dcj: Dcj,
        reversal: bool,
    },
}

impl Operation {
    pub fn apply(&self, g: &Genome) -> Result<Genome> {
        match self {
            Operation::Dcj(d) => d.apply(g),
            Operation::Reversal(d) => apply_reversal(d, g),
            Operation::Bi { excision, reintegration } => {
                check_co_chromosomal(g, excision, true)?;
                let mid = excision.apply(g)?;
                let out = reintegration.apply(&mid)?;
                check_block_interchange(g, &out)?;
                Ok(out)
            }
            Operation::Bd { duplicate, dcj, reversal } => {
                let mut h = g.clone();
                for d in duplicate {
                    h = d.apply(&h)?;
                }
                if *reversal {
                    apply_reversal(dcj, &h)
                } else {
                    dcj.apply(&h)
                }
            }
        }
    }

    /// Reverse the effect of `apply` on its output.
    pub fn undo(&self, g: &Genome) -> Result<Genome> {
        match self {
            Operation::Dcj(d) | Operation::Reversal(d) => d.inverse().apply(g),
            Operation::Bi { excision, reintegration } => {
                let mid = reintegration.inverse().apply(g)?;
                excision.inverse().apply(&mid)
            }
            Operation::Bd { duplicate, dcj, .. } => {
                let mut h = dcj.inverse().apply(g)?;
                for d in duplicate.iter().rev() {
                    h = d.undo(&h)?;
                }
                Ok(h)
            }
        }
    }

    /// The DCJs this operation consists of.
    pub fn dcjs(&self) -> Vec<Dcj> {
        match self {
            Operation::Dcj(d) | Operation::Reversal(d) => vec![*d],
            Operation::Bi { excision, reintegration } => vec![*excision, *reintegration],
            Operation::Bd { dcj, .. } => vec![*dcj],
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Operation::Dcj(_) => "dcj",
            Operation::Reversal(_) => "reversal",
            Operation::Bi { .. } => "bi",
            Operation::Bd { reversal: false, .. } => "bd_dcj",
            Operation::Bd { reversal: true, .. } => "bd_reversal",
        }
    }

    /// Reverse markers `i..j` of chromosome `c`.
    pub fn reversal_at(g: &Genome, c: usize, i: usize, j: usize) -> Result<Operation> {
        let chrom = chromosome(g, c)?;
        if i >= j || j > chrom.len() {
            return Err(Error::InvalidOperation(format!("bad reversal range {i}..{j}")));
        }
        let (li, ri) = chrom.gap(i);
        let (lj, rj) = chrom.gap(j);
        let d = Dcj::new([Adjacency(li, ri), Adjacency(lj, rj)], [Adjacency(li, lj), Adjacency(ri, rj)])?;
        Ok(Operation::Reversal(d))
    }

    /// Swap blocks `i..j` and `k..l` of linear chromosome `c`, with `i < j <= k < l`.
    pub fn bi_at(g: &Genome, c: usize, i: usize, j: usize, k: usize, l: usize) -> Result<Operation> {
        let chrom = chromosome(g, c)?;
        if chrom.shape != Shape::Linear {
            return Err(Error::InvalidOperation("block interchange needs a linear chromosome".into()));
        }
        if !(i < j && j <= k && k < l && l <= chrom.len()) {
            return Err(Error::InvalidOperation(format!("bad blocks {i}..{j} {k}..{l}")));
        }
        let (li, ri) = chrom.gap(i);
        let (lj, rj) = chrom.gap(j);
        let (lk, rk) = chrom.gap(k);
        let (ll, rl) = chrom.gap(l);
        let excision = Dcj::crossed(Adjacency(li, ri), Adjacency(lk, rk))?;
        let rj = if j == k { ri } else { rj };
        let reintegration = Dcj::crossed(Adjacency(lj, rj), Adjacency(ll, rl))?;
        Ok(Operation::Bi { excision, reintegration })
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Dcj(d) => write!(f, "DCJ {d}"),
            Operation::Reversal(d) => write!(f, "REV {d}"),
            Operation::Bi { excision, reintegration } => write!(f, "BI [{excision}] then [{reintegration}]"),
            Operation::Bd { duplicate, dcj, reversal } => {
                write!(f, "{} dup", if *reversal { "BD-REV" } else { "BD-DCJ" })?;
                for d in duplicate {
                    write!(f, " {}", d.ext)?;
                }
                write!(f, " {dcj}")
            }
        }
    }
}

fn chromosome(g: &Genome, c: usize) -> Result<&crate::genome::Chromosome> {
    g.chromosomes.get(c).ok_or_else(|| Error::InvalidOperation(format!("no chromosome {c}")))
}

fn owner(g: &Genome, a: Adjacency) -> Option<usize> {
    let ext = a.0.ext().or(a.1.ext())?;
    g.chromosome_of().get(&ext.gene()).copied()
}

fn check_co_chromosomal(g: &Genome, d: &Dcj, linear: bool) -> Result<()> {
    if d.cut.iter().any(|c| c.is_empty()) {
        return Err(Error::InvalidOperation("empty cut".into()));
    }
    let a = owner(g, d.cut[0]);
    let b = owner(g, d.cut[1]);
    if a.is_none() || a != b {
        return Err(Error::InvalidOperation("cuts are not on the same chromosome".into()));
    }
    if linear && !g.chromosomes[a.unwrap()].is_linear() {
        return Err(Error::InvalidOperation("cuts are not on a linear chromosome".into()));
    }
    Ok(())
}

fn apply_reversal(d: &Dcj, g: &Genome) -> Result<Genome> {
    check_co_chromosomal(g, d, false)?;
    let out = d.apply(g)?;
    if out.chromosomes.len() != g.chromosomes.len() || out.linear_count() != g.linear_count() {
        return Err(Error::InvalidOperation("not a reversal".into()));
    }
    Ok(out)
}

fn check_block_interchange(before: &Genome, after: &Genome) -> Result<()> {
    if after.chromosomes.len() != before.chromosomes.len() || after.linear_count() != before.linear_count() {
        return Err(Error::InvalidOperation("not a block interchange".into()));
    }
    let signs: HashMap<Gene, bool> = before.markers().map(|m| (m.gene(), m.is_plus())).collect();
    for c in &after.chromosomes {
        let same = c.markers.iter().filter(|m| signs[&m.gene()] == m.is_plus()).count();
        if same != 0 && same != c.len() {
            return Err(Error::InvalidOperation("block interchange reversed a block".into()));
        }
    }
    Ok(())
}

/// Ordered list of operations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub ops: Vec<Operation>,
}

impl Scenario {
    pub fn new(ops: Vec<Operation>) -> Scenario {
        Scenario { ops }
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// Genomes visited when replaying from `start`, `start` included.
    pub fn trace(&self, start: &Genome) -> Result<Vec<Genome>> {
        let mut out = vec![start.canonical()];
        for op in &self.ops {
            let next = op.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn replay(&self, start: &Genome) -> Result<Genome> {
        Ok(self.trace(start)?.pop().unwrap())
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, op) in self.ops.iter().enumerate() {
            writeln!(f, "{:>3}. {op}", i + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::{Marker, Paralog, Side};

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    fn ext(id: u32, copy: Paralog, side: Side) -> Extremity {
        Extremity { id, copy, side }
    }

    #[test]
    fn dcj_example_rejoins_four_extremities() {
        let x = g("[ 1 2 3 4 -5 6 ]");
        let c1 = Adjacency::between(Marker::plus(1), Marker::plus(2));
        let c2 = Adjacency::between(-Marker::plus(5), Marker::plus(6));
        let d = Dcj::new(
            [c1, c2],
            [
                Adjacency::new(ext(1, Paralog::First, Side::Right), ext(6, Paralog::First, Side::Left)),
                Adjacency::new(ext(5, Paralog::First, Side::Left), ext(2, Paralog::First, Side::Left)),
            ],
        )
        .unwrap();
        let y = d.apply(&x).unwrap();
        assert!(y.has_adjacency(Adjacency::between(Marker::plus(1), Marker::plus(6))));
        assert!(y.has_adjacency(Adjacency::between(-Marker::plus(5), Marker::plus(2))));
        assert!(d.inverse().apply(&y).unwrap().same_as(&x));
    }

    #[test]
    fn two_bd_dcj_example() {
        let x = g("( 1 2 ) [ 3 -4 ]");
        let dups = vec![
            Duplication { ext: ext(2, Paralog::First, Side::Left) },
            Duplication { ext: ext(4, Paralog::First, Side::Right) },
        ];
        let mid = dups.iter().try_fold(x.clone(), |h, d| d.apply(&h)).unwrap();
        assert!(mid.same_as(&g("( 1 2' 2 ) [ 3 -4' -4 ]")));
        let partners = mid.partners();
        let d = Dcj::joining(
            &partners,
            Point::Ext(ext(4, Paralog::Second, Side::Left)),
            Point::Ext(ext(2, Paralog::First, Side::Left)),
        )
        .unwrap();
        let op = Operation::Bd { duplicate: dups, dcj: d, reversal: false };
        let y = op.apply(&x).unwrap();
        assert!(y.same_as(&g("[ 3 -4' 2 1 2' -4 ]")));
        assert!(op.undo(&y).unwrap().same_as(&x));
    }

    #[test]
    fn fission_through_empty_cut() {
        let x = g("[ 1 2 ]");
        let c = Adjacency::between(Marker::plus(1), Marker::plus(2));
        let d = Dcj::straight(c, Adjacency::EMPTY).unwrap();
        let y = d.apply(&x).unwrap();
        assert_eq!(y.chromosomes.len(), 2);
        assert!(d.inverse().apply(&y).unwrap().same_as(&x));
    }

    #[test]
    fn positional_reversal_and_bi() {
        let x = g("[ 1 2 3 4 5 ]");
        let r = Operation::reversal_at(&x, 0, 1, 4).unwrap();
        assert!(r.apply(&x).unwrap().same_as(&g("[ 1 -4 -3 -2 5 ]")));
        let b = Operation::bi_at(&x, 0, 0, 1, 3, 5).unwrap();
        assert!(b.apply(&x).unwrap().same_as(&g("[ 4 5 2 3 1 ]")));
        let t = Operation::bi_at(&x, 0, 1, 2, 2, 4).unwrap();
        let y = t.apply(&x).unwrap();
        assert!(y.same_as(&g("[ 1 3 4 2 5 ]")));
        assert!(t.undo(&y).unwrap().same_as(&x));
    }

    #[test]
    fn reversal_rejects_translocation() {
        let x = g("[ 1 2 ] [ 3 4 ]");
        let c1 = Adjacency::between(Marker::plus(1), Marker::plus(2));
        let c2 = Adjacency::between(Marker::plus(3), Marker::plus(4));
        let d = Dcj::straight(c1, c2).unwrap();
        assert!(Operation::Reversal(d).apply(&x).is_err());
        assert!(Operation::Dcj(d).apply(&x).is_ok());
    }
}
