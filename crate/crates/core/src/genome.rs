//! Markers, chromosomes, genomes and their adjacency representation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which of the two paralogous copies a marker occurrence is. `Second` is written `x'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Paralog {
    First,
    Second,
}

impl Paralog {
    pub fn other(self) -> Paralog {
        match self {
            Paralog::First => Paralog::Second,
            Paralog::Second => Paralog::First,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// Unsigned marker identity: family id plus copy label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Gene {
    pub id: u32,
    pub copy: Paralog,
}

impl Gene {
    pub fn new(id: u32, copy: Paralog) -> Gene {
        Gene { id, copy }
    }

    pub fn paralog(self) -> Gene {
        Gene::new(self.id, self.copy.other())
    }

    pub fn ext(self, side: Side) -> Extremity {
        Extremity { id: self.id, copy: self.copy, side }
    }
}

impl fmt::Display for Gene {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.copy {
            Paralog::First => write!(f, "{}", self.id),
            Paralog::Second => write!(f, "{}'", self.id),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Marker {
    pub id: u32,
    pub copy: Paralog,
    pub sign: Sign,
}

impl Marker {
    pub fn new(id: u32, copy: Paralog, sign: Sign) -> Marker {
        Marker { id, copy, sign }
    }

    /// Positive first copy of `id`.
    pub fn plus(id: u32) -> Marker {
        Marker::new(id, Paralog::First, Sign::Plus)
    }

    pub fn gene(self) -> Gene {
        Gene::new(self.id, self.copy)
    }

    pub fn paralog(self) -> Marker {
        Marker { copy: self.copy.other(), ..self }
    }

    pub fn is_plus(self) -> bool {
        self.sign == Sign::Plus
    }

    /// Extremity met first when reading the chromosome left to right.
    pub fn head(self) -> Extremity {
        let side = if self.is_plus() { Side::Left } else { Side::Right };
        self.gene().ext(side)
    }

    /// Extremity met last when reading the chromosome left to right.
    pub fn tail(self) -> Extremity {
        self.head().opposite()
    }
}

impl std::ops::Neg for Marker {
    type Output = Marker;

    fn neg(self) -> Marker {
        let sign = match self.sign {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
        Marker { sign, ..self }
    }
}

impl fmt::Display for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.is_plus() {
            write!(f, "-")?;
        }
        write!(f, "{}", self.gene())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

/// A marker extremity; `Left` is `·x` and `Right` is `x·` for the positive orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Extremity {
    pub id: u32,
    pub copy: Paralog,
    pub side: Side,
}

impl Extremity {
    pub fn gene(self) -> Gene {
        Gene::new(self.id, self.copy)
    }

    pub fn opposite(self) -> Extremity {
        let side = match self.side {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        };
        Extremity { side, ..self }
    }

    /// Same side of the other copy.
    pub fn paralog(self) -> Extremity {
        Extremity { copy: self.copy.other(), ..self }
    }
}

impl fmt::Display for Extremity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Left => write!(f, ".{}", self.gene()),
            Side::Right => write!(f, "{}.", self.gene()),
        }
    }
}

/// One side of an adjacency: a marker extremity or a telomere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    Ext(Extremity),
    Tel,
}

impl Point {
    pub fn ext(self) -> Option<Extremity> {
        match self {
            Point::Ext(e) => Some(e),
            Point::Tel => None,
        }
    }

    pub fn is_tel(self) -> bool {
        self == Point::Tel
    }

    pub fn paralog(self) -> Point {
        match self {
            Point::Ext(e) => Point::Ext(e.paralog()),
            Point::Tel => Point::Tel,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Ext(e) => write!(f, "{e}"),
            Point::Tel => write!(f, "o"),
        }
    }
}

impl From<Extremity> for Point {
    fn from(e: Extremity) -> Point {
        Point::Ext(e)
    }
}

/// Unordered pair of points. `(Tel, Tel)` stands for an empty linear chromosome.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Adjacency(pub Point, pub Point);

impl Adjacency {
    pub const EMPTY: Adjacency = Adjacency(Point::Tel, Point::Tel);

    pub fn new(a: impl Into<Point>, b: impl Into<Point>) -> Adjacency {
        Adjacency(a.into(), b.into())
    }

    /// Adjacency formed by reading `left` then `right`.
    pub fn between(left: Marker, right: Marker) -> Adjacency {
        Adjacency::new(left.tail(), right.head()).canonical()
    }

    pub fn canonical(self) -> Adjacency {
        if self.1 < self.0 {
            Adjacency(self.1, self.0)
        } else {
            self
        }
    }

    pub fn is_telomeric(self) -> bool {
        self.0.is_tel() || self.1.is_tel()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_tel() && self.1.is_tel()
    }

    pub fn contains(self, p: Point) -> bool {
        self.0 == p || self.1 == p
    }

    /// The point paired with `p` in this adjacency.
    pub fn other(self, p: Point) -> Point {
        if self.0 == p {
            self.1
        } else {
            self.0
        }
    }

    pub fn points(self) -> [Point; 2] {
        [self.0, self.1]
    }

    /// Paralogous image: every extremity replaced by the same side of the other copy.
    pub fn mirror(self) -> Adjacency {
        Adjacency(self.0.paralog(), self.1.paralog()).canonical()
    }

    /// Adjacency of the form `(x -x')`, its own mirror.
    pub fn is_self_mirror(self) -> bool {
        !self.is_telomeric() && self.canonical() == self.mirror()
    }
}

impl fmt::Display for Adjacency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {})", self.0, self.1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    Linear,
    Circular,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Chromosome {
    pub shape: Shape,
    pub markers: Vec<Marker>,
}

impl Chromosome {
    pub fn linear(markers: Vec<Marker>) -> Chromosome {
        Chromosome { shape: Shape::Linear, markers }
    }

    pub fn circular(markers: Vec<Marker>) -> Chromosome {
        Chromosome { shape: Shape::Circular, markers }
    }

    pub fn is_linear(&self) -> bool {
        self.shape == Shape::Linear
    }

    pub fn len(&self) -> usize {
        self.markers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markers.is_empty()
    }

    /// Same chromosome read in the opposite direction.
    pub fn reflected(&self) -> Chromosome {
        Chromosome { shape: self.shape, markers: self.markers.iter().rev().map(|&m| -m).collect() }
    }

    /// Points on either side of gap `g` (0..=len). For circular chromosomes gap 0 and gap len coincide.
    pub fn gap(&self, g: usize) -> (Point, Point) {
        let n = self.markers.len();
        let left = if g == 0 {
            match self.shape {
                Shape::Linear => Point::Tel,
                Shape::Circular => Point::Ext(self.markers[n - 1].tail()),
            }
        } else {
            Point::Ext(self.markers[g - 1].tail())
        };
        let right = if g == n {
            match self.shape {
                Shape::Linear => Point::Tel,
                Shape::Circular => Point::Ext(self.markers[0].head()),
            }
        } else {
            Point::Ext(self.markers[g].head())
        };
        (left, right)
    }

    pub fn adjacencies(&self) -> Vec<Adjacency> {
        let n = self.markers.len();
        let mut out = Vec::with_capacity(n + 1);
        match self.shape {
            Shape::Linear => {
                for g in 0..=n {
                    let (l, r) = self.gap(g);
                    out.push(Adjacency(l, r).canonical());
                }
            }
            Shape::Circular => {
                for g in 1..=n {
                    let (l, r) = self.gap(g);
                    out.push(Adjacency(l, r).canonical());
                }
            }
        }
        out
    }

    pub fn canonical(&self) -> Chromosome {
        if self.markers.is_empty() {
            return self.clone();
        }
        match self.shape {
            Shape::Linear => {
                let first = self.markers[0].gene();
                let last = self.markers[self.markers.len() - 1].gene();
                let flip = last < first || (last == first && !self.markers[0].is_plus());
                if flip {
                    self.reflected()
                } else {
                    self.clone()
                }
            }
            Shape::Circular => {
                let (pos, m) =
                    self.markers.iter().enumerate().min_by_key(|(_, m)| m.gene()).map(|(i, m)| (i, *m)).unwrap();
                let mut seq = self.markers.clone();
                if m.is_plus() {
                    seq.rotate_left(pos);
                    Chromosome::circular(seq)
                } else {
                    let refl = self.reflected();
                    let n = seq.len();
                    seq = refl.markers;
                    seq.rotate_left(n - 1 - pos);
                    Chromosome::circular(seq)
                }
            }
        }
    }
}

impl fmt::Display for Chromosome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (open, close) = match self.shape {
            Shape::Linear => ('[', ']'),
            Shape::Circular => ('(', ')'),
        };
        write!(f, "{open}")?;
        for m in &self.markers {
            write!(f, " {m}")?;
        }
        write!(f, " {close}")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Genome {
    pub chromosomes: Vec<Chromosome>,
}

impl Genome {
    pub fn new(chromosomes: Vec<Chromosome>) -> Result<Genome> {
        let g = Genome { chromosomes };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for c in &self.chromosomes {
            if c.markers.is_empty() {
                return Err(Error::EmptyChromosome);
            }
            for m in &c.markers {
                if m.id == 0 {
                    return Err(Error::Precondition("marker ids start at 1".into()));
                }
                if !seen.insert(m.gene()) {
                    return Err(Error::DuplicateMarker(m.gene().to_string()));
                }
            }
        }
        Ok(())
    }

    /// Unilinear genome `[∘ 1 2 .. n ∘]`.
    pub fn identity(n: u32) -> Genome {
        Genome { chromosomes: vec![Chromosome::linear((1..=n).map(Marker::plus).collect())] }
    }

    pub fn markers(&self) -> impl Iterator<Item = Marker> + '_ {
        self.chromosomes.iter().flat_map(|c| c.markers.iter().copied())
    }

    pub fn genes(&self) -> BTreeSet<Gene> {
        self.markers().map(|m| m.gene()).collect()
    }

    /// Total number of marker occurrences.
    pub fn size(&self) -> usize {
        self.chromosomes.iter().map(|c| c.len()).sum()
    }

    /// Number of copies present per family id.
    pub fn copy_counts(&self) -> BTreeMap<u32, usize> {
        let mut counts = BTreeMap::new();
        for m in self.markers() {
            *counts.entry(m.id).or_insert(0) += 1;
        }
        counts
    }

    /// Ids present in two copies.
    pub fn duplicated_ids(&self) -> Vec<u32> {
        self.copy_counts().into_iter().filter(|&(_, c)| c == 2).map(|(id, _)| id).collect()
    }

    /// Number of distinct marker families.
    pub fn families(&self) -> usize {
        self.copy_counts().len()
    }

    pub fn max_id(&self) -> u32 {
        self.markers().map(|m| m.id).max().unwrap_or(0)
    }

    pub fn is_unilinear(&self) -> bool {
        self.chromosomes.len() == 1 && self.chromosomes[0].is_linear()
    }

    pub fn linear_count(&self) -> usize {
        self.chromosomes.iter().filter(|c| c.is_linear()).count()
    }

    pub fn circular_count(&self) -> usize {
        self.chromosomes.len() - self.linear_count()
    }

    pub fn adjacencies(&self) -> Vec<Adjacency> {
        self.chromosomes.iter().flat_map(|c| c.adjacencies()).collect()
    }

    /// Map from each extremity to the point it is joined to.
    pub fn partners(&self) -> HashMap<Extremity, Point> {
        let mut map = HashMap::with_capacity(self.size() * 2);
        for a in self.adjacencies() {
            if let Point::Ext(e) = a.0 {
                map.insert(e, a.1);
            }
            if let Point::Ext(e) = a.1 {
                map.insert(e, a.0);
            }
        }
        map
    }

    /// Index of the chromosome holding each gene.
    pub fn chromosome_of(&self) -> HashMap<Gene, usize> {
        let mut map = HashMap::new();
        for (i, c) in self.chromosomes.iter().enumerate() {
            for m in &c.markers {
                map.insert(m.gene(), i);
            }
        }
        map
    }

    /// (chromosome, position) of each gene.
    pub fn positions(&self) -> HashMap<Gene, (usize, usize)> {
        let mut map = HashMap::new();
        for (i, c) in self.chromosomes.iter().enumerate() {
            for (p, m) in c.markers.iter().enumerate() {
                map.insert(m.gene(), (i, p));
            }
        }
        map
    }

    /// Rebuild a genome from its adjacencies. The result is in canonical form; empty adjacencies are dropped.
    pub fn from_adjacencies(adjs: &[Adjacency]) -> Result<Genome> {
        let mut partner: HashMap<Extremity, Point> = HashMap::with_capacity(adjs.len() * 2);
        let mut genes = BTreeSet::new();
        for a in adjs {
            for (p, q) in [(a.0, a.1), (a.1, a.0)] {
                if let Point::Ext(e) = p {
                    if partner.insert(e, q).is_some() {
                        return Err(Error::Precondition(format!("extremity {e} used twice")));
                    }
                    genes.insert(e.gene());
                }
            }
        }
        for g in &genes {
            if !partner.contains_key(&g.ext(Side::Left)) || !partner.contains_key(&g.ext(Side::Right)) {
                return Err(Error::Precondition(format!("marker {g} has a free extremity")));
            }
        }
        let mut visited = BTreeSet::new();
        let mut chromosomes = Vec::new();
        let mut tel_starts: Vec<Extremity> = partner.iter().filter(|(_, p)| p.is_tel()).map(|(e, _)| *e).collect();
        tel_starts.sort();
        for start in tel_starts {
            if visited.contains(&start.gene()) {
                continue;
            }
            let mut seq = Vec::new();
            let mut e = start;
            loop {
                let sign = if e.side == Side::Left { Sign::Plus } else { Sign::Minus };
                seq.push(Marker::new(e.id, e.copy, sign));
                visited.insert(e.gene());
                match partner[&e.opposite()] {
                    Point::Tel => break,
                    Point::Ext(n) => e = n,
                }
            }
            chromosomes.push(Chromosome::linear(seq).canonical());
        }
        for g in &genes {
            if visited.contains(g) {
                continue;
            }
            let mut seq = Vec::new();
            let mut e = g.ext(Side::Left);
            loop {
                if visited.contains(&e.gene()) {
                    break;
                }
                let sign = if e.side == Side::Left { Sign::Plus } else { Sign::Minus };
                seq.push(Marker::new(e.id, e.copy, sign));
                visited.insert(e.gene());
                match partner[&e.opposite()] {
                    Point::Tel => unreachable!("circular walk met a telomere"),
                    Point::Ext(n) => e = n,
                }
            }
            chromosomes.push(Chromosome::circular(seq).canonical());
        }
        chromosomes.sort();
        Ok(Genome { chromosomes })
    }

    pub fn canonical(&self) -> Genome {
        let mut chromosomes: Vec<Chromosome> = self.chromosomes.iter().map(|c| c.canonical()).collect();
        chromosomes.sort();
        Genome { chromosomes }
    }

    /// Equality up to chromosome order, rotation and reflection.
    pub fn same_as(&self, other: &Genome) -> bool {
        self.canonical() == other.canonical()
    }

    pub fn has_adjacency(&self, a: Adjacency) -> bool {
        let a = a.canonical();
        self.adjacencies().contains(&a)
    }

    /// Fuse the telomeres of a unilinear genome into one circular chromosome.
    pub fn circularize(&self) -> Result<Genome> {
        if !self.is_unilinear() {
            return Err(Error::Precondition("circularize needs a unilinear genome".into()));
        }
        Ok(Genome { chromosomes: vec![Chromosome::circular(self.chromosomes[0].markers.clone())] })
    }
}

impl fmt::Display for Genome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.chromosomes.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Genome {
    type Err = Error;

    fn from_str(s: &str) -> Result<Genome> {
        parse_genome(s)
    }
}

pub fn parse_genome(text: &str) -> Result<Genome> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let mut chromosomes = Vec::new();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let (shape, close) = match c {
            '[' => (Shape::Linear, ']'),
            '(' => (Shape::Circular, ')'),
            _ => return Err(err(pos, "expected '[' or '('")),
        };
        i += 1;
        let mut markers = Vec::new();
        loop {
            while i < chars.len() && chars[i].1.is_whitespace() {
                i += 1;
            }
            if i >= chars.len() {
                return Err(err(text.len(), "unterminated chromosome"));
            }
            let (pos, c) = chars[i];
            if c == close {
                i += 1;
                break;
            }
            let mut sign = Sign::Plus;
            if c == '-' {
                sign = Sign::Minus;
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(pos, "expected a marker"));
            }
            let digits: String = chars[start..i].iter().map(|(_, c)| *c).collect();
            let id: u32 = digits.parse().map_err(|_| err(pos, "marker id out of range"))?;
            if id == 0 {
                return Err(err(pos, "marker ids start at 1"));
            }
            let mut copy = Paralog::First;
            if i < chars.len() && chars[i].1 == '\'' {
                copy = Paralog::Second;
                i += 1;
            }
            if i < chars.len() && !chars[i].1.is_whitespace() && chars[i].1 != close {
                return Err(err(chars[i].0, "unexpected character"));
            }
            markers.push(Marker::new(id, copy, sign));
        }
        if markers.is_empty() {
            return Err(Error::EmptyChromosome);
        }
        chromosomes.push(Chromosome { shape, markers });
    }
    if chromosomes.is_empty() {
        return Err(err(0, "no chromosome"));
    }
    Genome::new(chromosomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn parses_mixed_shapes() {
        let x = g("[ 1 2 -3 ] ( 4 -5 )");
        assert_eq!(x.chromosomes.len(), 2);
        assert!(x.chromosomes[0].is_linear());
        assert!(!x.chromosomes[1].is_linear());
        assert_eq!(x.to_string(), "[ 1 2 -3 ] ( 4 -5 )");
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(matches!("[ ]".parse::<Genome>(), Err(Error::EmptyChromosome)));
        assert!(matches!("[ 1 1 ]".parse::<Genome>(), Err(Error::DuplicateMarker(_))));
        assert!(matches!("[ 1 x ]".parse::<Genome>(), Err(Error::Parse { pos: 4, .. })));
        assert!("[ 1 2".parse::<Genome>().is_err());
    }

    #[test]
    fn primes_mark_second_copy() {
        let x = g("[ 1 2 2' ] ( -3 1' 3' )");
        assert_eq!(x.duplicated_ids(), vec![1, 2, 3]);
        assert_eq!(x.chromosomes[1].markers[0], Marker::new(3, Paralog::First, Sign::Minus));
        assert_eq!(x.chromosomes[1].markers[1].copy, Paralog::Second);
    }

    #[test]
    fn adjacency_reversal_equivalence() {
        let a = Adjacency::between(Marker::plus(1), Marker::plus(2));
        let b = Adjacency::between(-Marker::plus(2), -Marker::plus(1));
        assert_eq!(a, b);
    }

    #[test]
    fn adjacency_round_trip() {
        let x = g("[ 1 -4 5 2' -3 2 1' 4' 5' 3' ] ( 6 -7 8 )");
        let y = Genome::from_adjacencies(&x.adjacencies()).unwrap();
        assert!(x.same_as(&y));
        assert_eq!(y, y.canonical());
    }

    #[test]
    fn circular_canonical_form() {
        let x = g("( 3 -1 2 )");
        assert_eq!(x.canonical().to_string(), "( 1 -3 -2 )");
        let y = g("( 2 1 3 )");
        assert_eq!(y.canonical().to_string(), "( 1 3 2 )");
        assert!(g("( -3 -1 -2 )").same_as(&y));
    }

    #[test]
    fn circularize_keeps_inner_adjacencies() {
        let x = g("[ 1 2 ]");
        let c = x.circularize().unwrap();
        assert_eq!(c.to_string(), "( 1 2 )");
        assert!(g("( 1 2 ) ( 3 )").circularize().is_err());
    }
}
