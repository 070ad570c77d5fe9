//! Graph structures over adjacencies: breakpoint, natural, dedoubled adjacency and overlap graphs,
//! plus the interval set used by block-interchange tandem halving.

pub mod adjacency;
pub mod breakpoint;
pub mod export;
pub mod intervals;
pub mod natural;
pub mod overlap;

use serde::Serialize;

use crate::genome::{Adjacency, Genome, Point};

/// Which paralog link an edge stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum EdgeKind {
    /// `·x` to `·x'` in the natural graph.
    Left,
    /// `x·` to `x'·` in the natural graph.
    Right,
    /// `x·` to `·x'` in the dedoubled adjacency graph.
    Forward,
    /// `·x` to `x'·` in the dedoubled adjacency graph.
    Backward,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub family: u32,
    pub kind: EdgeKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
    pub cycle: bool,
}

impl Component {
    /// Number of edges.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_even(&self) -> bool {
        self.edges.len().is_multiple_of(2)
    }
}

/// Parity census of the components of a graph.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub ec: usize,
    pub oc: usize,
    pub ep: usize,
    pub op: usize,
}

impl Census {
    pub fn cycles(&self) -> usize {
        self.ec + self.oc
    }

    pub fn paths(&self) -> usize {
        self.ep + self.op
    }
}

/// A graph whose vertices are adjacencies and whose edges link paralogous extremities.
#[derive(Clone, Debug, Serialize)]
pub struct ParalogGraph {
    pub vertices: Vec<Adjacency>,
    pub edges: Vec<Edge>,
    pub components: Vec<Component>,
}

impl ParalogGraph {
    pub fn new(vertices: Vec<Adjacency>, edges: Vec<Edge>) -> ParalogGraph {
        let n = vertices.len();
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            incident[e.u].push(i);
            if e.v != e.u {
                incident[e.v].push(i);
            }
        }
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut vs = Vec::new();
            let mut es = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                vs.push(v);
                for &ei in &incident[v] {
                    let e = edges[ei];
                    if !es.contains(&ei) {
                        es.push(ei);
                    }
                    let w = if e.u == v { e.v } else { e.u };
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            vs.sort_unstable();
            es.sort_unstable();
            let cycle = es.len() == vs.len();
            components.push(Component { vertices: vs, edges: es, cycle });
        }
        ParalogGraph { vertices, edges, components }
    }

    pub fn census(&self) -> Census {
        let mut c = Census::default();
        for comp in &self.components {
            match (comp.cycle, comp.is_even()) {
                (true, true) => c.ec += 1,
                (true, false) => c.oc += 1,
                (false, true) => c.ep += 1,
                (false, false) => c.op += 1,
            }
        }
        c
    }

    pub fn cycles(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| c.cycle)
    }

    pub fn paths(&self) -> impl Iterator<Item = &Component> {
        self.components.iter().filter(|c| !c.cycle)
    }

    /// Sorted multiset of (is_cycle, length) pairs.
    pub fn shape(&self) -> Vec<(bool, usize)> {
        let mut s: Vec<(bool, usize)> = self.components.iter().map(|c| (c.cycle, c.len())).collect();
        s.sort_unstable();
        s
    }

    /// Index of the component holding each vertex.
    pub fn component_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.vertices.len()];
        for (ci, c) in self.components.iter().enumerate() {
            for &v in &c.vertices {
                out[v] = ci;
            }
        }
        out
    }
}

/// Vertices of a genome in chromosome order, with a lookup from points to vertex index.
pub(crate) struct Gaps {
    pub vertices: Vec<Adjacency>,
    /// For each chromosome, the vertex index of gap `g`.
    pub gap_vertex: Vec<Vec<usize>>,
}

impl Gaps {
    pub fn new(g: &Genome) -> Gaps {
        let mut vertices = Vec::new();
        let mut gap_vertex = Vec::new();
        for c in &g.chromosomes {
            let k = c.len();
            let mut ids = Vec::with_capacity(k + 1);
            let count = if c.is_linear() { k + 1 } else { k };
            for gap in 0..count {
                let (l, r) = c.gap(gap);
                ids.push(vertices.len());
                vertices.push(Adjacency(l, r).canonical());
            }
            if !c.is_linear() {
                ids.push(ids[0]);
            }
            gap_vertex.push(ids);
        }
        Gaps { vertices, gap_vertex }
    }

    /// Vertex holding each extremity.
    pub fn ext_vertex(&self, g: &Genome) -> std::collections::HashMap<crate::genome::Extremity, usize> {
        let mut map = std::collections::HashMap::new();
        for (ci, c) in g.chromosomes.iter().enumerate() {
            for (p, m) in c.markers.iter().enumerate() {
                map.insert(m.head(), self.gap_vertex[ci][p]);
                map.insert(m.tail(), self.gap_vertex[ci][p + 1]);
            }
        }
        map
    }
}

pub(crate) fn point_label(p: Point) -> String {
    match p {
        Point::Tel => "o".to_string(),
        Point::Ext(e) => e.to_string(),
    }
}
