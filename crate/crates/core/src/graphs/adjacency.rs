//! Dedoubled adjacency graph.
//!
//! Vertices are the adjacencies of a totally duplicated genome. For every marker `x` one edge
//! links `x·` to `·x'` and another links `·x` to `x'·`. Components are called elements.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::is_totally_duplicated;
use crate::error::{Error, Result};
use crate::genome::{Genome, Paralog, Side};

use super::{Edge, EdgeKind, Gaps, ParalogGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Element {
    pub component: usize,
    pub cycle: bool,
    /// Markers with at least one edge in this element.
    pub couples: BTreeSet<u32>,
    /// Some marker has both of its edges in this element.
    pub duplicated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjacencyGraph {
    pub graph: ParalogGraph,
    pub elements: Vec<Element>,
}

impl AdjacencyGraph {
    pub fn new(g: &Genome) -> Result<AdjacencyGraph> {
        if !is_totally_duplicated(g) {
            return Err(Error::Precondition("adjacency graph needs a totally duplicated genome".into()));
        }
        let gaps = Gaps::new(g);
        let at = gaps.ext_vertex(g);
        let mut edges = Vec::new();
        for gene in g.genes().into_iter().filter(|x| x.copy == Paralog::First) {
            let twin = gene.paralog();
            edges.push(Edge {
                u: at[&gene.ext(Side::Right)],
                v: at[&twin.ext(Side::Left)],
                family: gene.id,
                kind: EdgeKind::Forward,
            });
            edges.push(Edge {
                u: at[&gene.ext(Side::Left)],
                v: at[&twin.ext(Side::Right)],
                family: gene.id,
                kind: EdgeKind::Backward,
            });
        }
        let graph = ParalogGraph::new(gaps.vertices, edges);
        let elements = graph
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let fams: Vec<u32> = c.edges.iter().map(|&e| graph.edges[e].family).collect();
                let couples: BTreeSet<u32> = fams.iter().copied().collect();
                Element { component: i, cycle: c.cycle, duplicated: couples.len() < fams.len(), couples }
            })
            .collect();
        Ok(AdjacencyGraph { graph, elements })
    }

    /// Number of marker families.
    pub fn n(&self) -> usize {
        self.graph.edges.len() / 2
    }

    pub fn cycle_count(&self) -> usize {
        self.elements.iter().filter(|e| e.cycle).count()
    }

    /// Indices of the non-duplicated cycles: the candidates for an independent set.
    pub fn candidate_cycles(&self) -> Vec<usize> {
        (0..self.elements.len()).filter(|&i| self.elements[i].cycle && !self.elements[i].duplicated).collect()
    }

    pub fn intersect(&self, a: usize, b: usize) -> bool {
        a != b && !self.elements[a].couples.is_disjoint(&self.elements[b].couples)
    }

    /// The unique path of a unilinear genome.
    pub fn path(&self) -> Option<usize> {
        let mut paths = self.elements.iter().enumerate().filter(|(_, e)| !e.cycle);
        let first = paths.next()?.0;
        paths.next().is_none().then_some(first)
    }

    /// The path holds every marker family.
    pub fn path_is_valid(&self) -> bool {
        self.path().is_some_and(|p| self.elements[p].couples.len() == self.n())
    }

    /// Edge kind of marker `id` inside element `el`, if any.
    pub fn edge_in(&self, el: usize, id: u32) -> Option<EdgeKind> {
        let comp = &self.graph.components[self.elements[el].component];
        comp.edges.iter().map(|&e| self.graph.edges[e]).find(|e| e.family == id).map(|e| e.kind)
    }

    /// Element containing vertex `v`.
    pub fn element_of_vertex(&self, v: usize) -> usize {
        self.elements
            .iter()
            .position(|e| self.graph.components[e.component].vertices.binary_search(&v).is_ok())
            .expect("every vertex lies in an element")
    }
}
