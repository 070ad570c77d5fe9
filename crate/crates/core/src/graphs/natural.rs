//! Natural graph of a duplicated genome.
//!
//! Vertices are the adjacencies of the genome. The extremity convention links `x·` to `x'·` and
//! `·x` to `·x'`. The positional convention links the gap after each copy and the gap before each
//! copy; the two agree whenever both copies of every marker carry the same sign.

use crate::genome::{Genome, Paralog, Side};

use super::{Census, Edge, EdgeKind, Gaps, ParalogGraph};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Convention {
    #[default]
    Extremity,
    Positional,
}

/// Natural graph with extremity edges. Single-copy markers contribute no edge.
pub fn natural_graph(g: &Genome) -> ParalogGraph {
    natural_graph_with(g, Convention::Extremity)
}

pub fn natural_graph_with(g: &Genome, conv: Convention) -> ParalogGraph {
    let gaps = Gaps::new(g);
    let mut edges = Vec::new();
    match conv {
        Convention::Extremity => {
            let at = gaps.ext_vertex(g);
            for gene in g.genes() {
                if gene.copy != Paralog::First || !at.contains_key(&gene.paralog().ext(Side::Left)) {
                    continue;
                }
                for (side, kind) in [(Side::Left, EdgeKind::Left), (Side::Right, EdgeKind::Right)] {
                    let e = gene.ext(side);
                    edges.push(Edge { u: at[&e], v: at[&e.paralog()], family: gene.id, kind });
                }
            }
        }
        Convention::Positional => {
            let pos = g.positions();
            for (gene, &(c, p)) in &pos {
                if gene.copy != Paralog::First {
                    continue;
                }
                let Some(&(c2, p2)) = pos.get(&gene.paralog()) else { continue };
                let before = (gaps.gap_vertex[c][p], gaps.gap_vertex[c2][p2]);
                let after = (gaps.gap_vertex[c][p + 1], gaps.gap_vertex[c2][p2 + 1]);
                edges.push(Edge { u: before.0, v: before.1, family: gene.id, kind: EdgeKind::Left });
                edges.push(Edge { u: after.0, v: after.1, family: gene.id, kind: EdgeKind::Right });
            }
            edges.sort_by_key(|e| (e.family, e.kind == EdgeKind::Right));
        }
    }
    ParalogGraph::new(gaps.vertices, edges)
}

pub fn natural_census(g: &Genome) -> Census {
    natural_graph(g).census()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn perfectly_duplicated_has_two_cycles_and_unit_paths() {
        let x = g("[ 1 2 3 ] [ 1' 2' 3' ]");
        let c = natural_census(&x);
        assert_eq!((c.ec, c.oc, c.ep, c.op), (2, 0, 0, 2));
    }

    #[test]
    fn self_mirror_adjacency_is_a_loop() {
        let x = g("[ 1 4' 1' -2 2' 3 -4 3' ]");
        let nat = natural_graph(&x);
        let shape = nat.shape();
        assert_eq!(shape, vec![(false, 3), (true, 1), (true, 4)]);
    }

    #[test]
    fn conventions_agree_on_same_signed_genomes() {
        let x = g("[ 1 -4 5 2' -3 2 1' -4' 5' -3' ]");
        let a = natural_graph_with(&x, Convention::Extremity);
        let b = natural_graph_with(&x, Convention::Positional);
        assert_eq!(a.shape(), b.shape());
    }
}
