//! Graphviz and CSV renderings.

use std::fmt::Write;

use super::overlap::OverlapGraph;
use super::{point_label, Census, EdgeKind, ParalogGraph};

pub fn paralog_dot(name: &str, g: &ParalogGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for (i, v) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label=\"{} {}\"];", point_label(v.0), point_label(v.1)).unwrap();
    }
    for e in &g.edges {
        let style = match e.kind {
            EdgeKind::Left | EdgeKind::Backward => "dashed",
            EdgeKind::Right | EdgeKind::Forward => "solid",
        };
        writeln!(out, "  v{} -- v{} [label=\"{}\", style={style}];", e.u, e.v, e.family).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn overlap_dot(name: &str, g: &OverlapGraph) -> String {
    let mut out = String::new();
    writeln!(out, "graph \"{name}\" {{").unwrap();
    for (i, id) in g.ids.iter().enumerate() {
        let fill = if g.oriented[i] { ", style=filled, fillcolor=gray" } else { "" };
        writeln!(out, "  n{id} [label=\"{id},{id}'\"{fill}];").unwrap();
    }
    for (a, b) in g.edges() {
        writeln!(out, "  n{a} -- n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub const CENSUS_HEADER: &str = "EC,OC,EP,OP,C,n";

pub fn census_csv_row(c: &Census, n: usize) -> String {
    format!("{},{},{},{},{},{}", c.ec, c.oc, c.ep, c.op, c.cycles(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::natural::natural_graph;

    #[test]
    fn dot_lists_every_edge() {
        let g: crate::Genome = "[ 1 2 1' 2' ]".parse().unwrap();
        let ng = natural_graph(&g);
        let dot = paralog_dot("ng", &ng);
        assert_eq!(dot.matches(" -- ").count(), ng.edges.len());
        assert!(dot.starts_with("graph \"ng\""));
    }

    #[test]
    fn census_row_has_six_fields() {
        let row = census_csv_row(&Census { ec: 1, oc: 0, ep: 2, op: 1 }, 4);
        assert_eq!(row, "1,0,2,1,1,4");
        assert_eq!(CENSUS_HEADER.split(',').count(), 6);
    }
}
