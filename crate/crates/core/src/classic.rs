//! Sorting non-duplicated genomes: breakpoint distance, block interchanges and DCJ.

use crate::error::{Error, Result};
use crate::genome::{Adjacency, Extremity, Genome, Marker, Point};
use crate::graphs::breakpoint::BreakpointGraph;
use crate::ops::{Dcj, Operation, Scenario};

pub use crate::graphs::breakpoint::{breakpoint_distance, TelomereWeight};

/// Values of a unilinear genome of positive markers `1..=n`.
fn permutation(g: &Genome) -> Result<Vec<u32>> {
    if !g.is_unilinear() {
        return Err(Error::Precondition("block interchange sorting needs a unilinear genome".into()));
    }
    let s = &g.chromosomes[0].markers;
    if s.iter().any(|m| !m.is_plus() || m.copy != crate::genome::Paralog::First) {
        return Err(Error::Precondition("block interchange sorting needs positive unprimed markers".into()));
    }
    Ok(s.iter().map(|m| m.id).collect())
}

/// Block-interchange distance to the identity, `(n + 1 - C) / 2`.
pub fn bi_distance(g: &Genome) -> Result<usize> {
    Ok(BreakpointGraph::new(&permutation(g)?)?.bi_distance())
}

fn perm_genome(p: &[u32]) -> Genome {
    Genome { chromosomes: vec![crate::genome::Chromosome::linear(p.iter().map(|&v| Marker::plus(v)).collect())] }
}

fn swap_blocks(p: &[u32], i: usize, j: usize, k: usize, l: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(p.len());
    out.extend_from_slice(&p[..i]);
    out.extend_from_slice(&p[k..l]);
    out.extend_from_slice(&p[j..k]);
    out.extend_from_slice(&p[i..j]);
    out.extend_from_slice(&p[l..]);
    out
}

/// Block interchanges `(i, j, k, l)` that raise the cycle count by two, preferring those that
/// bring `a + 1` next to `a` at the leftmost breakpoint.
fn sorting_bi(p: &[u32]) -> Option<(usize, usize, usize, usize)> {
    let n = p.len();
    let c = BreakpointGraph::new(p).ok()?.cycle_count();
    let good = |i, j, k, l| {
        BreakpointGraph::new(&swap_blocks(p, i, j, k, l)).map(|b| b.cycle_count() == c + 2).unwrap_or(false)
    };
    let g = (0..n).find(|&g| p[g] as usize != g + 1)?;
    let target = g + 1;
    let at = p.iter().position(|&v| v as usize == target)?;
    for j in g + 1..=at {
        for l in at + 1..=n {
            if good(g, j, at, l) {
                return Some((g, j, at, l));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..=n {
            for k in j..n {
                for l in k + 1..=n {
                    if good(i, j, k, l) {
                        return Some((i, j, k, l));
                    }
                }
            }
        }
    }
    None
}

/// Block-interchange scenario to the identity, each step extracting two 1-cycles.
pub fn bi_scenario(g: &Genome) -> Result<Scenario> {
    let mut p = permutation(g)?;
    BreakpointGraph::new(&p)?;
    let mut ops = Vec::new();
    while p.iter().enumerate().any(|(i, &v)| v as usize != i + 1) {
        let (i, j, k, l) = sorting_bi(&p).ok_or_else(|| Error::Inconsistent("no sorting block interchange".into()))?;
        ops.push(Operation::bi_at(&perm_genome(&p), 0, i, j, k, l)?);
        p = swap_blocks(&p, i, j, k, l);
    }
    Ok(Scenario::new(ops))
}

fn check_same_content(a: &Genome, b: &Genome) -> Result<()> {
    if a.genes() != b.genes() {
        return Err(Error::Precondition("genomes have different marker sets".into()));
    }
    Ok(())
}

/// Cycles and odd paths of the adjacency graph between `a` and `b`.
fn cycles_and_odd_paths(a: &Genome, b: &Genome) -> (usize, usize) {
    let pa = a.partners();
    let pb = b.partners();
    let mut seen: std::collections::HashSet<Extremity> = std::collections::HashSet::new();
    let (mut cycles, mut odd) = (0, 0);
    let mut ends: Vec<Extremity> = pa.iter().filter(|(_, p)| p.is_tel()).map(|(e, _)| *e).collect();
    ends.sort();
    // Walks a path from a telomeric extremity and returns its edge count.
    let walk = |start: Extremity, first_a: bool, seen: &mut std::collections::HashSet<Extremity>| -> usize {
        let mut e = start;
        let mut use_a = first_a;
        let mut edges = 0;
        loop {
            seen.insert(e);
            let next = if use_a { pa[&e] } else { pb[&e] };
            edges += 1;
            match next {
                Point::Tel => return edges,
                Point::Ext(f) => {
                    seen.insert(f);
                    e = f;
                    use_a = !use_a;
                }
            }
        }
    };
    for s in ends {
        if seen.contains(&s) {
            continue;
        }
        let visited = walk(s, false, &mut seen);
        if visited % 2 == 1 {
            odd += 1;
        }
    }
    let mut bends: Vec<Extremity> = pb.iter().filter(|(_, p)| p.is_tel()).map(|(e, _)| *e).collect();
    bends.sort();
    for s in bends {
        if seen.contains(&s) {
            continue;
        }
        let visited = walk(s, true, &mut seen);
        if visited % 2 == 1 {
            odd += 1;
        }
    }
    let mut rest: Vec<Extremity> = pa.keys().copied().filter(|e| !seen.contains(e)).collect();
    rest.sort();
    for s in rest {
        if seen.contains(&s) {
            continue;
        }
        cycles += 1;
        let mut e = s;
        loop {
            seen.insert(e);
            let f = pa[&e].ext().expect("cycle extremities are not telomeric");
            seen.insert(f);
            let g = pb[&f].ext().expect("cycle extremities are not telomeric");
            if g == s {
                break;
            }
            e = g;
        }
    }
    (cycles, odd)
}

/// DCJ distance between two genomes on the same markers, `N - (C + I/2)`.
pub fn dcj_distance(a: &Genome, b: &Genome) -> Result<usize> {
    check_same_content(a, b)?;
    let (c, i) = cycles_and_odd_paths(a, b);
    Ok(a.size() - c - i / 2)
}

/// Optimal DCJ scenario from `a` to `b`: create every adjacency of `b`, then every telomere.
pub fn dcj_sort(a: &Genome, b: &Genome) -> Result<(usize, Scenario)> {
    let d = dcj_distance(a, b)?;
    let mut cur = a.clone();
    let mut ops = Vec::new();
    let target = b.adjacencies();
    let (inner, tel): (Vec<Adjacency>, Vec<Adjacency>) = target.into_iter().partition(|x| !x.is_telomeric());
    for adj in inner.into_iter().chain(tel) {
        let partners = cur.partners();
        let (p, q) = if adj.0.is_tel() { (adj.1, adj.0) } else { (adj.0, adj.1) };
        let present = match (p, q) {
            (Point::Ext(e), q) => partners.get(&e) == Some(&q),
            _ => true,
        };
        if present {
            continue;
        }
        let dcj = Dcj::joining(&partners, p, q)?;
        cur = dcj.apply(&cur)?;
        ops.push(Operation::Dcj(dcj));
    }
    if ops.len() != d || !cur.same_as(b) {
        return Err(Error::Inconsistent(format!("dcj_sort used {} steps for distance {d}", ops.len())));
    }
    Ok((d, Scenario::new(ops)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Genome {
        s.parse().unwrap()
    }

    #[test]
    fn bi_small() {
        let x = g("[ 2 1 ]");
        assert_eq!(bi_distance(&x).unwrap(), 1);
        let s = bi_scenario(&x).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.replay(&x).unwrap().same_as(&Genome::identity(2)));
    }

    #[test]
    fn bi_rejects_signed() {
        assert!(bi_distance(&g("[ 1 -2 ]")).is_err());
    }

    #[test]
    fn dcj_identity_is_zero() {
        let x = g("[ 1 -3 2 ] ( 4 )");
        assert_eq!(dcj_distance(&x, &x).unwrap(), 0);
        assert!(dcj_sort(&x, &x).unwrap().1.is_empty());
    }

    #[test]
    fn dcj_two_reversals() {
        let x = g("[ 1 2 -5 -7 -6 3 4 8 9 10 ]");
        let id = Genome::identity(10);
        let (d, s) = dcj_sort(&x, &id).unwrap();
        assert!(d <= 2);
        assert!(s.replay(&x).unwrap().same_as(&id));
    }

    #[test]
    fn dcj_fission_and_circles() {
        let a = g("[ 1 2 3 4 ]");
        let b = g("[ 1 2 ] ( 3 4 )");
        let (d, s) = dcj_sort(&a, &b).unwrap();
        assert_eq!(d, 1);
        assert!(s.replay(&a).unwrap().same_as(&b));
        let (d, s) = dcj_sort(&b, &a).unwrap();
        assert_eq!(d, 1);
        assert!(s.replay(&b).unwrap().same_as(&a));
        let c = g("( 1 2 ) ( 3 ) [ 4 ]");
        let (d, s) = dcj_sort(&a, &c).unwrap();
        assert_eq!(s.len(), d);
        assert!(s.replay(&a).unwrap().same_as(&c));
    }
}
