//! Small covered-endpoint obstructions.
//!
//! [`ce_census`] enumerates every minimal obstruction on a small connected
//! interval graph whose only pre-drawn intervals are `u` and `z` with
//! `l(u) < l(z) <= r(u) <= r(z)`, and sorts them by class.

use std::collections::BTreeMap;

use super::template::classify;
use super::{minimal::minimal_instance, ClassTag, Obstruction};
use crate::error::{invalid, Result};
use crate::extender::is_extendible;
use crate::graph::Graph;
use crate::oracle::connected_interval_graphs;
use crate::partrep::{Interval, PartialRepresentation};

/// One graph found by the census, with every class label it received.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub graph: Graph,
    pub rep: PartialRepresentation,
    pub obstruction: Obstruction,
}

/// Endpoint ranks `(u, z)` satisfying the chain, ties included.
const CHAINS: [((i64, i64), (i64, i64)); 4] = [
    ((0, 2), (1, 3)),
    ((0, 1), (1, 2)),
    ((0, 2), (1, 2)),
    ((0, 1), (1, 1)),
];

/// Minimal obstructions with pre-drawn `u, z` on connected interval graphs
/// of at most `max_n` vertices, grouped by label (class, k, l). Within a
/// label, one entry per graph.
pub fn ce_census(max_n: usize) -> BTreeMap<(ClassTag, usize, Option<usize>), Vec<CensusEntry>> {
    let mut out: BTreeMap<(ClassTag, usize, Option<usize>), Vec<CensusEntry>> = BTreeMap::new();
    for g in connected_interval_graphs(max_n) {
        let n = g.n();
        let mut labels_here = Vec::new();
        for (u, z) in g.edges().flat_map(|(a, b)| [(a, b), (b, a)]) {
            for &(iu, iz) in &CHAINS {
                let rep = PartialRepresentation::from_pairs(n, [(u, Interval::ints(iu.0, iu.1)), (z, Interval::ints(iz.0, iz.1))]);
                if is_extendible(&g, &rep).unwrap_or(true) || !minimal_instance(&g, &rep).unwrap_or(false) {
                    continue;
                }
                let Some(o) = classify(&g, &rep) else {
                    let key = (ClassTag::Lb, 0, None);
                    if !labels_here.contains(&key) {
                        labels_here.push(key);
                        out.entry(key).or_default().push(CensusEntry { graph: g.clone(), rep: rep.clone(), obstruction: Obstruction::new(ClassTag::Lb, 0, None, g.clone(), Vec::new(), Vec::new(), rep, false) });
                    }
                    continue;
                };
                let key = (o.class, o.k, o.l);
                if !labels_here.contains(&key) {
                    labels_here.push(key);
                    out.entry(key).or_default().push(CensusEntry { graph: g.clone(), rep, obstruction: o });
                }
            }
        }
    }
    out
}

/// A frozen covered-endpoint form: edges, `u`, `z`, and the free `x`, `y`.
struct CeForm {
    n: usize,
    edges: &'static [(usize, usize)],
    u: usize,
    z: usize,
    x: usize,
    y: usize,
}

// Two graphs carry more than one reading: the one with a shared last path
// vertex is the identical (1,1) form, the (2,1) form with a two-edge P2 and
// the (2,2) form with t2 = t'2 != u, depending on which pair plays x, y.
const SHARED: &[(usize, usize)] = &[(0, 4), (0, 6), (1, 3), (1, 6), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)];
const CROSSED: &[(usize, usize)] = &[(0, 3), (0, 6), (1, 5), (1, 6), (2, 4), (2, 5), (2, 6), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)];

fn ce_table(k: usize, l: usize, variant: usize) -> Option<CeForm> {
    let f = |n, edges, u, z, x, y| Some(CeForm { n, edges, u, z, x, y });
    match (k, l, variant) {
        // Last vertices before z: apart, adjacent, identical.
        (1, 1, 0) => f(6, &[(0, 3), (0, 5), (1, 2), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)], 5, 4, 0, 1),
        (1, 1, 1) => f(6, &[(0, 4), (0, 5), (1, 3), (1, 5), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)], 5, 2, 0, 1),
        (1, 1, 2) => f(7, SHARED, 6, 2, 0, 1),
        // x2 t2 not an edge; an edge with u != t2; u = t2.
        (2, 1, 0) => f(7, SHARED, 6, 2, 0, 3),
        (2, 1, 1) => f(7, CROSSED, 6, 2, 1, 3),
        (2, 1, 2) => f(6, &[(0, 3), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)], 5, 2, 1, 3),
        // u = t2 = t'2; t2 = t'2 != u; u = t2 != t'2; all distinct.
        (2, 2, 0) => f(6, &[(0, 4), (1, 3), (2, 5), (3, 5), (4, 5)], 5, 2, 3, 4),
        (2, 2, 1) => f(7, SHARED, 6, 2, 3, 4),
        (2, 2, 2) => f(7, &[(0, 4), (1, 3), (1, 5), (2, 5), (2, 6), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)], 5, 2, 3, 4),
        (2, 2, 3) => f(
            8,
            &[(0, 4), (0, 5), (1, 3), (1, 5), (2, 5), (2, 6), (2, 7), (3, 5), (3, 6), (3, 7), (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)],
            5,
            2,
            3,
            4,
        ),
        _ => None,
    }
}

/// Number of frozen forms for `(k, l)`.
pub fn ce_form_count(k: usize, l: usize) -> usize {
    (0..).take_while(|&v| ce_table(k, l, v).is_some()).count()
}

/// A small covered-endpoint obstruction by form index.
///
/// `(1,1)`: 0, 1, 2 have the last vertices of both paths apart, adjacent
/// and identical. `(2,1)`: 0 has `x2 t2` a non-edge, 1 has it an edge with
/// `u != t2`, 2 has `u = t2`. `(2,2)`: 0 is `u = t2 = t'2`, 1 is
/// `t2 = t'2 != u`, 2 is `u = t2 != t'2`, 3 has all three distinct. Forms 2
/// and 3 of `(2,2)` are non-extendible but not minimal.
pub fn ce_form(k: usize, l: usize, variant: usize) -> Result<(Graph, PartialRepresentation, Obstruction)> {
    use super::template::{fit, Slot};
    let Some(f) = ce_table(k, l, variant) else {
        return invalid(format!("no covered-endpoint form ({k},{l}) #{variant}"));
    };
    let g = Graph::from_edges(f.n, f.edges)?;
    let rep = PartialRepresentation::from_pairs(f.n, [(f.u, Interval::ints(0, 2)), (f.z, Interval::ints(1, 3))]);
    let slots = [(Slot::X, f.x), (Slot::Y, f.y), (Slot::Z, f.z), (Slot::U, f.u)];
    match fit(&g, &rep, ClassTag::Ce, &slots) {
        Some(o) if o.k == k && o.l == Some(l) => super::generate::named_by_roles(g, rep, o),
        Some(o) => invalid(format!("form ({k},{l}) #{variant} reads as ({},{:?})", o.k, o.l)),
        None => invalid(format!("form ({k},{l}) #{variant} does not fit the template")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_form_reads_as_its_label_and_is_stuck() {
        for (k, l, count) in [(1, 1, 3), (2, 1, 3), (2, 2, 4)] {
            assert_eq!(ce_form_count(k, l), count);
            for v in 0..count {
                let (g, rep, o) = ce_form(k, l, v).unwrap();
                assert!(!is_extendible(&g, &rep).unwrap(), "({k},{l}) #{v}");
                assert_eq!(super::super::template::verify_template(&o), Ok(()));
            }
        }
        assert!(ce_form(3, 1, 0).is_err());
    }

    #[test]
    fn minimality_of_forms() {
        for (k, l, v, minimal) in [(1, 1, 0, true), (1, 1, 1, true), (1, 1, 2, true), (2, 1, 0, true), (2, 1, 1, true), (2, 1, 2, true), (2, 2, 0, true), (2, 2, 1, true), (2, 2, 2, false), (2, 2, 3, false)] {
            let (g, rep, _) = ce_form(k, l, v).unwrap();
            assert_eq!(minimal_instance(&g, &rep).unwrap(), minimal, "({k},{l}) #{v}");
        }
    }

    #[test]
    fn census_up_to_six_finds_the_small_forms() {
        let c = ce_census(6);
        let labels: Vec<_> = c.keys().filter(|(t, _, _)| *t == ClassTag::Ce).map(|&(_, k, l)| (k, l)).collect();
        assert_eq!(labels, vec![(1, Some(1)), (2, Some(1)), (2, Some(2))]);
        for (k, l, v) in [(1, 1, 0), (2, 2, 0)] {
            let (g, _, _) = ce_form(k, l, v).unwrap();
            assert!(c[&(ClassTag::Ce, k, Some(l))].iter().any(|e| e.graph.n() == g.n() && e.graph.m() == g.m()), "({k},{l}) #{v}");
        }
    }

    #[test]
    #[ignore]
    fn print_census() {
        let max_n: usize = std::env::var("CENSUS_N").ok().and_then(|s| s.parse().ok()).unwrap_or(7);
        let t = std::time::Instant::now();
        let c = ce_census(max_n);
        for ((class, k, l), entries) in &c {
            println!("{} k={k} l={l:?}: {}", class.tag(), entries.len());
            for e in entries {
                let edges: Vec<_> = e.graph.edges().collect();
                println!("  n={} edges={:?}", e.graph.n(), edges);
                println!("  rep={:?}", e.rep.predrawn().map(|(v, iv)| (v, iv.l.to_string(), iv.r.to_string())).collect::<Vec<_>>());
                println!("  roles={:?} paths={:?}", e.obstruction.roles, e.obstruction.paths);
            }
        }
        println!("{:?}", t.elapsed());
    }
}

