//! Deciding extendibility: reorder the MPQ-tree bottom-up against the
//! clique order, then place clique points greedily and stretch every free
//! interval over its cliques.

use std::collections::BTreeSet;

use crate::catalog::Certificate;
use crate::error::{internal, Result};
use crate::graph::Graph;
use crate::order::CliqueOrderContext;
use crate::partrep::{Interval, PartialRepresentation};
use crate::rational::{ExtRational, Rational};
use crate::recognition::{recognize, IntervalModel, LbObstruction, MaximalClique, MpqTree, NodeId, NodeKind, Recognition};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ObstructedKind {
    Leaf,
    PNode,
    QNode,
}

/// Why a node could not be reordered. Subtrees are named by their root
/// node; a pair `(a, b)` of cliques always means `a` before `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// The clique has an empty admissible set.
    EmptyClique(usize),
    /// Subtrees `cycle[i] -> cycle[i+1]` (cyclically), each arc witnessed
    /// by the clique pair at the same index.
    Cycle { subtrees: Vec<NodeId>, pairs: Vec<(usize, usize)> },
    /// One violated pair for the current child order and one for the
    /// reversed order.
    Orientation { forward: (usize, usize), backward: (usize, usize) },
}

#[derive(Clone, Debug)]
pub enum ReorderOutcome {
    /// A clique ordering that extends the clique order, and the reordered
    /// tree whose frontier it is.
    Ordered { ordering: Vec<usize>, tree: MpqTree },
    Obstructed { node: NodeId, kind: ObstructedKind, evidence: Evidence },
}

/// A full representation: clique points and one interval per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    /// Clique point of every clique, indexed by clique id.
    pub clique_points: Vec<Rational>,
    pub intervals: Vec<Interval>,
}

impl Realization {
    /// Every clique point and interval reflected through zero.
    pub fn mirrored(&self) -> Realization {
        Realization { clique_points: self.clique_points.iter().map(|p| -p.clone()).collect(), intervals: self.intervals.iter().map(Interval::flipped).collect() }
    }

    pub fn as_representation(&self) -> PartialRepresentation {
        PartialRepresentation::from_pairs(self.intervals.len(), self.intervals.iter().cloned().enumerate())
    }
}

/// Reorder summary of a processed subtree: the smallest right end of an
/// open interval among its cliques and the largest left end.
#[derive(Clone, Debug)]
struct Summary {
    sup: ExtRational,
    sup_clique: usize,
    inf: ExtRational,
    inf_clique: usize,
}

/// `i` must precede `j`.
fn before(si: &Summary, sj: &Summary) -> bool {
    si.sup <= sj.inf
}

fn merge(parts: &[&Summary]) -> Summary {
    let mut out = parts[0].clone();
    for s in &parts[1..] {
        if s.sup < out.sup {
            out.sup = s.sup.clone();
            out.sup_clique = s.sup_clique;
        }
        if s.inf > out.inf {
            out.inf = s.inf.clone();
            out.inf_clique = s.inf_clique;
        }
    }
    out
}

fn post_order(t: &MpqTree) -> Vec<NodeId> {
    let mut out = Vec::with_capacity(t.nodes.len());
    let mut stack = vec![(t.root, false)];
    while let Some((id, done)) = stack.pop() {
        if done {
            out.push(id);
            continue;
        }
        stack.push((id, true));
        for &c in t.node(id).children.iter().rev() {
            stack.push((c, false));
        }
    }
    out
}

/// Topological order of P-node children, or a two-cycle.
fn order_p_children(sums: &[&Summary]) -> std::result::Result<Vec<usize>, (usize, usize)> {
    let k = sums.len();
    let mut by_sup: BTreeSet<(&ExtRational, usize)> = (0..k).map(|i| (&sums[i].sup, i)).collect();
    let mut by_inf: BTreeSet<(&ExtRational, usize)> = (0..k).map(|i| (&sums[i].inf, i)).collect();
    let mut out = Vec::with_capacity(k);
    while !by_inf.is_empty() {
        let mut mins = by_sup.iter();
        let &(m1, a) = mins.next().expect("non-empty");
        let m2 = mins.next().map(|&(s, _)| s);
        // A child is a source when its inf is below every other child's sup.
        let other = by_inf.iter().find(|&&(_, j)| j != a).filter(|&&(f, _)| f < m1).map(|&(_, j)| j);
        let source = other.or_else(|| m2.map_or(true, |m| &sums[a].inf < m).then_some(a));
        match source {
            Some(j) => {
                by_sup.remove(&(&sums[j].sup, j));
                by_inf.remove(&(&sums[j].inf, j));
                out.push(j);
            }
            None => {
                // Nothing is a source, so every child has its sup-minimizer
                // among the others as a predecessor: `a` and the runner-up
                // precede each other.
                let b = by_sup.iter().nth(1).expect("a lone child is always a source").1;
                return Err((a, b));
            }
        }
    }
    Ok(out)
}

/// Processes the tree bottom-up. Every leaf is checked before any inner
/// node, so an empty admissible set is always reported at its leaf.
pub fn reorder_mpq(t: &MpqTree, ctx: &CliqueOrderContext) -> ReorderOutcome {
    for c in t.frontier() {
        if ctx.is_empty(c) {
            return ReorderOutcome::Obstructed { node: t.leaf_of(c), kind: ObstructedKind::Leaf, evidence: Evidence::EmptyClique(c) };
        }
    }
    let mut tree = t.clone();
    let mut sum: Vec<Option<Summary>> = vec![None; t.nodes.len()];
    for id in post_order(t) {
        let node = t.node(id);
        let s = match node.kind {
            NodeKind::Leaf(c) => {
                let ia = ctx.open_interval(c);
                Summary { sup: ia.hi.clone(), sup_clique: c, inf: ia.lo.clone(), inf_clique: c }
            }
            NodeKind::P => {
                let kids: Vec<&Summary> = node.children.iter().map(|&c| sum[c].as_ref().expect("post order")).collect();
                match order_p_children(&kids) {
                    Ok(order) => {
                        tree.permute_children(id, &order);
                        merge(&kids)
                    }
                    Err((a, b)) => {
                        let pairs = vec![(kids[a].sup_clique, kids[b].inf_clique), (kids[b].sup_clique, kids[a].inf_clique)];
                        let subtrees = vec![node.children[a], node.children[b]];
                        return ReorderOutcome::Obstructed { node: id, kind: ObstructedKind::PNode, evidence: Evidence::Cycle { subtrees, pairs } };
                    }
                }
            }
            NodeKind::Q => {
                let kids: Vec<&Summary> = node.children.iter().map(|&c| sum[c].as_ref().expect("post order")).collect();
                let forward = violation(&kids);
                if forward.is_some() {
                    let rev: Vec<&Summary> = kids.iter().rev().copied().collect();
                    match violation(&rev) {
                        None => tree.reverse_q(id),
                        Some(backward) => {
                            return ReorderOutcome::Obstructed {
                                node: id,
                                kind: ObstructedKind::QNode,
                                evidence: Evidence::Orientation { forward: forward.unwrap(), backward },
                            }
                        }
                    }
                }
                merge(&kids)
            }
        };
        sum[id] = Some(s);
    }
    ReorderOutcome::Ordered { ordering: tree.frontier(), tree }
}

/// First pair `(a, b)` with `a` before `b` but `a`'s subtree placed right
/// of `b`'s.
fn violation(kids: &[&Summary]) -> Option<(usize, usize)> {
    let mut best: Option<&Summary> = None;
    for s in kids {
        if let Some(b) = best {
            if before(s, b) {
                return Some((s.sup_clique, b.inf_clique));
            }
        }
        if best.map_or(true, |b| s.inf > b.inf) {
            best = Some(s);
        }
    }
    None
}

/// Greedy left-to-right clique points. Fails only when the ordering does
/// not extend the clique order.
pub fn place_clique_points(ordering: &[usize], ctx: &CliqueOrderContext) -> Result<Vec<Rational>> {
    let mut cps: Vec<Option<Rational>> = vec![None; ctx.clique_count()];
    let mut prev: Option<Rational> = None;
    for &a in ordering {
        let Some(p) = ctx.point_after(a, prev.as_ref()) else {
            return internal(format!("no admissible point for clique {a} after the previous clique point"));
        };
        cps[a] = Some(p.clone());
        prev = Some(p);
    }
    cps.into_iter()
        .enumerate()
        .map(|(a, p)| p.map_or_else(|| internal(format!("clique {a} missing from the ordering")), Ok))
        .collect()
}

/// Intervals over clique points. Pre-drawn vertices keep their intervals;
/// the result is checked against `g` before it is returned.
pub fn realize(g: &Graph, cliques: &[MaximalClique], ordering: &[usize], cps: &[Rational], rep: &PartialRepresentation) -> Result<Realization> {
    let n = g.n();
    let mut first: Vec<Option<usize>> = vec![None; n];
    let mut last: Vec<usize> = vec![0; n];
    for &a in ordering {
        for &v in &cliques[a].members {
            first[v].get_or_insert(a);
            last[v] = a;
        }
    }
    let mut intervals = Vec::with_capacity(n);
    for v in 0..n {
        let iv = match (rep.get(v), first[v]) {
            (Some(iv), _) => iv.clone(),
            (None, Some(a)) => Interval::new(cps[a].clone(), cps[last[v]].clone()),
            (None, None) => return internal(format!("vertex {} is in no clique", g.name(v))),
        };
        intervals.push(iv);
    }
    let r = Realization { clique_points: cps.to_vec(), intervals };
    if let Err(e) = r.as_representation().check_consistent(g) {
        return internal(format!("realization does not represent the graph: {e}"));
    }
    Ok(r)
}

/// Outcome of the decision procedure without certificate extraction.
#[derive(Clone, Debug)]
pub enum Decision {
    Extendible(Realization),
    NonExtendible { model: IntervalModel, ctx: CliqueOrderContext, node: NodeId, kind: ObstructedKind, evidence: Evidence },
    NotInterval(LbObstruction),
}

/// Checks consistency, recognizes `g` and reorders. A graph without
/// vertices is trivially extendible.
pub fn decide(g: &Graph, rep: &PartialRepresentation) -> Result<Decision> {
    rep.check_consistent(g)?;
    if g.n() == 0 {
        return Ok(Decision::Extendible(Realization { clique_points: Vec::new(), intervals: Vec::new() }));
    }
    let model = match recognize(g)? {
        Recognition::NotInterval(lb) => return Ok(Decision::NotInterval(lb)),
        Recognition::Interval(m) => m,
    };
    let ctx = CliqueOrderContext::new(rep, &model.cliques)?;
    match reorder_mpq(&model.tree, &ctx) {
        ReorderOutcome::Ordered { ordering, .. } => {
            let cps = place_clique_points(&ordering, &ctx)?;
            Ok(Decision::Extendible(realize(g, &model.cliques, &ordering, &cps, rep)?))
        }
        ReorderOutcome::Obstructed { node, kind, evidence } => {
            ctx.check_no_single_overlap()?;
            Ok(Decision::NonExtendible { model, ctx, node, kind, evidence })
        }
    }
}

/// Extendibility alone: no realization, no certificate. Non-interval
/// graphs are not extendible.
pub fn is_extendible(g: &Graph, rep: &PartialRepresentation) -> Result<bool> {
    if g.n() == 0 {
        return Ok(true);
    }
    let model = match recognize(g)? {
        Recognition::NotInterval(_) => return Ok(false),
        Recognition::Interval(m) => m,
    };
    let ctx = CliqueOrderContext::new(rep, &model.cliques)?;
    Ok(matches!(reorder_mpq(&model.tree, &ctx), ReorderOutcome::Ordered { .. }))
}

/// The full certifying pipeline: an extending representation, or an
/// obstruction that the catalog verifier accepts.
pub fn extend(g: &Graph, rep: &PartialRepresentation) -> Result<Certificate> {
    match decide(g, rep)? {
        Decision::Extendible(r) => Ok(Certificate::Extending(r)),
        Decision::NotInterval(lb) => Certificate::from_lb(g, &lb),
        Decision::NonExtendible { model, ctx, node, kind, evidence } => {
            crate::finder::certify(g, rep, &crate::finder::Obstructed { model: &model, ctx: &ctx, node, kind, evidence: &evidence })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, path};
    use crate::rational::int;

    fn model(g: &Graph) -> IntervalModel {
        match recognize(g).unwrap() {
            Recognition::Interval(m) => m,
            _ => panic!("not interval"),
        }
    }

    #[test]
    fn free_p3() {
        let g = path(3);
        let rep = PartialRepresentation::empty(3);
        let Decision::Extendible(r) = decide(&g, &rep).unwrap() else { panic!() };
        let mut cps = r.clique_points.clone();
        cps.sort();
        assert_eq!(cps, vec![int(1), int(2)]);
        let ends: Vec<_> = r.intervals.iter().map(|iv| (iv.l.clone(), iv.r.clone())).collect();
        // Either orientation is fine; the middle vertex spans both points.
        assert_eq!(ends[1], (int(1), int(2)));
        assert!(ends[0].0 == ends[0].1 && ends[2].0 == ends[2].1);
    }

    #[test]
    fn free_k2_single_point() {
        let g = complete(2);
        let Decision::Extendible(r) = decide(&g, &PartialRepresentation::empty(2)).unwrap() else { panic!() };
        assert_eq!(r.clique_points, vec![int(1)]);
        assert_eq!(r.intervals, vec![Interval::ints(1, 1), Interval::ints(1, 1)]);
    }

    #[test]
    fn empty_admissible_set_obstructs_leaf() {
        // 1 and 2 pre-drawn as the same point, so {0,1} has nowhere to go.
        let g = path(4);
        let rep = PartialRepresentation::from_pairs(4, [(1, Interval::ints(0, 0)), (2, Interval::ints(0, 0))]);
        match decide(&g, &rep).unwrap() {
            Decision::NonExtendible { kind, .. } => assert_eq!(kind, ObstructedKind::Leaf),
            _ => panic!("expected a leaf obstruction"),
        }
    }

    #[test]
    fn one_fat_is_obstructed() {
        // Path x - p - z and y far from it; pre-drawn in the order x, y, z.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let rep = PartialRepresentation::from_pairs(4, [(0, Interval::ints(0, 1)), (3, Interval::ints(2, 3)), (2, Interval::ints(4, 5))]);
        let d = decide(&g, &rep).unwrap();
        assert!(matches!(d, Decision::NonExtendible { .. }));
        assert!(!is_extendible(&g, &rep).unwrap());
        // Flipping y to the far right makes it fine.
        let rep = PartialRepresentation::from_pairs(4, [(0, Interval::ints(0, 1)), (3, Interval::ints(6, 7)), (2, Interval::ints(4, 5))]);
        assert!(is_extendible(&g, &rep).unwrap());
    }

    #[test]
    fn points_land_in_admissible_sets() {
        let g = path(4);
        let rep = PartialRepresentation::from_pairs(4, [(1, Interval::new(int(2), int(5)))]);
        let m = model(&g);
        let ctx = CliqueOrderContext::new(&rep, &m.cliques).unwrap();
        let ReorderOutcome::Ordered { ordering, .. } = reorder_mpq(&m.tree, &ctx) else { panic!() };
        let cps = place_clique_points(&ordering, &ctx).unwrap();
        for w in ordering.windows(2) {
            assert!(cps[w[0]] < cps[w[1]]);
        }
        for &a in &ordering {
            assert!(ctx.in_admissible(a, &cps[a]));
        }
        let r = realize(&g, &m.cliques, &ordering, &cps, &rep).unwrap();
        assert_eq!(r.intervals[1], Interval::new(int(2), int(5)));
    }

    #[test]
    fn p_node_two_cycle() {
        // Star with three leaves; leaves pre-drawn so that two P-children
        // must precede each other.
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let rep = PartialRepresentation::from_pairs(4, [(1, Interval::ints(0, 0)), (2, Interval::ints(0, 0))]);
        assert!(rep.check_consistent(&g).is_err());
        let rep = PartialRepresentation::from_pairs(4, [(0, Interval::ints(0, 10)), (1, Interval::ints(0, 1)), (2, Interval::ints(9, 10)), (3, Interval::ints(4, 5))]);
        assert!(is_extendible(&g, &rep).unwrap());
    }
}
