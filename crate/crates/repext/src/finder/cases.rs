//! Candidate sets for obstructed leaves, P-nodes and Q-nodes.

use super::kfat::{build_k_fat, build_kl_ce, QFrame};
use super::{Candidate, FinderState, Obstructed, Side};
use crate::error::{internal, Error, Result};
use crate::extender::{Evidence, ObstructedKind};
use crate::graph::Vertex;
use crate::recognition::{nonadjacent_clique_vertex, NodeId};

pub(crate) fn dispatch(st: &FinderState<'_>, ob: &Obstructed<'_>) -> Result<Candidate> {
    let s = st.side(false);
    match (ob.kind, ob.evidence) {
        (ObstructedKind::Leaf, Evidence::EmptyClique(a)) => leaf_case(s, *a),
        (ObstructedKind::PNode, Evidence::Cycle { .. }) => {
            let (t1, t2, cliques) = pnode_two_cycle(ob.evidence)?;
            pnode_case(s, t1, t2, &cliques)
        }
        (ObstructedKind::QNode, Evidence::Orientation { forward, backward }) => {
            let frame = QFrame::new(s.g(), &s.model().tree, ob.node)?;
            let cliques = qnode_reduce(s, &frame, *forward, *backward)?;
            let mut subtrees: Vec<usize> = cliques.iter().map(|&c| pos(&frame, c)).collect::<Result<_>>()?;
            subtrees.sort_unstable();
            subtrees.dedup();
            match subtrees.len() {
                2 => qnode_two_subtrees(s, &frame, &cliques),
                3 => qnode_three_subtrees(s, &frame, &cliques),
                _ => internal("reduced Q-node cliques lie in one subtree"),
            }
        }
        _ => internal("evidence does not match the obstructed node kind"),
    }
}

fn missing(what: &str) -> Error {
    Error::Internal(format!("missing {what}"))
}

fn pos(frame: &QFrame<'_>, c: usize) -> Result<usize> {
    frame.position(c).ok_or_else(|| missing("clique below the Q-node"))
}

/// The smallest member of clique `a` adjacent to none of `avoid`.
fn clique_vertex_avoiding(s: Side<'_>, a: usize, avoid: &[Vertex]) -> Result<Vertex> {
    let g = s.g();
    s.clique(a)
        .members
        .iter()
        .copied()
        .find(|&v| avoid.iter().all(|&w| v != w && !g.adjacent(v, w)))
        .ok_or_else(|| missing(&format!("vertex of clique {a} avoiding the given ones")))
}

/// An empty admissible set: pre-drawn intervals outside `P(a)` cover
/// `[l(v), r(u)]`, so a pre-drawn path joins its two ends.
pub(crate) fn leaf_case(s: Side<'_>, a: usize) -> Result<Candidate> {
    let g = s.g();
    let (u, v) = (s.min_right(a)?, s.max_left(a)?);
    let (lo, hi) = (s.iv(v)?.l.clone(), s.iv(u)?.r.clone());
    let pa = s.pset(a);
    let outside: Vec<(Vertex, &crate::Interval)> = s.predrawn().filter(|(w, _)| !pa.contains(w)).collect();
    let x1 = outside.iter().filter(|(_, iv)| iv.contains(&lo)).max_by(|p, q| p.1.r.cmp(&q.1.r).then(q.0.cmp(&p.0))).map(|p| p.0);
    let z1 = outside.iter().filter(|(_, iv)| iv.contains(&hi)).min_by(|p, q| p.1.l.cmp(&q.1.l).then(p.0.cmp(&q.0))).map(|p| p.0);
    let (x1, z1) = (x1.ok_or_else(|| missing("cover of l(v)"))?, z1.ok_or_else(|| missing("cover of r(u)"))?);
    let p1 = g.shortest_path_within(x1, z1, |w| s.is_pre(w) && !pa.contains(&w)).ok_or_else(|| missing("pre-drawn path"))?;
    let y1 = nonadjacent_clique_vertex(g, s.clique(a), &p1)?;
    Ok(Candidate::new("leaf", [u, v, y1].into_iter().chain(p1)))
}

/// The extender already reports a two-cycle: the subtree roots and the
/// clique pairs `a1 < b1`, `a2 < b2` with `a1, b2` in the first subtree.
pub(crate) fn pnode_two_cycle(ev: &Evidence) -> Result<(NodeId, NodeId, Vec<usize>)> {
    match ev {
        Evidence::Cycle { subtrees, pairs } if subtrees.len() == 2 && pairs.len() == 2 => {
            Ok((subtrees[0], subtrees[1], vec![pairs[0].0, pairs[0].1, pairs[1].0, pairs[1].1]))
        }
        Evidence::Cycle { subtrees, .. } => internal(format!("a {}-cycle needs shortening", subtrees.len())),
        _ => internal("not a cycle"),
    }
}

/// Two cliques with coinciding zero-length open intervals.
fn two_cliques(s: Side<'_>, a: usize, b: usize) -> Result<Candidate> {
    let (u, v) = (s.min_right(a)?, s.max_left(a)?);
    let (ca, cb) = (&s.clique(a).members, &s.clique(b).members);
    let x = ca.iter().copied().find(|w| !cb.contains(w)).ok_or_else(|| missing("vertex of a outside b"))?;
    let y = cb.iter().copied().find(|w| !ca.contains(w)).ok_or_else(|| missing("vertex of b outside a"))?;
    Ok(Candidate::new("two cliques", [u, v, x, y]))
}

/// Reduces the two-cycle to two or three cliques and builds SE, 1-FAT or
/// 1-BI.
pub(crate) fn pnode_case(s: Side<'_>, t1: NodeId, t2: NodeId, cliques: &[usize]) -> Result<Candidate> {
    let tree = &s.model().tree;
    let mut pool = cliques.to_vec();
    pool.sort_unstable();
    pool.dedup();
    let side = |c: usize| tree.is_ancestor(t1, tree.leaf_of(c));
    for &x in &pool {
        for &y in &pool {
            if side(x) && !side(y) && s.before(x, y) && s.before(y, x) {
                return two_cliques(s, x, y);
            }
        }
    }
    for &p in &pool {
        for &m in &pool {
            for &r in &pool {
                if p != r && side(p) == side(r) && side(m) != side(p) && s.before(p, m) && s.before(m, r) {
                    let home = if side(p) { t1 } else { t2 };
                    return pnode_three(s, p, m, r, home);
                }
            }
        }
    }
    internal("no three cliques of the two-cycle form a chain")
}

fn pnode_three(s: Side<'_>, a: usize, b: usize, c: usize, home: NodeId) -> Result<Candidate> {
    let (s, a, c) = if s.pdiff(a, c).is_empty() { (s.flip(), c, a) } else { (s, a, c) };
    let g = s.g();
    let mut in_home = vec![false; g.n()];
    for v in s.model().tree.subtree_vertices(home) {
        in_home[v] = true;
    }
    let p = s.pdiff(a, c)[0];
    let r = *s.pdiff(c, b).first().ok_or_else(|| missing("r in P(c) \\ P(b)"))?;
    if let Some(&q) = s.pdiff(b, c).first() {
        let p1 = g.shortest_path_within(p, r, |v| in_home[v]).ok_or_else(|| missing("path in the subtree"))?;
        return Ok(Candidate::new("P-node case 1", [p, q, r].into_iter().chain(p1)));
    }
    let (u, v) = (s.min_right(b)?, s.max_left(b)?);
    let x1 = s.flip().slide(b, a, p)?.0;
    let z1 = s.slide(b, c, r)?.0;
    let cb = &s.clique(b).members;
    let p1 = g.shortest_path_within(x1, z1, |w| in_home[w] && !cb.contains(&w)).ok_or_else(|| missing("path avoiding b"))?;
    let y1 = nonadjacent_clique_vertex(g, s.clique(b), &p1)?;
    Ok(Candidate::new("P-node case 2", [u, v, y1].into_iter().chain(p1)))
}

/// Two or three of the four cliques that still rule out both orders of
/// the Q-node's children.
pub(crate) fn qnode_reduce(s: Side<'_>, frame: &QFrame<'_>, forward: (usize, usize), backward: (usize, usize)) -> Result<Vec<usize>> {
    let mut pool = vec![forward.0, forward.1, backward.0, backward.1];
    pool.dedup();
    let mut uniq: Vec<usize> = Vec::new();
    for c in pool {
        if !uniq.contains(&c) {
            uniq.push(c);
        }
    }
    let positions: Vec<usize> = uniq.iter().map(|&c| pos(frame, c)).collect::<Result<_>>()?;
    let defeats = |idx: &[usize]| {
        let mut fw = false;
        let mut bw = false;
        for &i in idx {
            for &j in idx {
                if i != j && s.before(uniq[i], uniq[j]) {
                    fw |= positions[i] > positions[j];
                    bw |= positions[i] < positions[j];
                }
            }
        }
        fw && bw
    };
    let m = uniq.len();
    for size in 2..=3 {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let idx: Vec<usize> = (0..m).filter(|&i| mask & (1 << i) != 0).collect();
            if defeats(&idx) {
                return Ok(idx.into_iter().map(|i| uniq[i]).collect());
            }
        }
    }
    internal("no three cliques obstruct the Q-node")
}

/// Orientation-aware helpers for one Q-node: `forward` reads it so that a
/// chosen reference subtree is on the left.
struct Reading<'f, 'a> {
    frame: &'f QFrame<'a>,
    forward: bool,
}

impl Reading<'_, '_> {
    fn left(&self, v: Vertex) -> i64 {
        self.frame.oriented(v, self.forward).0
    }

    fn right(&self, v: Vertex) -> i64 {
        self.frame.oriented(v, self.forward).1
    }

    fn left_of(&self, v: Vertex, w: Vertex) -> bool {
        self.right(v) < self.left(w)
    }
}

pub(crate) fn qnode_two_subtrees(s: Side<'_>, frame: &QFrame<'_>, cliques: &[usize]) -> Result<Candidate> {
    if let [x, y] = *cliques {
        return two_cliques(s, x, y);
    }
    let mut chain = None;
    for &p in cliques {
        for &m in cliques {
            for &r in cliques {
                if p != r && p != m && m != r && pos(frame, p)? == pos(frame, r)? && s.before(p, m) && s.before(m, r) {
                    chain = chain.or(Some((p, m, r)));
                }
            }
        }
    }
    let (a, b, c) = chain.ok_or_else(|| missing("chain a < b < c"))?;
    let (s, a, c) = if s.pdiff(a, c).is_empty() { (s.flip(), c, a) } else { (s, a, c) };
    let g = s.g();
    let (i, j) = (pos(frame, a)?, pos(frame, b)?);
    let rd = Reading { frame, forward: i < j };
    let w_sec = frame.section(i).to_vec();
    let t2 = w_sec.iter().copied().min_by_key(|&v| (rd.right(v), v)).ok_or_else(|| missing("section above the subtree"))?;
    let mut in_w = vec![false; g.n()];
    for &v in &w_sec {
        in_w[v] = true;
    }
    let p = s.pdiff(a, c)[0];
    let r = *s.pdiff(c, b).first().ok_or_else(|| missing("r in P(c) \\ P(b)"))?;
    let after_t2 = |comp: &[Vertex]| comp.iter().copied().filter(|&v| v != t2 && !g.adjacent(v, t2)).min_by_key(|&v| (rd.left(v), v));
    if let Some(&q) = s.pdiff(b, c).first() {
        if let Some(p1) = frame.path(p, r, |v| v != q && !g.adjacent(v, q)) {
            return Ok(Candidate::new("Q-node two subtrees, 1-FAT", [p, q, r].into_iter().chain(p1)));
        }
        let comp = g.component_within(q, |v| frame.contains(v) && !in_w[v]);
        let x1 = after_t2(&comp).ok_or_else(|| missing("x1 outside N[t2]"))?;
        let p1 = g.shortest_path_within(q, x1, |v| comp.binary_search(&v).is_ok()).ok_or_else(|| missing("path from q to x1"))?;
        return Ok(Candidate::new("Q-node two subtrees, 2-FAT", [p, t2, q, r, x1].into_iter().chain(p1)));
    }
    let (u, v) = (s.min_right(b)?, s.max_left(b)?);
    let x = s.flip().slide(b, a, p)?.0;
    let z = s.slide(b, c, r)?.0;
    let cb = &s.clique(b).members;
    if let Some(p1) = frame.path(x, z, |w| !cb.contains(&w)) {
        let y1 = nonadjacent_clique_vertex(g, s.clique(b), &p1)?;
        return Ok(Candidate::new("Q-node two subtrees, 1-BI", [u, v, y1].into_iter().chain(p1)));
    }
    let seed = cb.iter().copied().find(|&w| frame.contains(w) && !in_w[w]).ok_or_else(|| missing("vertex of b below the section"))?;
    let comp = g.component_within(seed, |w| frame.contains(w) && !in_w[w]);
    let x1 = after_t2(&comp).ok_or_else(|| missing("x1 outside N[t2]"))?;
    let y2 = clique_vertex_avoiding(s, b, &[x, z])?;
    let p1 = g.shortest_path_within(y2, x1, |w| comp.binary_search(&w).is_ok()).ok_or_else(|| missing("path from y2 to x1"))?;
    Ok(Candidate::new("Q-node two subtrees, 2-BI", [x, y2, z, u, v, t2, x1].into_iter().chain(p1)))
}

pub(crate) fn qnode_three_subtrees(s0: Side<'_>, frame: &QFrame<'_>, cliques: &[usize]) -> Result<Candidate> {
    let mut cl = cliques.to_vec();
    let mut keyed: Vec<(usize, usize)> = cl.iter().map(|&c| Ok((pos(frame, c)?, c))).collect::<Result<_>>()?;
    keyed.sort_unstable();
    cl = keyed.iter().map(|&(_, c)| c).collect();
    let (a, b, c) = (cl[0], cl[1], cl[2]);
    // b ends up maximal: a < b > c.
    let s = if s0.before(a, b) && s0.before(c, b) {
        s0
    } else if s0.flip().before(a, b) && s0.flip().before(c, b) {
        s0.flip()
    } else {
        return internal("middle clique is neither maximal nor minimal");
    };
    // I_a ends first; with equal ends, the clique that precedes goes left.
    let (a, c) = if s.before(c, a) || (!s.before(a, c) && s.hi(a) > s.hi(c)) { (c, a) } else { (a, c) };
    let rd = Reading { frame, forward: pos(frame, a)? < pos(frame, c)? };
    let ce = |x, y, z, u, extra: &[Vertex], step| -> Result<Candidate> {
        let h = build_kl_ce(frame, x, y, z, u)?;
        Ok(Candidate::new(step, h.vertices.into_iter().chain(extra.iter().copied())))
    };
    let fat = |x, y, z, extra: &[Vertex], step| -> Result<Candidate> {
        let h = build_k_fat(frame, x, y, z)?;
        Ok(Candidate::new(step, h.vertices().into_iter().chain(extra.iter().copied())))
    };
    if !s.before(a, c) {
        // I_a inside I_c.
        let r = *s.pdiff(b, c).first().ok_or_else(|| missing("r in P(b) \\ P(c)"))?;
        let u = s.min_right(c)?;
        let z = s.slide(c, b, r)?.0;
        let x = clique_vertex_avoiding(s, a, &[z])?;
        let y = clique_vertex_avoiding(s, c, &[z])?;
        return ce(x, y, z, u, &[], "Q-node containment");
    }
    if let Some(&r) = s.pdiff(b, c).first() {
        if let Some(&p) = s.pdiff(a, c).first() {
            let (u, v) = (s.min_right(c)?, s.max_left(c)?);
            let z = if s.iv(u)?.r <= s.iv(r)?.r { r } else { s.slide(c, b, r)?.0 };
            let x = if s.iv(p)?.l <= s.iv(v)?.l { p } else { s.flip().slide(c, a, p)?.0 };
            let y = clique_vertex_avoiding(s, c, &[z])?;
            return fat(x, y, z, &[u, v], "Q-node p and r");
        }
        let q = s.pdiff(c, a).into_iter().min_by(|&v, &w| s.iv(v).unwrap().r.cmp(&s.iv(w).unwrap().r).then(v.cmp(&w))).ok_or_else(|| missing("q in P(c) \\ P(a)"))?;
        let u = s.min_right(a)?;
        if s.in_min_right(c, u) {
            let z = s.slide(c, b, r)?.0;
            let y = clique_vertex_avoiding(s, c, &[z])?;
            let x = clique_vertex_avoiding(s, a, &[z, q])?;
            return ce(x, y, z, u, &[q], "Q-node q and r, case 1");
        }
        let (mut r, mut b) = (r, b);
        let (iq, ir) = (s.iv(q)?, s.iv(r)?);
        if iq.l <= ir.l && ir.r <= iq.r {
            let rt = s.slide(c, b, r)?.0;
            let bt = (0..s.model().cliques.len())
                .find(|&d| s.clique(d).members.contains(&rt) && s.before(c, d))
                .ok_or_else(|| missing("clique of the slid r right of I_c"))?;
            r = rt;
            b = bt;
        }
        let sv = s.slide(a, b, r)?.0;
        let ir = s.iv(r)?;
        if rd.left_of(q, sv) {
            let z = if iq.r < ir.l { q } else { clique_vertex_avoiding(s, c, &[r])? };
            return fat(sv, r, z, &[q], "Q-node q and r, 2A");
        }
        if rd.left_of(sv, q) {
            let x = clique_vertex_avoiding(s, a, &[sv])?;
            let y = clique_vertex_avoiding(s, c, &[sv])?;
            return ce(x, y, sv, u, &[q], "Q-node q and r, 2B");
        }
        if !s.pset(c).contains(&sv) {
            let y = clique_vertex_avoiding(s, c, &[sv])?;
            let x = clique_vertex_avoiding(s, a, &[q, y, sv])?;
            return ce(x, y, sv, u, &[q], "Q-node q and r, 2C");
        }
        let y = if iq.intersects(ir) { clique_vertex_avoiding(s, c, &[r])? } else { q };
        let x = clique_vertex_avoiding(s, a, &[q, y, r])?;
        return fat(x, y, r, &[u, sv, q], "Q-node q and r, 2C pre-drawn");
    }
    // P(b) inside P(c).
    let mut q = *s.pdiff(c, b).first().ok_or_else(|| missing("q in P(c) \\ P(b)"))?;
    let r = s.pdiff(b, a).into_iter().max_by(|&v, &w| s.iv(v).unwrap().l.cmp(&s.iv(w).unwrap().l).then(w.cmp(&v))).ok_or_else(|| missing("r in P(b) \\ P(a)"))?;
    let mut c = c;
    if s.iv(r)?.l < s.iv(q)?.l {
        let qt = s.flip().slide(b, c, q)?.0;
        let ct = (0..s.model().cliques.len())
            .find(|&d| s.clique(d).members.contains(&qt) && s.before(a, d) && s.before(d, b))
            .ok_or_else(|| missing("clique of the slid q between I_a and I_b"))?;
        q = qt;
        c = ct;
    }
    if let Some(&x) = s.pdiff(a, c).first() {
        let z = clique_vertex_avoiding(s, b, &[q])?;
        return fat(x, q, z, &[r], "Q-node p and q");
    }
    let p = s.min_right(a)?;
    let (sv, pqs) = s.slide(a, c, q)?;
    if rd.left_of(sv, q) {
        let x = nonadjacent_clique_vertex(s.g(), s.clique(a), &pqs)?;
        return ce(x, q, sv, p, &pqs, "Q-node q, case 1");
    }
    if rd.left_of(q, sv) {
        let y = clique_vertex_avoiding(s, b, &[q, sv])?;
        return fat(sv, y, q, &[r, p], "Q-node q, case 2");
    }
    let x = clique_vertex_avoiding(s, a, &[q, sv, r])?;
    let z = clique_vertex_avoiding(s, b, &[q])?;
    fat(x, q, z, &[p, sv, r], "Q-node q, case 3")
}
