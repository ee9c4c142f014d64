//! Peeling a Q-node into the layers of a k-FAT obstruction, and the
//! covered-endpoint construction built on top of it.

use crate::catalog::Fat;
use crate::error::{internal, invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::recognition::{MpqTree, NodeId, NodeKind};

/// The vertices of `G[Q]` for one Q-node, with their section ranges.
pub struct QFrame<'a> {
    pub g: &'a Graph,
    pub tree: &'a MpqTree,
    pub q: NodeId,
    inside: Vec<bool>,
}

impl<'a> QFrame<'a> {
    pub fn new(g: &'a Graph, tree: &'a MpqTree, q: NodeId) -> Result<QFrame<'a>> {
        if tree.node(q).kind != NodeKind::Q {
            return invalid(format!("node {q} is not a Q-node"));
        }
        let mut inside = vec![false; g.n()];
        for v in tree.subtree_vertices(q) {
            inside[v] = true;
        }
        Ok(QFrame { g, tree, q, inside })
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.inside.get(v).copied().unwrap_or(false)
    }

    /// Leftmost and rightmost section, 0-based.
    pub fn span(&self, v: Vertex) -> (usize, usize) {
        self.tree.section_range(self.q, v).expect("vertex of G[Q]")
    }

    /// The span read left to right when `forward`, right to left otherwise.
    pub fn oriented(&self, v: Vertex, forward: bool) -> (i64, i64) {
        let (l, r) = self.span(v);
        if forward {
            (l as i64, r as i64)
        } else {
            (-(r as i64), -(l as i64))
        }
    }

    /// Child position of the subtree holding clique `a`.
    pub fn position(&self, a: usize) -> Option<usize> {
        self.tree.child_index_towards(self.q, self.tree.leaf_of(a))
    }

    pub fn section(&self, i: usize) -> &[Vertex] {
        &self.tree.node(self.q).sections[i]
    }

    /// Vertices whose span begins at section `i` in the given reading
    /// direction, including those of the `i`-th subtree.
    fn starting_at(&self, i: usize, forward: bool) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self
            .section(i)
            .iter()
            .copied()
            .filter(|&v| {
                let (l, r) = self.span(v);
                if forward {
                    l == i
                } else {
                    r == i
                }
            })
            .collect();
        if out.is_empty() {
            let child = self.tree.node(self.q).children[i];
            out = self.tree.subtree_vertices(child).into_iter().filter(|&v| self.tree.home(v).node != self.q).collect();
        }
        out
    }

    /// Shortest path inside `G[Q]` through vertices passing `ok`.
    pub fn path(&self, s: Vertex, t: Vertex, ok: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
        self.g.shortest_path_within(s, t, |v| self.contains(v) && ok(v))
    }
}

/// A peeled k-FAT and the number of adjacency entries scanned.
#[derive(Clone, Debug)]
pub struct KFat {
    pub fat: Fat,
    pub edge_visits: usize,
}

impl KFat {
    pub fn vertices(&self) -> Vec<Vertex> {
        self.fat.vertices()
    }
}

fn trace(parent: &[Vertex], from: Vertex, to: Vertex) -> Vec<Vertex> {
    let mut p = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        p.push(cur);
    }
    p.reverse();
    p
}

/// Peels `G[Q]` starting from `x`, `y`, `z`, where `z` lies between `x` and
/// `y` in the Q-node and `y` is adjacent to neither. `y` only needs a
/// forced position; it does not have to be pre-drawn.
///
/// Each round searches the component `C(x)` of the live vertices minus
/// `N[y]`. When it reaches `z` the shortest path closes the base layer.
/// Otherwise the neighbors `W` of that component in `N[y]` form the
/// separator, `t` is the one ending first, `C(x)` and `W` are retired, the
/// next `x` starts in the section just after `t`, and `y` and `z` swap.
/// Retired vertices are never scanned again; `N[y]` and `N[z]` are marked
/// once, so the scan count stays within `2(n+m)`.
pub fn build_k_fat(frame: &QFrame<'_>, x: Vertex, y: Vertex, z: Vertex) -> Result<KFat> {
    let g = frame.g;
    let n = g.n();
    if ![x, y, z].iter().all(|&v| frame.contains(v)) {
        return invalid("peeling needs x, y, z inside the Q-node");
    }
    if x == y || y == z || x == z || g.adjacent(x, y) || g.adjacent(y, z) {
        return invalid("peeling needs y distinct from and non-adjacent to x and z");
    }
    let mut visits = 0;
    let mut near = [vec![false; n], vec![false; n]];
    for (i, &c) in [y, z].iter().enumerate() {
        near[i][c] = true;
        for &w in g.neighbors(c) {
            visits += 1;
            near[i][w] = true;
        }
    }
    let mut alive: Vec<bool> = (0..n).map(|v| frame.contains(v)).collect();
    let mut seen = vec![false; n];
    let mut in_w = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let (mut x, mut y, mut z) = (x, y, z);
    let mut side = 0;
    let mut layers: Vec<(Vertex, Vertex, Vec<Vertex>)> = Vec::new();
    loop {
        let ny = &near[side];
        if ny[x] || !alive[x] {
            return internal(format!("peeling round {}: x is adjacent to y or retired", layers.len() + 1));
        }
        let forward = frame.span(x).0 < frame.span(y).0;
        let mut comp = vec![x];
        seen[x] = true;
        let mut w_set = Vec::new();
        let mut head = 0;
        while head < comp.len() {
            let c = comp[head];
            head += 1;
            for &w in g.neighbors(c) {
                visits += 1;
                if !alive[w] {
                    continue;
                }
                if ny[w] {
                    if !in_w[w] {
                        in_w[w] = true;
                        parent[w] = c;
                        w_set.push(w);
                    }
                } else if !seen[w] {
                    seen[w] = true;
                    parent[w] = c;
                    comp.push(w);
                }
            }
        }
        if seen[z] {
            let base = trace(&parent, x, z);
            let mut xs = vec![x];
            let mut ts = Vec::new();
            let mut paths = vec![base];
            for (lx, lt, lp) in layers.into_iter().rev() {
                xs.push(lx);
                ts.push(lt);
                paths.push(lp);
            }
            // y and z swapped once per layer.
            let (top_y, top_z) = if xs.len() % 2 == 1 { (y, z) } else { (z, y) };
            crate::finder::record_kfat(visits, g);
            return Ok(KFat { fat: Fat { x: xs, t: ts, paths, y: top_y, z: top_z }, edge_visits: visits });
        }
        let key = |v: Vertex| (frame.oriented(v, forward).1, v);
        let Some(&t) = w_set.iter().min_by_key(|&&v| key(v)) else {
            return internal("peeling: C(x) has no neighbor in N[y]");
        };
        let p = trace(&parent, x, t);
        for &v in &comp {
            alive[v] = false;
        }
        for &v in &w_set {
            alive[v] = false;
            in_w[v] = false;
        }
        let (tl, tr) = frame.span(t);
        let next = if forward { Some(tr + 1) } else { tl.checked_sub(1) };
        let sections = frame.tree.node(frame.q).sections.len();
        let Some(i) = next.filter(|&i| i < sections) else {
            return internal("peeling: t reaches the end of the Q-node");
        };
        let nx = frame.starting_at(i, forward).into_iter().filter(|&v| alive[v] && !g.adjacent(t, v)).min();
        let Some(nx) = nx else {
            return internal("peeling: no vertex starts after t");
        };
        layers.push((x, t, p));
        x = nx;
        std::mem::swap(&mut y, &mut z);
        side ^= 1;
    }
}

/// A covered-endpoint candidate: the vertex set and its `(k, l)`.
#[derive(Clone, Debug)]
pub struct CeBuild {
    pub vertices: Vec<Vertex>,
    pub k: usize,
    pub l: usize,
}

/// Builds the covered-endpoint structure for `x`, `y`, `z` in the Q-node
/// and the common pre-drawn neighbor `u` single overlapping `z`.
pub fn build_kl_ce(frame: &QFrame<'_>, x: Vertex, y: Vertex, z: Vertex, u: Vertex) -> Result<CeBuild> {
    let g = frame.g;
    if g.adjacent(x, y) || g.adjacent(x, z) || g.adjacent(y, z) {
        return invalid("x, y, z must be pairwise non-adjacent");
    }
    let avoid = |c: Vertex| move |v: Vertex| v != c && !g.adjacent(v, c);
    let pk = frame.path(x, z, avoid(y));
    let pl = frame.path(y, z, avoid(x));
    let mut vs = vec![u, x, y, z];
    match (pk, pl) {
        (Some(pk), Some(pl)) => {
            vs.extend(pk);
            vs.extend(pl);
            Ok(CeBuild { vertices: vs, k: 1, l: 1 })
        }
        (None, Some(pl)) => {
            let h = build_k_fat(frame, x, y, z)?;
            vs.extend(h.vertices());
            vs.extend(pl);
            Ok(CeBuild { vertices: vs, k: h.fat.k(), l: 1 })
        }
        (Some(pk), None) => {
            let h = build_k_fat(frame, y, x, z)?;
            vs.extend(h.vertices());
            vs.extend(pk);
            Ok(CeBuild { vertices: vs, k: h.fat.k(), l: 1 })
        }
        (None, None) => two_two(frame, x, y, z, u),
    }
}

/// Neither side reaches `z`: both `x` and `y` sit in big components of
/// `G[Q] \ W` and one peel from each side closes the structure.
fn two_two(frame: &QFrame<'_>, x: Vertex, y: Vertex, z: Vertex, u: Vertex) -> Result<CeBuild> {
    let g = frame.g;
    let n = g.n();
    let cx = g.component_within(x, |v| frame.contains(v) && v != y && !g.adjacent(v, y));
    let mut in_cx = vec![false; n];
    for &v in &cx {
        in_cx[v] = true;
    }
    let mut w: Vec<Vertex> = cx.iter().flat_map(|&c| g.neighbors(c).iter().copied()).filter(|&v| frame.contains(v) && !in_cx[v]).collect();
    w.sort_unstable();
    w.dedup();
    let forward = frame.span(x).0 < frame.span(y).0;
    let t = w.iter().copied().min_by_key(|&v| (frame.oriented(v, forward).1, v));
    let t2 = w.iter().copied().min_by_key(|&v| (-frame.oriented(v, forward).0, v));
    let (Some(t), Some(t2)) = (t, t2) else {
        return internal("covered endpoint: empty separator");
    };
    let mut in_w = vec![false; n];
    for &v in &w {
        in_w[v] = true;
    }
    let cy = g.component_within(y, |v| frame.contains(v) && !in_w[v]);
    let mut in_cy = vec![false; n];
    for &v in &cy {
        in_cy[v] = true;
    }
    let x1 = cy.iter().copied().filter(|&v| v != t && !g.adjacent(v, t)).min_by_key(|&v| (frame.oriented(v, forward).0, v));
    let y1 = cx.iter().copied().filter(|&v| v != t2 && !g.adjacent(v, t2)).min_by_key(|&v| (-frame.oriented(v, forward).1, v));
    let (Some(x1), Some(y1)) = (x1, y1) else {
        return internal("covered endpoint: a pivot is universal for its component");
    };
    let parts = [
        frame.path(x, t, |v| in_cx[v] || v == t),
        frame.path(x1, y, |v| in_cy[v]),
        frame.path(y, t2, |v| in_cy[v] || v == t2),
        frame.path(y1, x, |v| in_cx[v]),
    ];
    let mut vs = vec![u, x, y, z, t, t2, x1, y1];
    for p in parts {
        vs.extend(p.ok_or_else(|| crate::Error::Internal("covered endpoint: a layer path is missing".into()))?);
    }
    Ok(CeBuild { vertices: vs, k: 2, l: 2 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{generate, peel, ClassTag, GenSpec};
    use crate::recognition::{recognize, Recognition};

    fn fixture(k: usize, lens: &[usize]) -> (Graph, [Vertex; 3]) {
        let (g, _, o) = generate(&GenSpec::new(ClassTag::Fat, k).paths(lens)).unwrap();
        let r = |s: String| o.role(&s).unwrap();
        let xyz = [r(format!("x{k}")), r(format!("y{k}")), r(format!("z{k}"))];
        if k > 1 {
            return (g, xyz);
        }
        // y alone is isolated; a vertex seeing only y and z joins it on.
        let n = g.n();
        let mut edges: Vec<_> = g.edges().collect();
        edges.extend([(xyz[1], n), (xyz[2], n)]);
        (Graph::from_edges(n + 1, &edges).unwrap(), xyz)
    }

    fn q_frame<'a>(g: &'a Graph, tree: &'a MpqTree, vs: &[Vertex]) -> QFrame<'a> {
        (0..tree.nodes.len())
            .filter(|&q| tree.node(q).kind == NodeKind::Q)
            .filter_map(|q| QFrame::new(g, tree, q).ok())
            .find(|f| vs.iter().all(|&v| f.contains(v)))
            .expect("a Q-node holding x, y, z")
    }

    #[test]
    fn peels_generated_fats_within_budget() {
        for (k, lens) in [(1, vec![2]), (1, vec![4]), (2, vec![1, 1]), (2, vec![3, 2]), (3, vec![1, 1, 1]), (3, vec![2, 3, 1]), (4, vec![1, 2, 1, 2])] {
            let (g, [x, y, z]) = fixture(k, &lens);
            let Recognition::Interval(m) = recognize(&g).unwrap() else { panic!("not interval") };
            let frame = q_frame(&g, &m.tree, &[x, y, z]);
            let h = build_k_fat(&frame, x, y, z).unwrap();
            assert_eq!(h.fat.k(), k, "k={k} lens={lens:?}");
            assert!(h.edge_visits <= 2 * (g.n() + g.m()), "k={k}: {} visits", h.edge_visits);
            let set = h.vertices();
            let again = peel(&g, &set, x, y, z, false).expect("the peeled set is a FAT");
            assert_eq!(again.k(), k);
        }
    }

    #[test]
    fn rejects_bad_triples() {
        let (g, [x, y, z]) = fixture(2, &[1, 1]);
        let Recognition::Interval(m) = recognize(&g).unwrap() else { panic!("not interval") };
        let frame = q_frame(&g, &m.tree, &[x, y, z]);
        assert!(build_k_fat(&frame, x, x, z).is_err());
        let nb = g.neighbors(y)[0];
        assert!(build_k_fat(&frame, nb, y, z).is_err());
    }

    #[test]
    fn covered_endpoint_forms_rebuild() {
        for (k, l, v) in [(1, 1, 0), (1, 1, 1), (2, 1, 1), (2, 1, 2), (2, 2, 0), (2, 2, 1)] {
            let (g, _, o) = crate::catalog::forms::ce_form(k, l, v).unwrap();
            let r = |s: String| o.role(&s).unwrap();
            let (x, y, z, u) = (r(format!("x{k}")), r(format!("y{k}")), r(format!("z{k}")), r("u".into()));
            let Recognition::Interval(m) = recognize(&g).unwrap() else { panic!("not interval") };
            let frame = q_frame(&g, &m.tree, &[x, y, z]);
            let ce = build_kl_ce(&frame, x, y, z, u).unwrap();
            assert_eq!((ce.k, ce.l), (k, l), "({k},{l}) #{v}");
            let mut vs = ce.vertices.clone();
            vs.sort_unstable();
            vs.dedup();
            assert_eq!(vs.len(), g.n(), "({k},{l}) #{v}");
        }
    }
}
