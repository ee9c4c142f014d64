//! LexBFS, perfect elimination orderings and maximal cliques.

use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalClique {
    pub id: usize,
    pub members: VertexSet,
}

/// Result of clique extraction: either all maximal cliques or an induced
/// cycle of length at least four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(Vec<MaximalClique>),
    Hole(Vec<Vertex>),
}

/// Lexicographic breadth-first search. Ties go to the vertex that comes
/// first in `tie_order` (identity when `None`). Returns the visit order.
pub fn lexbfs(g: &Graph, tie_order: Option<&[Vertex]>) -> Vec<Vertex> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let init: Vec<Vertex> = match tie_order {
        Some(t) => t.to_vec(),
        None => (0..n).collect(),
    };
    // Neighbor lists in tie order, so split classes keep that order.
    let mut nbrs: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &v in &init {
        for &w in g.neighbors(v) {
            nbrs[w].push(v);
        }
    }

    const NIL: usize = usize::MAX;
    // Classes are doubly linked lists of vertices, chained in label order.
    let mut vnext = vec![NIL; n];
    let mut vprev = vec![NIL; n];
    let mut cls = vec![0usize; n];
    let mut head: Vec<usize> = vec![init[0]];
    let mut tail: Vec<usize> = vec![init[n - 1]];
    let mut size: Vec<usize> = vec![n];
    let mut cnext: Vec<usize> = vec![NIL];
    let mut cprev: Vec<usize> = vec![NIL];
    let mut split: Vec<(usize, usize)> = vec![(NIL, NIL)];
    for i in 0..n {
        let v = init[i];
        if i > 0 {
            vprev[v] = init[i - 1];
        }
        if i + 1 < n {
            vnext[v] = init[i + 1];
        }
    }
    let mut first_class = 0usize;
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    fn unlink(
        v: usize,
        cls: &[usize],
        vnext: &mut [usize],
        vprev: &mut [usize],
        head: &mut [usize],
        tail: &mut [usize],
        size: &mut [usize],
    ) {
        let c = cls[v];
        let (p, nx) = (vprev[v], vnext[v]);
        if p != usize::MAX {
            vnext[p] = nx;
        } else {
            head[c] = nx;
        }
        if nx != usize::MAX {
            vprev[nx] = p;
        } else {
            tail[c] = p;
        }
        vprev[v] = usize::MAX;
        vnext[v] = usize::MAX;
        size[c] -= 1;
    }

    for step in 0..n {
        while size[first_class] == 0 {
            first_class = cnext[first_class];
        }
        let v = head[first_class];
        unlink(v, &cls, &mut vnext, &mut vprev, &mut head, &mut tail, &mut size);
        visited[v] = true;
        order.push(v);
        for &w in &nbrs[v] {
            if visited[w] {
                continue;
            }
            let c = cls[w];
            let nc = if split[c].0 == step {
                split[c].1
            } else {
                let nc = head.len();
                head.push(NIL);
                tail.push(NIL);
                size.push(0);
                split.push((NIL, NIL));
                let p = cprev[c];
                cprev.push(p);
                cnext.push(c);
                if p != NIL {
                    cnext[p] = nc;
                }
                if c == first_class {
                    first_class = nc;
                }
                cprev[c] = nc;
                split[c] = (step, nc);
                nc
            };
            unlink(w, &cls, &mut vnext, &mut vprev, &mut head, &mut tail, &mut size);
            cls[w] = nc;
            if tail[nc] == NIL {
                head[nc] = w;
            } else {
                vnext[tail[nc]] = w;
                vprev[w] = tail[nc];
            }
            tail[nc] = w;
            size[nc] += 1;
        }
    }
    order
}

/// Checks that the reverse of `visit` is a perfect elimination ordering.
/// On failure returns `(v, p, w)`: `p` and `w` are earlier-visited
/// neighbors of `v` that are not adjacent to each other.
pub fn peo_violation(g: &Graph, visit: &[Vertex]) -> Option<(Vertex, Vertex, Vertex)> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    // For v, parent = earlier neighbor visited last; the other earlier
    // neighbors must all be adjacent to it.
    let mut demands: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
    for &v in visit {
        let earlier = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]);
        let Some(p) = earlier.clone().max_by_key(|&w| pos[w]) else { continue };
        for w in earlier {
            if w != p {
                demands[p].push((v, w));
            }
        }
    }
    let mut mark = vec![usize::MAX; n];
    for p in 0..n {
        if demands[p].is_empty() {
            continue;
        }
        for &x in g.neighbors(p) {
            mark[x] = p;
        }
        for &(v, w) in &demands[p] {
            if mark[w] != p {
                return Some((v, p, w));
            }
        }
    }
    None
}

/// Maximal cliques of a chordal graph, or a hole.
pub fn maximal_cliques(g: &Graph) -> Chordality {
    let visit = lexbfs(g, None);
    if let Some((v, p, w)) = peo_violation(g, &visit) {
        return Chordality::Hole(hole_through(g, v, p, w).unwrap_or_else(|| find_hole(g).expect("graph is not chordal")));
    }
    Chordality::Chordal(cliques_from_visit(g, &visit))
}

/// Maximal cliques from a LexBFS visit order of a chordal graph. Clique
/// ids follow the visit position of the vertex that generates them.
pub fn cliques_from_visit(g: &Graph, visit: &[Vertex]) -> Vec<MaximalClique> {
    let n = g.n();
    let mut pos = vec![0usize; n];
    for (i, &v) in visit.iter().enumerate() {
        pos[v] = i;
    }
    let mut parent = vec![usize::MAX; n];
    let mut earlier_count = vec![0usize; n];
    for &v in visit {
        let earlier = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]);
        earlier_count[v] = earlier.clone().count();
        if let Some(p) = earlier.max_by_key(|&w| pos[w]) {
            parent[v] = p;
        }
    }
    // The candidate of p is swallowed by that of a child u exactly when u's
    // earlier neighborhood is p's plus p itself.
    let mut swallowed = vec![false; n];
    for v in 0..n {
        let p = parent[v];
        if p != usize::MAX && earlier_count[v] == earlier_count[p] + 1 {
            swallowed[p] = true;
        }
    }
    let mut out = Vec::new();
    for &v in visit {
        if swallowed[v] {
            continue;
        }
        let mut members: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        members.push(v);
        members.sort_unstable();
        out.push(MaximalClique { id: out.len(), members });
    }
    out
}

/// Closes the non-adjacent pair `p`, `w` of neighbors of `v` into a hole
/// using a shortest path that avoids the rest of `N[v]`.
fn hole_through(g: &Graph, v: Vertex, p: Vertex, w: Vertex) -> Option<Vec<Vertex>> {
    let mut blocked = vec![false; g.n()];
    blocked[v] = true;
    for &x in g.neighbors(v) {
        blocked[x] = true;
    }
    blocked[p] = false;
    blocked[w] = false;
    let path = g.shortest_path_within(p, w, |x| !blocked[x])?;
    let mut cycle = vec![v];
    cycle.extend(path);
    Some(cycle)
}

/// Searches every vertex and every non-adjacent pair of its neighbors.
pub fn find_hole(g: &Graph) -> Option<Vec<Vertex>> {
    for v in g.vertices() {
        let nb = g.neighbors(v);
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !g.adjacent(a, b) {
                    if let Some(h) = hole_through(g, v, a, b) {
                        return Some(h);
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, cycle, path};

    fn sets(c: &Chordality) -> Vec<Vec<Vertex>> {
        match c {
            Chordality::Chordal(cs) => {
                let mut v: Vec<_> = cs.iter().map(|c| c.members.clone()).collect();
                v.sort();
                v
            }
            Chordality::Hole(_) => panic!("expected chordal"),
        }
    }

    #[test]
    fn clique_examples() {
        assert_eq!(sets(&maximal_cliques(&path(3))), vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(sets(&maximal_cliques(&complete(4))), vec![vec![0, 1, 2, 3]]);
        match maximal_cliques(&cycle(4)) {
            Chordality::Hole(h) => assert_eq!(h.len(), 4),
            _ => panic!("C4 is not chordal"),
        }
        match maximal_cliques(&cycle(5)) {
            Chordality::Hole(h) => assert_eq!(h.len(), 5),
            _ => panic!("C5 is not chordal"),
        }
    }

    #[test]
    fn lexbfs_respects_ties() {
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (2, 3)]).unwrap();
        assert_eq!(lexbfs(&g, None), vec![0, 1, 2, 3]);
        assert_eq!(lexbfs(&g, Some(&[3, 2, 1, 0])), vec![3, 2, 0, 1]);
    }

    #[test]
    fn isolated_and_empty() {
        assert_eq!(sets(&maximal_cliques(&Graph::from_edges(2, &[]).unwrap())), vec![vec![0], vec![1]]);
        assert_eq!(sets(&maximal_cliques(&Graph::empty())), Vec::<Vec<Vertex>>::new());
    }
}
