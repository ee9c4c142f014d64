//! Witnesses for graphs that are not interval graphs: a hole, or an
//! asteroidal triple shrunk to a minimal non-interval induced subgraph.

use super::cliques::{maximal_cliques, Chordality};
use super::is_interval;
use crate::error::{internal, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LbKind {
    Hole,
    AsteroidalTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LbObstruction {
    pub kind: LbKind,
    /// Hole vertices in cycle order, or for a triple `x, y, z` followed by
    /// the remaining vertices of the minimal subgraph in increasing order.
    pub vertices: VertexSet,
    /// For a triple: paths `x..y` avoiding `N[z]`, `y..z` avoiding `N[x]`
    /// and `x..z` avoiding `N[y]`. Empty for holes.
    pub paths: Vec<Vec<Vertex>>,
}

impl LbObstruction {
    /// The triple of an asteroidal witness.
    pub fn triple(&self) -> Option<[Vertex; 3]> {
        match self.kind {
            LbKind::AsteroidalTriple => Some([self.vertices[0], self.vertices[1], self.vertices[2]]),
            LbKind::Hole => None,
        }
    }
}

/// Component label of every vertex outside `N[z]`, `usize::MAX` inside.
fn labels_avoiding(g: &Graph, z: Vertex) -> Vec<usize> {
    let n = g.n();
    let mut label = vec![usize::MAX; n];
    let mut blocked = vec![false; n];
    blocked[z] = true;
    for &w in g.neighbors(z) {
        blocked[w] = true;
    }
    let mut next = 0;
    let mut queue = Vec::new();
    for s in 0..n {
        if blocked[s] || label[s] != usize::MAX {
            continue;
        }
        label[s] = next;
        queue.push(s);
        while let Some(x) = queue.pop() {
            for &y in g.neighbors(x) {
                if !blocked[y] && label[y] == usize::MAX {
                    label[y] = next;
                    queue.push(y);
                }
            }
        }
        next += 1;
    }
    label
}

/// First asteroidal triple in lexicographic order, if any.
pub fn find_asteroidal_triple(g: &Graph) -> Option<[Vertex; 3]> {
    let n = g.n();
    let labels: Vec<Vec<usize>> = (0..n).map(|z| labels_avoiding(g, z)).collect();
    let joined = |a: Vertex, b: Vertex, avoid: Vertex| {
        let l = &labels[avoid];
        l[a] != usize::MAX && l[a] == l[b]
    };
    for x in 0..n {
        for y in x + 1..n {
            if g.adjacent(x, y) {
                continue;
            }
            for z in y + 1..n {
                if joined(x, y, z) && joined(y, z, x) && joined(x, z, y) {
                    return Some([x, y, z]);
                }
            }
        }
    }
    None
}

fn avoiding(g: &Graph, a: Vertex, b: Vertex, c: Vertex) -> Option<Vec<Vertex>> {
    g.shortest_path_avoiding(a, b, &g.closed_neighborhood(c).ok()?)
}

/// Witness for a graph that is not an interval graph.
pub fn find_lb_obstruction(g: &Graph) -> Result<LbObstruction> {
    let cliques = maximal_cliques(g);
    if let Chordality::Hole(h) = cliques {
        return Ok(LbObstruction { kind: LbKind::Hole, vertices: h, paths: Vec::new() });
    }
    let Some([x, y, z]) = find_asteroidal_triple(g) else {
        return internal("no hole and no asteroidal triple in a graph reported as non-interval");
    };
    // Keep the triple and its paths, then delete while non-interval.
    let mut keep: Vec<Vertex> = vec![x, y, z];
    for (a, b, c) in [(x, y, z), (y, z, x), (x, z, y)] {
        keep.extend(avoiding(g, a, b, c).expect("triple paths exist"));
    }
    keep.sort_unstable();
    keep.dedup();
    let mut i = keep.len();
    while i > 0 {
        i -= 1;
        let mut trial = keep.clone();
        trial.remove(i);
        if !is_interval(&g.induced_subgraph(&trial)?) {
            keep = trial;
        }
    }
    let h = g.induced_subgraph(&keep)?;
    if let Chordality::Hole(cycle) = maximal_cliques(&h) {
        return internal(format!("induced subgraph of a chordal graph has a hole of length {}", cycle.len()));
    }
    let Some([a, b, c]) = find_asteroidal_triple(&h) else {
        return internal("minimal non-interval subgraph has no asteroidal triple");
    };
    let mut paths = Vec::new();
    for (p, q, r) in [(a, b, c), (b, c, a), (a, c, b)] {
        let path = avoiding(&h, p, q, r).expect("triple paths exist");
        paths.push(path.into_iter().map(|v| keep[v]).collect());
    }
    let triple = [keep[a], keep[b], keep[c]];
    let mut vertices = triple.to_vec();
    vertices.extend(keep.iter().copied().filter(|v| !triple.contains(v)));
    Ok(LbObstruction { kind: LbKind::AsteroidalTriple, vertices, paths })
}

/// Checks a witness against `g`: a hole must be an induced cycle of length
/// at least four; a triple must be asteroidal in the subgraph induced by
/// its vertices, with paths that avoid the right neighborhoods.
pub fn verify_lb(g: &Graph, lb: &LbObstruction) -> std::result::Result<(), String> {
    let n = g.n();
    if lb.vertices.iter().any(|&v| v >= n) {
        return Err("witness names an unknown vertex".into());
    }
    match lb.kind {
        LbKind::Hole => {
            let c = &lb.vertices;
            let k = c.len();
            if k < 4 {
                return Err(format!("cycle of length {k} is not a hole"));
            }
            for i in 0..k {
                for j in i + 1..k {
                    let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                    if g.adjacent(c[i], c[j]) != consecutive {
                        return Err(format!("{} and {} break the induced cycle", g.name(c[i]), g.name(c[j])));
                    }
                }
            }
            Ok(())
        }
        LbKind::AsteroidalTriple => {
            if lb.vertices.len() < 3 || lb.paths.len() != 3 {
                return Err("triple witness needs three vertices and three paths".into());
            }
            let [x, y, z] = [lb.vertices[0], lb.vertices[1], lb.vertices[2]];
            for (path, (a, b, avoid)) in lb.paths.iter().zip([(x, y, z), (y, z, x), (x, z, y)]) {
                if path.first() != Some(&a) || path.last() != Some(&b) {
                    return Err("path has wrong ends".into());
                }
                if path.windows(2).any(|w| !g.adjacent(w[0], w[1])) {
                    return Err("path uses a non-edge".into());
                }
                if path.iter().any(|&v| v == avoid || g.adjacent(v, avoid)) {
                    return Err(format!("path between {} and {} touches N[{}]", g.name(a), g.name(b), g.name(avoid)));
                }
                if path.iter().any(|v| !lb.vertices.contains(v)) {
                    return Err("path leaves the witness".into());
                }
            }
            Ok(())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::cycle;

    fn subdivided_claw() -> Graph {
        // Center 0, middles 1..3, tips 4..6.
        Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn holes() {
        for k in [4, 5, 7] {
            let lb = find_lb_obstruction(&cycle(k)).unwrap();
            assert_eq!(lb.kind, LbKind::Hole);
            assert_eq!(lb.vertices.len(), k);
            assert!(verify_lb(&cycle(k), &lb).is_ok());
        }
    }

    #[test]
    fn subdivided_claw_tips() {
        let g = subdivided_claw();
        assert!(!is_interval(&g));
        let lb = find_lb_obstruction(&g).unwrap();
        assert_eq!(lb.kind, LbKind::AsteroidalTriple);
        let mut t = lb.triple().unwrap();
        t.sort_unstable();
        assert_eq!(t, [4, 5, 6]);
        assert_eq!(lb.vertices.len(), 7);
        assert!(verify_lb(&g, &lb).is_ok());
    }

    #[test]
    fn padding_is_removed() {
        // Subdivided claw plus a pendant on the center and an extra edge off a tip.
        let g = Graph::from_edges(9, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (0, 7), (6, 8)]).unwrap();
        let lb = find_lb_obstruction(&g).unwrap();
        assert!(verify_lb(&g, &lb).is_ok());
        let mut vs = lb.vertices.clone();
        vs.sort_unstable();
        let h = g.induced_subgraph(&vs).unwrap();
        assert!(!is_interval(&h));
        for i in 0..vs.len() {
            let mut s = vs.clone();
            s.remove(i);
            assert!(is_interval(&g.induced_subgraph(&s).unwrap()));
        }
    }
}
