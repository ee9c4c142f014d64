//! Interval graph recognition: maximal cliques, consecutive clique
//! orderings, MPQ-trees and witnesses for non-interval graphs.

pub mod c1p;
pub mod cliques;
pub mod lb;
pub mod mpq;

pub use cliques::{maximal_cliques, Chordality, MaximalClique};
pub use lb::{find_lb_obstruction, verify_lb, LbKind, LbObstruction};
pub use mpq::{Home, MpqNode, MpqTree, NodeId, NodeKind};

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};

/// An interval graph together with its cliques and MPQ-tree.
#[derive(Clone, Debug)]
pub struct IntervalModel {
    pub cliques: Vec<MaximalClique>,
    pub tree: MpqTree,
}

#[derive(Clone, Debug)]
pub enum Recognition {
    Interval(IntervalModel),
    NotInterval(LbObstruction),
}

/// Decides whether `g` is an interval graph and returns either its model
/// or a witness. A graph with no vertices has no model and is rejected.
pub fn recognize(g: &Graph) -> Result<Recognition> {
    if g.n() == 0 {
        return invalid("the empty graph has no clique tree");
    }
    let cliques = match maximal_cliques(g) {
        Chordality::Hole(h) => return Ok(Recognition::NotInterval(LbObstruction { kind: LbKind::Hole, vertices: h, paths: Vec::new() })),
        Chordality::Chordal(cs) => cs,
    };
    match c1p::consecutive_ordering(g, &cliques) {
        Some(order) => {
            let tree = MpqTree::from_ordering(g.n(), &cliques, &order)?;
            Ok(Recognition::Interval(IntervalModel { cliques, tree }))
        }
        None => Ok(Recognition::NotInterval(find_lb_obstruction(g)?)),
    }
}

pub fn is_interval(g: &Graph) -> bool {
    match maximal_cliques(g) {
        Chordality::Hole(_) => false,
        Chordality::Chordal(cs) => c1p::consecutive_ordering(g, &cs).is_some(),
    }
}

/// MPQ-tree of an interval graph from its maximal cliques.
pub fn build_mpq_tree(g: &Graph, cliques: &[MaximalClique]) -> Result<MpqTree> {
    match c1p::consecutive_ordering(g, cliques) {
        Some(order) => MpqTree::from_ordering(g.n(), cliques, &order),
        None => invalid("cliques admit no consecutive ordering; the graph has an asteroidal triple"),
    }
}

/// Connectivity of the subgraph induced by the sections of a subtree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubtreeConnectivity {
    pub connected: bool,
    /// The node's own section for P-nodes and leaves; empty for Q-nodes.
    pub section: VertexSet,
    pub components: Vec<VertexSet>,
}

/// Connectivity of `G[T[node]]`. Also checks that every child subtree of a
/// P-node induces a connected graph, which the tree shape guarantees.
pub fn subtree_graph_connected(t: &MpqTree, g: &Graph, node: NodeId) -> Result<SubtreeConnectivity> {
    let comps = |vs: &[Vertex]| -> Result<Vec<VertexSet>> {
        let h = g.induced_subgraph(vs)?;
        Ok(h.connected_components().into_iter().map(|c| c.into_iter().map(|i| vs[i]).collect()).collect())
    };
    let vs = t.subtree_vertices(node);
    let components = comps(&vs)?;
    let nd = t.node(node);
    if nd.kind == NodeKind::P {
        for &c in &nd.children {
            if comps(&t.subtree_vertices(c))?.len() > 1 {
                return crate::error::internal(format!("child {c} of P-node {node} induces a disconnected graph"));
            }
        }
    }
    let section = if nd.kind == NodeKind::Q { Vec::new() } else { nd.sections[0].clone() };
    Ok(SubtreeConnectivity { connected: components.len() == 1, section, components })
}

/// A vertex of `c` with no neighbor in `h`, smallest id first. Needs `G[h]`
/// connected and `c` disjoint from `h`.
pub fn nonadjacent_clique_vertex(g: &Graph, c: &MaximalClique, h: &[Vertex]) -> Result<Vertex> {
    if h.iter().any(|v| c.members.contains(v)) {
        return invalid("clique meets the vertex set");
    }
    if !g.is_connected_set(h) {
        return invalid("vertex set does not induce a connected graph");
    }
    let mut mark = vec![false; g.n()];
    for &v in h {
        mark[v] = true;
    }
    c.members
        .iter()
        .copied()
        .find(|&x| !g.neighbors(x).iter().any(|&w| mark[w]))
        .map_or_else(|| invalid("every clique vertex has a neighbor in the set"), Ok)
}

/// True when every inner vertex of `path` lies in sections of `q` and the
/// section ranges advance strictly in one direction along the path.
pub fn is_q_monotone(t: &MpqTree, q: NodeId, path: &[Vertex]) -> bool {
    if path.len() <= 2 {
        return true;
    }
    let mut spans = Vec::new();
    for &v in &path[1..path.len() - 1] {
        if t.home(v).node != q {
            return false;
        }
        let h = t.home(v);
        spans.push((h.left, h.right));
    }
    let up = spans.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1);
    let down = spans.windows(2).all(|w| w[0].0 > w[1].0 && w[0].1 > w[1].1);
    up || down
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{complete, path};

    #[test]
    fn recognize_examples() {
        assert!(matches!(recognize(&path(5)).unwrap(), Recognition::Interval(_)));
        assert!(matches!(recognize(&crate::graph::tests::cycle(4)).unwrap(), Recognition::NotInterval(_)));
        assert!(is_interval(&complete(5)));
    }

    #[test]
    fn disjoint_edges_are_disconnected_at_root() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let Recognition::Interval(m) = recognize(&g).unwrap() else { panic!() };
        let c = subtree_graph_connected(&m.tree, &g, m.tree.root).unwrap();
        assert!(!c.connected);
        assert!(c.section.is_empty());
        assert_eq!(c.components.len(), 2);
    }

    #[test]
    fn q_node_subtree_is_connected() {
        let g = path(4);
        let Recognition::Interval(m) = recognize(&g).unwrap() else { panic!() };
        assert!(subtree_graph_connected(&m.tree, &g, m.tree.root).unwrap().connected);
        assert!(is_q_monotone(&m.tree, m.tree.root, &[0, 1, 2, 3]));
        assert!(is_q_monotone(&m.tree, m.tree.root, &[0, 1]));
        // An inner vertex sitting in a leaf is not in a Q-section.
        assert!(!is_q_monotone(&m.tree, m.tree.root, &[1, 0, 1]));
    }

    #[test]
    fn nonadjacent_vertex() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let c = MaximalClique { id: 0, members: vec![0, 1] };
        assert_eq!(nonadjacent_clique_vertex(&g, &c, &[2]).unwrap(), 0);
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let c = MaximalClique { id: 0, members: vec![0, 1] };
        assert_eq!(nonadjacent_clique_vertex(&g, &c, &[2, 3]).unwrap(), 0);
        assert!(nonadjacent_clique_vertex(&g, &c, &[1, 2]).is_err());
    }
}
