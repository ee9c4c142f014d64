//! MPQ-trees: PQ-trees over the maximal cliques whose nodes carry vertex
//! sections.
//!
//! The tree is built from any one consecutive clique ordering. Vertex
//! spans are positions in that ordering; spans that cross each other
//! (overlap) form components, each component with two or more distinct
//! spans becomes a Q-node whose children are the segments cut out by the
//! component's endpoints, and every other node is a leaf or a P-node.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

use super::cliques::MaximalClique;
use crate::error::{internal, invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};

pub type NodeId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Leaf(usize),
    P,
    Q,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpqNode {
    pub kind: NodeKind,
    pub children: Vec<NodeId>,
    /// One section for leaves and P-nodes, one per child for Q-nodes.
    pub sections: Vec<VertexSet>,
    pub parent: Option<NodeId>,
}

/// Where a vertex lives: its node and the range of that node's sections.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Home {
    pub node: NodeId,
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MpqTree {
    pub nodes: Vec<MpqNode>,
    pub root: NodeId,
    leaf_of: Vec<NodeId>,
    home: Vec<Home>,
}

struct Comp {
    cl: usize,
    cr: usize,
    rights: BinaryHeap<Reverse<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

impl MpqTree {
    /// Builds the tree from a consecutive ordering of `cliques`.
    pub fn from_ordering(n: usize, cliques: &[MaximalClique], order: &[usize]) -> Result<MpqTree> {
        let k = order.len();
        if k == 0 || k != cliques.len() {
            return invalid("ordering must list every clique");
        }
        let mut pos = vec![0usize; k];
        for (i, &c) in order.iter().enumerate() {
            pos[c] = i;
        }
        let mut span = vec![(usize::MAX, 0usize); n];
        for c in cliques {
            for &v in &c.members {
                let p = pos[c.id];
                span[v].0 = span[v].0.min(p);
                span[v].1 = span[v].1.max(p);
            }
        }
        if span.iter().any(|s| s.0 == usize::MAX) {
            return invalid("some vertex lies in no clique");
        }

        // Distinct spans sorted by left end, longer first on ties.
        let mut spans: Vec<(usize, usize)> = span.clone();
        spans.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        spans.dedup();
        let span_index: HashMap<(usize, usize), usize> = spans.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        // Overlap components by a left-to-right sweep. Open components form
        // a nested stack; a new span can only join a top segment of it.
        let s = spans.len();
        let mut uf: Vec<usize> = (0..s).collect();
        let mut data: Vec<Option<Comp>> = Vec::with_capacity(s);
        let mut stack: Vec<usize> = Vec::new();
        for (j, &(l, r)) in spans.iter().enumerate() {
            while let Some(&top) = stack.last() {
                if data[top].as_ref().map_or(true, |c| c.cr < l) {
                    stack.pop();
                } else {
                    break;
                }
            }
            let mut rights = BinaryHeap::new();
            rights.push(Reverse(r));
            data.push(Some(Comp { cl: l, cr: r, rights }));
            let mut cur = j;
            while let Some(&top) = stack.last() {
                let c = data[top].as_mut().expect("live component");
                while c.rights.peek().is_some_and(|x| x.0 < l) {
                    c.rights.pop();
                }
                let crosses = r > c.cr || c.rights.peek().is_some_and(|x| x.0 < r);
                if !crosses {
                    break;
                }
                stack.pop();
                let a = data[top].take().expect("live component");
                let b = data[cur].take().expect("live component");
                let (mut big, small) = if a.rights.len() >= b.rights.len() { (a, b) } else { (b, a) };
                big.rights.extend(small.rights);
                big.cl = big.cl.min(small.cl);
                big.cr = big.cr.max(small.cr);
                uf[cur] = top;
                data[top] = Some(big);
                cur = top;
            }
            stack.push(cur);
        }
        let mut comp_members: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..s {
            let root = find(&mut uf, j);
            comp_members.entry(root).or_default().push(j);
        }

        // Node spans.
        #[derive(Clone, Copy, PartialEq, Eq)]
        enum Src {
            Plain,
            QUnion(usize),
        }
        let mut node_spans: HashMap<(usize, usize), Src> = HashMap::new();
        node_spans.insert((0, k - 1), Src::Plain);
        for i in 0..k {
            node_spans.insert((i, i), Src::Plain);
        }
        // For each Q component: its union and segment boundaries.
        let mut q_segments: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        let mut roots: Vec<usize> = comp_members.keys().copied().collect();
        roots.sort_unstable();
        for &root in &roots {
            let members = &comp_members[&root];
            if members.len() == 1 {
                node_spans.entry(spans[members[0]]).or_insert(Src::Plain);
                continue;
            }
            let cl = members.iter().map(|&j| spans[j].0).min().unwrap();
            let cr = members.iter().map(|&j| spans[j].1).max().unwrap();
            let mut cuts: Vec<usize> = Vec::new();
            for &j in members {
                let (l, r) = spans[j];
                if l > cl {
                    cuts.push(l - 1);
                }
                if r < cr {
                    cuts.push(r);
                }
            }
            cuts.sort_unstable();
            cuts.dedup();
            let mut segs = Vec::new();
            let mut start = cl;
            for &c in &cuts {
                segs.push((start, c));
                start = c + 1;
            }
            segs.push((start, cr));
            node_spans.insert((cl, cr), Src::QUnion(root));
            for &sg in &segs {
                node_spans.entry(sg).or_insert(Src::Plain);
            }
            q_segments.insert(root, segs);
        }

        // Laminar family to tree.
        let mut list: Vec<((usize, usize), Src)> = node_spans.into_iter().collect();
        list.sort_by(|a, b| a.0 .0.cmp(&b.0 .0).then(b.0 .1.cmp(&a.0 .1)));
        let mut nodes: Vec<MpqNode> = Vec::with_capacity(list.len());
        let mut node_of: HashMap<(usize, usize), NodeId> = HashMap::new();
        let mut q_node_of_comp: HashMap<usize, NodeId> = HashMap::new();
        let mut st: Vec<NodeId> = Vec::new();
        let mut node_span: Vec<(usize, usize)> = Vec::new();
        for &((l, r), src) in &list {
            while let Some(&top) = st.last() {
                if node_span[top].1 < l {
                    st.pop();
                } else {
                    break;
                }
            }
            let parent = st.last().copied();
            if let Some(p) = parent {
                let (pl, pr) = node_span[p];
                if !(pl <= l && r <= pr) {
                    return internal(format!("node spans ({pl},{pr}) and ({l},{r}) cross"));
                }
            }
            let kind = match src {
                Src::QUnion(root) => {
                    q_node_of_comp.insert(root, nodes.len());
                    NodeKind::Q
                }
                Src::Plain if l == r => NodeKind::Leaf(order[l]),
                Src::Plain => NodeKind::P,
            };
            let id = nodes.len();
            nodes.push(MpqNode { kind, children: Vec::new(), sections: Vec::new(), parent });
            node_span.push((l, r));
            node_of.insert((l, r), id);
            if let Some(p) = parent {
                nodes[p].children.push(id);
            }
            st.push(id);
        }
        for node in nodes.iter_mut() {
            let count = if node.kind == NodeKind::Q { node.children.len() } else { 1 };
            node.sections = vec![Vec::new(); count];
        }

        // Sections.
        let mut home = vec![Home { node: 0, left: 0, right: 0 }; n];
        for v in 0..n {
            let j = span_index[&span[v]];
            let root = find(&mut uf, j);
            let h = if comp_members[&root].len() > 1 {
                let q = q_node_of_comp[&root];
                let segs = &q_segments[&root];
                let (l, r) = span[v];
                let left = segs.iter().position(|sg| sg.0 <= l && l <= sg.1).unwrap();
                let right = segs.iter().position(|sg| sg.0 <= r && r <= sg.1).unwrap();
                Home { node: q, left, right }
            } else {
                let id = node_of[&span[v]];
                let last = nodes[id].sections.len() - 1;
                Home { node: id, left: 0, right: last }
            };
            for i in h.left..=h.right {
                nodes[h.node].sections[i].push(v);
            }
            home[v] = h;
        }
        let mut leaf_of = vec![0; k];
        for (id, node) in nodes.iter().enumerate() {
            match node.kind {
                NodeKind::Leaf(c) => leaf_of[c] = id,
                NodeKind::P if node.children.len() < 2 => return internal("P-node with fewer than two children"),
                NodeKind::Q if node.children.len() < 3 => return internal("Q-node with fewer than three children"),
                _ => {}
            }
        }
        Ok(MpqTree { nodes, root: 0, leaf_of, home })
    }

    pub fn node(&self, id: NodeId) -> &MpqNode {
        &self.nodes[id]
    }

    pub fn leaf_of(&self, clique: usize) -> NodeId {
        self.leaf_of[clique]
    }

    pub fn home(&self, v: Vertex) -> Home {
        self.home[v]
    }

    pub fn clique_count(&self) -> usize {
        self.leaf_of.len()
    }

    /// Cliques of the subtree in left-to-right order.
    pub fn subtree_cliques(&self, id: NodeId) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            match self.nodes[x].kind {
                NodeKind::Leaf(c) => out.push(c),
                _ => stack.extend(self.nodes[x].children.iter().rev()),
            }
        }
        out
    }

    /// The clique ordering read off the leaves.
    pub fn frontier(&self) -> Vec<usize> {
        self.subtree_cliques(self.root)
    }

    /// Vertices in the sections of the subtree rooted at `id`, sorted.
    pub fn subtree_vertices(&self, id: NodeId) -> VertexSet {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for s in &self.nodes[x].sections {
                out.extend_from_slice(s);
            }
            stack.extend(self.nodes[x].children.iter());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when `anc` is `node` or one of its ancestors.
    pub fn is_ancestor(&self, anc: NodeId, mut node: NodeId) -> bool {
        loop {
            if node == anc {
                return true;
            }
            match self.nodes[node].parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Index of the child of `q` whose subtree holds `node`.
    pub fn child_index_towards(&self, q: NodeId, mut node: NodeId) -> Option<usize> {
        loop {
            let p = self.nodes[node].parent?;
            if p == q {
                return self.nodes[q].children.iter().position(|&c| c == node);
            }
            node = p;
        }
    }

    /// Leftmost and rightmost section of `q` containing `u`, or `(i, i)`
    /// when `u` lives inside the `i`-th subtree. Indices are 0-based.
    pub fn section_range(&self, q: NodeId, u: Vertex) -> Option<(usize, usize)> {
        let h = *self.home.get(u)?;
        if h.node == q {
            return Some((h.left, h.right));
        }
        let i = self.child_index_towards(q, h.node)?;
        Some((i, i))
    }

    /// As [`MpqTree::section_range`] but counting sections from 1.
    pub fn q_section_span(&self, q: NodeId, u: Vertex) -> Result<(usize, usize)> {
        match self.section_range(q, u) {
            Some((l, r)) => Ok((l + 1, r + 1)),
            None => invalid(format!("vertex {u} is not in the subtree of node {q}")),
        }
    }

    /// Puts the children of a P-node in the given order.
    pub fn permute_children(&mut self, id: NodeId, order: &[usize]) {
        let old = self.nodes[id].children.clone();
        self.nodes[id].children = order.iter().map(|&i| old[i]).collect();
    }

    /// Reverses a Q-node together with its sections.
    pub fn reverse_q(&mut self, id: NodeId) {
        let node = &mut self.nodes[id];
        node.children.reverse();
        node.sections.reverse();
        let last = node.sections.len() - 1;
        let mut members: Vec<Vertex> = node.sections.concat();
        members.sort_unstable();
        members.dedup();
        for v in members {
            let h = &mut self.home[v];
            let (l, r) = (last - h.right, last - h.left);
            h.left = l;
            h.right = r;
        }
    }

    /// Every frontier reachable by permuting P-node children and reversing
    /// Q-nodes. Exponential; meant for small trees.
    pub fn all_frontiers(&self) -> Vec<Vec<usize>> {
        fn go(t: &MpqTree, id: NodeId) -> Vec<Vec<usize>> {
            let node = &t.nodes[id];
            match node.kind {
                NodeKind::Leaf(c) => vec![vec![c]],
                NodeKind::Q => {
                    let mut fwd: Vec<Vec<usize>> = vec![Vec::new()];
                    for &ch in &node.children {
                        let sub = go(t, ch);
                        fwd = fwd.iter().flat_map(|pre| sub.iter().map(move |s| [pre.clone(), s.clone()].concat())).collect();
                    }
                    let mut out = fwd.clone();
                    for f in fwd {
                        out.push(f.into_iter().rev().collect());
                    }
                    out
                }
                NodeKind::P => {
                    let subs: Vec<Vec<Vec<usize>>> = node.children.iter().map(|&c| go(t, c)).collect();
                    let mut out = Vec::new();
                    for perm in permutations(subs.len()) {
                        let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
                        for &i in &perm {
                            acc = acc.iter().flat_map(|pre| subs[i].iter().map(move |s| [pre.clone(), s.clone()].concat())).collect();
                        }
                        out.extend(acc);
                    }
                    out
                }
            }
        }
        let mut all = go(self, self.root);
        all.sort();
        all.dedup();
        all
    }

    /// Indented text dump, one node per line.
    pub fn dump(&self, g: &Graph) -> String {
        let mut out = String::new();
        let names = |s: &VertexSet| -> String {
            let v: Vec<&str> = s.iter().map(|&x| g.name(x)).collect();
            format!("{{{}}}", v.join(","))
        };
        let mut stack = vec![(self.root, 0usize)];
        while let Some((id, depth)) = stack.pop() {
            let node = &self.nodes[id];
            let pad = "  ".repeat(depth);
            match node.kind {
                NodeKind::Leaf(c) => {
                    let _ = writeln!(out, "{pad}leaf clique={c} section={}", names(&node.sections[0]));
                }
                NodeKind::P => {
                    let _ = writeln!(out, "{pad}P section={}", names(&node.sections[0]));
                }
                NodeKind::Q => {
                    let secs: Vec<String> = node.sections.iter().map(names).collect();
                    let _ = writeln!(out, "{pad}Q sections={}", secs.join(" "));
                }
            }
            for &c in node.children.iter().rev() {
                stack.push((c, depth + 1));
            }
        }
        out
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recognition::{build_mpq_tree, cliques::maximal_cliques, cliques::Chordality};

    fn tree_of(g: &Graph) -> (Vec<MaximalClique>, MpqTree) {
        let Chordality::Chordal(cs) = maximal_cliques(g) else { panic!("not chordal") };
        let t = build_mpq_tree(g, &cs).unwrap();
        (cs, t)
    }

    #[test]
    fn complete_graph_is_one_leaf() {
        let g = crate::graph::tests::complete(4);
        let (_, t) = tree_of(&g);
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.nodes[0].sections[0], vec![0, 1, 2, 3]);
    }

    #[test]
    fn path_is_one_q_node() {
        let g = crate::graph::tests::path(4);
        let (cs, t) = tree_of(&g);
        let root = t.node(t.root);
        assert_eq!(root.kind, NodeKind::Q);
        assert_eq!(root.children.len(), 3);
        let mut secs = root.sections.clone();
        if secs[0] != vec![1] {
            secs.reverse();
        }
        assert_eq!(secs, vec![vec![1], vec![1, 2], vec![2]]);
        // The end vertices sit in the sections of the end leaves.
        let first_leaf = t.node(root.children[0]);
        let end = if t.node(root.children[0]).sections[0] == vec![0] { 0 } else { 3 };
        assert_eq!(first_leaf.sections[0], vec![end]);
        let b_span = t.q_section_span(t.root, 1).unwrap();
        let c_span = t.q_section_span(t.root, 2).unwrap();
        assert!(b_span == (1, 2) || b_span == (2, 3));
        assert!(c_span == (1, 2) || c_span == (2, 3));
        assert_ne!(b_span, c_span);
        assert_eq!(t.q_section_span(t.root, end).unwrap(), (1, 1));
        assert_eq!(t.all_frontiers().len(), 2);
        assert_eq!(cs.len(), 3);
    }

    #[test]
    fn two_disjoint_edges_give_p_root() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let (_, t) = tree_of(&g);
        let root = t.node(t.root);
        assert_eq!(root.kind, NodeKind::P);
        assert!(root.sections[0].is_empty());
        assert_eq!(root.children.len(), 2);
        assert_eq!(t.all_frontiers().len(), 2);
    }

    #[test]
    fn reversal_keeps_homes_in_sync() {
        let g = crate::graph::tests::path(5);
        let (_, mut t) = tree_of(&g);
        let before = t.section_range(t.root, 1).unwrap();
        t.reverse_q(t.root);
        let after = t.section_range(t.root, 1).unwrap();
        let last = t.node(t.root).children.len() - 1;
        assert_eq!(after, (last - before.1, last - before.0));
    }

    #[test]
    fn permutations_count() {
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(4).len(), 24);
    }
}
