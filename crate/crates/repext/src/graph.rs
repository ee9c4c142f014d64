//! Undirected simple graphs over dense vertex ids.
//!
//! Vertices are `0..n`. Every graph remembers, for each of its vertices, the
//! id of the vertex it came from in the graph that was originally parsed or
//! built, so subgraphs can always be reported in terms of the input.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

pub type Vertex = usize;

/// A set of vertices, kept sorted and free of duplicates.
pub type VertexSet = Vec<Vertex>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    names: Vec<String>,
    origin: Vec<Vertex>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices named `0..n`.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let names = (0..n).map(|v| v.to_string()).collect();
        Graph::with_names(names, edges)
    }

    pub fn with_names(names: Vec<String>, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        let n = names.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge {u}-{v} names a vertex outside 0..{n}"));
            }
            if u == v {
                return invalid(format!("self-loop at {}", names[u]));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return invalid(format!("parallel edge at {}", names[v]));
            }
        }
        Ok(Graph { adj, names, origin: (0..n).collect(), edge_count: edges.len() })
    }

    pub fn empty() -> Graph {
        Graph { adj: Vec::new(), names: Vec::new(), origin: Vec::new(), edge_count: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.vertices()
            .flat_map(move |u| self.adj[u].iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Id of `v` in the graph this one was derived from by induced subgraphs.
    pub fn origin(&self, v: Vertex) -> Vertex {
        self.origin[v]
    }

    pub fn origins(&self) -> &[Vertex] {
        &self.origin
    }

    pub fn name_index(&self) -> HashMap<&str, Vertex> {
        self.names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
    }

    fn check(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            invalid(format!("unknown vertex {v}"))
        }
    }

    /// The subgraph induced by `a`. Vertex `i` of the result is the `i`-th
    /// smallest member of `a`.
    pub fn induced_subgraph(&self, a: &[Vertex]) -> Result<Graph> {
        let mut set: Vec<Vertex> = a.to_vec();
        set.sort_unstable();
        set.dedup();
        for &v in &set {
            self.check(v)?;
        }
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in set.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = Vec::with_capacity(set.len());
        let mut edge_count = 0;
        for &v in &set {
            let list: Vec<Vertex> =
                self.adj[v].iter().filter(|&&w| pos[w] != usize::MAX).map(|&w| pos[w]).collect();
            edge_count += list.len();
            adj.push(list);
        }
        Ok(Graph {
            adj,
            names: set.iter().map(|&v| self.names[v].clone()).collect(),
            origin: set.iter().map(|&v| self.origin[v]).collect(),
            edge_count: edge_count / 2,
        })
    }

    pub fn closed_neighborhood(&self, v: Vertex) -> Result<VertexSet> {
        self.check(v)?;
        let mut out = self.adj[v].clone();
        let at = out.partition_point(|&w| w < v);
        out.insert(at, v);
        Ok(out)
    }

    /// Breadth-first shortest path from `src` to `dst` in `self - forbidden`.
    /// Neighbors are scanned in id order, so the result is deterministic.
    pub fn shortest_path_avoiding(&self, src: Vertex, dst: Vertex, forbidden: &[Vertex]) -> Option<Vec<Vertex>> {
        let mut blocked = vec![false; self.n()];
        for &f in forbidden {
            if f < self.n() {
                blocked[f] = true;
            }
        }
        self.shortest_path_within(src, dst, |v| !blocked[v])
    }

    /// Shortest path whose every vertex satisfies `allowed`.
    pub fn shortest_path_within(&self, src: Vertex, dst: Vertex, allowed: impl Fn(Vertex) -> bool) -> Option<Vec<Vertex>> {
        if src >= self.n() || dst >= self.n() || !allowed(src) || !allowed(dst) {
            return None;
        }
        let mut prev = vec![usize::MAX; self.n()];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            if v == dst {
                let mut path = vec![dst];
                let mut cur = dst;
                while cur != src {
                    cur = prev[cur];
                    path.push(cur);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[v] {
                if prev[w] == usize::MAX && allowed(w) {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Vertices reachable from `src` through vertices satisfying `allowed`.
    pub fn component_within(&self, src: Vertex, allowed: impl Fn(Vertex) -> bool) -> VertexSet {
        if !allowed(src) {
            return Vec::new();
        }
        let mut seen = vec![false; self.n()];
        seen[src] = true;
        let mut stack = vec![src];
        let mut out = Vec::new();
        while let Some(v) = stack.pop() {
            out.push(v);
            for &w in &self.adj[v] {
                if !seen[w] && allowed(w) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Components ordered by their smallest vertex; each is sorted.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out: Vec<VertexSet> = Vec::new();
        for s in self.vertices() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut stack = vec![s];
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for &w in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.connected_components().len() == 1
    }

    /// True when the vertices of `set` induce a connected subgraph.
    pub fn is_connected_set(&self, set: &[Vertex]) -> bool {
        if set.is_empty() {
            return true;
        }
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        self.component_within(set[0], |v| inside[v]).len() == set.len()
    }

    /// Parses the edge-list text format: a header `n m`, then `m` lines
    /// `u v`. Lines starting with `#` and blank lines are ignored.
    ///
    /// A line holding a single name declares a vertex without adding an
    /// edge. Ids follow the numeric order of the names when every name is an
    /// integer and first appearance otherwise. Vertices that are never named
    /// get the smallest positive integers not yet taken.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = content_lines(text);
        let (hline, header) = lines.next().ok_or(Error::Format { line: 0, msg: "missing header".into() })?;
        let head: Vec<&str> = header.split_whitespace().collect();
        if head.len() != 2 {
            return Err(Error::Format { line: hline, msg: "header must be `n m`".into() });
        }
        let parse_num = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Format { line: hline, msg: format!("bad count {s:?}") })
        };
        let n = parse_num(head[0])?;
        let m = parse_num(head[1])?;
        let mut order: Vec<String> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut raw_edges = Vec::with_capacity(m);
        for (line, l) in lines.by_ref() {
            let tok: Vec<&str> = l.split_whitespace().collect();
            if tok.len() == 1 {
                if !seen.contains_key(tok[0]) {
                    seen.insert(tok[0].to_string(), order.len());
                    order.push(tok[0].to_string());
                }
                continue;
            }
            if tok.len() != 2 {
                return Err(Error::Format { line, msg: "edge line must be `u v`".into() });
            }
            if tok[0] == tok[1] {
                return Err(Error::Format { line, msg: format!("self-loop at {}", tok[0]) });
            }
            for t in &tok {
                if !seen.contains_key(*t) {
                    seen.insert(t.to_string(), order.len());
                    order.push(t.to_string());
                }
            }
            raw_edges.push((line, seen[tok[0]], seen[tok[1]]));
            if raw_edges.len() > m {
                return Err(Error::Format { line, msg: format!("more than {m} edge lines") });
            }
        }
        if raw_edges.len() != m {
            return Err(Error::Format { line: hline, msg: format!("expected {m} edges, found {}", raw_edges.len()) });
        }
        if order.len() > n {
            return Err(Error::Format { line: hline, msg: format!("{} distinct names exceed n = {n}", order.len()) });
        }
        let mut next = 1u64;
        while order.len() < n {
            let cand = next.to_string();
            next += 1;
            if !seen.contains_key(&cand) {
                seen.insert(cand.clone(), order.len());
                order.push(cand);
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let numeric: Option<Vec<i128>> = order.iter().map(|s| s.parse::<i128>().ok()).collect();
        if let Some(vals) = numeric {
            perm.sort_by_key(|&i| vals[i]);
        }
        let mut new_id = vec![0; n];
        for (id, &old) in perm.iter().enumerate() {
            new_id[old] = id;
        }
        let names: Vec<String> = perm.iter().map(|&i| order[i].clone()).collect();
        let mut pairs = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(m);
        for (line, a, b) in raw_edges {
            let (u, v) = (new_id[a], new_id[b]);
            if !pairs.insert((u.min(v), u.max(v))) {
                return Err(Error::Format { line, msg: format!("duplicate edge {} {}", names[u], names[v]) });
            }
            edges.push((u, v));
        }
        Graph::with_names(names, &edges)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            let _ = writeln!(s, "{} {}", self.names[u], self.names[v]);
        }
        for v in self.vertices().filter(|&v| self.degree(v) == 0) {
            let _ = writeln!(s, "{}", self.names[v]);
        }
        s
    }
}

/// Non-blank, non-comment lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = complete(3);
        let s = k3.induced_subgraph(&[0, 1]).unwrap();
        assert_eq!(s.m(), 1);
        assert!(s.adjacent(0, 1));
        assert_eq!(k3.induced_subgraph(&[]).unwrap().n(), 0);

        let g = Graph::parse("4 3\n1 2\n2 3\n3 4\n").unwrap();
        let s = g.induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(s.names(), &["1", "3", "4"]);
        assert_eq!(s.edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(s.degree(0), 0);
        assert_eq!(s.origins(), &[0, 2, 3]);
        assert!(g.induced_subgraph(&[7]).is_err());
    }

    #[test]
    fn closed_neighborhood_examples() {
        let g = Graph::from_edges(2, &[]).unwrap();
        assert_eq!(g.closed_neighborhood(1).unwrap(), vec![1]);
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.closed_neighborhood(0).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(path(4).closed_neighborhood(1).unwrap(), vec![0, 1, 2]);
        assert!(path(4).closed_neighborhood(9).is_err());
    }

    #[test]
    fn shortest_path_examples() {
        let p4 = path(4);
        assert_eq!(p4.shortest_path_avoiding(2, 2, &[]), Some(vec![2]));
        assert_eq!(p4.shortest_path_avoiding(0, 3, &[2]), None);
        let c5 = Graph::parse("5 5\n1 2\n2 3\n3 4\n4 5\n5 1\n").unwrap();
        let p = c5.shortest_path_avoiding(0, 2, &[1]).unwrap();
        let names: Vec<&str> = p.iter().map(|&v| c5.name(v)).collect();
        assert_eq!(names, ["1", "5", "4", "3"]);
    }

    #[test]
    fn component_examples() {
        assert!(Graph::empty().connected_components().is_empty());
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (3, 4)]).unwrap();
        let sizes: Vec<usize> = g.connected_components().iter().map(|c| c.len()).collect();
        assert_eq!(sizes, vec![3, 2]);
        assert_eq!(path(4).connected_components().len(), 1);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(Graph::parse("2 1\n1 1\n"), Err(Error::Format { .. })));
        assert!(matches!(Graph::parse("2 2\n1 2\n2 1\n"), Err(Error::Format { .. })));
        assert!(matches!(Graph::parse("2 2\n1 2\n"), Err(Error::Format { .. })));
        assert!(matches!(Graph::parse("1 1\na b\n"), Err(Error::Format { .. })));
    }

    #[test]
    fn parse_names_isolated_vertices() {
        let g = Graph::parse("# comment\n4 1\n\n2 3\n").unwrap();
        assert_eq!(g.names(), &["1", "2", "3", "4"]);
        assert!(g.adjacent(1, 2));
        let h = Graph::parse("3 2\nb a\na c\n").unwrap();
        assert_eq!(h.names(), &["b", "a", "c"]);
        assert_eq!(Graph::parse(&h.to_text()).unwrap(), h);
        let lone = Graph::from_edges(3, &[(1, 2)]).unwrap();
        assert_eq!(lone.to_text(), "3 1\n1 2\n0\n");
        assert_eq!(Graph::parse(&lone.to_text()).unwrap(), lone);
    }
}
