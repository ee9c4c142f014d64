//! Partial representations: closed intervals fixed in advance for some
//! vertices of a graph.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{content_lines, Graph, Vertex};
use crate::rational::{fmt_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub l: Rational,
    pub r: Rational,
}

impl Interval {
    pub fn new(l: Rational, r: Rational) -> Interval {
        debug_assert!(l <= r);
        Interval { l, r }
    }

    pub fn ints(l: i64, r: i64) -> Interval {
        Interval::new(crate::rational::int(l), crate::rational::int(r))
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.l <= other.r && other.l <= self.r
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.l <= x && x <= &self.r
    }

    pub fn flipped(&self) -> Interval {
        Interval { l: -&self.r, r: -&self.l }
    }
}

/// Pre-drawn intervals indexed by the vertices of a host graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PartialRepresentation {
    intervals: Vec<Option<Interval>>,
}

impl PartialRepresentation {
    /// A representation with nothing pre-drawn over `n` vertices.
    pub fn empty(n: usize) -> Self {
        PartialRepresentation { intervals: vec![None; n] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Vertex, Interval)>) -> Self {
        let mut rep = Self::empty(n);
        for (v, iv) in pairs {
            rep.set(v, iv);
        }
        rep
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn set(&mut self, v: Vertex, iv: Interval) {
        self.intervals[v] = Some(iv);
    }

    pub fn free(&mut self, v: Vertex) {
        self.intervals[v] = None;
    }

    pub fn get(&self, v: Vertex) -> Option<&Interval> {
        self.intervals.get(v).and_then(|o| o.as_ref())
    }

    pub fn is_predrawn(&self, v: Vertex) -> bool {
        self.get(v).is_some()
    }

    pub fn predrawn(&self) -> impl Iterator<Item = (Vertex, &Interval)> {
        self.intervals.iter().enumerate().filter_map(|(v, o)| o.as_ref().map(|iv| (v, iv)))
    }

    pub fn predrawn_vertices(&self) -> Vec<Vertex> {
        self.predrawn().map(|(v, _)| v).collect()
    }

    pub fn count(&self) -> usize {
        self.intervals.iter().filter(|o| o.is_some()).count()
    }

    /// The representation seen by `g.induced_subgraph(subset)`.
    pub fn restrict(&self, subset: &[Vertex]) -> Self {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        PartialRepresentation { intervals: s.iter().map(|&v| self.intervals[v].clone()).collect() }
    }

    /// Mirrors every interval through zero.
    pub fn flip(&self) -> Self {
        PartialRepresentation { intervals: self.intervals.iter().map(|o| o.as_ref().map(Interval::flipped)).collect() }
    }

    /// Checks that pre-drawn intervals intersect exactly when their vertices
    /// are adjacent. Runs a sweep, so dense inputs cost no more than their
    /// edge count.
    pub fn check_consistent(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::InvalidInput(format!("representation covers {} vertices, graph has {}", self.len(), g.n())));
        }
        let mut order: Vec<(Vertex, &Interval)> = self.predrawn().collect();
        order.sort_by(|a, b| a.1.l.cmp(&b.1.l).then_with(|| a.1.r.cmp(&b.1.r)));
        let mut is_pre = vec![false; g.n()];
        for &(v, _) in &order {
            is_pre[v] = true;
        }
        let pre_edges: usize = g.edges().filter(|&(u, v)| is_pre[u] && is_pre[v]).count();
        let mut active: Vec<(Vertex, &Interval)> = Vec::new();
        let mut found = 0usize;
        for &(v, iv) in &order {
            active.retain(|(_, a)| a.r >= iv.l);
            for &(u, _) in &active {
                if !g.adjacent(u, v) {
                    return Err(Error::Inconsistent(format!(
                        "{} and {} are pre-drawn intersecting but not adjacent",
                        g.name(u),
                        g.name(v)
                    )));
                }
                found += 1;
            }
            active.push((v, iv));
        }
        if found != pre_edges {
            for (u, v) in g.edges() {
                if let (Some(a), Some(b)) = (self.get(u), self.get(v)) {
                    if !a.intersects(b) {
                        return Err(Error::Inconsistent(format!(
                            "{} and {} are adjacent but their pre-drawn intervals are disjoint",
                            g.name(u),
                            g.name(v)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Parses lines `v l r`; `#` starts a comment line.
    pub fn parse(text: &str, g: &Graph) -> Result<Self> {
        let index = g.name_index();
        let mut rep = Self::empty(g.n());
        for (line, l) in content_lines(text) {
            let tok: Vec<&str> = l.split_whitespace().collect();
            if tok.len() != 3 {
                return Err(Error::Format { line, msg: "expected `v l r`".into() });
            }
            let v = *index.get(tok[0]).ok_or_else(|| Error::Format { line, msg: format!("unknown vertex {}", tok[0]) })?;
            let lo = parse_rational(tok[1]).ok_or_else(|| Error::Format { line, msg: format!("bad endpoint {}", tok[1]) })?;
            let hi = parse_rational(tok[2]).ok_or_else(|| Error::Format { line, msg: format!("bad endpoint {}", tok[2]) })?;
            if lo > hi {
                return Err(Error::Format { line, msg: format!("left endpoint exceeds right for {}", tok[0]) });
            }
            if rep.is_predrawn(v) {
                return Err(Error::Format { line, msg: format!("{} pre-drawn twice", tok[0]) });
            }
            rep.set(v, Interval::new(lo, hi));
        }
        Ok(rep)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut s = String::new();
        for (v, iv) in self.predrawn() {
            let _ = writeln!(s, "{} {} {}", g.name(v), fmt_rational(&iv.l), fmt_rational(&iv.r));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::path;
    use crate::rational::{frac, int};

    #[test]
    fn flip_is_an_involution() {
        let rep = PartialRepresentation::from_pairs(2, [(0, Interval::ints(0, 1)), (1, Interval::new(frac(1, 2), int(3)))]);
        let f = rep.flip();
        assert_eq!(f.get(0), Some(&Interval::ints(-1, 0)));
        assert_eq!(f.flip(), rep);
    }

    #[test]
    fn consistency() {
        let g = path(3);
        let ok = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 1)), (1, Interval::ints(1, 2)), (2, Interval::ints(2, 3))]);
        assert!(ok.check_consistent(&g).is_ok());
        let touching = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 2)), (2, Interval::ints(2, 3))]);
        assert!(matches!(touching.check_consistent(&g), Err(Error::Inconsistent(_))));
        let apart = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 1)), (1, Interval::ints(2, 3))]);
        assert!(matches!(apart.check_consistent(&g), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn parse_text() {
        let g = Graph::parse("3 2\n1 2\n2 3\n").unwrap();
        let rep = PartialRepresentation::parse("# pre\n1 0 1/2\n3 2 2\n", &g).unwrap();
        assert_eq!(rep.get(0), Some(&Interval::new(int(0), frac(1, 2))));
        assert_eq!(rep.get(2), Some(&Interval::ints(2, 2)));
        assert_eq!(PartialRepresentation::parse(&rep.to_text(&g), &g).unwrap(), rep);
        assert!(PartialRepresentation::parse("1 2 1\n", &g).is_err());
        assert!(PartialRepresentation::parse("9 0 1\n", &g).is_err());
    }
}
