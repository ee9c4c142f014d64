//! Where each maximal clique may put its clique-point, given the pre-drawn
//! intervals, and the resulting interval order on cliques.
//!
//! The line is cut at the distinct pre-drawn endpoints into pieces that
//! alternate between open gaps and single points:
//! piece `2i` is the gap before the `i`-th endpoint value, piece `2i + 1`
//! the value itself, and piece `2E` the gap after the last of `E` values.
//! A pre-drawn interval covers a contiguous run of pieces, so every
//! admissible set is a union of pieces whose cover count is minimal.

use std::fmt;

use crate::error::{internal, invalid, Result};
use crate::graph::{Graph, Vertex, VertexSet};
use crate::partrep::PartialRepresentation;
use crate::rational::{int, simplest_between, ExtRational, Rational};
use crate::recognition::MaximalClique;

/// Range-min/max tree over piece cover counts.
#[derive(Clone, Debug)]
struct CountTree {
    size: usize,
    min: Vec<usize>,
    max: Vec<usize>,
}

impl CountTree {
    fn new(counts: &[usize]) -> Self {
        let size = counts.len().next_power_of_two();
        let mut min = vec![usize::MAX; 2 * size];
        let mut max = vec![0; 2 * size];
        for (i, &c) in counts.iter().enumerate() {
            min[size + i] = c;
            max[size + i] = c;
        }
        for i in (1..size).rev() {
            min[i] = min[2 * i].min(min[2 * i + 1]);
            max[i] = max[2 * i].max(max[2 * i + 1]);
        }
        CountTree { size, min, max }
    }

    fn count(&self, i: usize) -> usize {
        self.min[self.size + i]
    }

    /// First index in `[from, to]` whose leaf passes `ok(min, max)`; a block
    /// failing `ok` is skipped whole.
    fn first(&self, from: usize, to: usize, prune: &impl Fn(usize, usize) -> bool) -> Option<usize> {
        if from > to {
            return None;
        }
        self.first_in(1, 0, self.size - 1, from, to, prune)
    }

    fn first_in(&self, node: usize, lo: usize, hi: usize, from: usize, to: usize, ok: &impl Fn(usize, usize) -> bool) -> Option<usize> {
        if hi < from || lo > to || !ok(self.min[node], self.max[node]) {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.first_in(2 * node, lo, mid, from, to, ok).or_else(|| self.first_in(2 * node + 1, mid + 1, hi, from, to, ok))
    }

    fn last(&self, from: usize, to: usize, prune: &impl Fn(usize, usize) -> bool) -> Option<usize> {
        if from > to {
            return None;
        }
        self.last_in(1, 0, self.size - 1, from, to, prune)
    }

    fn last_in(&self, node: usize, lo: usize, hi: usize, from: usize, to: usize, ok: &impl Fn(usize, usize) -> bool) -> Option<usize> {
        if hi < from || lo > to || !ok(self.min[node], self.max[node]) {
            return None;
        }
        if lo == hi {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.last_in(2 * node + 1, mid + 1, hi, from, to, ok).or_else(|| self.last_in(2 * node, lo, mid, from, to, ok))
    }
}

/// One maximal piece of an admissible set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: ExtRational,
    pub lo_closed: bool,
    pub hi: ExtRational,
    pub hi_closed: bool,
}

impl Segment {
    pub fn contains(&self, x: &Rational) -> bool {
        let x = ExtRational::Fin(x.clone());
        let above = if self.lo_closed { self.lo <= x } else { self.lo < x };
        let below = if self.hi_closed { x <= self.hi } else { x < self.hi };
        above && below
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (o, c) = (if self.lo_closed { '[' } else { '(' }, if self.hi_closed { ']' } else { ')' });
        write!(f, "{o}{}, {}{c}", self.lo, self.hi)
    }
}

/// The admissible clique-point positions of one clique, as disjoint
/// sorted segments that cannot be merged.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdmissibleSet {
    pub segments: Vec<Segment>,
}

impl AdmissibleSet {
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.segments.iter().any(|s| s.contains(x))
    }
}

/// Infimum and supremum of an admissible set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenIntervalIa {
    pub lo: ExtRational,
    pub hi: ExtRational,
    pub empty: bool,
}

#[derive(Clone, Debug)]
struct CliqueInfo {
    predrawn: VertexSet,
    /// Pieces covered by every member of `predrawn`.
    range: (usize, usize),
    /// Admissible pieces have exactly this cover count.
    target: usize,
    first: Option<usize>,
    ia: OpenIntervalIa,
}

/// Per-clique pre-drawn sets, admissible sets and the order between them.
#[derive(Clone, Debug)]
pub struct CliqueOrderContext {
    rep: PartialRepresentation,
    vals: Vec<Rational>,
    counts: CountTree,
    info: Vec<CliqueInfo>,
}

impl CliqueOrderContext {
    /// Builds the context. Clique ids must be `0..cliques.len()` in order.
    pub fn new(rep: &PartialRepresentation, cliques: &[MaximalClique]) -> Result<Self> {
        if cliques.iter().enumerate().any(|(i, c)| c.id != i) {
            return invalid("clique ids must be their positions");
        }
        let mut vals: Vec<Rational> = rep.predrawn().flat_map(|(_, iv)| [iv.l.clone(), iv.r.clone()]).collect();
        vals.sort();
        vals.dedup();
        let pieces = 2 * vals.len() + 1;
        let idx = |q: &Rational| 2 * vals.binary_search(q).expect("endpoint is listed") + 1;
        let mut span = vec![(0usize, 0usize); rep.len()];
        let mut diff = vec![0isize; pieces + 1];
        for (v, iv) in rep.predrawn() {
            let (a, b) = (idx(&iv.l), idx(&iv.r));
            span[v] = (a, b);
            diff[a] += 1;
            diff[b + 1] -= 1;
        }
        let mut counts = Vec::with_capacity(pieces);
        let mut acc = 0isize;
        for d in diff.iter().take(pieces) {
            acc += d;
            counts.push(acc as usize);
        }
        let tree = CountTree::new(&counts);
        let mut ctx = CliqueOrderContext { rep: rep.clone(), vals, counts: tree, info: Vec::with_capacity(cliques.len()) };
        for c in cliques {
            let predrawn: VertexSet = c.members.iter().copied().filter(|&v| rep.is_predrawn(v)).collect();
            let range = if predrawn.is_empty() {
                (0, pieces - 1)
            } else {
                let lo = predrawn.iter().map(|&v| span[v].0).max().unwrap();
                let hi = predrawn.iter().map(|&v| span[v].1).min().unwrap();
                if lo > hi {
                    return invalid(format!("pre-drawn intervals of clique {} share no point", c.id));
                }
                (lo, hi)
            };
            let target = predrawn.len();
            let hit = |mn: usize, _mx: usize| mn <= target;
            let first = ctx.counts.first(range.0, range.1, &hit);
            let last = ctx.counts.last(range.0, range.1, &hit);
            let ia = match (first, last) {
                (Some(p), Some(q)) => OpenIntervalIa { lo: ctx.piece_lo(p).0, hi: ctx.piece_hi(q).0, empty: false },
                _ => OpenIntervalIa { lo: ExtRational::PosInf, hi: ExtRational::NegInf, empty: true },
            };
            ctx.info.push(CliqueInfo { predrawn, range, target, first, ia });
        }
        Ok(ctx)
    }

    pub fn rep(&self) -> &PartialRepresentation {
        &self.rep
    }

    pub fn clique_count(&self) -> usize {
        self.info.len()
    }

    /// Left end of a piece and whether the piece includes it.
    fn piece_lo(&self, p: usize) -> (ExtRational, bool) {
        if p % 2 == 1 {
            (ExtRational::Fin(self.vals[p / 2].clone()), true)
        } else if p == 0 {
            (ExtRational::NegInf, false)
        } else {
            (ExtRational::Fin(self.vals[p / 2 - 1].clone()), false)
        }
    }

    fn piece_hi(&self, p: usize) -> (ExtRational, bool) {
        if p % 2 == 1 {
            (ExtRational::Fin(self.vals[p / 2].clone()), true)
        } else if p / 2 == self.vals.len() {
            (ExtRational::PosInf, false)
        } else {
            (ExtRational::Fin(self.vals[p / 2].clone()), false)
        }
    }

    fn piece_of(&self, x: &Rational) -> usize {
        match self.vals.binary_search(x) {
            Ok(i) => 2 * i + 1,
            Err(i) => 2 * i,
        }
    }

    fn admissible_piece(&self, a: usize, p: usize) -> bool {
        let info = &self.info[a];
        info.range.0 <= p && p <= info.range.1 && self.counts.count(p) == info.target
    }

    /// P(a): the pre-drawn members of clique `a`.
    pub fn predrawn_set(&self, a: usize) -> &VertexSet {
        &self.info[a].predrawn
    }

    /// Members of P(a) whose right endpoint is leftmost.
    pub fn min_right(&self, a: usize) -> VertexSet {
        let p = &self.info[a].predrawn;
        let Some(m) = p.iter().map(|&v| &self.rep.get(v).unwrap().r).min() else { return Vec::new() };
        p.iter().copied().filter(|&v| &self.rep.get(v).unwrap().r == m).collect()
    }

    /// Members of P(a) whose left endpoint is rightmost.
    pub fn max_left(&self, a: usize) -> VertexSet {
        let p = &self.info[a].predrawn;
        let Some(m) = p.iter().map(|&v| &self.rep.get(v).unwrap().l).max() else { return Vec::new() };
        p.iter().copied().filter(|&v| &self.rep.get(v).unwrap().l == m).collect()
    }

    /// The admissible set of `a`, materialized segment by segment.
    pub fn admissible_set(&self, a: usize) -> AdmissibleSet {
        let info = &self.info[a];
        let mut segments: Vec<Segment> = Vec::new();
        let Some(mut p) = info.first else { return AdmissibleSet::default() };
        let hit = |mn: usize, _: usize| mn <= info.target;
        let miss = |_: usize, mx: usize| mx > info.target;
        loop {
            let end = self.counts.first(p, info.range.1, &miss).map_or(info.range.1, |e| e - 1);
            let (lo, lo_closed) = self.piece_lo(p);
            let (hi, hi_closed) = self.piece_hi(end);
            segments.push(Segment { lo, lo_closed, hi, hi_closed });
            match self.counts.first(end + 1, info.range.1, &hit) {
                Some(next) => p = next,
                None => break,
            }
        }
        AdmissibleSet { segments }
    }

    pub fn in_admissible(&self, a: usize, x: &Rational) -> bool {
        self.admissible_piece(a, self.piece_of(x))
    }

    pub fn open_interval(&self, a: usize) -> &OpenIntervalIa {
        &self.info[a].ia
    }

    pub fn is_empty(&self, a: usize) -> bool {
        self.info[a].ia.empty
    }

    /// The interval order: `a` before `b` when `I_a` ends where or before
    /// `I_b` starts; a clique is before itself when it has nowhere to go.
    pub fn clique_before(&self, a: usize, b: usize) -> bool {
        let (ia, ib) = (&self.info[a].ia, &self.info[b].ia);
        if a == b {
            return ia.empty;
        }
        if ia.empty || ib.empty {
            return false;
        }
        ia.hi <= ib.lo
    }

    /// Checks that no two open intervals cross and that containment of
    /// open intervals reverses containment of pre-drawn sets.
    pub fn check_no_single_overlap(&self) -> Result<()> {
        let mut ids: Vec<usize> = (0..self.info.len()).filter(|&a| !self.info[a].ia.empty).collect();
        ids.sort_by(|&a, &b| {
            let (x, y) = (&self.info[a].ia, &self.info[b].ia);
            x.lo.cmp(&y.lo).then(y.hi.cmp(&x.hi))
        });
        let mut mark = vec![usize::MAX; self.rep.len()];
        let mut stack: Vec<usize> = Vec::new();
        for &j in &ids {
            let ij = &self.info[j].ia;
            while let Some(&top) = stack.last() {
                if self.info[top].ia.hi <= ij.lo {
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = stack.last() {
                let it = &self.info[top].ia;
                if ij.hi > it.hi {
                    return internal(format!("open intervals of cliques {top} and {j} single overlap"));
                }
                // I_j inside I_top, so P(j) must contain P(top), strictly
                // unless the intervals coincide.
                let (pj, pt) = (&self.info[j].predrawn, &self.info[top].predrawn);
                for &v in pj {
                    mark[v] = j;
                }
                if pt.iter().any(|&v| mark[v] != j) {
                    return internal(format!("clique {j} sits inside clique {top} but misses part of its pre-drawn set"));
                }
                let equal = it.lo == ij.lo && it.hi == ij.hi;
                if equal != (pj.len() == pt.len()) {
                    return internal(format!("cliques {top} and {j}: interval containment and pre-drawn inclusion disagree"));
                }
            }
            stack.push(j);
        }
        Ok(())
    }

    /// The leftmost admissible point of `a` strictly right of `prev`, or
    /// an interior rational when the set is open there.
    pub fn point_after(&self, a: usize, prev: Option<&Rational>) -> Option<Rational> {
        let info = &self.info[a];
        let start = match prev {
            None => info.range.0,
            Some(x) => {
                let p = self.piece_of(x);
                info.range.0.max(if p % 2 == 1 { p + 1 } else { p })
            }
        };
        let hit = |mn: usize, _: usize| mn <= info.target;
        let p = self.counts.first(start, info.range.1, &hit)?;
        let (lo, lo_closed) = self.piece_lo(p);
        if lo_closed {
            return Some(lo.finite().expect("closed ends are finite").clone());
        }
        // An open gap between endpoints: stay inside it, right of prev.
        let (hi, _) = self.piece_hi(p);
        let lo = match (lo, prev) {
            (_, Some(x)) if self.piece_of(x) == p => ExtRational::Fin(x.clone()),
            (l, _) => l,
        };
        Some(match (lo, hi) {
            (ExtRational::NegInf, ExtRational::PosInf) => int(1),
            (ExtRational::NegInf, ExtRational::Fin(h)) => h.floor() - int(1),
            (ExtRational::Fin(l), ExtRational::PosInf) => l.floor() + int(1),
            (ExtRational::Fin(l), ExtRational::Fin(h)) => simplest_between(&l, &h),
            _ => unreachable!("segments are ordered"),
        })
    }

    /// The pre-drawn interval right of `I_a` that covers the right end of
    /// `a`'s leftmost-ending pre-drawn interval, with an induced path from
    /// `r` to it through pre-drawn vertices outside P(a).
    pub fn slide(&self, g: &Graph, a: usize, b: usize, r: Vertex) -> Result<(Vertex, Vec<Vertex>)> {
        let (pa, pb) = (&self.info[a].predrawn, &self.info[b].predrawn);
        if !self.clique_before(a, b) || a == b {
            return invalid("slide needs I_a left of I_b");
        }
        if pa.len() >= pb.len() || pa.iter().any(|v| !pb.contains(v)) {
            return invalid("slide needs P(a) strictly inside P(b)");
        }
        if !pb.contains(&r) || pa.contains(&r) {
            return invalid("slide needs r in P(b) but not P(a)");
        }
        let u = self.min_right(a)[0];
        let point = self.rep.get(u).unwrap().r.clone();
        let right_a = self.info[a].ia.hi.clone();
        let covers = |w: Vertex| self.rep.get(w).is_some_and(|iv| iv.contains(&point));
        let z = if covers(r) {
            r
        } else {
            self.rep
                .predrawn()
                .filter(|&(w, iv)| !pa.contains(&w) && iv.contains(&point))
                .max_by(|x, y| x.1.r.cmp(&y.1.r).then(y.0.cmp(&x.0)))
                .map(|(w, _)| w)
                .ok_or_else(|| crate::Error::Internal(format!("nothing outside P({a}) covers the sliding point")))?
        };
        let allowed = |w: Vertex| match self.rep.get(w) {
            Some(iv) => !pa.contains(&w) && iv.l <= point && ExtRational::Fin(iv.r.clone()) >= right_a,
            None => false,
        };
        let path = g
            .shortest_path_within(r, z, allowed)
            .ok_or_else(|| crate::Error::Internal(format!("no pre-drawn path from {} to {}", g.name(r), g.name(z))))?;
        Ok((z, path))
    }
}

/// Mirrors a representation through zero.
pub fn flip(rep: &PartialRepresentation) -> PartialRepresentation {
    rep.flip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partrep::Interval;
    use crate::rational::frac;

    fn clique(id: usize, members: &[Vertex]) -> MaximalClique {
        MaximalClique { id, members: members.to_vec() }
    }

    fn ext(v: i64) -> ExtRational {
        ExtRational::Fin(int(v))
    }

    #[test]
    fn no_predrawn_gives_the_line() {
        let rep = PartialRepresentation::empty(2);
        let ctx = CliqueOrderContext::new(&rep, &[clique(0, &[0, 1])]).unwrap();
        let s = ctx.admissible_set(0);
        assert_eq!(s.segments, vec![Segment { lo: ExtRational::NegInf, lo_closed: false, hi: ExtRational::PosInf, hi_closed: false }]);
        assert_eq!(ctx.point_after(0, None), Some(int(1)));
        assert_eq!(ctx.point_after(0, Some(&int(1))), Some(int(2)));
    }

    #[test]
    fn half_open_segment() {
        // u = [0,2] in the clique, v = [1,3] outside it.
        let rep = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 2)), (1, Interval::ints(1, 3))]);
        let ctx = CliqueOrderContext::new(&rep, &[clique(0, &[0, 2]), clique(1, &[0, 1])]).unwrap();
        let s = ctx.admissible_set(0);
        assert_eq!(s.segments, vec![Segment { lo: ext(0), lo_closed: true, hi: ext(1), hi_closed: false }]);
        assert_eq!(ctx.open_interval(0), &OpenIntervalIa { lo: ext(0), hi: ext(1), empty: false });
        assert_eq!(ctx.predrawn_set(1), &vec![0, 1]);
    }

    #[test]
    fn touching_pair_is_a_point() {
        let rep = PartialRepresentation::from_pairs(2, [(0, Interval::ints(0, 1)), (1, Interval::ints(1, 2))]);
        let ctx = CliqueOrderContext::new(&rep, &[clique(0, &[0, 1])]).unwrap();
        let s = ctx.admissible_set(0);
        assert_eq!(s.segments, vec![Segment { lo: ext(1), lo_closed: true, hi: ext(1), hi_closed: true }]);
        assert_eq!(ctx.point_after(0, None), Some(int(1)));
        assert_eq!(ctx.point_after(0, Some(&int(1))), None);
    }

    #[test]
    fn gap_keeps_inf_and_sup() {
        // x = [0,4] in the clique, y = [3/2,2] outside cuts a hole.
        let rep = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 4)), (1, Interval::new(frac(3, 2), int(2)))]);
        let ctx = CliqueOrderContext::new(&rep, &[clique(0, &[0, 2]), clique(1, &[0, 1])]).unwrap();
        let s = ctx.admissible_set(0);
        assert_eq!(s.segments.len(), 2);
        assert_eq!(ctx.open_interval(0), &OpenIntervalIa { lo: ext(0), hi: ext(4), empty: false });
        assert!(!ctx.clique_before(0, 0));
    }

    #[test]
    fn leftmost_gap_rule() {
        // Admissible set (2, 5): inside x = [0,5], outside y = [0,2].
        let rep = PartialRepresentation::from_pairs(3, [(0, Interval::ints(0, 5)), (1, Interval::ints(0, 2))]);
        let ctx = CliqueOrderContext::new(&rep, &[clique(0, &[0, 2]), clique(1, &[0, 1])]).unwrap();
        assert_eq!(ctx.admissible_set(0).segments, vec![Segment { lo: ext(2), lo_closed: false, hi: ext(5), hi_closed: true }]);
        assert_eq!(ctx.point_after(0, Some(&int(2))), Some(int(3)));
        assert_eq!(ctx.point_after(0, Some(&int(3))), Some(int(4)));
        assert_eq!(ctx.point_after(0, Some(&frac(9, 2))), Some(frac(14, 3)));
        assert_eq!(ctx.point_after(0, None), Some(int(3)));
    }

    #[test]
    fn slide_chain() {
        // u = [0,10] in both cliques, r = [6,7] only in b, chain c1 = [2,4],
        // c2 = [3,8], c3 = [7,12] right of I_a; r(u) = 10 is covered by c3.
        let rep = PartialRepresentation::from_pairs(
            6,
            [(0, Interval::ints(0, 10)), (1, Interval::ints(6, 7)), (2, Interval::ints(2, 4)), (3, Interval::ints(3, 8)), (4, Interval::ints(7, 12))],
        );
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (2, 3), (1, 3), (1, 4), (3, 4), (0, 5)]).unwrap();
        let cliques = [clique(0, &[0, 5]), clique(1, &[0, 1, 3, 4])];
        let ctx = CliqueOrderContext::new(&rep, &cliques).unwrap();
        assert!(ctx.clique_before(0, 1));
        let (z, path) = ctx.slide(&g, 0, 1, 1).unwrap();
        assert_eq!(z, 4);
        assert_eq!(path, vec![1, 4]);
        let no = ctx.slide(&g, 1, 0, 1);
        assert!(no.is_err());
    }
}
