//! Slow ground truth for small instances.
//!
//! Extendibility is decided from first principles: enumerate the maximal
//! cliques by brute force, and search over clique orderings that are
//! consecutive and admit strictly increasing clique points, each point
//! covered by exactly the pre-drawn intervals of its clique. The search is
//! a dynamic program over (used cliques, last clique), so it copes with
//! up to eighteen cliques. Nothing here uses the MPQ-tree.

use std::collections::HashSet;

use crate::error::{internal, Error, Result};
use crate::graph::{Graph, Vertex};
use crate::partrep::{Interval, PartialRepresentation};
use crate::rational::{int, midpoint, Rational};
use crate::recognition::MaximalClique;

/// Upper bound on the number of maximal cliques the oracle accepts.
pub const MAX_CLIQUES: usize = 18;

/// Maximal cliques by Bron-Kerbosch over bit masks, sorted.
pub fn brute_force_cliques(g: &Graph) -> Result<Vec<Vec<Vertex>>> {
    let n = g.n();
    if n > 64 {
        return Err(Error::Resource(format!("oracle handles at most 64 vertices, got {n}")));
    }
    let adj: Vec<u64> = (0..n).map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w)).collect();
    fn bk(r: u64, mut p: u64, mut x: u64, adj: &[u64], out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            bk(r | 1 << v, p & adj[v], x & adj[v], adj, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut masks = Vec::new();
    if n > 0 {
        bk(0, all, 0, &adj, &mut masks);
    }
    let mut cliques: Vec<Vec<Vertex>> = masks.into_iter().map(|m| (0..n).filter(|&v| m >> v & 1 == 1).collect()).collect();
    cliques.sort();
    Ok(cliques)
}

/// The real line cut at every pre-drawn endpoint: piece `2i+1` is the
/// `i`-th endpoint, even pieces are the open gaps around them.
struct Pieces {
    /// Pre-drawn vertices covering each piece, sorted.
    cover: Vec<Vec<Vertex>>,
}

impl Pieces {
    fn new(rep: &PartialRepresentation) -> Pieces {
        let mut vals: Vec<Rational> = rep.predrawn().flat_map(|(_, iv)| [iv.l.clone(), iv.r.clone()]).collect();
        vals.sort();
        vals.dedup();
        let mut probes = Vec::with_capacity(2 * vals.len() + 1);
        for (i, x) in vals.iter().enumerate() {
            probes.push(if i == 0 { x - int(1) } else { midpoint(&vals[i - 1], x) });
            probes.push(x.clone());
        }
        probes.push(vals.last().map_or(int(0), |x| x + int(1)));
        let cover = probes.iter().map(|p| rep.predrawn().filter(|(_, iv)| iv.contains(p)).map(|(v, _)| v).collect()).collect();
        Pieces { cover }
    }
}

/// Decides extendibility of `rep` for `g` by exhaustive search. Returns
/// false for graphs that are not interval graphs.
pub fn oracle_extendible(g: &Graph, rep: &PartialRepresentation) -> Result<bool> {
    Ok(oracle_ordering(g, rep)?.is_some())
}

/// A consecutive clique ordering with increasing clique points, if any,
/// as (cliques, ordering, clique points).
pub fn oracle_ordering(g: &Graph, rep: &PartialRepresentation) -> Result<Option<(Vec<Vec<Vertex>>, Vec<usize>, Vec<Rational>)>> {
    if rep.len() != g.n() {
        return Err(Error::InvalidInput("representation and graph sizes differ".into()));
    }
    if g.n() == 0 {
        return Ok(Some((Vec::new(), Vec::new(), Vec::new())));
    }
    let cliques = brute_force_cliques(g)?;
    let k = cliques.len();
    if k > MAX_CLIQUES {
        return Err(Error::Resource(format!("{k} maximal cliques exceed the oracle limit of {MAX_CLIQUES}")));
    }
    let pieces = Pieces::new(rep);
    let np = pieces.cover.len();
    let admissible: Vec<Vec<bool>> = cliques
        .iter()
        .map(|c| {
            let pre: Vec<Vertex> = c.iter().copied().filter(|&v| rep.is_predrawn(v)).collect();
            pieces.cover.iter().map(|cov| *cov == pre).collect()
        })
        .collect();
    let cm: Vec<u64> = cliques.iter().map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v)).collect();
    // Vertices seen in the cliques of each mask.
    let mut seen = vec![0u64; 1 << k];
    for mask in 1usize..1 << k {
        seen[mask] = seen[mask & (mask - 1)] | cm[mask.trailing_zeros() as usize];
    }
    // First admissible piece for clique c at or after position p; a gap
    // can host several points, an endpoint only one.
    let next_piece = |c: usize, p: Option<u32>| -> Option<u32> {
        let start = match p {
            None => 0,
            Some(p) if p % 2 == 0 => p as usize,
            Some(p) => p as usize + 1,
        };
        (start..np).find(|&q| admissible[c][q]).map(|q| q as u32)
    };
    const NONE: u32 = u32::MAX;
    let full = (1usize << k) - 1;
    let mut best = vec![NONE; (1 << k) * k];
    let mut from = vec![u8::MAX; (1 << k) * k];
    for c in 0..k {
        if let Some(q) = next_piece(c, None) {
            best[(1 << c) * k + c] = q;
        }
    }
    for mask in 1..=full {
        for last in 0..k {
            let pos = best[mask * k + last];
            if pos == NONE {
                continue;
            }
            for c in 0..k {
                if mask >> c & 1 == 1 {
                    continue;
                }
                // Consecutive: anything already seen must still be open.
                if cm[c] & seen[mask] & !cm[last] != 0 {
                    continue;
                }
                let Some(q) = next_piece(c, Some(pos)) else { continue };
                let nm = mask | 1 << c;
                if q < best[nm * k + c] {
                    best[nm * k + c] = q;
                    from[nm * k + c] = last as u8;
                }
            }
        }
    }
    let Some(end) = (0..k).find(|&c| best[full * k + c] != NONE) else { return Ok(None) };
    let mut ordering = vec![end];
    let (mut mask, mut cur) = (full, end);
    while mask.count_ones() > 1 {
        let prev = from[mask * k + cur] as usize;
        mask &= !(1 << cur);
        cur = prev;
        ordering.push(cur);
    }
    ordering.reverse();
    let points = concrete_points(rep, &ordering, &admissible, np);
    Ok(Some((cliques, ordering, points)))
}

/// Strictly increasing points for an ordering known to be placeable,
/// spreading points that share a gap evenly inside it.
fn concrete_points(rep: &PartialRepresentation, ordering: &[usize], admissible: &[Vec<bool>], np: usize) -> Vec<Rational> {
    let mut vals: Vec<Rational> = rep.predrawn().flat_map(|(_, iv)| [iv.l.clone(), iv.r.clone()]).collect();
    vals.sort();
    vals.dedup();
    let mut chosen: Vec<usize> = Vec::with_capacity(ordering.len());
    let mut p: Option<usize> = None;
    for &c in ordering {
        let start = match p {
            None => 0,
            Some(p) if p % 2 == 0 => p,
            Some(p) => p + 1,
        };
        let q = (start..np).find(|&q| admissible[c][q]).expect("ordering is placeable");
        chosen.push(q);
        p = Some(q);
    }
    let mut points = vec![int(0); ordering.len()];
    let mut i = 0;
    while i < chosen.len() {
        let mut j = i;
        while j < chosen.len() && chosen[j] == chosen[i] {
            j += 1;
        }
        let q = chosen[i];
        let count = (j - i) as i64;
        let (lo, hi) = if q % 2 == 1 {
            (vals[q / 2].clone(), vals[q / 2].clone())
        } else {
            let lo = if q == 0 { vals.first().map_or(int(0), |x| x - int(count + 1)) } else { vals[q / 2 - 1].clone() };
            let hi = if q / 2 == vals.len() { vals.last().map_or(int(count + 1), |x| x + int(count + 1)) } else { vals[q / 2].clone() };
            (lo, hi)
        };
        for (t, slot) in (i..j).enumerate() {
            points[slot] = if q % 2 == 1 { lo.clone() } else { &lo + (&hi - &lo) * Rational::new((t as i64 + 1).into(), (count + 1).into()) };
        }
        i = j;
    }
    let mut by_clique = vec![int(0); ordering.len()];
    for (slot, &c) in ordering.iter().enumerate() {
        by_clique[c] = points[slot].clone();
    }
    by_clique
}

/// Builds the representation promised by a successful oracle run and
/// checks it with [`verify_representation`].
pub fn oracle_realization(g: &Graph, rep: &PartialRepresentation) -> Result<Option<Vec<Interval>>> {
    let Some((cliques, ordering, points)) = oracle_ordering(g, rep)? else { return Ok(None) };
    let mut iv: Vec<Option<Interval>> = (0..g.n()).map(|v| rep.get(v).cloned()).collect();
    for v in 0..g.n() {
        if iv[v].is_some() {
            continue;
        }
        let ps: Vec<&Rational> = ordering.iter().filter(|&&c| cliques[c].contains(&v)).map(|&c| &points[c]).collect();
        let (Some(lo), Some(hi)) = (ps.iter().min(), ps.iter().max()) else { return internal("vertex in no clique") };
        iv[v] = Some(Interval::new((*lo).clone(), (*hi).clone()));
    }
    let iv: Vec<Interval> = iv.into_iter().map(|o| o.expect("filled")).collect();
    if let Err(msg) = verify_representation(g, rep, &iv) {
        return internal(format!("oracle ordering does not realize: {msg}"));
    }
    Ok(Some(iv))
}

/// Quadratic check that `intervals` represent `g` and keep every
/// pre-drawn interval of `rep` exactly.
pub fn verify_representation(g: &Graph, rep: &PartialRepresentation, intervals: &[Interval]) -> std::result::Result<(), String> {
    let n = g.n();
    if intervals.len() != n {
        return Err(format!("{} intervals for {n} vertices", intervals.len()));
    }
    for (v, iv) in rep.predrawn() {
        if &intervals[v] != iv {
            return Err(format!("pre-drawn interval of {} moved", g.name(v)));
        }
    }
    for (v, iv) in intervals.iter().enumerate() {
        if iv.l > iv.r {
            return Err(format!("interval of {} is reversed", g.name(v)));
        }
    }
    for u in 0..n {
        for v in u + 1..n {
            if intervals[u].intersects(&intervals[v]) != g.adjacent(u, v) {
                return Err(format!("{} and {} disagree with the graph", g.name(u), g.name(v)));
            }
        }
    }
    Ok(())
}

/// A set of at most four pre-drawn vertices whose intervals alone already
/// cannot be extended. Expects a non-extendible input.
pub fn oracle_helly_quadruple(g: &Graph, rep: &PartialRepresentation) -> Result<Vec<Vertex>> {
    let pre = rep.predrawn_vertices();
    for size in 0..=4.min(pre.len()) {
        for subset in subsets(&pre, size) {
            let sub = PartialRepresentation::from_pairs(rep.len(), subset.iter().map(|&v| (v, rep.get(v).unwrap().clone())));
            if !oracle_extendible(g, &sub)? {
                return Ok(subset);
            }
        }
    }
    internal("no set of four pre-drawn intervals is non-extendible by itself")
}

/// All `size`-element subsets of `items` in lexicographic order.
pub fn subsets<T: Clone>(items: &[T], size: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..size).collect();
    if size > items.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let Some(i) = (0..size).rev().find(|&i| idx[i] < items.len() - size + i) else { break };
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// Adjacency of a small graph as a bit matrix in row-major bit order.
fn code(n: usize, adj: &[u32], perm: &[usize]) -> u64 {
    let mut c = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[perm[i]] >> perm[j] & 1 == 1 {
                c |= 1 << bit;
            }
            bit += 1;
        }
    }
    c
}

fn canonical(n: usize, adj: &[u32]) -> u64 {
    // Only relabelings that sort vertices by (degree, neighbor degrees) are
    // tried; the invariant is preserved by isomorphism.
    let deg = |v: usize| adj[v].count_ones();
    let inv: Vec<(u32, Vec<u32>)> = (0..n)
        .map(|v| {
            let mut nd: Vec<u32> = (0..n).filter(|&w| adj[v] >> w & 1 == 1).map(deg).collect();
            nd.sort_unstable();
            (deg(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        if i > 0 && inv[order[i - 1]] == inv[v] {
            blocks.last_mut().unwrap().push(v);
        } else {
            blocks.push(vec![v]);
        }
    }
    fn go(blocks: &[Vec<usize>], perm: &mut Vec<usize>, n: usize, adj: &[u32], best: &mut u64) {
        let Some((first, rest)) = blocks.split_first() else {
            *best = (*best).min(code(n, adj, perm));
            return;
        };
        for p in crate::recognition::mpq::permutations(first.len()) {
            let len = perm.len();
            perm.extend(p.iter().map(|&i| first[i]));
            go(rest, perm, n, adj, best);
            perm.truncate(len);
        }
    }
    let mut best = u64::MAX;
    go(&blocks, &mut Vec::with_capacity(n), n, adj, &mut best);
    if n == 0 {
        0
    } else {
        best
    }
}

fn from_code(n: usize, c: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if c >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("valid edges")
}

/// Connected interval graphs with `1..=max_n` vertices, one per
/// isomorphism class, by size and then by canonical code.
pub fn connected_interval_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    if max_n == 0 {
        return out;
    }
    let mut level: Vec<u64> = vec![0];
    out.push(from_code(1, 0));
    for n in 2..=max_n {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut rejected: HashSet<u64> = HashSet::new();
        for &c in &level {
            let g = from_code(n - 1, c);
            let mut adj: Vec<u32> = (0..n - 1).map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
            adj.push(0);
            for nb in 1u32..(1 << (n - 1)) {
                let mut a = adj.clone();
                a[n - 1] = nb;
                for v in 0..n - 1 {
                    if nb >> v & 1 == 1 {
                        a[v] |= 1 << (n - 1);
                    }
                }
                let cc = canonical(n, &a);
                if seen.contains(&cc) || rejected.contains(&cc) {
                    continue;
                }
                if oracle_is_interval(&from_code(n, cc)) {
                    seen.insert(cc);
                } else {
                    rejected.insert(cc);
                }
            }
        }
        let mut codes: Vec<u64> = seen.into_iter().collect();
        codes.sort_unstable();
        out.extend(codes.iter().map(|&c| from_code(n, c)));
        level = codes;
    }
    out
}

/// Interval test by the oracle: some consecutive clique ordering exists.
pub fn oracle_is_interval(g: &Graph) -> bool {
    oracle_extendible(g, &PartialRepresentation::empty(g.n())).unwrap_or(false)
}

/// Every weak order of `2p` endpoints with each left end at or before its
/// right end, as integer ranks `(l_i, r_i)`. Endpoints are inserted one by
/// one, either into an existing rank or as a new rank in any gap.
pub fn endpoint_orders(p: usize) -> Vec<Vec<(i64, i64)>> {
    fn go(i: usize, m: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<(i64, i64)>>) {
        if i == m {
            let mut rank = vec![0i64; m];
            for (r, b) in blocks.iter().enumerate() {
                for &e in b {
                    rank[e] = r as i64;
                }
            }
            out.push(rank.chunks(2).map(|c| (c[0], c[1])).collect());
            return;
        }
        // A right end may not go below its left end.
        let floor = if i % 2 == 1 { blocks.iter().position(|b| b.contains(&(i - 1))).unwrap() } else { 0 };
        for r in floor..blocks.len() {
            blocks[r].push(i);
            go(i + 1, m, blocks, out);
            blocks[r].pop();
        }
        for gap in floor + usize::from(i % 2 == 1)..=blocks.len() {
            blocks.insert(gap, vec![i]);
            go(i + 1, m, blocks, out);
            blocks.remove(gap);
        }
    }
    let mut out = Vec::new();
    go(0, 2 * p, &mut Vec::new(), &mut out);
    out
}

/// One instance of the exhaustive sweep.
#[derive(Clone, Debug)]
pub struct Instance {
    pub graph: Graph,
    pub rep: PartialRepresentation,
}

/// All connected interval graphs with at most `max_n` vertices, every set
/// of at most `max_predrawn` pre-drawn vertices, and every endpoint order
/// consistent with the graph. Lazily generated.
pub fn enumerate_instances(max_n: usize, max_predrawn: usize) -> impl Iterator<Item = Instance> {
    let graphs = connected_interval_graphs(max_n);
    let orders: Vec<Vec<Vec<(i64, i64)>>> = (0..=max_predrawn.min(max_n)).map(endpoint_orders).collect();
    graphs.into_iter().flat_map(move |g| {
        let n = g.n();
        let orders = orders.clone();
        let verts: Vec<Vertex> = (0..n).collect();
        (0..=max_predrawn.min(n)).flat_map(move |p| subsets(&verts, p)).flat_map(move |subset| {
            let g = g.clone();
            orders[subset.len()]
                .clone()
                .into_iter()
                .filter_map(move |ord| {
                    let rep = PartialRepresentation::from_pairs(n, subset.iter().zip(&ord).map(|(&v, &(l, r))| (v, Interval::ints(l, r))));
                    rep.check_consistent(&g).ok().map(|_| Instance { graph: g.clone(), rep })
                })
                .collect::<Vec<_>>()
        })
    })
}

/// Clique list in the form the rest of the crate expects.
pub fn as_maximal_cliques(cliques: &[Vec<Vertex>]) -> Vec<MaximalClique> {
    cliques.iter().enumerate().map(|(id, c)| MaximalClique { id, members: c.clone() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::{cycle, path};

    #[test]
    fn cliques_of_a_path() {
        assert_eq!(brute_force_cliques(&path(4)).unwrap(), vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
    }

    #[test]
    fn empty_rep_is_extendible_iff_interval() {
        assert!(oracle_extendible(&path(5), &PartialRepresentation::empty(5)).unwrap());
        assert!(!oracle_extendible(&cycle(4), &PartialRepresentation::empty(4)).unwrap());
    }

    #[test]
    fn canonical_one_fat() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let rep = PartialRepresentation::from_pairs(4, [(0, Interval::ints(0, 1)), (3, Interval::ints(2, 3)), (2, Interval::ints(4, 5))]);
        assert!(!oracle_extendible(&g, &rep).unwrap());
        assert_eq!(oracle_helly_quadruple(&g, &rep).unwrap(), vec![0, 2, 3]);
        let mut freed = rep.clone();
        freed.free(3);
        assert!(oracle_realization(&g, &freed).unwrap().is_some());
    }

    #[test]
    fn shared_point_is_fine_but_crossing_is_not() {
        let g = path(2);
        let rep = PartialRepresentation::from_pairs(2, [(0, Interval::ints(0, 1)), (1, Interval::ints(1, 2))]);
        assert!(oracle_extendible(&g, &rep).unwrap());
    }

    #[test]
    fn small_graph_counts() {
        // Connected interval graphs on 1..=5 vertices: 1, 1, 2, 5, 15.
        let gs = connected_interval_graphs(5);
        let count = |n: usize| gs.iter().filter(|g| g.n() == n).count();
        assert_eq!((count(1), count(2), count(3), count(4), count(5)), (1, 1, 2, 5, 15));
    }

    #[test]
    fn endpoint_order_counts() {
        // Against a direct filter over all rank assignments.
        for p in 0..=3usize {
            let m = 2 * p;
            let mut expect = 0;
            let total = (m as u64).pow(m as u32).max(1);
            for code in 0..total {
                let ranks: Vec<u64> = (0..m).map(|i| code / (m as u64).pow(i as u32) % m as u64).collect();
                let max = ranks.iter().copied().max().unwrap_or(0);
                let onto = m == 0 || (0..=max).all(|r| ranks.contains(&r));
                if onto && (0..p).all(|i| ranks[2 * i] <= ranks[2 * i + 1]) {
                    expect += 1;
                }
            }
            let got = endpoint_orders(p);
            assert_eq!(got.len(), expect, "p = {p}");
            let distinct: HashSet<_> = got.iter().collect();
            assert_eq!(distinct.len(), got.len());
        }
        assert_eq!(endpoint_orders(1).len(), 2);
    }
}
