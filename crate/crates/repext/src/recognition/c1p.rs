//! Consecutive orderings of maximal cliques.
//!
//! The fast route guesses a vertex order with a few LexBFS+ sweeps and reads
//! a clique order off it; the guess is checked and, when it fails, an exact
//! overlap-component algorithm decides.

use super::cliques::{lexbfs, MaximalClique};
use crate::graph::{Graph, Vertex};

/// Per vertex, the sorted ids of the cliques containing it.
pub fn clique_sets(n: usize, cliques: &[MaximalClique]) -> Vec<Vec<usize>> {
    let mut sets = vec![Vec::new(); n];
    for c in cliques {
        for &v in &c.members {
            sets[v].push(c.id);
        }
    }
    sets
}

/// True when every vertex's cliques form a contiguous block of `order`.
pub fn is_consecutive(n: usize, cliques: &[MaximalClique], order: &[usize]) -> bool {
    if order.len() != cliques.len() {
        return false;
    }
    let mut pos = vec![usize::MAX; cliques.len()];
    for (i, &c) in order.iter().enumerate() {
        if c >= cliques.len() || pos[c] != usize::MAX {
            return false;
        }
        pos[c] = i;
    }
    let mut lo = vec![usize::MAX; n];
    let mut hi = vec![0usize; n];
    let mut cnt = vec![0usize; n];
    for c in cliques {
        for &v in &c.members {
            lo[v] = lo[v].min(pos[c.id]);
            hi[v] = hi[v].max(pos[c.id]);
            cnt[v] += 1;
        }
    }
    (0..n).all(|v| cnt[v] == 0 || hi[v] - lo[v] + 1 == cnt[v])
}

/// A consecutive ordering of `cliques`, or `None` if none exists.
pub fn consecutive_ordering(g: &Graph, cliques: &[MaximalClique]) -> Option<Vec<usize>> {
    if cliques.len() <= 2 {
        return Some((0..cliques.len()).collect());
    }
    if let Some(o) = sweep_ordering(g, cliques) {
        return Some(o);
    }
    let sets = clique_sets(g.n(), cliques);
    let order = exact_ordering(cliques.len(), &sets)?;
    if is_consecutive(g.n(), cliques, &order) {
        Some(order)
    } else {
        None
    }
}

/// Orders cliques by the position of their last member in `tau`.
fn order_from_vertex_order(g: &Graph, cliques: &[MaximalClique], tau: &[Vertex]) -> Option<Vec<usize>> {
    let mut pos = vec![0usize; g.n()];
    for (i, &v) in tau.iter().enumerate() {
        pos[v] = i;
    }
    let mut keyed: Vec<(usize, usize)> =
        cliques.iter().map(|c| (c.members.iter().map(|&v| pos[v]).max().unwrap_or(0), c.id)).collect();
    keyed.sort_unstable();
    if keyed.windows(2).any(|w| w[0].0 == w[1].0) {
        return None;
    }
    let order: Vec<usize> = keyed.into_iter().map(|(_, c)| c).collect();
    is_consecutive(g.n(), cliques, &order).then_some(order)
}

const SWEEPS: usize = 6;

fn sweep_ordering(g: &Graph, cliques: &[MaximalClique]) -> Option<Vec<usize>> {
    let mut sigma = lexbfs(g, None);
    for _ in 0..SWEEPS {
        let rev: Vec<Vertex> = sigma.iter().rev().copied().collect();
        for tau in [&sigma, &rev] {
            if let Some(o) = order_from_vertex_order(g, cliques, tau) {
                return Some(o);
            }
        }
        sigma = lexbfs(g, Some(&rev));
    }
    None
}

/// Exact consecutive-ones ordering of `0..k` so that every set in `sets` is
/// contiguous. Quadratic in the number of sets; used only when the sweeps
/// fail.
pub fn exact_ordering(k: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    let words = k.div_ceil(64).max(1);
    let mut bits: Vec<Vec<u64>> = sets
        .iter()
        .filter(|s| s.len() >= 2)
        .map(|s| {
            let mut b = vec![0u64; words];
            for &e in s {
                b[e / 64] |= 1 << (e % 64);
            }
            b
        })
        .collect();
    bits.sort();
    bits.dedup();
    let universe: Vec<usize> = (0..k).collect();
    order_within(&universe, &bits, words)
}

fn has(b: &[u64], e: usize) -> bool {
    b[e / 64] >> (e % 64) & 1 == 1
}

fn popcount(b: &[u64]) -> usize {
    b.iter().map(|w| w.count_ones() as usize).sum()
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn overlap(a: &[u64], b: &[u64]) -> bool {
    let meet = a.iter().zip(b).any(|(x, y)| x & y != 0);
    meet && !subset(a, b) && !subset(b, a)
}

fn order_within(universe: &[usize], sets: &[Vec<u64>], words: usize) -> Option<Vec<usize>> {
    let size = universe.len();
    let sets: Vec<&Vec<u64>> = sets.iter().filter(|s| popcount(s) >= 2 && popcount(s) < size).collect();
    if sets.is_empty() {
        return Some(universe.to_vec());
    }
    // Overlap components.
    let s = sets.len();
    let mut comp = vec![usize::MAX; s];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for i in 0..s {
        if comp[i] != usize::MAX {
            continue;
        }
        let id = comps.len();
        comp[i] = id;
        let mut members = vec![i];
        let mut at = 0;
        while at < members.len() {
            let a = members[at];
            at += 1;
            for j in 0..s {
                if comp[j] == usize::MAX && overlap(sets[a], sets[j]) {
                    comp[j] = id;
                    members.push(j);
                }
            }
        }
        comps.push(members);
    }
    let unions: Vec<Vec<u64>> = comps
        .iter()
        .map(|c| {
            let mut u = vec![0u64; words];
            for &i in c {
                for (w, x) in u.iter_mut().zip(sets[i].iter()) {
                    *w |= x;
                }
            }
            u
        })
        .collect();
    // Maximal unions are pairwise disjoint blocks.
    let mut by_size: Vec<usize> = (0..comps.len()).collect();
    by_size.sort_by_key(|&c| std::cmp::Reverse(popcount(&unions[c])));
    let mut blocks: Vec<usize> = Vec::new();
    for &c in &by_size {
        let mut inside = false;
        for &b in &blocks {
            if subset(&unions[c], &unions[b]) {
                inside = true;
                break;
            }
            if overlap(&unions[c], &unions[b]) {
                return None;
            }
        }
        if !inside {
            blocks.push(c);
        }
    }
    let mut covered = vec![false; words * 64];
    let mut pieces: Vec<(usize, Vec<usize>)> = Vec::new();
    for &b in &blocks {
        let elems: Vec<usize> = universe.iter().copied().filter(|&e| has(&unions[b], e)).collect();
        for &e in &elems {
            covered[e] = true;
        }
        let members: Vec<&Vec<u64>> = comps[b].iter().map(|&i| sets[i]).collect();
        let order = if members.len() == 1 {
            let inner: Vec<Vec<u64>> = sets.iter().filter(|t| subset(t, members[0]) && t.as_slice() != members[0].as_slice()).map(|t| (*t).clone()).collect();
            order_within(&elems, &inner, words)?
        } else {
            let atoms = arrange_component(&elems, &members)?;
            let mut order = Vec::new();
            for atom in atoms {
                let mut ab = vec![0u64; words];
                for &e in &atom {
                    ab[e / 64] |= 1 << (e % 64);
                }
                let mut inner = Vec::new();
                for (i, t) in sets.iter().enumerate() {
                    if comp[i] == b {
                        continue;
                    }
                    if subset(t, &unions[b]) {
                        if subset(t, &ab) {
                            inner.push((*t).clone());
                        } else if t.iter().zip(ab.iter()).any(|(x, y)| x & y != 0) {
                            return None;
                        }
                    }
                }
                order.extend(order_within(&atom, &inner, words)?);
            }
            order
        };
        pieces.push((elems[0], order));
    }
    for &e in universe {
        if !covered[e] {
            pieces.push((e, vec![e]));
        }
    }
    pieces.sort_by_key(|p| p.0);
    Some(pieces.into_iter().flat_map(|p| p.1).collect())
}

/// Orders the atoms of one overlap component so that each member set is
/// contiguous. The arrangement is unique up to reversal when it exists.
fn arrange_component(elems: &[usize], members: &[&Vec<u64>]) -> Option<Vec<Vec<usize>>> {
    let m = members.len();
    // Breadth-first order over the overlap graph of the component.
    let mut order = vec![0usize];
    let mut seen = vec![false; m];
    seen[0] = true;
    let mut at = 0;
    while at < order.len() {
        let a = order[at];
        at += 1;
        for j in 0..m {
            if !seen[j] && overlap(members[a], members[j]) {
                seen[j] = true;
                order.push(j);
            }
        }
    }
    if order.len() != m {
        return None;
    }
    let a = members[order[0]];
    let b = members[order[1]];
    let pick = |f: &dyn Fn(usize) -> bool| -> Vec<usize> { elems.iter().copied().filter(|&e| f(e)).collect() };
    let mut classes: Vec<Vec<usize>> = vec![
        pick(&|e| has(a, e) && !has(b, e)),
        pick(&|e| has(a, e) && has(b, e)),
        pick(&|e| !has(a, e) && has(b, e)),
    ];
    let mut placed: Vec<bool> = vec![false; elems.iter().max().map_or(0, |&x| x + 1)];
    for &e in elems {
        if has(a, e) || has(b, e) {
            placed[e] = true;
        }
    }
    for &idx in &order[2..] {
        let s = members[idx];
        let fresh: Vec<usize> = elems.iter().copied().filter(|&e| has(s, e) && !placed[e]).collect();
        let status: Vec<(usize, usize)> =
            classes.iter().map(|c| (c.iter().filter(|&&e| has(s, e)).count(), c.len())).collect();
        let touched: Vec<usize> = (0..classes.len()).filter(|&i| status[i].0 > 0).collect();
        let (lo, hi) = (*touched.first()?, *touched.last()?);
        if touched.len() != hi - lo + 1 {
            return None;
        }
        let full = |i: usize| status[i].0 == status[i].1;
        if (lo + 1..hi).any(|i| !full(i)) {
            return None;
        }
        let last = classes.len() - 1;
        let split = |c: &Vec<usize>| -> (Vec<usize>, Vec<usize>) { c.iter().partition(|&&e| has(s, e)) };
        if !fresh.is_empty() {
            let right = hi == last && (full(hi) || lo == hi);
            let left = lo == 0 && (full(lo) || lo == hi);
            match (left, right) {
                (false, true) => {
                    if !full(lo) {
                        let (inn, out) = split(&classes[lo]);
                        classes.splice(lo..=lo, [out, inn]);
                    }
                    classes.push(fresh.clone());
                }
                (true, false) => {
                    if !full(hi) {
                        let (inn, out) = split(&classes[hi]);
                        classes.splice(hi..=hi, [inn, out]);
                    }
                    classes.insert(0, fresh.clone());
                }
                // Both ends would mean the set swallows every placed set.
                _ => return None,
            }
            for &e in &fresh {
                placed[e] = true;
            }
        } else {
            if lo == hi {
                return None;
            }
            if !full(hi) {
                let (inn, out) = split(&classes[hi]);
                classes.splice(hi..=hi, [inn, out]);
            }
            if !full(lo) {
                let (inn, out) = split(&classes[lo]);
                classes.splice(lo..=lo, [out, inn]);
            }
        }
        classes.retain(|c| !c.is_empty());
    }
    for &e in elems {
        if !placed[e] {
            return None;
        }
    }
    Some(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contiguous(order: &[usize], set: &[usize]) -> bool {
        let pos: Vec<usize> = set.iter().map(|e| order.iter().position(|x| x == e).unwrap()).collect();
        pos.iter().max().unwrap() - pos.iter().min().unwrap() + 1 == set.len()
    }

    #[test]
    fn exact_ordering_finds_path_order() {
        let sets = vec![vec![0, 2], vec![2, 3], vec![3, 1], vec![0]];
        let o = exact_ordering(4, &sets).unwrap();
        for s in &sets {
            assert!(contiguous(&o, s));
        }
    }

    #[test]
    fn exact_ordering_rejects_triangle_of_pairs() {
        // {0,1},{1,2},{0,2} cannot all be contiguous.
        assert!(exact_ordering(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).is_none());
        // Claw-like: three pairs through a common center plus a triple.
        assert!(exact_ordering(4, &[vec![0, 1], vec![0, 2], vec![0, 3]]).is_none());
    }

    #[test]
    fn exact_ordering_nested() {
        let sets = vec![vec![0, 1, 2, 3], vec![1, 2], vec![4, 5], vec![2, 3, 4]];
        let o = exact_ordering(6, &sets).unwrap();
        for s in &sets {
            assert!(contiguous(&o, s), "{o:?} breaks {s:?}");
        }
    }
}
