//! Seeded random instances for scaling runs and randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::oracle::Instance;
use crate::partrep::{Interval, PartialRepresentation};

/// A random interval graph with its generating intervals.
#[derive(Clone, Debug)]
pub struct Layout {
    pub graph: Graph,
    pub intervals: Vec<Interval>,
}

/// `n` intervals with integer endpoints; lengths are drawn so that the
/// average degree is close to `avg_degree`.
pub fn random_interval_graph(n: usize, avg_degree: usize, seed: u64) -> Result<Layout> {
    if n == 0 {
        return invalid("a random interval graph needs at least one vertex");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let span = 2 * n as i64;
    let ends: Vec<(i64, i64)> = (0..n)
        .map(|_| {
            let l = rng.gen_range(0..span);
            (l, l + rng.gen_range(0..=2 * avg_degree as i64))
        })
        .collect();
    let mut by_left: Vec<Vertex> = (0..n).collect();
    by_left.sort_by_key(|&v| ends[v]);
    let mut edges = Vec::new();
    for (i, &a) in by_left.iter().enumerate() {
        for &b in &by_left[i + 1..] {
            if ends[b].0 > ends[a].1 {
                break;
            }
            edges.push((a.min(b), a.max(b)));
        }
    }
    Ok(Layout { graph: Graph::from_edges(n, &edges)?, intervals: ends.iter().map(|&(l, r)| Interval::ints(l, r)).collect() })
}

/// A random interval graph where a `fraction` of the vertices keep their
/// generating interval as pre-drawn. Always extendible.
pub fn random_extendible_instance(n: usize, avg_degree: usize, fraction: f64, seed: u64) -> Result<Instance> {
    let layout = random_interval_graph(n, avg_degree, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let pairs = (0..n).filter(|_| rng.gen_bool(fraction.clamp(0.0, 1.0))).map(|v| (v, layout.intervals[v].clone())).collect::<Vec<_>>();
    Ok(Instance { rep: PartialRepresentation::from_pairs(n, pairs), graph: layout.graph })
}

/// Like [`random_extendible_instance`], but each pre-drawn interval is
/// redrawn from the endpoints of another vertex with probability `noise`,
/// which usually breaks extendibility. The result is consistent with the
/// graph or the draw is repeated.
pub fn random_instance(n: usize, avg_degree: usize, fraction: f64, noise: f64, seed: u64) -> Result<Instance> {
    let layout = random_interval_graph(n, avg_degree, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    for _ in 0..64 {
        let mut rep = PartialRepresentation::empty(n);
        for v in 0..n {
            if rng.gen_bool(fraction.clamp(0.0, 1.0)) {
                let iv = if rng.gen_bool(noise.clamp(0.0, 1.0)) { layout.intervals[rng.gen_range(0..n)].clone() } else { layout.intervals[v].clone() };
                rep.set(v, iv);
            }
        }
        if rep.check_consistent(&layout.graph).is_ok() {
            return Ok(Instance { graph: layout.graph, rep });
        }
    }
    Ok(Instance { rep: PartialRepresentation::empty(n), graph: layout.graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extender::is_extendible;
    use crate::recognition::is_interval;

    #[test]
    fn layout_is_an_interval_model() {
        let l = random_interval_graph(200, 4, 7).unwrap();
        assert!(is_interval(&l.graph));
        for u in 0..200 {
            for v in u + 1..200 {
                assert_eq!(l.graph.adjacent(u, v), l.intervals[u].intersects(&l.intervals[v]));
            }
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let a = random_extendible_instance(100, 3, 0.1, 42).unwrap();
        let b = random_extendible_instance(100, 3, 0.1, 42).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.rep, b.rep);
        assert!(is_extendible(&a.graph, &a.rep).unwrap());
    }
}
