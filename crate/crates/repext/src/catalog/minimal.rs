//! Non-extendibility and minimality, checked with the brute-force oracle,
//! and greedy shrinking with the fast decision procedure.

use super::Obstruction;
use crate::error::Result;
use crate::extender::is_extendible;
use crate::graph::{Graph, Vertex};
use crate::oracle::oracle_extendible;
use crate::partrep::PartialRepresentation;

/// Whether the obstruction instance `(H, R'_H)` has no extension, by the
/// oracle.
pub fn check_nonextendible(o: &Obstruction) -> Result<bool> {
    Ok(!oracle_extendible(&o.graph, &o.predrawn_rep)?)
}

/// Whether deleting any vertex, or freeing any pre-drawn one, makes the
/// instance extendible. Only meaningful for non-extendible instances.
pub fn check_minimal(o: &Obstruction) -> Result<bool> {
    minimal_instance(&o.graph, &o.predrawn_rep)
}

pub(crate) fn minimal_instance(h: &Graph, rep: &PartialRepresentation) -> Result<bool> {
    for v in 0..h.n() {
        let keep: Vec<Vertex> = (0..h.n()).filter(|&w| w != v).collect();
        let sub = h.induced_subgraph(&keep)?;
        if !oracle_extendible(&sub, &rep.restrict(&keep))? {
            return Ok(false);
        }
        if rep.is_predrawn(v) {
            let mut freed = rep.clone();
            freed.free(v);
            if !oracle_extendible(h, &freed)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn extendible_on(g: &Graph, rep: &PartialRepresentation, set: &[Vertex]) -> Result<bool> {
    let sub = g.induced_subgraph(set)?;
    is_extendible(&sub, &rep.restrict(set))
}

/// Shrinks a non-extendible sub-instance `(G[set], rep)` to a minimal one.
/// Pre-drawn vertices are freed first, then vertices are deleted in
/// decreasing id. Both operations can only turn extendible instances into
/// extendible ones, so a single pass suffices. Large sets first drop whole
/// blocks to cut the number of tests.
pub fn minimize(g: &Graph, rep: &PartialRepresentation, set: &[Vertex]) -> Result<(Vec<Vertex>, PartialRepresentation)> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut rep = rep.clone();
    let pre: Vec<Vertex> = set.iter().copied().filter(|&v| rep.is_predrawn(v)).rev().collect();
    for v in pre {
        let iv = rep.get(v).cloned().unwrap();
        rep.free(v);
        if extendible_on(g, &rep, &set)? {
            rep.set(v, iv);
        }
    }
    if set.len() > 48 {
        let mut block = set.len() / 2;
        while block >= 8 {
            let mut end = set.len();
            while end > 0 {
                let start = end.saturating_sub(block);
                let trial: Vec<Vertex> = set[..start].iter().chain(&set[end..]).copied().collect();
                if !extendible_on(g, &rep, &trial)? {
                    set = trial;
                }
                end = start;
            }
            block /= 2;
        }
    }
    let mut i = set.len();
    while i > 0 {
        i -= 1;
        let mut trial = set.clone();
        trial.remove(i);
        if !extendible_on(g, &rep, &trial)? {
            set = trial;
        }
    }
    for v in 0..g.n() {
        if set.binary_search(&v).is_err() && rep.is_predrawn(v) {
            rep.free(v);
        }
    }
    Ok((set, rep))
}
