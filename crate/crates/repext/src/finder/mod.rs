//! Minimal obstructions for non-extendible instances.
//!
//! Each kind of obstructed node has a handler that follows the constructive
//! case analysis and names a small candidate vertex set. The candidate is
//! checked to be non-extendible, shrunk to a minimal sub-instance and
//! matched against the class templates. When a handler cannot complete, or
//! its candidate turns out extendible, the whole graph is shrunk instead
//! and the event is counted in [`stats`].

mod cases;
mod kfat;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub use kfat::{build_k_fat, build_kl_ce, CeBuild, KFat, QFrame};

use crate::catalog::{minimize, rank_compress, Certificate};
use crate::error::{internal, Error, Result};
use crate::extender::{decide, is_extendible, Decision, Evidence, ObstructedKind};
use crate::graph::{Graph, Vertex};
use crate::order::CliqueOrderContext;
use crate::partrep::{Interval, PartialRepresentation};
use crate::recognition::{IntervalModel, MaximalClique, NodeId};

/// The reorder failure handed over by the extender.
#[derive(Clone, Copy, Debug)]
pub struct Obstructed<'a> {
    pub model: &'a IntervalModel,
    pub ctx: &'a CliqueOrderContext,
    pub node: NodeId,
    pub kind: ObstructedKind,
    pub evidence: &'a Evidence,
}

/// Counters over all finder runs in this process.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FinderStats {
    pub runs: usize,
    /// Runs where the handler's candidate was not used.
    pub fallbacks: usize,
    pub kfat_calls: usize,
    /// Peeling runs whose edge visits exceeded `2(n+m)`.
    pub kfat_over_budget: usize,
    pub max_kfat_visits: usize,
}

static RUNS: AtomicUsize = AtomicUsize::new(0);
static FALLBACKS: AtomicUsize = AtomicUsize::new(0);
static KFAT_CALLS: AtomicUsize = AtomicUsize::new(0);
static KFAT_OVER: AtomicUsize = AtomicUsize::new(0);
static KFAT_MAX: AtomicUsize = AtomicUsize::new(0);
static FALLBACK_NOTES: Mutex<Vec<String>> = Mutex::new(Vec::new());

pub fn stats() -> FinderStats {
    FinderStats {
        runs: RUNS.load(Ordering::Relaxed),
        fallbacks: FALLBACKS.load(Ordering::Relaxed),
        kfat_calls: KFAT_CALLS.load(Ordering::Relaxed),
        kfat_over_budget: KFAT_OVER.load(Ordering::Relaxed),
        max_kfat_visits: KFAT_MAX.load(Ordering::Relaxed),
    }
}

/// Reasons recorded for the first few fallbacks.
pub fn fallback_notes() -> Vec<String> {
    FALLBACK_NOTES.lock().map(|v| v.clone()).unwrap_or_default()
}

pub(crate) fn record_kfat(visits: usize, g: &Graph) {
    KFAT_CALLS.fetch_add(1, Ordering::Relaxed);
    KFAT_MAX.fetch_max(visits, Ordering::Relaxed);
    if visits > 2 * (g.n() + g.m()) {
        KFAT_OVER.fetch_add(1, Ordering::Relaxed);
    }
}

fn note_fallback(msg: String) {
    FALLBACKS.fetch_add(1, Ordering::Relaxed);
    if let Ok(mut v) = FALLBACK_NOTES.lock() {
        if v.len() < 32 {
            v.push(msg);
        }
    }
}

/// A vertex set expected to carry an obstruction, and the case it came
/// from.
#[derive(Clone, Debug)]
pub(crate) struct Candidate {
    pub step: &'static str,
    pub set: Vec<Vertex>,
}

impl Candidate {
    pub fn new(step: &'static str, vs: impl IntoIterator<Item = Vertex>) -> Candidate {
        let mut set: Vec<Vertex> = vs.into_iter().collect();
        set.sort_unstable();
        set.dedup();
        Candidate { step, set }
    }
}

/// One orientation of the instance: the representation and its clique
/// order context.
struct View {
    rep: PartialRepresentation,
    ctx: CliqueOrderContext,
}

pub(crate) struct FinderState<'a> {
    g: &'a Graph,
    model: &'a IntervalModel,
    views: [View; 2],
}

impl<'a> FinderState<'a> {
    fn new(g: &'a Graph, rep: &PartialRepresentation, ob: &Obstructed<'a>) -> Result<Self> {
        let flipped = rep.flip();
        let fctx = CliqueOrderContext::new(&flipped, &ob.model.cliques)?;
        Ok(FinderState { g, model: ob.model, views: [View { rep: rep.clone(), ctx: ob.ctx.clone() }, View { rep: flipped, ctx: fctx }] })
    }

    pub fn side(&self, flipped: bool) -> Side<'_> {
        Side { st: self, f: flipped as usize }
    }
}

/// The instance seen in one orientation; `flip` switches to the mirror.
#[derive(Clone, Copy)]
pub(crate) struct Side<'s> {
    st: &'s FinderState<'s>,
    f: usize,
}

impl<'s> Side<'s> {
    pub fn g(&self) -> &'s Graph {
        self.st.g
    }

    pub fn model(&self) -> &'s IntervalModel {
        self.st.model
    }

    pub fn flip(&self) -> Side<'s> {
        Side { st: self.st, f: 1 - self.f }
    }

    fn view(&self) -> &'s View {
        &self.st.views[self.f]
    }

    pub fn clique(&self, a: usize) -> &'s MaximalClique {
        &self.st.model.cliques[a]
    }

    pub fn before(&self, a: usize, b: usize) -> bool {
        self.view().ctx.clique_before(a, b)
    }

    pub fn pset(&self, a: usize) -> &'s [Vertex] {
        self.view().ctx.predrawn_set(a)
    }

    /// `P(a) \ P(b)`, sorted.
    pub fn pdiff(&self, a: usize, b: usize) -> Vec<Vertex> {
        let pb = self.pset(b);
        let mut out: Vec<Vertex> = self.pset(a).iter().copied().filter(|v| !pb.contains(v)).collect();
        out.sort_unstable();
        out
    }

    pub fn is_pre(&self, v: Vertex) -> bool {
        self.view().rep.is_predrawn(v)
    }

    pub fn iv(&self, v: Vertex) -> Result<&'s Interval> {
        self.view().rep.get(v).ok_or_else(|| Error::Internal(format!("vertex {} is not pre-drawn", self.g().name(v))))
    }

    pub fn predrawn(&self) -> impl Iterator<Item = (Vertex, &'s Interval)> {
        self.view().rep.predrawn()
    }

    pub fn min_right(&self, a: usize) -> Result<Vertex> {
        self.view().ctx.min_right(a).into_iter().min().ok_or_else(|| Error::Internal(format!("clique {a} has no pre-drawn vertex")))
    }

    pub fn max_left(&self, a: usize) -> Result<Vertex> {
        self.view().ctx.max_left(a).into_iter().min().ok_or_else(|| Error::Internal(format!("clique {a} has no pre-drawn vertex")))
    }

    pub fn in_min_right(&self, a: usize, v: Vertex) -> bool {
        self.view().ctx.min_right(a).contains(&v)
    }

    /// Right end of `I_a`.
    pub fn hi(&self, a: usize) -> &'s crate::rational::ExtRational {
        &self.view().ctx.open_interval(a).hi
    }

    pub fn slide(&self, a: usize, b: usize, r: Vertex) -> Result<(Vertex, Vec<Vertex>)> {
        self.view().ctx.slide(self.g(), a, b, r)
    }
}

/// The certificate for a non-extendible instance, computed in a fixed
/// orientation: the one whose rank-compressed representation is smaller.
/// The mirrored instance then gets the mirrored certificate.
pub fn certify(g: &Graph, rep: &PartialRepresentation, ob: &Obstructed<'_>) -> Result<Certificate> {
    let flipped = rep.flip();
    let key = |r: &PartialRepresentation| {
        rank_compress(r).predrawn().map(|(v, iv)| (v, iv.l.clone(), iv.r.clone())).collect::<Vec<_>>()
    };
    if key(rep) <= key(&flipped) {
        return find_obstruction(g, rep, ob);
    }
    match decide(g, &flipped)? {
        Decision::NonExtendible { model, ctx, node, kind, evidence } => {
            let fob = Obstructed { model: &model, ctx: &ctx, node, kind, evidence: &evidence };
            Ok(find_obstruction(g, &flipped, &fob)?.mirrored())
        }
        _ => internal("the mirrored instance is extendible"),
    }
}

/// Dispatches on the obstructed node and returns a minimal obstruction
/// matched to its class.
pub fn find_obstruction(g: &Graph, rep: &PartialRepresentation, ob: &Obstructed<'_>) -> Result<Certificate> {
    RUNS.fetch_add(1, Ordering::Relaxed);
    let candidate = FinderState::new(g, rep, ob).and_then(|st| cases::dispatch(&st, ob));
    let note = match candidate {
        Ok(c) => match settle(g, rep, &c.set)? {
            Some(cert) => return Ok(cert),
            None => format!("{}: candidate of {} vertices did not settle", c.step, c.set.len()),
        },
        Err(e) => format!("{:?} node: {e}", ob.kind),
    };
    note_fallback(note);
    let all: Vec<Vertex> = (0..g.n()).collect();
    match settle(g, rep, &all)? {
        Some(cert) => Ok(cert),
        None => internal("minimal obstruction matches no class"),
    }
}

/// Shrinks a non-extendible candidate and classifies it.
fn settle(g: &Graph, rep: &PartialRepresentation, set: &[Vertex]) -> Result<Option<Certificate>> {
    let sub = g.induced_subgraph(set)?;
    if is_extendible(&sub, &rep.restrict(set))? {
        return Ok(None);
    }
    let (set, freed) = minimize(g, rep, set)?;
    Certificate::classify_subset(g, &freed, &set)
}
