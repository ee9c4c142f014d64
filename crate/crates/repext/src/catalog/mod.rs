//! Minimal obstruction classes, certificates and their checks.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::extender::Realization;
use crate::graph::{content_lines, Graph, Vertex};
use crate::partrep::{Interval, PartialRepresentation};
use crate::rational::{fmt_rational, int, parse_rational, Rational};
use crate::recognition::lb::{verify_lb, LbKind, LbObstruction};

pub mod forms;
pub mod generate;
pub mod minimal;
pub mod template;

pub use generate::{generate, GenSpec};
pub use minimal::{check_minimal, check_nonextendible, minimize};
pub use template::{classify, peel, verify_template, Fat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassTag {
    Lb,
    Se,
    Fat,
    Bi,
    Fs,
    Efs,
    Fb,
    Efb,
    Fds,
    Efds,
    Fns,
    Ce,
}

impl ClassTag {
    pub const ALL: [ClassTag; 12] = [
        ClassTag::Lb,
        ClassTag::Se,
        ClassTag::Fat,
        ClassTag::Bi,
        ClassTag::Fs,
        ClassTag::Efs,
        ClassTag::Fb,
        ClassTag::Efb,
        ClassTag::Fds,
        ClassTag::Efds,
        ClassTag::Fns,
        ClassTag::Ce,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ClassTag::Lb => "LB",
            ClassTag::Se => "SE",
            ClassTag::Fat => "kFAT",
            ClassTag::Bi => "kBI",
            ClassTag::Fs => "kFS",
            ClassTag::Efs => "kEFS",
            ClassTag::Fb => "kFB",
            ClassTag::Efb => "kEFB",
            ClassTag::Fds => "kFDS",
            ClassTag::Efds => "kEFDS",
            ClassTag::Fns => "kFNS",
            ClassTag::Ce => "klCE",
        }
    }

    pub fn from_tag(s: &str) -> Option<ClassTag> {
        ClassTag::ALL.into_iter().find(|c| c.tag() == s)
    }

    /// Whether `k` is meaningful for the class.
    pub fn parameterized(self) -> bool {
        !matches!(self, ClassTag::Lb | ClassTag::Se)
    }
}

/// An obstruction graph `H` with its pre-drawn intervals and named roles.
/// Vertex ids are local to `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Obstruction {
    pub class: ClassTag,
    pub k: usize,
    pub l: Option<usize>,
    pub graph: Graph,
    pub roles: Vec<(String, Vertex)>,
    pub paths: Vec<(String, Vec<Vertex>)>,
    pub predrawn_rep: PartialRepresentation,
    /// The template matches the mirror image of `predrawn_rep`.
    pub flipped: bool,
}

impl Obstruction {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        class: ClassTag,
        k: usize,
        l: Option<usize>,
        graph: Graph,
        roles: Vec<(String, Vertex)>,
        paths: Vec<(String, Vec<Vertex>)>,
        predrawn_rep: PartialRepresentation,
        flipped: bool,
    ) -> Obstruction {
        Obstruction { class, k, l, graph, roles, paths, predrawn_rep, flipped }
    }

    pub fn role(&self, name: &str) -> Option<Vertex> {
        self.roles.iter().find(|(r, _)| r == name).map(|&(_, v)| v)
    }

    pub fn path(&self, name: &str) -> Option<&[Vertex]> {
        self.paths.iter().find(|(p, _)| p == name).map(|(_, p)| p.as_slice())
    }

    /// Vertices named by a role or lying on a path.
    pub fn named_vertices(&self) -> Vec<Vertex> {
        let s: BTreeSet<Vertex> = self.roles.iter().map(|&(_, v)| v).chain(self.paths.iter().flat_map(|(_, p)| p.iter().copied())).collect();
        s.into_iter().collect()
    }

    /// Display name like `2-FAT` or `(2,1)-CE`.
    pub fn label(&self) -> String {
        match self.class {
            ClassTag::Lb | ClassTag::Se => self.class.tag().to_string(),
            ClassTag::Ce => format!("({},{})-CE", self.k, self.l.unwrap_or(0)),
            c => format!("{}-{}", self.k, &c.tag()[1..]),
        }
    }

    /// The same obstruction on the mirrored representation.
    pub fn mirrored(&self) -> Obstruction {
        let mut o = self.clone();
        if self.class != ClassTag::Lb {
            o.predrawn_rep = rank_compress(&self.predrawn_rep.flip());
            // A symmetric configuration reads the same both ways.
            if o.predrawn_rep != rank_compress(&self.predrawn_rep) {
                o.flipped = !self.flipped;
            }
        }
        o
    }

    fn lb_witness(&self) -> std::result::Result<LbObstruction, String> {
        if let Some(c) = self.path("C") {
            return Ok(LbObstruction { kind: LbKind::Hole, vertices: c.to_vec(), paths: Vec::new() });
        }
        let r = |n: &str| self.role(n).ok_or_else(|| format!("asteroidal witness lacks role {n}"));
        let (x, y, z) = (r("x")?, r("y")?, r("z")?);
        let mut vertices = vec![x, y, z];
        vertices.extend((0..self.graph.n()).filter(|v| ![x, y, z].contains(v)));
        let p = |n: &str| self.path(n).map(<[Vertex]>::to_vec).ok_or_else(|| format!("asteroidal witness lacks path {n}"));
        Ok(LbObstruction { kind: LbKind::AsteroidalTriple, vertices, paths: vec![p("Pxy")?, p("Pyz")?, p("Pxz")?] })
    }
}

/// Checks that a non-interval witness covers all of `H` and has the right
/// shape.
pub(crate) fn verify_lb_obstruction(o: &Obstruction) -> std::result::Result<(), String> {
    let lb = o.lb_witness()?;
    if o.named_vertices().len() != o.graph.n() {
        return Err("witness does not cover the obstruction graph".into());
    }
    verify_lb(&o.graph, &lb)
}

/// The answer of the solver together with the evidence for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Extending(Realization),
    /// `embedding[i]` is the vertex of the input graph playing vertex `i`
    /// of the obstruction graph.
    Obstructed { obstruction: Obstruction, embedding: Vec<Vertex> },
}

/// Rewrites endpoints to their ranks among all endpoints, keeping every
/// comparison, ties included.
pub fn rank_compress(rep: &PartialRepresentation) -> PartialRepresentation {
    let values: BTreeSet<&Rational> = rep.predrawn().flat_map(|(_, iv)| [&iv.l, &iv.r]).collect();
    let values: Vec<&Rational> = values.into_iter().collect();
    let rank = |q: &Rational| int(values.binary_search(&q).unwrap() as i64);
    PartialRepresentation::from_pairs(rep.len(), rep.predrawn().map(|(v, iv)| (v, Interval::new(rank(&iv.l), rank(&iv.r)))))
}

impl Certificate {
    /// Wraps a non-interval witness of `g`.
    pub fn from_lb(g: &Graph, lb: &LbObstruction) -> Result<Certificate> {
        let mut embedding = lb.vertices.clone();
        embedding.sort_unstable();
        let h = g.induced_subgraph(&embedding)?;
        let local = |v: Vertex| embedding.binary_search(&v).unwrap();
        let (roles, paths) = match lb.kind {
            LbKind::Hole => (Vec::new(), vec![("C".to_string(), lb.vertices.iter().map(|&v| local(v)).collect())]),
            LbKind::AsteroidalTriple => {
                let t = lb.triple().unwrap();
                let roles = ["x", "y", "z"].iter().zip(t).map(|(n, v)| (n.to_string(), local(v))).collect();
                let paths = ["Pxy", "Pyz", "Pxz"]
                    .iter()
                    .zip(&lb.paths)
                    .map(|(n, p)| (n.to_string(), p.iter().map(|&v| local(v)).collect()))
                    .collect();
                (roles, paths)
            }
        };
        let n = h.n();
        let obstruction = Obstruction::new(ClassTag::Lb, 0, None, h, roles, paths, PartialRepresentation::empty(n), false);
        Ok(Certificate::Obstructed { obstruction, embedding })
    }

    /// Classifies the sub-instance on `subset` under `rep` (which may have
    /// freed some vertices).
    pub fn classify_subset(g: &Graph, rep: &PartialRepresentation, subset: &[Vertex]) -> Result<Option<Certificate>> {
        let mut embedding = subset.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        let h = g.induced_subgraph(&embedding)?;
        let hrep = rank_compress(&rep.restrict(&embedding));
        Ok(classify(&h, &hrep).map(|obstruction| Certificate::Obstructed { obstruction, embedding }))
    }

    /// The certificate for the mirrored instance.
    pub fn mirrored(&self) -> Certificate {
        match self {
            Certificate::Extending(r) => Certificate::Extending(r.mirrored()),
            Certificate::Obstructed { obstruction, embedding } => {
                Certificate::Obstructed { obstruction: obstruction.mirrored(), embedding: embedding.clone() }
            }
        }
    }

    pub fn result_word(&self) -> &'static str {
        match self {
            Certificate::Extending(_) => "extendible",
            Certificate::Obstructed { obstruction, .. } if obstruction.class == ClassTag::Lb => "not-interval",
            Certificate::Obstructed { .. } => "non-extendible",
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            Certificate::Obstructed { obstruction, .. } => Some(obstruction),
            Certificate::Extending(_) => None,
        }
    }

    /// Text form, naming vertices of `g`.
    pub fn to_text(&self, g: &Graph) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "RESULT {}", self.result_word());
        match self {
            Certificate::Extending(r) => {
                for (v, iv) in r.intervals.iter().enumerate() {
                    let _ = writeln!(s, "INTERVAL {} {} {}", g.name(v), fmt_rational(&iv.l), fmt_rational(&iv.r));
                }
            }
            Certificate::Obstructed { obstruction: o, embedding } => {
                let _ = write!(s, "OBSTRUCTION {} k={}", o.class.tag(), o.k);
                if let Some(l) = o.l {
                    let _ = write!(s, " l={l}");
                }
                let _ = writeln!(s, " flipped={}", u8::from(o.flipped));
                for (name, v) in &o.roles {
                    let _ = write!(s, "ROLE {name} {}", g.name(embedding[*v]));
                    if let Some(iv) = o.predrawn_rep.get(*v) {
                        let _ = write!(s, " predrawn {} {}", fmt_rational(&iv.l), fmt_rational(&iv.r));
                    }
                    s.push('\n');
                }
                for (name, p) in &o.paths {
                    let _ = write!(s, "PATH {name}");
                    for &v in p {
                        let _ = write!(s, " {}", g.name(embedding[v]));
                    }
                    s.push('\n');
                }
            }
        }
        s
    }

    /// Parses the text form against `g`. The obstruction graph is the
    /// subgraph of `g` induced by the named vertices.
    pub fn parse(text: &str, g: &Graph) -> Result<Certificate> {
        let index = g.name_index();
        let lookup = |line: usize, name: &str| -> Result<Vertex> {
            index.get(name).copied().ok_or_else(|| Error::Format { line, msg: format!("unknown vertex {name}") })
        };
        let num = |line: usize, s: &str| -> Result<Rational> {
            parse_rational(s).ok_or_else(|| Error::Format { line, msg: format!("bad number {s}") })
        };
        let mut result: Option<String> = None;
        let mut intervals: Vec<Option<Interval>> = vec![None; g.n()];
        let mut header: Option<(ClassTag, usize, Option<usize>, bool)> = None;
        let mut roles: Vec<(String, Vertex, Option<Interval>)> = Vec::new();
        let mut paths: Vec<(String, Vec<Vertex>)> = Vec::new();
        for (line, l) in content_lines(text) {
            let tok: Vec<&str> = l.split_whitespace().collect();
            let bad = |msg: &str| Error::Format { line, msg: msg.to_string() };
            match tok[0] {
                "RESULT" if tok.len() == 2 => result = Some(tok[1].to_string()),
                "INTERVAL" if tok.len() == 4 => {
                    let v = lookup(line, tok[1])?;
                    let (lo, hi) = (num(line, tok[2])?, num(line, tok[3])?);
                    if lo > hi {
                        return Err(bad("left endpoint exceeds right"));
                    }
                    intervals[v] = Some(Interval::new(lo, hi));
                }
                "OBSTRUCTION" if tok.len() >= 4 => {
                    let class = ClassTag::from_tag(tok[1]).ok_or_else(|| bad("unknown class"))?;
                    let mut k = None;
                    let mut lv = None;
                    let mut flipped = None;
                    for t in &tok[2..] {
                        let (key, val) = t.split_once('=').ok_or_else(|| bad("expected key=value"))?;
                        let val: usize = val.parse().map_err(|_| bad("expected a number"))?;
                        match key {
                            "k" => k = Some(val),
                            "l" => lv = Some(val),
                            "flipped" if val <= 1 => flipped = Some(val == 1),
                            _ => return Err(bad("unknown obstruction field")),
                        }
                    }
                    header = Some((class, k.ok_or_else(|| bad("missing k"))?, lv, flipped.ok_or_else(|| bad("missing flipped"))?));
                }
                "ROLE" if tok.len() == 3 || tok.len() == 6 => {
                    let v = lookup(line, tok[2])?;
                    let iv = if tok.len() == 6 {
                        if tok[3] != "predrawn" {
                            return Err(bad("expected `predrawn l r`"));
                        }
                        let (lo, hi) = (num(line, tok[4])?, num(line, tok[5])?);
                        if lo > hi {
                            return Err(bad("left endpoint exceeds right"));
                        }
                        Some(Interval::new(lo, hi))
                    } else {
                        None
                    };
                    roles.push((tok[1].to_string(), v, iv));
                }
                "PATH" if tok.len() >= 2 => {
                    let p = tok[2..].iter().map(|t| lookup(line, t)).collect::<Result<Vec<_>>>()?;
                    paths.push((tok[1].to_string(), p));
                }
                _ => return Err(bad("unrecognized certificate line")),
            }
        }
        let result = result.ok_or_else(|| Error::Format { line: 0, msg: "missing RESULT line".into() })?;
        match result.as_str() {
            "extendible" => {
                let intervals = intervals
                    .into_iter()
                    .enumerate()
                    .map(|(v, iv)| iv.ok_or_else(|| Error::Format { line: 0, msg: format!("no interval for {}", g.name(v)) }))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Certificate::Extending(Realization { clique_points: Vec::new(), intervals }))
            }
            "non-extendible" | "not-interval" => {
                let (class, k, l, flipped) = header.ok_or_else(|| Error::Format { line: 0, msg: "missing OBSTRUCTION line".into() })?;
                if (class == ClassTag::Lb) != (result == "not-interval") {
                    return Err(Error::Format { line: 0, msg: "result and class disagree".into() });
                }
                let set: BTreeSet<Vertex> = roles.iter().map(|r| r.1).chain(paths.iter().flat_map(|p| p.1.iter().copied())).collect();
                let embedding: Vec<Vertex> = set.into_iter().collect();
                let local = |v: Vertex| embedding.binary_search(&v).unwrap();
                let h = g.induced_subgraph(&embedding)?;
                let mut rep = PartialRepresentation::empty(h.n());
                let mut named = Vec::new();
                for (name, v, iv) in roles {
                    if let Some(iv) = iv {
                        if rep.get(local(v)).is_some_and(|old| old != &iv) {
                            return Err(Error::Format { line: 0, msg: format!("conflicting intervals for {}", g.name(v)) });
                        }
                        rep.set(local(v), iv);
                    }
                    named.push((name, local(v)));
                }
                let paths = paths.into_iter().map(|(n, p)| (n, p.into_iter().map(local).collect())).collect();
                let obstruction = Obstruction::new(class, k, l, h, named, paths, rep, flipped);
                Ok(Certificate::Obstructed { obstruction, embedding })
            }
            other => Err(Error::Format { line: 0, msg: format!("unknown result {other}") }),
        }
    }
}

/// Checks that `o` sits inside `(g, rep)`: the embedding is induced,
/// pre-drawn vertices of `H` are pre-drawn in `g`, and their endpoints
/// compare in `H` exactly as their images do in `rep`.
pub fn verify_containment(g: &Graph, rep: &PartialRepresentation, o: &Obstruction, embedding: &[Vertex]) -> std::result::Result<(), String> {
    let h = &o.graph;
    if embedding.len() != h.n() || o.predrawn_rep.len() != h.n() {
        return Err("embedding does not cover the obstruction graph".into());
    }
    if embedding.iter().any(|&v| v >= g.n()) {
        return Err("embedding names an unknown vertex".into());
    }
    let distinct: BTreeSet<Vertex> = embedding.iter().copied().collect();
    if distinct.len() != embedding.len() {
        return Err("embedding is not injective".into());
    }
    for a in 0..h.n() {
        for b in a + 1..h.n() {
            if h.adjacent(a, b) != g.adjacent(embedding[a], embedding[b]) {
                return Err(format!("{} and {} break the induced embedding", g.name(embedding[a]), g.name(embedding[b])));
            }
        }
    }
    let mut ends: Vec<(&Rational, &Rational)> = Vec::new();
    for (v, iv) in o.predrawn_rep.predrawn() {
        let img = rep.get(embedding[v]).ok_or_else(|| format!("{} is pre-drawn in the obstruction only", g.name(embedding[v])))?;
        ends.push((&iv.l, &img.l));
        ends.push((&iv.r, &img.r));
    }
    for (i, a) in ends.iter().enumerate() {
        for b in &ends[i + 1..] {
            if a.0.cmp(b.0) != a.1.cmp(b.1) {
                return Err("endpoint order differs from the input".into());
            }
        }
    }
    Ok(())
}

/// Full check of a certificate against `(g, rep)`. Extending certificates
/// are checked pair by pair; obstructions by containment and template.
/// Non-extendibility of an obstruction is not re-derived here.
pub fn verify_certificate(g: &Graph, rep: &PartialRepresentation, cert: &Certificate) -> std::result::Result<(), String> {
    match cert {
        Certificate::Extending(r) => crate::oracle::verify_representation(g, rep, &r.intervals),
        Certificate::Obstructed { obstruction, embedding } => {
            verify_containment(g, rep, obstruction, embedding)?;
            verify_template(obstruction)
        }
    }
}
