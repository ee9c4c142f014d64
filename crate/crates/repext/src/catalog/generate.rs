//! Instances of every obstruction class.
//!
//! The graph comes from an interval layout of `H_k` built level by level:
//! level one is `y_1`, then the path `z_1 .. x_1`; each further level
//! mirrors the picture so that `x_{j}` is leftmost, lays `t_{j+1}` over
//! everything but `x_j`, and hangs `P_{j+1}` off its right end. Added
//! vertices get layout intervals spanning their required neighbors among
//! `x, y, z`. The pre-drawn intervals then follow the class's endpoint
//! chain, which the layout contradicts.

use super::template::{fit, Slot};
use super::{ClassTag, Obstruction};
use crate::error::{invalid, Result};
use crate::graph::{Graph, Vertex};
use crate::partrep::{Interval, PartialRepresentation};

/// What to generate. `path_lengths[i]` is the number of edges of
/// `P_{i+1}`; missing entries take the shortest legal length.
///
/// `variant` selects among shapes sharing a class and `k`:
/// SE: 0 point, 1 two intervals.
/// 1-BI: 0 `x=z, u=v`; 1 `x=z, u!=v`; 2 `xz` an edge, `u=v`; 3 `xz` an
/// edge, `u!=v`; 4 longer path, `u=v`; 5 longer path, `u!=v`.
/// 2-BI: 0 `u=v`; 1 `u!=v`.
/// CE: for `l = 1` and `k >= 3`, 0 means `u` sees all of `H_k` and 1 means
/// `u = t_k`; for the smaller forms the index into [`ce_forms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub class: ClassTag,
    pub k: usize,
    pub l: usize,
    pub path_lengths: Vec<usize>,
    pub variant: usize,
}

impl GenSpec {
    pub fn new(class: ClassTag, k: usize) -> GenSpec {
        GenSpec { class, k, l: 1, path_lengths: Vec::new(), variant: 0 }
    }

    pub fn variant(mut self, v: usize) -> GenSpec {
        self.variant = v;
        self
    }

    pub fn l(mut self, l: usize) -> GenSpec {
        self.l = l;
        self
    }

    pub fn paths(mut self, lens: &[usize]) -> GenSpec {
        self.path_lengths = lens.to_vec();
        self
    }
}

/// Interval layout under construction.
struct Layout {
    iv: Vec<(i64, i64)>,
    names: Vec<String>,
    x: Vertex,
    y: Vertex,
    z: Vertex,
}

impl Layout {
    fn add(&mut self, name: String, l: i64, r: i64) -> Vertex {
        self.iv.push((l, r));
        self.names.push(name);
        self.iv.len() - 1
    }

    fn mirror(&mut self) {
        for iv in &mut self.iv {
            *iv = (-iv.1, -iv.0);
        }
    }

    fn hi(&self) -> i64 {
        self.iv.iter().map(|iv| iv.1).max().unwrap()
    }

    fn lo(&self) -> i64 {
        self.iv.iter().map(|iv| iv.0).min().unwrap()
    }

    fn graph(&self) -> Result<Graph> {
        let n = self.iv.len();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let (p, q) = (self.iv[a], self.iv[b]);
                if p.0 <= q.1 && q.0 <= p.1 {
                    edges.push((a, b));
                }
            }
        }
        Graph::with_names(self.names.clone(), &edges)
    }
}

/// Layout of `H_k` with `x_k` rightmost, `y_k` left of `z_k`.
fn fat_layout(k: usize, lens: &[usize]) -> Layout {
    let len = |i: usize, default: usize| lens.get(i).copied().unwrap_or(default);
    let mut lay = Layout { iv: Vec::new(), names: Vec::new(), x: 0, y: 0, z: 0 };
    lay.y = lay.add("y1".into(), 0, 1);
    let l1 = len(0, if k == 1 { 2 } else { 1 });
    lay.z = lay.add("z1".into(), 3, 7);
    let mut last = lay.z;
    for i in 1..=l1 {
        let name = if i == l1 { "x1".to_string() } else { format!("p1.{i}") };
        last = lay.add(name, 3 + 3 * i as i64, 7 + 3 * i as i64);
    }
    lay.x = last;
    for j in 2..=k {
        lay.mirror();
        let b = lay.iv[lay.x].1;
        let hi = lay.hi();
        let t = lay.add(format!("t{j}"), b + 1, hi + 2);
        let lj = len(j - 1, 1).max(1);
        let mut last = t;
        for i in 1..=lj {
            let name = if i == lj { format!("x{j}") } else { format!("p{j}.{i}") };
            last = lay.add(name, hi + 3 * i as i64 - 2, hi + 3 * i as i64 + 2);
        }
        let (y, z) = (lay.z, lay.y);
        lay.x = last;
        lay.y = y;
        lay.z = z;
    }
    lay
}

/// Pre-drawn intervals of a class instance, by slot.
fn chain(class: ClassTag, k: usize, variant: usize) -> Option<Vec<(Slot, (i64, i64))>> {
    use Slot::*;
    Some(match (class, k, variant) {
        (ClassTag::Fat, _, _) => vec![(X, (0, 1)), (Y, (2, 3)), (Z, (4, 5))],
        (ClassTag::Bi, 1, 0) => vec![(X, (1, 7)), (Z, (1, 7)), (U, (2, 6))],
        (ClassTag::Bi, 1, 1) => vec![(X, (2, 6)), (Z, (2, 6)), (U, (1, 5)), (V, (3, 7))],
        (ClassTag::Bi, 1, 2) => vec![(X, (0, 4)), (Z, (3, 8)), (U, (2, 6))],
        (ClassTag::Bi, 1, 3) => vec![(X, (1, 4)), (Z, (4, 7)), (U, (0, 5)), (V, (3, 8))],
        (ClassTag::Bi, 1, 4) => vec![(X, (0, 2)), (Z, (6, 8)), (U, (2, 6))],
        (ClassTag::Bi, 1, 5) => vec![(X, (1, 3)), (Z, (5, 7)), (U, (0, 5)), (V, (3, 8))],
        (ClassTag::Bi, 2, 0) => vec![(X, (0, 2)), (Z, (4, 6)), (U, (1, 5))],
        (ClassTag::Bi, 2, 1) => vec![(X, (1, 3)), (Z, (5, 7)), (U, (0, 6)), (V, (2, 9))],
        (ClassTag::Fs, _, _) => vec![(X, (0, 1)), (Y, (2, 4)), (U, (3, 6))],
        (ClassTag::Efs, _, _) => vec![(Y, (2, 3)), (Z, (4, 5)), (U, (0, 8)), (V, (1, 9))],
        (ClassTag::Fb, _, _) => vec![(X, (0, 1)), (Z, (4, 6)), (U, (2, 5))],
        (ClassTag::Efb, _, _) => vec![(X, (1, 2)), (Z, (4, 7)), (U, (0, 6)), (V, (3, 9))],
        (ClassTag::Fds, _, _) => vec![(Y, (1, 3)), (U, (0, 5)), (V, (2, 6))],
        (ClassTag::Efds, _, _) => vec![(Y, (2, 4)), (U, (0, 8)), (V, (1, 9)), (W, (3, 6))],
        (ClassTag::Fns, _, _) => vec![(Z, (3, 5)), (U, (0, 6)), (V, (1, 8)), (W, (2, 4))],
        (ClassTag::Ce, _, _) => vec![(Z, (2, 5)), (U, (0, 3))],
        _ => return None,
    })
}

/// Neighbors among `x, y, z` of each added vertex.
fn added(class: ClassTag) -> &'static [(Slot, &'static [Slot])] {
    use Slot::*;
    match class {
        ClassTag::Bi => &[(U, &[X, Y, Z]), (V, &[X, Y, Z])],
        ClassTag::Fs | ClassTag::Fb => &[(U, &[Y, Z])],
        ClassTag::Efs | ClassTag::Efb | ClassTag::Fds => &[(U, &[X, Y, Z]), (V, &[Y, Z])],
        ClassTag::Efds | ClassTag::Fns => &[(U, &[X, Y, Z]), (V, &[Y, Z]), (W, &[Y, Z])],
        ClassTag::Ce => &[(U, &[X, Y, Z])],
        _ => &[],
    }
}

/// Builds an instance of the requested class with its obstruction record.
pub fn generate(spec: &GenSpec) -> Result<(Graph, PartialRepresentation, Obstruction)> {
    let k = spec.k;
    match spec.class {
        ClassTag::Lb => return invalid("LB obstructions are not generated"),
        ClassTag::Se => return generate_se(spec.variant),
        ClassTag::Ce if k < 3 || spec.l != 1 => return super::forms::ce_form(k, spec.l, spec.variant),
        ClassTag::Bi if !(1..=2).contains(&k) => return invalid("BI needs k of 1 or 2"),
        _ if k == 0 => return invalid("k must be positive"),
        _ => {}
    }
    let ch = chain(spec.class, k, spec.variant).ok_or_else(|| crate::Error::InvalidInput(format!("no variant {} of {}", spec.variant, spec.class.tag())))?;
    let mut lens = spec.path_lengths.clone();
    if spec.class == ClassTag::Bi && k == 1 {
        let l1 = match spec.variant {
            0 | 1 => 0,
            2 | 3 => 1,
            _ => lens.first().copied().unwrap_or(2).max(2),
        };
        lens = vec![l1];
    } else if spec.class == ClassTag::Bi {
        lens.resize(1, 1);
        lens.push(1);
    }
    let mut lay = fat_layout(k, &lens);
    let (x, y, z) = (lay.x, lay.y, lay.z);
    let star = |v: Vertex, lay: &Layout| lay.iv[v];
    let mut slots: Vec<(Slot, Vertex)> = vec![(Slot::X, x), (Slot::Y, y), (Slot::Z, z)];
    let u_is_v = !ch.iter().any(|(s, _)| *s == Slot::V) && matches!(spec.class, ClassTag::Bi);
    for &(s, nb) in added(spec.class) {
        if s == Slot::V && u_is_v {
            continue;
        }
        if spec.class == ClassTag::Bi && k == 2 && s == Slot::U {
            // u is t2; a separate u would squeeze y2 together with x1.
            slots.push((s, lay.names.iter().position(|n| n == "t2").unwrap()));
            continue;
        }
        let (ly, lx) = (star(y, &lay).0, star(x, &lay).0);
        let iv = if spec.class == ClassTag::Ce && k >= 3 {
            if spec.variant == 1 {
                // u is t_k itself.
                slots.push((s, lay.names.iter().position(|n| *n == format!("t{k}")).unwrap()));
                continue;
            }
            (lay.lo(), lay.hi())
        } else if nb.contains(&Slot::X) {
            (ly, lx)
        } else {
            (ly, star(z, &lay).1.min(lx - 1))
        };
        let name = match s {
            Slot::U => "u",
            Slot::V => "v",
            _ => "w",
        };
        let id = lay.add(name.into(), iv.0, iv.1);
        slots.push((s, id));
    }
    if u_is_v {
        let u = slots.iter().find(|(s, _)| *s == Slot::U).unwrap().1;
        slots.push((Slot::V, u));
    }
    let mut g = lay.graph()?;
    if spec.class == ClassTag::Bi && k == 2 && !u_is_v {
        // The layout lays v over x1; the minimal form keeps them apart.
        let x1 = lay.names.iter().position(|n| n == "x1").unwrap();
        let v = slots.iter().find(|(s, _)| *s == Slot::V).unwrap().1;
        let edges: Vec<_> = g.edges().filter(|&e| e != (x1.min(v), x1.max(v))).collect();
        g = Graph::with_names(g.names().to_vec(), &edges)?;
    }
    let slot_of = |s: Slot| slots.iter().find(|(t, _)| *t == s).map(|&(_, v)| v);
    let mut rep = PartialRepresentation::empty(g.n());
    for &(s, (l, r)) in &ch {
        rep.set(slot_of(s).unwrap(), Interval::ints(l, r));
    }
    rep.check_consistent(&g)?;
    let o = fit(&g, &rep, spec.class, &slots)
        .ok_or_else(|| crate::Error::Internal(format!("generated {} does not fit its template", spec.class.tag())))?;
    named_by_roles(g, rep, o)
}

/// Renames the vertices after their roles, inner path vertices after their
/// path (`P1.1`, `P1.2`, ...), and anything else `w<id>`.
pub(crate) fn named_by_roles(g: Graph, rep: PartialRepresentation, mut o: Obstruction) -> Result<(Graph, PartialRepresentation, Obstruction)> {
    let mut names: Vec<Option<String>> = vec![None; g.n()];
    for (name, v) in &o.roles {
        names[*v].get_or_insert_with(|| name.clone());
    }
    for (name, p) in &o.paths {
        for (i, &v) in p.iter().enumerate() {
            names[v].get_or_insert_with(|| format!("{name}.{i}"));
        }
    }
    let names: Vec<String> = names.into_iter().enumerate().map(|(v, n)| n.unwrap_or_else(|| format!("w{v}"))).collect();
    let edges: Vec<_> = g.edges().collect();
    let g = Graph::with_names(names, &edges)?;
    o.graph = g.clone();
    Ok((g, rep, o))
}

fn generate_se(variant: usize) -> Result<(Graph, PartialRepresentation, Obstruction)> {
    use Slot::*;
    let (g, pre, slots) = match variant {
        0 => (
            Graph::with_names(vec!["x".into(), "y".into(), "u".into()], &[(0, 2), (1, 2)])?,
            vec![(2, Interval::ints(0, 0))],
            vec![(X, 0), (Y, 1), (U, 2), (V, 2)],
        ),
        1 => (
            Graph::with_names(vec!["x".into(), "y".into(), "u".into(), "v".into()], &[(0, 2), (1, 2), (0, 3), (1, 3), (2, 3)])?,
            vec![(2, Interval::ints(0, 1)), (3, Interval::ints(1, 2))],
            vec![(X, 0), (Y, 1), (U, 2), (V, 3)],
        ),
        _ => return invalid("SE has variants 0 and 1"),
    };
    let rep = PartialRepresentation::from_pairs(g.n(), pre);
    let o = fit(&g, &rep, ClassTag::Se, &slots).ok_or_else(|| crate::Error::Internal("SE does not fit its template".into()))?;
    Ok((g, rep, o))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fat_layout_shape() {
        let lay = fat_layout(2, &[1, 1]);
        let g = lay.graph().unwrap();
        // y1, z1, x1, t2, x2.
        assert_eq!(g.n(), 5);
        let t2 = 3;
        assert!(!g.adjacent(t2, lay.names.iter().position(|n| n == "x1").unwrap()));
        assert!(g.adjacent(t2, lay.y) && g.adjacent(t2, lay.z) && g.adjacent(t2, lay.x));
    }
}
