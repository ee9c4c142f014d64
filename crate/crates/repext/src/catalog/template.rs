//! Structural templates of the obstruction classes.
//!
//! A k-FAT graph is recognized by peeling: the component of `x` away from
//! `N[y]` must be a path hanging off a single vertex `t`, which sees all
//! of the rest but one vertex `x'`; the rest is a (k-1)-FAT on
//! `(x', z, y)`. The derived classes add pre-drawn vertices `u, v, w` with
//! fixed adjacencies to `x, y, z` and an endpoint chain.

use std::collections::BTreeMap;

use super::{ClassTag, Obstruction};
use crate::graph::{Graph, Vertex};
use crate::partrep::{Interval, PartialRepresentation};

/// A peeled k-FAT: `x[i]` is `x_{i+1}`, `t[i]` is `t_{i+2}`, `paths[0]`
/// runs `x_1 .. z_1` and `paths[i]` runs `x_{i+1} .. t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fat {
    pub x: Vec<Vertex>,
    pub t: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
    pub y: Vertex,
    pub z: Vertex,
}

impl Fat {
    pub fn k(&self) -> usize {
        self.x.len()
    }

    pub fn top_x(&self) -> Vertex {
        *self.x.last().unwrap()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let mut v: Vec<Vertex> = self.paths.concat();
        v.push(self.y);
        v.push(self.z);
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `t_k` for k > 1.
    pub fn top_t(&self) -> Option<Vertex> {
        self.t.last().copied()
    }
}

/// If `members` induces a path with `a` at one end, its vertices from `a`.
fn induced_path_from(h: &Graph, inside: &[bool], members: &[Vertex], a: Vertex) -> Option<Vec<Vertex>> {
    let deg = |v: Vertex| h.neighbors(v).iter().filter(|&&w| inside[w]).count();
    if members.len() == 1 {
        return (members[0] == a).then(|| vec![a]);
    }
    if deg(a) != 1 {
        return None;
    }
    let mut path = vec![a];
    let mut prev = usize::MAX;
    let mut cur = a;
    loop {
        let next: Vec<Vertex> = h.neighbors(cur).iter().copied().filter(|&w| inside[w] && w != prev).collect();
        match next.len() {
            0 => break,
            1 => {
                prev = cur;
                cur = next[0];
                if path.contains(&cur) {
                    return None;
                }
                path.push(cur);
            }
            _ => return None,
        }
    }
    (path.len() == members.len() && path.iter().all(|&v| deg(v) <= 2)).then_some(path)
}

/// Peels `set` as a k-FAT on `(x, y, z)`. `allow_equal` admits `x_1 = z_1`
/// when nothing is peeled.
pub fn peel(h: &Graph, set: &[Vertex], x: Vertex, y: Vertex, z: Vertex, allow_equal: bool) -> Option<Fat> {
    let n = h.n();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    if !inside[x] || !inside[y] || !inside[z] || y == x || y == z {
        return None;
    }
    let mut count = set.iter().filter(|&&v| v < n).count();
    let (mut x, mut y, mut z) = (x, y, z);
    let mut layers: Vec<(Vertex, Vertex, Vec<Vertex>)> = Vec::new();
    loop {
        let y_sees = h.neighbors(y).iter().any(|&w| inside[w]);
        if !y_sees {
            // Base: the rest is an induced x..z path.
            if x == z && (!allow_equal || !layers.is_empty()) {
                return None;
            }
            inside[y] = false;
            let members: Vec<Vertex> = (0..n).filter(|&v| inside[v]).collect();
            inside[y] = true;
            let mut path = induced_path_from(h, &{
                let mut m = inside.clone();
                m[y] = false;
                m
            }, &members, x)?;
            if *path.last().unwrap() != z {
                return None;
            }
            let mut xs: Vec<Vertex> = vec![x];
            let mut ts = Vec::new();
            let mut paths = vec![std::mem::take(&mut path)];
            for (lx, lt, lp) in layers.into_iter().rev() {
                xs.push(lx);
                ts.push(lt);
                paths.push(lp);
            }
            // The top layer's y and z are the ones we started with.
            let (top_y, top_z) = if xs.len() % 2 == 1 { (y, z) } else { (z, y) };
            return Some(Fat { x: xs, t: ts, paths, y: top_y, z: top_z });
        }
        if x == z || h.adjacent(x, y) {
            return None;
        }
        // A: the component of x away from N[y].
        let blocked = |v: Vertex| !inside[v] || v == y || h.adjacent(v, y);
        let a = h.component_within(x, |v| !blocked(v));
        if a.contains(&z) {
            return None;
        }
        let mut in_a = vec![false; n];
        for &v in &a {
            in_a[v] = true;
        }
        let a_path = induced_path_from(h, &in_a, &a, x)?;
        let mut touch: Vec<Vertex> = a.iter().flat_map(|&v| h.neighbors(v).iter().copied()).filter(|&w| inside[w] && !in_a[w]).collect();
        touch.sort_unstable();
        touch.dedup();
        if touch.len() != 1 {
            return None;
        }
        let t = touch[0];
        let end = *a_path.last().unwrap();
        if h.neighbors(t).iter().filter(|&&w| in_a[w]).ne([end].iter()) {
            return None;
        }
        for &v in &a {
            inside[v] = false;
        }
        inside[t] = false;
        count -= a.len() + 1;
        let missed: Vec<Vertex> = (0..n).filter(|&v| inside[v] && !h.adjacent(t, v)).collect();
        if missed.len() != 1 || missed[0] == y || missed[0] == z || count < 3 {
            return None;
        }
        let mut p = a_path;
        p.push(t);
        layers.push((x, t, p));
        let nx = missed[0];
        x = nx;
        std::mem::swap(&mut y, &mut z);
    }
}

/// Role slots of the derived classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    X,
    Y,
    Z,
    U,
    V,
    W,
}

struct ClassShape {
    tag: ClassTag,
    /// Pre-drawn slots.
    pre: &'static [Slot],
    /// Added vertices and the slots among `x, y, z` they are adjacent to.
    added: &'static [(Slot, &'static [Slot])],
}

use Slot::*;

const SHAPES: &[ClassShape] = &[
    ClassShape { tag: ClassTag::Fat, pre: &[X, Y, Z], added: &[] },
    ClassShape { tag: ClassTag::Bi, pre: &[X, Z, U, V], added: &[(U, &[X, Y, Z]), (V, &[X, Y, Z])] },
    ClassShape { tag: ClassTag::Fs, pre: &[X, Y, U], added: &[(U, &[Y, Z])] },
    ClassShape { tag: ClassTag::Efs, pre: &[Y, Z, U, V], added: &[(U, &[X, Y, Z]), (V, &[Y, Z])] },
    ClassShape { tag: ClassTag::Fb, pre: &[X, Z, U], added: &[(U, &[Y, Z])] },
    ClassShape { tag: ClassTag::Efb, pre: &[X, Z, U, V], added: &[(U, &[X, Y, Z]), (V, &[Y, Z])] },
    ClassShape { tag: ClassTag::Fds, pre: &[Y, U, V], added: &[(U, &[X, Y, Z]), (V, &[Y, Z])] },
    ClassShape { tag: ClassTag::Efds, pre: &[Y, U, V, W], added: &[(U, &[X, Y, Z]), (V, &[Y, Z]), (W, &[Y, Z])] },
    ClassShape { tag: ClassTag::Fns, pre: &[Z, U, V, W], added: &[(U, &[X, Y, Z]), (V, &[Y, Z]), (W, &[Y, Z])] },
    ClassShape { tag: ClassTag::Ce, pre: &[Z, U], added: &[(U, &[X, Y, Z])] },
];

fn shape(tag: ClassTag) -> Option<&'static ClassShape> {
    SHAPES.iter().find(|s| s.tag == tag)
}

type Ends = BTreeMap<Slot, Interval>;

/// Endpoint chain of a class, given the intervals of its pre-drawn slots.
fn chain_holds(tag: ClassTag, k: usize, e: &Ends, u_is_v: bool) -> bool {
    let l = |s: Slot| &e[&s].l;
    let r = |s: Slot| &e[&s].r;
    let covers = |s: Slot, p: &crate::rational::Rational| e[&s].contains(p);
    match tag {
        ClassTag::Fat => r(X) < l(Y) && r(Y) < l(Z),
        ClassTag::Bi => match (k, u_is_v) {
            (1, _) => l(U) <= l(V) && l(V) < r(U) && r(U) <= r(V) && covers(X, l(V)) && covers(Z, r(U)),
            (2, true) => l(X) <= l(U) && l(U) <= r(X) && r(X) < l(Z) && l(Z) <= r(U) && r(U) <= r(Z),
            (2, false) => {
                l(U) < l(X) && l(X) <= l(V) && l(V) <= r(X) && r(X) < l(Z) && l(Z) <= r(U) && r(U) <= r(Z) && r(Z) < r(V)
            }
            _ => false,
        },
        ClassTag::Fs => l(Y) <= l(U) && l(U) <= r(Y) && r(Y) < r(U) && r(X) < l(Y),
        ClassTag::Efs => l(U) < l(V) && l(V) < l(Y) && r(Y) < l(Z) && r(Z) < r(U) && r(U) <= r(V),
        ClassTag::Fb => l(U) < l(Z) && l(Z) <= r(U) && r(U) <= r(Z) && r(X) < l(U),
        ClassTag::Efb => {
            l(U) < l(X) && r(X) < l(V) && l(V) < l(Z) && l(Z) <= r(U) && r(U) <= r(Z) && r(Z) < r(V)
        }
        ClassTag::Fds => l(U) < l(Y) && l(Y) <= l(V) && l(V) <= r(Y) && r(Y) < r(U) && r(U) <= r(V),
        ClassTag::Efds => {
            l(U) < l(V) && l(V) < l(Y) && l(Y) <= l(W) && l(W) <= r(Y) && r(Y) < r(W) && r(W) < r(U) && r(U) <= r(V)
        }
        ClassTag::Fns => {
            l(U) < l(V) && l(U) < l(W) && l(V) <= l(Z) && l(W) <= l(Z) && l(Z) <= r(W) && r(W) < r(U) && r(U) <= r(V)
        }
        ClassTag::Ce => l(U) < l(Z) && l(Z) <= r(U) && r(U) <= r(Z),
        ClassTag::Se => {
            if u_is_v {
                l(U) == r(U)
            } else {
                l(U) < l(V) && l(V) == r(U) && r(U) < r(V)
            }
        }
        ClassTag::Lb => false,
    }
}

/// A concrete role assignment for a derived class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub slots: BTreeMap<Slot, Vertex>,
}

impl Assignment {
    fn get(&self, s: Slot) -> Vertex {
        self.slots[&s]
    }
}

/// Fills roles and paths of an obstruction from a peeled FAT.
fn fat_roles(f: &Fat, prime: &str, roles: &mut Vec<(String, Vertex)>, paths: &mut Vec<(String, Vec<Vertex>)>, top_roles: bool) {
    let k = f.k();
    for (i, &x) in f.x.iter().enumerate() {
        if i + 1 < k || top_roles {
            roles.push((format!("x{prime}{}", i + 1), x));
        }
    }
    for (i, &t) in f.t.iter().enumerate() {
        roles.push((format!("t{prime}{}", i + 2), t));
    }
    for (i, p) in f.paths.iter().enumerate() {
        paths.push((format!("P{prime}{}", i + 1), p.clone()));
    }
}

fn slot_name(s: Slot, k: usize) -> String {
    match s {
        X => format!("x{k}"),
        Y => format!("y{k}"),
        Z => format!("z{k}"),
        U => "u".into(),
        V => "v".into(),
        W => "w".into(),
    }
}

/// Subsets of `items`, smallest first.
fn all_subsets(items: &[Vertex]) -> Vec<Vec<Vertex>> {
    let mut out: Vec<Vec<Vertex>> = (0..1usize << items.len())
        .map(|m| items.iter().enumerate().filter(|&(i, _)| m >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect();
    out.sort_by_key(|s| s.len());
    out
}

/// Tries one class with one slot assignment. `rep` is already in the
/// orientation being tested.
fn try_assignment(h: &Graph, rep: &PartialRepresentation, tag: ClassTag, asg: &Assignment) -> Option<Obstruction> {
    let n = h.n();
    let all: Vec<Vertex> = (0..n).collect();
    let has = |s: Slot| asg.slots.contains_key(&s);
    let u_is_v = has(U) && has(V) && asg.get(U) == asg.get(V);
    // Pre-drawn set is exactly the pre-drawn slots.
    let sh = if tag == ClassTag::Se { None } else { Some(shape(tag)?) };
    let pre_slots: Vec<Slot> = match sh {
        Some(s) => s.pre.to_vec(),
        None => vec![U, V],
    };
    let mut needed = vec![X, Y, U, V];
    if let Some(sh) = sh {
        needed = [X, Y, Z].into_iter().chain(sh.pre.iter().copied()).chain(sh.added.iter().map(|&(s, _)| s)).collect();
    }
    if needed.iter().any(|s| asg.slots.get(s).map_or(true, |&v| v >= n)) {
        return None;
    }
    let mut pre_vs: Vec<Vertex> = pre_slots.iter().map(|&s| asg.get(s)).collect();
    pre_vs.sort_unstable();
    pre_vs.dedup();
    if pre_vs != rep.predrawn_vertices() {
        return None;
    }
    let ends: Ends = pre_slots.iter().map(|&s| (s, rep.get(asg.get(s)).unwrap().clone())).collect();

    if tag == ClassTag::Se {
        let (x, y, u, v) = (asg.get(X), asg.get(Y), asg.get(U), asg.get(V));
        let mut vs = vec![x, y, u, v];
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != n || x == y || [x, y].iter().any(|&a| a == u || a == v) || h.adjacent(x, y) {
            return None;
        }
        if ![x, y].iter().all(|&a| h.adjacent(a, u) && h.adjacent(a, v)) || !chain_holds(tag, 0, &ends, u_is_v) {
            return None;
        }
        let mut roles = vec![("x".to_string(), x), ("y".to_string(), y), ("u".to_string(), u)];
        if !u_is_v {
            roles.push(("v".to_string(), v));
        }
        return Some(Obstruction::new(tag, 0, None, h.clone(), roles, Vec::new(), rep.clone(), false));
    }
    let sh = sh.unwrap();
    let (x, y, z) = (asg.get(X), asg.get(Y), asg.get(Z));
    // Adjacency of the added vertices to x, y, z.
    for &(s, nb) in sh.added {
        let a = asg.get(s);
        if [x, y, z].contains(&a) {
            return None;
        }
        for (slot, target) in [(X, x), (Y, y), (Z, z)] {
            if h.adjacent(a, target) != nb.contains(&slot) {
                return None;
            }
        }
    }
    let mut added: Vec<Vertex> = sh.added.iter().map(|&(s, _)| asg.get(s)).collect();
    added.sort_unstable();
    added.dedup();
    if tag == ClassTag::Ce {
        return try_ce(h, rep, asg, &ends);
    }
    let allow_equal = tag == ClassTag::Bi;
    for dropped in all_subsets(&added).into_iter().rev() {
        // `dropped` leaves H_k; the others coincide with vertices of H_k.
        let set: Vec<Vertex> = all.iter().copied().filter(|v| !dropped.contains(v)).collect();
        let Some(f) = peel(h, &set, x, y, z, allow_equal) else { continue };
        let k = f.k();
        if tag == ClassTag::Bi && k > 2 {
            continue;
        }
        if !chain_holds(tag, k, &ends, u_is_v) {
            continue;
        }
        let mut roles = Vec::new();
        let mut paths = Vec::new();
        fat_roles(&f, "", &mut roles, &mut paths, true);
        roles.push((format!("y{k}"), f.y));
        roles.push((format!("z{k}"), f.z));
        for &(s, _) in sh.added {
            if s == V && u_is_v {
                continue;
            }
            roles.push((slot_name(s, k), asg.get(s)));
        }
        return Some(Obstruction::new(tag, k, None, h.clone(), roles, paths, rep.clone(), false));
    }
    None
}

/// The covered-endpoint template: a k-FAT on `(x, y, z)` and an l-FAT on
/// `(y, x, z)` that together with `u` cover the graph.
fn try_ce(h: &Graph, rep: &PartialRepresentation, asg: &Assignment, ends: &Ends) -> Option<Obstruction> {
    if !chain_holds(ClassTag::Ce, 0, ends, false) {
        return None;
    }
    let n = h.n();
    let (x, y, z, u) = (asg.get(X), asg.get(Y), asg.get(Z), asg.get(U));
    let found = |f1: &Fat, f2: &Fat| -> bool {
        let mut cover = vec![false; n];
        cover[u] = true;
        for v in f1.vertices().into_iter().chain(f2.vertices()) {
            cover[v] = true;
        }
        cover.iter().all(|&c| c) && f1.k() >= f2.k() && (f2.k() == 1 || (f1.k() == 2 && f2.k() == 2))
    };
    let build = |f1: Fat, f2: Fat| -> Obstruction {
        let (k, l) = (f1.k(), f2.k());
        let mut roles = Vec::new();
        let mut paths = Vec::new();
        fat_roles(&f1, "", &mut roles, &mut paths, true);
        roles.push((format!("y{k}"), y));
        roles.push((format!("z{k}"), z));
        fat_roles(&f2, "'", &mut roles, &mut paths, false);
        roles.push(("u".into(), u));
        Obstruction::new(ClassTag::Ce, k, Some(l), h.clone(), roles, paths, rep.clone(), false)
    };
    let rest: Vec<Vertex> = (0..n).filter(|&v| v != x && v != y && v != z).collect();
    if rest.len() <= 11 {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for sub in all_subsets(&rest) {
            let mut set = sub.clone();
            set.extend([x, y, z]);
            if let Some(f) = peel(h, &set, x, y, z, false) {
                first.push(f);
            }
            if let Some(f) = peel(h, &set, y, x, z, false) {
                second.push(f);
            }
        }
        // Several readings can cover the graph; keep the smallest (k, l).
        let mut best: Option<(&Fat, &Fat)> = None;
        for f1 in &first {
            for f2 in &second {
                if found(f1, f2) && best.map_or(true, |(b1, b2)| (f1.k(), f2.k()) < (b1.k(), b2.k())) {
                    best = Some((f1, f2));
                }
            }
        }
        return best.map(|(f1, f2)| build(f1.clone(), f2.clone()));
    }
    // Large graphs: a (k, 1) form where the first FAT is everything but
    // possibly u and the second is a path avoiding N[x].
    let avoid = h.closed_neighborhood(x).ok()?;
    let p = h.shortest_path_avoiding(y, z, &avoid)?;
    let mut second_set = p.clone();
    second_set.push(x);
    let f2 = peel(h, &second_set, y, x, z, false)?;
    for set in [(0..n).filter(|&v| v != u).collect::<Vec<_>>(), (0..n).collect()] {
        if let Some(f1) = peel(h, &set, x, y, z, false) {
            if found(&f1, &f2) {
                return Some(build(f1, f2));
            }
        }
    }
    None
}

/// Every way to put the pre-drawn vertices into the pre-drawn slots and
/// free vertices into the free slots among `x, y, z`.
fn assignments(h: &Graph, rep: &PartialRepresentation, tag: ClassTag) -> Vec<Assignment> {
    let pre = rep.predrawn_vertices();
    let free: Vec<Vertex> = (0..h.n()).filter(|&v| !rep.is_predrawn(v)).collect();
    let (pre_slots, free_slots): (Vec<Slot>, Vec<Slot>) = match tag {
        ClassTag::Se => (vec![U, V], vec![X, Y]),
        _ => {
            let sh = shape(tag).unwrap();
            let free_slots = [X, Y, Z].into_iter().filter(|s| !sh.pre.contains(s)).collect();
            (sh.pre.to_vec(), free_slots)
        }
    };
    let may_share = matches!(tag, ClassTag::Se | ClassTag::Bi);
    let mut out = Vec::new();
    let mut cur: Vec<Vertex> = Vec::new();
    fn pick_pre(i: usize, slots: &[Slot], pre: &[Vertex], may_share: bool, cur: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        if i == slots.len() {
            out.push(cur.clone());
            return;
        }
        for &p in pre {
            let shared_ok = may_share && i > 0 && matches!((slots[i - 1], slots[i]), (U, V) | (X, Z)) && cur[i - 1] == p;
            if cur.contains(&p) && !shared_ok {
                continue;
            }
            cur.push(p);
            pick_pre(i + 1, slots, pre, may_share, cur, out);
            cur.pop();
        }
    }
    let mut pre_choices = Vec::new();
    pick_pre(0, &pre_slots, &pre, may_share, &mut cur, &mut pre_choices);
    let mut free_choices: Vec<Vec<Vertex>> = vec![Vec::new()];
    for _ in &free_slots {
        free_choices = free_choices
            .into_iter()
            .flat_map(|c| free.iter().filter(|f| !c.contains(f)).map(|&f| [c.as_slice(), &[f]].concat()).collect::<Vec<_>>())
            .collect();
    }
    for pc in &pre_choices {
        for fc in &free_choices {
            let mut slots = BTreeMap::new();
            for (s, &v) in pre_slots.iter().zip(pc) {
                slots.insert(*s, v);
            }
            for (s, &v) in free_slots.iter().zip(fc) {
                slots.insert(*s, v);
            }
            out.push(Assignment { slots });
        }
    }
    out
}

/// Order in which classes are tried.
pub const CLASS_ORDER: [ClassTag; 11] = [
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

/// Finds a class template matching `(h, rep)`, trying the given
/// orientation first and then the mirror image.
pub fn classify(h: &Graph, rep: &PartialRepresentation) -> Option<Obstruction> {
    let flipped = rep.flip();
    for tag in CLASS_ORDER {
        for (r, is_flipped) in [(rep, false), (&flipped, true)] {
            for asg in assignments(h, r, tag) {
                if let Some(mut o) = try_assignment(h, r, tag, &asg) {
                    o.flipped = is_flipped;
                    o.predrawn_rep = rep.clone();
                    return Some(o);
                }
            }
        }
    }
    None
}

/// Matches a class with a given slot assignment, in the given orientation
/// or its mirror image.
pub fn fit(h: &Graph, rep: &PartialRepresentation, tag: ClassTag, slots: &[(Slot, Vertex)]) -> Option<Obstruction> {
    let asg = Assignment { slots: slots.iter().copied().collect() };
    for (r, is_flipped) in [(rep.clone(), false), (rep.flip(), true)] {
        if let Some(mut o) = try_assignment(h, &r, tag, &asg) {
            o.flipped = is_flipped;
            o.predrawn_rep = rep.clone();
            return Some(o);
        }
    }
    None
}

/// Re-derives the obstruction from its named slots and compares every
/// role and path. Returns diagnostics on mismatch.
pub fn verify_template(o: &Obstruction) -> Result<(), String> {
    if o.class == ClassTag::Lb {
        return super::verify_lb_obstruction(o);
    }
    if o.class == ClassTag::Bi && o.k > 2 {
        return Err(format!("{}-BI is not a minimal class", o.k));
    }
    if o.class == ClassTag::Ce {
        let l = o.l.ok_or("CE obstruction without l")?;
        if !(l == 1 || (o.k == 2 && l == 2)) || o.k < l {
            return Err(format!("({},{l})-CE is not a minimal class", o.k));
        }
    }
    if o.predrawn_rep.count() > 4 {
        return Err("more than four pre-drawn intervals".into());
    }
    let rep = if o.flipped { o.predrawn_rep.flip() } else { o.predrawn_rep.clone() };
    let role = |name: &str| o.role(name);
    let k = o.k;
    let mut slots = BTreeMap::new();
    let names: Vec<(Slot, String)> = if o.class == ClassTag::Se {
        vec![(X, "x".into()), (Y, "y".into()), (U, "u".into()), (V, "v".into())]
    } else {
        vec![(X, format!("x{k}")), (Y, format!("y{k}")), (Z, format!("z{k}")), (U, "u".into()), (V, "v".into()), (W, "w".into())]
    };
    for (s, name) in names {
        if let Some(v) = role(&name) {
            slots.insert(s, v);
        }
    }
    if slots.contains_key(&U) && !slots.contains_key(&V) && matches!(o.class, ClassTag::Se | ClassTag::Bi) {
        slots.insert(V, slots[&U]);
    }
    let asg = Assignment { slots };
    let expect = try_assignment(&o.graph, &rep, o.class, &asg).ok_or_else(|| format!("roles do not fit the {} template", o.class.tag()))?;
    if expect.k != o.k || expect.l != o.l {
        return Err(format!("template gives k={} l={:?}, certificate says k={} l={:?}", expect.k, expect.l, o.k, o.l));
    }
    let norm = |v: &[(String, Vertex)]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    let normp = |v: &[(String, Vec<Vertex>)]| {
        let mut v = v.to_vec();
        v.sort();
        v
    };
    if norm(&expect.roles) != norm(&o.roles) {
        return Err("role vertices differ from the peeled structure".into());
    }
    if normp(&expect.paths) != normp(&o.paths) {
        return Err("paths differ from the peeled structure".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peel_one_fat() {
        // x=0 - 1 - z=2, y=3 alone.
        let h = Graph::from_edges(4, &[(0, 1), (1, 2)]).unwrap();
        let f = peel(&h, &[0, 1, 2, 3], 0, 3, 2, false).unwrap();
        assert_eq!(f.k(), 1);
        assert_eq!(f.paths, vec![vec![0, 1, 2]]);
        assert!(peel(&h, &[0, 1, 2, 3], 3, 0, 2, false).is_none());
    }

    #[test]
    fn peel_two_fat() {
        // H_1: x1=0 - z1=1 (edge), y1=2. Layer: x2=3 - t2=4, t2 sees 1 and 2.
        let h = Graph::from_edges(5, &[(0, 1), (3, 4), (4, 1), (4, 2)]).unwrap();
        // y2 = z1 = 1, z2 = y1 = 2.
        let f = peel(&h, &[0, 1, 2, 3, 4], 3, 1, 2, false).unwrap();
        assert_eq!(f.k(), 2);
        assert_eq!(f.x, vec![0, 3]);
        assert_eq!(f.t, vec![4]);
        assert_eq!((f.y, f.z), (1, 2));
    }

    #[test]
    fn equal_ends_only_when_allowed() {
        let h = Graph::from_edges(2, &[]).unwrap();
        assert!(peel(&h, &[0, 1], 0, 1, 0, false).is_none());
        assert_eq!(peel(&h, &[0, 1], 0, 1, 0, true).unwrap().paths, vec![vec![0]]);
    }
}
