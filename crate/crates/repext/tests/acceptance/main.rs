//! One line per acceptance criterion. Exits non-zero when a criterion fails
//! that is not listed in `KNOWN_GAPS`.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use repext::catalog::forms::{ce_form, ce_form_count};
use repext::catalog::{check_minimal, check_nonextendible, generate, verify_certificate, verify_template, Certificate, ClassTag, GenSpec, Obstruction};
use repext::extender::extend;
use repext::finder::stats;
use repext::graph::Graph;
use repext::oracle::{brute_force_cliques, enumerate_instances, oracle_extendible, oracle_helly_quadruple, oracle_is_interval, Instance};
use repext::random::{random_extendible_instance, random_instance};
use repext::recognition::{recognize, Recognition};

/// Criteria whose failure is understood and recorded with the project
/// notes; they still print FAIL.
const KNOWN_GAPS: &[u32] = &[4];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

/// Everything the exhaustive sweep feeds to criteria 1, 2, 3 and 6.
#[derive(Default)]
struct Sweep {
    instances: usize,
    non_extendible: usize,
    mismatches: Vec<String>,
    unsound: Vec<String>,
    helly: Vec<String>,
    flip: Vec<String>,
    classes: BTreeMap<String, usize>,
    elapsed: Duration,
}

fn show(inst: &Instance) -> String {
    format!("{:?} {}", inst.graph.edges().collect::<Vec<_>>(), inst.rep.to_text(&inst.graph).replace('\n', "; "))
}

fn push(v: &mut Vec<String>, msg: String) {
    if v.len() < 3 {
        v.push(msg);
    } else {
        v.push(String::new());
    }
}

fn sweep() -> Sweep {
    let t = Instant::now();
    let mut s = Sweep::default();
    for inst in enumerate_instances(6, 4) {
        s.instances += 1;
        let (g, rep) = (&inst.graph, &inst.rep);
        let want = oracle_extendible(g, rep).unwrap();
        let cert = match extend(g, rep) {
            Ok(c) => c,
            Err(e) => {
                push(&mut s.mismatches, format!("{e}: {}", show(&inst)));
                continue;
            }
        };
        if matches!(cert, Certificate::Extending(_)) != want {
            push(&mut s.mismatches, format!("solver {} oracle {want}: {}", cert.result_word(), show(&inst)));
        }
        if let Err(e) = verify_certificate(g, rep, &cert) {
            push(&mut s.unsound, format!("{e}: {}", show(&inst)));
        }
        if let Some(o) = cert.obstruction() {
            s.non_extendible += 1;
            *s.classes.entry(o.label()).or_default() += 1;
            if !check_nonextendible(o).unwrap() {
                push(&mut s.unsound, format!("obstruction is extendible: {}", show(&inst)));
            }
            if o.predrawn_rep.count() > 4 {
                push(&mut s.helly, format!("{} pre-drawn in obstruction: {}", o.predrawn_rep.count(), show(&inst)));
            }
            if let Err(e) = oracle_helly_quadruple(g, rep) {
                push(&mut s.helly, format!("{e}: {}", show(&inst)));
            }
        }
        let flipped = rep.flip();
        match extend(g, &flipped) {
            Ok(fc) => {
                let same_class = cert.obstruction().map(Obstruction::label) == fc.obstruction().map(Obstruction::label);
                let mirrored = cert.mirrored();
                if fc.result_word() != cert.result_word() || !same_class {
                    push(&mut s.flip, format!("decision or class changes: {}", show(&inst)));
                } else if verify_certificate(g, &flipped, &mirrored).is_err() || (cert.obstruction().is_some() && mirrored.to_text(g) != fc.to_text(g)) {
                    push(&mut s.flip, format!("certificate does not mirror: {}", show(&inst)));
                }
            }
            Err(e) => push(&mut s.flip, format!("{e} on the mirror: {}", show(&inst))),
        }
    }
    s.elapsed = t.elapsed();
    s
}

fn summary(v: &[String]) -> String {
    let shown: Vec<&str> = v.iter().map(String::as_str).filter(|m| !m.is_empty()).collect();
    format!("{} failures; first: {}", v.len(), shown.join(" | "))
}

fn criterion_1(s: &Sweep) -> Outcome {
    let st = stats();
    let detail = format!(
        "{} instances ({} non-extendible) in {:.1?}; finder runs {} fallbacks {}",
        s.instances, s.non_extendible, s.elapsed, st.runs, st.fallbacks
    );
    if s.mismatches.is_empty() && s.instances >= 10_000 {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", summary(&s.mismatches)))
    }
}

fn criterion_2(s: &Sweep) -> Outcome {
    let classes: Vec<String> = s.classes.iter().map(|(c, n)| format!("{c}:{n}")).collect();
    if s.unsound.is_empty() {
        outcome(true, format!("all certificates verified; classes {}", classes.join(" ")))
    } else {
        outcome(false, summary(&s.unsound))
    }
}

fn criterion_3(s: &Sweep) -> Outcome {
    // The sweep never has more than four pre-drawn vertices, so also try
    // instances with many more.
    let mut extra = 0;
    let mut fails = s.helly.clone();
    for seed in 0..4000u64 {
        let n = 6 + (seed % 5) as usize;
        let inst = random_instance(n, 2, 0.8, 0.3, seed).unwrap();
        if inst.rep.count() <= 4 || oracle_extendible(&inst.graph, &inst.rep).unwrap() {
            continue;
        }
        extra += 1;
        match oracle_helly_quadruple(&inst.graph, &inst.rep) {
            Ok(q) if q.len() <= 4 => {}
            Ok(q) => push(&mut fails, format!("quadruple of size {}: {}", q.len(), show(&inst))),
            Err(e) => push(&mut fails, format!("{e}: {}", show(&inst))),
        }
        if let Ok(c) = extend(&inst.graph, &inst.rep) {
            if c.obstruction().is_some_and(|o| o.predrawn_rep.count() > 4) {
                push(&mut fails, format!("obstruction with more than four pre-drawn: {}", show(&inst)));
            }
        }
    }
    let detail = format!("{} sweep obstructions and {extra} random instances with 5+ pre-drawn", s.non_extendible);
    if fails.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", summary(&fails)))
    }
}

fn catalog_cases() -> Vec<(String, GenSpec)> {
    let mut out = Vec::new();
    for v in 0..2 {
        out.push((format!("SE#{v}"), GenSpec::new(ClassTag::Se, 0).variant(v)));
    }
    for (v, name) in ["a", "b", "c", "d", "e", "f"].iter().enumerate() {
        out.push((format!("1-BI({name})"), GenSpec::new(ClassTag::Bi, 1).variant(v)));
    }
    for k in 1..=4 {
        out.push((format!("{k}-FAT"), GenSpec::new(ClassTag::Fat, k)));
    }
    for v in 0..2 {
        out.push((format!("2-BI#{v}"), GenSpec::new(ClassTag::Bi, 2).variant(v)));
    }
    out
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut fails = Vec::new();
    let mut judge = |name: String, made: repext::Result<(Graph, repext::PartialRepresentation, Obstruction)>| {
        checked += 1;
        let (_, _, o) = match made {
            Ok(m) => m,
            Err(e) => {
                fails.push(format!("{name}: {e}"));
                return;
            }
        };
        if let Err(e) = verify_template(&o) {
            fails.push(format!("{name}: template {e}"));
        } else if !check_nonextendible(&o).unwrap() {
            fails.push(format!("{name}: extendible"));
        } else if !check_minimal(&o).unwrap() {
            fails.push(format!("{name}: not minimal"));
        }
    };
    for (name, spec) in catalog_cases() {
        judge(name, generate(&spec));
    }
    for (k, l) in [(1, 1), (2, 1), (2, 2)] {
        for v in 0..ce_form_count(k, l) {
            judge(format!("({k},{l})-CE#{v}"), ce_form(k, l, v));
        }
    }
    let forms = format!("CE forms {}/{}/{}", ce_form_count(1, 1), ce_form_count(2, 1), ce_form_count(2, 2));
    if fails.is_empty() {
        outcome(true, format!("{checked} generated instances non-extendible and minimal; {forms}"))
    } else {
        outcome(false, format!("{} of {checked} fail ({forms}): {}", fails.len(), fails.join("; ")))
    }
}

/// All graphs on `n` vertices as edge masks, interval ones only.
fn small_interval_graphs(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::from_edges(n, &edges).unwrap();
            if oracle_is_interval(&g) {
                out.push(g);
            }
        }
    }
    out
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let graphs = small_interval_graphs(6);
    let mut bad = Vec::new();
    for g in &graphs {
        let Recognition::Interval(m) = recognize(g).unwrap() else {
            push(&mut bad, format!("recognition rejects {:?}", g.edges().collect::<Vec<_>>()));
            continue;
        };
        let as_sets = |order: &[usize]| -> Vec<Vec<usize>> { order.iter().map(|&c| sorted(&m.cliques[c].members)).collect() };
        let tree: BTreeSet<Vec<Vec<usize>>> = m.tree.all_frontiers().iter().map(|f| as_sets(f)).collect();
        let cliques = brute_force_cliques(g).unwrap();
        let mut brute = BTreeSet::new();
        for perm in permutations(cliques.len()) {
            let consecutive = (0..g.n()).all(|v| {
                let hits: Vec<usize> = perm.iter().enumerate().filter(|(_, &c)| cliques[c].contains(&v)).map(|(i, _)| i).collect();
                hits.windows(2).all(|w| w[1] == w[0] + 1)
            });
            if consecutive {
                brute.insert(perm.iter().map(|&c| sorted(&cliques[c])).collect::<Vec<_>>());
            }
        }
        if tree != brute {
            push(&mut bad, format!("{:?}: tree {} orderings, brute force {}", g.edges().collect::<Vec<_>>(), tree.len(), brute.len()));
        }
    }
    let detail = format!("{} labelled interval graphs in {:.1?}", graphs.len(), t.elapsed());
    if bad.is_empty() {
        outcome(true, detail)
    } else {
        outcome(false, format!("{detail}; {}", summary(&bad)))
    }
}

fn criterion_6(s: &Sweep) -> Outcome {
    if s.flip.is_empty() {
        outcome(true, format!("{} instances: decisions, classes and mirrored certificates agree", s.instances))
    } else {
        outcome(false, summary(&s.flip))
    }
}

fn criterion_7() -> Outcome {
    let mut rows = Vec::new();
    for n in [1_000usize, 10_000, 100_000] {
        let inst = random_extendible_instance(n, 4, 0.1, 7).unwrap();
        let size = inst.graph.n() + inst.graph.m();
        let mut best = Duration::MAX;
        let mut ok = true;
        for _ in 0..3 {
            let t = Instant::now();
            let cert = extend(&inst.graph, &inst.rep).unwrap();
            best = best.min(t.elapsed());
            ok &= matches!(cert, Certificate::Extending(_));
        }
        rows.push((n, size, best, ok));
    }
    let (_, s0, t0, _) = rows[0];
    let (_, s2, t2, _) = rows[2];
    let size_ratio = s2 as f64 / s0 as f64;
    let time_ratio = t2.as_secs_f64() / t0.as_secs_f64().max(1e-9);
    let within = time_ratio <= 3.0 * size_ratio;
    let fast = t2 < Duration::from_secs(5);
    let all_ok = rows.iter().all(|r| r.3);
    let table: Vec<String> = rows.iter().map(|(n, s, t, _)| format!("n={n} n+m={s} {:.1}ms", t.as_secs_f64() * 1e3)).collect();
    outcome(
        within && fast && all_ok,
        format!("{}; time ratio {time_ratio:.1} vs size ratio {size_ratio:.1}", table.join(", ")),
    )
}

fn criterion_8() -> Outcome {
    let before = stats();
    let mut run = 0;
    for k in 1..=6 {
        for lens in [vec![], vec![2, 3, 1, 2, 1, 3], vec![4, 1, 4, 1, 4, 1]] {
            for class in [ClassTag::Fat, ClassTag::Fs, ClassTag::Efs, ClassTag::Fb, ClassTag::Efb, ClassTag::Fds, ClassTag::Efds, ClassTag::Fns, ClassTag::Ce] {
                let spec = GenSpec::new(class, k.max(if class == ClassTag::Ce { 3 } else { 1 })).paths(&lens[..lens.len().min(k)]);
                if let Ok((g, rep, _)) = generate(&spec) {
                    let _ = extend(&g, &rep);
                    run += 1;
                }
            }
        }
    }
    for (k, l) in [(1, 1), (2, 1), (2, 2)] {
        for v in 0..ce_form_count(k, l) {
            let (g, rep, _) = ce_form(k, l, v).unwrap();
            let _ = extend(&g, &rep);
            run += 1;
        }
    }
    let after = stats();
    let calls = after.kfat_calls - before.kfat_calls;
    let detail = format!(
        "{run} fixtures, {calls} peeling runs here, {} over all runs; over budget {}; largest edge-visit count {}",
        after.kfat_calls, after.kfat_over_budget, after.max_kfat_visits
    );
    outcome(calls > 0 && after.kfat_over_budget == 0, detail)
}

fn main() {
    let s = sweep();
    let results = [
        (1, "oracle equivalence", criterion_1(&s)),
        (2, "certificate soundness", criterion_2(&s)),
        (3, "at most four pre-drawn", criterion_3(&s)),
        (4, "catalog minimality", criterion_4()),
        (5, "MPQ frontiers", criterion_5()),
        (6, "flip invariance", criterion_6(&s)),
        (7, "near-linear scaling", criterion_7()),
        (8, "peeling edge budget", criterion_8()),
    ];
    let mut unexpected = false;
    for (id, name, o) in &results {
        let word = if o.pass { "PASS" } else if KNOWN_GAPS.contains(id) { "FAIL (known)" } else { "FAIL" };
        println!("criterion {id} {name}: {word}: {}", o.detail);
        unexpected |= !o.pass && !KNOWN_GAPS.contains(id);
    }
    let notes = repext::finder::fallback_notes();
    if !notes.is_empty() {
        println!("finder fallbacks: {}", notes.join(" | "));
    }
    if unexpected {
        std::process::exit(1);
    }
}
