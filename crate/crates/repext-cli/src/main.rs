use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use repext::catalog::{generate, verify_certificate, Certificate, ClassTag, GenSpec};
use repext::extender::extend;
use repext::oracle::{enumerate_instances, oracle_extendible, Instance};
use repext::recognition::{recognize, Recognition};
use repext::{Error, Graph, PartialRepresentation};

const EXIT_EXTENDIBLE: u8 = 0;
const EXIT_NON_EXTENDIBLE: u8 = 1;
const EXIT_NOT_INTERVAL: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(name = "repext", version, about = "Extend partial interval representations, with certificates")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Print the MPQ-tree of the input graph to stderr.
    #[arg(long, global = true)]
    dump_mpq: bool,
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Mirror the pre-drawn intervals before solving.
    #[arg(long, global = true)]
    flip: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print only the RESULT line.
    Check { graph: PathBuf, partrep: PathBuf },
    /// Print the full certificate.
    Extend { graph: PathBuf, partrep: PathBuf },
    /// Check a certificate against its instance.
    Verify { graph: PathBuf, partrep: PathBuf, certificate: PathBuf },
    /// Decide by brute force over clique orderings.
    Oracle { graph: PathBuf, partrep: PathBuf },
    /// Generate an instance of an obstruction class with its certificate.
    Gen {
        /// Class tag: SE, kFAT, kBI, kFS, kEFS, kFB, kEFB, kFDS, kEFDS, kFNS, klCE.
        class: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// Edge counts of P1, P2, ...
        #[arg(long, value_delimiter = ',')]
        paths: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        variant: usize,
        /// Write graph.txt, partrep.txt and cert.txt here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare the solver with the oracle on every small instance.
    Sweep {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_predrawn: usize,
        /// Check only this many instances, sampled with --seed.
        #[arg(long)]
        sample: Option<usize>,
    },
}

/// A failure with its exit code.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let code = match e {
            Error::Format { .. } | Error::Inconsistent(_) => EXIT_DATA,
            Error::InvalidInput(_) | Error::Resource(_) => EXIT_USAGE,
            Error::Internal(_) => EXIT_INTERNAL,
        };
        Fail(code, e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail(EXIT_DATA, format!("{}: {e}", path.display())))
}

fn load(cli: &Cli, graph: &Path, partrep: &Path) -> Result<(Graph, PartialRepresentation), Fail> {
    let g = Graph::parse(&read(graph)?)?;
    let mut rep = PartialRepresentation::parse(&read(partrep)?, &g)?;
    if cli.flip {
        rep = rep.flip();
    }
    if cli.dump_mpq {
        match recognize(&g)? {
            Recognition::Interval(m) => eprint!("{}", m.tree.dump(&g)),
            Recognition::NotInterval(_) => eprintln!("not an interval graph; no MPQ-tree"),
        }
    }
    Ok((g, rep))
}

fn code_of(cert: &Certificate) -> u8 {
    match cert.result_word() {
        "extendible" => EXIT_EXTENDIBLE,
        "not-interval" => EXIT_NOT_INTERVAL,
        _ => EXIT_NON_EXTENDIBLE,
    }
}

fn run(cli: &Cli) -> Result<u8, Fail> {
    match &cli.cmd {
        Cmd::Check { graph, partrep } => {
            let (g, rep) = load(cli, graph, partrep)?;
            let cert = extend(&g, &rep)?;
            println!("RESULT {}", cert.result_word());
            Ok(code_of(&cert))
        }
        Cmd::Extend { graph, partrep } => {
            let (g, rep) = load(cli, graph, partrep)?;
            let cert = extend(&g, &rep)?;
            print!("{}", cert.to_text(&g));
            Ok(code_of(&cert))
        }
        Cmd::Verify { graph, partrep, certificate } => {
            let (g, rep) = load(cli, graph, partrep)?;
            let cert = Certificate::parse(&read(certificate)?, &g)?;
            match verify_certificate(&g, &rep, &cert) {
                Ok(()) => {
                    println!("OK {}", cert.result_word());
                    Ok(code_of(&cert))
                }
                Err(msg) => Err(Fail(EXIT_INTERNAL, format!("certificate rejected: {msg}"))),
            }
        }
        Cmd::Oracle { graph, partrep } => {
            let (g, rep) = load(cli, graph, partrep)?;
            if !repext::oracle::oracle_is_interval(&g) {
                println!("RESULT not-interval");
                return Ok(EXIT_NOT_INTERVAL);
            }
            let ok = oracle_extendible(&g, &rep)?;
            println!("RESULT {}", if ok { "extendible" } else { "non-extendible" });
            Ok(if ok { EXIT_EXTENDIBLE } else { EXIT_NON_EXTENDIBLE })
        }
        Cmd::Gen { class, k, l, paths, variant, out } => {
            let tag = ClassTag::from_tag(class).ok_or_else(|| Fail(EXIT_USAGE, format!("unknown class {class}")))?;
            let spec = GenSpec::new(tag, *k).l(*l).paths(paths).variant(*variant);
            let (g, mut rep, mut o) = generate(&spec)?;
            if cli.flip {
                rep = rep.flip();
                o = o.mirrored();
            }
            let cert = Certificate::Obstructed { obstruction: o, embedding: (0..g.n()).collect() };
            let texts = [("graph.txt", g.to_text()), ("partrep.txt", rep.to_text(&g)), ("cert.txt", cert.to_text(&g))];
            match out {
                Some(dir) => {
                    fs::create_dir_all(dir).map_err(|e| Fail(EXIT_DATA, format!("{}: {e}", dir.display())))?;
                    for (name, text) in &texts {
                        let p = dir.join(name);
                        fs::write(&p, text).map_err(|e| Fail(EXIT_DATA, format!("{}: {e}", p.display())))?;
                    }
                }
                None => {
                    for (name, text) in &texts {
                        println!("# {name}");
                        print!("{text}");
                    }
                }
            }
            Ok(EXIT_EXTENDIBLE)
        }
        Cmd::Sweep { max_n, max_predrawn, sample } => sweep(cli, *max_n, *max_predrawn, *sample),
    }
}

fn describe(inst: &Instance) -> String {
    let mut s = inst.graph.to_text();
    s.push_str(&inst.rep.to_text(&inst.graph));
    s
}

fn sweep(cli: &Cli, max_n: usize, max_predrawn: usize, sample: Option<usize>) -> Result<u8, Fail> {
    if max_n > 7 {
        return Err(Fail(EXIT_USAGE, "sweep is limited to --max-n 7".into()));
    }
    let mut all: Vec<Instance> = enumerate_instances(max_n, max_predrawn).collect();
    if let Some(s) = sample {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
        all.shuffle(&mut rng);
        all.truncate(s);
    }
    let counts = [AtomicUsize::new(0), AtomicUsize::new(0), AtomicUsize::new(0)];
    let first: Mutex<Option<(usize, String)>> = Mutex::new(None);
    all.par_iter().enumerate().for_each(|(i, inst)| {
        let rep = if cli.flip { inst.rep.flip() } else { inst.rep.clone() };
        let verdict = oracle_extendible(&inst.graph, &rep).map_err(|e| e.to_string()).and_then(|want| {
            let cert = extend(&inst.graph, &rep).map_err(|e| e.to_string())?;
            verify_certificate(&inst.graph, &rep, &cert)?;
            if matches!(cert, Certificate::Extending(_)) != want {
                return Err(format!("solver says {}, oracle says {}", cert.result_word(), want));
            }
            Ok(want)
        });
        match verdict {
            Ok(ext) => {
                counts[usize::from(!ext)].fetch_add(1, Ordering::Relaxed);
            }
            Err(msg) => {
                counts[2].fetch_add(1, Ordering::Relaxed);
                let mut f = first.lock().unwrap();
                if f.as_ref().map_or(true, |(j, _)| i < *j) {
                    *f = Some((i, format!("{msg}\n{}", describe(inst))));
                }
            }
        }
    });
    let [e, ne, bad] = counts.map(|c| c.into_inner());
    println!("instances {} extendible {e} non-extendible {ne} mismatches {bad}", all.len());
    if let Some((_, msg)) = first.into_inner().unwrap() {
        println!("first counterexample: {msg}");
        return Ok(EXIT_INTERNAL);
    }
    Ok(EXIT_EXTENDIBLE)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("repext: {msg}");
            ExitCode::from(code)
        }
    }
}
