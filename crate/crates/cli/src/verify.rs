use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::Args;
use eccforge_core::oracle::maximal_kec_bruteforce;
use eccforge_core::{
    gen, k_certificate, max_kec_subgraphs, DecompTree, Multigraph, Op, Partition, SparsTree,
};
use rand::Rng;
use rayon::prelude::*;

use crate::{load_graph, usage, BenchArgs, Generator};

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 20)]
    pub nmax: usize,
    /// Comma-separated values of k.
    #[arg(short = 'k', value_delimiter = ',', default_value = "3")]
    pub k: Vec<usize>,
    /// Graph files checked in addition to the generated ones.
    pub inputs: Vec<PathBuf>,
}

#[derive(Debug, Default, Clone)]
struct Tally {
    checks: [usize; 4],
    mismatches: Vec<String>,
}

const ENGINES: [&str; 4] = ["static", "certificate", "incremental", "dynamic"];

impl Tally {
    fn record(&mut self, engine: usize, ok: bool, what: impl FnOnce() -> String) {
        self.checks[engine] += 1;
        if !ok {
            self.mismatches
                .push(format!("{}: {}", ENGINES[engine], what()));
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for i in 0..4 {
            self.checks[i] += other.checks[i];
        }
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn trial_rng(seed: u64, trial: usize) -> gen::SeededRng {
    gen::rng(seed.wrapping_add((trial as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)))
}

fn check_graph(g: &Multigraph, ks: &[usize], name: &str) -> Tally {
    let mut tally = Tally::default();
    for &k in ks {
        let want = maximal_kec_bruteforce(g, k);
        tally.record(0, max_kec_subgraphs(g, k, false) == want, || {
            format!("{name} k={k}")
        });
        if k >= 3 {
            let cert = k_certificate(g, k);
            let ok = maximal_kec_bruteforce(&cert.certificate, k) == want
                && max_kec_subgraphs(g, k, true) == want;
            tally.record(1, ok, || format!("{name} k={k}"));
        }
        if k == 3 {
            let mut t = DecompTree::new();
            let mut h = Multigraph::new();
            for _ in 0..g.vertex_count() {
                t.insert_vertex();
                h.add_vertex();
            }
            let mut ok = true;
            for (_, a, b) in g.edges() {
                t.insert_edge(a, b).expect("valid edge");
                h.add_edge(a, b).expect("valid edge");
                ok &= t.audit().is_ok() && t.partition() == maximal_kec_bruteforce(&h, 3);
                if !ok {
                    break;
                }
            }
            tally.record(2, ok, || format!("{name} k=3"));
        }
    }
    tally
}

fn check_stream(ops: &[Op], k: usize, name: &str) -> Tally {
    let mut tally = Tally::default();
    let mut g = Multigraph::new();
    let mut t = SparsTree::build(&g, k);
    for (i, op) in ops.iter().enumerate() {
        match *op {
            Op::AddVertex => {
                g.add_vertex();
                t.add_vertex();
            }
            Op::AddEdge(a, b) => {
                g.add_edge(a, b).expect("valid edge");
                t.insert(a, b).expect("valid edge");
            }
            Op::DeleteEdge(a, b) => {
                g.remove_edge_between(a, b).expect("live edge");
                t.delete(a, b).expect("live edge");
            }
            Op::Query(a, b) => {
                let want = maximal_kec_bruteforce(&g, k).same_class(a, b);
                tally.record(
                    3,
                    t.max_k_edge(a, b).expect("valid vertices") == want,
                    || format!("{name} k={k} operation {}", i + 1),
                );
            }
        }
    }
    tally
}

fn trial(seed: u64, index: usize, nmax: usize, ks: &[usize]) -> Tally {
    let mut rng = trial_rng(seed, index);
    let n = rng.gen_range(2..=nmax.max(2));
    let g = if index.is_multiple_of(2) {
        let m = rng.gen_range(0..=4 * n);
        gen::gnm(&mut rng, n, m)
    } else {
        let c = rng.gen_range(1..=(n / 4).max(1));
        gen::planted(&mut rng, n, c, 0.6, n / 3)
    };
    let name = format!("trial {index}");
    let mut tally = check_graph(&g, ks, &name);
    for &k in ks.iter().filter(|&&k| k >= 3) {
        let ops = gen::dynamic_stream(&mut rng, n, 6 * n, 0.7);
        tally = tally.merge(check_stream(&ops, k, &name));
    }
    tally
}

pub fn verify(args: &VerifyArgs) -> Result<ExitCode> {
    if args.k.contains(&0) {
        return Err(usage("-k values must be at least 1"));
    }
    let mut files = Vec::new();
    for path in &args.inputs {
        files.push((path.display().to_string(), load_graph(path)?));
    }
    let generated = (0..args.trials)
        .into_par_iter()
        .map(|i| trial(args.seed, i, args.nmax, &args.k))
        .collect::<Vec<_>>();
    let supplied = files
        .par_iter()
        .map(|(name, g)| check_graph(g, &args.k, name))
        .collect::<Vec<_>>();
    let total = generated
        .into_iter()
        .chain(supplied)
        .fold(Tally::default(), Tally::merge);

    let ks: Vec<String> = args.k.iter().map(|k| k.to_string()).collect();
    println!(
        "verify seed={} trials={} nmax={} k={} files={}",
        args.seed,
        args.trials,
        args.nmax,
        ks.join(","),
        args.inputs.len()
    );
    for (i, engine) in ENGINES.iter().enumerate() {
        let bad = total
            .mismatches
            .iter()
            .filter(|m| m.starts_with(engine))
            .count();
        println!(
            "{engine:<12} {:>6} checks {bad:>4} mismatches",
            total.checks[i]
        );
    }
    for m in &total.mismatches {
        println!("mismatch {m}");
    }
    if total.mismatches.is_empty() {
        println!("all engines agree with the oracle");
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::FAILURE)
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    if args.k < 3 {
        return Err(usage("bench needs -k 3 or more"));
    }
    if args.nmax < 2 {
        return Err(usage("--nmax must be at least 2"));
    }
    println!(
        "{:>5} {:>6} {:>7} {:>7} {:>9} {:>9} {:>7} {:>9} {:>9} {:>8} {:>10} {:>9}",
        "trial",
        "n",
        "m",
        "classes",
        "solve_ms",
        "certsolve",
        "cert_m",
        "incr_ms",
        "affecting",
        "inserts",
        "dyn_upd_ms",
        "dyn_nodes"
    );
    for i in 0..args.trials {
        let mut rng = trial_rng(args.seed, i);
        let n = args.nmax;
        let g = match args.gen {
            Generator::Gnm => gen::gnm(&mut rng, n, args.density * n),
            Generator::Planted => gen::planted(&mut rng, n, (n / 16).max(1), 0.4, n / 4),
        };
        let t0 = Instant::now();
        let p: Partition = max_kec_subgraphs(&g, args.k, false);
        let solve_ms = ms(t0);
        let t0 = Instant::now();
        let pc = max_kec_subgraphs(&g, args.k, true);
        let cert_ms = ms(t0);
        assert_eq!(p, pc, "certificate changed the partition");
        let cert_m = k_certificate(&g, args.k).edges.len();

        let (incr_ms, affecting, inserts) = if args.k == 3 {
            let t0 = Instant::now();
            let mut t = DecompTree::from_graph(&g);
            let elapsed = ms(t0);
            assert_eq!(t.partition(), p, "incremental engine disagrees");
            (
                format!("{elapsed:.2}"),
                t.counters().affecting.to_string(),
                t.counters().insert_calls.to_string(),
            )
        } else {
            ("-".into(), "-".into(), "-".into())
        };

        let mut tree = SparsTree::build(&g, args.k);
        let mut live: Vec<_> = g.edges().map(|(_, u, v)| (u, v)).collect();
        let updates = 50;
        let before = tree.counters().recomputed;
        let t0 = Instant::now();
        for _ in 0..updates {
            if !live.is_empty() && rng.gen_bool(0.5) {
                let (u, v) = live.swap_remove(rng.gen_range(0..live.len()));
                tree.delete(u, v)?;
            } else {
                let (u, v) = gen::gnm_edges(&mut rng, n, 1)[0];
                tree.insert(u, v)?;
                live.push((u, v));
            }
        }
        let dyn_ms = ms(t0) / updates as f64;
        let per_update = (tree.counters().recomputed - before) as f64 / updates as f64;
        println!(
            "{i:>5} {n:>6} {:>7} {:>7} {solve_ms:>9.2} {cert_ms:>9.2} {cert_m:>7} {incr_ms:>9} {affecting:>9} {inserts:>8} {dyn_ms:>10.2} {per_update:>9.1}",
            g.edge_count(),
            p.class_count(),
        );
    }
    if args.counters {
        println!("counters columns: affecting = insertions joining two subgraphs, inserts = insert calls with re-insertions, dyn_nodes = tree nodes recomputed per update");
    }
    Ok(())
}
