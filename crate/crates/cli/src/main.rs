use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eccforge_core::{
    k_certificate, max_kec_subgraphs, parse_graph, parse_ops, serialize_graph, DecompTree,
    Multigraph, Op, SparsTree,
};

mod verify;

#[derive(Parser, Debug)]
#[command(
    name = "eccforge",
    version,
    about = "Maximal k-edge-connected subgraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the maximal k-edge-connected subgraphs of a graph file.
    Solve {
        /// Graph file, or `-` for stdin.
        input: PathBuf,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        /// Sparsify with a k-certificate first.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        debug_validate: bool,
    },
    /// Replay an insertion stream through the incremental k = 3 engine.
    Incr {
        input: PathBuf,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        /// Print a counter line after the answers.
        #[arg(long)]
        counters: bool,
        /// Audit the decomposition tree after every operation.
        #[arg(long)]
        debug_validate: bool,
    },
    /// Write a k-certificate of a graph file.
    Certify {
        input: PathBuf,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        /// Output file; without it the certificate goes to stdout and the
        /// summary to stderr.
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Replay an update/query stream through the sparsification tree.
    Dynamic {
        input: PathBuf,
        #[arg(short = 'k', default_value_t = 3)]
        k: usize,
        #[arg(long)]
        counters: bool,
        #[arg(long)]
        debug_validate: bool,
    },
    /// Check every engine against the brute-force oracle.
    Verify(verify::VerifyArgs),
    /// Time the engines on generated graphs.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    /// Vertices per generated graph.
    #[arg(long, default_value_t = 200)]
    pub nmax: usize,
    #[arg(short = 'k', default_value_t = 3)]
    pub k: usize,
    #[arg(long, value_enum, default_value_t = Generator::Planted)]
    pub gen: Generator,
    /// Edges per vertex for `gnm`.
    #[arg(long, default_value_t = 4)]
    pub density: usize,
    #[arg(long)]
    pub counters: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generator {
    Gnm,
    Planted,
}

/// A failure caused by the input rather than the engines.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Multigraph> {
    let text = read_input(path)?;
    parse_graph(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_ops(path: &Path) -> Result<Vec<Op>> {
    let text = read_input(path)?;
    parse_ops(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn solve(input: &Path, k: usize, certificate: bool, debug_validate: bool) -> Result<()> {
    if k == 0 {
        return Err(usage("-k must be at least 1"));
    }
    if certificate && k < 3 {
        return Err(usage("--certificate needs -k 3 or more"));
    }
    let g = load_graph(input)?;
    if debug_validate {
        g.validate().map_err(anyhow::Error::msg)?;
    }
    let p = max_kec_subgraphs(&g, k, certificate);
    print!("{p}");
    Ok(())
}

fn incremental(input: &Path, k: usize, counters: bool, debug_validate: bool) -> Result<()> {
    if k != 3 {
        return Err(usage("the incremental engine supports only -k 3"));
    }
    let ops = load_ops(input)?;
    let mut t = DecompTree::new();
    let mut out = io::BufWriter::new(io::stdout().lock());
    for (i, op) in ops.iter().enumerate() {
        match *op {
            Op::AddVertex => {
                t.insert_vertex();
            }
            Op::AddEdge(a, b) => t
                .insert_edge(a, b)
                .map_err(|e| usage(format!("operation {}: {e}", i + 1)))?,
            Op::DeleteEdge(..) => {
                return Err(usage(format!(
                    "operation {}: the incremental engine cannot delete",
                    i + 1
                )))
            }
            Op::Query(a, b) => writeln!(out, "{}", t.same_max_3ec(a, b)?)?,
        }
        if debug_validate {
            t.audit()
                .map_err(|e| anyhow::anyhow!("audit after operation {}: {e}", i + 1))?;
        }
    }
    if counters {
        let c = t.counters();
        let n = t.vertex_count();
        writeln!(
            out,
            "counters n={n} affecting={} bound={} insert_calls={} reinsertions={} classes={}",
            c.affecting,
            3 * n.saturating_sub(1),
            c.insert_calls,
            c.reinsertions,
            t.count()
        )?;
    }
    Ok(())
}

fn certify(input: &Path, k: usize, output: Option<&Path>) -> Result<()> {
    if k < 3 {
        return Err(usage("certify needs -k 3 or more"));
    }
    let g = load_graph(input)?;
    let r = k_certificate(&g, k);
    let text = serialize_graph(&r.certificate);
    let summary = format!(
        "certificate k={k} n={} m_in={} m_out={} eprime={}",
        g.vertex_count(),
        g.edge_count(),
        r.edges.len(),
        r.interconnection_superset.len()
    );
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn dynamic(input: &Path, k: usize, counters: bool, debug_validate: bool) -> Result<()> {
    if k < 3 {
        return Err(usage("dynamic needs -k 3 or more"));
    }
    let ops = load_ops(input)?;
    let mut t = SparsTree::build(&Multigraph::new(), k);
    let mut out = io::BufWriter::new(io::stdout().lock());
    for (i, op) in ops.iter().enumerate() {
        let at = |e: eccforge_core::GraphError| usage(format!("operation {}: {e}", i + 1));
        match *op {
            Op::AddVertex => {
                t.add_vertex();
            }
            Op::AddEdge(a, b) => t.insert(a, b).map_err(at)?,
            Op::DeleteEdge(a, b) => t.delete(a, b).map_err(at)?,
            Op::Query(a, b) => writeln!(out, "{}", t.max_k_edge(a, b).map_err(at)?)?,
        }
        if debug_validate {
            t.validate()
                .map_err(|e| anyhow::anyhow!("validation after operation {}: {e}", i + 1))?;
        }
    }
    if counters {
        let c = t.counters();
        writeln!(
            out,
            "counters n={} m={} groups={} height={} updates={} recomputed={} rebuilds={}",
            t.vertex_count(),
            t.edge_count(),
            t.group_count(),
            t.height(),
            c.updates,
            c.recomputed,
            c.rebuilds
        )?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Solve {
            input,
            k,
            certificate,
            debug_validate,
        } => solve(&input, k, certificate, debug_validate)?,
        Command::Incr {
            input,
            k,
            counters,
            debug_validate,
        } => incremental(&input, k, counters, debug_validate)?,
        Command::Certify { input, k, output } => certify(&input, k, output.as_deref())?,
        Command::Dynamic {
            input,
            k,
            counters,
            debug_validate,
        } => dynamic(&input, k, counters, debug_validate)?,
        Command::Verify(args) => return verify::verify(&args),
        Command::Bench(args) => verify::bench(&args)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use anyhow::bail;
    use clap::CommandFactory;

    #[test]
    fn cli_definition() {
        Cli::command().debug_assert();
    }

    #[test]
    fn bail_is_not_usage() {
        let e: anyhow::Error = (|| -> Result<()> { bail!("x") })().unwrap_err();
        assert!(e.downcast_ref::<Usage>().is_none());
        assert!(usage("y").downcast_ref::<Usage>().is_some());
    }
}
