//! Command-line front end: generate orthogonal-vectors instances, search for
//! witnesses, build the two-hub reduction graph, measure diameters, verify
//! builds end to end, and benchmark the pipeline.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use ovdiam::certify::{run_verification, CertifyError, VerifyOptions};
use ovdiam::graph::{exact_diameter, parse_graph, two_approx_estimate, INFINITY};
use ovdiam::ov::{
    find_orthogonal_tuple, gen_instance, parse_instance, write_instance, GenMode, GenParams,
    OvInstance,
};
use ovdiam::reduction::{
    build_reduction, predicted_build_bytes, write_labels, ReductionError,
};

/// Refuse to build reductions predicted to need more memory than this,
/// unless --force is given.
const BUILD_BYTES_CAP: u128 = 2 * 1024 * 1024 * 1024;

#[derive(Parser)]
#[command(name = "ovdiam", version, about = "Orthogonal vectors to diameter reduction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random triple-free instance, optionally with a planted
    /// orthogonal quadruple (witness saved next to the instance).
    Gen(GenArgs),
    /// Search an instance for an orthogonal k-tuple.
    Solve(SolveArgs),
    /// Build the reduction graph for an instance and write it out.
    Reduce(ReduceArgs),
    /// Exact diameter or 2-approximate estimate of a graph file.
    Diameter(DiameterArgs),
    /// Run the full verification suite on an instance.
    Verify(VerifyArgs),
    /// Time generation, construction, and diameter over a parameter grid.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Certified free of orthogonal triples (and hence quadruples).
    NoQuad,
    /// Triple-free with exactly the planted orthogonal quadruple.
    Planted,
}

impl From<ModeArg> for GenMode {
    fn from(mode: ModeArg) -> Self {
        match mode {
            ModeArg::NoQuad => GenMode::NoQuadruple,
            ModeArg::Planted => GenMode::PlantedQuadruple,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Number of vectors.
    #[arg(short, long)]
    n: usize,
    /// Coordinates per vector.
    #[arg(short, long)]
    len: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::NoQuad)]
    mode: ModeArg,
    /// Probability that a coordinate is 1 before any planting.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance file to write; a planted witness goes to <out>.witness.
    #[arg(short, long)]
    out: PathBuf,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Tuple arity to search for.
    #[arg(short, long, default_value_t = 4, value_parser = clap::value_parser!(u8).range(2..=4))]
    k: u8,
}

#[derive(Args)]
struct ReduceArgs {
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Graph file to write (DIMACS shortest-path format).
    #[arg(short, long)]
    out: PathBuf,
    /// Also write one "<id><TAB><label>" line per vertex here.
    #[arg(long)]
    labels: Option<PathBuf>,
    /// Build even when the predicted size exceeds the memory cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct DiameterArgs {
    /// Graph file (DIMACS shortest-path format).
    #[arg(short, long)]
    graph: PathBuf,
    /// Exact sweep over all sources (the default).
    #[arg(long, conflicts_with = "approx2")]
    exact: bool,
    /// Two-approximation from a single pivot instead.
    #[arg(long)]
    approx2: bool,
    /// Pivot vertex (1-based) for --approx2.
    #[arg(long, requires = "approx2")]
    pivot: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file.
    #[arg(short, long)]
    input: PathBuf,
    /// Seed for pair sampling on large builds.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Verify even when the predicted size exceeds the memory cap.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Comma-separated vector counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n_grid: Vec<usize>,
    /// Comma-separated vector lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    len_grid: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    reps: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::NoQuad)]
    mode: ModeArg,
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    /// Base seed; each cell and repetition advances it by one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(&args),
        Command::Solve(args) => cmd_solve(&args),
        Command::Reduce(args) => cmd_reduce(&args),
        Command::Diameter(args) => cmd_diameter(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Bench(args) => cmd_bench(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn read_instance(path: &Path) -> Result<OvInstance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read instance file {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn check_build_size(n: usize, ell: usize, force: bool) -> Result<()> {
    let predicted = predicted_build_bytes(n, ell);
    if predicted > BUILD_BYTES_CAP && !force {
        bail!(
            "predicted build size {predicted} bytes exceeds the {BUILD_BYTES_CAP}-byte cap \
             (n={n}, len={ell}); pass --force to build anyway"
        );
    }
    Ok(())
}

fn cmd_gen(args: &GenArgs) -> Result<ExitCode> {
    let params = GenParams {
        n: args.n,
        ell: args.len,
        mode: args.mode.into(),
        density: args.density,
        seed: args.seed,
    };
    let (inst, witness) = gen_instance(&params)?;
    fs::write(&args.out, write_instance(&inst))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    if let Some(witness) = witness {
        let path = args.out.with_file_name(format!(
            "{}.witness",
            args.out.file_name().map(|s| s.to_string_lossy()).unwrap_or_default()
        ));
        fs::write(&path, format!("{witness}\n"))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    println!("seed {}", args.seed);
    Ok(ExitCode::SUCCESS)
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    match find_orthogonal_tuple(&inst, args.k as usize) {
        Some(witness) => println!("witness {witness}"),
        None => println!("none"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(args: &ReduceArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    check_build_size(inst.n(), inst.ell(), args.force)?;
    let rg = match build_reduction(&inst) {
        Ok(rg) => rg,
        Err(ReductionError::OrthogonalTriple(witness)) => {
            eprintln!("orthogonal triple: {witness}");
            return Ok(ExitCode::from(2));
        }
        Err(err) => return Err(err.into()),
    };
    fs::write(&args.out, ovdiam::graph::write_graph(rg.graph()))
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    if let Some(path) = &args.labels {
        fs::write(path, write_labels(&rg))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    println!("{}", rg.sizes());
    Ok(ExitCode::SUCCESS)
}

fn display_distance(value: u64) -> String {
    if value == INFINITY {
        "inf".to_string()
    } else {
        value.to_string()
    }
}

fn cmd_diameter(args: &DiameterArgs) -> Result<ExitCode> {
    let text = fs::read_to_string(&args.graph)
        .with_context(|| format!("cannot read graph file {}", args.graph.display()))?;
    let g = parse_graph(&text).with_context(|| format!("cannot parse {}", args.graph.display()))?;
    if args.approx2 {
        let pivot = match args.pivot {
            Some(p) => {
                if p == 0 || p as usize > g.n() {
                    bail!("pivot {p} out of range 1..={}", g.n());
                }
                Some(p - 1)
            }
            None => None,
        };
        let estimate = two_approx_estimate(&g, pivot);
        println!("estimate {}", display_distance(estimate));
        if estimate == INFINITY {
            println!("bound diameter inf");
        } else {
            println!("bound {estimate} <= diameter <= {}", 2 * estimate);
        }
    } else {
        let result = exact_diameter(&g);
        println!("diameter {}", display_distance(result.value));
        println!("argmax {} {}", result.argmax.0 + 1, result.argmax.1 + 1);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let inst = read_instance(&args.input)?;
    check_build_size(inst.n(), inst.ell(), args.force)?;
    let opts = VerifyOptions { seed: args.seed, ..VerifyOptions::default() };
    match run_verification(&inst, &opts) {
        Ok(report) => {
            print!("{report}");
            Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Err(CertifyError::Construction(ReductionError::OrthogonalTriple(witness))) => {
            println!("FAIL triple-free instance has orthogonal triple {witness}");
            Ok(ExitCode::FAILURE)
        }
        Err(err) => Err(err.into()),
    }
}

fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn cmd_bench(args: &BenchArgs) -> Result<ExitCode> {
    let mut seed = args.seed;
    for &n in &args.n_grid {
        for &len in &args.len_grid {
            for rep in 0..args.reps {
                let params = GenParams {
                    n,
                    ell: len,
                    mode: args.mode.into(),
                    density: args.density,
                    seed,
                };
                let t0 = Instant::now();
                let (inst, _) = gen_instance(&params)
                    .with_context(|| format!("generation failed at n={n} len={len} seed={seed}"))?;
                let t_gen = t0.elapsed();
                let hash = fnv1a64(write_instance(&inst).as_bytes());
                let t1 = Instant::now();
                let rg = build_reduction(&inst)
                    .with_context(|| format!("build failed at n={n} len={len} seed={seed}"))?;
                let t_build = t1.elapsed();
                let t2 = Instant::now();
                let result = exact_diameter(rg.graph());
                let t_diam = t2.elapsed();
                let t3 = Instant::now();
                let estimate = two_approx_estimate(rg.graph(), None);
                let t_approx = t3.elapsed();
                println!(
                    "n={n} len={len} rep={rep} seed={seed} hash={hash:016x} vertices={} arcs={} \
                     gen={:.3}s build={:.3}s diameter={:.3}s approx2={:.3}s value={} estimate={}",
                    rg.sizes().vertices,
                    rg.sizes().arcs,
                    t_gen.as_secs_f64(),
                    t_build.as_secs_f64(),
                    t_diam.as_secs_f64(),
                    t_approx.as_secs_f64(),
                    display_distance(result.value),
                    display_distance(estimate),
                );
                seed += 1;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
