use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use domgreedy::harness::{run_bench, write_csv, BenchConfig, BenchInstance, DEFAULT_MAX_EXACT_N};
use domgreedy::oracles::{exact_min_dominating_set_with, ExactOptions};
use domgreedy::{
    has_biclique, reduce_set_cover, verify_witness, AlgoSpec, BicliqueWitness, GenSpec, Generated, Graph, OracleError,
    OracleOutcome, ReductionError, SetCoverInstance, SolverError, VertexSet,
};

const EXIT_USAGE: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "domgreedy", version, about = "Greedy dominating sets on biclique-free graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a greedy solver and print the result as JSON.
    Solve(SolveArgs),
    /// Compute a minimum dominating set exactly.
    Exact(ExactArgs),
    /// Check a dominating set or a biclique witness against a graph.
    Verify(VerifyArgs),
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Run solvers over many instances and write a CSV table.
    Bench(BenchArgs),
    /// Reduce an intersection-one set-cover instance to a dominating-set instance.
    Reduce(ReduceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoName {
    Classical,
    Fixed,
    Auto,
    Hybrid,
}

#[derive(Args)]
struct SolveArgs {
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    algo: AlgoName,
    /// Biclique parameter for `fixed` and `hybrid`.
    #[arg(long)]
    i: Option<usize>,
    /// File listing the vertices that must be dominated.
    #[arg(long)]
    targets: Option<PathBuf>,
}

#[derive(Args)]
struct ExactArgs {
    graph: PathBuf,
    #[arg(long)]
    targets: Option<PathBuf>,
    /// Refuse graphs with more vertices than this unless --force is given.
    #[arg(long, default_value_t = DEFAULT_MAX_EXACT_N)]
    max_n: usize,
    #[arg(long)]
    force: bool,
    /// Only look for solutions of at most this size.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("check").required(true).args(["ds", "witness"])))]
struct VerifyArgs {
    graph: PathBuf,
    /// File listing the candidate dominating set.
    #[arg(long)]
    ds: Option<PathBuf>,
    #[arg(long)]
    targets: Option<PathBuf>,
    /// JSON file `{"left": [...], "right": [...]}` to check as a biclique.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    model: GenModel,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenModel {
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
    Grid {
        #[arg(long)]
        w: usize,
        #[arg(long)]
        h: usize,
    },
    #[command(name = "random_tree", alias = "random-tree")]
    RandomTree {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
    },
    #[command(name = "d_degenerate", alias = "d-degenerate")]
    DDegenerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        seed: u64,
    },
    #[command(name = "intersection_one_sc", alias = "intersection-one-sc")]
    IntersectionOneSc {
        #[arg(long)]
        universe: usize,
        #[arg(long)]
        sets: usize,
        #[arg(long)]
        max_set_size: usize,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    /// Directory of graph files, read in file-name order.
    #[arg(long)]
    graphs: Option<PathBuf>,
    /// Comma-separated generator specs such as `grid:3:3,gnp:20:0.1:7`.
    #[arg(long, value_delimiter = ',')]
    gen: Vec<String>,
    /// Comma-separated algorithms such as `classical,fixed:2,auto,hybrid:2`.
    #[arg(long, value_delimiter = ',', required = true)]
    algos: Vec<String>,
    #[arg(long)]
    with_exact: bool,
    /// Largest graph handed to the exact oracle.
    #[arg(long, default_value_t = DEFAULT_MAX_EXACT_N)]
    max_n: usize,
    /// Fill the elapsed_micros column.
    #[arg(long)]
    timing: bool,
    /// CSV output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ReduceArgs {
    setcover: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Where to write the vertex map (JSON).
    #[arg(long)]
    map: Option<PathBuf>,
    /// Confirm the reduced graph has no K_{3,3} subgraph.
    #[arg(long)]
    check_free: bool,
}

/// An error that carries its own exit status.
#[derive(Debug)]
struct Exit {
    code: u8,
    msg: String,
}

impl fmt::Display for Exit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.msg)
    }
}

impl std::error::Error for Exit {}

fn exit_err(code: u8, msg: impl Into<String>) -> anyhow::Error {
    Exit { code, msg: msg.into() }.into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<Exit>() {
            return e.code;
        }
        if let Some(OracleError::ResourceLimit { .. }) = cause.downcast_ref::<OracleError>() {
            return EXIT_GUARD;
        }
        if let Some(e) = cause.downcast_ref::<ReductionError>() {
            if !matches!(e, ReductionError::Format(_)) {
                return EXIT_VALIDATION;
            }
        }
    }
    EXIT_USAGE
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Solve(args) => solve(args),
        Command::Exact(args) => exact(args),
        Command::Verify(args) => verify(args),
        Command::Gen(args) => generate(args),
        Command::Bench(args) => bench(args),
        Command::Reduce(args) => reduce(args),
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_graph(path: &Path) -> Result<Graph> {
    Graph::parse(&read_text(path)?).with_context(|| format!("parsing graph {}", path.display()))
}

/// Reads a vertex list: either whitespace-separated ids or a JSON array.
fn read_vertex_set(path: &Path) -> Result<VertexSet> {
    let text = read_text(path)?;
    let set = if text.trim_start().starts_with('[') {
        serde_json::from_str(&text).map_err(anyhow::Error::from)
    } else {
        VertexSet::parse(&text).map_err(anyhow::Error::from)
    };
    set.with_context(|| format!("parsing vertex list {}", path.display()))
}

fn read_targets(g: &Graph, path: Option<&Path>) -> Result<VertexSet> {
    let Some(path) = path else { return Ok(VertexSet::full(g.n())) };
    let targets = read_vertex_set(path)?;
    g.check_set(&targets).map_err(|e| exit_err(EXIT_VALIDATION, format!("targets: {e}")))?;
    Ok(targets)
}

fn print_json<T: serde::Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn solve(args: SolveArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let targets = read_targets(&g, args.targets.as_deref())?;
    let spec = match (args.algo, args.i) {
        (AlgoName::Classical, None) => AlgoSpec::Classical,
        (AlgoName::Auto, None) => AlgoSpec::Auto,
        (AlgoName::Classical | AlgoName::Auto, Some(_)) => bail!("--i only applies to fixed and hybrid"),
        (AlgoName::Fixed, Some(i)) => AlgoSpec::Fixed(i),
        (AlgoName::Fixed, None) => return Err(SolverError::MissingI.into()),
        (AlgoName::Hybrid, i) => AlgoSpec::Hybrid(i),
    };
    let result = spec.solve(&g, Some(&targets))?;
    print_json(&result.to_document())?;
    Ok(ExitCode::SUCCESS)
}

fn exact(args: ExactArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    if g.n() > args.max_n && !args.force {
        return Err(exit_err(
            EXIT_GUARD,
            format!("graph has {} vertices, above the exact-solver guard of {} (use --force)", g.n(), args.max_n),
        ));
    }
    let targets = read_targets(&g, args.targets.as_deref())?;
    let options = ExactOptions { budget: args.budget, ..ExactOptions::default() };
    match exact_min_dominating_set_with(&g, &targets, options)? {
        OracleOutcome::Optimal(result) => print_json(&result)?,
        OracleOutcome::ExceedsBudget { budget, node_count } => {
            print_json(&serde_json::json!({ "exceeds_budget": budget, "node_count": node_count }))?
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let g = read_graph(&args.graph)?;
    let mut ok = true;
    if let Some(path) = &args.ds {
        let ds = read_vertex_set(path)?;
        g.check_set(&ds).map_err(|e| exit_err(EXIT_VALIDATION, format!("dominating set: {e}")))?;
        let targets = read_targets(&g, args.targets.as_deref())?;
        let missed = g.undominated(&ds, &targets)?;
        if missed.is_empty() {
            println!("OK");
        } else {
            println!("FAIL: undominated {missed}");
            ok = false;
        }
    }
    if let Some(path) = &args.witness {
        let w: BicliqueWitness =
            serde_json::from_str(&read_text(path)?).with_context(|| format!("parsing witness {}", path.display()))?;
        if verify_witness(&g, &w) {
            println!("OK: K_{{{},{}}} witness", w.left.len(), w.right.len());
        } else {
            println!("FAIL: {} / {} is not a biclique in this graph", w.left, w.right);
            ok = false;
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_VALIDATION) })
}

fn generate(args: GenArgs) -> Result<ExitCode> {
    let spec = match args.model {
        GenModel::Gnp { n, p, seed } => GenSpec::Gnp { n, p, seed },
        GenModel::Grid { w, h } => GenSpec::Grid { w, h },
        GenModel::RandomTree { n, seed } => GenSpec::RandomTree { n, seed },
        GenModel::DDegenerate { n, d, seed } => GenSpec::DDegenerate { n, d, seed },
        GenModel::IntersectionOneSc { universe, sets, max_set_size, seed } => {
            GenSpec::IntersectionOne { universe, sets, max_set_size, seed }
        }
    };
    let text = match spec.generate()? {
        Generated::Graph(g) => g.to_edge_list(),
        Generated::SetCover(sc) => sc.to_json() + "\n",
    };
    write_output(args.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn load_dir(dir: &Path) -> Result<Vec<BenchInstance>> {
    let mut paths = Vec::new();
    for entry in fs::read_dir(dir).with_context(|| format!("listing {}", dir.display()))? {
        let path = entry?.path();
        if path.is_file() {
            paths.push(path);
        }
    }
    paths.sort();
    Ok(paths
        .into_iter()
        .map(|path| {
            let name = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            match read_graph(&path) {
                Ok(g) => BenchInstance::new(name, g),
                Err(e) => BenchInstance::failed(name, format!("{e:#}")),
            }
        })
        .collect())
}

fn bench(args: BenchArgs) -> Result<ExitCode> {
    let algorithms =
        args.algos.iter().map(|a| a.trim().parse::<AlgoSpec>().map_err(|e| anyhow!(e))).collect::<Result<Vec<_>>>()?;
    let mut instances = match &args.graphs {
        Some(dir) => load_dir(dir)?,
        None => Vec::new(),
    };
    for raw in args.gen.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        let spec: GenSpec = raw.parse()?;
        instances.push(match spec.graph() {
            Ok(g) => BenchInstance::new(raw, g),
            Err(e) => BenchInstance::failed(raw, e.to_string()),
        });
    }
    let config = BenchConfig { algorithms, with_exact: args.with_exact, max_exact_n: args.max_n, timing: args.timing };
    let records = run_bench(&instances, &config);
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            write_csv(&records, io::BufWriter::new(file))?;
        }
        None => write_csv(&records, io::stdout().lock())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn reduce(args: ReduceArgs) -> Result<ExitCode> {
    let text = read_text(&args.setcover)?;
    let sc =
        SetCoverInstance::parse(&text).with_context(|| format!("set-cover instance {}", args.setcover.display()))?;
    let ri = reduce_set_cover(&sc)?;
    fs::write(&args.out, ri.graph.to_edge_list()).with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(map) = &args.map {
        let json = serde_json::to_string_pretty(&ri.vertex_map())? + "\n";
        fs::write(map, json).with_context(|| format!("writing {}", map.display()))?;
    }
    println!("reduced graph: {} vertices, {} edges", ri.graph.n(), ri.graph.m());
    if args.check_free {
        match has_biclique(&ri.graph, 3, 3)? {
            None => println!("no K_{{3,3}} subgraph"),
            Some(w) => {
                println!("FAIL: K_{{3,3}} found: {} / {}", w.left, w.right);
                return Ok(ExitCode::from(EXIT_VALIDATION));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
