use std::fs::File;
use std::io::{BufReader, BufWriter};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use stabcode::bits::weight_k_words;
use stabcode::bounds::{
    binary_entropy, min_rate, theorem1_feasible, theorem2_feasible, trivial_feasible, BoundKind,
    LinearParams, MinRate,
};
use stabcode::codes::{
    check_stability, find_stable_code, random_binning_encoder, random_binning_on, EncoderTable,
    SearchBudget, SearchStatus, DEFAULT_SEARCH_NODES,
};
use stabcode::exact::{degree_gn, degree_hn, intersection_params, omega_gn, omega_hn, CombinatorialSpec};
use stabcode::graph::{build_hamming_power_graph, build_source_graph, write_edge_list, AdjacencyGraph};
use stabcode::region::{crossover, emit_csv, emit_svg, region_sweep, CellClass, SweepConfig};
use stabcode::Error;

#[derive(Parser)]
#[command(name = "stabcode", version, about = "Converse bounds and oracles for stable lossless source coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form rate bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Exact degrees and clique numbers of the source and codeword graphs.
    Exact(ExactArgs),
    /// Brute-force graph oracles.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Explicit encoders: stability checks and stable-code search.
    #[command(subcommand)]
    Code(CodeCmd),
    /// Feasibility regions over (p, R).
    #[command(subcommand)]
    Region(RegionCmd),
}

#[derive(Subcommand)]
enum BoundsCmd {
    /// Evaluate both converses and the trivial bound at one point.
    Eval {
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        rate: f64,
    },
    /// Smallest rate allowed by a converse.
    MinRate {
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
        #[arg(long)]
        p: f64,
        #[arg(long, value_enum, default_value = "all")]
        bound: Bound,
    },
    /// Where a converse stops binding against R = h2(p).
    Crossover {
        #[arg(long)]
        d1: f64,
        #[arg(long)]
        d2: f64,
        #[arg(long, value_enum)]
        bound: Bound,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bound {
    Degree,
    Clique,
    Trivial,
    All,
}

impl From<Bound> for BoundKind {
    fn from(b: Bound) -> Self {
        match b {
            Bound::Degree => BoundKind::Degree,
            Bound::Clique => BoundKind::Clique,
            Bound::Trivial => BoundKind::Trivial,
            Bound::All => BoundKind::All,
        }
    }
}

#[derive(Args)]
struct ExactArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    k: u64,
    #[arg(long)]
    d: u64,
    #[arg(long)]
    ell: u64,
    #[arg(long)]
    dp: u64,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Build a graph and compare brute-force degree and clique number with the formulas.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// Weight-k words of length n, adjacent within distance D.
    Source,
    /// All ell-bit words, adjacent within distance 1..=D'.
    Hamming,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    d: Option<u32>,
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long)]
    dp: Option<u32>,
    /// Clique search budget in seconds.
    #[arg(long, default_value_t = 30.0)]
    budget: f64,
    /// Write the graph as an edge list.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Check (D, D')-stability of an encoder table or a seeded random binning.
    Check(CheckArgs),
    /// Search for an injective stable encoder on a weight-k slice.
    Search(SearchArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Encoder table file; omit to use a random binning.
    #[arg(long, conflicts_with_all = ["n", "k"])]
    table: Option<PathBuf>,
    /// Input length of the random binning.
    #[arg(long)]
    n: Option<u32>,
    /// Restrict the random binning to the weight-k slice.
    #[arg(long)]
    k: Option<u32>,
    /// Output length of the random binning.
    #[arg(long)]
    ell: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    dp: u32,
    /// Write the checked table.
    #[arg(long)]
    out_table: Option<PathBuf>,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
    #[arg(long)]
    d: u32,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    dp: u32,
    /// Search budget in nodes.
    #[arg(long, default_value_t = DEFAULT_SEARCH_NODES)]
    budget: u64,
    /// Write the table when one is found.
    #[arg(long)]
    out_table: Option<PathBuf>,
}

#[derive(Subcommand)]
enum RegionCmd {
    /// Classify every cell of a (p, R) grid and emit CSV and SVG.
    Sweep(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// TOML file with any of d1, d2, p_range, r_range, grid, out_csv, out_svg.
    /// Flags override file values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    d1: Option<f64>,
    #[arg(long)]
    d2: Option<f64>,
    /// "min,max"
    #[arg(long, value_parser = parse_pair::<f64>)]
    p_range: Option<(f64, f64)>,
    /// "min,max"
    #[arg(long, value_parser = parse_pair::<f64>)]
    r_range: Option<(f64, f64)>,
    /// "n_p,n_R"
    #[arg(long, value_parser = parse_pair::<usize>)]
    grid: Option<(usize, usize)>,
    #[arg(long)]
    out_csv: Option<PathBuf>,
    #[arg(long)]
    out_svg: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepFile {
    d1: Option<f64>,
    d2: Option<f64>,
    p_range: Option<(f64, f64)>,
    r_range: Option<(f64, f64)>,
    grid: Option<(usize, usize)>,
    out_csv: Option<PathBuf>,
    out_svg: Option<PathBuf>,
}

fn parse_pair<T: std::str::FromStr>(s: &str) -> Result<(T, T), String> {
    let (a, b) = s
        .split_once([',', 'x', ':'])
        .ok_or_else(|| format!("expected two values separated by ',', got {s:?}"))?;
    let parse = |v: &str| v.trim().parse::<T>().map_err(|_| format!("cannot parse {v:?}"));
    Ok((parse(a)?, parse(b)?))
}

/// Failures with their exit codes.
enum Failure {
    Config(String),
    Resource(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource(_) => Failure::Resource(e.to_string()),
            Error::Io(_) => Failure::Other(e.to_string()),
            _ => Failure::Config(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Bounds(cmd) => run_bounds(cmd),
        Command::Exact(args) => run_exact(args),
        Command::Graph(GraphCmd::Oracle(args)) => run_oracle(args),
        Command::Code(CodeCmd::Check(args)) => run_check(args),
        Command::Code(CodeCmd::Search(args)) => run_search(args),
        Command::Region(RegionCmd::Sweep(args)) => run_sweep(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn show_rate(r: MinRate) -> String {
    match r {
        MinRate::Finite(v) => format!("{v:.9}"),
        MinRate::Unbounded => "unbounded".into(),
    }
}

fn run_bounds(cmd: BoundsCmd) -> Outcome {
    match cmd {
        BoundsCmd::Eval { d1, d2, p, rate } => {
            let params = LinearParams::new(d1, d2, p, rate)?;
            println!("F: {:.9}", params.f());
            println!("G: {:.9}", params.g());
            println!("h2(d1/2): {:.9}", binary_entropy(d1 / 2.0)?);
            println!("Psi: {:.9}", params.psi());
            println!("h2(p): {:.9}", binary_entropy(p)?);
            println!("theorem1: {}", theorem1_feasible(&params));
            match theorem2_feasible(&params) {
                Ok(ok) => println!("theorem2: {ok}"),
                Err(e) => println!("theorem2: n/a ({e})"),
            }
            println!("trivial: {}", trivial_feasible(&params));
        }
        BoundsCmd::MinRate { d1, d2, p, bound } => {
            let kinds = match bound {
                Bound::All => vec![Bound::Degree, Bound::Clique, Bound::Trivial, Bound::All],
                b => vec![b],
            };
            for b in kinds {
                let name = match b {
                    Bound::Degree => "degree",
                    Bound::Clique => "clique",
                    Bound::Trivial => "trivial",
                    Bound::All => "all",
                };
                println!("{name}: {}", show_rate(min_rate(d1, d2, p, b.into())?));
            }
        }
        BoundsCmd::Crossover { d1, d2, bound } => {
            let c = crossover(d1, d2, bound.into())?;
            match c.primary {
                Some(p) => println!("crossover: {p:.6}"),
                None => println!("crossover: none"),
            }
            for r in &c.roots {
                let dir = if r.falling { "stops_binding" } else { "starts_binding" };
                println!("root: {:.6} {dir}", r.p);
            }
        }
    }
    Ok(())
}

fn run_exact(a: ExactArgs) -> Outcome {
    let spec = CombinatorialSpec::new(a.n, a.k, a.d, a.ell, a.dp)?;
    let (t_ceil, t_floor) = intersection_params(a.k, a.d);
    let omega = spec.omega_gn();
    println!("p_n: {}", spec.p_n());
    println!("degree_Gn: {}", spec.degree_gn());
    println!("degree_Hn: {}", spec.degree_hn());
    println!("t: {t_floor} (ceil form {t_ceil})");
    println!(
        "omega_Gn: {}{}",
        omega.value,
        if omega.via_ak { "" } else { " (t < 1: whole slice)" }
    );
    println!("omega_Hn: {}", spec.omega_hn());
    println!("obstructed: {}", spec.obstructed());
    Ok(())
}

fn need(v: Option<u32>, name: &str) -> Result<u32, Failure> {
    v.ok_or_else(|| Failure::Config(format!("--{name} is required for this family")))
}

fn run_oracle(a: OracleArgs) -> Outcome {
    if !(a.budget >= 0.0 && a.budget.is_finite()) {
        return Err(Failure::Config(format!("--budget must be a nonnegative number, got {}", a.budget)));
    }
    let (g, degree, omega): (AdjacencyGraph, _, _) = match a.family {
        Family::Source => {
            let (n, k, d) = (need(a.n, "n")?, need(a.k, "k")?, need(a.d, "d")?);
            let g = build_source_graph(n, k, d)?;
            let (n, k, d) = (n as u64, k as u64, d as u64);
            (g, degree_gn(n, k, d), omega_gn(n, k, d).value)
        }
        Family::Hamming => {
            let (ell, dp) = (need(a.ell, "ell")?, need(a.dp, "dp")?);
            let g = build_hamming_power_graph(ell, dp)?;
            (g, degree_hn(ell as u64, dp as u64), omega_hn(ell as u64, dp as u64))
        }
    };
    if let Some(path) = &a.dump {
        write_edge_list(&g, BufWriter::new(File::create(path).map_err(Error::from)?))?;
    }
    let clique = g.brute_max_clique_with_budget(Duration::from_secs_f64(a.budget));
    let brute_degree = g.brute_max_degree();
    println!("vertices: {}", g.order());
    println!("edges: {}", g.edge_count());
    println!("degree: brute {brute_degree} formula {degree}");
    println!("omega: brute {} formula {omega} exact {}", clique.size, clique.exact);
    if !clique.exact {
        println!("match: unknown");
        return Err(Failure::Resource("clique search budget exhausted".into()));
    }
    let agree = degree == brute_degree.into() && omega == clique.size.into();
    println!("match: {agree}");
    Ok(())
}

fn write_table(table: &EncoderTable, path: &Path) -> Result<(), Failure> {
    table.write_to(BufWriter::new(File::create(path).map_err(Error::from)?))?;
    Ok(())
}

fn run_check(a: CheckArgs) -> Outcome {
    let table = match &a.table {
        Some(path) => EncoderTable::read_from(BufReader::new(File::open(path).map_err(Error::from)?))?,
        None => {
            let n = need(a.n, "n")?;
            let ell = need(a.ell, "ell")?;
            match a.k {
                Some(k) if k <= n => random_binning_on(n, &weight_k_words(n, k), ell, a.seed)?,
                Some(k) => return Err(Failure::Config(format!("need k <= n, got n = {n}, k = {k}"))),
                None => random_binning_encoder(n, ell, a.seed)?,
            }
        }
    };
    if let Some(path) = &a.out_table {
        write_table(&table, path)?;
    }
    print!("{}", check_stability(&table, a.d, a.dp)?);
    Ok(())
}

fn run_search(a: SearchArgs) -> Outcome {
    let budget = SearchBudget { max_nodes: a.budget };
    let out = find_stable_code(a.n, a.k, a.d, a.ell, a.dp, budget)?;
    let status = match out.status {
        SearchStatus::Found => "found",
        SearchStatus::Refuted => "refuted",
        SearchStatus::Unknown => "unknown",
    };
    println!("status: {status}");
    println!("nodes: {}", out.nodes);
    if let Some(table) = &out.table {
        match &a.out_table {
            Some(path) => write_table(table, path)?,
            None => table.write_to(std::io::stdout().lock())?,
        }
    }
    if out.status == SearchStatus::Unknown {
        return Err(Failure::Resource("search budget exhausted".into()));
    }
    Ok(())
}

fn run_sweep(a: SweepArgs) -> Outcome {
    let file = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(Error::from)?;
            toml::from_str::<SweepFile>(&text)
                .map_err(|e| Failure::Config(format!("{}: {e}", path.display())))?
        }
        None => SweepFile::default(),
    };
    let d1 = a.d1.or(file.d1).ok_or_else(|| Failure::Config("d1 is required".into()))?;
    let d2 = a.d2.or(file.d2).ok_or_else(|| Failure::Config("d2 is required".into()))?;
    let mut cfg = SweepConfig::new(d1, d2);
    if let Some(r) = a.p_range.or(file.p_range) {
        cfg.p_range = r;
    }
    if let Some(r) = a.r_range.or(file.r_range) {
        cfg.r_range = r;
    }
    if let Some(g) = a.grid.or(file.grid) {
        cfg.grid = g;
    }
    let grid = region_sweep(&cfg)?;
    for class in CellClass::ALL {
        println!("{}: {}", class.as_str(), grid.count(class));
    }
    if let Some(path) = a.out_csv.or(file.out_csv) {
        emit_csv(&grid, &path)?;
        println!("csv: {}", path.display());
    }
    if let Some(path) = a.out_svg.or(file.out_svg) {
        emit_svg(&grid, &path)?;
        println!("svg: {}", path.display());
    }
    Ok(())
}
