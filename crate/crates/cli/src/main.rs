//! `rbp`: solve, generate, validate, render and benchmark RBP spanning graph instances.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rbp::approx::{approx_a, approx_union, ratio_report, Reference};
use rbp::bench::{bench_circle, bench_exact, bench_line, format_table};
use rbp::circle::solve_circle_within;
use rbp::exact::solve_exact;
use rbp::generators::GenSpec;
use rbp::geometry::{collinearity_within, concyclicity_within};
use rbp::graph::{is_rbp_spanning, side_components, solution_stats};
use rbp::io::{parse_edge_list, parse_instance, serialize_with_comments, write_edge_list};
use rbp::line::solve_line_within;
use rbp::oracle::{oracle_forest, oracle_subsets};
use rbp::render::render_svg;
use rbp::{allowed_edges, EdgeSet, Instance, Side, Solution, SolverTag};

const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Largest instance `--algo auto` hands to the exact solver.
const AUTO_EXACT_MAX: usize = 20;

#[derive(Parser)]
#[command(name = "rbp", version, about = "Minimum red-blue-purple spanning graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the stats block.
    Solve {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = Algo::Auto)]
        algo: Algo,
        /// Write the edge list here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also draw the solution as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Relative tolerance for the line/circle certificates and ratio checks.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        /// Report the ratio against this reference (approximations only).
        #[arg(long, value_enum)]
        reference: Option<RefSource>,
        /// Edge list used with `--reference file`.
        #[arg(long)]
        reference_file: Option<PathBuf>,
    },
    /// Generate an instance: random, line-sorted, circle-arcs, hexagon, steiner, martini.
    Gen {
        name: String,
        /// Generator parameter as key=value; repeatable.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the construction's feasible solution, if it has one, as an edge list.
        #[arg(long)]
        reference_out: Option<PathBuf>,
    },
    /// Check an instance file and optionally an edge list against it.
    Validate {
        instance: PathBuf,
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Draw an instance and edge list as SVG.
    Render {
        instance: PathBuf,
        edges: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the solvers on generated inputs (medians).
    Bench {
        #[arg(long, value_enum, default_value_t = BenchTarget::All)]
        solver: BenchTarget,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Sizes (n, or k for the circle solver); defaults depend on the solver.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Exact,
    Line,
    Circle,
    ApproxUnion,
    ApproxA,
    OracleForest,
    OracleSubsets,
    Auto,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RefSource {
    Exact,
    Oracle,
    File,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchTarget {
    Line,
    Circle,
    Exact,
    All,
}

/// A failed command with its exit status.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn precondition(msg: impl ToString) -> Self {
        Failure { code: 2, msg: msg.to_string() }
    }

    fn invariant(msg: impl ToString) -> Self {
        Failure { code: 3, msg: msg.to_string() }
    }
}

impl From<rbp::Error> for Failure {
    fn from(e: rbp::Error) -> Self {
        Failure::precondition(e)
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    parse_instance(&read(path)?).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))
}

fn load_edges(instance: &Instance, path: &Path) -> Result<EdgeSet, Failure> {
    let pairs = parse_edge_list(&read(path)?).map_err(|e| Failure::precondition(format!("{}: {e}", path.display())))?;
    Ok(EdgeSet::from_pairs(instance, &pairs)?)
}

fn pick_auto(instance: &Instance, tolerance: f64) -> Algo {
    if let Ok(fit) = collinearity_within(instance, tolerance) {
        eprintln!("auto: collinear (residual {:.3e}), using the line solver", fit.residual);
        Algo::Line
    } else if let Ok(fit) = concyclicity_within(instance, tolerance) {
        eprintln!("auto: concyclic (residual {:.3e}), using the circle solver", fit.residual);
        Algo::Circle
    } else if instance.len() <= AUTO_EXACT_MAX {
        Algo::Exact
    } else {
        eprintln!("warning: n = {} exceeds {AUTO_EXACT_MAX}; falling back to approx-a, which is not optimal", instance.len());
        Algo::ApproxA
    }
}

fn run_algo(instance: &Instance, algo: Algo, tolerance: f64) -> Result<Solution, Failure> {
    Ok(match algo {
        Algo::Exact => solve_exact(instance),
        Algo::Line => solve_line_within(instance, tolerance)?,
        Algo::Circle => solve_circle_within(instance, tolerance)?,
        Algo::ApproxUnion => approx_union(instance),
        Algo::ApproxA => approx_a(instance),
        Algo::OracleForest => oracle_forest(instance)?,
        Algo::OracleSubsets => oracle_subsets(instance)?,
        Algo::Auto => unreachable!("resolved before dispatch"),
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &Path,
    algo: Algo,
    out: Option<&Path>,
    svg: Option<&Path>,
    tolerance: f64,
    reference: Option<RefSource>,
    reference_file: Option<&Path>,
) -> CmdResult {
    let instance = load_instance(path)?;
    let algo = if algo == Algo::Auto { pick_auto(&instance, tolerance) } else { algo };
    let solution = run_algo(&instance, algo, tolerance)?;
    if !is_rbp_spanning(&instance, solution.edges.edges()) {
        return Err(Failure::invariant(format!("{} produced a graph that is not RBP-spanning", solution.solver.name())));
    }

    let edges = write_edge_list(&solution.edges);
    let mut report = solution.stats_block();
    if let Some(source) = reference {
        let reference = match source {
            RefSource::Exact => Reference::Certified(solve_exact(&instance).weight),
            RefSource::Oracle => Reference::Certified(oracle_forest(&instance)?.weight),
            RefSource::File => {
                let file = reference_file.ok_or_else(|| Failure::precondition("--reference file needs --reference-file"))?;
                Reference::Constructed(load_edges(&instance, file)?)
            }
        };
        let r = ratio_report(&instance, &solution, reference)?;
        report.push_str(&format!("reference_weight {:?}\nratio {:.12}\n", r.reference, r.ratio));
        if let Some(g) = r.guarantee {
            report.push_str(&format!("guarantee {g}\nviolation {}\n", r.violation));
        }
    }
    match out {
        Some(p) => write(p, &edges)?,
        None => println!("{edges}"),
    }
    print!("{report}");
    if let Some(p) = svg {
        write(p, &render_svg(&instance, &solution.edges))?;
    }
    Ok(())
}

fn cmd_gen(name: &str, params: &[String], seed: u64, out: Option<&Path>, reference_out: Option<&Path>) -> CmdResult {
    let mut spec = GenSpec::new(name, seed);
    for p in params {
        let (k, v) = p.split_once('=').ok_or_else(|| Failure::precondition(format!("parameter {p:?} is not KEY=VALUE")))?;
        spec = spec.param(k.trim(), v.trim());
    }
    let generated = spec.generate()?;
    let text = serialize_with_comments(&generated.instance, &generated.comments);
    match out {
        Some(p) => write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = reference_out {
        let edges = generated.reference.ok_or_else(|| Failure::precondition(format!("{name} has no reference solution")))?;
        write(p, &write_edge_list(&edges))?;
    }
    Ok(())
}

fn cmd_validate(path: &Path, edges: Option<&Path>, tolerance: f64) -> CmdResult {
    let instance = load_instance(path)?;
    println!("points {}", instance.len());
    println!("red {}\nblue {}\npurple {}", instance.red().len(), instance.blue().len(), instance.k());
    println!("allowed_edges {}", allowed_edges(&instance).len());
    println!("distance_ties {}", instance.distance_ties());
    match collinearity_within(&instance, tolerance) {
        Ok(fit) => println!("collinear yes residual {:.3e}", fit.residual),
        Err(e) => println!("collinear no ({e})"),
    }
    match concyclicity_within(&instance, tolerance) {
        Ok(fit) => println!("concyclic yes residual {:.3e}", fit.residual),
        Err(e) => println!("concyclic no ({e})"),
    }
    if let Some(p) = edges {
        let set = load_edges(&instance, p)?;
        let red = side_components(&instance, set.edges(), Side::Red);
        let blue = side_components(&instance, set.edges(), Side::Blue);
        let stats = solution_stats(&instance, set, SolverTag::Constructed);
        print!("{}", stats.stats_block());
        if red > 1 || blue > 1 {
            return Err(Failure::precondition(format!(
                "edge list is not RBP-spanning: red side has {red} components, blue side {blue}"
            )));
        }
        println!("rbp_spanning yes");
    }
    Ok(())
}

fn cmd_render(path: &Path, edges: &Path, out: Option<&Path>) -> CmdResult {
    let instance = load_instance(path)?;
    let set = load_edges(&instance, edges)?;
    let svg = render_svg(&instance, &set);
    match out {
        Some(p) => write(p, &svg),
        None => {
            print!("{svg}");
            Ok(())
        }
    }
}

fn cmd_bench(target: BenchTarget, reps: usize, seed: u64, sizes: &[usize]) -> CmdResult {
    if reps == 0 {
        return Err(Failure::precondition("--reps must be positive"));
    }
    let pick = |default: &[usize]| if sizes.is_empty() { default.to_vec() } else { sizes.to_vec() };
    let mut timings = Vec::new();
    if matches!(target, BenchTarget::Line | BenchTarget::All) {
        timings.extend(bench_line(&pick(&[10_000, 100_000, 1_000_000]), reps, seed));
    }
    if matches!(target, BenchTarget::Circle | BenchTarget::All) {
        timings.extend(bench_circle(&pick(&[50, 100, 200]), 2, reps, seed));
    }
    if matches!(target, BenchTarget::Exact | BenchTarget::All) {
        timings.extend(bench_exact(&pick(&[8, 10, 12, 14]), reps, seed));
    }
    print!("{}", format_table(&timings));
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Solve { instance, algo, out, svg, tolerance, reference, reference_file } => cmd_solve(
            instance,
            *algo,
            out.as_deref(),
            svg.as_deref(),
            *tolerance,
            *reference,
            reference_file.as_deref(),
        ),
        Command::Gen { name, params, seed, out, reference_out } => {
            cmd_gen(name, params, *seed, out.as_deref(), reference_out.as_deref())
        }
        Command::Validate { instance, edges, tolerance } => cmd_validate(instance, edges.as_deref(), *tolerance),
        Command::Render { instance, edges, out } => cmd_render(instance, edges, out.as_deref()),
        Command::Bench { solver, reps, seed, sizes } => cmd_bench(*solver, *reps, *seed, sizes),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
