//! Command-line front end: generate hexagonal grid graph files, compute
//! determinants by any of the three methods, print closed-form values and
//! reduction traces, and sweep-verify that all methods agree.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 enumeration cap exceeded without `--force`.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hexdet_core::det::{bareiss_det, sachs_det_with_cap, DEFAULT_ENUM_CAP};
use hexdet_core::format::{
    find_hexgrid_meta, hexgrid_meta_line, parse_graph, serialize_graph, serialize_trace,
};
use hexdet_core::hexgrid::{build_grid, closed_form, reduce_det, GridSpec};
use hexdet_core::{rational, Graph, Rational};

#[derive(Parser)]
#[command(
    name = "hexdet",
    version,
    about = "Exact determinants of weighted graphs and hexagonal grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Hexagons along the first side
    #[arg(long)]
    n: u64,
    /// Hexagons along the second side
    #[arg(long)]
    m: u64,
    /// First-row weight parameter (0 gives the unweighted grid)
    #[arg(long, default_value_t = 0)]
    x: u64,
}

impl SpecArgs {
    fn spec(&self) -> Result<GridSpec, Failure> {
        GridSpec::new(self.n, self.m, self.x).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a grid as a canonical graph file (stdout by default)
    Generate {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute the determinant of a graph file or a grid
    Det {
        /// Graph file; `-` or no file reads stdin
        file: Option<PathBuf>,
        /// Grid parameters instead of a file
        #[arg(long, value_name = "N,M[,X]", conflicts_with = "file")]
        grid: Option<String>,
        #[arg(long, value_enum, default_value_t = Method::Bareiss)]
        method: Method,
        /// Vertex cap for `--method sachs` (overrides HEXDET_ENUM_CAP)
        #[arg(long)]
        cap: Option<usize>,
        /// Enumerate past the cap anyway
        #[arg(long)]
        force: bool,
    },
    /// Print the closed-form grid determinant
    Formula {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Print the reduction trace for a grid
    Trace {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output file
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Sweep (n, m, x) and check that all methods print the same value
    Verify {
        #[arg(long)]
        max_n: u64,
        #[arg(long)]
        max_m: u64,
        #[arg(long, default_value_t = 0)]
        max_x: u64,
        /// Worker threads for the sweep (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        /// Vertex cap above which the enumeration method is skipped
        #[arg(long)]
        cap: Option<usize>,
        /// Corrupt one value to exercise the failure path
        #[arg(long, hide = true)]
        inject_fail: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Fraction-free elimination on the adjacency matrix
    Bareiss,
    /// Basic-figure (Sachs subgraph) enumeration
    Sachs,
    /// Determinant-preserving grid reduction
    Reduce,
}

enum Failure {
    /// Bad input: flags, files, malformed graphs. Exit 2.
    Usage(String),
    /// Enumeration refused without `--force`. Exit 3.
    CapExceeded(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(Failure::CapExceeded(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, Failure> {
    match command {
        Command::Generate { spec, output } => cmd_generate(&spec.spec()?, output),
        Command::Det {
            file,
            grid,
            method,
            cap,
            force,
        } => cmd_det(file, grid, method, cap, force),
        Command::Formula { spec } => {
            let value = closed_form(&spec.spec()?).map_err(|e| Failure::Usage(e.to_string()))?;
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Trace { spec, output } => cmd_trace(&spec.spec()?, output),
        Command::Verify {
            max_n,
            max_m,
            max_x,
            jobs,
            cap,
            inject_fail,
        } => cmd_verify(max_n, max_m, max_x, jobs, effective_cap(cap), inject_fail),
    }
}

/// Cap precedence: `--cap` flag, then `HEXDET_ENUM_CAP`, then the default.
fn effective_cap(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("HEXDET_ENUM_CAP")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_ENUM_CAP)
}

fn write_output(output: Option<PathBuf>, text: &str) -> Result<ExitCode, Failure> {
    match output {
        Some(path) => fs::write(&path, text)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_generate(spec: &GridSpec, output: Option<PathBuf>) -> Result<ExitCode, Failure> {
    let (graph, _) = build_grid(spec).map_err(|e| Failure::Usage(e.to_string()))?;
    let text = format!("{}{}", hexgrid_meta_line(spec), serialize_graph(&graph));
    write_output(output, &text)
}

fn cmd_trace(spec: &GridSpec, output: Option<PathBuf>) -> Result<ExitCode, Failure> {
    let (_, trace) = reduce_det(spec).map_err(|e| Failure::Usage(e.to_string()))?;
    write_output(output, &serialize_trace(&trace))
}

/// Parses `N,M` or `N,M,X`.
fn parse_grid_arg(text: &str) -> Result<GridSpec, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() < 2 || parts.len() > 3 {
        return Err(Failure::Usage(format!(
            "--grid expects N,M or N,M,X, got `{text}`"
        )));
    }
    let mut numbers = [0u64; 3];
    for (slot, part) in numbers.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad grid parameter `{part}`")))?;
    }
    GridSpec::new(numbers[0], numbers[1], numbers[2]).map_err(|e| Failure::Usage(e.to_string()))
}

fn read_input(file: Option<&PathBuf>) -> Result<String, Failure> {
    match file {
        Some(path) if path.as_os_str() != "-" => fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
            Ok(text)
        }
    }
}

fn cmd_det(
    file: Option<PathBuf>,
    grid: Option<String>,
    method: Method,
    cap: Option<usize>,
    force: bool,
) -> Result<ExitCode, Failure> {
    let cap = effective_cap(cap);
    let (graph, grid_spec, from_file) = match grid {
        Some(text) => {
            let spec = parse_grid_arg(&text)?;
            let (graph, _) = build_grid(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            (graph, Some(spec), false)
        }
        None => {
            let text = read_input(file.as_ref())?;
            let graph = parse_graph(&text).map_err(|e| Failure::Usage(e.to_string()))?;
            let spec = find_hexgrid_meta(&text);
            (graph, spec, true)
        }
    };
    let value = match method {
        Method::Bareiss => bareiss_det(&graph.adjacency_matrix())
            .map_err(|e| Failure::Usage(e.to_string()))?,
        Method::Sachs => sachs(&graph, cap, force)?,
        Method::Reduce => {
            let spec = grid_spec.ok_or_else(|| {
                Failure::Usage(
                    "--method reduce needs --grid or a file with a `# hexgrid` metadata comment"
                        .into(),
                )
            })?;
            if from_file {
                let (expected, _) =
                    build_grid(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
                if expected != graph {
                    return Err(Failure::Usage(format!(
                        "graph does not match its metadata {spec}"
                    )));
                }
            }
            reduce_det(&spec)
                .map_err(|e| Failure::Usage(e.to_string()))?
                .0
        }
    };
    println!("{value}");
    Ok(ExitCode::SUCCESS)
}

fn sachs(graph: &Graph, cap: usize, force: bool) -> Result<Rational, Failure> {
    if graph.vertex_count() > cap && !force {
        return Err(Failure::CapExceeded(format!(
            "graph has {} vertices, enumeration cap is {cap} (pass --force to enumerate anyway)",
            graph.vertex_count()
        )));
    }
    sachs_det_with_cap(graph, graph.vertex_count().max(cap))
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn cmd_verify(
    max_n: u64,
    max_m: u64,
    max_x: u64,
    jobs: Option<usize>,
    cap: usize,
    inject_fail: bool,
) -> Result<ExitCode, Failure> {
    if max_n == 0 || max_m == 0 {
        return Err(Failure::Usage("--max-n and --max-m must be at least 1".into()));
    }
    // Row-major order keeps sweep output diffable.
    let mut tuples = Vec::new();
    for n in 1..=max_n {
        for m in 1..=max_m {
            for x in 0..=max_x {
                tuples.push(GridSpec { n, m, x });
            }
        }
    }
    let jobs = jobs
        .unwrap_or_else(|| {
            thread::available_parallelism()
                .map(|p| p.get())
                .unwrap_or(1)
        })
        .max(1);
    let chunk_size = tuples.len().div_ceil(jobs);
    let mut lines: Vec<(String, bool)> = Vec::with_capacity(tuples.len());
    thread::scope(|scope| {
        let mut handles = Vec::new();
        for (chunk_index, chunk) in tuples.chunks(chunk_size).enumerate() {
            handles.push(scope.spawn(move || {
                chunk
                    .iter()
                    .enumerate()
                    .map(|(offset, spec)| {
                        let corrupt = inject_fail && chunk_index == 0 && offset == 0;
                        verify_line(spec, cap, corrupt)
                    })
                    .collect::<Vec<_>>()
            }));
        }
        for handle in handles {
            lines.extend(handle.join().expect("verify worker panicked"));
        }
    });
    let mut all_ok = true;
    for (line, ok) in &lines {
        println!("{line}");
        all_ok &= ok;
    }
    Ok(if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn verify_line(spec: &GridSpec, cap: usize, corrupt: bool) -> (String, bool) {
    let mut formula = closed_form(spec).expect("spec validated");
    if corrupt {
        formula += rational(1);
    }
    let (graph, _) = build_grid(spec).expect("spec validated");
    let elimination = bareiss_det(&graph.adjacency_matrix()).expect("square matrix");
    let reduction = reduce_det(spec).expect("grid shape holds").0;
    let mut ok = formula == elimination && elimination == reduction;
    let sachs_text = if graph.vertex_count() <= cap {
        let value = sachs_det_with_cap(&graph, cap).expect("under cap");
        ok &= value == elimination;
        value.to_string()
    } else {
        "skipped".to_string()
    };
    let line = format!(
        "n={} m={} x={} formula={formula} bareiss={elimination} sachs={sachs_text} reduce={reduction} {}",
        spec.n,
        spec.m,
        spec.x,
        if ok { "OK" } else { "FAIL" }
    );
    (line, ok)
}
