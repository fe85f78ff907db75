//! Command-line surface for the exact MIS solver.
//!
//! Exit codes: 0 success, 1 input/parse error, 2 timeout, 3 failed
//! verification.

use clap::{Parser, Subcommand};
use mis_core::bench::{
    performance_profile, read_rows_csv, run_bench, speedup_aggregates, write_profile_csv,
    write_rows_csv, BenchTask,
};
use mis_core::io::{detect_format, parse_graph_file, Format};
use mis_core::{brute_force_mis, is_independent_set, solve, Graph, SolverConfig, Strategy};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "mis",
    about = "Exact maximum independent set solver (branch-and-reduce)",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one instance and print a JSON result object on stdout.
    Solve {
        path: PathBuf,
        /// Input format: metis | dimacs | edgelist (default: by extension).
        #[arg(long)]
        format: Option<String>,
        /// max-degree | articulation | edge-cut | nested-dissection |
        /// twin | funnel | unconfined | packing | combined
        #[arg(long, default_value = "max-degree")]
        strategy: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Wall-clock limit in seconds (default: unlimited).
        #[arg(long)]
        time_limit: Option<f64>,
        /// Disable packing constraints.
        #[arg(long)]
        no_packing: bool,
        /// Disable the clique-cover bound.
        #[arg(long)]
        no_bounds: bool,
        /// Explore the excluding branch first.
        #[arg(long)]
        exclude_first: bool,
        /// Embed the solution vertex list in the JSON output.
        #[arg(long)]
        solution: bool,
        /// Write the solution as one vertex id per line (0-based).
        #[arg(long)]
        solution_out: Option<PathBuf>,
    },
    /// Check that a solution file is an independent set of the instance.
    Verify {
        path: PathBuf,
        /// File with whitespace-separated 0-based vertex ids.
        solution_file: PathBuf,
        #[arg(long)]
        format: Option<String>,
        /// Also check optimality against the brute-force oracle (n <= 30).
        #[arg(long)]
        optimal: bool,
    },
    /// Solve a list of instances under several strategies and seeds.
    Bench {
        /// Text file, one instance per line: "path [format]".
        list: PathBuf,
        /// Comma-separated strategy names, or "all".
        #[arg(long, default_value = "all")]
        strategies: String,
        /// Comma-separated seeds.
        #[arg(long, default_value = "42")]
        seeds: String,
        #[arg(long, default_value_t = 3600.0)]
        time_limit: f64,
        /// Output CSV for the per-run rows.
        #[arg(long, default_value = "bench.csv")]
        out: PathBuf,
        /// Worker threads (default: MIS_THREADS or 1).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Compute performance-profile points from a bench CSV.
    Profile {
        bench_csv: PathBuf,
        #[arg(long, default_value = "profile.csv")]
        out: PathBuf,
        /// Time limit the bench was run with (for seed averaging).
        #[arg(long, default_value_t = 3600.0)]
        time_limit: f64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Solve {
            path,
            format,
            strategy,
            seed,
            time_limit,
            no_packing,
            no_bounds,
            exclude_first,
            solution,
            solution_out,
        } => cmd_solve(
            &path,
            format.as_deref(),
            &strategy,
            seed,
            time_limit,
            no_packing,
            no_bounds,
            exclude_first,
            solution,
            solution_out.as_deref(),
        ),
        Cmd::Verify {
            path,
            solution_file,
            format,
            optimal,
        } => cmd_verify(&path, &solution_file, format.as_deref(), optimal),
        Cmd::Bench {
            list,
            strategies,
            seeds,
            time_limit,
            out,
            threads,
        } => cmd_bench(&list, &strategies, &seeds, time_limit, &out, threads),
        Cmd::Profile {
            bench_csv,
            out,
            time_limit,
        } => cmd_profile(&bench_csv, &out, time_limit),
    };
    ExitCode::from(code)
}

fn resolve_format(path: &Path, format: Option<&str>) -> Result<Format, String> {
    match format {
        Some(name) => name.parse(),
        None => Ok(detect_format(path)),
    }
}

fn load_graph(path: &Path, format: Option<&str>) -> Result<(Graph, Format), String> {
    let format = resolve_format(path, format)?;
    match parse_graph_file(path, format) {
        Ok(g) => Ok((g, format)),
        Err(err) => Err(format!("{}: {err}", path.display())),
    }
}

fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    path: &Path,
    format: Option<&str>,
    strategy: &str,
    seed: u64,
    time_limit: Option<f64>,
    no_packing: bool,
    no_bounds: bool,
    exclude_first: bool,
    print_solution: bool,
    solution_out: Option<&Path>,
) -> u8 {
    let strategy: Strategy = match strategy.parse() {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let (mut graph, _) = match load_graph(path, format) {
        Ok(g) => g,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let cfg = SolverConfig {
        strategy,
        seed,
        time_limit: time_limit.unwrap_or(f64::INFINITY),
        packing_enabled: !no_packing,
        bound_enabled: !no_bounds,
        include_first: !exclude_first,
        ..SolverConfig::default()
    };
    eprintln!(
        "solving {} (n={}, m={}) with {strategy}",
        instance_name(path),
        graph.n_original(),
        graph.edge_count()
    );
    let report = solve(&mut graph, &cfg);
    let mut obj = serde_json::json!({
        "instance": instance_name(path),
        "strategy": strategy.name(),
        "seed": seed,
        "n": graph.n_original(),
        "m": graph.edge_count(),
        "mis_size": report.mis_size,
        "time_s": report.elapsed,
        "branches": report.branches,
        "timed_out": report.timed_out,
    });
    if print_solution {
        obj["solution"] = serde_json::json!(report.solution);
    }
    println!("{obj}");
    if let Some(out) = solution_out {
        let text: String = report
            .solution
            .iter()
            .map(|v| format!("{v}\n"))
            .collect();
        if let Err(err) = fs::write(out, text) {
            eprintln!("error: writing {}: {err}", out.display());
            return 1;
        }
    }
    if report.timed_out {
        2
    } else {
        0
    }
}

fn cmd_verify(path: &Path, solution_file: &Path, format: Option<&str>, optimal: bool) -> u8 {
    let (graph, _) = match load_graph(path, format) {
        Ok(g) => g,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let text = match fs::read_to_string(solution_file) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {}: {err}", solution_file.display());
            return 1;
        }
    };
    let mut ids = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        for tok in line.split_whitespace() {
            match tok.parse::<usize>() {
                Ok(v) if v < graph.n_original() => ids.push(v),
                Ok(v) => {
                    eprintln!("error: vertex {v} out of range");
                    return 1;
                }
                Err(_) => {
                    eprintln!("error: bad vertex id '{tok}'");
                    return 1;
                }
            }
        }
    }
    ids.sort_unstable();
    ids.dedup();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if graph.has_edge(u, v) {
                println!("violating edge: {u} {v}");
                return 3;
            }
        }
    }
    println!("independent set of size {}", ids.len());
    if optimal {
        match brute_force_mis(&graph) {
            Ok(result) => {
                if ids.len() < result.alpha {
                    println!("not optimal: alpha = {}", result.alpha);
                    return 3;
                }
                println!("optimal (alpha = {})", result.alpha);
            }
            Err(err) => {
                eprintln!("error: {err}");
                return 1;
            }
        }
    }
    debug_assert!(is_independent_set(&graph, &ids));
    0
}

fn parse_task_list(list: &Path) -> Result<Vec<BenchTask>, String> {
    let text =
        fs::read_to_string(list).map_err(|err| format!("{}: {err}", list.display()))?;
    let base = list.parent().unwrap_or(Path::new(""));
    let mut tasks = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_whitespace();
        let raw = toks.next().unwrap();
        let path = {
            let p = PathBuf::from(raw);
            if p.is_absolute() {
                p
            } else {
                base.join(p)
            }
        };
        let format = match toks.next() {
            Some(name) => name
                .parse()
                .map_err(|e| format!("line {}: {e}", i + 1))?,
            None => detect_format(&path),
        };
        if toks.next().is_some() {
            return Err(format!("line {}: expected 'path [format]'", i + 1));
        }
        tasks.push(BenchTask {
            name: instance_name(&path),
            path,
            format,
        });
    }
    if tasks.is_empty() {
        return Err("no instances in list".into());
    }
    Ok(tasks)
}

fn parse_strategies(arg: &str) -> Result<Vec<Strategy>, String> {
    if arg == "all" {
        return Ok(Strategy::ALL.to_vec());
    }
    arg.split(',').map(|s| s.trim().parse()).collect()
}

fn cmd_bench(
    list: &Path,
    strategies: &str,
    seeds: &str,
    time_limit: f64,
    out: &Path,
    threads: Option<usize>,
) -> u8 {
    let tasks = match parse_task_list(list) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let strategies = match parse_strategies(strategies) {
        Ok(s) => s,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let seeds: Vec<u64> = match seeds
        .split(',')
        .map(|s| s.trim().parse::<u64>())
        .collect::<Result<_, _>>()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("error: seeds must be comma-separated integers");
            return 1;
        }
    };
    let threads = threads
        .or_else(|| {
            std::env::var("MIS_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1);
    eprintln!(
        "bench: {} instances x {} strategies x {} seeds on {threads} thread(s)",
        tasks.len(),
        strategies.len(),
        seeds.len()
    );
    let rows = run_bench(&tasks, &strategies, &seeds, time_limit, threads);
    if let Err(err) = fs::write(out, write_rows_csv(&rows)) {
        eprintln!("error: writing {}: {err}", out.display());
        return 1;
    }
    println!("strategy,s_total");
    for (strategy, speedup) in speedup_aggregates(&rows, time_limit) {
        println!("{strategy},{speedup:.4}");
    }
    eprintln!("rows written to {}", out.display());
    0
}

fn cmd_profile(bench_csv: &Path, out: &Path, time_limit: f64) -> u8 {
    let text = match fs::read_to_string(bench_csv) {
        Ok(t) => t,
        Err(err) => {
            eprintln!("error: {}: {err}", bench_csv.display());
            return 1;
        }
    };
    let rows = match read_rows_csv(&text) {
        Ok(r) => r,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    let profile = match performance_profile(&rows, time_limit) {
        Ok(p) => p,
        Err(err) => {
            eprintln!("error: {err}");
            return 1;
        }
    };
    if let Err(err) = fs::write(out, write_profile_csv(&profile)) {
        eprintln!("error: writing {}: {err}", out.display());
        return 1;
    }
    eprintln!("profile written to {}", out.display());
    0
}
