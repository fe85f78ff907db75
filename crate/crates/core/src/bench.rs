//! Benchmark harness: runs (instance, strategy, seed) combinations, writes
//! rows as CSV, aggregates total speedups against the max-degree baseline
//! and derives performance-profile step functions.

use crate::branching::Strategy;
use crate::io::{parse_graph_file, Format};
use crate::solver::{solve, SolverConfig};
use std::error::Error;
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

pub const CSV_HEADER: &str = "instance,strategy,seed,mis_size,time_s,branches,timed_out";

#[derive(Debug, Clone)]
pub struct BenchTask {
    pub name: String,
    pub path: PathBuf,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub strategy: Strategy,
    pub seed: u64,
    pub mis_size: usize,
    pub time_s: f64,
    pub branches: u64,
    pub timed_out: bool,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{:.6},{},{}",
            self.instance,
            self.strategy,
            self.seed,
            self.mis_size,
            self.time_s,
            self.branches,
            self.timed_out
        )
    }
}

/// Runs every (instance, strategy, seed) combination. Instances that fail to
/// parse are recorded as timed-out rows of size zero. Rows come back in task
/// order regardless of the worker count.
pub fn run_bench(
    tasks: &[BenchTask],
    strategies: &[Strategy],
    seeds: &[u64],
    time_limit: f64,
    threads: usize,
) -> Vec<BenchRow> {
    let mut combos = Vec::new();
    for task in tasks {
        for &strategy in strategies {
            for &seed in seeds {
                combos.push((task.clone(), strategy, seed));
            }
        }
    }
    let results: Mutex<Vec<Option<BenchRow>>> = Mutex::new(vec![None; combos.len()]);
    let next = AtomicUsize::new(0);
    let workers = threads.max(1).min(combos.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= combos.len() {
                    break;
                }
                let (task, strategy, seed) = &combos[i];
                let row = run_one(task, *strategy, *seed, time_limit);
                results.lock().unwrap()[i] = Some(row);
            });
        }
    });
    results
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|r| r.expect("worker filled every slot"))
        .collect()
}

fn run_one(task: &BenchTask, strategy: Strategy, seed: u64, time_limit: f64) -> BenchRow {
    let mut graph = match parse_graph_file(&task.path, task.format) {
        Ok(g) => g,
        Err(err) => {
            eprintln!("bench: {}: {err}", task.path.display());
            return BenchRow {
                instance: task.name.clone(),
                strategy,
                seed,
                mis_size: 0,
                time_s: 0.0,
                branches: 0,
                timed_out: true,
            };
        }
    };
    let cfg = SolverConfig {
        strategy,
        seed,
        time_limit,
        ..SolverConfig::default()
    };
    let report = solve(&mut graph, &cfg);
    BenchRow {
        instance: task.name.clone(),
        strategy,
        seed,
        mis_size: report.mis_size,
        time_s: report.elapsed,
        branches: report.branches,
        timed_out: report.timed_out,
    }
}

pub fn write_rows_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

pub fn read_rows_csv(text: &str) -> Result<Vec<BenchRow>, Box<dyn Error>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != CSV_HEADER {
                return Err(format!("unexpected CSV header: '{line}'").into());
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 7 {
            return Err(format!("line {}: expected 7 fields", i + 1).into());
        }
        rows.push(BenchRow {
            instance: f[0].to_string(),
            strategy: f[1].parse()?,
            seed: f[2].parse()?,
            mis_size: f[3].parse()?,
            time_s: f[4].parse()?,
            branches: f[5].parse()?,
            timed_out: f[6].parse()?,
        });
    }
    Ok(rows)
}

/// (instance, strategy, mean time, solved).
type CollapsedRow = (String, Strategy, f64, bool);

/// Per-(instance, strategy) time after collapsing seeds: the mean, with
/// timed-out runs charged at the full limit. `solved` requires every seed to
/// finish.
fn collapse(rows: &[BenchRow], time_limit: f64) -> Vec<CollapsedRow> {
    let mut keys: Vec<(String, Strategy)> = rows
        .iter()
        .map(|r| (r.instance.clone(), r.strategy))
        .collect();
    keys.sort_by(|a, b| (&a.0, a.1.name()).cmp(&(&b.0, b.1.name())));
    keys.dedup();
    keys.into_iter()
        .map(|(inst, strat)| {
            let mine: Vec<&BenchRow> = rows
                .iter()
                .filter(|r| r.instance == inst && r.strategy == strat)
                .collect();
            let total: f64 = mine
                .iter()
                .map(|r| if r.timed_out { time_limit } else { r.time_s })
                .sum();
            let solved = mine.iter().all(|r| !r.timed_out);
            (inst, strat, total / mine.len() as f64, solved)
        })
        .collect()
}

/// Aggregate speedup of every strategy against the max-degree baseline:
/// total baseline time divided by total strategy time over the instances
/// solved by at least one of the two, timeouts charged at the limit.
pub fn speedup_aggregates(rows: &[BenchRow], time_limit: f64) -> Vec<(Strategy, f64)> {
    let collapsed = collapse(rows, time_limit);
    let baseline: Vec<&CollapsedRow> = collapsed
        .iter()
        .filter(|e| e.1 == Strategy::MaxDegree)
        .collect();
    if baseline.is_empty() {
        return Vec::new();
    }
    let mut strategies: Vec<Strategy> = collapsed.iter().map(|e| e.1).collect();
    strategies.sort_by_key(|s| Strategy::ALL.iter().position(|t| t == s));
    strategies.dedup();

    let mut out = Vec::new();
    for strategy in strategies {
        let mut base_total = 0.0;
        let mut strat_total = 0.0;
        let mut any = false;
        for b in &baseline {
            let Some(s) = collapsed
                .iter()
                .find(|e| e.0 == b.0 && e.1 == strategy)
            else {
                continue;
            };
            if !b.3 && !s.3 {
                continue; // unsolved by both: excluded from the aggregate
            }
            any = true;
            base_total += b.2;
            strat_total += s.2;
        }
        if any && strat_total > 0.0 {
            out.push((strategy, base_total / strat_total));
        } else if any {
            out.push((strategy, 1.0));
        }
    }
    out
}

/// Step function of one strategy's profile: (tau, fraction) points.
pub type ProfileCurve = Vec<(f64, f64)>;

/// One performance-profile step function per strategy: at each breakpoint
/// tau, the fraction of instances solved within tau times the per-instance
/// best. Timed-out pairs never count; instances finished by no strategy are
/// dropped.
pub fn performance_profile(
    rows: &[BenchRow],
    time_limit: f64,
) -> Result<Vec<(Strategy, ProfileCurve)>, Box<dyn Error>> {
    if rows.is_empty() {
        return Err("empty bench data".into());
    }
    let collapsed = collapse(rows, time_limit);
    let mut strategies: Vec<Strategy> = collapsed.iter().map(|e| e.1).collect();
    strategies.sort_by_key(|s| Strategy::ALL.iter().position(|t| t == s));
    strategies.dedup();
    let mut instances: Vec<String> = collapsed.iter().map(|e| e.0.clone()).collect();
    instances.sort();
    instances.dedup();

    // per-instance best finite time; instances no strategy finished drop out
    let mut best: Vec<(String, f64)> = Vec::new();
    for inst in &instances {
        let finite: Vec<f64> = collapsed
            .iter()
            .filter(|e| &e.0 == inst && e.3)
            .map(|e| e.2)
            .collect();
        if let Some(minimum) = finite.iter().copied().reduce(f64::min) {
            best.push((inst.clone(), minimum));
        }
    }
    if best.is_empty() {
        return Err("no instance was solved by any strategy".into());
    }

    // ratios define the breakpoints
    let mut ratios: Vec<(Strategy, String, f64)> = Vec::new();
    for e in &collapsed {
        if !e.3 {
            continue;
        }
        let Some(b) = best.iter().find(|(inst, _)| inst == &e.0) else {
            continue;
        };
        let ratio = if b.1 == 0.0 { 1.0 } else { e.2 / b.1 };
        ratios.push((e.1, e.0.clone(), ratio.max(1.0)));
    }
    let mut taus: Vec<f64> = ratios.iter().map(|r| r.2).collect();
    taus.push(1.0);
    taus.sort_by(|a, b| a.partial_cmp(b).unwrap());
    taus.dedup();

    let denom = best.len() as f64;
    let mut out = Vec::new();
    for strategy in strategies {
        let mut curve = Vec::new();
        for &tau in &taus {
            let hits = ratios
                .iter()
                .filter(|r| r.0 == strategy && r.2 <= tau)
                .count();
            curve.push((tau, hits as f64 / denom));
        }
        out.push((strategy, curve));
    }
    Ok(out)
}

pub fn write_profile_csv(profile: &[(Strategy, ProfileCurve)]) -> String {
    let mut out = String::from("strategy,tau,fraction\n");
    for (strategy, curve) in profile {
        for &(tau, fraction) in curve {
            out.push_str(&format!("{strategy},{tau},{fraction}\n"));
        }
    }
    out
}
