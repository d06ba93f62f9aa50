//! Benchmark harness: runs a list of algorithms over a list of instances and
//! writes one CSV row per `(instance, algorithm)` pair.
//!
//! Instances are evaluated in parallel; rows come out in instance order, then
//! algorithm order. Timing is only written when asked for, so the default
//! output is byte-for-byte reproducible.

use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;

use crate::graph::{Graph, VertexSet};
use crate::oracles::{exact_min_dominating_set, OracleOutcome};
use crate::solvers::AlgoSpec;

pub const DEFAULT_MAX_EXACT_N: usize = 30;

pub const CSV_HEADER: [&str; 13] = [
    "graph_name",
    "n",
    "m",
    "algorithm",
    "i_param",
    "ds_size",
    "opt_size",
    "ratio",
    "t_detected",
    "rounds",
    "elapsed_micros",
    "valid",
    "error",
];

/// A named graph, or the reason it could not be loaded.
#[derive(Clone, Debug)]
pub struct BenchInstance {
    pub name: String,
    pub graph: Result<Graph, String>,
}

impl BenchInstance {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        BenchInstance { name: name.into(), graph: Ok(graph) }
    }

    pub fn failed(name: impl Into<String>, error: impl Into<String>) -> Self {
        BenchInstance { name: name.into(), graph: Err(error.into()) }
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub algorithms: Vec<AlgoSpec>,
    pub with_exact: bool,
    pub max_exact_n: usize,
    pub timing: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { algorithms: Vec::new(), with_exact: false, max_exact_n: DEFAULT_MAX_EXACT_N, timing: false }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchRecord {
    pub graph_name: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub algorithm: String,
    pub i_param: Option<usize>,
    pub ds_size: Option<usize>,
    pub opt_size: Option<usize>,
    pub ratio: Option<f64>,
    pub t_detected: Option<usize>,
    pub rounds: Option<usize>,
    pub elapsed_micros: Option<u128>,
    pub valid: Option<bool>,
    pub error: Option<String>,
}

pub fn run_bench(instances: &[BenchInstance], config: &BenchConfig) -> Vec<BenchRecord> {
    instances.par_iter().map(|inst| bench_instance(inst, config)).flatten().collect()
}

fn bench_instance(inst: &BenchInstance, config: &BenchConfig) -> Vec<BenchRecord> {
    let g = match &inst.graph {
        Ok(g) => g,
        Err(e) => {
            return config
                .algorithms
                .iter()
                .map(|algo| BenchRecord {
                    graph_name: inst.name.clone(),
                    algorithm: algo.algorithm().to_string(),
                    i_param: algo.i(),
                    error: Some(e.clone()),
                    ..BenchRecord::default()
                })
                .collect();
        }
    };

    let all = VertexSet::full(g.n());
    let mut opt_error = None;
    let opt = if config.with_exact && g.n() <= config.max_exact_n {
        match exact_min_dominating_set(g, &all, None) {
            Ok(OracleOutcome::Optimal(r)) => Some(r.opt_size),
            Ok(OracleOutcome::ExceedsBudget { .. }) => None,
            Err(e) => {
                opt_error = Some(format!("oracle: {e}"));
                None
            }
        }
    } else {
        None
    };

    config
        .algorithms
        .iter()
        .map(|&algo| {
            let mut rec = BenchRecord {
                graph_name: inst.name.clone(),
                n: Some(g.n()),
                m: Some(g.m()),
                algorithm: algo.algorithm().to_string(),
                i_param: algo.i(),
                opt_size: opt,
                error: opt_error.clone(),
                ..BenchRecord::default()
            };
            let start = Instant::now();
            let solved = algo.solve(g, None);
            let elapsed = start.elapsed().as_micros();
            match solved {
                Ok(res) => {
                    rec.ds_size = Some(res.size());
                    rec.t_detected = res.t_detected;
                    rec.rounds = Some(res.trace.rounds.len());
                    rec.valid = Some(g.is_dominating(&res.dominating_set, &all).unwrap_or(false));
                    rec.ratio = opt.map(|k| if k == 0 { 1.0 } else { res.size() as f64 / k as f64 });
                    if config.timing {
                        rec.elapsed_micros = Some(elapsed);
                    }
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect()
}

fn opt_field<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

/// Writes the header and every record. Ratios use six decimals.
pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.graph_name.clone(),
            opt_field(&r.n),
            opt_field(&r.m),
            r.algorithm.clone(),
            opt_field(&r.i_param),
            opt_field(&r.ds_size),
            opt_field(&r.opt_size),
            r.ratio.map(|x| format!("{x:.6}")).unwrap_or_default(),
            opt_field(&r.t_detected),
            opt_field(&r.rounds),
            opt_field(&r.elapsed_micros),
            opt_field(&r.valid),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[BenchRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is UTF-8")
}
