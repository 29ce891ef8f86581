use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use troplift::gen::{gen_member, gen_random, gen_random_point, GenConfig};
use troplift::lift::decide;
use troplift::oracle::{member_oracle, DEFAULT_MAX_COLS};
use troplift::stats::{loglog_slope, median};

use crate::commands::{write_atomic, Failure};

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Column counts for decide; m = n / 2
    #[arg(long, value_delimiter = ',', default_value = "25,50,100,200")]
    pub sizes: Vec<usize>,
    /// Extra small sizes where the oracle also runs
    #[arg(long, value_delimiter = ',', default_value = "2,4,6,8,10,12")]
    pub oracle_sizes: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Instances per size; the median time is reported
    #[arg(long, default_value_t = 3)]
    pub reps: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_COLS)]
    pub max_cols: usize,
    /// Planted members instead of random instances and points
    #[arg(long)]
    pub member: bool,
    #[arg(short = 'o', long = "output")]
    pub output: PathBuf,
}

pub fn config(seed: u64, n: usize) -> GenConfig {
    GenConfig {
        terms_per_entry: 3,
        exp_lo: -5,
        exp_hi: 5,
        ..GenConfig::new(seed, (n / 2).max(1), n)
    }
}

struct Row {
    n: usize,
    m: usize,
    decide_ms: f64,
    oracle_ms: Option<f64>,
}

fn measure(args: &BenchArgs, n: usize) -> Result<Row, Failure> {
    let mut decide_times = Vec::new();
    let mut oracle_times = Vec::new();
    let run_oracle = n + 1 <= args.max_cols;
    for rep in 0..args.reps {
        let cfg = config(args.seed.wrapping_add(rep), n);
        let (inst, v) = if args.member {
            let (inst, v, _) = gen_member(&cfg);
            (inst, v)
        } else {
            (gen_random(&cfg), gen_random_point(&cfg))
        };
        let start = Instant::now();
        let result = decide(&inst, &v)?;
        decide_times.push(start.elapsed().as_secs_f64() * 1e3);
        if args.member && !result.is_member() {
            return Err(Failure::Internal(format!("planted instance n = {n}, seed = {} rejected", cfg.seed)));
        }
        if run_oracle {
            let start = Instant::now();
            let member = member_oracle(&inst, &v, args.max_cols).map_err(|e| Failure::Internal(e.to_string()))?;
            oracle_times.push(start.elapsed().as_secs_f64() * 1e3);
            if member != result.is_member() {
                return Err(Failure::Internal(format!("oracle disagrees at n = {n}, seed = {}", cfg.seed)));
            }
        }
    }
    Ok(Row {
        n,
        m: (n / 2).max(1),
        decide_ms: median(&decide_times),
        oracle_ms: run_oracle.then(|| median(&oracle_times)),
    })
}

pub fn run(args: &BenchArgs) -> Result<u8, Failure> {
    if args.reps == 0 {
        return Err(Failure::Input("--reps must be positive".into()));
    }
    let mut sizes: Vec<usize> = args.sizes.iter().chain(&args.oracle_sizes).copied().filter(|&n| n >= 2).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let mut rows = Vec::new();
    for &n in &sizes {
        let row = measure(args, n)?;
        eprintln!(
            "n = {:4}  m = {:4}  decide {:10.1} ms  oracle {}",
            row.n,
            row.m,
            row.decide_ms,
            row.oracle_ms.map_or("skipped".to_string(), |t| format!("{t:.1} ms"))
        );
        rows.push(row);
    }
    let mut out = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Failure::Internal(e.to_string());
    out.write_record(["n", "m", "decide_ms", "oracle_ms"]).map_err(csv_err)?;
    for r in &rows {
        out.write_record([
            r.n.to_string(),
            r.m.to_string(),
            format!("{:.3}", r.decide_ms),
            r.oracle_ms.map_or("skipped".to_string(), |t| format!("{t:.3}")),
        ])
        .map_err(csv_err)?;
    }
    let bytes = out.into_inner().map_err(|e| Failure::Internal(e.to_string()))?;
    write_atomic(&args.output, &String::from_utf8(bytes).expect("csv is utf-8"))?;
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| args.sizes.contains(&r.n))
        .map(|r| (r.n as f64, r.decide_ms.max(1e-3)))
        .collect();
    if fit.len() >= 2 {
        eprintln!("log-log slope of decide time over --sizes: {:.2}", loglog_slope(&fit));
    }
    Ok(0)
}
