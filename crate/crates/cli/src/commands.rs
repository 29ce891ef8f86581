use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use troplift::format::{
    instance_to_json, parse_instance, parse_point, parse_witness, point_to_json, render_expansion, to_pretty_json,
    witness_to_json, FormatError, ResultFile,
};
use troplift::gen::{gen_member, gen_random, gen_random_point, GenConfig};
use troplift::instance::{Instance, TropPoint};
use troplift::lift::{decide, verify_witness, LiftError, LiftResult};
use troplift::oracle::{member_oracle, OracleError, DEFAULT_MAX_COLS};

use crate::bench;

pub const EXIT_MEMBER: u8 = 0;
pub const EXIT_NOT_MEMBER: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "troplift", version, about = "Exact membership test and lifting for tropical linear varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Inputs {
    /// Instance file
    #[arg(short = 'i', long = "instance")]
    pub instance: PathBuf,
    /// Point file
    #[arg(short = 'p', long = "point")]
    pub point: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide membership and print a result with a witness
    #[command(alias = "lift")]
    Check {
        #[command(flatten)]
        inputs: Inputs,
        /// Also print each witness coordinate expanded below t^E
        #[arg(long, value_name = "E", allow_hyphen_values = true)]
        expand: Option<i64>,
    },
    /// Check a witness exactly; exit 0 iff it is valid
    Verify {
        #[command(flatten)]
        inputs: Inputs,
        /// Result or witness file
        #[arg(short = 'w', long = "witness")]
        witness: PathBuf,
    },
    /// Brute-force circuit verdict for small instances
    Oracle {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = DEFAULT_MAX_COLS)]
        max_cols: usize,
    },
    /// Generate a seeded instance and point
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        /// Plant a solution and emit its valuation as the point
        #[arg(long)]
        member: bool,
        #[arg(long, default_value_t = 2)]
        terms: usize,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        exp_lo: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        exp_hi: i64,
        #[arg(long, default_value_t = 1)]
        grid_den: u64,
        #[arg(long, default_value_t = 5)]
        coeff_bound: u32,
        /// Instance output file (standard output when absent)
        #[arg(short = 'i', long = "instance")]
        instance: Option<PathBuf>,
        /// Point output file
        #[arg(short = 'p', long = "point")]
        point: Option<PathBuf>,
    },
    /// Time decide (and the oracle where feasible) over a size sweep
    Bench(bench::BenchArgs),
}

pub enum Failure {
    /// Malformed or unusable input; exit 2.
    Input(String),
    /// Defect; exit 1.
    Internal(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<LiftError> for Failure {
    fn from(e: LiftError) -> Self {
        match e {
            LiftError::Input(e) => Failure::Input(e.to_string()),
            LiftError::Internal(msg) => Failure::Internal(msg),
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T, FormatError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(inputs: &Inputs) -> Result<(Instance, TropPoint), Failure> {
    let inst = with_path(&inputs.instance, parse_instance(&read(&inputs.instance)?))?;
    let point = with_path(&inputs.point, parse_point(&read(&inputs.point)?))?;
    point
        .check_len(inst.n())
        .map_err(|e| Failure::Input(format!("{}: {e}", inputs.point.display())))?;
    Ok((inst, point))
}

/// Writes `text` to `path` through a sibling temporary file.
pub fn write_atomic(path: &Path, text: &str) -> Result<(), Failure> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text)
        .and_then(|_| fs::rename(&tmp, path))
        .map_err(|e| Failure::Internal(format!("{}: {e}", path.display())))
}

fn print(text: &str) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| Failure::Internal(format!("stdout: {e}")))
}

fn ms(since: Instant) -> f64 {
    since.elapsed().as_secs_f64() * 1e3
}

pub fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Check { inputs, expand } => check(&inputs, expand),
        Command::Verify { inputs, witness } => verify(&inputs, &witness),
        Command::Oracle { inputs, max_cols } => oracle(&inputs, max_cols),
        Command::Gen {
            seed,
            m,
            n,
            member,
            terms,
            exp_lo,
            exp_hi,
            grid_den,
            coeff_bound,
            instance,
            point,
        } => {
            let cfg = GenConfig {
                seed,
                m,
                n,
                terms_per_entry: terms,
                exp_lo,
                exp_hi,
                grid_den,
                coeff_bound,
            };
            cfg.validate().map_err(Failure::Input)?;
            let (inst, v) = if member {
                let (inst, v, _) = gen_member(&cfg);
                (inst, v)
            } else {
                (gen_random(&cfg), gen_random_point(&cfg))
            };
            let inst_text = to_pretty_json(&instance_to_json(&inst));
            match instance {
                Some(path) => write_atomic(&path, &inst_text)?,
                None => print(&inst_text)?,
            }
            if let Some(path) = point {
                write_atomic(&path, &to_pretty_json(&point_to_json(&v)))?;
            }
            Ok(0)
        }
        Command::Bench(args) => bench::run(&args),
    }
}

fn check(inputs: &Inputs, expand: Option<i64>) -> Result<u8, Failure> {
    let start = Instant::now();
    let (inst, v) = load(inputs)?;
    let parse_ms = ms(start);
    let t = Instant::now();
    let result = decide(&inst, &v)?;
    let decide_ms = ms(t);
    let mut timings = BTreeMap::new();
    timings.insert("parse".to_string(), parse_ms);
    timings.insert("decide".to_string(), decide_ms);
    timings.insert("total".to_string(), ms(start));
    let (file, code) = match result {
        LiftResult::Member { witness } => (
            ResultFile {
                verdict: "member".into(),
                expansion: expand.map(|e| witness.iter().map(|x| render_expansion(x, e)).collect()),
                witness: Some(witness_to_json(&witness)),
                reason: None,
                detail: None,
                timings,
            },
            EXIT_MEMBER,
        ),
        LiftResult::NotMember { stage, detail } => (
            ResultFile {
                verdict: "not_member".into(),
                witness: None,
                reason: Some(stage.tag().to_string()),
                detail: Some(format!("{stage}: {detail}")),
                timings,
                expansion: None,
            },
            EXIT_NOT_MEMBER,
        ),
    };
    print(&to_pretty_json(&file))?;
    Ok(code)
}

fn verify(inputs: &Inputs, witness: &Path) -> Result<u8, Failure> {
    let (inst, v) = load(inputs)?;
    let x = with_path(witness, parse_witness(&read(witness)?))?;
    let valid = verify_witness(&inst, &v, &x);
    print(&format!("{{\"valid\": {valid}}}"))?;
    Ok(if valid { 0 } else { EXIT_NOT_MEMBER })
}

fn oracle(inputs: &Inputs, max_cols: usize) -> Result<u8, Failure> {
    let (inst, v) = load(inputs)?;
    let start = Instant::now();
    let member = member_oracle(&inst, &v, max_cols).map_err(|e| match e {
        OracleError::TooLarge { .. } | OracleError::Input(_) => Failure::Input(e.to_string()),
    })?;
    let verdict = if member { "member" } else { "not_member" };
    print(&format!("{{\"verdict\": \"{verdict}\", \"timings\": {{\"oracle\": {}}}}}", ms(start)))?;
    Ok(if member { EXIT_MEMBER } else { EXIT_NOT_MEMBER })
}
