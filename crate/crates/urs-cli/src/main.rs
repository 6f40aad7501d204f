//! Command-line front end for the two-parameter quantum group kernel.
//!
//! Every subcommand runs one verification (or constructs one artifact),
//! prints a human-readable summary to stderr, writes a deterministic JSON
//! report to stdout or to --out, and exits 0 iff the check passed
//! (2 on usage errors).

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num::rational::BigRational;
use num::BigInt;
use serde_json::{json, Value};

use urs_core::algebra::{Algebra, Kind, Params};
use urs_core::checks;
use urs_core::error::UrsError;
use urs_core::jsonio;
use urs_core::pairing::Pairing;
use urs_core::report::CheckReport;
use urs_core::weight::Weight;

const DEFAULT_SEED: u64 = 20010;

#[derive(Parser)]
#[command(
    name = "urs",
    about = "Exact verification kernel for the two-parameter quantum groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Rank parameter n (the algebra is built on gl_n or sl_n)
    #[arg(long, default_value_t = 2)]
    n: usize,
    /// Algebra kind: gl or sl
    #[arg(long, default_value = "gl")]
    kind: String,
    /// Depth cutoff for truncated modules and graded bases
    #[arg(long, default_value_t = 3)]
    depth: usize,
    /// Seed for the randomized portions of the checks
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Optional exact specialization "u0,v0" (rationals, u0^2 != v0^2)
    #[arg(long)]
    specialize: Option<String>,
    /// Output path for the JSON report (stdout when omitted)
    #[arg(long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the defining relations (straightening + radical pairing)
    Relations {
        #[command(flatten)]
        common: Common,
    },
    /// Coassociativity, counit and antipode laws on generators and seeded
    /// random elements
    HopfAxioms {
        #[command(flatten)]
        common: Common,
        /// Number of random elements
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// Pairing recursion vs coproduct expansion, with torus decorations
    PairingTable {
        #[command(flatten)]
        common: Common,
        /// Maximal word height compared
        #[arg(long, default_value_t = 3)]
        height: usize,
    },
    /// Dual bases of one graded component (exported as JSON)
    DualBasis {
        #[command(flatten)]
        common: Common,
        /// Content coordinates over the simple roots, comma separated
        #[arg(long)]
        zeta: String,
    },
    /// Drinfel'd double reconstruction against the presentation
    VerifyDouble {
        #[command(flatten)]
        common: Common,
        /// Number of seeded word pairs in addition to all generator pairs
        #[arg(long, default_value_t = 10)]
        words: usize,
    },
    /// Build a truncated highest-weight module and audit its relations
    Verma {
        #[command(flatten)]
        common: Common,
        /// Highest weight, comma-separated integer coordinates
        #[arg(long)]
        lambda: String,
    },
    /// Braiding matrix with triangularity and intertwining checks
    Rmatrix {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        /// Combined depth budget (default depth - 2)
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quantum Yang-Baxter equation on a module triple
    Qybe {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Hexagon identities (plus the supporting operator expansions)
    Hexagon {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quantum Casimir operator checks on a truncated module
    Casimir {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Quasi-R-matrix commutation identities in the algebra tensor square
    ThetaIdentities {
        #[command(flatten)]
        common: Common,
        /// Maximal content height
        #[arg(long, default_value_t = 2)]
        height: usize,
    },
    /// Morphism verifications: --which sl2 or --which chm
    IsoCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        which: String,
        /// Number of seeded specializations for the rank-one family
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Weight-character injectivity scan over the root lattice
    Prop35 {
        #[command(flatten)]
        common: Common,
        /// Coordinate bound of the scan box
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s {
        "gl" => Ok(Kind::Gl),
        "sl" => Ok(Kind::Sl),
        _ => Err(format!("unknown kind '{s}' (expected gl or sl)")),
    }
}

fn parse_ints(s: &str) -> Result<Vec<i64>, String> {
    s.split(',')
        .map(|x| i64::from_str(x.trim()).map_err(|e| format!("bad integer '{x}': {e}")))
        .collect()
}

fn parse_rat(s: &str) -> Result<BigRational, String> {
    if let Some((a, b)) = s.split_once('/') {
        let num = BigInt::from_str(a.trim()).map_err(|e| e.to_string())?;
        let den = BigInt::from_str(b.trim()).map_err(|e| e.to_string())?;
        if den == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(BigRational::new(num, den))
    } else {
        Ok(BigRational::from(
            BigInt::from_str(s.trim()).map_err(|e| e.to_string())?,
        ))
    }
}

/// Weight from comma-separated coordinates, padded with zeros to length n.
fn parse_weight(s: &str, n: usize) -> Result<Weight, String> {
    let mut v = parse_ints(s)?;
    if v.len() > n {
        return Err(format!(
            "weight has {} coordinates, expected at most {n}",
            v.len()
        ));
    }
    v.resize(n, 0);
    Ok(Weight::new(v))
}

struct Job {
    common: Common,
    alg: Arc<Algebra>,
    config: Value,
}

fn build_job(common: &Common, extra: Value) -> Result<Job, String> {
    let kind = parse_kind(&common.kind)?;
    if common.n < 2 {
        return Err(format!("rank must satisfy n >= 2, got {}", common.n));
    }
    if common.depth < 1 {
        return Err("depth must be at least 1".into());
    }
    let params = match &common.specialize {
        None => Params::generic(),
        Some(sp) => {
            let parts: Vec<&str> = sp.split(',').collect();
            if parts.len() != 2 {
                return Err("--specialize expects 'u0,v0'".into());
            }
            let u0 = parse_rat(parts[0])?;
            let v0 = parse_rat(parts[1])?;
            Params::specialized(&u0, &v0).map_err(|e| e.to_string())?
        }
    };
    let alg = Arc::new(Algebra::new(common.n, kind, params).map_err(|e| e.to_string())?);
    let mut config = json!({
        "n": common.n,
        "kind": common.kind,
        "depth": common.depth,
        "seed": common.seed,
        "specialize": common.specialize,
    });
    if let (Some(obj), Some(add)) = (config.as_object_mut(), extra.as_object()) {
        for (k, v) in add {
            obj.insert(k.clone(), v.clone());
        }
    }
    Ok(Job {
        common: common.clone(),
        alg,
        config,
    })
}

fn emit(job: &Job, report: CheckReport, artifact: Option<(&str, Value)>) -> ExitCode {
    let mut value = report.to_value(job.config.clone());
    if let Some((key, art)) = artifact {
        value.as_object_mut().unwrap().insert(key.to_string(), art);
    }
    let bytes = jsonio::to_canonical_bytes(&value);
    match &job.common.out {
        None => {
            std::io::stdout().write_all(&bytes).expect("stdout write");
        }
        Some(path) => {
            if let Err(e) = std::fs::write(path, &bytes) {
                eprintln!("error: cannot write {path}: {e}");
                return ExitCode::from(2);
            }
        }
    }
    eprintln!(
        "{}: {} ({} residual{})",
        report.command,
        if report.pass { "PASS" } else { "FAIL" },
        report.residual_count,
        if report.residual_count == 1 { "" } else { "s" },
    );
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn run() -> Result<ExitCode, String> {
    // QGR_THREADS is an upper bound on worker parallelism.  The runner
    // currently executes its checks on a single worker, which respects any
    // valid bound; the value is still validated so configurations fail fast.
    if let Ok(v) = std::env::var("QGR_THREADS") {
        match v.parse::<usize>() {
            Ok(k) if k >= 1 => {}
            _ => return Err(format!("QGR_THREADS must be a positive integer, got '{v}'")),
        }
    }
    let cli = Cli::parse();
    let as_err = |e: UrsError| e.to_string();
    Ok(match cli.command {
        Command::Relations { common } => {
            let job = build_job(&common, json!({}))?;
            let ctx = Pairing::new(job.alg.clone(), job.common.depth.max(4));
            let rep = checks::relations_check(&job.alg, &ctx).map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::HopfAxioms { common, count } => {
            let job = build_job(&common, json!({ "count": count }))?;
            let rep =
                checks::hopf_axioms_check(&job.alg, count, 3, job.common.seed).map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::PairingTable { common, height } => {
            let job = build_job(&common, json!({ "height": height }))?;
            let ctx = Pairing::new(job.alg.clone(), height.max(job.common.depth));
            let rep = checks::pairing_consistency_check(&ctx, height, 20, job.common.seed)
                .map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::DualBasis { common, zeta } => {
            let job = build_job(&common, json!({ "zeta": zeta }))?;
            let z = parse_ints(&zeta)?;
            if z.len() != job.common.n - 1 {
                return Err(format!(
                    "zeta needs {} coordinates for n={}",
                    job.common.n - 1,
                    job.common.n
                ));
            }
            let height: usize = z.iter().map(|&c| c.max(0) as usize).sum();
            let ctx = Pairing::new(job.alg.clone(), height.max(job.common.depth));
            let artifact = jsonio::dual_pair_value(&ctx, &z).map_err(as_err)?;
            // biorthogonality is rechecked on export
            let d = ctx.dual_bases_cached(&z).map_err(as_err)?;
            let mut failures = Vec::new();
            for (j, vj) in d.v.iter().enumerate() {
                for (k, uk) in d.u.iter().enumerate() {
                    let val = ctx.pair_words(vj, uk).map_err(as_err)?;
                    let ok = if j == k { val.is_one() } else { val.is_zero() };
                    if !ok {
                        failures.push(format!("biorthogonality fails at ({j},{k})"));
                    }
                }
            }
            let rep = CheckReport::from_failures("dual-basis", failures);
            emit(&job, rep, Some(("artifact", artifact)))
        }
        Command::VerifyDouble { common, words } => {
            let job = build_job(&common, json!({ "words": words }))?;
            let ctx = Pairing::new(job.alg.clone(), job.common.depth.max(4));
            let rep = checks::double_check(&ctx, words, job.common.seed).map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::Verma { common, lambda } => {
            let job = build_job(&common, json!({ "lambda": lambda }))?;
            let lam = parse_weight(&lambda, job.common.n)?;
            let ctx = Pairing::new(job.alg.clone(), job.common.depth);
            let (rep, module) =
                checks::verma_check(&ctx, &lam, job.common.depth).map_err(as_err)?;
            let artifact = jsonio::module_value(&module).map_err(as_err)?;
            emit(&job, rep, Some(("artifact", artifact)))
        }
        Command::Rmatrix {
            common,
            lambda,
            mu,
            budget,
        } => {
            let job = build_job(&common, json!({ "lambda": lambda, "mu": mu }))?;
            let lam = parse_weight(&lambda, job.common.n)?;
            let muw = parse_weight(&mu, job.common.n)?;
            let budget = budget.unwrap_or(job.common.depth.saturating_sub(2));
            let ctx = Pairing::new(job.alg.clone(), job.common.depth);
            let (rep, map) = checks::rmatrix_check(&ctx, &lam, &muw, job.common.depth, budget)
                .map_err(as_err)?;
            let artifact = jsonio::braid_map_value(&map);
            emit(&job, rep, Some(("artifact", artifact)))
        }
        Command::Qybe {
            common,
            lambda,
            mu,
            nu,
            budget,
        } => {
            let job = build_job(&common, json!({ "lambda": lambda, "mu": mu, "nu": nu }))?;
            let lam = parse_weight(&lambda, job.common.n)?;
            let muw = parse_weight(&mu, job.common.n)?;
            let nuw = parse_weight(&nu, job.common.n)?;
            let budget = budget.unwrap_or(job.common.depth.saturating_sub(2));
            let ctx = Pairing::new(job.alg.clone(), job.common.depth);
            let rep = checks::qybe_check(&ctx, &lam, &muw, &nuw, job.common.depth, budget)
                .map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::Hexagon {
            common,
            lambda,
            mu,
            nu,
            budget,
        } => {
            let job = build_job(&common, json!({ "lambda": lambda, "mu": mu, "nu": nu }))?;
            let lam = parse_weight(&lambda, job.common.n)?;
            let muw = parse_weight(&mu, job.common.n)?;
            let nuw = parse_weight(&nu, job.common.n)?;
            let budget = budget.unwrap_or(job.common.depth.saturating_sub(2));
            let ctx = Pairing::new(job.alg.clone(), job.common.depth);
            let rep = checks::hexagon_check(&ctx, &lam, &muw, &nuw, job.common.depth, budget)
                .map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::Casimir {
            common,
            lambda,
            budget,
        } => {
            let job = build_job(&common, json!({ "lambda": lambda }))?;
            let lam = parse_weight(&lambda, job.common.n)?;
            let budget = budget.unwrap_or(job.common.depth.saturating_sub(2));
            let ctx = Pairing::new(job.alg.clone(), job.common.depth);
            let rep =
                checks::casimir_check(&ctx, &lam, job.common.depth, budget).map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::ThetaIdentities { common, height } => {
            let job = build_job(&common, json!({ "height": height }))?;
            let ctx = Pairing::new(job.alg.clone(), (height + 1).max(job.common.depth));
            let rep = checks::theta_check(&ctx, height).map_err(as_err)?;
            emit(&job, rep, None)
        }
        Command::IsoCheck {
            common,
            which,
            count,
        } => {
            let job = build_job(&common, json!({ "which": which, "count": count }))?;
            let rep = match which.as_str() {
                "sl2" => checks::iso_sl2_check(count, job.common.seed).map_err(as_err)?,
                "chm" => checks::iso_chm_check(job.common.n).map_err(as_err)?,
                other => return Err(format!("unknown --which '{other}' (expected sl2 or chm)")),
            };
            emit(&job, rep, None)
        }
        Command::Prop35 { common, bound } => {
            let job = build_job(&common, json!({ "bound": bound }))?;
            let rep = checks::prop35_check(&job.alg, bound).map_err(as_err)?;
            emit(&job, rep, None)
        }
    })
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
