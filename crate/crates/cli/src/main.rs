use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cinfer_core::catalog;
use cinfer_core::inequalities::{check_rule_on_samples, INGLETON_TOL};
use cinfer_core::inference::{enumerate, Engine, EnumerateOptions, RuleSet};
use cinfer_core::reproduce::{self, ReproduceOptions, Target, CRITERIA};
use cinfer_core::{CIStructure, Error, JointDistribution, Report, SubsetMask, Triplet};

/// Conditional independence structures, entropy functions and Ingleton checks.
#[derive(Parser)]
#[command(name = "cinfer", version)]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Tolerance for float comparisons (Ingleton sign).
    #[arg(long, global = true, default_value_t = INGLETON_TOL)]
    tol: f64,
    /// Worker threads for enumeration; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    /// The semi-graphoid rule only.
    Sg,
    /// All inference rules (four variables).
    All,
}

impl From<Rules> for RuleSet {
    fn from(r: Rules) -> Self {
        match r {
            Rules::Sg => RuleSet::SemiGraphoid,
            Rules::All => RuleSet::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Entropy of every subset of variables, in nats.
    Entropy { dist: PathBuf },
    /// Exact test of a statement such as "x _||_ y z | u".
    CheckCi { dist: PathBuf, statement: String },
    /// The CI structure induced by a distribution.
    Structure { dist: PathBuf },
    /// Ingleton expression with the four arguments given as comma-separated groups.
    Ingleton {
        dist: PathBuf,
        /// Groups for x, y, z, u, e.g. `x,y,z,u` or `a b,c,d,e`.
        #[arg(long, default_value = "x,y,z,u")]
        xyzu: String,
    },
    /// Least closed superset of a structure.
    Closure {
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        rules: Rules,
    },
    /// Count the closed sets of elementary statements over four variables.
    Enumerate {
        #[arg(long, value_enum)]
        rules: Rules,
        /// Write every closed set, one hex mask per line.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// The permutation types of meet-irreducible structures.
    Irreducibles,
    /// Run the reproduction criteria; exits 1 if any check fails.
    VerifyPaper {
        /// A criterion number or name, or a catalog id.
        #[arg(long)]
        only: Option<String>,
    },
    /// Check a conditional Ingleton inequality on sampled distributions.
    VerifyInequality {
        id: u8,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 2007)]
        seed: u64,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A verification did not pass: exit 1.
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_dist(path: &Path) -> Result<JointDistribution, Failure> {
    JointDistribution::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<CIStructure, Failure> {
    CIStructure::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn print_structure(s: &CIStructure, json: bool) {
    if json {
        println!("{}", s.to_json());
    } else {
        for line in s.render() {
            println!("{line}");
        }
    }
}

fn entropy(cli: &Cli, dist: &Path) -> Outcome {
    let h = load_dist(dist)?.entropy_function()?;
    if cli.json {
        println!("{}", h.to_json());
    } else {
        for s in h.base().subsets() {
            println!("{}\t{:.12}", h.base().display(s), h.values()[s.0 as usize]);
        }
    }
    Ok(())
}

fn check_ci(cli: &Cli, dist: &Path, statement: &str) -> Outcome {
    let p = load_dist(dist)?;
    let t = Triplet::parse(&p.space().basic_set()?, statement)?;
    let holds = p.is_ci(t.left, t.right, t.cond)?;
    if cli.json {
        print_json(&json!({ "statement": statement, "holds": holds }));
    } else {
        println!("{holds}");
    }
    Ok(())
}

fn ingleton(cli: &Cli, dist: &Path, groups: &str) -> Outcome {
    let p = load_dist(dist)?;
    let base = p.space().basic_set()?;
    let parts: Vec<&str> = groups.split(',').collect();
    let [x, y, z, u]: [&str; 4] = parts
        .try_into()
        .map_err(|_| Failure::Input(format!("--xyzu needs four comma-separated groups, got `{groups}`")))?;
    let masks: Vec<SubsetMask> = [x, y, z, u].iter().map(|g| base.parse_mask(g)).collect::<Result<_, _>>()?;
    if masks.iter().any(|m| m.is_empty()) {
        return Err(Failure::Input("every group needs at least one variable".into()));
    }
    let h = p.entropy_function()?;
    let value = h.ingleton(masks[0], masks[1], masks[2], masks[3])?;
    let holds = value >= -cli.tol;
    if cli.json {
        print_json(&json!({ "ingleton": value, "holds": holds, "tol": cli.tol }));
    } else {
        println!("{value:.12}");
        println!("{}", if holds { "holds" } else { "violated" });
    }
    Ok(())
}

fn closure(cli: &Cli, path: &Path, rules: Rules) -> Outcome {
    let s = load_structure(path)?;
    let closed = match rules {
        Rules::All => cinfer_core::inference::closure(&s)?,
        Rules::Sg => Engine::new(s.base().clone(), RuleSet::SemiGraphoid)?.closure(&s)?,
    };
    print_structure(&closed, cli.json);
    Ok(())
}

fn enumerate_cmd(cli: &Cli, rules: Rules, dump: Option<&Path>) -> Outcome {
    let start = Instant::now();
    let last = std::sync::Mutex::new(0u64);
    let progress = |done: u64, total: u64| {
        let pct = done * 100 / total;
        let mut last = last.lock().expect("not poisoned");
        if pct >= *last + 10 || done == total {
            *last = pct;
            eprintln!("enumerate: {pct}% ({:.1?})", start.elapsed());
        }
    };
    let opts = EnumerateOptions {
        threads: cli.threads,
        collect: dump.is_some(),
        progress: Some(&progress),
    };
    let e = enumerate(rules.into(), &opts)?;
    if let (Some(path), Some(members)) = (dump, &e.members) {
        let mut out = String::with_capacity(members.len() * 7);
        for m in members {
            out.push_str(&format!("{m:06x}\n"));
        }
        fs::write(path, out).map_err(|err| Failure::Input(format!("{}: {err}", path.display())))?;
        eprintln!("enumerate: wrote {} masks to {}", members.len(), path.display());
    }
    if cli.json {
        print_json(&json!({ "count": e.count }));
    } else {
        println!("{}", e.count);
    }
    Ok(())
}

fn irreducibles(cli: &Cli) -> Outcome {
    let types = catalog::irreducible_types()?;
    let total: usize = types.iter().map(|t| t.orbit.len()).sum();
    if cli.json {
        let rows: Vec<Value> = types
            .iter()
            .map(|t| {
                json!({
                    "id": t.id,
                    "orbit_size": t.orbit.len(),
                    "statements": t.representative.render(),
                })
            })
            .collect();
        print_json(&json!({ "total": total, "types": rows }));
    } else {
        for t in &types {
            println!("{}\torbit {}\t{} statements", t.id, t.orbit.len(), t.representative.len());
        }
        println!("{total} irreducible structures in {} types", types.len());
    }
    Ok(())
}

fn print_report(r: &Report, seconds: f64) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    println!("{status} {} ({seconds:.2}s)", r.subject);
    for c in &r.checks {
        let mark = if c.passed { "ok" } else { "FAILED" };
        println!("    {mark:6} {}: {}", c.name, c.detail);
    }
}

fn verify_paper(cli: &Cli, only: Option<&str>) -> Outcome {
    let targets: Vec<Target> = match only {
        Some(key) => vec![reproduce::resolve_target(key)?],
        None => CRITERIA.iter().map(|c| Target::Criterion(*c)).collect(),
    };
    let opts = ReproduceOptions {
        threads: cli.threads,
        ..Default::default()
    };
    let mut reports = Vec::new();
    for t in &targets {
        if let Target::Criterion(c) = t {
            eprintln!("verify-paper: criterion {} ({})", c.number, c.name);
        }
        let start = Instant::now();
        let r = reproduce::run_target(t, &opts)?;
        let seconds = start.elapsed().as_secs_f64();
        if !cli.json {
            print_report(&r, seconds);
            io::stdout().flush().ok();
        }
        reports.push((r, seconds));
    }
    let passed = reports.iter().all(|(r, _)| r.passed());
    if cli.json {
        let rows: Vec<Value> = reports
            .iter()
            .map(|(r, s)| json!({ "subject": r.subject, "passed": r.passed(), "seconds": s, "checks": r.checks }))
            .collect();
        print_json(&json!({ "passed": passed, "reports": rows }));
    } else {
        let n = reports.iter().filter(|(r, _)| r.passed()).count();
        println!("{n} of {} passed", reports.len());
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn verify_inequality(cli: &Cli, id: u8, samples: usize, seed: u64) -> Outcome {
    let s = check_rule_on_samples(id, samples, seed).map_err(|e| Failure::Input(e.to_string()))?;
    if cli.json {
        print_json(&serde_json::to_value(&s).expect("serializable"));
    } else {
        println!(
            "rule {}: {} samples, premises held on {}, minimum Ingleton value {:.3e}",
            s.rule, s.samples, s.premises_held, s.min_ingleton
        );
        println!("{}", if s.passed { "PASS" } else { "FAIL" });
    }
    if s.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Entropy { dist } => entropy(cli, dist),
        Command::CheckCi { dist, statement } => check_ci(cli, dist, statement),
        Command::Structure { dist } => {
            let s = load_dist(dist)?.induced_ci_structure()?;
            print_structure(&s, cli.json);
            Ok(())
        }
        Command::Ingleton { dist, xyzu } => ingleton(cli, dist, xyzu),
        Command::Closure { structure, rules } => closure(cli, structure, *rules),
        Command::Enumerate { rules, dump } => enumerate_cmd(cli, *rules, dump.as_deref()),
        Command::Irreducibles => irreducibles(cli),
        Command::VerifyPaper { only } => verify_paper(cli, only.as_deref()),
        Command::VerifyInequality { id, samples, seed } => verify_inequality(cli, *id, *samples, *seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
