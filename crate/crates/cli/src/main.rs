use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tmln::check::{self, CheckConfig, CheckReport};
use tmln::gen::{self, KbShape};
use tmln::inference::{exhaustive_bound, map_exhaustive_over, map_pruned_over, MapResult, Pattern};
use tmln::kbformat::{parse_document, serialize};
use tmln::network::ground;
use tmln::oracle::{self, OracleReport};
use tmln::report::{self, MapReport, SweepReport, SCHEMA_VERSION};
use tmln::semantics::{Aggregator, Condition, ParametricSemantics, Selector, Validator};
use tmln::{Error, Instantiation, Tmln};

#[derive(Parser)]
#[command(name = "tmln", version, about = "Temporal Markov logic networks: grounding, MAP inference and property checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a knowledge base
    Validate { kb: PathBuf },
    /// List the maximal instantiation: facts, then weighted ground rules
    Ground {
        kb: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// MAP inference under one semantics
    Map {
        kb: PathBuf,
        #[command(flatten)]
        semantics: SemanticsArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// MAP inference for every configuration listed in a sweep file
    Sweep {
        kb: PathBuf,
        sweep: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the property suites on random knowledge bases (or on KB)
    Check {
        kb: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Formula sets per relation property and samples per audit
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Random knowledge bases for the principle and ordering suites
        #[arg(long, default_value_t = 200)]
        kb_trials: usize,
        /// Audit the planted mutant for a condition, e.g. theta-b
        #[arg(long)]
        mutant: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Compare the engine against brute-force reference implementations
    OracleCompare {
        /// Knowledge base; omit together with --random
        kb: Option<PathBuf>,
        /// Compare on this many random 10-formula KBs instead
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict MAP comparison to one configuration (all 36 otherwise)
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, requires = "delta")]
        sigma: Option<String>,
        #[arg(long, requires = "delta")]
        theta: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SemanticsArgs {
    /// Validator: tCon, pCon, pInc or tInc
    #[arg(long)]
    delta: String,
    /// Selector: id, thresh:<alpha> or rule
    #[arg(long, default_value = "id")]
    sigma: String,
    /// Aggregator: sum, sum_alpha:<alpha> or psum
    #[arg(long, default_value = "sum")]
    theta: String,
}

#[derive(Args)]
struct OutputArgs {
    /// Conclusion pattern, e.g. 'PeasantFamily(*,*,*)'
    #[arg(long)]
    query: Option<String>,
    /// Show every formula of each MAP
    #[arg(long)]
    full: bool,
    /// Branch-and-bound search (no size bound)
    #[arg(long)]
    pruned: bool,
    /// Exhaustive bound (default from TMLN_EXHAUSTIVE_BOUND, else 20)
    #[arg(long)]
    bound: Option<usize>,
    #[arg(long)]
    json: bool,
}

enum Failure {
    Domain(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Parses a KB, printing diagnostics to standard error.
fn load(path: &Path) -> Result<(Tmln, String), Failure> {
    let text = read(path)?;
    let outcome = parse_document(&text);
    for d in &outcome.diagnostics {
        eprintln!("{}:{d}", path.display());
    }
    match outcome.tmln {
        Some(m) => Ok((m, text)),
        None => Err(Failure::Domain(format!("{} is not a valid knowledge base", path.display()))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn semantics(delta: &str, sigma: &str, theta: &str) -> Result<ParametricSemantics, Failure> {
    let v: Validator = delta.parse()?;
    let s: Selector = sigma.parse()?;
    let a: Aggregator = theta.parse()?;
    Ok(ParametricSemantics::new(v.0, s, a))
}

fn infer(mi: &Instantiation, sem: &ParametricSemantics, out: &OutputArgs) -> Result<MapResult, Failure> {
    Ok(if out.pruned { map_pruned_over(mi, sem)? } else { map_exhaustive_over(mi, sem, out.bound.unwrap_or_else(exhaustive_bound))? })
}

fn query(out: &OutputArgs) -> Result<Option<Pattern>, Failure> {
    Ok(match &out.query {
        Some(q) => Some(q.parse()?),
        None => None,
    })
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { kb } => {
            let text = read(&kb)?;
            let outcome = parse_document(&text);
            for d in &outcome.diagnostics {
                eprintln!("{}:{d}", kb.display());
            }
            Ok(outcome.tmln.is_some())
        }
        Command::Ground { kb, json } => {
            let (m, _) = load(&kb)?;
            let r = report::ground_report(&ground(&m)?);
            if json {
                println!("{}", to_json(&r));
            } else {
                print!("{}", report::render_ground(&r));
            }
            Ok(true)
        }
        Command::Map { kb, semantics: s, output } => {
            let (m, _) = load(&kb)?;
            let sem = semantics(&s.delta, &s.sigma, &s.theta)?;
            let mi = ground(&m)?.instantiation;
            let r = report::map_report(&sem, &infer(&mi, &sem, &output)?, query(&output)?.as_ref(), output.full)?;
            if output.json {
                println!("{}", to_json(&r));
            } else {
                print!("{}", report::render_map(&r));
            }
            Ok(true)
        }
        Command::Sweep { kb, sweep, output } => {
            let (m, _) = load(&kb)?;
            let configs = report::parse_sweep(&read(&sweep)?)?;
            let mi = ground(&m)?.instantiation;
            let q = query(&output)?;
            let rows = configs
                .iter()
                .map(|sem| Ok(report::map_report(sem, &infer(&mi, sem, &output)?, q.as_ref(), output.full)?))
                .collect::<Result<Vec<MapReport>, Failure>>()?;
            if output.json {
                println!("{}", to_json(&SweepReport { schema_version: SCHEMA_VERSION, rows }));
            } else {
                print!("{}", report::render_sweep(&rows));
            }
            Ok(true)
        }
        Command::Check { kb, seed, trials, kb_trials, mutant, json } => {
            let kb = match kb {
                Some(p) => Some(load(&p)?.0),
                None => None,
            };
            let mutant = match mutant {
                Some(label) => Some(condition(&label)?),
                None => None,
            };
            let r = check::run(&CheckConfig { seed, trials, kb_trials, kb, mutant, ..CheckConfig::default() });
            if json {
                println!("{}", to_json(&r));
            } else {
                print!("{}", render_check(&r));
            }
            Ok(r.passed())
        }
        Command::OracleCompare { kb, random, seed, delta, sigma, theta, json } => {
            let sems = match &delta {
                Some(d) => vec![semantics(d, sigma.as_deref().unwrap_or("id"), theta.as_deref().unwrap_or("sum"))?],
                None => ParametricSemantics::all_combinations(),
            };
            let mut reports: Vec<OracleReport> = Vec::new();
            match (kb, random) {
                (Some(p), None) => {
                    let (m, text) = load(&p)?;
                    reports.extend(oracle::compare(&m, &sems, &text)?);
                }
                (None, Some(n)) => {
                    let mut rng = gen::rng(seed);
                    let shape = KbShape { max_facts: 7, max_rules: 3, max_items: 10, max_ground: 14, ..KbShape::default() };
                    for _ in 0..n {
                        let m = gen::random_kb(&mut rng, &shape);
                        reports.extend(oracle::compare(&m, &sems, &serialize(&m))?);
                    }
                }
                _ => return Err(Failure::Io("give either a knowledge base or --random N".into())),
            }
            let all = reports.iter().all(|r| r.matched);
            if json {
                println!("{}", to_json(&reports));
            } else {
                for r in &reports {
                    let status = if r.matched { "match" } else { "MISMATCH" };
                    println!("{status:8} {}  [{}]", r.operation, &r.input_digest[..12]);
                    if !r.matched {
                        println!("  oracle: {}\n  engine: {}", r.oracle, r.engine);
                    }
                }
                let ok = reports.iter().filter(|r| r.matched).count();
                println!("{ok}/{} comparisons match", reports.len());
            }
            Ok(all)
        }
    }
}

fn condition(label: &str) -> Result<Condition, Failure> {
    let wanted = label.to_ascii_lowercase().replace(['(', ')'], "");
    Condition::ALL
        .into_iter()
        .find(|c| c.label().replace(['(', ')'], "") == wanted)
        .ok_or_else(|| Failure::Io(format!("unknown condition `{label}` (try theta-b, sigma-d, delta-a, ...)")))
}

fn render_check(r: &CheckReport) -> String {
    let width = r.suites.iter().map(|s| s.name.len()).max().unwrap_or(0);
    let mut out = format!("seed {}\n", r.seed);
    for s in &r.suites {
        let status = if s.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!(
            "{status} {:width$}  trials {:6}  checked {:6}  vacuous {:6}  failures {}\n",
            s.name, s.trials, s.checked, s.vacuous, s.failures
        ));
        if let Some(ce) = &s.counterexample {
            for line in ce.lines() {
                out.push_str(&format!("     | {line}\n"));
            }
        }
    }
    out
}
