//! The `triplesym` command line.
//!
//! Exit codes: 0 success, 1 internal error or failed verification,
//! 2 inadmissible input, 3 no θ within the search bound. Errors are printed
//! to stderr as `error[Reason]: message`.

mod cache;
mod record;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;

use crate::conic::ConicError;
use crate::cubic::{self, CubicError, ThetaElement};
use crate::eisenstein::{self, EisensteinError, EisensteinInteger as E, PrimaryPrime};
use crate::modarith::{ModArithError, OddPrime};
use crate::redei::{self, BetaCache, Branch, RedeiError};
use crate::verify;

pub use cache::{default_path as default_cache_path, CACHE_ENV};
pub use record::{ResultRecord, CSV_HEADER};

/// Largest bound accepted by `scan`.
pub const MAX_SCAN_BOUND: u64 = 10_000;
pub const DEFAULT_SEARCH_BOUND: u64 = 50;

#[derive(Debug, Parser)]
#[command(name = "triplesym", version, about = "Rédei and cubic triple symbols")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Rédei symbol [p1, p2, p3] for primes p ≡ 1 (mod 4).
    Redei {
        p1: String,
        p2: String,
        p3: String,
        #[arg(long)]
        json: bool,
        /// Cross-check against the quartic splitting oracle.
        #[arg(long)]
        verify: bool,
        /// Neither read nor write the β cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// The triple cubic residue symbol. Each argument is a rational prime q
    /// or an Eisenstein integer "a,b" = a + bζ; primary associates are used.
    Cubic {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        q3: String,
        /// θ for (π1, π2) as JSON, skipping the search.
        #[arg(long)]
        theta: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
        /// Write the θ that was used to this file.
        #[arg(long)]
        save_theta: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Every admissible triple of primes below the bound.
    Scan {
        #[arg(long, default_value_t = 2)]
        n: u32,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out: OutFormat,
        /// Worker threads; output does not depend on it.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        no_cache: bool,
    },
    /// Run invariant sweeps and report pass/fail.
    Verify {
        #[arg(long, value_enum, required = true)]
        suite: Vec<Suite>,
        /// Prime bound for the Rédei sweeps.
        #[arg(long, default_value_t = 300)]
        bound: u64,
        /// θ search bound for the cubic suite.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BOUND)]
        search_bound: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    Lemma2,
    Alternating,
    Reciprocity,
    Oracle,
    WellDefined,
    Heisenberg,
    TripleSign,
    Eisenstein,
    Cubic,
    All,
}

#[derive(Debug)]
pub enum CliError {
    Inadmissible { reason: &'static str, message: String },
    ThetaNotFound(u64),
    Internal(String),
    /// A verification suite failed; its report is already printed.
    Failed,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) | CliError::Failed => 1,
            CliError::Inadmissible { .. } => 2,
            CliError::ThetaNotFound(_) => 3,
        }
    }

    fn report(&self) {
        match self {
            CliError::Inadmissible { reason, message } => eprintln!("error[{reason}]: {message}"),
            CliError::ThetaNotFound(b) => eprintln!("error[ThetaNotFound]: no θ found with coordinate height ≤ {b}; retry with a larger --search-bound"),
            CliError::Internal(m) => eprintln!("error[Internal]: {m}"),
            CliError::Failed => {}
        }
    }
}

fn inadmissible(reason: &'static str, message: impl ToString) -> CliError {
    CliError::Inadmissible { reason, message: message.to_string() }
}

impl From<ModArithError> for CliError {
    fn from(e: ModArithError) -> Self {
        let reason = match e {
            ModArithError::NotPrime(_) => "NotPrime",
            ModArithError::TooLarge(_) => "TooLarge",
            ModArithError::NotASquare(..) => return CliError::Internal(e.to_string()),
        };
        inadmissible(reason, e)
    }
}

impl From<RedeiError> for CliError {
    fn from(e: RedeiError) -> Self {
        let reason = match &e {
            RedeiError::NotOneModFour(_) => "NotOneModFour",
            RedeiError::NotDistinct => "NotDistinct",
            RedeiError::LegendreObstruction(..) => "LegendreObstruction",
            RedeiError::Conic(ConicError::NoSolution(..)) => "NoSolution",
            _ => return CliError::Internal(e.to_string()),
        };
        inadmissible(reason, e)
    }
}

impl From<EisensteinError> for CliError {
    fn from(e: EisensteinError) -> Self {
        let reason = match &e {
            EisensteinError::NotOneModNine(_) => "NotOneModNine",
            EisensteinError::NotPrime(_) => "NotPrime",
            EisensteinError::RamifiedPrime => "RamifiedPrime",
            EisensteinError::NotCoprime(..) => "NotCoprime",
            EisensteinError::Arith(a) => return a.clone().into(),
        };
        inadmissible(reason, e)
    }
}

impl From<CubicError> for CliError {
    fn from(e: CubicError) -> Self {
        let reason = match &e {
            CubicError::Eisenstein(x) => return x.clone().into(),
            CubicError::ThetaNotFound(b) => return CliError::ThetaNotFound(*b),
            CubicError::NotDistinct => "NotDistinct",
            CubicError::CubicObstruction(..) => "CubicObstruction",
            CubicError::UnsupportedPrime(_) => "UnsupportedPrime",
            CubicError::ThetaRejected(_) | CubicError::Fixture(_) => "ThetaRejected",
            CubicError::ThetaMismatch(..) => "ThetaMismatch",
            CubicError::DegenerateEvaluation(_) | CubicError::OracleDegenerate(_) | CubicError::OracleRootCount(_) => {
                return CliError::Internal(e.to_string())
            }
        };
        inadmissible(reason, e)
    }
}

/// Parses argv, runs the command and maps the outcome to an exit code.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            e.report();
            ExitCode::from(e.exit_code())
        }
    }
}

/// Runs one command and returns everything it prints to stdout.
pub fn execute(command: Command) -> Result<String, CliError> {
    match command {
        Command::Redei { p1, p2, p3, json, verify, no_cache } => {
            let r = cmd_redei([&p1, &p2, &p3], verify, no_cache)?;
            Ok(if json { r.to_json() } else { r.to_string() } + "\n")
        }
        Command::Cubic { q1, q2, q3, theta, search_bound, save_theta, json } => {
            let r = cmd_cubic([&q1, &q2, &q3], theta, search_bound, save_theta)?;
            Ok(if json { r.to_json() } else { r.to_string() } + "\n")
        }
        Command::Scan { n, bound, out, jobs, no_cache } => cmd_scan(n, bound, out, jobs, no_cache),
        Command::Verify { suite, bound, search_bound } => cmd_verify(&suite, bound, search_bound),
    }
}

fn parse_prime(s: &str) -> Result<OddPrime, CliError> {
    let n: BigInt = s.trim().parse().map_err(|_| inadmissible("NotAnInteger", format!("{s:?} is not a decimal integer")))?;
    Ok(OddPrime::new(&n)?)
}

fn open_cache(no_cache: bool) -> Result<(BetaCache, Option<PathBuf>), CliError> {
    if no_cache {
        return Ok((BetaCache::new(), None));
    }
    let path = cache::default_path().ok_or_else(|| CliError::Internal(format!("no cache path: set {CACHE_ENV} or HOME")))?;
    Ok((cache::load(&path).map_err(CliError::Internal)?, Some(path)))
}

fn close_cache(cache: &BetaCache, path: Option<PathBuf>) -> Result<(), CliError> {
    match path {
        Some(p) => cache::save(&p, cache).map_err(CliError::Internal),
        None => Ok(()),
    }
}

pub fn cmd_redei(args: [&str; 3], verify: bool, no_cache: bool) -> Result<ResultRecord, CliError> {
    let [p1, p2, p3] = [parse_prime(args[0])?, parse_prime(args[1])?, parse_prime(args[2])?];
    let t = redei::admissible2(&p1, &p2, &p3)?;
    let (cache, path) = open_cache(no_cache)?;
    let beta = cache.get_or_compute(t.p1(), t.p2())?;
    let e = redei::redei_symbol_with(&t, &beta, Branch::Smaller)?;
    let mut fallbacks = e.fallbacks;
    if verify {
        let (oracle, note) = redei::oracle_with(&t, &beta)?;
        fallbacks.extend(note);
        if oracle != e.value {
            return Err(CliError::Internal(format!("[{p1}, {p2}, {p3}]: residue path gives {}, oracle gives {oracle}", e.value)));
        }
    }
    close_cache(&cache, path)?;
    Ok(ResultRecord::new(e.value, vec![p1.to_string(), p2.to_string(), p3.to_string()], verify, fallbacks))
}

fn parse_primary(s: &str) -> Result<PrimaryPrime, CliError> {
    let x = E::parse(s).ok_or_else(|| inadmissible("NotAnInteger", format!("{s:?} is neither an integer nor \"a,b\"")))?;
    Ok(eisenstein::primary_associate(&x)?)
}

fn render_pi(p: &PrimaryPrime) -> String {
    format!("{},{}", p.get().a, p.get().b)
}

pub fn cmd_cubic(
    args: [&str; 3],
    theta_file: Option<PathBuf>,
    search_bound: u64,
    save_theta: Option<PathBuf>,
) -> Result<ResultRecord, CliError> {
    let pis = [parse_primary(args[0])?, parse_primary(args[1])?, parse_primary(args[2])?];
    let t = cubic::admissible3(&pis[0], &pis[1], &pis[2])?;
    let theta = match theta_file {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|e| CliError::Internal(format!("cannot read {}: {e}", path.display())))?;
            let theta = ThetaElement::from_json(&text)?;
            if theta.pi1 != pis[0] || theta.pi2 != pis[1] {
                return Err(CubicError::ThetaMismatch(theta.pi1, theta.pi2).into());
            }
            cubic::check_theta(&theta)?;
            theta
        }
        None => cubic::theta_search(&pis[0], &pis[1], search_bound)?,
    };
    if let Some(path) = save_theta {
        fs::write(&path, theta.to_json() + "\n").map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    let e = cubic::cubic_triple_symbol(&t, &theta)?;
    let split = cubic::oracle_split3(&t, &theta)?;
    if split != (e.value.exponent == 0) {
        return Err(CliError::Internal(format!("{t}: symbol {} but the nonic oracle says split = {split}", e.value)));
    }
    let mut fallbacks = Vec::new();
    if e.per_prime.iter().any(Option::is_none) {
        fallbacks.push("DegenerateEvaluation: θ vanishes at a prime above π3, another prime used".to_string());
    }
    let mut r = ResultRecord::new(e.value, pis.iter().map(render_pi).collect(), true, fallbacks);
    r.cohomological_exponent = Some(e.cohomological_exponent);
    Ok(r)
}

pub fn cmd_scan(n: u32, bound: u64, out: OutFormat, jobs: usize, no_cache: bool) -> Result<String, CliError> {
    if n != 2 {
        return Err(inadmissible("UnsupportedModulus", format!("scan supports n = 2 only, got {n}")));
    }
    if bound > MAX_SCAN_BOUND {
        return Err(inadmissible("BoundTooLarge", format!("bound {bound} exceeds {MAX_SCAN_BOUND}")));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().map_err(|e| CliError::Internal(e.to_string()))?;
    let (cache, path) = open_cache(no_cache)?;
    let records: Vec<ResultRecord> = pool.install(|| {
        let evaluated = redei::scan2_with(bound, &cache)?;
        evaluated
            .into_par_iter()
            .map(|(t, e)| {
                let beta = cache.get_or_compute(t.p1(), t.p2())?;
                let (oracle, note) = redei::oracle_with(&t, &beta)?;
                let mut fallbacks = e.fallbacks;
                fallbacks.extend(note);
                let triple = t.primes().iter().map(ToString::to_string).collect();
                Ok(ResultRecord::new(e.value, triple, oracle == e.value, fallbacks))
            })
            .collect::<Result<Vec<_>, RedeiError>>()
    })?;
    close_cache(&cache, path)?;
    Ok(match out {
        OutFormat::Csv => {
            let mut s = format!("{CSV_HEADER}\n");
            for r in &records {
                s += &r.csv_row();
                s.push('\n');
            }
            s
        }
        OutFormat::Json => serde_json::to_string_pretty(&records).expect("records serialize") + "\n",
    })
}

pub fn cmd_verify(suites: &[Suite], bound: u64, search_bound: u64) -> Result<String, CliError> {
    let mut wanted: Vec<Suite> = if suites.contains(&Suite::All) {
        Suite::value_variants().iter().copied().filter(|s| *s != Suite::All).collect()
    } else {
        suites.to_vec()
    };
    wanted.dedup();
    let mut ok = true;
    for s in wanted {
        let r = match s {
            Suite::Lemma1 => verify::lemma1(),
            Suite::Lemma2 => verify::lemma2(),
            Suite::Alternating => verify::alternating(),
            Suite::Reciprocity => verify::redei_reciprocity(bound),
            Suite::Oracle => verify::redei_oracle(bound),
            Suite::WellDefined => verify::redei_well_defined(bound),
            Suite::Heisenberg => verify::heisenberg(),
            Suite::TripleSign => verify::triple_sign(),
            Suite::Eisenstein => verify::eisenstein_fixtures(),
            Suite::Cubic => verify::cubic_suite(search_bound),
            Suite::All => unreachable!(),
        };
        // Reports go out as they finish, since sweeps can be slow.
        println!("{r}");
        ok &= r.passed();
    }
    if ok {
        Ok(String::new())
    } else {
        Err(CliError::Failed)
    }
}
