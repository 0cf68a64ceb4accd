mod cache;
mod job;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use tannaka_core::coend::FiberSetup;
use tannaka_core::exactla::Fp;
use tannaka_core::groups::{FiniteGroup, RetractionPair};
use tannaka_core::pipeline::{check_same_subgroup, compare_sections, reconstruct_with, Options, Reconstruction, Routes};
use thiserror::Error;

use cache::{Cache, Lookup};

const IRREPS_SCHEMA: &str = "tannaka.irreps/1";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] tannaka_core::Error),
    #[error("failed verdicts: {}", .0.join(", "))]
    Verdict(Vec<String>),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use tannaka_core::Error as E;
        match self {
            CliError::Input(_) => 2,
            CliError::Core(E::Validation(_) | E::OrderCap { .. } | E::NonSplittingPrime { .. }) => 2,
            CliError::Core(E::LasVegasExhausted { .. }) => 3,
            CliError::Core(E::NonSplitSpectrum(_) | E::Descent(_) | E::RouteMismatch(_)) => 4,
            CliError::Verdict(_) => 4,
            CliError::Output(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "tannaka", version, about = "Reconstruct ker(K -> H) from the restriction functor Rep(K) -> Rep(H) over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible representations of the group over F_p.
    Irreps(Common),
    /// Full reconstruction for one retraction.
    Reconstruct {
        #[command(flatten)]
        common: Common,
        /// Retraction file, or inline JSON {"generator_images": [...]}.
        #[arg(long)]
        retraction: Option<String>,
        #[arg(long, default_value = "all")]
        routes: Routes,
        /// Record wall-clock timings; makes the report non-reproducible.
        #[arg(long)]
        timings: bool,
    },
    /// Reconstruct two retractions of the same (K, H) and compare the results.
    CompareSections {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        retraction: String,
        #[arg(long)]
        retraction2: String,
        #[arg(long, default_value = "all")]
        routes: Routes,
    },
}

#[derive(Args)]
struct Common {
    /// Group file: {"schema", "degree", "generators" (1-based), "labels"}.
    #[arg(long)]
    group: PathBuf,
    /// Comma-separated words generating H.
    #[arg(long, default_value = "")]
    subgroup_gens: String,
    /// "auto" or an explicit prime with p = 1 mod exp(K).
    #[arg(long, default_value = "auto")]
    prime: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, env = "TANNAKA_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct IrrepsReport {
    schema: &'static str,
    prime: u64,
    seed: u64,
    order: usize,
    degrees: Vec<usize>,
    sum_of_squares: usize,
    sum_of_squares_ok: bool,
    characters: Vec<Vec<u64>>,
}

fn emit<T: Serialize>(report: &T, out: Option<&PathBuf>, summary: &str) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(report).expect("serializable") + "\n";
    match out {
        Some(path) => {
            fs::write(path, text)?;
            println!("{summary}");
        }
        None => {
            print!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn note_cache(what: &str, lookup: Lookup) {
    match lookup {
        Lookup::Hit => eprintln!("cache hit: {what}"),
        Lookup::Miss => eprintln!("cache miss: {what}"),
        Lookup::Disabled => {}
    }
}

fn setup_for(pair: RetractionPair, field: Fp, seed: u64, cache: &Cache) -> Result<FiberSetup, CliError> {
    let (seed_k, seed_h) = FiberSetup::irreducible_seeds(seed);
    let (irr_k, hit_k) = cache.irreducibles(pair.big(), field, seed_k)?;
    note_cache("K", hit_k);
    let (irr_h, hit_h) = cache.irreducibles(pair.small(), field, seed_h)?;
    note_cache("H", hit_h);
    Ok(FiberSetup::with_irreducibles(pair, field, irr_k, irr_h)?)
}

fn summary_of(r: &Reconstruction) -> String {
    let g = r.recovered_group();
    format!(
        "recovered group {} of order {} ({}); dim L = {}",
        tannaka_core::catalog::identify(g),
        g.order(),
        if g.is_abelian() { "abelian" } else { "nonabelian" },
        r.dim()
    )
}

fn load(common: &Common) -> Result<(Arc<FiniteGroup>, Vec<String>, Fp, Cache), CliError> {
    let big = job::read_group(&common.group)?;
    let subgroup = job::split_words(&common.subgroup_gens);
    let field = job::choose_prime(&big, &common.prime)?;
    Ok((big, subgroup, field, Cache::new(common.cache_dir.clone())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Irreps(common) => {
            let (big, _, field, cache) = load(&common)?;
            let (seed_k, _) = FiberSetup::irreducible_seeds(common.seed);
            let (irr, lookup) = cache.irreducibles(&big, field, seed_k)?;
            note_cache("K", lookup);
            let degrees = irr.degrees();
            let sum_of_squares = degrees.iter().map(|d| d * d).sum();
            let report = IrrepsReport {
                schema: IRREPS_SCHEMA,
                prime: field.p(),
                seed: common.seed,
                order: big.order(),
                sum_of_squares_ok: sum_of_squares == big.order(),
                degrees,
                sum_of_squares,
                characters: irr.irreps().iter().map(|r| r.character()).collect(),
            };
            let summary = format!("p = {}, degrees {:?}", report.prime, report.degrees);
            emit(&report, common.out.as_ref(), &summary)
        }
        Command::Reconstruct { common, retraction, routes, timings } => {
            let (big, subgroup, field, cache) = load(&common)?;
            let retraction = retraction.as_deref().map(job::read_retraction).transpose()?;
            let pair = job::build_pair(&big, &subgroup, retraction.as_ref())?;
            let setup = setup_for(pair, field, common.seed, &cache)?;
            let r = reconstruct_with(setup, Options { seed: common.seed, routes, timings })?;
            emit(&r.report(), common.out.as_ref(), &summary_of(&r))?;
            match r.failures() {
                f if f.is_empty() => Ok(()),
                f => Err(CliError::Verdict(f)),
            }
        }
        Command::CompareSections { common, retraction, retraction2, routes } => {
            let (big, subgroup, field, cache) = load(&common)?;
            let first = job::build_pair(&big, &subgroup, Some(&job::read_retraction(&retraction)?))?;
            let second = job::build_pair(&big, &subgroup, Some(&job::read_retraction(&retraction2)?))?;
            check_same_subgroup(&first, &second)?;
            let options = Options { seed: common.seed, routes, timings: false };
            let r1 = reconstruct_with(setup_for(first, field, common.seed, &cache)?, options)?;
            let r2 = reconstruct_with(setup_for(second, field, common.seed, &cache)?, options)?;
            let report = compare_sections(&r1, &r2)?;
            emit(&report, common.out.as_ref(), &report.message)?;
            let mut failures: Vec<String> = r1.failures().into_iter().map(|f| format!("first: {f}")).collect();
            failures.extend(r2.failures().into_iter().map(|f| format!("second: {f}")));
            if failures.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verdict(failures))
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use tannaka_core::Error as E;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Input("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(E::NonSplittingPrime { p: 5, detail: String::new() }).exit_code(), 2);
        assert_eq!(CliError::from(E::LasVegasExhausted { seed: 1, context: String::new() }).exit_code(), 3);
        assert_eq!(CliError::from(E::NonSplitSpectrum(String::new())).exit_code(), 4);
        assert_eq!(CliError::Verdict(vec!["associativity".into()]).exit_code(), 4);
    }
}
