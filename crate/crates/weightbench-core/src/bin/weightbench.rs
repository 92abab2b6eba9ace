//! Command-line front end: loads groups, dispatches to the library, and
//! emits one JSON report per invocation.
//!
//! Exit codes: 0 when the command ran and every checked equality held,
//! 1 when a checked equality failed, 2 for input errors (parse, bad
//! prime, not an automorphism, ...), 3 when a size cap was exceeded.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

use weightbench_core::alperin::{alternating_sum_report, check_alperin, check_equivariant};
use weightbench_core::chains::{enumerate_regular_chains, pair_chains, PairMode};
use weightbench_core::error::Error;
use weightbench_core::fusion::{validate_frobenius_axioms, FusionData};
use weightbench_core::io::{load_automorphism, load_group, parse_pair_spec};
use weightbench_core::kstar::CyclicData;
use weightbench_core::report::{
    chain_entries, digest_bytes, digest_files, fusion_payload, pairing_payload, ChainsPayload,
    PairingPayload, Report, SweepEntry, SweepPayload,
};

#[derive(Parser)]
#[command(
    name = "weightbench",
    version,
    about = "exact weight-counting checks for finite permutation groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// write the JSON report to this file instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    /// element cap for group closure
    #[arg(long, global = true, default_value_t = 20000)]
    cap_elements: usize,

    /// cap on enumerated chains per group
    #[arg(long, global = true, default_value_t = 1_000_000)]
    cap_chains: usize,

    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// subgroup classes up to conjugacy with centric/radical flags
    Fusion {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
    },
    /// centric chain classes up to conjugacy
    Chains {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
    },
    /// run both cancellation pairings and verify their invariants
    CancelVerify {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
    },
    /// compare the p-regular class count against the weight count
    AlperinCheck {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
    },
    /// compare orbit counts on both sides under an automorphism
    EquivariantCheck {
        group: PathBuf,
        #[arg(short, long)]
        prime: u64,
        /// automorphism file (images of the group generators)
        #[arg(long)]
        auto: PathBuf,
    },
    /// fixed-rank checks for twisted automorphisms of a cyclic group
    CyclicLemma {
        /// cyclic group order
        #[arg(short)]
        m: u64,
        /// sweep every subgroup pair with matching order and image
        #[arg(long, conflicts_with = "spec")]
        exhaustive: bool,
        /// file with two generator lines, one per subgroup
        #[arg(long)]
        spec: Option<PathBuf>,
        /// prime for the coprimality requirement
        #[arg(short, long)]
        prime: Option<u64>,
    },
    /// run alperin-check, the alternating sums, and both pairings over
    /// every bundled group and relevant prime
    CorpusSweep {
        /// corpus directory (falls back to $WEIGHTBENCH_CORPUS, then `corpus`)
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        // ignore the error if a pool was already installed
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let started = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::CapExceeded { .. }
                | Error::ChainCapExceeded { .. }
                | Error::PlaceSelectionFailure { .. } => 3,
                Error::PairingFailure => 1,
                _ => 2,
            }
        }
    };
    eprintln!("elapsed: {:.2?}", started.elapsed());
    std::process::exit(code);
}

fn emit<T: Serialize>(report: &Report<T>, output: Option<&Path>) -> Result<(), Error> {
    let json = report.to_json();
    match output {
        Some(path) => std::fs::write(path, json)?,
        None => print!("{}", json),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<i32, Error> {
    match &cli.command {
        Command::Fusion { group, prime } => {
            let g = load_group(group, cli.cap_elements)?;
            let fusion = FusionData::build(&g, *prime)?;
            let axioms = validate_frobenius_axioms(&g, *prime)?;
            let ok = axioms.all_ok();
            let payload = fusion_payload(&fusion, axioms, g.order());
            let report = Report::new("fusion", digest_files(&[group])?, payload);
            emit(&report, cli.output.as_deref())?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Chains { group, prime } => {
            let g = load_group(group, cli.cap_elements)?;
            let fusion = FusionData::build(&g, *prime)?;
            let classes = enumerate_regular_chains(&g, &fusion, true, cli.cap_chains)?;
            let payload = ChainsPayload {
                prime: *prime,
                group_order: g.order(),
                class_count: classes.len(),
                dade_class_count: classes.iter().filter(|c| c.dade_radical_chain).count(),
                classes: chain_entries(&classes),
            };
            let report = Report::new("chains", digest_files(&[group])?, payload);
            emit(&report, cli.output.as_deref())?;
            Ok(0)
        }
        Command::CancelVerify { group, prime } => {
            let g = load_group(group, cli.cap_elements)?;
            let (tau, varpi) = run_pairings(&g, *prime, cli.cap_chains)?;
            #[derive(Serialize)]
            struct CancelPayload {
                prime: u64,
                group_order: usize,
                tau: PairingPayload,
                varpi: PairingPayload,
            }
            let payload = CancelPayload {
                prime: *prime,
                group_order: g.order(),
                tau,
                varpi,
            };
            let report = Report::new("cancel-verify", digest_files(&[group])?, payload);
            emit(&report, cli.output.as_deref())?;
            Ok(0)
        }
        Command::AlperinCheck { group, prime } => {
            let g = load_group(group, cli.cap_elements)?;
            let payload = check_alperin(&g, *prime)?;
            let equal = payload.equal;
            let report = Report::new("alperin-check", digest_files(&[group])?, payload);
            emit(&report, cli.output.as_deref())?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::EquivariantCheck { group, prime, auto } => {
            let g = load_group(group, cli.cap_elements)?;
            let alpha = load_automorphism(auto, &g)?;
            let payload = check_equivariant(&g, *prime, &alpha)?;
            let equal = payload.equal;
            let report = Report::new("equivariant-check", digest_files(&[group, auto])?, payload);
            emit(&report, cli.output.as_deref())?;
            Ok(if equal { 0 } else { 1 })
        }
        Command::CyclicLemma {
            m,
            exhaustive,
            spec,
            prime,
        } => {
            let data = CyclicData::new(*m, *prime)?;
            match (exhaustive, spec) {
                (true, None) => {
                    let payload = data.bucket_sweep();
                    let ok = payload.all_equal && payload.orbit_dims_all_one;
                    let digest = digest_bytes(format!("cyclic-lemma m={} exhaustive", m).as_bytes());
                    let report = Report::new("cyclic-lemma", digest, payload);
                    emit(&report, cli.output.as_deref())?;
                    Ok(if ok { 0 } else { 1 })
                }
                (false, Some(path)) => {
                    let text = std::fs::read_to_string(path)?;
                    let (first, second) = parse_pair_spec(&text, &data)?;
                    let payload = data.verify_pair_ranks(&first, &second)?;
                    let equal = payload.equal;
                    let digest = digest_bytes(format!("cyclic-lemma m={}\n{}", m, text).as_bytes());
                    let report = Report::new("cyclic-lemma", digest, payload);
                    emit(&report, cli.output.as_deref())?;
                    Ok(if equal { 0 } else { 1 })
                }
                _ => Err(Error::PreconditionViolated(
                    "cyclic-lemma needs exactly one of --exhaustive or --spec <file>".into(),
                )),
            }
        }
        Command::CorpusSweep { corpus_dir } => {
            let dir = corpus_dir.clone().unwrap_or_else(|| {
                std::env::var("WEIGHTBENCH_CORPUS")
                    .map(PathBuf::from)
                    .unwrap_or_else(|_| PathBuf::from("corpus"))
            });
            let payload = corpus_sweep(&dir, cli.cap_elements, cli.cap_chains)?;
            let ok = payload.0.all_ok;
            let report = Report::new("corpus-sweep", payload.1, payload.0);
            emit(&report, cli.output.as_deref())?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn run_pairings(
    g: &weightbench_core::group::PermGroup,
    prime: u64,
    cap_chains: usize,
) -> Result<(PairingPayload, PairingPayload), Error> {
    let fusion = FusionData::build(g, prime)?;
    let classes = enumerate_regular_chains(g, &fusion, true, cap_chains)?;
    let tau = pair_chains(g, &fusion, &classes, PairMode::Tau)?;
    let varpi = pair_chains(g, &fusion, &classes, PairMode::Varpi)?;
    Ok((
        pairing_payload(&classes, &tau, "tau"),
        pairing_payload(&classes, &varpi, "varpi"),
    ))
}

/// One corpus job per (group file, dividing prime in {2, 3, 5, 7}); jobs
/// fan out across threads, results keep the deterministic job order.
fn corpus_sweep(
    dir: &Path,
    cap_elements: usize,
    cap_chains: usize,
) -> Result<(SweepPayload, String), Error> {
    use rayon::prelude::*;

    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "grp"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(Error::PreconditionViolated(format!(
            "no .grp files found in {}",
            dir.display()
        )));
    }
    let digest = digest_files(&files.iter().map(|p| p.as_path()).collect::<Vec<_>>())?;

    let mut jobs = Vec::new();
    for path in &files {
        let g = load_group(path, cap_elements)?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        for p in [2u64, 3, 5, 7] {
            if g.order() as u64 % p == 0 {
                jobs.push((name.clone(), g.clone(), p));
            }
        }
    }

    let entries: Vec<SweepEntry> = jobs
        .par_iter()
        .map(|(name, g, p)| -> Result<SweepEntry, Error> {
            let alperin = check_alperin(g, *p)?;
            let sums = alternating_sum_report(g, *p, cap_chains)?;
            let (tau, varpi) = run_pairings(g, *p, cap_chains)?;
            Ok(SweepEntry {
                file: name.clone(),
                prime: *p,
                group_order: g.order(),
                brauer_count: alperin.brauer_count,
                weight_count: alperin.weight_count,
                alperin_equal: alperin.equal,
                sums_all_equal: sums.all_equal,
                tau_survivors: tau.survivor_count,
                varpi_survivors: varpi.survivor_count,
                pairings_verified: tau.verified && varpi.verified,
            })
        })
        .collect::<Result<_, _>>()?;

    let all_ok = entries
        .iter()
        .all(|e| e.alperin_equal && e.sums_all_equal && e.pairings_verified);
    Ok((SweepPayload { entries, all_ok }, digest))
}
