//! `aomoto`: exact combinatorics of real hyperplane arrangements from the
//! command line. Reads arrangement JSON files, emits JSON reports.
//! Exit codes: 0 success, 1 check failure, 2 usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use aomoto_core::arrangement::{
    betti_euler, dense_edges, enumerate_chambers, infinity_span, intersection_poset, Arrangement,
    ArrangementFile, DenseWhere,
};
use aomoto_core::chamber_complex::{
    ChamberCohomologyMode, ChamberComplex, Coefficients, LocalSystem,
};
use aomoto_core::corpus;
use aomoto_core::flag::{build_flag, stratify, verify_flag};
use aomoto_core::os::{
    aomoto_cohomology, check_unit_hypothesis, CohomologyMode, OsCalculus, WeightVector,
};
use aomoto_core::rat::format_rational;
use aomoto_core::verify::{run_verify_suite_with, VerifyInputs};

#[derive(Parser)]
#[command(
    name = "aomoto",
    version,
    about = "Exact invariants of real hyperplane arrangements: posets, chambers, \
             Orlik-Solomon/Aomoto and chamber cochain complexes, and the machine \
             verification suite for their vanishing theorems."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for flag construction and random corpora (overrides the
    /// AOMOTO_SEED environment variable).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Compact single-line JSON instead of pretty-printed.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Affine and projective intersection posets, Mobius data, Betti numbers.
    Poset { file: PathBuf },
    /// All chambers with sign vectors, witnesses and recession data.
    Chambers { file: PathBuf },
    /// Generic flag near infinity and the ch/bch/uch stratification.
    Strata { file: PathBuf },
    /// Dense edges inside the hyperplane at infinity (both algorithms).
    #[command(name = "dense-infinity")]
    DenseInfinity { file: PathBuf },
    /// Aomoto complex cohomology over a coefficient ring.
    Aomoto {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        /// Comma-separated weights, e.g. 1,1,-3.
        #[arg(long)]
        lambda: Option<String>,
        /// full (fields and Z) or certificate (any ring, dim <= 3).
        #[arg(long, default_value = "full")]
        mode: String,
        /// Dimension threshold for the dense-edge unit check.
        #[arg(long = "dim-threshold", default_value_t = 0)]
        dim_threshold: usize,
        /// Include the coboundary matrices in the report.
        #[arg(long)]
        matrices: bool,
    },
    /// Chamber-complex cohomology (nabla_omega) and the Aomoto comparison.
    #[command(name = "chamber-complex")]
    ChamberCx {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        /// Include the coboundary matrices in the report.
        #[arg(long)]
        matrices: bool,
    },
    /// Local system cohomology from half monodromies (nabla_L).
    Local {
        file: PathBuf,
        /// Field for the monodromies (default Q; Q(zeta_n) and F_p work).
        #[arg(long)]
        ring: Option<String>,
        /// Comma-separated half monodromies, e.g. 2,3,5 or zeta^1,zeta^3.
        #[arg(long = "q-sqrt")]
        q_sqrt: Option<String>,
    },
    /// Restricted-block certificate at one level: ordering, triangularity,
    /// determinant and unit witness.
    Certificate {
        file: PathBuf,
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long = "q-sqrt")]
        q_sqrt: Option<String>,
        #[arg(long)]
        level: usize,
    },
    /// Run the verification suite on a file or a corpus.
    Verify {
        file: Option<PathBuf>,
        /// e1 | e3 | e4 | fig1 | builtin | random:<count>
        #[arg(long)]
        corpus: Option<String>,
        #[arg(long)]
        ring: Option<String>,
        /// Weights to test the unit hypothesis and vanishing against.
        #[arg(long)]
        lambda: Option<String>,
        /// Half monodromies to test the local hypothesis against.
        #[arg(long = "q-sqrt")]
        q_sqrt: Option<String>,
        /// Include wall-clock timings (makes output non-reproducible).
        #[arg(long)]
        timings: bool,
    },
}

/// Usage-class failures exit 2, check failures exit 1.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<aomoto_core::Error> for Failure {
    fn from(e: aomoto_core::Error) -> Self {
        use aomoto_core::Error::*;
        match e {
            Parse(_)
            | UnknownRing(_)
            | NotPrime(_)
            | ModulusTooSmall(_)
            | BadCyclotomicOrder
            | Shape(_)
            | ZeroNormal(_)
            | DuplicateHyperplane(_, _)
            | UnsupportedMode(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("AOMOTO_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(corpus::DEFAULT_SEED);
    match dispatch(&cli, seed) {
        Ok((value, ok)) => {
            emit(&value, cli.json);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failure: {msg}");
            ExitCode::from(1)
        }
    }
}

fn emit(value: &Value, compact: bool) {
    if compact {
        println!("{}", serde_json::to_string(value).expect("serializable"));
    } else {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }
}

fn dispatch(cli: &Cli, seed: u64) -> Result<(Value, bool), Failure> {
    match &cli.command {
        Command::Poset { file } => {
            let (input, arr) = load(file)?;
            let _ = input;
            Ok((poset_report(&arr)?, true))
        }
        Command::Chambers { file } => {
            let (_, arr) = load(file)?;
            Ok((chambers_report(&arr)?, true))
        }
        Command::Strata { file } => {
            let (input, arr) = load(file)?;
            let seed = input.seed.unwrap_or(seed);
            Ok((strata_report(&arr, seed)?, true))
        }
        Command::DenseInfinity { file } => {
            let (_, arr) = load(file)?;
            Ok((dense_report(&arr)?, true))
        }
        Command::Aomoto {
            file,
            ring,
            lambda,
            mode,
            dim_threshold,
            matrices,
        } => {
            let (input, arr) = load(file)?;
            let w = weights(&arr, &input, ring.as_deref(), lambda.as_deref())?;
            let seed = input.seed.unwrap_or(seed);
            aomoto_report(&arr, &w, mode, *dim_threshold, seed, *matrices)
        }
        Command::ChamberCx {
            file,
            ring,
            lambda,
            matrices,
        } => {
            let (input, arr) = load(file)?;
            let w = weights(&arr, &input, ring.as_deref(), lambda.as_deref())?;
            let seed = input.seed.unwrap_or(seed);
            chamber_report(&arr, &w, seed, *matrices)
        }
        Command::Local { file, ring, q_sqrt } => {
            let (input, arr) = load(file)?;
            let ls = local_system(&arr, &input, ring.as_deref(), q_sqrt.as_deref())?;
            let seed = input.seed.unwrap_or(seed);
            local_report(&arr, &ls, seed)
        }
        Command::Certificate {
            file,
            ring,
            lambda,
            q_sqrt,
            level,
        } => {
            let (input, arr) = load(file)?;
            let coeffs = if q_sqrt.is_some() || (lambda.is_none() && input.q_sqrt.is_some()) {
                Coefficients::Local(local_system(
                    &arr,
                    &input,
                    ring.as_deref(),
                    q_sqrt.as_deref(),
                )?)
            } else {
                Coefficients::Weights(weights(&arr, &input, ring.as_deref(), lambda.as_deref())?)
            };
            let seed = input.seed.unwrap_or(seed);
            certificate_report(&arr, &coeffs, *level, seed)
        }
        Command::Verify {
            file,
            corpus: corpus_arg,
            ring,
            lambda,
            q_sqrt,
            timings,
        } => verify_report(
            file.as_deref(),
            corpus_arg.as_deref(),
            ring.as_deref(),
            lambda.as_deref(),
            q_sqrt.as_deref(),
            seed,
            *timings,
        ),
    }
}

fn load(path: &Path) -> Result<(ArrangementFile, Arrangement), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let input: ArrangementFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let arr = input.to_arrangement().map_err(Failure::from)?;
    Ok((input, arr))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}

fn weights(
    arr: &Arrangement,
    input: &ArrangementFile,
    ring: Option<&str>,
    lambda: Option<&str>,
) -> Result<WeightVector, Failure> {
    let ring = ring
        .map(str::to_string)
        .or_else(|| input.ring.clone())
        .ok_or_else(|| Failure::Usage("no ring given (--ring or file field)".into()))?;
    let lambda: Vec<String> = match lambda {
        Some(s) => split_list(s),
        None => input
            .lambda
            .clone()
            .ok_or_else(|| Failure::Usage("no weights given (--lambda or file field)".into()))?,
    };
    if lambda.len() != arr.n() {
        return Err(Failure::Usage(format!(
            "{} weights for {} hyperplanes",
            lambda.len(),
            arr.n()
        )));
    }
    WeightVector::from_strings(&ring, &lambda).map_err(Failure::from)
}

fn local_system(
    arr: &Arrangement,
    input: &ArrangementFile,
    ring: Option<&str>,
    q_sqrt: Option<&str>,
) -> Result<LocalSystem, Failure> {
    let ring = ring
        .map(str::to_string)
        .or_else(|| input.ring.clone())
        .unwrap_or_else(|| "Q".to_string());
    let q: Vec<String> = match q_sqrt {
        Some(s) => split_list(s),
        None => input
            .q_sqrt
            .clone()
            .ok_or_else(|| Failure::Usage("no half monodromies (--q-sqrt or file field)".into()))?,
    };
    if q.len() != arr.n() {
        return Err(Failure::Usage(format!(
            "{} half monodromies for {} hyperplanes",
            q.len(),
            arr.n()
        )));
    }
    LocalSystem::from_strings(&ring, &q).map_err(Failure::from)
}

fn poset_report(arr: &Arrangement) -> Result<Value, Failure> {
    let (aff, proj) = intersection_poset(arr);
    let betti = betti_euler(arr, &aff);
    let affine: Vec<Value> = aff
        .flats
        .iter()
        .zip(&aff.mobius)
        .map(|(f, mu)| {
            json!({
                "support": f.support,
                "dim": f.dim,
                "mobius": mu.to_string(),
            })
        })
        .collect();
    let projective: Vec<Value> = proj
        .flats
        .iter()
        .map(|f| {
            json!({
                "support": f.support,
                "dim": f.dim,
                "at_infinity": f.at_infinity,
            })
        })
        .collect();
    Ok(json!({
        "dim": arr.dim(),
        "n": arr.n(),
        "essential": arr.is_essential(),
        "betti": betti.betti,
        "euler_characteristic": betti.euler_characteristic,
        "bounded_chambers": betti.bounded_chambers,
        "affine_flats": affine,
        "projective_flats": projective,
    }))
}

fn chambers_report(arr: &Arrangement) -> Result<Value, Failure> {
    let chambers = enumerate_chambers(arr);
    let list: Vec<Value> = chambers
        .iter()
        .map(|c| {
            let x = infinity_span(arr, c);
            json!({
                "signs": c.signs.to_string(),
                "interior_point": c.interior_point.iter().map(format_rational).collect::<Vec<_>>(),
                "bounded": c.is_bounded(),
                "dim_x": c.dim_x(),
                "infinity_support": x.map(|f| f.support),
            })
        })
        .collect();
    Ok(json!({
        "dim": arr.dim(),
        "n": arr.n(),
        "count": chambers.len(),
        "chambers": list,
    }))
}

fn strata_report(arr: &Arrangement, seed: u64) -> Result<Value, Failure> {
    let flag = build_flag(arr, seed).map_err(Failure::from)?;
    let report = verify_flag(arr, &flag);
    let chambers = enumerate_chambers(arr);
    let strat = stratify(arr, &flag, &chambers).map_err(Failure::from)?;
    let levels: Vec<Value> = strat
        .levels
        .iter()
        .enumerate()
        .map(|(k, level)| {
            let names = |v: &[usize]| -> Vec<String> {
                v.iter().map(|&i| chambers[i].signs.to_string()).collect()
            };
            let opposite: Vec<Value> = level
                .opposite
                .iter()
                .map(|(&c, &o)| {
                    json!({
                        "chamber": chambers[c].signs.to_string(),
                        "opposite": chambers[o].signs.to_string(),
                    })
                })
                .collect();
            json!({
                "k": k,
                "ch": names(&level.ch),
                "bch": names(&level.bch),
                "uch": names(&level.uch),
                "opposite": opposite,
            })
        })
        .collect();
    Ok(json!({
        "seed": seed,
        "flag": serde_json::to_value(flag.to_json()).unwrap(),
        "flag_valid": report.ok,
        "levels": levels,
    }))
}

fn dense_report(arr: &Arrangement) -> Result<Value, Failure> {
    let (_, proj) = intersection_poset(arr);
    let dense = dense_edges(arr, &proj, DenseWhere::AtInfinity).map_err(Failure::from)?;
    let flats: Vec<Value> = dense
        .iter()
        .map(|f| json!({ "support": f.support, "dim": f.dim }))
        .collect();
    Ok(json!({
        "algorithms_agree": true,
        "flats": flats,
    }))
}

fn groups_json(groups: &[aomoto_core::linalg::CohomologyGroup]) -> Value {
    let list: Vec<Value> = groups
        .iter()
        .enumerate()
        .map(|(k, g)| {
            json!({
                "degree": k,
                "group": g.display(),
                "free_rank": g.free_rank,
                "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!(list)
}

fn aomoto_report(
    arr: &Arrangement,
    w: &WeightVector,
    mode: &str,
    dim_threshold: usize,
    seed: u64,
    matrices: bool,
) -> Result<(Value, bool), Failure> {
    let calc = OsCalculus::new(arr);
    let (hypothesis, witnesses) =
        check_unit_hypothesis(arr, w, dim_threshold).map_err(Failure::from)?;
    let mode = match mode {
        "full" => CohomologyMode::Full,
        "certificate" => CohomologyMode::Certificate { seed },
        other => return Err(Failure::Usage(format!("unknown mode `{other}`"))),
    };
    let groups = aomoto_cohomology(arr, w, mode).map_err(Failure::from)?;
    let dims: Vec<usize> = groups.iter().map(|g| g.free_rank).collect();
    let mut report = json!({
        "ring": w.ring().spec().descriptor(),
        "nbc_counts": calc.nbc_counts(),
        "unit_hypothesis": {
            "dim_threshold": dim_threshold,
            "holds": hypothesis,
            "non_unit_witnesses": witnesses.iter().map(|(s, v)| json!({
                "support": s, "lambda_x": v,
            })).collect::<Vec<_>>(),
        },
        "dims": dims,
        "cohomology": groups_json(&groups),
    });
    if matrices {
        let ms = aomoto_core::os::aomoto_matrices(&calc, w).map_err(Failure::from)?;
        report["matrices"] = json!(ms.iter().map(|m| m.to_json()).collect::<Vec<_>>());
    }
    Ok((report, true))
}

fn chamber_report(
    arr: &Arrangement,
    w: &WeightVector,
    seed: u64,
    matrices: bool,
) -> Result<(Value, bool), Failure> {
    let flag = build_flag(arr, seed).map_err(Failure::from)?;
    let cx = ChamberComplex::new(arr, &flag).map_err(Failure::from)?;
    let out = cx
        .cohomology(
            &Coefficients::Weights(w.clone()),
            ChamberCohomologyMode::Full,
        )
        .map_err(Failure::from)?;
    let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
    let aomoto = aomoto_cohomology(arr, w, CohomologyMode::Full).map_err(Failure::from)?;
    let adims: Vec<usize> = aomoto.iter().map(|g| g.free_rank).collect();
    let matches = dims == adims
        && out
            .groups
            .iter()
            .zip(&aomoto)
            .all(|(a, b)| a.torsion == b.torsion);
    let mut report = json!({
        "seed": seed,
        "ring": w.ring().spec().descriptor(),
        "chamber_counts": cx.strat.levels.iter().map(|l| l.ch.len()).collect::<Vec<_>>(),
        "dims": dims,
        "cohomology": groups_json(&out.groups),
        "matches_aomoto": matches,
    });
    if matrices {
        let ms = cx
            .nabla_matrices(&Coefficients::Weights(w.clone()))
            .map_err(Failure::from)?;
        report["matrices"] = json!(ms.iter().map(|m| m.to_json()).collect::<Vec<_>>());
    }
    Ok((report, matches))
}

fn local_report(arr: &Arrangement, ls: &LocalSystem, seed: u64) -> Result<(Value, bool), Failure> {
    let flag = build_flag(arr, seed).map_err(Failure::from)?;
    let cx = ChamberComplex::new(arr, &flag).map_err(Failure::from)?;
    let out = cx
        .cohomology(
            &Coefficients::Local(ls.clone()),
            ChamberCohomologyMode::Full,
        )
        .map_err(Failure::from)?;
    let dims: Vec<usize> = out.groups.iter().map(|g| g.free_rank).collect();
    let (_, proj) = intersection_poset(arr);
    let dense = dense_edges(arr, &proj, DenseWhere::AtInfinity).map_err(Failure::from)?;
    let ring = ls.ring();
    let q_values: Vec<Value> = dense
        .iter()
        .map(|f| {
            let q = ls.q_flat(f);
            json!({
                "support": f.support,
                "q_x": ring.format(&q),
                "is_one": aomoto_core::ring::RingOps::is_one(&**ring, &q),
            })
        })
        .collect();
    Ok((
        json!({
            "seed": seed,
            "ring": ring.spec().descriptor(),
            "q_infinity_sqrt": ring.format(&ls.q_infinity_half()),
            "dense_infinity": q_values,
            "dims": dims,
            "cohomology": groups_json(&out.groups),
        }),
        true,
    ))
}

fn certificate_report(
    arr: &Arrangement,
    coeffs: &Coefficients,
    level: usize,
    seed: u64,
) -> Result<(Value, bool), Failure> {
    let flag = build_flag(arr, seed).map_err(Failure::from)?;
    let cx = ChamberComplex::new(arr, &flag).map_err(Failure::from)?;
    let block = cx.restricted_block(coeffs, level).map_err(Failure::from)?;
    let ok = block.triangular && block.det_is_unit;
    Ok((
        json!({
            "seed": seed,
            "certificate": serde_json::to_value(&block).unwrap(),
        }),
        ok,
    ))
}

fn verify_report(
    file: Option<&Path>,
    corpus_arg: Option<&str>,
    ring: Option<&str>,
    lambda: Option<&str>,
    q_sqrt: Option<&str>,
    seed: u64,
    timings: bool,
) -> Result<(Value, bool), Failure> {
    let mut inputs = VerifyInputs::default();
    let mut instances: Vec<(String, Arrangement)> = Vec::new();
    match (file, corpus_arg) {
        (Some(path), None) => {
            let (input, arr) = load(path)?;
            if ring.is_some() || lambda.is_some() || input.lambda.is_some() {
                inputs.weights = Some(weights(&arr, &input, ring, lambda)?);
            }
            if q_sqrt.is_some() || input.q_sqrt.is_some() {
                inputs.local = Some(local_system(&arr, &input, ring, q_sqrt)?);
            }
            instances.push((path.display().to_string(), arr));
        }
        (None, Some(spec)) => {
            if spec == "builtin" {
                for name in corpus::BUILTIN_NAMES {
                    instances.push((name.to_string(), corpus::builtin(name).unwrap()));
                }
            } else if let Some(arr) = corpus::builtin(spec) {
                if ring.is_some() && (lambda.is_some() || q_sqrt.is_some()) {
                    let input = ArrangementFile {
                        dim: arr.dim(),
                        hyperplanes: vec![],
                        ring: None,
                        lambda: None,
                        q_sqrt: None,
                        seed: None,
                    };
                    if lambda.is_some() {
                        inputs.weights = Some(weights(&arr, &input, ring, lambda)?);
                    }
                    if q_sqrt.is_some() {
                        inputs.local = Some(local_system(&arr, &input, ring, q_sqrt)?);
                    }
                }
                instances.push((spec.to_string(), arr));
            } else if let Some(count) = spec.strip_prefix("random:") {
                let count: usize = count
                    .parse()
                    .map_err(|_| Failure::Usage(format!("invalid corpus spec `{spec}`")))?;
                instances.extend(corpus::random_corpus(seed, count, 7));
            } else {
                return Err(Failure::Usage(format!(
                    "unknown corpus `{spec}` (use e1|e3|e4|fig1|builtin|random:<count>)"
                )));
            }
        }
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "give either a file or --corpus, not both".into(),
            ))
        }
        (None, None) => {
            return Err(Failure::Usage("give a file or --corpus".into()));
        }
    }

    let mut reports = Vec::new();
    let mut all_pass = true;
    for (name, arr) in &instances {
        let report = run_verify_suite_with(name, arr, seed, &inputs);
        all_pass &= report.passed();
        reports.push(report.to_json(timings));
    }
    Ok((
        json!({
            "seed": seed,
            "instances": instances.len(),
            "passed": all_pass,
            "reports": reports,
        }),
        all_pass,
    ))
}
