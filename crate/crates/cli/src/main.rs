//! Command-line frontend for the exact Bethe-equation machinery.
//!
//! Every command reads JSON files (rationals are strings, never floats),
//! writes JSON to stdout or `--output`, and is deterministic given inputs
//! and the seed (`--seed`, overridable by the `BETHE_SEED` environment
//! variable). Domain errors exit with code 1 and a machine-readable
//! `{error, code, detail}` object; usage errors exit with code 2.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use bethe_core::bethe::{
    self, bethe_system_holds, verify_critical, InitialData, PolyTuple, RootKind, Weight,
};
use bethe_core::error::Error as CoreError;
use bethe_core::exactalg::{Poly, Rational};
use bethe_core::fundamental::{
    frame_of_space, fundamental_basis, fundamental_operator, schubert_position, SchubertPosition,
};
use bethe_core::repcount::{count_check, tensor_multiplicity, RootSystem};
use bethe_core::reproduction::{
    c1_population, immediate_descendant, population_atlas, PencilParam,
};
use bethe_core::selfdual::{canonical_form, is_selfdual, lift_data, witt_basis};
use bethe_core::wronskian::identity_battery;

#[derive(Parser)]
#[command(
    name = "bethe",
    about = "Exact machinery for XXX-type Bethe equations: verification, reproduction, populations, fundamental spaces, selfduality and counting checks",
    version
)]
struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for all randomized sampling (env BETHE_SEED overrides the
    /// default, an explicit flag wins).
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DataArgs {
    /// Initial data JSON file.
    #[arg(long)]
    data: PathBuf,

    /// Replace the shifts by the special shifts before running.
    #[arg(long, default_value_t = false)]
    special_shifts: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a tuple as an h-critical point (exact divisibility test).
    Verify {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
        /// Also cross-check by direct substitution when the tuple splits
        /// over the rationals.
        #[arg(long, default_value_t = false)]
        substitute: bool,
    },
    /// One reproduction step in a direction.
    Reproduce {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long)]
        direction: usize,
        /// Pencil parameter: a rational like 3/2, or "inf".
        #[arg(long, default_value = "0")]
        c: String,
    },
    /// Explore the whole population of a critical point by degree vectors.
    Population {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        seed_tuple: PathBuf,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Fundamental space and its recovered frame.
    Space {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Fundamental operator: factor list and expanded normal form.
    Operator {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Schubert positions of the fundamental space, measured and predicted.
    Schubert {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
        /// Ambient degree (default: the largest basis degree).
        #[arg(long)]
        d: Option<usize>,
    },
    /// Selfduality report of the fundamental space: canonical form and a
    /// Witt basis when they exist.
    Selfdual {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Fold a B/C tuple to its type-A mirror and lift the data.
    Fold {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Rank-one symplectic population: the Witt triple over a weight.
    C1 {
        /// Weight polynomial, ascending coefficients, e.g. '["1"]'.
        #[arg(long)]
        weight: String,
        /// Seed polynomial, ascending coefficients.
        #[arg(long)]
        y: String,
        #[arg(long, default_value = "1")]
        h: String,
    },
    /// Tensor-product multiplicity of irreducible modules.
    Multiplicity {
        #[arg(long, value_parser = parse_kind)]
        kind: RootKind,
        /// Dynkin labels, comma separated, e.g. "1,1".
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        target: String,
    },
    /// Compare the exact rank-one solver count with the predicted
    /// multiplicity.
    CountCheck {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Run the Wronskian identity battery.
    Identities {
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_s: usize,
    },
}

fn parse_kind(s: &str) -> Result<RootKind, String> {
    match s {
        "A" | "a" => Ok(RootKind::A),
        "B" | "b" => Ok(RootKind::B),
        "C" | "c" => Ok(RootKind::C),
        other => Err(format!("unknown root kind {other:?} (expected A, B or C)")),
    }
}

/// CLI-level error carrying the stable machine-readable code.
struct CliError {
    message: String,
    code: &'static str,
    detail: String,
}

impl CliError {
    fn new(message: impl Into<String>, code: &'static str, detail: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code,
            detail: detail.into(),
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError {
            message: e.to_string(),
            code: e.code(),
            detail: String::new(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        CliError::new(
            format!("cannot read {what} file {}", path.display()),
            "io",
            e.to_string(),
        )
    })?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::new(
            format!("cannot parse {what} file {}", path.display()),
            "parse",
            e.to_string(),
        )
    })
}

fn load_data(args: &DataArgs) -> Result<InitialData, CliError> {
    let data: InitialData = read_json(&args.data, "initial data")?;
    Ok(if args.special_shifts {
        data.with_special_shifts()
    } else {
        data
    })
}

fn parse_poly(text: &str, what: &str) -> Result<Poly, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::new(format!("cannot parse {what}"), "parse", e.to_string()))
}

fn parse_rational(text: &str, what: &str) -> Result<Rational, CliError> {
    text.parse()
        .map_err(|e: String| CliError::new(format!("cannot parse {what}"), "parse", e))
}

fn parse_labels(text: &str, rank: usize) -> Result<Weight, CliError> {
    let labels: Result<Vec<i64>, _> = text.split(',').map(|t| t.trim().parse::<i64>()).collect();
    let labels = labels
        .map_err(|e| CliError::new("cannot parse Dynkin labels", "parse", e.to_string()))?;
    if labels.len() != rank {
        return Err(CliError::new(
            format!("expected {rank} labels, got {}", labels.len()),
            "parse",
            text.to_string(),
        ));
    }
    Ok(Weight(labels))
}

#[derive(Serialize)]
struct VerifyReport {
    critical: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    substitution_agrees: Option<bool>,
}

#[derive(Serialize)]
struct SpaceReport {
    basis: Vec<Poly>,
    frame: Vec<Poly>,
    h: Rational,
}

#[derive(Serialize)]
struct FactorReport {
    num: Poly,
    den: Poly,
}

#[derive(Serialize)]
struct OperatorReport {
    order: usize,
    factors: Vec<FactorReport>,
    normal_form: Vec<FactorReport>,
    pretty: String,
}

#[derive(Serialize)]
struct SchubertReport {
    ambient_degree: usize,
    measured_finite: Vec<SchubertPosition>,
    measured_infinity: SchubertPosition,
    total_codimension: usize,
    grassmannian_dimension: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_finite: Option<Vec<SchubertPosition>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expected_infinity: Option<SchubertPosition>,
}

#[derive(Serialize)]
struct SelfdualReport {
    selfdual: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    gram: Option<Vec<Vec<Rational>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witt_basis: Option<Vec<Poly>>,
}

#[derive(Serialize)]
struct FoldReport {
    folded_tuple: PolyTuple,
    lifted_data: InitialData,
    folded_critical: bool,
}

#[derive(Serialize)]
struct C1Report {
    u1: Poly,
    u2: Poly,
    u3: Poly,
}

fn run(cli: &Cli, seed: u64) -> Result<String, CliError> {
    let value = match &cli.command {
        Command::Verify {
            data,
            tuple,
            substitute,
        } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let verdict = verify_critical(&data, &tuple)?;
            let substitution_agrees = if *substitute {
                let direct = bethe_system_holds(&data, &tuple)?;
                Some(direct == verdict.is_critical())
            } else {
                None
            };
            serde_json::to_value(VerifyReport {
                critical: verdict.is_critical(),
                reason: verdict.reason(),
                substitution_agrees,
            })
        }
        Command::Reproduce {
            data,
            tuple,
            direction,
            c,
        } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let param = if c == "inf" {
                PencilParam::Infinity
            } else {
                PencilParam::Finite(parse_rational(c, "pencil parameter")?)
            };
            let descendant = immediate_descendant(&data, &tuple, *direction, &param)?;
            serde_json::to_value(descendant)
        }
        Command::Population {
            data,
            seed_tuple,
            max_degree,
        } => {
            let data = load_data(data)?;
            let seed_tuple: PolyTuple = read_json(seed_tuple, "seed tuple")?;
            let atlas = population_atlas(&data, &seed_tuple, *max_degree)?;
            serde_json::to_value(atlas)
        }
        Command::Space {
            data,
            tuple,
            samples,
        } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let space = fundamental_basis(&data, &tuple)?;
            let frame = frame_of_space(&space, *samples, seed)?;
            serde_json::to_value(SpaceReport {
                basis: space.basis().to_vec(),
                frame: frame.entries().to_vec(),
                h: space.h().clone(),
            })
        }
        Command::Operator { data, tuple } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let op = fundamental_operator(&data, &tuple)?;
            let factor = |f: &bethe_core::exactalg::RationalFunction| FactorReport {
                num: f.num().clone(),
                den: f.den().clone(),
            };
            serde_json::to_value(OperatorReport {
                order: op.order(),
                factors: op.factors().iter().map(factor).collect(),
                normal_form: op.normal_form().iter().map(factor).collect(),
                pretty: op.to_string(),
            })
        }
        Command::Schubert { data, tuple, d } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let space = fundamental_basis(&data, &tuple)?;
            let d = d.unwrap_or_else(|| space.max_degree());
            let measured_finite: Result<Vec<_>, _> = data
                .z
                .iter()
                .map(|z| schubert_position(&space, Some(z), d))
                .collect();
            let measured_finite = measured_finite?;
            let measured_infinity = schubert_position(&space, None, d)?;
            let total = measured_finite
                .iter()
                .map(SchubertPosition::codimension)
                .sum::<usize>()
                + measured_infinity.codimension();
            let expected =
                bethe_core::fundamental::expected_ramification(&data, &tuple.degrees(), d).ok();
            let (expected_finite, expected_infinity) = match expected {
                Some((f, i)) => (Some(f), Some(i)),
                None => (None, None),
            };
            serde_json::to_value(SchubertReport {
                ambient_degree: d,
                measured_finite,
                measured_infinity,
                total_codimension: total,
                grassmannian_dimension: space.dim() * (d + 1 - space.dim()),
                expected_finite,
                expected_infinity,
            })
        }
        Command::Selfdual {
            data,
            tuple,
            samples,
        } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            let space = fundamental_basis(&data, &tuple)?;
            let frame = frame_of_space(&space, *samples, seed)?;
            let selfdual = is_selfdual(&space, &frame)?;
            let (gram, witt) = if selfdual {
                let form = canonical_form(&space, &frame)?;
                let rows = form.gram.rows_vec();
                let witt = witt_basis(&space, &frame)?;
                (Some(rows), Some(witt.basis))
            } else {
                (None, None)
            };
            serde_json::to_value(SelfdualReport {
                selfdual,
                gram,
                witt_basis: witt,
            })
        }
        Command::Fold { data, tuple } => {
            let data = load_data(data)?;
            let tuple: PolyTuple = read_json(tuple, "tuple")?;
            if data.kind == RootKind::A {
                return Err(CliError::new(
                    "fold expects B- or C-type data",
                    "invalid-data",
                    "type-A data has nothing to fold",
                ));
            }
            let folded = bethe::fold_tuple(&data, &tuple)?;
            let lifted = lift_data(&data)?;
            let verdict = verify_critical(&lifted, &folded)?;
            serde_json::to_value(FoldReport {
                folded_tuple: folded,
                lifted_data: lifted,
                folded_critical: verdict.is_critical(),
            })
        }
        Command::C1 { weight, y, h } => {
            let weight = parse_poly(weight, "weight polynomial")?;
            let y = parse_poly(y, "seed polynomial")?;
            let h = parse_rational(h, "step")?;
            let triple = c1_population(&weight, &y, &h)?;
            serde_json::to_value(C1Report {
                u1: triple.u1,
                u2: triple.u2,
                u3: triple.u3,
            })
        }
        Command::Multiplicity {
            kind,
            left,
            right,
            target,
        } => {
            let rank = left.split(',').count();
            let rs = RootSystem::new(*kind, rank);
            let left = parse_labels(left, rank)?;
            let right = parse_labels(right, rank)?;
            let target = parse_labels(target, rank)?;
            let m = tensor_multiplicity(&rs, &left, &right, &target)?;
            let mut map = BTreeMap::new();
            map.insert("multiplicity", m);
            serde_json::to_value(map)
        }
        Command::CountCheck { data, l } => {
            let data = load_data(data)?;
            let report = count_check(&data, *l)?;
            serde_json::to_value(report)
        }
        Command::Identities { trials, max_s } => {
            let reports = identity_battery(*trials, *max_s, seed);
            let all_pass = reports.iter().all(|r| r.failures == 0);
            #[derive(Serialize)]
            struct IdentitiesReport {
                all_pass: bool,
                reports: Vec<bethe_core::wronskian::IdentityReport>,
            }
            serde_json::to_value(IdentitiesReport {
                all_pass,
                reports,
            })
        }
    };
    let value = value
        .map_err(|e| CliError::new("serialization failed", "serialize", e.to_string()))?;
    let mut text = serde_json::to_string_pretty(&value)
        .map_err(|e| CliError::new("serialization failed", "serialize", e.to_string()))?;
    text.push('\n');
    Ok(text)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let seed = cli
        .seed
        .or_else(|| {
            std::env::var("BETHE_SEED")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(0);
    match run(&cli, seed) {
        Ok(text) => {
            if let Some(path) = &cli.output {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            let report = serde_json::json!({
                "error": err.message,
                "code": err.code,
                "detail": err.detail,
            });
            println!("{}", serde_json::to_string_pretty(&report).expect("report"));
            ExitCode::from(1)
        }
    }
}
