use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use geneo_core::experiments::{analyze_code_table, binary_responses, build_code_table, cycle_census};
use geneo_core::geneo::{decompose_to_measure, LinearOperator, Operator};
use geneo_core::graph::Graph;
use geneo_core::perception::{FunctionSpace, Measurement};
use geneo_core::permutant::{
    all_orbits, is_generalized_permutant, is_permutant_measure, ActionContext, GeneralizedPermutant, PermutantMeasure,
};
use geneo_core::{rational, Verdict};

/// Equivariant operators on weighted graphs from generalized permutants.
#[derive(Parser, Debug)]
#[command(name = "geneo", version)]
struct Cli {
    /// Indented JSON and aligned tables instead of compact output.
    #[arg(long, global = true)]
    pretty: bool,

    /// Seed for sampled verification.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for parallel enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Automorphism group of a graph.
    Aut {
        graph: PathBuf,
        /// Also report the induced group on edges.
        #[arg(long)]
        edges: bool,
    },
    /// Orbit census of the α action on all maps Y → X.
    Orbits {
        #[arg(long)]
        context: PathBuf,
        /// List every orbit with its members.
        #[arg(long)]
        list: bool,
    },
    /// Generalized permutants.
    Permutant {
        #[command(subcommand)]
        action: CheckAction,
    },
    /// Generalized permutant measures.
    Measure {
        #[command(subcommand)]
        action: CheckAction,
    },
    /// Build, verify, apply and decompose linear operators.
    Geneo {
        #[command(subcommand)]
        action: GeneoAction,
    },
    /// Codes of all edge subsets of K_n under the transposition operator.
    Codes {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
        n: u8,
        /// Report the findings instead of the table.
        #[arg(long)]
        analyze: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Orbit census of maps from the edges of C3 to the edges of C6.
    #[command(name = "census-c6c3")]
    CensusC6C3 {
        /// Full report with every orbit.
        #[arg(long)]
        list: bool,
        /// Outputs of the operator of this orbit on every 0/1 input.
        #[arg(long, value_name = "MAPPING")]
        responses: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CheckAction {
    Check {
        file: PathBuf,
        #[arg(long)]
        context: PathBuf,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct BuildSource {
    #[arg(long)]
    permutant: Option<PathBuf>,
    #[arg(long)]
    measure: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum GeneoAction {
    Build {
        #[command(flatten)]
        source: BuildSource,
        #[arg(long)]
        context: PathBuf,
    },
    Verify {
        operator: PathBuf,
        /// Random spot checks over the whole group, seeded by --seed.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    Apply {
        operator: PathBuf,
        measurement: PathBuf,
    },
    Decompose {
        operator: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// What to print and whether the command counts as a success.
struct Outcome {
    payload: String,
    ok: bool,
}

impl Outcome {
    fn json(value: &impl Serialize, pretty: bool, ok: bool) -> Result<Self> {
        let payload = if pretty { serde_json::to_string_pretty(value)? } else { serde_json::to_string(value)? };
        Ok(Outcome { payload, ok })
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_context(path: &Path) -> Result<ActionContext> {
    ActionContext::parse_json(&read(path)?).with_context(|| format!("loading context {}", path.display()))
}

fn load_operator(path: &Path) -> Result<LinearOperator> {
    LinearOperator::parse_json(&read(path)?).with_context(|| format!("loading operator {}", path.display()))
}

fn verdict_json<W: Serialize>(key: &str, verdict: &Verdict<W>) -> Result<Value> {
    let mut out = json!({ key: verdict.holds() });
    if let Some(w) = verdict.witness() {
        out["witness"] = serde_json::to_value(w)?;
    }
    Ok(out)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Aut { graph, edges } => {
            let g = Graph::parse_json(&read(graph)?)?;
            let mut out = json!({ "vertices": g.vertex_automorphism_group()?.to_document(g.vertex_labels()) });
            if *edges {
                out["edges"] = serde_json::to_value(g.edge_automorphism_group()?.to_document(g.edge_labels()))?;
            }
            Outcome::json(&out, pretty, true)
        }
        Command::Orbits { context, list } => {
            let ctx = load_context(context)?;
            let census = all_orbits(&ctx)?;
            let orbits: Vec<Value> = census
                .orbits
                .iter()
                .map(|o| {
                    let members = o.formatted();
                    let mut entry = json!({ "size": members.len(), "representative": members[0] });
                    if *list {
                        entry["members"] = json!(members);
                    }
                    entry
                })
                .collect();
            Outcome::json(&json!({ "total": census.total, "counts": census.counts, "orbits": orbits }), pretty, true)
        }
        Command::Permutant { action: CheckAction::Check { file, context } } => {
            let ctx = load_context(context)?;
            let value = read_json(file)?;
            let items = match &value {
                Value::Object(obj) => obj.get("members").cloned().unwrap_or(Value::Null),
                other => other.clone(),
            };
            let Value::Array(items) = items else { bail!("expected an array of mappings") };
            let members = items.iter().map(|v| ctx.mapping_from_json(v)).collect::<geneo_core::Result<_>>()?;
            let verdict = is_generalized_permutant(&members, &ctx)?;
            let mut out = verdict_json("permutant", &verdict)?;
            out["size"] = json!(members.len());
            Outcome::json(&out, pretty, verdict.holds())
        }
        Command::Measure { action: CheckAction::Check { file, context } } => {
            let ctx = load_context(context)?;
            let mu = PermutantMeasure::from_json(&read_json(file)?, &ctx)?;
            let verdict = is_permutant_measure(&mu);
            let mut out = verdict_json("measure", &verdict)?;
            out["total_variation"] = json!(rational::format(&mu.total_variation()));
            Outcome::json(&out, pretty, verdict.holds())
        }
        Command::Geneo { action } => run_geneo(action, cli),
        Command::Codes { n, analyze, format } => {
            let table = build_code_table(*n as usize)?;
            if *analyze {
                let findings = analyze_code_table(&table)?;
                return Outcome::json(&findings, pretty, findings.passed);
            }
            match (format, pretty) {
                (Format::Csv, false) => Ok(Outcome { payload: table.to_csv().trim_end().to_string(), ok: true }),
                (Format::Csv, true) => Ok(Outcome { payload: pretty_table(&table), ok: true }),
                (Format::Json, _) => Outcome::json(&table, pretty, true),
            }
        }
        Command::CensusC6C3 { list, responses } => {
            if let Some(mapping) = responses {
                return Outcome::json(&binary_responses(mapping)?, pretty, true);
            }
            let census = cycle_census()?;
            if *list {
                Outcome::json(&census, pretty, true)
            } else {
                Outcome::json(&census.counts, pretty, true)
            }
        }
    }
}

fn run_geneo(action: &GeneoAction, cli: &Cli) -> Result<Outcome> {
    let pretty = cli.pretty;
    match action {
        GeneoAction::Build { source, context } => {
            let ctx = load_context(context)?;
            let op = match (&source.permutant, &source.measure) {
                (Some(path), None) => {
                    LinearOperator::from_permutant(&GeneralizedPermutant::from_json(&read_json(path)?, &ctx)?)?
                }
                (None, Some(path)) => {
                    LinearOperator::from_measure(&PermutantMeasure::from_json(&read_json(path)?, &ctx)?)?
                }
                _ => bail!("give exactly one of --permutant and --measure"),
            };
            Outcome::json(&op.to_document(), pretty, true)
        }
        GeneoAction::Verify { operator, samples } => {
            let op = load_operator(operator)?;
            let equivariance = op.verify_equivariance();
            let nonexpansive = op.verify_nonexpansive();
            let mut out = json!({ "equivariant": equivariance.holds(), "nonexpansive": nonexpansive });
            let mut ok = equivariance.holds() && nonexpansive;
            if let Some(w) = equivariance.witness() {
                out["witness"] = serde_json::to_value(w)?;
            }
            if !nonexpansive {
                out["operator_norm"] = json!(rational::format(&op.operator_norm()));
            }
            let full = |n| FunctionSpace::full(n);
            if *op.source_space() != full(op.context().x_size()) || *op.target_space() != full(op.context().y_size()) {
                let closure = op.verify_closure()?;
                ok &= closure.holds();
                out["closed"] = json!(closure.holds());
            }
            if *samples > 0 {
                let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
                let report = Operator::from(op).sampled_check(&mut rng, *samples);
                ok &= report.equivariance.holds() && report.nonexpansivity.holds();
                out["sampled"] = json!({
                    "samples": report.samples,
                    "equivariant": report.equivariance.holds(),
                    "nonexpansive": report.nonexpansivity.holds(),
                });
            }
            Outcome::json(&out, pretty, ok)
        }
        GeneoAction::Apply { operator, measurement } => {
            let op = load_operator(operator)?;
            let phi: Measurement =
                serde_json::from_value(read_json(measurement)?).context("reading the measurement")?;
            Outcome::json(&op.apply(&phi)?, pretty, true)
        }
        GeneoAction::Decompose { operator } => {
            let op = load_operator(operator)?;
            let mu = decompose_to_measure(&op)?;
            let labels = op.context().x_labels();
            let weights: Vec<Value> = mu
                .weights()
                .iter()
                .map(|(m, w)| {
                    let cycles = m.to_permutation().map(|p| p.format_cycles(labels));
                    json!({ "mapping": op.context().format_mapping(m), "cycles": cycles, "weight": rational::format(w) })
                })
                .collect();
            let out = json!({ "weights": weights, "total_variation": rational::format(&mu.total_variation()) });
            Outcome::json(&out, pretty, true)
        }
    }
}

fn pretty_table(table: &geneo_core::experiments::CodeTable) -> String {
    let m = table.edge_count();
    let mut lines =
        vec![format!("{:<w$}  {:<c$}  class", "vector", format!("code x{}", table.scale), w = m.max(6), c = 3 * m)];
    for row in &table.rows {
        let code: Vec<String> = row.scaled_code.iter().map(|v| format!("{v:>2}")).collect();
        lines.push(format!("{:<w$}  {:<c$}  {}", row.indicator, code.join(" "), row.class, w = m.max(6), c = 3 * m));
    }
    lines.join("\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("{}", json!({ "error": format!("cannot set up {jobs} workers: {e}") }));
            return ExitCode::FAILURE;
        }
    }
    match run(&cli) {
        Ok(outcome) => {
            // A closed pipe downstream is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{}", outcome.payload);
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("{}", json!({ "error": format!("{e:#}") }));
            ExitCode::FAILURE
        }
    }
}
