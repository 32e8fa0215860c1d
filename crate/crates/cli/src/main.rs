use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use transval::corpus::CorpusSpec;
use transval::extension::{
    augmented, certificate_bases, extend, meet, nonminimal_collision, present_extension_minimally,
};
use transval::io::{
    certificates_to_json, column_from_json, column_to_json, decomposition_to_json,
    extension_to_json, matrix_from_json, matrix_to_json, matroid_to_json, rationals_from_json,
    set_function_from_json, set_system_to_json, valuated_from_json, valuated_to_json, Labels,
    SetFunction, STAR,
};
use transval::lab::{open_question_search, pinned_u23_report, single_presentation_search};
use transval::matroid::{maximal_presentation_of, Matroid};
use transval::presentation::{
    compute_dapx, decomposition, is_minimal, minimize, minimize_from_apices, non_hyperplane_rows,
};
use transval::valuated::check_pluecker;
use transval::verify::{run_suite, Suite};
use transval::{ElementSet, Error, Presentation, Rational, Trop};

#[derive(Parser)]
#[command(
    name = "transval",
    version,
    about = "Transversal valuated matroids and their extensions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct CorpusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 100)]
    count: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Probability of an infinite entry, as "p/q".
    #[arg(long, default_value = "1/3")]
    inf_prob: String,
    /// JSON list of finite values to draw entries from.
    #[arg(long)]
    grid: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical Plücker vector of a matrix.
    Stiefel { matrix: PathBuf },
    /// Three-term Plücker relations of a function on d-sets.
    CheckPluecker { function: PathBuf },
    /// Underlying matroid of a valuated matroid.
    Underlying { valuated: PathBuf },
    /// The distinguished apex matrix of the presented valuated matroid.
    Dapx { matrix: PathBuf },
    /// Apex decomposition of a presentation.
    Decompose { matrix: PathBuf },
    /// Whether a presentation is minimal.
    IsMinimal { matrix: PathBuf },
    /// A minimal presentation of the same valuated matroid.
    Minimize {
        matrix: PathBuf,
        /// Element whose membership in each row support is kept.
        #[arg(long)]
        keep: Option<String>,
        /// Comma-separated element order for greedy removal.
        #[arg(long)]
        order: Option<String>,
    },
    /// Extension of Stiefel(A) by the column x.
    Extend { matrix: PathBuf, column: PathBuf },
    /// Two columns with equal extensions, for a non-minimal presentation.
    Collide { matrix: PathBuf },
    /// Certificate bases reading x back from an extension.
    Certificates { matrix: PathBuf },
    /// Extension by min(x, y).
    Meet {
        matrix: PathBuf,
        x: PathBuf,
        y: PathBuf,
    },
    /// Rewrites a presentation of an extension as (A|x) with A minimal.
    PresentMin { matrix: PathBuf },
    /// Runs an invariant suite over a seeded corpus.
    Verify {
        #[arg(value_parser = parse_suite)]
        suite: Suite,
        #[command(flatten)]
        corpus: CorpusArgs,
    },
    /// Open-question probe; one JSON report per line.
    Lab {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Extend one presentation twice instead of two.
        #[arg(long)]
        single: bool,
        /// Emit an archived regression instance instead.
        #[arg(long)]
        pinned: Option<String>,
    },
    /// Generates a seeded corpus of presentations.
    Gen {
        #[command(flatten)]
        corpus: CorpusArgs,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Error kind and exit code.
enum Failure {
    Input(String),
    Violation(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Violation(_)
            | Error::DapxFailed(_)
            | Error::NotDecomposition(_)
            | Error::NegativeMultiplicity(_) => Failure::Violation(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CmdResult = Result<Output, Failure>;

enum Output {
    Json(Value),
    Lines(Vec<Value>),
    /// A suite report and whether it passed.
    Suite(Value, bool),
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
    };
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<(Presentation<Rational>, Labels), Failure> {
    let (a, labels) = matrix_from_json(&read_json(path)?)?;
    Ok((Presentation::new(a)?, labels))
}

fn with_labels(labels: &Labels, mut body: Value) -> Value {
    body["labels"] = labels.to_json();
    body
}

fn spec_of(c: &CorpusArgs) -> Result<CorpusSpec, Failure> {
    let mut spec = CorpusSpec::new(c.n, c.d, c.count, c.seed)?;
    let p = Trop::<Rational>::parse(&c.inf_prob)
        .map_err(|e| Failure::Input(format!("--inf-prob: {e}")))?;
    let Trop::Fin(p) = p else {
        return Err(Failure::Input("--inf-prob: must be finite".into()));
    };
    let to_u32 = |v: String| {
        v.parse::<u32>()
            .map_err(|_| Failure::Input("--inf-prob: out of range".into()))
    };
    spec.inf_probability = (
        to_u32(p.numer().to_string())?,
        to_u32(p.denom().to_string())?,
    );
    if let Some(g) = &c.grid {
        let v: Value =
            serde_json::from_str(g).map_err(|e| Failure::Input(format!("--grid: {e}")))?;
        spec.value_grid = rationals_from_json(&v, "grid")?;
    }
    spec.validate()?;
    Ok(spec)
}

fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Stiefel { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            Ok(Output::Json(with_labels(
                &labels,
                json!({
                    "valuated": valuated_to_json(p.mu(), &labels),
                    "underlying": matroid_to_json(p.mu().underlying(), &labels),
                }),
            )))
        }
        Command::CheckPluecker { function } => {
            let SetFunction {
                n,
                d,
                values,
                labels,
            } = set_function_from_json::<Rational>(&read_json(&function)?)?;
            let ground = ElementSet::full(n);
            let full: BTreeMap<ElementSet, Trop<Rational>> = ground
                .k_subsets(d)
                .into_iter()
                .map(|b| (b, values.get(&b).cloned().unwrap_or(Trop::Inf)))
                .collect();
            let check = check_pluecker(ground, d, &full)?;
            let support: Vec<ElementSet> = full
                .iter()
                .filter(|(_, v)| v.is_finite())
                .map(|(b, _)| *b)
                .collect();
            let matroid = if support.is_empty() {
                Err("identically inf".to_string())
            } else {
                Matroid::new(ground, d, support).map_err(|e| e.to_string())
            };
            let witness = check.witness.map(|(s, q)| {
                json!({"S": labels.set_names(s), "quadruple": labels.set_names(ElementSet::from_elements(q))})
            });
            Ok(Output::Json(with_labels(
                &labels,
                json!({
                    "valuated": check.holds && matroid.is_ok(),
                    "pluecker": check.holds,
                    "witness": witness,
                    "support_is_matroid": matroid.is_ok(),
                    "support_error": matroid.err(),
                }),
            )))
        }
        Command::Underlying { valuated } => {
            let (mu, labels) = valuated_from_json::<Rational>(&read_json(&valuated)?)?;
            Ok(Output::Json(with_labels(
                &labels,
                json!({ "matroid": matroid_to_json(mu.underlying(), &labels) }),
            )))
        }
        Command::Dapx { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            let apx = compute_dapx(&p)?;
            let maximal = maximal_presentation_of(p.mu().underlying())?;
            let dec = decomposition_to_json(&apx, &labels);
            Ok(Output::Json(with_labels(
                &labels,
                json!({
                    "dapx": matrix_to_json(&apx.apices),
                    "classes": dec["classes"],
                    "maximal_presentation": set_system_to_json(&maximal, &labels),
                }),
            )))
        }
        Command::Decompose { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            let dec = decomposition(&p)?;
            Ok(Output::Json(with_labels(
                &labels,
                json!({ "decomposition": decomposition_to_json(&dec, &labels) }),
            )))
        }
        Command::IsMinimal { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            let minimal = is_minimal(&p)?;
            let dec = decomposition(&p)?;
            let rows: Vec<usize> = non_hyperplane_rows(&p, &dec)
                .into_iter()
                .map(|i| i + 1)
                .collect();
            Ok(Output::Json(with_labels(
                &labels,
                json!({ "minimal": minimal, "non_hyperplane_rows": rows }),
            )))
        }
        Command::Minimize {
            matrix,
            keep,
            order,
        } => {
            let (p, labels) = read_matrix(&matrix)?;
            let keep = keep.map(|k| labels.index(&k)).transpose()?;
            let order = order
                .map(|o| {
                    o.split(',')
                        .map(|e| labels.index(e.trim()))
                        .collect::<Result<Vec<_>, _>>()
                })
                .transpose()?;
            if let Some(o) = &order {
                let mut sorted = o.clone();
                sorted.sort_unstable();
                if sorted != (0..p.ncols()).collect::<Vec<_>>() {
                    return Err(Failure::Input(
                        "--order: must list every element exactly once".into(),
                    ));
                }
            }
            let out = match &order {
                Some(o) => minimize_from_apices(&p, keep, Some(o))?,
                None => minimize(&p, keep)?,
            };
            Ok(Output::Json(with_labels(
                &labels,
                json!({ "minimal": matrix_to_json(out.matrix()) }),
            )))
        }
        Command::Extend { matrix, column } => {
            let (p, labels) = read_matrix(&matrix)?;
            let x = column_from_json::<Rational>(&read_json(&column)?)?;
            let e = extend(&p, &x)?;
            let star = labels.with_star()?;
            Ok(Output::Json(with_labels(
                &star,
                json!({ "extension": extension_to_json(&e, &labels) }),
            )))
        }
        Command::Collide { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            let c = nonminimal_collision(&p)?;
            let e = extend(&p, &c.x)?;
            let star = labels.with_star()?;
            Ok(Output::Json(with_labels(
                &star,
                json!({
                    "row": c.row + 1,
                    "threshold": Trop::Fin(c.threshold).to_text(),
                    "x": column_to_json(&c.x)["x"],
                    "y": column_to_json(&c.y)["x"],
                    "extension": extension_to_json(&e, &labels),
                }),
            )))
        }
        Command::Certificates { matrix } => {
            let (p, labels) = read_matrix(&matrix)?;
            let certs = certificate_bases(&p)?;
            let star = labels.with_star()?;
            Ok(Output::Json(with_labels(
                &star,
                json!({ "certificates": certificates_to_json(&certs, &labels) }),
            )))
        }
        Command::Meet { matrix, x, y } => {
            let (p, labels) = read_matrix(&matrix)?;
            let x = column_from_json::<Rational>(&read_json(&x)?)?;
            let y = column_from_json::<Rational>(&read_json(&y)?)?;
            let e = meet(&p, &x, &y)?;
            let star = labels.with_star()?;
            Ok(Output::Json(with_labels(
                &star,
                json!({ "column": column_to_json(&x.min(&y))["x"], "extension": extension_to_json(&e, &labels) }),
            )))
        }
        Command::PresentMin { matrix } => {
            let (b, labels) = read_matrix(&matrix)?;
            let n1 = b.ncols();
            if let Some(pos) = (0..n1).find(|&e| labels.name(e) == STAR) {
                if pos + 1 != n1 {
                    return Err(Failure::Input("the \"*\" column must be last".into()));
                }
            }
            let (a, x) = present_extension_minimally(b.mu(), &b)?;
            let base = labels.without_star();
            let base = if base.len() == n1 {
                Labels::new((0..n1 - 1).map(|e| base.name(e).to_string()).collect())?
            } else {
                base
            };
            let star = base.with_star()?;
            let augmented = with_labels(&star, matrix_to_json(&augmented(a.matrix(), &x)?));
            Ok(Output::Json(with_labels(
                &star,
                json!({
                    "A": matrix_to_json(a.matrix()),
                    "x": column_to_json(&x)["x"],
                    "augmented": augmented,
                }),
            )))
        }
        Command::Verify { suite, corpus } => {
            let spec = spec_of(&corpus)?;
            let report = run_suite(suite, &spec)?;
            let ok = report.all_passed();
            Ok(Output::Suite(
                with_labels(&Labels::numbered(spec.n), report.to_json()),
                ok,
            ))
        }
        Command::Lab {
            n,
            d,
            trials,
            seed,
            single,
            pinned,
        } => {
            let reports = match pinned.as_deref() {
                Some("u23") => vec![pinned_u23_report()?],
                Some(other) => {
                    return Err(Failure::Input(format!(
                        "--pinned: unknown instance {other:?}"
                    )))
                }
                None if single => single_presentation_search(n, d, trials, seed)?,
                None => open_question_search(n, d, trials, seed)?,
            };
            Ok(Output::Lines(reports.iter().map(|r| r.to_json()).collect()))
        }
        Command::Gen { corpus } => {
            let spec = spec_of(&corpus)?;
            let instances: Vec<Value> = spec
                .presentations()?
                .iter()
                .map(|p| matrix_to_json(p.matrix()))
                .collect();
            let (a, b) = spec.inf_probability;
            Ok(Output::Json(with_labels(
                &Labels::numbered(spec.n),
                json!({
                    "n": spec.n,
                    "d": spec.d,
                    "count": spec.count,
                    "seed": spec.seed,
                    "inf_probability": format!("{a}/{b}"),
                    "value_grid": spec.value_grid.iter().map(|q| Trop::Fin(q.clone()).to_text()).collect::<Vec<_>>(),
                    "instances": instances,
                }),
            )))
        }
    }
}

fn emit(v: &Value) -> io::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!(
                "{}",
                json!({"error": "usage", "message": e.to_string().trim_end()})
            );
            return ExitCode::from(2);
        }
    };
    let (result, code) = match run(cli.command) {
        Ok(Output::Json(v)) => (emit(&v), 0),
        Ok(Output::Suite(v, ok)) => (emit(&v), if ok { 0 } else { 1 }),
        Ok(Output::Lines(lines)) => {
            let mut out = io::stdout().lock();
            let r = lines.iter().try_for_each(|l| writeln!(out, "{l}"));
            (r, 0)
        }
        Err(Failure::Input(m)) => {
            eprintln!("{}", json!({"error": "input", "message": m}));
            return ExitCode::from(2);
        }
        Err(Failure::Violation(m)) => {
            eprintln!("{}", json!({"error": "violation", "message": m}));
            return ExitCode::from(1);
        }
    };
    if let Err(e) = result {
        eprintln!("{}", json!({"error": "io", "message": e.to_string()}));
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
