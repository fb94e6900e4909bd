//! `mm`: exact constructions and identity checks for multiple Meixner
//! polynomials of the first kind and their truncated oscillator model.
//!
//! Exit codes: 0 when everything requested passed, 1 when at least one
//! identity check failed (the report is still written), 2 on usage or
//! validation errors (malformed rationals, invalid parameters, unknown
//! names), with a diagnostic on the error stream.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multimeixner::diffeq::{self, DiffEqSemantics};
use multimeixner::fock::spectrum::spectrum_diag;
use multimeixner::fock::{FockBasis, OpName};
use multimeixner::index::MultiIndex;
use multimeixner::params::ParamsFile;
use multimeixner::report::{all_pass, first_failure};
use multimeixner::suite::{self, SuiteConfig};
use multimeixner::{MeixnerTable, Params, Rational, RelationReport};

#[derive(Parser)]
#[command(
    name = "mm",
    version,
    about = "Exact multiple Meixner polynomials: construction, identity checks, and the truncated oscillator model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Parameter source: either all of `--r/--beta/--c`, or `--params-file`.
#[derive(Args, Clone)]
struct ParamArgs {
    /// Number of weights.
    #[arg(long)]
    r: Option<usize>,
    /// Family parameter, a rational such as `3/2`.
    #[arg(long)]
    beta: Option<String>,
    /// Comma-separated weight parameters `c_1,...,c_r`, each a rational in (0,1).
    #[arg(long)]
    c: Option<String>,
    /// JSON parameter file: {"r": 2, "beta": "3/2", "c": ["1/3", "1/2"]}.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["r", "beta", "c"])]
    params_file: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the output to this file.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    Ascending,
    Descending,
}

#[derive(Subcommand)]
enum Command {
    /// Print one monic polynomial as coefficient strings (constant first).
    Poly {
        #[command(flatten)]
        params: ParamArgs,
        /// Multi-index `n_1,...,n_r`.
        #[arg(long)]
        n: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate one polynomial at a rational point.
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        /// Multi-index `n_1,...,n_r`.
        #[arg(long)]
        n: String,
        /// Evaluation point, a rational such as `7/2`.
        #[arg(long)]
        x: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print every polynomial with total degree up to a bound.
    Table {
        #[command(flatten)]
        params: ParamArgs,
        /// Bound on the total degree `|n|`.
        #[arg(long, default_value_t = 5)]
        max_degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print generating-function coefficients (the independent construction route).
    Genfun {
        #[command(flatten)]
        params: ParamArgs,
        /// Expansion order in the auxiliary variables.
        #[arg(long, default_value_t = 6)]
        order: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run identity checks; `all` runs the whole battery.
    ///
    /// With no parameter source the built-in battery covers three canonical
    /// parameter sets; with an explicit source the named relation runs on
    /// that set alone.
    Check {
        /// Relation name (see `mm check --help`) or `all`.
        ///
        /// One of: recurrence-path, pairwise, non-nearest, backward1,
        /// forward1, backward2, step2, raising, lowering, diffeq-x,
        /// diffeq-beta, orthogonality, genfun, fock-eigen, fock-commutator,
        /// fock-weak, fock-shift, fock-conjugation, su11, all.
        relation: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Bound on the total degree `|n|` for polynomial checks.
        #[arg(long)]
        max_degree: Option<u32>,
        /// Truncation degree `N` for operator-model checks.
        #[arg(long)]
        degree: Option<u32>,
        /// Generating-function expansion order.
        #[arg(long)]
        order: Option<u32>,
        /// Factor ordering for the difference-equation checks.
        #[arg(long, value_enum)]
        ordering: Option<Ordering>,
        /// Deliberately corrupt one recurrence coefficient (test hook).
        #[arg(long, hide = true)]
        corrupt_recurrence: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Truncated operator matrices.
    Fock {
        #[command(subcommand)]
        command: FockCommand,
    },
    /// Floating-point eigenvalues of one truncated operator.
    ///
    /// Diagnostic only: truncation perturbs the spectrum of non-normal
    /// matrices, so these values are never used as check evidence.
    Spectrum {
        #[command(flatten)]
        params: ParamArgs,
        /// Operator name, e.g. `h1`, `hbar2`, `h0`, `j0`.
        #[arg(long, default_value = "h1")]
        op: String,
        /// Truncation degree `N`.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum FockCommand {
    /// Dump one operator's exact sparse matrix.
    Dump {
        /// Operator name: a1, adag1, n1, h0, h1, hbar1, x1, y, xhat1, yhat,
        /// l1, r1, j0, jplus, jminus, mj0, mjplus, mjminus (indices vary).
        op: String,
        #[command(flatten)]
        params: ParamArgs,
        /// Truncation degree `N`.
        #[arg(long, default_value_t = 8)]
        degree: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// One-line error carrying everything `main` prints before exiting 2.
struct CliError(String);

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Rational::from_str(s.trim())
        .map_err(|e| CliError(format!("invalid rational '{}': {e}", s.trim())))
}

fn parse_index(s: &str, r: usize) -> Result<MultiIndex, CliError> {
    let entries: Vec<u32> = s
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<u32>()
                .map_err(|e| CliError(format!("invalid index entry '{}': {e}", part.trim())))
        })
        .collect::<Result<_, _>>()?;
    if entries.len() != r {
        return Err(CliError(format!(
            "--n supplies {} entries but r = {r}",
            entries.len()
        )));
    }
    Ok(MultiIndex::new(entries))
}

impl ParamArgs {
    fn resolve(&self) -> Result<Option<Params>, CliError> {
        if let Some(path) = &self.params_file {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError(format!("cannot read {}: {e}", path.display())))?;
            let file: ParamsFile = serde_json::from_str(&text)
                .map_err(|e| CliError(format!("cannot parse {}: {e}", path.display())))?;
            return Ok(Some(file.validate()?));
        }
        match (self.r, &self.beta, &self.c) {
            (None, None, None) => Ok(None),
            (Some(r), Some(beta), Some(c)) => {
                let beta = parse_rational(beta)?;
                let cs: Vec<Rational> = c
                    .split(',')
                    .map(parse_rational)
                    .collect::<Result<_, _>>()?;
                if cs.len() != r {
                    return Err(CliError(format!(
                        "--c supplies {} values but --r is {r}",
                        cs.len()
                    )));
                }
                Ok(Some(Params::new(beta, cs)?))
            }
            _ => Err(CliError(
                "parameters need all of --r, --beta, --c (or --params-file)".into(),
            )),
        }
    }

    fn required(&self) -> Result<Params, CliError> {
        self.resolve()?.ok_or_else(|| {
            CliError("this subcommand needs parameters: --r/--beta/--c or --params-file".into())
        })
    }
}

fn params_json(params: &Params) -> Value {
    serde_json::to_value(ParamsFile::from(params)).expect("parameters serialize")
}

fn csv_field(s: &str) -> String {
    format!("\"{}\"", s.replace('"', "\"\""))
}

fn reports_csv(reports: &[RelationReport]) -> String {
    let mut text = String::from("relation,instance,pass,lhs,rhs\n");
    for r in reports {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            csv_field(&r.relation),
            csv_field(&r.instance),
            r.pass,
            csv_field(&r.lhs),
            csv_field(&r.rhs)
        );
    }
    text
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), CliError> {
    use std::io::Write;
    // A closed pipe (e.g. piping into `head`) is not an error for a tool
    // whose verdict is the exit code.
    if let Err(e) = writeln!(std::io::stdout(), "{text}") {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            return Err(CliError(format!("cannot write to stdout: {e}")));
        }
    }
    if let Some(path) = out {
        fs::write(path, format!("{text}\n"))
            .map_err(|e| CliError(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Key/value rows flattened for CSV output of non-report payloads.
fn rows_csv(header: &str, rows: Vec<Vec<String>>) -> String {
    let mut text = format!("{header}\n");
    for row in rows {
        let _ = writeln!(text, "{}", row.join(","));
    }
    text
}

fn run_check(
    relation: &str,
    params: Option<Params>,
    cfg: &SuiteConfig,
    ordering: Option<Ordering>,
) -> Result<(Vec<RelationReport>, Value), CliError> {
    if let Some(ord) = ordering {
        let params = params.ok_or_else(|| {
            CliError("--ordering needs an explicit parameter source".into())
        })?;
        let r = params.r();
        let order = match ord {
            Ordering::Ascending => diffeq::ascending_order(r),
            Ordering::Descending => diffeq::descending_order(r),
        };
        let bound = if r == 1 {
            cfg.max_total.min(4)
        } else {
            cfg.max_total.min(3)
        };
        let reports = match relation {
            "diffeq-x" => diffeq::check_diffeq_x_all(
                &MeixnerTable::new(params.clone()),
                DiffEqSemantics::DegreeTracking,
                &order,
                bound,
            )?,
            "diffeq-beta" => diffeq::check_diffeq_beta_all(
                &params,
                DiffEqSemantics::DegreeTracking,
                &order,
                bound,
            )?,
            other => {
                return Err(CliError(format!(
                    "--ordering applies to diffeq-x and diffeq-beta, not '{other}'"
                )))
            }
        };
        return Ok((reports, params_json(&params)));
    }
    match params {
        Some(params) => {
            let reports = suite::run_relation_for(&params, relation, cfg)?;
            Ok((reports, params_json(&params)))
        }
        None => {
            let reports = if relation == "all" {
                suite::run_all(cfg)?
            } else {
                suite::run_relation(relation, cfg)?
            };
            Ok((reports, Value::String("default-battery".into())))
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Poly { params, n, output } => {
            let params = params.required()?;
            let n = parse_index(&n, params.r())?;
            let coeffs = MeixnerTable::new(params).poly(&n).coeff_strings();
            let text = match output.format {
                Format::Json => json!({ "poly": coeffs }).to_string(),
                Format::Csv => rows_csv(
                    "k,coefficient",
                    coeffs
                        .iter()
                        .enumerate()
                        .map(|(k, c)| vec![k.to_string(), csv_field(c)])
                        .collect(),
                ),
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
        Command::Eval {
            params,
            n,
            x,
            output,
        } => {
            let params = params.required()?;
            let n = parse_index(&n, params.r())?;
            let x = parse_rational(&x)?;
            let value = MeixnerTable::new(params).eval(&n, &x);
            let text = match output.format {
                Format::Json => json!({ "value": value.to_string() }).to_string(),
                Format::Csv => rows_csv("value", vec![vec![csv_field(&value.to_string())]]),
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
        Command::Table {
            params,
            max_degree,
            output,
        } => {
            let params = params.required()?;
            let table = MeixnerTable::new(params.clone());
            let indices = multimeixner::index::enumerate_up_to(params.r(), max_degree);
            let text = match output.format {
                Format::Json => {
                    let polys: Vec<Value> = indices
                        .iter()
                        .map(|n| {
                            json!({
                                "n": n.to_string(),
                                "coeffs": table.poly(n).coeff_strings(),
                            })
                        })
                        .collect();
                    json!({
                        "params": params_json(&params),
                        "max_degree": max_degree,
                        "polys": polys,
                    })
                    .to_string()
                }
                Format::Csv => rows_csv(
                    "n,k,coefficient",
                    indices
                        .iter()
                        .flat_map(|n| {
                            let poly = table.poly(n);
                            poly.coeff_strings()
                                .into_iter()
                                .enumerate()
                                .map(|(k, c)| {
                                    vec![
                                        csv_field(&n.to_string()),
                                        k.to_string(),
                                        csv_field(&c),
                                    ]
                                })
                                .collect::<Vec<_>>()
                        })
                        .collect(),
                ),
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
        Command::Genfun {
            params,
            order,
            output,
        } => {
            let params = params.required()?;
            let oracle = multimeixner::genfun::genfun_table(&params, order);
            let text = match output.format {
                Format::Json => {
                    let coefficients: Vec<Value> = oracle
                        .iter()
                        .map(|(n, poly)| {
                            json!({ "index": n.to_string(), "poly": poly.coeff_strings() })
                        })
                        .collect();
                    json!({ "order": order, "coefficients": coefficients }).to_string()
                }
                Format::Csv => rows_csv(
                    "index,k,coefficient",
                    oracle
                        .iter()
                        .flat_map(|(n, poly)| {
                            poly.coeff_strings()
                                .into_iter()
                                .enumerate()
                                .map(|(k, c)| {
                                    vec![
                                        csv_field(&n.to_string()),
                                        k.to_string(),
                                        csv_field(&c),
                                    ]
                                })
                                .collect::<Vec<_>>()
                        })
                        .collect(),
                ),
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
        Command::Check {
            relation,
            params,
            max_degree,
            degree,
            order,
            ordering,
            corrupt_recurrence,
            output,
        } => {
            let params = params.resolve()?;
            let cfg = SuiteConfig {
                max_total: max_degree.unwrap_or(5),
                n_max: degree.unwrap_or(8),
                n_max_r3: degree.unwrap_or(8).min(6),
                order: order.unwrap_or(6),
                corrupt: corrupt_recurrence,
            };
            let (reports, params_desc) = run_check(&relation, params, &cfg, ordering)?;
            let pass = all_pass(&reports);
            let text = match output.format {
                Format::Json => json!({
                    "relation": relation,
                    "params": params_desc,
                    "config": {
                        "max_degree": cfg.max_total,
                        "fock_degree": cfg.n_max,
                        "order": cfg.order,
                        "corrupt": cfg.corrupt,
                    },
                    "checks": reports.len(),
                    "pass": pass,
                    "first_failure": first_failure(&reports).map(|r| r.summary_line()),
                    "reports": serde_json::to_value(&reports).expect("reports serialize"),
                })
                .to_string(),
                Format::Csv => reports_csv(&reports),
            };
            emit(&text, &output.out)?;
            Ok(pass)
        }
        Command::Fock { command } => {
            let FockCommand::Dump {
                op,
                params,
                degree,
                output,
            } = command;
            let params = params.required()?;
            let op = OpName::from_str(&op)?;
            let basis = std::sync::Arc::new(FockBasis::new(params.r(), degree));
            let matrix = op.matrix(&basis, &params)?;
            let mut payload = matrix.dump();
            payload["op"] = Value::String(op.label());
            payload["params"] = params_json(&params);
            let text = match output.format {
                Format::Json => payload.to_string(),
                Format::Csv => {
                    let entries = payload["entries"].as_array().expect("dump entries");
                    rows_csv(
                        "row,col,value",
                        entries
                            .iter()
                            .map(|e| {
                                vec![
                                    e[0].to_string(),
                                    e[1].to_string(),
                                    csv_field(e[2].as_str().expect("rational string")),
                                ]
                            })
                            .collect(),
                    )
                }
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
        Command::Spectrum {
            params,
            op,
            degree,
            output,
        } => {
            let params = params.required()?;
            let op = OpName::from_str(&op)?;
            let values = spectrum_diag(&params, &op, degree)?;
            let text = match output.format {
                Format::Json => json!({
                    "op": op.label(),
                    "degree": degree,
                    "diagnostic": "truncation perturbs the spectrum; values are indicative only",
                    "eigenvalues": values
                        .iter()
                        .map(|(re, im)| json!({ "re": re, "im": im }))
                        .collect::<Vec<_>>(),
                })
                .to_string(),
                Format::Csv => rows_csv(
                    "re,im",
                    values
                        .iter()
                        .map(|(re, im)| vec![re.to_string(), im.to_string()])
                        .collect(),
                ),
            };
            emit(&text, &output.out)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
