//! Command-line front end. Every subcommand writes one JSON document (or a
//! CSV/JSON-lines table) to standard output; `--human` adds a readable
//! summary on standard error.
//!
//! Exit codes: 0 success, 1 a requested check failed, 2 usage or input
//! error, 3 mathematical domain error (pole, outside strip, unsupported
//! inversion).

pub mod parse;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::catalog::{self, DistributionEntry, Params};
use crate::error::{Error, Result};
use crate::gtform::DEFAULT_IDENTITY_TOL;
use crate::json_f64;
use crate::mellin::{self, InversionSpec};
use crate::stochastics;

pub use parse::{parse_complex, parse_expr, parse_grid, parse_list, parse_number, parse_params, Expr};

/// Environment variable supplying the default seed.
pub const SEED_ENV: &str = "GML_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "gml", version, about = "Gamma-type moment functions: catalog, evaluation, verification, sampling")]
struct Cli {
    /// Print a readable summary on standard error.
    #[arg(long, global = true)]
    human: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct EntryArgs {
    /// Catalog entry name (see `gml list`).
    name: String,
    /// Parameters as k=v, separately or comma-separated.
    #[arg(long, num_args = 1.., value_name = "K=V")]
    params: Vec<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SampleFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DensityMethod {
    /// Numerical Mellin or Fourier inversion of the moment function.
    Inversion,
    /// The entry's closed-form density.
    Closed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog entries with their parameter schemas.
    List,
    /// Show an entry's schema, or the built entry when parameters are given.
    Info(EntryArgs),
    /// Evaluate the moment function at s.
    Moment {
        #[command(flatten)]
        entry: EntryArgs,
        /// s as "re" or "re,im".
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Asymptotic profile (strip, γ, γ′, δ, κ, C1).
    Profile(EntryArgs),
    /// Analyticity strip.
    Strip(EntryArgs),
    /// Compare two identity expressions as moment functions.
    CheckIdentity {
        /// Expression such as `product(gumbel, recip(gumbel))`.
        lhs: String,
        rhs: String,
        /// Largest relative deviation on the comparison grid.
        #[arg(long, default_value_t = DEFAULT_IDENTITY_TOL)]
        tol: f64,
    },
    /// Monte Carlo check of the moment formula on a grid of real s.
    VerifyMc {
        #[command(flatten)]
        entry: EntryArgs,
        /// Comma-separated real s values.
        #[arg(long, allow_hyphen_values = true)]
        s_grid: String,
        /// Sample size.
        #[arg(long, default_value_t = 1_000_000)]
        n: usize,
        /// Seed; defaults to $GML_SEED, else 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw samples.
    Sample {
        #[command(flatten)]
        entry: EntryArgs,
        /// Number of draws.
        #[arg(long)]
        n: usize,
        /// Seed; defaults to $GML_SEED, else 0.
        #[arg(long)]
        seed: Option<u64>,
        /// One value per line, or one {"x": ...} object per line.
        #[arg(long, value_enum, default_value_t = SampleFormat::Csv)]
        format: SampleFormat,
    },
    /// Tabulate the density on a grid a:b:steps.
    Density {
        #[command(flatten)]
        entry: EntryArgs,
        /// Grid a:b:steps, both ends included.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        /// Contour abscissa; defaults from the strip.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Absolute accuracy target of the inversion.
        #[arg(long, default_value_t = mellin::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = DensityMethod::Inversion)]
        method: DensityMethod,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Check that no zero of F lies inside its strip.
    Consistency(EntryArgs),
}

/// Exit code and output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Output {
    code: i32,
    stdout: String,
    human: String,
}

impl Output {
    fn json(v: Value, human: String) -> Self {
        Output::json_code(EXIT_OK, v, human)
    }

    fn json_code(code: i32, v: Value, human: String) -> Self {
        let mut stdout = serde_json::to_string_pretty(&v).expect("JSON values serialize");
        stdout.push('\n');
        Output { code, stdout, human }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Pole { .. } => "pole",
        Error::Validation(_) => "validation",
        Error::InvalidForm(_) => "invalid_form",
        Error::EmptyStrip { .. } => "empty_strip",
        Error::UnknownEntry(_) => "unknown_entry",
        Error::Parameter { .. } => "parameter",
        Error::Unrepresentable(_) => "unrepresentable",
        Error::OutsideStrip { .. } => "outside_strip",
        Error::InversionUnsupported(_) => "inversion_unsupported",
        Error::NotAvailable(_) => "not_available",
        Error::Quadrature(_) => "quadrature",
        Error::Parse(_) => "parse",
        Error::FactorRef(_) => "factor_ref",
    }
}

fn error_output(e: &Error) -> CommandResult {
    let mut message = e.to_string();
    if let Error::UnknownEntry(_) = e {
        let names: Vec<&str> = catalog::list_entries().iter().map(|i| i.name).collect();
        message.push_str(&format!("; available: {}", names.join(", ")));
    }
    let mut body = json!({ "kind": error_kind(e), "message": message });
    match e {
        Error::Pole { location, .. } => body["location"] = json_f64(*location),
        Error::OutsideStrip { s, lo, hi, .. } => {
            body["location"] = json_f64(*s);
            body["allowed"] = json!([json_f64(*lo), json_f64(*hi)]);
        }
        _ => {}
    }
    let code = if e.is_math_domain() { EXIT_DOMAIN } else { EXIT_USAGE };
    let mut stdout = serde_json::to_string_pretty(&json!({ "error": body })).expect("JSON values serialize");
    stdout.push('\n');
    CommandResult { code, stdout, stderr: format!("error: {message}\n") }
}

/// Run the command line `args` (including the program name). `env_seed`
/// is the value of `$GML_SEED`, if set.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    CommandResult { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => CommandResult { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let human = cli.human;
    match dispatch(cli.command, env_seed) {
        Ok(out) => CommandResult {
            code: out.code,
            stdout: out.stdout,
            stderr: if human || out.code != EXIT_OK { out.human } else { String::new() },
        },
        Err(e) => error_output(&e),
    }
}

fn default_seed(explicit: Option<u64>, env_seed: Option<&str>) -> Result<u64> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match env_seed {
        None => Ok(0),
        Some(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("{SEED_ENV} must be an unsigned 64-bit integer, got '{v}'"))),
    }
}

fn built(args: &EntryArgs) -> Result<DistributionEntry> {
    catalog::build(&args.name, &parse_params(&args.params)?)
}

fn params_json(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.to_string(), json_f64(v))).collect())
}

fn complex_json(z: Complex64) -> Value {
    json!({ "re": json_f64(z.re), "im": json_f64(z.im) })
}

fn dispatch(cmd: Command, env_seed: Option<&str>) -> Result<Output> {
    match cmd {
        Command::List => {
            let list = catalog::list_entries();
            let human = list.iter().map(|i| format!("{:<24} {}\n", i.name, i.schema_hint())).collect();
            Ok(Output::json(serde_json::to_value(&list).expect("serializable"), human))
        }
        Command::Info(args) => {
            let info = catalog::info(&args.name)?;
            if args.params.is_empty() && !info.params.is_empty() {
                let v = serde_json::to_value(info).expect("serializable");
                return Ok(Output::json(v, format!("{}: {}\n{}\n", info.name, info.label, info.schema_hint())));
            }
            let e = built(&args)?;
            Ok(Output::json(e.to_json(), format!("{}: {}\nform: {}\n", e.name, e.label, e.form)))
        }
        Command::Moment { entry, s } => {
            let e = built(&entry)?;
            let s = parse_complex(&s)?;
            let strip = e.form.strip()?;
            if !strip.contains(s.re) {
                return Err(Error::OutsideStrip {
                    s: s.re,
                    lo: strip.rho_minus,
                    hi: strip.rho_plus,
                    reason: "Re s must lie inside the analyticity strip".into(),
                });
            }
            let v = e.form.evaluate(s)?;
            let human = format!("{}({}) = {} + {}i\n", e.name, s, v.re, v.im);
            Ok(Output::json(
                json!({
                    "entry": e.name,
                    "params": params_json(&e.params),
                    "kind": e.kind,
                    "s": complex_json(s),
                    "value": complex_json(v),
                }),
                human,
            ))
        }
        Command::Profile(args) => {
            let e = built(&args)?;
            let strip = e.form.strip()?;
            let p = e.form.asymptotic_profile();
            let (g, gp, d) = e.form.profile_exact_parts();
            let human = format!(
                "strip ({}, {}), gamma {g}, gamma' {gp}, delta {d}, kappa {}, C1 {}\n",
                strip.rho_minus, strip.rho_plus, p.kappa, p.c1
            );
            Ok(Output::json(
                json!({
                    "rho_minus": json_f64(strip.rho_minus),
                    "rho_plus": json_f64(strip.rho_plus),
                    "gamma": json_f64(p.gamma),
                    "gamma_prime": json_f64(p.gamma_prime),
                    "delta": json_f64(p.delta),
                    "kappa": json_f64(p.kappa),
                    "c1": json_f64(p.c1),
                    "exact": { "gamma": g.to_string(), "gamma_prime": gp.to_string(), "delta": d.to_string() },
                    "entry": e.name,
                    "params": params_json(&e.params),
                }),
                human,
            ))
        }
        Command::Strip(args) => {
            let e = built(&args)?;
            let strip = e.form.strip()?;
            Ok(Output::json(
                json!({
                    "entry": e.name,
                    "params": params_json(&e.params),
                    "rho_minus": json_f64(strip.rho_minus),
                    "rho_plus": json_f64(strip.rho_plus),
                }),
                format!("({}, {})\n", strip.rho_minus, strip.rho_plus),
            ))
        }
        Command::CheckIdentity { lhs, rhs, tol } => {
            if !(tol > 0.0) {
                return Err(Error::Validation(format!("tolerance must be positive, got {tol}")));
            }
            let (l, r) = (parse_expr(&lhs)?.to_form()?, parse_expr(&rhs)?.to_form()?);
            let report = l.compare_moments(&r, tol)?;
            let code = if report.equal { EXIT_OK } else { EXIT_CHECK_FAILED };
            let human = format!(
                "{}: max relative deviation {:e} (tol {:e})\n",
                if report.equal { "equal" } else { "NOT equal" },
                report.max_relative_deviation,
                tol
            );
            Ok(Output::json_code(
                code,
                json!({
                    "lhs": { "expr": lhs, "form": l.to_json_value() },
                    "rhs": { "expr": rhs, "form": r.to_json_value() },
                    "report": serde_json::to_value(&report).expect("serializable"),
                }),
                human,
            ))
        }
        Command::VerifyMc { entry, s_grid, n, seed } => {
            let e = built(&entry)?;
            let grid = parse_list(&s_grid)?;
            let seed = default_seed(seed, env_seed)?;
            let report = stochastics::verify_entry(&e, &grid, n, seed)?;
            let mut human = String::new();
            for o in &report.outcomes {
                human.push_str(&match (o.passed, o.z_score) {
                    (Some(p), Some(z)) => {
                        format!("s = {}: {} (z = {z:.3}, {:?})\n", o.s, if p { "ok" } else { "FAIL" }, o.status)
                    }
                    _ => format!("s = {}: skipped ({})\n", o.s, o.note.as_deref().unwrap_or("")),
                });
            }
            let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            Ok(Output::json_code(code, serde_json::to_value(&report).expect("serializable"), human))
        }
        Command::Sample { entry, n, seed, format } => {
            let e = built(&entry)?;
            let recipe =
                e.recipe.as_ref().ok_or_else(|| Error::NotAvailable(format!("{} has no sampling recipe", e.name)))?;
            let seed = default_seed(seed, env_seed)?;
            let xs = stochastics::sample(recipe, n, seed)?;
            let stdout = match format {
                SampleFormat::Csv => stochastics::to_csv(&xs),
                SampleFormat::Jsonl => stochastics::to_jsonl(&xs),
            };
            Ok(Output { code: EXIT_OK, stdout, human: format!("{n} draws of {} with seed {seed}\n", e.name) })
        }
        Command::Density { entry, x, c, tol, method, format } => {
            let e = built(&entry)?;
            let xs = parse_grid(&x)?;
            let table = match method {
                DensityMethod::Inversion => {
                    let abscissa = c.as_deref().map(parse_number).transpose()?;
                    mellin::density_table(&e, &xs, &InversionSpec { abscissa, truncation: None, tol })?
                }
                DensityMethod::Closed => mellin::closed_density_table(&e, &xs)?,
            };
            let human = format!(
                "{} points, trapezoid mass {:.6}{}\n",
                table.rows.len(),
                table.trapezoid_mass,
                if table.normalized { "" } else { " (grid does not cover the mass)" }
            );
            Ok(match format {
                TableFormat::Json => Output::json(table.to_json(), human),
                TableFormat::Csv => Output { code: EXIT_OK, stdout: table.to_csv(), human },
            })
        }
        Command::Consistency(args) => {
            let params = parse_params(&args.params)?;
            let form = catalog::form_for_consistency(&args.name, &params)?;
            let report = form.check_positive_consistency();
            let code = if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED };
            let human = match report.offending_zero {
                Some(z) => format!("F has a zero at s = {z} inside the strip: no positive random variable\n"),
                None => "no zero inside the strip\n".to_string(),
            };
            let mut v = serde_json::to_value(&report).expect("serializable");
            v["entry"] = json!(args.name);
            v["params"] = params_json(&params);
            Ok(Output::json_code(code, v, human))
        }
    }
}
