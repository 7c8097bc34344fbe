//! Command-line front end: expression evaluation, identity verification,
//! dimension tables, kernels and numerical residuals.

pub mod expr;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use hoffman::relspace::{dims_table, graded_kernel, pairwise_triviality, SubspaceBasis};
use hoffman::zeta::{relation_residual_with, zeta_eval_with, ZetaCache, DEFAULT_DIGITS};
use hoffman::{
    appendix_identity, corollary_identity, d_generator, membership_cor44, power_check, verify_eq31,
    AppendixIdentity, Cor44, Corollary, Index, KernelMap, MapSpec, TruncSeries, Truncation,
    VerificationReport,
};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

pub use expr::{parse_expression, ExprError};

/// Environment variable holding the default number of digits for `zeta`
/// and `residual`.
pub const DIGITS_ENV: &str = "HOFFMAN_DIGITS";

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] hoffman::Error),
    #[error("expression error {0}")]
    Expr(#[from] ExprError),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "hoffman",
    version,
    about = "Exact computations with duality and derivation relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct BoxArgs {
    /// Number of u variables.
    #[arg(long, default_value_t = 3)]
    s: usize,
    /// Weight cap W.
    #[arg(long = "weight-cap", default_value_t = 8)]
    weight_cap: usize,
    /// Cap N on the total u-degree.
    #[arg(long = "u-cap", default_value_t = 6)]
    u_cap: usize,
}

impl BoxArgs {
    fn trunc(&self) -> Result<Truncation> {
        if self.s == 0 {
            return Err(CliError::Usage("--s must be at least 1".into()));
        }
        Ok(Truncation::new(self.s, self.weight_cap, self.u_cap))
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression and print the truncated series.
    Expand {
        expr: String,
        #[command(flatten)]
        trunc: BoxArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify an identity: eq31, cor42:i..iv, kajikawa, li or power.
    Verify {
        identity: String,
        /// Element of D_Delta, for eq31 and power.
        #[arg(long)]
        expr: Option<String>,
        /// Build the element as a * b * tau(Delta(a)) instead of --expr.
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value = "1")]
        b: String,
        /// Exponents e1,...,es of Delta.
        #[arg(long, allow_hyphen_values = true)]
        spec: Option<String>,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Exponent for the power check.
        #[arg(long, default_value_t = 2)]
        power: u32,
        #[command(flatten)]
        trunc: BoxArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Dimension table of the duality, derivation and intersection spaces.
    Dims {
        #[arg(long = "max-weight")]
        max_weight: usize,
        /// Exponents of Delta for the coefficient-span column; may repeat.
        #[arg(long, allow_hyphen_values = true)]
        spec: Vec<String>,
        /// Restrict to admissible words.
        #[arg(long)]
        h0: bool,
        #[arg(long = "u-cap")]
        u_cap: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graded kernel of partial<n>, delta-id or delta-tau.
    Kernel {
        map: String,
        #[arg(long)]
        weight: usize,
        #[arg(long, allow_hyphen_values = true)]
        spec: Option<String>,
        #[arg(long = "u-cap", default_value_t = 2)]
        u_cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Intersection of Ker(Delta_A - tau) and Ker(Delta_B - tau).
    Pairwise {
        #[arg(long = "specA", alias = "spec-a", allow_hyphen_values = true)]
        spec_a: String,
        #[arg(long = "specB", alias = "spec-b", allow_hyphen_values = true)]
        spec_b: String,
        #[arg(long)]
        weight: usize,
        #[arg(long = "u-cap", default_value_t = 2)]
        u_cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Membership of the duality families in the derivation span.
    Cor44 {
        /// `i` (params d,m,n) or `ii` (params k,r,m).
        part: String,
        #[arg(long)]
        params: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Numerical multiple zeta value.
    Zeta {
        #[arg(long)]
        index: String,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Numerical value of Z on a polynomial relation.
    Residual {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long = "weight-cap", default_value_t = 16)]
        weight_cap: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<T: Serialize>(path: &Option<PathBuf>, value: &T) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(value).expect("serializable");
        write_file(p, &text)?;
    }
    Ok(())
}

fn parse_spec(text: &str) -> Result<MapSpec> {
    text.parse::<MapSpec>()
        .map_err(|e| CliError::Usage(format!("bad spec `{text}`: {e}")))
}

fn digits(flag: Option<u32>) -> Result<u32> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DIGITS_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| CliError::Usage(format!("{DIGITS_ENV}={v} is not a number"))),
        Err(_) => Ok(DEFAULT_DIGITS),
    }
}

/// Exit status of a finished command.
enum Status {
    Ok,
    Mismatch,
}

fn report_status(report: &VerificationReport) -> Status {
    if report.equal {
        Status::Ok
    } else {
        Status::Mismatch
    }
}

fn element(
    expr: &Option<String>,
    a: &Option<String>,
    b: &str,
    spec: &MapSpec,
    t: Truncation,
) -> Result<TruncSeries> {
    match (expr, a) {
        (Some(e), None) => Ok(parse_expression(e, t)?),
        (None, Some(a)) => {
            let a = parse_expression(a, t)?;
            let b = parse_expression(b, t)?;
            Ok(d_generator(&a, &b, spec)?.value)
        }
        _ => Err(CliError::Usage("give exactly one of --expr and --a".into())),
    }
}

#[allow(clippy::too_many_arguments)]
fn verify(
    identity: &str,
    expr: &Option<String>,
    a: &Option<String>,
    b: &str,
    spec: &Option<String>,
    d: u32,
    r: usize,
    power: u32,
    t: Truncation,
) -> Result<VerificationReport> {
    let spec_or_default = || -> Result<MapSpec> {
        match spec {
            Some(s) => Ok(parse_spec(s)?.padded(t.s)?),
            None => Ok(MapSpec::new(vec![1]).padded(t.s)?),
        }
    };
    if let Some(which) = identity.strip_prefix("cor42:") {
        let c: Corollary = which.parse().map_err(|_| {
            CliError::Usage(format!("unknown part `{which}`; use i, ii, iii or iv"))
        })?;
        return Ok(corollary_identity(c, d, t)?);
    }
    match identity {
        "eq31" => {
            let spec = spec_or_default()?;
            let w = element(expr, a, b, &spec, t)?;
            Ok(verify_eq31(&w, &spec)?)
        }
        "power" => {
            let spec = spec_or_default()?;
            let w = element(expr, a, b, &spec, t)?;
            Ok(power_check(&w, &spec, power)?)
        }
        "kajikawa" => Ok(appendix_identity(
            AppendixIdentity::Kajikawa { r, d: d as usize },
            t,
        )?),
        "li" => Ok(appendix_identity(AppendixIdentity::Li, t)?),
        other => Err(CliError::Usage(format!(
            "unknown identity `{other}`; use eq31, cor42:i..iv, kajikawa, li or power"
        ))),
    }
}

fn parse_kernel_map(name: &str, spec: &Option<String>) -> Result<(KernelMap, usize)> {
    let spec = || -> Result<MapSpec> {
        spec.as_deref()
            .map(parse_spec)
            .transpose()?
            .ok_or_else(|| CliError::Usage(format!("{name} needs --spec")))
    };
    if let Some(n) = name.strip_prefix("partial") {
        let n: usize = n
            .parse()
            .map_err(|_| CliError::Usage(format!("bad map `{name}`; use partial<n>")))?;
        return Ok((KernelMap::Partial(n), 1));
    }
    match name {
        "delta-id" => {
            let s = spec()?;
            let k = s.s();
            Ok((KernelMap::DeltaMinusId(s), k))
        }
        "delta-tau" => {
            let s = spec()?;
            let k = s.s();
            Ok((KernelMap::DeltaMinusTau(s), k))
        }
        _ => Err(CliError::Usage(format!(
            "unknown map `{name}`; use partial<n>, delta-id or delta-tau"
        ))),
    }
}

fn basis_strings(b: &SubspaceBasis) -> Vec<String> {
    b.basis().iter().map(|p| p.render()).collect()
}

fn parse_params(text: &str, count: usize) -> Result<Vec<usize>> {
    let v = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| CliError::Usage(format!("bad parameters `{text}`")))?;
    if v.len() != count {
        return Err(CliError::Usage(format!(
            "expected {count} parameters, got `{text}`"
        )));
    }
    Ok(v)
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<Status> {
    let w = |out: &mut dyn Write, s: &str| {
        let _ = writeln!(out, "{s}");
    };
    match cli.command {
        Command::Expand { expr, trunc, json } => {
            let t = trunc.trunc()?;
            let v = parse_expression(&expr, t)?;
            w(out, &v.render());
            let terms: Vec<_> = v
                .coeffs()
                .map(|(a, p)| json!({"exponent": a, "coefficient": p.render()}))
                .collect();
            write_json(
                &json,
                &json!({"expr": expr, "box": t, "series": v.render(), "terms": terms}),
            )?;
            Ok(Status::Ok)
        }
        Command::Verify {
            identity,
            expr,
            a,
            b,
            spec,
            d,
            r,
            power,
            trunc,
            json,
        } => {
            let t = trunc.trunc()?;
            let report = verify(&identity, &expr, &a, &b, &spec, d, r, power, t)?;
            let _ = write!(out, "{report}");
            write_json(&json, &report)?;
            Ok(report_status(&report))
        }
        Command::Dims {
            max_weight,
            spec,
            h0,
            u_cap,
            csv,
            json,
        } => {
            if max_weight > 12 {
                return Err(CliError::Usage("--max-weight is limited to 12".into()));
            }
            let specs = spec
                .iter()
                .map(|s| parse_spec(s))
                .collect::<Result<Vec<_>>>()?;
            let table = dims_table(max_weight, &specs, h0, u_cap)?;
            let text = table.to_csv();
            let _ = write!(out, "{text}");
            if let Some(p) = &csv {
                write_file(p, &text)?;
            }
            write_json(&json, &table)?;
            match table.strict_inclusion_weight {
                Some(k) => eprintln!("smallest weight with dim_intersection < dim_duality: {k}"),
                None => {
                    eprintln!("no weight with dim_intersection < dim_duality up to {max_weight}")
                }
            }
            let all_equal = table.rows.iter().all(|r| r.coef_span_equal != Some(false));
            Ok(if all_equal {
                Status::Ok
            } else {
                Status::Mismatch
            })
        }
        Command::Kernel {
            map,
            weight,
            spec,
            u_cap,
            json,
        } => {
            let (m, s) = parse_kernel_map(&map, &spec)?;
            let t = Truncation::new(s.max(1), weight + u_cap, u_cap);
            let k = graded_kernel(&m, weight, t)?;
            let expected = !matches!(m, KernelMap::DeltaMinusTau(_));
            let ok = !expected || k == SubspaceBasis::z_power(weight);
            w(
                out,
                &format!("Ker({m}) at weight {weight} [{t}]: dim {}", k.dim()),
            );
            for p in basis_strings(&k) {
                w(out, &format!("  {p}"));
            }
            if expected {
                w(
                    out,
                    &format!(
                        "equals span{{z^{weight}}}: {}",
                        if ok { "yes" } else { "NO" }
                    ),
                );
            }
            write_json(
                &json,
                &json!({"map": m.to_string(), "box": t, "kernel": k, "equals_z_power": ok}),
            )?;
            Ok(if ok { Status::Ok } else { Status::Mismatch })
        }
        Command::Pairwise {
            spec_a,
            spec_b,
            weight,
            u_cap,
            json,
        } => {
            let a = parse_spec(&spec_a)?;
            let b = parse_spec(&spec_b)?;
            let s = a.s().max(b.s());
            let (a, b) = (a.padded(s)?, b.padded(s)?);
            let t = Truncation::new(s, weight + u_cap, u_cap);
            let report = pairwise_triviality(&a, &b, weight, t)?;
            let _ = write!(out, "{report}");
            write_json(&json, &report)?;
            Ok(report_status(&report))
        }
        Command::Cor44 { part, params, json } => {
            let which = match part.as_str() {
                "i" => {
                    let p = parse_params(&params, 3)?;
                    Cor44::I {
                        d: p[0],
                        m: p[1],
                        n: p[2],
                    }
                }
                "ii" => {
                    let p = parse_params(&params, 3)?;
                    Cor44::II {
                        k: p[0],
                        r: p[1],
                        m: p[2],
                    }
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "unknown part `{other}`; use i or ii"
                    )))
                }
            };
            let report = membership_cor44(which)?;
            let _ = write!(out, "{report}");
            write_json(&json, &report)?;
            Ok(report_status(&report))
        }
        Command::Zeta {
            index,
            cutoff,
            digits: d,
            json,
        } => {
            let idx: Index = index.parse()?;
            let z = zeta_eval_with(&idx, cutoff, digits(d)?)?;
            w(
                out,
                &format!(
                    "zeta{} partial sum to M = {}: {}",
                    z.index, z.cutoff, z.value
                ),
            );
            w(out, &format!("  tail bound: {:.3e}", z.tail_bound));
            w(
                out,
                &format!("  extrapolated: {} (+/- {:.1e})", z.limit, z.limit_error),
            );
            write_json(&json, &z)?;
            Ok(Status::Ok)
        }
        Command::Residual {
            expr,
            cutoff,
            digits: d,
            weight_cap,
            json,
        } => {
            let t = Truncation::new(1, weight_cap, 0);
            let v = parse_expression(&expr, t)?;
            let p = v.coef(&hoffman::MultiExponent::zero(1))?;
            let r = relation_residual_with(&p, cutoff, digits(d)?, ZetaCache::global())?;
            w(out, &format!("Z({}) at M = {}", p.render(), cutoff));
            w(
                out,
                &format!(
                    "  partial-sum residual: {} (tail bound {:.3e})",
                    r.residual, r.tail_bound
                ),
            );
            w(
                out,
                &format!(
                    "  extrapolated residual: {} (+/- {:.1e})",
                    r.limit_residual, r.limit_error
                ),
            );
            write_json(&json, &r)?;
            Ok(if r.within_tail_bound() {
                Status::Ok
            } else {
                Status::Mismatch
            })
        }
    }
}

/// Runs the command line `args` (including the program name) and returns
/// the exit code: 0 on success, 1 on a verification mismatch, 2 on a usage
/// error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(Status::Ok) => 0,
        Ok(Status::Mismatch) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
