//! The `sl2hat` command line tool. [`run`] returns the process exit code:
//! 0 when everything checked passes, 1 on a verified mismatch, 2 on usage errors.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::embeddings::embedding_report;
use crate::error::{Error, Result};
use crate::liealg::{HighestWeight, Module};
use crate::modules::{dims_table, DimRow};
use crate::partitions::{catalog_lt_r, enumerate, lt_r_vlambda, ColoredPartition, EnumOptions, PartSet};
use crate::qseries::{
    conditioned_partition_gf, identity_check, p_product, q_product, specialized_character, ProductFormula, Specialization,
};
use crate::suites::{run_suite, SuiteConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sl2hat", version, about = "Exact computations for the affine Lie algebra sl2-hat")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension table of L(k0Λ₀ + k1Λ₁) against the conditioned-partition count.
    Dims {
        #[arg(long, default_value_t = 1)]
        k0: u32,
        #[arg(long, default_value_t = 0)]
        k1: u32,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a verification suite, one JSON line per check.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, env = "SL2HAT_TRUNCATE", default_value_t = 200)]
        truncate: usize,
        #[arg(long)]
        k0: Option<u32>,
        #[arg(long)]
        k1: Option<u32>,
        /// Highest level when no weight is given.
        #[arg(long)]
        max_level: Option<u32>,
        #[arg(long)]
        depth: Option<u32>,
        /// Print only failing checks.
        #[arg(long)]
        failures_only: bool,
    },
    /// Print a q-series: a product formula by id, or P, Q, character, gf.
    Qseries {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k0: Option<u32>,
        #[arg(long)]
        k1: Option<u32>,
        #[arg(long)]
        s0: Option<u32>,
        #[arg(long)]
        s1: Option<u32>,
        #[arg(long)]
        m0: Option<u32>,
        #[arg(long)]
        two_m1: Option<u32>,
        #[arg(long, env = "SL2HAT_TRUNCATE", default_value_t = 200)]
        truncate: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List colored partitions of a degree.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        degree: i32,
        #[arg(long, allow_hyphen_values = true)]
        weight: Option<i32>,
        /// Impose the difference and initial conditions for (k0, k1).
        #[arg(long, num_args = 2, value_names = ["K0", "K1"])]
        conditions: Option<Vec<u32>>,
        /// Use strictly negative parts only.
        #[arg(long)]
        negative: bool,
        #[arg(long)]
        max_length: Option<u32>,
    },
    /// Leading term of r_{iα}(n) on the vacuum, computed and from the catalog.
    LeadingTerm {
        #[arg(long)]
        k0: u32,
        #[arg(long)]
        k1: u32,
        #[arg(long, allow_hyphen_values = true)]
        i: i32,
        #[arg(long, allow_hyphen_values = true)]
        n: i32,
    },
    /// Embeddings of leading terms in a partition and their pair classes.
    Embeddings {
        #[arg(long)]
        pi: String,
        #[arg(long)]
        k: u32,
    },
}

/// Parse `args` (including the program name) and run.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "sl2hat: {e}");
            match e {
                Error::Inconsistent(_) => EXIT_MISMATCH,
                _ => EXIT_USAGE,
            }
        }
    }
}

fn io<T>(r: std::io::Result<T>) -> Result<T> {
    r.map_err(|e| Error::Usage(format!("write failed: {e}")))
}

fn need(v: Option<u32>, flag: &str, formula: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Usage(format!("--formula {formula} needs --{flag}")))
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Dims { k0, k1, depth, format } => {
            let rows = dims_table(k0, k1, depth)?;
            match format {
                Format::Csv => {
                    io(writeln!(out, "{}", DimRow::CSV_HEADER))?;
                    for r in &rows {
                        io(writeln!(out, "{}", r.to_csv()))?;
                    }
                }
                Format::Json => io(writeln!(out, "{}", json!(rows)))?,
                Format::Text => {
                    io(writeln!(out, "{:>4} {:>4} {:>6} {:>6} {:>6} {:>6}  match", "d", "w", "dim M", "M1", "dim L", "count"))?;
                    for r in &rows {
                        io(writeln!(
                            out,
                            "{:>4} {:>4} {:>6} {:>6} {:>6} {:>6}  {}",
                            r.d, r.w, r.dim_m, r.rank_m1, r.dim_l, r.count_conditions, r.matches
                        ))?;
                    }
                }
            }
            let bad = rows.iter().filter(|r| !r.matches).count();
            if bad > 0 {
                io(writeln!(err, "{bad} of {} grades disagree with the partition count", rows.len()))?;
                return Ok(EXIT_MISMATCH);
            }
            Ok(EXIT_PASS)
        }
        Command::Verify { suite, truncate, k0, k1, max_level, depth, failures_only } => {
            if truncate == 0 {
                return Err(Error::Usage("--truncate must be at least 1".into()));
            }
            let cfg = SuiteConfig { k0, k1, max_level, depth, truncate };
            let (mut total, mut failed) = (0usize, 0usize);
            let mut write_err = None;
            run_suite(&suite, &cfg, &mut |rec| {
                total += 1;
                if !rec.pass {
                    failed += 1;
                }
                if (!failures_only || !rec.pass) && write_err.is_none() {
                    if let Err(e) = writeln!(out, "{}", rec.to_json()) {
                        write_err = Some(e);
                    }
                }
            })?;
            if let Some(e) = write_err {
                return io(Err(e));
            }
            io(writeln!(err, "{suite}: {} of {total} checks passed", total - failed))?;
            Ok(if failed == 0 { EXIT_PASS } else { EXIT_MISMATCH })
        }
        Command::Qseries { formula, n, k0, k1, s0, s1, m0, two_m1, truncate, format } => {
            if truncate == 0 {
                return Err(Error::Usage("--truncate must be at least 1".into()));
            }
            let f = formula.as_str();
            let (series, check) = match f {
                "P" => (p_product(need(s0, "s0", f)?, need(s1, "s1", f)?, truncate), None),
                "Q" => (q_product(need(m0, "m0", f)?, need(two_m1, "two-m1", f)?, truncate), None),
                "character" => {
                    let (a, b) = (need(k0, "k0", f)?, need(k1, "k1", f)?);
                    let (c, d) = (need(s0, "s0", f)?, need(s1, "s1", f)?);
                    Specialization::new(c, d)?;
                    (specialized_character(a, b, c, d, truncate), None)
                }
                "gf" => {
                    let (a, b) = (need(k0, "k0", f)?, need(k1, "k1", f)?);
                    let spec = Specialization::new(need(s0, "s0", f)?, need(s1, "s1", f)?)?;
                    (conditioned_partition_gf(a, b, spec, truncate), None)
                }
                id => {
                    let pf = product_formula(id, n, k0, k1, s0, s1)?;
                    pf.validate()?;
                    (pf.product(truncate)?, Some(pf.character(truncate)))
                }
            };
            match format {
                Format::Text => io(writeln!(out, "{series}"))?,
                Format::Json => io(writeln!(out, "{}", series.to_json()))?,
                Format::Csv => io(write!(out, "{}", series.to_csv()))?,
            }
            if let Some(ch) = check {
                if let Err(m) = identity_check(&series, &ch)? {
                    io(writeln!(err, "product and character differ at q^{}: {} vs {}", m.exponent, m.lhs, m.rhs))?;
                    return Ok(EXIT_MISMATCH);
                }
            }
            Ok(EXIT_PASS)
        }
        Command::Enumerate { degree, weight, conditions, negative, max_length } => {
            let set = if negative { PartSet::Negative } else { PartSet::Verma };
            let conditions = conditions.map(|v| (v[0], v[1]));
            let list = enumerate(set, degree, EnumOptions { weight, conditions, max_length })?;
            for p in &list {
                io(writeln!(out, "{p}"))?;
            }
            io(writeln!(err, "{} partitions", list.len()))?;
            Ok(EXIT_PASS)
        }
        Command::LeadingTerm { k0, k1, i, n } => {
            let k = k0 + k1;
            if i.unsigned_abs() > k + 1 {
                return Err(Error::Usage(format!("|i| must be at most k+1 = {}", k + 1)));
            }
            let m = Module::new(HighestWeight::verma(k0, k1));
            let computed = m.relation_leading_term(i, n);
            let catalog = lt_r_vlambda(k0, k1, i, n);
            let generic = catalog_lt_r(k, i, n)?;
            let show = |p: &Option<ColoredPartition>| p.as_ref().map(|p| p.to_string());
            io(writeln!(
                out,
                "{}",
                json!({
                    "k0": k0, "k1": k1, "i": i, "n": n,
                    "computed": show(&computed),
                    "catalog": show(&catalog),
                    "catalog_generic": generic.to_string(),
                    "pass": computed == catalog,
                })
            ))?;
            Ok(if computed == catalog { EXIT_PASS } else { EXIT_MISMATCH })
        }
        Command::Embeddings { pi, k } => {
            let pi: ColoredPartition = pi.parse()?;
            io(writeln!(out, "{}", embedding_report(&pi, k)?))?;
            Ok(EXIT_PASS)
        }
    }
}

fn product_formula(
    id: &str,
    n: Option<u32>,
    k0: Option<u32>,
    k1: Option<u32>,
    s0: Option<u32>,
    s1: Option<u32>,
) -> Result<ProductFormula> {
    use ProductFormula::*;
    let weights = || -> Result<(u32, u32)> { Ok((need(k0, "k0", id)?, need(k1, "k1", id)?)) };
    let nss = || -> Result<(u32, u32, u32)> { Ok((need(n, "n", id)?, need(s0, "s0", id)?, need(s1, "s1", id)?)) };
    Ok(match id {
        "11.1.3" => weights().map(|(k0, k1)| PrincipalRatio { k0, k1 })?,
        "11.1.4" => weights().map(|(k0, k1)| TwistedRatio { k0, k1 })?,
        "11.1.5" => nss().map(|(n, s0, s1)| DualTwisted { n, s0, s1 })?,
        "11.1.6" => nss().map(|(n, s0, s1)| DualTwistedFlip { n, s0, s1 })?,
        "11.1.7" => nss().map(|(n, s0, s1)| DualScaled { n, s0, s1 })?,
        "11.1.9" => PrincipalDiagonal { n: need(n, "n", id)? },
        "11.1.10" => PrincipalSkew { n: need(n, "n", id)? },
        "11.1.11" => weights().map(|(k0, k1)| PrincipalGeneric { k0, k1 })?,
        "11.1.12" => weights().map(|(k0, k1)| TwistedGeneric { k0, k1 })?,
        "11.1.13" => TwistedSkew { n: need(n, "n", id)? },
        "11.1.14" => TwistedDiagonal { n: need(n, "n", id)? },
        other => {
            return Err(Error::Usage(format!(
                "unknown formula {other:?}; expected 11.1.3-11.1.7, 11.1.9-11.1.14, P, Q, character or gf"
            )))
        }
    })
}
