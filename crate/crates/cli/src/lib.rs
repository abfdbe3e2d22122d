//! Command-line front end: reproduce multiplicity tables, print B-series from
//! both pipelines, and run identity checks.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::Value;
use tensorsq_core::identities::{self, IdentityReport};
use tensorsq_core::multiplicity::{b_comb, b_table, b_theta_all, Branch};
use tensorsq_core::{max_class, Error as CoreError, MultiplicityTable, QSeries};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::UnsupportedModulus(_)) => EXIT_UNSUPPORTED,
            CliError::Core(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) | CliError::Csv(_) | CliError::Json(_) => EXIT_FAILURE,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "tensorsq",
    version,
    about = "Tensor square decomposition of the basic sl(n)^ module"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate b_ik with witness partitions.
    Decompose(RunConfig),
    /// Print coefficients of B_i(q) from enumeration and/or the theta solve.
    Bseries(RunConfig),
    /// Run identity checks; exits 1 if any fails.
    Verify(RunConfig),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Comb,
    Theta,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    #[value(name = "lemma5.1")]
    Lemma51,
    #[value(name = "lemma5.2")]
    Lemma52,
    #[value(name = "lemma5.3")]
    Lemma53,
    #[value(name = "lemma5.4")]
    Lemma54,
    #[value(name = "theorem5.1")]
    Theorem51,
    Master,
    TripleProduct,
    All,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Rank parameter of sl(n)^ (n ≥ 2).
    #[arg(long)]
    pub n: Option<u32>,
    /// Series are exact below q^order.
    #[arg(long, env = "QSERIES_ORDER", default_value_t = 30, value_parser = clap::value_parser!(i64).range(1..))]
    pub order: i64,
    /// Largest k tabulated (decompose) or checked (theorem5.1).
    #[arg(long)]
    pub max_k: Option<u32>,
    /// Restrict to one class i.
    #[arg(long)]
    pub i: Option<u32>,
    /// Output encoding; table for decompose/bseries and json for verify by default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Allow the theta pipeline for n outside the proven families.
    #[arg(long)]
    pub conjecture: bool,
    /// Keep at most this many witnesses per entry.
    #[arg(long)]
    pub witness_cap: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Comb)]
    pub method: Method,
    #[arg(long, value_enum, default_value_t = Identity::All)]
    pub identity: Identity,
}

/// Runs a parsed command, writing its payload to `out`; returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match &cli.command {
        Command::Decompose(cfg) => cmd_decompose(cfg, out),
        Command::Bseries(cfg) => cmd_bseries(cfg, out),
        Command::Verify(cfg) => cmd_verify(cfg, out),
    }
}

fn require_n(cfg: &RunConfig) -> Result<u32, CliError> {
    let n = cfg
        .n
        .ok_or_else(|| CliError::Usage("--n is required".into()))?;
    if n < 2 {
        return Err(CliError::Usage(format!("--n must be at least 2, got {n}")));
    }
    Ok(n)
}

fn classes(cfg: &RunConfig, n: u32) -> Result<Vec<u32>, CliError> {
    match cfg.i {
        Some(i) if i > max_class(n) => Err(CliError::Usage(format!(
            "--i must be at most {} for n = {n}",
            max_class(n)
        ))),
        Some(i) => Ok(vec![i]),
        None => Ok((0..=max_class(n)).collect()),
    }
}

pub fn cmd_decompose(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let n = require_n(cfg)?;
    let max_k = cfg.max_k.unwrap_or(6);
    let mut table = b_table(n, max_k, cfg.witness_cap)?;
    if let Some(i) = cfg.i {
        classes(cfg, n)?;
        table.entries.retain(|e| e.i == i);
    }
    match cfg.format.unwrap_or(Format::Table) {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&table)?)?,
        Format::Csv => write_table_csv(&table, out)?,
        Format::Table => write_table_text(&table, out)?,
    }
    Ok(EXIT_PASS)
}

fn witness_text(entry: &tensorsq_core::TableEntry, sep: &str) -> String {
    let mut parts: Vec<String> = entry.witnesses.iter().map(ToString::to_string).collect();
    if entry.omitted > 0 {
        parts.push(format!("+{} more", entry.omitted));
    }
    parts.join(sep)
}

fn write_table_csv(table: &MultiplicityTable, out: &mut dyn Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "i", "k", "b", "witnesses"])?;
    for e in &table.entries {
        w.write_record([
            table.n.to_string(),
            e.i.to_string(),
            e.k.to_string(),
            e.b.to_string(),
            witness_text(e, " "),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_table_text(table: &MultiplicityTable, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "n = {}", table.n)?;
    writeln!(out, "{:>3} {:>4} {:>8}  witnesses", "i", "k", "b")?;
    for e in &table.entries {
        let line = format!(
            "{:>3} {:>4} {:>8}  {}",
            e.i,
            e.k,
            e.b,
            witness_text(e, ", ")
        );
        writeln!(out, "{}", line.trim_end())?;
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SeriesReport {
    i: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    comb: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta: Option<Vec<Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    theta_error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_disagreement: Option<i64>,
}

#[derive(Debug, Serialize)]
struct BseriesReport {
    n: u32,
    order: i64,
    branch: Branch,
    series: Vec<SeriesReport>,
}

fn json_int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

fn coeffs(s: &QSeries) -> Vec<BigInt> {
    s.coeffs_range(0, s.order())
}

pub fn cmd_bseries(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let n = require_n(cfg)?;
    let wanted = classes(cfg, n)?;
    let order = cfg.order;
    let branch = Branch::of(n);
    let use_comb = cfg.method != Method::Theta;
    let use_theta = cfg.method != Method::Comb;

    let theta: Option<Result<Vec<QSeries>, CoreError>> = if use_theta {
        if !branch.is_proven() && !cfg.conjecture {
            return Err(CoreError::UnsupportedModulus(n).into());
        }
        // In conjecture mode a failed solve is part of the report, not an error.
        match b_theta_all(n, order, cfg.conjecture) {
            Err(e) if !cfg.conjecture => return Err(e.into()),
            result => Some(result),
        }
    } else {
        None
    };

    let mut reports = Vec::new();
    let mut any_disagreement = false;
    for &i in &wanted {
        let comb = if use_comb {
            Some(coeffs(&b_comb(i, n, order)?))
        } else {
            None
        };
        let (theta_coeffs, theta_error) = match &theta {
            Some(Ok(all)) => (Some(coeffs(&all[i as usize])), None),
            Some(Err(e)) => (None, Some(e.to_string())),
            None => (None, None),
        };
        let (agree, first_disagreement) = match (&comb, &theta_coeffs) {
            (Some(c), Some(t)) => {
                let first = c.iter().zip(t).position(|(a, b)| a != b).map(|d| d as i64);
                any_disagreement |= first.is_some();
                (Some(first.is_none()), first)
            }
            (Some(_), None) if use_theta => {
                any_disagreement = true;
                (Some(false), None)
            }
            _ => (None, None),
        };
        reports.push((
            i,
            comb,
            theta_coeffs,
            theta_error,
            agree,
            first_disagreement,
        ));
    }

    match cfg.format.unwrap_or(Format::Table) {
        Format::Json => {
            let series = reports
                .iter()
                .map(|(i, comb, theta, err, agree, first)| SeriesReport {
                    i: *i,
                    comb: comb.as_ref().map(|c| c.iter().map(json_int).collect()),
                    theta: theta.as_ref().map(|c| c.iter().map(json_int).collect()),
                    theta_error: err.clone(),
                    agree: *agree,
                    first_disagreement: *first,
                })
                .collect();
            let report = BseriesReport {
                n,
                order,
                branch,
                series,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "i", "k", "comb", "theta", "diff"])?;
            for (i, comb, theta, _, _, _) in &reports {
                for d in 0..order as usize {
                    let (c, t, diff) = cells(comb, theta, d);
                    w.write_record([
                        n.to_string(),
                        i.to_string(),
                        (*i as usize + d).to_string(),
                        c,
                        t,
                        diff,
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Table => {
            for (i, comb, theta, err, agree, first) in &reports {
                writeln!(out, "n = {n}, i = {i}")?;
                let mut header = format!("{:>4}", "k");
                if comb.is_some() {
                    header += &format!(" {:>14}", "comb");
                }
                if theta.is_some() {
                    header += &format!(" {:>14}", "theta");
                }
                if comb.is_some() && theta.is_some() {
                    header += &format!(" {:>8}", "diff");
                }
                writeln!(out, "{header}")?;
                for d in 0..order as usize {
                    let (c, t, diff) = cells(comb, theta, d);
                    let mut line = format!("{:>4}", *i as usize + d);
                    if comb.is_some() {
                        line += &format!(" {c:>14}");
                    }
                    if theta.is_some() {
                        line += &format!(" {t:>14}");
                    }
                    if comb.is_some() && theta.is_some() {
                        line += &format!(" {diff:>8}");
                    }
                    writeln!(out, "{line}")?;
                }
                if let Some(err) = err {
                    writeln!(out, "theta solve failed: {err}")?;
                }
                match (agree, first) {
                    (Some(true), _) => writeln!(out, "agree below q^{order}")?,
                    (Some(false), Some(d)) => {
                        writeln!(out, "first disagreement at k = {}", *i as i64 + d)?
                    }
                    (Some(false), None) => writeln!(out, "no theta series to compare")?,
                    _ => {}
                }
            }
        }
    }
    // Disagreement is a failure only where the theta formula is proven.
    Ok(if any_disagreement && branch.is_proven() {
        EXIT_FAILURE
    } else {
        EXIT_PASS
    })
}

fn cells(
    comb: &Option<Vec<BigInt>>,
    theta: &Option<Vec<BigInt>>,
    d: usize,
) -> (String, String, String) {
    let c = comb.as_ref().map(|v| v[d].clone());
    let t = theta.as_ref().map(|v| v[d].clone());
    let diff = match (&c, &t) {
        (Some(a), Some(b)) => (a - b).to_string(),
        _ => String::new(),
    };
    let show = |x: Option<BigInt>| x.map(|v| v.to_string()).unwrap_or_default();
    (show(c), show(t), diff)
}

pub fn cmd_verify(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let order = cfg.order;
    let max_k = cfg.max_k.unwrap_or(30);
    let master_ns: Vec<u32> = match cfg.n {
        Some(_) => vec![require_n(cfg)?],
        None => (2..=7).collect(),
    };
    let reports: Vec<IdentityReport> = match cfg.identity {
        Identity::Lemma51 => vec![identities::check_lemma_5_1(order)?],
        Identity::Lemma52 => vec![identities::check_lemma_5_2(order)?],
        Identity::Lemma53 => vec![identities::check_lemma_5_3(order)?],
        Identity::Lemma54 => vec![identities::check_lemma_5_4(order)?],
        Identity::Theorem51 => vec![identities::check_theorem_5_1(max_k)],
        Identity::TripleProduct => vec![identities::check_triple_product(order)?],
        Identity::Master => master_ns
            .iter()
            .map(|&n| identities::check_master(n, order))
            .collect::<Result<_, _>>()?,
        Identity::All => identities::run_suite(order, max_k)?,
    };
    write_reports(&reports, cfg.format.unwrap_or(Format::Json), out)?;
    Ok(if reports.iter().all(|r| r.holds) {
        EXIT_PASS
    } else {
        EXIT_FAILURE
    })
}

fn write_reports(
    reports: &[IdentityReport],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(reports)?)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["name", "order", "holds", "label", "exponent", "lhs", "rhs"])?;
            for r in reports {
                let d = r.first_discrepancy.as_ref();
                w.write_record([
                    r.name.clone(),
                    r.order.to_string(),
                    r.holds.to_string(),
                    d.map(|d| d.label.clone()).unwrap_or_default(),
                    d.map(|d| d.exponent.to_string()).unwrap_or_default(),
                    d.map(|d| d.lhs.clone()).unwrap_or_default(),
                    d.map(|d| d.rhs.clone()).unwrap_or_default(),
                ])?;
            }
            w.flush()?;
        }
        Format::Table => {
            for r in reports {
                let status = if r.holds { "PASS" } else { "FAIL" };
                write!(out, "{status}  {:<16} order {}", r.name, r.order)?;
                if let Some(d) = &r.first_discrepancy {
                    write!(
                        out,
                        "  [{}] q^{}: {} vs {}",
                        d.label, d.exponent, d.lhs, d.rhs
                    )?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}
