//! `cubictheta`: expand q-series, verify the identity registry and print
//! arithmetic tables.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success, 1 a
//! verification failed, 2 usage error (unknown series, identity or kind,
//! order above `CUBICTHETA_ORDER_CAP`), 3 malformed series argument.

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cubictheta::generators::{self, EtaQuotientSpec};
use cubictheta::identities::{self, VerifyReport};
use cubictheta::thetalab::theta_deriv;
use cubictheta::{registry, Category, PiSeries, RationalExp, SeriesContext, ThetaChar};
use num_bigint::BigInt;
use num_traits::One;
use serde_json::json;

#[derive(Parser)]
#[command(name = "cubictheta", version, about = "Exact q-series for the cubic theta functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a named series through q^order.
    ///
    /// Names: a, b3, c3, eta, eta-quotient:SPEC (e.g. 1^9*3^-3), E2, E4, E6,
    /// theta:EPS,EPS' (e.g. theta:1,1/3), huberP, huberPcal, j-invariant.
    Expand {
        name: String,
        #[command(flatten)]
        common: Common,
    },
    /// Verify registry identities.
    Verify {
        /// Identity id; may be repeated.
        #[arg(long, conflicts_with_all = ["all", "category"])]
        id: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        category: Option<Category>,
        /// Worker threads (defaults to all cores).
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Tabulate representation numbers, divisor sums or coefficients of a^k.
    Table {
        #[arg(long, value_enum)]
        kind: TableKind,
        #[arg(long, default_value_t = 20)]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// List registry entries.
    List {
        #[arg(long)]
        category: Option<Category>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

#[derive(Args)]
struct Common {
    /// Largest exponent to compute (inclusive).
    #[arg(long, default_value_t = 40)]
    order: i64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Representations,
    Divisor,
    Apow,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure {
        code: 3,
        message: message.into(),
    }
}

fn check_order(order: i64) -> Result<(), Failure> {
    if order < 0 {
        return Err(usage(format!("order must be non-negative, got {order}")));
    }
    if let Ok(cap) = std::env::var("CUBICTHETA_ORDER_CAP") {
        let cap: i64 = cap
            .trim()
            .parse()
            .map_err(|_| usage(format!("CUBICTHETA_ORDER_CAP is not an integer: {cap:?}")))?;
        if order > cap {
            return Err(usage(format!("order {order} exceeds CUBICTHETA_ORDER_CAP={cap}")));
        }
    }
    Ok(())
}

fn series_by_name(name: &str, order: i64) -> Result<PiSeries, Failure> {
    let ctx = SeriesContext::rational();
    let generated = if let Some(spec) = name.strip_prefix("eta-quotient:") {
        let spec: EtaQuotientSpec = spec.parse().map_err(|e| malformed(format!("{e}")))?;
        generators::eta_quotient(&spec, order, &ctx)
    } else if let Some(ch) = name.strip_prefix("theta:") {
        let ch: ThetaChar = ch.parse().map_err(malformed)?;
        return theta_deriv(0, ch, order, &ctx).map_err(|e| malformed(e.to_string()));
    } else {
        match name {
            "a" => generators::a_lattice(order, &ctx),
            "b3" => generators::b_cubed_series(order, &ctx),
            "c3" => generators::c_cubed_series(order, &ctx),
            "eta" => generators::eta(RationalExp::one(), order, &ctx),
            "E2" => generators::eisenstein(2, 1, order, &ctx),
            "E4" => generators::eisenstein(4, 1, order, &ctx),
            "E6" => generators::eisenstein(6, 1, order, &ctx),
            "huberP" => generators::huber_p_script(order, &ctx),
            "huberPcal" => generators::huber_p_cal(order, &ctx),
            "j-invariant" | "J" => generators::j_invariant(order, &ctx),
            _ => return Err(usage(format!("unknown series {name:?}"))),
        }
    };
    generated.map_err(|e| malformed(e.to_string()))
}

fn exponent_string(e: RationalExp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("{}/{}", e.numer(), e.denom())
    }
}

/// Exponent/coefficient pairs below the truncation bound. Integer-exponent
/// series are listed densely from `min(0, lead)`; finer grids only list their
/// nonzero terms.
fn rows(s: &PiSeries) -> Vec<(RationalExp, String)> {
    if s.exponent_denominator() != 1 {
        return s.terms().map(|(e, c)| (e, c.to_string())).collect();
    }
    let start = s.lead_exponent().map_or(0, |e| e.to_integer().min(0));
    let end = s.trunc().map_or_else(
        || s.terms().last().map_or(0, |(e, _)| e.to_integer() + 1),
        |t| t.to_integer(),
    );
    (start..end)
        .map(|k| {
            let c = s.coefficient_at(k).expect("integer grid");
            (RationalExp::from_integer(k), c.to_string())
        })
        .collect()
}

fn expand(name: &str, common: &Common, out: &mut impl Write) -> Result<(), Failure> {
    check_order(common.order)?;
    let series = series_by_name(name, common.order)?;
    if series.cyclo_order() > 1 {
        eprintln!("coefficients in Q(z), z = exp(2 pi i/{})", series.cyclo_order());
    }
    if let Some(t) = series.trunc() {
        eprintln!("known below q^{}", exponent_string(t));
    }
    let result = match common.format {
        Format::Plain => rows(&series)
            .into_iter()
            .try_for_each(|(e, c)| writeln!(out, "{}\t{}", exponent_string(e), c)),
        Format::Json => writeln!(out, "{}", serde_json::to_string(&series.to_json()).expect("serializable")),
        Format::Csv => {
            if series.terms().any(|(_, c)| c.to_rational().is_none()) {
                return Err(usage(format!("{name} has non-rational coefficients; use plain or json")));
            }
            writeln!(out, "exponent,coefficient").and_then(|_| {
                rows(&series)
                    .into_iter()
                    .try_for_each(|(e, c)| writeln!(out, "{},{}", exponent_string(e), c))
            })
        }
    };
    result.map_err(|e| usage(e.to_string()))
}

fn write_report(r: &VerifyReport, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(r).expect("serializable")),
        Format::Csv => {
            let d = r.first_discrepancy.as_ref();
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.id,
                if r.passed() { "pass" } else { "fail" },
                r.requested_order,
                r.achieved_order.as_deref().unwrap_or(""),
                d.map_or("", |d| d.exponent.as_str()),
                r.ms
            )
        }
        Format::Plain => {
            let verdict = if r.passed() { "pass" } else { "FAIL" };
            let achieved = r.achieved_order.as_deref().map_or("exact", |a| a.strip_suffix("/1").unwrap_or(a));
            write!(out, "{:<18} {verdict}  known below q^{achieved:<10} {:>6} ms", r.id, r.ms)?;
            if let Some(d) = &r.first_discrepancy {
                let at = if d.label.is_empty() { String::new() } else { format!(" [{}]", d.label) };
                write!(out, "  first discrepancy at q^{}{at}: lhs {} rhs {}", d.exponent, d.lhs, d.rhs)?;
            }
            if let Some(e) = &r.error {
                write!(out, "  error: {e}")?;
            }
            writeln!(out)
        }
    }
}

fn verify(
    ids: &[String],
    all: bool,
    category: Option<Category>,
    jobs: Option<usize>,
    common: &Common,
    out: &mut impl Write,
) -> Result<bool, Failure> {
    check_order(common.order)?;
    if ids.is_empty() && !all && category.is_none() {
        return Err(usage("verify needs --id, --all or --category"));
    }
    let records = if ids.is_empty() {
        registry()
            .into_iter()
            .filter(|r| category.is_none_or(|c| r.category == c))
            .collect::<Vec<_>>()
    } else {
        ids.iter()
            .map(|id| identities::find(id).map_err(|e| usage(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| usage(e.to_string()))?;
    let env = identities::BuildEnv::new(common.order);
    let start = Instant::now();
    let reports: Vec<VerifyReport> = pool.install(|| {
        use rayon::prelude::*;
        records.par_iter().map(|r| identities::verify_record(r, &env)).collect()
    });
    if common.format == Format::Csv {
        writeln!(out, "id,verdict,requested_order,achieved_order,first_discrepancy,ms").map_err(|e| usage(e.to_string()))?;
    }
    for r in &reports {
        write_report(r, common.format, out).map_err(|e| usage(e.to_string()))?;
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    eprintln!(
        "{passed}/{} passed at order {} in {:.2} s",
        reports.len(),
        common.order,
        start.elapsed().as_secs_f64()
    );
    Ok(passed == reports.len())
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

fn table(kind: TableKind, n_max: u64, k: u32) -> Result<Table, Failure> {
    let order = n_max as i64;
    check_order(order)?;
    let ctx = SeriesContext::rational();
    let coeff = |s: &PiSeries, n: u64| -> BigInt { generators::integer_coefficient(s, n as i64).expect("integer series") };
    let t = match kind {
        TableKind::Representations => {
            let counts = generators::representation_counts(order);
            Table {
                columns: vec!["n", "r"],
                rows: (1..=n_max).map(|n| vec![n.to_string(), counts[n as usize].to_string()]).collect(),
            }
        }
        TableKind::Divisor => Table {
            columns: vec!["n", "sigma"],
            rows: (1..=n_max)
                .map(|n| vec![n.to_string(), generators::sigma_n(k, n).to_string()])
                .collect(),
        },
        TableKind::Apow => {
            if !(1..=6).contains(&k) {
                return Err(usage(format!("apow needs 1 <= k <= 6, got {k}")));
            }
            let a = generators::a_lattice(order, &ctx).map_err(|e| usage(e.to_string()))?;
            let conv = a.pow(k).map_err(|e| usage(e.to_string()))?;
            let closed = generators::a_power_closed_form(k, order, &ctx).map_err(|e| usage(e.to_string()))?;
            Table {
                columns: vec!["n", "convolution", "closed_form", "match"],
                rows: (1..=n_max)
                    .map(|n| {
                        let (x, y) = (coeff(&conv, n), coeff(&closed, n));
                        let m = x == y;
                        vec![n.to_string(), x.to_string(), y.to_string(), m.to_string()]
                    })
                    .collect(),
            }
        }
    };
    Ok(t)
}

fn write_table(t: &Table, format: Format, out: &mut impl Write) -> io::Result<()> {
    match format {
        Format::Plain => t.rows.iter().try_for_each(|r| writeln!(out, "{}", r.join("\t"))),
        Format::Csv => {
            writeln!(out, "{}", t.columns.join(","))?;
            t.rows.iter().try_for_each(|r| writeln!(out, "{}", r.join(",")))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = t
                .rows
                .iter()
                .map(|r| {
                    let obj = t.columns.iter().zip(r).map(|(&c, v)| {
                        let value = if c == "match" { json!(v == "true") } else { json!(v) };
                        (c.to_string(), value)
                    });
                    serde_json::Value::Object(obj.collect())
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&rows).expect("serializable"))
        }
    }
}

fn list(category: Option<Category>, format: Format, out: &mut impl Write) -> io::Result<()> {
    let records: Vec<_> = registry()
        .into_iter()
        .filter(|r| category.is_none_or(|c| r.category == c))
        .collect();
    match format {
        Format::Plain => records
            .iter()
            .try_for_each(|r| writeln!(out, "{:<18} {:<14} {}", r.id, r.category.name(), r.description)),
        Format::Csv => {
            writeln!(out, "id,category,expected_grade")?;
            records.iter().try_for_each(|r| {
                let g = r.expected_grade.map_or(String::new(), |g| g.to_string());
                writeln!(out, "{},{},{}", r.id, r.category, g)
            })
        }
        Format::Json => {
            let v: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "id": r.id,
                        "category": r.category,
                        "expected_grade": r.expected_grade,
                        "description": r.description,
                        "anchor": r.anchor,
                    })
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&v).expect("serializable"))
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let io_err = |e: io::Error| usage(e.to_string());
    let ok = match cli.command {
        Command::Expand { name, common } => expand(&name, &common, &mut out).map(|_| true)?,
        Command::Verify {
            id,
            all,
            category,
            jobs,
            common,
        } => verify(&id, all, category, jobs, &common, &mut out)?,
        Command::Table { kind, n_max, k, format } => {
            write_table(&table(kind, n_max, k)?, format, &mut out).map_err(io_err)?;
            true
        }
        Command::List { category, format } => {
            list(category, format, &mut out).map_err(io_err)?;
            true
        }
    };
    out.flush().map_err(io_err)?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
