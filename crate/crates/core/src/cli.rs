//! Command-line front end. [`run`] parses arguments, writes results to `out` and
//! progress or errors to `err`, and returns the process exit code:
//! 0 on success, 1 on a usage error, 2 when a verification finds a counterexample.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::asymptotic::{
    beta_series_extraction, discrepancy_report, estimate_closed_form,
    fit_beta_default, ratio_sweep, solve_saddle, BetaCoefficients, BetaSource, RatioRow,
};
use crate::cyclecount::{
    cycle_index_poly, restricted_counts, statistic_lookup, toeplitz_determinant,
};
use crate::error::Error;
use crate::exactnum::{nu_rat, ExactInt, Partition};
use crate::involution::{hermite_relation_check, involution_poly, involution_table};
use crate::oracle::{census, enumerate_census, partition_census};
use crate::partialsum::{
    b_k, cauchy_alternating_expected, cauchy_alternating_sum, cauchy_even_identity_check, f_sum,
    partial_sum_table,
};
use crate::valuation::{
    build_valuation_tree, conjecture_check, efficient_primes_upto, inefficient_primes_upto,
    multinomial_congruence_check, nu2_involution, nu2_partial_sum, nu3_partial_sum_report,
    periodicity_counterexample,
};
use crate::verify::{find_suite, suites};

/// Environment variable read for the default worker thread count.
pub const THREADS_ENV: &str = "INVOLUTIONS_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
    Bfile,
}

#[derive(Debug, Parser)]
#[command(
    name = "involutions",
    version,
    about = "Exact counts, valuations and asymptotics for involutions and permutations with bounded cycles"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Plain, global = true)]
    format: Format,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, env = THREADS_ENV, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Involution numbers I(n), involution polynomials and the Hermite relation.
    Invol(InvolArgs),
    /// Partial sums a(n) = I(0) + ... + I(n) and their identities.
    Sums(SumsArgs),
    /// Permutations with cycles of length at most l: counts, cycle index, determinant.
    Restricted(RestrictedArgs),
    /// p-adic valuations, prime efficiency, valuation trees and congruences.
    #[command(subcommand)]
    Valuation(ValuationCommand),
    /// Saddle-point asymptotics for d(n, l).
    #[command(subcommand)]
    Asym(AsymCommand),
    /// Brute-force cycle-type census of the symmetric group.
    Oracle(OracleArgs),
    /// Run named invariant suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct Range {
    /// A single index.
    #[arg(long, conflicts_with = "max")]
    n: Option<u64>,
    /// Every index from 0 to this bound.
    #[arg(long)]
    max: Option<u64>,
}

impl Range {
    fn resolve(&self) -> Result<(u64, u64, bool), String> {
        match (self.n, self.max) {
            (Some(n), None) => Ok((n, n, true)),
            (None, Some(m)) => Ok((0, m, false)),
            _ => Err("give either --n or --max".into()),
        }
    }
}

#[derive(Debug, Args)]
struct InvolArgs {
    #[command(flatten)]
    range: Range,
    /// Print the involution polynomial I(n; t) instead of I(n).
    #[arg(long)]
    poly: bool,
    /// Check I(n; t) against the Hermite polynomials for every index in range.
    #[arg(long)]
    hermite: bool,
}

#[derive(Debug, Args)]
struct SumsArgs {
    #[command(flatten)]
    range: Range,
    /// Check the alternating binomial identities for every index in range.
    #[arg(long)]
    cauchy: bool,
    /// Print b(k) and its 2-adic valuation.
    #[arg(long, value_name = "K")]
    b_k: Option<u64>,
    /// Print F(alpha, beta, k).
    #[arg(long, num_args = 3, value_names = ["ALPHA", "BETA", "K"], allow_negative_numbers = true)]
    f_sum: Option<Vec<i64>>,
}

#[derive(Debug, Args)]
struct RestrictedArgs {
    #[command(flatten)]
    range: Range,
    /// Longest allowed cycle.
    #[arg(long)]
    l: usize,
    /// Print the cycle-index polynomial.
    #[arg(long)]
    cycle_index: bool,
    /// Print the determinant representation and check it against the cycle index.
    #[arg(long)]
    determinant: bool,
    /// Count the permutations of one cycle type, e.g. 3+2.
    #[arg(long, value_name = "TYPE")]
    lookup: Option<Partition>,
}

#[derive(Debug, Subcommand)]
enum ValuationCommand {
    /// Closed forms for nu_2 of I(n) or a(n), checked against exact values.
    Nu2 {
        #[arg(long)]
        max: u64,
        /// Use the partial sums a(n) instead of I(n).
        #[arg(long)]
        partial: bool,
    },
    /// Classify odd primes up to a bound as efficient or inefficient.
    Efficiency {
        #[arg(long, default_value_t = 541)]
        max: u64,
    },
    /// Build the valuation tree of a prime.
    Tree {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 4)]
        depth: u32,
        /// Members of each terminal class to recheck exactly.
        #[arg(long, default_value_t = 5)]
        certify: u32,
    },
    /// Report per-level vertex counts of the valuation tree.
    Conjecture {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 5)]
        depth: u32,
    },
    /// Compare the rules for nu_3(a(n)) with exact values.
    Nu3 {
        #[arg(long, default_value_t = 1000)]
        max: u64,
    },
    /// Check C(pn; p lambda) = C(n; lambda) mod p^2 (p^3 for p >= 5) over all partitions.
    Congruence {
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 6)]
        max: u64,
    },
    /// Check I(n + p^r) = I(n) mod p^r.
    Periodicity {
        #[arg(long)]
        prime: u64,
        /// The exponent r.
        #[arg(long, default_value_t = 1)]
        depth: u32,
        #[arg(long, default_value_t = 500)]
        max: u64,
    },
}

#[derive(Debug, Subcommand)]
enum AsymCommand {
    /// Solve r + r^2 + ... + r^l = n.
    Saddle {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Saddle-point and closed-form estimates of d(n, l) against the exact value.
    Estimate {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        l: usize,
    },
    /// Coefficients beta_0..beta_l from the product formula and from series extraction.
    Beta {
        #[arg(long)]
        l: usize,
        /// Series order for extraction.
        #[arg(long)]
        depth: Option<usize>,
        /// Also fit beta_0 and beta_l numerically.
        #[arg(long)]
        fit: bool,
    },
    /// Exact-versus-estimate ratios for n = step, 2 step, ..., max.
    Sweep {
        #[arg(long)]
        l: usize,
        #[arg(long)]
        max: u64,
        #[arg(long, default_value_t = 100)]
        step: u64,
    },
    /// Discrepancy report between the two coefficient sources.
    Report {
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 500)]
        n: u64,
    },
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: u64,
    /// Use exhaustive enumeration only (n <= 9).
    #[arg(long, conflicts_with = "formula")]
    enumerate: bool,
    /// Use the class-size formula only (n <= 60).
    #[arg(long)]
    formula: bool,
    /// Print aggregates for cycles of length at most l instead of the census.
    #[arg(long)]
    l: Option<usize>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// Suite to run; may be repeated.
    #[arg(long)]
    suite: Vec<String>,
    /// List suite names.
    #[arg(long)]
    list: bool,
    /// Run every suite.
    #[arg(long)]
    all: bool,
    /// Override each suite's size bound.
    #[arg(long)]
    max: Option<u64>,
}

/// A failure to report: usage (exit 1) or a counterexample (exit 2).
enum Failure {
    Usage(String),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn usage<T>(msg: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(msg.into()))
}

fn unsupported<T>(fmt: Format) -> Result<T, Failure> {
    usage(format!("format {fmt:?} is not available for this command").to_lowercase())
}

fn emit_json(out: &mut dyn Write, v: &serde_json::Value) -> CmdResult {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json"))?;
    Ok(())
}

/// Prints `values[i]` as the term of index `start + i`.
fn emit_sequence(
    out: &mut dyn Write,
    fmt: Format,
    name: &str,
    start: u64,
    values: &[ExactInt],
    single: bool,
) -> CmdResult {
    match fmt {
        Format::Plain if single => writeln!(out, "{}", values[0])?,
        Format::Plain => {
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{}: {v}", start + i as u64)?;
            }
        }
        Format::Bfile => {
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{} {v}", start + i as u64)?;
            }
        }
        Format::Csv => {
            writeln!(out, "n,{name}")?;
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{},{v}", start + i as u64)?;
            }
        }
        Format::Json => {
            let vals: Vec<_> = values.iter().map(crate::big_to_json).collect();
            emit_json(
                out,
                &json!({ "schema": "involutions.sequence/1", "name": name, "offset": start, "values": vals }),
            )?
        }
    }
    Ok(())
}

fn cmd_invol(a: &InvolArgs, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let (lo, hi, single) = a.range.resolve().or_else(usage)?;
    if a.hermite {
        if let Some(n) = (lo..=hi).find(|&n| !hermite_relation_check(n)) {
            return Err(Failure::Counterexample(format!("Hermite relation fails at n = {n}")));
        }
        match fmt {
            Format::Json => emit_json(
                out,
                &json!({ "schema": "involutions.check/1", "check": "hermite", "from": lo, "to": hi, "passed": true }),
            )?,
            Format::Plain => writeln!(out, "Hermite relation holds for n = {lo}..={hi}")?,
            f => return unsupported(f),
        }
        return Ok(());
    }
    if a.poly {
        match fmt {
            Format::Plain => {
                for n in lo..=hi {
                    if single {
                        writeln!(out, "{}", involution_poly(n))?;
                    } else {
                        writeln!(out, "{n}: {}", involution_poly(n))?;
                    }
                }
            }
            Format::Json => {
                let polys: Vec<_> = (lo..=hi)
                    .map(|n| json!({ "n": n, "coefficients": involution_poly(n).to_json() }))
                    .collect();
                emit_json(out, &json!({ "schema": "involutions.polynomials/1", "polynomials": polys }))?
            }
            f => return unsupported(f),
        }
        return Ok(());
    }
    let values = involution_table().with_prefix(hi, |t| t[lo as usize..=hi as usize].to_vec());
    emit_sequence(out, fmt, "involutions", lo, &values, single)
}

fn cmd_sums(a: &SumsArgs, fmt: Format, out: &mut dyn Write) -> CmdResult {
    if let Some(k) = a.b_k {
        if k == 0 {
            return usage("b(k) needs k >= 1");
        }
        let b = b_k(k);
        let v = nu_rat(&b, 2)?;
        match fmt {
            Format::Plain => writeln!(out, "b({k}) = {b}\nnu_2 = {v}")?,
            Format::Json => emit_json(
                out,
                &json!({ "schema": "involutions.b-k/1", "k": k, "value": b.to_string(), "nu2": v }),
            )?,
            f => return unsupported(f),
        }
        return Ok(());
    }
    if let Some(f) = &a.f_sum {
        let (alpha, beta, k) = (f[0], f[1], f[2]);
        if beta < 0 || k < 1 {
            return usage("F(alpha, beta, k) needs beta >= 0 and k >= 1");
        }
        let v = f_sum(alpha, beta as u32, k as u64);
        match fmt {
            Format::Plain => writeln!(out, "{v}")?,
            Format::Json => emit_json(
                out,
                &json!({ "schema": "involutions.f-sum/1", "alpha": alpha, "beta": beta, "k": k, "value": crate::big_to_json(&v) }),
            )?,
            f => return unsupported(f),
        }
        return Ok(());
    }
    let (lo, hi, single) = a.range.resolve().or_else(usage)?;
    if a.cauchy {
        for n in lo.max(1)..=hi {
            let (got, want) = (cauchy_alternating_sum(n), cauchy_alternating_expected(n));
            if got != want {
                return Err(Failure::Counterexample(format!(
                    "alternating sum at n = {n} is {got}, expected {want}"
                )));
            }
        }
        for m in 1..=hi / 2 {
            if !cauchy_even_identity_check(m) {
                return Err(Failure::Counterexample(format!("even-index identity fails at m = {m}")));
            }
        }
        writeln!(out, "alternating identities hold for n = {}..={hi}", lo.max(1))?;
        return Ok(());
    }
    let values = partial_sum_table().with_prefix(hi, |t| t[lo as usize..=hi as usize].to_vec());
    emit_sequence(out, fmt, "partial_sums", lo, &values, single)
}

fn cmd_restricted(a: &RestrictedArgs, fmt: Format, out: &mut dyn Write) -> CmdResult {
    if a.l == 0 {
        return usage("--l must be at least 1");
    }
    let (lo, hi, single) = a.range.resolve().or_else(usage)?;
    if let Some(t) = &a.lookup {
        let v = statistic_lookup(hi, a.l, t)?;
        return emit_sequence(out, fmt, "class_size", hi, &[v], true);
    }
    if a.cycle_index || a.determinant {
        if !single {
            return usage("--cycle-index and --determinant take --n");
        }
        let g = cycle_index_poly(hi, a.l);
        let p = if a.determinant {
            let d = toeplitz_determinant(hi, a.l)?;
            if d != g {
                return Err(Failure::Counterexample(format!(
                    "determinant {d} differs from cycle index {g}"
                )));
            }
            d
        } else {
            g
        };
        match fmt {
            Format::Plain => writeln!(out, "{p}")?,
            Format::Json => emit_json(out, &p.to_json())?,
            Format::Csv => {
                let head: Vec<String> = (1..=a.l).map(|t| format!("e{t}")).collect();
                writeln!(out, "{},coefficient", head.join(","))?;
                for (e, c) in p.terms() {
                    let es: Vec<String> = e.iter().map(u32::to_string).collect();
                    writeln!(out, "{},{c}", es.join(","))?;
                }
            }
            f => return unsupported(f),
        }
        return Ok(());
    }
    let d = restricted_counts(hi, a.l);
    emit_sequence(out, fmt, "restricted", lo, &d[lo as usize..], single)
}

fn cmd_valuation(c: &ValuationCommand, fmt: Format, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match c {
        ValuationCommand::Nu2 { max, partial } => {
            let start = u64::from(*partial);
            let table: Vec<(u64, u64, u64)> = if *partial {
                partial_sum_table().with_prefix(*max, |t| {
                    (start..=*max)
                        .map(|n| (n, nu2_partial_sum(n), crate::exactnum::nu_int(&t[n as usize], 2).unwrap()))
                        .collect()
                })
            } else {
                involution_table().with_prefix(*max, |t| {
                    (0..=*max)
                        .map(|n| (n, nu2_involution(n), crate::exactnum::nu_int(&t[n as usize], 2).unwrap()))
                        .collect()
                })
            };
            if let Some((n, f, e)) = table.iter().find(|(_, f, e)| f != e) {
                return Err(Failure::Counterexample(format!(
                    "n = {n}: closed form {f}, exact {e}"
                )));
            }
            let vals: Vec<ExactInt> = table.iter().map(|&(_, f, _)| ExactInt::from(f)).collect();
            let name = if *partial { "nu2_partial_sum" } else { "nu2_involution" };
            emit_sequence(out, fmt, name, start, &vals, false)
        }
        ValuationCommand::Efficiency { max } => {
            let bad = inefficient_primes_upto(*max);
            let good = efficient_primes_upto(*max);
            match fmt {
                Format::Plain => {
                    writeln!(out, "inefficient ({}): {}", bad.len(), join(&bad))?;
                    writeln!(out, "efficient ({}): {}", good.len(), join(&good))?;
                }
                Format::Json => emit_json(
                    out,
                    &json!({ "schema": "involutions.efficiency/1", "bound": max, "inefficient": bad, "efficient": good }),
                )?,
                Format::Csv => {
                    writeln!(out, "prime,efficient")?;
                    let mut all: Vec<(u64, bool)> =
                        bad.iter().map(|&p| (p, false)).chain(good.iter().map(|&p| (p, true))).collect();
                    all.sort_unstable();
                    for (p, e) in all {
                        writeln!(out, "{p},{e}")?;
                    }
                }
                f => return unsupported(f),
            }
            Ok(())
        }
        ValuationCommand::Tree { prime, depth, certify } => {
            writeln!(err, "building valuation tree for p = {prime} to depth {depth}")?;
            let tree = build_valuation_tree(*prime, *depth, *certify)?;
            match fmt {
                Format::Plain => write!(out, "{tree}")?,
                Format::Json => emit_json(out, &tree.to_json())?,
                f => return unsupported(f),
            }
            Ok(())
        }
        ValuationCommand::Conjecture { prime, depth } => {
            writeln!(err, "checking tree shape for p = {prime} to depth {depth}")?;
            let report = conjecture_check(*prime, *depth)?;
            match fmt {
                Format::Plain => write!(out, "{}", report.to_table())?,
                Format::Json => emit_json(out, &report.to_json())?,
                f => return unsupported(f),
            }
            Ok(())
        }
        ValuationCommand::Nu3 { max } => {
            let r = nu3_partial_sum_report(*max);
            match fmt {
                Format::Plain => {
                    writeln!(out, "{r}")?;
                }
                Format::Json => {
                    let mut v = serde_json::to_value(&r).expect("report serializes");
                    v["schema"] = "involutions.nu3-report/1".into();
                    emit_json(out, &v)?
                }
                f => return unsupported(f),
            }
            Ok(())
        }
        ValuationCommand::Congruence { prime, max } => {
            let mut checked = 0u64;
            for n in 1..=*max {
                for lambda in crate::exactnum::partitions(n) {
                    checked += 1;
                    if !multinomial_congruence_check(*prime, n, &lambda)? {
                        return Err(Failure::Counterexample(format!(
                            "p = {prime}, n = {n}, lambda = {lambda}"
                        )));
                    }
                }
            }
            writeln!(out, "congruence holds for p = {prime}, all {checked} partitions of n <= {max}")?;
            Ok(())
        }
        ValuationCommand::Periodicity { prime, depth, max } => {
            if let Some(n) = periodicity_counterexample(*prime, *depth, *max)? {
                return Err(Failure::Counterexample(format!(
                    "I({n} + {prime}^{depth}) != I({n}) mod {prime}^{depth}"
                )));
            }
            writeln!(out, "I(n + {prime}^{depth}) = I(n) mod {prime}^{depth} for n <= {max}")?;
            Ok(())
        }
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn emit_rows(out: &mut dyn Write, fmt: Format, rows: &[RatioRow]) -> CmdResult {
    match fmt {
        Format::Csv => {
            writeln!(out, "{}", RatioRow::CSV_HEADER)?;
            for r in rows {
                writeln!(out, "{}", r.csv_line())?;
            }
        }
        Format::Plain => {
            for r in rows {
                writeln!(
                    out,
                    "n = {}, l = {}: ratio {:.6}, log error {:.3e}",
                    r.n, r.l, r.ratio, r.log_error
                )?;
            }
        }
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({ "n": r.n, "l": r.l, "exact": crate::big_to_json(&r.exact),
                            "ln_exact": r.ln_exact, "ln_estimate": r.ln_estimate,
                            "ratio": r.ratio, "log_error": r.log_error })
                })
                .collect();
            emit_json(out, &json!({ "schema": "involutions.ratio-sweep/1", "rows": v }))?
        }
        f => return unsupported(f),
    }
    Ok(())
}

fn cmd_asym(c: &AsymCommand, fmt: Format, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match c {
        AsymCommand::Saddle { n, l, tol } => {
            let s = solve_saddle(*n, *l, *tol)?;
            match fmt {
                Format::Plain => writeln!(
                    out,
                    "r = {:.17} (residual {:.3e}, {} iterations)",
                    s.r(),
                    s.residual,
                    s.iterations
                )?,
                Format::Json => emit_json(
                    out,
                    &json!({ "schema": "involutions.saddle/1", "n": n, "l": l, "r_plus": s.r(),
                             "r_plus_lo": s.r_plus.lo(), "residual": s.residual,
                             "iterations": s.iterations, "bisected": s.bisected }),
                )?,
                f => return unsupported(f),
            }
            Ok(())
        }
        AsymCommand::Estimate { n, l } => {
            let rows = ratio_sweep(&[*n], *l)?;
            let r = &rows[0];
            let printed = estimate_closed_form(*n, *l, BetaSource::Printed)?;
            let extracted = estimate_closed_form(*n, *l, BetaSource::Extracted)?;
            match fmt {
                Format::Plain => {
                    writeln!(out, "ln exact            {:.9}", r.ln_exact)?;
                    writeln!(out, "ln saddle estimate  {:.9}  (ratio {:.6})", r.ln_estimate, r.ratio)?;
                    writeln!(
                        out,
                        "ln closed form      {:.9}  (ratio {:.6}, extracted coefficients)",
                        extracted.ln_stirling,
                        (r.ln_exact - extracted.ln_stirling).exp()
                    )?;
                    writeln!(
                        out,
                        "ln as printed       {:.9}  (ln ratio {:.6e}, product-formula coefficients)",
                        printed.ln_as_printed,
                        r.ln_exact - printed.ln_as_printed
                    )?;
                }
                Format::Json => emit_json(
                    out,
                    &json!({ "schema": "involutions.estimate/1", "n": n, "l": l,
                             "exact": crate::big_to_json(&r.exact), "ln_exact": r.ln_exact,
                             "ln_saddle": r.ln_estimate, "saddle_ratio": r.ratio,
                             "ln_closed_form": extracted.ln_stirling,
                             "ln_as_printed": printed.ln_as_printed,
                             "ln_as_printed_extracted": extracted.ln_as_printed,
                             "ln_closed_form_printed": printed.ln_stirling }),
                )?,
                Format::Csv => emit_rows(out, fmt, &rows)?,
                f => return unsupported(f),
            }
            Ok(())
        }
        AsymCommand::Beta { l, depth, fit } => {
            if *l == 0 {
                return usage("--l must be at least 1");
            }
            let betas = BetaCoefficients::new(*l)?;
            let extracted: Vec<String> = (0..=*l)
                .map(|k| match depth {
                    Some(d) if k > 0 && k < *l => beta_series_extraction(*l, k, *d).map(|b| b.to_string()),
                    _ => Ok(betas.extracted[k].to_string()),
                })
                .collect::<Result<_, _>>()?;
            let fitted = if *fit {
                writeln!(err, "fitting over n = 10^4..10^6")?;
                Some(fit_beta_default(*l)?)
            } else {
                None
            };
            match fmt {
                Format::Plain => {
                    writeln!(out, "k\tprinted\textracted")?;
                    for (k, (p, e)) in betas.printed.iter().zip(&extracted).enumerate() {
                        writeln!(out, "{k}\t{p}\t{e}")?;
                    }
                    if let Some(f) = &fitted {
                        writeln!(out, "fit: beta_0 = {:.6}, beta_{l} = {:.9}", f.beta(0), f.beta(*l))?;
                    }
                }
                Format::Json => {
                    let printed: Vec<String> = betas.printed.iter().map(|b| b.to_string()).collect();
                    let mut v = json!({ "schema": "involutions.beta/1", "l": l,
                                        "printed": printed, "extracted": extracted });
                    if let Some(f) = &fitted {
                        v["fit"] = json!({ "beta_0": f.beta(0), "beta_l": f.beta(*l), "samples": f.samples });
                    }
                    emit_json(out, &v)?
                }
                f => return unsupported(f),
            }
            Ok(())
        }
        AsymCommand::Sweep { l, max, step } => {
            if *step == 0 || *l == 0 {
                return usage("--step and --l must be positive");
            }
            let ns: Vec<u64> = (1..=max / step).map(|i| i * step).collect();
            writeln!(err, "sweeping {} values of n for l = {l}", ns.len())?;
            let rows = ratio_sweep(&ns, *l)?;
            let fmt = if fmt == Format::Plain { Format::Csv } else { fmt };
            emit_rows(out, fmt, &rows)
        }
        AsymCommand::Report { l, n } => {
            if fmt != Format::Plain {
                return unsupported(fmt);
            }
            write!(out, "{}", discrepancy_report(*l, *n)?)?;
            Ok(())
        }
    }
}

fn cmd_oracle(a: &OracleArgs, fmt: Format, out: &mut dyn Write) -> CmdResult {
    let c = if a.enumerate {
        enumerate_census(a.n)?
    } else if a.formula {
        partition_census(a.n)?
    } else {
        census(a.n)?
    };
    if let Some(l) = a.l {
        let (inv, d, fp) = (c.involution_count(), c.restricted_count(l), c.fixed_point_poly());
        match fmt {
            Format::Plain => {
                writeln!(out, "involutions {inv}")?;
                writeln!(out, "cycles at most {l}: {d}")?;
                writeln!(out, "fixed-point polynomial {fp}")?;
            }
            Format::Json => emit_json(
                out,
                &json!({ "schema": "involutions.census-aggregate/1", "n": a.n, "l": l,
                         "involutions": crate::big_to_json(&inv), "restricted": crate::big_to_json(&d),
                         "fixed_point_poly": fp.to_json() }),
            )?,
            f => return unsupported(f),
        }
        return Ok(());
    }
    match fmt {
        Format::Plain => {
            for (t, v) in c.iter() {
                writeln!(out, "{t} {v}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "cycle_type,count")?;
            for (t, v) in c.iter() {
                writeln!(out, "{t},{v}")?;
            }
        }
        Format::Json => emit_json(out, &c.to_json())?,
        f => return unsupported(f),
    }
    Ok(())
}

fn cmd_verify(a: &VerifyArgs, fmt: Format, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if a.list {
        match fmt {
            Format::Json => {
                let v: Vec<_> = suites()
                    .iter()
                    .map(|s| json!({ "name": s.name, "default_max": s.default_max, "description": s.description }))
                    .collect();
                emit_json(out, &json!({ "schema": "involutions.suites/1", "suites": v }))?
            }
            _ => {
                for s in suites() {
                    writeln!(out, "{:<24} {:>8}  {}", s.name, s.default_max, s.description)?;
                }
            }
        }
        return Ok(());
    }
    let chosen: Vec<_> = if a.all {
        suites().iter().collect()
    } else if a.suite.is_empty() {
        return usage("give --suite NAME, --all or --list");
    } else {
        a.suite
            .iter()
            .map(|name| find_suite(name).ok_or_else(|| Failure::Usage(format!("unknown suite '{name}'; see --list"))))
            .collect::<Result<_, _>>()?
    };
    let mut verdicts = Vec::new();
    for s in chosen {
        writeln!(err, "running {}", s.name)?;
        let v = s.run(a.max);
        if fmt == Format::Plain {
            writeln!(out, "{v}")?;
        }
        verdicts.push(v);
    }
    if fmt == Format::Json {
        let v: Vec<_> = verdicts.iter().map(|v| v.to_json()).collect();
        emit_json(out, &json!({ "schema": "involutions.verify-run/1", "results": v }))?;
    }
    match verdicts.iter().find(|v| !v.passed()) {
        Some(v) => Err(Failure::Counterexample(format!(
            "{}: {}",
            v.suite,
            v.counterexample.as_deref().unwrap_or_default()
        ))),
        None => Ok(()),
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Invol(a) => cmd_invol(a, fmt, out),
        Command::Sums(a) => cmd_sums(a, fmt, out),
        Command::Restricted(a) => cmd_restricted(a, fmt, out),
        Command::Valuation(c) => cmd_valuation(c, fmt, out, err),
        Command::Asym(c) => cmd_asym(c, fmt, out, err),
        Command::Oracle(a) => cmd_oracle(a, fmt, out),
        Command::Verify(a) => cmd_verify(a, fmt, out, err),
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            return code;
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            let _ = writeln!(err, "error: --threads must be positive");
            return 1;
        }
        // a pool may already exist when run is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match dispatch(&cli, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Counterexample(m)) => {
            let _ = writeln!(out, "counterexample: {m}");
            let _ = writeln!(err, "verification failed");
            2
        }
    }
}
