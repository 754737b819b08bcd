use std::io::Write;
use std::time::Instant;

use runprob::distribution::{pmf_of_longest_run, pmf_of_longest_run_f64};
use runprob::model::corollary_in_domain;
use runprob::oracle::{self, McConfig};
use runprob::runprob::float;
use runprob::{
    crosscheck, crosscheck_float, y_corollary, y_recurrence, y_uspensky, CrosscheckOptions, ExactSpec, FloatSpec,
    Method, RunQuery,
};
use serde::Serialize;

use crate::args::{
    BenchArgs, Cli, CrosscheckArgs, Format, McArgs, Mode, PmfArgs, ProbArg, ProbArgs, TableArgs,
};
use crate::error::CliError;
use crate::output::{csv_writer, decimal_f64, write_records, OutputRecord, Value};

/// Exact values are only attached to Monte Carlo output up to this many trials.
const MC_EXACT_LIMIT: u64 = 100_000;

pub struct Context {
    pub mode: Mode,
    pub format: Format,
    pub digits: u16,
    pub no_timing: bool,
}

impl Context {
    pub fn from_cli(cli: &Cli) -> Self {
        Self { mode: cli.mode, format: cli.format, digits: cli.digits, no_timing: cli.no_timing }
    }

    fn elapsed(&self, ns: u64) -> u64 {
        if self.no_timing {
            0
        } else {
            ns
        }
    }

    fn record(&self, n: u64, r: u64, p: &ProbArg, method: &str, value: &Value, ns: u64) -> OutputRecord {
        OutputRecord {
            n,
            r,
            p: p.text.clone(),
            method: method.to_string(),
            value_exact: value.exact_text(),
            value_decimal: value.decimal(self.digits),
            elapsed_ns: self.elapsed(ns),
        }
    }
}

fn evaluate(mode: Mode, n: u64, r: u64, p: &ProbArg, method: Method, brute_cap: u64) -> Result<(Value, u64), CliError> {
    let start = Instant::now();
    let value = match mode {
        Mode::Exact => {
            let spec = ExactSpec::new(n, p.exact.clone())?;
            Value::Exact(match method {
                Method::BruteForce => oracle::brute_force_y_with_cap(&spec, r, brute_cap)?,
                _ => runprob::evaluate(&RunQuery::new(spec, r, method)?)?,
            })
        }
        Mode::Float => {
            let spec = FloatSpec::new(n, p.as_f64())?;
            Value::Float(match method {
                Method::Recurrence => float::y_recurrence(&spec, r),
                Method::Uspensky => float::y_uspensky(&spec, r),
                Method::Corollary => float::y_corollary(&spec, r)?,
                Method::BruteForce => oracle::brute_force_y_f64(&spec, r, brute_cap)?,
                Method::Auto => float::y_auto(&spec, r),
            })
        }
    };
    Ok((value, start.elapsed().as_nanos() as u64))
}

pub fn prob(ctx: &Context, args: &ProbArgs, out: &mut impl Write) -> Result<(), CliError> {
    let q = &args.query;
    let (value, ns) = evaluate(ctx.mode, q.n, q.r, &q.p, args.method, args.brute_cap)?;
    let rec = ctx.record(q.n, q.r, &q.p, args.method.name(), &value, ns);
    write_records(out, ctx.format, &[rec], true)
}

pub fn crosscheck_cmd(ctx: &Context, args: &CrosscheckArgs, out: &mut impl Write) -> Result<(), CliError> {
    let q = &args.query;
    let opts = CrosscheckOptions { brute_force_cap: args.brute_cap, float_tolerance: args.tolerance };
    if args.brute_cap > oracle::MAX_BRUTE_FORCE_CAP {
        return Err(CliError::Usage(format!("--brute-cap may not exceed {}", oracle::MAX_BRUTE_FORCE_CAP)));
    }
    let (records, agree, max_discrepancy) = match ctx.mode {
        Mode::Exact => {
            let query = RunQuery::new(ExactSpec::new(q.n, q.p.exact.clone())?, q.r, Method::Auto)?;
            let report = crosscheck(&query, &opts);
            let records = report
                .values
                .iter()
                .map(|(m, v)| ctx.record(q.n, q.r, &q.p, m.name(), &Value::Exact(v.clone()), report.timings[m]))
                .collect::<Vec<_>>();
            (records, report.agree, report.max_discrepancy)
        }
        Mode::Float => {
            let query = RunQuery::new(FloatSpec::new(q.n, q.p.as_f64())?, q.r, Method::Auto)?;
            let report = crosscheck_float(&query, &opts);
            let records = report
                .values
                .iter()
                .map(|(m, v)| ctx.record(q.n, q.r, &q.p, m.name(), &Value::Float(*v), report.timings[m]))
                .collect::<Vec<_>>();
            (records, report.agree, report.max_discrepancy)
        }
    };
    match ctx.format {
        Format::Plain => {
            writeln!(out, "crosscheck n={} r={} p={} mode={}", q.n, q.r, q.p.text, mode_name(ctx.mode))?;
            write_records(out, Format::Plain, &records, false)?;
            writeln!(out, "agree={agree} max_discrepancy={max_discrepancy:e}")?;
        }
        Format::Csv => write_records(out, Format::Csv, &records, false)?,
        Format::Json => {
            let doc = CrosscheckDoc {
                n: q.n,
                r: q.r,
                p: &q.p.text,
                mode: mode_name(ctx.mode),
                agree,
                max_discrepancy,
                values: &records,
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    if agree {
        Ok(())
    } else {
        Err(CliError::Disagreement)
    }
}

#[derive(Serialize)]
struct CrosscheckDoc<'a> {
    n: u64,
    r: u64,
    p: &'a str,
    mode: &'static str,
    agree: bool,
    max_discrepancy: f64,
    values: &'a [OutputRecord],
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Float => "float",
    }
}

pub fn table(ctx: &Context, args: &TableArgs, out: &mut impl Write) -> Result<(), CliError> {
    if args.n_range.is_empty() {
        return Err(CliError::Usage(format!("empty --n-range {:?}", args.n_range)));
    }
    if let Some(r_range) = &args.r_range {
        if r_range.is_empty() {
            return Err(CliError::Usage(format!("empty --r-range {r_range:?}")));
        }
        if *r_range.start() == 0 {
            return Err(CliError::Usage("--r-range must start at 1 or above".into()));
        }
    }
    let mut records = Vec::new();
    for n in args.n_range.clone() {
        let rs = match &args.r_range {
            Some(range) => range.clone(),
            None => 1..=n,
        };
        for r in rs {
            let (value, ns) = evaluate(ctx.mode, n, r, &args.p, args.method, args.brute_cap)?;
            records.push(ctx.record(n, r, &args.p, args.method.name(), &value, ns));
        }
    }
    if records.is_empty() {
        return Err(CliError::Usage("the requested ranges contain no (n, r) pairs".into()));
    }
    write_records(out, ctx.format, &records, false)
}

#[derive(Serialize)]
struct MassRow {
    k: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value_exact: Option<String>,
    value_decimal: String,
}

#[derive(Serialize)]
struct ValueDoc {
    #[serde(skip_serializing_if = "Option::is_none")]
    value_exact: Option<String>,
    value_decimal: String,
}

#[derive(Serialize)]
struct PmfDoc<'a> {
    n: u64,
    p: &'a str,
    mode: &'static str,
    pmf: &'a [MassRow],
    #[serde(skip_serializing_if = "Option::is_none")]
    expectation: Option<ValueDoc>,
}

pub fn pmf(ctx: &Context, args: &PmfArgs, out: &mut impl Write) -> Result<(), CliError> {
    let (masses, expectation): (Vec<Value>, Value) = match ctx.mode {
        Mode::Exact => {
            let dist = pmf_of_longest_run(&ExactSpec::new(args.n, args.p.exact.clone())?);
            let e = dist.expectation();
            (dist.pmf().iter().cloned().map(Value::Exact).collect(), Value::Exact(e))
        }
        Mode::Float => {
            let masses = pmf_of_longest_run_f64(&FloatSpec::new(args.n, args.p.as_f64())?);
            let e = masses.iter().enumerate().map(|(k, m)| k as f64 * m).sum();
            (masses.into_iter().map(Value::Float).collect(), Value::Float(e))
        }
    };
    let rows: Vec<MassRow> = masses
        .iter()
        .enumerate()
        .map(|(k, v)| MassRow { k: k as u64, value_exact: v.exact_text(), value_decimal: v.decimal(ctx.digits) })
        .collect();
    let expectation = args.expectation.then_some(expectation);
    match ctx.format {
        Format::Plain => {
            for row in &rows {
                match &row.value_exact {
                    Some(exact) => writeln!(out, "k={} {} {}", row.k, exact, row.value_decimal)?,
                    None => writeln!(out, "k={} {}", row.k, row.value_decimal)?,
                }
            }
            if let Some(e) = &expectation {
                match e.exact_text() {
                    Some(exact) => writeln!(out, "expectation {} {}", exact, e.decimal(ctx.digits))?,
                    None => writeln!(out, "expectation {}", e.decimal(ctx.digits))?,
                }
            }
        }
        Format::Csv => {
            let mut w = csv_writer(&mut *out);
            w.write_record(["k", "value_exact", "value_decimal"])?;
            for row in &rows {
                w.write_record([row.k.to_string(), row.value_exact.clone().unwrap_or_default(), row.value_decimal.clone()])?;
            }
            if let Some(e) = &expectation {
                w.write_record(["expectation".to_string(), e.exact_text().unwrap_or_default(), e.decimal(ctx.digits)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let doc = PmfDoc {
                n: args.n,
                p: &args.p.text,
                mode: mode_name(ctx.mode),
                pmf: &rows,
                expectation: expectation.as_ref().map(|e| ValueDoc {
                    value_exact: e.exact_text(),
                    value_decimal: e.decimal(ctx.digits),
                }),
            };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct McRecord {
    n: u64,
    r: u64,
    p: String,
    samples: u64,
    seed: u64,
    chunk_size: u64,
    estimate: f64,
    std_error: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation_se: Option<f64>,
}

pub fn mc(ctx: &Context, args: &McArgs, out: &mut impl Write) -> Result<(), CliError> {
    let q = &args.query;
    let cfg = McConfig::with_chunk_size(args.samples, args.seed, args.chunk_size)?;
    let spec = FloatSpec::new(q.n, q.p.as_f64())?;
    let est = match args.workers {
        Some(w) => oracle::monte_carlo_y_with_workers(&spec, q.r, &cfg, w as usize)?,
        None => oracle::monte_carlo_y(&spec, q.r, &cfg),
    };
    let exact = (q.n <= MC_EXACT_LIMIT).then(|| y_recurrence(&ExactSpec::new(q.n, q.p.exact.clone()).expect("validated"), q.r));
    let deviation_se = exact.as_ref().map(|x| {
        let dev = (est.estimate - x.to_f64()).abs();
        if dev == 0.0 {
            0.0
        } else {
            dev / est.std_error
        }
    });
    let rec = McRecord {
        n: q.n,
        r: q.r,
        p: q.p.text.clone(),
        samples: est.samples,
        seed: args.seed,
        chunk_size: args.chunk_size,
        estimate: est.estimate,
        std_error: est.std_error,
        exact: exact.as_ref().map(|x| x.to_string()),
        deviation_se,
    };
    match ctx.format {
        Format::Plain => {
            writeln!(out, "n={} r={} p={} samples={} seed={}", rec.n, rec.r, rec.p, rec.samples, rec.seed)?;
            writeln!(out, "estimate={} std_error={}", decimal_f64(rec.estimate, ctx.digits), decimal_f64(rec.std_error, ctx.digits))?;
            if let (Some(x), Some(d)) = (&exact, deviation_se) {
                writeln!(out, "exact={} ({}) deviation={:.3} std errors", x, x.to_decimal(ctx.digits as usize), d)?;
            }
        }
        Format::Csv => {
            let mut w = csv_writer(&mut *out);
            w.write_record(["n", "r", "p", "samples", "seed", "chunk_size", "estimate", "std_error", "exact", "deviation_se"])?;
            w.write_record([
                rec.n.to_string(),
                rec.r.to_string(),
                rec.p.clone(),
                rec.samples.to_string(),
                rec.seed.to_string(),
                rec.chunk_size.to_string(),
                rec.estimate.to_string(),
                rec.std_error.to_string(),
                rec.exact.clone().unwrap_or_default(),
                rec.deviation_se.map(|d| d.to_string()).unwrap_or_default(),
            ])?;
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, &rec)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

const DEFAULT_BENCH_METHODS: [Method; 3] = [Method::Recurrence, Method::Uspensky, Method::Corollary];

fn bench_value(mode: Mode, spec: &ExactSpec, fspec: &FloatSpec, r: u64, method: Method) -> Result<Value, CliError> {
    Ok(match (mode, method) {
        (Mode::Exact, Method::Recurrence) => Value::Exact(y_recurrence(spec, r)),
        (Mode::Exact, Method::Uspensky) => Value::Exact(y_uspensky(spec, r)),
        (Mode::Exact, Method::Corollary) => Value::Exact(y_corollary(spec, r)?),
        (Mode::Exact, m) => Value::Exact(runprob::evaluate(&RunQuery::new(spec.clone(), r, m)?)?),
        (Mode::Float, Method::Recurrence) => Value::Float(float::y_recurrence(fspec, r)),
        (Mode::Float, Method::Uspensky) => Value::Float(float::y_uspensky(fspec, r)),
        (Mode::Float, Method::Corollary) => Value::Float(float::y_corollary(fspec, r)?),
        (Mode::Float, Method::BruteForce) => {
            Value::Float(oracle::brute_force_y_f64(fspec, r, oracle::DEFAULT_BRUTE_FORCE_CAP)?)
        }
        (Mode::Float, Method::Auto) => Value::Float(float::y_auto(fspec, r)),
    })
}

fn values_agree(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Exact(x), Value::Exact(y)) => x == y,
        (Value::Float(x), Value::Float(y)) => {
            let scale = x.abs().max(y.abs());
            scale == 0.0 || (x - y).abs() <= 1e-9 * scale
        }
        _ => false,
    }
}

fn in_bench_domain(method: Method, n: u64, r: u64) -> bool {
    match method {
        Method::Corollary => corollary_in_domain(n, r),
        Method::BruteForce => n <= oracle::DEFAULT_BRUTE_FORCE_CAP,
        _ => true,
    }
}

/// CSV timing table; rows are flushed as each cell finishes.
pub fn bench(ctx: &Context, args: &BenchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let methods = if args.methods.is_empty() { DEFAULT_BENCH_METHODS.to_vec() } else { args.methods.clone() };
    let mut w = csv_writer(&mut *out);
    w.write_record(["n", "r", "p", "mode", "method", "median_ns", "value_decimal", "agree"])?;
    w.flush()?;
    let mut all_agree = true;
    for &n in &args.n_list {
        let r = args.r_policy.run_length(n);
        let spec = ExactSpec::new(n, args.p.exact.clone())?;
        let fspec = FloatSpec::new(n, args.p.as_f64())?;
        let mut reference: Option<Value> = None;
        for &method in methods.iter().filter(|m| in_bench_domain(**m, n, r)) {
            let mut times = Vec::with_capacity(args.repeats as usize);
            let mut value = None;
            for _ in 0..args.repeats {
                let start = Instant::now();
                value = Some(bench_value(ctx.mode, &spec, &fspec, r, method)?);
                times.push(start.elapsed().as_nanos() as u64);
            }
            times.sort_unstable();
            let value = value.expect("at least one repeat");
            let agree = match &reference {
                Some(reference) => values_agree(reference, &value),
                None => true,
            };
            all_agree &= agree;
            w.write_record([
                n.to_string(),
                r.to_string(),
                args.p.text.clone(),
                mode_name(ctx.mode).to_string(),
                method.name().to_string(),
                ctx.elapsed(times[times.len() / 2]).to_string(),
                value.decimal(ctx.digits),
                agree.to_string(),
            ])?;
            w.flush()?;
            reference.get_or_insert(value);
        }
    }
    if all_agree {
        Ok(())
    } else {
        Err(CliError::Disagreement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use runprob::Rational;

    fn p(s: &str) -> ProbArg {
        ProbArg { text: s.into(), exact: s.parse::<Rational>().unwrap() }
    }

    #[test]
    fn evaluate_modes() {
        let (v, _) = evaluate(Mode::Exact, 10, 3, &p("1/2"), Method::Auto, 20).unwrap();
        assert_eq!(v, Value::Exact("65/128".parse().unwrap()));
        let (v, _) = evaluate(Mode::Float, 10, 3, &p("0.5"), Method::BruteForce, 20).unwrap();
        assert_eq!(v, Value::Float(0.5078125));
        assert!(matches!(evaluate(Mode::Exact, 10, 4, &p("1/2"), Method::Corollary, 20), Err(CliError::Domain(_))));
        assert!(matches!(evaluate(Mode::Exact, 30, 4, &p("1/2"), Method::BruteForce, 20), Err(CliError::Domain(_))));
    }

    #[test]
    fn float_agreement_is_relative() {
        assert!(values_agree(&Value::Float(1e-30), &Value::Float(1e-30 * (1.0 + 1e-12))));
        assert!(!values_agree(&Value::Float(1e-30), &Value::Float(2e-30)));
        assert!(values_agree(&Value::Float(0.0), &Value::Float(0.0)));
    }
}
