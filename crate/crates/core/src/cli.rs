//! Command-line interface.
//!
//! Every subcommand writes to one stream (standard output or `--output`).
//! Output depends only on the arguments and `REDHEFFER_DIGITS`, so an
//! identical invocation gives byte-identical output; wall-clock timings
//! appear only with `--timing`.
//!
//! Exit codes: 0 on success, 1 when a computation fails, 2 on a usage
//! error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::arithmetic::{mertens, mobius_sieve, EULER_GAMMA};
use crate::asymptotics::{
    constants, det_asymptotic_check, det_generalized_asymptotic_check, mu_log_squared_partial_sums, fibonorial_asymptotic,
    trace_and_radius_asymptotics, zeta_inverse_partial_sums, AsymptoticReport, Series,
};
use crate::det::{charpoly, det_report, DetMethod};
use crate::error::{Error, Result};
use crate::io::{read_sequence, write_csv, write_matrix_market};
use crate::matrix::{build, nnz_count, MatrixSpec, Sequence};
use crate::reference::{
    alpha_example, beta_example, tabulated_eigenvalues, ALPHA_SPECTRUM, BETA_LEFT_AT_THREE, BETA_SPECTRUM,
};
use crate::scalar::{decimal_string, format_exact, parse_rational, Scalar};
use crate::spectral::{conjecture_scan, qplot, spectrum, EigenPair, Spectrum, DEFAULT_TOL};

/// Tolerance used when comparing with three-decimal published values.
pub const TABLE_TOLERANCE: f64 = 0.002;

#[derive(Debug, Parser)]
#[command(name = "redheffer", version, about = "Redheffer-type matrices: determinants, spectra and constants")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Decimal places for high-precision values.
    #[arg(long, global = true, env = "REDHEFFER_DIGITS", default_value_t = 30)]
    digits: usize,

    /// Output format (each command accepts a subset).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Write to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// Include wall-clock timings (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Matrixmarket,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Classic,
    Fibonacci,
    Variant,
    Generalized,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    All,
    ClosedForm,
    Elimination,
    Charpoly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SeriesKind {
    /// `Σ μ(k)/k^p`, converging to `1/ζ(p)`.
    ZetaInverse,
    /// `Σ μ(k) ln²k / k` (reported only).
    MuLogSquared,
}

#[derive(Debug, Args)]
#[group(id = "source", multiple = false)]
struct SourceArgs {
    /// Inline sequence `a_1,a_2,...` (integers, `p/q` or decimals).
    #[arg(long, value_parser = parse_list)]
    sequence: Option<RationalList>,

    /// Named sequence: `power:p` (a_j = j^p) or `log-shift` (a_j = j/ln²j).
    #[arg(long, value_parser = parse_preset)]
    preset: Option<Sequence>,

    /// File with one value per line (`#` starts a comment).
    #[arg(long)]
    sequence_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct MatrixArgs {
    #[arg(long, value_enum, default_value = "fibonacci")]
    kind: KindArg,

    /// Matrix order.
    #[arg(long)]
    n: usize,

    /// Corner shift of the variant kind, `b > −1`.
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    b: Option<BigRational>,

    /// Row offset `t` of the generalized kind (`w_i = a_{i+t}`).
    #[arg(long, default_value_t = 0)]
    offset: usize,

    #[command(flatten)]
    source: SourceArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Export the matrix (Matrix Market or CSV).
    Build {
        #[command(flatten)]
        matrix: MatrixArgs,
        /// Add exact `p/q` values as Matrix Market comment lines.
        #[arg(long)]
        exact_comments: bool,
    },
    /// Determinant by one method or all three, with an agreement flag.
    Det {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
    },
    /// Exact characteristic polynomial, highest degree first.
    Charpoly {
        #[command(flatten)]
        matrix: MatrixArgs,
    },
    /// Eigenvalues with certified brackets.
    Eig {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Include right (and, when available, left) eigenvectors.
        #[arg(long)]
        vectors: bool,
    },
    /// Samples of the secular function `Q` as TSV.
    Qplot {
        #[command(flatten)]
        matrix: MatrixArgs,
        #[arg(long, allow_hyphen_values = true)]
        lo: f64,
        #[arg(long, allow_hyphen_values = true)]
        hi: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
    },
    /// Mertens function `M(n)`.
    Mertens {
        #[arg(long)]
        n: usize,
    },
    /// The constants `C`, `C_φ`, `C_0` with rigorous error bounds.
    Constants {
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Reports `−1 < λ_1 < 0` and `λ_i < F_i + 1` for `3 ≤ n ≤ n_max`.
    Scan {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Nonzero count `S_n` against `n ln n + 2γn`.
    Sparsity {
        #[arg(long)]
        n: usize,
    },
    /// Reproduces the published example spectra and eigenvalue table.
    Examples {
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Partial sums of a Möbius series as TSV.
    Series {
        #[arg(value_enum)]
        which: SeriesKind,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 2.0)]
        p: f64,
    },
    /// Asymptotic comparisons for one order `n`.
    Asymptotics {
        #[arg(long)]
        n: usize,
        /// Exponent of the power sequence for the generalized comparison.
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
}

fn parse_rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

/// Comma-separated exact values.
#[derive(Clone, Debug, PartialEq)]
struct RationalList(Vec<BigRational>);

fn parse_list(s: &str) -> std::result::Result<RationalList, String> {
    s.split(',').map(parse_rational_arg).collect::<std::result::Result<_, _>>().map(RationalList)
}

fn parse_preset(s: &str) -> std::result::Result<Sequence, String> {
    if s == "log-shift" {
        return Ok(Sequence::LogShift);
    }
    if let Some(p) = s.strip_prefix("power:") {
        let p: f64 = p.parse().map_err(|_| format!("bad exponent in preset '{s}'"))?;
        if !p.is_finite() {
            return Err(format!("bad exponent in preset '{s}'"));
        }
        return Ok(Sequence::Power(p));
    }
    Err(format!("unknown preset '{s}' (expected power:p or log-shift)"))
}

impl MatrixArgs {
    fn spec(&self) -> Result<MatrixSpec> {
        let has_source = self.source.sequence.is_some() || self.source.preset.is_some() || self.source.sequence_file.is_some();
        if self.kind != KindArg::Generalized && (has_source || self.offset != 0) {
            return Err(Error::invalid("--sequence, --preset, --sequence-file and --offset need --kind generalized"));
        }
        if self.kind != KindArg::Variant && self.b.is_some() {
            return Err(Error::invalid("--b needs --kind variant"));
        }
        let spec = match self.kind {
            KindArg::Classic => MatrixSpec::classic(self.n),
            KindArg::Fibonacci => MatrixSpec::fibonacci(self.n),
            KindArg::Variant => {
                let b = self.b.clone().ok_or_else(|| Error::invalid("--kind variant needs --b"))?;
                MatrixSpec::variant(self.n, b)
            }
            KindArg::Generalized => {
                let sequence = if let Some(v) = &self.source.sequence {
                    Sequence::Explicit(v.0.clone())
                } else if let Some(p) = &self.source.preset {
                    p.clone()
                } else if let Some(path) = &self.source.sequence_file {
                    let file = File::open(path)?;
                    Sequence::Explicit(read_sequence(&mut BufReader::new(file))?)
                } else {
                    return Err(Error::invalid("--kind generalized needs --sequence, --preset or --sequence-file"));
                };
                MatrixSpec::generalized(self.n, sequence, self.offset)
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut buffer = Vec::new();
    match execute(&cli, &mut buffer).and_then(|()| emit(&cli, &buffer, out)) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::InvalidArgument(_) | Error::Parse(_) => 2,
                _ => 1,
            }
        }
    }
}

fn emit(cli: &Cli, buffer: &[u8], out: &mut dyn Write) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, buffer)?,
        None => out.write_all(buffer)?,
    }
    Ok(())
}

/// The requested format, or `default`, restricted to `allowed`.
fn format_of(cli: &Cli, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cli.format.unwrap_or(default);
    if !allowed.contains(&f) {
        let names: Vec<String> = allowed.iter().map(|a| format!("{a:?}").to_lowercase()).collect();
        return Err(Error::invalid(format!(
            "format {} is not available here (use {})",
            format!("{f:?}").to_lowercase(),
            names.join(", ")
        )));
    }
    Ok(f)
}

fn write_json(out: &mut Vec<u8>, v: &Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Error::Io(e.into()))?;
    out.push(b'\n');
    Ok(())
}

fn scalar_json(s: &Scalar, digits: usize) -> (Value, Value) {
    match s {
        Scalar::Exact(r) => (json!(format_exact(r)), json!(decimal_string(r, digits))),
        Scalar::Approx(x) => (json!(format!("{x:e}")), json!(format!("{x:e}"))),
    }
}

fn timed<T>(cli: &Cli, v: &mut Value, start: Instant, result: T) -> T {
    if cli.timing {
        if let Value::Object(map) = v {
            map.insert("elapsed_ms".into(), json!(start.elapsed().as_secs_f64() * 1e3));
        }
    }
    result
}

fn execute(cli: &Cli, out: &mut Vec<u8>) -> Result<()> {
    let digits = cli.digits;
    let start = Instant::now();
    match &cli.command {
        Command::Build { matrix, exact_comments } => {
            let m = build(&matrix.spec()?)?;
            match format_of(cli, Format::Matrixmarket, &[Format::Matrixmarket, Format::Csv])? {
                Format::Csv => write_csv(&m, out),
                _ => write_matrix_market(&m, *exact_comments, out),
            }
        }
        Command::Det { matrix, method } => {
            format_of(cli, Format::Json, &[Format::Json])?;
            let spec = matrix.spec()?;
            let chosen = match method {
                MethodArg::All => None,
                MethodArg::ClosedForm => Some(DetMethod::ClosedForm),
                MethodArg::Elimination => Some(DetMethod::Elimination),
                MethodArg::Charpoly => Some(DetMethod::Charpoly),
            };
            let report = det_report(&spec, chosen)?;
            let exact = |r: &Option<BigRational>| r.as_ref().map(format_exact);
            let closed = report.closed_form.as_ref().map(|s| scalar_json(s, digits).0);
            let value = report
                .closed_form
                .clone()
                .or_else(|| report.elimination.clone().map(Scalar::Exact))
                .or_else(|| report.charpoly.clone().map(Scalar::Exact))
                .expect("at least one method ran");
            let (text, decimal) = scalar_json(&value, digits);
            let agree = report.agree();
            let mut v = json!({
                "n": spec.n,
                "kind": spec.kind.to_string(),
                "method": chosen.map_or("all", DetMethod::name),
                "value": text,
                "decimal": decimal,
                "exact": value.is_exact(),
                "closed_form": closed,
                "elimination": exact(&report.elimination),
                "charpoly": exact(&report.charpoly),
                "agree": agree,
            });
            timed(cli, &mut v, start, ());
            write_json(out, &v)?;
            if !agree {
                return Err(Error::Domain("determinant methods disagree".into()));
            }
            Ok(())
        }
        Command::Charpoly { matrix } => {
            format_of(cli, Format::Json, &[Format::Json])?;
            let spec = matrix.spec()?;
            let chi = charpoly(&spec)?;
            let coeffs: Vec<String> = chi.descending().iter().map(format_exact).collect();
            let mut v = json!({
                "n": spec.n,
                "kind": spec.kind.to_string(),
                "coefficients": coeffs,
                "integral": chi.is_integral(),
            });
            timed(cli, &mut v, start, ());
            write_json(out, &v)
        }
        Command::Eig { matrix, tol, vectors } => {
            let fmt = format_of(cli, Format::Json, &[Format::Json, Format::Tsv])?;
            let spec = matrix.spec()?;
            let s = spectrum(&spec, *tol)?;
            if fmt == Format::Tsv {
                eig_tsv(&s, digits, out)
            } else {
                write_json(out, &eig_json(&s, digits, *vectors))
            }
        }
        Command::Qplot { matrix, lo, hi, samples } => {
            format_of(cli, Format::Tsv, &[Format::Tsv])?;
            let m = build(&matrix.spec()?)?;
            writeln!(out, "z\tQ")?;
            for (z, q) in qplot(&m, *lo, *hi, *samples)? {
                writeln!(out, "{z}\t{q}")?;
            }
            Ok(())
        }
        Command::Mertens { n } => {
            if format_of(cli, Format::Json, &[Format::Json, Format::Tsv])? == Format::Tsv {
                let mu = mobius_sieve(*n)?;
                writeln!(out, "k\tmu\tM")?;
                for k in 1..=*n {
                    writeln!(out, "{k}\t{}\t{}", mu.mu(k), mu.mertens(k))?;
                }
                Ok(())
            } else {
                write_json(out, &json!({ "n": n, "mertens": mertens(*n)? }))
            }
        }
        Command::Constants { tol } => {
            let fmt = format_of(cli, Format::Json, &[Format::Json, Format::Tsv])?;
            let reports = constants(*tol)?;
            if fmt == Format::Tsv {
                writeln!(out, "name\tvalue\terror_bound\tk0")?;
                for r in &reports {
                    writeln!(out, "{}\t{}\t{:e}\t{}", r.name, r.decimal(digits), r.error_bound, r.truncation)?;
                }
                Ok(())
            } else {
                let items: Vec<Value> = reports.iter().map(|r| report_json(r, digits)).collect();
                write_json(out, &Value::Array(items))
            }
        }
        Command::Scan { n_max, tol } => {
            format_of(cli, Format::Json, &[Format::Json])?;
            for row in conjecture_scan(*n_max, *tol)? {
                let v = json!({
                    "n": row.n,
                    "lambda1_above_minus_one": row.lambda1_above_minus_one,
                    "unit_gap": row.unit_gap,
                    "violations": row.violations,
                    "lambda1": row.lambda1,
                    "max_excess": row.max_excess,
                });
                writeln!(out, "{v}")?;
            }
            Ok(())
        }
        Command::Sparsity { n } => {
            let fmt = format_of(cli, Format::Json, &[Format::Json, Format::Tsv])?;
            let c = nnz_count(*n)?;
            if fmt == Format::Tsv {
                writeln!(out, "n\tnnz\testimate\tratio")?;
                writeln!(out, "{}\t{}\t{}\t{}", c.n, c.exact, c.estimate, c.ratio())?;
                Ok(())
            } else {
                write_json(out, &json!({ "n": c.n, "nnz": c.exact, "estimate": c.estimate, "ratio": c.ratio() }))
            }
        }
        Command::Examples { tol } => {
            format_of(cli, Format::Json, &[Format::Json])?;
            write_json(out, &examples_json(*tol)?)
        }
        Command::Series { which, n_max, p } => {
            format_of(cli, Format::Tsv, &[Format::Tsv])?;
            let series = match which {
                SeriesKind::ZetaInverse => zeta_inverse_partial_sums(*p, *n_max)?,
                SeriesKind::MuLogSquared => mu_log_squared_partial_sums(*n_max)?,
            };
            series_tsv(&series, out)
        }
        Command::Asymptotics { n, p } => {
            format_of(cli, Format::Json, &[Format::Json])?;
            let mut v = asymptotics_json(*n, *p)?;
            timed(cli, &mut v, start, ());
            write_json(out, &v)
        }
    }
}

fn report_json(r: &AsymptoticReport, digits: usize) -> Value {
    json!({
        "name": r.name,
        "value": r.decimal(digits),
        "error_bound": r.error_bound,
        "k0": r.truncation,
    })
}

fn pair_json(p: &EigenPair, digits: usize, vectors: bool) -> Value {
    let mut v = json!({
        "i": p.index,
        "lambda": p.value,
        "bracket_lo": decimal_string(&p.bracket.lo, digits),
        "bracket_hi": decimal_string(&p.bracket.hi, digits),
        "residual": p.residual,
        "multiplicity": p.multiplicity,
    });
    let map = v.as_object_mut().expect("object");
    if let Some(r) = &p.bracket.exact {
        map.insert("exact".into(), json!(format_exact(r)));
    }
    if vectors {
        map.insert("eigenvector".into(), json!(p.eigenvector));
        if let Some(left) = &p.left {
            map.insert("left_eigenvector".into(), json!(left));
        }
    }
    v
}

fn eig_json(s: &Spectrum, digits: usize, vectors: bool) -> Value {
    let mut items: Vec<Value> = s.real.iter().map(|p| pair_json(p, digits, vectors)).collect();
    for (k, (z, mult)) in s.complex.iter().enumerate() {
        items.push(json!({
            "i": s.real.len() + k + 1,
            "lambda_re": z.re,
            "lambda_im": z.im,
            "conjugate_pair": true,
            "multiplicity": mult,
        }));
    }
    Value::Array(items)
}

fn eig_tsv(s: &Spectrum, digits: usize, out: &mut Vec<u8>) -> Result<()> {
    writeln!(out, "i\tlambda\tbracket_lo\tbracket_hi\tresidual")?;
    for p in &s.real {
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{:e}",
            p.index,
            p.value,
            decimal_string(&p.bracket.lo, digits),
            decimal_string(&p.bracket.hi, digits),
            p.residual
        )?;
    }
    for (z, _) in &s.complex {
        writeln!(out, "#complex\t{}\t{}", z.re, z.im)?;
    }
    Ok(())
}

fn series_tsv(s: &Series, out: &mut Vec<u8>) -> Result<()> {
    writeln!(out, "# {}: target {}", s.name, s.target)?;
    if !s.asserted {
        writeln!(out, "# reporting only; no tolerance asserted")?;
    }
    writeln!(out, "n\tpartial_sum\ttarget")?;
    for r in &s.rows {
        writeln!(out, "{}\t{}\t{}", r.n, r.partial_sum, s.target)?;
    }
    Ok(())
}

fn max_deviation(computed: &[f64], published: &[f64]) -> f64 {
    computed.iter().zip(published).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn example_json(s: &Spectrum, published: &[f64]) -> Value {
    let values: Vec<f64> = s.real.iter().map(|p| p.value).collect();
    let dev = max_deviation(&values, published);
    json!({
        "eigenvalues": values,
        "published": published,
        "max_deviation": dev,
        "within_tolerance": values.len() == published.len() && dev <= TABLE_TOLERANCE,
    })
}

fn examples_json(tol: f64) -> Result<Value> {
    let alpha = spectrum(&alpha_example(), tol)?;
    let beta = spectrum(&beta_example(), tol)?;
    let mut beta_v = example_json(&beta, &BETA_SPECTRUM);
    if let Some(three) = beta.real.iter().find(|p| p.bracket.exact == Some(BigRational::from_integer(3.into()))) {
        let left = three.left.clone().unwrap_or_default();
        let map = beta_v.as_object_mut().expect("object");
        map.insert("left_eigenvector_at_3".into(), json!(left));
        map.insert("left_sum_at_3".into(), json!(left.iter().sum::<f64>()));
        map.insert("left_matches_published".into(), json!(left == BETA_LEFT_AT_THREE));
        map.insert("right_eigenvector_at_3".into(), json!(three.eigenvector));
    }
    let mut table = Vec::new();
    for n in 3..=11 {
        let published = tabulated_eigenvalues(n).expect("tabulated range");
        let s = spectrum(&MatrixSpec::fibonacci(n), tol)?;
        let mut row = example_json(&s, published);
        row.as_object_mut().expect("object").insert("n".into(), json!(n));
        table.push(row);
    }
    Ok(json!({ "alpha": example_json(&alpha, &ALPHA_SPECTRUM), "beta": beta_v, "table": table }))
}

fn asymptotics_json(n: usize, p: u32) -> Result<Value> {
    let det = det_asymptotic_check(n)?;
    let fibo = fibonorial_asymptotic(n)?;
    let trace = if n >= 3 { Some(trace_and_radius_asymptotics(n)?) } else { None };
    let gen = det_generalized_asymptotic_check(p, n)?;
    Ok(json!({
        "n": n,
        "determinant": {
            "estimate_sign": det.estimate.sign,
            "estimate_ln_abs": det.estimate.ln_abs,
            "exact_sign": det.exact_sign,
            "exact_ln_abs": det.exact_ln_abs,
            "relative_log_error": det.relative_log_error,
        },
        "fibonorial": {
            "ln_exact": fibo.ln_exact,
            "ln_estimate": fibo.ln_estimate,
            "residual": fibo.residual,
            "residual_error": fibo.residual_error,
            "bound": fibo.bound,
        },
        "trace_radius": trace.map(|t| json!({
            "trace": t.trace.to_string(),
            "trace_ratio": t.trace_ratio,
            "lambda_max": t.lambda_max,
            "radius_ratio": t.radius_ratio,
        })),
        "generalized_power": {
            "p": gen.p,
            "det": format_exact(&gen.det),
            "sign": gen.sign,
            "ln_exact": gen.ln_exact,
            "ln_estimate": gen.ln_estimate,
            "log_ratio": gen.log_ratio,
        },
        "euler_gamma": EULER_GAMMA,
    }))
}
