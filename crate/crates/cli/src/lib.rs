//! Command-line front end for `cyclowitt`.
//!
//! [`run`] executes one command line in-process and returns what would be
//! printed together with the exit code: 0 on success, 1 when a check fails,
//! 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use cyclowitt::arith::ramanujan_sum;
use cyclowitt::lambda::{gamma_filtration, graded_frobenius_check, lambda_polynomial};
use cyclowitt::rig::{global_sections, RigName};
use cyclowitt::spectrum::{self, FiniteCRig, Ideal};
use cyclowitt::witt::{self, hom_classify, parseval_check, zeta_partial_check};
use cyclowitt::{Error, IntMatrix, WittElement, WittSeries};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub mod parse;

pub use parse::{parse_witt, ParseError};

#[derive(Debug, Parser)]
#[command(
    name = "cyclowitt",
    version,
    about = "Exact arithmetic in the cyclotomic Witt ring"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product of two elements.
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Frobenius F_m; m = 0 gives F_0 as a multiple of phi(1).
    Frob {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Verschiebung phi(n) -> phi(mn).
    Versch {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Trace, phi(n) -> mu(n).
    Trace {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// tr(F_m(a)); on phi(n) this is the Ramanujan sum C_n^m.
    Tm {
        m: u64,
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// F_0, phi(n) -> euler_phi(n).
    F0 {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Coefficient of phi(1).
    Integral {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Integral of the product.
    Inner {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// lambda_t(phi(n)).
    Lambda { n: u64 },
    /// lambda_t(phi(n)) for n = 1..=max.
    LambdaTable { max: u64 },
    /// Gamma filtration of W_N with the graded Frobenius check.
    GammaFiltration {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = 5)]
        m_max: u64,
    },
    /// Table of Ramanujan sums C_n^m.
    Ramanujan {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m_max: u64,
    },
    /// Finite Parseval identity at level N.
    Parseval { n: u64 },
    /// Truncated Dirichlet series of C_n^m against zeta(t)^-1 sigma_{1-t}(m).
    Zeta {
        #[arg(long)]
        m: u64,
        #[arg(long, default_value_t = 3)]
        t: u32,
        #[arg(long, default_value_t = 100_000)]
        cutoff: u64,
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
    },
    /// Ring homomorphisms W_{p^k} -> Z.
    Homs {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        depth: u32,
    },
    /// Characteristic polynomial of a matrix "a,b;c,d".
    Charpoly {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Witt class of a matrix whose eigenvalues are roots of unity or zero.
    Wittclass {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Integer contractions of a given shape, checked against the signed
    /// sub-permutation matrices.
    Sections {
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 1)]
        bound: u32,
    },
    /// Prime spectrum of a finite rig.
    Spec {
        #[command(flatten)]
        rig: RigArg,
    },
    /// Radical of the ideal generated by a list of elements.
    Radical {
        #[command(flatten)]
        rig: RigArg,
        /// Comma-separated element labels.
        #[arg(long, allow_hyphen_values = true)]
        ideal: String,
    },
    /// Compares r_s with the sections of the structure sheaf over D(s).
    Theorem1 {
        #[command(flatten)]
        rig: RigArg,
        #[arg(long)]
        s: String,
    },
}

#[derive(Debug, Args)]
pub struct RigArg {
    /// boolean | zmod:N | tropical-quotient (finite rigs only)
    #[arg(long, required_unless_present = "table")]
    pub rig: Option<String>,
    /// Rig table file.
    #[arg(long, conflicts_with = "rig")]
    pub table: Option<PathBuf>,
}

/// What a command line produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Self {
        Report {
            text,
            json,
            ok: true,
        }
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotUnitSpectrum(_)
            | Error::Indeterminate(_)
            | Error::Characterization(_)
            | Error::InexactDivision { .. }
            | Error::NotGaloisStable { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 2,
                }
            } else {
                Outcome {
                    stdout: text,
                    stderr: String::new(),
                    code: 0,
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(r) => {
            let mut stdout = if cli.json {
                serde_json::to_string_pretty(&r.json).expect("values serialize")
            } else {
                r.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome {
                stdout,
                stderr: String::new(),
                code: if r.ok { 0 } else { 1 },
            }
        }
        Err(Failure::Usage(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        },
        Err(Failure::Check(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("check failed: {msg}\n"),
            code: 1,
        },
    }
}

fn big(n: &BigInt) -> Value {
    Value::Number(
        n.to_string()
            .parse()
            .expect("integers are valid JSON numbers"),
    )
}

fn elem_json(a: &WittElement) -> Value {
    json!({
        "text": a.to_string(),
        "terms": a.iter().map(|(n, c)| json!([n, big(c)])).collect::<Vec<_>>(),
    })
}

fn series_json(s: &WittSeries) -> Value {
    let last = s.last_nonzero().unwrap_or(0);
    json!({
        "text": s.to_string(),
        "coefficients": s.coeffs()[..=last].iter().map(elem_json).collect::<Vec<_>>(),
    })
}

fn ideal_text(r: &FiniteCRig, a: &Ideal) -> String {
    a.display(r).to_string()
}

fn ideal_json(r: &FiniteCRig, a: &Ideal) -> Value {
    json!(a.elements().iter().map(|&x| r.label(x)).collect::<Vec<_>>())
}

fn load_rig(arg: &RigArg) -> Result<FiniteCRig, Failure> {
    if let Some(path) = &arg.table {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map_or("table".into(), |s| s.to_string_lossy().into_owned());
        return Ok(FiniteCRig::parse_table(&name, &text)?);
    }
    let name = arg.rig.as_deref().unwrap_or_default();
    if name == "tropical-quotient" {
        return Ok(FiniteCRig::tropical_quotient());
    }
    Ok(FiniteCRig::from_name(name.parse::<RigName>()?)?)
}

fn element_result(op: &str, a: WittElement) -> Report {
    Report::ok(
        a.to_string(),
        json!({ "command": op, "result": elem_json(&a) }),
    )
}

fn integer_result(op: &str, n: BigInt) -> Report {
    Report::ok(n.to_string(), json!({ "command": op, "result": big(&n) }))
}

fn execute(cmd: &Command) -> Result<Report, Failure> {
    use Command::*;
    Ok(match cmd {
        Mul { a, b } => element_result("mul", &parse_witt(a)? * &parse_witt(b)?),
        Frob { m, a } => element_result("frob", witt::frobenius(*m, &parse_witt(a)?)),
        Versch { m, a } => element_result("versch", witt::verschiebung(*m, &parse_witt(a)?)?),
        Trace { a } => integer_result("trace", witt::trace(&parse_witt(a)?)),
        Tm { m, a } => {
            if *m == 0 {
                return Err(Error::Zero.into());
            }
            integer_result("tm", witt::t_m(*m, &parse_witt(a)?))
        }
        F0 { a } => integer_result("f0", witt::f0(&parse_witt(a)?)),
        Integral { a } => integer_result("integral", witt::integral(&parse_witt(a)?)),
        Inner { a, b } => integer_result("inner", witt::inner(&parse_witt(a)?, &parse_witt(b)?)),
        Lambda { n } => {
            let s = lambda_polynomial(*n)?;
            Report::ok(
                s.to_string(),
                json!({ "command": "lambda", "n": n, "series": series_json(&s) }),
            )
        }
        LambdaTable { max } => lambda_table(*max)?,
        GammaFiltration {
            level,
            depth,
            m_max,
        } => gamma_report(*level, *depth, *m_max)?,
        Ramanujan { n, m_max } => ramanujan_table(*n, *m_max)?,
        Parseval { n } => parseval_report(*n)?,
        Zeta { m, t, cutoff, tol } => zeta_report(*m, *t, *cutoff, *tol)?,
        Homs { p, depth } => homs_report(*p, *depth)?,
        Charpoly { matrix } => {
            let p = matrix.parse::<IntMatrix>()?.charpoly()?;
            let coeffs: Vec<Value> = p.coeffs().iter().map(big).collect();
            Report::ok(
                p.to_string(),
                json!({ "command": "charpoly", "text": p.to_string(), "coefficients": coeffs }),
            )
        }
        Wittclass { matrix } => {
            element_result("wittclass", matrix.parse::<IntMatrix>()?.witt_class()?)
        }
        Sections { rows, cols, bound } => sections_report(*rows, *cols, *bound)?,
        Spec { rig } => {
            let r = load_rig(rig)?;
            let sp = spectrum::spec(&r);
            let mut text = format!("spec({}): {} prime(s)\n", r.name_str(), sp.len());
            for p in &sp.primes {
                writeln!(text, "{}", ideal_text(&r, p)).unwrap();
            }
            let primes: Vec<Value> = sp.primes.iter().map(|p| ideal_json(&r, p)).collect();
            Report::ok(
                text,
                json!({ "command": "spec", "rig": r.name_str(), "primes": primes }),
            )
        }
        Radical { rig, ideal } => {
            let r = load_rig(rig)?;
            let a = spectrum::ideal_generated(&r, &r.parse_subset(ideal)?);
            let rad = spectrum::radical(&r, &a)?;
            let text = format!(
                "radical of {} in {}: {}\n",
                ideal_text(&r, &a),
                r.name_str(),
                ideal_text(&r, &rad)
            );
            Report::ok(
                text,
                json!({
                    "command": "radical",
                    "rig": r.name_str(),
                    "ideal": ideal_json(&r, &a),
                    "radical": ideal_json(&r, &rad),
                }),
            )
        }
        Theorem1 { rig, s } => theorem1_report(&load_rig(rig)?, s)?,
    })
}

trait NameStr {
    fn name_str(&self) -> String;
}

impl NameStr for FiniteCRig {
    fn name_str(&self) -> String {
        cyclowitt::rig::Rig::name(self)
    }
}

/// One `lambda_t(phi(n)) = …` line per `n`.
pub fn lambda_table_lines(max: u64) -> cyclowitt::Result<Vec<String>> {
    (1..=max)
        .map(|n| Ok(format!("lambda_t(phi({n})) = {}", lambda_polynomial(n)?)))
        .collect()
}

fn lambda_table(max: u64) -> Result<Report, Failure> {
    let lines = lambda_table_lines(max)?;
    let rows: Vec<Value> = (1..=max)
        .map(|n| Ok(json!({ "n": n, "series": series_json(&lambda_polynomial(n)?) })))
        .collect::<Result<_, Error>>()?;
    Ok(Report::ok(
        lines.join("\n"),
        json!({ "command": "lambda-table", "rows": rows }),
    ))
}

fn ramanujan_table(n: u64, m_max: u64) -> Result<Report, Failure> {
    if n == 0 || m_max == 0 {
        return Err(Error::Zero.into());
    }
    let table: Vec<Vec<BigInt>> = (1..=n)
        .map(|i| (1..=m_max).map(|m| ramanujan_sum(i, m)).collect())
        .collect::<Result<_, Error>>()?;
    let width = table
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .chain((1..=m_max).map(|m| m.to_string().len()))
        .max()
        .unwrap_or(1);
    let first = "n\\m".len().max(n.to_string().len());
    let mut text = format!("{:>first$}", "n\\m");
    for m in 1..=m_max {
        write!(text, " {m:>width$}").unwrap();
    }
    text.push('\n');
    for (i, row) in table.iter().enumerate() {
        write!(text, "{:>first$}", i + 1).unwrap();
        for c in row {
            write!(text, " {:>width$}", c.to_string()).unwrap();
        }
        text.push('\n');
    }
    let rows: Vec<Value> = table
        .iter()
        .map(|r| json!(r.iter().map(big).collect::<Vec<_>>()))
        .collect();
    Ok(Report::ok(
        text,
        json!({ "command": "ramanujan", "n": n, "m_max": m_max, "table": rows }),
    ))
}

fn parseval_report(n: u64) -> Result<Report, Failure> {
    let r = parseval_check(n)?;
    let mut text = format!(
        "parseval N={}: {} pairs (n, m | N), {} failure(s)\n",
        r.level,
        r.pairs_checked,
        r.failures.len()
    );
    for (a, b, e, c) in &r.failures {
        writeln!(text, "  n={a} m={b}: expected {e}, got {c}").unwrap();
    }
    text.push_str(if r.passed() { "ok\n" } else { "FAILED\n" });
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|(a, b, e, c)| json!({ "n": a, "m": b, "expected": e.to_string(), "computed": c.to_string() }))
        .collect();
    Ok(Report {
        text,
        json: json!({
            "command": "parseval",
            "level": r.level,
            "pairs": r.pairs_checked,
            "failures": failures,
            "passed": r.passed(),
        }),
        ok: r.passed(),
    })
}

fn zeta_report(m: u64, t: u32, cutoff: u64, tol: f64) -> Result<Report, Failure> {
    let r = zeta_partial_check(m, t, cutoff, tol)?;
    let text = format!(
        "zeta m={} t={} N={}\npartial   {:.12}\nexpected  {:.12}\ndifference {:.3e} (tail bound {:.3e}, tolerance {:.1e})\n{}\n",
        r.m,
        r.t,
        r.cutoff,
        r.partial,
        r.expected,
        r.difference,
        r.tail_bound,
        r.tolerance,
        if r.passed() { "ok" } else { "FAILED" }
    );
    let fixed = |x: f64| Value::String(format!("{x:.12e}"));
    Ok(Report {
        text,
        json: json!({
            "command": "zeta",
            "m": r.m,
            "t": r.t,
            "cutoff": r.cutoff,
            "partial": fixed(r.partial),
            "expected": fixed(r.expected),
            "difference": fixed(r.difference),
            "tail_bound": fixed(r.tail_bound),
            "tolerance": fixed(r.tolerance),
            "passed": r.passed(),
        }),
        ok: r.passed(),
    })
}

fn homs_report(p: u64, depth: u32) -> Result<Report, Failure> {
    let h = hom_classify(p, depth)?;
    let header: Vec<String> = (0..=depth).map(|j| format!("phi({})", p.pow(j))).collect();
    let row = |v: &[BigInt]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut text = format!(
        "ring homomorphisms W_{} -> Z: {} found, {} predicted\nvalues on {}\n",
        p.pow(depth),
        h.solutions.len(),
        h.predicted.len(),
        header.join(" ")
    );
    for v in &h.solutions {
        let label = h
            .predicted
            .iter()
            .find(|(_, w)| w == v)
            .map_or("unpredicted", |(l, _)| l.as_str());
        writeln!(text, "  {}  [{label}]", row(v)).unwrap();
    }
    text.push_str(if h.matches() { "ok\n" } else { "FAILED\n" });
    let sols: Vec<Value> = h
        .solutions
        .iter()
        .map(|v| json!(v.iter().map(big).collect::<Vec<_>>()))
        .collect();
    let pred: Vec<Value> = h
        .predicted
        .iter()
        .map(|(l, v)| json!({ "label": l, "values": v.iter().map(big).collect::<Vec<_>>() }))
        .collect();
    Ok(Report {
        text,
        json: json!({ "command": "homs", "p": p, "depth": depth, "solutions": sols, "predicted": pred, "passed": h.matches() }),
        ok: h.matches(),
    })
}

fn sections_report(rows: usize, cols: usize, bound: u32) -> Result<Report, Failure> {
    let ms = global_sections(rows, cols, bound)?;
    let mut text = format!(
        "{rows}x{cols} integer contractions with entries in [-{bound}, {bound}]: {} (all signed sub-permutations)\n",
        ms.len()
    );
    for m in &ms {
        writeln!(text, "{m}").unwrap();
    }
    let list: Vec<Value> = ms.iter().map(|m| Value::String(m.to_string())).collect();
    Ok(Report::ok(
        text,
        json!({ "command": "sections", "rows": rows, "cols": cols, "bound": bound, "count": ms.len(), "matrices": list }),
    ))
}

fn gamma_report(level: u64, depth: usize, m_max: u64) -> Result<Report, Failure> {
    let filt = gamma_filtration(level, depth)?;
    let graded = graded_frobenius_check(level, depth, m_max)?;
    let basis: Vec<String> = filt.basis.iter().map(|d| format!("phi({d})")).collect();
    let mut text = format!(
        "gamma filtration of W_{level}, depth {depth}, generators of total degree <= {}\nbasis: {}\n",
        filt.generator_bound(),
        basis.join(", ")
    );
    let mut lattices = Vec::new();
    for (k, lat) in filt.lattices.iter().enumerate() {
        writeln!(text, "I_{k}: rank {}", lat.rank()).unwrap();
        let rows: Vec<WittElement> = lat.basis().iter().map(|v| filt.element(v)).collect();
        for r in &rows {
            writeln!(text, "  {r}").unwrap();
        }
        lattices.push(json!({ "k": k, "rank": lat.rank(), "basis": rows.iter().map(elem_json).collect::<Vec<_>>() }));
    }
    writeln!(
        text,
        "F_m(x) - m^n x in I_(n+1) for x in I_n, n <= {depth}, m <= {m_max}: {} checks, {} failure(s)",
        graded.frobenius_checks,
        graded.frobenius_failures.len()
    )
    .unwrap();
    for w in &graded.frobenius_failures {
        writeln!(
            text,
            "  failure n={} m={} x={} value={}",
            w.degree, w.m, w.generator, w.value
        )
        .unwrap();
    }
    writeln!(
        text,
        "(-1)^(m+1) lambda^m(x) - m^(n-1) x in I_(n+1), 1 <= n <= {depth}: {} checks, {} open finding(s)",
        graded.lambda_checks,
        graded.lambda_findings.len()
    )
    .unwrap();
    for w in &graded.lambda_findings {
        writeln!(
            text,
            "  finding n={} m={} x={} value={}",
            w.degree, w.m, w.generator, w.value
        )
        .unwrap();
    }
    text.push_str(if graded.passed() { "ok\n" } else { "FAILED\n" });
    let witness = |w: &cyclowitt::lambda::Witness| json!({ "n": w.degree, "m": w.m, "x": elem_json(&w.generator), "value": elem_json(&w.value) });
    Ok(Report {
        text,
        json: json!({
            "command": "gamma-filtration",
            "level": level,
            "depth": depth,
            "m_max": m_max,
            "lattices": lattices,
            "frobenius_checks": graded.frobenius_checks,
            "frobenius_failures": graded.frobenius_failures.iter().map(witness).collect::<Vec<_>>(),
            "lambda_checks": graded.lambda_checks,
            "lambda_findings": graded.lambda_findings.iter().map(witness).collect::<Vec<_>>(),
            "passed": graded.passed(),
        }),
        ok: graded.passed(),
    })
}

fn theorem1_report(r: &FiniteCRig, s: &str) -> Result<Report, Failure> {
    let x = r
        .element(s)
        .ok_or_else(|| Failure::Usage(format!("`{s}` is not an element of {}", r.name_str())))?;
    let rep = spectrum::theorem1_check(r, x)?;
    let sp = spectrum::spec(r);
    let open: Vec<String> = rep
        .open_set
        .iter()
        .map(|&i| ideal_text(r, &sp.primes[i]))
        .collect();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let text = format!(
        "rig {}, s = {}\nD(s): {} prime(s) [{}]\nr_s: {} element(s)\nfamilies over D(s): {}, locally fractions: {}\npsi: injective {}, surjective {}, preserves operations {}\n{}\n",
        r.name_str(),
        s,
        open.len(),
        open.join(", "),
        rep.localized_size,
        rep.families,
        rep.sections,
        yes(rep.injective),
        yes(rep.surjective),
        yes(rep.preserves_operations),
        if rep.passed() { "ok" } else { "FAILED" }
    );
    Ok(Report {
        text,
        json: json!({
            "command": "theorem1",
            "rig": r.name_str(),
            "s": s,
            "open_set": rep.open_set.iter().map(|&i| ideal_json(r, &sp.primes[i])).collect::<Vec<_>>(),
            "localized_size": rep.localized_size,
            "families": rep.families,
            "sections": rep.sections,
            "injective": rep.injective,
            "surjective": rep.surjective,
            "preserves_operations": rep.preserves_operations,
            "passed": rep.passed(),
        }),
        ok: rep.passed(),
    })
}
