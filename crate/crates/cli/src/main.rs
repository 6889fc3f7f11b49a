//! `maxclass`: Betti numbers, cohomology bases and verification suites for
//! Lie algebras over GF(2), with built-in support for the maximal-class
//! families `m0` and `m2`.

mod algebra;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use lie_maxclass::cohomology::{
    betti_graded, betti_with, cohomology_basis_graded, cohomology_basis_with,
    independent_mod_coboundaries, is_cocycle, BettiReport,
};
use lie_maxclass::maxclass::{
    closed_betti, h2_basis_m0n, h2_basis_m2n, h3_basis_m0n, h3_basis_m2n, infinite_h_basis,
};
use lie_maxclass::verify::{Suite, SuiteReport};
use lie_maxclass::{e, Exec, Family, Form, GradedLieAlgebra};
use serde::Serialize;

use algebra::{resolve, AlgebraInfo, Target};
use report::{csv_table, json, markdown_table, Format};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Mismatch(String),
    #[error(transparent)]
    Core(#[from] lie_maxclass::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Mismatch(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "maxclass",
    version,
    about = "Cohomology of Lie algebras over GF(2)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Betti number b_q, optionally restricted to one degree.
    Betti {
        /// m0, m2, m0-infinite, m2-infinite or a path to an algebra file.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        degree: Option<u32>,
        /// Include canonical class representatives.
        #[arg(long)]
        reps: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Table of Betti numbers over a range of dimensions.
    Table {
        #[arg(long)]
        family: Family,
        /// Inclusive range `a..b`, or a single dimension.
        #[arg(long, value_parser = parse_range)]
        n: (u32, u32),
        /// Comma-separated ranks.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
        /// Compare every entry with the closed formula; exit 1 on mismatch.
        #[arg(long)]
        check_closed_form: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A basis of H^q, generic (linear algebra) or from explicit formulas.
    Basis {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        q: usize,
        #[arg(long, value_enum, default_value_t = Source::Generic)]
        source: Source,
        /// Degree cap for infinite algebras.
        #[arg(long, default_value_t = 30)]
        max_degree: u32,
        /// Check closedness, independence and count; exit 1 on failure.
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite: paper-table, closed-forms, interweaving,
    /// kernels, partitions, gf2-oracle or all.
    Verify {
        suite: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate an algebra file: grading and Jacobi identity.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Source {
    Generic,
    /// Closed-form constructions for m0 and m2.
    #[value(name = "paper")]
    #[serde(rename = "paper")]
    Explicit,
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u32 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad range start in `{s}`"))?;
    let b: u32 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad range end in `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

/// Rendered output plus an optional mismatch that turns into exit status 1.
struct Output {
    text: String,
    mismatch: Option<String>,
}

impl From<String> for Output {
    fn from(text: String) -> Self {
        Output {
            text,
            mismatch: None,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(e.exit_code());
    }
    let started = Instant::now();
    let (out, result) = match cli.command {
        Command::Betti {
            algebra,
            n,
            q,
            degree,
            reps,
            format,
            out,
        } => (
            out,
            cmd_betti(&algebra, n, q, degree, reps, format, started),
        ),
        Command::Table {
            family,
            n,
            q,
            format,
            check_closed_form,
            out,
        } => (
            out,
            cmd_table(family, n, &q, format, check_closed_form, started),
        ),
        Command::Basis {
            algebra,
            n,
            q,
            source,
            max_degree,
            verify,
            format,
            out,
        } => (
            out,
            cmd_basis(&algebra, n, q, source, max_degree, verify, format, started),
        ),
        Command::Verify { suite, format, out } => (out, cmd_verify(&suite, format, started)),
        Command::Check { file, format, out } => (out, cmd_check(&file, format, started)),
    };
    let output = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &output.text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{}", output.text),
    }
    match output.mismatch {
        Some(m) => {
            eprintln!("mismatch: {m}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("MAXCLASS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .parse()
        .map_err(|_| CliError::Usage(format!("MAXCLASS_THREADS must be a number, got `{raw}`")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = threads;
    Ok(())
}

fn betti_rows(reports: &[BettiReport]) -> (Vec<String>, Vec<Vec<String>>) {
    let header = ["q", "degree", "dim_ker", "dim_im_prev", "betti"]
        .map(String::from)
        .to_vec();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                r.q.to_string(),
                r.degree
                    .map_or_else(|| "all".to_string(), |k| k.to_string()),
                r.dim_ker.to_string(),
                r.dim_im_prev.to_string(),
                r.betti.to_string(),
            ]
        })
        .collect();
    (header, rows)
}

fn form_lines(forms: &[Form]) -> String {
    forms.iter().map(|f| format!("{f}\n")).collect()
}

#[derive(Serialize)]
struct BettiPayload {
    algebra: AlgebraInfo,
    command: &'static str,
    q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<u32>,
    results: Vec<BettiReport>,
}

fn cmd_betti(
    spec: &str,
    n: Option<u32>,
    q: usize,
    degree: Option<u32>,
    reps: bool,
    format: Format,
    started: Instant,
) -> Result<Output, CliError> {
    let (target, mut info) = resolve(spec, n)?;
    let exec = Exec::default();
    let report = match (&target, degree) {
        (Target::Infinite(family), Some(k)) => {
            info.max_degree = Some(k);
            let g = family.covering(k);
            graded_report(&g, q, k, reps)?
        }
        (Target::Infinite(_), None) => {
            return Err(CliError::Usage("an infinite algebra needs --degree".into()));
        }
        (Target::Finite { algebra, .. }, Some(k)) => {
            if !algebra.is_graded() {
                return Err(CliError::Usage("--degree needs a graded algebra".into()));
            }
            graded_report(algebra, q, k, reps)?
        }
        (Target::Finite { algebra, .. }, None) => {
            let r = betti_with(algebra, q, exec)?;
            if reps {
                r.with_representatives(cohomology_basis_with(algebra, q, exec)?)
            } else {
                r
            }
        }
    };
    let payload = BettiPayload {
        algebra: info,
        command: "betti",
        q,
        degree,
        results: vec![report],
    };
    let reps_text = |r: &BettiReport| {
        r.representatives
            .as_deref()
            .map(form_lines)
            .unwrap_or_default()
    };
    let text = match format {
        Format::Json => json(&payload, started),
        Format::Text => format!(
            "{}\n{}",
            payload.results[0].betti,
            reps_text(&payload.results[0])
        ),
        Format::Markdown => {
            let (h, rows) = betti_rows(&payload.results);
            let mut s = format!(
                "# {}\n\n{}",
                payload.algebra.name,
                markdown_table(&h, &rows)
            );
            if let Some(forms) = &payload.results[0].representatives {
                s.push('\n');
                s.extend(forms.iter().map(|f| format!("- `{f}`\n")));
            }
            s
        }
        Format::Csv => {
            let (h, rows) = betti_rows(&payload.results);
            csv_table(&h, &rows)
        }
    };
    Ok(text.into())
}

fn graded_report(
    g: &GradedLieAlgebra,
    q: usize,
    k: u32,
    reps: bool,
) -> Result<BettiReport, CliError> {
    let r = betti_graded(g, q, k)?;
    Ok(if reps {
        r.with_representatives(cohomology_basis_graded(g, q, k)?)
    } else {
        r
    })
}

#[derive(Serialize)]
struct TableEntry {
    q: usize,
    betti: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form: Option<u64>,
}

#[derive(Serialize)]
struct TableRow {
    n: u32,
    values: Vec<TableEntry>,
}

#[derive(Serialize)]
struct TablePayload {
    family: Family,
    command: &'static str,
    n_range: (u32, u32),
    q: Vec<usize>,
    check_closed_form: bool,
    rows: Vec<TableRow>,
    mismatches: Vec<String>,
}

fn cmd_table(
    family: Family,
    (lo, hi): (u32, u32),
    qs: &[usize],
    format: Format,
    check: bool,
    started: Instant,
) -> Result<Output, CliError> {
    if lo < family.min_dim() {
        return Err(CliError::Usage(format!(
            "{family}(n) needs n >= {}",
            family.min_dim()
        )));
    }
    if check && qs.iter().any(|&q| !(1..=3).contains(&q)) {
        return Err(CliError::Usage(
            "closed forms are known for q = 1, 2, 3".into(),
        ));
    }
    let mut qs = qs.to_vec();
    qs.sort_unstable();
    qs.dedup();
    let work: Vec<(u32, usize)> = (lo..=hi)
        .flat_map(|n| qs.iter().map(move |&q| (n, q)))
        .collect();
    let computed = Exec::default().map(work.clone(), |(n, q)| -> Result<usize, CliError> {
        Ok(betti_with(&family.truncation(n)?, q, Exec::Sequential)?.betti)
    });
    let mut rows: Vec<TableRow> = (lo..=hi)
        .map(|n| TableRow {
            n,
            values: Vec::new(),
        })
        .collect();
    let mut mismatches = Vec::new();
    for ((n, q), betti) in work.into_iter().zip(computed) {
        let betti = betti?;
        let closed_form = if check {
            Some(closed_betti(n, q)?)
        } else {
            None
        };
        if let Some(c) = closed_form {
            if c != betti as u64 {
                mismatches.push(format!("n={n} q={q}: computed {betti}, closed form {c}"));
            }
        }
        rows[(n - lo) as usize].values.push(TableEntry {
            q,
            betti,
            closed_form,
        });
    }
    let payload = TablePayload {
        family,
        command: "table",
        n_range: (lo, hi),
        q: qs.clone(),
        check_closed_form: check,
        rows,
        mismatches,
    };
    let mut header = vec!["n".to_string()];
    for q in &qs {
        header.push(format!("b{q}"));
        if check {
            header.push(format!("closed b{q}"));
        }
    }
    let cells: Vec<Vec<String>> = payload
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![r.n.to_string()];
            for v in &r.values {
                row.push(v.betti.to_string());
                row.extend(v.closed_form.map(|c| c.to_string()));
            }
            row
        })
        .collect();
    let text = match format {
        Format::Json => json(&payload, started),
        Format::Csv => csv_table(&header, &cells),
        Format::Markdown | Format::Text => markdown_table(&header, &cells),
    };
    let mismatch = (!payload.mismatches.is_empty()).then(|| payload.mismatches.join("; "));
    Ok(Output { text, mismatch })
}

#[derive(Serialize)]
struct BasisVerification {
    closed: bool,
    independent: bool,
    expected_count: usize,
    count_matches: bool,
}

impl BasisVerification {
    fn passed(&self) -> bool {
        self.closed && self.independent && self.count_matches
    }
}

#[derive(Serialize)]
struct BasisPayload {
    algebra: AlgebraInfo,
    command: &'static str,
    q: usize,
    source: Source,
    count: usize,
    forms: Vec<Form>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<BasisVerification>,
}

fn explicit_basis(family: Family, n: u32, q: usize) -> Result<Vec<Form>, CliError> {
    match (family, q) {
        (_, 0) => Ok(vec![Form::one()]),
        (_, 1) => Ok(vec![e(&[1]), e(&[2])]),
        (Family::M0, 2) => Ok(h2_basis_m0n(n)?),
        (Family::M2, 2) => Ok(h2_basis_m2n(n)?),
        (Family::M0, 3) => Ok(h3_basis_m0n(n)?),
        (Family::M2, 3) => Ok(h3_basis_m2n(n)?),
        _ => Err(CliError::Usage(format!(
            "no explicit basis for {family}(n) in rank {q}; use --source generic"
        ))),
    }
}

fn verify_finite(
    g: &GradedLieAlgebra,
    q: usize,
    forms: &[Form],
) -> Result<BasisVerification, CliError> {
    let expected_count = betti_with(g, q, Exec::default())?.betti;
    let mut closed = true;
    for f in forms {
        closed &= is_cocycle(g, f)?;
    }
    Ok(BasisVerification {
        closed,
        independent: closed && independent_mod_coboundaries(g, forms)?,
        expected_count,
        count_matches: forms.len() == expected_count,
    })
}

fn verify_infinite(
    family: Family,
    q: usize,
    max_degree: u32,
    forms: &[Form],
) -> Result<BasisVerification, CliError> {
    let mut v = BasisVerification {
        closed: true,
        independent: true,
        expected_count: 0,
        count_matches: true,
    };
    for k in 0..=max_degree {
        let g = family.covering(k.max(1));
        let in_degree: Vec<Form> = forms
            .iter()
            .filter(|f| f.uniform_degree() == Some(k))
            .cloned()
            .collect();
        let expected = betti_graded(&g, q, k)?.betti;
        v.expected_count += expected;
        for f in &in_degree {
            v.closed &= is_cocycle(&g, f)?;
        }
        if v.closed {
            v.independent &= independent_mod_coboundaries(&g, &in_degree)?;
        }
    }
    v.independent &= v.closed;
    v.count_matches = forms.len() == v.expected_count;
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn cmd_basis(
    spec: &str,
    n: Option<u32>,
    q: usize,
    source: Source,
    max_degree: u32,
    verify: bool,
    format: Format,
    started: Instant,
) -> Result<Output, CliError> {
    let (target, mut info) = resolve(spec, n)?;
    let (forms, verification) = match &target {
        Target::Infinite(family) => {
            info.max_degree = Some(max_degree);
            let forms = match source {
                Source::Explicit => {
                    infinite_h_basis(q, max_degree).map_err(|e| CliError::Usage(e.to_string()))?
                }
                Source::Generic => {
                    let per_degree = Exec::default().map((0..=max_degree).collect(), |k| {
                        cohomology_basis_graded(&family.covering(k.max(1)), q, k)
                    });
                    per_degree
                        .into_iter()
                        .collect::<Result<Vec<_>, _>>()?
                        .concat()
                }
            };
            let v = if verify {
                Some(verify_infinite(*family, q, max_degree, &forms)?)
            } else {
                None
            };
            (forms, v)
        }
        Target::Finite { algebra, family } => {
            let forms = match (source, family) {
                (Source::Generic, _) => cohomology_basis_with(algebra, q, Exec::default())?,
                (Source::Explicit, Some(fam)) => explicit_basis(*fam, algebra.dim(), q)?,
                (Source::Explicit, None) => {
                    return Err(CliError::Usage("--source paper needs m0 or m2".into()));
                }
            };
            let v = if verify {
                Some(verify_finite(algebra, q, &forms)?)
            } else {
                None
            };
            (forms, v)
        }
    };
    let payload = BasisPayload {
        algebra: info,
        command: "basis",
        q,
        source,
        count: forms.len(),
        forms,
        verification,
    };
    let verdict = payload.verification.as_ref().map(|v| {
        format!(
            "closed: {}, independent: {}, count {} (expected {})\n",
            v.closed, v.independent, payload.count, v.expected_count
        )
    });
    let text = match format {
        Format::Json => json(&payload, started),
        Format::Text => form_lines(&payload.forms) + verdict.as_deref().unwrap_or(""),
        Format::Markdown => {
            let mut s = format!("# H^{} of {}\n\n", q, payload.algebra.name);
            s.extend(payload.forms.iter().map(|f| format!("- `{f}`\n")));
            if let Some(v) = &verdict {
                s.push('\n');
                s.push_str(v);
            }
            s
        }
        Format::Csv => {
            let mut s = "degree,form\n".to_string();
            for f in &payload.forms {
                let degree = f
                    .uniform_degree()
                    .map_or_else(String::new, |k| k.to_string());
                s.push_str(&format!("{degree},\"{f}\"\n"));
            }
            s
        }
    };
    let mismatch = payload
        .verification
        .as_ref()
        .filter(|v| !v.passed())
        .map(|_| verdict.clone().unwrap_or_default().trim().to_string());
    Ok(Output { text, mismatch })
}

fn cmd_verify(name: &str, format: Format, started: Instant) -> Result<Output, CliError> {
    let suites: Vec<Suite> = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![name
            .parse()
            .map_err(|e: lie_maxclass::Error| CliError::Usage(e.to_string()))?]
    };
    let reports: Vec<SuiteReport> = suites.into_iter().map(|s| s.run(Exec::default())).collect();
    let failures: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.checks
                .iter()
                .filter(|c| !c.passed)
                .map(move |c| format!("{}: {}", r.suite, c.property))
        })
        .collect();
    let text = match format {
        Format::Json => json(&reports, started),
        Format::Csv => {
            let header = ["suite", "property", "passed", "counterexample"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = reports
                .iter()
                .flat_map(|r| {
                    r.checks.iter().map(move |c| {
                        vec![
                            r.suite.to_string(),
                            format!("\"{}\"", c.property),
                            c.passed.to_string(),
                            format!("\"{}\"", c.counterexample.clone().unwrap_or_default()),
                        ]
                    })
                })
                .collect();
            csv_table(&header, &rows)
        }
        Format::Text | Format::Markdown => {
            let mut s = String::new();
            for r in &reports {
                for c in &r.checks {
                    s.push_str(&format!(
                        "[{}] {}: {}\n",
                        if c.passed { "PASS" } else { "FAIL" },
                        r.suite,
                        c.property
                    ));
                    if let Some(ce) = &c.counterexample {
                        s.push_str(&format!("       counterexample: {ce}\n"));
                    }
                }
            }
            s
        }
    };
    let mismatch = (!failures.is_empty()).then(|| failures.join("; "));
    Ok(Output { text, mismatch })
}

#[derive(Serialize)]
struct CheckPayload {
    file: String,
    dim: u32,
    brackets: usize,
    graded: bool,
    valid: bool,
    violations: lie_maxclass::lie::ValidationReport,
}

fn cmd_check(path: &std::path::Path, format: Format, started: Instant) -> Result<Output, CliError> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let g = GradedLieAlgebra::parse(&src)?;
    let report = g.validate();
    let payload = CheckPayload {
        file: path.display().to_string(),
        dim: g.dim(),
        brackets: g.brackets().count(),
        graded: g.is_graded(),
        valid: report.is_valid(),
        violations: report,
    };
    let text = match format {
        Format::Json => json(&payload, started),
        _ => format!("{}\n", payload.violations),
    };
    let mismatch =
        (!payload.valid).then(|| format!("{} is not a valid graded Lie algebra", payload.file));
    Ok(Output { text, mismatch })
}
