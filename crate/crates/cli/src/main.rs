//! `ricci`: exact Ollivier–Ricci curvature, gluing sweeps and the
//! verification suite from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 invalid input or
//! usage.

mod report;

use std::fs;
use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use ricci_core::curvature::{self, CurvatureError};
use ricci_core::gluing::{self, EdgeClass, GluingError, GluingSpec};
use ricci_core::graph::GraphError;
use ricci_core::spectral::{self, Normalization, SizeConstraint, SpectralError};
use ricci_core::verify::{self, VerifyError, VerifyOptions, VerifyReport};
use ricci_core::Graph;
use thiserror::Error;

use report::{CheckRow, CheegerOut, CurvatureRow, Format, SpectralOut, SweepRow};

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Input { path: String, source: GraphError },
    #[error(transparent)]
    Gluing(#[from] GluingError),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("failed to start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

#[derive(Parser, Debug)]
#[command(name = "ricci", version, about = "Exact Ollivier-Ricci curvature on finite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Curvature, Jost-Liu bounds and W for every edge.
    Curvature {
        #[command(flatten)]
        source: GraphSource,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Minimum edge curvature of K_n +_m K'_n over ranges of n and m.
    GluingSweep {
        /// Inclusive range `a..b`, or a single value.
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<usize>,
        /// Restrict m (default: 1..n-1 for every n).
        #[arg(long, value_parser = parse_range)]
        m: Option<RangeInclusive<usize>>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the check suite for each n; exit 1 on the first counterexample.
    Verify {
        #[arg(long, value_parser = parse_range, default_value = "5..9")]
        n: RangeInclusive<usize>,
        /// Test hook: make the positivity prediction non-strict.
        #[arg(long)]
        inject_off_by_one: bool,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Normalized Laplacian gap and minimum edge curvature.
    Spectral {
        #[command(flatten)]
        source: GraphSource,
        /// Also report the spectrum of D - A.
        #[arg(long)]
        unnormalized: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive Cheeger constant (at most 20 vertices).
    Cheeger {
        #[command(flatten)]
        source: GraphSource,
        /// Allow |A| = |V|/2.
        #[arg(long, conflicts_with = "conductance")]
        relaxed: bool,
        /// Normalize by volume instead of size.
        #[arg(long)]
        conductance: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphSource {
    /// Edge-list file (`u v` per line, `#` comments); `-` reads stdin.
    #[arg(long)]
    input: Option<PathBuf>,
    /// The gluing K_n +_m K'_n, written `n=<int>,m=<int>`.
    #[arg(long, value_parser = parse_gluing)]
    gluing: Option<(usize, usize)>,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Output file; `-` for stdout (the default).
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let bad = || format!("expected `a..b` or an integer, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok(a..=b)
}

fn parse_gluing(s: &str) -> Result<(usize, usize), String> {
    let mut n = None;
    let mut m = None;
    for part in s.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected `n=<int>,m=<int>`, got {s:?}"))?;
        let value: usize = value.trim().parse().map_err(|_| format!("invalid integer in {part:?}"))?;
        match key.trim() {
            "n" => n = Some(value),
            "m" => m = Some(value),
            other => return Err(format!("unknown gluing parameter {other:?}")),
        }
    }
    match (n, m) {
        (Some(n), Some(m)) => Ok((n, m)),
        _ => Err(format!("both n and m are required, got {s:?}")),
    }
}

const N_LIMITS: RangeInclusive<usize> = 2..=20;

fn check_n_range(range: &RangeInclusive<usize>) -> Result<(), CliError> {
    if range.start() < N_LIMITS.start() || range.end() > N_LIMITS.end() {
        return Err(CliError::Usage(format!(
            "n range {}..{} is outside {}..{}",
            range.start(),
            range.end(),
            N_LIMITS.start(),
            N_LIMITS.end()
        )));
    }
    Ok(())
}

fn gluing_spec((n, m): (usize, usize)) -> Result<GluingSpec, CliError> {
    check_n_range(&(n..=n))?;
    Ok(GluingSpec::new(n, m)?)
}

/// The graph and, for gluings, the spec used to label edge classes.
fn load_graph(source: &GraphSource) -> Result<(Graph, Option<GluingSpec>), CliError> {
    if let Some(params) = source.gluing {
        let spec = gluing_spec(params)?;
        return Ok((gluing::build_gluing(spec), Some(spec)));
    }
    let path = source.input.as_ref().expect("clap enforces one source");
    let shown = path.display().to_string();
    let text = if shown == "-" {
        io::read_to_string(io::stdin())
    } else {
        fs::read_to_string(path)
    }
    .map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let graph = Graph::from_edge_list(&text).map_err(|source| CliError::Input { path: shown, source })?;
    Ok((graph, None))
}

fn emit(out: &OutputArgs, body: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) if path.as_os_str() != "-" => fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        _ => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn pool(jobs: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(k) = jobs {
        if k == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        builder = builder.num_threads(k);
    }
    Ok(builder.build()?)
}

fn cmd_curvature(source: &GraphSource, out: &OutputArgs) -> Result<(), CliError> {
    let (g, spec) = load_graph(source)?;
    let mut rows = Vec::with_capacity(g.edge_count());
    for r in curvature::edge_curvatures(&g)? {
        let bounds = r.jost_liu.expect("edges carry Jost-Liu bounds");
        let class = match spec {
            Some(spec) => Some(gluing::classify_edge(spec, (r.x, r.y))?.name()),
            None => None,
        };
        rows.push(CurvatureRow {
            x: r.x,
            y: r.y,
            class,
            kappa: r.kappa.into(),
            jl_lower: bounds.lower.into(),
            jl_upper: bounds.upper.into(),
            wasserstein: r.wasserstein.into(),
        });
    }
    let body = match out.format {
        Format::Csv => report::curvature_csv(&rows),
        Format::Text => report::curvature_text(&rows),
        Format::Json => report::json_document(
            "curvature",
            serde_json::json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "rows": rows,
            }),
        ),
    };
    emit(out, &body)
}

fn sweep_row(spec: GluingSpec) -> Result<SweepRow, CliError> {
    let g = gluing::build_gluing(spec);
    let (kappa, edge) = curvature::min_edge_curvature(&g)?;
    let class: EdgeClass = gluing::classify_edge(spec, edge)?;
    let is_m = gluing::positivity_window(spec.n())
        .map(|w| w.smallest_m == spec.m())
        .unwrap_or(false);
    Ok(SweepRow {
        n: spec.n(),
        m: spec.m(),
        kappa_min: kappa.into(),
        argmin_class: class.name(),
        argmin_edge: edge,
        positive: kappa > ricci_core::Rational::from_integer(0),
        is_m,
    })
}

fn cmd_sweep(
    n: &RangeInclusive<usize>,
    m: &Option<RangeInclusive<usize>>,
    jobs: Option<usize>,
    out: &OutputArgs,
) -> Result<(), CliError> {
    check_n_range(n)?;
    let mut specs = Vec::new();
    for ni in n.clone() {
        let ms = m.clone().unwrap_or(1..=ni - 1);
        for mi in ms {
            if mi >= 1 && mi < ni {
                specs.push(GluingSpec::new(ni, mi)?);
            } else if m.is_some() {
                return Err(GluingError::InvalidSpec { n: ni, m: mi }.into());
            }
        }
    }
    let rows: Vec<SweepRow> = pool(jobs)?.install(|| {
        specs
            .par_iter()
            .map(|&spec| sweep_row(spec))
            .collect::<Result<_, _>>()
    })?;
    let body = match out.format {
        Format::Csv => report::sweep_csv(&rows),
        Format::Text => report::sweep_text(&rows),
        Format::Json => report::json_document("gluing-sweep", serde_json::json!({ "rows": rows })),
    };
    emit(out, &body)
}

/// Returns whether every check passed.
fn cmd_verify(
    n: &RangeInclusive<usize>,
    inject_off_by_one: bool,
    jobs: Option<usize>,
    out: &OutputArgs,
) -> Result<bool, CliError> {
    if *n.start() < 5 {
        return Err(GluingError::NTooSmall(*n.start()).into());
    }
    let options = VerifyOptions { inject_off_by_one };
    let ns: Vec<usize> = n.clone().collect();
    let reports: Vec<VerifyReport> = pool(jobs)?.install(|| {
        ns.par_iter()
            .map(|&ni| verify::verify_n(ni, options))
            .collect::<Result<_, _>>()
    })?;
    let first = reports.iter().find_map(|r| r.first_failure());
    let passed = first.is_none();
    let counted = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.informational)
        .count();
    let failed = reports
        .iter()
        .flat_map(|r| &r.checks)
        .filter(|c| !c.informational && !c.passed)
        .count();

    let body = match out.format {
        Format::Json => {
            let rows: Vec<CheckRow> = reports
                .iter()
                .flat_map(|r| &r.checks)
                .map(|c| CheckRow {
                    n: c.n,
                    m: c.m,
                    section: c.section.name(),
                    subject: c.subject.clone(),
                    expected: c.expected.clone(),
                    actual: c.actual.clone(),
                    passed: c.passed,
                    informational: c.informational,
                })
                .collect();
            report::json_document(
                "verify",
                serde_json::json!({
                    "passed": passed,
                    "checks_total": counted,
                    "checks_failed": failed,
                    "first_failure": first.map(|c| c.to_string()),
                    "checks": rows,
                }),
            )
        }
        Format::Text | Format::Csv => {
            let mut s = String::new();
            for check in reports.iter().flat_map(|r| &r.checks) {
                s.push_str(&check.to_string());
                s.push('\n');
            }
            match first {
                None => s.push_str(&format!("verify: PASS ({counted} checks)\n")),
                Some(c) => {
                    let at = match c.m {
                        Some(m) => format!("({}, {m})", c.n),
                        None => format!("n = {}", c.n),
                    };
                    s.push_str(&format!(
                        "verify: FAIL ({failed} of {counted} checks); first counterexample at {at}: {c}\n"
                    ));
                }
            }
            s
        }
    };
    emit(out, &body)?;
    if let Some(c) = first {
        eprintln!("counterexample: {c}");
    }
    Ok(passed)
}

fn cmd_spectral(source: &GraphSource, unnormalized: bool, out: &OutputArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(source)?;
    let report = spectral::normalized_laplacian_gap(&g)?;
    let combinatorial = if unnormalized {
        Some(spectral::unnormalized_laplacian_spectrum(&g)?)
    } else {
        None
    };
    let data = SpectralOut {
        lambda1: report::eigen12(report.lambda1),
        kappa_min: report.kappa_min.into(),
        eigen_residual: report::sig12(report.eigen_residual),
        eigenvalues: report.eigenvalues.iter().map(|&x| report::eigen12(x)).collect(),
        unnormalized_gap: combinatorial.as_ref().map(|s| report::eigen12(s.gap())),
        unnormalized_eigenvalues: combinatorial
            .as_ref()
            .map(|s| s.eigenvalues.iter().map(|&x| report::eigen12(x)).collect()),
    };
    let list = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let body = match out.format {
        Format::Json => report::json_document("spectral", serde_json::to_value(&data).expect("serializable")),
        Format::Csv => {
            let mut s = String::from("quantity,value\n");
            s.push_str(&format!("lambda1,{}\n", data.lambda1));
            s.push_str(&format!("kappa_min_num,{}\nkappa_min_den,{}\n", data.kappa_min.num, data.kappa_min.den));
            s.push_str(&format!("eigen_residual,{}\n", data.eigen_residual));
            if let Some(gap) = data.unnormalized_gap {
                s.push_str(&format!("unnormalized_gap,{gap}\n"));
            }
            s
        }
        Format::Text => {
            let mut s = format!(
                "lambda1         {}\nkappa_min       {}\neigen_residual  {:e}\neigenvalues     {}\n",
                data.lambda1,
                data.kappa_min,
                data.eigen_residual,
                list(&data.eigenvalues).join(" ")
            );
            if let (Some(gap), Some(values)) = (data.unnormalized_gap, &data.unnormalized_eigenvalues) {
                s.push_str(&format!("D-A gap         {gap}\nD-A spectrum    {}\n", list(values).join(" ")));
            }
            s
        }
    };
    emit(out, &body)
}

fn cmd_cheeger(source: &GraphSource, relaxed: bool, conductance: bool, out: &OutputArgs) -> Result<(), CliError> {
    let (g, _) = load_graph(source)?;
    let (normalization, variant) = match (relaxed, conductance) {
        (_, true) => (Normalization::Volume, "conductance"),
        (true, false) => (Normalization::Size(SizeConstraint::AtMostHalf), "size, |A| <= |V|/2"),
        (false, false) => (Normalization::Size(SizeConstraint::StrictHalf), "size, |A| < |V|/2"),
    };
    let r = spectral::cheeger_with(&g, normalization)?;
    let data = CheegerOut {
        variant,
        value: r.value.into(),
        argmin_set: r.argmin_set,
        boundary_edges: r.boundary_edges,
        denominator: r.denominator,
    };
    let set = data.argmin_set.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let body = match out.format {
        Format::Json => report::json_document("cheeger", serde_json::to_value(&data).expect("serializable")),
        Format::Csv => format!(
            "variant,value_num,value_den,boundary_edges,denominator,argmin_set\n{},{},{},{},{},{set}\n",
            data.variant, data.value.num, data.value.den, data.boundary_edges, data.denominator
        ),
        Format::Text => format!(
            "h ({})  {}\nargmin set      {{{set}}}\nboundary edges  {}\ndenominator     {}\n",
            data.variant, data.value, data.boundary_edges, data.denominator
        ),
    };
    emit(out, &body)
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match &cli.command {
        Command::Curvature { source, out } => cmd_curvature(source, out).map(|_| true),
        Command::GluingSweep { n, m, jobs, out } => cmd_sweep(n, m, *jobs, out).map(|_| true),
        Command::Verify {
            n,
            inject_off_by_one,
            jobs,
            out,
        } => cmd_verify(n, *inject_off_by_one, *jobs, out),
        Command::Spectral {
            source,
            unnormalized,
            out,
        } => cmd_spectral(source, *unnormalized, out).map(|_| true),
        Command::Cheeger {
            source,
            relaxed,
            conductance,
            out,
        } => cmd_cheeger(source, *relaxed, *conductance, out).map(|_| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
