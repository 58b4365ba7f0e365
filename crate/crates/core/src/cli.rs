//! The `fpgraph` command line. [`run`] does all the work and returns what
//! should be printed plus the exit status, so tests can drive it in-process.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::certify::{
    certify_phi, certify_psi1, certify_psi2, check_hypotheses, CertifyError, CertifyOptions,
};
use crate::gauge::{classify_phi, GaugeError, GaugeFunction};
use crate::instance::{
    parse_gauge_document, parse_instance, Instance, InstanceBody, InstanceErrors,
};
use crate::maps::SetMap;
use crate::metric::{AxiomViolation, ClosedInterval};
use crate::report::{
    CertifyDoc, EnumerateDoc, Format, GaugeDoc, GaugeReportDoc, Report, SolveDoc, ValidateDoc,
    VerdictDoc, EXIT_STRUCTURAL, EXIT_USAGE,
};
use crate::solver::{
    enumerate_coincidence_points, enumerate_common_fixed_points, jungck_iterate, picard_iterate,
    SolverError,
};
use crate::universe::{FiniteUniverse, IntervalUniverse, Universe};

#[derive(Debug, Parser)]
#[command(
    name = "fpgraph",
    version,
    about = "Certify graph-contraction hypotheses on hyperspaces of finite and interval examples"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: FormatArg,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Psi1,
    Psi2,
    Phi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapArg {
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Psi,
    Phi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an instance and check the metric axioms.
    Validate { file: PathBuf },
    /// Sweep every edged pair and check the side conditions.
    Certify {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Also sweep pairs joined through the symmetrised graph.
        #[arg(long)]
        undirected_lift: bool,
        file: PathBuf,
    },
    /// Run the coincidence iteration from a start set.
    Solve {
        /// Set literal such as `{1,3}`, or an interval such as `[0,5]`.
        #[arg(long)]
        start: String,
        /// Transition budget; defaults to the size of the swept family.
        #[arg(long)]
        max_steps: Option<usize>,
        /// Iterate a single map instead.
        #[arg(long, value_enum)]
        picard: Option<MapArg>,
        file: PathBuf,
    },
    /// List coincidence points and fixed points over the swept family.
    Enumerate { file: PathBuf },
    /// Classify a standalone gauge document.
    Gauge {
        #[arg(long, value_enum, default_value = "psi")]
        class: ClassArg,
        file: PathBuf,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Instance(#[from] InstanceErrors),
    #[error("metric axioms fail:\n{}", list(.0))]
    Metric(Vec<AxiomViolation>),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error("{0}")]
    Usage(String),
}

fn list(v: &[AxiomViolation]) -> String {
    v.iter()
        .map(|x| format!("  {x}"))
        .collect::<Vec<_>>()
        .join("\n")
}

impl CliError {
    pub fn exit_status(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Solver(_) => EXIT_USAGE,
            _ => EXIT_STRUCTURAL,
        }
    }
}

/// What a finished command prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

pub fn run(cli: &Cli) -> Outcome {
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Machine => Format::Machine,
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            stdout: report.render(format),
            stderr: String::new(),
            status: report.exit_status(),
        },
        Err(e) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            status: e.exit_status(),
        },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<Instance, CliError> {
    Ok(parse_instance(&read(path)?)?)
}

/// Certification and solving need a genuine metric.
fn require_metric(inst: &Instance) -> Result<(), CliError> {
    if let InstanceBody::Finite(f) = &inst.body {
        let v = f.space.validate();
        if !v.is_empty() {
            return Err(CliError::Metric(v));
        }
    }
    Ok(())
}

fn execute(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Validate { file } => {
            let inst = load(file)?;
            Ok(Report::Validate(match &inst.body {
                InstanceBody::Finite(f) => {
                    ValidateDoc::new(&inst.name, "finite", f.space.len(), &f.space.validate())
                }
                InstanceBody::Interval(i) => {
                    ValidateDoc::new(&inst.name, "interval", i.probes.len(), &[])
                }
            }))
        }
        Command::Certify {
            kind,
            undirected_lift,
            file,
        } => {
            let inst = load(file)?;
            require_metric(&inst)?;
            let opts = CertifyOptions {
                undirected_lift: *undirected_lift || inst.options.undirected_lift,
                classify: inst.options.classify.clone(),
            };
            match &inst.body {
                InstanceBody::Finite(f) => {
                    let u = FiniteUniverse::new(&f.space, &f.graph);
                    certify(&u, &f.s, &f.t, &inst, *kind, &opts)
                }
                InstanceBody::Interval(i) => {
                    let u = IntervalUniverse::new(&i.probes, &i.graph);
                    certify(&u, &i.s, &i.t, &inst, *kind, &opts)
                }
            }
        }
        Command::Solve {
            start,
            max_steps,
            picard,
            file,
        } => {
            let inst = load(file)?;
            require_metric(&inst)?;
            match &inst.body {
                InstanceBody::Finite(f) => {
                    let a0 = f
                        .space
                        .parse_set(start)
                        .map_err(|e| CliError::Usage(format!("--start {start}: {e}")))?;
                    let u = FiniteUniverse::new(&f.space, &f.graph);
                    solve(&u, &f.s, &f.t, &inst.name, &a0, *max_steps, *picard)
                }
                InstanceBody::Interval(i) => {
                    let a0: ClosedInterval = start
                        .parse()
                        .map_err(|e| CliError::Usage(format!("--start {start}: {e}")))?;
                    let u = IntervalUniverse::new(&i.probes, &i.graph);
                    solve(&u, &i.s, &i.t, &inst.name, &a0, *max_steps, *picard)
                }
            }
        }
        Command::Enumerate { file } => {
            let inst = load(file)?;
            require_metric(&inst)?;
            match &inst.body {
                InstanceBody::Finite(f) => enumerate(
                    &FiniteUniverse::new(&f.space, &f.graph),
                    &f.s,
                    &f.t,
                    &inst.name,
                ),
                InstanceBody::Interval(i) => enumerate(
                    &IntervalUniverse::new(&i.probes, &i.graph),
                    &i.s,
                    &i.t,
                    &inst.name,
                ),
            }
        }
        Command::Gauge { class, file } => {
            let doc = parse_gauge_document(&read(file)?)?;
            let gauge = classify(&doc.gauge, *class, &doc.classify)?;
            Ok(Report::Gauge(GaugeReportDoc::new(&doc.name, gauge)))
        }
    }
}

fn classify(
    g: &GaugeFunction,
    class: ClassArg,
    opts: &crate::gauge::ClassifyOptions,
) -> Result<GaugeDoc, CliError> {
    Ok(match class {
        ClassArg::Psi => GaugeDoc::psi(&g.classify(opts)?, g),
        ClassArg::Phi => GaugeDoc::phi(&classify_phi(g), g),
    })
}

fn certify<U, M>(
    u: &U,
    s: &M,
    t: &M,
    inst: &Instance,
    kind: KindArg,
    opts: &CertifyOptions,
) -> Result<Report, CliError>
where
    U: Universe,
    M: SetMap<U::Set>,
{
    let report = match kind {
        KindArg::Psi1 => certify_psi1(u, s, t, &inst.gauge, opts)?,
        KindArg::Psi2 => {
            let p = inst.params.as_ref().ok_or_else(|| {
                CliError::Usage(format!(
                    "--kind psi2 needs params, and {} has none",
                    inst.name
                ))
            })?;
            certify_psi2(u, s, t, &inst.gauge, p, opts)?
        }
        KindArg::Phi => certify_phi(u, t, &inst.gauge, opts)?,
    };
    Ok(Report::Certify(CertifyDoc::new(&inst.name, &report, |x| {
        u.show(x)
    })))
}

fn solve<U, M>(
    u: &U,
    s: &M,
    t: &M,
    name: &str,
    a0: &U::Set,
    max_steps: Option<usize>,
    picard: Option<MapArg>,
) -> Result<Report, CliError>
where
    U: Universe,
    M: SetMap<U::Set>,
{
    let family = u.family();
    let budget = max_steps.unwrap_or(family.len().max(1));
    let (label, trace) = match picard {
        None => ("jungck", jungck_iterate(s, t, &family, a0, budget)?),
        Some(MapArg::S) => ("picard-S", picard_iterate(s, a0, budget)?),
        Some(MapArg::T) => ("picard-T", picard_iterate(t, a0, budget)?),
    };
    Ok(Report::Solve(SolveDoc::new(
        name,
        label,
        a0,
        budget,
        &trace,
        |x| u.show(x),
    )))
}

fn enumerate<U, M>(u: &U, s: &M, t: &M, name: &str) -> Result<Report, CliError>
where
    U: Universe,
    M: SetMap<U::Set>,
{
    let family = u.family();
    let cp = enumerate_coincidence_points(s, t, &family);
    let fixed = enumerate_common_fixed_points(s, t, &family);
    let checks = check_hypotheses(u, s, t)?;
    let compat = checks
        .iter()
        .find(|c| c.name == "weak_compatibility")
        .map(|c| VerdictDoc::from(&c.verdict))
        .expect("always checked");
    Ok(Report::Enumerate(EnumerateDoc::new(
        name,
        family.len(),
        &cp,
        &fixed,
        compat,
        |x| u.show(x),
    )))
}
