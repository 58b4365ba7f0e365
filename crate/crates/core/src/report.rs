//! Report documents for each command, rendered as text or as a stable JSON
//! schema. Both renderings come from the same document value, and the exit
//! status is a function of that value alone.

use std::fmt::Write as _;

use serde::Serialize;

use crate::certify::{CertificationReport, Check, GaugeSummary, Overall, Verdict};
use crate::gauge::{
    Check as GaugeCheck, GaugeFunction, GaugeVerdict, GaugeWitness, Membership, PhiVerdict,
    SeriesCheck,
};
use crate::graph::Lift;
use crate::metric::AxiomViolation;
use crate::rational::Rational;
use crate::solver::{FixedPoints, IterationTrace, Termination};

pub const REPORT_SCHEMA: &str = "fpgraph-report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_CAVEATS: i32 = 2;
pub const EXIT_STRUCTURAL: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictDoc {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerdictDoc {
    fn new(verdict: &str, witness: Option<String>) -> Self {
        VerdictDoc {
            verdict: verdict.to_string(),
            witness,
        }
    }
}

fn gauge_check<W>(c: &GaugeCheck<W>, show: impl Fn(&W) -> String) -> VerdictDoc {
    match c {
        GaugeCheck::Verified => VerdictDoc::new("verified", None),
        GaugeCheck::Refuted(w) => VerdictDoc::new("refuted", Some(show(w))),
        GaugeCheck::Inconclusive(why) => VerdictDoc::new("inconclusive", Some(why.clone())),
    }
}

fn membership(m: &Membership, g: &GaugeFunction, symbol: &str) -> VerdictDoc {
    match m {
        Membership::Verified => VerdictDoc::new("verified", None),
        Membership::Refuted(w) => VerdictDoc::new("refuted", Some(w.describe(g, symbol))),
        Membership::Inconclusive => VerdictDoc::new("inconclusive", None),
    }
}

fn witness(w: GaugeWitness, g: &GaugeFunction, symbol: &str) -> String {
    w.describe(g, symbol)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaugeDoc {
    pub class: String,
    pub nondecreasing: VerdictDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper_semicontinuous: Option<VerdictDoc>,
    pub below_identity: VerdictDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_convergent: Option<VerdictDoc>,
    pub member: VerdictDoc,
}

impl GaugeDoc {
    pub fn psi(v: &GaugeVerdict, g: &GaugeFunction) -> Self {
        let series = match &v.series_convergent {
            SeriesCheck::Verified => VerdictDoc::new("verified", None),
            SeriesCheck::Evidence => VerdictDoc::new("evidence", None),
            SeriesCheck::Refuted(s) => VerdictDoc::new(
                "refuted",
                Some(witness(
                    GaugeWitness::SeriesDiverges { s: s.clone() },
                    g,
                    "psi",
                )),
            ),
            SeriesCheck::Inconclusive => VerdictDoc::new("inconclusive", None),
        };
        GaugeDoc {
            class: "Psi".to_string(),
            nondecreasing: gauge_check(&v.nondecreasing, |(t1, t2)| {
                witness(
                    GaugeWitness::Decreasing {
                        t1: t1.clone(),
                        t2: t2.clone(),
                    },
                    g,
                    "psi",
                )
            }),
            upper_semicontinuous: None,
            below_identity: gauge_check(&v.below_identity, |t| {
                witness(GaugeWitness::NotBelowIdentity { t: t.clone() }, g, "psi")
            }),
            series_convergent: Some(series),
            member: membership(&v.in_psi, g, "psi"),
        }
    }

    pub fn phi(v: &PhiVerdict, g: &GaugeFunction) -> Self {
        GaugeDoc {
            class: "Phi".to_string(),
            nondecreasing: gauge_check(&v.nondecreasing, |(t1, t2)| {
                witness(
                    GaugeWitness::Decreasing {
                        t1: t1.clone(),
                        t2: t2.clone(),
                    },
                    g,
                    "phi",
                )
            }),
            upper_semicontinuous: Some(gauge_check(&v.upper_semicontinuous, |t| {
                witness(
                    GaugeWitness::NotUpperSemicontinuous { t: t.clone() },
                    g,
                    "phi",
                )
            })),
            below_identity: gauge_check(&v.below_identity, |t| {
                witness(GaugeWitness::NotBelowIdentity { t: t.clone() }, g, "phi")
            }),
            series_convergent: None,
            member: membership(&v.in_phi, g, "phi"),
        }
    }

    fn exit_status(&self) -> i32 {
        match self.member.verdict.as_str() {
            "verified" => EXIT_OK,
            "refuted" => EXIT_REFUTED,
            _ => EXIT_CAVEATS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckDoc {
    pub name: String,
    pub role: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl From<&Check> for CheckDoc {
    fn from(c: &Check) -> Self {
        CheckDoc {
            name: c.name.to_string(),
            role: c.role.label().to_string(),
            verdict: c.verdict.label().to_string(),
            witness: c.verdict.witness().map(str::to_string),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairDoc {
    pub a: String,
    pub b: String,
    pub lhs: Rational,
    pub m: Rational,
    pub bound: Rational,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepDoc {
    pub lift: String,
    pub pairs: usize,
    pub failures: usize,
    pub records: Vec<PairDoc>,
}

fn lift_name(l: Lift) -> &'static str {
    match l {
        Lift::Directed => "directed",
        Lift::Undirected => "undirected",
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifyDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub instance: String,
    pub kind: String,
    pub overall: String,
    pub exit_status: i32,
    pub gauge: GaugeDoc,
    pub checks: Vec<CheckDoc>,
    pub sweeps: Vec<SweepDoc>,
}

pub fn certify_exit_status(o: Overall) -> i32 {
    match o {
        Overall::Certified => EXIT_OK,
        Overall::Refuted => EXIT_REFUTED,
        Overall::CertifiedWithCaveats => EXIT_CAVEATS,
    }
}

impl CertifyDoc {
    pub fn new<S>(
        instance: &str,
        report: &CertificationReport<S>,
        show: impl Fn(&S) -> String,
    ) -> Self {
        let gauge = match &report.gauge {
            GaugeSummary::Psi(v) => GaugeDoc::psi(v, &report.function),
            GaugeSummary::Phi(v) => GaugeDoc::phi(v, &report.function),
        };
        CertifyDoc {
            schema: REPORT_SCHEMA,
            command: "certify",
            instance: instance.to_string(),
            kind: report.kind.name().to_string(),
            overall: report.overall.label().to_string(),
            exit_status: certify_exit_status(report.overall),
            gauge,
            checks: report.checks.iter().map(CheckDoc::from).collect(),
            sweeps: report
                .sweeps
                .iter()
                .map(|s| SweepDoc {
                    lift: lift_name(s.lift).to_string(),
                    pairs: s.records.len(),
                    failures: s.failures().count(),
                    records: s
                        .records
                        .iter()
                        .map(|r| PairDoc {
                            a: show(&r.a),
                            b: show(&r.b),
                            lhs: r.lhs.clone(),
                            m: r.m_value.clone(),
                            bound: r.bound.clone(),
                            pass: r.pass,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepDoc {
    pub n: usize,
    pub a: String,
    pub s: String,
    pub t: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TerminationDoc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub instance: String,
    pub iteration: String,
    pub start: String,
    pub max_steps: usize,
    pub termination: TerminationDoc,
    pub exit_status: i32,
    pub steps: Vec<StepDoc>,
}

pub fn solve_exit_status<S>(t: &Termination<S>) -> i32 {
    match t {
        Termination::CoincidenceFound(_) => EXIT_OK,
        Termination::RangeViolation(_) => EXIT_REFUTED,
        Termination::CycleDetected(_) | Termination::StepLimit => EXIT_CAVEATS,
    }
}

impl SolveDoc {
    pub fn new<S>(
        instance: &str,
        iteration: &str,
        start: &S,
        max_steps: usize,
        trace: &IterationTrace<S>,
        show: impl Fn(&S) -> String,
    ) -> Self {
        let termination = match &trace.termination {
            Termination::CoincidenceFound(u) | Termination::RangeViolation(u) => TerminationDoc {
                kind: trace.termination.label().to_string(),
                set: Some(show(u)),
                period: None,
            },
            Termination::CycleDetected(p) => TerminationDoc {
                kind: trace.termination.label().to_string(),
                set: None,
                period: Some(*p),
            },
            Termination::StepLimit => TerminationDoc {
                kind: trace.termination.label().to_string(),
                set: None,
                period: None,
            },
        };
        SolveDoc {
            schema: REPORT_SCHEMA,
            command: "solve",
            instance: instance.to_string(),
            iteration: iteration.to_string(),
            start: show(start),
            max_steps,
            termination,
            exit_status: solve_exit_status(&trace.termination),
            steps: trace
                .steps
                .iter()
                .enumerate()
                .map(|(n, st)| StepDoc {
                    n,
                    a: show(&st.a),
                    s: show(&st.s_of_a),
                    t: show(&st.t_of_a),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerateDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub instance: String,
    pub family_size: usize,
    pub coincidence_points: Vec<String>,
    pub fix_s: Vec<String>,
    pub fix_t: Vec<String>,
    pub common_fixed_points: Vec<String>,
    pub weak_compatibility: VerdictDoc,
    pub exit_status: i32,
}

impl EnumerateDoc {
    pub fn new<S>(
        instance: &str,
        family_size: usize,
        cp: &[S],
        fixed: &FixedPoints<S>,
        weak_compatibility: VerdictDoc,
        show: impl Fn(&S) -> String,
    ) -> Self {
        let all = |v: &[S]| v.iter().map(&show).collect();
        EnumerateDoc {
            schema: REPORT_SCHEMA,
            command: "enumerate",
            instance: instance.to_string(),
            family_size,
            coincidence_points: all(cp),
            fix_s: all(&fixed.fix_s),
            fix_t: all(&fixed.fix_t),
            common_fixed_points: all(&fixed.common),
            weak_compatibility,
            exit_status: EXIT_OK,
        }
    }
}

impl From<&Verdict> for VerdictDoc {
    fn from(v: &Verdict) -> Self {
        VerdictDoc::new(v.label(), v.witness().map(str::to_string))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationDoc {
    pub axiom: String,
    pub witness: String,
}

impl From<&AxiomViolation> for ViolationDoc {
    fn from(v: &AxiomViolation) -> Self {
        let axiom = match v {
            AxiomViolation::Identity { .. } => "identity",
            AxiomViolation::Positivity { .. } => "positivity",
            AxiomViolation::Symmetry { .. } => "symmetry",
            AxiomViolation::Triangle { .. } => "triangle",
        };
        ViolationDoc {
            axiom: axiom.to_string(),
            witness: v.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidateDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub instance: String,
    pub space: String,
    pub points: usize,
    pub metric: String,
    pub violations: Vec<ViolationDoc>,
    pub exit_status: i32,
}

impl ValidateDoc {
    pub fn new(instance: &str, space: &str, points: usize, violations: &[AxiomViolation]) -> Self {
        ValidateDoc {
            schema: REPORT_SCHEMA,
            command: "validate",
            instance: instance.to_string(),
            space: space.to_string(),
            points,
            metric: if violations.is_empty() {
                "ok"
            } else {
                "violated"
            }
            .to_string(),
            violations: violations.iter().map(ViolationDoc::from).collect(),
            exit_status: if violations.is_empty() {
                EXIT_OK
            } else {
                EXIT_REFUTED
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaugeReportDoc {
    pub schema: &'static str,
    pub command: &'static str,
    pub name: String,
    pub gauge: GaugeDoc,
    pub exit_status: i32,
}

impl GaugeReportDoc {
    pub fn new(name: &str, gauge: GaugeDoc) -> Self {
        let exit_status = gauge.exit_status();
        GaugeReportDoc {
            schema: REPORT_SCHEMA,
            command: "gauge",
            name: name.to_string(),
            gauge,
            exit_status,
        }
    }
}

/// Any command's report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Report {
    Certify(CertifyDoc),
    Solve(SolveDoc),
    Enumerate(EnumerateDoc),
    Validate(ValidateDoc),
    Gauge(GaugeReportDoc),
}

impl Report {
    pub fn exit_status(&self) -> i32 {
        match self {
            Report::Certify(d) => d.exit_status,
            Report::Solve(d) => d.exit_status,
            Report::Enumerate(d) => d.exit_status,
            Report::Validate(d) => d.exit_status,
            Report::Gauge(d) => d.exit_status,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Machine => {
                let mut s = match self {
                    Report::Certify(d) => serde_json::to_string_pretty(d),
                    Report::Solve(d) => serde_json::to_string_pretty(d),
                    Report::Enumerate(d) => serde_json::to_string_pretty(d),
                    Report::Validate(d) => serde_json::to_string_pretty(d),
                    Report::Gauge(d) => serde_json::to_string_pretty(d),
                }
                .expect("plain data serializes");
                s.push('\n');
                s
            }
            Format::Text => match self {
                Report::Certify(d) => certify_text(d),
                Report::Solve(d) => solve_text(d),
                Report::Enumerate(d) => enumerate_text(d),
                Report::Validate(d) => validate_text(d),
                Report::Gauge(d) => {
                    let mut out = format!("gauge {}\n", d.name);
                    gauge_text(&mut out, &d.gauge);
                    out
                }
            },
        }
    }
}

fn verdict_line(v: &VerdictDoc) -> String {
    match &v.witness {
        None => v.verdict.clone(),
        Some(w) => format!("{} ({w})", v.verdict),
    }
}

fn gauge_text(out: &mut String, g: &GaugeDoc) {
    let _ = writeln!(out, "gauge class {}: {}", g.class, verdict_line(&g.member));
    let _ = writeln!(
        out,
        "  nondecreasing         {}",
        verdict_line(&g.nondecreasing)
    );
    if let Some(u) = &g.upper_semicontinuous {
        let _ = writeln!(out, "  upper semicontinuous  {}", verdict_line(u));
    }
    let _ = writeln!(
        out,
        "  below identity        {}",
        verdict_line(&g.below_identity)
    );
    if let Some(s) = &g.series_convergent {
        let _ = writeln!(out, "  series convergent     {}", verdict_line(s));
    }
}

fn certify_text(d: &CertifyDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "certify {} on {}: {}", d.kind, d.instance, d.overall);
    gauge_text(&mut out, &d.gauge);
    let _ = writeln!(out, "checks");
    let width = d.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &d.checks {
        let w = c
            .witness
            .as_deref()
            .map(|w| format!(" ({w})"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  {:width$}  {:13}  {}{}",
            c.name,
            c.role,
            c.verdict,
            w,
            width = width
        );
    }
    for s in &d.sweeps {
        let _ = writeln!(
            out,
            "pairs ({} lift): {} edged, {} failing",
            s.lift, s.pairs, s.failures
        );
        for r in &s.records {
            let mark = if r.pass { "pass" } else { "FAIL" };
            let _ = writeln!(
                out,
                "  {mark}  A={} B={}  lhs={} m={} bound={}",
                r.a, r.b, r.lhs, r.m, r.bound
            );
        }
    }
    out
}

fn solve_text(d: &SolveDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "solve ({}) on {} from {}: {}",
        d.iteration, d.instance, d.start, d.termination.kind
    );
    if let Some(s) = &d.termination.set {
        let _ = writeln!(out, "  set {s}");
    }
    if let Some(p) = d.termination.period {
        let _ = writeln!(out, "  period {p}");
    }
    for st in &d.steps {
        let _ = writeln!(out, "  A{} = {}  S = {}  T = {}", st.n, st.a, st.s, st.t);
    }
    out
}

fn enumerate_text(d: &EnumerateDoc) -> String {
    let list = |v: &[String]| {
        if v.is_empty() {
            "(none)".to_string()
        } else {
            v.join(" ")
        }
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "enumerate on {} over {} sets",
        d.instance, d.family_size
    );
    let _ = writeln!(
        out,
        "  coincidence points   {}",
        list(&d.coincidence_points)
    );
    let _ = writeln!(out, "  fixed points of S    {}", list(&d.fix_s));
    let _ = writeln!(out, "  fixed points of T    {}", list(&d.fix_t));
    let _ = writeln!(
        out,
        "  common fixed points  {}",
        list(&d.common_fixed_points)
    );
    let _ = writeln!(
        out,
        "  weak compatibility   {}",
        verdict_line(&d.weak_compatibility)
    );
    out
}

fn validate_text(d: &ValidateDoc) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "validate {}: {} space, {} points, metric {}",
        d.instance, d.space, d.points, d.metric
    );
    for v in &d.violations {
        let _ = writeln!(out, "  {}", v.witness);
    }
    out
}
