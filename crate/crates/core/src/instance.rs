//! Instance documents: a space, a graph, two maps, a gauge and options.
//!
//! The on-disk form is JSON with every rational written as a `"p/q"` string.
//! [`serialize_instance`] emits one canonical layout, so parsing and
//! re-serializing a canonical document reproduces it byte for byte.
//!
//! ```
//! use fpgraph::instance::{parse_instance, serialize_instance};
//!
//! let doc = r#"{
//!   "format": "fpgraph-instance/1",
//!   "name": "two points",
//!   "space": { "kind": "finite", "points": ["a", "b"], "distances": [["0", "1"], ["1", "0"]] },
//!   "graph": { "loops": "all", "edges": [["a", "b"]] },
//!   "maps": {
//!     "S": { "table": [
//!       { "input": "{a}", "output": "{a}" },
//!       { "input": "{a,b}", "output": "{a}" },
//!       { "input": "{b}", "output": "{a}" } ] },
//!     "T": { "table": [
//!       { "input": "{a}", "output": "{a}" },
//!       { "input": "{a,b}", "output": "{a,b}" },
//!       { "input": "{b}", "output": "{b}" } ] }
//!   },
//!   "gauge": { "pieces": [ { "from": "0", "to": "inf", "kind": "linear", "coefficients": ["1/2"] } ] }
//! }"#;
//! let inst = parse_instance(doc).unwrap();
//! let text = serialize_instance(&inst);
//! assert_eq!(parse_instance(&text).unwrap(), inst);
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::Psi2Params;
use crate::gauge::{ClassifyOptions, Formula, GaugeFunction, GaugePiece};
use crate::graph::DirectedGraph;
use crate::interval::{IntervalRule, IntervalRuleMap, PointMapGraph, Region};
use crate::maps::TableMap;
use crate::metric::{ClosedInterval, FiniteMetricSpace, PointSet};
use crate::rational::Rational;

pub const INSTANCE_FORMAT: &str = "fpgraph-instance/1";
pub const GAUGE_FORMAT: &str = "fpgraph-gauge/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl fmt::Display) -> InstanceError {
    InstanceError::Invalid {
        path: path.into(),
        message: message.to_string(),
    }
}

/// Every problem found in a document, in document order.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct InstanceErrors(pub Vec<InstanceError>);

impl fmt::Display for InstanceErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteInstance {
    pub space: FiniteMetricSpace,
    pub graph: DirectedGraph,
    /// Written with the `"loops": "all"` shorthand.
    pub loops_shorthand: bool,
    pub s: TableMap,
    pub t: TableMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalInstance {
    pub probes: Vec<ClosedInterval>,
    pub graph: PointMapGraph,
    pub s: IntervalRuleMap,
    pub t: IntervalRuleMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InstanceBody {
    Finite(FiniteInstance),
    Interval(IntervalInstance),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InstanceOptions {
    pub undirected_lift: bool,
    pub classify: ClassifyOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub body: InstanceBody,
    pub gauge: GaugeFunction,
    pub params: Option<Psi2Params>,
    pub options: InstanceOptions,
}

/// A standalone gauge document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeDocument {
    pub name: String,
    pub gauge: GaugeFunction,
    pub classify: ClassifyOptions,
}

// ---- wire format ----

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceDoc {
    format: String,
    name: String,
    space: SpaceDoc,
    graph: GraphDoc,
    maps: MapsDoc,
    gauge: GaugeDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<ParamsDoc>,
    #[serde(default)]
    options: OptionsDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum SpaceDoc {
    Finite {
        points: Vec<String>,
        distances: Vec<Vec<String>>,
    },
    Interval {
        probes: Vec<String>,
    },
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    loops: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    point_map: Option<Vec<PointRuleDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PointRuleDoc {
    region: String,
    target: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapsDoc {
    #[serde(rename = "S")]
    s: MapDoc,
    #[serde(rename = "T")]
    t: MapDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<RowDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rules: Option<Vec<RuleDoc>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RowDoc {
    input: String,
    output: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    when: String,
    then: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaugeDoc {
    pieces: Vec<PieceDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PieceDoc {
    from: String,
    to: String,
    kind: String,
    coefficients: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParamsDoc {
    alpha: String,
    beta: String,
    gamma: String,
    delta1: String,
    delta2: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct OptionsDoc {
    undirected_lift: bool,
    probes: Vec<String>,
    iterations: usize,
    tail_tolerance: String,
}

impl Default for OptionsDoc {
    fn default() -> Self {
        options_doc(&InstanceOptions::default())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaugeFileDoc {
    format: String,
    name: String,
    pieces: Vec<PieceDoc>,
    #[serde(default)]
    options: OptionsDoc,
}

// ---- parsing ----

fn syntax(e: serde_json::Error) -> InstanceErrors {
    InstanceErrors(vec![InstanceError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }])
}

fn rational(path: &str, s: &str) -> Result<Rational, InstanceError> {
    s.parse().map_err(|e| invalid(path, e))
}

fn parse_space(doc: &SpaceDoc) -> Result<FiniteMetricSpace, InstanceError> {
    let SpaceDoc::Finite { points, distances } = doc else {
        unreachable!("called for finite spaces")
    };
    let mut rows = Vec::with_capacity(distances.len());
    for (i, row) in distances.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (j, v) in row.iter().enumerate() {
            out.push(rational(&format!("space.distances[{i}][{j}]"), v)?);
        }
        rows.push(out);
    }
    FiniteMetricSpace::new(points.clone(), rows).map_err(|e| invalid("space", e))
}

fn parse_finite_graph(
    doc: &GraphDoc,
    space: &FiniteMetricSpace,
) -> Result<(DirectedGraph, bool), InstanceError> {
    if doc.point_map.is_some() {
        return Err(invalid(
            "graph.point_map",
            "point maps apply to interval spaces only",
        ));
    }
    let shorthand = match doc.loops.as_deref() {
        None | Some("listed") => false,
        Some("all") => true,
        Some(other) => {
            return Err(invalid(
                "graph.loops",
                format!("expected \"all\" or \"listed\", found `{other}`"),
            ))
        }
    };
    let mut edges = Vec::new();
    for (k, (a, b)) in doc.edges.iter().flatten().enumerate() {
        let ia = space
            .index_of(a)
            .map_err(|e| invalid(format!("graph.edges[{k}][0]"), e))?;
        let ib = space
            .index_of(b)
            .map_err(|e| invalid(format!("graph.edges[{k}][1]"), e))?;
        edges.push((ia, ib));
    }
    let g = if shorthand {
        DirectedGraph::with_all_loops(space.len(), edges)
    } else {
        DirectedGraph::new(space.len(), edges)
    };
    Ok((g.map_err(|e| invalid("graph", e))?, shorthand))
}

fn parse_table(
    path: &str,
    doc: &MapDoc,
    space: &FiniteMetricSpace,
) -> Result<TableMap, InstanceError> {
    let Some(rows) = &doc.table else {
        return Err(invalid(path, "finite instances need a `table`"));
    };
    if doc.rules.is_some() {
        return Err(invalid(format!("{path}.rules"), "table maps take no rules"));
    }
    let mut parsed: Vec<(PointSet, PointSet)> = Vec::with_capacity(rows.len());
    for (k, row) in rows.iter().enumerate() {
        let input = space
            .parse_set(&row.input)
            .map_err(|e| invalid(format!("{path}.table[{k}].input"), e))?;
        let output = space
            .parse_set(&row.output)
            .map_err(|e| invalid(format!("{path}.table[{k}].output"), e))?;
        parsed.push((input, output));
    }
    TableMap::new(space, parsed).map_err(|e| invalid(format!("{path}.table"), e))
}

fn parse_interval(path: &str, s: &str) -> Result<ClosedInterval, InstanceError> {
    let iv: ClosedInterval = s.parse().map_err(|e| invalid(path, e))?;
    if iv.lo().is_negative() {
        return Err(invalid(path, "intervals must lie in [0, inf)"));
    }
    Ok(iv)
}

fn parse_rules(path: &str, doc: &MapDoc) -> Result<IntervalRuleMap, InstanceError> {
    let Some(rules) = &doc.rules else {
        return Err(invalid(path, "interval instances need `rules`"));
    };
    if doc.table.is_some() {
        return Err(invalid(format!("{path}.table"), "rule maps take no table"));
    }
    let mut out = Vec::with_capacity(rules.len());
    for (k, r) in rules.iter().enumerate() {
        let when = r
            .when
            .parse()
            .map_err(|e| invalid(format!("{path}.rules[{k}].when"), e))?;
        let then = parse_interval(&format!("{path}.rules[{k}].then"), &r.then)?;
        out.push(IntervalRule { when, then });
    }
    IntervalRuleMap::new(out).map_err(|e| invalid(format!("{path}.rules"), e))
}

fn parse_point_map(doc: &GraphDoc) -> Result<PointMapGraph, InstanceError> {
    if doc.loops.is_some() || doc.edges.is_some() {
        return Err(invalid(
            "graph",
            "interval spaces take a `point_map`, not loops or edges",
        ));
    }
    let Some(rules) = &doc.point_map else {
        return Err(invalid("graph", "interval spaces need a `point_map`"));
    };
    let mut out = Vec::with_capacity(rules.len());
    for (k, r) in rules.iter().enumerate() {
        let region: Region = r
            .region
            .parse()
            .map_err(|e| invalid(format!("graph.point_map[{k}].region"), e))?;
        let target = rational(&format!("graph.point_map[{k}].target"), &r.target)?;
        out.push((region, target));
    }
    PointMapGraph::new(out).map_err(|e| invalid("graph.point_map", e))
}

fn parse_pieces(path: &str, pieces: &[PieceDoc]) -> Result<GaugeFunction, InstanceError> {
    let mut out = Vec::with_capacity(pieces.len());
    for (k, p) in pieces.iter().enumerate() {
        let at = |field: &str| format!("{path}[{k}].{field}");
        let lo = rational(&at("from"), &p.from)?;
        let hi = match p.to.as_str() {
            "inf" => None,
            s => Some(rational(&at("to"), s)?),
        };
        let mut cs = Vec::with_capacity(p.coefficients.len());
        for (i, c) in p.coefficients.iter().enumerate() {
            cs.push(rational(&format!("{path}[{k}].coefficients[{i}]"), c)?);
        }
        let arity = match p.kind.as_str() {
            "linear" | "quadratic" => 1,
            "rational" => 4,
            other => {
                return Err(invalid(
                    at("kind"),
                    format!("unknown formula kind `{other}`"),
                ))
            }
        };
        if cs.len() != arity {
            return Err(invalid(
                at("coefficients"),
                format!(
                    "`{}` takes {arity} coefficients, found {}",
                    p.kind,
                    cs.len()
                ),
            ));
        }
        let mut it = cs.into_iter();
        let mut next = || it.next().expect("arity checked");
        let formula = match p.kind.as_str() {
            "linear" => Formula::Linear { a: next() },
            "quadratic" => Formula::Quadratic { a: next() },
            _ => Formula::Mobius {
                a: next(),
                b: next(),
                c: next(),
                d: next(),
            },
        };
        out.push(GaugePiece::new(lo, hi, formula));
    }
    GaugeFunction::new(out).map_err(|e| invalid(path, e))
}

fn parse_params(doc: &ParamsDoc) -> Result<Psi2Params, InstanceError> {
    let p = Psi2Params {
        alpha: rational("params.alpha", &doc.alpha)?,
        beta: rational("params.beta", &doc.beta)?,
        gamma: rational("params.gamma", &doc.gamma)?,
        delta1: rational("params.delta1", &doc.delta1)?,
        delta2: rational("params.delta2", &doc.delta2)?,
    };
    p.validate().map_err(|e| invalid("params", e))?;
    Ok(p)
}

fn parse_options(doc: &OptionsDoc) -> Result<InstanceOptions, InstanceError> {
    let mut probes = Vec::with_capacity(doc.probes.len());
    for (k, p) in doc.probes.iter().enumerate() {
        let v = rational(&format!("options.probes[{k}]"), p)?;
        if v.is_negative() {
            return Err(invalid(
                format!("options.probes[{k}]"),
                "probes must be nonnegative",
            ));
        }
        probes.push(v);
    }
    if probes.is_empty() {
        return Err(invalid("options.probes", "at least one probe is required"));
    }
    if doc.iterations < 2 {
        return Err(invalid(
            "options.iterations",
            "at least 2 iterations are required",
        ));
    }
    let tail_tolerance = rational("options.tail_tolerance", &doc.tail_tolerance)?;
    if !tail_tolerance.is_positive() {
        return Err(invalid("options.tail_tolerance", "must be positive"));
    }
    Ok(InstanceOptions {
        undirected_lift: doc.undirected_lift,
        classify: ClassifyOptions {
            probes,
            iterations: doc.iterations,
            tail_tolerance,
        },
    })
}

fn collect<T>(errors: &mut Vec<InstanceError>, r: Result<T, InstanceError>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e) => {
            errors.push(e);
            None
        }
    }
}

/// Parses and validates a document. Metric axioms are not enforced here;
/// see [`FiniteMetricSpace::validate`].
pub fn parse_instance(text: &str) -> Result<Instance, InstanceErrors> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(syntax)?;
    let mut errors = Vec::new();
    if doc.format != INSTANCE_FORMAT {
        errors.push(invalid(
            "format",
            format!("expected `{INSTANCE_FORMAT}`, found `{}`", doc.format),
        ));
    }
    let body = match &doc.space {
        SpaceDoc::Finite { .. } => {
            collect(&mut errors, parse_space(&doc.space)).and_then(|space| {
                let graph = collect(&mut errors, parse_finite_graph(&doc.graph, &space));
                let s = collect(&mut errors, parse_table("maps.S", &doc.maps.s, &space));
                let t = collect(&mut errors, parse_table("maps.T", &doc.maps.t, &space));
                match (graph, s, t) {
                    (Some((graph, loops_shorthand)), Some(s), Some(t)) => {
                        Some(InstanceBody::Finite(FiniteInstance {
                            space,
                            graph,
                            loops_shorthand,
                            s,
                            t,
                        }))
                    }
                    _ => None,
                }
            })
        }
        SpaceDoc::Interval { probes } => {
            let mut parsed = Vec::with_capacity(probes.len());
            for (k, p) in probes.iter().enumerate() {
                if let Some(iv) = collect(
                    &mut errors,
                    parse_interval(&format!("space.probes[{k}]"), p),
                ) {
                    parsed.push(iv);
                }
            }
            if probes.is_empty() {
                errors.push(invalid("space.probes", "probe family must be nonempty"));
            }
            let graph = collect(&mut errors, parse_point_map(&doc.graph));
            let s = collect(&mut errors, parse_rules("maps.S", &doc.maps.s));
            let t = collect(&mut errors, parse_rules("maps.T", &doc.maps.t));
            match (graph, s, t) {
                (Some(graph), Some(s), Some(t)) if parsed.len() == probes.len() => {
                    Some(InstanceBody::Interval(IntervalInstance {
                        probes: parsed,
                        graph,
                        s,
                        t,
                    }))
                }
                _ => None,
            }
        }
    };
    let gauge = collect(&mut errors, parse_pieces("gauge.pieces", &doc.gauge.pieces));
    let params = match &doc.params {
        None => Some(None),
        Some(p) => collect(&mut errors, parse_params(p)).map(Some),
    };
    let options = collect(&mut errors, parse_options(&doc.options));
    match (body, gauge, params, options) {
        (Some(body), Some(gauge), Some(params), Some(options)) if errors.is_empty() => {
            Ok(Instance {
                name: doc.name,
                body,
                gauge,
                params,
                options,
            })
        }
        _ => Err(InstanceErrors(errors)),
    }
}

pub fn parse_gauge_document(text: &str) -> Result<GaugeDocument, InstanceErrors> {
    let doc: GaugeFileDoc = serde_json::from_str(text).map_err(syntax)?;
    let mut errors = Vec::new();
    if doc.format != GAUGE_FORMAT {
        errors.push(invalid(
            "format",
            format!("expected `{GAUGE_FORMAT}`, found `{}`", doc.format),
        ));
    }
    let gauge = collect(&mut errors, parse_pieces("pieces", &doc.pieces));
    let options = collect(&mut errors, parse_options(&doc.options));
    match (gauge, options) {
        (Some(gauge), Some(options)) if errors.is_empty() => Ok(GaugeDocument {
            name: doc.name,
            gauge,
            classify: options.classify,
        }),
        _ => Err(InstanceErrors(errors)),
    }
}

// ---- serialization ----

fn pieces_doc(g: &GaugeFunction) -> Vec<PieceDoc> {
    g.pieces()
        .iter()
        .map(|p| PieceDoc {
            from: p.lo.to_string(),
            to: p.hi.as_ref().map_or("inf".to_string(), Rational::to_string),
            kind: p.formula.kind().to_string(),
            coefficients: p
                .formula
                .coefficients()
                .iter()
                .map(Rational::to_string)
                .collect(),
        })
        .collect()
}

fn options_doc(o: &InstanceOptions) -> OptionsDoc {
    OptionsDoc {
        undirected_lift: o.undirected_lift,
        probes: o.classify.probes.iter().map(Rational::to_string).collect(),
        iterations: o.classify.iterations,
        tail_tolerance: o.classify.tail_tolerance.to_string(),
    }
}

fn table_doc(space: &FiniteMetricSpace, m: &TableMap) -> MapDoc {
    MapDoc {
        table: Some(
            m.rows()
                .iter()
                .map(|(i, o)| RowDoc {
                    input: space.format_set(i),
                    output: space.format_set(o),
                })
                .collect(),
        ),
        rules: None,
    }
}

fn rules_doc(m: &IntervalRuleMap) -> MapDoc {
    MapDoc {
        table: None,
        rules: Some(
            m.rules()
                .iter()
                .map(|r| RuleDoc {
                    when: r.when.to_string(),
                    then: r.then.to_string(),
                })
                .collect(),
        ),
    }
}

fn to_text<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("plain data serializes");
    s.push('\n');
    s
}

/// Canonical document text for `inst`.
pub fn serialize_instance(inst: &Instance) -> String {
    let (space, graph, maps) = match &inst.body {
        InstanceBody::Finite(f) => {
            let label = |i: usize| f.space.label(i).to_string();
            let edges = f
                .graph
                .edges()
                .into_iter()
                .filter(|(a, b)| !(f.loops_shorthand && a == b))
                .map(|(a, b)| (label(a), label(b)))
                .collect();
            (
                SpaceDoc::Finite {
                    points: f.space.labels().to_vec(),
                    distances: f
                        .space
                        .distances()
                        .iter()
                        .map(|row| row.iter().map(Rational::to_string).collect())
                        .collect(),
                },
                GraphDoc {
                    loops: Some(if f.loops_shorthand { "all" } else { "listed" }.to_string()),
                    edges: Some(edges),
                    point_map: None,
                },
                MapsDoc {
                    s: table_doc(&f.space, &f.s),
                    t: table_doc(&f.space, &f.t),
                },
            )
        }
        InstanceBody::Interval(iv) => (
            SpaceDoc::Interval {
                probes: iv.probes.iter().map(ClosedInterval::to_string).collect(),
            },
            GraphDoc {
                loops: None,
                edges: None,
                point_map: Some(
                    iv.graph
                        .rules()
                        .iter()
                        .map(|(r, t)| PointRuleDoc {
                            region: r.to_string(),
                            target: t.to_string(),
                        })
                        .collect(),
                ),
            },
            MapsDoc {
                s: rules_doc(&iv.s),
                t: rules_doc(&iv.t),
            },
        ),
    };
    let params = inst.params.as_ref().map(|p| ParamsDoc {
        alpha: p.alpha.to_string(),
        beta: p.beta.to_string(),
        gamma: p.gamma.to_string(),
        delta1: p.delta1.to_string(),
        delta2: p.delta2.to_string(),
    });
    to_text(&InstanceDoc {
        format: INSTANCE_FORMAT.to_string(),
        name: inst.name.clone(),
        space,
        graph,
        maps,
        gauge: GaugeDoc {
            pieces: pieces_doc(&inst.gauge),
        },
        params,
        options: options_doc(&inst.options),
    })
}

pub fn serialize_gauge_document(doc: &GaugeDocument) -> String {
    to_text(&GaugeFileDoc {
        format: GAUGE_FORMAT.to_string(),
        name: doc.name.clone(),
        pieces: pieces_doc(&doc.gauge),
        options: options_doc(&InstanceOptions {
            undirected_lift: false,
            classify: doc.classify.clone(),
        }),
    })
}
