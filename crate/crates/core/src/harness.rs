//! Report records, sweeps and the exhaustive verifier behind the `dee` CLI.
//!
//! Output is deterministic: records are emitted in input (or enumeration)
//! order regardless of thread count, and every float is rounded to 15
//! significant digits (ties to even) before it is written.

use std::io::Write;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::bounds::{Analysis, BoundReport, Comparisons, Omitted, TheoremId};
use crate::error::{Error, Result};
use crate::estrada::{estrada_index, EstradaValue};
use crate::graph::{ConnectedGraphs, Graph, GraphFamily, MAX_ENUMERATION_ORDER};
use crate::io::to_graph6;
use crate::spectra::{
    adjacency_spectrum, complement_adj_spectrum, count_positive, lemma1_check, lemma2_spectrum,
};

/// Significant digits kept in serialized floats.
pub const SIGNIFICANT_DIGITS: usize = 15;

/// Rounds to [`SIGNIFICANT_DIGITS`] significant digits, ties to even.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Text form of a rounded float; empty for non-finite values.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&round_sig(x)).expect("finite float serializes")
    } else {
        String::new()
    }
}

fn round_json(v: &mut Value) {
    match v {
        Value::Number(num) if num.is_f64() => {
            let x = round_sig(num.as_f64().expect("f64 number"));
            *v = serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with rounded floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// An exponential sum as serialized: the direct value is `null` when only
/// the log is representable.
#[derive(Debug, Clone, Serialize)]
pub struct IndexValue {
    pub value: Option<f64>,
    pub log_value: f64,
    pub log_domain: bool,
}

impl From<EstradaValue> for IndexValue {
    fn from(v: EstradaValue) -> Self {
        IndexValue {
            value: (!v.overflowed).then_some(v.value),
            log_value: v.log_value,
            log_domain: v.overflowed,
        }
    }
}

/// Relative size below which a reported eigenvalue is printed as zero.
pub const ZERO_SNAP: f64 = 1e-12;

/// Replaces rounding noise around zero eigenvalues by exact zeros so that
/// reports do not depend on the last bits of the eigensolver.
fn snap_zeros(values: &[f64]) -> Vec<f64> {
    let scale = values.iter().fold(1.0f64, |acc, x| acc.max(x.abs()));
    values
        .iter()
        .map(|&x| if x.abs() <= ZERO_SNAP * scale { 0.0 } else { x })
        .collect()
}

/// Everything `compute` reports about one graph.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRecord {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub rho: usize,
    pub delta1: Option<usize>,
    pub delta2: Option<usize>,
    pub regular_degree: Option<usize>,
    pub distance_spectrum: Vec<f64>,
    pub n_plus: usize,
    pub dee: IndexValue,
    pub adjacency_spectrum: Vec<f64>,
    pub ee: IndexValue,
    pub ee_complement: IndexValue,
    pub l4_class: Option<&'static str>,
    pub comparisons: Option<Comparisons>,
    pub bounds: Vec<BoundReport>,
    pub omitted: Vec<Omitted>,
}

impl ReportRecord {
    pub fn new(g: &Graph) -> Result<Self> {
        let a = Analysis::new(g)?;
        let set = a.bound_report()?;
        let adj = adjacency_spectrum(g)?;
        let adj_comp = adjacency_spectrum(&g.complement())?;
        Ok(ReportRecord {
            graph_id: to_graph6(g)?,
            n: g.order(),
            m: g.size(),
            rho: a.rho,
            delta1: a.profile.as_ref().map(|p| p.delta1),
            delta2: a.profile.as_ref().map(|p| p.delta2),
            regular_degree: a.regular,
            distance_spectrum: snap_zeros(a.spectrum.values()),
            n_plus: count_positive(&a.spectrum),
            dee: a.dee.into(),
            ee: estrada_index(&adj).into(),
            adjacency_spectrum: snap_zeros(adj.values()),
            ee_complement: estrada_index(&adj_comp).into(),
            l4_class: a.least_eigen_class().ok().map(|c| c.as_str()),
            comparisons: a.comparisons(),
            bounds: set.reports,
            omitted: set.omitted,
        })
    }

    pub fn bound(&self, id: TheoremId) -> Option<&BoundReport> {
        self.bounds.iter().find(|b| b.theorem_id == id)
    }

    fn csv_row(&self) -> Vec<String> {
        let int = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        let flag = |b: bool| b.to_string();
        let mut row = vec![
            self.graph_id.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.rho.to_string(),
            int(self.delta1),
            int(self.delta2),
            self.dee.value.map(format_float).unwrap_or_default(),
            format_float(self.dee.log_value),
            flag(self.dee.log_domain),
            format_float(self.distance_spectrum[0]),
            format_float(self.distance_spectrum[self.n - 1]),
            self.n_plus.to_string(),
            self.l4_class.unwrap_or_default().to_string(),
            self.comparisons
                .map(|c| flag(c.t3_beats_t1))
                .unwrap_or_default(),
            self.comparisons
                .map(|c| flag(c.t5_beats_t1))
                .unwrap_or_default(),
        ];
        for id in TheoremId::ALL {
            match self.bound(id) {
                Some(b) => row.extend([
                    format_float(b.bound_value),
                    format_float(b.slack),
                    flag(b.holds),
                    flag(b.equality),
                    flag(b.log_domain),
                ]),
                None => row.extend(std::iter::repeat_n(String::new(), 5)),
            }
        }
        let omitted: Vec<String> = self
            .omitted
            .iter()
            .map(|o| format!("{}: {}", o.theorem_id, o.reason))
            .collect();
        row.push(omitted.join("; "));
        row
    }
}

/// Column names of the report CSV, in order.
pub fn csv_header() -> Vec<String> {
    let mut cols: Vec<String> = [
        "graph_id",
        "n",
        "m",
        "rho",
        "delta1",
        "delta2",
        "dee",
        "dee_log",
        "dee_log_domain",
        "lambda_max",
        "lambda_min",
        "n_plus",
        "l4_class",
        "t3_beats_t1",
        "t5_beats_t1",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    for id in TheoremId::ALL {
        for field in ["bound", "slack", "holds", "equality", "log_domain"] {
            cols.push(format!("{id}_{field}"));
        }
    }
    cols.push("omitted".into());
    cols
}

/// Writes report records as CSV with the fixed header.
pub fn write_records_csv<W: Write>(out: W, records: &[ReportRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(csv_header())?;
    for r in records {
        w.write_record(r.csv_row())?;
    }
    w.flush()?;
    Ok(())
}

/// Output of the `bounds` subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct BoundsOutput {
    pub graph_id: String,
    pub n: usize,
    pub m: usize,
    pub bounds: Vec<BoundReport>,
    pub omitted: Vec<Omitted>,
    pub comparisons: Option<Comparisons>,
}

impl From<&ReportRecord> for BoundsOutput {
    fn from(r: &ReportRecord) -> Self {
        BoundsOutput {
            graph_id: r.graph_id.clone(),
            n: r.n,
            m: r.m,
            bounds: r.bounds.clone(),
            omitted: r.omitted.clone(),
            comparisons: r.comparisons,
        }
    }
}

/// Parses `a..b` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<RangeInclusive<usize>> {
    let bad = || Error::InvalidArgument(format!("invalid range {text:?}, expected a..b"));
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (text.trim(), text.trim()),
    };
    let lo: usize = lo.parse().map_err(|_| bad())?;
    let hi: usize = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

/// What to sweep over.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub family: String,
    pub n: Option<RangeInclusive<usize>>,
    pub parts: Option<Vec<usize>>,
    pub p: Option<f64>,
    pub seed: u64,
}

impl SweepSpec {
    /// The graph families the sweep visits, in row order.
    pub fn families(&self) -> Result<Vec<GraphFamily>> {
        let need_n = || {
            self.n.clone().ok_or_else(|| {
                Error::InvalidArgument(format!("family {:?} needs --n", self.family))
            })
        };
        let fams: Vec<GraphFamily> = match self.family.as_str() {
            "complete" => need_n()?.map(GraphFamily::Complete).collect(),
            "cycle" => need_n()?.map(GraphFamily::Cycle).collect(),
            "path" => need_n()?.map(GraphFamily::Path).collect(),
            "star" => need_n()?.map(GraphFamily::Star).collect(),
            "petersen" => vec![GraphFamily::Petersen],
            "multipartite" => {
                let parts = self.parts.clone().ok_or_else(|| {
                    Error::InvalidArgument("family \"multipartite\" needs --parts".into())
                })?;
                vec![GraphFamily::CompleteMultipartite(parts)]
            }
            "gnp" => {
                let p = self
                    .p
                    .ok_or_else(|| Error::InvalidArgument("family \"gnp\" needs --p".into()))?;
                need_n()?
                    .map(|n| GraphFamily::RandomGnp { n, p, seed: self.seed })
                    .collect()
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown family {other:?} (complete, cycle, path, star, petersen, multipartite, gnp)"
                )))
            }
        };
        Ok(fams)
    }
}

/// One record per family member; members that are disconnected (possible
/// for `gnp`) are rejected.
pub fn sweep(spec: &SweepSpec) -> Result<Vec<ReportRecord>> {
    let graphs = spec
        .families()?
        .iter()
        .map(GraphFamily::generate)
        .collect::<Result<Vec<_>>>()?;
    graphs.par_iter().map(ReportRecord::new).collect()
}

/// An asserted check that failed, or a documented non-asserted shortfall.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub n: usize,
    pub graph_id: String,
    pub check: String,
    pub slack: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationSummary {
    pub population: String,
    pub graphs_checked: u64,
    /// `(n, connected labeled graphs checked)`.
    pub per_order: Vec<(usize, u64)>,
    /// Failures of asserted invariants.
    pub violations: Vec<CheckRecord>,
    /// Shortfalls of the bounds that are reported but not asserted.
    pub findings: Vec<CheckRecord>,
    pub equality_hits: Vec<CheckRecord>,
}

impl VerificationSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn findings_for(&self, check: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let check = check.to_string();
        self.findings.iter().filter(move |f| f.check == check)
    }

    pub fn hits_for(&self, check: &str) -> impl Iterator<Item = &CheckRecord> + '_ {
        let check = check.to_string();
        self.equality_hits.iter().filter(move |f| f.check == check)
    }

    /// CSV with columns `kind,n,graph_id,check,slack`; kinds are `count`,
    /// `violation`, `finding` and `equality`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(["kind", "n", "graph_id", "check", "slack"])?;
        for &(n, count) in &self.per_order {
            w.write_record(["count", &n.to_string(), "", "", &count.to_string()])?;
        }
        for (kind, list) in [
            ("violation", &self.violations),
            ("finding", &self.findings),
            ("equality", &self.equality_hits),
        ] {
            for c in list {
                w.write_record([
                    kind,
                    &c.n.to_string(),
                    &c.graph_id,
                    &c.check,
                    &format_float(c.slack),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Bounds whose shortfalls are recorded as findings instead of violations.
pub const NON_ASSERTED: [TheoremId; 2] = [TheoremId::T2Lower, TheoremId::T4NgLower];
/// Bounds whose equality cases are listed in the summary.
pub const EQUALITY_TRACKED: [TheoremId; 5] = [
    TheoremId::T1Lower,
    TheoremId::T1Upper,
    TheoremId::T2Lower,
    TheoremId::T3Lower,
    TheoremId::T5Upper,
];
/// Entrywise tolerance for predicted spectra of regular graphs.
pub const SPECTRUM_MATCH_TOL: f64 = 1e-8;

#[derive(Debug, Default)]
struct GraphOutcome {
    violations: Vec<(String, f64)>,
    findings: Vec<(String, f64)>,
    hits: Vec<(String, f64)>,
}

fn max_entry_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Runs every per-graph check on one connected graph.
fn check_graph(g: &Graph) -> Result<GraphOutcome> {
    let mut out = GraphOutcome::default();
    let a = Analysis::new(g)?;
    let comp = a.complement();
    let set = a.bound_report_with(comp.as_ref())?;

    let res = lemma1_check(&a.spectrum, &a.distance);
    if res.sum > 1e-9 || res.sum_sq > 1e-9 * res.expected_sum_sq {
        out.violations
            .push(("L1_trace".into(), res.sum.max(res.sum_sq)));
    }

    let complete = g.is_complete();
    let attains_lambda1 = a.regular.is_some() && a.rho <= 2;
    for r in &set.reports {
        let id = r.theorem_id;
        if !r.holds {
            let list = if NON_ASSERTED.contains(&id) {
                &mut out.findings
            } else {
                &mut out.violations
            };
            list.push((id.to_string(), r.slack));
        }
        if r.equality && EQUALITY_TRACKED.contains(&id) {
            out.hits.push((id.to_string(), r.slack));
        }
        let equality_case = match id {
            TheoremId::T3Lower => Some(complete),
            TheoremId::L3Lambda1Lower => Some(attains_lambda1),
            _ => None,
        };
        if equality_case.is_some_and(|want| want != r.equality) {
            out.violations
                .push((format!("{id}_equality_case"), r.slack));
        }
    }

    if let Some(c) = a.comparisons() {
        if !c.t3_beats_t1 {
            out.violations.push(("T3_vs_T1_lower".into(), 0.0));
        }
        if !c.t5_beats_t1 {
            out.violations.push(("T5_vs_T1_upper".into(), 0.0));
        }
    }

    if let Some(r) = a.regular {
        let adj = adjacency_spectrum(g)?;
        let n = g.order();
        let comp_adj = adjacency_spectrum(&g.complement())?;
        let predicted = complement_adj_spectrum(&adj, n, r)?;
        let diff = max_entry_diff(predicted.values(), comp_adj.values());
        if diff > SPECTRUM_MATCH_TOL {
            out.violations.push(("complement_spectrum".into(), diff));
        }
        if a.rho <= 2 {
            let predicted = lemma2_spectrum(&adj, n, r)?;
            let diff = max_entry_diff(predicted.values(), a.spectrum.values());
            if diff > SPECTRUM_MATCH_TOL {
                out.violations.push(("L2_spectrum".into(), diff));
            }
        }
    }
    Ok(out)
}

const MASKS_PER_SHARD: u64 = 1 << 12;

/// Checks every connected labeled graph on `2..=max_n` vertices.
///
/// Graphs are sharded over contiguous mask ranges and processed on the
/// current rayon pool; results are merged in ascending mask order.
pub fn verify(max_n: usize) -> Result<VerificationSummary> {
    if !(2..=MAX_ENUMERATION_ORDER).contains(&max_n) {
        return Err(Error::InvalidArgument(format!(
            "--max-n must be in 2..={MAX_ENUMERATION_ORDER}, got {max_n}"
        )));
    }
    let mut summary = VerificationSummary {
        population: format!("connected labeled graphs, 2 <= n <= {max_n}"),
        ..Default::default()
    };
    for n in 2..=max_n {
        let limit = ConnectedGraphs::mask_limit(n);
        let shards: Vec<u64> = (0..limit.div_ceil(MASKS_PER_SHARD)).collect();
        let results: Vec<(u64, Vec<(String, GraphOutcome)>)> = shards
            .into_par_iter()
            .map(|shard| -> Result<_> {
                let lo = shard * MASKS_PER_SHARD;
                let mut count = 0;
                let mut flagged = Vec::new();
                for g in ConnectedGraphs::range(n, lo, lo + MASKS_PER_SHARD)? {
                    count += 1;
                    let outcome = check_graph(&g)?;
                    if !(outcome.violations.is_empty()
                        && outcome.findings.is_empty()
                        && outcome.hits.is_empty())
                    {
                        flagged.push((to_graph6(&g)?, outcome));
                    }
                }
                Ok((count, flagged))
            })
            .collect::<Result<_>>()?;

        let mut checked = 0;
        for (count, flagged) in results {
            checked += count;
            for (graph_id, outcome) in flagged {
                let record = |(check, slack): (String, f64)| CheckRecord {
                    n,
                    graph_id: graph_id.clone(),
                    check,
                    slack,
                };
                summary
                    .violations
                    .extend(outcome.violations.into_iter().map(record));
                summary
                    .findings
                    .extend(outcome.findings.into_iter().map(record));
                summary
                    .equality_hits
                    .extend(outcome.hits.into_iter().map(record));
            }
        }
        summary.per_order.push((n, checked));
        summary.graphs_checked += checked;
    }
    Ok(summary)
}
