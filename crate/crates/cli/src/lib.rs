//! Report building and rendering for the `enriques18` command.

use enriques18::dynkin::Configuration;
use enriques18::enumerator::{enumerate_types, CandidateList, Family};
use enriques18::golden::GoldenTables;
use enriques18::labeling::{count_fixed_points, enumerate_labelings, render_fragment, FixedPointCount, Labeling};
use enriques18::lefschetz::{
    fixed_locus_terms, identity_suite, local_types, order6_trace, solve_count_identity, IdentityCheck, Order6Trace,
};
use enriques18::realizability::{classify, realize, verify_golden, ClassificationEntry, GoldenDiff, Verdict};
use enriques18::shioda_inose::{host_graph, CurveGraphJson, SurfaceId};
use enriques18::{CanonicalIndex, Error, Execution};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_MISMATCH,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::GoldenFileMalformed(_) | Error::BudgetViolation { .. } => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn parse_index(value: u32) -> CliResult<CanonicalIndex> {
    Ok(CanonicalIndex::try_from(value)?)
}

pub fn parse_type(name: &str) -> CliResult<Configuration> {
    Ok(Configuration::parse(name)?)
}

fn labeled_rows(config: &Configuration, labeling: &Labeling) -> Vec<String> {
    config
        .components()
        .iter()
        .zip(&labeling.components)
        .map(|(c, m)| format!("{}: {}", c.name(), render_fragment(c, m)))
        .collect()
}

pub fn render_enumerate(list: &CandidateList) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "index {}: {} types", list.index, list.types.len());
    let mut family: Option<Family> = None;
    for t in &list.types {
        if t.family != family {
            if let Some(f) = t.family {
                let n = list.types.iter().filter(|x| x.family == Some(f)).count();
                let _ = writeln!(out, "{f} {} ({n})", f.solution());
            }
            family = t.family;
        }
        let marks = t
            .labelings
            .first()
            .map(|l| l.render(&t.configuration))
            .unwrap_or_default();
        let _ = writeln!(out, "  {:<14} {marks}", t.configuration.name());
    }
    if let Some(trace) = &list.trace {
        out.push_str(&render_trace(trace));
    }
    out
}

pub fn render_trace(trace: &Order6Trace) -> String {
    let mut out = String::new();
    for line in &trace.lines {
        let _ = writeln!(out, "  {line}");
    }
    let _ = writeln!(
        out,
        "index 6 {}",
        if trace.impossible { "impossible" } else { "not excluded" }
    );
    out
}

/// Every labeling of one configuration with its fixed-point counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelReport {
    pub index: CanonicalIndex,
    #[serde(rename = "type")]
    pub type_name: String,
    pub labelings: Vec<LabeledType>,
    pub excluded: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledType {
    pub labeling: Labeling,
    pub rendered: Vec<String>,
    pub counts: FixedPointCount,
}

pub fn label_report(config: &Configuration, index: CanonicalIndex) -> CliResult<LabelReport> {
    let mut labelings = Vec::new();
    for l in enumerate_labelings(config, index) {
        labelings.push(LabeledType {
            rendered: labeled_rows(config, &l),
            counts: count_fixed_points(config, &l)?,
            labeling: l,
        });
    }
    Ok(LabelReport {
        index,
        type_name: config.name(),
        excluded: enriques18::enumerator::exclusion_reason(config, index).map(|r| r.to_string()),
        labelings,
    })
}

pub fn render_label(r: &LabelReport) -> String {
    let mut out = String::new();
    if let Some(reason) = &r.excluded {
        let _ = writeln!(out, "{} at index {}: excluded: {reason}", r.type_name, r.index);
        return out;
    }
    let _ = writeln!(
        out,
        "{} at index {}: {} labeling(s)",
        r.type_name,
        r.index,
        r.labelings.len()
    );
    for l in &r.labelings {
        for row in &l.rendered {
            let _ = writeln!(out, "  {row}");
        }
        let _ = writeln!(
            out,
            "  M={} N={} H={}",
            l.counts.m_delta, l.counts.n_delta, l.counts.h_delta
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizeReport {
    pub index: CanonicalIndex,
    pub surface: Option<SurfaceId>,
    pub entry: ClassificationEntry,
}

pub fn realize_report(config: &Configuration, index: CanonicalIndex) -> CliResult<RealizeReport> {
    Ok(RealizeReport {
        index,
        surface: SurfaceId::for_index(index),
        entry: realize(config, index)?,
    })
}

pub fn render_realize(r: &RealizeReport) -> String {
    let mut out = String::new();
    let e = &r.entry;
    let name = e.configuration.name();
    match &e.verdict {
        Verdict::Realized { witness } => {
            let surface = r.surface.map(|s| s.to_string()).unwrap_or_default();
            let _ = writeln!(out, "{name} at index {}: realized on {surface}", r.index);
            let marks = e
                .labeling
                .as_ref()
                .map(|l| labeled_rows(&e.configuration, l))
                .unwrap_or_default();
            for ((c, chain), m) in e
                .configuration
                .components()
                .iter()
                .zip(witness.render(&e.configuration))
                .zip(marks)
            {
                let _ = writeln!(out, "  {m}\n  {:<w$}  {chain}", "", w = c.name().len());
            }
        }
        Verdict::Indeterminate => {
            let _ = writeln!(out, "{name} at index {}: indeterminate", r.index);
            if let Some(l) = &e.labeling {
                for row in labeled_rows(&e.configuration, l) {
                    let _ = writeln!(out, "  {row}");
                }
            }
        }
        Verdict::NotEmbeddable => {
            let _ = writeln!(out, "{name} at index {}: not embeddable", r.index);
        }
        Verdict::Excluded { reason } => {
            let _ = writeln!(out, "{name} at index {}: excluded: {reason}", r.index);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LefschetzReport {
    pub index: Option<CanonicalIndex>,
    pub local_types: Vec<String>,
    pub terms: Vec<String>,
    pub count_identity: Option<String>,
    pub trace: Option<Order6Trace>,
    pub identities: Vec<IdentityCheck>,
}

pub fn lefschetz_report(index: Option<CanonicalIndex>) -> CliResult<LefschetzReport> {
    let mut report = LefschetzReport {
        index,
        local_types: Vec::new(),
        terms: Vec::new(),
        count_identity: None,
        trace: None,
        identities: identity_suite()?,
    };
    if let Some(i) = index {
        report.local_types = local_types(i).iter().map(|t| t.to_string()).collect();
        if i != CanonicalIndex::Two {
            report.terms = fixed_locus_terms(i)?
                .iter()
                .map(|t| format!("{}·{}·({})", t.multiplicity, t.symbol, t.value))
                .collect();
            report.count_identity = Some(solve_count_identity(i)?.to_string());
        }
        if i == CanonicalIndex::Six {
            report.trace = Some(order6_trace());
        }
    }
    Ok(report)
}

pub fn render_lefschetz(r: &LefschetzReport) -> String {
    let mut out = String::new();
    if let Some(i) = r.index {
        let _ = writeln!(out, "index {i}");
        if !r.local_types.is_empty() {
            let _ = writeln!(out, "  local types: {}", r.local_types.join(", "));
        }
        if !r.terms.is_empty() {
            let _ = writeln!(out, "  fixed locus: {}", r.terms.join(" + "));
        }
        if let Some(rel) = &r.count_identity {
            let _ = writeln!(out, "  count identity: {rel}");
        }
        if let Some(t) = &r.trace {
            out.push_str(&render_trace(t));
        }
    }
    for c in &r.identities {
        let status = if c.exact { "exact" } else { "MISMATCH" };
        let _ = writeln!(out, "{status:<8} {}: {} = {}", c.name, c.lhs, c.rhs);
    }
    out
}

pub fn host_graph_report(index: CanonicalIndex) -> CliResult<CurveGraphJson> {
    let surface =
        SurfaceId::for_index(index).ok_or_else(|| CliError::Usage(format!("no host graph for index {index}")))?;
    Ok(host_graph(surface, index)?.to_json())
}

pub fn render_host_graph(g: &CurveGraphJson) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} at index {}: {} curves, {} edges",
        g.surface,
        g.index,
        g.curves.len(),
        g.edges.len()
    );
    for name in &g.curves {
        let degree = g.edges.iter().filter(|[a, b]| a == name || b == name).count();
        let mark = match g.labels.get(name).copied().flatten() {
            Some(m) => m.to_string(),
            None => "-".into(),
        };
        let _ = writeln!(out, "  {name:<5} {mark} degree {degree}");
    }
    for [a, b] in &g.swapped_pairs {
        let _ = writeln!(out, "swapped: {a} <-> {b}");
    }
    if !g.isolated_points.is_empty() {
        let pts: Vec<String> = g
            .isolated_points
            .iter()
            .map(|p| format!("{} = {}.{}", p.name, p.curves[0], p.curves[1]))
            .collect();
        let _ = writeln!(out, "isolated points ({}): {}", pts.len(), pts.join(", "));
    }
    out
}

/// Parts of the regression run that `--only` can select.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Section {
    Index2,
    Index3,
    Index4,
    Index6,
    Lefschetz,
}

impl Section {
    pub const ALL: [Section; 5] = [
        Section::Index2,
        Section::Index3,
        Section::Index4,
        Section::Index6,
        Section::Lefschetz,
    ];

    fn index(self) -> Option<CanonicalIndex> {
        match self {
            Section::Index2 => Some(CanonicalIndex::Two),
            Section::Index3 => Some(CanonicalIndex::Three),
            Section::Index4 => Some(CanonicalIndex::Four),
            Section::Index6 => Some(CanonicalIndex::Six),
            Section::Lefschetz => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexVerification {
    pub index: CanonicalIndex,
    pub candidates: usize,
    pub realized: usize,
    pub indeterminate: usize,
    pub impossible: Option<bool>,
    pub diff: GoldenDiff,
    pub summary: String,
}

impl IndexVerification {
    pub fn ok(&self) -> bool {
        self.diff.is_empty() && self.impossible != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub indices: Vec<IndexVerification>,
    pub identities: Option<Vec<IdentityCheck>>,
    pub summary: String,
    pub ok: bool,
}

fn verify_index(index: CanonicalIndex, golden: &GoldenTables, exec: Execution) -> IndexVerification {
    let report = classify(index, exec);
    let diff = verify_golden(&report, golden);
    let candidates = report.entries.len();
    let realized = report.realized().len();
    let indeterminate = report.indeterminate().len();
    let (impossible, summary) = match index {
        CanonicalIndex::Six => {
            let imp = candidates == 0 && report.trace.as_ref().is_some_and(|t| t.impossible);
            (
                Some(imp),
                format!("I6 {}", if imp { "impossible" } else { "not excluded" }),
            )
        }
        _ if indeterminate > 0 => (None, format!("{candidates}({realized}+{indeterminate})")),
        _ => (None, format!("{realized}/{candidates}")),
    };
    IndexVerification {
        index,
        candidates,
        realized,
        indeterminate,
        impossible,
        diff,
        summary,
    }
}

/// Classifies the selected indices, diffs them against `golden`, and checks
/// the identity suite.
pub fn verify_report(golden: &GoldenTables, only: &[Section], exec: Execution) -> CliResult<VerifyReport> {
    let sections: Vec<Section> = if only.is_empty() {
        Section::ALL.to_vec()
    } else {
        let mut s = only.to_vec();
        s.sort();
        s.dedup();
        s
    };
    let indices: Vec<CanonicalIndex> = sections.iter().filter_map(|s| s.index()).collect();
    let run = |i: CanonicalIndex| verify_index(i, golden, exec);
    #[cfg(feature = "parallel")]
    let results: Vec<IndexVerification> = match exec {
        Execution::Parallel => {
            use rayon::prelude::*;
            indices.into_par_iter().map(run).collect()
        }
        Execution::Sequential => indices.into_iter().map(run).collect(),
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<IndexVerification> = indices.into_iter().map(run).collect();

    let identities = if sections.contains(&Section::Lefschetz) {
        Some(identity_suite()?)
    } else {
        None
    };
    let mut ok = results.iter().all(IndexVerification::ok);
    let mut summary = results.iter().map(|r| r.summary.clone()).collect::<Vec<_>>().join(", ");
    if let Some(ids) = &identities {
        let exact = ids.iter().all(|c| c.exact);
        ok &= exact;
        let text = if exact {
            "all identities exact".to_string()
        } else {
            format!("{} identities not exact", ids.iter().filter(|c| !c.exact).count())
        };
        summary = if summary.is_empty() {
            text
        } else {
            format!("{summary}; {text}")
        };
    }
    Ok(VerifyReport {
        indices: results,
        identities,
        summary,
        ok,
    })
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    for v in &r.indices {
        let status = if v.ok() { "ok" } else { "MISMATCH" };
        let _ = writeln!(out, "index {}: {} {status}", v.index, v.summary);
        for line in v.diff.lines() {
            let _ = writeln!(out, "  {line}");
        }
    }
    if let Some(ids) = &r.identities {
        for c in ids.iter().filter(|c| !c.exact) {
            let _ = writeln!(out, "identity {}: {} != {}", c.name, c.lhs, c.rhs);
        }
    }
    let _ = writeln!(out, "{}", r.summary);
    out
}

pub fn load_golden(dir: Option<&Path>) -> CliResult<GoldenTables> {
    Ok(GoldenTables::resolve(dir)?)
}

pub fn enumerate_report(index: CanonicalIndex) -> CandidateList {
    enumerate_types(index)
}
