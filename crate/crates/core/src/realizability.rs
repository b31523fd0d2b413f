//! Label-preserving induced embeddings of labeled configurations into a host
//! curve graph.
//!
//! The search places components largest first. Each component starts at an
//! anchor vertex and grows in breadth-first order, so every later vertex has
//! exactly one placed neighbor inside its component. A candidate host curve
//! must carry the vertex's mark, be unused, and see exactly the images of its
//! placed neighbors among all placed curves. Identical labeled components
//! take strictly increasing anchor images. Candidates are tried in curve-name
//! order, so the first witness found is the least one in search order.

use crate::dynkin::{Configuration, DynkinComponent};
use crate::enumerator::{enumerate_types, exclusion_reason, ExclusionReason, Family};
use crate::golden::GoldenTables;
use crate::labeling::{is_valid_labeling, Labeling, Mark};
use crate::lefschetz::Order6Trace;
use crate::shioda_inose::{host_graph, CurveGraph, SurfaceId};
use crate::{CanonicalIndex, Execution, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Host curve names for each configuration vertex, per component in
/// configuration order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub components: Vec<Vec<String>>,
}

impl Embedding {
    /// Renders each component's chain, e.g. `E11' E12' > F1-E13'`.
    pub fn render(&self, config: &Configuration) -> Vec<String> {
        config
            .components()
            .iter()
            .zip(&self.components)
            .map(|(c, names)| match c.kind() {
                crate::dynkin::Kind::D => format!("{} {} > {}", names[0], names[1], names[2..].join("-")),
                _ => names.join("-"),
            })
            .collect()
    }
}

struct Step {
    vertex: usize,
    parent: Option<usize>,
}

struct Plan {
    /// Position in the configuration's component list.
    component: usize,
    steps: Vec<Step>,
    /// Anchor image must exceed that of the previous plan entry.
    after_previous: bool,
}

fn bfs_plan(component: &DynkinComponent, marks: &[Mark]) -> Vec<Step> {
    let anchor = marks.iter().position(|&m| m == Mark::F).unwrap_or(0);
    let mut seen = vec![false; component.rank()];
    let mut steps = vec![Step {
        vertex: anchor,
        parent: None,
    }];
    seen[anchor] = true;
    let mut head = 0;
    while head < steps.len() {
        let v = steps[head].vertex;
        head += 1;
        for &u in component.neighbors(v) {
            if !seen[u] {
                seen[u] = true;
                steps.push(Step {
                    vertex: u,
                    parent: Some(v),
                });
            }
        }
    }
    steps
}

struct Search<'a> {
    config: &'a Configuration,
    labeling: &'a Labeling,
    host: &'a CurveGraph,
    plans: Vec<Plan>,
    /// Image per (component, vertex).
    images: Vec<Vec<usize>>,
    placed: u32,
}

impl Search<'_> {
    fn run(&mut self, plan: usize, step: usize) -> bool {
        if plan == self.plans.len() {
            return true;
        }
        if step == self.plans[plan].steps.len() {
            return self.run(plan + 1, 0);
        }
        let ci = self.plans[plan].component;
        let component = &self.config.components()[ci];
        let Step { vertex, parent } = self.plans[plan].steps[step];
        let mark = self.labeling.components[ci][vertex];
        let need_degree = component.degree(vertex);
        let candidates: u32 = match parent {
            Some(p) => self.host.neighbor_mask(self.images[ci][p]),
            None => {
                let mut all = if self.host.len() >= 32 {
                    u32::MAX
                } else {
                    (1u32 << self.host.len()) - 1
                };
                if self.plans[plan].after_previous {
                    let prev = &self.plans[plan - 1];
                    let prev_anchor = self.images[prev.component][prev.steps[0].vertex];
                    all &= !((2u32 << prev_anchor) - 1);
                }
                all
            }
        };
        let required = match parent {
            Some(p) => 1u32 << self.images[ci][p],
            None => 0,
        };
        let mut free = candidates & !self.placed;
        while free != 0 {
            let x = free.trailing_zeros() as usize;
            free &= free - 1;
            if self.host.label(x) != Some(mark)
                || self.host.degree(x) < need_degree
                || self.host.neighbor_mask(x) & self.placed != required
            {
                continue;
            }
            self.images[ci][vertex] = x;
            self.placed |= 1 << x;
            if self.run(plan, step + 1) {
                return true;
            }
            self.placed &= !(1 << x);
        }
        false
    }
}

fn mark_count(labeling: &Labeling, mark: Mark) -> usize {
    labeling.count(mark)
}

/// Searches for a witness embedding of `labeling` into `host`.
pub fn find_embedding(config: &Configuration, labeling: &Labeling, host: &CurveGraph) -> Option<Embedding> {
    if labeling.index != host.index() || !is_valid_labeling(config, labeling) || host.len() > 32 {
        return None;
    }
    // coverage and label exactness force equal counts of fixed marks
    for mark in [Mark::F, Mark::H] {
        if mark_count(labeling, mark) != host.curves_with(mark).len() {
            return None;
        }
    }
    if config.rank() > host.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..config.components().len()).collect();
    order.sort_by(|&a, &b| {
        let (ca, cb) = (&config.components()[a], &config.components()[b]);
        cb.rank()
            .cmp(&ca.rank())
            .then_with(|| (ca.kind(), &labeling.components[a]).cmp(&(cb.kind(), &labeling.components[b])))
            .then(a.cmp(&b))
    });
    let mut plans: Vec<Plan> = Vec::new();
    for (k, &ci) in order.iter().enumerate() {
        let after_previous = k > 0 && {
            let prev = order[k - 1];
            config.components()[prev] == config.components()[ci] && labeling.components[prev] == labeling.components[ci]
        };
        plans.push(Plan {
            component: ci,
            steps: bfs_plan(&config.components()[ci], &labeling.components[ci]),
            after_previous,
        });
    }
    let mut search = Search {
        config,
        labeling,
        host,
        plans,
        images: config.components().iter().map(|c| vec![0; c.rank()]).collect(),
        placed: 0,
    };
    if !search.run(0, 0) {
        return None;
    }
    Some(Embedding {
        components: search
            .images
            .iter()
            .map(|img| img.iter().map(|&x| host.name(x).to_string()).collect())
            .collect(),
    })
}

/// A broken embedding invariant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingViolation {
    Shape,
    UnknownCurve(String),
    NotInjective(String),
    Adjacency { a: String, b: String },
    Label { curve: String, expected: Mark },
    Uncovered(String),
    Swapped(String),
}

impl fmt::Display for EmbeddingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbeddingViolation::Shape => write!(f, "embedding shape differs from configuration"),
            EmbeddingViolation::UnknownCurve(c) => write!(f, "unknown curve {c}"),
            EmbeddingViolation::NotInjective(c) => write!(f, "curve {c} used twice"),
            EmbeddingViolation::Adjacency { a, b } => write!(f, "adjacency of {a} and {b} disagrees"),
            EmbeddingViolation::Label { curve, expected } => write!(f, "{curve} is not marked {expected}"),
            EmbeddingViolation::Uncovered(c) => write!(f, "fixed curve {c} not covered"),
            EmbeddingViolation::Swapped(c) => write!(f, "{c} is moved by the automorphism"),
        }
    }
}

/// Re-checks every embedding invariant from scratch: injectivity, induced
/// adjacency across all vertex pairs, marks, coverage of every fixed and
/// square-fixed host curve, and avoidance of swapped curves.
pub fn check_embedding(
    config: &Configuration,
    labeling: &Labeling,
    host: &CurveGraph,
    embedding: &Embedding,
) -> Vec<EmbeddingViolation> {
    let mut out = Vec::new();
    let shape_ok = embedding.components.len() == config.components().len()
        && labeling.components.len() == config.components().len()
        && config
            .components()
            .iter()
            .zip(&embedding.components)
            .zip(&labeling.components)
            .all(|((c, e), m)| e.len() == c.rank() && m.len() == c.rank());
    if !shape_ok {
        return vec![EmbeddingViolation::Shape];
    }
    // flatten to (component, vertex, curve id)
    let mut flat = Vec::new();
    for (ci, names) in embedding.components.iter().enumerate() {
        for (v, name) in names.iter().enumerate() {
            match host.curve(name) {
                Ok(id) => flat.push((ci, v, id)),
                Err(_) => out.push(EmbeddingViolation::UnknownCurve(name.clone())),
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let used: BTreeSet<usize> = flat.iter().map(|&(_, _, x)| x).collect();
    for (i, &(ci, v, x)) in flat.iter().enumerate() {
        if flat[..i].iter().any(|&(_, _, y)| y == x) {
            out.push(EmbeddingViolation::NotInjective(host.name(x).into()));
        }
        let expected = labeling.components[ci][v];
        if host.swapped_pairs().iter().any(|&(a, b)| a == x || b == x) {
            out.push(EmbeddingViolation::Swapped(host.name(x).into()));
        } else if host.label(x) != Some(expected) {
            out.push(EmbeddingViolation::Label {
                curve: host.name(x).into(),
                expected,
            });
        }
        for &(cj, u, y) in &flat[i + 1..] {
            let want = ci == cj && config.components()[ci].is_adjacent(v, u);
            if host.is_adjacent(x, y) != want {
                out.push(EmbeddingViolation::Adjacency {
                    a: host.name(x).into(),
                    b: host.name(y).into(),
                });
            }
        }
    }
    for mark in [Mark::F, Mark::H] {
        for x in host.curves_with(mark) {
            if !used.contains(&x) {
                out.push(EmbeddingViolation::Uncovered(host.name(x).into()));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Realized {
        witness: Embedding,
    },
    /// No witness among the 24 host curves; realizability stays open.
    Indeterminate,
    /// No witness among the host curves (indices 2 and 4).
    NotEmbeddable,
    Excluded {
        reason: ExclusionReason,
    },
}

impl Verdict {
    pub fn is_realized(&self) -> bool {
        matches!(self, Verdict::Realized { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationEntry {
    #[serde(flatten)]
    pub configuration: Configuration,
    pub family: Option<Family>,
    pub labeling: Option<Labeling>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub index: CanonicalIndex,
    pub surface: Option<SurfaceId>,
    pub entries: Vec<ClassificationEntry>,
    pub trace: Option<Order6Trace>,
}

impl ClassificationReport {
    pub fn realized(&self) -> BTreeSet<String> {
        self.names_where(|v| v.is_realized())
    }

    pub fn indeterminate(&self) -> BTreeSet<String> {
        self.names_where(|v| matches!(v, Verdict::Indeterminate))
    }

    pub fn not_embeddable(&self) -> BTreeSet<String> {
        self.names_where(|v| matches!(v, Verdict::NotEmbeddable))
    }

    fn names_where(&self, f: impl Fn(&Verdict) -> bool) -> BTreeSet<String> {
        self.entries
            .iter()
            .filter(|e| f(&e.verdict))
            .map(|e| e.configuration.name())
            .collect()
    }

    /// e.g. `48 (40 realized + 8 indeterminate)`.
    pub fn summary(&self) -> String {
        if self.index == CanonicalIndex::Six {
            let verdict = match &self.trace {
                Some(t) if t.impossible => "impossible",
                _ => "not excluded",
            };
            return format!("index 6 {verdict}");
        }
        let mut parts = vec![format!("{} realized", self.realized().len())];
        let ind = self.indeterminate().len();
        if ind > 0 {
            parts.push(format!("{ind} indeterminate"));
        }
        let ne = self.not_embeddable().len();
        if ne > 0 {
            parts.push(format!("{ne} not embeddable"));
        }
        format!("{} ({})", self.entries.len(), parts.join(" + "))
    }
}

fn miss_verdict(index: CanonicalIndex) -> Verdict {
    if index == CanonicalIndex::Three {
        Verdict::Indeterminate
    } else {
        Verdict::NotEmbeddable
    }
}

/// Realizability verdict for one configuration at `index`.
pub fn realize(config: &Configuration, index: CanonicalIndex) -> Result<ClassificationEntry> {
    let family = if index == CanonicalIndex::Three {
        enumerate_types(index)
            .types
            .into_iter()
            .find(|t| t.configuration == *config)
            .and_then(|t| t.family)
    } else {
        None
    };
    if let Some(reason) = exclusion_reason(config, index) {
        return Ok(ClassificationEntry {
            configuration: config.clone(),
            family,
            labeling: None,
            verdict: Verdict::Excluded { reason },
        });
    }
    let labeling = crate::labeling::enumerate_labelings(config, index)
        .into_iter()
        .next()
        .expect("not excluded");
    let surface = SurfaceId::for_index(index).expect("index 6 is excluded above");
    let host = host_graph(surface, index)?;
    let verdict = match find_embedding(config, &labeling, &host) {
        Some(witness) => Verdict::Realized { witness },
        None => miss_verdict(index),
    };
    Ok(ClassificationEntry {
        configuration: config.clone(),
        family,
        labeling: Some(labeling),
        verdict,
    })
}

/// Enumerates, labels and searches every candidate type for `index`.
pub fn classify(index: CanonicalIndex, exec: Execution) -> ClassificationReport {
    let list = enumerate_types(index);
    let surface = SurfaceId::for_index(index);
    let host = surface.map(|s| host_graph(s, index).expect("supported pair"));
    let entries = exec.map(list.types, |t| {
        let labeling = t.labelings.into_iter().next();
        let verdict = match (&labeling, &host) {
            (Some(l), Some(h)) => match find_embedding(&t.configuration, l, h) {
                Some(witness) => Verdict::Realized { witness },
                None => miss_verdict(index),
            },
            _ => Verdict::Excluded {
                reason: exclusion_reason(&t.configuration, index).unwrap_or(ExclusionReason::NoGlobalCombination),
            },
        };
        ClassificationEntry {
            configuration: t.configuration,
            family: t.family,
            labeling,
            verdict,
        }
    });
    ClassificationReport {
        index,
        surface,
        entries,
        trace: list.trace,
    }
}

/// Differences between a report and the reference tables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenDiff {
    pub index: Option<CanonicalIndex>,
    pub missing_realized: Vec<String>,
    pub unexpected_realized: Vec<String>,
    pub missing_indeterminate: Vec<String>,
    pub unexpected_indeterminate: Vec<String>,
    /// Reference witnesses that fail validation on the host.
    pub invalid_witnesses: Vec<String>,
}

impl GoldenDiff {
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn len(&self) -> usize {
        self.missing_realized.len()
            + self.unexpected_realized.len()
            + self.missing_indeterminate.len()
            + self.unexpected_indeterminate.len()
            + self.invalid_witnesses.len()
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        let groups = [
            ("missing realized", &self.missing_realized),
            ("unexpected realized", &self.unexpected_realized),
            ("missing indeterminate", &self.missing_indeterminate),
            ("unexpected indeterminate", &self.unexpected_indeterminate),
            ("invalid witness", &self.invalid_witnesses),
        ];
        for (label, names) in groups {
            out.extend(names.iter().map(|n| format!("{label}: {n}")));
        }
        out
    }
}

/// Compares a report's realized and indeterminate sets with the reference
/// tables and re-validates every reference witness.
pub fn verify_golden(report: &ClassificationReport, golden: &GoldenTables) -> GoldenDiff {
    let reference = golden.for_index(report.index);
    let want_realized: BTreeSet<String> = reference
        .realized
        .iter()
        .map(|w| {
            w.configuration()
                .map(|c| c.name())
                .unwrap_or_else(|_| w.type_name.clone())
        })
        .collect();
    let want_indeterminate: BTreeSet<String> = reference
        .indeterminate
        .iter()
        .map(|n| Configuration::parse(n).map(|c| c.name()).unwrap_or_else(|_| n.clone()))
        .collect();
    let got_realized = report.realized();
    let got_indeterminate = report.indeterminate();
    let diff = |a: &BTreeSet<String>, b: &BTreeSet<String>| a.difference(b).cloned().collect::<Vec<_>>();

    let mut invalid = Vec::new();
    if let Some(surface) = report.surface {
        if let Ok(host) = host_graph(surface, report.index) {
            for w in reference.realized {
                let ok = w
                    .as_embedding(report.index)
                    .map(|(c, l, e)| check_embedding(&c, &l, &host, &e).is_empty())
                    .unwrap_or(false);
                if !ok {
                    invalid.push(w.type_name.clone());
                }
            }
        }
    }
    GoldenDiff {
        index: Some(report.index),
        missing_realized: diff(&want_realized, &got_realized),
        unexpected_realized: diff(&got_realized, &want_realized),
        missing_indeterminate: diff(&want_indeterminate, &got_indeterminate),
        unexpected_indeterminate: diff(&got_indeterminate, &want_indeterminate),
        invalid_witnesses: invalid,
    }
}
