//! Minimum cost over a family of graphs, and the summary table built from it.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{certify_all, verify_bound, BoundRecord, Verdict};
use crate::constructions::build_upper_bound_graph;
use crate::error::{cap, Error, Result};
use crate::graph::{all_graphs, canonical_form, is_vertex_transitive, write_graph6, Graph, CANONICAL_CAP};
use crate::property::{BooleanFunction, PropertySpec};
use crate::solver::{function_cost, EXACT_COST_CAP};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Where sweep graphs come from.
#[derive(Clone, Debug)]
pub enum GraphSource {
    /// Every isomorphism class on `n` vertices.
    All,
    /// A fixed list; only members with `n` vertices are used.
    Graphs(Vec<Graph>),
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub n: usize,
    pub source: GraphSource,
    pub transitive_only: bool,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Run every applicable certifier on the arg-min graph.
    pub with_bounds: bool,
}

impl SweepConfig {
    pub fn all(n: usize) -> Self {
        SweepConfig {
            n,
            source: GraphSource::All,
            transitive_only: false,
            jobs: None,
            with_bounds: false,
        }
    }
}

/// Result of a min-cost sweep for one property and vertex count.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MinCost {
    pub property: String,
    pub n: usize,
    pub transitive_only: bool,
    pub graphs_considered: usize,
    pub relevant_graphs: usize,
    /// `None` when no graph in the source qualifies.
    pub min_cost: Option<usize>,
    /// graph6 of the first minimizer in graph6 order.
    pub argmin: Option<String>,
    pub minimizers: usize,
    pub bounds: Vec<BoundRecord>,
}

/// Isomorphism classes of `graphs` on exactly `n` vertices, in a canonical order.
pub fn source_graphs(source: &GraphSource, n: usize) -> Result<Vec<Graph>> {
    match source {
        GraphSource::All => all_graphs(n),
        GraphSource::Graphs(graphs) => {
            let mut seen: BTreeMap<Vec<u8>, Graph> = BTreeMap::new();
            for g in graphs.iter().filter(|g| g.n() == n) {
                let key = if n <= CANONICAL_CAP {
                    canonical_form(g)?
                } else {
                    write_graph6(g).into_bytes()
                };
                seen.entry(key).or_insert_with(|| g.clone());
            }
            let mut out: Vec<Graph> = seen.into_values().collect();
            out.sort_by_cached_key(write_graph6);
            Ok(out)
        }
    }
}

fn in_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        None => Ok(work()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j.max(1))
                .build()
                .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// Exact cost of every qualifying graph; `None` for graphs that are filtered out.
fn graph_costs(p: &PropertySpec, graphs: &[Graph], transitive_only: bool) -> Result<Vec<Option<usize>>> {
    graphs
        .par_iter()
        .map(|g| {
            let f = BooleanFunction::new(p, g)?;
            if !f.is_graph_relevant() {
                return Ok(None);
            }
            if transitive_only && !is_vertex_transitive(g)? {
                return Ok(None);
            }
            Ok(Some(function_cost(&f)?))
        })
        .collect()
}

pub fn min_cost(p: &PropertySpec, cfg: &SweepConfig) -> Result<MinCost> {
    cap("sweep vertex count", cfg.n, EXACT_COST_CAP)?;
    let graphs = source_graphs(&cfg.source, cfg.n)?;
    min_cost_over(p, &graphs, cfg)
}

fn min_cost_over(p: &PropertySpec, graphs: &[Graph], cfg: &SweepConfig) -> Result<MinCost> {
    let costs = in_pool(cfg.jobs, || graph_costs(p, graphs, cfg.transitive_only))??;
    let mut best: Option<(usize, String)> = None;
    let mut minimizers = 0;
    for (g, c) in graphs.iter().zip(&costs) {
        let Some(c) = *c else { continue };
        let code = write_graph6(g);
        match &mut best {
            Some((b, s)) if c == *b => {
                minimizers += 1;
                if code < *s {
                    *s = code;
                }
            }
            Some((b, _)) if c > *b => {}
            _ => {
                minimizers = 1;
                best = Some((c, code));
            }
        }
    }
    let mut bounds = Vec::new();
    if cfg.with_bounds {
        if let Some((_, code)) = &best {
            let g = graphs.iter().find(|g| write_graph6(g) == *code).expect("arg-min is a source graph");
            bounds = bound_records(p, g)?;
        }
    }
    Ok(MinCost {
        property: p.name.clone(),
        n: cfg.n,
        transitive_only: cfg.transitive_only,
        graphs_considered: graphs.len(),
        relevant_graphs: costs.iter().filter(|c| c.is_some()).count(),
        min_cost: best.as_ref().map(|b| b.0),
        argmin: best.map(|b| b.1),
        minimizers,
        bounds,
    })
}

/// Every applicable certifier on `g`, each verified against the exact solver.
pub fn bound_records(p: &PropertySpec, g: &Graph) -> Result<Vec<BoundRecord>> {
    certify_all(p, g)
        .into_iter()
        .map(|(name, outcome)| {
            let verification = match &outcome {
                Ok(b) => Some(verify_bound(b, p, g)?),
                Err(_) => None,
            };
            Ok(BoundRecord::from_outcome(name, p, &outcome, verification))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundColumn {
    pub certifier: String,
    pub value: Option<usize>,
    pub verdict: Option<Verdict>,
}

/// One property at one vertex count: transitive vs unrestricted minimum cost.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub property: String,
    pub n: usize,
    pub transitive: Option<usize>,
    pub transitive_argmin: Option<String>,
    pub unrestricted: Option<usize>,
    pub argmin: Option<String>,
    /// Worst-case query count of the clique-and-petals construction, when one exists.
    pub construction_budget: Option<usize>,
    /// Certifier values on the unrestricted arg-min graph.
    pub bounds: Vec<BoundColumn>,
}

impl ReportRow {
    /// Verified lower bounds never exceed the minimum, which never exceeds the
    /// construction budget.
    pub fn is_consistent(&self) -> bool {
        let Some(min) = self.unrestricted else {
            return self.bounds.is_empty();
        };
        let bounds_ok = self
            .bounds
            .iter()
            .filter(|b| b.verdict == Some(Verdict::Pass))
            .all(|b| b.value.is_some_and(|v| v <= min));
        let budget_ok = self.construction_budget.is_none_or(|b| min <= b);
        let transitive_ok = self.transitive.is_none_or(|t| min <= t);
        bounds_ok && budget_ok && transitive_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub source: String,
    pub rows: Vec<ReportRow>,
}

/// Sweeps every property over each vertex count in `ns`.
pub fn build_report(
    properties: &[PropertySpec],
    ns: impl IntoIterator<Item = usize>,
    source: &GraphSource,
    jobs: Option<usize>,
) -> Result<Report> {
    if properties.is_empty() {
        return Err(Error::Precondition("the report needs at least one property".into()));
    }
    let mut rows = Vec::new();
    for n in ns {
        cap("sweep vertex count", n, EXACT_COST_CAP)?;
        let graphs = source_graphs(source, n)?;
        for p in properties {
            let mut cfg = SweepConfig {
                n,
                source: source.clone(),
                transitive_only: true,
                jobs,
                with_bounds: false,
            };
            let transitive = min_cost_over(p, &graphs, &cfg)?;
            cfg.transitive_only = false;
            cfg.with_bounds = true;
            let unrestricted = min_cost_over(p, &graphs, &cfg)?;
            let construction_budget = if p.is_hereditary() {
                build_upper_bound_graph(p, n).ok().map(|inst| inst.query_bound())
            } else {
                None
            };
            rows.push(ReportRow {
                property: p.name.clone(),
                n,
                transitive: transitive.min_cost,
                transitive_argmin: transitive.argmin,
                unrestricted: unrestricted.min_cost,
                argmin: unrestricted.argmin,
                construction_budget,
                bounds: unrestricted
                    .bounds
                    .iter()
                    .map(|b| BoundColumn {
                        certifier: b.certifier.clone(),
                        value: b.value,
                        verdict: b.verification.as_ref().map(|v| v.verdict),
                    })
                    .collect(),
            });
        }
    }
    rows.sort_by(|a, b| (&a.property, a.n).cmp(&(&b.property, b.n)));
    let source = match source {
        GraphSource::All => "all graphs".to_string(),
        GraphSource::Graphs(g) => format!("corpus of {} graphs", g.len()),
    };
    Ok(Report {
        schema_version: REPORT_SCHEMA_VERSION,
        source,
        rows,
    })
}

impl Report {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn to_text(&self) -> String {
        let dash = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
        let width = self.rows.iter().map(|r| r.property.len()).max().unwrap_or(8).max(8);
        let mut out = String::new();
        let _ = writeln!(out, "# source: {}", self.source);
        let _ = writeln!(
            out,
            "{:<width$}  {:>3}  {:>10}  {:>12}  {:>6}  bounds on arg-min",
            "property", "n", "transitive", "unrestricted", "budget"
        );
        for r in &self.rows {
            let bounds: Vec<String> = r
                .bounds
                .iter()
                .filter_map(|b| {
                    let v = b.value?;
                    let mark = match b.verdict {
                        Some(Verdict::Pass) => "",
                        Some(Verdict::Fail) => "!",
                        _ => "?",
                    };
                    Some(format!("{}={v}{mark}", b.certifier))
                })
                .collect();
            let _ = writeln!(
                out,
                "{:<width$}  {:>3}  {:>10}  {:>12}  {:>6}  {}",
                r.property,
                r.n,
                dash(r.transitive),
                dash(r.unrestricted),
                dash(r.construction_budget),
                bounds.join(" ")
            );
        }
        out
    }
}
