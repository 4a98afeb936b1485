//! Graph properties: finite forbidden-subgraph families, built-in predicates,
//! localization, and their metadata (`d_P`, `c_P`).

mod function;
mod parse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::{
    colorable_within, connected_within, contains_subgraph_within, has_perfect_matching_within,
    is_acyclic_within, is_bipartite_within, standard_graph, Graph, VertexSet,
};
use crate::graph::{PLANARITY_CAP};

pub use function::{
    boolean_function, relevant_vertices, witness_families, BooleanFunction, WitnessFamilies,
    TRUTH_TABLE_CAP, WITNESS_SIZE_CAP,
};
pub use parse::{PropertyFile, BUILTIN_NAMES};

/// Largest clique tried when searching for `c_P`.
pub const CLIQUE_SCAN_CAP: usize = 10;
const PERFECT_MATCHING_EVAL_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "id", content = "params")]
pub enum Builtin {
    Acyclic,
    Bipartite,
    Planar,
    Colorable(usize),
    BoundedDegree(usize),
    Connected,
    PerfectMatching,
    StConnected(usize, usize),
}

impl Builtin {
    pub fn is_hereditary(self) -> bool {
        !matches!(
            self,
            Builtin::Connected | Builtin::PerfectMatching | Builtin::StConnected(..)
        )
    }

    /// Minimum degree of a minimal forbidden subgraph, for the hereditary builtins.
    pub fn default_dp(self) -> Option<usize> {
        match self {
            // cycles, odd cycles and Kuratowski subdivisions all have degree-2 vertices
            Builtin::Acyclic | Builtin::Bipartite | Builtin::Planar => Some(2),
            // (k+1)-critical graphs have minimum degree k
            Builtin::Colorable(k) => Some(k),
            // the star K_{1,d+1}
            Builtin::BoundedDegree(_) => Some(1),
            _ => None,
        }
    }

    fn holds_within(self, g: &Graph, within: VertexSet) -> Result<bool> {
        Ok(match self {
            Builtin::Acyclic => is_acyclic_within(g, within),
            Builtin::Bipartite => is_bipartite_within(g, within),
            Builtin::Planar => {
                cap("vertex count for planarity", within.len(), PLANARITY_CAP)?;
                crate::graph::planar_within(g, within)
            }
            Builtin::Colorable(k) => colorable_within(g, within, k),
            Builtin::BoundedDegree(d) => within.iter().all(|v| g.degree_within(v, within) <= d),
            Builtin::Connected => connected_within(g, within),
            Builtin::PerfectMatching => {
                cap("vertex count for perfect matching", within.len(), PERFECT_MATCHING_EVAL_CAP)?;
                has_perfect_matching_within(g, within)
            }
            Builtin::StConnected(s, t) => {
                if s >= g.n() || t >= g.n() {
                    return Err(Error::VertexOutOfRange {
                        vertex: s.max(t),
                        n: g.n(),
                    });
                }
                within.contains(s)
                    && within.contains(t)
                    && crate::graph::component_of(g, within, s).contains(t)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PropertyKind {
    /// Holds iff no member is a subgraph. Members form an antichain.
    Forbidden(Vec<Graph>),
    Builtin {
        id: Builtin,
        declared_dp: Option<usize>,
    },
    /// Holds iff every open neighborhood induces a graph with the inner property.
    Local(Box<PropertySpec>),
    And(Box<PropertySpec>, Box<PropertySpec>),
}

/// A graph property together with its name.
#[derive(Clone, Debug, PartialEq)]
pub struct PropertySpec {
    pub name: String,
    pub kind: PropertyKind,
}

impl fmt::Display for PropertySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl PropertySpec {
    /// A finite forbidden family, normalized to an antichain under subgraph containment.
    pub fn forbidden(name: impl Into<String>, family: Vec<Graph>) -> Result<Self> {
        let name = name.into();
        if family.is_empty() {
            return Err(Error::Property {
                name,
                reason: "a forbidden family needs at least one graph".into(),
            });
        }
        Ok(PropertySpec {
            name,
            kind: PropertyKind::Forbidden(normalize_antichain(family)),
        })
    }

    pub fn builtin(name: impl Into<String>, id: Builtin) -> Self {
        PropertySpec {
            name: name.into(),
            kind: PropertyKind::Builtin {
                id,
                declared_dp: id.default_dp(),
            },
        }
    }

    /// Independent sets: forbidden `{K2}`.
    pub fn emptiness() -> Self {
        Self::forbidden("emptiness", vec![clique(2)]).expect("nonempty family")
    }

    pub fn triangle_free() -> Self {
        Self::forbidden("triangle-free", vec![clique(3)]).expect("nonempty family")
    }

    pub fn clique_free(t: usize) -> Result<Self> {
        Self::forbidden(format!("Kt-free({t})"), vec![standard_graph("complete", &[t])?])
    }

    /// Forbids the path on `t` vertices.
    pub fn path_free(t: usize) -> Result<Self> {
        Self::forbidden(format!("Pt-free({t})"), vec![standard_graph("path", &[t])?])
    }

    /// Forbids the cycle on `t` vertices.
    pub fn cycle_free(t: usize) -> Result<Self> {
        Self::forbidden(format!("Ct-free({t})"), vec![standard_graph("cycle", &[t])?])
    }

    pub fn acyclic() -> Self {
        Self::builtin("acyclic", Builtin::Acyclic)
    }

    pub fn bipartite() -> Self {
        Self::builtin("bipartite", Builtin::Bipartite)
    }

    pub fn planar() -> Self {
        Self::builtin("planar", Builtin::Planar)
    }

    pub fn colorable(k: usize) -> Self {
        Self::builtin(format!("k-colorable({k})"), Builtin::Colorable(k))
    }

    pub fn bounded_degree(d: usize) -> Self {
        Self::builtin(format!("bounded-degree({d})"), Builtin::BoundedDegree(d))
    }

    pub fn connected() -> Self {
        Self::builtin("connected", Builtin::Connected)
    }

    pub fn perfect_matching() -> Self {
        Self::builtin("perfect-matching", Builtin::PerfectMatching)
    }

    pub fn st_connected(s: usize, t: usize) -> Self {
        Self::builtin(format!("st-connected({s},{t})"), Builtin::StConnected(s, t))
    }

    /// Closed under vertex and edge deletion (equivalently, describable by forbidden subgraphs).
    pub fn is_hereditary(&self) -> bool {
        match &self.kind {
            PropertyKind::Forbidden(_) => true,
            PropertyKind::Builtin { id, .. } => id.is_hereditary(),
            PropertyKind::Local(inner) => inner.is_hereditary(),
            PropertyKind::And(a, b) => a.is_hereditary() && b.is_hereditary(),
        }
    }

    /// The single forbidden graph, when this is a one-member forbidden family.
    pub fn single_forbidden(&self) -> Option<&Graph> {
        match &self.kind {
            PropertyKind::Forbidden(family) if family.len() == 1 => family.first(),
            _ => None,
        }
    }

    pub fn builtin_id(&self) -> Option<Builtin> {
        match &self.kind {
            PropertyKind::Builtin { id, .. } => Some(*id),
            _ => None,
        }
    }

    /// Does `G[within]` satisfy the property?
    pub fn holds_within(&self, g: &Graph, within: VertexSet) -> Result<bool> {
        match &self.kind {
            PropertyKind::Forbidden(family) => Ok(family
                .iter()
                .all(|h| !contains_subgraph_within(h, g, within))),
            PropertyKind::Builtin { id, .. } => id.holds_within(g, within),
            PropertyKind::Local(inner) => {
                for v in within.iter() {
                    if !inner.holds_within(g, g.neighbors(v).intersection(within))? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            PropertyKind::And(a, b) => Ok(a.holds_within(g, within)? && b.holds_within(g, within)?),
        }
    }
}

/// Does `g` satisfy `p`?
pub fn evaluate(p: &PropertySpec, g: &Graph) -> Result<bool> {
    p.holds_within(g, g.vertices())
}

fn clique(t: usize) -> Graph {
    standard_graph("complete", &[t]).expect("small clique")
}

fn normalize_antichain(family: Vec<Graph>) -> Vec<Graph> {
    let mut kept: Vec<Graph> = Vec::new();
    // smallest first, so a member is only compared against possible subgraphs
    let mut family = family;
    family.sort_by_key(|h| (h.n(), h.m()));
    for h in family {
        let redundant = kept
            .iter()
            .any(|k| contains_subgraph_within(k, &h, h.vertices()));
        if !redundant {
            kept.push(h);
        }
    }
    kept
}

/// Minimum vertex degree over the minimal forbidden subgraphs.
pub fn compute_dp(p: &PropertySpec) -> Result<usize> {
    match &p.kind {
        PropertyKind::Forbidden(family) => Ok(family
            .iter()
            .map(Graph::min_degree)
            .min()
            .expect("forbidden families are nonempty")),
        PropertyKind::Builtin { id, declared_dp } if id.is_hereditary() => {
            declared_dp.ok_or_else(|| Error::Property {
                name: p.name.clone(),
                reason: "builtin without a declared d_P".into(),
            })
        }
        PropertyKind::Builtin { .. } => Err(Error::Property {
            name: p.name.clone(),
            reason: "d_P is only defined for hereditary properties".into(),
        }),
        _ => Err(Error::Property {
            name: p.name.clone(),
            reason: "no declared d_P for composite properties".into(),
        }),
    }
}

/// Smallest `t` such that the clique `K_t` does not satisfy `p`.
pub fn compute_cp(p: &PropertySpec) -> Result<usize> {
    if !p.is_hereditary() {
        return Err(Error::Property {
            name: p.name.clone(),
            reason: "c_P is only defined for hereditary properties".into(),
        });
    }
    for t in 1..=CLIQUE_SCAN_CAP {
        if !evaluate(p, &clique(t))? {
            return Ok(t);
        }
    }
    Err(Error::Property {
        name: p.name.clone(),
        reason: format!("every clique up to K{CLIQUE_SCAN_CAP} satisfies the property"),
    })
}

/// The property `P_L`: every open neighborhood induces a graph satisfying `p`.
pub fn localize(p: &PropertySpec) -> Result<PropertySpec> {
    if !p.is_hereditary() {
        return Err(Error::Property {
            name: p.name.clone(),
            reason: "only hereditary properties can be localized".into(),
        });
    }
    Ok(PropertySpec {
        name: format!("local({})", p.name),
        kind: PropertyKind::Local(Box::new(p.clone())),
    })
}

/// `p_local` together with maximum degree at most `d`.
pub fn and_bounded_degree(p_local: &PropertySpec, d: usize) -> PropertySpec {
    let name = match p_local.name.strip_suffix(')') {
        Some(stem) if stem.starts_with("local(") => format!("{stem},{d})"),
        _ => format!("{}+bounded-degree({d})", p_local.name),
    };
    PropertySpec {
        name,
        kind: PropertyKind::And(
            Box::new(p_local.clone()),
            Box::new(PropertySpec::bounded_degree(d)),
        ),
    }
}
