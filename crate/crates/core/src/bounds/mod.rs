//! Lower-bound certifiers. Each produces a value together with an input and a
//! family of disjoint sensitive blocks there, which is enough to check the
//! value against the exact solver.

mod certifiers;
mod sunflower;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::property::{BooleanFunction, Builtin, PropertyKind, PropertySpec};
use crate::solver::{exact_cost, EXACT_COST_CAP};

pub use certifiers::{
    bounded_degree_bound, chromatic_independence_bound, connectivity_bound, fvs_density_bound,
    general_hereditary_bound, hereditary_threshold, local_property_bound, mon_trans_indicator,
    planar_density_bound, sunflower_forbidden_bound, triangle_freeness_bound,
    FORBIDDEN_GRAPH_CAP, STAR_TARGET_CAP,
};
pub use sunflower::{
    erdos_rado_sunflower, erdos_rado_threshold, find_sunflower, max_sunflower, Sunflower,
    SUNFLOWER_SET_CAP,
};

pub const CERTIFIER_NAMES: &[&str] = &[
    "sunflower-forbidden",
    "general-hereditary",
    "fvs-density",
    "planar-density",
    "chromatic-independence",
    "triangle-freeness",
    "bounded-degree",
    "local-property",
    "mon-trans",
    "connectivity",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

/// The argument a certifier used, with the data it relied on.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Argument {
    Sunflower {
        sunflower: Sunflower,
        family_size: usize,
        set_size: usize,
    },
    MinimalWitness {
        witness: VertexSet,
        threshold: f64,
        above_threshold: bool,
    },
    FeedbackVertexSet {
        fvs: VertexSet,
        n: usize,
        m: usize,
        d_max: usize,
    },
    PlanarDeletion {
        deletion: VertexSet,
        n: usize,
        m: usize,
        d_max: usize,
    },
    Coloring {
        chi: usize,
        classes: Vec<VertexSet>,
        case: u8,
    },
    Triangles {
        case: String,
        d1_max: usize,
        d2_max: usize,
        hitting_set: VertexSet,
        link_vertex: usize,
        link_value: usize,
    },
    Stars {
        case: String,
        d: usize,
        center: usize,
        hitting_set: VertexSet,
        targets: usize,
    },
    MinWitnessSize {
        k: usize,
        witness: VertexSet,
    },
    ComplementMatching {
        edges: Vec<(usize, usize)>,
    },
    CommonNeighbors {
        u: usize,
        v: usize,
        common: VertexSet,
    },
}

impl Argument {
    pub fn summary(&self) -> String {
        match self {
            Argument::Sunflower { sunflower, family_size, set_size } => format!(
                "sunflower with {} petals, core {} (family of {family_size} sets of size {set_size})",
                sunflower.p(),
                sunflower.core
            ),
            Argument::MinimalWitness { witness, threshold, above_threshold } => format!(
                "minimal witness {witness} of size {} ({} threshold {threshold:.3})",
                witness.len(),
                if *above_threshold { "meets" } else { "below" }
            ),
            Argument::FeedbackVertexSet { fvs, n, m, d_max } => {
                format!("minimum feedback vertex set {fvs} (n={n}, m={m}, d_max={d_max})")
            }
            Argument::PlanarDeletion { deletion, n, m, d_max } => {
                format!("minimum planarizing deletion {deletion} (n={n}, m={m}, d_max={d_max})")
            }
            Argument::Coloring { chi, classes, case } => format!(
                "{chi}-coloring with largest class {}, case {case}",
                classes.first().copied().unwrap_or_default()
            ),
            Argument::Triangles { case, d1_max, d2_max, hitting_set, link_vertex, link_value } => format!(
                "{case} (d1_max={d1_max}, d2_max={d2_max}, hitting set {hitting_set}, link of {link_vertex} gives {link_value})"
            ),
            Argument::Stars { case, d, center, hitting_set, targets } => format!(
                "{case} (d={d}, center {center}, hitting set {hitting_set} over {targets} targets)"
            ),
            Argument::MinWitnessSize { k, witness } => {
                format!("smallest failing set {witness} of size {k}")
            }
            Argument::ComplementMatching { edges } => {
                format!("complement matching of size {}", edges.len())
            }
            Argument::CommonNeighbors { u, v, common } => {
                format!("non-adjacent pair ({u},{v}) with common neighbors {common}")
            }
        }
    }
}

/// An input and disjoint blocks, each flipping the function there.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub input: VertexSet,
    pub blocks: Vec<VertexSet>,
    pub argument: Argument,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Bound {
    pub certifier: String,
    pub property: String,
    pub value: usize,
    pub direction: Direction,
    pub asymptotic_only: bool,
    pub certificate: Certificate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unverifiable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub verdict: Verdict,
    pub exact_cost: Option<usize>,
    pub replay_queries: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Verification {
    fn unverifiable(reason: impl Into<String>) -> Self {
        Verification {
            verdict: Verdict::Unverifiable,
            exact_cost: None,
            replay_queries: None,
            reason: Some(reason.into()),
        }
    }
}

/// Checks the blocks of a certificate against `f`: in range, nonempty,
/// pairwise disjoint, and each one flips `f` at the certificate input.
pub fn check_blocks(f: &BooleanFunction, cert: &Certificate) -> Result<()> {
    let n = f.n();
    cert.input.check_within(n)?;
    let fx = f.eval(cert.input);
    let mut seen = VertexSet::EMPTY;
    for b in &cert.blocks {
        b.check_within(n)?;
        if b.is_empty() {
            return Err(Error::Validation("empty block".into()));
        }
        if !b.is_disjoint(seen) {
            return Err(Error::Validation(format!("block {b} overlaps an earlier block")));
        }
        seen = seen.union(*b);
        if f.eval(cert.input.symmetric_difference(*b)) == fx {
            return Err(Error::Validation(format!(
                "block {b} is not sensitive at {}",
                cert.input
            )));
        }
    }
    Ok(())
}

/// Compares a bound with the exact cost and replays the optimal strategy on the certificate input.
pub fn verify_bound(b: &Bound, p: &PropertySpec, g: &Graph) -> Result<Verification> {
    if b.asymptotic_only {
        return Ok(Verification::unverifiable("asymptotic indicator, not a sound bound"));
    }
    if g.n() > EXACT_COST_CAP {
        return Ok(Verification::unverifiable(format!(
            "{} vertices exceeds the exact search cap {EXACT_COST_CAP}",
            g.n()
        )));
    }
    let cert = exact_cost(p, g)?;
    let cost = cert.cost;
    let fail = |reason: String, replay: Option<usize>| Verification {
        verdict: Verdict::Fail,
        exact_cost: Some(cost),
        replay_queries: replay,
        reason: Some(reason),
    };
    if b.direction == Direction::Upper {
        return Ok(if cost <= b.value {
            Verification {
                verdict: Verdict::Pass,
                exact_cost: Some(cost),
                replay_queries: None,
                reason: None,
            }
        } else {
            fail(format!("exact cost {cost} exceeds upper bound {}", b.value), None)
        });
    }
    if let Err(e) = check_blocks(cert.function(), &b.certificate) {
        return Ok(fail(e.to_string(), None));
    }
    let (_, used) = cert.strategy.playout(b.certificate.input)?;
    Ok(if b.certificate.blocks.len() < b.value {
        fail(
            format!(
                "certificate has {} blocks, value is {}",
                b.certificate.blocks.len(),
                b.value
            ),
            Some(used),
        )
    } else if b.value > cost {
        fail(format!("value {} exceeds exact cost {cost}", b.value), Some(used))
    } else if used < b.value {
        fail(
            format!("optimal strategy answers the certificate input after {used} queries"),
            Some(used),
        )
    } else {
        Verification {
            verdict: Verdict::Pass,
            exact_cost: Some(cost),
            replay_queries: Some(used),
            reason: None,
        }
    })
}

/// The certifiers whose argument is about `p`.
pub fn applicable_certifiers(p: &PropertySpec) -> Vec<&'static str> {
    let mut names = Vec::new();
    if p.single_forbidden().is_some_and(|h| h.n() <= FORBIDDEN_GRAPH_CAP) {
        names.push("sunflower-forbidden");
    }
    if p.is_hereditary() {
        names.push("general-hereditary");
    }
    match p.builtin_id() {
        Some(Builtin::Acyclic) => names.push("fvs-density"),
        Some(Builtin::Planar) => names.push("planar-density"),
        Some(Builtin::BoundedDegree(_)) => names.push("bounded-degree"),
        Some(Builtin::Connected) => names.push("connectivity"),
        _ => {}
    }
    if let Some(h) = p.single_forbidden() {
        if h.n() == 2 {
            names.push("chromatic-independence");
        } else if h.n() == 3 && h.m() == 3 {
            names.push("triangle-freeness");
        }
    }
    if local_parts(p).is_some() {
        names.push("local-property");
    }
    if p.is_hereditary() {
        names.push("mon-trans");
    }
    names
}

/// `(P_L, d)` for `local(x)` (with `d = None`) or `local(x, d)`.
fn local_parts(p: &PropertySpec) -> Option<(&PropertySpec, Option<usize>)> {
    match &p.kind {
        PropertyKind::Local(_) => Some((p, None)),
        PropertyKind::And(a, b) => match (&a.kind, b.builtin_id()) {
            (PropertyKind::Local(_), Some(Builtin::BoundedDegree(d))) => Some((a, Some(d))),
            _ => None,
        },
        _ => None,
    }
}

/// Runs the named certifier for `p` on `g`.
pub fn certify(name: &str, p: &PropertySpec, g: &Graph) -> Result<Bound> {
    let wrong = || {
        Error::Precondition(format!("certifier `{name}` does not apply to property `{p}`"))
    };
    if !applicable_certifiers(p).contains(&name) {
        return Err(if CERTIFIER_NAMES.contains(&name) {
            wrong()
        } else {
            Error::InvalidParams {
                name: name.to_string(),
                reason: format!("unknown certifier; expected one of {}", CERTIFIER_NAMES.join(", ")),
            }
        });
    }
    let mut bound = match name {
        "sunflower-forbidden" => sunflower_forbidden_bound(p, g)?,
        "general-hereditary" => general_hereditary_bound(p, g)?,
        "fvs-density" => fvs_density_bound(g)?,
        "planar-density" => planar_density_bound(g)?,
        "chromatic-independence" => chromatic_independence_bound(g)?,
        "triangle-freeness" => triangle_freeness_bound(g)?,
        "bounded-degree" => match p.builtin_id() {
            Some(Builtin::BoundedDegree(d)) => bounded_degree_bound(g, d)?,
            _ => return Err(wrong()),
        },
        "local-property" => {
            let (pl, d) = local_parts(p).ok_or_else(wrong)?;
            local_property_bound(pl, g, d.unwrap_or_else(|| g.max_degree()))?
        }
        "mon-trans" => mon_trans_indicator(p, g)?,
        "connectivity" => connectivity_bound(g)?,
        _ => return Err(wrong()),
    };
    bound.property = p.name.clone();
    Ok(bound)
}

/// Every applicable certifier, in a fixed order; failures are kept alongside successes.
pub fn certify_all(p: &PropertySpec, g: &Graph) -> Vec<(&'static str, Result<Bound>)> {
    applicable_certifiers(p)
        .into_iter()
        .map(|name| (name, certify(name, p, g)))
        .collect()
}

/// One line of a bound report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRecord {
    pub certifier: String,
    pub property: String,
    pub value: Option<usize>,
    pub asymptotic_only: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl BoundRecord {
    pub fn from_outcome(
        certifier: &str,
        p: &PropertySpec,
        outcome: &Result<Bound>,
        verification: Option<Verification>,
    ) -> Self {
        match outcome {
            Ok(b) => BoundRecord {
                certifier: certifier.to_string(),
                property: p.name.clone(),
                value: Some(b.value),
                asymptotic_only: b.asymptotic_only,
                summary: b.certificate.argument.summary(),
                certificate: Some(b.certificate.clone()),
                verification,
                error: None,
            },
            Err(e) => BoundRecord {
                certifier: certifier.to_string(),
                property: p.name.clone(),
                value: None,
                asymptotic_only: false,
                summary: String::new(),
                certificate: None,
                verification: None,
                error: Some(e.to_string()),
            },
        }
    }
}
