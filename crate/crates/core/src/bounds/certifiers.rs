use super::sunflower::max_sunflower;
use super::{Argument, Bound, Certificate, Direction};
use crate::error::{cap, Error, Result};
use crate::graph::{
    chromatic_number, colorable_within, coloring_within, contains_subgraph_within,
    is_vertex_transitive, max_matching, min_feedback_vertex_set, min_hitting_set, planar_within,
    subsets_of_size, triangle_support, Graph, VertexSet, HITTING_SET_CAP, PLANARITY_CAP,
};
use crate::property::{
    and_bounded_degree, BooleanFunction, PropertyKind, PropertySpec, WitnessFamilies,
    WITNESS_SIZE_CAP,
};

/// Largest forbidden graph for the sunflower certifier.
pub const FORBIDDEN_GRAPH_CAP: usize = 6;
/// Most star target sets handed to the hitting-set search.
pub const STAR_TARGET_CAP: usize = 200_000;
const NEIGHBOR_CHOICE_CAP: usize = 10_000;

fn singletons(s: VertexSet) -> Vec<VertexSet> {
    s.iter().map(VertexSet::singleton).collect()
}

fn ceil_div(a: usize, b: usize) -> usize {
    a.div_ceil(b)
}

fn lower(certifier: &str, property: &str, value: usize, certificate: Certificate) -> Bound {
    Bound {
        certifier: certifier.to_string(),
        property: property.to_string(),
        value,
        direction: Direction::Lower,
        asymptotic_only: false,
        certificate,
    }
}

fn require_relevant(f: &BooleanFunction) -> Result<()> {
    let irrelevant = VertexSet::full(f.n()).difference(f.relevant_vertices());
    if irrelevant.is_empty() {
        Ok(())
    } else {
        Err(Error::Precondition(format!("vertices {irrelevant} are not relevant")))
    }
}

fn inconsistent(what: &str, have: usize, value: usize) -> Error {
    Error::Validation(format!("{what}: certificate has {have} blocks for value {value}"))
}

/// `ln n / (2 ln ln n)`, taken as 1 for `n <= 15`.
pub fn hereditary_threshold(n: usize) -> f64 {
    if n <= 15 {
        return 1.0;
    }
    let ln = (n as f64).ln();
    ln / (2.0 * ln.ln())
}

/// For a single forbidden graph `H` on `k` vertices: the largest sunflower in
/// the family of `k`-sets whose induced graph contains `H`. With the core
/// present, each petal completes a copy of `H`.
pub fn sunflower_forbidden_bound(p: &PropertySpec, g: &Graph) -> Result<Bound> {
    let h = p.single_forbidden().ok_or_else(|| {
        Error::Precondition(format!("`{p}` is not a single forbidden subgraph"))
    })?;
    let k = h.n();
    cap("forbidden graph size", k, FORBIDDEN_GRAPH_CAP)?;
    require_relevant(&BooleanFunction::new(p, g)?)?;
    let family: Vec<VertexSet> = subsets_of_size(g.vertices(), k)
        .filter(|&s| contains_subgraph_within(h, g, s))
        .collect();
    if family.len() * k < g.n() {
        return Err(Error::Validation(format!(
            "only {} copies of the forbidden graph on {} vertices",
            family.len(),
            g.n()
        )));
    }
    let sunflower = max_sunflower(&family)?.expect("family is nonempty");
    let value = sunflower.p();
    Ok(lower(
        "sunflower-forbidden",
        &p.name,
        value,
        Certificate {
            input: sunflower.core,
            blocks: sunflower.petal_parts(),
            argument: Argument::Sunflower {
                sunflower,
                family_size: family.len(),
                set_size: k,
            },
        },
    ))
}

/// The larger of the biggest minimal witness (all of it must be queried) and
/// the best sunflower among the witnesses of one size.
pub fn general_hereditary_bound(p: &PropertySpec, g: &Graph) -> Result<Bound> {
    if !p.is_hereditary() {
        return Err(Error::Precondition(format!("`{p}` is not hereditary")));
    }
    let f = BooleanFunction::new(p, g)?;
    require_relevant(&f)?;
    let families = WitnessFamilies::from_function(&f, g.n().min(WITNESS_SIZE_CAP));
    let k = families
        .largest_size()
        .ok_or_else(|| Error::Precondition("no failing vertex set".into()))?;
    let threshold = hereditary_threshold(g.n());
    let witness = families.family(k)[0];
    let mut best = None;
    for (&size, family) in &families.by_size {
        if let Some(s) = max_sunflower(family)? {
            if best.as_ref().is_none_or(|(_, b): &(usize, super::Sunflower)| s.p() > b.p()) {
                best = Some((size, s));
            }
        }
    }
    match best {
        Some((size, sunflower)) if sunflower.p() > k => {
            let family_size = families.family(size).len();
            Ok(lower(
                "general-hereditary",
                &p.name,
                sunflower.p(),
                Certificate {
                    input: sunflower.core,
                    blocks: sunflower.petal_parts(),
                    argument: Argument::Sunflower {
                        sunflower,
                        family_size,
                        set_size: size,
                    },
                },
            ))
        }
        _ => Ok(lower(
            "general-hereditary",
            &p.name,
            k,
            Certificate {
                input: witness,
                blocks: singletons(witness),
                argument: Argument::MinimalWitness {
                    witness,
                    threshold,
                    above_threshold: k as f64 >= threshold,
                },
            },
        )),
    }
}

/// Acyclicity: `ceil((m - n) / d_max)`, certified by a minimum feedback vertex
/// set `F`. With everything outside `F` present, each vertex of `F` closes a cycle.
pub fn fvs_density_bound(g: &Graph) -> Result<Bound> {
    let (n, m, d_max) = (g.n(), g.m(), g.max_degree());
    let value = if d_max == 0 || m <= n { 0 } else { ceil_div(m - n, d_max) };
    let fvs = min_feedback_vertex_set(g)?;
    if fvs.len() < value {
        return Err(inconsistent("feedback vertex set", fvs.len(), value));
    }
    Ok(lower(
        "fvs-density",
        "acyclic",
        value,
        Certificate {
            input: g.vertices().difference(fvs),
            blocks: singletons(fvs),
            argument: Argument::FeedbackVertexSet { fvs, n, m, d_max },
        },
    ))
}

/// Planarity: `ceil((m - 3n + 6) / d_max)`, certified by a minimum vertex
/// deletion leaving a planar graph.
pub fn planar_density_bound(g: &Graph) -> Result<Bound> {
    let (n, m, d_max) = (g.n(), g.m(), g.max_degree());
    if n < 3 {
        return Err(Error::Precondition("planar density needs at least 3 vertices".into()));
    }
    cap("vertex count for planarity", n, PLANARITY_CAP)?;
    let excess = (m + 6).saturating_sub(3 * n);
    let value = if d_max == 0 { 0 } else { ceil_div(excess, d_max) };
    let all = g.vertices();
    let deletion = (0..=n)
        .find_map(|size| subsets_of_size(all, size).find(|&d| planar_within(g, all.difference(d))))
        .expect("the empty graph is planar");
    if deletion.len() < value {
        return Err(inconsistent("planar deletion", deletion.len(), value));
    }
    Ok(lower(
        "planar-density",
        "planar",
        value,
        Certificate {
            input: all.difference(deletion),
            blocks: singletons(deletion),
            argument: Argument::PlanarDeletion { deletion, n, m, d_max },
        },
    ))
}

/// Emptiness: `ceil(n / chi)`. Uses a `chi`-coloring whose largest class
/// `C_max` is as big as possible. If `C_max` is at most `(1 - 1/chi) n`, the
/// input is `C_max` and every other vertex is sensitive; otherwise the input
/// is the class with the most neighbors in `C_max`.
pub fn chromatic_independence_bound(g: &Graph) -> Result<Bound> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("graph has no vertices".into()));
    }
    let isolated = g.isolated_vertices();
    if !isolated.is_empty() {
        return Err(Error::Precondition(format!("isolated vertices {isolated}")));
    }
    let chi = chromatic_number(g)?;
    let all = g.vertices();
    let (c_max, rest) = (1..=n)
        .rev()
        .find_map(|size| {
            subsets_of_size(all, size).find_map(|s| {
                if g.edges_within(s) != 0 || !colorable_within(g, all.difference(s), chi - 1) {
                    return None;
                }
                coloring_within(g, all.difference(s), chi - 1).map(|colors| (s, colors))
            })
        })
        .expect("an optimal coloring has a largest class");
    let mut classes = vec![c_max];
    for c in 0..chi - 1 {
        let class: VertexSet = all.difference(c_max).iter().filter(|&v| rest[v] == c).collect();
        if !class.is_empty() {
            classes.push(class);
        }
    }
    let value = ceil_div(n, chi);
    let (case, input, sensitive) = if chi * c_max.len() <= (chi - 1) * n {
        (1, c_max, all.difference(c_max))
    } else {
        let (input, touched) = classes[1..]
            .iter()
            .map(|&c| {
                let touched: VertexSet = c_max
                    .iter()
                    .filter(|&v| !g.neighbors(v).is_disjoint(c))
                    .collect();
                (c, touched)
            })
            .max_by_key(|(c, t)| (t.len(), std::cmp::Reverse(*c)))
            .expect("chi is at least 2 without isolated vertices");
        (2, input, touched)
    };
    if sensitive.len() < value {
        return Err(inconsistent("chromatic case split", sensitive.len(), value));
    }
    Ok(lower(
        "chromatic-independence",
        "emptiness",
        value,
        Certificate {
            input,
            blocks: singletons(sensitive),
            argument: Argument::Coloring { chi, classes, case },
        },
    ))
}

/// Triangle-freeness: the best of (a) the apexes over one edge, (b) a minimum
/// triangle hitting set, (c) the emptiness bound on the link of the vertex in
/// the most triangles, with that vertex present.
pub fn triangle_freeness_bound(g: &Graph) -> Result<Bound> {
    let support = triangle_support(g);
    let covered = support.triangles.iter().fold(VertexSet::EMPTY, |u, t| u.union(*t));
    let missing = g.vertices().difference(covered);
    if !missing.is_empty() {
        return Err(Error::Precondition(format!("vertices {missing} lie on no triangle")));
    }
    let (u, v, apexes) = g
        .edges()
        .map(|(u, v)| (u, v, g.neighbors(u).intersection(g.neighbors(v))))
        .max_by_key(|(u, v, c)| (c.len(), std::cmp::Reverse((*u, *v))))
        .expect("a triangle has edges");
    let hitting = min_hitting_set(&support.triangles, g.n())?;
    let hub = (0..g.n())
        .max_by_key(|&x| {
            let count = support.triangles.iter().filter(|t| t.contains(x)).count();
            (count, std::cmp::Reverse(x))
        })
        .expect("graph is nonempty");
    let nbrs = g.neighbors(hub);
    let link_set: VertexSet = nbrs.iter().filter(|&x| g.degree_within(x, nbrs) > 0).collect();
    let link_members = link_set.to_vec();
    let link = g.induced_subgraph(link_set)?;
    let inner = chromatic_independence_bound(&link)?;
    let lift = |s: VertexSet| -> VertexSet { s.iter().map(|i| link_members[i]).collect() };

    let candidates = [
        ("edge-apexes", VertexSet::from_iter([u, v]), singletons(apexes)),
        ("hitting-set", g.vertices().difference(hitting), singletons(hitting)),
        (
            "link",
            lift(inner.certificate.input).with(hub),
            inner.certificate.blocks.iter().map(|b| lift(*b)).collect(),
        ),
    ];
    let values = [apexes.len(), hitting.len(), inner.value];
    let best = (0..3).fold(0, |best, i| if values[i] > values[best] { i } else { best });
    let (case, input, blocks) = candidates.into_iter().nth(best).expect("three candidates");
    let certificate = Certificate {
        input,
        blocks,
        argument: Argument::Triangles {
            case: case.to_string(),
            d1_max: support.d1_max,
            d2_max: support.d2_max,
            hitting_set: hitting,
            link_vertex: hub,
            link_value: inner.value,
        },
    };
    let value = values[best];
    Ok(lower("triangle-freeness", "triangle-free", value, certificate))
}

/// Vertex sets of all stars with `d + 1` leaves.
fn star_targets(g: &Graph, d: usize) -> Result<Vec<VertexSet>> {
    let mut targets = Vec::new();
    for c in 0..g.n() {
        if g.degree(c) > d {
            for leaves in subsets_of_size(g.neighbors(c), d + 1) {
                targets.push(leaves.with(c));
                cap("star target count", targets.len(), STAR_TARGET_CAP)?;
            }
        }
    }
    Ok(targets)
}

fn max_degree_vertex(g: &Graph) -> usize {
    (0..g.n())
        .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
        .unwrap_or(0)
}

/// Maximum degree at most `d`: the larger of `d_max - d` (center and `d` of
/// its neighbors present, every other neighbor sensitive) and a minimum
/// hitting set of the `(d+1)`-stars.
pub fn bounded_degree_bound(g: &Graph, d: usize) -> Result<Bound> {
    let in_star = |v: usize| g.degree(v) > d || g.neighbors(v).iter().any(|u| g.degree(u) > d);
    if let Some(v) = (0..g.n()).find(|&v| !in_star(v)) {
        return Err(Error::Precondition(format!("vertex {v} is in no star with {} leaves", d + 1)));
    }
    cap("hitting set universe", g.n(), HITTING_SET_CAP)?;
    let center = max_degree_vertex(g);
    let d_max = g.degree(center);
    let targets = star_targets(g, d)?;
    let hitting = min_hitting_set(&targets, g.n())?;
    let term1 = d_max.saturating_sub(d);
    let property = format!("bounded-degree({d})");
    let (case, value, input, blocks) = if term1 > hitting.len() {
        let nbrs = g.neighbors(center).to_vec();
        let present: VertexSet = nbrs[..d].iter().copied().collect();
        let rest: VertexSet = nbrs[d..].iter().copied().collect();
        ("center-neighbors", term1, present.with(center), singletons(rest))
    } else {
        ("hitting-set", hitting.len(), g.vertices().difference(hitting), singletons(hitting))
    };
    Ok(lower(
        "bounded-degree",
        &property,
        value,
        Certificate {
            input,
            blocks,
            argument: Argument::Stars {
                case: case.to_string(),
                d,
                center,
                hitting_set: hitting,
                targets: targets.len(),
            },
        },
    ))
}

/// `P_L` with maximum degree at most `d`: the larger of the sensitive
/// neighbors of a max-degree center and a minimum hitting set of the minimal
/// failing sets together with the `(d+1)`-stars.
pub fn local_property_bound(p_local: &PropertySpec, g: &Graph, d: usize) -> Result<Bound> {
    if !matches!(p_local.kind, PropertyKind::Local(_)) {
        return Err(Error::Precondition(format!("`{p_local}` is not a localized property")));
    }
    cap("hitting set universe", g.n(), HITTING_SET_CAP)?;
    let q = and_bounded_degree(p_local, d);
    let f = BooleanFunction::new(&q, g)?;
    let mut targets: Vec<VertexSet> = (1..1u64 << g.n())
        .map(VertexSet::from_bits)
        .filter(|&s| f.is_minimal_failing(s))
        .collect();
    targets.extend(star_targets(g, d)?);
    if targets.is_empty() {
        return Err(Error::Precondition("no forbidden configuration in the graph".into()));
    }
    let covered = targets.iter().fold(VertexSet::EMPTY, |u, t| u.union(*t));
    let missing = g.vertices().difference(covered);
    if !missing.is_empty() {
        return Err(Error::Precondition(format!(
            "vertices {missing} are in no star and no forbidden configuration"
        )));
    }
    let hitting = min_hitting_set(&targets, g.n())?;

    let center = max_degree_vertex(g);
    let nbrs = g.neighbors(center);
    let mut best_center: Option<(VertexSet, VertexSet)> = None;
    if nbrs.len() > d {
        for chosen in subsets_of_size(nbrs, d).take(NEIGHBOR_CHOICE_CAP) {
            let x = chosen.with(center);
            if !f.eval(x) {
                continue;
            }
            let sensitive: VertexSet = nbrs
                .difference(chosen)
                .iter()
                .filter(|&w| !f.eval(x.with(w)))
                .collect();
            if best_center.is_none_or(|(_, s)| sensitive.len() > s.len()) {
                best_center = Some((x, sensitive));
            }
        }
    }
    let term1 = best_center.map_or(0, |(_, s)| s.len());
    let (case, value, input, blocks) = match best_center {
        Some((x, s)) if term1 > hitting.len() => ("center-neighbors", term1, x, singletons(s)),
        _ => ("hitting-set", hitting.len(), g.vertices().difference(hitting), singletons(hitting)),
    };
    Ok(lower(
        "local-property",
        &q.name,
        value,
        Certificate {
            input,
            blocks,
            argument: Argument::Stars {
                case: case.to_string(),
                d,
                center,
                hitting_set: hitting,
                targets: targets.len(),
            },
        },
    ))
}

/// `floor(n / k^2)` with `k` the smallest failing set, on a vertex-transitive
/// graph. Reported for trends only.
pub fn mon_trans_indicator(p: &PropertySpec, g: &Graph) -> Result<Bound> {
    if !p.is_hereditary() {
        return Err(Error::Precondition(format!("`{p}` is not hereditary")));
    }
    if !is_vertex_transitive(g)? {
        return Err(Error::Precondition("graph is not vertex-transitive".into()));
    }
    let f = BooleanFunction::new(p, g)?;
    let witness = (0..=g.n())
        .find_map(|k| subsets_of_size(g.vertices(), k).find(|&s| !f.eval(s)))
        .ok_or_else(|| Error::Precondition(format!("`{p}` holds on every subset")))?;
    let k = witness.len();
    let value = if k == 0 { 0 } else { g.n() / (k * k) };
    let mut bound = lower(
        "mon-trans",
        &p.name,
        value,
        Certificate {
            input: witness,
            blocks: Vec::new(),
            argument: Argument::MinWitnessSize { k, witness },
        },
    );
    bound.asymptotic_only = true;
    Ok(bound)
}

/// Connectivity: the larger of a maximum matching of the complement (each
/// non-edge is a sensitive block at the empty input) and the most common
/// neighbors of a non-adjacent pair (with the pair present).
pub fn connectivity_bound(g: &Graph) -> Result<Bound> {
    let f = BooleanFunction::new(&PropertySpec::connected(), g)?;
    if f.is_constant() {
        return Err(Error::Precondition("connectivity is constant on this graph".into()));
    }
    let matching = max_matching(&g.complement())?;
    let mut pair: Option<(usize, usize, VertexSet)> = None;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if g.has_edge(u, v) {
                continue;
            }
            let common = g.neighbors(u).intersection(g.neighbors(v));
            if pair.is_none_or(|(_, _, c)| common.len() > c.len()) {
                pair = Some((u, v, common));
            }
        }
    }
    let common_value = pair.map_or(0, |(_, _, c)| c.len());
    let certificate = match pair {
        Some((u, v, common)) if common_value > matching.len() => Certificate {
            input: VertexSet::from_iter([u, v]),
            blocks: singletons(common),
            argument: Argument::CommonNeighbors { u, v, common },
        },
        _ => Certificate {
            input: VertexSet::EMPTY,
            blocks: matching.iter().map(|&(u, v)| VertexSet::from_iter([u, v])).collect(),
            argument: Argument::ComplementMatching { edges: matching.clone() },
        },
    };
    let value = certificate.blocks.len();
    Ok(lower("connectivity", "connected", value, certificate))
}
