//! Exact deterministic query cost by memoized minimax search over partial assignments.

mod sensitivity;
mod strategy;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::property::{BooleanFunction, PropertySpec};

pub use sensitivity::{
    block_sensitivity, block_sensitivity_of, max_disjoint_blocks, minimal_sensitive_blocks,
    sensitivity, sensitivity_of, BlockSensitivity, Sensitivity, PACKING_CAP, SENSITIVITY_CAP,
};
pub use strategy::{Strategy, STRATEGY_CHECK_CAP};

/// Largest base graph the exact search accepts (the memo has `3^n` entries).
pub const EXACT_COST_CAP: usize = 13;

const UNSET: u8 = u8::MAX;
const MIXED: u8 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexState {
    Absent,
    Present,
    Unknown,
}

/// Answers given so far; the unanswered vertices are the legal next queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    n: usize,
    present: VertexSet,
    absent: VertexSet,
}

impl PartialAssignment {
    /// Nothing answered yet.
    pub fn unknown(n: usize) -> Self {
        PartialAssignment {
            n,
            present: VertexSet::EMPTY,
            absent: VertexSet::EMPTY,
        }
    }

    pub fn new(n: usize, present: VertexSet, absent: VertexSet) -> Result<Self> {
        present.check_within(n)?;
        absent.check_within(n)?;
        if !present.is_disjoint(absent) {
            return Err(Error::Precondition(format!(
                "vertices {} are both present and absent",
                present.intersection(absent)
            )));
        }
        Ok(PartialAssignment { n, present, absent })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn present(&self) -> VertexSet {
        self.present
    }

    pub fn absent(&self) -> VertexSet {
        self.absent
    }

    pub fn unknowns(&self) -> VertexSet {
        VertexSet::full(self.n).difference(self.present.union(self.absent))
    }

    pub fn state(&self, v: usize) -> VertexState {
        if self.present.contains(v) {
            VertexState::Present
        } else if self.absent.contains(v) {
            VertexState::Absent
        } else {
            VertexState::Unknown
        }
    }

    pub fn is_total(&self) -> bool {
        self.unknowns().is_empty()
    }

    /// Records the answer for an unanswered vertex.
    pub fn assign(&self, v: usize, present: bool) -> Result<Self> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        if self.state(v) != VertexState::Unknown {
            return Err(Error::Precondition(format!("vertex {v} already answered")));
        }
        let mut next = *self;
        if present {
            next.present.insert(v);
        } else {
            next.absent.insert(v);
        }
        Ok(next)
    }

    /// Ternary key: digit `i` is 0 for absent, 1 for present, 2 for unknown.
    pub fn key(&self) -> usize {
        (0..self.n).rev().fold(0, |acc, v| {
            acc * 3
                + match self.state(v) {
                    VertexState::Absent => 0,
                    VertexState::Present => 1,
                    VertexState::Unknown => 2,
                }
        })
    }

    pub fn from_key(n: usize, mut key: usize) -> Self {
        let mut a = PartialAssignment::unknown(n);
        for v in 0..n {
            match key % 3 {
                0 => a.absent.insert(v),
                1 => a.present.insert(v),
                _ => {}
            }
            key /= 3;
        }
        a
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in 0..self.n {
            f.write_str(match self.state(v) {
                VertexState::Absent => "0",
                VertexState::Present => "1",
                VertexState::Unknown => "*",
            })?;
        }
        Ok(())
    }
}

/// Memoized minimax search for one boolean function.
#[derive(Clone)]
pub struct Solver {
    f: BooleanFunction,
    pow3: Vec<usize>,
    cost: Vec<u8>,
    choice: Vec<u8>,
    // constancy tags for non-monotone functions: 0, 1, or MIXED
    tag: Vec<u8>,
    solved: usize,
}

impl fmt::Debug for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Solver")
            .field("n", &self.f.n())
            .field("states_solved", &self.solved)
            .finish()
    }
}

impl Solver {
    pub fn new(f: BooleanFunction) -> Result<Self> {
        cap("vertex count for exact search", f.n(), EXACT_COST_CAP)?;
        let n = f.n();
        let pow3: Vec<usize> = (0..n).scan(1, |p, _| {
            let cur = *p;
            *p *= 3;
            Some(cur)
        }).collect();
        let states = 3usize.pow(n as u32);
        let tag = if f.is_monotone_decreasing() {
            Vec::new()
        } else {
            vec![UNSET; states]
        };
        Ok(Solver {
            f,
            pow3,
            cost: vec![UNSET; states],
            choice: vec![UNSET; states],
            tag,
            solved: 0,
        })
    }

    pub fn for_property(p: &PropertySpec, g: &Graph) -> Result<Self> {
        cap("vertex count for exact search", g.n(), EXACT_COST_CAP)?;
        Self::new(BooleanFunction::new(p, g)?)
    }

    pub fn function(&self) -> &BooleanFunction {
        &self.f
    }

    /// Number of distinct assignments whose cost has been computed.
    pub fn states_solved(&self) -> usize {
        self.solved
    }

    fn root(&self) -> PartialAssignment {
        PartialAssignment::unknown(self.f.n())
    }

    fn check(&self, a: &PartialAssignment) -> Result<()> {
        if a.n() != self.f.n() {
            return Err(Error::Precondition(format!(
                "assignment on {} vertices, function on {}",
                a.n(),
                self.f.n()
            )));
        }
        Ok(())
    }

    /// Cost of the whole function.
    pub fn cost(&mut self) -> usize {
        self.cost_with_lower_bound(0)
    }

    /// Cost of the whole function, stopping the root scan as soon as a query
    /// achieving `lower_bound` is found. An unsound bound gives a wrong answer.
    pub fn cost_with_lower_bound(&mut self, lower_bound: usize) -> usize {
        let root = self.root();
        let key = root.key();
        self.solve(key, VertexSet::EMPTY, root.unknowns(), lower_bound.min(UNSET as usize - 1) as u8) as usize
    }

    /// Residual cost of the function restricted by `a`.
    pub fn cost_at(&mut self, a: &PartialAssignment) -> Result<usize> {
        self.check(a)?;
        Ok(self.solve(a.key(), a.present(), a.unknowns(), 0) as usize)
    }

    /// The constant value of the restriction, if it is constant.
    pub fn constant_at(&mut self, a: &PartialAssignment) -> Result<Option<bool>> {
        self.check(a)?;
        Ok(self.constant(a.key(), a.present(), a.unknowns()))
    }

    /// The query an optimal strategy makes at `a` (lowest index among the optimal ones).
    pub fn best_query(&mut self, a: &PartialAssignment) -> Result<Option<usize>> {
        if self.cost_at(a)? == 0 {
            return Ok(None);
        }
        Ok(Some(self.choice[a.key()] as usize))
    }

    /// The answer to a query at `v` that keeps the residual cost largest; ties go to "present".
    pub fn adversary_answer(&mut self, a: &PartialAssignment, v: usize) -> Result<bool> {
        let with = self.cost_at(&a.assign(v, true)?)?;
        let without = self.cost_at(&a.assign(v, false)?)?;
        Ok(with >= without)
    }

    /// The optimal decision tree for the restriction `a`.
    pub fn strategy_at(&mut self, a: &PartialAssignment) -> Result<Strategy> {
        match self.best_query(a)? {
            None => Ok(Strategy::Leaf(
                self.constant_at(a)?.expect("zero cost means constant"),
            )),
            Some(v) => {
                let present = self.strategy_at(&a.assign(v, true)?)?;
                let absent = self.strategy_at(&a.assign(v, false)?)?;
                Ok(Strategy::query(v, present, absent))
            }
        }
    }

    pub fn strategy(&mut self) -> Strategy {
        let root = self.root();
        self.strategy_at(&root).expect("root assignment matches the function")
    }

    fn constant(&mut self, key: usize, present: VertexSet, unknown: VertexSet) -> Option<bool> {
        if self.f.is_monotone_decreasing() {
            let hi = self.f.eval(present);
            let lo = self.f.eval(present.union(unknown));
            return (hi == lo).then_some(hi);
        }
        match self.tag(key, present, unknown) {
            MIXED => None,
            t => Some(t == 1),
        }
    }

    fn tag(&mut self, key: usize, present: VertexSet, unknown: VertexSet) -> u8 {
        let Some(i) = unknown.first() else {
            return self.f.eval(present) as u8;
        };
        if self.tag[key] != UNSET {
            return self.tag[key];
        }
        let rest = unknown.without(i);
        let a = self.tag(key - 2 * self.pow3[i], present, rest);
        let t = if a == MIXED {
            MIXED
        } else if self.tag(key - self.pow3[i], present.with(i), rest) == a {
            a
        } else {
            MIXED
        };
        self.tag[key] = t;
        t
    }

    fn solve(&mut self, key: usize, present: VertexSet, unknown: VertexSet, target: u8) -> u8 {
        if self.cost[key] != UNSET {
            return self.cost[key];
        }
        let value = if self.constant(key, present, unknown).is_some() {
            0
        } else {
            let stop = target.max(1);
            let mut best = unknown.len() as u8 + 1;
            let mut choice = 0;
            for v in unknown.iter() {
                let rest = unknown.without(v);
                let yes = self.solve(key - self.pow3[v], present.with(v), rest, 0);
                if yes + 1 >= best {
                    continue;
                }
                let no = self.solve(key - 2 * self.pow3[v], present, rest, 0);
                let c = 1 + yes.max(no);
                if c < best {
                    best = c;
                    choice = v as u8;
                    if best <= stop {
                        break;
                    }
                }
            }
            self.choice[key] = choice;
            best
        };
        self.cost[key] = value;
        self.solved += 1;
        value
    }
}

/// One run of a strategy against an answering rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Playout {
    pub output: bool,
    pub queries: usize,
    pub answers: Vec<(usize, bool)>,
    pub final_assignment: PartialAssignment,
}

/// Answers queries so that the residual cost stays as large as possible.
#[derive(Clone, Debug)]
pub struct Adversary {
    solver: Solver,
}

impl Adversary {
    pub fn new(solver: Solver) -> Self {
        Adversary { solver }
    }

    pub fn answer(&mut self, a: &PartialAssignment, v: usize) -> Result<bool> {
        self.solver.adversary_answer(a, v)
    }

    pub fn residual_cost(&mut self, a: &PartialAssignment) -> Result<usize> {
        self.solver.cost_at(a)
    }

    /// Runs `strategy` with every query answered by the adversary.
    pub fn play(&mut self, strategy: &Strategy) -> Result<Playout> {
        let mut a = PartialAssignment::unknown(self.solver.function().n());
        let mut answers = Vec::new();
        let mut node = strategy;
        loop {
            match node {
                Strategy::Leaf(out) => {
                    return Ok(Playout {
                        output: *out,
                        queries: answers.len(),
                        answers,
                        final_assignment: a,
                    })
                }
                Strategy::Query {
                    vertex,
                    present,
                    absent,
                } => {
                    if *vertex >= a.n() {
                        return Err(Error::MalformedStrategy(format!("vertex {vertex} out of range")));
                    }
                    if a.state(*vertex) != VertexState::Unknown {
                        return Err(Error::MalformedStrategy(format!(
                            "vertex {vertex} queried twice on one path"
                        )));
                    }
                    let b = self.answer(&a, *vertex)?;
                    a = a.assign(*vertex, b)?;
                    answers.push((*vertex, b));
                    node = if b { present } else { absent };
                }
            }
        }
    }

    pub fn solver(&mut self) -> &mut Solver {
        &mut self.solver
    }
}

/// Exact cost with an optimal strategy and an optimal adversary.
#[derive(Clone, Debug)]
pub struct CostCertificate {
    pub cost: usize,
    pub strategy: Strategy,
    pub adversary: Adversary,
}

impl CostCertificate {
    pub fn from_function(f: BooleanFunction, lower_bound: Option<usize>) -> Result<Self> {
        let mut solver = Solver::new(f)?;
        let cost = solver.cost_with_lower_bound(lower_bound.unwrap_or(0));
        let strategy = solver.strategy();
        Ok(CostCertificate {
            cost,
            strategy,
            adversary: Adversary::new(solver),
        })
    }

    pub fn function(&self) -> &BooleanFunction {
        self.adversary.solver.function()
    }
}

/// Exact `cost(P, G)`.
pub fn exact_cost(p: &PropertySpec, g: &Graph) -> Result<CostCertificate> {
    exact_cost_with_hint(p, g, None)
}

/// Exact cost, letting the search stop early at the root once `lower_bound` is met.
pub fn exact_cost_with_hint(
    p: &PropertySpec,
    g: &Graph,
    lower_bound: Option<usize>,
) -> Result<CostCertificate> {
    cap("vertex count for exact search", g.n(), EXACT_COST_CAP)?;
    CostCertificate::from_function(BooleanFunction::new(p, g)?, lower_bound)
}

/// Cost of an explicit truth table.
pub fn function_cost(f: &BooleanFunction) -> Result<usize> {
    Ok(Solver::new(f.clone())?.cost())
}
