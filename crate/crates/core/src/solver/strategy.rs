use serde::{Deserialize, Serialize};

use crate::error::{cap, Error, Result};
use crate::graph::VertexSet;
use crate::property::BooleanFunction;

/// Largest base graph on which a strategy is checked against every input.
pub const STRATEGY_CHECK_CAP: usize = 20;

/// A deterministic decision tree over vertex queries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Leaf(bool),
    Query {
        vertex: usize,
        present: Box<Strategy>,
        absent: Box<Strategy>,
    },
}

impl Strategy {
    pub fn query(vertex: usize, present: Strategy, absent: Strategy) -> Self {
        Strategy::Query {
            vertex,
            present: Box::new(present),
            absent: Box::new(absent),
        }
    }

    /// Longest root-to-leaf query count.
    pub fn depth(&self) -> usize {
        match self {
            Strategy::Leaf(_) => 0,
            Strategy::Query { present, absent, .. } => 1 + present.depth().max(absent.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Strategy::Leaf(_) => 1,
            Strategy::Query { present, absent, .. } => 1 + present.node_count() + absent.node_count(),
        }
    }

    /// Every vertex queried somewhere in the tree.
    pub fn queried_vertices(&self) -> VertexSet {
        match self {
            Strategy::Leaf(_) => VertexSet::EMPTY,
            Strategy::Query {
                vertex,
                present,
                absent,
            } => present
                .queried_vertices()
                .union(absent.queried_vertices())
                .with(*vertex),
        }
    }

    /// Walks the tree answering each query from `truth`; returns the leaf output and the number of queries.
    pub fn playout(&self, truth: VertexSet) -> Result<(bool, usize)> {
        let mut node = self;
        let mut asked = VertexSet::EMPTY;
        loop {
            match node {
                Strategy::Leaf(out) => return Ok((*out, asked.len())),
                Strategy::Query {
                    vertex,
                    present,
                    absent,
                } => {
                    if *vertex >= 64 {
                        return Err(Error::MalformedStrategy(format!("vertex {vertex} out of range")));
                    }
                    if asked.contains(*vertex) {
                        return Err(Error::MalformedStrategy(format!(
                            "vertex {vertex} queried twice on one path"
                        )));
                    }
                    asked.insert(*vertex);
                    node = if truth.contains(*vertex) { present } else { absent };
                }
            }
        }
    }

    /// Plays every input through the tree and compares with `f`.
    pub fn check_against(&self, f: &BooleanFunction) -> Result<()> {
        cap("vertex count for strategy check", f.n(), STRATEGY_CHECK_CAP)?;
        if let Some(v) = self.queried_vertices().iter().find(|&v| v >= f.n()) {
            return Err(Error::MalformedStrategy(format!(
                "vertex {v} out of range for {} vertices",
                f.n()
            )));
        }
        for mask in 0..1u64 << f.n() {
            let truth = VertexSet::from_bits(mask);
            let (out, _) = self.playout(truth)?;
            if out != f.eval(truth) {
                return Err(Error::Validation(format!(
                    "strategy outputs {out} on {truth}, function is {}",
                    !out
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
