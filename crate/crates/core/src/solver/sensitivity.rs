use std::collections::HashMap;

use crate::error::{cap, Result};
use crate::graph::{Graph, VertexSet};
use crate::property::{BooleanFunction, PropertySpec};

/// Largest base graph for exhaustive sensitivity and block sensitivity.
pub const SENSITIVITY_CAP: usize = 12;
/// Largest universe for exact disjoint packing.
pub const PACKING_CAP: usize = 24;

/// `s(f)` together with an input attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sensitivity {
    pub value: usize,
    pub input: VertexSet,
    pub sensitive: VertexSet,
}

/// `bs(f)` together with an input and a maximum family of disjoint sensitive blocks there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSensitivity {
    pub value: usize,
    pub input: VertexSet,
    pub blocks: Vec<VertexSet>,
}

pub fn sensitivity_of(f: &BooleanFunction) -> Result<Sensitivity> {
    cap("vertex count for sensitivity", f.n(), SENSITIVITY_CAP)?;
    let mut best = Sensitivity {
        value: 0,
        input: VertexSet::EMPTY,
        sensitive: VertexSet::EMPTY,
    };
    for mask in 0..1u64 << f.n() {
        let x = VertexSet::from_bits(mask);
        let sensitive = f.sensitive_vertices(x);
        if sensitive.len() > best.value {
            best = Sensitivity {
                value: sensitive.len(),
                input: x,
                sensitive,
            };
        }
    }
    Ok(best)
}

/// Nonempty blocks `B` with `f(x xor B) != f(x)` and no proper sub-block of that kind.
pub fn minimal_sensitive_blocks(f: &BooleanFunction, x: VertexSet) -> Vec<VertexSet> {
    let size = 1usize << f.n();
    let fx = f.eval(x);
    // below[b]: some nonempty proper subset of b is sensitive
    let mut sensitive = vec![false; size];
    let mut below = vec![false; size];
    let mut minimal = Vec::new();
    for b in 1..size {
        let block = VertexSet::from_bits(b as u64);
        sensitive[b] = f.eval(x.symmetric_difference(block)) != fx;
        below[b] = block.iter().any(|i| {
            let sub = b & !(1 << i);
            sub != 0 && (sensitive[sub] || below[sub])
        });
        if sensitive[b] && !below[b] {
            minimal.push(block);
        }
    }
    minimal
}

/// A largest subfamily of pairwise disjoint blocks, all inside `universe`.
pub fn max_disjoint_blocks(blocks: &[VertexSet], universe: VertexSet) -> Result<Vec<VertexSet>> {
    cap("universe size for disjoint packing", universe.len(), PACKING_CAP)?;
    let usable: Vec<VertexSet> = blocks
        .iter()
        .copied()
        .filter(|b| !b.is_empty() && b.is_subset(universe))
        .collect();
    let mut memo = HashMap::new();
    let mut packing = Vec::new();
    let mut rest = universe;
    pack(&usable, rest, &mut memo);
    // replay the memo to recover one optimal packing
    while let Some(e) = rest.first() {
        let here = pack(&usable, rest, &mut memo);
        if pack(&usable, rest.without(e), &mut memo) == here {
            rest.remove(e);
            continue;
        }
        let b = usable
            .iter()
            .copied()
            .find(|b| b.contains(e) && b.is_subset(rest) && 1 + pack(&usable, rest.difference(*b), &mut memo) == here)
            .expect("memo value is attained");
        packing.push(b);
        rest = rest.difference(b);
    }
    Ok(packing)
}

fn pack(blocks: &[VertexSet], rest: VertexSet, memo: &mut HashMap<u64, usize>) -> usize {
    let Some(e) = rest.first() else {
        return 0;
    };
    if let Some(&v) = memo.get(&rest.bits()) {
        return v;
    }
    let mut best = pack(blocks, rest.without(e), memo);
    for &b in blocks {
        if b.contains(e) && b.is_subset(rest) {
            best = best.max(1 + pack(blocks, rest.difference(b), memo));
        }
    }
    memo.insert(rest.bits(), best);
    best
}

pub fn block_sensitivity_of(f: &BooleanFunction) -> Result<BlockSensitivity> {
    cap("vertex count for block sensitivity", f.n(), SENSITIVITY_CAP)?;
    let mut best = BlockSensitivity {
        value: 0,
        input: VertexSet::EMPTY,
        blocks: Vec::new(),
    };
    let full = VertexSet::full(f.n());
    for mask in 0..1u64 << f.n() {
        let x = VertexSet::from_bits(mask);
        let blocks = minimal_sensitive_blocks(f, x);
        // a packing never beats the number of vertices in the blocks' union
        let union = blocks.iter().fold(VertexSet::EMPTY, |u, b| u.union(*b));
        if union.len() <= best.value {
            continue;
        }
        let packing = max_disjoint_blocks(&blocks, full)?;
        if packing.len() > best.value {
            best = BlockSensitivity {
                value: packing.len(),
                input: x,
                blocks: packing,
            };
        }
    }
    Ok(best)
}

pub fn sensitivity(p: &PropertySpec, g: &Graph) -> Result<usize> {
    cap("vertex count for sensitivity", g.n(), SENSITIVITY_CAP)?;
    Ok(sensitivity_of(&BooleanFunction::new(p, g)?)?.value)
}

pub fn block_sensitivity(p: &PropertySpec, g: &Graph) -> Result<usize> {
    cap("vertex count for block sensitivity", g.n(), SENSITIVITY_CAP)?;
    Ok(block_sensitivity_of(&BooleanFunction::new(p, g)?)?.value)
}
