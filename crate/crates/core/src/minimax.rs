// SPDX-License-Identifier: Apache-2.0

//! Integer-weight alphabetic minimax trees.
//!
//! For weights `y_1..y_n` the cost of an ordered binary tree with leaf depths
//! `l_1..l_n` is `max_i (y_i + l_i)`; the minimax cost is the minimum of that
//! over all ordered trees on `n` leaves. Only strictly binary trees are
//! produced: contracting a unary node never deepens a leaf.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sequence size accepted by the cubic interval oracle unless told otherwise.
pub const DEFAULT_ORACLE_BOUND: usize = 16;

/// Largest accepted weight magnitude. Keeps `weight + depth` inside `i64`
/// and integer weights exactly representable as `f64`.
pub const MAX_ABS_WEIGHT: i64 = 1 << 53;

/// `ceil(log2(n))`, with `ceil_log2(0) == ceil_log2(1) == 0`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        u64::BITS - (n - 1).leading_zeros()
    }
}

/// `ceil(count / 2^shift)` for `count >= 1`.
pub(crate) fn ceil_shift(count: u64, shift: u64) -> u64 {
    debug_assert!(count > 0);
    if shift >= u64::BITS as u64 {
        1
    } else {
        ((count - 1) >> shift) + 1
    }
}

pub(crate) fn check_int_weights(y: &[i64]) -> Result<()> {
    if y.is_empty() {
        return Err(Error::Empty);
    }
    if let Some((index, &v)) = y.iter().enumerate().find(|(_, v)| v.abs() > MAX_ABS_WEIGHT) {
        return Err(Error::WeightOutOfRange { index, value: v as f64 });
    }
    Ok(())
}

/// Left-to-right leaf depths of an ordered strictly binary tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DepthProfile(Vec<u32>);

impl DepthProfile {
    /// Validates that `depths` is realized by exactly one ordered strictly
    /// binary tree.
    pub fn new(depths: Vec<u32>) -> Result<Self> {
        check_profile(&depths)?;
        Ok(DepthProfile(depths))
    }

    pub(crate) fn new_unchecked(depths: Vec<u32>) -> Self {
        debug_assert!(check_profile(&depths).is_ok());
        DepthProfile(depths)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }
}

impl AsRef<[u32]> for DepthProfile {
    fn as_ref(&self) -> &[u32] {
        &self.0
    }
}

/// Stack reduction: push each depth, and while the two topmost entries are
/// equal replace them by their value minus one. A profile is feasible iff
/// this ends with the single entry 0.
///
/// The reported index is the first leaf that can no longer be placed, or
/// `n` if the whole sequence is consumed with a residue left on the stack.
pub fn check_profile(depths: &[u32]) -> Result<()> {
    if depths.is_empty() {
        return Err(Error::Empty);
    }
    let mut stack: Vec<u32> = Vec::with_capacity(64);
    for (index, &d) in depths.iter().enumerate() {
        if stack.first() == Some(&0) {
            return Err(Error::InfeasibleProfile { index });
        }
        let mut d = d;
        while let Some(&top) = stack.last() {
            if d < top {
                return Err(Error::InfeasibleProfile { index });
            }
            if d > top {
                break;
            }
            if d == 0 {
                return Err(Error::InfeasibleProfile { index });
            }
            stack.pop();
            d -= 1;
        }
        stack.push(d);
    }
    if stack.as_slice() == [0] {
        Ok(())
    } else {
        Err(Error::InfeasibleProfile { index: depths.len() })
    }
}

/// `max_i (w_i + l_i)` for integer weights.
pub fn tree_cost(depths: &[u32], w: &[i64]) -> Result<i64> {
    if depths.len() != w.len() {
        return Err(Error::LengthMismatch { left: depths.len(), right: w.len() });
    }
    depths.iter().zip(w).map(|(&d, &x)| x + d as i64).max().ok_or(Error::Empty)
}

/// `max_i (w_i + l_i)` for real weights.
pub fn tree_cost_real(depths: &[u32], w: &[f64]) -> Result<f64> {
    if depths.len() != w.len() {
        return Err(Error::LengthMismatch { left: depths.len(), right: w.len() });
    }
    if w.is_empty() {
        return Err(Error::Empty);
    }
    Ok(depths.iter().zip(w).map(|(&d, &x)| x + d as f64).fold(f64::NEG_INFINITY, f64::max))
}

/// Interval dynamic program over all ordered binary trees:
/// `C[i][i] = y_i`, `C[i][j] = min_k max(C[i][k], C[k+1][j]) + 1`.
pub fn alpha_int_oracle(y: &[i64]) -> Result<i64> {
    alpha_int_oracle_bounded(y, DEFAULT_ORACLE_BOUND)
}

pub fn alpha_int_oracle_bounded(y: &[i64], bound: usize) -> Result<i64> {
    check_int_weights(y)?;
    let n = y.len();
    if n > bound {
        return Err(Error::OracleBound { n, bound });
    }
    let mut c = vec![vec![0i64; n]; n];
    for i in 0..n {
        c[i][i] = y[i];
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let j = i + len - 1;
            c[i][j] = (i..j).map(|k| c[i][k].max(c[k + 1][j])).min().unwrap() + 1;
        }
    }
    Ok(c[0][n - 1])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMinimax {
    pub cost: i64,
    pub depths: DepthProfile,
}

/// A run of consecutive subtrees whose roots all sit at `level`.
struct Run {
    level: i64,
    items: Vec<u32>,
}

/// Builds the binary subtrees for a single left-to-right scan.
struct Merger {
    n: usize,
    children: Vec<[u32; 2]>,
}

impl Merger {
    /// Raises `run` to `target` by pairing neighbours left to right once per
    /// level. An odd item out is carried up unchanged.
    fn raise(&mut self, run: &mut Run, target: i64) {
        debug_assert!(target >= run.level);
        while run.level < target && run.items.len() > 1 {
            let mut next = Vec::with_capacity(run.items.len().div_ceil(2));
            for pair in run.items.chunks(2) {
                if let [l, r] = *pair {
                    let id = (self.n + self.children.len()) as u32;
                    self.children.push([l, r]);
                    next.push(id);
                } else {
                    next.push(pair[0]);
                }
            }
            run.items = next;
            run.level += 1;
        }
        run.level = target;
    }

    fn depths(&self, root: u32) -> Vec<u32> {
        let mut depths = vec![0u32; self.n];
        let mut todo = vec![(root, 0u32)];
        while let Some((id, d)) = todo.pop() {
            let id = id as usize;
            if id < self.n {
                depths[id] = d;
            } else {
                let [l, r] = self.children[id - self.n];
                todo.push((r, d + 1));
                todo.push((l, d + 1));
            }
        }
        depths
    }
}

/// Linear-time minimax tree for integer weights.
///
/// Scans left to right keeping a stack of runs with strictly decreasing
/// levels. A run that becomes enclosed by higher neighbours is raised to the
/// lower of the two and merged; pairing inside a run is left to right, so
/// the witness is deterministic.
pub fn alpha_int_fast(y: &[i64]) -> Result<IntMinimax> {
    check_int_weights(y)?;
    let n = y.len();
    let mut merger = Merger { n, children: Vec::with_capacity(n.saturating_sub(1)) };
    let mut stack: Vec<Run> = Vec::new();

    for (i, &yi) in y.iter().enumerate() {
        while stack.last().is_some_and(|top| top.level < yi) {
            let mut top = stack.pop().unwrap();
            let below = stack.last().map(|r| r.level);
            let target = below.map_or(yi, |b| b.min(yi));
            merger.raise(&mut top, target);
            match stack.last_mut() {
                Some(b) if b.level == target => b.items.append(&mut top.items),
                _ => stack.push(top),
            }
        }
        match stack.last_mut() {
            Some(top) if top.level == yi => top.items.push(i as u32),
            _ => stack.push(Run { level: yi, items: vec![i as u32] }),
        }
    }

    while stack.len() > 1 {
        let mut top = stack.pop().unwrap();
        let below = stack.last_mut().unwrap();
        merger.raise(&mut top, below.level);
        below.items.append(&mut top.items);
    }
    let mut last = stack.pop().unwrap();
    let target = last.level + ceil_log2(last.items.len() as u64) as i64;
    merger.raise(&mut last, target);
    debug_assert_eq!(last.items.len(), 1);

    let depths = merger.depths(last.items[0]);
    let cost = last.level;
    debug_assert_eq!(tree_cost(&depths, y).ok(), Some(cost));
    Ok(IntMinimax { cost, depths: DepthProfile::new_unchecked(depths) })
}

/// An ordered strictly binary tree. Leaves are nodes `0..n` in left-to-right
/// order; internal nodes follow in the order the stack reduction creates
/// them, so the root is the last node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedTree {
    leaves: usize,
    children: Vec<[usize; 2]>,
}

impl OrderedTree {
    pub fn leaves(&self) -> usize {
        self.leaves
    }

    pub fn node_count(&self) -> usize {
        self.leaves + self.children.len()
    }

    pub fn root(&self) -> usize {
        self.node_count() - 1
    }

    /// Children of internal node `id`, or `None` for a leaf.
    pub fn children(&self, id: usize) -> Option<[usize; 2]> {
        id.checked_sub(self.leaves).map(|k| self.children[k])
    }

    /// Parent index for every node; the root has `-1`.
    pub fn parent_array(&self) -> Vec<i64> {
        let mut parent = vec![-1i64; self.node_count()];
        for (k, &[l, r]) in self.children.iter().enumerate() {
            parent[l] = (self.leaves + k) as i64;
            parent[r] = (self.leaves + k) as i64;
        }
        parent
    }

    /// Nested-parenthesis rendering: a leaf prints its index, an internal
    /// node prints `(left right)`.
    pub fn to_parens(&self) -> String {
        enum Step {
            Open(usize),
            Space,
            Close,
        }
        let mut out = String::new();
        let mut todo = vec![Step::Open(self.root())];
        while let Some(step) = todo.pop() {
            match step {
                Step::Open(id) => match self.children(id) {
                    None => out.push_str(&id.to_string()),
                    Some([l, r]) => {
                        out.push('(');
                        todo.push(Step::Close);
                        todo.push(Step::Open(r));
                        todo.push(Step::Space);
                        todo.push(Step::Open(l));
                    }
                },
                Step::Space => out.push(' '),
                Step::Close => out.push(')'),
            }
        }
        out
    }

    pub fn leaf_depths(&self) -> Vec<u32> {
        let mut depths = vec![0u32; self.leaves];
        let mut todo = vec![(self.root(), 0u32)];
        while let Some((id, d)) = todo.pop() {
            match self.children(id) {
                None => depths[id] = d,
                Some([l, r]) => {
                    todo.push((l, d + 1));
                    todo.push((r, d + 1));
                }
            }
        }
        depths
    }
}

/// Rebuilds the unique ordered strictly binary tree with the given leaf
/// depths.
pub fn depths_to_tree(depths: &[u32]) -> Result<OrderedTree> {
    check_profile(depths)?;
    let leaves = depths.len();
    let mut children = Vec::with_capacity(leaves.saturating_sub(1));
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for (i, &d) in depths.iter().enumerate() {
        let mut entry = (d, i);
        while let Some(&(top, id)) = stack.last() {
            if top != entry.0 {
                break;
            }
            stack.pop();
            children.push([id, entry.1]);
            entry = (top - 1, leaves + children.len() - 1);
        }
        stack.push(entry);
    }
    Ok(OrderedTree { leaves, children })
}
