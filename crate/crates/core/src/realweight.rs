// SPDX-License-Identifier: Apache-2.0

//! Minimax trees for real weights.
//!
//! Let `f_i = w_i - floor(w_i)` and, for an offset `b`, let
//! `Y(b)_i = ceil(w_i - b)`. For `b` among the `f_i` this is
//! `ceil(w_i) - [0 < f_i <= b]`. With `b_max = max f_i`, the smallest `f_i`
//! whose integer cost equals the cost at `b_max` is the critical offset `b*`,
//! the real cost is `cost(Y(b*)) + b*`, and any minimax tree for `Y(b*)` is a
//! minimax tree for `w`.
//!
//! [`alpha_real_sorted`] sorts the `f_i` and binary-searches. [`alpha_real_new`]
//! avoids sorting: each step splits the remaining candidates around their
//! median, lowers every position at or below it in a [`LevelTree`], and
//! either keeps those lowerings (median too small) or undoes them (median
//! still feasible).

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::level_tree::LevelTree;
use crate::minimax::{alpha_int_fast, ceil_log2, DepthProfile, MAX_ABS_WEIGHT};
use crate::select::{select_kth_with, SelectStrategy};

/// Largest sequence the exhaustive real-weight oracle accepts.
pub const REAL_ORACLE_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct WeightSeq {
    weights: Vec<f64>,
    fracs: Vec<f64>,
    ceils: Vec<i64>,
    distinct: usize,
}

impl WeightSeq {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Empty);
        }
        let mut fracs = Vec::with_capacity(weights.len());
        let mut ceils = Vec::with_capacity(weights.len());
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w.abs() >= MAX_ABS_WEIGHT as f64 {
                return Err(Error::WeightOutOfRange { index, value: w });
            }
            let f = w - w.floor();
            // normalizes -0.0
            fracs.push(if f == 0.0 { 0.0 } else { f });
            ceils.push(w.ceil() as i64);
        }
        let mut sorted = ceils.clone();
        sorted.sort_unstable();
        sorted.dedup();
        Ok(WeightSeq { distinct: sorted.len(), weights, fracs, ceils })
    }

    pub fn from_ints(y: &[i64]) -> Result<Self> {
        Self::new(y.iter().map(|&v| v as f64).collect())
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `w_i - floor(w_i)`, each in `[0, 1)`.
    pub fn fracs(&self) -> &[f64] {
        &self.fracs
    }

    pub fn ceilings(&self) -> &[i64] {
        &self.ceils
    }

    /// Number of distinct `ceil(w_i)`.
    pub fn d(&self) -> usize {
        self.distinct
    }

    pub fn is_integral(&self) -> bool {
        self.fracs.iter().all(|&f| f == 0.0)
    }

    pub fn max_frac(&self) -> f64 {
        self.fracs.iter().copied().fold(0.0, f64::max)
    }

    /// `ceil(w_i - b)` evaluated through the fractional parts, so that every
    /// algorithm classifies positions identically.
    pub fn ceilings_at(&self, b: f64) -> Vec<i64> {
        self.ceils.iter().zip(&self.fracs).map(|(&c, &f)| c - (f > 0.0 && f <= b) as i64).collect()
    }
}

/// `<f_i, i>`: a fractional part and the position it came from.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FracItem {
    pub value: f64,
    pub index: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FracMultiset {
    items: Vec<FracItem>,
}

impl FracMultiset {
    pub fn from_weights(w: &WeightSeq) -> Self {
        let items = w.fracs().iter().enumerate().map(|(index, &value)| FracItem { value, index });
        FracMultiset { items: items.collect() }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[FracItem] {
        &self.items
    }

    pub fn values(&self) -> Vec<f64> {
        self.items.iter().map(|it| it.value).collect()
    }

    /// Splits into items below, equal to and above `pivot`.
    pub fn partition(self, pivot: f64) -> (FracMultiset, FracMultiset, FracMultiset) {
        let (mut lt, mut eq, mut gt) = (Vec::new(), Vec::new(), Vec::new());
        for it in self.items {
            if it.value < pivot {
                lt.push(it);
            } else if it.value > pivot {
                gt.push(it);
            } else {
                eq.push(it);
            }
        }
        (FracMultiset { items: lt }, FracMultiset { items: eq }, FracMultiset { items: gt })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub steps: u64,
    pub sets: u64,
    pub undos: u64,
    pub cost_queries: u64,
    pub finds: u64,
    pub unions: u64,
    pub deunions: u64,
    pub partition_work: u64,
    /// Largest multiset handled by any search step.
    pub max_step_size: u64,
    pub int_solves: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    New,
    Sorted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgoChoice {
    New,
    Sorted,
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RealCostResult {
    pub alpha: f64,
    /// The critical offset `b*`.
    pub offset: f64,
    /// Integer cost of `ceil(w - b*)`.
    pub int_cost: i64,
    pub depths: DepthProfile,
    pub algorithm: Algorithm,
    pub stats: SearchStats,
}

fn finish(w: &WeightSeq, b: f64, target: i64, algorithm: Algorithm, mut stats: SearchStats) -> Result<RealCostResult> {
    let witness = alpha_int_fast(&w.ceilings_at(b))?;
    stats.int_solves += 1;
    if witness.cost != target {
        return Err(Error::Invariant(format!(
            "witness cost {} at offset {b} differs from target {target}",
            witness.cost
        )));
    }
    Ok(RealCostResult {
        alpha: target as f64 + b,
        offset: b,
        int_cost: target,
        depths: witness.depths,
        algorithm,
        stats,
    })
}

/// Sort-and-binary-search baseline, `O(n log n)`.
pub fn alpha_real_sorted(w: &WeightSeq) -> Result<RealCostResult> {
    let mut stats = SearchStats::default();
    let mut b = w.fracs().to_vec();
    b.sort_by(f64::total_cmp);
    b.dedup();
    let target = alpha_int_fast(&w.ceilings_at(*b.last().unwrap()))?.cost;
    stats.int_solves += 1;
    let (mut lo, mut hi) = (0, b.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        stats.steps += 1;
        stats.cost_queries += 1;
        stats.int_solves += 1;
        if alpha_int_fast(&w.ceilings_at(b[mid]))?.cost == target {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    finish(w, b[hi], target, Algorithm::Sorted, stats)
}

/// Median-driven search over the unsorted fractional parts using the
/// dynamic level tree.
pub fn alpha_real_new(w: &WeightSeq) -> Result<RealCostResult> {
    alpha_real_new_with(w, SelectStrategy::MedianOfMedians)
}

pub fn alpha_real_new_with(w: &WeightSeq, strategy: SelectStrategy) -> Result<RealCostResult> {
    let mut stats = SearchStats::default();
    let b_max = w.max_frac();
    let target = alpha_int_fast(&w.ceilings_at(b_max))?.cost;
    stats.int_solves += 1;
    if b_max == 0.0 {
        return finish(w, 0.0, target, Algorithm::New, stats);
    }

    let settable = w.fracs().iter().map(|&f| f > 0.0).collect();
    let mut tree = LevelTree::from_ceilings(w.ceilings().to_vec(), settable)?;
    let mut candidates = FracMultiset::from_weights(w);
    let mut best = b_max;
    while !candidates.is_empty() {
        stats.steps += 1;
        stats.partition_work += candidates.len() as u64;
        stats.max_step_size = stats.max_step_size.max(candidates.len() as u64);
        // lower median
        let median = select_kth_with(&candidates.values(), candidates.len().div_ceil(2), strategy)?;
        let (below, equal, above) = candidates.partition(median);
        let mut issued = 0;
        for it in below.items().iter().chain(equal.items()) {
            if it.value > 0.0 {
                tree.set(it.index)?;
                issued += 1;
            }
        }
        let cost = tree.cost();
        if cost == target {
            best = median;
            for _ in 0..issued {
                tree.undo()?;
            }
            candidates = below;
        } else if cost > target {
            // these sets stay for the rest of the search
            tree.commit();
            candidates = above;
        } else {
            return Err(Error::Invariant(format!(
                "cost {cost} at offset {median} is below the cost {target} at the largest offset"
            )));
        }
    }

    let c = tree.counters();
    stats.sets = c.sets;
    stats.undos = c.undos;
    stats.cost_queries = c.cost_queries;
    stats.finds = c.finds;
    stats.unions = c.unions;
    stats.deunions = c.deunions;
    finish(w, best, target, Algorithm::New, stats)
}

/// Picks the median search when `d * ceil(log2 log2 n) < ceil(log2 n)`,
/// with `n` clamped to at least 4 on both sides.
pub fn choose_strategy_for(n: usize, d: usize) -> Algorithm {
    let n = n.max(4) as u64;
    let loglog = (n as f64).log2().log2().ceil() as u64;
    if (d as u64).saturating_mul(loglog) < ceil_log2(n) as u64 {
        Algorithm::New
    } else {
        Algorithm::Sorted
    }
}

pub fn choose_strategy(w: &WeightSeq) -> Algorithm {
    choose_strategy_for(w.len(), w.d())
}

pub fn alpha_real(w: &WeightSeq, choice: AlgoChoice) -> Result<RealCostResult> {
    let algo = match choice {
        AlgoChoice::New => Algorithm::New,
        AlgoChoice::Sorted => Algorithm::Sorted,
        AlgoChoice::Auto => choose_strategy(w),
    };
    match algo {
        Algorithm::New => alpha_real_new(w),
        Algorithm::Sorted => alpha_real_sorted(w),
    }
}

/// All leaf-depth profiles of ordered strictly binary trees with `n`
/// leaves, for `1 <= n <= REAL_ORACLE_BOUND`.
pub fn tree_profiles(n: usize) -> Result<&'static [Vec<u8>]> {
    static TABLE: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    if n == 0 {
        return Err(Error::Empty);
    }
    if n > REAL_ORACLE_BOUND {
        return Err(Error::OracleBound { n, bound: REAL_ORACLE_BOUND });
    }
    let table = TABLE.get_or_init(|| {
        let mut t: Vec<Vec<Vec<u8>>> = vec![Vec::new(), vec![vec![0]]];
        for len in 2..=REAL_ORACLE_BOUND {
            let mut all = Vec::new();
            for k in 1..len {
                for l in &t[k] {
                    for r in &t[len - k] {
                        all.push(l.iter().chain(r).map(|d| d + 1).collect());
                    }
                }
            }
            t.push(all);
        }
        t
    });
    Ok(&table[n])
}

/// Minimum over every ordered binary tree of `max_i (w_i + l_i)`.
pub fn alpha_real_oracle(w: &[f64]) -> Result<f64> {
    if let Some((index, &value)) = w.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::WeightOutOfRange { index, value });
    }
    let best = tree_profiles(w.len())?
        .iter()
        .map(|p| p.iter().zip(w).map(|(&d, &x)| x + d as f64).fold(f64::NEG_INFINITY, f64::max))
        .fold(f64::INFINITY, f64::min);
    Ok(best)
}
