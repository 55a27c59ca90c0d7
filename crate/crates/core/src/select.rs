// SPDX-License-Identifier: Apache-2.0

//! Order statistics on `f64` slices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SelectStrategy {
    /// Worst-case linear median of medians with groups of five.
    #[default]
    MedianOfMedians,
    /// Quickselect with a seeded random pivot.
    Randomized { seed: u64 },
}

/// Returns the `k`-th smallest value (1-based). Values must not be NaN.
pub fn select_kth(values: &[f64], k: usize) -> Result<f64> {
    select_kth_with(values, k, SelectStrategy::MedianOfMedians)
}

pub fn select_kth_with(values: &[f64], k: usize, strategy: SelectStrategy) -> Result<f64> {
    if k == 0 || k > values.len() {
        return Err(Error::RankOutOfRange { k, len: values.len() });
    }
    let mut buf = values.to_vec();
    Ok(match strategy {
        SelectStrategy::MedianOfMedians => mom_select(&mut buf, k - 1),
        SelectStrategy::Randomized { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_select(&mut buf, k - 1, &mut rng)
        }
    })
}

/// Splits `v` around `pivot` into `< pivot`, `== pivot`, `> pivot` and
/// returns the boundaries `(lt, le)`.
fn partition3(v: &mut [f64], pivot: f64) -> (usize, usize) {
    let (mut lt, mut i, mut gt) = (0, 0, v.len());
    while i < gt {
        if v[i] < pivot {
            v.swap(lt, i);
            lt += 1;
            i += 1;
        } else if v[i] > pivot {
            gt -= 1;
            v.swap(i, gt);
        } else {
            i += 1;
        }
    }
    (lt, gt)
}

fn small_sort(v: &mut [f64]) {
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            j -= 1;
        }
    }
}

fn mom_select(mut v: &mut [f64], mut k: usize) -> f64 {
    loop {
        if v.len() <= 10 {
            small_sort(v);
            return v[k];
        }
        // Move each group's median to the front, then recurse on those.
        let groups = v.len().div_ceil(5);
        for g in 0..groups {
            let lo = g * 5;
            let hi = (lo + 5).min(v.len());
            small_sort(&mut v[lo..hi]);
            v.swap(g, lo + (hi - lo - 1) / 2);
        }
        let pivot = mom_select(&mut v[..groups], (groups - 1) / 2);
        let (lt, le) = partition3(v, pivot);
        if k < lt {
            v = &mut v[..lt];
        } else if k < le {
            return pivot;
        } else {
            v = &mut v[le..];
            k -= le;
        }
    }
}

fn random_select(mut v: &mut [f64], mut k: usize, rng: &mut ChaCha8Rng) -> f64 {
    loop {
        if v.len() <= 10 {
            small_sort(v);
            return v[k];
        }
        let pivot = v[rng.gen_range(0..v.len())];
        let (lt, le) = partition3(v, pivot);
        if k < lt {
            v = &mut v[..lt];
        } else if k < le {
            return pivot;
        } else {
            v = &mut v[le..];
            k -= le;
        }
    }
}
