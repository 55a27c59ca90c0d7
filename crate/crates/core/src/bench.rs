// SPDX-License-Identifier: Apache-2.0

//! Seeded instance generator and timing harness.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::realweight::{alpha_real_new, alpha_real_sorted, Algorithm, RealCostResult, WeightSeq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub n: usize,
    pub d: usize,
    pub trials: u64,
    pub seed: u64,
    pub algos: Vec<Algorithm>,
    pub threads: usize,
    /// Report zero wall time so output is byte-identical across runs.
    pub deterministic: bool,
}

impl BenchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d == 0 || self.d > self.n {
            return Err(Error::BadConfig(format!("need 1 <= d <= n, got d = {}, n = {}", self.d, self.n)));
        }
        if self.algos.is_empty() {
            return Err(Error::BadConfig("no algorithms selected".into()));
        }
        if self.threads == 0 {
            return Err(Error::BadConfig("threads must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub d: usize,
    pub algo: &'static str,
    pub wall_ns: u128,
    pub sets: u64,
    pub undos: u64,
    pub finds: u64,
    pub unions: u64,
}

pub fn algo_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::New => "new",
        Algorithm::Sorted => "sorted",
    }
}

pub fn run_algorithm(a: Algorithm, w: &WeightSeq) -> Result<RealCostResult> {
    match a {
        Algorithm::New => alpha_real_new(w),
        Algorithm::Sorted => alpha_real_sorted(w),
    }
}

/// `n` weights whose ceilings take exactly `d` distinct values, with
/// fractional parts uniform in `(0, 1)`. Trial `t` uses its own stream of
/// the seeded generator.
pub fn generate(n: usize, d: usize, seed: u64, trial: u64) -> Result<WeightSeq> {
    if d == 0 || d > n {
        return Err(Error::BadConfig(format!("need 1 <= d <= n, got d = {d}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let mut ceilings: Vec<i64> = (0..d as i64).collect();
    ceilings.extend((d..n).map(|_| rng.gen_range(0..d as i64)));
    // Fisher-Yates so the guaranteed values are not all in front
    for i in (1..n).rev() {
        ceilings.swap(i, rng.gen_range(0..=i));
    }
    let w = ceilings
        .into_iter()
        .map(|c| {
            let f = loop {
                let f: f64 = rng.gen();
                if f > 0.0 {
                    break f;
                }
            };
            c as f64 - 1.0 + f
        })
        .collect();
    WeightSeq::new(w)
}

fn run_trial(cfg: &BenchConfig, trial: u64) -> Result<Vec<BenchRow>> {
    let w = generate(cfg.n, cfg.d, cfg.seed, trial)?;
    let mut results = Vec::with_capacity(cfg.algos.len());
    for &a in &cfg.algos {
        let start = Instant::now();
        let r = run_algorithm(a, &w)?;
        results.push((a, start.elapsed().as_nanos(), r));
    }
    let (first_algo, _, first) = &results[0];
    for (a, _, r) in &results[1..] {
        if (r.alpha - first.alpha).abs() > 1e-9 || r.offset != first.offset {
            return Err(Error::Disagreement {
                seed: cfg.seed,
                trial,
                detail: format!(
                    "{} gives alpha {} offset {}, {} gives alpha {} offset {}",
                    algo_name(*first_algo),
                    first.alpha,
                    first.offset,
                    algo_name(*a),
                    r.alpha,
                    r.offset
                ),
            });
        }
    }
    Ok(results
        .into_iter()
        .map(|(a, ns, r)| BenchRow {
            n: cfg.n,
            d: cfg.d,
            algo: algo_name(a),
            wall_ns: if cfg.deterministic { 0 } else { ns },
            sets: r.stats.sets,
            undos: r.stats.undos,
            finds: r.stats.finds,
            unions: r.stats.unions,
        })
        .collect())
}

/// Runs every trial, fanning out over `cfg.threads` workers, and returns
/// rows ordered by trial index and then by algorithm order.
pub fn run(cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    cfg.validate()?;
    let workers = cfg.threads.min(cfg.trials.max(1) as usize);
    let per_trial: Vec<Result<Vec<BenchRow>>> = if workers <= 1 {
        (0..cfg.trials).map(|t| run_trial(cfg, t)).collect()
    } else {
        let mut slots: Vec<Option<Result<Vec<BenchRow>>>> = (0..cfg.trials).map(|_| None).collect();
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|k| {
                    s.spawn(move || {
                        (k as u64..cfg.trials).step_by(workers).map(|t| (t, run_trial(cfg, t))).collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (t, r) in h.join().expect("benchmark worker panicked") {
                    slots[t as usize] = Some(r);
                }
            }
        });
        slots.into_iter().map(|r| r.expect("every trial ran")).collect()
    };
    let mut rows = Vec::new();
    for r in per_trial {
        rows.extend(r?);
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(["n", "d", "algo", "wall_ns", "sets", "undos", "finds", "unions"]).expect("in-memory write");
    }
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii csv")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, d: usize, trials: u64, threads: usize) -> BenchConfig {
        BenchConfig {
            n,
            d,
            trials,
            seed: 42,
            algos: vec![Algorithm::New, Algorithm::Sorted],
            threads,
            deterministic: true,
        }
    }

    #[test]
    fn generator_hits_exact_d() {
        for d in [1, 2, 5, 40] {
            let w = generate(40, d, 9, 3).unwrap();
            assert_eq!(w.d(), d);
            assert!(w.fracs().iter().all(|&f| f > 0.0 && f < 1.0));
        }
        assert_eq!(generate(10, 3, 1, 0).unwrap(), generate(10, 3, 1, 0).unwrap());
        assert_ne!(generate(10, 3, 1, 0).unwrap(), generate(10, 3, 1, 1).unwrap());
        assert!(generate(3, 4, 1, 0).is_err());
    }

    #[test]
    fn deterministic_csv_and_thread_merge() {
        let a = to_csv(&run(&cfg(300, 3, 6, 1)).unwrap());
        let b = to_csv(&run(&cfg(300, 3, 6, 4)).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with("n,d,algo,wall_ns,sets,undos,finds,unions\n"));
        assert_eq!(a.lines().count(), 1 + 12);
    }

    #[test]
    fn consistency_gate_on_single_ceiling() {
        let rows = run(&cfg(10_000, 1, 3, 3)).unwrap();
        assert_eq!(rows.len(), 6);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(run(&cfg(5, 0, 1, 1)).is_err());
        assert!(run(&cfg(5, 6, 1, 1)).is_err());
        assert!(run(&BenchConfig { algos: vec![], ..cfg(5, 1, 1, 1) }).is_err());
    }
}
