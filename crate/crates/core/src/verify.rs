//! Uniformity checks against an exhaustive enumeration.

use serde::Serialize;

use crate::enumerate::{enumerate_labeled_regular, EnumerationTable};
use crate::error::{Error, Result};
use crate::rng::stream_rng;
use crate::sampler::{Algorithm, RunReport, Sampler};
use crate::stats::{chi_square_uniformity, UniformityResult};

pub const ENUMERATION_BUDGET: u64 = 50_000_000;

/// Draws `samples` graphs (sample `k` from stream `k` of `seed`) and counts
/// how often each enumerated graph appears.
pub fn tally(table: &EnumerationTable, sampler: &Sampler, samples: u64, seed: u64) -> Result<(Vec<u64>, RunReport)> {
    let mut counts = vec![0u64; table.len()];
    let mut report = RunReport::default();
    for k in 0..samples {
        let (g, r) = sampler.sample(&mut stream_rng(seed, k))?;
        let i = table
            .index_of(&g)
            .ok_or_else(|| Error::InvalidParameters("sampled graph missing from the enumeration".into()))?;
        counts[i] += 1;
        report.merge(&r);
    }
    Ok((counts, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub result: UniformityResult,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub d: usize,
    pub graphs: usize,
    pub threshold: f64,
    pub runs: Vec<SeedRun>,
    /// At most one seed may fall at or below the threshold.
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n: usize,
    pub d: usize,
    pub algo: Algorithm,
    pub gamma: f64,
    pub samples: u64,
    pub seed: u64,
    pub threshold: f64,
    pub seeds: u64,
}

impl VerifyConfig {
    pub fn new(n: usize, d: usize, algo: Algorithm, samples: u64, seed: u64) -> VerifyConfig {
        VerifyConfig {
            n,
            d,
            algo,
            gamma: 1.0,
            samples,
            seed,
            threshold: 1e-3,
            seeds: 3,
        }
    }
}

/// Chi-square tests on `seeds` consecutive seeds, run in parallel.
pub fn verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let table = enumerate_labeled_regular(cfg.n, cfg.d, ENUMERATION_BUDGET)?;
    let sampler = Sampler::new(cfg.algo, cfg.n, cfg.d, cfg.gamma)?;
    let expected = cfg.samples as f64 / table.len() as f64;
    if expected < 5.0 {
        return Err(Error::InsufficientSamples { expected });
    }
    let results: Vec<Result<(Vec<u64>, RunReport)>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.seeds)
            .map(|k| {
                let (table, sampler) = (&table, &sampler);
                s.spawn(move || tally(table, sampler, cfg.samples, cfg.seed + k))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampling thread panicked")).collect()
    });
    let mut runs = Vec::new();
    for (k, r) in results.into_iter().enumerate() {
        let (counts, _) = r?;
        let result = chi_square_uniformity(&counts)?;
        runs.push(SeedRun {
            seed: cfg.seed + k as u64,
            passed: result.p_value > cfg.threshold,
            result,
        });
    }
    let failures = runs.iter().filter(|r| !r.passed).count();
    Ok(VerifyReport {
        n: cfg.n,
        d: cfg.d,
        graphs: table.len(),
        threshold: cfg.threshold,
        passed: failures < 2,
        runs,
    })
}
