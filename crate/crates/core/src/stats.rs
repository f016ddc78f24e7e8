//! Goodness-of-fit statistics for sampler checks.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UniformityResult {
    pub samples: u64,
    pub categories: usize,
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
    /// Total variation distance of the empirical distribution from the reference.
    pub total_variation: f64,
    /// Largest |observed / expected - 1| over the categories.
    pub max_relative_deviation: f64,
}

fn upper_tail(stat: f64, df: usize) -> f64 {
    if df == 0 {
        return 1.0;
    }
    ChiSquared::new(df as f64).map(|c| c.sf(stat)).unwrap_or(f64::NAN)
}

/// Pearson test of `counts` against the uniform distribution over its categories.
pub fn chi_square_uniformity(counts: &[u64]) -> Result<UniformityResult> {
    let k = counts.len();
    let total: u64 = counts.iter().sum();
    if k == 0 || total == 0 {
        return Err(Error::InsufficientSamples { expected: 0.0 });
    }
    let expected = total as f64 / k as f64;
    if expected < 5.0 {
        return Err(Error::InsufficientSamples { expected });
    }
    let statistic = counts
        .iter()
        .map(|&c| {
            let diff = c as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let total_variation = 0.5 * counts.iter().map(|&c| (c as f64 / total as f64 - 1.0 / k as f64).abs()).sum::<f64>();
    let max_relative_deviation = counts.iter().map(|&c| (c as f64 / expected - 1.0).abs()).fold(0.0, f64::max);
    Ok(UniformityResult {
        samples: total,
        categories: k,
        statistic,
        df: k - 1,
        p_value: upper_tail(statistic, k - 1),
        total_variation,
        max_relative_deviation,
    })
}

/// Pearson test that two samples share one distribution. Categories empty in
/// both samples are dropped; every remaining expected cell count must be >= 5.
pub fn chi_square_homogeneity(a: &[u64], b: &[u64]) -> Result<UniformityResult> {
    if a.len() != b.len() {
        return Err(Error::InvalidParameters("category counts differ".into()));
    }
    let (na, nb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    if na == 0 || nb == 0 {
        return Err(Error::InsufficientSamples { expected: 0.0 });
    }
    let n = (na + nb) as f64;
    let mut statistic = 0.0;
    let mut cats = 0;
    let mut tv = 0.0;
    let mut max_rel: f64 = 0.0;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        cats += 1;
        for (obs, row) in [(x, na), (y, nb)] {
            let e = col * row as f64 / n;
            if e < 5.0 {
                return Err(Error::InsufficientSamples { expected: e });
            }
            statistic += (obs as f64 - e).powi(2) / e;
            max_rel = max_rel.max((obs as f64 / e - 1.0).abs());
        }
        tv += (x as f64 / na as f64 - y as f64 / nb as f64).abs();
    }
    let df = cats.max(1) - 1;
    Ok(UniformityResult {
        samples: na + nb,
        categories: cats,
        statistic,
        df,
        p_value: upper_tail(statistic, df),
        total_variation: tv / 2.0,
        max_relative_deviation: max_rel,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfectly_uniform() {
        let r = chi_square_uniformity(&[100, 100, 100, 100]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.total_variation, 0.0);
        assert!((r.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_is_rejected() {
        let mut counts = vec![0u64; 70];
        counts[0] = 7000;
        let r = chi_square_uniformity(&counts).unwrap();
        assert!((r.statistic - 7000.0 * 69.0).abs() < 1e-6);
        assert!(r.p_value < 1e-12);
        assert!((r.total_variation - 69.0 / 70.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_samples() {
        assert!(matches!(chi_square_uniformity(&[1, 2, 3]), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn reference_p_value() {
        // chi-square with 3 df at 7.815 has upper tail 0.05
        assert!((upper_tail(7.814727903251178, 3) - 0.05).abs() < 1e-9);
    }

    #[test]
    fn homogeneity_identical() {
        let r = chi_square_homogeneity(&[50, 60, 0, 70], &[50, 60, 0, 70]).unwrap();
        assert_eq!(r.df, 2);
        assert_eq!(r.statistic, 0.0);
    }
}
