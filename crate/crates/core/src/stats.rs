//! Summary statistics for Monte Carlo samples.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    CollisionRatePct,
    DetectionTimeMs,
}

/// Mean, sample standard deviation and 95 % percentile interval over
/// per-iteration samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub metric: Metric,
    pub mean: f64,
    /// Sample standard deviation (n − 1 denominator).
    pub std: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub n_iterations: usize,
}

impl TrialStats {
    /// Summarise `samples`; `None` when fewer than two are available.
    ///
    /// The interval is the empirical 2.5th/97.5th percentile pair, widened
    /// to include the mean if sampling skew pushed it outside.
    pub fn from_samples(metric: Metric, samples: &[f64]) -> Option<TrialStats> {
        if samples.len() < 2 {
            return None;
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let var = samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        let mut sorted = samples.to_vec();
        sorted.sort_by(f64::total_cmp);
        let lo = percentile_sorted(&sorted, 2.5);
        let hi = percentile_sorted(&sorted, 97.5);
        Some(TrialStats {
            metric,
            mean,
            std: var.sqrt(),
            ci_low: lo.min(mean),
            ci_high: hi.max(mean),
            n_iterations: samples.len(),
        })
    }
}

/// Linear-interpolation percentile (the `(n − 1)·p` rank rule) of an
/// ascending slice. `p` is in percent.
pub fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    assert!(!sorted.is_empty(), "percentile of empty sample");
    let rank = (p / 100.0).clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = rank.floor() as usize;
    let hi = rank.ceil() as usize;
    let frac = rank - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// One-sided exact sign test: probability of at least `wins` successes in
/// `wins + losses` fair coin flips. Ties are excluded by the caller.
pub fn sign_test_p_value(wins: u64, losses: u64) -> f64 {
    let n = wins + losses;
    if n == 0 {
        return 1.0;
    }
    // sum_{k=wins}^{n} C(n,k) / 2^n, accumulated in log space
    let ln_half_n = -(n as f64) * std::f64::consts::LN_2;
    let mut ln_c = 0.0f64; // ln C(n, 0)
    let mut total = 0.0;
    for k in 0..=n {
        if k > 0 {
            ln_c += ((n - k + 1) as f64).ln() - (k as f64).ln();
        }
        if k >= wins {
            total += (ln_c + ln_half_n).exp();
        }
    }
    total.min(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentile_interpolates() {
        let xs = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile_sorted(&xs, 0.0), 1.0);
        assert_eq!(percentile_sorted(&xs, 50.0), 3.0);
        assert_eq!(percentile_sorted(&xs, 100.0), 5.0);
        assert_eq!(percentile_sorted(&xs, 12.5), 1.5);
    }

    #[test]
    fn stats_of_two_samples() {
        let s = TrialStats::from_samples(Metric::DetectionTimeMs, &[1.0, 3.0]).unwrap();
        assert_eq!(s.mean, 2.0);
        assert!((s.std - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(s.ci_low, 1.05);
        assert_eq!(s.ci_high, 2.95);
        assert!(TrialStats::from_samples(Metric::DetectionTimeMs, &[1.0]).is_none());
    }

    #[test]
    fn interval_brackets_mean() {
        // heavy right tail drags the mean above the 97.5th percentile
        let mut xs = vec![0.0; 99];
        xs.push(1e6);
        let s = TrialStats::from_samples(Metric::CollisionRatePct, &xs).unwrap();
        assert!(s.ci_low <= s.mean && s.mean <= s.ci_high);
    }

    #[test]
    fn sign_test_matches_binomial_tail() {
        // P(X >= 3 | n = 3) = 1/8
        assert!((sign_test_p_value(3, 0) - 0.125).abs() < 1e-12);
        // P(X >= 2 | n = 3) = 4/8
        assert!((sign_test_p_value(2, 1) - 0.5).abs() < 1e-12);
        assert!((sign_test_p_value(0, 5) - 1.0).abs() < 1e-12);
        // 30 of 30 wins
        assert!((sign_test_p_value(30, 0) - 0.5f64.powi(30)).abs() < 1e-20);
    }
}
