//! Per-message delivery over a network profile.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::types::{NetworkProfile, SwarmConfig};

/// Per-message delay: base latency scaled by the swarm congestion factor.
pub fn delivery_delay_ms(profile: &NetworkProfile, swarm: &SwarmConfig) -> f64 {
    profile.base_latency_ms * swarm.congestion_factor()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Attempt {
    Delivered { delay_ms: f64 },
    Dropped,
}

/// One transmission attempt: dropped with probability `1 − reliability`.
pub fn transmit<R: Rng + ?Sized>(
    profile: &NetworkProfile,
    swarm: &SwarmConfig,
    rng: &mut R,
) -> Attempt {
    let u: f64 = rng.random();
    if u < profile.loss_probability() {
        Attempt::Dropped
    } else {
        Attempt::Delivered {
            delay_ms: delivery_delay_ms(profile, swarm),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RetryPolicy {
    /// Retransmission timeout as a multiple of the base latency.
    pub timeout_factor: f64,
    /// Retransmissions after the first attempt.
    pub retry_cap: u32,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            timeout_factor: 10.0,
            retry_cap: 5,
        }
    }
}

impl RetryPolicy {
    pub fn timeout_ms(&self, profile: &NetworkProfile) -> f64 {
        self.timeout_factor * profile.base_latency_ms
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SendResult {
    pub attempts: u32,
    /// Time from first send to delivery; `None` when the retry cap ran out.
    pub latency_ms: Option<f64>,
}

/// Attempt delivery with timeout-based retransmission.
pub fn send_with_retries<R: Rng + ?Sized>(
    profile: &NetworkProfile,
    swarm: &SwarmConfig,
    policy: &RetryPolicy,
    rng: &mut R,
) -> SendResult {
    let mut waited = 0.0;
    for attempt in 1..=policy.retry_cap + 1 {
        match transmit(profile, swarm, rng) {
            Attempt::Delivered { delay_ms } => {
                return SendResult {
                    attempts: attempt,
                    latency_ms: Some(waited + delay_ms),
                }
            }
            Attempt::Dropped => waited += policy.timeout_ms(profile),
        }
    }
    SendResult {
        attempts: policy.retry_cap + 1,
        latency_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;
    use crate::types::NetworkKind;

    fn drops(profile: &NetworkProfile, sends: u32, seed: u64) -> u32 {
        let swarm = SwarmConfig::with_drones(10);
        let mut rng = derive_stream(seed, &["drops".into()]);
        (0..sends)
            .filter(|_| transmit(profile, &swarm, &mut rng) == Attempt::Dropped)
            .count() as u32
    }

    #[test]
    fn five_g_drop_count_matches_binomial() {
        // 10^6 sends at loss 1e-5: mean 10, sd ≈ 3.16
        let d = drops(&NetworkKind::FiveG.profile(), 1_000_000, 1);
        assert!((0..=26).contains(&d), "{d}");
    }

    #[test]
    fn six_g_drops_are_rare() {
        // expected 0.01 drops; P(≥ 2) ≈ 5e-5
        let d = drops(&NetworkKind::SixG.profile(), 1_000_000, 1);
        assert!(d <= 1, "{d}");
    }

    #[test]
    fn perfect_link_never_drops() {
        let mut p = NetworkKind::FiveG.profile();
        p.reliability = 1.0;
        assert_eq!(drops(&p, 200_000, 5), 0);
    }

    #[test]
    fn delay_follows_congestion_law() {
        let p = NetworkKind::SixG.profile();
        let s = SwarmConfig::with_drones(50);
        assert_eq!(delivery_delay_ms(&p, &s), 1.0);
        let s = SwarmConfig::with_drones(10);
        assert!((delivery_delay_ms(&NetworkKind::FiveG.profile(), &s) - 1.2).abs() < 1e-12);
    }

    #[test]
    fn lossy_link_exhausts_retries() {
        let mut p = NetworkKind::FiveG.profile();
        p.reliability = 0.0;
        let s = SwarmConfig::with_drones(10);
        let mut rng = derive_stream(0, &[]);
        let r = send_with_retries(&p, &s, &RetryPolicy::default(), &mut rng);
        assert_eq!(r, SendResult { attempts: 6, latency_ms: None });
    }
}
