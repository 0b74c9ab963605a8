use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ParamError;

/// What a drone sends per captured frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TransmissionMode {
    /// Structured attributes encoded against the shared knowledge base.
    #[default]
    Semantic,
    /// The captured frame itself.
    Raw,
}

impl fmt::Display for TransmissionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransmissionMode::Semantic => "semantic",
            TransmissionMode::Raw => "raw",
        })
    }
}

impl std::str::FromStr for TransmissionMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "semantic" => Ok(TransmissionMode::Semantic),
            "raw" => Ok(TransmissionMode::Raw),
            _ => Err(format!("unknown transmission mode `{s}` (expected semantic or raw)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VideoProfile {
    pub width_px: u32,
    pub height_px: u32,
    pub fps: f64,
    pub bits_per_pixel: f64,
}

impl VideoProfile {
    pub fn new(width_px: u32, height_px: u32, fps: f64, bits_per_pixel: f64) -> Self {
        VideoProfile {
            width_px,
            height_px,
            fps,
            bits_per_pixel,
        }
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        if self.width_px == 0 {
            return Err(ParamError::out_of_range("width_px", "positive", 0.0));
        }
        if self.height_px == 0 {
            return Err(ParamError::out_of_range("height_px", "positive", 0.0));
        }
        for (name, v) in [("fps", self.fps), ("bits_per_pixel", self.bits_per_pixel)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ParamError::out_of_range(name, "positive and finite", v));
            }
        }
        Ok(())
    }

    /// Bits in one uncompressed frame.
    pub fn frame_bits(&self) -> f64 {
        f64::from(self.width_px) * f64::from(self.height_px) * self.bits_per_pixel
    }

    pub fn label(&self) -> String {
        format!("{}x{}@{}", self.width_px, self.height_px, self.fps)
    }
}

/// Resolutions and frame rates used for the raw-vs-semantic comparison.
pub fn default_profiles() -> Vec<VideoProfile> {
    vec![
        VideoProfile::new(640, 480, 15.0, 24.0),
        VideoProfile::new(640, 480, 30.0, 24.0),
        VideoProfile::new(1280, 720, 30.0, 24.0),
        VideoProfile::new(1920, 1080, 30.0, 24.0),
        VideoProfile::new(1920, 1080, 60.0, 24.0),
        VideoProfile::new(3840, 2160, 30.0, 24.0),
    ]
}

/// Uncompressed video bit rate, b/s.
pub fn raw_bandwidth(profile: &VideoProfile) -> f64 {
    profile.frame_bits() * profile.fps
}

/// Bit rate of `msg_size_bytes` messages sent at `msg_rate_hz`.
pub fn semantic_bandwidth(msg_size_bytes: f64, msg_rate_hz: f64) -> f64 {
    8.0 * msg_size_bytes * msg_rate_hz
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reduction {
    pub ratio: f64,
    /// Set when the semantic stream was larger than raw and the ratio was
    /// floored at zero.
    pub clamped: bool,
}

/// `1 − semantic/raw`, floored at zero.
pub fn reduction_ratio(raw_bps: f64, semantic_bps: f64) -> Reduction {
    let r = 1.0 - semantic_bps / raw_bps;
    if r < 0.0 {
        log::warn!(
            "semantic stream ({semantic_bps} b/s) exceeds raw ({raw_bps} b/s); reporting zero reduction"
        );
        Reduction {
            ratio: 0.0,
            clamped: true,
        }
    } else {
        Reduction {
            ratio: r,
            clamped: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "hz")]
pub enum MessageRate {
    /// One message per video frame.
    PerFrame,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SemanticConfig {
    pub message_bytes: f64,
    pub rate: MessageRate,
    /// Multiplier on raw bit rate for a hypothetical video codec; 1.0 is
    /// uncompressed.
    pub raw_compression_factor: f64,
}

impl Default for SemanticConfig {
    fn default() -> Self {
        SemanticConfig {
            message_bytes: 2048.0,
            rate: MessageRate::PerFrame,
            raw_compression_factor: 1.0,
        }
    }
}

impl SemanticConfig {
    pub fn validate(&self) -> Result<(), ParamError> {
        if !(self.message_bytes > 0.0 && self.message_bytes.is_finite()) {
            return Err(ParamError::out_of_range(
                "message_bytes",
                "positive and finite",
                self.message_bytes,
            ));
        }
        if let MessageRate::Fixed(hz) = self.rate {
            if !(hz > 0.0 && hz.is_finite()) {
                return Err(ParamError::out_of_range("rate", "positive and finite", hz));
            }
        }
        let c = self.raw_compression_factor;
        if !(c > 0.0 && c <= 1.0) {
            return Err(ParamError::out_of_range("raw_compression_factor", "in (0, 1]", c));
        }
        Ok(())
    }

    fn rate_for(&self, profile: &VideoProfile) -> f64 {
        match self.rate {
            MessageRate::PerFrame => profile.fps,
            MessageRate::Fixed(hz) => hz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandwidthRow {
    pub profile: VideoProfile,
    pub mode: TransmissionMode,
    pub bits_per_second: f64,
    /// Reduction relative to the raw row of the same profile; zero for raw.
    pub reduction: f64,
    pub clamped: bool,
}

/// One raw and one semantic row per profile, ordered by raw bit rate.
pub fn bandwidth_table(
    profiles: &[VideoProfile],
    config: &SemanticConfig,
) -> Result<Vec<BandwidthRow>, ParamError> {
    if profiles.is_empty() {
        return Err(ParamError::out_of_range("profiles", "non-empty", 0.0));
    }
    config.validate()?;
    let mut pairs: Vec<(f64, &VideoProfile)> = profiles
        .iter()
        .map(|p| p.validate().map(|()| (raw_bandwidth(p) * config.raw_compression_factor, p)))
        .collect::<Result<_, _>>()?;
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut rows = Vec::with_capacity(2 * pairs.len());
    for (raw, p) in pairs {
        let sem = semantic_bandwidth(config.message_bytes, config.rate_for(p));
        let red = reduction_ratio(raw, sem);
        rows.push(BandwidthRow {
            profile: *p,
            mode: TransmissionMode::Raw,
            bits_per_second: raw,
            reduction: 0.0,
            clamped: false,
        });
        rows.push(BandwidthRow {
            profile: *p,
            mode: TransmissionMode::Semantic,
            bits_per_second: sem,
            reduction: red.ratio,
            clamped: red.clamped,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_rates() {
        assert_eq!(raw_bandwidth(&VideoProfile::new(1920, 1080, 30.0, 24.0)), 1_492_992_000.0);
        assert_eq!(raw_bandwidth(&VideoProfile::new(640, 480, 15.0, 24.0)), 110_592_000.0);
        assert_eq!(raw_bandwidth(&VideoProfile::new(1, 1, 1.0, 1.0)), 1.0);
    }

    #[test]
    fn semantic_rate_and_reduction() {
        let sem = semantic_bandwidth(2048.0, 10.0);
        assert_eq!(sem, 163_840.0);
        let raw = 1_492_992_000.0;
        let r = reduction_ratio(raw, sem);
        assert!((r.ratio - (1.0 - 163_840.0 / raw)).abs() < 1e-15);
        assert!((r.ratio - 0.99989).abs() < 5e-6);
        assert_eq!(reduction_ratio(5.0, 5.0).ratio, 0.0);
        let over = reduction_ratio(5.0, 10.0);
        assert!(over.clamped && over.ratio == 0.0);
    }

    #[test]
    fn table_shape() {
        let profiles = &default_profiles()[..3];
        let rows = bandwidth_table(profiles, &SemanticConfig::default()).unwrap();
        assert_eq!(rows.len(), 6);
        let raws: Vec<f64> = rows
            .iter()
            .filter(|r| r.mode == TransmissionMode::Raw)
            .map(|r| r.bits_per_second)
            .collect();
        assert!(raws.windows(2).all(|w| w[0] <= w[1]));
        assert!(bandwidth_table(&[], &SemanticConfig::default()).is_err());
    }

    #[test]
    fn defaults_meet_sixty_percent() {
        let rows = bandwidth_table(&default_profiles(), &SemanticConfig::default()).unwrap();
        for r in rows.iter().filter(|r| r.mode == TransmissionMode::Semantic) {
            assert!(r.reduction >= 0.60, "{r:?}");
        }
    }

    #[test]
    fn invalid_profile_rejected() {
        let bad = VideoProfile::new(0, 480, 30.0, 24.0);
        assert!(bandwidth_table(&[bad], &SemanticConfig::default()).is_err());
    }
}
