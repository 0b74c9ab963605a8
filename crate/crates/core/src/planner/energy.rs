//! Linear energy model for flight, onboard compute and transmission.

use serde::{Deserialize, Serialize};

use crate::ParamError;

/// Energy coefficients. The defaults are placeholders for experimentation,
/// not measured values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EnergyModel {
    pub tx_j_per_bit: f64,
    /// Onboard compute draw while running inference, in watts.
    pub compute_power_w: f64,
    pub hover_w: f64,
    pub cruise_j_per_m: f64,
}

impl Default for EnergyModel {
    fn default() -> Self {
        EnergyModel {
            tx_j_per_bit: 50e-9,
            compute_power_w: 15.0,
            hover_w: 100.0,
            cruise_j_per_m: 50.0,
        }
    }
}

/// Power envelope of the embedded inference module, watts.
pub const COMPUTE_POWER_RANGE_W: (f64, f64) = (7.0, 15.0);

impl EnergyModel {
    pub fn validate(&self) -> Result<(), ParamError> {
        for (name, v) in [
            ("tx_j_per_bit", self.tx_j_per_bit),
            ("hover_w", self.hover_w),
            ("cruise_j_per_m", self.cruise_j_per_m),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(ParamError::out_of_range(name, "positive and finite", v));
            }
        }
        let (lo, hi) = COMPUTE_POWER_RANGE_W;
        if !(lo..=hi).contains(&self.compute_power_w) {
            return Err(ParamError::out_of_range(
                "compute_power_w",
                "within the 7-15 W embedded envelope",
                self.compute_power_w,
            ));
        }
        Ok(())
    }
}

/// Work a drone is expected to perform.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Workload {
    pub path_length_m: f64,
    pub compute_time_s: f64,
    pub bits_tx: f64,
    /// Stationary airborne time. Zero for pure sweep work.
    #[serde(default)]
    pub hover_time_s: f64,
}

/// Per-category breakdown of an estimate, in joules.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyBreakdown {
    pub cruise_j: f64,
    pub hover_j: f64,
    pub compute_j: f64,
    pub tx_j: f64,
}

impl EnergyBreakdown {
    pub fn total(&self) -> f64 {
        self.cruise_j + self.hover_j + self.compute_j + self.tx_j
    }
}

pub fn energy_breakdown(workload: &Workload, model: &EnergyModel) -> EnergyBreakdown {
    EnergyBreakdown {
        cruise_j: model.cruise_j_per_m * workload.path_length_m.max(0.0),
        hover_j: model.hover_w * workload.hover_time_s.max(0.0),
        compute_j: model.compute_power_w * workload.compute_time_s.max(0.0),
        tx_j: model.tx_j_per_bit * workload.bits_tx.max(0.0),
    }
}

/// `cruise·path + hover·t_hover + compute·t_compute + tx·bits`, joules.
/// Negative workload components count as zero.
pub fn estimate_energy(workload: &Workload, model: &EnergyModel) -> f64 {
    energy_breakdown(workload, model).total()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cruise_only() {
        let w = Workload {
            path_length_m: 1000.0,
            ..Workload::default()
        };
        assert_eq!(estimate_energy(&w, &EnergyModel::default()), 50_000.0);
    }

    #[test]
    fn classification_frames_at_ceiling_power() {
        // 100 frames × 80 ms at 15 W
        let w = Workload {
            compute_time_s: 100.0 * 0.080,
            ..Workload::default()
        };
        let e = estimate_energy(&w, &EnergyModel::default());
        assert!((e - 120.0).abs() < 1e-9, "{e}");
    }

    #[test]
    fn zero_plan_costs_nothing() {
        assert_eq!(estimate_energy(&Workload::default(), &EnergyModel::default()), 0.0);
    }

    #[test]
    fn doubling_path_doubles_cruise_term() {
        let m = EnergyModel::default();
        let a = energy_breakdown(&Workload { path_length_m: 321.5, ..Default::default() }, &m);
        let b = energy_breakdown(&Workload { path_length_m: 643.0, ..Default::default() }, &m);
        assert_eq!(b.cruise_j, 2.0 * a.cruise_j);
    }

    #[test]
    fn compute_power_outside_envelope_is_rejected() {
        let m = EnergyModel {
            compute_power_w: 20.0,
            ..EnergyModel::default()
        };
        assert!(m.validate().is_err());
        let m = EnergyModel {
            compute_power_w: 7.0,
            ..m
        };
        assert!(m.validate().is_ok());
    }
}
