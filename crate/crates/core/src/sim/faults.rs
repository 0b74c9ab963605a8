use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{GeoPoint, Polygon};
use crate::rng::sample_poisson;
use crate::ParamError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FaultInjection {
    pub fault_id: u32,
    pub time_ms: f64,
    pub position: GeoPoint,
    /// Placeholder severity level, 1 to 3.
    pub severity: u8,
}

/// Faults for one period: count ~ Poisson(`mean_per_period`), times uniform
/// over the period, positions uniform inside `perimeter`. Sorted by time and
/// numbered in that order.
pub fn fault_process<R: Rng + ?Sized>(
    perimeter: &Polygon,
    period_ms: f64,
    mean_per_period: f64,
    rng: &mut R,
) -> Result<Vec<FaultInjection>, ParamError> {
    if !(period_ms > 0.0 && period_ms.is_finite()) {
        return Err(ParamError::out_of_range("period_ms", "positive and finite", period_ms));
    }
    let count = sample_poisson(rng, mean_per_period)?;
    let bb = perimeter.bounding_box();
    let mut faults: Vec<FaultInjection> = (0..count)
        .map(|_| {
            let time_ms = rng.random::<f64>() * period_ms;
            let position = loop {
                let p = GeoPoint::new(
                    bb.min_x + rng.random::<f64>() * bb.width(),
                    bb.min_y + rng.random::<f64>() * bb.height(),
                );
                if perimeter.contains(&p) {
                    break p;
                }
            };
            let severity = rng.random_range(1..=3u8);
            FaultInjection {
                fault_id: 0,
                time_ms,
                position,
                severity,
            }
        })
        .collect();
    faults.sort_by(|a, b| a.time_ms.total_cmp(&b.time_ms));
    for (i, f) in faults.iter_mut().enumerate() {
        f.fault_id = i as u32;
    }
    Ok(faults)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::derive_stream;

    #[test]
    fn mean_count_over_many_periods() {
        let square = Polygon::rectangle(GeoPoint::new(0.0, 0.0), 100.0, 100.0);
        let total: usize = (0..1000u64)
            .map(|i| {
                let mut rng = derive_stream(11, &[i.into()]);
                fault_process(&square, 1000.0, 5.0, &mut rng).unwrap().len()
            })
            .sum();
        let mean = total as f64 / 1000.0;
        // 5 ± 3 standard errors (sqrt(5/1000) ≈ 0.0707)
        assert!((mean - 5.0).abs() < 0.22, "{mean}");
    }

    #[test]
    fn faults_stay_inside_a_concave_perimeter() {
        let ell = Polygon::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(100.0, 0.0),
            GeoPoint::new(100.0, 20.0),
            GeoPoint::new(20.0, 20.0),
            GeoPoint::new(20.0, 100.0),
            GeoPoint::new(0.0, 100.0),
        ]);
        let mut rng = derive_stream(3, &["faults".into()]);
        let faults = fault_process(&ell, 60_000.0, 500.0, &mut rng).unwrap();
        assert!(faults.len() > 400);
        for f in &faults {
            assert!(ell.contains(&f.position), "{f:?}");
            assert!((0.0..60_000.0).contains(&f.time_ms));
        }
        assert!(faults.windows(2).all(|w| w[0].time_ms <= w[1].time_ms));
    }
}
