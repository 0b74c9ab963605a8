//! Boustrophedon coverage of a polygon with horizontal sweep lines.

use serde::{Deserialize, Serialize};

use super::PlannerError;
use crate::geometry::{GeoPoint, Polygon};

/// One horizontal sweep line and the x-intervals flown along it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepLine {
    pub y_m: f64,
    /// Half the band height this line is responsible for.
    pub half_band_m: f64,
    pub segments: Vec<(f64, f64)>,
}

impl SweepLine {
    pub fn length(&self) -> f64 {
        self.segments.iter().map(|(a, b)| b - a).sum()
    }
}

/// Waypoints for one collector: a contiguous run of sweep lines.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Sweep {
    pub line_indices: Vec<usize>,
    pub waypoints: Vec<GeoPoint>,
}

impl Sweep {
    pub fn is_empty(&self) -> bool {
        self.waypoints.is_empty()
    }

    pub fn path_length(&self) -> f64 {
        path_length(&self.waypoints)
    }
}

pub fn path_length(waypoints: &[GeoPoint]) -> f64 {
    waypoints.windows(2).map(|w| w[0].distance(&w[1])).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveragePlan {
    pub spacing_m: f64,
    pub lines: Vec<SweepLine>,
    /// One entry per collector, in collector order.
    pub sweeps: Vec<Sweep>,
    /// Collectors that received no lines because there were too few.
    pub surplus_collectors: Vec<usize>,
}

impl CoveragePlan {
    pub fn total_path_length(&self) -> f64 {
        self.sweeps.iter().map(Sweep::path_length).sum()
    }
}

const EDGE_NUDGE: f64 = 1e-9;

/// Merge overlapping intervals; input need not be sorted.
fn merge_intervals(mut iv: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    iv.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(iv.len());
    for (a, b) in iv {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Extent of the polygon inside the band `[lo, hi]`, sampled at the band
/// edges, the centre and every vertex height inside the band.
fn band_segments(perimeter: &Polygon, lo: f64, hi: f64) -> Vec<(f64, f64)> {
    let nudge = EDGE_NUDGE * (1.0 + hi.abs().max(lo.abs()));
    let mut ys = vec![lo + nudge, 0.5 * (lo + hi), hi - nudge];
    for v in &perimeter.vertices {
        if v.y_m > lo && v.y_m < hi {
            ys.push(v.y_m - nudge);
            ys.push(v.y_m + nudge);
        }
    }
    let intervals: Vec<(f64, f64)> = ys.iter().flat_map(|&y| perimeter.scanline(y)).collect();
    merge_intervals(intervals)
}

/// Sweep lines covering `perimeter` with at most `spacing_m` between lines,
/// split into `n_collectors` contiguous groups.
///
/// The bounding box height is divided into `ceil(height / spacing)` equal
/// bands with one line through the middle of each, so every interior point
/// is within half a spacing of its band's line.
pub fn plan_coverage(
    perimeter: &Polygon,
    n_collectors: usize,
    spacing_m: f64,
) -> Result<CoveragePlan, PlannerError> {
    perimeter
        .validate()
        .map_err(PlannerError::InvalidPerimeter)?;
    if n_collectors < 1 {
        return Err(PlannerError::NoCollectors);
    }
    if !(spacing_m > 0.0 && spacing_m.is_finite()) {
        return Err(PlannerError::InvalidSpacing(spacing_m));
    }
    let bb = perimeter.bounding_box();
    let n_lines = ((bb.height() / spacing_m).ceil() as usize).max(1);
    let band = bb.height() / n_lines as f64;
    let lines: Vec<SweepLine> = (0..n_lines)
        .map(|k| {
            let lo = bb.min_y + k as f64 * band;
            let hi = lo + band;
            SweepLine {
                y_m: lo + 0.5 * band,
                half_band_m: 0.5 * band,
                segments: band_segments(perimeter, lo, hi),
            }
        })
        .filter(|l| !l.segments.is_empty())
        .collect();

    let mut sweeps = Vec::with_capacity(n_collectors);
    let mut surplus = Vec::new();
    let base = lines.len() / n_collectors;
    let extra = lines.len() % n_collectors;
    let mut next = 0;
    for c in 0..n_collectors {
        let take = base + usize::from(c < extra);
        let indices: Vec<usize> = (next..next + take).collect();
        next += take;
        if indices.is_empty() {
            surplus.push(c);
        }
        let mut waypoints = Vec::new();
        for &i in &indices {
            let line = &lines[i];
            let forward = i % 2 == 0;
            let segs: Vec<(f64, f64)> = if forward {
                line.segments.clone()
            } else {
                line.segments.iter().rev().map(|&(a, b)| (b, a)).collect()
            };
            for (a, b) in segs {
                waypoints.push(GeoPoint::new(a, line.y_m));
                waypoints.push(GeoPoint::new(b, line.y_m));
            }
        }
        sweeps.push(Sweep {
            line_indices: indices,
            waypoints,
        });
    }
    Ok(CoveragePlan {
        spacing_m,
        lines,
        sweeps,
        surplus_collectors: surplus,
    })
}

/// Distance from `p` to the nearest flown segment of any sweep line.
pub fn distance_to_sweeps(plan: &CoveragePlan, p: &GeoPoint) -> f64 {
    plan.lines
        .iter()
        .flat_map(|l| {
            l.segments.iter().map(move |&(a, b)| {
                p.distance_to_segment(&GeoPoint::new(a, l.y_m), &GeoPoint::new(b, l.y_m))
            })
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::rectangle(GeoPoint::new(0.0, 0.0), 100.0, 100.0)
    }

    #[test]
    fn square_single_collector() {
        let plan = plan_coverage(&square(), 1, 10.0).unwrap();
        assert_eq!(plan.lines.len(), 10);
        assert_eq!(plan.sweeps.len(), 1);
        // 10 lines of 100 m plus 9 line changes of 10 m
        assert!((plan.total_path_length() - 1090.0).abs() < 1e-6);
        assert_eq!(plan.lines[0].y_m, 5.0);
        assert_eq!(plan.lines[9].y_m, 95.0);
    }

    #[test]
    fn square_two_collectors_split_evenly() {
        let plan = plan_coverage(&square(), 2, 10.0).unwrap();
        assert_eq!(plan.sweeps[0].line_indices.len(), 5);
        assert_eq!(plan.sweeps[1].line_indices.len(), 5);
        let mut all: Vec<usize> = plan
            .sweeps
            .iter()
            .flat_map(|s| s.line_indices.clone())
            .collect();
        all.sort();
        assert_eq!(all, (0..10).collect::<Vec<_>>());
        assert!(plan.surplus_collectors.is_empty());
    }

    #[test]
    fn surplus_collectors_are_flagged() {
        let plan = plan_coverage(&square(), 12, 10.0).unwrap();
        assert_eq!(plan.surplus_collectors, vec![10, 11]);
        assert!(plan.sweeps[10].is_empty() && plan.sweeps[11].is_empty());
    }

    #[test]
    fn degenerate_inputs() {
        let flat = Polygon::new(vec![GeoPoint::new(0.0, 0.0), GeoPoint::new(1.0, 0.0)]);
        assert!(matches!(
            plan_coverage(&flat, 1, 10.0),
            Err(PlannerError::InvalidPerimeter(_))
        ));
        assert!(plan_coverage(&square(), 0, 10.0).is_err());
        assert!(plan_coverage(&square(), 1, 0.0).is_err());
    }

    #[test]
    fn thin_polygon_gets_one_line() {
        let strip = Polygon::rectangle(GeoPoint::new(0.0, 0.0), 200.0, 3.0);
        let plan = plan_coverage(&strip, 1, 10.0).unwrap();
        assert_eq!(plan.lines.len(), 1);
        assert_eq!(plan.lines[0].y_m, 1.5);
        assert!((plan.total_path_length() - 200.0).abs() < 1e-9);
    }

    #[test]
    fn triangle_points_are_covered() {
        let tri = Polygon::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(100.0, 0.0),
            GeoPoint::new(50.0, 80.0),
        ]);
        let plan = plan_coverage(&tri, 3, 7.0).unwrap();
        let half = plan.spacing_m / 2.0;
        for i in 0..=50 {
            for j in 0..=50 {
                let p = GeoPoint::new(i as f64 * 2.0, j as f64 * 1.6);
                if tri.contains(&p) {
                    assert!(distance_to_sweeps(&plan, &p) <= half + 1e-9, "{p:?}");
                }
            }
        }
    }
}
