//! Planar geometry in a local metric frame.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A point in metres in a local planar frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeoPoint {
    pub x_m: f64,
    pub y_m: f64,
}

impl GeoPoint {
    pub const fn new(x_m: f64, y_m: f64) -> Self {
        GeoPoint { x_m, y_m }
    }

    pub fn distance(&self, other: &GeoPoint) -> f64 {
        (self.x_m - other.x_m).hypot(self.y_m - other.y_m)
    }

    /// Point at fraction `t` of the way from `self` to `other`.
    pub fn lerp(&self, other: &GeoPoint, t: f64) -> GeoPoint {
        GeoPoint::new(
            self.x_m + (other.x_m - self.x_m) * t,
            self.y_m + (other.y_m - self.y_m) * t,
        )
    }

    /// Distance from `self` to the closed segment `a`-`b`.
    pub fn distance_to_segment(&self, a: &GeoPoint, b: &GeoPoint) -> f64 {
        let dx = b.x_m - a.x_m;
        let dy = b.y_m - a.y_m;
        let len2 = dx * dx + dy * dy;
        if len2 == 0.0 {
            return self.distance(a);
        }
        let t = (((self.x_m - a.x_m) * dx + (self.y_m - a.y_m) * dy) / len2).clamp(0.0, 1.0);
        self.distance(&a.lerp(b, t))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolygonError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon has non-finite coordinates")]
    NonFinite,
    #[error("polygon has zero area")]
    ZeroArea,
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
}

/// Axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl BoundingBox {
    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }
}

/// Simple polygon given by its ordered vertices. The closing edge is implicit.
///
/// Construction does not validate; call [`Polygon::validate`] or use
/// [`Polygon::try_new`] when the vertex list comes from outside.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon {
    pub vertices: Vec<GeoPoint>,
}

impl Polygon {
    pub fn new(vertices: Vec<GeoPoint>) -> Self {
        Polygon { vertices }
    }

    pub fn try_new(vertices: Vec<GeoPoint>) -> Result<Self, PolygonError> {
        let p = Polygon { vertices };
        p.validate()?;
        Ok(p)
    }

    /// Axis-aligned rectangle with its lower-left corner at `origin`.
    pub fn rectangle(origin: GeoPoint, width_m: f64, height_m: f64) -> Self {
        Polygon::new(vec![
            origin,
            GeoPoint::new(origin.x_m + width_m, origin.y_m),
            GeoPoint::new(origin.x_m + width_m, origin.y_m + height_m),
            GeoPoint::new(origin.x_m, origin.y_m + height_m),
        ])
    }

    pub fn validate(&self) -> Result<(), PolygonError> {
        let n = self.vertices.len();
        if n < 3 {
            return Err(PolygonError::TooFewVertices(n));
        }
        if self
            .vertices
            .iter()
            .any(|v| !v.x_m.is_finite() || !v.y_m.is_finite())
        {
            return Err(PolygonError::NonFinite);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                // adjacent edges share a vertex by construction
                if j == i + 1 || (i == 0 && j == n - 1) {
                    continue;
                }
                let (a, b) = self.edge(i);
                let (c, d) = self.edge(j);
                if segments_intersect(&a, &b, &c, &d) {
                    return Err(PolygonError::SelfIntersecting(i, j));
                }
            }
        }
        if self.area() <= f64::EPSILON {
            return Err(PolygonError::ZeroArea);
        }
        Ok(())
    }

    pub fn edge(&self, i: usize) -> (GeoPoint, GeoPoint) {
        let n = self.vertices.len();
        (self.vertices[i], self.vertices[(i + 1) % n])
    }

    pub fn edges(&self) -> impl Iterator<Item = (GeoPoint, GeoPoint)> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    fn signed_area(&self) -> f64 {
        0.5 * self
            .edges()
            .map(|(a, b)| a.x_m * b.y_m - b.x_m * a.y_m)
            .sum::<f64>()
    }

    pub fn area(&self) -> f64 {
        self.signed_area().abs()
    }

    pub fn perimeter_length(&self) -> f64 {
        self.edges().map(|(a, b)| a.distance(&b)).sum()
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let mut bb = BoundingBox {
            min_x: f64::INFINITY,
            min_y: f64::INFINITY,
            max_x: f64::NEG_INFINITY,
            max_y: f64::NEG_INFINITY,
        };
        for v in &self.vertices {
            bb.min_x = bb.min_x.min(v.x_m);
            bb.min_y = bb.min_y.min(v.y_m);
            bb.max_x = bb.max_x.max(v.x_m);
            bb.max_y = bb.max_y.max(v.y_m);
        }
        bb
    }

    pub fn centroid(&self) -> GeoPoint {
        let a = self.signed_area();
        let (mut cx, mut cy) = (0.0, 0.0);
        for (p, q) in self.edges() {
            let cross = p.x_m * q.y_m - q.x_m * p.y_m;
            cx += (p.x_m + q.x_m) * cross;
            cy += (p.y_m + q.y_m) * cross;
        }
        GeoPoint::new(cx / (6.0 * a), cy / (6.0 * a))
    }

    /// Even-odd point-in-polygon test. Boundary points may land either way.
    pub fn contains(&self, p: &GeoPoint) -> bool {
        let mut inside = false;
        for (a, b) in self.edges() {
            if (a.y_m > p.y_m) != (b.y_m > p.y_m) {
                let x = a.x_m + (p.y_m - a.y_m) * (b.x_m - a.x_m) / (b.y_m - a.y_m);
                if p.x_m < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Sorted, disjoint x-intervals where the horizontal line at `y` lies
    /// inside the polygon.
    pub fn scanline(&self, y: f64) -> Vec<(f64, f64)> {
        let mut xs: Vec<f64> = self
            .edges()
            .filter(|(a, b)| (a.y_m > y) != (b.y_m > y))
            .map(|(a, b)| a.x_m + (y - a.y_m) * (b.x_m - a.x_m) / (b.y_m - a.y_m))
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.chunks_exact(2)
            .map(|c| (c[0], c[1]))
            .filter(|(a, b)| b > a)
            .collect()
    }
}

fn orientation(a: &GeoPoint, b: &GeoPoint, c: &GeoPoint) -> f64 {
    (b.x_m - a.x_m) * (c.y_m - a.y_m) - (b.y_m - a.y_m) * (c.x_m - a.x_m)
}

fn on_segment(a: &GeoPoint, b: &GeoPoint, p: &GeoPoint) -> bool {
    p.x_m >= a.x_m.min(b.x_m)
        && p.x_m <= a.x_m.max(b.x_m)
        && p.y_m >= a.y_m.min(b.y_m)
        && p.y_m <= a.y_m.max(b.y_m)
}

/// True when closed segments `a`-`b` and `c`-`d` share at least one point.
pub fn segments_intersect(a: &GeoPoint, b: &GeoPoint, c: &GeoPoint, d: &GeoPoint) -> bool {
    let d1 = orientation(c, d, a);
    let d2 = orientation(c, d, b);
    let d3 = orientation(a, b, c);
    let d4 = orientation(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on_segment(c, d, a))
        || (d2 == 0.0 && on_segment(c, d, b))
        || (d3 == 0.0 && on_segment(a, b, c))
        || (d4 == 0.0 && on_segment(a, b, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::rectangle(GeoPoint::new(0.0, 0.0), 100.0, 100.0)
    }

    #[test]
    fn square_area_and_centroid() {
        let sq = square();
        assert!(sq.validate().is_ok());
        assert_eq!(sq.area(), 10_000.0);
        assert_eq!(sq.perimeter_length(), 400.0);
        let c = sq.centroid();
        assert!((c.x_m - 50.0).abs() < 1e-9 && (c.y_m - 50.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_degenerate_polygons() {
        let two = Polygon::new(vec![GeoPoint::new(0.0, 0.0), GeoPoint::new(1.0, 0.0)]);
        assert_eq!(two.validate(), Err(PolygonError::TooFewVertices(2)));
        let line = Polygon::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(1.0, 0.0),
            GeoPoint::new(2.0, 0.0),
        ]);
        assert_eq!(line.validate(), Err(PolygonError::ZeroArea));
        let bowtie = Polygon::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(10.0, 10.0),
            GeoPoint::new(10.0, 0.0),
            GeoPoint::new(0.0, 10.0),
        ]);
        assert!(matches!(
            bowtie.validate(),
            Err(PolygonError::SelfIntersecting(..))
        ));
    }

    #[test]
    fn contains_and_scanline() {
        let sq = square();
        assert!(sq.contains(&GeoPoint::new(50.0, 50.0)));
        assert!(!sq.contains(&GeoPoint::new(150.0, 50.0)));
        assert_eq!(sq.scanline(5.0), vec![(0.0, 100.0)]);
        assert!(sq.scanline(-1.0).is_empty());

        // U shape has two intervals across its arms
        let u = Polygon::new(vec![
            GeoPoint::new(0.0, 0.0),
            GeoPoint::new(30.0, 0.0),
            GeoPoint::new(30.0, 30.0),
            GeoPoint::new(20.0, 30.0),
            GeoPoint::new(20.0, 10.0),
            GeoPoint::new(10.0, 10.0),
            GeoPoint::new(10.0, 30.0),
            GeoPoint::new(0.0, 30.0),
        ]);
        assert!(u.validate().is_ok());
        assert_eq!(u.scanline(20.0), vec![(0.0, 10.0), (20.0, 30.0)]);
    }

    #[test]
    fn segment_distance() {
        let a = GeoPoint::new(0.0, 0.0);
        let b = GeoPoint::new(10.0, 0.0);
        assert_eq!(GeoPoint::new(5.0, 3.0).distance_to_segment(&a, &b), 3.0);
        assert_eq!(GeoPoint::new(13.0, 4.0).distance_to_segment(&a, &b), 5.0);
    }
}
