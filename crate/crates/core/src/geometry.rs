//! Coordinate handling: points, bounding boxes, unit rescaling and
//! pairwise distances.
//!
//! All coordinates use a top-left origin (x grows rightward, y grows
//! downward), matching the SVG convention, and are expressed in
//! floorplan units. The canonical internal unit is inches; metric
//! inputs are converted at ingestion.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("coordinates must be finite, got ({0}, {1})")]
    NonFinite(f64, f64),
    #[error("bounding box min must not exceed max: ({0}, {1}) vs ({2}, {3})")]
    InvertedBox(f64, f64, f64, f64),
    #[error("scale factors must be positive, got ({0}, {1})")]
    InvalidTransform(f64, f64),
}

/// A 2D point in floorplan units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if !x.is_finite() || !y.is_finite() {
            return Err(GeometryError::NonFinite(x, y));
        }
        Ok(Self { x, y })
    }

    /// Euclidean distance to another point. Symmetric and non-negative.
    pub fn distance(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx.hypot(dy)
    }
}

/// An axis-aligned bounding box with `min.x <= max.x` and
/// `min.y <= max.y`. Zero-area boxes are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub min: Point,
    pub max: Point,
}

impl BoundingBox {
    pub fn new(min: Point, max: Point) -> Result<Self, GeometryError> {
        if min.x > max.x || min.y > max.y {
            return Err(GeometryError::InvertedBox(min.x, min.y, max.x, max.y));
        }
        Ok(Self { min, max })
    }

    /// Builds a box from two arbitrary corners, normalizing their order.
    pub fn from_corners(a: Point, b: Point) -> Self {
        Self {
            min: Point {
                x: a.x.min(b.x),
                y: a.y.min(b.y),
            },
            max: Point {
                x: a.x.max(b.x),
                y: a.y.max(b.y),
            },
        }
    }

    /// Smallest box enclosing all `points`. Returns `None` on empty input.
    pub fn enclosing(points: &[Point]) -> Option<Self> {
        let first = points.first()?;
        let mut bbox = Self {
            min: *first,
            max: *first,
        };
        for p in &points[1..] {
            bbox.min.x = bbox.min.x.min(p.x);
            bbox.min.y = bbox.min.y.min(p.y);
            bbox.max.x = bbox.max.x.max(p.x);
            bbox.max.y = bbox.max.y.max(p.y);
        }
        Some(bbox)
    }

    /// Midpoint of the box on each axis.
    pub fn centroid(&self) -> Point {
        Point {
            x: (self.min.x + self.max.x) / 2.0,
            y: (self.min.y + self.max.y) / 2.0,
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn area(&self) -> f64 {
        self.width() * self.height()
    }

    /// Intersection-over-union of two boxes. Zero when disjoint.
    pub fn iou(&self, other: &BoundingBox) -> f64 {
        let ix = (self.max.x.min(other.max.x) - self.min.x.max(other.min.x)).max(0.0);
        let iy = (self.max.y.min(other.max.y) - self.min.y.max(other.min.y)).max(0.0);
        let inter = ix * iy;
        let union = self.area() + other.area() - inter;
        if union <= 0.0 {
            0.0
        } else {
            inter / union
        }
    }
}

/// Per-axis linear rescaling, in units-per-pixel. Factors are strictly
/// positive by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaleTransform {
    sx: f64,
    sy: f64,
}

impl ScaleTransform {
    pub fn new(sx: f64, sy: f64) -> Result<Self, GeometryError> {
        if !(sx > 0.0 && sy > 0.0) || !sx.is_finite() || !sy.is_finite() {
            return Err(GeometryError::InvalidTransform(sx, sy));
        }
        Ok(Self { sx, sy })
    }

    pub fn identity() -> Self {
        Self { sx: 1.0, sy: 1.0 }
    }

    pub fn uniform(s: f64) -> Result<Self, GeometryError> {
        Self::new(s, s)
    }

    pub fn sx(&self) -> f64 {
        self.sx
    }

    pub fn sy(&self) -> f64 {
        self.sy
    }

    pub fn apply(&self, p: Point) -> Point {
        Point {
            x: p.x * self.sx,
            y: p.y * self.sy,
        }
    }

    pub fn apply_box(&self, b: BoundingBox) -> BoundingBox {
        BoundingBox {
            min: self.apply(b.min),
            max: self.apply(b.max),
        }
    }
}

/// Number of centimeters per inch, used at unit-conversion boundaries.
pub const CM_PER_INCH: f64 = 2.54;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: f64, y: f64) -> Point {
        Point::new(x, y).unwrap()
    }

    #[test]
    fn centroid_of_box() {
        let b = BoundingBox::from_corners(pt(0.0, 0.0), pt(60.0, 60.0));
        assert_eq!(b.centroid(), pt(30.0, 30.0));

        let b = BoundingBox::from_corners(pt(10.0, 20.0), pt(70.0, 50.0));
        assert_eq!(b.centroid(), pt(40.0, 35.0));
    }

    #[test]
    fn centroid_of_zero_area_box() {
        let b = BoundingBox::from_corners(pt(5.0, 5.0), pt(5.0, 5.0));
        assert_eq!(b.centroid(), pt(5.0, 5.0));
        assert_eq!(b.area(), 0.0);
    }

    #[test]
    fn rescale_identity_uniform_anisotropic() {
        let id = ScaleTransform::identity();
        assert_eq!(id.apply(pt(100.0, 200.0)), pt(100.0, 200.0));

        let half = ScaleTransform::uniform(0.5).unwrap();
        assert_eq!(half.apply(pt(100.0, 200.0)), pt(50.0, 100.0));

        let aniso = ScaleTransform::new(2.0, 0.5).unwrap();
        assert_eq!(aniso.apply(pt(10.0, 10.0)), pt(20.0, 5.0));
    }

    #[test]
    fn rescale_rejects_non_positive_factors() {
        assert!(matches!(
            ScaleTransform::new(0.0, 1.0),
            Err(GeometryError::InvalidTransform(_, _))
        ));
        assert!(matches!(
            ScaleTransform::new(1.0, -2.0),
            Err(GeometryError::InvalidTransform(_, _))
        ));
        assert!(ScaleTransform::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn distance_basics() {
        assert_eq!(pt(0.0, 0.0).distance(&pt(0.0, 0.0)), 0.0);
        assert_eq!(pt(0.0, 0.0).distance(&pt(3.0, 4.0)), 5.0);
        // Diagonal pitch used throughout the grid fixtures: 60 * sqrt(2).
        let diag = pt(0.0, 0.0).distance(&pt(60.0, 60.0));
        assert!((diag - 60.0 * 2.0_f64.sqrt()).abs() < 1e-12);
        assert!((diag - 84.8528137423857).abs() < 1e-10);
    }

    #[test]
    fn point_rejects_non_finite() {
        assert!(Point::new(f64::NAN, 0.0).is_err());
        assert!(Point::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn inverted_box_rejected() {
        assert!(BoundingBox::new(pt(1.0, 0.0), pt(0.0, 0.0)).is_err());
    }

    proptest! {
        #[test]
        fn distance_is_symmetric(ax in -1e4..1e4f64, ay in -1e4..1e4f64,
                                 bx in -1e4..1e4f64, by in -1e4..1e4f64) {
            let a = pt(ax, ay);
            let b = pt(bx, by);
            prop_assert_eq!(a.distance(&b), b.distance(&a));
        }

        #[test]
        fn distance_triangle_inequality(ax in -1e4..1e4f64, ay in -1e4..1e4f64,
                                        bx in -1e4..1e4f64, by in -1e4..1e4f64,
                                        cx in -1e4..1e4f64, cy in -1e4..1e4f64) {
            let (a, b, c) = (pt(ax, ay), pt(bx, by), pt(cx, cy));
            prop_assert!(a.distance(&c) <= a.distance(&b) + b.distance(&c) + 1e-9);
        }

        #[test]
        fn uniform_rescale_scales_distances(ax in -1e3..1e3f64, ay in -1e3..1e3f64,
                                            bx in -1e3..1e3f64, by in -1e3..1e3f64,
                                            s in 0.01..100.0f64) {
            let a = pt(ax, ay);
            let b = pt(bx, by);
            let t = ScaleTransform::uniform(s).unwrap();
            let before = a.distance(&b);
            let after = t.apply(a).distance(&t.apply(b));
            prop_assert!((after - s * before).abs() <= 1e-9 * (1.0 + after.abs()));
        }

        #[test]
        fn centroid_invariant_under_corner_order(ax in -1e3..1e3f64, ay in -1e3..1e3f64,
                                                 bx in -1e3..1e3f64, by in -1e3..1e3f64) {
            let c1 = BoundingBox::from_corners(pt(ax, ay), pt(bx, by)).centroid();
            let c2 = BoundingBox::from_corners(pt(bx, by), pt(ax, ay)).centroid();
            prop_assert_eq!(c1, c2);
        }
    }
}
