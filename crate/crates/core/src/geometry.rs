//! Orientation predicates and shape certificates.

use robust::Coord;

use crate::error::{Error, Result};
use crate::model::{Edge, Instance, Point};
use crate::scalar::Scalar;

/// Sign of the orientation of `(a, b, c)`: positive for a left turn.
///
/// Evaluated exactly on the `f64` images of the coordinates, which is exact
/// for both supported scalar types.
pub fn orientation<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>) -> i8 {
    let coord = |p: &Point<T>| Coord { x: p.x.as_f64(), y: p.y.as_f64() };
    let det = robust::orient2d(coord(a), coord(b), coord(c));
    if det > 0.0 {
        1
    } else if det < 0.0 {
        -1
    } else {
        0
    }
}

/// True iff the open segments `ab` and `cd` meet in exactly one point.
/// Touching at an endpoint or overlapping collinearly is not a crossing.
pub fn points_properly_cross<T: Scalar>(a: &Point<T>, b: &Point<T>, c: &Point<T>, d: &Point<T>) -> bool {
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    o1 * o2 < 0 && o3 * o4 < 0
}

/// Proper crossing test for two edges of the same instance.
pub fn segments_properly_cross<T: Scalar>(instance: &Instance<T>, e1: &Edge<T>, e2: &Edge<T>) -> Result<bool> {
    for id in [e1.u, e1.v] {
        if e2.touches(id) {
            return Err(Error::SharedEndpoint(id));
        }
    }
    let p = |id| instance.point(id);
    Ok(points_properly_cross(p(e1.u), p(e1.v), p(e2.u), p(e2.v)))
}

fn bbox_diagonal<T: Scalar>(instance: &Instance<T>) -> f64 {
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in instance.points() {
        let (x, y) = (p.x.as_f64(), p.y.as_f64());
        lo = (lo.0.min(x), lo.1.min(y));
        hi = (hi.0.max(x), hi.1.max(y));
    }
    (hi.0 - lo.0).hypot(hi.1 - lo.1)
}

/// A line through the instance, given as an anchor point and unit direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub origin: (f64, f64),
    pub direction: (f64, f64),
    /// Largest distance of a point from the line.
    pub residual: f64,
}

/// Fits a line through the point farthest from point 0 and the point farthest
/// from that one, and reports the largest deviation of any point.
///
/// Accepts when the residual is within [`Scalar::SHAPE_RTOL`] times the
/// bounding-box diagonal.
pub fn collinearity<T: Scalar>(instance: &Instance<T>) -> Result<LineFit> {
    collinearity_within(instance, T::SHAPE_RTOL)
}

/// [`collinearity`] with a caller-chosen relative tolerance.
pub fn collinearity_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<LineFit> {
    let pts = instance.points();
    let xy = |p: &Point<T>| (p.x.as_f64(), p.y.as_f64());
    let far_from = |o: (f64, f64)| {
        pts.iter()
            .map(xy)
            .max_by(|a, b| {
                let da = (a.0 - o.0).hypot(a.1 - o.1);
                let db = (b.0 - o.0).hypot(b.1 - o.1);
                da.total_cmp(&db)
            })
            .unwrap()
    };
    let a = far_from(xy(&pts[0]));
    let b = far_from(a);
    let len = (b.0 - a.0).hypot(b.1 - a.1);
    if len == 0.0 {
        return Ok(LineFit { origin: a, direction: (1.0, 0.0), residual: 0.0 });
    }
    let dir = ((b.0 - a.0) / len, (b.1 - a.1) / len);
    let residual = pts
        .iter()
        .map(|p| {
            let (x, y) = xy(p);
            ((x - a.0) * dir.1 - (y - a.1) * dir.0).abs()
        })
        .fold(0.0, f64::max);
    let tolerance = rtol * bbox_diagonal(instance);
    if residual > tolerance {
        return Err(Error::NotCollinear { residual, tolerance });
    }
    Ok(LineFit { origin: a, direction: dir, residual })
}

/// A circle through the instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircleFit {
    pub center: (f64, f64),
    pub radius: f64,
    /// Largest `| |p - center| - radius | / radius` over all points.
    pub residual: f64,
}

fn circumcircle(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<((f64, f64), f64)> {
    let (bx, by) = (b.0 - a.0, b.1 - a.1);
    let (cx, cy) = (c.0 - a.0, c.1 - a.1);
    let d = 2.0 * (bx * cy - by * cx);
    if d == 0.0 {
        return None;
    }
    let b2 = bx * bx + by * by;
    let c2 = cx * cx + cy * cy;
    let ux = (cy * b2 - by * c2) / d;
    let uy = (bx * c2 - cx * b2) / d;
    Some(((a.0 + ux, a.1 + uy), ux.hypot(uy)))
}

/// Fits the circumcircle of three mutually far points (a diameter-like pair
/// plus the point spanning the largest triangle with it) and checks every
/// point against it within [`Scalar::SHAPE_RTOL`] relative to the radius.
///
/// One or two points are trivially concyclic.
pub fn concyclicity<T: Scalar>(instance: &Instance<T>) -> Result<CircleFit> {
    concyclicity_within(instance, T::SHAPE_RTOL)
}

/// [`concyclicity`] with a caller-chosen relative tolerance.
pub fn concyclicity_within<T: Scalar>(instance: &Instance<T>, rtol: f64) -> Result<CircleFit> {
    let pts: Vec<(f64, f64)> = instance.points().iter().map(|p| (p.x.as_f64(), p.y.as_f64())).collect();
    let tolerance = rtol;
    match pts.len() {
        1 => return Ok(CircleFit { center: pts[0], radius: 0.0, residual: 0.0 }),
        2 => {
            let c = ((pts[0].0 + pts[1].0) / 2.0, (pts[0].1 + pts[1].1) / 2.0);
            let r = (pts[0].0 - c.0).hypot(pts[0].1 - c.1);
            return Ok(CircleFit { center: c, radius: r, residual: 0.0 });
        }
        _ => {}
    }
    let far = |o: (f64, f64)| {
        *pts.iter()
            .max_by(|a, b| (a.0 - o.0).hypot(a.1 - o.1).total_cmp(&(b.0 - o.0).hypot(b.1 - o.1)))
            .unwrap()
    };
    let a = far(pts[0]);
    let b = far(a);
    let area = |c: &(f64, f64)| ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).abs();
    let c = *pts.iter().max_by(|p, q| area(p).total_cmp(&area(q))).unwrap();
    let Some((center, radius)) = circumcircle(a, b, c) else {
        return Err(Error::NotConcyclic { residual: f64::INFINITY, tolerance });
    };
    let residual = pts
        .iter()
        .map(|p| ((p.0 - center.0).hypot(p.1 - center.1) - radius).abs() / radius)
        .fold(0.0, f64::max);
    if !(residual <= tolerance) {
        return Err(Error::NotConcyclic { residual, tolerance });
    }
    Ok(CircleFit { center, radius, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Color;

    fn seg(coords: [(f64, f64); 4]) -> bool {
        let p: Vec<Point<f64>> = coords
            .iter()
            .enumerate()
            .map(|(id, &(x, y))| Point { id, color: Color::Purple, x, y })
            .collect();
        points_properly_cross(&p[0], &p[1], &p[2], &p[3])
    }

    #[test]
    fn crossing_examples() {
        assert!(seg([(0.0, 0.0), (1.0, 1.0), (0.0, 1.0), (1.0, 0.0)]));
        assert!(!seg([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (3.0, 0.0)]));
        // (1,1) lies on the first segment: a touch, not a crossing
        assert!(!seg([(0.0, 0.0), (2.0, 2.0), (1.0, 1.0), (3.0, 0.0)]));
        // overlapping collinear segments
        assert!(!seg([(0.0, 0.0), (2.0, 0.0), (1.0, 0.0), (3.0, 0.0)]));
    }

    #[test]
    fn shared_endpoint_is_rejected() {
        let i = Instance::new([(Color::Purple, 0.0, 0.0), (Color::Purple, 1.0, 0.0), (Color::Purple, 0.0, 1.0)]).unwrap();
        let r = segments_properly_cross(&i, &i.edge(0, 1), &i.edge(1, 2));
        assert_eq!(r, Err(Error::SharedEndpoint(1)));
    }

    #[test]
    fn line_certificate() {
        let on_line = Instance::new((0..10).map(|i| {
            let t = i as f64 * 0.37;
            (Color::Red, 1.0 + t * 0.6, -2.0 + t * 0.8)
        }))
        .unwrap();
        assert!(collinearity(&on_line).is_ok());
        let off = Instance::new([(Color::Red, 0.0, 0.0), (Color::Red, 1.0, 0.0), (Color::Red, 0.5, 1e-3)]).unwrap();
        assert!(matches!(collinearity(&off), Err(Error::NotCollinear { .. })));
    }

    #[test]
    fn circle_certificate() {
        let on_circle = Instance::new((0..9).map(|i| {
            let a = i as f64 * 0.7;
            (Color::Blue, 3.0 + 2.0 * a.cos(), -1.0 + 2.0 * a.sin())
        }))
        .unwrap();
        let fit = concyclicity(&on_circle).unwrap();
        assert!((fit.radius - 2.0).abs() < 1e-12);
        assert!((fit.center.0 - 3.0).abs() < 1e-12 && (fit.center.1 + 1.0).abs() < 1e-12);

        let line = Instance::new((0..4).map(|i| (Color::Red, i as f64, 0.0))).unwrap();
        assert!(matches!(concyclicity(&line), Err(Error::NotConcyclic { .. })));
    }
}
