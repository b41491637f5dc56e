//! Planar geometry primitives: vectors, route polylines, polygons, and
//! oriented-rectangle overlap via the separating-axis test.

use serde::{Deserialize, Serialize};

/// 2D vector / point in metres.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, other: Vec2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(self, other: Vec2) -> Vec2 {
        Vec2::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Vec2) -> Vec2 {
        Vec2::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(self, k: f64) -> Vec2 {
        Vec2::new(self.x * k, self.y * k)
    }

    /// Rotate by `angle` radians counter-clockwise.
    pub fn rotate(self, angle: f64) -> Vec2 {
        let (s, c) = angle.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn distance(self, other: Vec2) -> f64 {
        self.sub(other).norm()
    }
}

/// A route as a piecewise-linear curve, parameterised by arc length from its
/// start. Vehicles move longitudinally along one of these; lateral motion
/// does not exist in this simulator.
#[derive(Debug, Clone)]
pub struct Polyline {
    points: Vec<Vec2>,
    /// Cumulative arc length at each point; `cum[0] == 0`.
    cum: Vec<f64>,
}

impl Polyline {
    pub fn new(points: Vec<Vec2>) -> Self {
        assert!(points.len() >= 2, "polyline needs at least two points");
        let mut cum = Vec::with_capacity(points.len());
        let mut acc = 0.0;
        cum.push(0.0);
        for w in points.windows(2) {
            acc += w[0].distance(w[1]);
            cum.push(acc);
        }
        Self { points, cum }
    }

    pub fn length(&self) -> f64 {
        *self.cum.last().unwrap()
    }

    /// Position at arc length `s`, clamped to the ends.
    pub fn position(&self, s: f64) -> Vec2 {
        let (i, t) = self.locate(s);
        let a = self.points[i];
        let b = self.points[i + 1];
        a.add(b.sub(a).scale(t))
    }

    /// Unit tangent at arc length `s` (constant within a segment).
    pub fn tangent(&self, s: f64) -> Vec2 {
        let (i, _) = self.locate(s);
        let d = self.points[i + 1].sub(self.points[i]);
        let len = d.norm();
        d.scale(1.0 / len)
    }

    /// Heading angle (radians) of the tangent at arc length `s`.
    pub fn heading(&self, s: f64) -> f64 {
        let t = self.tangent(s);
        t.y.atan2(t.x)
    }

    /// Arc length of the point on this polyline closest to `p`, together
    /// with the distance to it.
    pub fn project(&self, p: Vec2) -> (f64, f64) {
        let mut best_s = 0.0;
        let mut best_d = f64::INFINITY;
        for (i, w) in self.points.windows(2).enumerate() {
            let ab = w[1].sub(w[0]);
            let seg_len2 = ab.dot(ab);
            let t = if seg_len2 > 0.0 {
                (p.sub(w[0]).dot(ab) / seg_len2).clamp(0.0, 1.0)
            } else {
                0.0
            };
            let q = w[0].add(ab.scale(t));
            let d = p.distance(q);
            if d < best_d {
                best_d = d;
                best_s = self.cum[i] + t * seg_len2.sqrt();
            }
        }
        (best_s, best_d)
    }

    fn locate(&self, s: f64) -> (usize, f64) {
        let s = s.clamp(0.0, self.length());
        // Binary search over cumulative lengths.
        let mut i = match self
            .cum
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => i,
            Err(i) => i.saturating_sub(1),
        };
        if i >= self.points.len() - 1 {
            i = self.points.len() - 2;
        }
        let seg = self.cum[i + 1] - self.cum[i];
        let t = if seg > 0.0 { (s - self.cum[i]) / seg } else { 0.0 };
        (i, t)
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }
}

/// Convex polygon, counter-clockwise winding.
#[derive(Debug, Clone)]
pub struct Polygon {
    vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Self {
        assert!(vertices.len() >= 3, "polygon needs at least three vertices");
        Self { vertices }
    }

    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self::new(vec![
            Vec2::new(x0, y0),
            Vec2::new(x1, y0),
            Vec2::new(x1, y1),
            Vec2::new(x0, y1),
        ])
    }

    /// Point containment for a convex CCW polygon; boundary counts as inside.
    pub fn contains(&self, p: Vec2) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let edge = b.sub(a);
            let rel = p.sub(a);
            if edge.x * rel.y - edge.y * rel.x < 0.0 {
                return false;
            }
        }
        true
    }

    pub fn vertices(&self) -> &[Vec2] {
        &self.vertices
    }
}

/// Oriented rectangle footprint: centre, heading, and full extents.
#[derive(Debug, Clone, Copy)]
pub struct Obb {
    pub center: Vec2,
    pub heading: f64,
    pub length: f64,
    pub width: f64,
}

impl Obb {
    pub fn corners(&self) -> [Vec2; 4] {
        let hl = 0.5 * self.length;
        let hw = 0.5 * self.width;
        let local = [
            Vec2::new(hl, hw),
            Vec2::new(-hl, hw),
            Vec2::new(-hl, -hw),
            Vec2::new(hl, -hw),
        ];
        let mut out = [Vec2::new(0.0, 0.0); 4];
        for (o, l) in out.iter_mut().zip(local.iter()) {
            *o = self.center.add(l.rotate(self.heading));
        }
        out
    }

    fn axes(&self) -> [Vec2; 2] {
        let (s, c) = self.heading.sin_cos();
        [Vec2::new(c, s), Vec2::new(-s, c)]
    }
}

/// Separating-axis overlap test for two oriented rectangles. Touching
/// boundaries count as overlap.
pub fn obb_overlap(a: &Obb, b: &Obb) -> bool {
    let ca = a.corners();
    let cb = b.corners();
    for axis in a.axes().iter().chain(b.axes().iter()) {
        let (min_a, max_a) = project(&ca, *axis);
        let (min_b, max_b) = project(&cb, *axis);
        if max_a < min_b || max_b < min_a {
            return false;
        }
    }
    true
}

fn project(corners: &[Vec2; 4], axis: Vec2) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for c in corners {
        let p = c.dot(axis);
        lo = lo.min(p);
        hi = hi.max(p);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn polyline_arc_length_and_position() {
        let pl = Polyline::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(10.0, 0.0),
            Vec2::new(10.0, 10.0),
        ]);
        assert_eq!(pl.length(), 20.0);
        let p = pl.position(5.0);
        assert!((p.x - 5.0).abs() < 1e-12 && p.y.abs() < 1e-12);
        let p = pl.position(15.0);
        assert!((p.x - 10.0).abs() < 1e-12 && (p.y - 5.0).abs() < 1e-12);
        // Clamped at the far end.
        let p = pl.position(25.0);
        assert!((p.x - 10.0).abs() < 1e-12 && (p.y - 10.0).abs() < 1e-12);
    }

    #[test]
    fn polyline_heading_follows_tangent() {
        let pl = Polyline::new(vec![
            Vec2::new(0.0, 0.0),
            Vec2::new(10.0, 0.0),
            Vec2::new(10.0, 10.0),
        ]);
        assert!((pl.heading(3.0) - 0.0).abs() < 1e-12);
        assert!((pl.heading(14.0) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn polyline_projection() {
        let pl = Polyline::new(vec![Vec2::new(0.0, 0.0), Vec2::new(10.0, 0.0)]);
        let (s, d) = pl.project(Vec2::new(4.0, 3.0));
        assert!((s - 4.0).abs() < 1e-12);
        assert!((d - 3.0).abs() < 1e-12);
    }

    #[test]
    fn polygon_contains_boundary_and_outside() {
        let poly = Polygon::rect(-4.0, -4.0, 4.0, 4.0);
        assert!(poly.contains(Vec2::new(0.0, 0.0)));
        assert!(poly.contains(Vec2::new(4.0, 4.0)));
        assert!(!poly.contains(Vec2::new(4.1, 0.0)));
    }

    #[test]
    fn far_rectangles_disjoint() {
        let a = Obb {
            center: Vec2::new(0.0, 0.0),
            heading: 0.3,
            length: 5.0,
            width: 2.0,
        };
        let b = Obb {
            center: Vec2::new(50.0, 0.0),
            heading: 1.1,
            length: 5.0,
            width: 2.0,
        };
        assert!(!obb_overlap(&a, &b));
    }

    #[test]
    fn identical_rectangles_overlap() {
        let a = Obb {
            center: Vec2::new(1.0, 2.0),
            heading: 0.7,
            length: 5.0,
            width: 2.0,
        };
        assert!(obb_overlap(&a, &a));
    }

    #[test]
    fn overlap_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = random_obb(&mut rng);
            let b = random_obb(&mut rng);
            assert_eq!(obb_overlap(&a, &b), obb_overlap(&b, &a));
        }
    }

    fn random_obb(rng: &mut ChaCha8Rng) -> Obb {
        Obb {
            center: Vec2::new(rng.gen_range(-8.0..8.0), rng.gen_range(-8.0..8.0)),
            heading: rng.gen_range(-3.2..3.2),
            length: 5.0,
            width: 2.0,
        }
    }

    /// Dense point-sampling oracle: sample a grid inside one rectangle and
    /// ask whether any sampled point lies inside the other. Near-tangent
    /// configurations are skipped (the oracle's grid cannot resolve them).
    fn sampling_overlap(a: &Obb, b: &Obb) -> Option<bool> {
        let inside = |o: &Obb, p: Vec2| {
            let rel = p.sub(o.center).rotate(-o.heading);
            rel.x.abs() <= 0.5 * o.length && rel.y.abs() <= 0.5 * o.width
        };
        let grid = 60;
        let mut hit = false;
        for (p, q) in [(a, b), (b, a)] {
            for i in 0..=grid {
                for j in 0..=grid {
                    let lx = (i as f64 / grid as f64 - 0.5) * p.length;
                    let ly = (j as f64 / grid as f64 - 0.5) * p.width;
                    let pt = p.center.add(Vec2::new(lx, ly).rotate(p.heading));
                    if inside(q, pt) {
                        hit = true;
                    }
                }
            }
        }
        if hit {
            return Some(true);
        }
        // Verify separation with a margin: shrink both and expand both by the
        // grid pitch; if the expanded test also misses, disjoint is certain
        // enough for the oracle.
        let pitch = (a.length.max(a.width)) / grid as f64;
        let grow = |o: &Obb| Obb {
            length: o.length + 2.0 * pitch,
            width: o.width + 2.0 * pitch,
            ..*o
        };
        let (ga, gb) = (grow(a), grow(b));
        let mut grown_hit = false;
        for i in 0..=grid {
            for j in 0..=grid {
                let lx = (i as f64 / grid as f64 - 0.5) * ga.length;
                let ly = (j as f64 / grid as f64 - 0.5) * ga.width;
                let pt = ga.center.add(Vec2::new(lx, ly).rotate(ga.heading));
                if inside(&gb, pt) {
                    grown_hit = true;
                }
            }
        }
        if grown_hit {
            None // tangent zone; skip
        } else {
            Some(false)
        }
    }

    #[test]
    fn sat_agrees_with_sampling_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut checked = 0usize;
        let mut i = 0usize;
        while checked < 10_000 && i < 40_000 {
            i += 1;
            let a = random_obb(&mut rng);
            let b = random_obb(&mut rng);
            if let Some(expected) = sampling_overlap(&a, &b) {
                assert_eq!(
                    obb_overlap(&a, &b),
                    expected,
                    "disagreement at a={a:?} b={b:?}"
                );
                checked += 1;
            }
        }
        assert!(checked >= 10_000, "oracle skipped too many cases");
    }
}
