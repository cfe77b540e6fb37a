//! Planar vector helpers and the disk-clipping routines used by the flux integrals.

use std::f64::consts::PI;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// A point or displacement in the cross-sectional plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, rhs: Self) -> f64 {
        self.x * rhs.x + self.y * rhs.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, rhs: Self) -> f64 {
        self.x * rhs.y - self.y * rhs.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, rhs: Self) -> f64 {
        (rhs - self).norm()
    }

    /// Counterclockwise quarter turn, i.e. `ẑ × self`.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// `(1 - s) a + s b`, exact at both ends.
pub fn lerp(a: Vec2, b: Vec2, s: f64) -> Vec2 {
    a * (1.0 - s) + b * s
}

impl From<[f64; 2]> for Vec2 {
    fn from(v: [f64; 2]) -> Self {
        Self::new(v[0], v[1])
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, rhs: Vec2) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// Signed angle swept by the ray from `center` while moving from `p` to `q`
/// along the straight segment. Lies in (-π, π].
pub fn subtended_angle(center: Vec2, p: Vec2, q: Vec2) -> f64 {
    let u = p - center;
    let v = q - center;
    u.cross(v).atan2(u.dot(v))
}

/// Distance from `p` to the closed segment `a`-`b`.
pub fn point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sq();
    if len_sq == 0.0 {
        return p.distance(a);
    }
    let u = ((p - a).dot(ab) / len_sq).clamp(0.0, 1.0);
    p.distance(a + ab * u)
}

/// Parameters `u ∈ (0, 1)` where the segment `p + u (q - p)` crosses the
/// circle of radius `r` about the origin, in increasing order.
pub(crate) fn segment_circle_params(p: Vec2, q: Vec2, r: f64) -> ([f64; 2], usize) {
    let d = q - p;
    let a = d.norm_sq();
    let mut out = [0.0; 2];
    if a == 0.0 {
        return (out, 0);
    }
    let b = p.dot(d);
    let c = p.norm_sq() - r * r;
    let disc = b * b - a * c;
    if disc <= 0.0 {
        return (out, 0);
    }
    let sq = disc.sqrt();
    // numerically stable pair of roots
    let t = if b >= 0.0 { -(b + sq) } else { -b + sq };
    let (mut u1, mut u2) = (t / a, c / t);
    if !u1.is_finite() {
        u1 = f64::NAN;
    }
    if !u2.is_finite() {
        u2 = f64::NAN;
    }
    if u1 > u2 {
        std::mem::swap(&mut u1, &mut u2);
    }
    let mut n = 0;
    for u in [u1, u2] {
        if u > 0.0 && u < 1.0 {
            out[n] = u;
            n += 1;
        }
    }
    (out, n)
}

/// Signed area of `triangle(origin, p, q) ∩ disk(origin, r)`.
fn triangle_disk_area(p: Vec2, q: Vec2, r: f64) -> f64 {
    let (params, n) = segment_circle_params(p, q, r);
    let mut pts = [p; 4];
    let mut len = 1;
    for &u in &params[..n] {
        pts[len] = lerp(p, q, u);
        len += 1;
    }
    pts[len] = q;
    len += 1;

    let r_sq = r * r;
    let mut area = 0.0;
    for w in pts[..len].windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = lerp(a, b, 0.5);
        if mid.norm_sq() <= r_sq {
            area += 0.5 * a.cross(b);
        } else {
            area += 0.5 * r_sq * a.cross(b).atan2(a.dot(b));
        }
    }
    area
}

/// Signed area of the intersection of a closed polygon with a disk.
///
/// Counterclockwise polygons give positive area. Self-intersecting polygons
/// are handled in the winding-number sense: each region counts with its
/// winding number.
pub fn polygon_disk_signed_area(polygon: &[Vec2], center: Vec2, radius: f64) -> f64 {
    let n = polygon.len();
    if n < 3 {
        return 0.0;
    }
    let mut area = 0.0;
    for i in 0..n {
        let p = polygon[i] - center;
        let q = polygon[(i + 1) % n] - center;
        area += triangle_disk_area(p, q, radius);
    }
    area
}

/// Shoelace signed area.
pub fn polygon_signed_area(polygon: &[Vec2]) -> f64 {
    let n = polygon.len();
    (0..n)
        .map(|i| polygon[i].cross(polygon[(i + 1) % n]))
        .sum::<f64>()
        * 0.5
}

/// Axis-aligned bounding box test against a disk.
pub(crate) fn bbox_misses_disk(points: &[Vec2], center: Vec2, radius: f64) -> bool {
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in points {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    lo.x > center.x + radius
        || hi.x < center.x - radius
        || lo.y > center.y + radius
        || hi.y < center.y - radius
}

/// Wraps an angle into (-π, π].
pub fn wrap_angle(a: f64) -> f64 {
    let w = a.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}
