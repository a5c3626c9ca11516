//! Exact planar geometry for axis-parallel and rotated rectangles.
//!
//! Everything here is pure, immutable and allocation-light: rotation,
//! convex polygon clipping (Sutherland–Hodgman against half-planes),
//! areas by the shoelace formula, and the six segments / nine "tops" of
//! a rectangle's quarter subdivision.

use serde::{Deserialize, Serialize};

/// Points within this distance of a clip line count as on the line.
/// Keeps sliver polygons from appearing without affecting areas at the
/// tolerances used downstream (all >= 1e-8).
pub const CLIP_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Counterclockwise rotation by `theta` about the origin.
pub fn rotate(p: Point, theta: f64) -> Point {
    let (s, c) = theta.sin_cos();
    Point::new(p.x * c - p.y * s, p.x * s + p.y * c)
}

/// Axis-parallel rectangle `[x0, x0+w] x [y0, y0+h]` with `w, h > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub w: f64,
    pub h: f64,
}

impl Rect {
    /// Panics on degenerate side lengths; zero-area rectangles are never
    /// meaningful here.
    pub fn new(x0: f64, y0: f64, w: f64, h: f64) -> Self {
        assert!(w > 0.0 && h > 0.0, "rectangle sides must be positive");
        assert!(
            x0.is_finite() && y0.is_finite() && w.is_finite() && h.is_finite(),
            "rectangle coordinates must be finite"
        );
        Self { x0, y0, w, h }
    }

    pub fn x1(&self) -> f64 {
        self.x0 + self.w
    }

    pub fn y1(&self) -> f64 {
        self.y0 + self.h
    }

    pub fn area(&self) -> f64 {
        self.w * self.h
    }

    /// Height over width, as used to select cancellation regimes.
    pub fn eccentricity(&self) -> f64 {
        self.h / self.w
    }

    pub fn center(&self) -> Point {
        Point::new(self.x0 + 0.5 * self.w, self.y0 + 0.5 * self.h)
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x0, self.y0),
            Point::new(self.x1(), self.y0),
            Point::new(self.x1(), self.y1()),
            Point::new(self.x0, self.y1()),
        ]
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1() && p.y >= self.y0 && p.y <= self.y1()
    }

    /// Concentric dilation `lambda * R` (same center, sides scaled).
    pub fn dilate(&self, lambda: f64) -> Rect {
        let c = self.center();
        Rect::new(
            c.x - 0.5 * lambda * self.w,
            c.y - 0.5 * lambda * self.h,
            lambda * self.w,
            lambda * self.h,
        )
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.corners().to_vec())
    }

    /// The four quadrants cut by the vertical and horizontal midlines,
    /// in the order (left-bottom, right-bottom, left-top, right-top).
    pub fn quadrants(&self) -> [Rect; 4] {
        let hw = 0.5 * self.w;
        let hh = 0.5 * self.h;
        [
            Rect::new(self.x0, self.y0, hw, hh),
            Rect::new(self.x0 + hw, self.y0, hw, hh),
            Rect::new(self.x0, self.y0 + hh, hw, hh),
            Rect::new(self.x0 + hw, self.y0 + hh, hw, hh),
        ]
    }
}

/// Rectangle rotated by `theta` about the origin. Corners are the
/// rotation matrix applied to the base corners.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RotatedRect {
    pub base: Rect,
    pub theta: f64,
}

impl RotatedRect {
    pub fn new(base: Rect, theta: f64) -> Self {
        Self { base, theta }
    }

    pub fn area(&self) -> f64 {
        self.base.area()
    }

    pub fn corners(&self) -> [Point; 4] {
        self.base.corners().map(|p| rotate(p, self.theta))
    }

    pub fn to_polygon(&self) -> ConvexPolygon {
        ConvexPolygon::new(self.corners().to_vec())
    }

    /// Axis-parallel bounding box of the rotated rectangle.
    pub fn bbox(&self) -> Rect {
        let cs = self.corners();
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (cs[0].x, cs[0].x, cs[0].y, cs[0].y);
        for c in &cs[1..] {
            xmin = xmin.min(c.x);
            xmax = xmax.max(c.x);
            ymin = ymin.min(c.y);
            ymax = ymax.max(c.y);
        }
        Rect::new(xmin, ymin, (xmax - xmin).max(1e-300), (ymax - ymin).max(1e-300))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.base.contains(rotate(p, -self.theta))
    }
}

/// Closed half-plane `{ p : normal·p <= offset }`.
#[derive(Clone, Copy, Debug)]
pub struct HalfPlane {
    pub normal: Point,
    pub offset: f64,
}

impl HalfPlane {
    pub fn new(normal: Point, offset: f64) -> Self {
        Self { normal, offset }
    }

    /// Signed violation; negative values are inside.
    fn excess(&self, p: Point) -> f64 {
        self.normal.x * p.x + self.normal.y * p.y - self.offset
    }

    pub fn complement(&self) -> HalfPlane {
        HalfPlane::new(Point::new(-self.normal.x, -self.normal.y), -self.offset)
    }

    /// Half-plane on the given side of the line through `a`, `b`.
    /// `keep_left` keeps the side to the left of the direction a→b.
    pub fn of_line(a: Point, b: Point, keep_left: bool) -> HalfPlane {
        // left of a→b: normal points right of the direction
        let n = Point::new(b.y - a.y, -(b.x - a.x));
        let n = if keep_left { n } else { Point::new(-n.x, -n.y) };
        let off = n.x * a.x + n.y * a.y;
        HalfPlane::new(n, off)
    }
}

/// Convex polygon as a counterclockwise vertex list; may be empty.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    pub vertices: Vec<Point>,
}

impl ConvexPolygon {
    pub fn new(vertices: Vec<Point>) -> Self {
        Self { vertices }
    }

    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 3
    }

    /// Shoelace area; counterclockwise vertex order gives a nonnegative
    /// value, which all constructors here maintain.
    pub fn area(&self) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let n = self.vertices.len();
        let mut twice = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            twice += a.x * b.y - a.y * b.x;
        }
        0.5 * twice
    }
}

/// Sutherland–Hodgman clip of a convex polygon against one half-plane.
/// The result is convex and possibly empty; area never increases.
pub fn clip_convex(poly: &ConvexPolygon, hp: HalfPlane) -> ConvexPolygon {
    if poly.is_empty() {
        return ConvexPolygon::empty();
    }
    // scale tolerance to the half-plane normal so CLIP_EPS is a distance
    let nn = (hp.normal.x * hp.normal.x + hp.normal.y * hp.normal.y).sqrt();
    let eps = CLIP_EPS * nn.max(1e-300);
    let n = poly.vertices.len();
    let mut out = Vec::with_capacity(n + 2);
    for i in 0..n {
        let cur = poly.vertices[i];
        let nxt = poly.vertices[(i + 1) % n];
        let ec = hp.excess(cur);
        let en = hp.excess(nxt);
        let cur_in = ec <= eps;
        let nxt_in = en <= eps;
        if cur_in {
            out.push(cur);
        }
        if cur_in != nxt_in {
            let t = ec / (ec - en);
            if t.is_finite() && t > 0.0 && t < 1.0 {
                out.push(Point::new(cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)));
            }
        }
    }
    ConvexPolygon::new(out)
}

/// Clip a polygon against all four sides of an axis-parallel rectangle.
pub fn clip_to_rect(poly: &ConvexPolygon, r: &Rect) -> ConvexPolygon {
    let mut p = clip_convex(poly, HalfPlane::new(Point::new(-1.0, 0.0), -r.x0));
    p = clip_convex(&p, HalfPlane::new(Point::new(1.0, 0.0), r.x1()));
    p = clip_convex(&p, HalfPlane::new(Point::new(0.0, -1.0), -r.y0));
    clip_convex(&p, HalfPlane::new(Point::new(0.0, 1.0), r.y1()))
}

/// Area of the intersection of an axis-parallel rectangle with a rotated
/// rectangle, by clipping the rotated polygon to the box.
pub fn intersect_area(r: &Rect, q: &RotatedRect) -> f64 {
    clip_to_rect(&q.to_polygon(), r).area()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// Image of a vertical segment of the source rectangle.
    VerticalOfSource,
    /// Image of a horizontal segment of the source rectangle.
    HorizontalOfSource,
}

/// One of the six distinguished segments of a (rotated) rectangle:
/// the two vertical sides plus the vertical midline, and the two
/// horizontal sides plus the horizontal midline, each rotated.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
    pub kind: SegmentKind,
    /// 1 = midline, 2 = far side, 3 = near side (matching the labels
    /// l^v_1..3 / l^h_1..3 of the quarter subdivision).
    pub index: u8,
}

impl Segment {
    pub fn length(&self) -> f64 {
        ((self.b.x - self.a.x).powi(2) + (self.b.y - self.a.y).powi(2)).sqrt()
    }

    /// Axis-aligned bounding box; degenerate extents are widened to a
    /// tiny sliver so `Rect` stays valid.
    pub fn bbox(&self) -> Rect {
        let xmin = self.a.x.min(self.b.x);
        let xmax = self.a.x.max(self.b.x);
        let ymin = self.a.y.min(self.b.y);
        let ymax = self.a.y.max(self.b.y);
        Rect::new(xmin, ymin, (xmax - xmin).max(1e-300), (ymax - ymin).max(1e-300))
    }

    /// Closed segment vs closed rectangle intersection test.
    pub fn intersects_rect(&self, r: &Rect) -> bool {
        segment_intersects_rect(self.a, self.b, r)
    }
}

/// Closed segment against closed axis-parallel rectangle.
pub fn segment_intersects_rect(a: Point, b: Point, r: &Rect) -> bool {
    // Liang–Barsky style parametric clip of [a,b] to the slab product.
    let d = Point::new(b.x - a.x, b.y - a.y);
    let mut t0 = 0.0f64;
    let mut t1 = 1.0f64;
    let checks = [
        (-d.x, a.x - r.x0),
        (d.x, r.x1() - a.x),
        (-d.y, a.y - r.y0),
        (d.y, r.y1() - a.y),
    ];
    for (p, q) in checks {
        if p.abs() < 1e-300 {
            if q < 0.0 {
                return false;
            }
        } else {
            let t = q / p;
            if p < 0.0 {
                if t > t1 {
                    return false;
                }
                if t > t0 {
                    t0 = t;
                }
            } else {
                if t < t0 {
                    return false;
                }
                if t < t1 {
                    t1 = t;
                }
            }
        }
    }
    t0 <= t1
}

/// The six segments (rotated images of the two vertical sides + vertical
/// midline and the two horizontal sides + horizontal midline) and the
/// nine tops (rotated images of the 3x3 quarter-subdivision lattice).
pub fn segments_and_tops(q: &RotatedRect) -> ([Segment; 6], [Point; 9]) {
    let r = q.base;
    let xs = [r.x0 + 0.5 * r.w, r.x1(), r.x0]; // l^v_1, l^v_2, l^v_3
    let ys = [r.y0 + 0.5 * r.h, r.y1(), r.y0]; // l^h_1, l^h_2, l^h_3
    let rot = |p: Point| rotate(p, q.theta);

    let mut segs = [Segment {
        a: Point::new(0.0, 0.0),
        b: Point::new(0.0, 0.0),
        kind: SegmentKind::VerticalOfSource,
        index: 0,
    }; 6];
    for (i, &x) in xs.iter().enumerate() {
        segs[i] = Segment {
            a: rot(Point::new(x, r.y0)),
            b: rot(Point::new(x, r.y1())),
            kind: SegmentKind::VerticalOfSource,
            index: (i + 1) as u8,
        };
    }
    for (i, &y) in ys.iter().enumerate() {
        segs[3 + i] = Segment {
            a: rot(Point::new(r.x0, y)),
            b: rot(Point::new(r.x1(), y)),
            kind: SegmentKind::HorizontalOfSource,
            index: (i + 1) as u8,
        };
    }

    let lx = [r.x0, r.x0 + 0.5 * r.w, r.x1()];
    let ly = [r.y0, r.y0 + 0.5 * r.h, r.y1()];
    let mut tops = [Point::new(0.0, 0.0); 9];
    let mut k = 0;
    for &x in &lx {
        for &y in &ly {
            tops[k] = rot(Point::new(x, y));
            k += 1;
        }
    }
    (segs, tops)
}
