//! Planar domains and the boundary data consumed by the torsion solver and the
//! bound calculators.
//!
//! Discs and annuli are centered at the origin; rectangles are centered at the
//! origin with axis-aligned sides. Polygons are stored counterclockwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("disc radius must be positive and finite, got {0}")]
    InvalidRadius(f64),
    #[error("annulus radii must satisfy 0 < inner < outer, got inner={inner}, outer={outer}")]
    InvalidAnnulus { inner: f64, outer: f64 },
    #[error("rectangle sides must be positive and finite, got {width} x {height}")]
    InvalidRectangle { width: f64, height: f64 },
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon vertex {0} is not finite")]
    NonFiniteVertex(usize),
    #[error("polygon edges {0} and {1} intersect")]
    SelfIntersecting(usize, usize),
    #[error("polygon has zero area")]
    Degenerate,
    #[error("scale factor must be positive and finite, got {0}")]
    InvalidScale(f64),
}

/// Point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }

    fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    fn cross(self, o: Self) -> T {
        self.x * o.y - self.y * o.x
    }

    fn dist(self, o: Self) -> T {
        self.sub(o).norm()
    }
}

/// Axis-aligned bounding box `[min, max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundingBox<T> {
    pub min: Point<T>,
    pub max: Point<T>,
}

impl<T: Scalar> BoundingBox<T> {
    pub fn center(&self) -> Point<T> {
        let half = T::lit(0.5);
        Point::new((self.min.x + self.max.x) * half, (self.min.y + self.max.y) * half)
    }

    pub fn width(&self) -> T {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> T {
        self.max.y - self.min.y
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shape<T> {
    Disc { radius: T },
    Annulus { inner: T, outer: T },
    Rectangle { width: T, height: T },
    Polygon { vertices: Vec<Point<T>> },
}

/// Bounded open region of the plane. Construct through the validating
/// constructors; the shape is immutable afterwards.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarDomain<T> {
    shape: Shape<T>,
}

impl<T: Scalar> PlanarDomain<T> {
    pub fn disc(radius: T) -> Result<Self, GeometryError> {
        if !(radius.is_finite() && radius > T::zero()) {
            return Err(GeometryError::InvalidRadius(radius.to_f64_lossy()));
        }
        Ok(Self { shape: Shape::Disc { radius } })
    }

    pub fn annulus(inner: T, outer: T) -> Result<Self, GeometryError> {
        if !(inner.is_finite() && outer.is_finite() && inner > T::zero() && outer > inner) {
            return Err(GeometryError::InvalidAnnulus {
                inner: inner.to_f64_lossy(),
                outer: outer.to_f64_lossy(),
            });
        }
        Ok(Self { shape: Shape::Annulus { inner, outer } })
    }

    /// Axis-aligned rectangle centered at the origin.
    pub fn rectangle(width: T, height: T) -> Result<Self, GeometryError> {
        if !(width.is_finite() && height.is_finite() && width > T::zero() && height > T::zero()) {
            return Err(GeometryError::InvalidRectangle {
                width: width.to_f64_lossy(),
                height: height.to_f64_lossy(),
            });
        }
        Ok(Self { shape: Shape::Rectangle { width, height } })
    }

    /// Simple polygon. Clockwise input is reversed to counterclockwise.
    pub fn polygon(mut vertices: Vec<Point<T>>) -> Result<Self, GeometryError> {
        let n = vertices.len();
        if n < 3 {
            return Err(GeometryError::TooFewVertices(n));
        }
        if let Some(i) = vertices.iter().position(|p| !(p.x.is_finite() && p.y.is_finite())) {
            return Err(GeometryError::NonFiniteVertex(i));
        }
        check_simple(&vertices)?;
        let signed = shoelace(&vertices);
        if signed == T::zero() {
            return Err(GeometryError::Degenerate);
        }
        if signed < T::zero() {
            vertices.reverse();
        }
        Ok(Self { shape: Shape::Polygon { vertices } })
    }

    pub fn shape(&self) -> &Shape<T> {
        &self.shape
    }

    /// Short tag used in reports: `disc`, `annulus`, `rectangle`, `polygon`.
    pub fn kind(&self) -> &'static str {
        match self.shape {
            Shape::Disc { .. } => "disc",
            Shape::Annulus { .. } => "annulus",
            Shape::Rectangle { .. } => "rectangle",
            Shape::Polygon { .. } => "polygon",
        }
    }

    pub fn is_simply_connected(&self) -> bool {
        !matches!(self.shape, Shape::Annulus { .. })
    }

    /// True iff `p` lies strictly inside the domain.
    pub fn contains(&self, p: Point<T>) -> bool {
        match &self.shape {
            Shape::Disc { radius } => p.x * p.x + p.y * p.y < *radius * *radius,
            Shape::Annulus { inner, outer } => {
                let r2 = p.x * p.x + p.y * p.y;
                r2 > *inner * *inner && r2 < *outer * *outer
            }
            Shape::Rectangle { width, height } => {
                let half = T::lit(0.5);
                p.x.abs() < *width * half && p.y.abs() < *height * half
            }
            Shape::Polygon { vertices } => {
                crossing_inside(vertices, p) && boundary_distance(vertices, p) > T::zero()
            }
        }
    }

    /// Signed Euclidean distance to the boundary: negative inside, positive
    /// outside, zero on the boundary.
    pub fn signed_distance(&self, p: Point<T>) -> T {
        match &self.shape {
            Shape::Disc { radius } => p.norm() - *radius,
            Shape::Annulus { inner, outer } => {
                let d = p.norm();
                (*inner - d).max(d - *outer)
            }
            Shape::Rectangle { width, height } => {
                let half = T::lit(0.5);
                let qx = p.x.abs() - *width * half;
                let qy = p.y.abs() - *height * half;
                let outside = qx.max(T::zero()).hypot(qy.max(T::zero()));
                let inside = qx.max(qy).min(T::zero());
                outside + inside
            }
            Shape::Polygon { vertices } => {
                let d = boundary_distance(vertices, p);
                if d == T::zero() {
                    T::zero()
                } else if crossing_inside(vertices, p) {
                    -d
                } else {
                    d
                }
            }
        }
    }

    pub fn area(&self) -> T {
        match &self.shape {
            Shape::Disc { radius } => T::PI() * *radius * *radius,
            Shape::Annulus { inner, outer } => T::PI() * (*outer * *outer - *inner * *inner),
            Shape::Rectangle { width, height } => *width * *height,
            Shape::Polygon { vertices } => shoelace(vertices).abs(),
        }
    }

    pub fn bounding_box(&self) -> BoundingBox<T> {
        let half = T::lit(0.5);
        let sym = |hx: T, hy: T| BoundingBox { min: Point::new(-hx, -hy), max: Point::new(hx, hy) };
        match &self.shape {
            Shape::Disc { radius } => sym(*radius, *radius),
            Shape::Annulus { outer, .. } => sym(*outer, *outer),
            Shape::Rectangle { width, height } => sym(*width * half, *height * half),
            Shape::Polygon { vertices } => {
                let mut bb = BoundingBox { min: vertices[0], max: vertices[0] };
                for v in vertices {
                    bb.min.x = bb.min.x.min(v.x);
                    bb.min.y = bb.min.y.min(v.y);
                    bb.max.x = bb.max.x.max(v.x);
                    bb.max.y = bb.max.y.max(v.y);
                }
                bb
            }
        }
    }

    /// Largest distance between two points of the closure.
    pub fn diameter(&self) -> T {
        match &self.shape {
            Shape::Disc { radius } => T::lit(2.0) * *radius,
            Shape::Annulus { outer, .. } => T::lit(2.0) * *outer,
            Shape::Rectangle { width, height } => width.hypot(*height),
            Shape::Polygon { vertices } => {
                let mut best = T::zero();
                for (i, a) in vertices.iter().enumerate() {
                    for b in &vertices[i + 1..] {
                        best = best.max(a.dist(*b));
                    }
                }
                best
            }
        }
    }

    /// The dilated domain `λ·Ω`.
    pub fn scaled(&self, lambda: T) -> Result<Self, GeometryError> {
        if !(lambda.is_finite() && lambda > T::zero()) {
            return Err(GeometryError::InvalidScale(lambda.to_f64_lossy()));
        }
        match &self.shape {
            Shape::Disc { radius } => Self::disc(*radius * lambda),
            Shape::Annulus { inner, outer } => Self::annulus(*inner * lambda, *outer * lambda),
            Shape::Rectangle { width, height } => Self::rectangle(*width * lambda, *height * lambda),
            Shape::Polygon { vertices } => Self::polygon(
                vertices.iter().map(|v| Point::new(v.x * lambda, v.y * lambda)).collect(),
            ),
        }
    }
}

/// Signed shoelace area; positive for counterclockwise order.
pub fn shoelace<T: Scalar>(vertices: &[Point<T>]) -> T {
    let n = vertices.len();
    let twice = (0..n).fold(T::zero(), |acc, i| acc + vertices[i].cross(vertices[(i + 1) % n]));
    twice * T::lit(0.5)
}

fn segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    let t = if len2 > T::zero() {
        (p.sub(a).dot(ab) / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    p.dist(Point::new(a.x + ab.x * t, a.y + ab.y * t))
}

fn boundary_distance<T: Scalar>(vertices: &[Point<T>], p: Point<T>) -> T {
    let n = vertices.len();
    (0..n)
        .map(|i| segment_distance(p, vertices[i], vertices[(i + 1) % n]))
        .fold(T::infinity(), T::min)
}

/// Even-odd crossing test.
fn crossing_inside<T: Scalar>(vertices: &[Point<T>], p: Point<T>) -> bool {
    let n = vertices.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x_cross {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

fn orientation<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> T {
    b.sub(a).cross(c.sub(a))
}

fn on_segment<T: Scalar>(a: Point<T>, b: Point<T>, p: Point<T>) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

fn segments_intersect<T: Scalar>(p1: Point<T>, p2: Point<T>, q1: Point<T>, q2: Point<T>) -> bool {
    let d1 = orientation(q1, q2, p1);
    let d2 = orientation(q1, q2, p2);
    let d3 = orientation(p1, p2, q1);
    let d4 = orientation(p1, p2, q2);
    let z = T::zero();
    if ((d1 > z && d2 < z) || (d1 < z && d2 > z)) && ((d3 > z && d4 < z) || (d3 < z && d4 > z)) {
        return true;
    }
    (d1 == z && on_segment(q1, q2, p1))
        || (d2 == z && on_segment(q1, q2, p2))
        || (d3 == z && on_segment(p1, p2, q1))
        || (d4 == z && on_segment(p1, p2, q2))
}

fn check_simple<T: Scalar>(v: &[Point<T>]) -> Result<(), GeometryError> {
    let n = v.len();
    for i in 0..n {
        if v[i] == v[(i + 1) % n] {
            return Err(GeometryError::SelfIntersecting(i, i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let (a1, a2) = (v[i], v[(i + 1) % n]);
            let (b1, b2) = (v[j], v[(j + 1) % n]);
            if adjacent {
                // Adjacent edges share one endpoint; they may only overlap
                // if they are collinear and fold back on each other.
                let shared_first = j == i + 1;
                let (p, q, r) = if shared_first { (a1, a2, b2) } else { (b1, a1, a2) };
                if orientation(p, q, r) == T::zero() && q.sub(p).dot(r.sub(q)) < T::zero() {
                    return Err(GeometryError::SelfIntersecting(i, j));
                }
                continue;
            }
            if segments_intersect(a1, a2, b1, b2) {
                return Err(GeometryError::SelfIntersecting(i, j));
            }
        }
    }
    Ok(())
}

/// JSON form of a planar domain:
/// `{"type":"disc","radius":R}`, `{"type":"annulus","inner":A,"outer":B}`,
/// `{"type":"rectangle","width":W,"height":H}`, `{"type":"polygon","vertices":[[x,y],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum DomainSpec {
    Disc { radius: f64 },
    Annulus { inner: f64, outer: f64 },
    Rectangle { width: f64, height: f64 },
    Polygon { vertices: Vec<[f64; 2]> },
}

impl DomainSpec {
    pub fn to_domain<T: Scalar>(&self) -> Result<PlanarDomain<T>, GeometryError> {
        match self {
            DomainSpec::Disc { radius } => PlanarDomain::disc(T::lit(*radius)),
            DomainSpec::Annulus { inner, outer } => {
                PlanarDomain::annulus(T::lit(*inner), T::lit(*outer))
            }
            DomainSpec::Rectangle { width, height } => {
                PlanarDomain::rectangle(T::lit(*width), T::lit(*height))
            }
            DomainSpec::Polygon { vertices } => PlanarDomain::polygon(
                vertices.iter().map(|[x, y]| Point::new(T::lit(*x), T::lit(*y))).collect(),
            ),
        }
    }
}

impl<T: Scalar> From<&PlanarDomain<T>> for DomainSpec {
    fn from(d: &PlanarDomain<T>) -> Self {
        match d.shape() {
            Shape::Disc { radius } => DomainSpec::Disc { radius: radius.to_f64_lossy() },
            Shape::Annulus { inner, outer } => DomainSpec::Annulus {
                inner: inner.to_f64_lossy(),
                outer: outer.to_f64_lossy(),
            },
            Shape::Rectangle { width, height } => DomainSpec::Rectangle {
                width: width.to_f64_lossy(),
                height: height.to_f64_lossy(),
            },
            Shape::Polygon { vertices } => DomainSpec::Polygon {
                vertices: vertices.iter().map(|v| [v.x.to_f64_lossy(), v.y.to_f64_lossy()]).collect(),
            },
        }
    }
}
