//! Planar primitives: the dominance order, rectangle areas, the line `U_t`
//! and cylinders around the ray from the origin to a point of `U_t`.

use crate::math::{abs, sqrt};
use crate::{Error, Result};

const SQRT_2: f64 = core::f64::consts::SQRT_2;

/// A point of the closed first quadrant.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Point {
    pub x1: f64,
    pub x2: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x1: 0.0, x2: 0.0 };

    /// Builds a point, rejecting non-finite or negative coordinates.
    pub fn new(x1: f64, x2: f64) -> Result<Self> {
        if x1.is_finite() && x2.is_finite() && x1 >= 0.0 && x2 >= 0.0 {
            Ok(Point { x1, x2 })
        } else {
            Err(Error::InvalidPoint { x1, x2 })
        }
    }

    /// Strict dominance `self ≺ other`.
    #[inline]
    pub fn precedes(&self, other: &Point) -> bool {
        self.x1 < other.x1 && self.x2 < other.x2
    }

    /// Componentwise `self ≤ other`.
    #[inline]
    pub fn weakly_precedes(&self, other: &Point) -> bool {
        self.x1 <= other.x1 && self.x2 <= other.x2
    }

    #[inline]
    pub fn sum(&self) -> f64 {
        self.x1 + self.x2
    }

    pub fn norm(&self) -> f64 {
        crate::math::hypot(self.x1, self.x2)
    }

    pub fn distance(&self, other: &Point) -> f64 {
        crate::math::hypot(self.x1 - other.x1, self.x2 - other.x2)
    }

    /// Total order used to sort configurations: by `x1`, ties by `x2`.
    pub fn lex_cmp(&self, other: &Point) -> core::cmp::Ordering {
        self.x1
            .total_cmp(&other.x1)
            .then_with(|| self.x2.total_cmp(&other.x2))
    }
}

/// `p ≺ q`: strictly smaller in both coordinates. Points sharing a coordinate
/// are incomparable.
#[inline]
pub fn dominates(p: Point, q: Point) -> bool {
    p.precedes(&q)
}

/// Area `a(p, q)` of the rectangle with lower-left corner `p` and upper-right
/// corner `q`.
pub fn rect_area(p: Point, q: Point) -> Result<f64> {
    if !p.weakly_precedes(&q) {
        return Err(Error::Ordering("rectangle corner q must dominate p"));
    }
    Ok((q.x1 - p.x1) * (q.x2 - p.x2))
}

/// The segment `U_t = {(t − x, t + x) : |x| ≤ t}` of the line `x1 + x2 = 2t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineUt {
    t: f64,
}

impl LineUt {
    pub fn new(t: f64) -> Result<Self> {
        if t.is_finite() && t > 0.0 {
            Ok(LineUt { t })
        } else {
            Err(Error::OutOfRange("t must be finite and positive"))
        }
    }

    #[inline]
    pub fn t(&self) -> f64 {
        self.t
    }

    /// The point `(t − x, t + x)` at transverse offset `x ∈ [−t, t]`.
    pub fn at_offset(&self, x: f64) -> Result<Point> {
        if !(x.abs() <= self.t) {
            return Err(Error::OutOfRange("offset must lie in [-t, t]"));
        }
        Ok(Point {
            x1: (self.t - x).max(0.0),
            x2: (self.t + x).max(0.0),
        })
    }

    /// Offset `x` of a point of the line, inverse of [`LineUt::at_offset`].
    pub fn offset_of(&self, p: Point) -> f64 {
        0.5 * (p.x2 - p.x1)
    }

    /// `E = (t(1 − k), t(1 + k))` for `k ∈ (−1, 1)`.
    pub fn endpoint_at(&self, k: f64) -> Result<Point> {
        if !(k.abs() < 1.0) {
            return Err(Error::OutOfRange("k must lie in (-1, 1)"));
        }
        Ok(Point {
            x1: self.t * (1.0 - k),
            x2: self.t * (1.0 + k),
        })
    }

    /// Inverse of [`LineUt::endpoint_at`].
    pub fn slope_parameter(&self, p: Point) -> f64 {
        (p.x2 - p.x1) / (2.0 * self.t)
    }

    /// Whether `p` lies on the line up to a relative tolerance.
    pub fn contains(&self, p: Point) -> bool {
        abs(p.sum() - 2.0 * self.t) <= 1e-12 * self.t.max(1.0)
    }
}

/// Euclidean distance `|x1 + x2 − 2t| / √2` from `p` to the line of `U_t`.
pub fn dist_to_line(p: Point, line: LineUt) -> f64 {
    abs(p.sum() - 2.0 * line.t) / SQRT_2
}

/// Side of a cylinder boundary: `Plus` is the upper-left side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    fn sign(self) -> f64 {
        match self {
            Side::Plus => 1.0,
            Side::Minus => -1.0,
        }
    }
}

/// Cylinder with axis from the origin to a point `E` of `U_t`, transverse
/// half-width `w` and length `l` measured back from `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cylinder {
    endpoint: Point,
    k: f64,
    width: f64,
    length: f64,
}

impl Cylinder {
    pub fn new(line: LineUt, k: f64, width: f64, length: f64) -> Result<Self> {
        let endpoint = line.endpoint_at(k)?;
        if !(width >= 0.0 && width.is_finite()) {
            return Err(Error::OutOfRange("cylinder width must be non-negative"));
        }
        if !(length > 0.0 && length <= endpoint.norm() * (1.0 + 1e-12)) {
            return Err(Error::OutOfRange("cylinder length must lie in (0, |0E|]"));
        }
        Ok(Cylinder {
            endpoint,
            k,
            width,
            length,
        })
    }

    pub fn endpoint(&self) -> Point {
        self.endpoint
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    /// `Q = √(2(1 + k²))`.
    fn q(&self) -> f64 {
        sqrt(2.0 * (1.0 + self.k * self.k))
    }

    /// Unit vector `e₁ = x̂` along the axis.
    pub fn axis(&self) -> (f64, f64) {
        let q = self.q();
        ((1.0 - self.k) / q, (1.0 + self.k) / q)
    }

    /// Unit normal `e₂`, pointing to the upper-left side.
    pub fn normal(&self) -> (f64, f64) {
        let q = self.q();
        (-(1.0 + self.k) / q, (1.0 - self.k) / q)
    }

    /// `z + x̂`.
    pub fn step_along_axis(&self, z: Point) -> Point {
        let (a1, a2) = self.axis();
        Point {
            x1: z.x1 + a1,
            x2: z.x2 + a2,
        }
    }

    /// `z = E ± w e₂ − λ l e₁`. The result must lie in the rectangle `[0, E]`;
    /// anything else is rejected.
    pub fn boundary_point(&self, side: Side, lambda: f64) -> Result<Point> {
        if !(lambda > 0.0 && lambda <= 1.0) {
            return Err(Error::OutOfRange("lambda must lie in (0, 1]"));
        }
        let (a1, a2) = self.axis();
        let (n1, n2) = self.normal();
        let s = side.sign() * self.width;
        let back = lambda * self.length;
        let z = Point {
            x1: self.endpoint.x1 + s * n1 - back * a1,
            x2: self.endpoint.x2 + s * n2 - back * a2,
        };
        if !(z.x1 >= 0.0 && z.x2 >= 0.0) {
            return Err(Error::OutOfRange("boundary point leaves the first quadrant"));
        }
        if !z.weakly_precedes(&self.endpoint) {
            return Err(Error::OutOfRange("boundary point leaves the rectangle [0, E]"));
        }
        Ok(z)
    }
}

/// `√a(0, z′) + √a(z, e) − √a(0, e)`, the length deficit of routing through
/// the pair `z ⪯ z′` instead of going straight to `e`.
///
/// Each square root is evaluated in full; the cancellation costs at most about
/// `4·t·ε` in absolute terms, i.e. below `1e-9` for `t ≤ 1e6`.
pub fn lemma_geom_lhs(z: Point, zp: Point, e: Point) -> Result<f64> {
    if !(Point::ORIGIN.weakly_precedes(&z) && z.weakly_precedes(&zp) && zp.weakly_precedes(&e)) {
        return Err(Error::Ordering("need 0 ⪯ z ⪯ z' ⪯ e"));
    }
    let head = sqrt(zp.x1 * zp.x2);
    let tail = sqrt((e.x1 - z.x1) * (e.x2 - z.x2));
    let direct = sqrt(e.x1 * e.x2);
    Ok(head + tail - direct)
}

/// Which regime of the geometric bound applies: cylinder length `t^µ` with
/// `µ < 1`, or the full length `µ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaCase {
    Interior,
    Full,
}

/// The constant `C(k) > 0` of the geometric bound.
pub fn lemma_constant(k: f64, case: LemmaCase) -> Result<f64> {
    if !(k.abs() < 1.0) {
        return Err(Error::OutOfRange("k must lie in (-1, 1)"));
    }
    let k2 = k * k;
    Ok(match case {
        LemmaCase::Interior => (k2 + 1.0) * (k2 + 1.0) / (4.0 * (k2 - 1.0) * (k2 - 1.0)),
        LemmaCase::Full => {
            let s = 1.0 - k2;
            (1.0 + k2) / (2.0 * s * sqrt(s))
        }
    })
}

/// `−C(k)·w²/l`.
pub fn lemma_geom_bound(k: f64, w: f64, l: f64, case: LemmaCase) -> Result<f64> {
    if !(w > 0.0 && l > 0.0) {
        return Err(Error::OutOfRange("w and l must be positive"));
    }
    Ok(-lemma_constant(k, case)? * w * w / l)
}
