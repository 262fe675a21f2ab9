//! Reproducible Poisson point configurations.
//!
//! Every sampler is driven by a ChaCha8 stream keyed by a 64-bit seed, so a
//! configuration is a pure function of `(region, intensity, seed)`. Replica
//! seeds come from [`derive_seed`], a SplitMix64 finalizer applied to the
//! master seed offset by a Weyl step per replica.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};

use crate::geometry::{rect_area, Point};
use crate::{Error, Result};

/// Region a configuration was sampled on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Region {
    /// Closed rectangle `[lo, hi]`.
    Rectangle { lo: Point, hi: Point },
    /// Closed triangle `{x1, x2 ≥ 0, x1 + x2 ≤ 2t}` below `U_t`.
    Triangle { t: f64 },
}

impl Region {
    pub fn contains(&self, p: Point) -> bool {
        match *self {
            Region::Rectangle { lo, hi } => lo.weakly_precedes(&p) && p.weakly_precedes(&hi),
            Region::Triangle { t } => p.x1 >= 0.0 && p.x2 >= 0.0 && p.x1 + p.x2 <= 2.0 * t,
        }
    }

    pub fn area(&self) -> f64 {
        match *self {
            Region::Rectangle { lo, hi } => (hi.x1 - lo.x1) * (hi.x2 - lo.x2),
            Region::Triangle { t } => 2.0 * t * t,
        }
    }

    fn validate(&self) -> Result<()> {
        match *self {
            Region::Rectangle { lo, hi } => {
                if lo.weakly_precedes(&hi) {
                    Ok(())
                } else {
                    Err(Error::DegenerateRegion("rectangle corners out of order"))
                }
            }
            Region::Triangle { t } => {
                if t.is_finite() && t > 0.0 {
                    Ok(())
                } else {
                    Err(Error::DegenerateRegion("triangle needs t > 0"))
                }
            }
        }
    }
}

/// An immutable point configuration ω, sorted by `x1` with ties broken by
/// `x2`, free of duplicates, with the provenance it was sampled under.
#[derive(Debug, Clone, PartialEq)]
pub struct PointConfiguration {
    points: Vec<Point>,
    region: Region,
    seed: u64,
    intensity: f64,
}

impl PointConfiguration {
    /// Validates and sorts `points`. Rejects invalid coordinates, points
    /// outside `region` and exact duplicates.
    pub fn new(mut points: Vec<Point>, region: Region, seed: u64, intensity: f64) -> Result<Self> {
        region.validate()?;
        if !(intensity > 0.0 && intensity.is_finite()) {
            return Err(Error::OutOfRange("intensity must be positive"));
        }
        for p in &points {
            Point::new(p.x1, p.x2)?;
            if !region.contains(*p) {
                return Err(Error::OutsideRegion { x1: p.x1, x2: p.x2 });
            }
        }
        points.sort_unstable_by(|a, b| a.lex_cmp(b));
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint {
                x1: w[0].x1,
                x2: w[0].x2,
            });
        }
        Ok(PointConfiguration {
            points,
            region,
            seed,
            intensity,
        })
    }

    /// Convenience constructor for hand-written configurations: the region is
    /// the bounding rectangle `[0, max]` of the points (at least `[0, 1]²`).
    pub fn from_points(points: Vec<Point>) -> Result<Self> {
        let hi = points.iter().fold(Point { x1: 1.0, x2: 1.0 }, |acc, p| Point {
            x1: acc.x1.max(p.x1),
            x2: acc.x2.max(p.x2),
        });
        PointConfiguration::new(
            points,
            Region::Rectangle {
                lo: Point::ORIGIN,
                hi,
            },
            0,
            1.0,
        )
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn region(&self) -> Region {
        self.region
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn intensity(&self) -> f64 {
        self.intensity
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Index range of points with `lo < x1 < hi`.
    pub(crate) fn x1_range(&self, lo: f64, hi: f64) -> core::ops::Range<usize> {
        let start = self.points.partition_point(|p| p.x1 <= lo);
        let end = self.points.partition_point(|p| p.x1 < hi);
        start..end.max(start)
    }

    /// Mirror image under `(x1, x2) ↦ (x2, x1)`.
    pub fn transposed(&self) -> PointConfiguration {
        let points = self
            .points
            .iter()
            .map(|p| Point { x1: p.x2, x2: p.x1 })
            .collect();
        let region = match self.region {
            Region::Rectangle { lo, hi } => Region::Rectangle {
                lo: Point { x1: lo.x2, x2: lo.x1 },
                hi: Point { x1: hi.x2, x2: hi.x1 },
            },
            r @ Region::Triangle { .. } => r,
        };
        // A reflection of a valid configuration stays valid.
        PointConfiguration::new(points, region, self.seed, self.intensity)
            .expect("transposed configuration is valid")
    }
}

/// Master seed plus replica index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedStream {
    pub master: u64,
    pub replica_index: u64,
}

impl SeedStream {
    pub fn new(master: u64, replica_index: u64) -> Self {
        SeedStream {
            master,
            replica_index,
        }
    }

    pub fn seed(&self) -> u64 {
        derive_seed(*self)
    }
}

const WEYL: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-replica seed. Injective in the replica index for a fixed master: the
/// Weyl step is a bijection modulo 2⁶⁴ and so is the finalizer.
pub fn derive_seed(stream: SeedStream) -> u64 {
    let base = splitmix64(stream.master);
    splitmix64(base.wrapping_add(WEYL.wrapping_mul(stream.replica_index.wrapping_add(1))))
}

fn poisson_count(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    if mean <= 0.0 {
        return 0;
    }
    let dist = Poisson::new(mean).expect("finite positive Poisson mean");
    dist.sample(rng) as usize
}

/// Poisson field of the given intensity on the rectangle `[p, q]`.
pub fn sample_rect(p: Point, q: Point, intensity: f64, seed: u64) -> Result<PointConfiguration> {
    Point::new(p.x1, p.x2)?;
    Point::new(q.x1, q.x2)?;
    if !p.precedes(&q) {
        return Err(Error::DegenerateRegion("rectangle must have p ≺ q"));
    }
    if !(intensity > 0.0 && intensity.is_finite()) {
        return Err(Error::OutOfRange("intensity must be positive"));
    }
    let area = rect_area(p, q)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = poisson_count(&mut rng, intensity * area);
    let (w, h) = (q.x1 - p.x1, q.x2 - p.x2);
    let mut points = Vec::with_capacity(n);
    for _ in 0..n {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        points.push(Point {
            x1: p.x1 + w * u,
            x2: p.x2 + h * v,
        });
    }
    PointConfiguration::new(points, Region::Rectangle { lo: p, hi: q }, seed, intensity)
}

/// Unit-intensity Poisson field on the triangle below `U_t` (area `2t²`).
///
/// One Poisson count is drawn, then each point is drawn uniformly in the square
/// `[0, 2t]²` and reflected through the anti-diagonal when it lands above it.
pub fn sample_triangle(t: f64, seed: u64) -> Result<PointConfiguration> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange("t must be positive"));
    }
    let side = 2.0 * t;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = poisson_count(&mut rng, 2.0 * t * t);
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let mut x1 = side * rng.random::<f64>();
        let mut x2 = side * rng.random::<f64>();
        if x1 + x2 > side {
            let (r1, r2) = (side - x2, side - x1);
            x1 = r1;
            x2 = r2;
        }
        // Rounding in the reflection can land a hair above the line; redraw.
        if x1 + x2 <= side {
            points.push(Point { x1, x2 });
        }
    }
    PointConfiguration::new(points, Region::Triangle { t }, seed, 1.0)
}
