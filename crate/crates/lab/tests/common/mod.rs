//! Exhaustive references shared by the integration tests.

#![allow(dead_code)]

use dlpp_core::chains::Polymer;
use dlpp_core::{Point, PointConfiguration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Up to `max_points` points, half of the time on a coarse grid so that
/// shared coordinates occur.
pub fn random_config(seed: u64, max_points: usize, side: f64) -> PointConfiguration {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(0..=max_points);
    let grid = rng.random_bool(0.5);
    let mut pts: Vec<Point> = Vec::new();
    while pts.len() < n {
        let (a, b) = if grid {
            (
                side * rng.random_range(1..8) as f64 / 8.0,
                side * rng.random_range(1..8) as f64 / 8.0,
            )
        } else {
            (side * rng.random::<f64>(), side * rng.random::<f64>())
        };
        let p = Point { x1: a, x2: b };
        if !pts.contains(&p) {
            pts.push(p);
        }
    }
    PointConfiguration::from_points(pts).unwrap()
}

/// Intersection points of two closed segments, both ends of a shared
/// collinear piece included.
pub fn segment_hits(a0: Point, a1: Point, b0: Point, b1: Point) -> Vec<Point> {
    let cross = |o: Point, p: Point, q: Point| (p.x1 - o.x1) * (q.x2 - o.x2) - (p.x2 - o.x2) * (q.x1 - o.x1);
    let on = |p: Point, s0: Point, s1: Point| {
        cross(s0, s1, p).abs() <= 1e-12
            && p.x1 >= s0.x1.min(s1.x1) - 1e-12
            && p.x1 <= s0.x1.max(s1.x1) + 1e-12
            && p.x2 >= s0.x2.min(s1.x2) - 1e-12
            && p.x2 <= s0.x2.max(s1.x2) + 1e-12
    };
    let mut out = Vec::new();
    for p in [a0, a1] {
        if on(p, b0, b1) {
            out.push(p);
        }
    }
    for p in [b0, b1] {
        if on(p, a0, a1) {
            out.push(p);
        }
    }
    let (d1, d2) = (cross(b0, b1, a0), cross(b0, b1, a1));
    let (d3, d4) = (cross(a0, a1, b0), cross(a0, a1, b1));
    if d1 * d2 < 0.0 && d3 * d4 < 0.0 {
        let f = d1 / (d1 - d2);
        out.push(Point {
            x1: a0.x1 + f * (a1.x1 - a0.x1),
            x2: a0.x2 + f * (a1.x2 - a0.x2),
        });
    }
    out
}

/// Intersection of two polylines closest to the far end (largest `x1 + x2`).
pub fn last_common_point(a: &Polymer, b: &Polymer) -> Point {
    let va: Vec<Point> = a.vertices().collect();
    let vb: Vec<Point> = b.vertices().collect();
    let mut best = Point::ORIGIN;
    for sa in va.windows(2) {
        for sb in vb.windows(2) {
            for h in segment_hits(sa[0], sa[1], sb[0], sb[1]) {
                if h.sum() > best.sum() {
                    best = h;
                }
            }
        }
    }
    best
}

/// Both branching points by search over all pairs of maximizers.
pub fn branch_points_by_pairs(ms1: &[Polymer], ms2: &[Polymer]) -> (Point, Point) {
    let mut geometric = Point::ORIGIN;
    let mut poisson = Point::ORIGIN;
    for a in ms1 {
        for b in ms2 {
            let g = last_common_point(a, b);
            if g.sum() > geometric.sum() {
                geometric = g;
            }
            for q in a.visited.iter().filter(|q| b.visited.contains(q)) {
                if q.sum() > poisson.sum() || (q.sum() == poisson.sum() && q.x1 > poisson.x1) {
                    poisson = *q;
                }
            }
        }
    }
    (geometric, poisson)
}

/// The maximizer lying level by level below (or above) all others, if any.
pub fn lattice_extreme(all: &[Polymer], lowest: bool) -> Option<&Polymer> {
    all.iter().find(|p| {
        all.iter().all(|m| {
            p.visited.iter().zip(&m.visited).all(|(a, b)| {
                if lowest {
                    a.x2 <= b.x2 && a.x1 >= b.x1
                } else {
                    a.x2 >= b.x2 && a.x1 <= b.x1
                }
            })
        })
    })
}

/// Peak resident set size of this process in bytes, where available.
pub fn peak_rss_bytes() -> Option<u64> {
    let status = std::fs::read_to_string("/proc/self/status").ok()?;
    let line = status.lines().find(|l| l.starts_with("VmHWM:"))?;
    let kb: u64 = line.split_whitespace().nth(1)?.parse().ok()?;
    Some(kb * 1024)
}
