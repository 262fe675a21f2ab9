//! The maximizer network `M_t`: every maximizer from the origin to every
//! endpoint on `U_t`, with each terminal triangle reduced to its two sides.
//!
//! # Construction
//!
//! A point `q` lies on a maximizer to `E` exactly when some chain through it
//! is maximal, and any maximal chain from the origin to `q` can be prefixed to
//! any maximal continuation. So the network is the predecessor closure of its
//! apexes: the edges into a node `q` of rank `k` are all `p ≺ q` of rank
//! `k − 1`. The apexes are found with one sweep along `U_t`: `q ≺ E(x)` for
//! `E(x) = (t − x, t + x)` exactly when `x ∈ (q.x2 − t, t − q.x1)`, so the
//! length `L(0, E(x))` is the upper envelope of these windows weighted by
//! rank, and `q` is an apex wherever its rank attains the envelope.
//!
//! The whole build is `O(n log n + |edges|)`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;

use crate::chains::{backward_lengths, forward_lengths, Extremal, Maximizers, ValueField};
use crate::geometry::{dist_to_line, LineUt, Point};
use crate::sampling::PointConfiguration;
use crate::{Error, Result};

/// Points of `config` lying on some maximizer from the origin to `e`.
pub fn membership(config: &PointConfiguration, e: Point) -> Result<Vec<Point>> {
    Ok(Maximizers::new(config, Point::ORIGIN, e)?.members())
}

/// Offsets `x` at which the set `{q : q ≺ E(x)}` changes, i.e. the distinct
/// values `t − q.x1` and `q.x2 − t` clipped to `[−t, t]`.
pub fn endpoint_breakpoints(config: &PointConfiguration, t: f64) -> Vec<f64> {
    let mut out: Vec<f64> = config
        .points()
        .iter()
        .flat_map(|q| [t - q.x1, q.x2 - t])
        .map(|x| x.clamp(-t, t))
        .collect();
    out.sort_unstable_by(f64::total_cmp);
    out.dedup();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NetworkOptions {
    /// Treat the origin as an apex for endpoints with `L(0, E) = 0`.
    pub origin_apexes: bool,
}

impl Default for NetworkOptions {
    fn default() -> Self {
        NetworkOptions { origin_apexes: true }
    }
}

/// Apex of a terminal triangle with the two contact points of its sides on
/// `U_t`: `rays[0]` has the smaller offset (lower right), `rays[1]` the larger.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Apex {
    pub node: usize,
    pub rays: [Point; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Segment,
    ApexRay,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Segment => "segment",
            EdgeKind::ApexRay => "apex_ray",
        }
    }
}

/// The network `M_t`. Node 0 is the origin; segments are pairs of node
/// indices directed by dominance.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximizerNetwork {
    t: f64,
    nodes: Vec<Point>,
    segments: Vec<(usize, usize)>,
    apexes: Vec<Apex>,
}

impl MaximizerNetwork {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn nodes(&self) -> &[Point] {
        &self.nodes
    }

    pub fn segments(&self) -> &[(usize, usize)] {
        &self.segments
    }

    pub fn apexes(&self) -> &[Apex] {
        &self.apexes
    }

    /// All drawn pieces: segments first, then two rays per apex.
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point, EdgeKind)> + '_ {
        let segs = self
            .segments
            .iter()
            .map(|&(a, b)| (self.nodes[a], self.nodes[b], EdgeKind::Segment));
        let rays = self.apexes.iter().flat_map(|apex| {
            let p = self.nodes[apex.node];
            apex.rays.iter().map(move |&r| (p, r, EdgeKind::ApexRay))
        });
        segs.chain(rays)
    }

    pub fn cross_sections(&self) -> CrossSections {
        CrossSections::new(self)
    }
}

struct Piece {
    lo: f64,
    hi: f64,
}

/// Builds `M_t` from the points of `config` strictly below `U_t`.
pub fn build_network(config: &PointConfiguration, t: f64, options: NetworkOptions) -> Result<MaximizerNetwork> {
    let line = LineUt::new(t)?;
    let pts = config.points();
    let forward = forward_lengths(config, Point::ORIGIN);

    // Ranked points strictly inside the triangle, grouped by rank.
    let mut levels: Vec<Vec<usize>> = Vec::new();
    for (i, q) in pts.iter().enumerate() {
        if q.sum() >= 2.0 * t {
            continue;
        }
        if let Some(r) = forward.get(i) {
            let r = r as usize;
            if levels.len() < r {
                levels.resize_with(r, Vec::new);
            }
            levels[r - 1].push(i);
        }
    }
    let window = |q: &Point| (q.x2 - t, t - q.x1);

    // Upper envelope of the rank-weighted windows along U_t.
    let mut events: Vec<(f64, bool, u32)> = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        for &i in level {
            let (lo, hi) = window(&pts[i]);
            events.push((lo, true, k as u32 + 1));
            events.push((hi, false, k as u32 + 1));
        }
    }
    events.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut pieces: Vec<Vec<Piece>> = (0..=levels.len()).map(|_| Vec::new()).collect();
    let mut counts = vec![0u32; levels.len() + 1];
    let mut heap: BinaryHeap<u32> = BinaryHeap::new();
    let push_piece = |pieces: &mut Vec<Vec<Piece>>, lo: f64, hi: f64, v: u32| {
        if hi <= lo {
            return;
        }
        let run = &mut pieces[v as usize];
        match run.last_mut() {
            Some(last) if last.hi == lo => last.hi = hi,
            _ => run.push(Piece { lo, hi }),
        }
    };
    let mut prev = -t;
    let mut e = 0;
    while e < events.len() {
        let x = events[e].0;
        while let Some(&top) = heap.peek() {
            if counts[top as usize] == 0 {
                heap.pop();
            } else {
                break;
            }
        }
        let current = heap.peek().copied().unwrap_or(0);
        push_piece(&mut pieces, prev, x, current);
        while e < events.len() && events[e].0 == x {
            let (_, insert, v) = events[e];
            if insert {
                counts[v as usize] += 1;
                heap.push(v);
            } else {
                counts[v as usize] -= 1;
            }
            e += 1;
        }
        prev = x;
    }
    push_piece(&mut pieces, prev, t, 0);

    // Apexes: points whose rank reaches the envelope somewhere in their window.
    let mut apex_rays: Vec<Option<(f64, f64)>> = vec![None; pts.len()];
    let mut marked = vec![false; pts.len()];
    for (k, level) in levels.iter().enumerate() {
        let run = &pieces[k + 1];
        if run.is_empty() {
            continue;
        }
        for &i in level {
            let (lo, hi) = window(&pts[i]);
            let first = run.partition_point(|p| p.hi <= lo);
            let end = run.partition_point(|p| p.lo < hi);
            if first < end {
                let xmin = lo.max(run[first].lo);
                let xmax = hi.min(run[end - 1].hi);
                apex_rays[i] = Some((xmin, xmax));
                marked[i] = true;
            }
        }
    }

    // Predecessor closure, from the top rank down.
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for k in (0..levels.len()).rev() {
        for &q in &levels[k] {
            if !marked[q] {
                continue;
            }
            if k == 0 {
                edges.push((usize::MAX, q));
                continue;
            }
            let below = &levels[k - 1];
            let qp = pts[q];
            // Ranks form antichains: x1 ascending, x2 non-increasing.
            let lo = below.partition_point(|&p| pts[p].x2 >= qp.x2);
            let hi = below.partition_point(|&p| pts[p].x1 < qp.x1);
            for &p in below.get(lo..hi).unwrap_or(&[]) {
                marked[p] = true;
                edges.push((p, q));
            }
        }
    }

    let mut node_of = vec![usize::MAX; pts.len()];
    let mut nodes = vec![Point::ORIGIN];
    for (i, &m) in marked.iter().enumerate() {
        if m {
            node_of[i] = nodes.len();
            nodes.push(pts[i]);
        }
    }
    let map = |i: usize| if i == usize::MAX { 0 } else { node_of[i] };
    let mut segments: Vec<(usize, usize)> = edges.into_iter().map(|(a, b)| (map(a), map(b))).collect();
    segments.sort_unstable();

    let mut apexes = Vec::new();
    if options.origin_apexes {
        if let (Some(first), Some(last)) = (pieces[0].first(), pieces[0].last()) {
            apexes.push(Apex {
                node: 0,
                rays: [line.at_offset(first.lo)?, line.at_offset(last.hi)?],
            });
        }
    }
    for (i, rays) in apex_rays.iter().enumerate() {
        if let Some((xmin, xmax)) = *rays {
            apexes.push(Apex {
                node: node_of[i],
                rays: [line.at_offset(xmin)?, line.at_offset(xmax)?],
            });
        }
    }

    Ok(MaximizerNetwork {
        t,
        nodes,
        segments,
        apexes,
    })
}

/// Precomputed sums `x1 + x2` of the network's pieces, for counting the
/// crossings with many lines `U_s`.
#[derive(Debug, Clone)]
pub struct CrossSections {
    t: f64,
    node_sums: Vec<f64>,
    segment_starts: Vec<f64>,
    segment_ends: Vec<f64>,
    apex_sums: Vec<f64>,
}

impl CrossSections {
    pub fn new(net: &MaximizerNetwork) -> Self {
        let sorted = |mut v: Vec<f64>| {
            v.sort_unstable_by(f64::total_cmp);
            v
        };
        CrossSections {
            t: net.t,
            node_sums: sorted(net.nodes.iter().map(Point::sum).collect()),
            segment_starts: sorted(net.segments.iter().map(|&(a, _)| net.nodes[a].sum()).collect()),
            segment_ends: sorted(net.segments.iter().map(|&(_, b)| net.nodes[b].sum()).collect()),
            apex_sums: sorted(net.apexes.iter().map(|a| net.nodes[a.node].sum()).collect()),
        }
    }

    /// `N_t(s)`: distinct points of the network on `U_s`. A point is identified
    /// by the node or piece it belongs to, so a node shared by several
    /// segments counts once and each ray contributes its own contact point.
    pub fn count(&self, s: f64) -> Result<usize> {
        if !(0.0..=self.t).contains(&s) {
            return Err(Error::OutOfRange("cross-section s must lie in [0, t]"));
        }
        let c = 2.0 * s;
        let below = |v: &[f64], x: f64| v.partition_point(|&y| y < x);
        let at_or_below = |v: &[f64], x: f64| v.partition_point(|&y| y <= x);
        let on_nodes = at_or_below(&self.node_sums, c) - below(&self.node_sums, c);
        let through_segments = below(&self.segment_starts, c) - at_or_below(&self.segment_ends, c);
        let through_rays = 2 * below(&self.apex_sums, c);
        Ok(on_nodes + through_segments + through_rays)
    }
}

/// `N_t(s)` for a single cross-section.
pub fn count_crossings(net: &MaximizerNetwork, s: f64) -> Result<usize> {
    CrossSections::new(net).count(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JMode {
    /// Last geometric intersection of the two polylines.
    Geometric,
    /// Last configuration point (or the origin) shared by the two families.
    /// Equal distances to the line (grid inputs only) go to the larger `x1`.
    Poisson,
}

impl JMode {
    pub fn as_str(self) -> &'static str {
        match self {
            JMode::Geometric => "geometric",
            JMode::Poisson => "poisson",
        }
    }
}

/// Last branching point `J(E₁, E₂)` of the maximizers to two endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoint {
    pub location: Point,
    pub mode: JMode,
    pub endpoints: (Point, Point),
}

impl BranchPoint {
    pub fn distance_to_origin(&self) -> f64 {
        self.location.norm()
    }

    pub fn distance_to_line(&self, line: LineUt) -> f64 {
        dist_to_line(self.location, line)
    }
}

/// Forward values from the origin, reusable across endpoints.
#[derive(Debug, Clone)]
pub struct Rooted<'a> {
    config: &'a PointConfiguration,
    forward: ValueField,
}

impl<'a> Rooted<'a> {
    pub fn new(config: &'a PointConfiguration) -> Self {
        Rooted {
            config,
            forward: forward_lengths(config, Point::ORIGIN),
        }
    }

    pub fn maximizers(&self, e: Point) -> Result<Maximizers<'a>> {
        if !Point::ORIGIN.precedes(&e) {
            return Err(Error::Ordering("endpoint must dominate the origin"));
        }
        let backward = backward_lengths(self.config, e);
        Ok(Maximizers::from_fields(self.config, &self.forward, &backward))
    }

    pub fn last_intersection(&self, e1: Point, e2: Point, mode: JMode) -> Result<BranchPoint> {
        if e1 == e2 {
            return Err(Error::OutOfRange("endpoints must differ"));
        }
        let (t1, t2) = (0.5 * e1.sum(), 0.5 * e2.sum());
        if !(t1 > 0.0) || (t1 - t2).abs() > 1e-9 * t1 {
            return Err(Error::OutOfRange("endpoints must lie on a common line U_t"));
        }
        // Upper-left endpoint first.
        let (left, right) = if e1.x1 < e2.x1 { (e1, e2) } else { (e2, e1) };
        let to_left = self.maximizers(left)?;
        let to_right = self.maximizers(right)?;
        let location = match mode {
            JMode::Geometric => {
                // The innermost pair stays together longest.
                let a = to_left.extremal(Extremal::Lowest);
                let b = to_right.extremal(Extremal::Highest);
                let va: Vec<Point> = a.vertices().collect();
                let vb: Vec<Point> = b.vertices().collect();
                last_crossing(&va, &vb)
            }
            JMode::Poisson => {
                let pts = self.config.points();
                let mut in_left = vec![false; pts.len()];
                for i in to_left.levels().iter().flatten() {
                    in_left[*i] = true;
                }
                to_right
                    .levels()
                    .iter()
                    .flatten()
                    .filter(|&&i| in_left[i])
                    .map(|&i| pts[i])
                    .fold(Point::ORIGIN, |best, q| {
                        if q.sum() > best.sum() || (q.sum() == best.sum() && q.x1 > best.x1) {
                            q
                        } else {
                            best
                        }
                    })
            }
        };
        Ok(BranchPoint {
            location,
            mode,
            endpoints: (e1, e2),
        })
    }
}

/// `J(E₁, E₂)` for endpoints on a common line `U_t`; symmetric in its
/// arguments.
pub fn last_intersection(config: &PointConfiguration, e1: Point, e2: Point, mode: JMode) -> Result<BranchPoint> {
    Rooted::new(config).last_intersection(e1, e2, mode)
}

/// Value of an `x1`-monotone polyline at `x`, given the segment index `j`
/// with `poly[j].x1 ≤ x ≤ poly[j + 1].x1`. Vertices are returned exactly.
fn polyline_at(poly: &[Point], j: usize, x: f64) -> f64 {
    let (a, b) = (poly[j], poly[(j + 1).min(poly.len() - 1)]);
    if x == a.x1 {
        a.x2
    } else if x == b.x1 {
        b.x2
    } else {
        a.x2 + (b.x2 - a.x2) * (x - a.x1) / (b.x1 - a.x1)
    }
}

/// Last intersection of two polylines that both start at the origin and are
/// strictly increasing in `x1`.
pub(crate) fn last_crossing(a: &[Point], b: &[Point]) -> Point {
    let end = a.last().unwrap().x1.min(b.last().unwrap().x1);
    let mut xs: Vec<f64> = a.iter().chain(b.iter()).map(|p| p.x1).filter(|&x| x <= end).collect();
    xs.sort_unstable_by(f64::total_cmp);
    xs.dedup();

    let (mut ja, mut jb) = (0usize, 0usize);
    let advance = |poly: &[Point], j: &mut usize, x: f64| {
        while *j + 1 < poly.len() - 1 && poly[*j + 1].x1 < x {
            *j += 1;
        }
        if *j + 1 < poly.len() && poly[*j + 1].x1 < x {
            *j += 1;
        }
    };
    let mut best = Point::ORIGIN;
    let mut prev: Option<(f64, f64, f64)> = None; // (x, ya, d)
    for &x in &xs {
        advance(a, &mut ja, x);
        advance(b, &mut jb, x);
        let ya = polyline_at(a, ja, x);
        let yb = polyline_at(b, jb, x);
        let d = ya - yb;
        if d == 0.0 {
            best = Point { x1: x, x2: ya };
        } else if let Some((px, pya, pd)) = prev {
            if pd != 0.0 && (pd < 0.0) != (d < 0.0) {
                let frac = pd / (pd - d);
                best = Point {
                    x1: px + (x - px) * frac,
                    x2: pya + (ya - pya) * frac,
                };
            }
        }
        prev = Some((x, ya, d));
    }
    best
}
