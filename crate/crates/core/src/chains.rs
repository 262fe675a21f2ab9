//! Longest chains (maximal directed polymers) in a point configuration.
//!
//! Lengths come from patience sorting: after the configuration's `x1` order,
//! a chain is a strictly increasing run of `x2`. Points sharing an `x1` are
//! incomparable, so each group of equal `x1` is ranked against the piles as
//! they stood before the group and only then inserted.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::Point;
use crate::sampling::PointConfiguration;
use crate::{Error, Result};

/// Largest instance [`brute_force_length`] accepts.
pub const BRUTE_FORCE_LIMIT: usize = 20;

/// A directed polymer `start ≺ q₁ ≺ … ≺ q_N ≺ end`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polymer {
    pub start: Point,
    pub end: Point,
    pub visited: Vec<Point>,
}

impl Polymer {
    /// Number of configuration points visited.
    pub fn length(&self) -> usize {
        self.visited.len()
    }

    /// Vertices of the piecewise linear path, endpoints included.
    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        core::iter::once(self.start)
            .chain(self.visited.iter().copied())
            .chain(core::iter::once(self.end))
    }

    /// Whether consecutive vertices are strictly increasing.
    pub fn is_chain(&self) -> bool {
        let v: Vec<Point> = self.vertices().collect();
        v.windows(2).all(|w| w[0].precedes(&w[1]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremal {
    Lowest,
    Highest,
}

/// Per-point chain lengths relative to an anchor.
///
/// Forward: `L(anchor, q)` counting `q` itself, defined for `anchor ≺ q`.
/// Backward: the longest chain starting at `q` and ending before the anchor,
/// defined for `q ≺ anchor`. Points outside the cone have no value.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueField {
    anchor: Point,
    direction: Direction,
    // Indexed like the configuration; 0 marks an absent value.
    values: Vec<u32>,
}

impl ValueField {
    pub fn anchor(&self) -> Point {
        self.anchor
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    #[inline]
    pub fn get(&self, index: usize) -> Option<u32> {
        match self.values[index] {
            0 => None,
            v => Some(v),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Defined values in configuration order.
    pub fn defined(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, v))
    }

    /// Largest value, 0 when no value is defined.
    pub fn max(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Patience sorting over `(group, value)` pairs in processing order; returns
/// the strict rank of each item. Items of one group do not chain together.
fn strict_ranks(items: &[(f64, f64)], ranks: &mut Vec<u32>) {
    ranks.clear();
    ranks.reserve(items.len());
    let mut piles: Vec<f64> = Vec::new();
    let mut start = 0;
    while start < items.len() {
        let group = items[start].0;
        let mut end = start + 1;
        while end < items.len() && items[end].0 == group {
            end += 1;
        }
        for &(_, v) in &items[start..end] {
            ranks.push(piles.partition_point(|&top| top < v) as u32 + 1);
        }
        for (&(_, v), &r) in items[start..end].iter().zip(&ranks[start..end]) {
            let pos = r as usize - 1;
            if pos == piles.len() {
                piles.push(v);
            } else if v < piles[pos] {
                piles[pos] = v;
            }
        }
        start = end;
    }
}

/// Length of the longest strict chain among `points` (already in `x1` order).
pub(crate) fn lis_length<'a>(points: impl Iterator<Item = &'a Point>) -> usize {
    let mut piles: Vec<f64> = Vec::new();
    let mut group = f64::NAN;
    // Updates for the current equal-x1 group, applied when the group ends.
    let mut pending: Vec<(usize, f64)> = Vec::new();
    let flush = |piles: &mut Vec<f64>, pending: &mut Vec<(usize, f64)>| {
        for &(pos, v) in pending.iter() {
            if pos == piles.len() {
                piles.push(v);
            } else if v < piles[pos] {
                piles[pos] = v;
            }
        }
        pending.clear();
    };
    for p in points {
        if p.x1 != group {
            flush(&mut piles, &mut pending);
            group = p.x1;
        }
        pending.push((piles.partition_point(|&top| top < p.x2), p.x2));
    }
    flush(&mut piles, &mut pending);
    piles.len()
}

fn inside<'a>(config: &'a PointConfiguration, s: Point, e: Point) -> impl Iterator<Item = (usize, &'a Point)> + 'a {
    let range = config.x1_range(s.x1, e.x1);
    let offset = range.start;
    config.points()[range]
        .iter()
        .enumerate()
        .filter(move |(_, q)| q.x2 > s.x2 && q.x2 < e.x2)
        .map(move |(i, q)| (i + offset, q))
}

fn check_order(s: Point, e: Point) -> Result<()> {
    if s.precedes(&e) {
        Ok(())
    } else {
        Err(Error::Ordering("chain endpoints need s ≺ e"))
    }
}

/// `L(s, e)`: the longest strict chain of configuration points inside the
/// open rectangle `(s, e)`. `O(n log n)`.
pub fn max_chain_length(config: &PointConfiguration, s: Point, e: Point) -> Result<usize> {
    check_order(s, e)?;
    Ok(lis_length(inside(config, s, e).map(|(_, q)| q)))
}

/// Exhaustive maximum over all subsets of the points inside `(s, e)`.
/// Reference for [`max_chain_length`].
pub fn brute_force_length(config: &PointConfiguration, s: Point, e: Point) -> Result<usize> {
    check_order(s, e)?;
    let pts: Vec<Point> = inside(config, s, e).map(|(_, q)| *q).collect();
    if pts.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            points: pts.len(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best = 0;
    for mask in 0u32..(1u32 << pts.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut last: Option<Point> = None;
        let mut ok = true;
        for (i, q) in pts.iter().enumerate() {
            if mask & (1 << i) != 0 {
                if let Some(prev) = last {
                    if !prev.precedes(q) {
                        ok = false;
                        break;
                    }
                }
                last = Some(*q);
            }
        }
        if ok {
            best = size;
        }
    }
    Ok(best)
}

/// Forward values `L(s, q)` (inclusive of `q`) for every `q ≻ s`.
pub fn forward_lengths(config: &PointConfiguration, s: Point) -> ValueField {
    let pts = config.points();
    let mut values = vec![0u32; pts.len()];
    let start = pts.partition_point(|p| p.x1 <= s.x1);
    let idx: Vec<usize> = (start..pts.len()).filter(|&i| pts[i].x2 > s.x2).collect();
    let items: Vec<(f64, f64)> = idx.iter().map(|&i| (pts[i].x1, pts[i].x2)).collect();
    let mut ranks = Vec::new();
    strict_ranks(&items, &mut ranks);
    for (&i, &r) in idx.iter().zip(&ranks) {
        values[i] = r;
    }
    ValueField {
        anchor: s,
        direction: Direction::Forward,
        values,
    }
}

/// Backward values for every `q ≺ e`: the longest chain that starts at `q`
/// (counted) and stays below `e`. Mirror image of [`forward_lengths`].
pub fn backward_lengths(config: &PointConfiguration, e: Point) -> ValueField {
    let pts = config.points();
    let mut values = vec![0u32; pts.len()];
    let end = pts.partition_point(|p| p.x1 < e.x1);
    let idx: Vec<usize> = (0..end).rev().filter(|&i| pts[i].x2 < e.x2).collect();
    let items: Vec<(f64, f64)> = idx.iter().map(|&i| (-pts[i].x1, -pts[i].x2)).collect();
    let mut ranks = Vec::new();
    strict_ranks(&items, &mut ranks);
    for (&i, &r) in idx.iter().zip(&ranks) {
        values[i] = r;
    }
    ValueField {
        anchor: e,
        direction: Direction::Backward,
        values,
    }
}

/// The points lying on some maximizer from `s` to `e`, grouped by their rank
/// along the chain.
#[derive(Debug, Clone)]
pub struct Maximizers<'a> {
    config: &'a PointConfiguration,
    start: Point,
    end: Point,
    // levels[k] holds the member indices with forward value k + 1, in
    // configuration order; each level is an antichain.
    levels: Vec<Vec<usize>>,
}

impl<'a> Maximizers<'a> {
    pub fn new(config: &'a PointConfiguration, s: Point, e: Point) -> Result<Self> {
        check_order(s, e)?;
        let forward = forward_lengths(config, s);
        let backward = backward_lengths(config, e);
        Ok(Self::from_fields(config, &forward, &backward))
    }

    /// Builds the member set from precomputed fields; the anchors of the
    /// fields are the start and end points.
    pub fn from_fields(config: &'a PointConfiguration, forward: &ValueField, backward: &ValueField) -> Self {
        let (s, e) = (forward.anchor(), backward.anchor());
        let range = config.x1_range(s.x1, e.x1);
        let mut length = 0u32;
        for i in range.clone() {
            if let (Some(f), Some(_)) = (forward.get(i), backward.get(i)) {
                length = length.max(f);
            }
        }
        let mut levels = vec![Vec::new(); length as usize];
        for i in range {
            if let (Some(f), Some(b)) = (forward.get(i), backward.get(i)) {
                if f + b - 1 == length {
                    levels[f as usize - 1].push(i);
                }
            }
        }
        Maximizers {
            config,
            start: s,
            end: e,
            levels,
        }
    }

    /// `L(s, e)`.
    pub fn length(&self) -> usize {
        self.levels.len()
    }

    pub fn start(&self) -> Point {
        self.start
    }

    pub fn end(&self) -> Point {
        self.end
    }

    /// Member indices by level (level `k` at position `k − 1`).
    pub fn levels(&self) -> &[Vec<usize>] {
        &self.levels
    }

    /// Member indices in configuration order.
    pub fn member_indices(&self) -> Vec<usize> {
        let mut all: Vec<usize> = self.levels.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    pub fn members(&self) -> Vec<Point> {
        let pts = self.config.points();
        self.member_indices().into_iter().map(|i| pts[i]).collect()
    }

    /// Greedy walk from the start: at each level move to the dominating member
    /// with the smallest (lowest) or largest (highest) `x2`.
    pub fn extremal(&self, side: Extremal) -> Polymer {
        let pts = self.config.points();
        let mut current = self.start;
        let mut visited = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let mut best: Option<Point> = None;
            for &i in level {
                let q = pts[i];
                if !current.precedes(&q) {
                    continue;
                }
                best = Some(match best {
                    None => q,
                    Some(b) => match side {
                        Extremal::Lowest if q.x2 < b.x2 || (q.x2 == b.x2 && q.x1 > b.x1) => q,
                        Extremal::Highest if q.x2 > b.x2 || (q.x2 == b.x2 && q.x1 < b.x1) => q,
                        _ => b,
                    },
                });
            }
            // Every member extends a maximal chain from any member one level
            // below that it dominates, so a successor always exists.
            let next = best.expect("maximizer level has a successor");
            visited.push(next);
            current = next;
        }
        Polymer {
            start: self.start,
            end: self.end,
            visited,
        }
    }

    /// All maximizers, or [`Error::CapExceeded`] once more than `cap` exist.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Polymer>> {
        let pts = self.config.points();
        let mut out = Vec::new();
        let mut path: Vec<Point> = Vec::with_capacity(self.levels.len());
        self.extend(pts, &mut path, &mut out, cap)?;
        Ok(out)
    }

    fn extend(&self, pts: &[Point], path: &mut Vec<Point>, out: &mut Vec<Polymer>, cap: usize) -> Result<()> {
        let depth = path.len();
        if depth == self.levels.len() {
            if out.len() == cap {
                return Err(Error::CapExceeded { cap });
            }
            out.push(Polymer {
                start: self.start,
                end: self.end,
                visited: path.clone(),
            });
            return Ok(());
        }
        let current = path.last().copied().unwrap_or(self.start);
        for &i in &self.levels[depth] {
            if current.precedes(&pts[i]) {
                path.push(pts[i]);
                self.extend(pts, path, out, cap)?;
                path.pop();
            }
        }
        Ok(())
    }
}

/// The lowest or highest maximizer from `s` to `e`.
pub fn extremal_maximizer(config: &PointConfiguration, s: Point, e: Point, side: Extremal) -> Result<Polymer> {
    Ok(Maximizers::new(config, s, e)?.extremal(side))
}

/// Every maximizer from `s` to `e`; more than `cap` of them is an error.
pub fn enumerate_maximizers(config: &PointConfiguration, s: Point, e: Point, cap: usize) -> Result<Vec<Polymer>> {
    Maximizers::new(config, s, e)?.enumerate(cap)
}
