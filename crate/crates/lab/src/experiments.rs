//! Replicated experiments on sampled Poisson fields.
//!
//! Every replica is keyed by its position `(t index, replica index)` in the
//! configuration and draws its seed from that key, and results are collected
//! in key order, so output does not depend on the number of workers.

use dlpp_core::chains::{extremal_maximizer, max_chain_length, Extremal};
use dlpp_core::geometry::dist_to_line;
use dlpp_core::network::{build_network, NetworkOptions, Rooted};
use dlpp_core::sampling::{derive_seed, sample_rect, sample_triangle, SeedStream};
use dlpp_core::spectral::{cdf_table, LengthLaw};
use dlpp_core::{LineUt, Point};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Mode};
use crate::exponent::{estimate_exponent, Fit};
use crate::{LabError, Result};

/// Seed of replica `replica` at the `t_index`-th entry of the t list.
pub fn replica_seed(master: u64, t_index: usize, replica: usize) -> u64 {
    derive_seed(SeedStream::new(master, ((t_index as u64) << 32) | replica as u64))
}

#[derive(Debug, Clone, Copy)]
struct Task {
    t: f64,
    seed: u64,
}

fn tasks(cfg: &ExperimentConfig) -> Vec<Task> {
    cfg.t_list
        .iter()
        .enumerate()
        .flat_map(|(i, &t)| {
            (0..cfg.replicas).map(move |r| Task {
                t,
                seed: replica_seed(cfg.master_seed, i, r),
            })
        })
        .collect()
}

/// Runs `f` on every replica, in parallel, returning results in task order.
fn run<R, F>(cfg: &ExperimentConfig, f: F) -> Result<Vec<R>>
where
    R: Send,
    F: Fn(Task) -> Result<R> + Sync,
{
    cfg.validate()?;
    let work = tasks(cfg);
    let go = || work.par_iter().map(|&task| f(task)).collect::<Result<Vec<R>>>();
    match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| LabError::Invalid(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    }
}

/// Records plus per-replica messages for replicas that were skipped.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome<R> {
    pub records: Vec<R>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchingRecord {
    pub t: f64,
    pub nu: f64,
    pub y: f64,
    pub mode: Mode,
    /// Distance from the origin to the last branching point.
    pub d_origin: f64,
    /// Distance from the last branching point to `U_t`.
    pub d_line: f64,
    pub seed: u64,
}

/// Last branching point of the maximizers to `E₁ = (t, t)` and
/// `E₂ = E₁ + y t^ν (−1, 1)`, per replica.
pub fn branching_experiment(cfg: &ExperimentConfig) -> Result<Outcome<BranchingRecord>> {
    let rows = run(cfg, |task| {
        let t = task.t;
        let shift = cfg.y * t.powf(cfg.nu);
        if shift.abs() >= t {
            return Ok(Err(format!(
                "t = {t}, seed = {}: |y t^nu| = {} is not below t, second endpoint leaves U_t",
                task.seed,
                shift.abs()
            )));
        }
        let config = sample_triangle(t, task.seed)?;
        let e1 = Point { x1: t, x2: t };
        let e2 = Point {
            x1: t - shift,
            x2: t + shift,
        };
        let j = Rooted::new(&config).last_intersection(e1, e2, cfg.mode.into())?;
        Ok(Ok(BranchingRecord {
            t,
            nu: cfg.nu,
            y: cfg.y,
            mode: cfg.mode,
            d_origin: j.location.norm(),
            d_line: dist_to_line(j.location, LineUt::new(t)?),
            seed: task.seed,
        }))
    })?;
    let mut out = Outcome {
        records: Vec::new(),
        diagnostics: Vec::new(),
    };
    for row in rows {
        match row {
            Ok(r) => out.records.push(r),
            Err(m) => out.diagnostics.push(m),
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityRecord {
    pub t: f64,
    pub mu: f64,
    /// `N_t(t − t^µ)`.
    pub count: usize,
    pub seed: u64,
}

/// A line `U_s` at which the network is cut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Section {
    /// `s = t − t^µ`.
    Depth(f64),
    /// `s = c t`.
    Fraction(f64),
}

impl Section {
    pub fn s(self, t: f64) -> f64 {
        match self {
            Section::Depth(mu) => (t - t.powf(mu)).max(0.0),
            Section::Fraction(c) => c * t,
        }
    }
}

/// Crossing counts of one replica's network at several sections.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionCounts {
    pub t: f64,
    pub seed: u64,
    pub counts: Vec<usize>,
}

/// Builds one network per replica and counts its crossings at each section.
pub fn section_profile(cfg: &ExperimentConfig, sections: &[Section]) -> Result<Vec<SectionCounts>> {
    for s in sections {
        let ok = match *s {
            Section::Depth(mu) => (0.0..1.0).contains(&mu),
            Section::Fraction(c) => (0.0..=1.0).contains(&c),
        };
        if !ok {
            return Err(LabError::Invalid(format!("section {s:?} out of range")));
        }
    }
    let options = NetworkOptions {
        origin_apexes: cfg.origin_apexes,
    };
    run(cfg, |task| {
        let config = sample_triangle(task.t, task.seed)?;
        let net = build_network(&config, task.t, options)?;
        let cuts = net.cross_sections();
        let counts = sections
            .iter()
            .map(|s| cuts.count(s.s(task.t)))
            .collect::<dlpp_core::Result<Vec<usize>>>()?;
        Ok(SectionCounts {
            t: task.t,
            seed: task.seed,
            counts,
        })
    })
}

/// `N_t(t − t^µ)` per replica.
pub fn density_experiment(cfg: &ExperimentConfig) -> Result<Vec<DensityRecord>> {
    Ok(section_profile(cfg, &[Section::Depth(cfg.mu)])?
        .into_iter()
        .map(|r| DensityRecord {
            t: r.t,
            mu: cfg.mu,
            count: r.counts[0],
            seed: r.seed,
        })
        .collect())
}

/// Largest distance `|x1 − x2|/√2` of a path vertex from the diagonal.
pub fn diagonal_deviation(vertices: impl Iterator<Item = Point>) -> f64 {
    vertices
        .map(|p| (p.x1 - p.x2).abs() / std::f64::consts::SQRT_2)
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransversalSummary {
    pub t: f64,
    pub mean: f64,
    pub stderr: f64,
    pub deviations: Vec<f64>,
}

/// Diagonal deviation of the lowest maximizer from the origin to `(t, t)`.
pub fn transversal_experiment(cfg: &ExperimentConfig) -> Result<Vec<TransversalSummary>> {
    let rows = run(cfg, |task| {
        let t = task.t;
        let e = Point { x1: t, x2: t };
        let config = sample_rect(Point::ORIGIN, e, 1.0, task.seed)?;
        let path = extremal_maximizer(&config, Point::ORIGIN, e, Extremal::Lowest)?;
        Ok((t, diagonal_deviation(path.vertices())))
    })?;
    Ok(group_by_t(cfg, &rows)
        .into_iter()
        .map(|(t, deviations)| {
            let (mean, stderr) = mean_stderr(&deviations);
            TransversalSummary {
                t,
                mean,
                stderr,
                deviations,
            }
        })
        .collect())
}

fn group_by_t(cfg: &ExperimentConfig, rows: &[(f64, f64)]) -> Vec<(f64, Vec<f64>)> {
    rows.chunks(cfg.replicas)
        .map(|chunk| (chunk[0].0, chunk.iter().map(|r| r.1).collect()))
        .collect()
}

/// Sample mean and its standard error.
pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Longest chain from the origin to `(t, t)` per replica.
pub fn length_samples(cfg: &ExperimentConfig) -> Result<Vec<(f64, u64, usize)>> {
    run(cfg, |task| {
        let e = Point {
            x1: task.t,
            x2: task.t,
        };
        let config = sample_rect(Point::ORIGIN, e, 1.0, task.seed)?;
        Ok((task.t, task.seed, max_chain_length(&config, Point::ORIGIN, e)?))
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct FluctuationReport {
    pub t: f64,
    /// `(L(t) − 2t)/t^{1/3}` per replica.
    pub rescaled: Vec<f64>,
    pub mean: f64,
    pub stderr: f64,
    /// Sample variance of `L(t)` itself.
    pub raw_variance: f64,
    /// Kolmogorov–Smirnov distance to the exact law.
    pub ks: f64,
}

/// Empirical law of the rescaled length against the spectral distribution
/// function. Needs `t ≥ 1`.
pub fn fluctuation_experiment(cfg: &ExperimentConfig) -> Result<Vec<FluctuationReport>> {
    let samples = length_samples(cfg)?;
    let mut out = Vec::new();
    for chunk in samples.chunks(cfg.replicas) {
        let t = chunk[0].0;
        let lengths: Vec<usize> = chunk.iter().map(|r| r.2).collect();
        let scale = t.cbrt();
        let rescaled: Vec<f64> = lengths.iter().map(|&l| (l as f64 - 2.0 * t) / scale).collect();
        let (mean, stderr) = mean_stderr(&rescaled);
        let raw: Vec<f64> = lengths.iter().map(|&l| l as f64).collect();
        let raw_variance = mean_stderr(&raw).1.powi(2) * raw.len() as f64;
        out.push(FluctuationReport {
            t,
            rescaled,
            mean,
            stderr,
            raw_variance,
            ks: ks_distance(t, &lengths)?,
        });
    }
    Ok(out)
}

/// `sup_a |F_n(a) − P(L(t) ≤ a)|` over integers `a`; both are step
/// functions with jumps at integers only.
pub fn ks_distance(t: f64, lengths: &[usize]) -> Result<f64> {
    let table = if t >= 1.0 {
        cdf_table(t)?
    } else {
        let law = LengthLaw::new(t, 1)?;
        (1..=law.window().hi + 1).map(|a| law.cdf(a).map(|p| (a, p))).collect::<dlpp_core::Result<_>>()?
    };
    let below = |a: i64| {
        // P(L < a), with the table covering the whole effective support.
        match table.binary_search_by_key(&a, |r| r.0) {
            Ok(i) => table[i].1,
            Err(0) => 0.0,
            Err(_) => 1.0,
        }
    };
    let mut sorted = lengths.to_vec();
    sorted.sort_unstable();
    let n = sorted.len() as f64;
    let top = (*sorted.last().unwrap_or(&0) as i64).max(table.last().map_or(0, |r| r.0));
    let mut worst: f64 = 0.0;
    let mut i = 0;
    for a in 0..=top {
        while i < sorted.len() && sorted[i] as i64 <= a {
            i += 1;
        }
        worst = worst.max((i as f64 / n - below(a + 1)).abs());
    }
    Ok(worst)
}

/// Deviation `n` from `2√a` and its rescaled size `τ = n (√a + n/2)^{−1/3}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailParams {
    pub area: f64,
    pub n: f64,
    pub tau: f64,
}

impl TailParams {
    pub fn new(area: f64, n: f64) -> Result<Self> {
        if !(area > 0.0) || !(n >= 0.0) {
            return Err(LabError::Invalid("tail parameters need area > 0 and n >= 0".into()));
        }
        let tau = n * (area.sqrt() + n / 2.0).powf(-1.0 / 3.0);
        Ok(TailParams { area, n, tau })
    }

    /// The `n` with the given `τ`; `τ` is increasing in `n`.
    pub fn from_tau(area: f64, tau: f64) -> Result<Self> {
        if !(tau >= 0.0 && tau.is_finite()) {
            return Err(LabError::Invalid("tau must be non-negative".into()));
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        while Self::new(area, hi)?.tau < tau {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if Self::new(area, mid)?.tau < tau {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Self::new(area, 0.5 * (lo + hi))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailPoint {
    pub params: TailParams,
    /// Frequency of `L ≥ 2√a + n`.
    pub upper: f64,
    /// Frequency of `L ≤ 2√a − n`.
    pub lower: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailReport {
    pub t: f64,
    pub points: Vec<TailPoint>,
    /// Slope of log-frequency against `τ^{3/2}`, when at least two
    /// frequencies are positive.
    pub upper_slope: Option<f64>,
    /// Slope of log-frequency against `τ³`.
    pub lower_slope: Option<f64>,
}

pub const TAIL_TAUS: [f64; 8] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0];

/// Upper and lower tail frequencies of `L(t)` on the square `[0, t]²`
/// (area `t²`) over a grid of `τ`.
pub fn tail_shape_check(cfg: &ExperimentConfig) -> Result<Vec<TailReport>> {
    let samples = length_samples(cfg)?;
    let mut out = Vec::new();
    for chunk in samples.chunks(cfg.replicas) {
        let t = chunk[0].0;
        let area = t * t;
        let m = chunk.len() as f64;
        let mut points = Vec::new();
        for &tau in &TAIL_TAUS {
            let params = TailParams::from_tau(area, tau)?;
            let centre = 2.0 * area.sqrt();
            let upper = chunk.iter().filter(|r| r.2 as f64 >= centre + params.n).count() as f64 / m;
            let lower = chunk.iter().filter(|r| r.2 as f64 <= centre - params.n).count() as f64 / m;
            points.push(TailPoint { params, upper, lower });
        }
        let slope = |power: f64, pick: fn(&TailPoint) -> f64| {
            let xy: Vec<(f64, f64)> = points
                .iter()
                .filter(|p| pick(p) > 0.0)
                .map(|p| (p.params.tau.powf(power), pick(p).ln()))
                .collect();
            linear_slope(&xy)
        };
        let upper_slope = slope(1.5, |p| p.upper);
        let lower_slope = slope(3.0, |p| p.lower);
        out.push(TailReport {
            t,
            points,
            upper_slope,
            lower_slope,
        });
    }
    Ok(out)
}

fn linear_slope(xy: &[(f64, f64)]) -> Option<f64> {
    if xy.len() < 2 {
        return None;
    }
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

/// Exponent of the per-`t` mean of a positive statistic.
pub fn fit_means(rows: &[(f64, f64)]) -> Result<Fit> {
    estimate_exponent(&crate::exponent::means_by_t(rows))
}
