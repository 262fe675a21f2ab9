//! Monte Carlo trends of the experiment drivers on fixed seeds.

use dlpp_lab::experiments::{
    branching_experiment, density_experiment, fluctuation_experiment, section_profile, tail_shape_check,
    transversal_experiment, Section,
};
use dlpp_lab::ExperimentConfig;

const LADDER: [f64; 3] = [100.0, 200.0, 400.0];

fn quantile(mut xs: Vec<f64>, q: f64) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[((xs.len() - 1) as f64 * q).round() as usize]
}

#[test]
fn wide_separation_pulls_the_branch_point_toward_the_origin() {
    let cfg = ExperimentConfig {
        master_seed: 21,
        t_list: LADDER.to_vec(),
        replicas: 200,
        nu: 0.9,
        y: 1.0,
        ..Default::default()
    };
    let out = branching_experiment(&cfg).unwrap();
    assert!(out.diagnostics.is_empty());
    let per_t = |t: f64, scale: f64| -> Vec<f64> {
        out.records.iter().filter(|r| r.t == t).map(|r| r.d_origin / scale).collect()
    };
    let medians: Vec<f64> = LADDER.iter().map(|&t| quantile(per_t(t, t), 0.5)).collect();
    let p90: Vec<f64> = LADDER.iter().map(|&t| quantile(per_t(t, t.powf(0.9)), 0.9)).collect();
    println!("median d(0,J)/t {medians:?}, 90th percentile of d(0,J)/t^0.9 {p90:?}");
    assert!(medians.windows(2).all(|w| w[1] < w[0]));
    assert!(p90.iter().all(|&q| q <= 1.25 * p90[0]));
}

#[test]
fn branch_point_leaves_the_line_for_both_depths() {
    let cfg = ExperimentConfig {
        master_seed: 22,
        t_list: LADDER.to_vec(),
        replicas: 500,
        nu: 2.0 / 3.0,
        ..Default::default()
    };
    let out = branching_experiment(&cfg).unwrap();
    for mu in [0.5, 0.8] {
        let freq: Vec<(f64, f64)> = LADDER
            .iter()
            .map(|&t| {
                let rows: Vec<_> = out.records.iter().filter(|r| r.t == t).collect();
                let n = rows.len() as f64;
                let p = rows.iter().filter(|r| r.d_line <= t.powf(mu)).count() as f64 / n;
                (p, (p * (1.0 - p) / n).sqrt())
            })
            .collect();
        println!("mu = {mu}: {freq:?}");
        let inversions = freq.windows(2).filter(|w| w[1].0 > w[0].0).count();
        let within = freq
            .windows(2)
            .all(|w| w[1].0 <= w[0].0 + 2.0 * (w[0].1.powi(2) + w[1].1.powi(2)).sqrt());
        assert!(inversions <= 1 && within);
    }
}

#[test]
fn density_at_depth_half_exceeds_square_root() {
    let cfg = ExperimentConfig {
        master_seed: 23,
        t_list: vec![300.0],
        replicas: 100,
        mu: 0.5,
        ..Default::default()
    };
    let rows = density_experiment(&cfg).unwrap();
    let freq = rows.iter().filter(|r| r.count as f64 >= 300f64.sqrt()).count() as f64 / rows.len() as f64;
    println!("frequency of N >= t^0.5 at t = 300: {freq}");
    assert!(freq >= 0.9);
}

#[test]
fn counts_shrink_with_depth_at_fixed_seed() {
    let cfg = ExperimentConfig {
        master_seed: 24,
        t_list: vec![50.0, 150.0],
        replicas: 20,
        ..Default::default()
    };
    let ladder: Vec<Section> = [0.0, 0.2, 0.4, 0.6, 0.8, 0.95].iter().map(|&m| Section::Depth(m)).collect();
    for r in section_profile(&cfg, &ladder).unwrap() {
        assert!(r.counts.windows(2).all(|w| w[1] <= w[0]), "{r:?}");
        assert!(r.counts[0] >= 2);
    }
}

#[test]
fn length_variance_is_far_below_poisson() {
    let cfg = ExperimentConfig {
        master_seed: 25,
        t_list: vec![400.0],
        replicas: 200,
        ..Default::default()
    };
    let rep = &fluctuation_experiment(&cfg).unwrap()[0];
    println!("variance of L(400): {}", rep.raw_variance);
    assert!(rep.raw_variance < 800.0);
}

#[test]
fn tails_decay() {
    let cfg = ExperimentConfig {
        master_seed: 26,
        t_list: vec![100.0],
        replicas: 10_000,
        ..Default::default()
    };
    let rep = &tail_shape_check(&cfg).unwrap()[0];
    let at = |tau: f64| rep.points.iter().find(|p| (p.params.tau - tau).abs() < 1e-6).unwrap();
    for p in &rep.points {
        println!("tau {:.1}: upper {:.5} lower {:.5}", p.params.tau, p.upper, p.lower);
    }
    println!("slopes: upper {:?} lower {:?}", rep.upper_slope, rep.lower_slope);
    assert!(at(4.0).upper < at(2.0).upper);
    assert!(at(4.0).lower < at(2.0).lower);
    assert!(rep.points.windows(2).all(|w| w[1].upper <= w[0].upper && w[1].lower <= w[0].lower));
    assert!(rep.upper_slope.unwrap() < 0.0);
    assert!(rep.lower_slope.unwrap() < 0.0);
}

#[test]
fn transversal_deviation_is_geometric() {
    let cfg = ExperimentConfig {
        master_seed: 27,
        t_list: vec![50.0, 100.0],
        replicas: 20,
        ..Default::default()
    };
    for s in transversal_experiment(&cfg).unwrap() {
        assert!(s.deviations.iter().all(|&d| (0.0..=s.t * 2f64.sqrt()).contains(&d)));
    }
}
