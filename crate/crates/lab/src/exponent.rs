//! Power-law exponents by least squares on log-log data.

use crate::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope.
    pub stderr: f64,
}

/// Fits `log(statistic) = intercept + slope · log(t)`.
pub fn estimate_exponent(samples: &[(f64, f64)]) -> Result<Fit> {
    if let Some(&(t, s)) = samples.iter().find(|(t, s)| !(*t > 0.0 && *s > 0.0 && t.is_finite() && s.is_finite())) {
        return Err(LabError::Invalid(format!("non-positive sample (t = {t}, statistic = {s})")));
    }
    let mut ts: Vec<f64> = samples.iter().map(|s| s.0).collect();
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    if ts.len() < 3 {
        return Err(LabError::Invalid("need at least three distinct t values".into()));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok(Fit {
        slope,
        intercept,
        stderr,
    })
}

/// Per-`t` means of the statistic, in ascending `t`.
pub fn means_by_t(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64, usize)> = Vec::new();
    for (t, s) in sorted {
        match out.last_mut() {
            Some(last) if last.0 == t => {
                last.1 += s;
                last.2 += 1;
            }
            _ => out.push((t, s, 1)),
        }
    }
    out.into_iter().map(|(t, s, n)| (t, s / n as f64)).collect()
}
