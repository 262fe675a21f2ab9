//! Exact law of `L(t)`, the longest chain in `[0, t]²`, through the discrete
//! Bessel kernel.
//!
//! `H_t ψ(n) = −ψ(n+1) − ψ(n−1) + (n/t) ψ(n)` is truncated to a finite window
//! of `ℤ`, diagonalized, and `B_t` is taken as the projection onto its
//! non-positive spectrum. Then `P(L(t) < a) = det(1 − B_t)` restricted to
//! `[a, ∞)`.
//!
//! The spectrum of `H_t` on `ℤ` is exactly `ℤ/t`, so the cut is placed at
//! `1/(2t)`, halfway between the eigenvalues `0` and `1/t`.

use alloc::vec;
use alloc::vec::Vec;

use crate::math::{abs, cbrt, ceil, hypot, sqrt};
use crate::{Error, Result};

/// Padding added on both sides of the automatic window.
pub const DEFAULT_BUFFER: i64 = 50;

/// Closed integer interval `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexWindow {
    pub lo: i64,
    pub hi: i64,
}

impl IndexWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::OutOfRange("index window is empty"));
        }
        Ok(IndexWindow { lo, hi })
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }
}

/// `[−h, h]` with `h = ⌈2t + 12 t^{1/3}⌉ + buffer`.
///
/// The eigenvectors with eigenvalue `m/t` live on `n ∈ m ± (2t + O(t^{1/3}))`,
/// so the lower edge has to be as far out as the upper one to keep the
/// eigenvectors feeding rows near `2t` clear of the truncation.
pub fn auto_window(t: f64, buffer: i64) -> Result<IndexWindow> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange("t must be positive and finite"));
    }
    if buffer < 0 {
        return Err(Error::OutOfRange("window buffer must be non-negative"));
    }
    let h = ceil(2.0 * t + 12.0 * cbrt(t)) as i64 + buffer;
    IndexWindow::new(-h, h)
}

/// `H_t` restricted to a window: symmetric tridiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorSection {
    t: f64,
    window: IndexWindow,
    diagonal: Vec<f64>,
    offdiagonal: Vec<f64>,
}

pub fn build_section(t: f64, window: IndexWindow) -> Result<OperatorSection> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange("t must be positive and finite"));
    }
    if window.lo > window.hi {
        return Err(Error::OutOfRange("index window is empty"));
    }
    let n = window.len();
    Ok(OperatorSection {
        t,
        window,
        diagonal: (window.lo..=window.hi).map(|k| k as f64 / t).collect(),
        offdiagonal: vec![-1.0; n - 1],
    })
}

impl OperatorSection {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    pub fn offdiagonal(&self) -> &[f64] {
        &self.offdiagonal
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<f64> {
        let n = self.diagonal.len();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = self.diagonal[i];
            if i + 1 < n {
                a[i * n + i + 1] = self.offdiagonal[i];
                a[(i + 1) * n + i] = self.offdiagonal[i];
            }
        }
        a
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let mut d = self.diagonal.clone();
        let mut e = self.offdiagonal.clone();
        e.push(0.0);
        tql(&mut d, &mut e, &mut [], 0)?;
        d.sort_unstable_by(f64::total_cmp);
        Ok(d)
    }

    /// Projection onto eigenvalues below `1/(2t)`, evaluated on the rows and
    /// columns in `rows` only.
    pub fn projection(&self, rows: IndexWindow) -> Result<ProjectionKernel> {
        let rows = IndexWindow::new(rows.lo.max(self.window.lo), rows.hi.min(self.window.hi))?;
        let n = self.diagonal.len();
        let r = rows.len();
        let first = (rows.lo - self.window.lo) as usize;
        let mut d = self.diagonal.clone();
        let mut e = self.offdiagonal.clone();
        e.push(0.0);
        // Rotations act on columns, so each row of the eigenvector matrix
        // can be carried independently.
        let mut z = vec![0.0; r * n];
        for i in 0..r {
            z[i * n + first + i] = 1.0;
        }
        tql(&mut d, &mut e, &mut z, r)?;

        let cut = 0.5 / self.t;
        let keep: Vec<usize> = (0..n).filter(|&k| d[k] < cut).collect();
        let mut entries = vec![0.0; r * r];
        for i in 0..r {
            for j in i..r {
                let (zi, zj) = (&z[i * n..(i + 1) * n], &z[j * n..(j + 1) * n]);
                let s: f64 = keep.iter().map(|&k| zi[k] * zj[k]).sum();
                entries[i * r + j] = s;
                entries[j * r + i] = s;
            }
        }
        Ok(ProjectionKernel { window: rows, entries })
    }
}

/// Implicit QL on a symmetric tridiagonal matrix (`d` diagonal, `e[i]` the
/// entry between `i` and `i + 1`, `e[n − 1] = 0`). Eigenvalues replace `d`;
/// if `rows > 0`, `z` holds `rows` row vectors of length `n` that are
/// multiplied by the accumulated rotations.
fn tql(d: &mut [f64], e: &mut [f64], z: &mut [f64], rows: usize) -> Result<()> {
    let n = d.len();
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(abs(d[l]) + abs(e[l]));
        let mut m = l;
        while m < n - 1 && abs(e[m]) > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                let el1 = e[l + 1];
                let (mut s, mut s2) = (0.0, 0.0);
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    let h = c * p;
                    r = hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..rows {
                        let row = &mut z[k * n..(k + 1) * n];
                        let h = row[i + 1];
                        row[i + 1] = s * row[i] + c * h;
                        row[i] = c * row[i] - s * h;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if abs(e[l]) <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

/// Eigenvalues of a dense symmetric matrix (row-major, `n × n`), ascending.
pub fn symmetric_eigenvalues(a: &[f64], n: usize) -> Result<Vec<f64>> {
    if a.len() != n * n {
        return Err(Error::OutOfRange("matrix size does not match its dimension"));
    }
    let mut a = a.to_vec();
    // Householder reduction to tridiagonal form.
    let mut v = vec![0.0; n];
    let mut w = vec![0.0; n];
    for k in 0..n.saturating_sub(2) {
        let norm = sqrt((k + 1..n).map(|i| a[i * n + k] * a[i * n + k]).sum());
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0 > 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[i * n + k];
        }
        v[k + 1] -= alpha;
        let vn = sqrt((k + 1..n).map(|i| v[i] * v[i]).sum());
        if vn == 0.0 {
            continue;
        }
        for vi in v.iter_mut().skip(k + 1) {
            *vi /= vn;
        }
        for i in k + 1..n {
            w[i] = (k + 1..n).map(|j| a[i * n + j] * v[j]).sum();
        }
        let vw: f64 = (k + 1..n).map(|i| v[i] * w[i]).sum();
        for i in k + 1..n {
            w[i] -= vw * v[i];
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i * n + j] -= 2.0 * (v[i] * w[j] + w[i] * v[j]);
            }
        }
        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha;
        for i in k + 2..n {
            a[i * n + k] = 0.0;
            a[k * n + i] = 0.0;
        }
    }
    let mut d: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    let mut e: Vec<f64> = (0..n).map(|i| if i + 1 < n { a[(i + 1) * n + i] } else { 0.0 }).collect();
    if n > 0 {
        tql(&mut d, &mut e, &mut [], 0)?;
    }
    d.sort_unstable_by(f64::total_cmp);
    Ok(d)
}

/// Finite section of `B_t`: a dense symmetric matrix indexed by `window`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionKernel {
    window: IndexWindow,
    entries: Vec<f64>,
}

impl ProjectionKernel {
    pub fn window(&self) -> IndexWindow {
        self.window
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, m: i64, n: i64) -> Option<f64> {
        if !self.window.contains(m) || !self.window.contains(n) {
            return None;
        }
        let r = self.window.len();
        Some(self.entries[(m - self.window.lo) as usize * r + (n - self.window.lo) as usize])
    }

    /// `max |B² − B|`.
    pub fn idempotency_defect(&self) -> f64 {
        let r = self.window.len();
        let b = &self.entries;
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in i..r {
                let s: f64 = (0..r).map(|k| b[i * r + k] * b[k * r + j]).sum();
                worst = worst.max(abs(s - b[i * r + j]));
            }
        }
        worst
    }

    /// `max |B − Bᵀ|`.
    pub fn asymmetry(&self) -> f64 {
        let r = self.window.len();
        let mut worst: f64 = 0.0;
        for i in 0..r {
            for j in i + 1..r {
                worst = worst.max(abs(self.entries[i * r + j] - self.entries[j * r + i]));
            }
        }
        worst
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        symmetric_eigenvalues(&self.entries, self.window.len())
    }

    /// `det(1 − B)` on `[a, hi]`, where `hi` is the last row whose diagonal
    /// entry is not negligible.
    pub fn fredholm_det(&self, a: i64) -> f64 {
        let r = self.window.len();
        let from = (a.max(self.window.lo) - self.window.lo) as usize;
        let mut to = r;
        while to > from && self.entries[(to - 1) * r + to - 1] < 1e-30 {
            to -= 1;
        }
        let m = to.saturating_sub(from);
        if m == 0 {
            return 1.0;
        }
        let mut lu = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                let b = self.entries[(from + i) * r + from + j];
                lu[i * m + j] = if i == j { 1.0 - b } else { -b };
            }
        }
        lu_determinant(&mut lu, m)
    }
}

/// Determinant by Gaussian elimination with partial pivoting; `a` is
/// overwritten.
pub fn lu_determinant(a: &mut [f64], n: usize) -> f64 {
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            if abs(a[i * n + k]) > abs(a[piv * n + k]) {
                piv = i;
            }
        }
        if a[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        let pivot = a[k * n + k];
        det *= pivot;
        for i in k + 1..n {
            let f = a[i * n + k] / pivot;
            if f != 0.0 {
                for j in k + 1..n {
                    a[i * n + j] -= f * a[k * n + j];
                }
            }
        }
    }
    det
}

/// `B_t` on the automatic window with the default buffer.
pub fn bessel_projection(t: f64) -> Result<ProjectionKernel> {
    bessel_projection_with_buffer(t, DEFAULT_BUFFER)
}

pub fn bessel_projection_with_buffer(t: f64, buffer: i64) -> Result<ProjectionKernel> {
    let window = auto_window(t, buffer)?;
    build_section(t, window)?.projection(window)
}

/// Value of the distribution function together with a flag for arguments
/// past the window, where the remaining mass is below resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CdfValue {
    pub p: f64,
    pub beyond_window: bool,
}

/// `P(L(t) < a)` for all `a ≥ from`, from one restricted kernel.
#[derive(Debug, Clone)]
pub struct LengthLaw {
    t: f64,
    window: IndexWindow,
    kernel: ProjectionKernel,
}

impl LengthLaw {
    pub fn new(t: f64, from: i64) -> Result<Self> {
        Self::with_buffer(t, from, DEFAULT_BUFFER)
    }

    pub fn with_buffer(t: f64, from: i64, buffer: i64) -> Result<Self> {
        let window = auto_window(t, buffer)?;
        let section = build_section(t, window)?;
        let lo = from.max(1).min(window.hi);
        let kernel = section.projection(IndexWindow::new(lo, window.hi)?)?;
        Ok(LengthLaw { t, window, kernel })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn window(&self) -> IndexWindow {
        self.window
    }

    /// Smallest `a` this law can evaluate (besides `a ≤ 0`).
    pub fn first(&self) -> i64 {
        self.kernel.window.lo
    }

    pub fn evaluate(&self, a: i64) -> Result<CdfValue> {
        if a <= 0 {
            return Ok(CdfValue { p: 0.0, beyond_window: false });
        }
        if a > self.window.hi {
            return Ok(CdfValue { p: 1.0, beyond_window: true });
        }
        if a < self.kernel.window.lo {
            return Err(Error::OutOfRange("argument below the precomputed rows"));
        }
        let p = self.kernel.fredholm_det(a).clamp(0.0, 1.0);
        Ok(CdfValue { p, beyond_window: false })
    }

    pub fn cdf(&self, a: i64) -> Result<f64> {
        Ok(self.evaluate(a)?.p)
    }
}

/// `P(L(t) < a)`.
pub fn length_cdf(t: f64, a: i64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::OutOfRange("t must be positive and finite"));
    }
    if a <= 0 {
        return Ok(0.0);
    }
    LengthLaw::new(t, a)?.cdf(a)
}

/// Moments of `(L(t) − 2t)/t^{1/3}` and the total mass they were computed
/// from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
    pub mass: f64,
}

/// Tail level below which the distribution function is treated as zero.
const LOWER_TAIL: f64 = 1e-14;

pub fn cdf_moments(t: f64) -> Result<Moments> {
    let (_, pmf) = length_pmf(t)?;
    let scale = cbrt(t);
    let mass: f64 = pmf.iter().map(|&(_, p)| p).sum();
    let mean = pmf.iter().map(|&(a, p)| p * (a as f64 - 2.0 * t) / scale).sum::<f64>() / mass;
    let variance = pmf
        .iter()
        .map(|&(a, p)| {
            let x = (a as f64 - 2.0 * t) / scale - mean;
            p * x * x
        })
        .sum::<f64>()
        / mass;
    Ok(Moments { mean, variance, mass })
}

/// `(a, P(L(t) < a))` for `a` from the lower tail up to one past the window.
pub fn cdf_table(t: f64) -> Result<Vec<(i64, f64)>> {
    Ok(length_pmf(t)?.0)
}

/// Distribution function on its effective support and the point masses
/// `P(L(t) = a)`.
fn length_pmf(t: f64) -> Result<(Vec<(i64, f64)>, Vec<(i64, f64)>)> {
    if !(t >= 1.0 && t.is_finite()) {
        return Err(Error::OutOfRange("moments need t >= 1"));
    }
    let mut from = (2.0 * t - 9.0 * cbrt(t)) as i64 - 5;
    let law = loop {
        let law = LengthLaw::new(t, from)?;
        if law.first() <= 1 || law.cdf(law.first())? < LOWER_TAIL {
            break law;
        }
        from -= (4.0 * cbrt(t)) as i64 + 1;
    };
    let mut cdf: Vec<(i64, f64)> = Vec::new();
    let top = law.window().hi + 1;
    let mut a = top;
    loop {
        let p = law.cdf(a)?;
        cdf.push((a, p));
        if p < LOWER_TAIL || a <= 0 || a <= law.first() {
            break;
        }
        a -= 1;
    }
    cdf.reverse();
    let pmf = cdf.windows(2).map(|w| (w[0].0, w[1].1 - w[0].1)).collect();
    Ok((cdf, pmf))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `J_k(x)` for `k = 0..=kmax` by downward recurrence, normalized with
    /// `J_0 + 2 Σ J_{2k} = 1`.
    fn bessel_j(kmax: usize, x: f64) -> Vec<f64> {
        let start = kmax + 40 + (2.0 * x) as usize;
        let mut j = vec![0.0; start + 2];
        j[start] = 1e-300;
        for k in (1..=start).rev() {
            j[k - 1] = 2.0 * k as f64 / x * j[k] - j[k + 1];
            if abs(j[k - 1]) > 1e250 {
                for v in j.iter_mut() {
                    *v *= 1e-250;
                }
            }
        }
        let norm = j[0] + 2.0 * (1..=start / 2).map(|k| j[2 * k]).sum::<f64>();
        j.truncate(kmax + 1);
        j.iter().map(|v| v / norm).collect()
    }

    #[test]
    fn section_examples() {
        let s = build_section(1.0, IndexWindow::new(0, 2).unwrap()).unwrap();
        assert_eq!(s.diagonal(), &[0.0, 1.0, 2.0]);
        assert_eq!(s.offdiagonal(), &[-1.0, -1.0]);
        let one = build_section(4.0, IndexWindow::new(3, 3).unwrap()).unwrap();
        assert_eq!(one.to_dense(), vec![0.75]);
        let d = build_section(2.5, IndexWindow::new(-4, 6).unwrap()).unwrap().to_dense();
        for i in 0..11 {
            for j in 0..11 {
                assert_eq!(d[i * 11 + j], d[j * 11 + i]);
            }
        }
        assert!(IndexWindow::new(3, 2).is_err());
        assert!(build_section(0.0, IndexWindow::new(0, 1).unwrap()).is_err());
    }

    #[test]
    fn tridiagonal_eigenvalues_match_dense_reduction() {
        let s = build_section(3.0, IndexWindow::new(-7, 9).unwrap()).unwrap();
        let a = s.eigenvalues().unwrap();
        let b = symmetric_eigenvalues(&s.to_dense(), 17).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!(abs(x - y) < 1e-12, "{x} {y}");
        }
        // Trace is preserved.
        let trace: f64 = s.diagonal().iter().sum();
        assert!(abs(a.iter().sum::<f64>() - trace) < 1e-10);
    }

    #[test]
    fn interior_spectrum_is_integer_over_t() {
        let t = 5.0;
        let s = build_section(t, auto_window(t, DEFAULT_BUFFER).unwrap()).unwrap();
        let ev = s.eigenvalues().unwrap();
        for m in -20i64..=20 {
            let target = m as f64 / t;
            let nearest = ev.iter().map(|v| abs(v - target)).fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-12, "m = {m}: {nearest}");
        }
    }

    #[test]
    fn kernel_matches_bessel_sums() {
        let t = 7.5;
        let b = bessel_projection(t).unwrap();
        let j = bessel_j(200, 2.0 * t);
        for m in [-3i64, 0, 1, 5, 12, 15, 20, 30] {
            for n in [0i64, 2, 9, 14, 15, 25] {
                let oracle: f64 = (0..150)
                    .map(|s| {
                        let jj = |k: i64| {
                            if k >= 0 {
                                j[k as usize]
                            } else if k % 2 == 0 {
                                j[(-k) as usize]
                            } else {
                                -j[(-k) as usize]
                            }
                        };
                        jj(m + s) * jj(n + s)
                    })
                    .sum();
                let got = b.get(m, n).unwrap();
                assert!(abs(got - oracle) < 1e-10, "B({m},{n}) = {got}, oracle {oracle}");
            }
        }
    }

    #[test]
    fn projection_properties() {
        let b = bessel_projection(6.0).unwrap();
        assert!(b.asymmetry() < 1e-12);
        assert!(b.idempotency_defect() < 1e-8);
        for v in b.eigenvalues().unwrap() {
            assert!(abs(v) < 1e-8 || abs(v - 1.0) < 1e-8, "{v}");
        }
    }

    #[test]
    fn restricted_rows_agree_with_full_kernel() {
        let t = 9.0;
        let w = auto_window(t, DEFAULT_BUFFER).unwrap();
        let s = build_section(t, w).unwrap();
        let full = s.projection(w).unwrap();
        let part = s.projection(IndexWindow::new(10, 30).unwrap()).unwrap();
        for m in 10..=30 {
            for n in 10..=30 {
                assert!(abs(full.get(m, n).unwrap() - part.get(m, n).unwrap()) < 1e-13);
            }
        }
    }

    #[test]
    fn void_probability() {
        for t in [0.1, 0.3, 0.5] {
            let p = length_cdf(t, 1).unwrap();
            assert!(abs(p - libm::exp(-t * t)) < 1e-6, "t = {t}: {p}");
        }
        assert!(abs(length_cdf(0.3, 1).unwrap() - 0.9139) < 1e-4);
    }

    #[test]
    fn cdf_edges() {
        assert_eq!(length_cdf(3.0, 0).unwrap(), 0.0);
        assert_eq!(length_cdf(3.0, -4).unwrap(), 0.0);
        let law = LengthLaw::new(3.0, 1).unwrap();
        let past = law.evaluate(law.window().hi + 1).unwrap();
        assert_eq!(past, CdfValue { p: 1.0, beyond_window: true });
        let mut prev = 0.0;
        for a in 1..=law.window().hi + 1 {
            let p = law.cdf(a).unwrap();
            assert!((0.0..=1.0).contains(&p));
            assert!(p >= prev - 1e-14);
            prev = p;
        }
        assert!(abs(prev - 1.0) < 1e-12);
        assert!(length_cdf(-1.0, 3).is_err());
    }

    #[test]
    fn cdf_matches_bessel_determinant() {
        let t = 4.0;
        let j = bessel_j(200, 2.0 * t);
        for a in [3i64, 6, 8, 11] {
            let size = 60;
            let mut m = vec![0.0; size * size];
            for i in 0..size {
                for k in 0..size {
                    let b: f64 = (0..60).map(|s| j[a as usize + i + s] * j[a as usize + k + s]).sum();
                    m[i * size + k] = if i == k { 1.0 - b } else { -b };
                }
            }
            let oracle = lu_determinant(&mut m, size);
            let got = length_cdf(t, a).unwrap();
            assert!(abs(got - oracle) < 1e-10, "a = {a}: {got} vs {oracle}");
        }
    }

    #[test]
    fn lu_determinant_small_cases() {
        let mut a = [2.0, 1.0, 1.0, 3.0];
        assert!(abs(lu_determinant(&mut a, 2) - 5.0) < 1e-14);
        let mut p = [0.0, 1.0, 1.0, 0.0];
        assert_eq!(lu_determinant(&mut p, 2), -1.0);
        let mut z = [1.0, 2.0, 2.0, 4.0];
        assert_eq!(lu_determinant(&mut z, 2), 0.0);
    }

    #[test]
    fn moments_are_normalized() {
        let m = cdf_moments(10.0).unwrap();
        assert!(abs(m.mass - 1.0) < 1e-8, "{m:?}");
        assert!(m.variance > 0.0);
        assert!(cdf_moments(0.5).is_err());
    }
}
