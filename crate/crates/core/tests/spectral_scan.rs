//! Larger-`t` checks of the spectral evaluation: truncation, decay and the
//! rescaled moments.

use dlpp_core::spectral::{
    bessel_projection, bessel_projection_with_buffer, cdf_moments, cdf_table, LengthLaw, DEFAULT_BUFFER,
};

#[test]
fn doubling_the_buffer_leaves_the_cdf_unchanged() {
    let t = 20.0;
    let base = LengthLaw::with_buffer(t, 1, DEFAULT_BUFFER).unwrap();
    let wide = LengthLaw::with_buffer(t, 1, 2 * DEFAULT_BUFFER).unwrap();
    for a in 1..=base.window().hi + 1 {
        let (p, q) = (base.cdf(a).unwrap(), wide.cdf(a).unwrap());
        assert!((p - q).abs() < 1e-8, "a = {a}: {p} vs {q}");
    }
}

#[test]
fn kernel_decays_far_above_2t() {
    let t = 20.0;
    let b = bessel_projection(t).unwrap();
    let n = (4.0 * t).ceil() as i64;
    assert!(b.get(n, n).unwrap().abs() < 1e-10);
    let wide = bessel_projection_with_buffer(t, 2 * DEFAULT_BUFFER).unwrap();
    for m in [0i64, 20, 40, 45] {
        assert!((b.get(m, m).unwrap() - wide.get(m, m).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn projection_quality_at_t50() {
    let b = bessel_projection(50.0).unwrap();
    assert!(b.idempotency_defect() < 1e-8);
    for v in b.eigenvalues().unwrap() {
        assert!(v.abs() < 1e-8 || (v - 1.0).abs() < 1e-8, "{v}");
    }
}

#[test]
fn rescaled_moments_settle() {
    let m200 = cdf_moments(200.0).unwrap();
    assert!((m200.mass - 1.0).abs() < 1e-8);
    assert!((-2.1..=-1.5).contains(&m200.mean), "{m200:?}");
    for t in [50.0, 100.0, 400.0] {
        let m = cdf_moments(t).unwrap();
        assert!((m.mass - 1.0).abs() < 1e-8, "t = {t}: {m:?}");
        assert!(m.variance > 0.3 && m.variance < 2.0, "t = {t}: {m:?}");
        assert!(m.mean < -1.0 && m.mean > -2.5, "t = {t}: {m:?}");
    }
}

#[test]
fn table_is_a_distribution_function() {
    let table = cdf_table(30.0).unwrap();
    assert!(table.first().unwrap().1 < 1e-13);
    assert!((table.last().unwrap().1 - 1.0).abs() < 1e-12);
    assert!(table.windows(2).all(|w| w[1].0 == w[0].0 + 1 && w[1].1 >= w[0].1 - 1e-14));
}
