//! SVG drawing of a maximizer network in rotated coordinates
//! `u = (x1 + x2)/2t` (along the diagonal) and `v = (x2 − x1)/2t`.

use std::fmt::Write as _;

use dlpp_core::network::MaximizerNetwork;
use dlpp_core::Point;

use crate::{LabError, Result};

/// Visible rectangle `[u_min, u_max] × [v_min, v_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub u_min: f64,
    pub u_max: f64,
    pub v_min: f64,
    pub v_max: f64,
}

impl Viewport {
    pub fn new(u_min: f64, u_max: f64, v_min: f64, v_max: f64) -> Result<Self> {
        let ok = [u_min, u_max, v_min, v_max].iter().all(|x| x.is_finite()) && u_min < u_max && v_min < v_max;
        if !ok {
            return Err(LabError::Invalid("viewport needs u_min < u_max and v_min < v_max".into()));
        }
        Ok(Viewport {
            u_min,
            u_max,
            v_min,
            v_max,
        })
    }

    /// The whole triangle below `U_t`.
    pub fn full() -> Self {
        Viewport {
            u_min: 0.0,
            u_max: 1.0,
            v_min: -1.0,
            v_max: 1.0,
        }
    }
}

impl std::str::FromStr for Viewport {
    type Err = LabError;

    /// `u_min,u_max,v_min,v_max`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<f64> = s
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| LabError::Invalid(format!("bad viewport {s:?}")))?;
        match parts[..] {
            [a, b, c, d] => Viewport::new(a, b, c, d),
            _ => Err(LabError::Invalid(format!("viewport needs four numbers, got {s:?}"))),
        }
    }
}

fn rotate(p: Point, t: f64) -> (f64, f64) {
    ((p.x1 + p.x2) / (2.0 * t), (p.x2 - p.x1) / (2.0 * t))
}

/// Liang–Barsky clipping of the segment `a → b`.
fn clip(a: (f64, f64), b: (f64, f64), vp: &Viewport) -> Option<((f64, f64), (f64, f64))> {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let (mut t0, mut t1) = (0.0f64, 1.0f64);
    for (p, q) in [
        (-dx, a.0 - vp.u_min),
        (dx, vp.u_max - a.0),
        (-dy, a.1 - vp.v_min),
        (dy, vp.v_max - a.1),
    ] {
        if p == 0.0 {
            if q < 0.0 {
                return None;
            }
        } else {
            let r = q / p;
            if p < 0.0 {
                t0 = t0.max(r);
            } else {
                t1 = t1.min(r);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    Some(((a.0 + t0 * dx, a.1 + t0 * dy), (a.0 + t1 * dx, a.1 + t1 * dy)))
}

/// All segments and apex rays of `net` inside `viewport`, `width` pixels
/// wide. The diagonal runs left to right.
pub fn render_svg(net: &MaximizerNetwork, viewport: Viewport, width: u32) -> String {
    let w = width.max(1) as f64;
    let scale = w / (viewport.u_max - viewport.u_min);
    let h = ((viewport.v_max - viewport.v_min) * scale).round().max(1.0);
    let px = |(u, v): (f64, f64)| ((u - viewport.u_min) * scale, (viewport.v_max - v) * scale);

    let mut path = String::new();
    for (p, q, _) in net.edges() {
        if let Some((a, b)) = clip(rotate(p, net.t()), rotate(q, net.t()), &viewport) {
            let (a, b) = (px(a), px(b));
            let _ = write!(path, "M{:.2} {:.2}L{:.2} {:.2}", a.0, a.1, b.0, b.1);
        }
    }
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    if !path.is_empty() {
        let _ = writeln!(
            svg,
            r#"<path d="{path}" fill="none" stroke="black" stroke-width="0.4" stroke-linecap="round"/>"#
        );
    }
    svg.push_str("</svg>\n");
    svg
}
