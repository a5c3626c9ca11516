//! Adaptive quadrature and integration over convex polygons.
//!
//! Inner (y) integrals use exact antiderivatives whenever the integrand
//! provides them; the outer (x) integral is adaptive Simpson with
//! subdivision at supplied breakpoints, targeting a relative error of
//! 1e-9 by default.

use crate::error::{Error, Result};
use crate::geometry::ConvexPolygon;

pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Adaptive Simpson on `[a, b]`. `scale` is an a-priori magnitude used
/// to turn the relative tolerance into an absolute one (pass 0.0 to use
/// the first coarse estimate).
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64, scale: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let tol = rel_tol * scale.abs().max(whole.abs()).max(1e-300);
    let mut achieved = 0.0f64;
    let v = simpson_rec(f, a, b, fa, fm, fb, whole, tol, 52, &mut achieved);
    if achieved > tol.max(rel_tol * v.abs()) * 4.0 {
        return Err(Error::QuadratureNonConvergence { achieved, requested: tol });
    }
    Ok(v)
}

#[allow(clippy::too_many_arguments)]
fn simpson_rec<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
    achieved: &mut f64,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        *achieved = achieved.max(delta.abs() / 15.0);
        return left + right + delta / 15.0;
    }
    simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, achieved)
        + simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, achieved)
}

/// Adaptive integration of a piecewise-smooth function with known
/// breakpoints; the interval is split at every breakpoint first.
pub fn integrate_piecewise<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&x| x > lo && x < hi).collect();
    cuts.push(lo);
    cuts.push(hi);
    cuts.sort_by(|p, q| p.partial_cmp(q).unwrap());
    cuts.dedup();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], rel_tol, 0.0)?;
    }
    Ok(sign * total)
}

/// One x-monotone slice of a convex polygon: between `x0` and `x1` the
/// region is `{ (x, y) : bot(x) <= y <= top(x) }` with affine bounds.
#[derive(Clone, Copy, Debug)]
pub struct Slice {
    pub x0: f64,
    pub x1: f64,
    /// bottom bound `y = bot_m * x + bot_c`
    pub bot_m: f64,
    pub bot_c: f64,
    /// top bound `y = top_m * x + top_c`
    pub top_m: f64,
    pub top_c: f64,
}

impl Slice {
    pub fn bot(&self, x: f64) -> f64 {
        self.bot_m * x + self.bot_c
    }
    pub fn top(&self, x: f64) -> f64 {
        self.top_m * x + self.top_c
    }
}

/// Decompose a convex polygon into x-monotone slices with affine
/// top/bottom bounds.
pub fn polygon_slices(poly: &ConvexPolygon) -> Vec<Slice> {
    if poly.is_empty() {
        return Vec::new();
    }
    let mut xs: Vec<f64> = poly.vertices.iter().map(|p| p.x).collect();
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (a.abs().max(b.abs()).max(1.0)));
    let n = poly.vertices.len();
    let mut slices = Vec::new();
    for w in xs.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        if x1 - x0 <= 0.0 {
            continue;
        }
        let xm = 0.5 * (x0 + x1);
        // edges spanning xm
        let mut lines: Vec<(f64, f64)> = Vec::with_capacity(2);
        for i in 0..n {
            let a = poly.vertices[i];
            let b = poly.vertices[(i + 1) % n];
            let (xa, xb) = (a.x.min(b.x), a.x.max(b.x));
            if xa <= xm && xm <= xb && (b.x - a.x).abs() > 1e-300 {
                let m = (b.y - a.y) / (b.x - a.x);
                let c = a.y - m * a.x;
                lines.push((m, c));
            }
        }
        if lines.len() < 2 {
            continue;
        }
        lines.sort_by(|p, q| {
            let yp = p.0 * xm + p.1;
            let yq = q.0 * xm + q.1;
            yp.partial_cmp(&yq).unwrap()
        });
        let bot = lines[0];
        let top = lines[lines.len() - 1];
        slices.push(Slice { x0, x1, bot_m: bot.0, bot_c: bot.1, top_m: top.0, top_c: top.1 });
    }
    slices
}

/// Integrate `f(x, y)` over a convex polygon. `inner` must return the
/// exact inner integral `∫_{y0}^{y1} f(x, y) dy`; `x_breaks` lists
/// x-values where the integrand is non-smooth.
pub fn integrate_polygon<G: Fn(f64, f64, f64) -> f64>(
    poly: &ConvexPolygon,
    inner: &G,
    x_breaks: &[f64],
    rel_tol: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for s in polygon_slices(poly) {
        let g = |x: f64| inner(x, s.bot(x), s.top(x));
        total += integrate_piecewise(&g, s.x0, s.x1, x_breaks, rel_tol)?;
    }
    Ok(total)
}
