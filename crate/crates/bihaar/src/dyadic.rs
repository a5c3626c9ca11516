//! Shifted dyadic grids with exact rational realizations.
//!
//! The base grid `D^0` consists of the intervals `2^k [j, j+1)`. The
//! shifted grid `D^delta` translates each scale by a scale-dependent
//! amount chosen so the two-children nesting survives:
//!
//! - `delta` for scales `2^k <= 1`,
//! - `delta + (2^k - 1)/3` for `k > 0` even,
//! - `delta + (2^{k+1} - 1)/3` for `k > 0` odd.
//!
//! Grid membership and nesting are decided in exact rational arithmetic
//! (`i128` ratios); floating point only enters when intervals are
//! realized for geometry.

use crate::error::{Error, Result};
use crate::geometry::Rect;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i128>;

/// Shift selector for one axis: the base grid or the delta-shifted one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisShift {
    Zero,
    Delta,
}

/// Which of the four product grids `D^a x D^b`, `a,b in {0, delta}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridId {
    pub x: AxisShift,
    pub y: AxisShift,
}

impl GridId {
    pub const fn new(x: AxisShift, y: AxisShift) -> Self {
        Self { x, y }
    }

    pub fn all() -> [GridId; 4] {
        use AxisShift::*;
        [
            GridId::new(Zero, Zero),
            GridId::new(Zero, Delta),
            GridId::new(Delta, Zero),
            GridId::new(Delta, Delta),
        ]
    }

    pub fn label(&self) -> String {
        let n = |s: AxisShift| match s {
            AxisShift::Zero => "0",
            AxisShift::Delta => "d",
        };
        format!("{}{}", n(self.x), n(self.y))
    }
}

/// Exact power of two as a rational, for |k| <= 120.
pub fn pow2(k: i32) -> Rational {
    assert!(k.abs() <= 120, "scale out of supported range");
    if k >= 0 {
        Rational::from_integer(1i128 << k)
    } else {
        Rational::new(1, 1i128 << (-k))
    }
}

/// Scale-dependent shift of the delta grid at scale `2^k`.
pub fn shift_of(k: i32, delta: Rational) -> Rational {
    if k <= 0 {
        delta
    } else if k % 2 == 0 {
        // 2^k - 1 is divisible by 3 for even k
        delta + Rational::new((1i128 << k) - 1, 3)
    } else {
        delta + Rational::new((1i128 << (k + 1)) - 1, 3)
    }
}

fn axis_shift_value(s: AxisShift, k: i32, delta: Rational) -> Rational {
    match s {
        AxisShift::Zero => Rational::zero(),
        AxisShift::Delta => shift_of(k, delta),
    }
}

/// Exact conversion of a finite f64 within 2^±60 to a rational.
pub fn f64_to_ratio(x: f64) -> Result<Rational> {
    if !x.is_finite() || x.abs() > 1.15e18 {
        return Err(Error::InvalidConfig(format!("coordinate {x} out of exact range")));
    }
    let (mant, exp, sign) = {
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i128 } else { 1i128 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & 0xF_FFFF_FFFF_FFFF) as i128;
        if exp_bits == 0 {
            (frac, -1074i64, sign)
        } else {
            (frac | (1i128 << 52), exp_bits - 1075, sign)
        }
    };
    let mut m = sign * mant;
    let mut e = exp;
    // strip trailing zeros to keep exponents small
    while m != 0 && m % 2 == 0 {
        m /= 2;
        e += 1;
    }
    if m == 0 {
        return Ok(Rational::zero());
    }
    if e > 120 || e < -120 {
        return Err(Error::InvalidConfig(format!("coordinate {x} needs exponent {e}, out of range")));
    }
    Ok(if e >= 0 {
        Rational::from_integer(m) * pow2(e as i32)
    } else {
        Rational::new(m, 1) * pow2(e as i32)
    })
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn rational_floor(r: Rational) -> i128 {
    r.floor().to_integer()
}

/// Interval `shift_k + 2^k [j, j+1)` of a (possibly shifted) grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicInterval {
    pub shift: AxisShift,
    /// Scale: the interval has length `2^k`.
    pub k: i32,
    /// Index within the scale.
    pub j: i64,
}

impl DyadicInterval {
    pub fn new(shift: AxisShift, k: i32, j: i64) -> Self {
        Self { shift, k, j }
    }

    pub fn len(&self) -> f64 {
        (self.k as f64).exp2()
    }

    pub fn len_exact(&self) -> Rational {
        pow2(self.k)
    }

    /// Exact endpoints `[lo, hi)`.
    pub fn realize(&self, delta: Rational) -> (Rational, Rational) {
        let s = axis_shift_value(self.shift, self.k, delta);
        let lo = s + pow2(self.k) * Rational::from_integer(self.j as i128);
        (lo, lo + pow2(self.k))
    }

    pub fn realize_f64(&self, delta: Rational) -> (f64, f64) {
        let (lo, hi) = self.realize(delta);
        (ratio_to_f64(lo), ratio_to_f64(hi))
    }

    /// The two children at scale `k - 1` in the same grid. The shift
    /// scheme guarantees the children exist; a violation of the nesting
    /// arithmetic is a bug, not an input error, hence the panic.
    pub fn children(&self, delta: Rational) -> (DyadicInterval, DyadicInterval) {
        let (lo, _) = self.realize(delta);
        let s_child = axis_shift_value(self.shift, self.k - 1, delta);
        let q = (lo - s_child) / pow2(self.k - 1);
        assert!(
            q.is_integer(),
            "grid nesting violated at scale {} (left child offset {q})",
            self.k
        );
        let j_left = q.to_integer() as i64;
        (
            DyadicInterval::new(self.shift, self.k - 1, j_left),
            DyadicInterval::new(self.shift, self.k - 1, j_left + 1),
        )
    }

    /// The parent interval at scale `k + 1` in the same grid.
    pub fn parent(&self, delta: Rational) -> DyadicInterval {
        let (lo, _) = self.realize(delta);
        let s_par = axis_shift_value(self.shift, self.k + 1, delta);
        let j_par = rational_floor((lo - s_par) / pow2(self.k + 1)) as i64;
        DyadicInterval::new(self.shift, self.k + 1, j_par)
    }

    /// Exact containment of realizations (requires the same grid to be
    /// meaningful for nesting, but works across grids too).
    pub fn contains(&self, other: &DyadicInterval, delta: Rational) -> bool {
        let (alo, ahi) = self.realize(delta);
        let (blo, bhi) = other.realize(delta);
        alo <= blo && bhi <= ahi
    }

    /// Interval of this grid and scale whose half-open realization
    /// contains the point.
    pub fn containing(shift: AxisShift, k: i32, x: Rational, delta: Rational) -> DyadicInterval {
        let s = axis_shift_value(shift, k, delta);
        let j = rational_floor((x - s) / pow2(k)) as i64;
        DyadicInterval::new(shift, k, j)
    }
}

/// Product of two dyadic intervals; the combinatorial rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DyadicRectangle {
    pub ix: DyadicInterval,
    pub iy: DyadicInterval,
}

impl DyadicRectangle {
    pub fn new(ix: DyadicInterval, iy: DyadicInterval) -> Self {
        Self { ix, iy }
    }

    pub fn grid(&self) -> GridId {
        GridId::new(self.ix.shift, self.iy.shift)
    }

    pub fn area(&self) -> f64 {
        ((self.ix.k + self.iy.k) as f64).exp2()
    }

    /// Height over width: `2^(ky - kx)`.
    pub fn eccentricity(&self) -> f64 {
        ((self.iy.k - self.ix.k) as f64).exp2()
    }

    pub fn realize(&self, delta: Rational) -> Rect {
        let (xlo, _) = self.ix.realize_f64(delta);
        let (ylo, _) = self.iy.realize_f64(delta);
        Rect::new(xlo, ylo, self.ix.len(), self.iy.len())
    }

    pub fn contains(&self, other: &DyadicRectangle, delta: Rational) -> bool {
        self.ix.contains(&other.ix, delta) && self.iy.contains(&other.iy, delta)
    }
}

/// Result of covering an arbitrary interval by a grid interval.
#[derive(Clone, Copy, Debug)]
pub struct IntervalCover {
    pub shift: AxisShift,
    pub interval: DyadicInterval,
    /// Ratio `|I0| / |I|` actually achieved, reported rather than assumed.
    pub achieved_c: f64,
}

/// Find `alpha in {0, delta}` and `I0 in D^alpha` with `I ⊆ I0` and
/// `|I0| <= c |I|`. The two-grid search always achieves `c < 6`; the
/// achieved ratio is reported, never assumed.
pub fn cover_interval(a: f64, b: f64, delta: Rational) -> Result<IntervalCover> {
    if !(b > a) {
        return Err(Error::InvalidConfig("cover_interval needs a nonempty interval".into()));
    }
    let ra = f64_to_ratio(a)?;
    let rb = f64_to_ratio(b)?;
    let len = rb - ra;
    let k0 = (b - a).log2().ceil() as i32;
    let mut best: Option<IntervalCover> = None;
    for k in k0..=(k0 + 3) {
        if k.abs() > 60 {
            break;
        }
        for shift in [AxisShift::Zero, AxisShift::Delta] {
            let cand = DyadicInterval::containing(shift, k, ra, delta);
            let (lo, hi) = cand.realize(delta);
            if lo <= ra && rb <= hi {
                let c = ratio_to_f64(pow2(k) / len);
                if best.map_or(true, |p| c < p.achieved_c) {
                    best = Some(IntervalCover { shift, interval: cand, achieved_c: c });
                }
            }
        }
        if best.is_some() {
            break;
        }
    }
    best.ok_or_else(|| Error::InvalidConfig("two-grid cover search failed (scale range exhausted)".into()))
}

/// Result of covering an arbitrary rectangle, per-axis.
#[derive(Clone, Copy, Debug)]
pub struct RectangleCover {
    pub grid: GridId,
    pub rectangle: DyadicRectangle,
    pub achieved_c_x: f64,
    pub achieved_c_y: f64,
}

/// Per-axis application of [`cover_interval`].
pub fn cover_rectangle(r: &Rect, delta: Rational) -> Result<RectangleCover> {
    let cx = cover_interval(r.x0, r.x1(), delta)?;
    let cy = cover_interval(r.y0, r.y1(), delta)?;
    Ok(RectangleCover {
        grid: GridId::new(cx.shift, cy.shift),
        rectangle: DyadicRectangle::new(cx.interval, cy.interval),
        achieved_c_x: cx.achieved_c,
        achieved_c_y: cy.achieved_c,
    })
}

/// All grid rectangles of dimensions `2^k1 x 2^k2` whose interior meets
/// the window, each exactly once.
pub fn enumerate(window: &Rect, grid: GridId, k1: i32, k2: i32, delta: Rational) -> Result<Vec<DyadicRectangle>> {
    if k1.abs() > 30 || k2.abs() > 30 {
        return Err(Error::InvalidConfig(format!("scales ({k1},{k2}) exceed |k| <= 30")));
    }
    let nx = (window.w / (k1 as f64).exp2()).ceil() as u128 + 2;
    let ny = (window.h / (k2 as f64).exp2()).ceil() as u128 + 2;
    if nx.saturating_mul(ny) > 100_000_000 {
        return Err(Error::EnumerationOverflow(nx * ny));
    }
    let xr = axis_range(window.x0, window.x1(), grid.x, k1, delta)?;
    let yr = axis_range(window.y0, window.y1(), grid.y, k2, delta)?;
    let mut out = Vec::with_capacity(((xr.1 - xr.0 + 1) * (yr.1 - yr.0 + 1)) as usize);
    for jx in xr.0..=xr.1 {
        for jy in yr.0..=yr.1 {
            out.push(DyadicRectangle::new(
                DyadicInterval::new(grid.x, k1, jx),
                DyadicInterval::new(grid.y, k2, jy),
            ));
        }
    }
    Ok(out)
}

/// Index range of scale-`k` intervals of the axis grid whose interior
/// meets `(a, b)`.
fn axis_range(a: f64, b: f64, shift: AxisShift, k: i32, delta: Rational) -> Result<(i64, i64)> {
    let ra = f64_to_ratio(a)?;
    let rb = f64_to_ratio(b)?;
    let s = axis_shift_value(shift, k, delta);
    let cell = pow2(k);
    // interior overlap: shift + j*2^k < b and shift + (j+1)*2^k > a
    let mut j_lo = rational_floor((ra - s) / cell) as i64;
    let mut j_hi = rational_floor((rb - s) / cell) as i64;
    // trim boundary-touching cells
    {
        let hi_of_lo = s + cell * Rational::from_integer((j_lo as i128) + 1);
        if hi_of_lo <= ra {
            j_lo += 1;
        }
        let lo_of_hi = s + cell * Rational::from_integer(j_hi as i128);
        if lo_of_hi >= rb {
            j_hi -= 1;
        }
    }
    Ok((j_lo, j_hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::default_delta;

    #[test]
    fn shift_values_at_third() {
        let d = default_delta();
        assert_eq!(shift_of(-3, d), d);
        assert_eq!(shift_of(2, d), Rational::new(4, 3)); // 1/3 + (4-1)/3
        assert_eq!(shift_of(1, d), Rational::new(4, 3)); // 1/3 + (4-1)/3
    }

    #[test]
    fn children_split_unit_interval() {
        let d = default_delta();
        let i = DyadicInterval::new(AxisShift::Zero, 0, 0);
        let (l, r) = i.children(d);
        assert_eq!(l.realize_f64(d), (0.0, 0.5));
        assert_eq!(r.realize_f64(d), (0.5, 1.0));
    }

    #[test]
    fn children_partition_exactly() {
        let d = default_delta();
        for &shift in &[AxisShift::Zero, AxisShift::Delta] {
            for k in -6..=6 {
                for j in [-5i64, 0, 3, 117] {
                    let i = DyadicInterval::new(shift, k, j);
                    let (l, r) = i.children(d);
                    let (ilo, ihi) = i.realize(d);
                    let (llo, lhi) = l.realize(d);
                    let (rlo, rhi) = r.realize(d);
                    assert_eq!(llo, ilo);
                    assert_eq!(lhi, rlo);
                    assert_eq!(rhi, ihi);
                    assert_eq!(l.parent(d), i);
                    assert_eq!(r.parent(d), i);
                }
            }
        }
    }

    #[test]
    fn shifted_children_stay_in_grid() {
        // delta-grid interval at scale 2: children lie in the same grid at scale 1
        let d = default_delta();
        let i = DyadicInterval::new(AxisShift::Delta, 2, 5);
        let (l, r) = i.children(d);
        assert_eq!(l.shift, AxisShift::Delta);
        let (lo, _) = l.realize(d);
        let s1 = shift_of(1, d);
        assert!(((lo - s1) / pow2(1)).is_integer());
        let (rlo, _) = r.realize(d);
        assert!(((rlo - s1) / pow2(1)).is_integer());
    }

    #[test]
    fn nesting_overlap_implies_containment() {
        let d = default_delta();
        let mut rng = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for _ in 0..2000 {
            let shift = if next() % 2 == 0 { AxisShift::Zero } else { AxisShift::Delta };
            let k1 = (next() % 25) as i32 - 12;
            let k2 = (next() % 25) as i32 - 12;
            let j1 = (next() % 64) as i64 - 32;
            let j2 = (next() % 64) as i64 - 32;
            let a = DyadicInterval::new(shift, k1, j1);
            let b = DyadicInterval::new(shift, k2, j2);
            let (alo, ahi) = a.realize(d);
            let (blo, bhi) = b.realize(d);
            let overlap = alo < bhi && blo < ahi;
            if overlap {
                assert!(
                    a.contains(&b, d) || b.contains(&a, d),
                    "nesting violated at scales {k1},{k2} indices {j1},{j2}"
                );
            }
        }
    }

    #[test]
    fn cover_interval_examples() {
        let d = default_delta();
        let c = cover_interval(0.1, 0.4, d).unwrap();
        let (lo, hi) = c.interval.realize_f64(d);
        assert!(lo <= 0.1 && 0.4 <= hi);
        assert!(c.achieved_c < 6.0);

        // an interval already dyadic in D^0 may be returned as itself
        let c2 = cover_interval(0.25, 0.5, d).unwrap();
        assert!((c2.achieved_c - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cover_interval_random_sweep() {
        let d = default_delta();
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next_f = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64) / ((1u64 << 53) as f64)
        };
        for _ in 0..10_000 {
            let len = (next_f() * 20.0 - 10.0).exp2(); // lengths 2^-10 .. 2^10
            let a = (next_f() - 0.5) * 200.0;
            let c = cover_interval(a, a + len, d).unwrap();
            let (lo, hi) = c.interval.realize_f64(d);
            assert!(lo <= a + 1e-12 && a + len <= hi + 1e-12);
            assert!(c.achieved_c < 6.0 + 1e-9, "achieved c = {}", c.achieved_c);
        }
    }

    #[test]
    fn cover_rectangle_per_axis() {
        let d = default_delta();
        let r = Rect::new(0.1, -0.7, 0.3, 2.2);
        let c = cover_rectangle(&r, d).unwrap();
        let cov = c.rectangle.realize(d);
        assert!(cov.x0 <= r.x0 && r.x1() <= cov.x1());
        assert!(cov.y0 <= r.y0 && r.y1() <= cov.y1());
    }

    #[test]
    fn enumerate_unit_window() {
        let d = default_delta();
        let g = GridId::new(AxisShift::Zero, AxisShift::Zero);
        let v = enumerate(&Rect::new(0.0, 0.0, 1.0, 1.0), g, -1, -1, d).unwrap();
        assert_eq!(v.len(), 4);
    }

    #[test]
    fn enumerate_count_matches_area_ratio() {
        // rectangles of dims 2^k1 x 2^k2 inside a dyadic box number |K0| / 2^(k1+k2)
        let d = default_delta();
        let g = GridId::new(AxisShift::Zero, AxisShift::Zero);
        let window = Rect::new(0.0, 0.0, 4.0, 2.0);
        for (k1, k2) in [(-1, -2), (0, -3), (1, 0)] {
            let v = enumerate(&window, g, k1, k2, d).unwrap();
            let expected = (window.area() / ((k1 + k2) as f64).exp2()).round() as usize;
            assert_eq!(v.len(), expected);
        }
    }

    #[test]
    fn enumerate_shifted_matches_index_scan() {
        let d = default_delta();
        let g = GridId::new(AxisShift::Delta, AxisShift::Zero);
        let window = Rect::new(-1.3, 0.2, 2.0, 1.1);
        let v = enumerate(&window, g, -2, -1, d).unwrap();
        // brute-force index scan over a generous range
        let mut count = 0;
        for jx in -200i64..200 {
            for jy in -200i64..200 {
                let r = DyadicRectangle::new(
                    DyadicInterval::new(AxisShift::Delta, -2, jx),
                    DyadicInterval::new(AxisShift::Zero, -1, jy),
                );
                let rr = r.realize(d);
                if rr.x0 < window.x1() && rr.x1() > window.x0 && rr.y0 < window.y1() && rr.y1() > window.y0 {
                    count += 1;
                    assert!(v.contains(&r));
                }
            }
        }
        assert_eq!(v.len(), count);
    }

    #[test]
    fn enumerate_overflow_guard() {
        let d = default_delta();
        let g = GridId::new(AxisShift::Zero, AxisShift::Zero);
        let big = Rect::new(0.0, 0.0, 1e6, 1e6);
        assert!(matches!(
            enumerate(&big, g, -10, -10, d),
            Err(Error::EnumerationOverflow(_))
        ));
    }
}
