//! Admissibility scans over slices of the `(a, b)` parameter space.

use num_complex::Complex64;

use crate::coeffs::{classify, in_a, PotentialSummary};
use crate::error::{Error, Result};

/// A rectangular grid of `b` values for a fixed `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub re: (f64, f64),
    pub im: (f64, f64),
    /// Points per axis, at least 2.
    pub points: usize,
}

impl Default for ScanGrid {
    fn default() -> Self {
        ScanGrid {
            re: (-3.0, 3.0),
            im: (-3.0, 3.0),
            points: 61,
        }
    }
}

impl ScanGrid {
    pub fn values(&self) -> Result<Vec<Complex64>> {
        if self.points < 2 {
            return Err(Error::invalid("scan grid needs at least 2 points per axis"));
        }
        let finite = [self.re.0, self.re.1, self.im.0, self.im.1].iter().all(|v| v.is_finite());
        if !finite || self.re.0 >= self.re.1 || self.im.0 >= self.im.1 {
            return Err(Error::invalid("scan ranges must be finite with lower < upper"));
        }
        let step = |(lo, hi): (f64, f64), k: usize| lo + (hi - lo) * k as f64 / (self.points - 1) as f64;
        let mut out = Vec::with_capacity(self.points * self.points);
        for j in 0..self.points {
            for i in 0..self.points {
                out.push(Complex64::new(step(self.re, i), step(self.im, j)));
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub a: Complex64,
    pub b: Complex64,
    pub a_in_a: bool,
    pub b_in_a: bool,
    pub existence: bool,
    pub uniqueness: bool,
}

/// The `a` values of the four reference slices: two existence pictures
/// (`Im a ≠ 0`, `Re a = 0`) and two uniqueness pictures (`Re a > 0`, `Re a = 0`).
pub fn reference_slices() -> [Complex64; 4] {
    [
        Complex64::new(-1.5, 1.5),
        Complex64::new(0.0, -2.0),
        Complex64::new(1.0, 2.0),
        Complex64::new(0.0, -2.0),
    ]
}

/// Classifies every `(a, b)` with `a` from `slices` and `b` from `grid`, no potential.
pub fn region_scan(slices: &[Complex64], grid: &ScanGrid) -> Result<Vec<ScanRow>> {
    let bs = grid.values()?;
    let zero = PotentialSummary::zero();
    let mut rows = Vec::with_capacity(slices.len() * bs.len());
    for &a in slices {
        let a_in_a = in_a(a)?;
        for &b in &bs {
            let rep = classify(a, b, &zero, None);
            rows.push(ScanRow {
                a,
                b,
                a_in_a,
                b_in_a: in_a(b)?,
                existence: rep.existence_ok,
                uniqueness: rep.uniqueness_ok,
            });
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    // closed half-line {Re z ≤ 0, Im z = 0} meets the segment [a, b]
    fn segment_hits_half_line(a: Complex64, b: Complex64) -> bool {
        if a.im == 0.0 && b.im == 0.0 {
            return a.re.min(b.re) <= 0.0;
        }
        if a.im * b.im > 0.0 {
            return false;
        }
        if a.im == 0.0 {
            return a.re <= 0.0;
        }
        if b.im == 0.0 {
            return b.re <= 0.0;
        }
        let t = a.im / (a.im - b.im);
        a.re + t * (b.re - a.re) <= 0.0
    }

    #[test]
    fn grid_validation() {
        assert!(ScanGrid { points: 1, ..Default::default() }.values().is_err());
        assert!(ScanGrid { re: (1.0, 0.0), ..Default::default() }.values().is_err());
        assert_eq!(ScanGrid::default().values().unwrap().len(), 61 * 61);
    }

    #[test]
    fn existence_matches_segment_picture() {
        // off-axis grid so the segment test never sits on a tie
        let grid = ScanGrid {
            re: (-3.05, 2.95),
            im: (-3.05, 2.95),
            points: 41,
        };
        let rows = region_scan(&reference_slices()[..2], &grid).unwrap();
        for r in rows {
            assert_eq!(r.existence, !segment_hits_half_line(r.a, r.b), "a={} b={}", r.a, r.b);
        }
    }

    #[test]
    fn first_slice_is_a_half_plane() {
        let a = Complex64::new(-1.5, 1.5);
        let rows = region_scan(&[a], &ScanGrid::default()).unwrap();
        for r in rows {
            let b = r.b;
            // Im a > 0; for Im b < 0 the admissible side is Re b > (Re a/Im a) Im b
            let expected = if b.im > 0.0 {
                true
            } else if b.im == 0.0 {
                b.re > 0.0
            } else {
                b.re > (a.re / a.im) * b.im
            };
            assert_eq!(r.existence, expected, "b={b}");
        }
    }

    #[test]
    fn uniqueness_is_the_half_plane_of_a() {
        for a in [Complex64::new(1.0, 2.0), Complex64::new(0.0, -2.0)] {
            for r in region_scan(&[a], &ScanGrid::default()).unwrap() {
                let dot = a.re * r.b.re + a.im * r.b.im;
                let expected = dot > 0.0 || (dot == 0.0 && r.b_in_a);
                assert_eq!(r.uniqueness, expected, "a={a} b={}", r.b);
            }
        }
    }

    #[test]
    fn real_positive_a_admits_all_of_a() {
        for r in region_scan(&[Complex64::new(2.0, 0.0)], &ScanGrid::default()).unwrap() {
            assert_eq!(r.existence, r.b_in_a);
        }
    }
}
