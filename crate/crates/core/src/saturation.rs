//! The saturated nonlinearity `u ↦ u/|u|` and its regularizations.
//!
//! For `n ≥ 1`,
//!
//! ```text
//! g_n(z) = z / (|z| + (n − |z|)/n²)   if |z| ≤ n,   z/|z| otherwise
//! h_n(z) = z                           if |z| ≤ n,   n z/|z| otherwise
//! ```
//!
//! Both are radial multiples of `z`; the scalar factors are exposed as
//! [`g_weight`] and [`h_weight`] so that solvers can freeze them.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scalar factor `w` with `g_n(z) = w(|z|) z`.
pub fn g_weight(r: f64, n: u64) -> f64 {
    let nf = n as f64;
    if r <= nf {
        1.0 / (r + (nf - r) / (nf * nf))
    } else {
        1.0 / r
    }
}

/// Scalar factor `s` with `h_n(z) = s(|z|) z`.
pub fn h_weight(r: f64, n: u64) -> f64 {
    let nf = n as f64;
    if r <= nf {
        1.0
    } else {
        nf / r
    }
}

pub fn g_n(z: Complex64, n: u64) -> Complex64 {
    z * g_weight(z.norm(), n)
}

pub fn h_n(z: Complex64, n: u64) -> Complex64 {
    z * h_weight(z.norm(), n)
}

/// `a g_n(u) + (b − δ + φ) h_n(u)` node by node.
pub fn f_n(
    u: &[Complex64],
    a: Complex64,
    b: Complex64,
    delta: f64,
    phi: Option<&[f64]>,
    n: u64,
) -> Result<Vec<Complex64>> {
    if let Some(phi) = phi {
        if phi.len() != u.len() {
            return Err(Error::invalid("potential length differs from field length"));
        }
        if let Some(k) = phi.iter().position(|&p| p < 0.0 || p.is_nan()) {
            return Err(Error::invalid(format!("potential is negative at node {k}: {}", phi[k])));
        }
    }
    Ok(u
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let p = phi.map_or(0.0, |p| p[i]);
            a * g_n(z, n) + (b - delta + p) * h_n(z, n)
        })
        .collect())
}

/// Numerical-zero cut for the support `{|u| > τ}`: `1e−8 · max(1, ‖u‖_∞)`.
pub fn support_threshold(u: &[Complex64]) -> f64 {
    let m = u.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    1e-8 * m.max(1.0)
}

/// A saturated section `U` together with the support it was extracted on.
#[derive(Debug, Clone, PartialEq)]
pub struct SaturatedSection {
    pub values: Vec<Complex64>,
    /// `true` where `|u| > threshold`.
    pub support: Vec<bool>,
    pub threshold: f64,
    /// Set when some off-support value had to be projected into the unit disk.
    pub clipped: bool,
}

impl SaturatedSection {
    pub fn support_size(&self) -> usize {
        self.support.iter().filter(|&&s| s).count()
    }
}

/// `U = u/|u|` on the support, `U = F/a` projected into the unit disk elsewhere.
pub fn extract_section(
    u: &[Complex64],
    a: Complex64,
    f: &[Complex64],
    threshold: f64,
) -> Result<SaturatedSection> {
    if a == Complex64::default() {
        return Err(Error::invalid("section extraction needs a ≠ 0"));
    }
    if !(threshold > 0.0) {
        return Err(Error::invalid(format!("support threshold must be positive, got {threshold}")));
    }
    if f.len() != u.len() {
        return Err(Error::invalid("forcing length differs from field length"));
    }
    let mut clipped = false;
    let mut support = Vec::with_capacity(u.len());
    let values = u
        .iter()
        .zip(f)
        .map(|(&z, &fz)| {
            let r = z.norm();
            if r > threshold {
                support.push(true);
                z / r
            } else {
                support.push(false);
                let v = fz / a;
                let m = v.norm();
                if m > 1.0 {
                    clipped = true;
                    v / m
                } else {
                    v
                }
            }
        })
        .collect();
    Ok(SaturatedSection {
        values,
        support,
        threshold,
        clipped,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionValidation {
    pub max_abs: f64,
    /// `max |U |u| − u| / |u|` over the support.
    pub max_deviation: f64,
    pub pass: bool,
}

/// Checks `‖U‖_∞ ≤ 1 + tol` and `|U |u| − u| ≤ tol |u|` on `{|u| > threshold}`.
pub fn validate_section(section: &[Complex64], u: &[Complex64], threshold: f64, tol: f64) -> SectionValidation {
    let mut max_abs = 0.0f64;
    let mut max_deviation = 0.0f64;
    for (s, z) in section.iter().zip(u) {
        max_abs = max_abs.max(s.norm());
        let r = z.norm();
        if r > threshold {
            max_deviation = max_deviation.max((s * r - z).norm() / r);
        }
    }
    SectionValidation {
        max_abs,
        max_deviation,
        pass: max_abs <= 1.0 + tol && max_deviation <= tol,
    }
}
