//! Time-periodic solutions `u(t, x) = u0(x) e^{iμt}` of
//!
//! ```text
//! i ∂_t u + Δu = λ u/|u| + F(x) e^{iμt},     λ ∈ {1, i, −i},  μ > 0
//! ```
//!
//! built from the stationary profile `−Δu0 + μ u0 + λ U0 = −F`.

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::localization::support_radius;
use crate::solver::Problem;

fn check_lambda(lambda: Complex64) -> Result<()> {
    let allowed = [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
    if allowed.contains(&lambda) {
        Ok(())
    } else {
        Err(Error::invalid(format!("λ must be one of 1, i, −i, got {lambda}")))
    }
}

/// Stationary problem for the profile: `a = λ`, `b = μ`, forcing `−F`.
pub fn soliton_problem<'d>(d: &'d Domain, lambda: Complex64, mu: f64, f: &[Complex64]) -> Result<Problem<'d>> {
    check_lambda(lambda)?;
    if !(mu > 0.0) || !mu.is_finite() {
        return Err(Error::invalid(format!("μ must be positive, got {mu}")));
    }
    Problem::new(d, lambda, Complex64::new(mu, 0.0), f.iter().map(|z| -z).collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolitonSample {
    pub t: f64,
    pub residual_inf: f64,
    pub support_radius: f64,
    pub support_nodes: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolitonReport {
    pub stationary_residual: f64,
    pub samples: Vec<SolitonSample>,
    /// `max_t |‖r(t)‖_∞ − ‖r_stat‖_∞|`.
    pub max_deviation: f64,
    pub support_identical: bool,
}

impl SolitonReport {
    pub fn max_residual(&self) -> f64 {
        self.samples.iter().map(|s| s.residual_inf).fold(0.0, f64::max)
    }
}

/// Evaluates `i ∂_t u + Δ_h u − λU − F e^{iμt}` at `u(t) = u0 e^{iμt}`,
/// `U(t) = U0 e^{iμt}` with `∂_t u = iμ u` taken analytically.
pub fn soliton_check(
    d: &Domain,
    u0: &[Complex64],
    section: &[Complex64],
    lambda: Complex64,
    mu: f64,
    f: &[Complex64],
    t_samples: &[f64],
    center: [f64; 2],
) -> Result<SolitonReport> {
    let p = soliton_problem(d, lambda, mu, f)?;
    if u0.len() != d.node_count() || section.len() != d.node_count() {
        return Err(Error::invalid("profile length differs from node count"));
    }
    let stationary = crate::solver::pde_residual(&p, u0, section);
    let stationary_residual = stationary.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let threshold = crate::saturation::support_threshold(u0);
    let i = Complex64::new(0.0, 1.0);
    let mut samples = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let phase = Complex64::from_polar(1.0, mu * t);
        let u: Vec<Complex64> = u0.iter().map(|z| z * phase).collect();
        let lap = d.neg_laplacian(&u);
        let mut worst = 0.0f64;
        for k in 0..d.node_count() {
            if d.is_fixed(k) {
                continue;
            }
            let dt = i * mu * u[k];
            let r = i * dt - lap[k] - lambda * section[k] * phase - f[k] * phase;
            worst = worst.max(r.norm());
        }
        let s = support_radius(d, &u, threshold, center);
        samples.push(SolitonSample {
            t,
            residual_inf: worst,
            support_radius: s.radius,
            support_nodes: s.nodes,
        });
    }
    let max_deviation = samples
        .iter()
        .map(|s| (s.residual_inf - stationary_residual).abs())
        .fold(0.0, f64::max);
    let support_identical = samples
        .windows(2)
        .all(|w| w[0].support_radius == w[1].support_radius && w[0].support_nodes == w[1].support_nodes);
    Ok(SolitonReport {
        stationary_residual,
        samples,
        max_deviation,
        support_identical,
    })
}
