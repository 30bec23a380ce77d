//! Local energy analytics: ball profiles, vanishing radii and the ODE
//! comparison lemmas behind compact support.
//!
//! Ball integrals use a smoothed indicator: a node (or edge midpoint) at
//! distance `r` from the centre gets weight `clamp((ρ − r)/h + 1/2, 0, 1)`.
//! With this choice the profile of a piecewise linear field is exact at the
//! grid radii `ρ = j h`, and every profile entry is nondecreasing in `ρ`.
//!
//! The boundary flux `∫_{S(x0,ρ)} u conj(∇u)·ν` is recovered from the discrete
//! Green identity `flux = E(ρ) − ∫_B u conj(−Δ_h u)`, so it carries the same
//! weights as the ball integrals.

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::{Error, Result};

/// Ball quantities around `center` at the radii `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalEnergyProfile {
    pub center: [f64; 2],
    pub rho: Vec<f64>,
    /// `‖∇u‖²` on the ball.
    pub energy: Vec<f64>,
    /// `‖u‖_{L¹}` on the ball.
    pub l1: Vec<f64>,
    /// `‖u‖²_{L²}` on the ball.
    pub l2: Vec<f64>,
    /// Boundary pairing `∫_S u conj(∇u)·ν`.
    pub flux: Vec<Complex64>,
    /// `∫_B |F u|`, zero when no forcing was supplied.
    pub forcing: Vec<f64>,
}

impl LocalEnergyProfile {
    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    /// Left-hand side `‖u‖²_{H¹(B)} + ‖u‖_{L¹(B)}` of the localization inequality.
    pub fn lhs(&self, j: usize) -> f64 {
        self.energy[j] + self.l2[j] + self.l1[j]
    }

    /// Right-hand side `|flux| + ∫_B |F u|`.
    pub fn rhs(&self, j: usize) -> f64 {
        self.flux[j].norm() + self.forcing[j]
    }

    /// Index of the last radius not exceeding `rho`.
    pub fn index_at(&self, rho: f64) -> Option<usize> {
        self.rho.iter().rposition(|&r| r <= rho * (1.0 + 1e-12))
    }
}

fn ball_weight(rho: f64, r: f64, h: f64) -> f64 {
    if rho <= 0.0 {
        0.0
    } else {
        ((rho - r) / h + 0.5).clamp(0.0, 1.0)
    }
}

/// Radii `0, h, 2h, …` up to the farthest node from `x0`.
pub fn default_radii(d: &Domain, x0: [f64; 2]) -> Vec<f64> {
    let h = d.h_min();
    let far = (0..d.node_count()).map(|i| d.distance(i, x0)).fold(0.0, f64::max);
    let count = (far / h).ceil() as usize + 1;
    (0..=count).map(|j| j as f64 * h).collect()
}

/// Ball profile of `u` about `x0` at the given radii.
pub fn local_profile(
    d: &Domain,
    u: &[Complex64],
    forcing: Option<&[Complex64]>,
    x0: [f64; 2],
    radii: &[f64],
) -> Result<LocalEnergyProfile> {
    if !d.contains(x0) {
        return Err(Error::invalid(format!("profile centre {x0:?} lies outside the domain")));
    }
    if u.len() != d.node_count() {
        return Err(Error::invalid("field length differs from node count"));
    }
    let h = d.h_min();
    let lap = d.neg_laplacian(u);
    let node_r: Vec<f64> = (0..d.node_count()).map(|i| d.distance(i, x0)).collect();
    let edge_r: Vec<f64> = d
        .edges()
        .iter()
        .map(|e| {
            let (p, q) = (d.coord(e.p), d.coord(e.q));
            let m = [(p[0] + q[0]) / 2.0 - x0[0], (p[1] + q[1]) / 2.0 - x0[1]];
            (m[0] * m[0] + m[1] * m[1]).sqrt()
        })
        .collect();
    let w = d.weights();

    let mut out = LocalEnergyProfile {
        center: x0,
        rho: radii.to_vec(),
        energy: Vec::with_capacity(radii.len()),
        l1: Vec::with_capacity(radii.len()),
        l2: Vec::with_capacity(radii.len()),
        flux: Vec::with_capacity(radii.len()),
        forcing: Vec::with_capacity(radii.len()),
    };
    for &rho in radii {
        let mut energy = 0.0;
        for (e, &r) in d.edges().iter().zip(&edge_r) {
            let chi = ball_weight(rho, r, h);
            if chi > 0.0 {
                energy += chi * e.w * (u[e.p] - u[e.q]).norm_sqr();
            }
        }
        let (mut l1, mut l2, mut fu) = (0.0, 0.0, 0.0);
        let mut pairing = Complex64::default();
        for i in 0..d.node_count() {
            let chi = ball_weight(rho, node_r[i], h);
            if chi == 0.0 {
                continue;
            }
            let cw = chi * w[i];
            l1 += cw * u[i].norm();
            l2 += cw * u[i].norm_sqr();
            pairing += u[i] * lap[i].conj() * cw;
            if let Some(f) = forcing {
                fu += cw * (f[i] * u[i]).norm();
            }
        }
        out.energy.push(energy);
        out.l1.push(l1);
        out.l2.push(l2);
        out.flux.push(Complex64::new(energy, 0.0) - pairing);
        out.forcing.push(fu);
    }
    Ok(out)
}

/// `γ(τ) = (2τ − 1)/(N + 2)`.
pub fn gamma(tau: f64, dim: usize) -> f64 {
    (2.0 * tau - 1.0) / (dim as f64 + 2.0)
}

/// `μ(τ) = 2(1 − τ)/(N + 2)`.
pub fn mu(tau: f64, dim: usize) -> f64 {
    2.0 * (1.0 - tau) / (dim as f64 + 2.0)
}

/// Default τ grid: 64 uniform points in `[0.501, 1]`.
pub fn default_tau_grid() -> Vec<f64> {
    let (lo, hi, n) = (0.501, 1.0, 64);
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Inputs of the vanishing-radius formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoMaxInput {
    pub energy: f64,
    pub l1: f64,
    pub rho0: f64,
    pub m: f64,
    pub c: f64,
    pub dim: usize,
}

/// Radius inside which `u` must vanish, given ball data at `ρ0`:
///
/// ```text
/// ρ_max^{N+2} = (ρ0^{N+2} − C M² max(ρ0^{N+1}, 1) min_τ E^γ max(b^μ, b^{1−γ}) / (2τ − 1))_+
/// ```
pub fn rho_max(input: &RhoMaxInput, tau_grid: &[f64]) -> Result<f64> {
    if tau_grid.is_empty() {
        return Err(Error::invalid("τ grid is empty"));
    }
    if let Some(t) = tau_grid.iter().find(|&&t| !(t > 0.5 && t <= 1.0)) {
        return Err(Error::invalid(format!("τ = {t} lies outside (1/2, 1]")));
    }
    let RhoMaxInput { energy, l1, rho0, m, c, dim } = *input;
    if !(m > 0.0) || !(c > 0.0) || !(rho0 > 0.0) || energy < 0.0 || l1 < 0.0 {
        return Err(Error::invalid("ρ_max needs M, C, ρ0 > 0 and non-negative E, b"));
    }
    let np2 = dim as f64 + 2.0;
    let term = tau_grid
        .iter()
        .map(|&tau| {
            let g = gamma(tau, dim);
            let e = if energy == 0.0 { 0.0 } else { energy.powf(g) };
            let b = l1.powf(mu(tau, dim)).max(l1.powf(1.0 - g));
            e * b / (2.0 * tau - 1.0)
        })
        .fold(f64::INFINITY, f64::min);
    let inner = rho0.powf(np2) - c * m * m * rho0.powf(np2 - 1.0).max(1.0) * term;
    Ok(inner.max(0.0).powf(1.0 / np2))
}

/// Parameters of the differential inequality `ρ^{β−1} E^{1−α} ≤ K E'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeBoundParams {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
    pub rho0: f64,
    /// `E(ρ0)`.
    pub e0: f64,
}

impl OdeBoundParams {
    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::invalid(format!("α must lie in (0, 1], got {}", self.alpha)));
        }
        if !(self.beta >= 0.0) || !(self.k > 0.0) || !(self.rho0 > 0.0) || !(self.e0 >= 0.0) {
            return Err(Error::invalid("need β ≥ 0, K > 0, ρ0 > 0 and E(ρ0) ≥ 0"));
        }
        Ok(())
    }
}

/// Radius `r` below which `E` vanishes:
/// `r^β = (ρ0^β − K(β/α) E0^α)_+`, or `r = ρ0 exp(−(K/α) E0^α)` when `β = 0`.
pub fn ode_vanishing_radius(p: &OdeBoundParams) -> Result<f64> {
    p.validate()?;
    if p.e0 == 0.0 {
        return Ok(p.rho0);
    }
    let ea = p.e0.powf(p.alpha);
    if p.beta == 0.0 {
        Ok(p.rho0 * (-(p.k / p.alpha) * ea).exp())
    } else {
        let inner = p.rho0.powf(p.beta) - p.k * (p.beta / p.alpha) * ea;
        Ok(inner.max(0.0).powf(1.0 / p.beta))
    }
}

/// Numerical counterpart of [`ode_vanishing_radius`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeOracleReport {
    pub r_formula: f64,
    pub r_numeric: f64,
    pub steps: usize,
    pub abs_error: f64,
}

/// Integrates the equality case `E' = ρ^{β−1} E^{1−α} / K` backward from
/// `(ρ0, E0)` with RK4 and locates where `E` reaches zero.
///
/// Steps are limited to 1% of the local time scale `E/E'`, so they shrink
/// geometrically as the zero is approached; integration stops once the step
/// falls below `1e−10 ρ0`.
pub fn ode_oracle_check(p: &OdeBoundParams, max_steps: usize) -> Result<OdeOracleReport> {
    p.validate()?;
    let r_formula = ode_vanishing_radius(p)?;
    let rhs = |rho: f64, e: f64| rho.powf(p.beta - 1.0) * e.max(0.0).powf(1.0 - p.alpha) / p.k;
    let floor = 1e-10 * p.rho0;
    let mut rho = p.rho0;
    let mut e = p.e0;
    let mut steps = 0;
    if e > 0.0 {
        while steps < max_steps {
            let slope = rhs(rho, e);
            let mut dr = (0.01 * e / slope).min(0.01 * p.rho0).min(0.5 * rho);
            if dr < floor {
                break;
            }
            // backward step ρ → ρ − dr
            let k1 = rhs(rho, e);
            let k2 = rhs(rho - dr / 2.0, e - dr / 2.0 * k1);
            let k3 = rhs(rho - dr / 2.0, e - dr / 2.0 * k2);
            let k4 = rhs(rho - dr, e - dr * k3);
            let mut next = e - dr / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if next <= 0.0 {
                // bisect the step length for the crossing
                let (mut lo, mut hi) = (0.0, dr);
                for _ in 0..60 {
                    let mid = 0.5 * (lo + hi);
                    let k1 = rhs(rho, e);
                    let k2 = rhs(rho - mid / 2.0, e - mid / 2.0 * k1);
                    let k3 = rhs(rho - mid / 2.0, e - mid / 2.0 * k2);
                    let k4 = rhs(rho - mid, e - mid * k3);
                    let v = e - mid / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
                    if v > 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                dr = hi;
                next = 0.0;
            }
            rho -= dr;
            e = next;
            steps += 1;
            if e == 0.0 || rho <= floor {
                break;
            }
        }
    }
    let r_numeric = if rho <= floor { 0.0 } else { rho };
    Ok(OdeOracleReport {
        r_formula,
        r_numeric,
        steps,
        abs_error: (r_numeric - r_formula).abs(),
    })
}

/// Thresholds `E_⋆ = ((α/2K)(ρ1 − ρ0))^{1/α}` and `ε_⋆ = ½ (α/2K)^{(1−α)/α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OdeThreshold {
    pub e_star: f64,
    pub eps_star: f64,
}

pub fn ode_threshold(alpha: f64, k: f64, rho0: f64, rho1: f64) -> Result<OdeThreshold> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("α must lie in (0, 1), got {alpha}")));
    }
    if !(k > 0.0) || !(rho0 > 0.0) || !(rho1 > rho0) {
        return Err(Error::invalid("need K > 0 and ρ1 > ρ0 > 0"));
    }
    let c = alpha / (2.0 * k);
    Ok(OdeThreshold {
        e_star: (c * (rho1 - rho0)).powf(1.0 / alpha),
        eps_star: 0.5 * c.powf((1.0 - alpha) / alpha),
    })
}

/// `G(ρ) = ((α/2K)(ρ − ρ0))^{1/α}`, the comparison function of the threshold lemma.
pub fn threshold_barrier(alpha: f64, k: f64, rho0: f64, rho: f64) -> f64 {
    ((alpha / (2.0 * k)) * (rho - rho0).max(0.0)).powf(1.0 / alpha)
}

/// Result of integrating the extremal case of `E^{1−α} ≤ K E' + ε (ρ − ρ0)^{(1−α)/α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdCheck {
    /// `E(ρ0)` reached by the backward integration.
    pub e_at_rho0: f64,
    /// `max (E − G)` over the integration grid.
    pub max_excess_over_barrier: f64,
}

/// Integrates `K E' = E^{1−α} − ε (ρ − ρ0)^{(1−α)/α}` backward from `(ρ1, E1)`,
/// keeping `E ≥ 0`. Any non-negative solution of the inequality lies below
/// this one, so `E(ρ0) = 0` here certifies the threshold lemma.
pub fn threshold_integration(alpha: f64, k: f64, rho0: f64, rho1: f64, e1: f64, eps: f64, steps: usize) -> ThresholdCheck {
    let s = |rho: f64| (rho - rho0).max(0.0).powf((1.0 - alpha) / alpha);
    let rhs = |rho: f64, e: f64| (e.max(0.0).powf(1.0 - alpha) - eps * s(rho)) / k;
    let dr = (rho1 - rho0) / steps as f64;
    let mut e = e1;
    let mut worst = e1 - threshold_barrier(alpha, k, rho0, rho1);
    for j in 0..steps {
        let rho = rho1 - j as f64 * dr;
        let k1 = rhs(rho, e);
        let k2 = rhs(rho - dr / 2.0, e - dr / 2.0 * k1);
        let k3 = rhs(rho - dr / 2.0, e - dr / 2.0 * k2);
        let k4 = rhs(rho - dr, e - dr * k3);
        e = (e - dr / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)).max(0.0);
        let next = rho - dr;
        worst = worst.max(e - threshold_barrier(alpha, k, rho0, next));
    }
    ThresholdCheck {
        e_at_rho0: e,
        max_excess_over_barrier: worst,
    }
}

/// Per-radius check of the localization inequality `LHS ≤ M · RHS`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalizationCheck {
    /// `M · RHS(ρ) − LHS(ρ)`.
    pub margin: Vec<f64>,
    pub min_margin: f64,
}

pub fn check_localization_inequality(profile: &LocalEnergyProfile, m: f64) -> LocalizationCheck {
    let margin: Vec<f64> = (0..profile.len()).map(|j| m * profile.rhs(j) - profile.lhs(j)).collect();
    let min_margin = margin.iter().copied().fold(f64::INFINITY, f64::min);
    LocalizationCheck {
        margin,
        min_margin: if min_margin.is_finite() { min_margin } else { 0.0 },
    }
}

/// Smallest `M` with `LHS ≤ M · RHS` at every radius up to `rho_limit`.
///
/// Radii where both sides vanish (relative to `floor`) are skipped; a radius
/// with a positive left side and a vanishing right side gives `∞`.
pub fn fit_localization_constant(profile: &LocalEnergyProfile, rho_limit: f64, floor: f64) -> f64 {
    let mut m = 0.0f64;
    for j in 0..profile.len() {
        if profile.rho[j] <= 0.0 || profile.rho[j] > rho_limit {
            continue;
        }
        let (lhs, rhs) = (profile.lhs(j), profile.rhs(j));
        if lhs <= floor {
            continue;
        }
        m = m.max(if rhs > 0.0 { lhs / rhs } else { f64::INFINITY });
    }
    m
}

/// Extent of `{|u| > threshold}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInfo {
    /// Smallest `R` with `|u| ≤ threshold` outside `B(x_ref, R)`.
    pub radius: f64,
    /// Axis-aligned bounding box `(lower, upper)`, `None` for an empty support.
    pub bbox: Option<([f64; 2], [f64; 2])>,
    pub nodes: usize,
    /// Distance from the bounding box to the domain boundary.
    pub boundary_margin: f64,
}

pub fn support_radius(d: &Domain, u: &[Complex64], threshold: f64, x_ref: [f64; 2]) -> SupportInfo {
    let mut radius = 0.0f64;
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    let mut nodes = 0;
    for (i, z) in u.iter().enumerate() {
        if z.norm() > threshold {
            nodes += 1;
            radius = radius.max(d.distance(i, x_ref));
            let c = d.coord(i);
            for k in 0..2 {
                lo[k] = lo[k].min(c[k]);
                hi[k] = hi[k].max(c[k]);
            }
        }
    }
    let bbox = (nodes > 0).then_some((lo, hi));
    let boundary_margin = match bbox {
        None => (0..d.dim()).map(|k| 0.5 * (d.upper()[k] - d.lower()[k])).fold(f64::INFINITY, f64::min),
        Some((lo, hi)) => (0..d.dim())
            .map(|k| (lo[k] - d.lower()[k]).min(d.upper()[k] - hi[k]))
            .fold(f64::INFINITY, f64::min),
    };
    SupportInfo {
        radius,
        bbox,
        nodes,
        boundary_margin,
    }
}

/// One radius of the forcing growth test `‖F‖²_{L²(B(x0,ρ))} ≤ ε_⋆ ((ρ − ρ0)_+)^{N+2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthSample {
    pub rho: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the forcing growth condition on the grid radii in `(0, ρ1)`.
pub fn epsilon_star_condition(
    d: &Domain,
    f: &[Complex64],
    x0: [f64; 2],
    rho0: f64,
    rho1: f64,
    eps_star: f64,
) -> Result<Vec<GrowthSample>> {
    if !(rho1 > rho0 && rho0 > 0.0) {
        return Err(Error::invalid("need ρ1 > ρ0 > 0"));
    }
    let h = d.h_min();
    let w = d.weights();
    let dist: Vec<f64> = (0..d.node_count()).map(|i| d.distance(i, x0)).collect();
    let np2 = d.dim() as i32 + 2;
    let mut out = Vec::new();
    let mut j = 1;
    while (j as f64) * h < rho1 {
        let rho = j as f64 * h;
        let lhs: f64 = (0..d.node_count())
            .filter(|&i| dist[i] <= rho * (1.0 + 1e-12))
            .map(|i| w[i] * f[i].norm_sqr())
            .sum();
        let rhs = eps_star * (rho - rho0).max(0.0).powi(np2);
        out.push(GrowthSample {
            rho,
            lhs,
            rhs,
            holds: lhs <= rhs,
        });
        j += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Boundary, DomainSpec};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn hat_domain() -> (Domain, Vec<Complex64>) {
        let d = Domain::new(&DomainSpec::interval(-4.0, 4.0, 161, Boundary::Dirichlet)).unwrap();
        let u = d.sample(|x| c((1.0 - x[0].abs()).max(0.0)));
        (d, u)
    }

    #[test]
    fn zero_field_has_zero_profile() {
        let d = Domain::new(&DomainSpec::square(-1.0, 1.0, 9, Boundary::Dirichlet)).unwrap();
        let u = vec![Complex64::default(); d.node_count()];
        let p = local_profile(&d, &u, None, [0.0, 0.0], &default_radii(&d, [0.0, 0.0])).unwrap();
        assert!(p.energy.iter().chain(&p.l1).all(|&v| v == 0.0));
        assert!(p.flux.iter().all(|z| z.norm() == 0.0));
        assert!(check_localization_inequality(&p, 1.0).margin.iter().all(|&m| m == 0.0));
    }

    #[test]
    fn hat_profile_matches_closed_form() {
        let (d, u) = hat_domain();
        let radii = default_radii(&d, [0.0, 0.0]);
        let p = local_profile(&d, &u, None, [0.0, 0.0], &radii).unwrap();
        assert_eq!((p.energy[0], p.l1[0]), (0.0, 0.0));
        for j in 1..p.len() {
            let rho = p.rho[j];
            let (e, b) = if rho <= 1.0 { (2.0 * rho, 2.0 * rho - rho * rho) } else { (2.0, 1.0) };
            assert!((p.energy[j] - e).abs() < 1e-12, "E at {rho}");
            assert!((p.l1[j] - b).abs() < 1e-12, "b at {rho}");
            if rho <= 1.0 - 1e-12 {
                assert!((p.flux[j].norm() - 2.0 * (1.0 - rho)).abs() < 1e-9, "flux at {rho}");
            }
        }
    }

    #[test]
    fn profile_rejects_outside_centre() {
        let (d, u) = hat_domain();
        assert!(matches!(local_profile(&d, &u, None, [5.0, 0.0], &[0.0, 1.0]), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn profiles_are_monotone_on_random_fields() {
        let d = Domain::new(&DomainSpec::square(-1.0, 1.0, 17, Boundary::Neumann)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let u: Vec<Complex64> = (0..d.node_count())
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let x0 = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
            let p = local_profile(&d, &u, None, x0, &default_radii(&d, x0)).unwrap();
            for j in 1..p.len() {
                assert!(p.energy[j] >= p.energy[j - 1] && p.l1[j] >= p.l1[j - 1] && p.l2[j] >= p.l2[j - 1]);
            }
        }
    }

    #[test]
    fn tau_functions() {
        for n in 1..=4 {
            assert_eq!(gamma(1.0, n), 1.0 / (n as f64 + 2.0));
            assert_eq!(mu(1.0, n), 0.0);
        }
        let grid = default_tau_grid();
        assert_eq!(grid.len(), 64);
        assert!(grid[0] > 0.5 && *grid.last().unwrap() == 1.0);
    }

    #[test]
    fn rho_max_examples() {
        let base = RhoMaxInput { energy: 0.0, l1: 0.0, rho0: 1.3, m: 2.0, c: 3.0, dim: 2 };
        assert_eq!(rho_max(&base, &default_tau_grid()).unwrap(), 1.3);
        let big = RhoMaxInput { energy: 50.0, l1: 50.0, ..base };
        assert_eq!(rho_max(&big, &default_tau_grid()).unwrap(), 0.0);
        let hand = RhoMaxInput { energy: 1.0, l1: 1.0, rho0: 1.0, m: 1.0, c: 1.0, dim: 1 };
        assert_eq!(rho_max(&hand, &default_tau_grid()).unwrap(), 0.0);
        assert!(rho_max(&hand, &[]).is_err());
    }

    #[test]
    fn vanishing_radius_examples() {
        let p = OdeBoundParams { alpha: 1.0, beta: 1.0, k: 1.0, rho0: 2.0, e0: 1.0 };
        assert_eq!(ode_vanishing_radius(&p).unwrap(), 1.0);
        let p = OdeBoundParams { alpha: 1.0, beta: 0.0, k: 1.0, rho0: 1.0, e0: 2f64.ln() };
        assert!((ode_vanishing_radius(&p).unwrap() - 0.5).abs() < 1e-15);
        for beta in [0.0, 0.7] {
            let p = OdeBoundParams { alpha: 0.4, beta, k: 2.0, rho0: 1.5, e0: 0.0 };
            assert_eq!(ode_vanishing_radius(&p).unwrap(), 1.5);
            let o = ode_oracle_check(&p, 1000).unwrap();
            assert_eq!(o.r_numeric, 1.5);
        }
    }

    #[test]
    fn oracle_matches_linear_case() {
        let p = OdeBoundParams { alpha: 1.0, beta: 1.0, k: 1.0, rho0: 2.0, e0: 1.0 };
        let o = ode_oracle_check(&p, 1_000_000).unwrap();
        assert!(o.abs_error < 1e-6, "{o:?}");
    }

    #[test]
    fn oracle_matches_sublinear_cases() {
        for (alpha, beta, k, e0) in [(0.5, 3.0, 0.3, 0.4), (0.3, 1.0, 1.0, 0.05), (0.7, 0.0, 0.5, 1.0), (0.5, 2.0, 1.0, 9.0)] {
            let p = OdeBoundParams { alpha, beta, k, rho0: 1.0, e0 };
            let o = ode_oracle_check(&p, 1_000_000).unwrap();
            assert!(o.abs_error < 1e-6, "{p:?} {o:?}");
        }
    }

    #[test]
    fn threshold_integration_reaches_zero() {
        for (alpha, k) in [(0.5, 0.25), (0.3, 1.0), (0.8, 0.1)] {
            let (rho0, rho1) = (1.0, 2.0);
            let t = ode_threshold(alpha, k, rho0, rho1).unwrap();
            for (e_frac, eps_frac) in [(1.0, 1.0), (0.5, 1.0), (1.0, 0.0), (0.2, 0.5)] {
                let r = threshold_integration(alpha, k, rho0, rho1, e_frac * t.e_star, eps_frac * t.eps_star, 20_000);
                assert!(r.e_at_rho0 <= 1e-5 * t.e_star, "{alpha} {k} {e_frac} {eps_frac}: {r:?}");
                assert!(r.max_excess_over_barrier <= 1e-5 * t.e_star, "{r:?}");
            }
            let big = 2f64.powf(2.0 / alpha) * t.e_star;
            let r = threshold_integration(alpha, k, rho0, rho1, big, t.eps_star, 20_000);
            assert!(r.e_at_rho0 > 1e-2 * t.e_star, "{r:?}");
        }
    }

    #[test]
    fn threshold_examples() {
        let t = ode_threshold(0.5, 0.25, 1.0, 2.0).unwrap();
        assert!((t.e_star - 1.0).abs() < 1e-15 && (t.eps_star - 0.5).abs() < 1e-15);
        let t2 = ode_threshold(0.5, 0.25, 1.0, 3.0).unwrap();
        assert!((t2.e_star / t.e_star - 4.0).abs() < 1e-12);
        assert_eq!(t2.eps_star, ode_threshold(0.5, 0.25, 7.0, 7.5).unwrap().eps_star);
        assert!(ode_threshold(1.0, 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn barrier_is_an_exact_equality_solution() {
        let (alpha, k, rho0) = (0.4, 0.7, 1.0);
        let t = ode_threshold(alpha, k, rho0, 2.0).unwrap();
        for rho in [1.1, 1.5, 1.9] {
            let g = threshold_barrier(alpha, k, rho0, rho);
            let dg = (threshold_barrier(alpha, k, rho0, rho + 1e-6) - threshold_barrier(alpha, k, rho0, rho - 1e-6)) / 2e-6;
            let lhs = g.powf(1.0 - alpha) - k * dg;
            let rhs = t.eps_star * (rho - rho0).powf((1.0 - alpha) / alpha);
            assert!((lhs - rhs).abs() < 1e-6 * rhs.max(1.0));
        }
    }

    #[test]
    fn support_radius_examples() {
        let (d, u) = hat_domain();
        let s = support_radius(&d, &u, 1e-12, [0.0, 0.0]);
        assert!((s.radius - 1.0).abs() <= d.h_min());
        let zero = vec![Complex64::default(); d.node_count()];
        assert_eq!(support_radius(&d, &zero, 1e-12, [0.0, 0.0]).radius, 0.0);
        let s2 = support_radius(&d, &u, 0.5, [0.0, 0.0]);
        assert!(s2.radius <= s.radius);
    }

    #[test]
    fn growth_condition_examples() {
        let d = Domain::new(&DomainSpec::square(-2.0, 2.0, 41, Boundary::Dirichlet)).unwrap();
        let zero = vec![Complex64::default(); d.node_count()];
        let s = epsilon_star_condition(&d, &zero, [0.0, 0.0], 0.5, 1.5, 0.1).unwrap();
        assert!(s.iter().all(|g| g.holds));
        // forcing that lives away from B(x0, ρ1) is invisible to the test
        let far = d.sample(|x| if x[0] > 1.7 { c(3.0) } else { c(0.0) });
        assert!(epsilon_star_condition(&d, &far, [0.0, 0.0], 0.5, 1.5, 0.1).unwrap().iter().all(|g| g.holds));
        let big = d.sample(|_| c(10.0));
        let s = epsilon_star_condition(&d, &big, [0.0, 0.0], 0.5, 1.5, 0.1).unwrap();
        let just_above = s.iter().find(|g| g.rho > 0.5).unwrap();
        assert!(!just_above.holds);
    }

    proptest! {
        #[test]
        fn rho_max_is_monotone(
            e in 0.0..2.0f64, de in 0.0..1.0f64,
            b in 0.0..2.0f64, db in 0.0..1.0f64,
            m in 0.1..2.0f64, c in 0.1..2.0f64, dim in 1usize..3,
        ) {
            let grid = default_tau_grid();
            let base = RhoMaxInput { energy: e, l1: b, rho0: 1.2, m, c, dim };
            let r = rho_max(&base, &grid).unwrap();
            prop_assert!(r <= 1.2 + 1e-15);
            for other in [
                RhoMaxInput { energy: e + de, ..base },
                RhoMaxInput { l1: b + db, ..base },
                RhoMaxInput { m: m * 1.5, ..base },
                RhoMaxInput { c: c * 1.5, ..base },
            ] {
                prop_assert!(rho_max(&other, &grid).unwrap() <= r + 1e-12);
            }
        }
    }
}
