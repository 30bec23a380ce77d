//! Schrödinger–Poisson coupling
//!
//! ```text
//! −Δu + aU + bu + eφu = F,     −Δφ = (e/2)|u|²,     φ = 0 on ∂Ω
//! ```
//!
//! solved by plain alternation: `φ_0 = 0`, `u_k` solves the saturated
//! equation with potential `e φ_{k−1}`, and `φ_k` solves the Poisson equation
//! with source `|u_k|²`.

use num_complex::Complex64;

use crate::domain::{Boundary, Domain, FieldState};
use crate::error::{ConvergenceTrace, Error, Result};
use crate::saturation::SaturatedSection;
use crate::solver::{solve_saturated, Problem, SolveReport, SolverOptions};

/// Options of the outer alternation.
#[derive(Debug, Clone, PartialEq)]
pub struct SpOptions {
    pub inner: SolverOptions,
    /// Stop once both H¹ increments are at most `tol_sp (1 + ‖·‖_{H¹})`.
    pub tol_sp: f64,
    pub max_outer: usize,
}

impl Default for SpOptions {
    fn default() -> Self {
        SpOptions {
            inner: SolverOptions::default(),
            tol_sp: 1e-8,
            max_outer: 60,
        }
    }
}

/// One outer iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpStep {
    pub du_h1: f64,
    pub dphi_h1: f64,
    /// Relative residual of `‖∇φ‖² = (e/2)∫φ|u|²` right after the Poisson solve.
    pub identity: f64,
    /// `min φ / max(‖φ‖_∞, tiny)`.
    pub min_phi_ratio: f64,
}

#[derive(Debug, Clone)]
pub struct SpState {
    pub field: FieldState,
    pub section: SaturatedSection,
    pub phi: Vec<f64>,
    pub e: f64,
    pub iterations: usize,
    pub history: Vec<SpStep>,
    /// Report of the last inner solve.
    pub last_inner: SolveReport,
}

impl SpState {
    pub fn u(&self) -> &[Complex64] {
        &self.field.values
    }

    pub fn max_identity_residual(&self) -> f64 {
        self.history.iter().map(|s| s.identity).fold(0.0, f64::max)
    }

    pub fn min_phi_ratio(&self) -> f64 {
        self.history.iter().map(|s| s.min_phi_ratio).fold(0.0, f64::min)
    }
}

fn require_dirichlet(d: &Domain) -> Result<()> {
    if d.boundary() != Boundary::Dirichlet {
        return Err(Error::invalid("the Poisson potential needs a Dirichlet domain"));
    }
    Ok(())
}

/// Solves `−Δ_h φ = (e/2)|u|²` with `φ = 0` on the boundary.
pub fn solve_poisson(d: &Domain, u: &[Complex64], e: f64) -> Result<Vec<f64>> {
    if !(e >= 0.0) || !e.is_finite() {
        return Err(Error::invalid(format!("coupling e must be finite and non-negative, got {e}")));
    }
    require_dirichlet(d)?;
    if u.len() != d.node_count() {
        return Err(Error::invalid("field length differs from node count"));
    }
    if e == 0.0 || u.iter().all(|z| z.norm_sqr() == 0.0) {
        return Ok(vec![0.0; d.node_count()]);
    }
    let source: Vec<f64> = u.iter().map(|z| 0.5 * e * z.norm_sqr()).collect();
    let phi = d.factor_constant(0.0)?.solve_real(&source);
    let max = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = phi.iter().copied().fold(f64::INFINITY, f64::min);
    if min < -1e-12 * max.max(f64::MIN_POSITIVE) {
        return Err(Error::Internal(format!("Poisson solution has a negative value {min:.3e}")));
    }
    Ok(phi)
}

/// Relative residual `|‖∇φ‖² − (e/2)∫φ|u|²| / max(‖∇φ‖², ε_mach)`.
pub fn sp_identity_residual(d: &Domain, u: &[Complex64], phi: &[f64], e: f64) -> f64 {
    let grad: f64 = d.edges().iter().map(|ed| ed.w * (phi[ed.p] - phi[ed.q]).powi(2)).sum();
    let pairing = 0.5 * e * d.integral(|i| phi[i] * u[i].norm_sqr());
    (grad - pairing).abs() / grad.max(f64::EPSILON)
}

/// `(‖u‖²_{H¹} + ‖u‖_{L¹} + e∫φ|u|²) / ‖F‖²_*`, zero when `F = 0`.
pub fn sp_bound_check(d: &Domain, s: &SpState, forcing: &[Complex64]) -> Result<f64> {
    let dual = d.dual_norm(forcing)?;
    if dual == 0.0 {
        return Ok(0.0);
    }
    let u = s.u();
    let h1 = d.h1(u);
    let pot = s.e * d.integral(|i| s.phi[i] * u[i].norm_sqr());
    Ok((h1 * h1 + d.l1(u) + pot) / (dual * dual))
}

fn h1_real(d: &Domain, v: &[f64]) -> f64 {
    let z: Vec<Complex64> = v.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    d.h1(&z)
}

/// Alternating Schrödinger–Poisson iteration.
///
/// Every inner solve starts from zero, so the iteration is a deterministic
/// function of `φ_{k−1}` and `e = 0` reproduces the uncoupled solve exactly.
pub fn solve_sp(p: &Problem, e: f64, opts: &SpOptions) -> Result<SpState> {
    let d = p.domain;
    if !(e >= 0.0) || !e.is_finite() {
        return Err(Error::invalid(format!("coupling e must be finite and non-negative, got {e}")));
    }
    require_dirichlet(d)?;
    if p.potential.is_some() {
        return Err(Error::invalid("the coupled problem builds its own potential"));
    }
    if d.dim() > 4 {
        return Err(Error::invalid("the coupled problem needs N ≤ 4"));
    }
    let schedule = opts.inner.schedule();
    let zero = vec![Complex64::default(); d.node_count()];
    let mut phi = vec![0.0; d.node_count()];
    let mut u_prev = zero.clone();
    let mut history = Vec::new();
    let mut last: Option<SolveReport> = None;
    for k in 1..=opts.max_outer {
        let coupled: Vec<f64> = phi.iter().map(|v| e * v).collect();
        let pk = p.clone().with_potential(coupled)?;
        let report = solve_saturated(&pk, &schedule, &zero, &opts.inner)?;
        let u = report.field.values.clone();
        let phi_next = solve_poisson(d, &u, e)?;
        let du: Vec<Complex64> = u.iter().zip(&u_prev).map(|(a, b)| a - b).collect();
        let dphi: Vec<f64> = phi_next.iter().zip(&phi).map(|(a, b)| a - b).collect();
        let max = phi_next.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let min = phi_next.iter().copied().fold(0.0f64, f64::min);
        let step = SpStep {
            du_h1: d.h1(&du),
            dphi_h1: h1_real(d, &dphi),
            identity: sp_identity_residual(d, &u, &phi_next, e),
            min_phi_ratio: if max > 0.0 { min / max } else { 0.0 },
        };
        history.push(step);
        let done = step.du_h1 <= opts.tol_sp * (1.0 + d.h1(&u))
            && step.dphi_h1 <= opts.tol_sp * (1.0 + h1_real(d, &phi_next));
        phi = phi_next;
        u_prev = u;
        last = Some(report);
        if done {
            let report = last.unwrap();
            return Ok(SpState {
                field: report.field.clone(),
                section: report.section.clone(),
                phi,
                e,
                iterations: k,
                history,
                last_inner: report,
            });
        }
    }
    let report = last.expect("at least one outer iteration");
    let last_increment = history.last().map_or(f64::INFINITY, |s| s.du_h1.max(s.dphi_h1));
    Err(Error::NonConvergence {
        stage: "Schrödinger–Poisson alternation".into(),
        iterations: opts.max_outer,
        last_increment,
        trace: Box::new(ConvergenceTrace {
            last: Some(report.field),
            history: history.iter().map(|s| s.du_h1.max(s.dphi_h1)).collect(),
            stage: format!("outer iteration {}", opts.max_outer),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::DomainSpec;
    use crate::solver::solve;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn interval(n: usize) -> Domain {
        Domain::new(&DomainSpec::interval(0.0, 1.0, n, Boundary::Dirichlet)).unwrap()
    }

    #[test]
    fn poisson_trivial_cases() {
        let d = interval(33);
        let zero = vec![Complex64::default(); d.node_count()];
        assert!(solve_poisson(&d, &zero, 3.0).unwrap().iter().all(|&v| v == 0.0));
        let u = d.sample(|_| c(2.0));
        assert!(solve_poisson(&d, &u, 0.0).unwrap().iter().all(|&v| v == 0.0));
        assert!(matches!(solve_poisson(&d, &u, -1.0), Err(Error::InvalidArgument(_))));
        let neu = Domain::new(&DomainSpec::interval(0.0, 1.0, 9, Boundary::Neumann)).unwrap();
        assert!(solve_poisson(&neu, &[c(1.0); 9], 1.0).is_err());
    }

    #[test]
    fn poisson_closed_form() {
        // −φ'' = 1 on (0, 1): φ = x(1 − x)/2; the three-point stencil is exact on quadratics
        for n in [17, 65] {
            let d = interval(n);
            let u = vec![c(1.0); d.node_count()];
            let phi = solve_poisson(&d, &u, 2.0).unwrap();
            for (i, v) in phi.iter().enumerate() {
                let x = d.coord(i)[0];
                assert!((v - x * (1.0 - x) / 2.0).abs() < 1e-12);
            }
            assert!((phi[n / 2] - 0.125).abs() < 1e-12);
        }
    }

    #[test]
    fn identity_is_exact_and_detects_scaling() {
        let d = Domain::new(&DomainSpec::square(-1.0, 1.0, 17, Boundary::Dirichlet)).unwrap();
        let u = d.sample(|x| Complex64::new((1.0 - x[0] * x[0]) * (1.0 - x[1] * x[1]), x[0]));
        let phi = solve_poisson(&d, &u, 1.5).unwrap();
        assert!(sp_identity_residual(&d, &u, &phi, 1.5) < 1e-12);
        assert_eq!(sp_identity_residual(&d, &u, &vec![0.0; d.node_count()], 1.5), 0.0);
        let bad: Vec<f64> = phi.iter().map(|v| 1.1 * v).collect();
        let r = sp_identity_residual(&d, &u, &bad, 1.5);
        assert!((r - (1.21 - 1.1) / 1.21).abs() < 1e-10, "{r}");
    }

    #[test]
    fn zero_forcing_stops_after_one_iteration() {
        let d = Domain::new(&DomainSpec::interval(-1.0, 1.0, 65, Boundary::Dirichlet)).unwrap();
        let p = Problem::new(&d, c(1.0), c(1.0), vec![c(0.0); d.node_count()]).unwrap();
        let s = solve_sp(&p, 1.0, &SpOptions::default()).unwrap();
        assert_eq!(s.iterations, 1);
        assert!(s.u().iter().all(|z| z.norm() == 0.0) && s.phi.iter().all(|&v| v == 0.0));
    }

    fn bump_problem(d: &Domain) -> Problem<'_> {
        let f = d.sample(|x| if x[0].abs() < 0.5 { c(5.0) } else { c(0.0) });
        Problem::new(d, c(1.0), c(1.0), f).unwrap()
    }

    #[test]
    fn zero_coupling_reduces_to_plain_solve() {
        let d = Domain::new(&DomainSpec::interval(-4.0, 4.0, 257, Boundary::Dirichlet)).unwrap();
        let p = bump_problem(&d);
        let opts = SpOptions::default();
        let s = solve_sp(&p, 0.0, &opts).unwrap();
        let plain = solve(&p, &opts.inner).unwrap();
        let diff: Vec<Complex64> = s.u().iter().zip(plain.u()).map(|(a, b)| a - b).collect();
        assert!(d.h1(&diff) <= opts.inner.tol_fp);
        let ratio = sp_bound_check(&d, &s, &p.forcing).unwrap();
        let plain_ratio = crate::solver::apriori_ratio(&p, plain.u()).unwrap();
        assert!((ratio - plain_ratio).abs() <= 1e-12 * plain_ratio);
    }

    #[test]
    fn coupled_solve_in_one_dimension() {
        let d = Domain::new(&DomainSpec::interval(-4.0, 4.0, 257, Boundary::Dirichlet)).unwrap();
        let p = bump_problem(&d);
        let s = solve_sp(&p, 1.0, &SpOptions::default()).unwrap();
        assert!(s.last_inner.flags.converged);
        assert!(s.max_identity_residual() <= 1e-10);
        assert!(s.min_phi_ratio() >= -1e-12);
        // the repulsive potential shrinks the solution
        let plain = solve(&p, &SpOptions::default().inner).unwrap();
        assert!(d.l2_sq(s.u()) < d.l2_sq(plain.u()));
        assert!(sp_bound_check(&d, &s, &p.forcing).unwrap() > 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn poisson_is_nonnegative_and_exact(
            vals in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 81),
            e in 0.0..5.0f64,
        ) {
            let d = Domain::new(&DomainSpec::square(0.0, 1.0, 9, Boundary::Dirichlet)).unwrap();
            let mut u: Vec<Complex64> = vals.iter().map(|&(r, i)| Complex64::new(r, i)).collect();
            d.enforce_boundary(&mut u);
            let phi = solve_poisson(&d, &u, e).unwrap();
            let max = phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(phi.iter().all(|&v| v >= -1e-12 * max));
            prop_assert!(sp_identity_residual(&d, &u, &phi, e) <= 1e-10);
        }
    }
}
