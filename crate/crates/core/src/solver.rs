//! Solver for `−Δ_h u + aU + bu + φu = F` with a saturated section `U`.
//!
//! The saturated term is approached through the regularizations `g_n`, `h_n`
//! along a continuation schedule `n = 1, 2, 4, …`. Each stage solves the
//! regularized problem
//!
//! ```text
//! (−Δ_h + δ) u + a g_n(u) + (b − δ + φ) h_n(u) = F
//! ```
//!
//! by one of two fixed-point schemes:
//!
//! * [`Scheme::ShiftedPicard`] iterates `u ← (1−θ)u + θ(−Δ_h + δ)⁻¹(F − f_n(u))`
//!   with a single factorization. It is the textbook map but contracts only
//!   for small `n`.
//! * [`Scheme::Lagged`] freezes the radial factors of `g_n` and `h_n` at the
//!   current iterate and solves the resulting linear problem exactly, with
//!   Anderson mixing on top. This is the default.
//!
//! Once the continuation has settled, the support `{|u| > τ}` is polished by
//! solving the limit equation with `U = u/|u|` on the support and `u = 0`
//! elsewhere, adding nodes where the off-support balance `|G| ≤ |a|` fails.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{existence_admissible, CoeffPair, PotentialSummary};
use crate::domain::{Boundary, Domain, FieldState, Norms};
use crate::error::{ConvergenceTrace, Error, Result};
use crate::saturation::{extract_section, f_n, g_weight, h_weight, support_threshold, SaturatedSection};

/// Fixed-point scheme used inside each continuation stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Lagged,
    ShiftedPicard,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::Lagged => write!(f, "lagged"),
            Scheme::ShiftedPicard => write!(f, "shifted_picard"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverOptions {
    pub scheme: Scheme,
    /// Relative H¹ increment at which a stage counts as converged.
    pub tol_fp: f64,
    /// Relative H¹ change between stages at which the continuation stops.
    pub tol_cont: f64,
    /// Bound on `residual_inf / max(1, ‖F‖_∞)` for the `converged` flag.
    pub tol_pde: f64,
    /// Mixing weight θ; `None` picks 1 for the lagged scheme and 1/2 for Picard.
    pub damping: Option<f64>,
    pub min_damping: f64,
    /// Shift δ; `None` picks 0 for Dirichlet and 1e−3 for Neumann.
    pub delta: Option<f64>,
    pub max_iter: usize,
    /// Last schedule entry is `2^n_max_exponent`.
    pub n_max_exponent: u32,
    pub anderson_depth: usize,
    pub polish: bool,
    pub max_polish_rounds: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            scheme: Scheme::Lagged,
            tol_fp: 1e-10,
            tol_cont: 1e-8,
            tol_pde: 1e-6,
            damping: None,
            min_damping: 1.0 / 64.0,
            delta: None,
            max_iter: 500,
            n_max_exponent: 48,
            anderson_depth: 5,
            polish: true,
            max_polish_rounds: 30,
        }
    }
}

impl SolverOptions {
    pub fn damping_for(&self, scheme: Scheme) -> f64 {
        self.damping.unwrap_or(match scheme {
            Scheme::Lagged => 1.0,
            Scheme::ShiftedPicard => 0.5,
        })
    }

    pub fn delta_for(&self, boundary: Boundary) -> f64 {
        self.delta.unwrap_or(match boundary {
            Boundary::Dirichlet => 0.0,
            Boundary::Neumann => 1e-3,
        })
    }

    /// `1, 2, 4, …, 2^n_max_exponent`.
    pub fn schedule(&self) -> Vec<u64> {
        (0..=self.n_max_exponent.min(62)).map(|k| 1u64 << k).collect()
    }
}

/// Discrete problem data. The forcing is a nodal density; point masses enter
/// as `mass / w_i` at their node.
#[derive(Debug, Clone)]
pub struct Problem<'d> {
    pub domain: &'d Domain,
    pub a: Complex64,
    pub b: Complex64,
    pub potential: Option<Vec<f64>>,
    pub forcing: Vec<Complex64>,
}

impl<'d> Problem<'d> {
    pub fn new(domain: &'d Domain, a: Complex64, b: Complex64, mut forcing: Vec<Complex64>) -> Result<Self> {
        for (name, z) in [("a", a), ("b", b)] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::invalid(format!("coefficient {name} is not finite")));
            }
        }
        if forcing.len() != domain.node_count() {
            return Err(Error::invalid(format!(
                "forcing has {} values for {} nodes",
                forcing.len(),
                domain.node_count()
            )));
        }
        if forcing.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::invalid("forcing has non-finite values"));
        }
        domain.enforce_boundary(&mut forcing);
        Ok(Problem {
            domain,
            a,
            b,
            potential: None,
            forcing,
        })
    }

    /// Attaches a potential `φ ≥ 0`.
    pub fn with_potential(mut self, phi: Vec<f64>) -> Result<Self> {
        if phi.len() != self.domain.node_count() {
            return Err(Error::invalid("potential length differs from node count"));
        }
        if let Some(k) = phi.iter().position(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::invalid(format!("potential must be finite and non-negative, node {k} has {}", phi[k])));
        }
        self.potential = Some(phi);
        Ok(self)
    }

    pub fn phi(&self, i: usize) -> f64 {
        self.potential.as_ref().map_or(0.0, |p| p[i])
    }

    pub fn coeffs(&self) -> CoeffPair {
        let summary = self
            .potential
            .as_ref()
            .map_or_else(PotentialSummary::zero, |p| PotentialSummary::from_real(p));
        CoeffPair::new(self.a, self.b).with_potential(summary)
    }

    pub fn forcing_inf(&self) -> f64 {
        self.forcing.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Same problem with the forcing multiplied by `c`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let mut p = self.clone();
        for z in &mut p.forcing {
            *z *= c;
        }
        p
    }
}

/// Outcome of one continuation stage.
#[derive(Debug, Clone, PartialEq)]
pub struct StageRecord {
    pub n: u64,
    pub iterations: usize,
    pub last_increment: f64,
    /// `∫_{|u|≤n} |u|² / (|u| + (n − |u|)/n²)`, bounded along the schedule.
    pub bound_quantity: f64,
    /// H¹ distance to the previous stage.
    pub stage_change: f64,
    pub h1: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct IdentityResiduals {
    pub real_abs: f64,
    pub imag_abs: f64,
    pub real_rel: f64,
    pub imag_rel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SolveFlags {
    pub converged: bool,
    pub continuation_converged: bool,
    pub polished: bool,
    pub clipped_section: bool,
    pub regime_supported: bool,
    pub symmetry_checked: bool,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub field: FieldState,
    pub section: SaturatedSection,
    pub residual_inf: f64,
    pub stages: Vec<StageRecord>,
    pub polish_rounds: usize,
    pub identities: IdentityResiduals,
    pub norms: Norms,
    pub flags: SolveFlags,
    pub symmetry_defect: Option<f64>,
    pub delta: f64,
}

impl SolveReport {
    pub fn u(&self) -> &[Complex64] {
        &self.field.values
    }

    pub fn schedule(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.n).collect()
    }

    /// Records `max |u − u∘R|` for a node map `R` of the grid.
    pub fn check_symmetry(&mut self, map: impl Fn(usize) -> usize) -> f64 {
        let d = symmetry_defect(self.u(), map);
        self.symmetry_defect = Some(d);
        self.flags.symmetry_checked = true;
        d
    }
}

pub fn symmetry_defect(u: &[Complex64], map: impl Fn(usize) -> usize) -> f64 {
    (0..u.len()).fold(0.0, |m, i| m.max((u[i] - u[map(i)]).norm()))
}

fn sub(u: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

/// Anderson mixing over the real components of complex fields.
struct Anderson {
    depth: usize,
    prev_u: Option<Vec<Complex64>>,
    prev_r: Option<Vec<Complex64>>,
    du: Vec<Vec<Complex64>>,
    dr: Vec<Vec<Complex64>>,
}

impl Anderson {
    fn new(depth: usize) -> Self {
        Anderson {
            depth,
            prev_u: None,
            prev_r: None,
            du: Vec::new(),
            dr: Vec::new(),
        }
    }

    fn reset(&mut self) {
        self.prev_u = None;
        self.prev_r = None;
        self.du.clear();
        self.dr.clear();
    }

    /// Next iterate from `u` and the fixed-point residual `r = G(u) − u`.
    fn step(&mut self, u: &[Complex64], r: &[Complex64], theta: f64) -> Vec<Complex64> {
        if self.depth == 0 {
            return u.iter().zip(r).map(|(a, b)| a + b * theta).collect();
        }
        if let (Some(pu), Some(pr)) = (&self.prev_u, &self.prev_r) {
            self.du.push(sub(u, pu));
            self.dr.push(sub(r, pr));
            if self.du.len() > self.depth {
                self.du.remove(0);
                self.dr.remove(0);
            }
        }
        self.prev_u = Some(u.to_vec());
        self.prev_r = Some(r.to_vec());

        let gamma = least_squares(&self.dr, r);
        let mut next: Vec<Complex64> = u.iter().zip(r).map(|(a, b)| a + b * theta).collect();
        for (k, g) in gamma.iter().enumerate() {
            for i in 0..next.len() {
                next[i] -= (self.du[k][i] + self.dr[k][i] * theta) * *g;
            }
        }
        if next.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            self.reset();
            return u.iter().zip(r).map(|(a, b)| a + b * theta).collect();
        }
        next
    }
}

fn real_dot(u: &[Complex64], v: &[Complex64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
}

/// Minimizes `‖r − Σ γ_k d_k‖` over real `γ` by Gram–Schmidt.
fn least_squares(cols: &[Vec<Complex64>], r: &[Complex64]) -> Vec<f64> {
    let m = cols.len();
    if m == 0 {
        return Vec::new();
    }
    let mut q: Vec<Vec<Complex64>> = Vec::with_capacity(m);
    let mut rr = vec![vec![0.0; m]; m];
    let mut keep = vec![true; m];
    for k in 0..m {
        let mut v = cols[k].clone();
        for (j, qj) in q.iter().enumerate() {
            if !keep[j] {
                continue;
            }
            let c = real_dot(qj, &v);
            rr[j][k] = c;
            for i in 0..v.len() {
                v[i] -= qj[i] * c;
            }
        }
        let norm = real_dot(&v, &v).sqrt();
        let scale = real_dot(&cols[k], &cols[k]).sqrt();
        if norm <= 1e-12 * scale.max(f64::MIN_POSITIVE) {
            keep[k] = false;
            q.push(vec![Complex64::default(); v.len()]);
            continue;
        }
        rr[k][k] = norm;
        q.push(v.iter().map(|z| z / norm).collect());
    }
    let rhs: Vec<f64> = q.iter().map(|qk| real_dot(qk, r)).collect();
    let mut gamma = vec![0.0; m];
    for k in (0..m).rev() {
        if !keep[k] {
            continue;
        }
        let mut s = rhs[k];
        for j in k + 1..m {
            if keep[j] {
                s -= rr[k][j] * gamma[j];
            }
        }
        gamma[k] = s / rr[k][k];
    }
    gamma
}

fn check_finite(u: &[Complex64]) -> bool {
    u.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn non_convergence(stage: String, iterations: usize, last: f64, u: &[Complex64], history: Vec<f64>) -> Error {
    Error::NonConvergence {
        stage: stage.clone(),
        iterations,
        last_increment: last,
        trace: Box::new(ConvergenceTrace {
            last: Some(FieldState::new(u.to_vec())),
            history,
            stage,
        }),
    }
}

/// Solves the `n`-regularized problem from `u0`.
///
/// Returns the converged field and the number of iterations used.
pub fn solve_regularized(
    p: &Problem,
    n: u64,
    delta: f64,
    u0: &[Complex64],
    opts: &SolverOptions,
) -> Result<(Vec<Complex64>, usize, f64)> {
    let d = p.domain;
    if n == 0 {
        return Err(Error::invalid("regularization index n must be at least 1"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::invalid(format!("shift δ must lie in [0, 1], got {delta}")));
    }
    if d.boundary() == Boundary::Neumann && delta == 0.0 {
        return Err(Error::invalid("Neumann problems need a shift δ > 0"));
    }
    let theta0 = opts.damping_for(opts.scheme);
    if !(theta0 > 0.0 && theta0 <= 1.0) {
        return Err(Error::invalid(format!("damping must lie in (0, 1], got {theta0}")));
    }
    if u0.len() != d.node_count() {
        return Err(Error::invalid("initial guess length differs from node count"));
    }
    let mut u = u0.to_vec();
    d.enforce_boundary(&mut u);
    match opts.scheme {
        Scheme::Lagged => lagged_stage(p, n, delta, u, theta0, opts),
        Scheme::ShiftedPicard => picard_stage(p, n, delta, u, theta0, opts),
    }
}

fn lagged_stage(
    p: &Problem,
    n: u64,
    delta: f64,
    mut u: Vec<Complex64>,
    theta: f64,
    opts: &SolverOptions,
) -> Result<(Vec<Complex64>, usize, f64)> {
    let d = p.domain;
    let mut mixer = Anderson::new(opts.anderson_depth);
    let mut history = Vec::new();
    let mut last_res = f64::INFINITY;
    for it in 1..=opts.max_iter {
        let shift: Vec<Complex64> = (0..d.node_count())
            .map(|i| {
                let r = u[i].norm();
                p.a * g_weight(r, n) + (p.b - delta + p.phi(i)) * h_weight(r, n) + delta
            })
            .collect();
        let active = active_set(d, &u);
        let v = d.factor_shift_on(&active, &shift)?.solve(&p.forcing);
        let r = sub(&v, &u);
        let res = d.h1(&r);
        let scale = 1.0 + d.h1(&v);
        history.push(res / scale);
        if res <= opts.tol_fp * scale {
            return Ok((v, it, res / scale));
        }
        if res > 4.0 * last_res {
            mixer.reset();
        }
        last_res = res;
        u = mixer.step(&u, &r, theta);
        d.enforce_boundary(&mut u);
        if !check_finite(&u) {
            break;
        }
    }
    let last = history.last().copied().unwrap_or(f64::NAN);
    Err(non_convergence(format!("lagged stage n={n}"), history.len(), last, &u, history))
}

/// Relative size below which a node, together with its neighbours, is
/// treated as exactly zero by the lagged solves.
const NEGLIGIBLE: f64 = 1e-20;

/// Nodes within two grid steps of `{|u| > NEGLIGIBLE · ‖u‖_∞}`.
fn active_set(d: &Domain, u: &[Complex64]) -> Vec<bool> {
    let max = u.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    if max == 0.0 {
        return vec![true; u.len()];
    }
    let cut = NEGLIGIBLE * max;
    let mut active: Vec<bool> = u.iter().map(|z| z.norm() > cut).collect();
    for _ in 0..2 {
        let mut grown = active.clone();
        for e in d.edges() {
            if active[e.p] || active[e.q] {
                grown[e.p] = true;
                grown[e.q] = true;
            }
        }
        active = grown;
    }
    active
}

fn picard_stage(
    p: &Problem,
    n: u64,
    delta: f64,
    mut u: Vec<Complex64>,
    theta0: f64,
    opts: &SolverOptions,
) -> Result<(Vec<Complex64>, usize, f64)> {
    let d = p.domain;
    let op = d.factor_constant(delta)?;
    let mut theta = theta0;
    let mut history = Vec::new();
    let mut last = f64::INFINITY;
    for it in 1..=opts.max_iter {
        let fu = f_n(&u, p.a, p.b, delta, p.potential.as_deref(), n)?;
        let rhs: Vec<Complex64> = p.forcing.iter().zip(&fu).map(|(f, g)| f - g).collect();
        let t = op.solve(&rhs);
        let r = sub(&t, &u);
        let res = d.h1(&r);
        let scale = 1.0 + d.h1(&t);
        history.push(res / scale);
        if res <= opts.tol_fp * scale {
            return Ok((t, it, res / scale));
        }
        if res > last {
            theta = (theta * 0.5).max(opts.min_damping);
        }
        last = res;
        for (ui, ri) in u.iter_mut().zip(&r) {
            *ui += ri * theta;
        }
        d.enforce_boundary(&mut u);
        if !check_finite(&u) {
            break;
        }
    }
    let last = history.last().copied().unwrap_or(f64::NAN);
    Err(non_convergence(format!("picard stage n={n}"), history.len(), last, &u, history))
}

fn bound_quantity(d: &Domain, u: &[Complex64], n: u64) -> f64 {
    let nf = n as f64;
    d.integral(|i| {
        let r = u[i].norm();
        if r <= nf {
            r * r * g_weight(r, n)
        } else {
            0.0
        }
    })
}

/// Residual of `−Δ_h u + aU + (b + φ) u − F`, zero on fixed nodes.
pub fn pde_residual(p: &Problem, u: &[Complex64], section: &[Complex64]) -> Vec<Complex64> {
    let d = p.domain;
    let lap = d.neg_laplacian(u);
    (0..d.node_count())
        .map(|i| {
            if d.is_fixed(i) {
                Complex64::default()
            } else {
                lap[i] + p.a * section[i] + (p.b + p.phi(i)) * u[i] - p.forcing[i]
            }
        })
        .collect()
}

/// `F − (−Δ_h u + (b + φ) u)`: the part of the forcing `aU` has to balance.
pub fn effective_forcing(p: &Problem, u: &[Complex64]) -> Vec<Complex64> {
    let d = p.domain;
    let lap = d.neg_laplacian(u);
    (0..d.node_count())
        .map(|i| {
            if d.is_fixed(i) {
                Complex64::default()
            } else {
                p.forcing[i] - lap[i] - (p.b + p.phi(i)) * u[i]
            }
        })
        .collect()
}

const PIN: f64 = 1e30;

/// Solves the limit equation on the support of `u` and adjusts the support
/// until the off-support balance `|G| ≤ |a|` holds. Returns the field, the
/// number of rounds and whether the final support passed the balance test.
fn polish(p: &Problem, u: &[Complex64], opts: &SolverOptions) -> Result<(Vec<Complex64>, usize, bool)> {
    let d = p.domain;
    let nn = d.node_count();
    let tau = support_threshold(u);
    let mut u = u.to_vec();
    let mut support: Vec<bool> = (0..nn).map(|i| !d.is_fixed(i) && u[i].norm() > tau).collect();
    for i in 0..nn {
        if !support[i] {
            u[i] = Complex64::default();
        }
    }
    let stiff_diag = {
        let mut s = vec![0.0; nn];
        for e in d.edges() {
            s[e.p] += e.w;
            s[e.q] += e.w;
        }
        s.iter().zip(d.weights()).map(|(k, w)| k / w).collect::<Vec<f64>>()
    };
    let a_abs = p.a.norm();
    let tol = opts.tol_fp * 1e-2;

    for round in 1..=opts.max_polish_rounds {
        let mut mixer = Anderson::new(opts.anderson_depth);
        let mut converged = false;
        let mut last_res = f64::INFINITY;
        for _ in 0..opts.max_iter {
            let tau_now = support_threshold(&u);
            let mut dropped = false;
            for i in 0..nn {
                if support[i] && u[i].norm() <= tau_now {
                    support[i] = false;
                    u[i] = Complex64::default();
                    dropped = true;
                }
            }
            if dropped {
                mixer.reset();
            }
            let shift: Vec<Complex64> = (0..nn)
                .map(|i| {
                    if support[i] {
                        p.a / u[i].norm() + p.b + p.phi(i)
                    } else {
                        Complex64::new(PIN, 0.0)
                    }
                })
                .collect();
            let mut v = d.factor_shift_on(&support, &shift)?.solve(&p.forcing);
            for i in 0..nn {
                if !support[i] {
                    v[i] = Complex64::default();
                }
            }
            let r = sub(&v, &u);
            let res = d.h1(&r);
            let scale = 1.0 + d.h1(&v);
            if res <= tol * scale {
                u = v;
                converged = true;
                break;
            }
            if res > 4.0 * last_res {
                mixer.reset();
            }
            last_res = res;
            u = mixer.step(&u, &r, 1.0);
            for i in 0..nn {
                if !support[i] {
                    u[i] = Complex64::default();
                }
            }
            if !check_finite(&u) {
                return Err(Error::Internal("support polish produced non-finite values".into()));
            }
        }
        if !converged {
            return Ok((u, round, false));
        }
        // off-support balance
        let g = effective_forcing(p, &u);
        let mut added = false;
        for i in 0..nn {
            if d.is_fixed(i) || support[i] {
                continue;
            }
            let gi = g[i];
            if gi.norm() > a_abs * (1.0 + 1e-10) {
                let dir = gi / gi.norm();
                let denom = stiff_diag[i] + p.b + p.phi(i);
                let guess = (gi - p.a * dir) / denom;
                if guess.norm() > 0.0 && guess.re.is_finite() {
                    u[i] = guess;
                    support[i] = true;
                    added = true;
                }
            }
        }
        if !added {
            return Ok((u, round, true));
        }
    }
    Ok((u, opts.max_polish_rounds, false))
}

/// Runs the continuation schedule from `u0`, polishes the support and
/// extracts the saturated section.
pub fn solve_saturated(p: &Problem, schedule: &[u64], u0: &[Complex64], opts: &SolverOptions) -> Result<SolveReport> {
    let d = p.domain;
    if p.a == Complex64::default() {
        return Err(Error::invalid("a = 0 leaves no saturated term"));
    }
    if schedule.is_empty() || schedule.windows(2).any(|w| w[1] <= w[0]) || schedule[0] == 0 {
        return Err(Error::invalid("continuation schedule must be strictly increasing and start at n ≥ 1"));
    }
    let delta = opts.delta_for(d.boundary());
    let regime_supported = existence_admissible(p.a, p.b);

    let mut u = u0.to_vec();
    d.enforce_boundary(&mut u);
    let mut stages: Vec<StageRecord> = Vec::new();
    let mut continuation_converged = false;
    for &n in schedule {
        let (v, iterations, last_increment) = match solve_regularized(p, n, delta, &u, opts) {
            Ok(out) => out,
            Err(Error::NonConvergence {
                stage,
                iterations,
                last_increment,
                mut trace,
            }) => {
                trace.history = stages.iter().map(|s| s.stage_change).collect();
                return Err(Error::NonConvergence {
                    stage,
                    iterations,
                    last_increment,
                    trace,
                });
            }
            Err(e) => return Err(e),
        };
        let h1 = d.h1(&v);
        let stage_change = if stages.is_empty() { f64::INFINITY } else { d.h1(&sub(&v, &u)) };
        stages.push(StageRecord {
            n,
            iterations,
            last_increment,
            bound_quantity: bound_quantity(d, &v, n),
            stage_change,
            h1,
        });
        u = v;
        if stage_change <= opts.tol_cont * (1.0 + h1) {
            continuation_converged = true;
            break;
        }
    }

    let mut polish_rounds = 0;
    let mut polished = false;
    if opts.polish {
        let (v, rounds, clean) = polish(p, &u, opts)?;
        u = v;
        polish_rounds = rounds;
        polished = clean;
    }

    let tau = support_threshold(&u);
    let g = effective_forcing(p, &u);
    let section = extract_section(&u, p.a, &g, tau)?;
    let residual = pde_residual(p, &u, &section.values);
    let residual_inf = residual.iter().fold(0.0f64, |m, z| m.max(z.norm()));
    let identities = energy_identities(p, &u);
    let norms = d.norms(&u);
    let converged = residual_inf <= opts.tol_pde * p.forcing_inf().max(1.0);
    let flags = SolveFlags {
        converged,
        continuation_converged,
        polished,
        clipped_section: section.clipped,
        regime_supported,
        symmetry_checked: false,
    };
    Ok(SolveReport {
        field: FieldState::new(u).with_section(section.values.clone()),
        section,
        residual_inf,
        stages,
        polish_rounds,
        identities,
        norms,
        flags,
        symmetry_defect: None,
        delta,
    })
}

/// [`solve_saturated`] with the default schedule from a zero initial guess.
pub fn solve(p: &Problem, opts: &SolverOptions) -> Result<SolveReport> {
    solve_saturated(p, &opts.schedule(), &vec![Complex64::default(); p.domain.node_count()], opts)
}

/// Residuals of the two energy identities obtained by testing with `u` and `iu`:
///
/// ```text
/// ‖∇u‖² + Re(a)‖u‖_{L¹} + Re(b)‖u‖² + ∫φ|u|² = Re∫F ū
/// Im(a)‖u‖_{L¹} + Im(b)‖u‖² = Im∫F ū
/// ```
pub fn energy_identities(p: &Problem, u: &[Complex64]) -> IdentityResiduals {
    let d = p.domain;
    let semi = d.seminorm_sq(u);
    let l1 = d.l1(u);
    let l2 = d.l2_sq(u);
    let pot = d.integral(|i| p.phi(i) * u[i].norm_sqr());
    let fu = d.inner(&p.forcing, u);
    let real_terms = [semi, p.a.re * l1, p.b.re * l2, pot, fu.re];
    let imag_terms = [p.a.im * l1, p.b.im * l2, fu.im];
    let real_abs = (semi + p.a.re * l1 + p.b.re * l2 + pot - fu.re).abs();
    let imag_abs = (p.a.im * l1 + p.b.im * l2 - fu.im).abs();
    let rel = |abs: f64, terms: &[f64]| {
        let s: f64 = terms.iter().map(|t| t.abs()).sum();
        if s > 0.0 {
            abs / s
        } else {
            0.0
        }
    };
    IdentityResiduals {
        real_abs,
        imag_abs,
        real_rel: rel(real_abs, &real_terms),
        imag_rel: rel(imag_abs, &imag_terms),
    }
}

/// `(‖u‖²_{H¹} + ‖u‖_{L¹} + ∫φ|u|²) / ‖F‖²_*`, zero when `F = 0`.
pub fn apriori_ratio(p: &Problem, u: &[Complex64]) -> Result<f64> {
    let d = p.domain;
    let dual = d.dual_norm(&p.forcing)?;
    if dual == 0.0 {
        return Ok(0.0);
    }
    let h1 = d.h1(u);
    let pot = d.integral(|i| p.phi(i) * u[i].norm_sqr());
    Ok((h1 * h1 + d.l1(u) + pot) / (dual * dual))
}

/// Standard initial guesses: zero, the forcing itself and a seeded random field.
pub fn standard_guesses(p: &Problem, seed: u64) -> Vec<Vec<Complex64>> {
    let d = p.domain;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random: Vec<Complex64> = (0..d.node_count())
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    d.enforce_boundary(&mut random);
    vec![vec![Complex64::default(); d.node_count()], p.forcing.clone(), random]
}

/// Solves from every guess and returns the largest pairwise H¹ distance.
pub fn uniqueness_probe(p: &Problem, guesses: &[Vec<Complex64>], opts: &SolverOptions) -> Result<f64> {
    let coeffs = p.coeffs();
    if !coeffs.uniqueness_ok() {
        return Err(Error::Regime(format!(
            "uniqueness conditions fail for a = {}, b = {}",
            p.a, p.b
        )));
    }
    let schedule = opts.schedule();
    let mut fields = Vec::with_capacity(guesses.len());
    for g in guesses {
        fields.push(solve_saturated(p, &schedule, g, opts)?.field.values);
    }
    let mut worst = 0.0f64;
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            worst = worst.max(p.domain.h1(&sub(&fields[i], &fields[j])));
        }
    }
    Ok(worst)
}
