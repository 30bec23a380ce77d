//! Subcommand pipelines behind the `satlab` binary.
//!
//! Every run writes `run_manifest.txt` with the resolved parameters and the
//! outcome, plus command-specific CSV tables (see [`crate::report`]). Exit
//! codes: 0 success, 1 internal failure, 2 configuration error, 3 solver
//! non-convergence (partial artifacts written), 4 inadmissible regime when
//! the experiment requires admissibility.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::coeffs::{classify, PotentialSummary};
use crate::config::{preset, ExperimentConfig, Forcing};
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::localization::{
    check_localization_inequality, default_radii, fit_localization_constant, local_profile, rho_max, support_radius,
    RhoMaxInput,
};
use crate::poisson::{solve_sp, sp_bound_check};
use crate::report::{num, write_field, write_key_values, write_profile, write_stages, write_table};
use crate::scan::{reference_slices, region_scan, ScanGrid};
use crate::soliton::{soliton_check, soliton_problem};
use crate::solver::{apriori_ratio, solve, Problem, SolveReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Classify,
    Solve,
    Profile,
    Sp,
    Soliton,
    Scan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Classify => "classify",
            Command::Solve => "solve",
            Command::Profile => "profile",
            Command::Sp => "sp",
            Command::Soliton => "soliton",
            Command::Scan => "scan",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunRequest {
    pub command: Command,
    pub config: Option<PathBuf>,
    pub preset: Option<String>,
    pub out: Option<PathBuf>,
    pub refine: u32,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub code: i32,
    pub out_dir: Option<PathBuf>,
    pub files: Vec<String>,
    /// Human-readable summary lines (or the error message).
    pub summary: Vec<String>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::InvalidArgument(_) => 2,
        Error::NonConvergence { .. } => 3,
        Error::Regime(_) => 4,
        _ => 1,
    }
}

/// Runs one request. Never panics on bad input; failures map to exit codes.
pub fn run(req: &RunRequest) -> RunOutcome {
    let cfg = match load(req) {
        Ok(c) => c,
        Err(e) => {
            return RunOutcome {
                code: exit_code(&e),
                out_dir: None,
                files: Vec::new(),
                summary: vec![e.to_string()],
            }
        }
    };
    let out_dir = req
        .out
        .clone()
        .or_else(|| cfg.output.dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| {
            let stem = req.preset.clone().or_else(|| {
                req.config
                    .as_ref()
                    .and_then(|p| p.file_stem())
                    .map(|s| s.to_string_lossy().into_owned())
            });
            PathBuf::from("out").join(stem.unwrap_or_else(|| "run".into()))
        });
    let mut ctx = Context {
        req,
        cfg: &cfg,
        dir: out_dir.clone(),
        files: Vec::new(),
        summary: Vec::new(),
        manifest: Vec::new(),
    };
    let result = fs::create_dir_all(&out_dir).map_err(Error::from).and_then(|_| ctx.dispatch());
    let code = match &result {
        Ok(()) => 0,
        Err(e) => {
            ctx.summary.push(e.to_string());
            exit_code(e)
        }
    };
    let status = match &result {
        Ok(()) => "ok".to_string(),
        Err(e) => e.to_string(),
    };
    if let Err(e) = ctx.write_manifest(code, &status) {
        ctx.summary.push(format!("could not write manifest: {e}"));
    }
    RunOutcome {
        code,
        out_dir: Some(out_dir),
        files: ctx.files,
        summary: ctx.summary,
    }
}

fn load(req: &RunRequest) -> Result<ExperimentConfig> {
    let overlay = match &req.config {
        Some(p) => Some(fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?),
        None => None,
    };
    ExperimentConfig::load(req.preset.as_deref(), overlay.as_deref())
}

struct Context<'a> {
    req: &'a RunRequest,
    cfg: &'a ExperimentConfig,
    dir: PathBuf,
    files: Vec<String>,
    summary: Vec<String>,
    manifest: Vec<(String, String)>,
}

impl Context<'_> {
    fn path(&mut self, name: &str) -> PathBuf {
        if !self.files.iter().any(|f| f == name) {
            self.files.push(name.to_string());
        }
        self.dir.join(name)
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.manifest.push((key.to_string(), value.to_string()));
    }

    fn say(&mut self, line: String) {
        self.summary.push(line);
    }

    fn dispatch(&mut self) -> Result<()> {
        match self.req.command {
            Command::Classify => self.classify(),
            Command::Solve => self.solve(),
            Command::Profile => self.profile(),
            Command::Sp => self.sp(),
            Command::Soliton => self.soliton(),
            Command::Scan => self.scan(),
        }
    }

    fn potential(&self) -> PotentialSummary {
        PotentialSummary::constant(Complex64::new(self.cfg.coefficients.phi, 0.0))
    }

    fn check_regime(&mut self) -> Result<()> {
        let rep = classify(self.cfg.a(), self.cfg.b(), &self.potential(), None);
        self.note("existence_admissible", rep.existence_ok);
        self.note("uniqueness_admissible", rep.uniqueness_ok);
        if self.cfg.analysis.require_admissible && !rep.existence_ok {
            return Err(Error::Regime(format!(
                "a = {}, b = {} fail: {}",
                self.cfg.a(),
                self.cfg.b(),
                rep.failures().join(", ")
            )));
        }
        Ok(())
    }

    fn problem<'d>(&self, d: &'d Domain) -> Result<Problem<'d>> {
        let f = self.cfg.forcing(d)?;
        let p = Problem::new(d, self.cfg.a(), self.cfg.b(), f)?;
        if self.cfg.coefficients.phi > 0.0 {
            return p.with_potential(vec![self.cfg.coefficients.phi; d.node_count()]);
        }
        Ok(p)
    }

    fn classify(&mut self) -> Result<()> {
        let d = self.cfg.build_domain(self.req.refine)?;
        let f = self.cfg.forcing(&d)?;
        let f_inf = f.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        let rep = classify(self.cfg.a(), self.cfg.b(), &self.potential(), Some(f_inf));
        let mut rows = vec![
            vec!["existence".to_string(), rep.existence_ok.to_string()],
            vec!["uniqueness".to_string(), rep.uniqueness_ok.to_string()],
            vec!["null_solution_possible".to_string(), rep.null_solution_possible.to_string()],
            vec!["uniqueness_sufficient_only".to_string(), rep.uniqueness_sufficient_only.to_string()],
        ];
        rows.extend(rep.reasons.iter().map(|r| vec![r.condition.clone(), r.holds.to_string()]));
        let path = self.path("classify.csv");
        write_table(&path, &["condition", "holds"], &rows)?;
        self.say(format!(
            "existence {} uniqueness {} null solution {}",
            rep.existence_ok, rep.uniqueness_ok, rep.null_solution_possible
        ));
        for r in &rep.reasons {
            self.say(r.to_string());
        }
        self.check_regime()
    }

    /// Solves, writing partial artifacts when the continuation stalls.
    fn run_solve(&mut self, p: &Problem) -> Result<SolveReport> {
        let opts = self.cfg.solver_options();
        match solve(p, &opts) {
            Ok(r) => Ok(r),
            Err(Error::NonConvergence {
                stage,
                iterations,
                last_increment,
                trace,
            }) => {
                if let Some(last) = &trace.last {
                    let path = self.path("field.csv");
                    write_field(&path, p.domain, &last.values, last.section.as_deref(), p.potential.as_deref())?;
                }
                let rows: Vec<Vec<String>> = trace.history.iter().enumerate().map(|(k, h)| vec![k.to_string(), num(*h)]).collect();
                let path = self.path("history.csv");
                write_table(&path, &["step", "increment"], &rows)?;
                self.note("stalled_stage", &trace.stage);
                Err(Error::NonConvergence {
                    stage,
                    iterations,
                    last_increment,
                    trace,
                })
            }
            Err(e) => Err(e),
        }
    }

    fn describe(&mut self, d: &Domain) {
        let spec = d.spec();
        self.note("domain_lower", format!("{:?}", spec.lower));
        self.note("domain_upper", format!("{:?}", spec.upper));
        self.note("domain_nodes", format!("{:?}", spec.nodes));
        self.note("domain_boundary", spec.boundary);
        self.note("h", num(d.h_max()));
    }

    fn write_solution(&mut self, d: &Domain, p: &Problem, rep: &SolveReport, extra: &mut Vec<(String, String)>) -> Result<()> {
        let center = center_of(d);
        let s = support_radius(d, rep.u(), rep.section.threshold, center);
        let mut rows = vec![
            ("converged".to_string(), rep.flags.converged.to_string()),
            ("continuation_converged".to_string(), rep.flags.continuation_converged.to_string()),
            ("polished".to_string(), rep.flags.polished.to_string()),
            ("polish_rounds".to_string(), rep.polish_rounds.to_string()),
            ("clipped_section".to_string(), rep.flags.clipped_section.to_string()),
            ("regime_supported".to_string(), rep.flags.regime_supported.to_string()),
            ("residual_inf".to_string(), num(rep.residual_inf)),
            ("h1".to_string(), num(rep.norms.h1)),
            ("l1".to_string(), num(rep.norms.l1)),
            ("l2".to_string(), num(rep.norms.l2)),
            ("identity_real_rel".to_string(), num(rep.identities.real_rel)),
            ("identity_imag_rel".to_string(), num(rep.identities.imag_rel)),
            ("apriori_ratio".to_string(), num(apriori_ratio(p, rep.u())?)),
            ("stages".to_string(), rep.stages.len().to_string()),
            ("last_n".to_string(), rep.stages.last().map_or(0, |s| s.n).to_string()),
            ("delta".to_string(), num(rep.delta)),
            ("support_threshold".to_string(), num(rep.section.threshold)),
            ("support_nodes".to_string(), s.nodes.to_string()),
            ("support_radius".to_string(), num(s.radius)),
            ("support_boundary_margin".to_string(), num(s.boundary_margin)),
        ];
        let dev = rep
            .section
            .values
            .iter()
            .zip(&p.forcing)
            .map(|(s, f)| (s - f / p.a).norm())
            .fold(0.0f64, f64::max);
        rows.push(("max_abs_U_minus_F_over_a".to_string(), num(dev)));
        if let Some(sym) = rep.symmetry_defect {
            rows.push(("symmetry_defect".to_string(), num(sym)));
        }
        rows.append(extra);
        let path = self.path("solve_report.csv");
        write_key_values(&path, &rows)?;
        let path = self.path("stages.csv");
        write_stages(&path, &rep.stages)?;
        let path = self.path("field.csv");
        write_field(&path, d, rep.u(), Some(&rep.section.values), p.potential.as_deref())?;
        self.say(format!(
            "converged {} residual {:.3e} |u|_H1 {:.6e} support radius {:.4} (margin {:.4}) identities {:.1e}/{:.1e}",
            rep.flags.converged,
            rep.residual_inf,
            rep.norms.h1,
            s.radius,
            s.boundary_margin,
            rep.identities.real_rel,
            rep.identities.imag_rel
        ));
        if !rep.flags.converged {
            return Err(Error::NonConvergence {
                stage: "final residual check".into(),
                iterations: rep.stages.iter().map(|s| s.iterations).sum(),
                last_increment: rep.residual_inf,
                trace: Box::default(),
            });
        }
        Ok(())
    }

    fn symmetry(&self, d: &Domain, rep: &mut SolveReport) {
        if !self.cfg.analysis.symmetry {
            return;
        }
        let mut worst = rep.check_symmetry(|i| d.reflect(i, 0));
        if d.dim() == 2 {
            worst = worst.max(rep.check_symmetry(|i| d.reflect(i, 1)));
            if d.quarter_turn(0).is_some() {
                worst = worst.max(rep.check_symmetry(|i| d.quarter_turn(i).unwrap_or(i)));
            }
        }
        rep.symmetry_defect = Some(worst);
    }

    fn solve(&mut self) -> Result<()> {
        self.check_regime()?;
        let d = self.cfg.build_domain(self.req.refine)?;
        self.describe(&d);
        let p = self.problem(&d)?;
        let mut rep = self.run_solve(&p)?;
        self.symmetry(&d, &mut rep);
        let mut extra = Vec::new();
        if !self.cfg.analysis.tail_levels.is_empty() {
            let largest = self.tail_sweep(&d, &p)?;
            extra.push((
                "largest_compact_tail".to_string(),
                largest.map_or("none".to_string(), num),
            ));
        }
        self.write_solution(&d, &p, &rep, &mut extra)
    }

    /// Re-solves with the forcing outside its main support replaced by each
    /// tail level and records whether the support stays 0.5 away from the boundary.
    fn tail_sweep(&mut self, d: &Domain, p: &Problem) -> Result<Option<f64>> {
        let shape = self.cfg.forcing.shape()?;
        let base = crate::config::forcing_values(&shape, d)?;
        let bg = match &shape {
            Forcing::IndicatorBall { background, .. } | Forcing::IndicatorBox { background, .. } => *background,
            _ => return Err(Error::Config("analysis.tail_levels: needs an indicator forcing".into())),
        };
        let opts = self.cfg.solver_options();
        let mut rows = Vec::new();
        let mut largest = None;
        let center = center_of(d);
        for &eps in &self.cfg.analysis.tail_levels {
            let mut f = base.clone();
            for z in &mut f {
                if *z == bg {
                    *z = Complex64::new(eps, 0.0);
                }
            }
            let q = Problem::new(d, p.a, p.b, f)?;
            let rep = solve(&q, &opts)?;
            let s = support_radius(d, rep.u(), rep.section.threshold, center);
            let compact = s.boundary_margin >= 0.5;
            if compact && largest.is_none_or(|l| eps > l) {
                largest = Some(eps);
            }
            rows.push(vec![num(eps), compact.to_string(), num(s.radius), num(s.boundary_margin), rep.flags.converged.to_string()]);
        }
        let path = self.path("tail_sweep.csv");
        write_table(&path, &["epsilon", "compact", "support_radius", "boundary_margin", "converged"], &rows)?;
        Ok(largest)
    }

    fn profile(&mut self) -> Result<()> {
        self.check_regime()?;
        let d = self.cfg.build_domain(self.req.refine)?;
        self.describe(&d);
        let p = self.problem(&d)?;
        let mut rep = self.run_solve(&p)?;
        self.symmetry(&d, &mut rep);
        let centers: Vec<[f64; 2]> = self.cfg.analysis.centers.iter().map(|c| c.point()).collect();
        if centers.is_empty() {
            return Err(Error::Config("analysis.centers: profile needs at least one centre".into()));
        }
        let tau: Vec<f64> = {
            let n = self.cfg.analysis.tau_points;
            (0..n).map(|k| 0.501 + (1.0 - 0.501) * k as f64 / (n - 1) as f64).collect()
        };
        let mut rows = Vec::new();
        for (k, &x0) in centers.iter().enumerate() {
            let radii = default_radii(&d, x0);
            let prof = local_profile(&d, rep.u(), Some(&p.forcing), x0, &radii)?;
            let check = check_localization_inequality(&prof, self.cfg.analysis.m);
            let path = self.path(&format!("profile_{k}.csv"));
            write_profile(&path, &prof, &check.margin)?;
            let limit = forcing_free_radius(&d, &p.forcing, x0);
            let m_fit = fit_localization_constant(&prof, limit, 1e-14);
            let rho0 = self.cfg.analysis.rho0.unwrap_or(limit);
            let j = prof.index_at(rho0).unwrap_or(0);
            let rmax = if prof.rho[j] > 0.0 {
                rho_max(
                    &RhoMaxInput {
                        energy: prof.energy[j],
                        l1: prof.l1[j],
                        rho0: prof.rho[j],
                        m: self.cfg.analysis.m,
                        c: self.cfg.analysis.c,
                        dim: d.dim(),
                    },
                    &tau,
                )?
            } else {
                0.0
            };
            rows.push(vec![
                num(x0[0]),
                num(x0[1]),
                num(limit),
                num(m_fit),
                num(check.min_margin),
                num(prof.rho[j]),
                num(prof.energy[j]),
                num(prof.l1[j]),
                num(rmax),
            ]);
            self.say(format!("centre {x0:?}: forcing-free radius {limit:.4}, fitted M {m_fit:.6}, ρ_max {rmax:.4}"));
        }
        let path = self.path("localization.csv");
        write_table(
            &path,
            &["center_x", "center_y", "forcing_free_radius", "m_fit", "min_margin", "rho0", "E_rho0", "b_rho0", "rho_max"],
            &rows,
        )?;
        self.write_solution(&d, &p, &rep, &mut Vec::new())
    }

    fn sp(&mut self) -> Result<()> {
        self.check_regime()?;
        let d = self.cfg.build_domain(self.req.refine)?;
        self.describe(&d);
        let f = self.cfg.forcing(&d)?;
        let p = Problem::new(&d, self.cfg.a(), self.cfg.b(), f)?;
        let e = self.cfg.coefficients.e;
        let opts = self.cfg.sp_options();
        let s = match solve_sp(&p, e, &opts) {
            Ok(s) => s,
            Err(err @ Error::NonConvergence { .. }) => {
                if let Error::NonConvergence { trace, .. } = &err {
                    if let Some(last) = &trace.last {
                        let path = self.path("field.csv");
                        write_field(&path, &d, &last.values, last.section.as_deref(), None)?;
                    }
                    let rows: Vec<Vec<String>> = trace.history.iter().enumerate().map(|(k, h)| vec![k.to_string(), num(*h)]).collect();
                    let path = self.path("sp_history.csv");
                    write_table(&path, &["k", "increment"], &rows)?;
                }
                return Err(err);
            }
            Err(err) => return Err(err),
        };
        let rows: Vec<Vec<String>> = s
            .history
            .iter()
            .enumerate()
            .map(|(k, h)| vec![(k + 1).to_string(), num(h.du_h1), num(h.dphi_h1), num(h.identity), num(h.min_phi_ratio)])
            .collect();
        let path = self.path("sp_history.csv");
        write_table(&path, &["k", "du_h1", "dphi_h1", "identity_residual", "min_phi_ratio"], &rows)?;
        let coupled: Vec<f64> = s.phi.iter().map(|v| e * v).collect();
        let pk = p.clone().with_potential(coupled)?;
        let mut extra = vec![
            ("outer_iterations".to_string(), s.iterations.to_string()),
            ("max_identity_residual".to_string(), num(s.max_identity_residual())),
            ("min_phi_ratio".to_string(), num(s.min_phi_ratio())),
            ("sp_bound_ratio".to_string(), num(sp_bound_check(&d, &s, &p.forcing)?)),
        ];
        self.say(format!(
            "outer iterations {} identity residual {:.2e} min φ/‖φ‖ {:.2e}",
            s.iterations,
            s.max_identity_residual(),
            s.min_phi_ratio()
        ));
        let rep = s.last_inner.clone();
        self.write_solution(&d, &pk, &rep, &mut extra)?;
        // field.csv carries φ itself rather than e φ
        let path = self.path("field.csv");
        write_field(&path, &d, rep.u(), Some(&rep.section.values), Some(&s.phi))
    }

    fn soliton(&mut self) -> Result<()> {
        let sol = self
            .cfg
            .soliton
            .clone()
            .ok_or_else(|| Error::Config("soliton: missing [soliton] section".into()))?;
        let d = self.cfg.build_domain(self.req.refine)?;
        self.describe(&d);
        let f = self.cfg.forcing(&d)?;
        let lambda = sol.lambda.value();
        let p = soliton_problem(&d, lambda, sol.mu, &f).map_err(|e| Error::Config(format!("soliton: {e}")))?;
        self.note("lambda", lambda);
        self.note("mu", num(sol.mu));
        let rep = self.run_solve(&p)?;
        let check = soliton_check(&d, rep.u(), &rep.section.values, lambda, sol.mu, &f, &sol.times, center_of(&d))?;
        let rows: Vec<Vec<String>> = check
            .samples
            .iter()
            .map(|s| {
                vec![
                    num(s.t),
                    num(s.residual_inf),
                    num((s.residual_inf - check.stationary_residual).abs()),
                    num(s.support_radius),
                    s.support_nodes.to_string(),
                ]
            })
            .collect();
        let path = self.path("soliton.csv");
        write_table(&path, &["t", "residual_inf", "deviation", "support_radius", "support_nodes"], &rows)?;
        let mut extra = vec![
            ("soliton_stationary_residual".to_string(), num(check.stationary_residual)),
            ("soliton_max_deviation".to_string(), num(check.max_deviation)),
            ("soliton_support_identical".to_string(), check.support_identical.to_string()),
        ];
        self.say(format!(
            "soliton: max deviation {:.2e}, support identical {}",
            check.max_deviation, check.support_identical
        ));
        self.write_solution(&d, &p, &rep, &mut extra)
    }

    fn scan(&mut self) -> Result<()> {
        let (slices, grid) = self
            .cfg
            .scan_grid()
            .unwrap_or_else(|| (reference_slices().to_vec(), ScanGrid::default()));
        let rows = region_scan(&slices, &grid).map_err(|e| Error::Config(format!("scan: {e}")))?;
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| {
                vec![
                    num(r.a.re),
                    num(r.a.im),
                    num(r.b.re),
                    num(r.b.im),
                    r.a_in_a.to_string(),
                    r.b_in_a.to_string(),
                    r.existence.to_string(),
                    r.uniqueness.to_string(),
                ]
            })
            .collect();
        let path = self.path("scan.csv");
        write_table(&path, &["a_re", "a_im", "b_re", "b_im", "a_in_A", "b_in_A", "existence", "uniqueness"], &table)?;
        for a in &slices {
            let part: Vec<_> = rows.iter().filter(|r| r.a == *a).collect();
            let ex = part.iter().filter(|r| r.existence).count();
            let un = part.iter().filter(|r| r.uniqueness).count();
            self.say(format!("a = {a}: {ex}/{} admissible for existence, {un} for uniqueness", part.len()));
        }
        Ok(())
    }

    fn write_manifest(&mut self, code: i32, status: &str) -> Result<()> {
        let mut s = String::new();
        let cfg = self.cfg;
        let _ = writeln!(s, "tool = satlab {}", env!("CARGO_PKG_VERSION"));
        let _ = writeln!(s, "command = {}", self.req.command.name());
        if let Some(name) = &self.req.preset {
            let _ = writeln!(s, "preset = {name}");
            if let Some(p) = preset(name) {
                let _ = writeln!(s, "exercises = {}", p.exercises);
            }
        }
        if let Some(path) = &self.req.config {
            let _ = writeln!(s, "config = {}", path.display());
        }
        let _ = writeln!(s, "description = {}", cfg.description);
        let _ = writeln!(s, "refine = {}", self.req.refine);
        let _ = writeln!(s, "seed = {}", cfg.seed);
        let _ = writeln!(s, "a = {}", cfg.a());
        let _ = writeln!(s, "b = {}", cfg.b());
        let _ = writeln!(s, "e = {}", cfg.coefficients.e);
        let _ = writeln!(s, "phi = {}", cfg.coefficients.phi);
        let _ = writeln!(s, "forcing = {:?}", cfg.forcing);
        let _ = writeln!(s, "solver = {:?}", cfg.solver_options());
        let _ = writeln!(s, "analysis = {:?}", cfg.analysis);
        for (k, v) in &self.manifest {
            let _ = writeln!(s, "{k} = {v}");
        }
        let _ = writeln!(s, "files = {}", self.files.join(", "));
        let _ = writeln!(s, "status = {status}");
        let _ = writeln!(s, "exit_code = {code}");
        self.path("run_manifest.txt");
        fs::write(self.dir.join("run_manifest.txt"), s)?;
        Ok(())
    }
}

fn center_of(d: &Domain) -> [f64; 2] {
    let (lo, hi) = (d.lower(), d.upper());
    let mut c = [0.0; 2];
    for k in 0..d.dim() {
        c[k] = 0.5 * (lo[k] + hi[k]);
    }
    c
}

/// Largest radius about `x0` whose ball avoids both `{F ≠ 0}` and the
/// domain boundary; the boundary distance alone when `F` vanishes nowhere.
pub fn forcing_free_radius(d: &Domain, f: &[Complex64], x0: [f64; 2]) -> f64 {
    let mut wall = f64::INFINITY;
    for k in 0..d.dim() {
        wall = wall.min(x0[k] - d.lower()[k]).min(d.upper()[k] - x0[k]);
    }
    let to_forcing = (0..d.node_count())
        .filter(|&i| f[i].norm() > 0.0 && !d.is_fixed(i))
        .map(|i| d.distance(i, x0))
        .fold(f64::INFINITY, f64::min);
    let nowhere_zero = (0..d.node_count()).filter(|&i| !d.is_fixed(i)).all(|i| f[i].norm() > 0.0);
    if nowhere_zero {
        wall
    } else {
        (to_forcing - d.h_max()).max(0.0).min(wall)
    }
}

/// Directory listing helper for callers that want every artifact path.
pub fn artifact_paths(outcome: &RunOutcome) -> Vec<PathBuf> {
    let dir: &Path = outcome.out_dir.as_deref().unwrap_or_else(|| Path::new("."));
    outcome.files.iter().map(|f| dir.join(f)).collect()
}
