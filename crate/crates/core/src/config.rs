//! Experiment configuration: a TOML document with sections `[domain]`,
//! `[coefficients]`, `[forcing]`, `[solver]`, `[analysis]`, `[poisson]`,
//! `[soliton]`, `[scan]` and `[output]`. Unknown keys are rejected.
//!
//! ```toml
//! seed = 7
//!
//! [domain]
//! lower = -4.0          # scalar or [x, y]
//! upper = 4.0
//! nodes = 257           # per axis; a 2-array makes the domain 2D
//! boundary = "dirichlet"
//!
//! [coefficients]
//! a = 1.0               # real or [re, im]
//! b = [0.0, 1.0]
//!
//! [forcing]
//! kind = "indicator_ball"
//! center = 0.0
//! radius = 0.5
//! value = 5.0
//! ```
//!
//! Named presets are complete documents; a config file given alongside a
//! preset is merged over it key by key.

use num_complex::Complex64;
use serde::Deserialize;

use crate::domain::{Boundary, Domain, DomainSpec};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::poisson::SpOptions;
use crate::scan::ScanGrid;
use crate::solver::{Scheme, SolverOptions};

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged, expecting = "a number or an [re, im] pair")]
pub enum ComplexValue {
    Real(f64),
    Pair([f64; 2]),
}

impl ComplexValue {
    pub fn value(self) -> Complex64 {
        match self {
            ComplexValue::Real(r) => Complex64::new(r, 0.0),
            ComplexValue::Pair([r, i]) => Complex64::new(r, i),
        }
    }
}

impl Default for ComplexValue {
    fn default() -> Self {
        ComplexValue::Real(0.0)
    }
}

/// A scalar (1D) or a pair (2D).
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(untagged, expecting = "a number (1D) or an [x, y] pair (2D)")]
pub enum Axes<T> {
    One(T),
    Two([T; 2]),
}

impl<T: Copy> Axes<T> {
    fn to_vec(self) -> Vec<T> {
        match self {
            Axes::One(v) => vec![v],
            Axes::Two(v) => v.to_vec(),
        }
    }
}

impl Axes<f64> {
    pub fn point(self) -> [f64; 2] {
        match self {
            Axes::One(x) => [x, 0.0],
            Axes::Two(p) => p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainSection {
    pub lower: Axes<f64>,
    pub upper: Axes<f64>,
    pub nodes: Axes<usize>,
    pub boundary: Boundary,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientSection {
    pub a: ComplexValue,
    pub b: ComplexValue,
    /// Schrödinger–Poisson coupling.
    #[serde(default)]
    pub e: f64,
    /// Constant potential `φ ≥ 0`.
    #[serde(default)]
    pub phi: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointMass {
    pub at: Axes<f64>,
    pub mass: ComplexValue,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ForcingKind {
    Constant,
    IndicatorBall,
    IndicatorBox,
    PointMasses,
    Expression,
}

/// `[forcing]` as written. Which keys are required depends on `kind`:
///
/// | kind | keys |
/// |------|------|
/// | `constant` | `value` |
/// | `indicator_ball` | `center`, `radius`, `value`, optional `background` |
/// | `indicator_box` | `lower`, `upper`, `value`, optional `background` |
/// | `point_masses` | `points = [{ at, mass }, …]` |
/// | `expression` | `re`, optional `im` |
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSection {
    pub kind: ForcingKind,
    pub value: Option<ComplexValue>,
    pub background: Option<ComplexValue>,
    pub center: Option<Axes<f64>>,
    pub radius: Option<f64>,
    pub lower: Option<Axes<f64>>,
    pub upper: Option<Axes<f64>>,
    pub points: Option<Vec<PointMass>>,
    pub re: Option<String>,
    pub im: Option<String>,
}

/// Validated forcing shape. Indicators carry a constant `background` outside.
#[derive(Debug, Clone, PartialEq)]
pub enum Forcing {
    Constant {
        value: Complex64,
    },
    IndicatorBall {
        center: [f64; 2],
        radius: f64,
        value: Complex64,
        background: Complex64,
    },
    IndicatorBox {
        lower: [f64; 2],
        upper: [f64; 2],
        value: Complex64,
        background: Complex64,
    },
    PointMasses {
        points: Vec<([f64; 2], Complex64)>,
    },
    Expression {
        re: String,
        im: Option<String>,
    },
}

impl ForcingSection {
    pub fn shape(&self) -> Result<Forcing> {
        fn need<T: Clone>(v: &Option<T>, key: &str, kind: &str) -> Result<T> {
            v.clone().ok_or_else(|| config_err(&format!("forcing.{key}"), format!("required for kind = \"{kind}\"")))
        }
        let allowed: &[&str] = match self.kind {
            ForcingKind::Constant => &["value"],
            ForcingKind::IndicatorBall => &["center", "radius", "value", "background"],
            ForcingKind::IndicatorBox => &["lower", "upper", "value", "background"],
            ForcingKind::PointMasses => &["points"],
            ForcingKind::Expression => &["re", "im"],
        };
        let present = [
            ("value", self.value.is_some()),
            ("background", self.background.is_some()),
            ("center", self.center.is_some()),
            ("radius", self.radius.is_some()),
            ("lower", self.lower.is_some()),
            ("upper", self.upper.is_some()),
            ("points", self.points.is_some()),
            ("re", self.re.is_some()),
            ("im", self.im.is_some()),
        ];
        let kind = format!("{:?}", self.kind);
        if let Some((key, _)) = present.iter().find(|(k, p)| *p && !allowed.contains(k)) {
            return Err(config_err(&format!("forcing.{key}"), format!("not used by kind {kind}")));
        }
        let bg = self.background.map_or(Complex64::default(), |v| v.value());
        Ok(match self.kind {
            ForcingKind::Constant => Forcing::Constant {
                value: need(&self.value, "value", &kind)?.value(),
            },
            ForcingKind::IndicatorBall => {
                let radius = need(&self.radius, "radius", &kind)?;
                if !(radius > 0.0) {
                    return Err(config_err("forcing.radius", "must be positive"));
                }
                Forcing::IndicatorBall {
                    center: need(&self.center, "center", &kind)?.point(),
                    radius,
                    value: need(&self.value, "value", &kind)?.value(),
                    background: bg,
                }
            }
            ForcingKind::IndicatorBox => Forcing::IndicatorBox {
                lower: need(&self.lower, "lower", &kind)?.point(),
                upper: need(&self.upper, "upper", &kind)?.point(),
                value: need(&self.value, "value", &kind)?.value(),
                background: bg,
            },
            ForcingKind::PointMasses => Forcing::PointMasses {
                points: need(&self.points, "points", &kind)?
                    .iter()
                    .map(|p| (p.at.point(), p.mass.value()))
                    .collect(),
            },
            ForcingKind::Expression => {
                let re = need(&self.re, "re", &kind)?;
                Expr::parse(&re).map_err(|e| config_err("forcing.re", e))?;
                if let Some(im) = &self.im {
                    Expr::parse(im).map_err(|e| config_err("forcing.im", e))?;
                }
                Forcing::Expression { re, im: self.im.clone() }
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub scheme: Option<Scheme>,
    pub tol_fp: Option<f64>,
    pub tol_cont: Option<f64>,
    pub tol_pde: Option<f64>,
    pub damping: Option<f64>,
    pub delta: Option<f64>,
    pub max_iter: Option<usize>,
    pub n_max_exponent: Option<u32>,
    pub anderson_depth: Option<usize>,
    pub polish: Option<bool>,
    pub max_polish_rounds: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    /// Exit with the regime code unless the existence conditions hold.
    #[serde(default)]
    pub require_admissible: bool,
    /// Profile centres.
    #[serde(default)]
    pub centers: Vec<Axes<f64>>,
    /// Localization constant `M`.
    #[serde(default = "one")]
    pub m: f64,
    /// Constant `C` of the vanishing-radius formula.
    #[serde(default = "one")]
    pub c: f64,
    #[serde(default = "tau_points")]
    pub tau_points: usize,
    /// Radius at which the vanishing-radius formula is evaluated.
    pub rho0: Option<f64>,
    /// Record `max |u(x) − u(Rx)|` for reflections (and the quarter turn in 2D).
    #[serde(default)]
    pub symmetry: bool,
    /// Tail levels for the small-tail sweep.
    #[serde(default)]
    pub tail_levels: Vec<f64>,
}

fn one() -> f64 {
    1.0
}

fn tau_points() -> usize {
    64
}

impl Default for AnalysisSection {
    fn default() -> Self {
        AnalysisSection {
            require_admissible: false,
            centers: Vec::new(),
            m: 1.0,
            c: 1.0,
            tau_points: 64,
            rho0: None,
            symmetry: false,
            tail_levels: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct PoissonSection {
    pub tol_sp: Option<f64>,
    pub max_outer: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonSection {
    pub lambda: ComplexValue,
    pub mu: f64,
    #[serde(default = "default_times")]
    pub times: Vec<f64>,
}

fn default_times() -> Vec<f64> {
    vec![0.0, 0.7, std::f64::consts::PI, 10.0]
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    pub slices: Vec<ComplexValue>,
    #[serde(default = "scan_range")]
    pub re: [f64; 2],
    #[serde(default = "scan_range")]
    pub im: [f64; 2],
    #[serde(default = "scan_points")]
    pub points: usize,
}

fn scan_range() -> [f64; 2] {
    [-3.0, 3.0]
}

fn scan_points() -> usize {
    61
}

#[derive(Debug, Clone, PartialEq, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub seed: u64,
    pub domain: DomainSection,
    pub coefficients: CoefficientSection,
    pub forcing: ForcingSection,
    #[serde(default)]
    pub solver: SolverSection,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub poisson: PoissonSection,
    pub soliton: Option<SolitonSection>,
    pub scan: Option<ScanSection>,
    #[serde(default)]
    pub output: OutputSection,
}

fn config_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("{field}: {msg}"))
}

impl ExperimentConfig {
    /// Parses and validates a TOML document.
    pub fn from_toml(src: &str) -> Result<Self> {
        let cfg: ExperimentConfig = toml::from_str(src).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads a preset, optionally overlaid with a user document.
    pub fn load(preset: Option<&str>, overlay: Option<&str>) -> Result<Self> {
        if let (None, Some(src)) = (preset, overlay) {
            return Self::from_toml(src);
        }
        let mut base = match preset {
            Some(name) => {
                let src = preset_source(name).ok_or_else(|| {
                    let known: Vec<&str> = PRESETS.iter().map(|p| p.name).collect();
                    config_err("preset", format!("unknown preset '{name}', expected one of {}", known.join(", ")))
                })?;
                src.parse::<toml::Table>().map_err(|e| Error::Internal(format!("preset {name}: {e}")))?
            }
            None => toml::Table::new(),
        };
        if let Some(src) = overlay {
            let top = src.parse::<toml::Table>().map_err(|e| Error::Config(e.to_string()))?;
            merge(&mut base, top);
        }
        if preset.is_none() && overlay.is_none() {
            return Err(Error::Config("either --config or --preset is required".into()));
        }
        let text = toml::to_string(&base).map_err(|e| Error::Internal(e.to_string()))?;
        Self::from_toml(&text)
    }

    fn validate(&self) -> Result<()> {
        let d = &self.domain;
        let (lo, hi, n) = (d.lower.to_vec(), d.upper.to_vec(), d.nodes.to_vec());
        if lo.len() != hi.len() || lo.len() != n.len() {
            return Err(config_err("domain", "lower, upper and nodes must all be scalars (1D) or all pairs (2D)"));
        }
        if n.iter().any(|&k| k < 3) {
            return Err(config_err("domain.nodes", "need at least 3 nodes per axis"));
        }
        if lo.iter().zip(&hi).any(|(l, h)| !(l < h) || !l.is_finite() || !h.is_finite()) {
            return Err(config_err("domain.lower", "each lower bound must be finite and below the upper bound"));
        }
        let c = &self.coefficients;
        for (name, z) in [("coefficients.a", c.a.value()), ("coefficients.b", c.b.value())] {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(config_err(name, "must be finite"));
            }
        }
        if !(c.e >= 0.0) || !c.e.is_finite() {
            return Err(config_err("coefficients.e", "coupling must be finite and non-negative"));
        }
        if !(c.phi >= 0.0) || !c.phi.is_finite() {
            return Err(config_err("coefficients.phi", "potential must be finite and non-negative"));
        }
        self.forcing.shape()?;
        let s = &self.solver;
        for (name, v) in [("solver.tol_fp", s.tol_fp), ("solver.tol_cont", s.tol_cont), ("solver.tol_pde", s.tol_pde)] {
            if v.is_some_and(|t| !(t > 0.0)) {
                return Err(config_err(name, "tolerance must be positive"));
            }
        }
        if s.damping.is_some_and(|t| !(t > 0.0 && t <= 1.0)) {
            return Err(config_err("solver.damping", "must lie in (0, 1]"));
        }
        if s.delta.is_some_and(|t| !(0.0..=1.0).contains(&t)) {
            return Err(config_err("solver.delta", "must lie in [0, 1]"));
        }
        let a = &self.analysis;
        if !(a.m > 0.0) || !(a.c > 0.0) {
            return Err(config_err("analysis.m", "constants M and C must be positive"));
        }
        if a.tau_points < 2 {
            return Err(config_err("analysis.tau_points", "need at least 2 points"));
        }
        if let Some(sol) = &self.soliton {
            if !(sol.mu > 0.0) {
                return Err(config_err("soliton.mu", "must be positive"));
            }
            if sol.times.is_empty() {
                return Err(config_err("soliton.times", "need at least one sample time"));
            }
        }
        if self.poisson.max_outer == Some(0) {
            return Err(config_err("poisson.max_outer", "must be positive"));
        }
        Ok(())
    }

    pub fn domain_spec(&self, refine: u32) -> DomainSpec {
        DomainSpec {
            lower: self.domain.lower.to_vec(),
            upper: self.domain.upper.to_vec(),
            nodes: self.domain.nodes.to_vec(),
            boundary: self.domain.boundary,
        }
        .refined(refine)
    }

    pub fn build_domain(&self, refine: u32) -> Result<Domain> {
        Domain::new(&self.domain_spec(refine)).map_err(|e| config_err("domain", e))
    }

    pub fn a(&self) -> Complex64 {
        self.coefficients.a.value()
    }

    pub fn b(&self) -> Complex64 {
        self.coefficients.b.value()
    }

    /// Nodal forcing density on `d`.
    pub fn forcing(&self, d: &Domain) -> Result<Vec<Complex64>> {
        forcing_values(&self.forcing.shape()?, d)
    }

    pub fn solver_options(&self) -> SolverOptions {
        let s = &self.solver;
        let def = SolverOptions::default();
        SolverOptions {
            scheme: s.scheme.unwrap_or(def.scheme),
            tol_fp: s.tol_fp.unwrap_or(def.tol_fp),
            tol_cont: s.tol_cont.unwrap_or(def.tol_cont),
            tol_pde: s.tol_pde.unwrap_or(def.tol_pde),
            damping: s.damping,
            min_damping: def.min_damping,
            delta: s.delta,
            max_iter: s.max_iter.unwrap_or(def.max_iter),
            n_max_exponent: s.n_max_exponent.unwrap_or(def.n_max_exponent),
            anderson_depth: s.anderson_depth.unwrap_or(def.anderson_depth),
            polish: s.polish.unwrap_or(def.polish),
            max_polish_rounds: s.max_polish_rounds.unwrap_or(def.max_polish_rounds),
        }
    }

    pub fn sp_options(&self) -> SpOptions {
        let def = SpOptions::default();
        SpOptions {
            inner: self.solver_options(),
            tol_sp: self.poisson.tol_sp.unwrap_or(def.tol_sp),
            max_outer: self.poisson.max_outer.unwrap_or(def.max_outer),
        }
    }

    pub fn scan_grid(&self) -> Option<(Vec<Complex64>, ScanGrid)> {
        self.scan.as_ref().map(|s| {
            (
                s.slices.iter().map(|z| z.value()).collect(),
                ScanGrid {
                    re: (s.re[0], s.re[1]),
                    im: (s.im[0], s.im[1]),
                    points: s.points,
                },
            )
        })
    }
}

/// Nodal density of a forcing section. Point masses become `mass / w_i` at
/// the nearest node.
pub fn forcing_values(f: &Forcing, d: &Domain) -> Result<Vec<Complex64>> {
    let out = match f {
        Forcing::Constant { value } => d.sample(|_| *value),
        Forcing::IndicatorBall {
            center: c,
            radius,
            value,
            background,
        } => d.sample(|x| if (x[0] - c[0]).hypot(x[1] - c[1]) < *radius { *value } else { *background }),
        Forcing::IndicatorBox {
            lower: lo,
            upper: hi,
            value,
            background,
        } => {
            let dim = d.dim();
            d.sample(|x| if (0..dim).all(|k| x[k] > lo[k] && x[k] < hi[k]) { *value } else { *background })
        }
        Forcing::PointMasses { points } => {
            let mut out = vec![Complex64::default(); d.node_count()];
            for &(at, mass) in points {
                if !d.contains(at) {
                    return Err(config_err("forcing.points", format!("point {at:?} lies outside the domain")));
                }
                let i = d.nearest_node(at);
                out[i] += mass / d.weights()[i];
            }
            d.enforce_boundary(&mut out);
            out
        }
        Forcing::Expression { re, im } => {
            let re = Expr::parse(re).map_err(|e| config_err("forcing.re", e))?;
            let im = im.as_deref().map(Expr::parse).transpose().map_err(|e| config_err("forcing.im", e))?;
            d.sample(|x| Complex64::new(re.eval(x), im.as_ref().map_or(0.0, |e| e.eval(x))))
        }
    };
    if out.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(config_err("forcing", "evaluates to non-finite values on the grid"));
    }
    Ok(out)
}

fn merge(base: &mut toml::Table, top: toml::Table) {
    for (k, v) in top {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(t)) => merge(b, t),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// A named, self-contained experiment.
#[derive(Debug, Clone, Copy)]
pub struct Preset {
    pub name: &'static str,
    /// Claim the preset exercises and the thresholds it is judged by.
    pub exercises: &'static str,
    pub source: &'static str,
}

pub fn preset_source(name: &str) -> Option<&'static str> {
    PRESETS.iter().find(|p| p.name == name).map(|p| p.source)
}

pub fn preset(name: &str) -> Option<&'static Preset> {
    PRESETS.iter().find(|p| p.name == name)
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "null_solution",
        exercises: "null-solution regime: |F| <= |a| forces u = 0 and U = F/a; pass if |u|_H1 <= 1e-6 and |U - F/a|_inf <= 1e-6",
        source: r#"
description = "1D null-solution regime"
[domain]
lower = -1.0
upper = 1.0
nodes = 513
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "constant"
value = 0.01
[analysis]
require_admissible = true
"#,
    },
    Preset {
        name: "compact_support",
        exercises: "compact support of the solution for compactly supported forcing; pass if the support stays at least 0.5 away from the boundary",
        source: r#"
description = "1D compact support"
[domain]
lower = -4.0
upper = 4.0
nodes = 257
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "indicator_ball"
center = 0.0
radius = 0.5
value = 5.0
[analysis]
require_admissible = true
centers = [1.0, 1.25, -1.0]
symmetry = true
"#,
    },
    Preset {
        name: "compact_support_2d",
        exercises: "compact support in 2D; pass if the support stays at least 0.5 away from the boundary",
        source: r#"
description = "2D compact support"
[domain]
lower = [-4.0, -4.0]
upper = [4.0, 4.0]
nodes = [129, 129]
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "indicator_ball"
center = [0.0, 0.0]
radius = 0.5
value = 5.0
[analysis]
require_admissible = true
centers = [[1.0, 0.0], [0.7, 0.7]]
symmetry = true
"#,
    },
    Preset {
        name: "small_tail",
        exercises: "compact support persists for a small forcing tail outside the compact set; reports the largest tail with compact support",
        source: r#"
description = "1D compact support with a forcing tail"
[domain]
lower = -4.0
upper = 4.0
nodes = 257
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "indicator_ball"
center = 0.0
radius = 0.5
value = 5.0
background = 1e-3
[analysis]
require_admissible = true
tail_levels = [1e-3, 1e-2, 0.1, 0.5, 0.9, 0.99, 1.01, 1.5]
"#,
    },
    Preset {
        name: "uniqueness",
        exercises: "uniqueness for (a, b) = (1, i): solves from three initial guesses agree within 10 tol_fp in H1",
        source: r#"
description = "uniqueness probe"
[domain]
lower = -4.0
upper = 4.0
nodes = 257
boundary = "dirichlet"
[coefficients]
a = 1.0
b = [0.0, 1.0]
[forcing]
kind = "expression"
re = "3 * exp(-4 * x^2)"
im = "x * exp(-x^2)"
[analysis]
require_admissible = true
"#,
    },
    Preset {
        name: "schrodinger_poisson",
        exercises: "Schrodinger-Poisson alternation: |grad phi|^2 = (e/2) int phi |u|^2 within 1e-10 after every Poisson solve and phi >= -1e-12 |phi|_inf",
        source: r#"
description = "2D Schrodinger-Poisson system"
[domain]
lower = [-2.0, -2.0]
upper = [2.0, 2.0]
nodes = [65, 65]
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
e = 1.0
[forcing]
kind = "indicator_box"
lower = [-0.5, -0.5]
upper = [0.5, 0.5]
value = 5.0
[analysis]
require_admissible = true
"#,
    },
    Preset {
        name: "soliton",
        exercises: "compactly supported soliton u0 exp(i mu t): time-sampled residual equals the stationary one within 1e-12 and the support does not move",
        source: r#"
description = "1D soliton profile"
[domain]
lower = -4.0
upper = 4.0
nodes = 257
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "indicator_ball"
center = 0.0
radius = 0.5
value = 5.0
[soliton]
lambda = 1.0
mu = 1.0
"#,
    },
    Preset {
        name: "scan",
        exercises: "admissibility geometry of the (a, b) plane on four reference slices",
        source: r#"
description = "admissibility scan"
[domain]
lower = -1.0
upper = 1.0
nodes = 3
boundary = "dirichlet"
[coefficients]
a = 1.0
b = 1.0
[forcing]
kind = "constant"
value = 0.0
[scan]
slices = [[-1.5, 1.5], [0.0, -2.0], [1.0, 2.0]]
"#,
    },
];
