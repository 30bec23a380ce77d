//! Admissibility of the coefficient pair `(a, b)` and of the potential `φ`.
//!
//! `𝔸` denotes the complex plane with the closed half-line
//! `{Re z ≤ 0, Im z = 0}` removed. Existence needs `a, b ∈ 𝔸` plus a sign
//! condition coupling the imaginary parts; uniqueness needs `a ≠ 0`,
//! `Re a ≥ 0` and `Re(a b̄) + Re(a φ̄) ≥ 0`, with a strict side condition when
//! that sum can vanish.
//!
//! Comparisons with zero are exact: coefficients are configuration values,
//! not computed quantities.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pointwise bounds of a complex potential `φ` over the domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSummary {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// True when `φ` is constant, so the bounds are attained everywhere.
    pub exact: bool,
}

impl PotentialSummary {
    pub fn zero() -> Self {
        Self::constant(Complex64::default())
    }

    pub fn constant(phi: Complex64) -> Self {
        PotentialSummary {
            re_min: phi.re,
            re_max: phi.re,
            im_min: phi.im,
            im_max: phi.im,
            exact: true,
        }
    }

    /// Grid min/max of a sampled potential.
    pub fn from_values(values: &[Complex64]) -> Self {
        let Some(first) = values.first() else {
            return Self::zero();
        };
        let mut s = Self::constant(*first);
        for z in values {
            s.re_min = s.re_min.min(z.re);
            s.re_max = s.re_max.max(z.re);
            s.im_min = s.im_min.min(z.im);
            s.im_max = s.im_max.max(z.im);
        }
        s.exact = s.re_min == s.re_max && s.im_min == s.im_max;
        s
    }

    /// Same as [`PotentialSummary::from_values`] for a real potential.
    pub fn from_real(values: &[f64]) -> Self {
        let c: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        Self::from_values(&c)
    }

    pub fn is_zero(&self) -> bool {
        self.exact && self.re_min == 0.0 && self.im_min == 0.0
    }

    /// Lower bound of `Re(a φ̄) = a_r φ_r + a_i φ_i` over the box of values.
    pub fn inf_re_a_conj_phi(&self, a: Complex64) -> f64 {
        let re = if a.re >= 0.0 { self.re_min } else { self.re_max };
        let im = if a.im >= 0.0 { self.im_min } else { self.im_max };
        a.re * re + a.im * im
    }
}

impl Default for PotentialSummary {
    fn default() -> Self {
        Self::zero()
    }
}

/// One evaluated condition of the admissibility tests.
#[derive(Debug, Clone, PartialEq)]
pub struct Reason {
    pub condition: String,
    pub holds: bool,
}

impl Reason {
    fn new(condition: &str, holds: bool) -> Self {
        Reason {
            condition: condition.to_string(),
            holds,
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            write!(f, "{}", self.condition)
        } else {
            write!(f, "not ({})", self.condition)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegimeReport {
    pub existence_ok: bool,
    pub uniqueness_ok: bool,
    pub null_solution_possible: bool,
    /// Set when the uniqueness verdict rests on bounds of a non-constant `φ`.
    pub uniqueness_sufficient_only: bool,
    pub reasons: Vec<Reason>,
}

impl RegimeReport {
    /// Names of the conditions that failed, e.g. `"a∉𝔸"`.
    pub fn failures(&self) -> Vec<String> {
        self.reasons
            .iter()
            .filter(|r| !r.holds)
            .map(|r| negate(&r.condition))
            .collect()
    }
}

fn negate(condition: &str) -> String {
    if let Some(x) = condition.strip_suffix("∈𝔸") {
        format!("{x}∉𝔸")
    } else {
        format!("not ({condition})")
    }
}

/// Coefficient pair with an optional potential summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffPair {
    pub a: Complex64,
    pub b: Complex64,
    pub potential: PotentialSummary,
}

impl CoeffPair {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        CoeffPair {
            a,
            b,
            potential: PotentialSummary::zero(),
        }
    }

    pub fn with_potential(mut self, potential: PotentialSummary) -> Self {
        self.potential = potential;
        self
    }

    pub fn existence_ok(&self) -> bool {
        existence_admissible(self.a, self.b)
    }

    pub fn uniqueness_ok(&self) -> bool {
        uniqueness_admissible(self.a, self.b, &self.potential)
    }

    pub fn classify(&self, f_inf: Option<f64>) -> RegimeReport {
        classify(self.a, self.b, &self.potential, f_inf)
    }
}

fn finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `z ∈ 𝔸`, i.e. not (`Re z ≤ 0` and `Im z = 0`).
pub fn in_a(z: Complex64) -> Result<bool> {
    if !finite(z) {
        return Err(Error::invalid(format!("non-finite coefficient {z}")));
    }
    Ok(in_a_unchecked(z))
}

fn in_a_unchecked(z: Complex64) -> bool {
    !(z.re <= 0.0 && z.im == 0.0)
}

fn existence_reasons(a: Complex64, b: Complex64) -> (bool, Vec<Reason>) {
    let a_in = finite(a) && in_a_unchecked(a);
    let b_in = finite(b) && in_a_unchecked(b);
    let prod = a.im * b.im;
    let mut reasons = vec![
        Reason::new("a∈𝔸", a_in),
        Reason::new("b∈𝔸", b_in),
        Reason::new("Im(a)Im(b)≥0", prod >= 0.0),
    ];
    let mut sign_ok = prod >= 0.0;
    if prod < 0.0 {
        let tilted = b.re > (b.im / a.im) * a.re;
        reasons.push(Reason::new("Re(b)>(Im(b)/Im(a))Re(a)", tilted));
        sign_ok = tilted;
    }
    (a_in && b_in && sign_ok, reasons)
}

fn uniqueness_reasons(a: Complex64, b: Complex64, phi: &PotentialSummary) -> (bool, Vec<Reason>) {
    let nonzero = a != Complex64::default() && finite(a) && finite(b);
    let re_a = a.re >= 0.0;
    let sum_min = (a * b.conj()).re + phi.inf_re_a_conj_phi(a);
    let sum_ok = sum_min >= 0.0;
    let mut reasons = vec![
        Reason::new("a≠0", nonzero),
        Reason::new("Re(a)≥0", re_a),
        Reason::new("Re(ab̄)+Re(aφ̄)≥0", sum_ok),
    ];
    let mut ok = nonzero && re_a && sum_ok;
    if sum_ok && sum_min == 0.0 {
        let strict = if phi.is_zero() {
            let holds = in_a_unchecked(b);
            reasons.push(Reason::new("b∈𝔸", holds));
            holds
        } else {
            let c1 = b.re + phi.re_min > 0.0;
            let c2 = b.im + phi.im_min > 0.0;
            let c3 = b.im + phi.im_max < 0.0;
            reasons.push(Reason::new(
                "Re(b)+Re(φ)>0 or Im(b)+Im(φ)>0 or Im(b)+Im(φ)<0",
                c1 || c2 || c3,
            ));
            c1 || c2 || c3
        };
        ok &= strict;
    }
    (ok, reasons)
}

/// Existence condition on `(a, b)`.
pub fn existence_admissible(a: Complex64, b: Complex64) -> bool {
    existence_reasons(a, b).0
}

/// Uniqueness condition on `(a, b, φ)`.
pub fn uniqueness_admissible(a: Complex64, b: Complex64, phi: &PotentialSummary) -> bool {
    uniqueness_reasons(a, b, phi).0
}

/// Full report. `f_inf` is a bound on `‖F‖_∞`; the null solution `u = 0`
/// needs `‖F‖_∞ ≤ |a|`, so without a bound it is reported impossible.
pub fn classify(a: Complex64, b: Complex64, phi: &PotentialSummary, f_inf: Option<f64>) -> RegimeReport {
    let (existence_ok, mut reasons) = existence_reasons(a, b);
    let (uniqueness_ok, more) = uniqueness_reasons(a, b, phi);
    reasons.extend(more);
    let null_solution_possible = existence_ok && f_inf.is_some_and(|f| f <= a.norm());
    RegimeReport {
        existence_ok,
        uniqueness_ok,
        null_solution_possible,
        uniqueness_sufficient_only: !phi.exact,
        reasons,
    }
}
