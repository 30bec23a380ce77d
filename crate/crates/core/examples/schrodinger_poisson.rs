//! Coupled Schrödinger–Poisson solve on `(−2, 2)²` with a box forcing,
//! alternating the saturated solve with a Dirichlet Poisson solve.

use num_complex::Complex64;
use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::poisson::{solve_sp, sp_bound_check, SpOptions};
use satlab::solver::Problem;

fn main() -> satlab::error::Result<()> {
    let d = Domain::new(&DomainSpec::square(-2.0, 2.0, 33, Boundary::Dirichlet))?;
    let f = d.sample(|x| {
        if x[0].abs() < 0.5 && x[1].abs() < 0.5 {
            Complex64::new(5.0, 0.0)
        } else {
            Complex64::default()
        }
    });
    let one = Complex64::new(1.0, 0.0);
    let p = Problem::new(&d, one, one, f)?;
    let s = solve_sp(&p, 1.0, &SpOptions::default())?;
    for (k, step) in s.history.iter().enumerate() {
        println!(
            "outer {k}: |du|_H1 {:.3e}  |dφ|_H1 {:.3e}  identity {:.1e}",
            step.du_h1, step.dphi_h1, step.identity
        );
    }
    let phi_max = s.phi.iter().copied().fold(0.0, f64::max);
    println!("max φ {phi_max:.4e}, a priori ratio {:.4}", sp_bound_check(&d, &s, &p.forcing)?);
    Ok(())
}
