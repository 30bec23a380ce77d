//! A stationary profile turned into a time-periodic solution `u0 e^{iμt}`:
//! the residual is sampled at several times and the support never moves.

use num_complex::Complex64;
use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::soliton::{soliton_check, soliton_problem};
use satlab::solver::{solve, SolverOptions};

fn main() -> satlab::error::Result<()> {
    let d = Domain::new(&DomainSpec::interval(-4.0, 4.0, 257, Boundary::Dirichlet))?;
    let f = d.sample(|x| if x[0].abs() < 0.5 { Complex64::new(5.0, 0.0) } else { Complex64::default() });
    let times = [0.0, 0.7, std::f64::consts::PI, 10.0];
    for lambda in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)] {
        let p = soliton_problem(&d, lambda, 1.0, &f)?;
        let rep = solve(&p, &SolverOptions::default())?;
        let r = soliton_check(&d, rep.u(), &rep.section.values, lambda, 1.0, &f, &times, [0.0, 0.0])?;
        println!("λ = {lambda}: stationary residual {:.2e}", r.stationary_residual);
        for s in &r.samples {
            println!("  t {:>7.4}: residual {:.2e}, support radius {:.4}", s.t, s.residual_inf, s.support_radius);
        }
    }
    Ok(())
}
