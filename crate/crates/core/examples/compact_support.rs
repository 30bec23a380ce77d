//! Forcing `5` on `|x| < 0.5` and zero elsewhere. The solution vanishes
//! outside a ball; its radius is printed for a 1D and a 2D refinement ladder.

use num_complex::Complex64;
use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::localization::support_radius;
use satlab::solver::{solve, Problem, SolverOptions};

fn run(spec: DomainSpec) -> satlab::error::Result<()> {
    let d = Domain::new(&spec)?;
    let f = d.sample(|x| if x[0].hypot(x[1]) < 0.5 { Complex64::new(5.0, 0.0) } else { Complex64::default() });
    let one = Complex64::new(1.0, 0.0);
    let p = Problem::new(&d, one, one, f)?;
    let rep = solve(&p, &SolverOptions::default())?;
    let s = support_radius(&d, rep.u(), 1e-8 * rep.field.max_abs(), [0.0, 0.0]);
    println!(
        "{}D nodes {:?}: support radius {:.4}, margin to boundary {:.4}, |u|_inf {:.4e}",
        d.dim(),
        spec.nodes,
        s.radius,
        s.boundary_margin,
        rep.field.max_abs()
    );
    Ok(())
}

fn main() -> satlab::error::Result<()> {
    for n in [257, 513, 1025] {
        run(DomainSpec::interval(-4.0, 4.0, n, Boundary::Dirichlet))?;
    }
    for n in [33, 65] {
        run(DomainSpec::square(-4.0, 4.0, n, Boundary::Dirichlet))?;
    }
    Ok(())
}
