//! Small forcing with `a = b = 1`: the saturated term absorbs `F` entirely,
//! the solution is `u ≡ 0` and the section `U` equals `F / a`.

use num_complex::Complex64;
use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::solver::{solve, Problem, SolverOptions};

fn main() -> satlab::error::Result<()> {
    let one = Complex64::new(1.0, 0.0);
    for nodes in [129, 257, 513] {
        let d = Domain::new(&DomainSpec::interval(-1.0, 1.0, nodes, Boundary::Dirichlet))?;
        let p = Problem::new(&d, one, one, d.sample(|_| Complex64::new(0.01, 0.0)))?;
        let rep = solve(&p, &SolverOptions::default())?;
        let dev = rep
            .section
            .values
            .iter()
            .zip(&p.forcing)
            .map(|(s, f)| (s - f).norm())
            .fold(0.0, f64::max);
        println!(
            "h = {:.5}  |u|_H1 = {:.3e}  |U - F/a|_inf = {:.3e}  stages = {}",
            d.h_max(),
            rep.norms.h1,
            dev,
            rep.stages.len()
        );
    }
    Ok(())
}
