//! Local energy profiles around centres outside the forcing, the fitted
//! localization constant and the vanishing radius it implies.

use num_complex::Complex64;
use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::localization::{
    default_radii, default_tau_grid, fit_localization_constant, local_profile, rho_max, RhoMaxInput,
};
use satlab::runner::forcing_free_radius;
use satlab::solver::{solve, Problem, SolverOptions};

fn main() -> satlab::error::Result<()> {
    let d = Domain::new(&DomainSpec::interval(-4.0, 4.0, 513, Boundary::Dirichlet))?;
    let f = d.sample(|x| if x[0].abs() < 0.5 { Complex64::new(5.0, 0.0) } else { Complex64::default() });
    let one = Complex64::new(1.0, 0.0);
    let p = Problem::new(&d, one, one, f)?;
    let rep = solve(&p, &SolverOptions::default())?;

    for x0 in [[1.0, 0.0], [1.25, 0.0], [2.0, 0.0]] {
        let prof = local_profile(&d, rep.u(), Some(&p.forcing), x0, &default_radii(&d, x0))?;
        let limit = forcing_free_radius(&d, &p.forcing, x0);
        let m_fit = fit_localization_constant(&prof, limit, 1e-14);
        let j = prof.index_at(limit).unwrap_or(0);
        let input = RhoMaxInput {
            energy: prof.energy[j],
            l1: prof.l1[j],
            rho0: prof.rho[j],
            m: 1.0,
            c: 1.0,
            dim: 1,
        };
        let r = if input.rho0 > 0.0 { rho_max(&input, &default_tau_grid())? } else { 0.0 };
        println!(
            "centre {:>5}: ρ0 {:.4}  E(ρ0) {:.3e}  b(ρ0) {:.3e}  M_fit {:.6}  ρ_max {:.4}",
            x0[0], input.rho0, input.energy, input.l1, m_fit, r
        );
    }
    Ok(())
}
