//! Closed-form vanishing radius and threshold constants of the two ODE
//! comparison lemmas, checked against direct numerical integration.

use satlab::localization::{ode_oracle_check, ode_threshold, threshold_integration, OdeBoundParams};

fn main() -> satlab::error::Result<()> {
    println!("vanishing radius");
    for (alpha, beta) in [(1.0, 1.0), (0.5, 1.0), (0.5, 3.0), (0.3, 0.0)] {
        let p = OdeBoundParams {
            alpha,
            beta,
            k: 1.0,
            rho0: 1.5,
            e0: 0.2,
        };
        let o = ode_oracle_check(&p, 1_000_000)?;
        println!(
            "  α {alpha:.2} β {beta:.1}: formula {:.8}  numeric {:.8}  ({} steps)",
            o.r_formula, o.r_numeric, o.steps
        );
    }

    println!("threshold (α = 0.5, K = 1, ρ0 = 1, ρ1 = 2)");
    let t = ode_threshold(0.5, 1.0, 1.0, 2.0)?;
    println!("  E* = {:.6}  ε* = {:.6}", t.e_star, t.eps_star);
    for (label, e1, eps) in [
        ("at threshold", t.e_star, t.eps_star),
        ("half threshold", 0.5 * t.e_star, 0.0),
        ("2^(2/α) E*", 16.0 * t.e_star, 0.0),
    ] {
        let r = threshold_integration(0.5, 1.0, 1.0, 2.0, e1, eps, 20_000);
        println!("  {label:>14}: E(ρ0) = {:.3e}", r.e_at_rho0);
    }
    Ok(())
}
