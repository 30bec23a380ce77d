//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line to
//! the real stderr (bypassing the test harness capture) and then asserts.

use std::io::Write;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use satlab::domain::{Boundary, Domain, DomainSpec};
use satlab::localization::{
    check_localization_inequality, default_radii, fit_localization_constant, gamma, local_profile, ode_oracle_check,
    ode_threshold, rho_max, support_radius, threshold_integration, OdeBoundParams, RhoMaxInput,
};
use satlab::poisson::{solve_sp, SpOptions};
use satlab::runner::forcing_free_radius;
use satlab::soliton::{soliton_check, soliton_problem};
use satlab::solver::{solve, standard_guesses, symmetry_defect, uniqueness_probe, Problem, SolveReport, SolverOptions};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(id: &str, name: &str, pass: bool, detail: String) {
    let line = format!("[{}] {id} {name}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
}

fn interval(lo: f64, hi: f64, nodes: usize) -> Domain {
    Domain::new(&DomainSpec::interval(lo, hi, nodes, Boundary::Dirichlet)).unwrap()
}

fn square(lo: f64, hi: f64, nodes: usize) -> Domain {
    Domain::new(&DomainSpec::square(lo, hi, nodes, Boundary::Dirichlet)).unwrap()
}

/// `5` on the open ball `|x| < 0.5`, `tail` elsewhere.
fn bump(d: &Domain, tail: f64) -> Vec<Complex64> {
    d.sample(|x| if x[0].hypot(x[1]) < 0.5 { c(5.0, 0.0) } else { c(tail, 0.0) })
}

fn identities_ok(rep: &SolveReport) -> bool {
    rep.identities.real_rel <= 1e-6 && rep.identities.imag_rel <= 1e-6
}

fn support(d: &Domain, rep: &SolveReport) -> satlab::localization::SupportInfo {
    support_radius(d, rep.u(), 1e-8 * rep.field.max_abs(), [0.0, 0.0])
}

#[test]
fn c01_null_solution() {
    let opts = SolverOptions::default();
    let t = Instant::now();
    let mut h1 = Vec::new();
    let mut section_dev = 0.0f64;
    let mut ids = true;
    for nodes in [513, 1025] {
        let d = interval(-1.0, 1.0, nodes);
        let p = Problem::new(&d, c(1.0, 0.0), c(1.0, 0.0), d.sample(|_| c(0.01, 0.0))).unwrap();
        let rep = solve(&p, &opts).unwrap();
        ids &= identities_ok(&rep);
        h1.push(rep.norms.h1);
        if nodes == 513 {
            for (s, f) in rep.section.values.iter().zip(&p.forcing) {
                section_dev = section_dev.max((s - f).norm());
            }
        }
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = h1[0] <= 1e-6 && h1[1] <= h1[0] && section_dev <= 1e-6 && ids && secs < 1.0;
    report(
        "C1",
        "null solution",
        pass,
        format!("|u|_H1 {:.2e} -> {:.2e}, |U - F/a|_inf {section_dev:.2e}, {secs:.2} s", h1[0], h1[1]),
    );
    assert!(pass);
}

#[test]
fn c02_energy_identities() {
    let opts = SolverOptions::default();
    let cases: Vec<(&str, Domain, Complex64, Complex64)> = vec![
        ("1D a=b=1", interval(-4.0, 4.0, 257), c(1.0, 0.0), c(1.0, 0.0)),
        ("1D b=i", interval(-4.0, 4.0, 257), c(1.0, 0.0), c(0.0, 1.0)),
        ("1D a=1+i", interval(-4.0, 4.0, 257), c(1.0, 1.0), c(1.0, 0.0)),
        ("2D a=b=1", square(-4.0, 4.0, 65), c(1.0, 0.0), c(1.0, 0.0)),
    ];
    let mut worst = 0.0f64;
    let mut all_converged = true;
    for (_, d, a, b) in &cases {
        let p = Problem::new(d, *a, *b, bump(d, 0.0)).unwrap();
        let rep = solve(&p, &opts).unwrap();
        all_converged &= rep.flags.converged;
        worst = worst.max(rep.identities.real_rel).max(rep.identities.imag_rel);
    }
    let pass = all_converged && worst <= 1e-6;
    report("C2", "energy identities", pass, format!("worst relative residual {worst:.2e} over {} solves", cases.len()));
    assert!(pass);
}

/// Support radius and boundary margin on three nested grids.
fn support_ladder(domains: Vec<Domain>) -> (Vec<(f64, f64, f64)>, bool) {
    let opts = SolverOptions::default();
    let mut rows = Vec::new();
    let mut ok = true;
    for d in &domains {
        let p = Problem::new(d, c(1.0, 0.0), c(1.0, 0.0), bump(d, 0.0)).unwrap();
        let rep = solve(&p, &opts).unwrap();
        ok &= rep.flags.converged && identities_ok(&rep);
        let s = support(d, &rep);
        rows.push((d.h_max(), s.radius, s.boundary_margin));
    }
    (rows, ok)
}

fn ladder_pass(rows: &[(f64, f64, f64)]) -> bool {
    rows.iter().all(|r| r.2 >= 0.5) && rows.windows(2).all(|w| (w[1].1 - w[0].1).abs() <= 2.0 * w[0].0)
}

#[test]
fn c03_compact_support() {
    let (one, ok1) = support_ladder([257, 513, 1025].iter().map(|&n| interval(-4.0, 4.0, n)).collect());
    let t = Instant::now();
    let (two, ok2) = support_ladder([33, 65, 129].iter().map(|&n| square(-4.0, 4.0, n)).collect());
    let secs = t.elapsed().as_secs_f64();
    let pass = ok1 && ok2 && ladder_pass(&one) && ladder_pass(&two) && secs < 30.0;
    let fmt = |rows: &[(f64, f64, f64)]| rows.iter().map(|r| format!("{:.4}", r.1)).collect::<Vec<_>>().join(" -> ");
    report(
        "C3",
        "compact support",
        pass,
        format!(
            "1D radii {} (margin {:.3}), 2D radii {} (margin {:.3}), 2D ladder {secs:.1} s",
            fmt(&one),
            one[2].2,
            fmt(&two),
            two[2].2
        ),
    );
    assert!(pass);
}

#[test]
fn c04_small_tail() {
    let opts = SolverOptions::default();
    let d = interval(-4.0, 4.0, 257);
    let levels = [1e-3, 1e-2, 0.1, 0.5, 0.9, 0.99, 1.01, 1.5];
    let mut rows = Vec::new();
    for &eps in &levels {
        let p = Problem::new(&d, c(1.0, 0.0), c(1.0, 0.0), bump(&d, eps)).unwrap();
        let rep = solve(&p, &opts).unwrap();
        let s = support(&d, &rep);
        rows.push((eps, s.radius, s.boundary_margin >= 0.5));
    }
    let largest = rows.iter().filter(|r| r.2).map(|r| r.0).fold(None, |m: Option<f64>, e| Some(m.map_or(e, |m| m.max(e))));
    // once lost, compactness never returns, and the support only grows
    let first_lost = rows.iter().position(|r| !r.2).unwrap_or(rows.len());
    let monotone = rows[first_lost..].iter().all(|r| !r.2) && rows.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12);
    let pass = rows[0].2 && monotone;
    report(
        "C4",
        "small-tail compact support",
        pass,
        format!(
            "compact at 1e-3: {}, largest compact tail {:?}, radii {:?}",
            rows[0].2,
            largest,
            rows.iter().map(|r| (r.0, (r.1 * 1e4).round() / 1e4)).collect::<Vec<_>>()
        ),
    );
    assert!(pass);
}

#[test]
fn c05_ode_lemmas() {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_radius = 0.0f64;
    for _ in 0..20 {
        let p = OdeBoundParams {
            alpha: rng.random_range(0.2..=1.0),
            beta: rng.random_range(0.0..3.0),
            k: rng.random_range(0.5..2.0),
            rho0: rng.random_range(0.5..2.0),
            e0: rng.random_range(0.0..2.0),
        };
        let o = ode_oracle_check(&p, 1_000_000).unwrap();
        worst_radius = worst_radius.max(o.abs_error / p.rho0);
    }
    let mut thresholds_ok = true;
    let mut worst_below = 0.0f64;
    let mut weakest_converse = f64::INFINITY;
    for _ in 0..10 {
        let alpha = rng.random_range(0.2..0.9);
        let k = rng.random_range(0.5..2.0);
        let rho0 = rng.random_range(0.5..1.5);
        let rho1 = rho0 + rng.random_range(0.5..2.0);
        let th = ode_threshold(alpha, k, rho0, rho1).unwrap();
        // closed forms evaluated independently
        let cst: f64 = alpha / (2.0 * k);
        let e_star = (cst * (rho1 - rho0)).powf(1.0 / alpha);
        let eps_star = 0.5 * cst.powf((1.0 - alpha) / alpha);
        thresholds_ok &= (th.e_star - e_star).abs() <= 1e-14 * e_star && (th.eps_star - eps_star).abs() <= 1e-14 * eps_star;
        let below = threshold_integration(
            alpha,
            k,
            rho0,
            rho1,
            e_star * rng.random_range(0.1..=1.0),
            eps_star * rng.random_range(0.0..=1.0),
            20_000,
        );
        worst_below = worst_below.max(below.e_at_rho0 / e_star);
        let above = threshold_integration(alpha, k, rho0, rho1, 2f64.powf(2.0 / alpha) * e_star, 0.0, 20_000);
        weakest_converse = weakest_converse.min(above.e_at_rho0 / e_star);
    }
    let secs = t.elapsed().as_secs_f64();
    let pass = worst_radius <= 1e-4 && thresholds_ok && worst_below <= 1e-5 && weakest_converse > 1e-2 && secs < 5.0;
    report(
        "C5",
        "ODE lemma oracles",
        pass,
        format!(
            "radius error {worst_radius:.1e}·ρ0 over 20 draws, E(ρ0)/E* ≤ {worst_below:.1e} below threshold, ≥ {weakest_converse:.2} above, {secs:.2} s"
        ),
    );
    assert!(pass);
}

#[test]
fn c06_rho_max_sanity() {
    let tau: Vec<f64> = (0..64).map(|k| 0.501 + 0.499 * k as f64 / 63.0).collect();
    let es = [0.0, 1e-4, 1e-2, 0.5, 3.0];
    let bs = [0.0, 1e-4, 1e-2, 0.5, 3.0];
    let ms = [0.5, 1.0, 2.0];
    let cs = [0.1, 1.0, 10.0];
    let rho0 = 1.5;
    let mut grid = vec![vec![vec![vec![0.0; 3]; 3]; 5]; 5];
    let mut base_ok = true;
    for dim in [1, 2, 3] {
        for (i, &e) in es.iter().enumerate() {
            for (j, &b) in bs.iter().enumerate() {
                for (k, &m) in ms.iter().enumerate() {
                    for (l, &cc) in cs.iter().enumerate() {
                        let r = rho_max(&RhoMaxInput { energy: e, l1: b, rho0, m, c: cc, dim }, &tau).unwrap();
                        grid[i][j][k][l] = r;
                        if e == 0.0 && b == 0.0 {
                            base_ok &= r == rho0;
                        }
                    }
                }
            }
        }
        let get = |idx: [usize; 4]| grid[idx[0]][idx[1]][idx[2]][idx[3]];
        let lens = [5, 5, 3, 3];
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..3 {
                    for l in 0..3 {
                        let at = [i, j, k, l];
                        for (axis, &len) in lens.iter().enumerate() {
                            if at[axis] + 1 < len {
                                let mut next = at;
                                next[axis] += 1;
                                base_ok &= get(next) <= get(at);
                            }
                        }
                    }
                }
            }
        }
    }
    let gamma_ok = [1usize, 2, 3].iter().all(|&n| gamma(1.0, n) == 1.0 / (n as f64 + 2.0));
    let pass = base_ok && gamma_ok;
    report("C6", "rho_max sanity", pass, format!("5x5x3x3 grid in N = 1, 2, 3 monotone; γ(1) = 1/(N+2) exact: {gamma_ok}"));
    assert!(pass);
}

#[test]
fn c07_localization_inequality() {
    let opts = SolverOptions::default();
    let centers = [[1.0, 0.0], [1.25, 0.0], [-1.0, 0.0], [2.0, 0.0]];
    let mut fits = Vec::new();
    let mut holds = true;
    for nodes in [257, 513, 1025] {
        let d = interval(-4.0, 4.0, nodes);
        let p = Problem::new(&d, c(1.0, 0.0), c(1.0, 0.0), bump(&d, 0.0)).unwrap();
        let rep = solve(&p, &opts).unwrap();
        let mut m_fit = 0.0f64;
        let mut profiles = Vec::new();
        for &x0 in &centers {
            let prof = local_profile(&d, rep.u(), Some(&p.forcing), x0, &default_radii(&d, x0)).unwrap();
            let limit = forcing_free_radius(&d, &p.forcing, x0);
            m_fit = m_fit.max(fit_localization_constant(&prof, limit, 1e-14));
            profiles.push((prof, limit));
        }
        for (prof, limit) in &profiles {
            let check = check_localization_inequality(prof, m_fit);
            for j in 0..prof.len() {
                if prof.rho[j] <= *limit {
                    holds &= check.margin[j] >= -1e-12 * (1.0 + prof.lhs(j));
                }
            }
        }
        fits.push(m_fit);
    }
    let stable = fits.iter().all(|&m| m.is_finite() && (m - fits[0]).abs() <= 0.2 * fits[0]);
    let pass = holds && stable;
    report("C7", "localization inequality", pass, format!("M_fit across refinements {fits:?}"));
    assert!(pass);
}

#[test]
fn c08_uniqueness() {
    let opts = SolverOptions::default();
    let d = interval(-4.0, 4.0, 257);
    let mut dists = Vec::new();
    for b in [c(1.0, 0.0), c(0.0, 1.0)] {
        let p = Problem::new(&d, c(1.0, 0.0), b, bump(&d, 0.0)).unwrap();
        let guesses = standard_guesses(&p, 8);
        assert_eq!(guesses.len(), 3);
        dists.push(uniqueness_probe(&p, &guesses, &opts).unwrap());
    }
    let pass = dists.iter().all(|&x| x <= 10.0 * opts.tol_fp);
    report("C8", "uniqueness probe", pass, format!("max pairwise H1 distance (1,1): {:.1e}, (1,i): {:.1e}", dists[0], dists[1]));
    assert!(pass);
}

#[test]
fn c09_symmetry() {
    let opts = SolverOptions::default();
    let d1 = interval(-4.0, 4.0, 257);
    let p1 = Problem::new(&d1, c(1.0, 0.0), c(1.0, 0.0), bump(&d1, 0.0)).unwrap();
    let r1 = solve(&p1, &opts).unwrap();
    let s1 = symmetry_defect(r1.u(), |i| d1.reflect(i, 0));
    let d2 = square(-4.0, 4.0, 65);
    let p2 = Problem::new(&d2, c(1.0, 0.0), c(1.0, 0.0), bump(&d2, 0.0)).unwrap();
    let r2 = solve(&p2, &opts).unwrap();
    let s2 = symmetry_defect(r2.u(), |i| d2.quarter_turn(i).unwrap()).max(symmetry_defect(r2.u(), |i| d2.reflect(i, 0)));
    let pass = s1 <= 10.0 * opts.tol_fp && s2 <= 10.0 * opts.tol_fp;
    report("C9", "symmetry", pass, format!("1D reflection {s1:.1e}, 2D quarter turn {s2:.1e}"));
    assert!(pass);
}

#[test]
fn c10_schrodinger_poisson() {
    let t = Instant::now();
    let d = square(-2.0, 2.0, 65);
    let f = d.sample(|x| if x[0].abs() < 0.5 && x[1].abs() < 0.5 { c(5.0, 0.0) } else { c(0.0, 0.0) });
    let p = Problem::new(&d, c(1.0, 0.0), c(1.0, 0.0), f).unwrap();
    let opts = SpOptions::default();
    let s = solve_sp(&p, 1.0, &opts).unwrap();
    let secs = t.elapsed().as_secs_f64();
    let identity = s.history.iter().map(|h| h.identity).fold(0.0, f64::max);
    let phi_inf = s.phi.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let phi_min = s.phi.iter().copied().fold(f64::INFINITY, f64::min);
    let plain = solve(&p, &opts.inner).unwrap();
    let decoupled = solve_sp(&p, 0.0, &opts).unwrap();
    let diff: Vec<Complex64> = plain.u().iter().zip(decoupled.u()).map(|(x, y)| x - y).collect();
    let gap = d.h1(&diff) / plain.norms.h1.max(1.0);
    let pass = identity <= 1e-10 && phi_min >= -1e-12 * phi_inf && gap <= opts.inner.tol_fp && secs < 60.0;
    report(
        "C10",
        "Schrödinger-Poisson",
        pass,
        format!(
            "{} outer iterations, identity {identity:.1e}, min φ {phi_min:.1e}, e = 0 gap {gap:.1e}, coupled solve {secs:.1} s",
            s.iterations
        ),
    );
    assert!(pass);
}

#[test]
fn c11_soliton() {
    let opts = SolverOptions::default();
    let d = interval(-4.0, 4.0, 257);
    let f = bump(&d, 0.0);
    let times = [0.0, 0.7, std::f64::consts::PI, 10.0];
    let mut worst = 0.0f64;
    let mut same_support = true;
    for lambda in [c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)] {
        let p = soliton_problem(&d, lambda, 1.0, &f).unwrap();
        let rep = solve(&p, &opts).unwrap();
        let r = soliton_check(&d, rep.u(), &rep.section.values, lambda, 1.0, &f, &times, [0.0, 0.0]).unwrap();
        worst = worst.max(r.max_deviation);
        same_support &= r.support_identical;
    }
    let pass = worst <= 1e-12 && same_support;
    report("C11", "soliton", pass, format!("max |residual(t)| - |stationary| {worst:.1e}, support identical {same_support}"));
    assert!(pass);
}
