//! CSV artifacts. Every table starts with a header row; floats are written in
//! shortest round-trip form so reruns are byte-identical.
//!
//! | file | columns |
//! |------|---------|
//! | `solve_report.csv` | `quantity,value` |
//! | `stages.csv` | `n,iterations,last_increment,bound_quantity,stage_change,h1` |
//! | `field.csv` | `x,y,u_re,u_im,abs_u,U_re,U_im,abs_U,phi` |
//! | `profile_<k>.csv` | `rho,E,b,L2ball,flux_re,flux_im,flux_abs,Fu,lhs,rhs,margin` |

use std::path::Path;

use num_complex::Complex64;

use crate::domain::Domain;
use crate::error::Result;
use crate::localization::LocalEnergyProfile;
use crate::solver::StageRecord;

/// Writes `header` and `rows` to `path`.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn num(v: f64) -> String {
    v.to_string()
}

/// Two-column `quantity,value` table.
pub fn write_key_values(path: &Path, rows: &[(String, String)]) -> Result<()> {
    let rows: Vec<Vec<String>> = rows.iter().map(|(k, v)| vec![k.clone(), v.clone()]).collect();
    write_table(path, &["quantity", "value"], &rows)
}

pub fn write_stages(path: &Path, stages: &[StageRecord]) -> Result<()> {
    let rows: Vec<Vec<String>> = stages
        .iter()
        .map(|s| {
            vec![
                s.n.to_string(),
                s.iterations.to_string(),
                num(s.last_increment),
                num(s.bound_quantity),
                num(s.stage_change),
                num(s.h1),
            ]
        })
        .collect();
    write_table(path, &["n", "iterations", "last_increment", "bound_quantity", "stage_change", "h1"], &rows)
}

/// Node table of `u`, the section `U` and the potential `φ` (zeros when absent).
pub fn write_field(path: &Path, d: &Domain, u: &[Complex64], section: Option<&[Complex64]>, phi: Option<&[f64]>) -> Result<()> {
    let rows: Vec<Vec<String>> = (0..d.node_count())
        .map(|i| {
            let x = d.coord(i);
            let s = section.map_or(Complex64::default(), |s| s[i]);
            vec![
                num(x[0]),
                num(x[1]),
                num(u[i].re),
                num(u[i].im),
                num(u[i].norm()),
                num(s.re),
                num(s.im),
                num(s.norm()),
                num(phi.map_or(0.0, |p| p[i])),
            ]
        })
        .collect();
    write_table(path, &["x", "y", "u_re", "u_im", "abs_u", "U_re", "U_im", "abs_U", "phi"], &rows)
}

pub fn write_profile(path: &Path, p: &LocalEnergyProfile, margin: &[f64]) -> Result<()> {
    let rows: Vec<Vec<String>> = (0..p.len())
        .map(|j| {
            vec![
                num(p.rho[j]),
                num(p.energy[j]),
                num(p.l1[j]),
                num(p.l2[j]),
                num(p.flux[j].re),
                num(p.flux[j].im),
                num(p.flux[j].norm()),
                num(p.forcing[j]),
                num(p.lhs(j)),
                num(p.rhs(j)),
                num(margin[j]),
            ]
        })
        .collect();
    write_table(
        path,
        &["rho", "E", "b", "L2ball", "flux_re", "flux_im", "flux_abs", "Fu", "lhs", "rhs", "margin"],
        &rows,
    )
}
