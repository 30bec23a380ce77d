//! Classifies coefficient pairs: which `b` admit existence and uniqueness
//! for a few fixed values of `a`. Prints a coarse character map per slice.

use num_complex::Complex64;
use satlab::coeffs::{classify, PotentialSummary};
use satlab::scan::{reference_slices, region_scan, ScanGrid};

fn main() -> satlab::error::Result<()> {
    let grid = ScanGrid {
        re: (-3.0, 3.0),
        im: (-3.0, 3.0),
        points: 25,
    };
    let rows = region_scan(&reference_slices(), &grid)?;
    for (k, chunk) in rows.chunks(grid.points * grid.points).enumerate() {
        println!("a = {}: rows Im b = 3 down to -3, columns Re b = -3 to 3", chunk[0].a);
        println!("  E existence only, U existence and uniqueness, . neither");
        for j in (0..grid.points).rev() {
            let line: String = (0..grid.points)
                .map(|i| {
                    let r = &chunk[j * grid.points + i];
                    match (r.existence, r.uniqueness) {
                        (true, true) => 'U',
                        (true, false) => 'E',
                        _ => '.',
                    }
                })
                .collect();
            println!("  {line}");
        }
        if k + 1 < rows.len() / (grid.points * grid.points) {
            println!();
        }
    }

    let r = classify(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0), &PotentialSummary::zero(), None);
    println!("a = -1, b = 1 fails: {:?}", r.failures());
    Ok(())
}
