//! Szilard-engine work before and after the refinery step for a few states.

use num_complex::Complex64;
use qmi_orbit::extremize::build_rho_min;
use qmi_orbit::thermo::{refinery_gain, szilard_work};
use qmi_orbit::{DensityMatrix, Dims};

fn main() -> qmi_orbit::Result<()> {
    let kt = 1.0;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x| Complex64::new(x, 0.0);
    let states = [
        ("Bell", DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)], Dims::qubits())?),
        ("classical 00+11", DensityMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5], Dims::qubits())?),
        ("mixed product", DensityMatrix::from_diagonal(&[0.42, 0.28, 0.18, 0.12], Dims::qubits())?),
    ];
    println!("{:<16} {:>10} {:>10} {:>10}", "state", "work", "gain", "refined");
    for (name, rho) in states {
        let refined = build_rho_min(&rho.spectrum(), rho.dims())?.density_matrix();
        println!(
            "{name:<16} {:>10.6} {:>10.6} {:>10.6}",
            szilard_work(&rho, kt)?,
            refinery_gain(&rho, kt)?,
            szilard_work(&refined, kt)?
        );
    }
    Ok(())
}
