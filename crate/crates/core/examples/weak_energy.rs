//! Search for the largest and smallest QMI reachable from a two-qubit state
//! while only the mean energy is conserved, and compare with the closed form.

use qmi_orbit::extremize::{delta_i_max_energy, i_min_two_qubit, two_qubit_hamiltonian};
use qmi_orbit::qcore::{expectation, haar_unitary_seeded, mutual_information};
use qmi_orbit::weak_energy::{optimize_qmi_weak_energy, Direction, SearchOptions};
use qmi_orbit::{DensityMatrix, Dims, Spectrum};

fn main() -> qmi_orbit::Result<()> {
    let spectrum = Spectrum::new(vec![0.6, 0.3, 0.1, 0.0])?;
    let rho = DensityMatrix::from_diagonal(spectrum.values(), Dims::qubits())?.evolve(&haar_unitary_seeded(4, 11))?;
    let energy = expectation(rho.matrix(), &two_qubit_hamiltonian());
    let opts = SearchOptions { budget: 10_000, ..Default::default() };

    let (hi, _) = optimize_qmi_weak_energy(&rho, energy, Direction::Max, &opts)?;
    let (lo, _) = optimize_qmi_weak_energy(&rho, energy, Direction::Min, &opts)?;
    let bound = i_min_two_qubit(&spectrum)?.bits() + delta_i_max_energy(&spectrum, energy)?.bits();

    println!("energy          {energy:.6}");
    println!("start QMI       {:.6} bits", mutual_information(&rho).bits());
    println!("search min      {:.6} bits", lo.bits());
    println!("search max      {:.6} bits", hi.bits());
    println!("analytic bound  {bound:.6} bits");
    Ok(())
}
