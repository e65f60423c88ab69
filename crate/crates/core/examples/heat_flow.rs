//! Heat exchange between two locally thermal qubits: an uncorrelated start
//! against a correlated one whose heat runs from cold to hot.

use num_complex::Complex64;
use qmi_orbit::thermo::{heat_flow_bound_check, max_anomalous_heat, partial_swap, HeatSource, ThermalScenario};
use qmi_orbit::{DensityMatrix, Dims};

fn main() -> qmi_orbit::Result<()> {
    let sc = ThermalScenario::qubits(1.0, 2.0)?;
    let product = sc.gibbs_product();

    let p = product.state().diagonal();
    let mut m = product.matrix().clone();
    let coherence = Complex64::new(0.0, 0.99 * (p[1] * p[2]).sqrt());
    m[(1, 2)] = coherence;
    m[(2, 1)] = coherence.conj();
    let correlated = DensityMatrix::new(m, Dims::qubits())?;

    let u = partial_swap(std::f64::consts::FRAC_PI_4);
    for (name, rho) in [("product", &product), ("correlated", &correlated)] {
        let rep = heat_flow_bound_check(rho, &rho.evolve(&u)?, &sc)?;
        println!(
            "{name:<10} Q_A {:+.5}  dI {:+.5} nats  anomalous {}  bound holds {}",
            rep.q_a, rep.delta_i, rep.anomalous, rep.bound_satisfied
        );
    }
    let bound = max_anomalous_heat(HeatSource::State(&correlated), &sc)?;
    println!("largest anomalous heat {:.5}, entanglement witness above {:.5}", bound.max_heat, bound.witness_threshold);
    Ok(())
}
