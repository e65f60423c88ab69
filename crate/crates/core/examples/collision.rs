//! Repeated partial-swap collisions between a cold and a hot qubit, with
//! full decorrelation and with dephasing to the minimally correlated state.

use qmi_orbit::thermo::{collision_simulate, CollisionUnitary, Decorrelation, ThermalScenario};

fn main() -> qmi_orbit::Result<()> {
    let sc = ThermalScenario::qubits(0.5, 2.0)?;
    let swap = CollisionUnitary::PartialSwap { theta: 0.3 };
    for mode in [Decorrelation::FullProduct, Decorrelation::DephaseToMinimal] {
        let trace = collision_simulate(&sc, 200, swap, mode, 0)?;
        let last = trace.last();
        println!(
            "{mode:?}: T_A {:.4}  T_B {:.4}  within 0.01 at step {:?}",
            last.t_a,
            last.t_b,
            trace.equilibrated_at(0.01)
        );
    }
    let trace = collision_simulate(&sc, 12, swap, Decorrelation::FullProduct, 0)?;
    print!("{}", trace.to_csv());
    Ok(())
}
