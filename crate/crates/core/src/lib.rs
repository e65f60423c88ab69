//! Extremal mutual-information states on the unitary orbit of a bipartite
//! quantum state, and their use in small thermodynamic scenarios.
//!
//! * [`qcore`]: density matrices, partial traces, entropies, Haar sampling.
//! * [`tableau`]: rectangular standard Young tableaux and classical-state QMI.
//! * [`extremize`]: maximally and minimally correlated states, two-qubit
//!   closed forms, orbit sampling, energy-conserving unitaries.
//! * [`weak_energy`]: numerical search under mean-energy conservation.
//! * [`marginal2q`]: the two-qubit marginal region and its energy slice.
//! * [`thermo`]: Szilard work, heat-flow bounds, collision-model equilibration.
//! * [`cli`]: the `qmi-orbit` command-line front end.

pub mod cli;
pub mod error;
pub mod extremize;
pub mod marginal2q;
pub mod numfmt;
pub mod qcore;
pub mod tableau;
pub mod thermo;
pub mod weak_energy;

pub use error::{Error, Result};
pub use extremize::{
    build_rho_max, build_rho_min, delta_i_max_energy, delta_i_max_unitary, extremize,
    i_min_two_qubit, ClassicalState, ExtremalResult,
};
pub use marginal2q::{MarginalPoint, MarginalRegion};
pub use qcore::{DensityMatrix, Dims, Entropy, Spectrum, State, Subsystem};
pub use tableau::{enumerate_tableaux, Tableau};
