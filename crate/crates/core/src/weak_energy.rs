//! Numerical extremization of two-qubit mutual information over unitaries
//! that preserve the mean energy `tr(ρ H)`, `H = |1><1| ⊗ I + I ⊗ |1><1|`.
//!
//! Direct search: from several random starting unitaries, coordinate
//! descent over the 16 Hermitian generators of `U(4)`, applied as
//! `σ -> e^{isG_k} σ e^{-isG_k}`. Every proposal is pulled back onto the
//! energy shell by Newton steps along `i[σ, H]`; proposals that cannot be
//! restored to within the tolerance are rejected. The objective carries a
//! quadratic energy penalty so residual drift never pays off.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extremize::{evolve_raw, two_qubit_hamiltonian, unitary_exp};
use crate::qcore::{
    expectation, haar_unitary, mutual_information_raw, seeded_rng, CMatrix, DensityMatrix, Dims,
    Entropy,
};

/// Allowed `|tr(σH) - E|` for a reported state.
pub const ENERGY_TOL: f64 = 1e-6;
/// Target precision of the energy restoration step.
const SHELL_TOL: f64 = 1e-10;
const PENALTY: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Total objective evaluations across all restarts.
    pub budget: usize,
    pub restarts: usize,
    pub seed: u64,
    pub initial_step: f64,
    pub min_step: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 10_000, restarts: 32, seed: 0, initial_step: 0.6, min_step: 1e-7 }
    }
}

/// Hermitian basis of `u(4)`: the 4 diagonal units and the symmetric and
/// antisymmetric off-diagonal pairs.
fn generators() -> Vec<CMatrix> {
    let mut out = Vec::with_capacity(16);
    let one = Complex64::new(1.0, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..4 {
        let mut g = CMatrix::zeros(4, 4);
        g[(i, i)] = one;
        out.push(g);
    }
    for i in 0..4 {
        for j in (i + 1)..4 {
            let mut g = CMatrix::zeros(4, 4);
            g[(i, j)] = Complex64::new(s, 0.0);
            g[(j, i)] = Complex64::new(s, 0.0);
            out.push(g);
            let mut g = CMatrix::zeros(4, 4);
            g[(i, j)] = Complex64::new(0.0, -s);
            g[(j, i)] = Complex64::new(0.0, s);
            out.push(g);
        }
    }
    out
}

/// Restore `tr(σH) = target` by Newton steps along the generator `i[σ, H]`,
/// whose first-order energy change is `‖[σ, H]‖_F²`.
fn project_to_shell(sigma: &CMatrix, h: &CMatrix, target: f64) -> Option<CMatrix> {
    let mut s = sigma.clone();
    for _ in 0..30 {
        let err = target - expectation(&s, h);
        if err.abs() <= SHELL_TOL {
            return Some(s);
        }
        let comm = &s * h - h * &s;
        let g = comm * Complex64::new(0.0, 1.0);
        let slope = g.iter().map(|z| z.norm_sqr()).sum::<f64>();
        if slope < 1e-14 {
            break;
        }
        let t = (err / slope).clamp(-0.5, 0.5);
        s = evolve_raw(&unitary_exp(&g, t), &s);
    }
    ((target - expectation(&s, h)).abs() <= SHELL_TOL * 100.0).then_some(s)
}

struct Restart {
    value: f64,
    qmi: f64,
    state: CMatrix,
}

fn run_restart(
    rho: &CMatrix,
    start: CMatrix,
    energy: f64,
    sign: f64,
    budget: usize,
    opts: &SearchOptions,
) -> Option<Restart> {
    let dims = Dims::qubits();
    let h = two_qubit_hamiltonian();
    let gens = generators();
    let objective = |s: &CMatrix| {
        let q = mutual_information_raw(s, dims);
        let drift = expectation(s, &h) - energy;
        (sign * q + PENALTY * drift * drift, q)
    };

    let mut current = project_to_shell(&evolve_raw(&start, rho), &h, energy)
        .or_else(|| project_to_shell(rho, &h, energy))?;
    let (mut value, mut qmi) = objective(&current);
    let mut used = 1;
    let mut step = opts.initial_step;

    'search: while step >= opts.min_step {
        let mut improved = false;
        for g in &gens {
            for dir in [1.0, -1.0] {
                if used >= budget {
                    break 'search;
                }
                let proposal = evolve_raw(&unitary_exp(g, dir * step), &current);
                let Some(proposal) = project_to_shell(&proposal, &h, energy) else {
                    continue;
                };
                used += 1;
                let (v, q) = objective(&proposal);
                if v < value {
                    current = proposal;
                    value = v;
                    qmi = q;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    Some(Restart { value, qmi, state: current })
}

/// Best QMI found for unitaries that keep `tr(UρU†H) = E`.
pub fn optimize_qmi_weak_energy(
    rho: &DensityMatrix,
    energy: f64,
    direction: Direction,
    opts: &SearchOptions,
) -> Result<(Entropy, DensityMatrix)> {
    if rho.dims() != Dims::qubits() {
        return Err(Error::DimensionMismatch(format!("weak-energy search needs 2x2, got {}", rho.dims())));
    }
    let h = two_qubit_hamiltonian();
    let actual = expectation(rho.matrix(), &h);
    if (actual - energy).abs() > 1e-8 {
        return Err(Error::EnergyMismatch { requested: energy, actual });
    }
    let sign = match direction {
        Direction::Min => 1.0,
        Direction::Max => -1.0,
    };
    let restarts = opts.restarts.max(1);
    let per_restart = (opts.budget / restarts).max(1);
    let starts: Vec<CMatrix> = {
        let mut rng = seeded_rng(opts.seed);
        (0..restarts)
            .map(|i| if i == 0 { CMatrix::identity(4, 4) } else { haar_unitary(4, &mut rng) })
            .collect()
    };
    let best = starts
        .into_par_iter()
        .filter_map(|u| run_restart(rho.matrix(), u, energy, sign, per_restart, opts))
        .collect::<Vec<_>>()
        .into_iter()
        .filter(|r| (expectation(&r.state, &h) - energy).abs() < ENERGY_TOL)
        .reduce(|a, b| if b.value < a.value { b } else { a })
        .expect("the identity restart always stays on the energy shell");
    let state = DensityMatrix::new(best.state, Dims::qubits())?;
    Ok((Entropy::from_bits(best.qmi), state))
}
