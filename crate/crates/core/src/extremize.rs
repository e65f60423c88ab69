//! Maximally and minimally correlated states on a unitary orbit.
//!
//! The maximum places the spectrum on a generalized Bell basis, which makes
//! both marginals maximally mixed. The minimum is attained by a classical
//! state whose eigenvalue placement is one of the rectangular standard Young
//! tableaux; all of them are scanned.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::marginal2q::MarginalPoint;
use crate::numfmt::round_sig;
use crate::qcore::{
    binary_entropy, conjugate, haar_unitary, mutual_information, seeded_rng, CMatrix,
    DensityMatrix, Dims, Entropy, Spectrum,
};
use crate::tableau::{arrangement_marginals, classical_state_qmi, enumerate_tableaux, Tableau};

/// Orthonormal maximally entangled states on the `d x d` block, `d = min(d_a, d_b)`,
/// built from clock and shift operators:
/// `|Φ_{n,m}> = d^{-1/2} Σ_k ω^{mk} |k>|k+n mod d>`, ordered by `n` then `m`.
pub fn generalized_bell_basis(dims: Dims) -> Vec<DVector<Complex64>> {
    let d = dims.min();
    let norm = 1.0 / (d as f64).sqrt();
    let mut out = Vec::with_capacity(d * d);
    for n in 0..d {
        for m in 0..d {
            let mut v = DVector::zeros(dims.total());
            for k in 0..d {
                let phase = 2.0 * std::f64::consts::PI * (m * k) as f64 / d as f64;
                v[dims.index(k, (k + n) % d)] = Complex64::from_polar(norm, phase);
            }
            out.push(v);
        }
    }
    out
}

/// `Σ_i λ_i |Φ_i><Φ_i|` over the first `min(d_a, d_b)²` eigenvalues.
pub fn build_rho_max(spectrum: &Spectrum, dims: Dims) -> Result<DensityMatrix> {
    spectrum.check_dims(dims)?;
    let capacity = dims.min() * dims.min();
    let rank = spectrum.rank();
    if rank > capacity {
        return Err(Error::RankExceedsBellSpace { rank, capacity });
    }
    let n = dims.total();
    let mut m = CMatrix::zeros(n, n);
    for (lambda, phi) in spectrum.values().iter().zip(generalized_bell_basis(dims)) {
        if *lambda > 0.0 {
            m += &phi * phi.adjoint() * Complex64::new(*lambda, 0.0);
        }
    }
    DensityMatrix::new(m, dims)
}

/// `2 log2 min(d_a, d_b) - H(Λ)`.
pub fn i_max(spectrum: &Spectrum, dims: Dims) -> Entropy {
    Entropy::from_bits((2.0 * (dims.min() as f64).log2() - spectrum.shannon().bits()).max(0.0))
}

/// A classical state `Σ λ_{jk} |j><j| ⊗ |k><k|` in the computational product basis.
#[derive(Debug, Clone)]
pub struct ClassicalState {
    pub tableau: Tableau,
    pub spectrum: Spectrum,
    pub qmi: Entropy,
}

impl ClassicalState {
    /// Populations indexed by the composite basis.
    pub fn populations(&self) -> Vec<f64> {
        let dims = self.tableau.dims();
        let mut p = vec![0.0; dims.total()];
        for (j, row) in self.tableau.grid().iter().enumerate() {
            for (k, &idx) in row.iter().enumerate() {
                p[dims.index(j, k)] = self.spectrum.lambda(idx);
            }
        }
        p
    }

    pub fn density_matrix(&self) -> DensityMatrix {
        DensityMatrix::from_diagonal(&self.populations(), self.tableau.dims())
            .expect("classical state populations form a distribution")
    }

    /// Sorted marginal distributions `(spec ρ_A, spec ρ_B)`.
    pub fn marginal_spectra(&self) -> (Vec<f64>, Vec<f64>) {
        arrangement_marginals(self.tableau.grid(), &self.spectrum)
    }
}

/// The minimum-QMI classical state over all candidate tableaux; ties go to
/// the lexicographically smallest tableau.
pub fn build_rho_min(spectrum: &Spectrum, dims: Dims) -> Result<ClassicalState> {
    spectrum.check_dims(dims)?;
    let tableaux = enumerate_tableaux(dims)?;
    let scored: Vec<(Entropy, &Tableau)> = tableaux
        .par_iter()
        .map(|t| classical_state_qmi(t, spectrum).map(|q| (q, t)))
        .collect::<Result<_>>()?;
    let (qmi, tableau) = scored
        .into_iter()
        .reduce(|best, cur| if cur.0.bits() < best.0.bits() { cur } else { best })
        .expect("at least one tableau");
    Ok(ClassicalState { tableau: tableau.clone(), spectrum: spectrum.clone(), qmi })
}

fn two_qubit_lambdas(spectrum: &Spectrum) -> Result<[f64; 4]> {
    match spectrum.values() {
        &[a, b, c, d] => Ok([a, b, c, d]),
        v => Err(Error::WrongDimension { expected: 4, got: v.len() }),
    }
}

/// `H(λ1+λ2) + H(λ1+λ3)`, the smallest attainable `S(ρ_A) + S(ρ_B)` for two qubits.
fn min_local_entropy_sum(l: [f64; 4]) -> f64 {
    let h = |x: f64| binary_entropy(x.min(1.0)).expect("partial sum of a distribution").bits();
    h(l[0] + l[1]) + h(l[0] + l[2])
}

/// `H(λ1+λ2) + H(λ1+λ3) - H(Λ)`.
pub fn i_min_two_qubit(spectrum: &Spectrum) -> Result<Entropy> {
    let l = two_qubit_lambdas(spectrum)?;
    Ok(Entropy::from_bits((min_local_entropy_sum(l) - spectrum.shannon().bits()).max(0.0)))
}

/// `2 - H(λ1+λ2) - H(λ1+λ3)`.
pub fn delta_i_max_unitary(spectrum: &Spectrum) -> Result<Entropy> {
    let l = two_qubit_lambdas(spectrum)?;
    Ok(Entropy::from_bits(2.0 - min_local_entropy_sum(l)))
}

/// `2 H(E/2) - H(λ1+λ2) - H(λ1+λ3)` for `H_A = H_B = |1><1|`, `E ∈ [0, 2]`.
pub fn delta_i_max_energy(spectrum: &Spectrum, energy: f64) -> Result<Entropy> {
    let l = two_qubit_lambdas(spectrum)?;
    if !(0.0..=2.0).contains(&energy) {
        return Err(Error::EnergyOutOfRange(energy));
    }
    let h = binary_entropy(energy / 2.0)?.bits();
    Ok(Entropy::from_bits(2.0 * h - min_local_entropy_sum(l)))
}

#[derive(Debug, Clone)]
pub struct ExtremalResult {
    pub i_min: Entropy,
    pub i_max: Entropy,
    pub minimizer: ClassicalState,
    pub maximizer: DensityMatrix,
    pub delta_i_max: Entropy,
}

/// Both extremes of the orbit of `spectrum`.
///
/// For `d_a != d_b` the maximizer lives on the `d x d` block and its QMI is
/// not the orbit supremum; orbit samples can exceed `i_max`.
pub fn extremize(spectrum: &Spectrum, dims: Dims) -> Result<ExtremalResult> {
    if dims.d_a != dims.d_b {
        log::warn!("{dims}: i_max is the Bell-block construction, not a proven orbit maximum");
    }
    let maximizer = build_rho_max(spectrum, dims)?;
    let minimizer = build_rho_min(spectrum, dims)?;
    let i_max = i_max(spectrum, dims);
    let i_min = minimizer.qmi;
    Ok(ExtremalResult { i_min, i_max, delta_i_max: i_max - i_min, minimizer, maximizer })
}

/// JSON summary of an extremization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub spectrum: Vec<f64>,
    pub dims: [usize; 2],
    pub i_min_bits: f64,
    pub i_max_bits: f64,
    pub delta_i_max_bits: f64,
    pub minimizing_tableau: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub energy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta_e_bits: Option<f64>,
    /// `[λ_B, λ_A]` of the most correlated energy-feasible marginal pair.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<[f64; 2]>,
}

impl ExtremalReport {
    pub fn new(spectrum: &Spectrum, dims: Dims, res: &ExtremalResult) -> Self {
        let r = |x: f64| round_sig(x, 12);
        ExtremalReport {
            spectrum: spectrum.values().iter().map(|&x| r(x)).collect(),
            dims: [dims.d_a, dims.d_b],
            i_min_bits: r(res.i_min.bits()),
            i_max_bits: r(res.i_max.bits()),
            delta_i_max_bits: r(res.delta_i_max.bits()),
            minimizing_tableau: res.minimizer.tableau.grid().to_vec(),
            energy: None,
            delta_e_bits: None,
            q: None,
        }
    }

    /// Re-check the invariants of a parsed report.
    pub fn validate(&self) -> Result<()> {
        let spectrum = Spectrum::new(self.spectrum.clone())?;
        let dims = Dims::new(self.dims[0], self.dims[1])?;
        spectrum.check_dims(dims)?;
        Tableau::new(self.minimizing_tableau.clone(), dims)?;
        let cap = 2.0 * (dims.min() as f64).log2();
        let tol = 1e-10;
        if !(self.i_min_bits >= -tol && self.i_min_bits <= self.i_max_bits + tol && self.i_max_bits <= cap + tol) {
            return Err(Error::NotADistribution(format!(
                "QMI bounds violated: 0 <= {} <= {} <= {cap}",
                self.i_min_bits, self.i_max_bits
            )));
        }
        if (self.delta_i_max_bits - (self.i_max_bits - self.i_min_bits)).abs() > tol {
            return Err(Error::NotADistribution("delta_i_max_bits != i_max_bits - i_min_bits".into()));
        }
        if let Some(e) = self.energy {
            if !(0.0..=2.0).contains(&e) {
                return Err(Error::EnergyOutOfRange(e));
            }
        }
        Ok(())
    }
}

/// One Haar sample of the orbit.
#[derive(Debug, Clone, Copy)]
pub struct OrbitSample {
    pub qmi: Entropy,
    /// Marginal location, for two qubits only.
    pub point: Option<MarginalPoint>,
}

/// QMI (and two-qubit marginal point) of `U diag(Λ) U†` for Haar-random `U`.
pub fn sample_orbit_qmi(spectrum: &Spectrum, dims: Dims, n_samples: usize, seed: u64) -> Result<Vec<OrbitSample>> {
    spectrum.check_dims(dims)?;
    let rho = DensityMatrix::from_diagonal(spectrum.values(), dims)?;
    let mut rng = seeded_rng(seed);
    let unitaries: Vec<CMatrix> = (0..n_samples).map(|_| haar_unitary(dims.total(), &mut rng)).collect();
    unitaries
        .par_iter()
        .map(|u| {
            let sigma = rho.evolve(u)?;
            Ok(OrbitSample { qmi: mutual_information(&sigma), point: MarginalPoint::of_state(&sigma) })
        })
        .collect()
}

/// `H_A ⊗ I + I ⊗ H_B` with `H_A = H_B = |1><1|`: `diag(0, 1, 1, 2)`.
pub fn two_qubit_hamiltonian() -> CMatrix {
    CMatrix::from_diagonal(&DVector::from_vec(
        [0.0, 1.0, 1.0, 2.0].map(|x| Complex64::new(x, 0.0)).to_vec(),
    ))
}

/// A random unitary commuting with `H_A + H_B`: independent Haar blocks on
/// the energy-0, energy-1 and energy-2 eigenspaces (sizes 1, 2, 1).
pub fn strong_energy_unitary<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    let mut u = CMatrix::zeros(4, 4);
    u[(0, 0)] = haar_unitary(1, rng)[(0, 0)];
    let mid = haar_unitary(2, rng);
    for i in 0..2 {
        for j in 0..2 {
            u[(1 + i, 1 + j)] = mid[(i, j)];
        }
    }
    u[(3, 3)] = haar_unitary(1, rng)[(0, 0)];
    u
}

pub fn strong_energy_unitary_seeded(seed: u64) -> CMatrix {
    strong_energy_unitary(&mut seeded_rng(seed))
}

/// `exp(i t G)` for Hermitian `G`.
pub(crate) fn unitary_exp(g: &CMatrix, t: f64) -> CMatrix {
    let eig = g.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&w| Complex64::from_polar(1.0, t * w)),
    );
    v * CMatrix::from_diagonal(&phases) * v.adjoint()
}

/// `U ρ U†` on a raw matrix, re-Hermitized.
pub(crate) fn evolve_raw(u: &CMatrix, rho: &CMatrix) -> CMatrix {
    let m = conjugate(u, rho);
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{identity, max_abs, unitarity_defect, Subsystem};

    fn sp(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    fn gram_defect(basis: &[DVector<Complex64>]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let ip = a.dotc(b);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn bell_basis_two_qubits() {
        let dims = Dims::qubits();
        let basis = generalized_bell_basis(dims);
        assert_eq!(basis.len(), 4);
        assert!(gram_defect(&basis) < 1e-12);
        for phi in &basis {
            let rho = DensityMatrix::pure(phi.as_slice(), dims).unwrap();
            let a = rho.partial_trace(Subsystem::B);
            assert!(max_abs(&(a.matrix() - identity(2) * Complex64::new(0.5, 0.0))) < 1e-10);
        }
    }

    #[test]
    fn bell_basis_embeds_in_larger_factor() {
        let dims = Dims::new(2, 3).unwrap();
        let basis = generalized_bell_basis(dims);
        assert_eq!(basis.len(), 4);
        assert!(gram_defect(&basis) < 1e-12);
        for phi in &basis {
            assert_eq!(phi[dims.index(0, 2)], Complex64::new(0.0, 0.0));
            assert_eq!(phi[dims.index(1, 2)], Complex64::new(0.0, 0.0));
        }
        let basis = generalized_bell_basis(Dims::new(3, 3).unwrap());
        assert_eq!(basis.len(), 9);
        assert!(gram_defect(&basis) < 1e-10);
    }

    #[test]
    fn rho_max_examples() {
        let dims = Dims::qubits();
        let bell = build_rho_max(&sp(&[1.0, 0.0, 0.0, 0.0]), dims).unwrap();
        assert!((mutual_information(&bell).bits() - 2.0).abs() < 1e-10);
        let mixed = build_rho_max(&sp(&[0.25; 4]), dims).unwrap();
        assert!(mutual_information(&mixed).bits().abs() < 1e-10);
        let s = sp(&[0.6, 0.3, 0.1, 0.0]);
        let rho = build_rho_max(&s, dims).unwrap();
        let i = mutual_information(&rho).bits();
        assert!((i - 0.7045).abs() < 1e-4, "{i}");
        assert!((i - i_max(&s, dims).bits()).abs() < 1e-8);
        for (a, b) in rho.spectrum().values().iter().zip(s.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rho_max_rank_too_large() {
        let dims = Dims::new(2, 3).unwrap();
        let err = build_rho_max(&sp(&[0.2, 0.2, 0.2, 0.2, 0.1, 0.1]), dims).unwrap_err();
        assert_eq!(err.name(), "RankExceedsBellSpace");
        assert!(build_rho_max(&sp(&[0.4, 0.3, 0.2, 0.1, 0.0, 0.0]), dims).is_ok());
    }

    #[test]
    fn rho_min_examples() {
        let dims = Dims::qubits();
        assert!(build_rho_min(&sp(&[0.5, 0.5, 0.0, 0.0]), dims).unwrap().qmi.bits().abs() < 1e-15);
        assert!(build_rho_min(&sp(&[1.0, 0.0, 0.0, 0.0]), dims).unwrap().qmi.bits().abs() < 1e-15);
        let s = sp(&[0.6, 0.3, 0.1, 0.0]);
        let m = build_rho_min(&s, dims).unwrap();
        assert!((m.qmi.bits() - 0.0548).abs() < 1e-4);
        assert!((m.qmi.bits() - i_min_two_qubit(&s).unwrap().bits()).abs() < 1e-10);
        let rho = m.density_matrix();
        assert!((mutual_information(&rho).bits() - m.qmi.bits()).abs() < 1e-10);
        assert_eq!(build_rho_min(&sp(&[0.5, 0.5]), dims).unwrap_err().name(), "WrongDimension");
    }

    #[test]
    fn closed_form_examples() {
        let cases: [([f64; 4], f64, f64); 3] = [
            ([1.0, 0.0, 0.0, 0.0], 0.0, 2.0),
            ([0.25; 4], 0.0, 0.0),
            ([0.6, 0.3, 0.1, 0.0], 0.0548, 0.6497),
        ];
        for (v, imin, delta) in cases {
            let s = sp(&v);
            assert!((i_min_two_qubit(&s).unwrap().bits() - imin).abs() < 1e-4);
            assert!((delta_i_max_unitary(&s).unwrap().bits() - delta).abs() < 1e-4);
        }
        assert_eq!(i_min_two_qubit(&sp(&[1.0])).unwrap_err().name(), "WrongDimension");
    }

    #[test]
    fn energy_formula_examples() {
        let s = sp(&[0.6, 0.3, 0.1, 0.0]);
        assert!((delta_i_max_energy(&s, 1.0).unwrap().bits() - 0.6497).abs() < 1e-4);
        assert!((delta_i_max_energy(&s, 0.6).unwrap().bits() - 0.4123).abs() < 1e-4);
        assert!(delta_i_max_energy(&sp(&[0.25; 4]), 1.0).unwrap().bits().abs() < 1e-12);
        assert_eq!(delta_i_max_energy(&s, 2.1).unwrap_err().name(), "EnergyOutOfRange");
        assert_eq!(delta_i_max_energy(&s, -0.1).unwrap_err().name(), "EnergyOutOfRange");
    }

    #[test]
    fn orbit_samples_stay_within_bounds() {
        let s = sp(&[1.0, 0.0, 0.0, 0.0]);
        for smp in sample_orbit_qmi(&s, Dims::qubits(), 1000, 1).unwrap() {
            assert!(smp.qmi.bits() >= 0.0 && smp.qmi.bits() <= 2.0 + 1e-6);
            assert!(smp.point.is_some());
        }
        let s = sp(&[0.6, 0.3, 0.1, 0.0]);
        let samples = sample_orbit_qmi(&s, Dims::qubits(), 10_000, 2).unwrap();
        let lo = samples.iter().map(|x| x.qmi.bits()).fold(f64::INFINITY, f64::min);
        let hi = samples.iter().map(|x| x.qmi.bits()).fold(0.0, f64::max);
        assert!(lo >= 0.0548 - 1e-4 && lo >= i_min_two_qubit(&s).unwrap().bits() - 1e-6);
        assert!(hi <= i_max(&s, Dims::qubits()).bits() + 1e-6);
    }

    #[test]
    fn strong_energy_unitary_commutes() {
        let h = two_qubit_hamiltonian();
        let mut rng = seeded_rng(5);
        for _ in 0..100 {
            let u = strong_energy_unitary(&mut rng);
            assert!(unitarity_defect(&u) < 1e-10);
            assert!(max_abs(&(&u * &h - &h * &u)) < 1e-10);
        }
        let mut swap = CMatrix::zeros(4, 4);
        for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(i, j)] = Complex64::new(1.0, 0.0);
        }
        assert!(max_abs(&(&swap * &h - &h * &swap)) < 1e-15);
    }

    #[test]
    fn unitary_exp_is_unitary() {
        let g = {
            let u = haar_unitary(4, &mut seeded_rng(9));
            (&u + u.adjoint()) * Complex64::new(0.5, 0.0)
        };
        assert!(unitarity_defect(&unitary_exp(&g, 0.7)) < 1e-12);
        assert!(max_abs(&(unitary_exp(&g, 0.0) - identity(4))) < 1e-12);
    }

    #[test]
    fn report_validates() {
        let s = sp(&[0.6, 0.3, 0.1, 0.0]);
        let res = extremize(&s, Dims::qubits()).unwrap();
        let rep = ExtremalReport::new(&s, Dims::qubits(), &res);
        rep.validate().unwrap();
        let mut bad = rep.clone();
        bad.i_min_bits = 1.0;
        assert!(bad.validate().is_err());
    }
}
