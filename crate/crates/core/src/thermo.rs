//! Thermodynamic uses of orbit extremization: Szilard work from correlated
//! fuel, bounds on anomalous heat flow, and a collision model of
//! equilibration.
//!
//! Entropies here are in nats and temperatures are in energy units once
//! multiplied by `k_boltzmann`. Values taken from [`crate::extremize`] are
//! converted from bits explicitly.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremize::{build_rho_min, i_max, i_min_two_qubit, strong_energy_unitary};
use crate::marginal2q::{MarginalPoint, MarginalRegion};
use crate::numfmt::sig;
use crate::qcore::{
    expectation, identity, kron, max_abs, mutual_information, seeded_rng, CMatrix, DensityMatrix,
    Dims, Entropy, Spectrum, State,
};

/// Tolerance for the thermal-marginal, energy and spectrum preconditions.
pub const THERMO_TOL: f64 = 1e-8;

/// A Hamiltonian diagonal in the computational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Hamiltonian(Vec<f64>);

impl Hamiltonian {
    pub fn diagonal(levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() || levels.iter().any(|e| !e.is_finite()) {
            return Err(Error::DimensionMismatch("Hamiltonian needs finite energy levels".into()));
        }
        Ok(Hamiltonian(levels))
    }

    /// `ε |1><1|`.
    pub fn qubit(spacing: f64) -> Self {
        Hamiltonian(vec![0.0, spacing])
    }

    pub fn levels(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&DVector::from_iterator(self.dim(), self.0.iter().map(|&e| Complex64::new(e, 0.0))))
    }
}

/// Local Hamiltonians and temperatures of two subsystems.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalScenario {
    pub h_a: Hamiltonian,
    pub h_b: Hamiltonian,
    pub t_a: f64,
    pub t_b: f64,
    pub k_boltzmann: f64,
}

impl ThermalScenario {
    pub fn new(h_a: Hamiltonian, h_b: Hamiltonian, t_a: f64, t_b: f64) -> Result<Self> {
        for t in [t_a, t_b] {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::NonPositiveTemperature(t));
            }
        }
        Dims::new(h_a.dim(), h_b.dim())?;
        Ok(ThermalScenario { h_a, h_b, t_a, t_b, k_boltzmann: 1.0 })
    }

    /// Two qubits with `H_A = H_B = |1><1|`.
    pub fn qubits(t_a: f64, t_b: f64) -> Result<Self> {
        ThermalScenario::new(Hamiltonian::qubit(1.0), Hamiltonian::qubit(1.0), t_a, t_b)
    }

    pub fn with_k(mut self, k: f64) -> Result<Self> {
        if !(k > 0.0) {
            return Err(Error::NonPositiveTemperature(k));
        }
        self.k_boltzmann = k;
        Ok(self)
    }

    pub fn dims(&self) -> Dims {
        Dims { d_a: self.h_a.dim(), d_b: self.h_b.dim() }
    }

    pub fn beta_a(&self) -> f64 {
        1.0 / (self.k_boltzmann * self.t_a)
    }

    pub fn beta_b(&self) -> f64 {
        1.0 / (self.k_boltzmann * self.t_b)
    }

    /// `H_A ⊗ I + I ⊗ H_B`.
    pub fn total_hamiltonian(&self) -> CMatrix {
        kron(&self.h_a.matrix(), &identity(self.h_b.dim())) + kron(&identity(self.h_a.dim()), &self.h_b.matrix())
    }

    pub fn gibbs_a(&self) -> State {
        gibbs_state(&self.h_a, self.k_boltzmann * self.t_a).expect("temperature validated")
    }

    pub fn gibbs_b(&self) -> State {
        gibbs_state(&self.h_b, self.k_boltzmann * self.t_b).expect("temperature validated")
    }

    /// `ρ_A^th ⊗ ρ_B^th`.
    pub fn gibbs_product(&self) -> DensityMatrix {
        DensityMatrix::product(&self.gibbs_a(), &self.gibbs_b()).expect("product of valid states")
    }

    /// `ln(min d) / |β_A - β_B|`: heat moved against the gradient beyond
    /// this amount requires initial entanglement.
    pub fn witness_threshold(&self) -> Result<f64> {
        let gap = (self.beta_a() - self.beta_b()).abs();
        if gap <= f64::EPSILON * self.beta_a().max(self.beta_b()) {
            return Err(Error::EqualTemperatures);
        }
        Ok((self.dims().min() as f64).ln() / gap)
    }
}

/// `Z = tr e^{-H / kT}`.
pub fn partition_function(h: &Hamiltonian, kt: f64) -> Result<f64> {
    if !(kt > 0.0) {
        return Err(Error::NonPositiveTemperature(kt));
    }
    let e0 = h.levels().iter().copied().fold(f64::INFINITY, f64::min);
    let shifted: f64 = h.levels().iter().map(|e| (-(e - e0) / kt).exp()).sum();
    Ok(shifted * (-e0 / kt).exp())
}

/// `e^{-H / kT} / Z`, with `kT` in energy units.
pub fn gibbs_state(h: &Hamiltonian, kt: f64) -> Result<State> {
    if !(kt > 0.0) || !kt.is_finite() {
        return Err(Error::NonPositiveTemperature(kt));
    }
    let e0 = h.levels().iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = h.levels().iter().map(|e| (-(e - e0) / kt).exp()).collect();
    let z: f64 = w.iter().sum();
    let p: Vec<f64> = w.iter().map(|x| x / z).collect();
    State::from_diagonal(&p)
}

/// `F = tr(ρH) - kT S(ρ)`, entropy in nats.
pub fn free_energy(rho: &State, h: &Hamiltonian, kt: f64) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!("state of dim {} vs Hamiltonian of dim {}", rho.dim(), h.dim())));
    }
    Ok(expectation(rho.matrix(), &h.matrix()) - kt * rho.entropy().nats())
}

/// `kT (ln(d_A d_B) - S(ρ_A) - S(ρ_B))`.
pub fn szilard_work(rho: &DensityMatrix, kt: f64) -> Result<f64> {
    if !(kt > 0.0) {
        return Err(Error::NonPositiveTemperature(kt));
    }
    let (a, b) = rho.marginals();
    Ok(kt * ((rho.dims().total() as f64).ln() - a.entropy().nats() - b.entropy().nats()))
}

/// Largest extra work from an entropy-preserving global refinement:
/// `kT (I(ρ) - I_min) ln 2`.
pub fn refinery_gain(rho: &DensityMatrix, kt: f64) -> Result<f64> {
    if !(kt > 0.0) {
        return Err(Error::NonPositiveTemperature(kt));
    }
    let i_min = build_rho_min(&rho.spectrum(), rho.dims())?.qmi;
    let gap = (mutual_information(rho) - i_min).nats();
    Ok(kt * gap.max(0.0))
}

/// Outcome of an energy-conserving interaction between locally thermal systems.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatFlowReport {
    pub q_a: f64,
    pub q_b: f64,
    pub delta_s_a: f64,
    pub delta_s_b: f64,
    /// `I(ρ') - I(ρ)` in nats.
    pub delta_i: f64,
    /// `β_A Q_A + β_B Q_B - (ΔS_A + ΔS_B)`.
    pub eq1_slack: f64,
    /// `Q_A (β_A - β_B) - ΔI`.
    pub eq2_slack: f64,
    pub bound_satisfied: bool,
    pub anomalous: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_threshold: Option<f64>,
    pub witness_triggered: bool,
}

impl HeatFlowReport {
    pub fn validate(&self) -> Result<()> {
        let nums = [self.q_a, self.q_b, self.delta_s_a, self.delta_s_b, self.delta_i, self.eq1_slack, self.eq2_slack];
        if nums.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidMode("non-finite heat-flow quantity".into()));
        }
        if self.bound_satisfied != (self.eq2_slack >= -THERMO_TOL) {
            return Err(Error::InvalidMode("bound_satisfied inconsistent with eq2_slack".into()));
        }
        if self.witness_triggered && !self.anomalous {
            return Err(Error::InvalidMode("witness triggered without anomalous flow".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn is_anomalous(q_a: f64, t_a: f64, t_b: f64) -> bool {
    (q_a < -1e-10 && t_a <= t_b) || (q_a > 1e-10 && t_a > t_b)
}

/// Checks the heat-flow inequalities for `before -> after`.
pub fn heat_flow_bound_check(
    before: &DensityMatrix,
    after: &DensityMatrix,
    sc: &ThermalScenario,
) -> Result<HeatFlowReport> {
    let dims = sc.dims();
    if before.dims() != dims || after.dims() != dims {
        return Err(Error::DimensionMismatch(format!(
            "states are {} and {}, scenario is {dims}",
            before.dims(),
            after.dims()
        )));
    }
    let (a0, b0) = before.marginals();
    let (ga, gb) = (sc.gibbs_a(), sc.gibbs_b());
    let dev_a = max_abs(&(a0.matrix() - ga.matrix()));
    let dev_b = max_abs(&(b0.matrix() - gb.matrix()));
    if dev_a > THERMO_TOL || dev_b > THERMO_TOL {
        return Err(Error::MarginalsNotThermal(format!("deviation A {dev_a:.3e}, B {dev_b:.3e}")));
    }
    let h = sc.total_hamiltonian();
    let (e0, e1) = (expectation(before.matrix(), &h), expectation(after.matrix(), &h));
    if (e0 - e1).abs() > THERMO_TOL {
        return Err(Error::EnergyNotConserved { before: e0, after: e1 });
    }
    let spec_gap = before
        .spectrum()
        .values()
        .iter()
        .zip(after.spectrum().values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    if spec_gap > THERMO_TOL {
        return Err(Error::SpectrumMismatch(spec_gap));
    }

    let (a1, b1) = after.marginals();
    let (ha, hb) = (sc.h_a.matrix(), sc.h_b.matrix());
    let q_a = expectation(a1.matrix(), &ha) - expectation(a0.matrix(), &ha);
    let q_b = expectation(b1.matrix(), &hb) - expectation(b0.matrix(), &hb);
    let delta_s_a = a1.entropy().nats() - a0.entropy().nats();
    let delta_s_b = b1.entropy().nats() - b0.entropy().nats();
    let delta_i = mutual_information(after).nats() - mutual_information(before).nats();
    let (ba, bb) = (sc.beta_a(), sc.beta_b());
    let eq1_slack = ba * q_a + bb * q_b - (delta_s_a + delta_s_b);
    let eq2_slack = q_a * (ba - bb) - delta_i;
    let anomalous = is_anomalous(q_a, sc.t_a, sc.t_b);
    let witness_threshold = sc.witness_threshold().ok();
    let witness_triggered = anomalous && witness_threshold.is_some_and(|w| q_a.abs() > w);
    Ok(HeatFlowReport {
        q_a,
        q_b,
        delta_s_a,
        delta_s_b,
        delta_i,
        eq1_slack,
        eq2_slack,
        bound_satisfied: eq2_slack >= -THERMO_TOL,
        anomalous,
        witness_threshold,
        witness_triggered,
    })
}

/// What the anomalous-heat bound is computed from.
#[derive(Debug, Clone, Copy)]
pub enum HeatSource<'a> {
    /// A known initial state: its own mutual information is used.
    State(&'a DensityMatrix),
    /// Only the spectrum: the orbit maximum is the worst case.
    Spectrum(&'a Spectrum),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QmiSource {
    GivenState,
    OrbitMaximum,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnomalousHeatBound {
    /// Upper bound on `|Q_A|` against the temperature gradient.
    pub max_heat: f64,
    /// `ln(min d) / |β_A - β_B|`.
    pub witness_threshold: f64,
    pub qmi_source: QmiSource,
    pub initial_qmi_bits: f64,
    pub i_min_bits: f64,
}

impl AnomalousHeatBound {
    pub fn validate(&self) -> Result<()> {
        if !(self.max_heat >= 0.0 && self.witness_threshold >= 0.0 && self.initial_qmi_bits >= self.i_min_bits - 1e-10) {
            return Err(Error::InvalidMode("inconsistent anomalous-heat bound".into()));
        }
        Ok(())
    }
}

/// `|Q_A| <= (I(ρ) - I_min) / |β_A - β_B|` for two qubits, with the
/// entanglement-witness threshold alongside.
pub fn max_anomalous_heat(source: HeatSource<'_>, sc: &ThermalScenario) -> Result<AnomalousHeatBound> {
    if sc.dims() != Dims::qubits() {
        return Err(Error::DimensionMismatch(format!("two-qubit scenario required, got {}", sc.dims())));
    }
    let threshold = sc.witness_threshold()?;
    let (spectrum, initial, qmi_source) = match source {
        HeatSource::State(rho) => {
            if rho.dims() != Dims::qubits() {
                return Err(Error::DimensionMismatch(format!("state is {}", rho.dims())));
            }
            (rho.spectrum(), mutual_information(rho), QmiSource::GivenState)
        }
        HeatSource::Spectrum(sp) => {
            sp.check_dims(Dims::qubits())?;
            (sp.clone(), i_max(sp, Dims::qubits()), QmiSource::OrbitMaximum)
        }
    };
    let point = MarginalPoint::from_marginals(&sc.gibbs_a().diagonal(), &sc.gibbs_b().diagonal());
    if !MarginalRegion::new(spectrum.clone(), None)?.contains(&point) {
        return Err(Error::InfeasibleMarginals((point.lambda_a, point.lambda_b)));
    }
    let i_min = i_min_two_qubit(&spectrum)?;
    let gap = (initial - i_min).nats().max(0.0);
    Ok(AnomalousHeatBound {
        max_heat: gap / (sc.beta_a() - sc.beta_b()).abs(),
        witness_threshold: threshold,
        qmi_source,
        initial_qmi_bits: initial.bits(),
        i_min_bits: i_min.bits(),
    })
}

/// Interaction used in each collision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CollisionUnitary {
    /// `exp(iθ SWAP) = cos θ I + i sin θ SWAP`.
    PartialSwap { theta: f64 },
    /// Fresh block-Haar unitary commuting with `H_A + H_B` every step.
    RandomStrong,
}

/// What happens to the joint state after each interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Decorrelation {
    /// Replace by the product of the marginals.
    FullProduct,
    /// Dephase in the energy eigenbasis, then arrange the dephased
    /// populations as the minimally correlated classical state.
    DephaseToMinimal,
}

impl std::str::FromStr for Decorrelation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product" | "full-product" => Ok(Decorrelation::FullProduct),
            "dephase" | "dephase-to-minimal" => Ok(Decorrelation::DephaseToMinimal),
            other => Err(Error::InvalidMode(format!("unknown decorrelation mode {other:?}"))),
        }
    }
}

pub fn partial_swap(theta: f64) -> CMatrix {
    let (s, c) = theta.sin_cos();
    let mut u = identity(4) * Complex64::new(c, 0.0);
    for (i, j) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
        u[(i, j)] += Complex64::new(0.0, s);
    }
    u
}

/// Effective temperature `(e_1 - e_0) / (k ln(p_0 / p_1))` from the two
/// lowest-level populations of a local state.
pub fn effective_temperature(rho: &State, h: &Hamiltonian, k: f64) -> f64 {
    let p = rho.diagonal();
    let gap = h.levels()[1] - h.levels()[0];
    if p[1] <= 0.0 {
        return 0.0;
    }
    let ratio = (p[0] / p[1]).ln();
    if ratio == 0.0 {
        f64::INFINITY
    } else {
        gap / (k * ratio)
    }
}

/// One row of a collision trace; entropies and QMI in nats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollisionStep {
    pub step: usize,
    pub s_a: f64,
    pub s_b: f64,
    pub t_a: f64,
    pub t_b: f64,
    /// QMI right after the interaction, before decorrelation.
    pub qmi: f64,
    pub q_a: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CollisionTrace {
    /// Row 0 is the initial product of Gibbs states.
    pub steps: Vec<CollisionStep>,
}

impl CollisionTrace {
    pub fn last(&self) -> &CollisionStep {
        self.steps.last().expect("trace always holds the initial row")
    }

    /// First step at which `|T_A - T_B| < tol`.
    pub fn equilibrated_at(&self, tol: f64) -> Option<usize> {
        self.steps.iter().find(|s| (s.t_a - s.t_b).abs() < tol).map(|s| s.step)
    }

    /// Whether `S_A + S_B` never drops by more than `tol` between rows.
    pub fn local_entropy_monotone(&self, tol: f64) -> bool {
        self.steps.windows(2).all(|w| w[1].s_a + w[1].s_b >= w[0].s_a + w[0].s_b - tol)
    }

    /// CSV with header `step,s_a,s_b,t_a,t_b,qmi,q_a`, six significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("step,s_a,s_b,t_a,t_b,qmi,q_a\n");
        for s in &self.steps {
            let f = |x: f64| sig(x, 6);
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                s.step,
                f(s.s_a),
                f(s.s_b),
                f(s.t_a),
                f(s.t_b),
                f(s.qmi),
                f(s.q_a)
            ));
        }
        out
    }
}

/// Repeated collisions between two qubits that start in Gibbs states.
pub fn collision_simulate(
    sc: &ThermalScenario,
    n_steps: usize,
    unitary: CollisionUnitary,
    mode: Decorrelation,
    seed: u64,
) -> Result<CollisionTrace> {
    if sc.dims() != Dims::qubits() {
        return Err(Error::InvalidMode(format!("collisions are defined for two qubits, got {}", sc.dims())));
    }
    if sc.h_a != sc.h_b {
        return Err(Error::InvalidMode(
            "energy-conserving collisions need identical local Hamiltonians".into(),
        ));
    }
    let dims = Dims::qubits();
    let (ha, k) = (sc.h_a.matrix(), sc.k_boltzmann);
    let mut rng = seeded_rng(seed);
    let mut rho = sc.gibbs_product();

    let row = |step: usize, rho: &DensityMatrix, qmi: f64, q_a: f64| {
        let (a, b) = rho.marginals();
        CollisionStep {
            step,
            s_a: a.entropy().nats(),
            s_b: b.entropy().nats(),
            t_a: effective_temperature(&a, &sc.h_a, k),
            t_b: effective_temperature(&b, &sc.h_b, k),
            qmi,
            q_a,
        }
    };
    let mut steps = vec![row(0, &rho, mutual_information(&rho).nats(), 0.0)];

    for step in 1..=n_steps {
        let u = match unitary {
            CollisionUnitary::PartialSwap { theta } => partial_swap(theta),
            CollisionUnitary::RandomStrong => strong_energy_unitary(&mut rng),
        };
        let evolved = rho.evolve(&u)?;
        let (a0, _) = rho.marginals();
        let (a1, b1) = evolved.marginals();
        let q_a = expectation(a1.matrix(), &ha) - expectation(a0.matrix(), &ha);
        let qmi = mutual_information(&evolved).nats();
        rho = match mode {
            Decorrelation::FullProduct => DensityMatrix::product(&a1, &b1)?,
            Decorrelation::DephaseToMinimal => {
                let populations = Spectrum::new(evolved.state().diagonal())?;
                build_rho_min(&populations, dims)?.density_matrix()
            }
        };
        steps.push(row(step, &rho, qmi, q_a));
    }
    Ok(CollisionTrace { steps })
}

/// Converts a QMI in bits to nats.
pub fn bits_to_nats(bits: f64) -> f64 {
    Entropy::from_bits(bits).nats()
}
