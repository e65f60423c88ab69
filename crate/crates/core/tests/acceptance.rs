//! Acceptance suite. Each test checks one criterion at its stated tolerance
//! and prints a single PASS/FAIL line before asserting.
//!
//! Reference values come from the oracles in `common` (plain Shannon sums,
//! exhaustive permutation search, integer lattice geometry), not from the
//! library code under test.

mod common;

use std::f64::consts::LN_2;
use std::time::Instant;

use itertools::Itertools;
use num_complex::Complex64;
use qmi_orbit::extremize::{
    build_rho_max, build_rho_min, delta_i_max_energy, delta_i_max_unitary, i_max, i_min_two_qubit,
    sample_orbit_qmi, strong_energy_unitary, two_qubit_hamiltonian,
};
use qmi_orbit::marginal2q::MarginalRegion;
use qmi_orbit::qcore::{
    expectation, haar_unitary, identity, max_abs, mutual_information, CMatrix, DensityMatrix, Dims,
};
use qmi_orbit::tableau::{arrangement_qmi, classical_state_qmi, enumerate_tableaux};
use qmi_orbit::thermo::{
    collision_simulate, heat_flow_bound_check, max_anomalous_heat, refinery_gain, CollisionUnitary,
    Decorrelation, HeatSource, ThermalScenario,
};
use qmi_orbit::weak_energy::{optimize_qmi_weak_energy, Direction, SearchOptions};
use qmi_orbit::{Spectrum, Subsystem};
use rand::Rng;

use common::{h2_bits, h_bits, random_spectrum, report, rng};

fn dims(a: usize, b: usize) -> Dims {
    Dims::new(a, b).unwrap()
}

#[test]
fn criterion_01_tableau_counts() {
    let two_by_three = enumerate_tableaux(dims(2, 3)).unwrap();
    let displayed: [[[usize; 3]; 2]; 5] = [
        [[1, 2, 3], [4, 5, 6]],
        [[1, 2, 4], [3, 5, 6]],
        [[1, 2, 5], [3, 4, 6]],
        [[1, 3, 4], [2, 5, 6]],
        [[1, 3, 5], [2, 4, 6]],
    ];
    let grids_match = two_by_three.len() == 5
        && two_by_three
            .iter()
            .zip(displayed)
            .all(|(t, d)| t.grid().iter().zip(d).all(|(row, want)| row.as_slice() == want));

    let c22 = enumerate_tableaux(dims(2, 2)).unwrap().len();
    let c33 = enumerate_tableaux(dims(3, 3)).unwrap().len();
    let start = Instant::now();
    let c44 = enumerate_tableaux(dims(4, 4)).unwrap().len();
    let secs = start.elapsed().as_secs_f64();

    let pass = c22 == 1 && grids_match && c33 == 21 && c44 == 12012 && secs < 30.0;
    report(
        1,
        "tableau counts",
        pass,
        &format!("2x2={c22} 2x3 grids match={grids_match} 3x3={c33} 4x4={c44} in {secs:.2}s"),
    );
    assert!(pass);
}

fn permutation_minimum(spectrum: &Spectrum, d: Dims) -> f64 {
    (1..=d.total())
        .permutations(d.total())
        .map(|perm| {
            let grid: Vec<Vec<usize>> = perm.chunks(d.d_b).map(<[usize]>::to_vec).collect();
            arrangement_qmi(&grid, spectrum, d).unwrap().bits()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn criterion_02_oracle_equivalence() {
    let mut r = rng(2);
    let mut mismatches = 0;
    let mut trials = 0;
    for (d, count) in [(dims(2, 2), 200), (dims(2, 3), 50)] {
        let tableaux = enumerate_tableaux(d).unwrap();
        for _ in 0..count {
            let sp = random_spectrum(&mut r, d.total());
            let via_tableaux = tableaux
                .iter()
                .map(|t| classical_state_qmi(t, &sp).unwrap().bits())
                .fold(f64::INFINITY, f64::min);
            let exhaustive = permutation_minimum(&sp, d);
            trials += 1;
            if via_tableaux.to_bits() != exhaustive.to_bits() {
                mismatches += 1;
            }
        }
    }
    let pass = mismatches == 0;
    report(2, "oracle equivalence", pass, &format!("{mismatches} bitwise mismatches in {trials} spectra"));
    assert!(pass);
}

#[test]
fn criterion_03_closed_form_consistency() {
    let mut r = rng(3);
    let (mut worst_min, mut worst_delta) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let sp = random_spectrum(&mut r, 4);
        let l = sp.values();
        let closed = i_min_two_qubit(&sp).unwrap().bits();
        let built = build_rho_min(&sp, Dims::qubits()).unwrap().qmi.bits();
        worst_min = worst_min.max((closed - built).abs());

        let oracle_min = h2_bits(l[0] + l[1]) + h2_bits(l[0] + l[2]) - h_bits(l);
        let expected = 2.0 - h_bits(l) - oracle_min;
        worst_delta = worst_delta.max((delta_i_max_unitary(&sp).unwrap().bits() - expected).abs());
    }
    let pass = worst_min < 1e-10 && worst_delta < 1e-10;
    report(
        3,
        "closed-form consistency",
        pass,
        &format!("max |i_min - rho_min QMI| = {worst_min:.2e}, max delta error = {worst_delta:.2e}"),
    );
    assert!(pass);
}

#[test]
fn criterion_04_orbit_sandwich() {
    let mut r = rng(4);
    let mut outside = 0;
    let (mut worst_top, mut worst_bottom) = (0.0f64, 0.0f64);
    for seed in 0..10 {
        let sp = random_spectrum(&mut r, 4);
        let lo = build_rho_min(&sp, Dims::qubits()).unwrap().qmi.bits();
        let hi = i_max(&sp, Dims::qubits()).bits();
        let samples = sample_orbit_qmi(&sp, Dims::qubits(), 10_000, seed).unwrap();
        let qs: Vec<f64> = samples.iter().map(|s| s.qmi.bits()).collect();
        outside += qs.iter().filter(|&&q| q < lo - 1e-6 || q > hi + 1e-6).count();
        let smax = qs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let smin = qs.iter().copied().fold(f64::INFINITY, f64::min);
        worst_top = worst_top.max(hi - smax);
        worst_bottom = worst_bottom.max(smin - lo);
    }
    let pass = outside == 0 && worst_top < 0.05 && worst_bottom < 0.05;
    report(
        4,
        "orbit sandwich",
        pass,
        &format!(
            "{outside} samples outside bounds; worst gap below i_max {worst_top:.4}, above i_min {worst_bottom:.4} (limit 0.05)"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_05_rho_max_construction() {
    let mut r = rng(5);
    let (mut worst_marg, mut worst_qmi) = (0.0f64, 0.0f64);
    for d in [2usize, 3] {
        let dm = dims(d, d);
        let mixed = identity(d) * Complex64::new(1.0 / d as f64, 0.0);
        for _ in 0..100 {
            let sp = random_spectrum(&mut r, d * d);
            let rho = build_rho_max(&sp, dm).unwrap();
            for side in [Subsystem::A, Subsystem::B] {
                worst_marg = worst_marg.max(max_abs(&(rho.partial_trace(side).matrix() - &mixed)));
            }
            let expected = 2.0 * (d as f64).log2() - h_bits(sp.values());
            worst_qmi = worst_qmi.max((mutual_information(&rho).bits() - expected).abs());
        }
    }
    let pass = worst_marg < 1e-8 && worst_qmi < 1e-8;
    report(
        5,
        "rho_max construction",
        pass,
        &format!("max marginal deviation {worst_marg:.2e}, max QMI error {worst_qmi:.2e}"),
    );
    assert!(pass);
}

/// Lattice of a 101-point raster in units of 1/200.
fn raster_matches(sp: &[f64], energy: Option<f64>, expected: impl Fn(i64, i64) -> bool) -> (bool, usize) {
    let region = MarginalRegion::new(Spectrum::new(sp.to_vec()).unwrap(), energy).unwrap();
    let raster = region.rasterize(101).unwrap();
    let mut bad = 0;
    for i in 0..101 {
        for j in 0..101 {
            let (_, inside) = raster.cell(i, j);
            if inside != expected(i as i64, j as i64) {
                bad += 1;
            }
        }
    }
    (bad == 0, bad)
}

#[test]
fn criterion_06_marginal_region() {
    let mut r = rng(6);
    let mut escaped = 0;
    let mut total = 0;
    for seed in 0..10 {
        let sp = random_spectrum(&mut r, 4);
        let region = MarginalRegion::new(sp.clone(), None).unwrap();
        for s in sample_orbit_qmi(&sp, Dims::qubits(), 10_000, 100 + seed).unwrap() {
            total += 1;
            if !region.contains(&s.point.unwrap()) {
                escaped += 1;
            }
        }
    }

    // (i, j) = (200 λ_A, 200 λ_B)
    let (a, bad_a) = raster_matches(&[1.0, 0.0, 0.0, 0.0], None, |i, j| i == j);
    let (b, bad_b) = raster_matches(&[0.8, 0.2, 0.0, 0.0], None, |i, j| (i - j).abs() <= 40 && i + j >= 40);
    let (c, bad_c) = raster_matches(&[0.5, 0.5, 0.0, 0.0], None, |i, j| i + j >= 100);
    let quad = |i: i64, j: i64| i >= 20 && j >= 20 && (80..=100).contains(&(i + j));
    let (d, bad_d) = raster_matches(&[0.6, 0.3, 0.1, 0.0], Some(0.5), quad);
    let corners = [(20, 60), (20, 80), (80, 20), (60, 20)].iter().all(|&(i, j)| quad(i, j))
        && !quad(19, 60)
        && !quad(20, 59)
        && !quad(21, 80);
    let c_vertex = {
        let reg = MarginalRegion::new(Spectrum::new(vec![0.5, 0.5, 0.0, 0.0]).unwrap(), None).unwrap();
        let raster = reg.rasterize(101).unwrap();
        raster.cell(0, 100).1 && raster.cell(100, 0).1 && !raster.cell(0, 99).1
    };
    let d_holds = {
        let reg = MarginalRegion::new(Spectrum::new(vec![0.6, 0.3, 0.1, 0.0]).unwrap(), Some(0.5)).unwrap();
        reg.rasterize(101).unwrap().cell(20, 60).1
    };

    let pass = escaped == 0 && a && b && c && c_vertex && d && corners && d_holds;
    report(
        6,
        "marginal region",
        pass,
        &format!(
            "{escaped}/{total} orbit points outside; raster mismatches a={bad_a} b={bad_b} c={bad_c} d={bad_d}; \
             triangle vertex (0,1/2) {c_vertex}; quadrilateral holds (0.1,0.3) {d_holds}"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_07_energy_formula() {
    let mut r = rng(7);
    let h = two_qubit_hamiltonian();
    let spectra: Vec<Spectrum> = (0..50).map(|_| random_spectrum(&mut r, 4)).collect();

    let mut worst_identity = 0.0f64;
    let mut worst_symmetry = 0.0f64;
    for sp in &spectra {
        let unitary = delta_i_max_unitary(sp).unwrap().bits();
        for k in 0..20 {
            let e = 2.0 * k as f64 / 19.0;
            let here = delta_i_max_energy(sp, e).unwrap().bits();
            let mirror = delta_i_max_energy(sp, 2.0 - e).unwrap().bits();
            worst_symmetry = worst_symmetry.max((here - mirror).abs());
            worst_identity = worst_identity.max((delta_i_max_energy(sp, 1.0).unwrap().bits() - unitary).abs());
        }
    }

    let start = Instant::now();
    let mut worst_excess = f64::NEG_INFINITY;
    for (n, sp) in spectra.iter().enumerate() {
        let base = DensityMatrix::from_diagonal(sp.values(), Dims::qubits()).unwrap();
        let rho = base.evolve(&haar_unitary(4, &mut r)).unwrap();
        let e = expectation(rho.matrix(), &h);
        let opts = SearchOptions { budget: 10_000, seed: n as u64, ..Default::default() };
        let (best, _) = optimize_qmi_weak_energy(&rho, e, Direction::Max, &opts).unwrap();
        let l = sp.values();
        let bound = 2.0 * h2_bits(e / 2.0) - h_bits(l);
        worst_excess = worst_excess.max(best.bits() - bound);
    }
    let secs = start.elapsed().as_secs_f64();

    let pass = worst_identity < 1e-12 && worst_excess <= 1e-6 && secs < 120.0;
    report(
        7,
        "energy formula",
        pass,
        &format!(
            "max |dI_E(1) - dI_U| = {worst_identity:.2e}, E<->2-E asymmetry {worst_symmetry:.2e}, \
             max optimizer excess over bound {worst_excess:.2e}, optimizer time {secs:.1}s"
        ),
    );
    assert!(pass);
}

/// Random state with the given thermal marginals: classical correlation
/// shifts and coherences that leave both reduced states untouched.
fn correlated_thermal<R: Rng>(sc: &ThermalScenario, r: &mut R) -> DensityMatrix {
    let p = sc.gibbs_product().state().diagonal();
    let lo = -p[0].min(p[3]);
    let hi = p[1].min(p[2]);
    let delta = lo + (hi - lo) * r.random_range(0.05..0.95);
    let q = [p[0] + delta, p[1] - delta, p[2] - delta, p[3] + delta];
    let mut m = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(
        q.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
    ));
    let c_mid = Complex64::from_polar(0.95 * r.random::<f64>() * (q[1] * q[2]).sqrt(), r.random_range(0.0..6.3));
    let c_out = Complex64::from_polar(0.95 * r.random::<f64>() * (q[0] * q[3]).sqrt(), r.random_range(0.0..6.3));
    m[(1, 2)] = c_mid;
    m[(2, 1)] = c_mid.conj();
    m[(0, 3)] = c_out;
    m[(3, 0)] = c_out.conj();
    DensityMatrix::new(m, Dims::qubits()).unwrap()
}

#[test]
fn criterion_08_heat_flow_laws() {
    let mut r = rng(8);
    let temps = [(0.5, 2.0), (1.0, 1.0), (0.8, 3.0), (2.0, 0.7), (1.5, 1.6)];
    let (mut worst_eq1, mut worst_eq2) = (f64::INFINITY, f64::INFINITY);
    let mut worst_qa_cold = f64::INFINITY;
    let mut anomalous_b = 0;
    for trial in 0..1000 {
        let (ta, tb) = temps[trial % temps.len()];
        let sc = ThermalScenario::qubits(ta, tb).unwrap();
        let u = strong_energy_unitary(&mut r);

        let product = sc.gibbs_product();
        let rep = heat_flow_bound_check(&product, &product.evolve(&u).unwrap(), &sc).unwrap();
        worst_eq1 = worst_eq1.min(rep.eq1_slack);
        worst_eq2 = worst_eq2.min(rep.eq2_slack);
        if ta <= tb {
            worst_qa_cold = worst_qa_cold.min(rep.q_a);
        }

        let corr = correlated_thermal(&sc, &mut r);
        let rep = heat_flow_bound_check(&corr, &corr.evolve(&u).unwrap(), &sc).unwrap();
        worst_eq1 = worst_eq1.min(rep.eq1_slack);
        worst_eq2 = worst_eq2.min(rep.eq2_slack);
        anomalous_b += usize::from(rep.anomalous);
    }
    let pass = worst_eq1 >= -1e-8 && worst_eq2 >= -1e-8 && worst_qa_cold >= -1e-8;
    report(
        8,
        "heat-flow laws",
        pass,
        &format!(
            "min slack eq1 {worst_eq1:.2e}, eq2 {worst_eq2:.2e}; min Q_A (product, T_A<=T_B) {worst_qa_cold:.2e}; \
             {anomalous_b} anomalous correlated trials"
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_09_witness_threshold() {
    // ln 2 / |1/T_A - 1/T_B| worked by hand
    let cases = [(1.0, 2.0, 1.386_294_361_119_890_6), (0.5, 2.0, 0.462_098_120_373_296_9), (1.0, 1.5, 2.079_441_541_679_836)];
    let mut worst = 0.0f64;
    for (ta, tb, want) in cases {
        let sc = ThermalScenario::qubits(ta, tb).unwrap();
        let bound = max_anomalous_heat(HeatSource::State(&sc.gibbs_product()), &sc).unwrap();
        worst = worst.max((bound.witness_threshold - want).abs());
    }
    let pass = worst < 1e-12;
    report(9, "witness threshold", pass, &format!("max deviation from hand values {worst:.2e}"));
    assert!(pass);
}

#[test]
fn criterion_10_collision_equilibration() {
    let sc = ThermalScenario::qubits(0.5, 2.0).unwrap();
    let swap = CollisionUnitary::PartialSwap { theta: 0.3 };
    let full = collision_simulate(&sc, 500, swap, Decorrelation::FullProduct, 0).unwrap();
    let full_at = full.equilibrated_at(0.01);
    let monotone = full.local_entropy_monotone(1e-10);
    let dephase = collision_simulate(&sc, 1000, swap, Decorrelation::DephaseToMinimal, 0).unwrap();
    let dephase_at = dephase.equilibrated_at(0.05);

    let pass = full_at.is_some() && monotone && dephase_at.is_some();
    report(
        10,
        "collision equilibration",
        pass,
        &format!("full product within 0.01 at step {full_at:?}, S_A+S_B monotone {monotone}; dephase within 0.05 at step {dephase_at:?}"),
    );
    assert!(pass);
}

#[test]
fn criterion_11_refinery() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x| Complex64::new(x, 0.0);
    let bell = DensityMatrix::pure(&[c(s), c(0.0), c(0.0), c(s)], Dims::qubits()).unwrap();
    let bell_gain = refinery_gain(&bell, 1.0).unwrap();
    let sc = ThermalScenario::qubits(0.7, 1.9).unwrap();
    let product_gain = refinery_gain(&sc.gibbs_product(), 1.0).unwrap();
    let bell_err = (bell_gain - 2.0 * LN_2).abs();
    let pass = bell_err < 1e-10 && product_gain.abs() < 1e-10;
    report(
        11,
        "refinery",
        pass,
        &format!("Bell gain {bell_gain:.12} (error {bell_err:.2e}), product gain {product_gain:.2e}"),
    );
    assert!(pass);
}
