//! Shared helpers for integration tests: random spectra and reference
//! entropy computations written independently of the library.

#![allow(dead_code)]

use std::io::Write;

use qmi_orbit::Spectrum;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1};

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Flat Dirichlet sample of length `n`; every entry is strictly positive.
pub fn random_spectrum<R: Rng>(rng: &mut R, n: usize) -> Spectrum {
    let w: Vec<f64> = (0..n).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = w.iter().sum();
    Spectrum::new(w.into_iter().map(|x| x / total).collect()).unwrap()
}

/// Shannon entropy in bits, summed in the given order.
pub fn h_bits(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.ln()).sum::<f64>() / std::f64::consts::LN_2
}

pub fn h2_bits(x: f64) -> f64 {
    h_bits(&[x, 1.0 - x])
}

/// Writes an uncaptured status line so results show up in plain `cargo test` output.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "acceptance {id:>2} [{verdict}] {name}: {detail}");
}
