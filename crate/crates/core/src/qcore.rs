//! Linear algebra and information-theoretic primitives for finite-dimensional
//! bipartite quantum states.
//!
//! Conventions used throughout the crate:
//!
//! * entropies are stored in bits and converted to nats on request;
//! * `0 log 0 = 0`;
//! * the composite index of a product basis vector `|j> ⊗ |k>` is
//!   `j * d_b + k`.

use std::f64::consts::LN_2;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Hermiticity, trace and positivity tolerance for density matrices.
pub const STATE_TOL: f64 = 1e-10;
/// Entries of a distribution may dip this far below zero before rejection.
pub const DIST_NEG_TOL: f64 = 1e-12;
/// Largest composite dimension handled.
pub const MAX_COMPOSITE_DIM: usize = 64;

/// Logarithm base for entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Bits,
    Nats,
}

/// An entropy-like quantity, stored in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct Entropy(f64);

impl Entropy {
    pub const ZERO: Entropy = Entropy(0.0);

    pub fn from_bits(bits: f64) -> Self {
        Entropy(bits)
    }

    pub fn from_nats(nats: f64) -> Self {
        Entropy(nats / LN_2)
    }

    pub fn bits(self) -> f64 {
        self.0
    }

    pub fn nats(self) -> f64 {
        self.0 * LN_2
    }

    pub fn in_base(self, base: LogBase) -> f64 {
        match base {
            LogBase::Bits => self.bits(),
            LogBase::Nats => self.nats(),
        }
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl std::ops::Add for Entropy {
    type Output = Entropy;
    fn add(self, rhs: Entropy) -> Entropy {
        Entropy(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Entropy {
    type Output = Entropy;
    fn sub(self, rhs: Entropy) -> Entropy {
        Entropy(self.0 - rhs.0)
    }
}

/// Local dimensions of a bipartite system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub d_a: usize,
    pub d_b: usize,
}

impl Dims {
    pub fn new(d_a: usize, d_b: usize) -> Result<Self> {
        if d_a < 2 || d_b < 2 {
            return Err(Error::InvalidDims(format!(
                "{d_a}x{d_b}: both local dimensions must be at least 2"
            )));
        }
        if d_a * d_b > MAX_COMPOSITE_DIM {
            return Err(Error::InvalidDims(format!(
                "{d_a}x{d_b}: composite dimension exceeds {MAX_COMPOSITE_DIM}"
            )));
        }
        Ok(Dims { d_a, d_b })
    }

    pub fn qubits() -> Self {
        Dims { d_a: 2, d_b: 2 }
    }

    pub fn total(&self) -> usize {
        self.d_a * self.d_b
    }

    pub fn min(&self) -> usize {
        self.d_a.min(self.d_b)
    }

    pub fn index(&self, j: usize, k: usize) -> usize {
        j * self.d_b + k
    }

    pub fn local(&self, side: Subsystem) -> usize {
        match side {
            Subsystem::A => self.d_a,
            Subsystem::B => self.d_b,
        }
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.d_a, self.d_b)
    }
}

impl std::str::FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(['x', 'X'])
            .ok_or_else(|| Error::InvalidDims(format!("{s:?}: expected AxB")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidDims(format!("{s:?}: expected AxB")))
        };
        Dims::new(parse(a)?, parse(b)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
}

/// Validate a probability vector: entries `>= -1e-12`, total within `1e-10` of one.
pub fn check_distribution(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::NotADistribution("empty vector".into()));
    }
    if let Some(bad) = p.iter().find(|x| !x.is_finite() || **x < -DIST_NEG_TOL) {
        return Err(Error::NotADistribution(format!("entry {bad} is negative or not finite")));
    }
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > STATE_TOL {
        return Err(Error::NotADistribution(format!("entries sum to {total}")));
    }
    Ok(())
}

/// Eigenvalues of a joint state, non-increasing, summing to one.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    /// Sort, clip tiny negatives and renormalize. Input order is irrelevant.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        check_distribution(&values)?;
        for v in values.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        let total: f64 = values.iter().sum();
        if (total - 1.0).abs() > 4.0 * f64::EPSILON {
            for v in values.iter_mut() {
                *v /= total;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Spectrum(values))
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `λ_i` with the 1-based indexing used for tableaux.
    pub fn lambda(&self, i: usize) -> f64 {
        self.0[i - 1]
    }

    /// Number of eigenvalues above `1e-14`.
    pub fn rank(&self) -> usize {
        self.0.iter().filter(|&&x| x > 1e-14).count()
    }

    pub fn shannon(&self) -> Entropy {
        entropy_unchecked(&self.0)
    }

    /// Whether the spectrum is consistent with the given bipartite dims.
    pub fn check_dims(&self, dims: Dims) -> Result<()> {
        if self.len() != dims.total() {
            return Err(Error::WrongDimension { expected: dims.total(), got: self.len() });
        }
        Ok(())
    }
}

impl<'de> Deserialize<'de> for Spectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<f64>::deserialize(d)?;
        Spectrum::new(v).map_err(serde::de::Error::custom)
    }
}

fn entropy_unchecked(p: &[f64]) -> Entropy {
    let h = p
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>();
    Entropy(h.max(0.0))
}

/// Shannon entropy in bits.
pub fn shannon_entropy(p: &[f64]) -> Result<Entropy> {
    check_distribution(p)?;
    Ok(entropy_unchecked(p))
}

/// Binary Shannon entropy `H(x) = -x log x - (1-x) log(1-x)`.
pub fn binary_entropy(x: f64) -> Result<Entropy> {
    if !(-DIST_NEG_TOL..=1.0 + DIST_NEG_TOL).contains(&x) {
        return Err(Error::NotADistribution(format!("binary probability {x}")));
    }
    let x = x.clamp(0.0, 1.0);
    Ok(entropy_unchecked(&[x, 1.0 - x]))
}

/// True iff `x` majorizes `y` (`y ≺ x`). Shorter vectors are padded with zeros.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    check_distribution(x)?;
    check_distribution(y)?;
    let n = x.len().max(y.len());
    let sorted = |v: &[f64]| {
        let mut s = v.to_vec();
        s.resize(n, 0.0);
        s.sort_by(|a, b| b.total_cmp(a));
        s
    };
    let (xs, ys) = (sorted(x), sorted(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx < sy - 1e-12 {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= STATE_TOL)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// `U ρ U†`.
pub fn conjugate(u: &CMatrix, rho: &CMatrix) -> CMatrix {
    u * rho * u.adjoint()
}

/// Real part of `tr(ρ H)`.
pub fn expectation(rho: &CMatrix, h: &CMatrix) -> f64 {
    (rho * h).trace().re
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix, non-increasing.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let sym = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    let mut ev: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| b.total_cmp(a));
    ev
}

/// A validated density operator of any dimension.
#[derive(Debug, Clone)]
pub struct State {
    mat: CMatrix,
    eigenvalues: Vec<f64>,
}

impl State {
    pub fn new(mat: CMatrix) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return Err(Error::NotAState(format!(
                "matrix is {}x{}, expected non-empty square",
                mat.nrows(),
                mat.ncols()
            )));
        }
        if mat.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotAState("non-finite entry".into()));
        }
        let herm = max_abs(&(&mat - mat.adjoint()));
        if herm > STATE_TOL {
            return Err(Error::NotAState(format!("not Hermitian (deviation {herm:.3e})")));
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::NotAState(format!("trace is {tr}")));
        }
        let mut ev = hermitian_eigenvalues(&mat);
        if let Some(&low) = ev.last() {
            if low < -STATE_TOL {
                return Err(Error::NotAState(format!("negative eigenvalue {low:.3e}")));
            }
        }
        for v in ev.iter_mut() {
            *v = v.clamp(0.0, 1.0);
        }
        let total: f64 = ev.iter().sum();
        if (total - 1.0).abs() < STATE_TOL {
            for v in ev.iter_mut() {
                *v /= total;
            }
        }
        // rescale only when the trace is off by more than rounding, so exact inputs stay exact
        let scale = if (tr.re - 1.0).abs() > 4.0 * f64::EPSILON { 0.5 / tr.re } else { 0.5 };
        let mat = (&mat + mat.adjoint()) * Complex64::new(scale, 0.0);
        Ok(State { mat, eigenvalues: ev })
    }

    pub fn from_diagonal(p: &[f64]) -> Result<Self> {
        let diag = nalgebra::DVector::from_iterator(p.len(), p.iter().map(|&x| Complex64::new(x, 0.0)));
        State::new(CMatrix::from_diagonal(&diag))
    }

    /// Pure state `|ψ><ψ|` from a (not necessarily normalized) vector.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let v = nalgebra::DVector::from_column_slice(psi);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::NotAState("zero vector".into()));
        }
        let v = v / Complex64::new(norm, 0.0);
        State::new(&v * v.adjoint())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// Cleaned eigenvalues, non-increasing.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn spectrum(&self) -> Spectrum {
        Spectrum::new(self.eigenvalues.clone()).expect("validated state has a valid spectrum")
    }

    pub fn entropy(&self) -> Entropy {
        entropy_unchecked(&self.eigenvalues)
    }

    /// Populations `<i|ρ|i>`.
    pub fn diagonal(&self) -> Vec<f64> {
        self.mat.diagonal().iter().map(|z| z.re).collect()
    }
}

/// A density matrix on `C^{d_a} ⊗ C^{d_b}`.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    state: State,
    dims: Dims,
}

impl DensityMatrix {
    pub fn new(mat: CMatrix, dims: Dims) -> Result<Self> {
        if mat.nrows() != dims.total() || mat.ncols() != dims.total() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for dims {dims}",
                mat.nrows(),
                mat.ncols()
            )));
        }
        Ok(DensityMatrix { state: State::new(mat)?, dims })
    }

    /// Classical state with populations `p` on the product basis.
    pub fn from_diagonal(p: &[f64], dims: Dims) -> Result<Self> {
        if p.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!("{} populations for dims {dims}", p.len())));
        }
        Ok(DensityMatrix { state: State::from_diagonal(p)?, dims })
    }

    pub fn pure(psi: &[Complex64], dims: Dims) -> Result<Self> {
        if psi.len() != dims.total() {
            return Err(Error::DimensionMismatch(format!("vector of length {} for dims {dims}", psi.len())));
        }
        Ok(DensityMatrix { state: State::pure(psi)?, dims })
    }

    pub fn product(a: &State, b: &State) -> Result<Self> {
        let dims = Dims::new(a.dim(), b.dim())?;
        DensityMatrix::new(kron(a.matrix(), b.matrix()), dims)
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn matrix(&self) -> &CMatrix {
        self.state.matrix()
    }

    pub fn state(&self) -> &State {
        &self.state
    }

    pub fn spectrum(&self) -> Spectrum {
        self.state.spectrum()
    }

    pub fn entropy(&self) -> Entropy {
        self.state.entropy()
    }

    /// `U ρ U†`, revalidated.
    pub fn evolve(&self, u: &CMatrix) -> Result<Self> {
        DensityMatrix::new(conjugate(u, self.matrix()), self.dims)
    }

    pub fn partial_trace(&self, keep: Subsystem) -> State {
        let m = partial_trace_matrix(self.matrix(), self.dims, keep);
        State::new(m).expect("partial trace of a valid state is a valid state")
    }

    pub fn marginals(&self) -> (State, State) {
        (self.partial_trace(Subsystem::A), self.partial_trace(Subsystem::B))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&DensityMatrixJson::from(self))?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: DensityMatrixJson = serde_json::from_str(s)?;
        raw.try_into()
    }
}

/// Wire format `{"d_a", "d_b", "re", "im"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DensityMatrixJson {
    pub d_a: usize,
    pub d_b: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl From<&DensityMatrix> for DensityMatrixJson {
    fn from(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let rows = |f: fn(&Complex64) -> f64| {
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| f(&m[(i, j)])).collect())
                .collect()
        };
        DensityMatrixJson {
            d_a: rho.dims.d_a,
            d_b: rho.dims.d_b,
            re: rows(|z| z.re),
            im: rows(|z| z.im),
        }
    }
}

impl TryFrom<DensityMatrixJson> for DensityMatrix {
    type Error = Error;

    fn try_from(raw: DensityMatrixJson) -> Result<Self> {
        let dims = Dims::new(raw.d_a, raw.d_b)?;
        let n = dims.total();
        let shape_ok = |rows: &Vec<Vec<f64>>| rows.len() == n && rows.iter().all(|r| r.len() == n);
        if !shape_ok(&raw.re) || !shape_ok(&raw.im) {
            return Err(Error::DimensionMismatch(format!("re/im must both be {n}x{n} for dims {dims}")));
        }
        let m = CMatrix::from_fn(n, n, |i, j| Complex64::new(raw.re[i][j], raw.im[i][j]));
        DensityMatrix::new(m, dims)
    }
}

impl Serialize for DensityMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DensityMatrixJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DensityMatrixJson::deserialize(d)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

/// Raw partial trace on an unvalidated matrix.
pub fn partial_trace_matrix(m: &CMatrix, dims: Dims, keep: Subsystem) -> CMatrix {
    let Dims { d_a, d_b } = dims;
    match keep {
        Subsystem::A => CMatrix::from_fn(d_a, d_a, |j, jp| {
            (0..d_b).map(|k| m[(dims.index(j, k), dims.index(jp, k))]).sum()
        }),
        Subsystem::B => CMatrix::from_fn(d_b, d_b, |k, kp| {
            (0..d_a).map(|j| m[(dims.index(j, k), dims.index(j, kp))]).sum()
        }),
    }
}

pub fn spectrum_of(rho: &DensityMatrix) -> Spectrum {
    rho.spectrum()
}

pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> State {
    rho.partial_trace(keep)
}

pub fn von_neumann_entropy(rho: &State) -> Entropy {
    rho.entropy()
}

/// `S(ρ_A) + S(ρ_B) - S(ρ)`, clipped at zero.
pub fn mutual_information(rho: &DensityMatrix) -> Entropy {
    let (a, b) = rho.marginals();
    let i = a.entropy().bits() + b.entropy().bits() - rho.entropy().bits();
    Entropy(i.max(0.0))
}

/// Mutual information of an unvalidated Hermitian matrix; used in inner loops
/// where the input is known to be a state up to rounding.
pub(crate) fn mutual_information_raw(m: &CMatrix, dims: Dims) -> f64 {
    let s = |mat: &CMatrix| {
        let ev: Vec<f64> = hermitian_eigenvalues(mat).into_iter().map(|x| x.max(0.0)).collect();
        entropy_unchecked(&ev).bits()
    };
    let a = partial_trace_matrix(m, dims, Subsystem::A);
    let b = partial_trace_matrix(m, dims, Subsystem::B);
    (s(&a) + s(&b) - s(m)).max(0.0)
}

/// Haar-random `n x n` unitary (QR of a complex Ginibre matrix with the
/// phases of `R`'s diagonal folded back into `Q`).
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    assert!(n >= 1, "unitary dimension must be positive");
    let z = CMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    });
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn haar_unitary_seeded(n: usize, seed: u64) -> CMatrix {
    haar_unitary(n, &mut seeded_rng(seed))
}

/// The crate's reproducible RNG.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `max |U U† - I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    max_abs(&(u * u.adjoint() - identity(u.nrows())))
}
