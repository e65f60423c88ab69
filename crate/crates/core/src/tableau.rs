//! Rectangular standard Young tableaux used as candidate eigenvalue
//! placements for minimally correlated classical states.
//!
//! A tableau assigns the 1-based spectrum indices `1..=d_a*d_b` to a
//! `d_a x d_b` grid; row `j`, column `k` holds the index of the eigenvalue
//! placed on `|e_j> ⊗ |f_k>`.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{Dims, Entropy, Spectrum};

/// Largest composite dimension for which tableaux are enumerated.
pub const MAX_ENUMERATION: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Tableau {
    grid: Vec<Vec<usize>>,
    #[serde(skip)]
    dims: Dims,
}

impl Tableau {
    /// Validates that `grid` is a standard Young tableau of its rectangle.
    pub fn new(grid: Vec<Vec<usize>>, dims: Dims) -> Result<Self> {
        check_permutation_grid(&grid, dims)?;
        for j in 0..dims.d_a {
            for k in 0..dims.d_b {
                let v = grid[j][k];
                if (k + 1 < dims.d_b && grid[j][k + 1] <= v) || (j + 1 < dims.d_a && grid[j + 1][k] <= v) {
                    return Err(Error::IndexMismatch(format!(
                        "entry {v} at ({j}, {k}) breaks row/column increase"
                    )));
                }
            }
        }
        Ok(Tableau { grid, dims })
    }

    pub fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn transpose(&self) -> Tableau {
        let grid = (0..self.dims.d_b)
            .map(|k| (0..self.dims.d_a).map(|j| self.grid[j][k]).collect())
            .collect();
        Tableau { grid, dims: Dims { d_a: self.dims.d_b, d_b: self.dims.d_a } }
    }

    fn flat(&self) -> impl Iterator<Item = usize> + '_ {
        self.grid.iter().flatten().copied()
    }
}

impl PartialOrd for Tableau {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the row-major flattening.
impl Ord for Tableau {
    fn cmp(&self, other: &Self) -> Ordering {
        self.flat().cmp(other.flat())
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .grid
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Checks that `grid` has the shape of `dims` and uses each of `1..=N` once.
pub fn check_permutation_grid(grid: &[Vec<usize>], dims: Dims) -> Result<()> {
    if grid.len() != dims.d_a || grid.iter().any(|r| r.len() != dims.d_b) {
        return Err(Error::IndexMismatch(format!("grid shape does not match dims {dims}")));
    }
    let n = dims.total();
    let mut seen = vec![false; n];
    for &v in grid.iter().flatten() {
        if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
            return Err(Error::IndexMismatch(format!("index {v} is out of range or repeated")));
        }
    }
    Ok(())
}

/// All standard Young tableaux of the `d_a x d_b` rectangle, sorted
/// lexicographically. For square shapes only the smaller member of each
/// transpose pair is kept, since transposition swaps A and B and leaves the
/// mutual information unchanged.
pub fn enumerate_tableaux(dims: Dims) -> Result<Vec<Tableau>> {
    let n = dims.total();
    if n > MAX_ENUMERATION {
        return Err(Error::TooLarge(format!(
            "{dims} has {n} cells; enumeration is capped at {MAX_ENUMERATION}"
        )));
    }
    let mut out = Vec::new();
    let mut grid = vec![vec![0usize; dims.d_b]; dims.d_a];
    let mut row_len = vec![0usize; dims.d_a];
    fill(1, n, dims, &mut grid, &mut row_len, &mut out);

    if dims.d_a == dims.d_b {
        out.retain(|t| *t < t.transpose());
    }
    out.sort();
    Ok(out)
}

fn fill(
    next: usize,
    n: usize,
    dims: Dims,
    grid: &mut [Vec<usize>],
    row_len: &mut [usize],
    out: &mut Vec<Tableau>,
) {
    if next > n {
        out.push(Tableau { grid: grid.to_vec(), dims });
        return;
    }
    for r in 0..dims.d_a {
        let len = row_len[r];
        if len < dims.d_b && (r == 0 || row_len[r - 1] > len) {
            grid[r][len] = next;
            row_len[r] += 1;
            fill(next + 1, n, dims, grid, row_len, out);
            row_len[r] -= 1;
        }
    }
}

/// Number of standard Young tableaux of the rectangle by the hook-length formula.
pub fn hook_length_count(dims: Dims) -> u128 {
    let n = dims.total() as u128;
    let mut num: u128 = (1..=n).product();
    for j in 0..dims.d_a {
        for k in 0..dims.d_b {
            num /= ((dims.d_b - k) + (dims.d_a - j) - 1) as u128;
        }
    }
    num
}

/// Marginal distributions `(row sums, column sums)` of the classical state
/// that places `λ_{grid[j][k]}` on `|j>|k>`.
///
/// Each row (column) is summed in ascending index order and the resulting
/// marginal is sorted non-increasing, so arrangements that differ by row or
/// column permutations yield bitwise identical marginals.
pub fn arrangement_marginals(grid: &[Vec<usize>], spectrum: &Spectrum) -> (Vec<f64>, Vec<f64>) {
    let d_a = grid.len();
    let d_b = grid.first().map_or(0, Vec::len);
    let line_sum = |mut idx: Vec<usize>| {
        idx.sort_unstable();
        idx.into_iter().map(|i| spectrum.lambda(i)).sum::<f64>()
    };
    let mut rows: Vec<f64> = grid.iter().map(|r| line_sum(r.clone())).collect();
    let mut cols: Vec<f64> = (0..d_b)
        .map(|k| line_sum((0..d_a).map(|j| grid[j][k]).collect()))
        .collect();
    rows.sort_by(|a, b| b.total_cmp(a));
    cols.sort_by(|a, b| b.total_cmp(a));
    (rows, cols)
}

/// `H(row sums) + H(column sums) - H(Λ)` for an arbitrary permutation grid.
pub fn arrangement_qmi(grid: &[Vec<usize>], spectrum: &Spectrum, dims: Dims) -> Result<Entropy> {
    check_permutation_grid(grid, dims)?;
    spectrum.check_dims(dims).map_err(|_| {
        Error::IndexMismatch(format!("spectrum of length {} for a {dims} grid", spectrum.len()))
    })?;
    let (rows, cols) = arrangement_marginals(grid, spectrum);
    let h = |p: &[f64]| -> f64 { p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum() };
    let i = h(&rows) + h(&cols) - spectrum.shannon().bits();
    Ok(Entropy::from_bits(i.max(0.0)))
}

pub fn classical_state_qmi(t: &Tableau, spectrum: &Spectrum) -> Result<Entropy> {
    arrangement_qmi(&t.grid, spectrum, t.dims)
}
