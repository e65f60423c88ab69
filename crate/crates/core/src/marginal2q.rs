//! The set of two-qubit marginal spectra compatible with a fixed joint
//! spectrum, optionally sliced by an energy constraint.
//!
//! A marginal pair is located by the smaller eigenvalue of each reduced
//! state, `(λ_A, λ_B) ∈ [0, 1/2]²`. The local Hamiltonians are
//! `H_A = H_B = |1><1|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt::sig;
use crate::qcore::{DensityMatrix, Spectrum};

/// Slack on each inequality.
pub const REGION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginalPoint {
    pub lambda_a: f64,
    pub lambda_b: f64,
}

impl MarginalPoint {
    pub fn new(lambda_a: f64, lambda_b: f64) -> Self {
        MarginalPoint { lambda_a, lambda_b }
    }

    /// Smaller local eigenvalues of a two-qubit state.
    pub fn of_state(rho: &DensityMatrix) -> Option<Self> {
        let d = rho.dims();
        if d.d_a != 2 || d.d_b != 2 {
            return None;
        }
        let (a, b) = rho.marginals();
        Some(MarginalPoint::new(a.eigenvalues()[1], b.eigenvalues()[1]))
    }

    /// Smaller entries of two binary marginal distributions.
    pub fn from_marginals(p_a: &[f64], p_b: &[f64]) -> Self {
        let lo = |p: &[f64]| p.iter().copied().fold(f64::INFINITY, f64::min);
        MarginalPoint::new(lo(p_a), lo(p_b))
    }

    /// `[λ_B, λ_A]`: the (x, y) plotting order.
    pub fn xy(&self) -> [f64; 2] {
        [self.lambda_b, self.lambda_a]
    }
}

/// The region R of reachable marginal pairs, or its energy slice R_E.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalRegion {
    spectrum: Spectrum,
    energy: Option<f64>,
}

impl MarginalRegion {
    pub fn new(spectrum: Spectrum, energy: Option<f64>) -> Result<Self> {
        if spectrum.len() != 4 {
            return Err(Error::WrongDimension { expected: 4, got: spectrum.len() });
        }
        if let Some(e) = energy {
            if !(0.0..=2.0).contains(&e) {
                return Err(Error::EnergyOutOfRange(e));
            }
        }
        Ok(MarginalRegion { spectrum, energy })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn energy(&self) -> Option<f64> {
        self.energy
    }

    pub fn without_energy(&self) -> MarginalRegion {
        MarginalRegion { spectrum: self.spectrum.clone(), energy: None }
    }

    fn l(&self) -> [f64; 4] {
        let v = self.spectrum.values();
        [v[0], v[1], v[2], v[3]]
    }

    pub fn contains(&self, p: &MarginalPoint) -> bool {
        let [l1, l2, l3, l4] = self.l();
        let (a, b) = (p.lambda_a, p.lambda_b);
        let t = REGION_TOL;
        let in_box = (-t..=0.5 + t).contains(&a) && (-t..=0.5 + t).contains(&b);
        let bravyi = a >= l3 + l4 - t
            && b >= l3 + l4 - t
            && a + b >= l2 + l3 + 2.0 * l4 - t
            && (a - b).abs() <= (l1 - l3).min(l2 - l4) + t;
        let energy_ok = match self.energy {
            Some(e) => a + b <= e.min(2.0 - e) + t,
            None => true,
        };
        in_box && bravyi && energy_ok
    }

    /// `(ρ_min, ρ_max)` locations, ignoring any energy constraint.
    pub fn extremal_points(&self) -> (MarginalPoint, MarginalPoint) {
        let [l1, l2, l3, l4] = self.l();
        let min = MarginalPoint::new((l1 + l2).min(l3 + l4), (l1 + l3).min(l2 + l4));
        (min, MarginalPoint::new(0.5, 0.5))
    }

    /// The point q of largest local entropies inside R_E.
    pub fn energy_max_point(&self) -> Result<MarginalPoint> {
        let e = self
            .energy
            .ok_or_else(|| Error::InvalidMode("region has no energy constraint".into()))?;
        let [_, l2, l3, l4] = self.l();
        let cap = e.min(2.0 - e);
        if l2 + l3 + 2.0 * l4 > cap + REGION_TOL {
            return Err(Error::InfeasibleEnergy(e));
        }
        let m = cap / 2.0;
        Ok(MarginalPoint::new(m, m))
    }

    pub fn markers(&self) -> Markers {
        let (min, max) = self.extremal_points();
        Markers { min: min.xy(), max: max.xy(), q: self.energy_max_point().ok().map(|q| q.xy()) }
    }

    /// Membership on an `n x n` lattice over `[0, 1/2]²` including both
    /// endpoints, so the corner `(1/2, 1/2)` and the diagonal are sampled exactly.
    pub fn rasterize(&self, grid_n: usize) -> Result<Raster> {
        if grid_n < 2 {
            return Err(Error::InvalidMode(format!("grid size {grid_n} must be at least 2")));
        }
        let axis: Vec<f64> = (0..grid_n).map(|i| 0.5 * i as f64 / (grid_n - 1) as f64).collect();
        let inside = axis
            .iter()
            .map(|&a| axis.iter().map(|&b| self.contains(&MarginalPoint::new(a, b))).collect())
            .collect();
        Ok(Raster { axis, inside, markers: self.markers() })
    }
}

pub fn contains(r: &MarginalRegion, p: &MarginalPoint) -> bool {
    r.contains(p)
}

pub fn extremal_points(r: &MarginalRegion) -> (MarginalPoint, MarginalPoint) {
    r.extremal_points()
}

pub fn energy_max_point(r: &MarginalRegion) -> Result<MarginalPoint> {
    r.energy_max_point()
}

pub fn rasterize(r: &MarginalRegion, grid_n: usize) -> Result<Raster> {
    r.rasterize(grid_n)
}

/// Marker coordinates as `[λ_B, λ_A]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Markers {
    pub min: [f64; 2],
    pub max: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<[f64; 2]>,
}

#[derive(Debug, Clone)]
pub struct Raster {
    /// Shared lattice coordinates for both axes.
    pub axis: Vec<f64>,
    /// `inside[i][j]` is membership of `(λ_A, λ_B) = (axis[i], axis[j])`.
    pub inside: Vec<Vec<bool>>,
    pub markers: Markers,
}

impl Raster {
    pub fn grid_n(&self) -> usize {
        self.axis.len()
    }

    pub fn cell(&self, i_a: usize, j_b: usize) -> (MarginalPoint, bool) {
        (MarginalPoint::new(self.axis[i_a], self.axis[j_b]), self.inside[i_a][j_b])
    }

    pub fn inside_points(&self) -> impl Iterator<Item = MarginalPoint> + '_ {
        self.inside.iter().enumerate().flat_map(move |(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &v)| v)
                .map(move |(j, _)| MarginalPoint::new(self.axis[i], self.axis[j]))
        })
    }

    /// CSV with header `lambda_b,lambda_a,inside`, six significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda_b,lambda_a,inside\n");
        for (i, row) in self.inside.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", sig(self.axis[j], 6), sig(self.axis[i], 6), v as u8));
            }
        }
        out
    }
}
