//! Sampled complex-valued functions on physical and spectral grids.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{PhysicalGrid, SpectralGrid};

/// Complex samples `f(x_j)` on a physical grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalFunction {
    pub grid: PhysicalGrid,
    pub values: Vec<Complex64>,
}

/// Complex samples `fhat(lambda_k)` on a spectral grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFunction {
    pub grid: SpectralGrid,
    pub values: Vec<Complex64>,
    /// Set when the input of a transform did not decay at the grid ends.
    pub truncation_warning: bool,
}

impl PhysicalFunction {
    pub fn new(grid: PhysicalGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.nodes.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} nodes, values has {}",
                grid.nodes.len(),
                values.len()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: &PhysicalGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes.iter().map(|&x| f(x)).collect();
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn from_real_fn(grid: &PhysicalGrid, f: impl Fn(f64) -> f64) -> Self {
        Self::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    pub fn zero(grid: &PhysicalGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![Complex64::default(); grid.nodes.len()],
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// True when the samples at both extreme nodes are below
    /// `tol * max |f|`, the transform truncation check.
    pub fn decays_at_ends(&self, tol: f64) -> bool {
        let peak = self.max_abs();
        if peak == 0.0 {
            return true;
        }
        let first = self.values.first().map_or(0.0, |v| v.norm());
        let last = self.values.last().map_or(0.0, |v| v.norm());
        first <= tol * peak && last <= tol * peak
    }
}

impl SpectralFunction {
    pub fn new(grid: SpectralGrid, values: Vec<Complex64>) -> Result<Self> {
        if grid.nodes.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "grid has {} nodes, values has {}",
                grid.nodes.len(),
                values.len()
            )));
        }
        Ok(Self {
            grid,
            values,
            truncation_warning: false,
        })
    }

    pub fn from_fn(grid: &SpectralGrid, f: impl Fn(f64) -> Complex64) -> Self {
        let values = grid.nodes.iter().map(|&l| f(l)).collect();
        Self {
            grid: grid.clone(),
            values,
            truncation_warning: false,
        }
    }

    pub fn zero(grid: &SpectralGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![Complex64::default(); grid.nodes.len()],
            truncation_warning: false,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn decays_at_ends(&self, tol: f64) -> bool {
        let peak = self.max_abs();
        if peak == 0.0 {
            return true;
        }
        let first = self.values.first().map_or(0.0, |v| v.norm());
        let last = self.values.last().map_or(0.0, |v| v.norm());
        first <= tol * peak && last <= tol * peak
    }

    /// Largest deviation from Hermitian symmetry `fhat(-l) = conj(fhat(l))`,
    /// meaningful for transforms of real-valued data.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.values.len();
        (0..n)
            .map(|i| (self.values[i] - self.values[n - 1 - i].conj()).norm())
            .fold(0.0, f64::max)
    }
}
