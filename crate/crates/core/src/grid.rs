//! Sample grids: symmetric physical grids, weighted spectral quadrature
//! grids, and uniform time grids.
//!
//! Quadrature grids are composite Gauss-Legendre panels on each half-axis
//! with the weight `|x|^{2a+1} / (2^{a+1} Gamma(a+1))` of the measure folded
//! directly into the quadrature weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::gamma_fn;

/// Density of the weighted measure, `|x|^{2a+1} / (2^{a+1} Gamma(a+1))`.
pub fn measure_weight(alpha: f64, x: f64) -> f64 {
    debug_assert!(alpha >= -0.5);
    let p = 2.0 * alpha + 1.0;
    let norm = 2.0f64.powf(alpha + 1.0) * gamma_fn(alpha + 1.0).expect("alpha + 1 > 0");
    if x == 0.0 {
        return if p > 0.0 { 0.0 } else { 1.0 / norm };
    }
    x.abs().powf(p) / norm
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn half_axis_panels(extent: f64, n_per_half: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    // panels of <= 16 nodes keep the per-panel polynomial degree moderate
    let panel_count = n_per_half.div_ceil(16);
    let base = n_per_half / panel_count;
    let extra = n_per_half % panel_count;
    let width = extent / panel_count as f64;
    let mut out = Vec::with_capacity(panel_count);
    for p in 0..panel_count {
        let np = base + usize::from(p < extra);
        let (xs, ws) = gauss_legendre(np);
        let lo = p as f64 * width;
        let nodes: Vec<f64> = xs.iter().map(|&t| lo + 0.5 * width * (t + 1.0)).collect();
        let weights: Vec<f64> = ws.iter().map(|&w| 0.5 * width * w).collect();
        out.push((nodes, weights));
    }
    out
}

fn symmetric_weighted_grid(alpha: f64, extent: f64, n_per_half: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(2 * n_per_half);
    let mut weights = Vec::with_capacity(2 * n_per_half);
    let panels = half_axis_panels(extent, n_per_half);
    // negative half first, mirrored in descending panel order
    for (xs, ws) in panels.iter().rev() {
        for (x, w) in xs.iter().rev().zip(ws.iter().rev()) {
            nodes.push(-x);
            weights.push(w * measure_weight(alpha, *x));
        }
    }
    for (xs, ws) in &panels {
        for (x, w) in xs.iter().zip(ws) {
            nodes.push(*x);
            weights.push(w * measure_weight(alpha, *x));
        }
    }
    (nodes, weights)
}

/// Symmetric grid of x-samples, optionally carrying quadrature weights of
/// the weighted measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhysicalGrid {
    pub nodes: Vec<f64>,
    /// Quadrature weights with the measure density folded in.
    pub weights: Vec<f64>,
    /// Uniform spacing if the grid is equispaced, otherwise `None`.
    pub spacing: Option<f64>,
}

impl PhysicalGrid {
    /// Composite Gauss-Legendre grid on `[-extent, extent]` for transforms
    /// and norms; `n_per_half` nodes per half-axis.
    pub fn gauss_legendre(alpha: f64, extent: f64, n_per_half: usize) -> Result<Self> {
        validate_grid_request(extent, n_per_half)?;
        let (nodes, weights) = symmetric_weighted_grid(alpha, extent, n_per_half);
        Ok(Self {
            nodes,
            weights,
            spacing: None,
        })
    }

    /// Uniform symmetric grid with `n` nodes for finite-difference operator
    /// evaluation. Trapezoidal quadrature weights carry the measure density.
    pub fn uniform(alpha: f64, extent: f64, n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidParameter(
                "uniform grid needs at least 5 nodes".into(),
            ));
        }
        if !(extent > 0.0) {
            return Err(Error::InvalidParameter("extent must be positive".into()));
        }
        let h = 2.0 * extent / (n - 1) as f64;
        let nodes: Vec<f64> = (0..n).map(|i| -extent + i as f64 * h).collect();
        let weights: Vec<f64> = (0..n)
            .map(|i| {
                let trap = if i == 0 || i == n - 1 { 0.5 * h } else { h };
                trap * measure_weight(alpha, nodes[i])
            })
            .collect();
        Ok(Self {
            nodes,
            weights,
            spacing: Some(h),
        })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Checks that negating and reversing the node list reproduces it.
    pub fn is_symmetric(&self) -> bool {
        let n = self.nodes.len();
        (0..n).all(|i| {
            let mirrored = -self.nodes[n - 1 - i];
            (self.nodes[i] - mirrored).abs() <= 1e-12 * self.nodes[i].abs().max(1.0)
        })
    }

    /// Index of the node `-x_i`, valid on symmetric grids.
    pub fn reflect_index(&self, i: usize) -> usize {
        self.nodes.len() - 1 - i
    }
}

/// Spectral quadrature grid on `[-lambda_max, lambda_max]` with weights of
/// the weighted measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralGrid {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl SpectralGrid {
    pub fn gauss_legendre(alpha: f64, lambda_max: f64, n_per_half: usize) -> Result<Self> {
        validate_grid_request(lambda_max, n_per_half)?;
        let (nodes, weights) = symmetric_weighted_grid(alpha, lambda_max, n_per_half);
        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn lambda_max(&self) -> f64 {
        self.nodes.last().copied().unwrap_or(0.0).abs()
    }
}

fn validate_grid_request(extent: f64, n_per_half: usize) -> Result<()> {
    if !(extent > 0.0) {
        return Err(Error::InvalidParameter("extent must be positive".into()));
    }
    if n_per_half < 8 {
        return Err(Error::InvalidParameter(
            "at least 8 quadrature nodes per half-axis required".into(),
        ));
    }
    Ok(())
}

/// Uniform time grid `0 = t_0 < t_1 < ... < t_N = T`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub nodes: Vec<f64>,
    pub dt: f64,
}

impl TimeGrid {
    /// `n_steps` uniform steps on `[0, final_time]`, so `n_steps + 1` nodes.
    pub fn uniform(final_time: f64, n_steps: usize) -> Result<Self> {
        if !(final_time > 0.0) {
            return Err(Error::DegenerateHorizon(final_time));
        }
        if n_steps < 2 {
            return Err(Error::InvalidParameter(
                "time grid needs at least 2 steps".into(),
            ));
        }
        let dt = final_time / n_steps as f64;
        let mut nodes: Vec<f64> = (0..=n_steps).map(|i| i as f64 * dt).collect();
        *nodes.last_mut().unwrap() = final_time; // exact endpoint
        Ok(Self { nodes, dt })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn final_time(&self) -> f64 {
        *self.nodes.last().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn gl_integrates_polynomials_exactly() {
        let (x, w) = gauss_legendre(5);
        // degree-9 polynomial: x^8 integrates to 2/9
        let s: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(8)).sum();
        assert_relative_eq!(s, 2.0 / 9.0, max_relative = 1e-14);
        let s1: f64 = w.iter().sum();
        assert_relative_eq!(s1, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn measure_weight_values() {
        // alpha = -1/2: constant 1/sqrt(2 pi)
        assert_relative_eq!(
            measure_weight(-0.5, 3.0),
            1.0 / (2.0 * std::f64::consts::PI).sqrt(),
            max_relative = 1e-13
        );
        assert_eq!(measure_weight(0.0, 0.0), 0.0);
        // alpha = 0: |x|/2 -> 1 at x = 2
        assert_relative_eq!(measure_weight(0.0, 2.0), 1.0, max_relative = 1e-13);
    }

    #[test]
    fn weighted_grid_integrates_gaussian() {
        // int e^{-x^2} dmu_{-1/2} = sqrt(pi)/sqrt(2 pi) = 1/sqrt(2)
        let g = PhysicalGrid::gauss_legendre(-0.5, 12.0, 96).unwrap();
        let s: f64 = g
            .nodes
            .iter()
            .zip(&g.weights)
            .map(|(x, w)| w * (-x * x).exp())
            .sum();
        assert_relative_eq!(s, 1.0 / 2.0f64.sqrt(), max_relative = 1e-12);
        // alpha = 0: int e^{-x^2} |x|/2 dx = 1/2
        let g = PhysicalGrid::gauss_legendre(0.0, 12.0, 96).unwrap();
        let s: f64 = g
            .nodes
            .iter()
            .zip(&g.weights)
            .map(|(x, w)| w * (-x * x).exp())
            .sum();
        assert_relative_eq!(s, 0.5, max_relative = 1e-10);
    }

    #[test]
    fn grids_are_symmetric() {
        let g = PhysicalGrid::gauss_legendre(0.3, 10.0, 48).unwrap();
        assert!(g.is_symmetric());
        assert_eq!(g.len(), 96);
        let u = PhysicalGrid::uniform(0.0, 5.0, 101).unwrap();
        assert!(u.is_symmetric());
        assert_abs_diff_eq!(u.nodes[50], 0.0, epsilon = 1e-12);
    }

    #[test]
    fn time_grid_endpoints() {
        let t = TimeGrid::uniform(2.0, 128).unwrap();
        assert_eq!(t.nodes[0], 0.0);
        assert_eq!(t.final_time(), 2.0);
        assert_eq!(t.len(), 129);
    }

    #[test]
    fn rejects_tiny_grids() {
        assert!(PhysicalGrid::gauss_legendre(0.0, 12.0, 4).is_err());
        assert!(TimeGrid::uniform(1.0, 1).is_err());
        assert!(SpectralGrid::gauss_legendre(0.0, -1.0, 32).is_err());
    }
}
