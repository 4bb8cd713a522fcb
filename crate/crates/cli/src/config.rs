//! Flat dotted-key config files: one `key = value` per line, `#` comments.
//!
//! Recognized keys (all optional, with defaults):
//!
//! ```text
//! params.alpha        = -0.5      # reflection parameter, >= -1/2
//! params.a            = 1         # pseudo-parabolic coefficient, > 0
//! params.m            = 1         # zeroth-order coefficient, > 0
//! params.gamma        = 1         # fractional order in (0, 1]
//! params.final_time   = 1         # horizon T > 0
//! grid.physical.extent = 12       # physical half-axis extent L
//! grid.physical.n      = 96       # quadrature nodes per half-axis
//! grid.spectral.extent = 12       # spectral cutoff (the regularization
//!                                 # parameter of the inverse problem)
//! grid.spectral.n      = 96       # quadrature nodes per half-axis
//! grid.time.n          = 64       # time steps (grid has n+1 nodes)
//! data.g    = gaussian(1,0,1)     # forward: initial data (default zero)
//! data.f    = zero                # forward: source profile (t-independent)
//! data.phi  = zero                # inverse: initial data
//! data.psi  = gaussian(1,0,1)     # inverse: final data (default zero)
//! data.input = gaussian(1,0,1)    # transform: input (default zero)
//! output.dir = out                # output directory
//! ```
//!
//! Data values are `zero`, `gaussian(sigma,center,amplitude)` meaning
//! `amplitude * exp(-((x-center)/sigma)^2)`, or a path to a function CSV
//! whose coordinates must match the configured grid.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use dunkl_spectral::{
    io::read_function_csv, Error, PhysicalFunction, PhysicalGrid, ProblemParams, Result,
    SpectralGrid, TimeGrid,
};

#[derive(Debug, Clone, PartialEq)]
pub enum DataSpec {
    Zero,
    Gaussian {
        sigma: f64,
        center: f64,
        amplitude: f64,
    },
    Csv(PathBuf),
}

impl DataSpec {
    fn parse(value: &str) -> Result<Self> {
        let v = value.trim();
        if v == "zero" {
            return Ok(DataSpec::Zero);
        }
        if let Some(rest) = v.strip_prefix("gaussian(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed gaussian(...): {v:?}")))?;
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!(
                    "gaussian takes (sigma,center,amplitude), got {v:?}"
                )));
            }
            let num = |s: &str| -> Result<f64> {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("not a number in {v:?}: {s:?}")))
            };
            let sigma = num(parts[0])?;
            if sigma <= 0.0 {
                return Err(Error::Parse(format!("gaussian sigma must be > 0, got {sigma}")));
            }
            return Ok(DataSpec::Gaussian {
                sigma,
                center: num(parts[1])?,
                amplitude: num(parts[2])?,
            });
        }
        if v.ends_with(".csv") {
            return Ok(DataSpec::Csv(PathBuf::from(v)));
        }
        Err(Error::Parse(format!(
            "data spec must be `zero`, `gaussian(sigma,center,amplitude)`, or a .csv path, got {v:?}"
        )))
    }

    /// Samples the spec on a physical grid.
    pub fn realize(&self, grid: &PhysicalGrid) -> Result<PhysicalFunction> {
        match self {
            DataSpec::Zero => Ok(PhysicalFunction::zero(grid)),
            DataSpec::Gaussian {
                sigma,
                center,
                amplitude,
            } => Ok(PhysicalFunction::from_real_fn(grid, |x| {
                let u = (x - center) / sigma;
                amplitude * (-u * u).exp()
            })),
            DataSpec::Csv(path) => {
                let csv = read_function_csv(path)?;
                if csv.coordinates.len() != grid.len() {
                    return Err(Error::Parse(format!(
                        "{}: {} rows, configured grid has {} nodes",
                        path.display(),
                        csv.coordinates.len(),
                        grid.len()
                    )));
                }
                for (a, b) in csv.coordinates.iter().zip(&grid.nodes) {
                    if (a - b).abs() > 1e-9 * (1.0 + b.abs()) {
                        return Err(Error::Parse(format!(
                            "{}: coordinates do not match the configured grid",
                            path.display()
                        )));
                    }
                }
                PhysicalFunction::new(grid.clone(), csv.values)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub params: ProblemParams,
    pub physical_extent: f64,
    pub physical_n: usize,
    pub spectral_extent: f64,
    pub spectral_n: usize,
    pub time_n: usize,
    pub data: HashMap<String, DataSpec>,
    pub output_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: ProblemParams::new(-0.5, 1.0, 1.0, 1.0, 1.0).expect("valid defaults"),
            physical_extent: 12.0,
            physical_n: 96,
            spectral_extent: 12.0,
            spectral_n: 96,
            time_n: 64,
            data: HashMap::new(),
            output_dir: PathBuf::from("out"),
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_str(&text)
    }

    pub fn from_str(text: &str) -> Result<Self> {
        let mut alpha = -0.5;
        let mut a = 1.0;
        let mut m = 1.0;
        let mut gamma = 1.0;
        let mut final_time = 1.0;
        let mut cfg = Self::default();

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            let num = |v: &str| -> Result<f64> {
                v.parse()
                    .map_err(|_| Error::Parse(format!("line {}: not a number: {v:?}", lineno + 1)))
            };
            let count = |v: &str| -> Result<usize> {
                let n: usize = v.parse().map_err(|_| {
                    Error::Parse(format!("line {}: not a count: {v:?}", lineno + 1))
                })?;
                if n < 8 {
                    return Err(Error::Parse(format!(
                        "line {}: counts must be >= 8, got {n}",
                        lineno + 1
                    )));
                }
                Ok(n)
            };
            match key {
                "params.alpha" => alpha = num(value)?,
                "params.a" => a = num(value)?,
                "params.m" => m = num(value)?,
                "params.gamma" => gamma = num(value)?,
                "params.final_time" => final_time = num(value)?,
                "grid.physical.extent" => cfg.physical_extent = num(value)?,
                "grid.physical.n" => cfg.physical_n = count(value)?,
                "grid.spectral.extent" => cfg.spectral_extent = num(value)?,
                "grid.spectral.n" => cfg.spectral_n = count(value)?,
                "grid.time.n" => cfg.time_n = count(value)?,
                "output.dir" => cfg.output_dir = PathBuf::from(value),
                _ if key.starts_with("data.") => {
                    cfg.data
                        .insert(key["data.".len()..].to_string(), DataSpec::parse(value)?);
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {key:?}",
                        lineno + 1
                    )))
                }
            }
        }
        if cfg.physical_extent <= 0.0 || cfg.spectral_extent <= 0.0 {
            return Err(Error::Parse("grid extents must be positive".into()));
        }
        cfg.params = ProblemParams::new(alpha, a, m, gamma, final_time)?;
        Ok(cfg)
    }

    pub fn physical_grid(&self) -> Result<PhysicalGrid> {
        PhysicalGrid::gauss_legendre(self.params.alpha, self.physical_extent, self.physical_n)
    }

    pub fn spectral_grid(&self) -> Result<SpectralGrid> {
        SpectralGrid::gauss_legendre(self.params.alpha, self.spectral_extent, self.spectral_n)
    }

    pub fn time_grid(&self) -> Result<TimeGrid> {
        TimeGrid::uniform(self.params.final_time, self.time_n)
    }

    pub fn data_spec(&self, name: &str) -> DataSpec {
        self.data.get(name).cloned().unwrap_or(DataSpec::Zero)
    }
}
