//! CSV and metadata serialization. Numeric columns use Rust's shortest
//! round-trip float formatting, so files reload to the exact bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::forward::SolutionField;
use crate::function::{PhysicalFunction, SpectralFunction};
use crate::inverse::StabilityRow;
use crate::params::ProblemParams;

/// A function CSV as stored on disk: header `# kind,alpha,n`, then one
/// `coordinate,re,im` row per node.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionCsv {
    pub kind: String,
    pub alpha: f64,
    pub coordinates: Vec<f64>,
    pub values: Vec<Complex64>,
}

fn render_function(kind: &str, alpha: f64, coords: &[f64], values: &[Complex64]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {kind},{alpha},{}", coords.len());
    let _ = writeln!(out, "coordinate,re,im");
    for (x, v) in coords.iter().zip(values) {
        let _ = writeln!(out, "{x},{},{}", v.re, v.im);
    }
    out
}

pub fn write_physical_function(
    path: impl AsRef<Path>,
    alpha: f64,
    f: &PhysicalFunction,
) -> Result<()> {
    fs::write(
        path,
        render_function("physical", alpha, &f.grid.nodes, &f.values),
    )?;
    Ok(())
}

pub fn write_spectral_function(
    path: impl AsRef<Path>,
    alpha: f64,
    f: &SpectralFunction,
) -> Result<()> {
    fs::write(
        path,
        render_function("spectral", alpha, &f.grid.nodes, &f.values),
    )?;
    Ok(())
}

fn parse_f64(field: &str, context: &str) -> Result<f64> {
    field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{context}: not a number: {field:?}")))
}

pub fn read_function_csv(path: impl AsRef<Path>) -> Result<FunctionCsv> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("{}: empty file", path.display())))?;
    let header = header
        .strip_prefix('#')
        .ok_or_else(|| Error::Parse(format!("{}: missing `# kind,alpha,n` header", path.display())))?
        .trim();
    let parts: Vec<&str> = header.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!(
            "{}: header must be `# kind,alpha,n`, got {header:?}",
            path.display()
        )));
    }
    let kind = parts[0].trim().to_string();
    let alpha = parse_f64(parts[1], "header alpha")?;
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("header count: not an integer: {:?}", parts[2])))?;

    let mut coordinates = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for line in lines {
        let line = line.trim();
        if line.is_empty() || line == "coordinate,re,im" {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(Error::Parse(format!(
                "{}: expected `coordinate,re,im`, got {line:?}",
                path.display()
            )));
        }
        coordinates.push(parse_f64(cols[0], "coordinate")?);
        values.push(Complex64::new(
            parse_f64(cols[1], "re")?,
            parse_f64(cols[2], "im")?,
        ));
    }
    if coordinates.len() != n {
        return Err(Error::Parse(format!(
            "{}: header declares {n} rows, found {}",
            path.display(),
            coordinates.len()
        )));
    }
    Ok(FunctionCsv {
        kind,
        alpha,
        coordinates,
        values,
    })
}

pub fn write_grid_csv(path: impl AsRef<Path>, nodes: &[f64], weights: &[f64]) -> Result<()> {
    let mut out = String::from("node,weight\n");
    for (x, w) in nodes.iter().zip(weights) {
        let _ = writeln!(out, "{x},{w}");
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn write_solution_field(path: impl AsRef<Path>, field: &SolutionField) -> Result<()> {
    let mut out = String::from("t,x,re,im\n");
    let n = field.pgrid.len();
    for (i, &t) in field.tgrid.nodes.iter().enumerate() {
        for (j, &x) in field.pgrid.nodes.iter().enumerate() {
            let v = field.values[i * n + j];
            let _ = writeln!(out, "{t},{x},{},{}", v.re, v.im);
        }
    }
    fs::write(path, out)?;
    Ok(())
}

/// Companion metadata for a [`SolutionField`]: problem parameters and grid
/// descriptors, JSON-encoded.
pub fn write_field_metadata(
    path: impl AsRef<Path>,
    params: &ProblemParams,
    field: &SolutionField,
    diagnostics: Option<&serde_json::Value>,
) -> Result<()> {
    let pg = &field.pgrid;
    let meta = serde_json::json!({
        "params": params,
        "physical_grid": {
            "n": pg.len(),
            "extent": pg.nodes.last().copied().unwrap_or(0.0),
            "uniform_spacing": pg.spacing,
        },
        "time_grid": {
            "n": field.tgrid.len(),
            "dt": field.tgrid.dt,
            "final_time": field.tgrid.final_time(),
        },
        "diagnostics": diagnostics,
    });
    let text = serde_json::to_string_pretty(&meta)
        .map_err(|e| Error::Parse(format!("metadata serialization: {e}")))?;
    fs::write(path, text)?;
    Ok(())
}

pub fn write_stability_csv(path: impl AsRef<Path>, rows: &[StabilityRow]) -> Result<()> {
    let mut out = String::from("epsilon,psi_diff,f_diff,u_diff\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.epsilon, r.psi_diff, r.f_diff, r.u_diff);
    }
    fs::write(path, out)?;
    Ok(())
}
