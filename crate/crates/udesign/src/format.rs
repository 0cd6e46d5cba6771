// SPDX-License-Identifier: Apache-2.0

//! File formats: design JSON, search logs and number formatting.
//!
//! A design file looks like
//!
//! ```json
//! {"dim":2,"certified_t":2,"elements":[{"weight":0.5,"matrix":[[[1,0],[0,0]],[[0,0],[1,0]]]}, ...]}
//! ```
//!
//! with each matrix given row by row as `[re, im]` pairs. Floats are written
//! with 17 significant digits so that files round-trip exactly.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use udesign_core::designs::WeightedUnitarySet;
use udesign_core::{Operator, C64};

use crate::error::{CliError, CliResult};

/// Tolerance on `Σ w = 1` when loading a design.
pub const WEIGHT_SUM_TOL: f64 = 1e-6;

/// `v` with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct Precise;

impl Formatter for Precise {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(fmt_f64(value).as_bytes())
    }
}

/// Compact JSON with 17-digit floats.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Precise);
    value
        .serialize(&mut ser)
        .expect("serialising plain data into memory cannot fail");
    String::from_utf8(out).expect("serde_json writes UTF-8")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub weight: f64,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignFile {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified_t: Option<u32>,
    pub elements: Vec<ElementRecord>,
}

impl DesignFile {
    pub fn from_set(set: &WeightedUnitarySet, certified_t: Option<u32>) -> Self {
        let elements = set
            .iter()
            .map(|(u, w)| ElementRecord {
                weight: w,
                matrix: (0..u.rows())
                    .map(|r| (0..u.cols()).map(|c| [u[(r, c)].re, u[(r, c)].im]).collect())
                    .collect(),
            })
            .collect();
        Self {
            dim: set.dim(),
            certified_t,
            elements,
        }
    }

    /// Validates shapes and weights; weights off by more than rounding are
    /// renormalised after the sum check. Errors name the offending field.
    pub fn to_set(&self) -> Result<WeightedUnitarySet, String> {
        let d = self.dim;
        if d == 0 {
            return Err("dim: must be at least 1".into());
        }
        if self.elements.is_empty() {
            return Err("elements: empty".into());
        }
        let mut us = Vec::with_capacity(self.elements.len());
        let mut ws = Vec::with_capacity(self.elements.len());
        for (i, e) in self.elements.iter().enumerate() {
            if !(e.weight.is_finite() && e.weight > 0.0) {
                return Err(format!("elements[{i}].weight: {} is not a positive number", e.weight));
            }
            if e.matrix.len() != d {
                return Err(format!(
                    "elements[{i}].matrix: expected {d} rows, found {}",
                    e.matrix.len()
                ));
            }
            let mut data = Vec::with_capacity(d * d);
            for (r, row) in e.matrix.iter().enumerate() {
                if row.len() != d {
                    return Err(format!(
                        "elements[{i}].matrix[{r}]: expected {d} entries, found {}",
                        row.len()
                    ));
                }
                data.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
            }
            let u = Operator::from_vec(d, d, data).map_err(|e| format!("elements[{i}].matrix: {e}"))?;
            if let Err(err) = u.ensure_unitary(udesign_core::ATOL_ALG) {
                return Err(format!("elements[{i}].matrix: {err}"));
            }
            us.push(u);
            ws.push(e.weight);
        }
        let total: f64 = ws.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(format!("elements[*].weight: weights sum to {total}, not 1"));
        }
        // sums already within rounding of 1 are kept so files round-trip exactly
        if (total - 1.0).abs() > udesign_core::ATOL_ALG {
            ws.iter_mut().for_each(|w| *w /= total);
        }
        WeightedUnitarySet::new(us, ws).map_err(|e| format!("elements: {e}"))
    }
}

/// A design read from disk.
#[derive(Debug, Clone)]
pub struct LoadedDesign {
    pub set: WeightedUnitarySet,
    pub certified_t: Option<u32>,
}

pub fn parse_design(text: &str, path: &Path) -> CliResult<LoadedDesign> {
    let file: DesignFile = serde_json::from_str(text).map_err(|e| CliError::format(path, e.to_string()))?;
    let set = file.to_set().map_err(|m| CliError::format(path, m))?;
    Ok(LoadedDesign {
        set,
        certified_t: file.certified_t,
    })
}

pub fn read_design(path: &Path) -> CliResult<LoadedDesign> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_design(&text, path)
}

pub fn design_json(set: &WeightedUnitarySet, certified_t: Option<u32>) -> String {
    let mut s = to_json_string(&DesignFile::from_set(set, certified_t));
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogRecord {
    pub iteration: usize,
    pub gap: f64,
}

/// One `{iteration, gap}` JSON object per line.
pub fn search_log(best_gaps: &[f64]) -> String {
    let mut out = String::new();
    for (iteration, &gap) in best_gaps.iter().enumerate() {
        out.push_str(&to_json_string(&LogRecord { iteration, gap }));
        out.push('\n');
    }
    out
}
