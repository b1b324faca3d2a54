//! Tensor file formats: plain-text matrices (`matrix3`, `voigt6`,
//! `kelvin6`, `full81`) and a JSON envelope carrying the format inline.
//!
//! `voigt6` uses the stress-form convention: entries are the tensor
//! coefficients with no factors, rows/columns ordered 11, 22, 33, 23, 13,
//! 12. `kelvin6` carries the sqrt(2)/2-weighted Kelvin matrix. `full81`
//! lists all 81 coefficients row-major with the first index slowest.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::spectral::{kelvin_unmap, KelvinMatrix, KELVIN_PAIRS};
use crate::tensor::DenseTensor;

/// Input layouts accepted by the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TensorFormat {
    Voigt6,
    Kelvin6,
    Full81,
    Matrix3,
    Json,
}

impl TensorFormat {
    pub fn name(&self) -> &'static str {
        match self {
            TensorFormat::Voigt6 => "voigt6",
            TensorFormat::Kelvin6 => "kelvin6",
            TensorFormat::Full81 => "full81",
            TensorFormat::Matrix3 => "matrix3",
            TensorFormat::Json => "json",
        }
    }

    pub fn from_name(s: &str) -> Option<TensorFormat> {
        match s {
            "voigt6" => Some(TensorFormat::Voigt6),
            "kelvin6" => Some(TensorFormat::Kelvin6),
            "full81" => Some(TensorFormat::Full81),
            "matrix3" => Some(TensorFormat::Matrix3),
            "json" => Some(TensorFormat::Json),
            _ => None,
        }
    }
}

/// Interpretation of the shear block of a `voigt6` stiffness matrix.
///
/// `Stress` (the default) reads entries directly as tensor coefficients.
/// `Engineering` expects shear-shear entries (rows and columns 4-6) doubled,
/// i.e. `input[m][n] = 2 C` when both m and n are shear slots, as produced
/// by energy-form tabulations against engineering shear strain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VoigtConvention {
    #[default]
    Stress,
    Engineering,
}

/// A parsed tensor plus pass-through metadata.
#[derive(Debug, Clone)]
pub struct ParsedTensor {
    pub tensor: DenseTensor,
    pub format: TensorFormat,
    pub name: Option<String>,
    pub units: Option<String>,
}

fn voigt_factor(convention: VoigtConvention, m: usize, n: usize) -> f64 {
    match convention {
        VoigtConvention::Stress => 1.0,
        VoigtConvention::Engineering => {
            if m >= 3 && n >= 3 {
                2.0
            } else {
                1.0
            }
        }
    }
}

/// Fourth-order tensor from a stress-form Voigt matrix.
pub fn voigt_to_tensor(v: &[[f64; 6]; 6]) -> Result<DenseTensor> {
    voigt_to_tensor_with(v, VoigtConvention::Stress)
}

pub fn voigt_to_tensor_with(v: &[[f64; 6]; 6], convention: VoigtConvention) -> Result<DenseTensor> {
    check_symmetric6(v)?;
    let mut c = DenseTensor::zeros(4);
    for (m, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        for (n, &(k, l)) in KELVIN_PAIRS.iter().enumerate() {
            let val = 0.5 * (v[m][n] + v[n][m]) / voigt_factor(convention, m, n);
            for (a, b) in [(i, j), (j, i)] {
                for (d, e) in [(k, l), (l, k)] {
                    c.set(&[a, b, d, e], val);
                }
            }
        }
    }
    Ok(c)
}

/// Stress-form Voigt matrix of a minor+major-symmetric tensor.
pub fn tensor_to_voigt(c: &DenseTensor) -> [[f64; 6]; 6] {
    let mut v = [[0.0; 6]; 6];
    for (m, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        for (n, &(k, l)) in KELVIN_PAIRS.iter().enumerate() {
            v[m][n] = c.get(&[i, j, k, l]);
        }
    }
    v
}

fn check_symmetric6(v: &[[f64; 6]; 6]) -> Result<()> {
    let scale = v
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(1e-300);
    let mut worst = 0.0f64;
    for m in 0..6 {
        for n in (m + 1)..6 {
            worst = worst.max((v[m][n] - v[n][m]).abs());
        }
    }
    if worst > 1e-8 * scale {
        return Err(Error::NotSymmetric {
            residual: worst,
            tol: 1e-8 * scale,
        });
    }
    Ok(())
}

/// Fourth-order tensor from a Kelvin (Mandel) 6x6 matrix.
pub fn kelvin6_to_tensor(v: &[[f64; 6]; 6]) -> Result<DenseTensor> {
    check_symmetric6(v)?;
    let mut entries = [[0.0; 6]; 6];
    for m in 0..6 {
        for n in 0..6 {
            entries[m][n] = 0.5 * (v[m][n] + v[n][m]);
        }
    }
    Ok(kelvin_unmap(&KelvinMatrix { entries }))
}

fn parse_numbers_by_line(text: &str) -> Result<Vec<(usize, Vec<f64>)>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let mut nums = Vec::new();
        for tok in body.split([' ', '\t', ',']).filter(|t| !t.is_empty()) {
            let x: f64 = tok.parse().map_err(|_| Error::ParseError {
                line: lineno + 1,
                message: format!("not a number: {tok:?}"),
            })?;
            if !x.is_finite() {
                return Err(Error::ParseError {
                    line: lineno + 1,
                    message: format!("non-finite value {x}"),
                });
            }
            nums.push(x);
        }
        rows.push((lineno + 1, nums));
    }
    Ok(rows)
}

fn rows_to_matrix<const N: usize>(rows: &[(usize, Vec<f64>)]) -> Result<[[f64; N]; N]> {
    if rows.len() != N {
        let line = rows.last().map(|r| r.0).unwrap_or(0);
        return Err(Error::ParseError {
            line,
            message: format!("expected {N} rows, found {}", rows.len()),
        });
    }
    let mut out = [[0.0; N]; N];
    for (r, (line, nums)) in rows.iter().enumerate() {
        if nums.len() != N {
            return Err(Error::ParseError {
                line: *line,
                message: format!("row {} has {} values, expected {N}", r + 1, nums.len()),
            });
        }
        out[r].copy_from_slice(nums);
    }
    Ok(out)
}

#[derive(Deserialize)]
struct JsonEnvelope {
    format: String,
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    units: Option<String>,
    data: Vec<f64>,
}

/// Parses tensor text in the given format (`Json` reads the envelope).
pub fn parse_tensor_str(
    text: &str,
    format: TensorFormat,
    convention: VoigtConvention,
) -> Result<ParsedTensor> {
    match format {
        TensorFormat::Matrix3 => {
            let rows = parse_numbers_by_line(text)?;
            let m = rows_to_matrix::<3>(&rows)?;
            Ok(ParsedTensor {
                tensor: DenseTensor::matrix(m),
                format,
                name: None,
                units: None,
            })
        }
        TensorFormat::Voigt6 | TensorFormat::Kelvin6 => {
            let rows = parse_numbers_by_line(text)?;
            let m = rows_to_matrix::<6>(&rows)?;
            let tensor = match format {
                TensorFormat::Voigt6 => voigt_to_tensor_with(&m, convention)?,
                _ => kelvin6_to_tensor(&m)?,
            };
            Ok(ParsedTensor {
                tensor,
                format,
                name: None,
                units: None,
            })
        }
        TensorFormat::Full81 => {
            let rows = parse_numbers_by_line(text)?;
            let nums: Vec<f64> = rows.iter().flat_map(|(_, v)| v.iter().copied()).collect();
            if nums.len() != 81 {
                return Err(Error::DimensionError(format!(
                    "full81 needs 81 values, found {}",
                    nums.len()
                )));
            }
            Ok(ParsedTensor {
                tensor: DenseTensor::from_coeffs(4, nums)?,
                format,
                name: None,
                units: None,
            })
        }
        TensorFormat::Json => {
            let env: JsonEnvelope = serde_json::from_str(text).map_err(|e| Error::ParseError {
                line: e.line(),
                message: e.to_string(),
            })?;
            let inner = TensorFormat::from_name(&env.format).ok_or_else(|| Error::ParseError {
                line: 1,
                message: format!("unknown format field {:?}", env.format),
            })?;
            if inner == TensorFormat::Json {
                return Err(Error::ParseError {
                    line: 1,
                    message: "json envelope cannot nest format \"json\"".into(),
                });
            }
            let tensor = match inner {
                TensorFormat::Matrix3 => {
                    if env.data.len() != 9 {
                        return Err(Error::DimensionError(format!(
                            "matrix3 needs 9 values, found {}",
                            env.data.len()
                        )));
                    }
                    DenseTensor::from_coeffs(2, env.data)?
                }
                TensorFormat::Full81 => {
                    if env.data.len() != 81 {
                        return Err(Error::DimensionError(format!(
                            "full81 needs 81 values, found {}",
                            env.data.len()
                        )));
                    }
                    DenseTensor::from_coeffs(4, env.data)?
                }
                TensorFormat::Voigt6 | TensorFormat::Kelvin6 => {
                    if env.data.len() != 36 {
                        return Err(Error::DimensionError(format!(
                            "{} needs 36 values, found {}",
                            inner.name(),
                            env.data.len()
                        )));
                    }
                    let mut m = [[0.0; 6]; 6];
                    for r in 0..6 {
                        m[r].copy_from_slice(&env.data[6 * r..6 * r + 6]);
                    }
                    if inner == TensorFormat::Voigt6 {
                        voigt_to_tensor_with(&m, convention)?
                    } else {
                        kelvin6_to_tensor(&m)?
                    }
                }
                TensorFormat::Json => unreachable!(),
            };
            Ok(ParsedTensor {
                tensor,
                format: inner,
                name: env.name,
                units: env.units,
            })
        }
    }
}

/// Reads and parses a tensor file. When `format` is `None` the file must be
/// a JSON envelope (which names its own format).
pub fn parse_tensor_file(
    path: &Path,
    format: Option<TensorFormat>,
    convention: VoigtConvention,
) -> Result<ParsedTensor> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let format = match format {
        Some(f) => f,
        None => {
            if text.trim_start().starts_with('{') {
                TensorFormat::Json
            } else {
                return Err(Error::ParseError {
                    line: 1,
                    message: "no --format given and the file is not a JSON envelope".into(),
                });
            }
        }
    };
    parse_tensor_str(&text, format, convention)
}
