//! Flat record form of a spectrum, for CSV and JSON export.
//!
//! Each coefficient is one `(k1, k2, j1, j2, value)` record. Axes carrying
//! the constant function use the sentinel `k = -1`, `j = 0`, so the dc term
//! is `(-1, -1, 0, 0)`, `1 ⊗ chi_{k2}^{j2}` is `(-1, k2, 0, j2)` and so on.
//! CSV columns are always `k1,k2,j1,j2,value`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{flat_index, level_and_position, HaarSpectrum1, HaarSpectrum2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub k1: i32,
    pub k2: i32,
    pub j1: usize,
    pub j2: usize,
    pub value: f64,
}

pub const CSV_HEADER: &str = "k1,k2,j1,j2,value";

fn axis_key(index: usize) -> (i32, usize) {
    match level_and_position(index) {
        None => (-1, 0),
        Some((k, j)) => (k as i32, j),
    }
}

fn axis_index(k: i32, j: usize, level: u32) -> Option<usize> {
    match k {
        -1 if j == 0 => Some(0),
        k if k >= 0 && (k as u32) < level && j >= 1 && j <= 1usize << k => {
            Some(flat_index(k as u32, j))
        }
        _ => None,
    }
}

impl HaarSpectrum2 {
    /// Records in `(k1, j1, k2, j2)` order; exact zeros are skipped unless
    /// `include_zeros` is set.
    pub fn records(&self, include_zeros: bool) -> Vec<CoefficientRecord> {
        self.coefficients()
            .indexed_iter()
            .filter(|(_, &v)| include_zeros || v != 0.0)
            .map(|((u, v), &value)| {
                let (k1, j1) = axis_key(u);
                let (k2, j2) = axis_key(v);
                CoefficientRecord {
                    k1,
                    k2,
                    j1,
                    j2,
                    value,
                }
            })
            .collect()
    }

    /// Rebuilds a spectrum; coefficients without a record are zero.
    pub fn from_records(level: u32, records: &[CoefficientRecord]) -> Result<Self> {
        let mut spectrum = Self::zeros(level);
        let n = 1usize << level;
        let mut coeffs = spectrum.coefficients().clone();
        for r in records {
            let (u, v) = match (axis_index(r.k1, r.j1, level), axis_index(r.k2, r.j2, level)) {
                (Some(u), Some(v)) => (u, v),
                _ => {
                    return Err(Error::IndexOutOfRange {
                        i0: r.j1,
                        i1: r.j1,
                        j0: r.j2,
                        j1: r.j2,
                        n,
                    })
                }
            };
            coeffs[[u, v]] = r.value;
        }
        spectrum = Self::from_coefficients(level, coeffs)?;
        Ok(spectrum)
    }

    pub fn to_csv(&self, include_zeros: bool) -> String {
        records_to_csv(&self.records(include_zeros))
    }

    /// `{"level": L, "records": [...]}` with sorted keys.
    pub fn to_json(&self, include_zeros: bool) -> String {
        let doc = serde_json::json!({
            "level": self.level(),
            "records": self.records(include_zeros),
        });
        crate::json::to_string_sorted(&doc).expect("records serialize")
    }
}

impl HaarSpectrum1 {
    /// 1D records use `k2 = -1`, `j2 = 0`.
    pub fn records(&self, include_zeros: bool) -> Vec<CoefficientRecord> {
        self.coefficients()
            .iter()
            .enumerate()
            .filter(|(_, &v)| include_zeros || v != 0.0)
            .map(|(u, &value)| {
                let (k1, j1) = axis_key(u);
                CoefficientRecord {
                    k1,
                    k2: -1,
                    j1,
                    j2: 0,
                    value,
                }
            })
            .collect()
    }
}

pub fn records_to_csv(records: &[CoefficientRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        writeln!(out, "{},{},{},{},{}", r.k1, r.k2, r.j1, r.j2, r.value).expect("write to String");
    }
    out
}

pub fn records_from_csv(text: &str) -> Result<Vec<CoefficientRecord>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => {
            return Err(Error::Config(format!(
                "expected CSV header `{CSV_HEADER}`, got {other:?}"
            )));
        }
    }
    lines
        .map(|line| {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = || Error::Config(format!("malformed coefficient record `{line}`"));
            if fields.len() != 5 {
                return Err(bad());
            }
            Ok(CoefficientRecord {
                k1: fields[0].parse().map_err(|_| bad())?,
                k2: fields[1].parse().map_err(|_| bad())?,
                j1: fields[2].parse().map_err(|_| bad())?,
                j2: fields[3].parse().map_err(|_| bad())?,
                value: fields[4].parse().map_err(|_| bad())?,
            })
        })
        .collect()
}
