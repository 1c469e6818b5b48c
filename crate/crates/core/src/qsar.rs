//! Descriptor tables and least-squares fits of
//! `activity = alpha*HM1 + beta*HM2 + gamma*(HM1*HM2) + delta`.
//!
//! Features are standardized before solving and the coefficients mapped back
//! to raw descriptor units afterwards.

use std::collections::HashSet;
use std::io::{Read, Write};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::Hypergraph;
use crate::indices::{hm1, hm2, IndexValue};

pub const MIN_ROWS: usize = 4;

/// Ratio of largest to smallest singular value above which a fit is flagged.
const CONDITION_LIMIT: f64 = 1e10;

#[derive(Debug, Error)]
pub enum QsarError {
    #[error("duplicate molecule name `{0}`")]
    DuplicateName(String),
    #[error("need at least {MIN_ROWS} rows with activity, got {0}")]
    TooFewRows(usize),
    #[error("row `{0}` has no activity value")]
    MissingActivity(String),
    #[error("row `{name}`: {what} does not fit in a double")]
    DescriptorOverflow { name: String, what: &'static str },
    #[error("row {row}: {msg}")]
    BadRow { row: usize, msg: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DescriptorRow {
    pub name: String,
    pub hm1: IndexValue,
    pub hm2: IndexValue,
    pub interaction: IndexValue,
    pub activity: Option<f64>,
}

impl DescriptorRow {
    pub fn new(name: impl Into<String>, hm1: IndexValue, hm2: IndexValue, activity: Option<f64>) -> Self {
        let interaction = IndexValue(hm1.as_biguint() * hm2.as_biguint());
        Self {
            name: name.into(),
            hm1,
            hm2,
            interaction,
            activity,
        }
    }

    pub fn from_hypergraph(name: impl Into<String>, h: &Hypergraph, activity: Option<f64>) -> Self {
        Self::new(name, hm1(h), hm2(h), activity)
    }

    fn features(&self) -> Result<[f64; 3], QsarError> {
        let conv = |v: &IndexValue, what| {
            v.to_f64().ok_or_else(|| QsarError::DescriptorOverflow {
                name: self.name.clone(),
                what,
            })
        };
        Ok([
            conv(&self.hm1, "HM1")?,
            conv(&self.hm2, "HM2")?,
            conv(&self.interaction, "HM1*HM2")?,
        ])
    }
}

/// One row per entry, in input order.
pub fn descriptor_table<'a, I>(entries: I) -> Result<Vec<DescriptorRow>, QsarError>
where
    I: IntoIterator<Item = (&'a str, &'a Hypergraph, Option<f64>)>,
{
    let mut seen = HashSet::new();
    entries
        .into_iter()
        .map(|(name, h, activity)| {
            if !seen.insert(name) {
                return Err(QsarError::DuplicateName(name.to_string()));
            }
            Ok(DescriptorRow::from_hypergraph(name, h, activity))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    /// HM1 coefficient in raw units.
    pub alpha: f64,
    /// HM2 coefficient.
    pub beta: f64,
    /// HM1*HM2 coefficient.
    pub gamma: f64,
    /// Intercept.
    pub delta: f64,
    /// The same four coefficients against standardized features.
    pub standardized_coefficients: [f64; 4],
    pub feature_means: [f64; 3],
    pub feature_scales: [f64; 3],
    pub r_squared: f64,
    pub condition_warning: bool,
    pub rows: usize,
}

impl FitResult {
    /// Prediction from the raw-unit coefficients.
    pub fn predict(&self, row: &DescriptorRow) -> Result<f64, QsarError> {
        let [x1, x2, x3] = row.features()?;
        Ok(self.alpha * x1 + self.beta * x2 + self.gamma * x3 + self.delta)
    }

    /// Prediction through the standardized coefficients.
    pub fn predict_standardized(&self, row: &DescriptorRow) -> Result<f64, QsarError> {
        let x = row.features()?;
        let s = &self.standardized_coefficients;
        let mut y = s[3];
        for j in 0..3 {
            if self.feature_scales[j] > 0.0 {
                y += s[j] * (x[j] - self.feature_means[j]) / self.feature_scales[j];
            }
        }
        Ok(y)
    }
}

pub fn predict(fit: &FitResult, row: &DescriptorRow) -> Result<f64, QsarError> {
    fit.predict(row)
}

fn mean(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let n = xs.clone().count() as f64;
    xs.sum::<f64>() / n
}

/// Ordinary least squares over rows that all carry an activity.
pub fn fit(rows: &[DescriptorRow]) -> Result<FitResult, QsarError> {
    if let Some(r) = rows.iter().find(|r| r.activity.is_none()) {
        return Err(QsarError::MissingActivity(r.name.clone()));
    }
    if rows.len() < MIN_ROWS {
        return Err(QsarError::TooFewRows(rows.len()));
    }
    let n = rows.len();
    let x: Vec<[f64; 3]> = rows.iter().map(DescriptorRow::features).collect::<Result<_, _>>()?;
    let y: Vec<f64> = rows.iter().map(|r| r.activity.unwrap()).collect();

    let mut means = [0.0; 3];
    let mut scales = [0.0; 3];
    for j in 0..3 {
        let col = x.iter().map(|r| r[j]);
        means[j] = mean(col.clone());
        scales[j] = mean(col.map(|v| (v - means[j]).powi(2))).sqrt();
    }
    let z = DMatrix::from_fn(n, 3, |i, j| {
        if scales[j] > 0.0 {
            (x[i][j] - means[j]) / scales[j]
        } else {
            0.0
        }
    });
    let y_mean = if y.iter().all(|&v| v == y[0]) {
        y[0]
    } else {
        mean(y.iter().copied())
    };
    let centered = DVector::from_iterator(n, y.iter().map(|v| v - y_mean));

    // centered columns are orthogonal to the intercept, so it separates out
    let svd = z.clone().svd(true, true);
    let sv = &svd.singular_values;
    let s_max = sv.max();
    let s_min = sv.min();
    let tol = n.max(3) as f64 * f64::EPSILON * s_max;
    let condition_warning = s_max == 0.0 || s_min <= tol || s_max / s_min > CONDITION_LIMIT;
    let b = if s_max == 0.0 {
        DVector::zeros(3)
    } else {
        svd.solve(&centered, tol).expect("both factors were computed")
    };

    let residuals = &centered - &z * &b;
    let ss_res = residuals.norm_squared();
    let ss_tot = centered.norm_squared();
    let r_squared = if ss_tot == 0.0 {
        0.0
    } else {
        (1.0 - ss_res / ss_tot).clamp(0.0, 1.0)
    };

    let raw: Vec<f64> = (0..3)
        .map(|j| if scales[j] > 0.0 { b[j] / scales[j] } else { 0.0 })
        .collect();
    let delta = y_mean - (0..3).map(|j| raw[j] * means[j]).sum::<f64>();
    Ok(FitResult {
        alpha: raw[0],
        beta: raw[1],
        gamma: raw[2],
        delta,
        standardized_coefficients: [b[0], b[1], b[2], y_mean],
        feature_means: means,
        feature_scales: scales,
        r_squared,
        condition_warning,
        rows: n,
    })
}

#[derive(Debug, Deserialize)]
struct CsvIn {
    name: String,
    hm1: String,
    hm2: String,
    #[serde(default)]
    activity: Option<f64>,
}

/// Reads `name,hm1,hm2,activity` rows; activity may be empty.
pub fn read_csv(reader: impl Read) -> Result<Vec<DescriptorRow>, QsarError> {
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for (i, rec) in csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader)
        .deserialize()
        .enumerate()
    {
        let rec: CsvIn = rec?;
        let row = i + 1;
        let parse = |s: &str, what: &str| {
            s.parse::<IndexValue>().map_err(|_| QsarError::BadRow {
                row,
                msg: format!("{what} `{s}` is not a non-negative integer"),
            })
        };
        if !seen.insert(rec.name.clone()) {
            return Err(QsarError::DuplicateName(rec.name));
        }
        rows.push(DescriptorRow::new(
            rec.name,
            parse(&rec.hm1, "hm1")?,
            parse(&rec.hm2, "hm2")?,
            rec.activity,
        ));
    }
    Ok(rows)
}

/// Writes `name,hm1,hm2,interaction,activity,prediction`.
pub fn write_csv(writer: impl Write, rows: &[DescriptorRow], fit: Option<&FitResult>) -> Result<(), QsarError> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["name", "hm1", "hm2", "interaction", "activity", "prediction"])?;
    for r in rows {
        let prediction = match fit {
            Some(f) => f.predict(r)?.to_string(),
            None => String::new(),
        };
        w.write_record([
            r.name.clone(),
            r.hm1.to_string(),
            r.hm2.to_string(),
            r.interaction.to_string(),
            r.activity.map(|a| a.to_string()).unwrap_or_default(),
            prediction,
        ])?;
    }
    w.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Simple regression of `y` on `x`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

pub fn fit_line(points: &[(f64, f64)]) -> Option<LineFit> {
    if points.len() < 2 {
        return None;
    }
    let mx = mean(points.iter().map(|p| p.0));
    let my = mean(points.iter().map(|p| p.1));
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum();
    let r_squared = if syy == 0.0 {
        0.0
    } else {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    };
    Some(LineFit {
        slope,
        intercept,
        r_squared,
        points: points.len(),
    })
}

/// Bundled reference data.
pub mod fixtures {
    /// Drug descriptor table: `name,hm1,hm2,activity`.
    pub const DRUG_TABLE_CSV: &str = include_str!("../data/drug_table.csv");

    /// Predicted versus experimental bioactivity for ten ACE inhibitors.
    pub const ACE_POINTS: [(f64, f64); 10] = [
        (0.75, 0.72),
        (0.82, 0.85),
        (0.68, 0.71),
        (0.91, 0.89),
        (0.79, 0.81),
        (0.85, 0.83),
        (0.73, 0.75),
        (0.88, 0.86),
        (0.81, 0.84),
        (0.76, 0.78),
    ];

    /// Published regression line through [`ACE_POINTS`]: `0.98x + 0.02`.
    pub const ACE_LINE: (f64, f64) = (0.98, 0.02);

    /// R² printed alongside the ACE plot.
    pub const ACE_REPORTED_R_SQUARED: f64 = 0.89;
}
