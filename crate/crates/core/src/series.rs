//! Time series, datasets and cyclic rotation.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// A finite, non-empty, real-valued sequence with optional identity and class label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    values: Vec<f64>,
    id: Option<String>,
    label: Option<String>,
}

impl TimeSeries {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("time series must contain at least one value"));
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(domain(format!(
                "time series value at index {pos} is not finite ({})",
                values[pos]
            )));
        }
        Ok(Self {
            values,
            id: None,
            label: None,
        })
    }

    #[must_use]
    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = Some(id.into());
        self
    }

    #[must_use]
    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn id(&self) -> Option<&str> {
        self.id.as_deref()
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// Cyclic left shift by `k`: `result[i] = self[(i + k) mod m]`.
    ///
    /// Identity and label are carried over.
    pub fn rotate(&self, k: usize) -> Result<Self> {
        let m = self.len();
        if k >= m {
            return Err(domain(format!(
                "rotation {k} out of range for series of length {m}"
            )));
        }
        let mut values = Vec::with_capacity(m);
        values.extend_from_slice(&self.values[k..]);
        values.extend_from_slice(&self.values[..k]);
        Ok(Self {
            values,
            id: self.id.clone(),
            label: self.label.clone(),
        })
    }

    /// Per-series standardization to zero mean and unit variance.
    ///
    /// A constant series is centered but left unscaled.
    #[must_use]
    pub fn znormalized(&self) -> Self {
        let n = self.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        let var = self.values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
        let std = var.sqrt();
        let scale = if std > 0.0 { 1.0 / std } else { 1.0 };
        Self {
            values: self.values.iter().map(|v| (v - mean) * scale).collect(),
            id: self.id.clone(),
            label: self.label.clone(),
        }
    }
}

/// Free-function form of [`TimeSeries::rotate`].
pub fn rotate(series: &TimeSeries, k: usize) -> Result<TimeSeries> {
    series.rotate(k)
}

/// A collection of equal-length series.
///
/// Labels are either present on every member or absent on every member.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    series: Vec<TimeSeries>,
    length: usize,
}

impl Dataset {
    pub fn new(series: Vec<TimeSeries>) -> Result<Self> {
        let first = series
            .first()
            .ok_or_else(|| domain("dataset must contain at least one series"))?;
        let length = first.len();
        let labelled = first.label().is_some();
        for (idx, s) in series.iter().enumerate() {
            if s.len() != length {
                return Err(domain(format!(
                    "series {idx} has length {} but the dataset length is {length}",
                    s.len()
                )));
            }
            if s.label().is_some() != labelled {
                return Err(domain(format!(
                    "series {idx} disagrees with series 0 on label presence"
                )));
            }
        }
        Ok(Self { series, length })
    }

    pub fn series(&self) -> &[TimeSeries] {
        &self.series
    }

    /// Common length of every member.
    pub fn length(&self) -> usize {
        self.length
    }

    /// Number of member series.
    pub fn len(&self) -> usize {
        self.series.len()
    }

    pub fn is_empty(&self) -> bool {
        self.series.is_empty()
    }

    pub fn has_labels(&self) -> bool {
        self.series[0].label().is_some()
    }

    pub fn labels(&self) -> Option<Vec<&str>> {
        self.series.iter().map(|s| s.label()).collect()
    }

    /// Identifier of member `idx`, falling back to its position.
    pub fn series_id(&self, idx: usize) -> String {
        self.series[idx]
            .id()
            .map_or_else(|| idx.to_string(), str::to_owned)
    }

    #[must_use]
    pub fn znormalized(&self) -> Self {
        Self {
            series: self.series.iter().map(TimeSeries::znormalized).collect(),
            length: self.length,
        }
    }
}
