//! Distance measure selection shared by clustering, I/O and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::distance::{dtw, euclidean, shift_dtw};
use crate::error::{domain, Error, Result};
use crate::matrix::BandMask;
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MeasureKind {
    #[serde(rename = "euclidean")]
    Euclidean,
    #[serde(rename = "dtw")]
    Dtw,
    #[serde(rename = "dtw_banded")]
    DtwBanded,
    #[serde(rename = "shiftdtw")]
    ShiftDtw,
}

impl MeasureKind {
    pub fn needs_radius(self) -> bool {
        matches!(self, Self::DtwBanded | Self::ShiftDtw)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Euclidean => "euclidean",
            Self::Dtw => "dtw",
            Self::DtwBanded => "dtw_banded",
            Self::ShiftDtw => "shiftdtw",
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(Self::Euclidean),
            "dtw" => Ok(Self::Dtw),
            "dtw_banded" => Ok(Self::DtwBanded),
            "shiftdtw" => Ok(Self::ShiftDtw),
            other => Err(domain(format!("unknown measure `{other}`"))),
        }
    }
}

/// A measure together with its band radius, when it takes one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawMeasure")]
pub struct MeasureSpec {
    kind: MeasureKind,
    radius: Option<usize>,
}

#[derive(Deserialize)]
struct RawMeasure {
    kind: MeasureKind,
    radius: Option<usize>,
}

impl TryFrom<RawMeasure> for MeasureSpec {
    type Error = Error;

    fn try_from(raw: RawMeasure) -> Result<Self> {
        Self::new(raw.kind, raw.radius)
    }
}

/// Distance between two series under a [`MeasureSpec`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Comparison {
    pub distance: f64,
    /// Rotation applied to the first series; always 0 for non-cyclic measures.
    pub shift: usize,
    pub visited_cells: usize,
}

impl MeasureSpec {
    /// Radius must be given exactly when the kind uses a band.
    pub fn new(kind: MeasureKind, radius: Option<usize>) -> Result<Self> {
        match (kind.needs_radius(), radius) {
            (true, None) => Err(domain(format!("measure {kind} requires a radius"))),
            (false, Some(_)) => Err(domain(format!("measure {kind} takes no radius"))),
            _ => Ok(Self { kind, radius }),
        }
    }

    pub fn euclidean() -> Self {
        Self {
            kind: MeasureKind::Euclidean,
            radius: None,
        }
    }

    pub fn dtw() -> Self {
        Self {
            kind: MeasureKind::Dtw,
            radius: None,
        }
    }

    pub fn dtw_banded(radius: usize) -> Self {
        Self {
            kind: MeasureKind::DtwBanded,
            radius: Some(radius),
        }
    }

    pub fn shift_dtw(radius: usize) -> Self {
        Self {
            kind: MeasureKind::ShiftDtw,
            radius: Some(radius),
        }
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn radius(&self) -> Option<usize> {
        self.radius
    }

    pub fn is_cyclic(&self) -> bool {
        self.kind == MeasureKind::ShiftDtw
    }

    /// Checks that the measure can compare series of length `m`.
    pub fn check_length(&self, m: usize) -> Result<()> {
        match self.radius {
            Some(r) if r >= m => Err(domain(format!(
                "radius {r} must be smaller than the series length {m}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn compare(&self, a: &TimeSeries, b: &TimeSeries) -> Result<Comparison> {
        match self.kind {
            MeasureKind::Euclidean => Ok(Comparison {
                distance: euclidean(a, b)?,
                shift: 0,
                visited_cells: a.len(),
            }),
            MeasureKind::Dtw => {
                let res = dtw(a, b, None)?;
                Ok(Comparison {
                    distance: res.distance,
                    shift: 0,
                    visited_cells: res.visited_cells,
                })
            }
            MeasureKind::DtwBanded => {
                let band = BandMask::new(self.radius.unwrap_or_default(), a.len())?;
                let res = dtw(a, b, Some(&band))?;
                Ok(Comparison {
                    distance: res.distance,
                    shift: 0,
                    visited_cells: res.visited_cells,
                })
            }
            MeasureKind::ShiftDtw => {
                let res = shift_dtw(a, b, self.radius.unwrap_or_default())?;
                Ok(Comparison {
                    distance: res.distance,
                    shift: res.shift,
                    visited_cells: res.visited_cells,
                })
            }
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radius {
            Some(r) => write!(f, "{}(r={r})", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}
