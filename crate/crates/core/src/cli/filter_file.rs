//! JSON coefficient file written by `design` and read by `filter`/`analyze`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::design::Design;
use crate::error::{Error, Result};
use crate::planner::{Band, Family, FilterSpec};
use crate::realization::{is_stable, Section, SosCascade};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecEcho {
    pub passband_edges: Vec<f64>,
    pub stopband_edges: Vec<f64>,
    pub passband_ripple_db: f64,
    pub stopband_atten_db: f64,
}

/// Sections are `[b0, b1, b2, 1, a1, a2]` with the feedback terms subtracted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterFile {
    pub schema_version: u32,
    pub family: Family,
    pub band: Band,
    pub sample_rate: f64,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spec: Option<SpecEcho>,
    pub sections: Vec<[f64; 6]>,
    pub overall_gain: f64,
}

impl FilterFile {
    pub fn from_design(design: &Design) -> Self {
        let spec = &design.spec;
        FilterFile {
            schema_version: SCHEMA_VERSION,
            family: spec.family,
            band: spec.band,
            sample_rate: spec.sample_rate,
            order: design.plan.order,
            spec: Some(SpecEcho {
                passband_edges: spec.passband_edges.clone(),
                stopband_edges: spec.stopband_edges.clone(),
                passband_ripple_db: spec.passband_ripple_db,
                stopband_atten_db: spec.stopband_atten_db,
            }),
            sections: design
                .cascade
                .sections
                .iter()
                .map(|s| [s.b0, s.b1, s.b2, 1.0, s.a1, s.a2])
                .collect(),
            overall_gain: design.cascade.gain,
        }
    }

    /// Rebuilds and checks the cascade: known schema, `a0 = 1`, stable poles.
    pub fn cascade(&self) -> Result<SosCascade> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidFilterFile(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        if !(self.sample_rate > 0.0) || !self.sample_rate.is_finite() {
            return Err(Error::InvalidFilterFile(format!("sample_rate {}", self.sample_rate)));
        }
        if self.sections.is_empty() {
            return Err(Error::InvalidFilterFile("no sections".to_string()));
        }
        let mut sections = Vec::with_capacity(self.sections.len());
        for (i, c) in self.sections.iter().enumerate() {
            if c[3] != 1.0 {
                return Err(Error::InvalidFilterFile(format!("section {i} has a0 = {}, expected 1", c[3])));
            }
            if c.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidFilterFile(format!("section {i} has a non-finite coefficient")));
            }
            sections.push(Section::new([c[0], c[1], c[2]], [c[4], c[5]]));
        }
        let cascade = SosCascade::new(sections, self.overall_gain, self.sample_rate);
        if !is_stable(&cascade).stable {
            return Err(Error::InvalidFilterFile("cascade has poles on or outside the unit circle".to_string()));
        }
        Ok(cascade)
    }

    /// The design request recorded with the coefficients, if any.
    pub fn filter_spec(&self) -> Option<FilterSpec> {
        let echo = self.spec.as_ref()?;
        Some(
            FilterSpec::new(self.family, self.band, self.sample_rate, &echo.passband_edges, &echo.stopband_edges)
                .with_ripple(echo.passband_ripple_db, echo.stopband_atten_db),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn identity() -> FilterFile {
        FilterFile {
            schema_version: 1,
            family: Family::Butterworth,
            band: Band::Lowpass,
            sample_rate: 8000.0,
            order: 0,
            spec: None,
            sections: vec![[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]],
            overall_gain: 1.0,
        }
    }

    #[test]
    fn identity_loads() {
        let c = identity().cascade().unwrap();
        assert_eq!(c.sections, vec![Section::IDENTITY]);
        assert!(identity().filter_spec().is_none());
    }

    #[test]
    fn rejects_bad_files() {
        let mut f = identity();
        f.schema_version = 2;
        assert!(matches!(f.cascade(), Err(Error::InvalidFilterFile(_))));
        let mut f = identity();
        f.sections[0][3] = 2.0;
        assert!(matches!(f.cascade(), Err(Error::InvalidFilterFile(_))));
        let mut f = identity();
        f.sections[0][4] = -1.0;
        assert!(matches!(f.cascade(), Err(Error::InvalidFilterFile(_))));
    }

    #[test]
    fn json_round_trip() {
        let f = identity();
        let back: FilterFile = serde_json::from_str(&f.to_json().unwrap()).unwrap();
        assert_eq!(back, f);
    }
}
