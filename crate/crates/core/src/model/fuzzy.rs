//! Fuzzy quantifier bands ("few", "many", "most", "all") over a ratio.

use thiserror::Error;

use super::value::Triangular;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("ratio {0} is outside [0, 1]")]
    OutOfDomain(f64),
    #[error("band {0:?} is defined twice")]
    DuplicateBand(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyBand {
    pub label: String,
    pub membership: Triangular,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyBands {
    bands: Vec<FuzzyBand>,
}

impl FuzzyBands {
    pub fn new(bands: Vec<FuzzyBand>) -> Result<Self, FuzzyError> {
        for (i, b) in bands.iter().enumerate() {
            if bands[..i].iter().any(|o| o.label == b.label) {
                return Err(FuzzyError::DuplicateBand(b.label.clone()));
            }
        }
        Ok(FuzzyBands { bands })
    }

    pub fn bands(&self) -> &[FuzzyBand] {
        &self.bands
    }
}

impl Default for FuzzyBands {
    /// Shipped defaults. These are configuration, not normative values:
    /// they approximate everyday usage and are expected to be tuned.
    fn default() -> Self {
        let band = |label: &str, lo, peak, hi| FuzzyBand {
            label: label.to_string(),
            membership: Triangular::new(lo, peak, hi).expect("default band is well formed"),
        };
        FuzzyBands {
            bands: vec![
                band("few", 0.0, 0.15, 0.35),
                band("many", 0.4, 0.7, 1.0),
                band("most", 0.5, 0.8, 1.0),
                band("all", 0.9, 1.0, 1.0),
            ],
        }
    }
}

/// Membership of ratio `r` in every configured band, in configuration order.
pub fn classify_ratio(r: f64, bands: &FuzzyBands) -> Result<Vec<(String, f64)>, FuzzyError> {
    if !(0.0..=1.0).contains(&r) {
        return Err(FuzzyError::OutOfDomain(r));
    }
    Ok(bands
        .bands
        .iter()
        .map(|b| (b.label.clone(), b.membership.membership(r)))
        .collect())
}

/// The crisp count form: "multiple" applies to any count of two or more.
pub fn is_multiple(count: u64) -> bool {
    count >= 2
}
