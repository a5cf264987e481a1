//! Seed files: JSON with string-encoded Gaussian rational coefficients.

use std::path::Path;

use cpn_surfaces::algebra::GaussianRational;
use cpn_surfaces::sigma::HoloSeed;
use cpn_surfaces::{Error, ParseError};
use serde::Deserialize;

/// `{"n": 2, "components": [["1"], ["0", "1"]]}`, coefficients in
/// ascending powers of ξ.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedFile {
    pub n: usize,
    pub components: Vec<Vec<String>>,
}

impl SeedFile {
    pub fn parse(text: &str) -> Result<Self, Error> {
        serde_json::from_str(text).map_err(|e| ParseError::Seed(e.to_string()).into())
    }

    pub fn into_seed(self) -> Result<HoloSeed, Error> {
        if self.components.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: self.components.len() });
        }
        let coeffs = self
            .components
            .iter()
            .map(|c| c.iter().map(|s| s.parse::<GaussianRational>()).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        HoloSeed::from_coefficients(&coeffs)
    }
}

pub fn read_seed(path: &Path) -> Result<HoloSeed, crate::Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| crate::Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Ok(SeedFile::parse(&text)?.into_seed()?)
}
