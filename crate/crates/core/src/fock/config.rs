use super::FockError;
use crate::algebra::Mode;

/// Truncation: `levels` occupations per mode (0..levels-1) over the active
/// modes. The safe subspace holds states of total occupation at most
/// `safe_occupation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockConfig {
    pub levels: usize,
    pub modes: Vec<Mode>,
    pub safe_occupation: usize,
    pub max_dimension: usize,
}

pub const DEFAULT_MAX_DIMENSION: usize = 20_000;

impl FockConfig {
    /// Safe subspace defaults to total occupation <= levels - 3.
    pub fn new(levels: usize, modes: &[Mode]) -> Result<Self, FockError> {
        let cfg = FockConfig {
            levels,
            modes: modes.to_vec(),
            safe_occupation: levels.saturating_sub(3),
            max_dimension: DEFAULT_MAX_DIMENSION,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_safe_occupation(mut self, safe: usize) -> Result<Self, FockError> {
        self.safe_occupation = safe;
        self.validate()?;
        Ok(self)
    }

    pub fn single_mode(levels: usize) -> Result<Self, FockError> {
        Self::new(levels, &[Mode::Jpo(0)])
    }

    pub fn dimension(&self) -> usize {
        self.levels.saturating_pow(self.modes.len() as u32)
    }

    pub fn validate(&self) -> Result<(), FockError> {
        if self.levels < 3 {
            return Err(FockError::InvalidConfig(
                "at least 3 levels per mode are required".into(),
            ));
        }
        if self.safe_occupation > self.levels - 2 {
            return Err(FockError::InvalidConfig(format!(
                "safe occupation {} exceeds levels - 2 = {}",
                self.safe_occupation,
                self.levels - 2
            )));
        }
        if self.modes.is_empty() {
            return Err(FockError::InvalidConfig("no active modes".into()));
        }
        let mut seen = self.modes.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.modes.len() {
            return Err(FockError::InvalidConfig("duplicate active mode".into()));
        }
        let dim = self.dimension();
        if dim > self.max_dimension {
            return Err(FockError::DimensionTooLarge {
                dim,
                max: self.max_dimension,
            });
        }
        Ok(())
    }

    pub fn slot(&self, mode: Mode) -> Option<usize> {
        self.modes.iter().position(|&m| m == mode)
    }
}
