use crate::error::{Error, Result};
use crate::limits::{e_apply, EElement, TruncatedElement};

/// `P(e) source = target` at every recorded level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializationWitness {
    pub source: TruncatedElement,
    pub target: TruncatedElement,
    pub e: EElement,
    pub verified_levels: Vec<usize>,
}

impl SpecializationWitness {
    /// Builds the witness after checking every level; fails if any level disagrees.
    pub fn checked(source: TruncatedElement, target: TruncatedElement, e: EElement, levels: Vec<usize>) -> Result<Self> {
        let w = SpecializationWitness {
            source,
            target,
            e,
            verified_levels: levels,
        };
        if let Some(bad) = w.failing_level()? {
            return Err(Error::Invalid(format!("witness fails at level {bad}")));
        }
        Ok(w)
    }

    /// Re-runs `e_apply` at every recorded level.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.failing_level()?.is_none())
    }

    fn failing_level(&self) -> Result<Option<usize>> {
        for &l in &self.verified_levels {
            if e_apply(&self.e, &self.source, l)? != self.target.project(l)? {
                return Ok(Some(l));
            }
        }
        Ok(None)
    }
}
