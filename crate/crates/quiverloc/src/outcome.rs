//! Result of comparing two sides of an identity.

use crate::error::Result;
use crate::scalars::Scalar;
use crate::series::{Mismatch, PSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub mismatch: Option<Mismatch>,
}

impl Outcome {
    pub fn pass() -> Outcome {
        Outcome { mismatch: None }
    }

    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    pub fn series(lhs: &PSeries, rhs: &PSeries) -> Result<Outcome> {
        Ok(Outcome { mismatch: lhs.first_mismatch(rhs)? })
    }

    /// Compare two scalars, reporting `index` on failure.
    pub fn scalar(index: Vec<u32>, lhs: Scalar, rhs: Scalar) -> Outcome {
        if lhs == rhs {
            Outcome::pass()
        } else {
            Outcome { mismatch: Some(Mismatch { index, lhs, rhs }) }
        }
    }

    /// Keep the first failure.
    pub fn and(self, other: Outcome) -> Outcome {
        if self.passed() {
            other
        } else {
            self
        }
    }
}
