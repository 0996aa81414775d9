//! The tiling parameter `p` and its derived digit constants.
//!
//! Everything in this crate is parameterised by a single integer `p ≥ 5`
//! (the number of sides of the tiles in `{p,4}`). Four digit letters are
//! derived from it and used throughout:
//!
//! | letter | value | role |
//! |--------|-------|------|
//! | `d`    | `p−3` | largest metallic digit |
//! | `c`    | `p−4` | middle letter of the metallic forbidden factor `d c* d` |
//! | `e`    | `p−5` | defined for completeness; no implemented formula uses it |
//! | `x`    | `p−2` | largest nzm digit; outer letter of the nzm forbidden factor `x d* x` |

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Error raised when constructing [`Params`] from an out-of-range `p`.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    /// The substitution rules require `p ≥ 5` (a black node must have at
    /// least `p−3 ≥ 2` sons).
    #[error("tiling parameter p must be at least 5, got {0}")]
    TooSmall(u32),
}

/// The tiling parameter `p ≥ 5` with its derived digit constants.
///
/// `Params` is a small `Copy` value; pass it around freely. The derived
/// letters satisfy `c = d−1`, `x = d+1`, `d ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Params {
    p: u32,
}

impl Params {
    /// Validates `p ≥ 5` and builds the parameter pack.
    pub fn new(p: u32) -> Result<Self, ParamsError> {
        if p < 5 {
            return Err(ParamsError::TooSmall(p));
        }
        Ok(Params { p })
    }

    /// The tiling parameter itself.
    pub fn p(self) -> u32 {
        self.p
    }

    /// `d = p−3`: the largest metallic digit.
    pub fn d(self) -> u32 {
        self.p - 3
    }

    /// `c = p−4`: the interior letter of the metallic forbidden factor.
    pub fn c(self) -> u32 {
        self.p - 4
    }

    /// `e = p−5`. Defined alongside the other digit letters for
    /// completeness; no formula in this crate consumes it.
    pub fn e(self) -> u32 {
        self.p - 5
    }

    /// `x = p−2`: the largest nzm digit.
    pub fn x(self) -> u32 {
        self.p - 2
    }

    /// Number of sons of a white node: `p−2`.
    pub fn white_sons(self) -> u32 {
        self.p - 2
    }

    /// Number of sons of a black node: `p−3`.
    pub fn black_sons(self) -> u32 {
        self.p - 3
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_letters() {
        let q = Params::new(5).unwrap();
        assert_eq!((q.d(), q.c(), q.e(), q.x()), (2, 1, 0, 3));
        let q = Params::new(9).unwrap();
        assert_eq!((q.d(), q.c(), q.e(), q.x()), (6, 5, 4, 7));
    }

    #[test]
    fn letter_relations_hold_for_a_range_of_p() {
        for p in 5..40 {
            let q = Params::new(p).unwrap();
            assert_eq!(q.c(), q.d() - 1);
            assert_eq!(q.x(), q.d() + 1);
            assert!(q.d() >= 2);
        }
    }

    #[test]
    fn rejects_small_p() {
        for p in 0..5 {
            assert_eq!(Params::new(p), Err(ParamsError::TooSmall(p)));
        }
    }
}
